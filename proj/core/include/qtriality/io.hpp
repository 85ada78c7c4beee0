#pragma once

#include "qtriality/experiments.hpp"
#include "qtriality/noise.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace qtriality {

// All writers emit LF-terminated CSV with doubles rendered by format_double,
// so identical inputs produce byte-identical files on any platform.

// Per-repetition records. Columns: the shared record header plus
// state_index, repetition, mode, seed.
void write_records_csv(const std::filesystem::path& path,
                       std::span<const StateResult> results, SweepMode mode);

// Per-state scatter statistics for the (v_a, p_a, c) axes.
void write_ellipsoids_csv(const std::filesystem::path& path,
                          std::span<const PrepParams> states,
                          std::span<const EllipsoidStats> stats);

// Wide per-state normalization table: raw means, noise-sim means, ideals,
// normalized values, half-widths, and per-axis flags, then the normalized
// sum of squares and its interval bound.
void write_normalized_csv(const std::filesystem::path& path, const SweepOutputs& outputs);

void write_slice_csv(const std::filesystem::path& path, std::span<const SliceRow> rows);

void write_purity_csv(const std::filesystem::path& path, std::span<const PurityRow> rows);

void write_scan_csv(const std::filesystem::path& path, const ScanResult& scan);

// Raw measurement counts, one row per (setting, outcome).
void write_counts_csv(const std::filesystem::path& path, std::span<const CountsTable> tables,
                      std::span<const std::uint64_t> seeds);

// Three 2D projections of the normalized points against the ideal points,
// each with the unit circle for reference: (v_a, p_a), (v_a, c), (p_a, c).
// Returns the paths written.
std::vector<std::filesystem::path> write_projection_svgs(const std::filesystem::path& dir,
                                                         const SweepOutputs& outputs);

} // namespace qtriality
