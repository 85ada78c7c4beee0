#pragma once

#include "qtriality/metrics.hpp"
#include "qtriality/noise.hpp"
#include "qtriality/tomography.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qtriality {

enum class SweepMode { Analytic, Channel, SampledTomography };

std::string sweep_mode_name(SweepMode mode);
SweepMode sweep_mode_from_name(const std::string& name);

// One experiment campaign: which prepared states to run, how often, and how.
struct SweepConfig {
    std::vector<PrepParams> states;
    std::uint64_t repetitions = 10;
    std::uint64_t shots = 1000;
    NoiseModel noise{};
    std::uint64_t master_seed = 0;
    SweepMode mode = SweepMode::Analytic;

    void validate() const;
};

struct StateResult {
    PrepParams params;
    std::vector<TrialityRecord> records; // one per repetition
    std::vector<std::uint64_t> seeds;    // derived (master, state, repetition) seeds
};

// The thirteen standard preparation points: five along the theta = pi arc,
// four along the alpha = pi/2 arc, and four interior states.
std::vector<PrepParams> thirteen_states();

// Run the campaign. Analytic and channel modes are deterministic, so their
// repetitions collapse to identical records; sampled-tomography repetitions
// differ through their derived seeds.
std::vector<StateResult> run_sweep(const SweepConfig& cfg);

struct AxisStats {
    double mean = 0.0;
    double stddev = 0.0;    // sample standard deviation (n - 1)
    double halfwidth = 0.0; // 4 * stddev
};

// Per-axis statistics over repeated records for the (v_a, p_a, c) axes.
struct EllipsoidStats {
    AxisStats v_a;
    AxisStats p_a;
    AxisStats c;
};

// Throws InsufficientData for fewer than two records.
EllipsoidStats ellipsoid_stats(std::span<const TrialityRecord> records);

enum class AxisFlag { Ok, DegenerateIdeal, Unnormalizable };

std::string axis_flag_name(AxisFlag flag);

struct NormalizedAxis {
    double raw_mean = 0.0;
    double noise_sim_mean = 0.0;
    double ideal = 0.0;
    double normalized = 0.0;
    double halfwidth = 0.0;
    AxisFlag flag = AxisFlag::Ok;
};

// One state's measured point after dividing out the simulated noise:
// normalized = raw_mean * ideal / noise_sim_mean per axis, with half-widths
// scaled by the same factor. Axes whose noise-sim mean falls below 1e-3 are
// left unnormalized and flagged.
struct NormalizedPoint {
    NormalizedAxis v_a;
    NormalizedAxis p_a;
    NormalizedAxis c;

    double sum() const;
    // Hard interval bound on how far the sum of squares can sit from the
    // sum at the axis centers, given the per-axis half-widths.
    double sum_bound() const;
};

NormalizedPoint normalize_against_noise_sim(const EllipsoidStats& measured,
                                            const EllipsoidStats& noise_sim,
                                            const TrialityRecord& ideal);

// Everything the normalization workflow produces for one campaign: measured
// and noise-sim sampled runs on disjoint seed streams, analytic references,
// per-state statistics, and the normalized points.
struct SweepOutputs {
    std::vector<PrepParams> states;
    std::vector<TrialityRecord> ideal;
    std::vector<StateResult> measured;
    std::vector<StateResult> noise_sim;
    std::vector<EllipsoidStats> measured_stats;
    std::vector<EllipsoidStats> noise_sim_stats;
    std::vector<NormalizedPoint> normalized;
};

SweepOutputs run_normalized_sweep(const std::vector<PrepParams>& states,
                                  std::uint64_t repetitions, std::uint64_t shots,
                                  const NoiseModel& nm, std::uint64_t master_seed);

// One row of the fixed-theta slice (theta = pi): channel-exact metrics, the
// sampled concurrence mean, and the noisy/ideal concurrence ratio where the
// ideal concurrence sin(alpha) exceeds 0.05.
struct SliceRow {
    double alpha = 0.0;
    double p_a = 0.0;
    double c_channel = 0.0;
    double c_sampled_mean = 0.0;
    double c_max = 0.0;
    std::optional<double> ratio;
};

std::vector<SliceRow> slice_study(const NoiseModel& nm, std::size_t n_alpha, std::uint64_t shots,
                                  std::uint64_t repetitions, std::uint64_t seed);

struct PurityRow {
    double purity = 0.0;
    double c = 0.0;
    double c_max = 0.0;
};

// Depolarize the prepared state at each strength in `levels` and evaluate
// the channel-exact concurrence and its ceiling. Rows come back sorted by
// purity, descending.
std::vector<PurityRow> purity_study(const PrepParams& state, std::span<const double> levels);

struct ScanRow {
    double alpha = 0.0;
    double theta = 0.0;
    double v_a = 0.0;
    double p_a = 0.0;
    double c = 0.0;
    double v_a_closed = 0.0;
    double p_a_closed = 0.0;
    double c_closed = 0.0;
};

struct ScanResult {
    std::vector<ScanRow> rows;
    double max_discrepancy = 0.0;
};

// Uniform random (alpha, theta) pairs evaluated analytically next to the
// closed forms v_a = sin(alpha) |cos(theta/2)|, p_a = |cos(alpha)|,
// c = sin(alpha) sin(theta/2).
ScanResult random_scan(std::size_t n, std::uint64_t seed);

} // namespace qtriality
