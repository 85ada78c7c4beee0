#pragma once

#include "qtriality/basis.hpp"
#include "qtriality/states.hpp"

#include <array>
#include <cstdint>
#include <string>

namespace qtriality {

enum class NoiseTarget { A, B, Both };

// Row-stochastic 2x2 readout confusion matrix:
//   rows[true_bit][read_bit] = P(read | true).
struct ReadoutConfusion {
    std::array<std::array<double, 2>, 2> rows = {{{1.0, 0.0}, {0.0, 1.0}}};

    void validate() const;
};

// Deterministic channel strengths plus per-qubit readout confusion. All
// fields default to the ideal device.
struct NoiseModel {
    double depol_1q = 0.0;
    double depol_2q = 0.0;
    double amp_damping_gamma = 0.0;
    double phase_damping_gamma = 0.0;
    std::array<ReadoutConfusion, 2> readout_confusion{}; // qubit A, then B

    void validate() const;

    // JSON schema, with absent fields keeping their ideal defaults:
    // {"depol_1q": f, "depol_2q": f, "amp_damping_gamma": f,
    //  "phase_damping_gamma": f, "readout_confusion": [[[f,f],[f,f]], ...]}
    static NoiseModel from_json_string(const std::string& text);
    static NoiseModel from_json_file(const std::string& path);
};

// Measured outcome histogram for one basis setting.
struct CountsTable {
    BasisSetting setting;
    std::array<std::uint64_t, 4> counts{}; // indexed by outcome 2a + b
    std::uint64_t shots = 0;

    CountsTable(BasisSetting s, std::array<std::uint64_t, 4> c, std::uint64_t n);

    static std::string outcome_label(std::size_t index); // "00".."11"
};

// Depolarizing channel. target Both mixes with I4/4; a single-qubit target
// replaces that qubit with the maximally mixed state at strength p.
DensityMatrix depolarize(const DensityMatrix& rho, double p, NoiseTarget target);

// Amplitude damping followed by phase damping on one qubit (Kraus form).
DensityMatrix damp(const DensityMatrix& rho, double gamma_amp, double gamma_phase,
                   SystemLabel qubit);

// The preparation circuit with a noise layer after each gate:
//   |00><00|  -> Ry(alpha) x I -> [1q depolarizing on A, damping on both]
//             -> CU3(theta)    -> [2q depolarizing, damping on both]
// Fully deterministic (channel evolution, no trajectories).
DensityMatrix run_noisy_prep(const PrepParams& p, const NoiseModel& nm);

// Outcome probabilities of measuring `rho` in a basis setting, before
// readout confusion. Throws InvalidProbabilities when a diagonal strays
// outside [-1e-9, 1 + 1e-9]; values inside are clipped to [0, 1].
std::array<double, 4> outcome_probabilities(const ComplexMatrix& rho, BasisSetting setting);

// Expected outcome frequencies for measuring `rho` in `setting` with the
// model's readout confusion folded in: the infinite-shot limit of
// sample_counts. Normalized to sum to 1.
std::array<double, 4> expected_frequencies(const DensityMatrix& rho, BasisSetting setting,
                                           const NoiseModel& nm);

// Rotate to the measurement basis, fold in readout confusion, and draw a
// seeded multinomial sample. Identical inputs and seed give identical counts.
CountsTable sample_counts(const DensityMatrix& rho, BasisSetting setting, std::uint64_t shots,
                          const NoiseModel& nm, std::uint64_t seed);

} // namespace qtriality
