#pragma once

#include "qtriality/noise.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace qtriality {

enum class Pauli { I = 0, X = 1, Y = 2, Z = 3 };

// The fifteen expectation values <sigma_i x sigma_j> with (i, j) != (I, I).
// The (I, I) slot is fixed at 1.
class ExpectationSet {
public:
    ExpectationSet();

    double get(Pauli a, Pauli b) const;
    void set(Pauli a, Pauli b, double value);

    // Every stored value must lie in [-1 - 1e-9, 1 + 1e-9].
    void validate() const;

private:
    double values_[4][4];
};

// Expectation values from nine outcome-frequency vectors indexed in the
// canonical setting order. Correlators come from the matching setting;
// each single-qubit term is averaged over the three settings that share
// that qubit's basis. Frequencies must be nonnegative and sum to 1.
ExpectationSet expectations_from_frequencies(
    const std::array<std::array<double, 4>, 9>& frequencies);

// Expectation values estimated from nine counts tables, one per setting.
// Throws MissingSetting when a setting has no table.
ExpectationSet estimate_expectations(std::span<const CountsTable> tables);

// Exact expectation values Tr(rho sigma_i x sigma_j) of a known state.
ExpectationSet exact_expectations(const DensityMatrix& rho);

// Linear inversion: rho_raw = (1/4) sum_ij e(i, j) sigma_i x sigma_j.
// The result is Hermitian with unit trace but need not be positive.
ComplexMatrix linear_inversion(const ExpectationSet& e);

// Nearest physical state: diagonalize, then repeatedly zero negative
// eigenvalues and spread the unit-trace deficit evenly over the remaining
// support. This lands on the Frobenius-nearest density matrix. Requires a
// Hermitian input with trace within 1e-6 of 1; throws NotHermitian otherwise.
DensityMatrix project_to_physical(const ComplexMatrix& raw);

struct TomographyRun {
    DensityMatrix rho;
    std::vector<CountsTable> counts;
    std::vector<std::uint64_t> setting_seeds;
};

// Full pipeline: noisy preparation, sampling in all nine settings (with the
// per-setting seed derived from (seed, setting index)), estimation, linear
// inversion, physical projection.
DensityMatrix tomography_pipeline(const PrepParams& p, const NoiseModel& nm, std::uint64_t shots,
                                  std::uint64_t seed);

// Same pipeline, returning the sampling artifacts alongside the state.
TomographyRun tomography_run(const PrepParams& p, const NoiseModel& nm, std::uint64_t shots,
                             std::uint64_t seed);

// Infinite-shot limit of the pipeline: exact expected frequencies (readout
// confusion included) through the same estimation, inversion, and projection.
// Sampled reconstructions converge to this state as shots grow.
DensityMatrix tomography_limit(const PrepParams& p, const NoiseModel& nm);

} // namespace qtriality
