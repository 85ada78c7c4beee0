#pragma once

#include "qtriality/states.hpp"

#include <array>
#include <optional>
#include <string>

namespace qtriality {

// One evaluated point: single-qubit coherence and predictability for both
// qubits, concurrence, the purity-limited concurrence ceiling, purity, and
// the per-qubit sums v_k^2 + p_k^2 + c^2. For pure states the sums sit on 1;
// mixedness pushes them below.
struct TrialityRecord {
    double v_a;
    double v_b;
    double p_a;
    double p_b;
    double c;
    double c_max;
    double purity;
    double sum_a;
    double sum_b;

    double locality_a() const { return sum_a - c * c; }
    double locality_b() const { return sum_b - c * c; }
};

// Concurrence of a pure state: 2 |a00 a11 - a01 a10|.
double concurrence_pure(const PureTwoQubitState& s);

// Wootters concurrence of an arbitrary two-qubit state,
// max(0, sqrt(r1) - sqrt(r2) - sqrt(r3) - sqrt(r4)), computed through the
// Hermitian surrogate M = sqrt(rho) (Y⊗Y rho* Y⊗Y) sqrt(rho), which shares
// the spectrum r_i of rho (Y⊗Y rho* Y⊗Y).
double concurrence_mixed(const DensityMatrix& rho);

// The spin-flipped conjugate (Y⊗Y) rho* (Y⊗Y), evaluated as an exact sign
// permutation of the conjugated entries.
ComplexMatrix spin_flip_conjugate(const ComplexMatrix& rho);

// The four surrogate eigenvalues r_i, sorted descending.
std::array<double, 4> wootters_spectrum(const DensityMatrix& rho);

// Coherence of one qubit: the summed magnitudes of the off-diagonal entries
// of its reduced density matrix, i.e. 2 |rho_12|.
double coherence(const DensityMatrix& reduced);

// Predictability of one qubit: |rho_22 - rho_11| of its reduced matrix.
double predictability(const DensityMatrix& reduced);

// Purity ceiling on concurrence: max(0, l1 - l3 - 2 sqrt(l2 l4)) over the
// descending eigenvalues of rho.
double c_max(const DensityMatrix& rho);

// Full record for a (possibly mixed) two-qubit state.
TrialityRecord evaluate(const DensityMatrix& rho);

// Full record for a pure state through the exact closed-form path. This is
// what analytic sweeps use; it avoids the square-root noise floor of the
// mixed-state route, keeping the pure-state sum identities tight to ~1e-14.
TrialityRecord evaluate_pure(const PureTwoQubitState& s);

// Canonical float formatting shared by every CSV and JSON writer: shortest
// 17-significant-digit form, so identical runs serialize byte-identically.
std::string format_double(double v);

// CSV row serialization. Angles are printed only for records that came from
// the preparation circuit; otherwise those fields stay blank.
std::string record_csv_header();
std::string record_csv_row(const TrialityRecord& rec, std::optional<PrepParams> angles);

} // namespace qtriality
