#pragma once

#include "qtriality/complex_matrix.hpp"
#include "qtriality/errors.hpp"

#include <array>
#include <string>
#include <vector>

namespace qtriality {

// Which system a density matrix describes: the full pair or one reduced qubit.
enum class SystemLabel { AB, A, B };

std::string system_label_name(SystemLabel label);
SystemLabel system_label_from_name(const std::string& name);

// Preparation angles for the two-gate circuit, both restricted to [0, pi].
struct PrepParams {
    double alpha;
    double theta;

    PrepParams(double alpha_, double theta_);
};

// Normalized two-qubit state vector over |00>, |01>, |10>, |11>, with qubit A
// the most significant bit.
class PureTwoQubitState {
public:
    explicit PureTwoQubitState(std::array<Complex, 4> amplitudes);

    static PureTwoQubitState normalized(std::array<Complex, 4> amplitudes);

    const std::array<Complex, 4>& amplitudes() const { return amps_; }
    Complex amplitude(std::size_t i) const { return amps_[i]; }

private:
    std::array<Complex, 4> amps_;
};

// Validated density matrix. Construction enforces Hermiticity, unit trace,
// and positive semidefiniteness (all to 1e-10); eigenvalues in [-1e-10, 0)
// are clipped to zero with the trace renormalized, larger violations throw.
// The spectrum found during validation is kept, sorted descending.
class DensityMatrix {
public:
    DensityMatrix(ComplexMatrix matrix, SystemLabel label);

    const ComplexMatrix& matrix() const { return matrix_; }
    SystemLabel label() const { return label_; }
    std::size_t dim() const { return matrix_.rows(); }
    const std::vector<double>& eigenvalues() const { return eigenvalues_; }

private:
    ComplexMatrix matrix_;
    SystemLabel label_;
    std::vector<double> eigenvalues_;
};

// Single-qubit Y rotation:
//   [[cos(alpha/2), -sin(alpha/2)],
//    [sin(alpha/2),  cos(alpha/2)]]
ComplexMatrix ry(double alpha);

// Controlled Y-style rotation with qubit A as control: identity on the
// |0x> block, the theta/2 rotation on the |1x> block.
ComplexMatrix cu3_theta(double theta);

// State produced by (CU3 theta)(Ry(alpha) x I)|00>:
//   (cos(alpha/2), 0, cos(theta/2) sin(alpha/2), sin(theta/2) sin(alpha/2)).
PureTwoQubitState prepare_state(const PrepParams& p);

DensityMatrix density_from_pure(const PureTwoQubitState& s);

// Reduced state of one qubit; `keep` must be SystemLabel::A or SystemLabel::B.
DensityMatrix partial_trace(const DensityMatrix& rho, SystemLabel keep);

// Tr(rho^2), clamped to [0, 1].
double purity(const DensityMatrix& rho);

// JSON round trip: {"label": "AB", "entries": [[re, im], ...]} with entries
// flattened row-major.
std::string density_matrix_to_json(const DensityMatrix& rho);
DensityMatrix density_matrix_from_json(const std::string& text);

} // namespace qtriality
