#pragma once

#include "qtriality/complex_matrix.hpp"
#include "qtriality/errors.hpp"

#include <vector>

namespace qtriality {

struct EigenDecomposition {
    std::vector<double> eigenvalues; // real, sorted descending
    ComplexMatrix eigenvectors;      // columns, same order as eigenvalues
};

// Eigendecomposition of a Hermitian matrix via cyclic Jacobi rotations.
// Throws NotHermitian when max |h - h^dagger| exceeds 1e-10.
EigenDecomposition hermitian_eigen(const ComplexMatrix& h);

// Principal square root of a positive semidefinite Hermitian matrix.
// Eigenvalues in [-1e-10, 0) are treated as zero; anything more negative
// throws NotPSD.
ComplexMatrix sqrt_psd(const ComplexMatrix& h);

} // namespace qtriality
