#include "doctest.h"
#include "test_support.hpp"

#include "qtriality/complex_matrix.hpp"
#include "qtriality/errors.hpp"
#include "qtriality/linalg.hpp"

#include <cmath>

using namespace qtriality;

TEST_SUITE("linalg") {

TEST_CASE("identity and diagonal constructors") {
    const ComplexMatrix id = ComplexMatrix::identity(3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(id(i, j) == (i == j ? Complex(1.0) : Complex(0.0)));

    const ComplexMatrix d = ComplexMatrix::diagonal({1.0, -2.0, 0.5});
    CHECK(d(0, 0).real() == 1.0);
    CHECK(d(1, 1).real() == -2.0);
    CHECK(d(2, 2).real() == 0.5);
    CHECK(d(0, 1) == Complex(0.0));
}

TEST_CASE("trace requires a square matrix") {
    ComplexMatrix rect(2, 3);
    CHECK_THROWS_AS((void)rect.trace(), std::invalid_argument);
}

TEST_CASE("kron of the two flip matrices has the antidiagonal sign pattern") {
    const ComplexMatrix yy = kron(pauli_y(), pauli_y());
    // (sigma_y x sigma_y) has -1, 1, 1, -1 on the antidiagonal, zeros elsewhere.
    const double want[4] = {-1.0, 1.0, 1.0, -1.0};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            if (j == 3 - i) {
                CHECK(yy(i, j).real() == doctest::Approx(want[i]).epsilon(1e-15));
                CHECK(yy(i, j).imag() == 0.0);
            } else {
                CHECK(std::abs(yy(i, j)) == 0.0);
            }
        }
}

TEST_CASE("kron places the first factor in the most significant slot") {
    const ComplexMatrix a = ComplexMatrix::diagonal({1.0, 2.0});
    const ComplexMatrix b = ComplexMatrix::diagonal({3.0, 4.0});
    const ComplexMatrix k = kron(a, b);
    CHECK(k(0, 0).real() == 3.0);
    CHECK(k(1, 1).real() == 4.0);
    CHECK(k(2, 2).real() == 6.0);
    CHECK(k(3, 3).real() == 8.0);
}

TEST_CASE("trace cyclicity on random pairs") {
    Rng rng(11);
    for (int rep = 0; rep < 20; ++rep) {
        const ComplexMatrix a = qtest::random_complex_matrix(rng, 4);
        const ComplexMatrix b = qtest::random_complex_matrix(rng, 4);
        const Complex ab = (a * b).trace();
        const Complex ba = (b * a).trace();
        CHECK(std::abs(ab - ba) < 1e-12);
    }
}

TEST_CASE("adjoint conjugates and transposes") {
    ComplexMatrix m(2, 2, {Complex(1, 2), Complex(3, -4), Complex(0, 1), Complex(-2, 0)});
    const ComplexMatrix a = m.adjoint();
    CHECK(a(0, 0) == Complex(1, -2));
    CHECK(a(0, 1) == Complex(0, -1));
    CHECK(a(1, 0) == Complex(3, 4));
    CHECK(a(1, 1) == Complex(-2, 0));
}

TEST_CASE("hermitian_eigen rejects non-Hermitian input") {
    ComplexMatrix m(2, 2, {Complex(0), Complex(1), Complex(0), Complex(0)});
    CHECK_THROWS_AS((void)hermitian_eigen(m), NotHermitian);
}

TEST_CASE("hermitian_eigen on a diagonal matrix is exact and descending") {
    const ComplexMatrix d = ComplexMatrix::diagonal({0.25, 0.5, 0.15, 0.1});
    const EigenDecomposition eig = hermitian_eigen(d);
    CHECK(eig.eigenvalues[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(eig.eigenvalues[1] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(eig.eigenvalues[2] == doctest::Approx(0.15).epsilon(1e-15));
    CHECK(eig.eigenvalues[3] == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("hermitian_eigen solves the standard 2x2 antisymmetric-imaginary matrix") {
    const EigenDecomposition eig = hermitian_eigen(pauli_y());
    CHECK(eig.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(eig.eigenvalues[1] == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("hermitian_eigen reconstructs random Hermitian matrices") {
    Rng rng(22);
    for (int rep = 0; rep < 25; ++rep) {
        const ComplexMatrix h = qtest::random_hermitian(rng, 4);
        const EigenDecomposition eig = hermitian_eigen(h);
        // V diag(lambda) V^dagger must reproduce the input.
        const ComplexMatrix lambda = ComplexMatrix::diagonal(
            std::vector<Complex>(eig.eigenvalues.begin(), eig.eigenvalues.end()));
        const ComplexMatrix rebuilt = eig.eigenvectors * lambda * eig.eigenvectors.adjoint();
        CHECK(max_abs_diff(rebuilt, h) < 1e-12);
        // Eigenvectors orthonormal.
        const ComplexMatrix gram = eig.eigenvectors.adjoint() * eig.eigenvectors;
        CHECK(max_abs_diff(gram, ComplexMatrix::identity(4)) < 1e-12);
        // Order descending.
        for (std::size_t k = 1; k < eig.eigenvalues.size(); ++k)
            CHECK(eig.eigenvalues[k - 1] >= eig.eigenvalues[k]);
    }
}

TEST_CASE("hermitian_eigen matches the characteristic-polynomial oracle") {
    Rng rng(33);
    for (int rep = 0; rep < 25; ++rep) {
        ComplexMatrix h = qtest::random_hermitian(rng, 4);
        // Shift to be comfortably PSD so the oracle's clipping never acts.
        const EigenDecomposition pre = hermitian_eigen(h);
        const double shift = std::abs(pre.eigenvalues.back()) + 1.0;
        for (std::size_t d = 0; d < 4; ++d) h(d, d) += shift;
        const EigenDecomposition eig = hermitian_eigen(h);
        const auto oracle = qtest::char_poly_spectrum(h);
        for (std::size_t k = 0; k < 4; ++k)
            CHECK(std::abs(eig.eigenvalues[k] - oracle[k]) < 1e-10);
    }
}

TEST_CASE("sqrt_psd squares back to the input") {
    Rng rng(44);
    for (int rep = 0; rep < 20; ++rep) {
        const ComplexMatrix g = qtest::random_complex_matrix(rng, 4);
        const ComplexMatrix psd = g * g.adjoint();
        const ComplexMatrix root = sqrt_psd(psd);
        CHECK(max_abs_diff(root * root, psd) < 1e-10 * frobenius_norm(psd));
        CHECK(root.is_hermitian(1e-10));
    }
}

TEST_CASE("sqrt_psd of a diagonal matrix takes entrywise roots") {
    const ComplexMatrix root = sqrt_psd(ComplexMatrix::diagonal({4.0, 1.0, 0.25, 0.0}));
    CHECK(root(0, 0).real() == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(root(1, 1).real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(root(2, 2).real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::abs(root(3, 3)) < 1e-14);
}

TEST_CASE("sqrt_psd rejects clearly negative spectra but forgives tiny dips") {
    CHECK_THROWS_AS((void)sqrt_psd(ComplexMatrix::diagonal({1.0, 0.5, 0.1, -1e-4})), NotPSD);
    const ComplexMatrix root = sqrt_psd(ComplexMatrix::diagonal({1.0, 0.5, 0.1, -5e-11}));
    CHECK(std::abs(root(3, 3)) < 1e-5);
}

TEST_CASE("spectrum of the half-mixed Bell mixture") {
    const DensityMatrix rho = qtest::werner(0.5);
    const EigenDecomposition eig = hermitian_eigen(rho.matrix());
    CHECK(eig.eigenvalues[0] == doctest::Approx(0.625).epsilon(1e-13));
    for (int k = 1; k < 4; ++k)
        CHECK(eig.eigenvalues[k] == doctest::Approx(0.125).epsilon(1e-13));
}

} // TEST_SUITE
