#include "qtriality/linalg.hpp"

#include "jacobi_ld.hpp"

#include <cmath>

namespace qtriality {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kPsdTol = 1e-10;

detail::MatLD to_ld(const ComplexMatrix& m) {
    detail::MatLD r(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r.at(i, j) = detail::CLD(m(i, j).real(), m(i, j).imag());
    return r;
}

ComplexMatrix to_double(const detail::MatLD& m) {
    ComplexMatrix r(m.n, m.n);
    for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = 0; j < m.n; ++j)
            r(i, j) = Complex(static_cast<double>(m.at(i, j).real()),
                              static_cast<double>(m.at(i, j).imag()));
    return r;
}

void require_hermitian(const ComplexMatrix& h) {
    if (h.rows() != h.cols()) throw NotHermitian("hermitian_eigen: matrix is not square");
    if (!h.is_hermitian(kHermitianTol)) {
        throw NotHermitian("hermitian_eigen: matrix deviates from its adjoint by more than 1e-10");
    }
}

} // namespace

EigenDecomposition hermitian_eigen(const ComplexMatrix& h) {
    require_hermitian(h);
    detail::EigenLD eig = detail::jacobi_hermitian(to_ld(h));
    EigenDecomposition out;
    out.eigenvalues.resize(eig.values.size());
    for (std::size_t i = 0; i < eig.values.size(); ++i)
        out.eigenvalues[i] = static_cast<double>(eig.values[i]);
    out.eigenvectors = to_double(eig.vectors);
    return out;
}

ComplexMatrix sqrt_psd(const ComplexMatrix& h) {
    require_hermitian(h);
    detail::EigenLD eig = detail::jacobi_hermitian(to_ld(h));
    const std::size_t n = h.rows();
    std::vector<long double> roots(n);
    for (std::size_t i = 0; i < n; ++i) {
        long double lambda = eig.values[i];
        if (lambda < 0.0L) {
            if (lambda < -static_cast<long double>(kPsdTol)) {
                throw NotPSD("sqrt_psd: eigenvalue below -1e-10");
            }
            lambda = 0.0L;
        }
        roots[i] = std::sqrt(lambda);
    }
    detail::MatLD s(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            detail::CLD acc(0.0L, 0.0L);
            for (std::size_t k = 0; k < n; ++k)
                acc += eig.vectors.at(i, k) * roots[k] * std::conj(eig.vectors.at(j, k));
            s.at(i, j) = acc;
        }
    return to_double(s);
}

} // namespace qtriality
