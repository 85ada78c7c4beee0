#pragma once

// Internal cyclic Jacobi eigensolver for small Hermitian matrices, carried in
// 80-bit extended precision. Callers in this library funnel through here so
// that eigenvalues of near rank-deficient matrices (pure-state density
// matrices, Wootters surrogates) keep their tiny magnitudes instead of
// picking up double-rounding noise that a later square root would amplify.
// Not installed; the public API lives in qtriality/linalg.hpp.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <vector>

namespace qtriality::detail {

using CLD = std::complex<long double>;

struct MatLD {
    std::size_t n = 0;
    std::vector<CLD> a; // row-major n x n

    explicit MatLD(std::size_t dim) : n(dim), a(dim * dim, CLD(0.0L, 0.0L)) {}

    CLD& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    const CLD& at(std::size_t i, std::size_t j) const { return a[i * n + j]; }

    static MatLD identity(std::size_t dim) {
        MatLD m(dim);
        for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 1.0L;
        return m;
    }
};

inline MatLD matmul(const MatLD& x, const MatLD& y) {
    MatLD r(x.n);
    for (std::size_t i = 0; i < x.n; ++i)
        for (std::size_t j = 0; j < x.n; ++j) {
            CLD s(0.0L, 0.0L);
            for (std::size_t k = 0; k < x.n; ++k) s += x.at(i, k) * y.at(k, j);
            r.at(i, j) = s;
        }
    return r;
}

inline long double off_diagonal_frobenius(const MatLD& m) {
    long double s = 0.0L;
    for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = 0; j < m.n; ++j)
            if (i != j) s += std::norm(m.at(i, j));
    return std::sqrt(s);
}

struct EigenLD {
    std::vector<long double> values; // descending
    MatLD vectors;                   // columns, matching order

    explicit EigenLD(std::size_t n) : values(n, 0.0L), vectors(n) {}
};

// Cyclic Jacobi sweeps. Convergence: off-diagonal Frobenius norm below the
// threshold, checked between sweeps, or the sweep cap. A complex rotation is
// a phase alignment of the pivot followed by a real Givens rotation.
inline EigenLD jacobi_hermitian(MatLD m, long double off_threshold = 1e-12L,
                                int max_sweeps = 100) {
    const std::size_t n = m.n;
    MatLD v = MatLD::identity(n);

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_frobenius(m) < off_threshold) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const CLD apq = m.at(p, q);
                const long double mag = std::abs(apq);
                if (mag == 0.0L) continue;

                // Unitary U on the (p,q) plane: U = diag(1, e^{-i phi}) * G,
                // where phi = arg(a_pq) and G is the classic symmetric-case
                // Givens rotation for [[a_pp, |a_pq|], [|a_pq|, a_qq]].
                const CLD phase = apq / mag; // e^{i phi}
                const long double app = m.at(p, p).real();
                const long double aqq = m.at(q, q).real();
                const long double tau = (aqq - app) / (2.0L * mag);
                long double t;
                if (tau >= 0.0L)
                    t = 1.0L / (tau + std::sqrt(1.0L + tau * tau));
                else
                    t = -1.0L / (-tau + std::sqrt(1.0L + tau * tau));
                const long double c = 1.0L / std::sqrt(1.0L + t * t);
                const long double s = t * c;

                const CLD upp(c, 0.0L);
                const CLD upq(s, 0.0L);
                const CLD uqp = -s * std::conj(phase);
                const CLD uqq = c * std::conj(phase);

                // m <- U^dagger m U, applied as row then column updates.
                for (std::size_t k = 0; k < n; ++k) {
                    const CLD mpk = m.at(p, k);
                    const CLD mqk = m.at(q, k);
                    m.at(p, k) = std::conj(upp) * mpk + std::conj(uqp) * mqk;
                    m.at(q, k) = std::conj(upq) * mpk + std::conj(uqq) * mqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const CLD mkp = m.at(k, p);
                    const CLD mkq = m.at(k, q);
                    m.at(k, p) = mkp * upp + mkq * uqp;
                    m.at(k, q) = mkp * upq + mkq * uqq;
                }
                m.at(p, q) = CLD(0.0L, 0.0L);
                m.at(q, p) = CLD(0.0L, 0.0L);

                for (std::size_t k = 0; k < n; ++k) {
                    const CLD vkp = v.at(k, p);
                    const CLD vkq = v.at(k, q);
                    v.at(k, p) = vkp * upp + vkq * uqp;
                    v.at(k, q) = vkp * upq + vkq * uqq;
                }
            }
        }
    }

    EigenLD out(n);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<long double> diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = m.at(i, i).real();
    // Stable sort keeps the sweep's ordering for degenerate eigenvalues.
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return diag[a] > diag[b]; });
    for (std::size_t i = 0; i < n; ++i) {
        out.values[i] = diag[order[i]];
        for (std::size_t k = 0; k < n; ++k) out.vectors.at(k, i) = v.at(k, order[i]);
    }
    return out;
}

} // namespace qtriality::detail
