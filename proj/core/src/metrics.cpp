#include "qtriality/metrics.hpp"

#include "jacobi_ld.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace qtriality {

namespace {

constexpr double kSpectrumClipTol = 1e-10;
constexpr double kRecordSlack = 1e-9;

detail::MatLD to_ld(const ComplexMatrix& m) {
    detail::MatLD r(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r.at(i, j) = detail::CLD(m(i, j).real(), m(i, j).imag());
    return r;
}

// Signs of Y⊗Y along its anti-diagonal; (Y⊗Y) rho* (Y⊗Y) maps entry (i, j)
// to s_i s_j conj(rho(3-i, 3-j)).
constexpr std::array<double, 4> kFlipSign = {-1.0, 1.0, 1.0, -1.0};

detail::MatLD spin_flip_ld(const detail::MatLD& rho) {
    detail::MatLD r(4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            r.at(i, j) = static_cast<long double>(kFlipSign[i] * kFlipSign[j]) *
                         std::conj(rho.at(3 - i, 3 - j));
    return r;
}

// The four surrogate eigenvalues in extended precision, descending. The
// whole chain (sqrt of rho, the sandwich product, the second eigensolve)
// stays in long double: the small r_i of near-pure states sit at the square
// of the working precision, and the final square roots would amplify any
// double-rounding noise by half its exponent.
std::array<long double, 4> wootters_spectrum_ld(const DensityMatrix& rho) {
    detail::MatLD rho_ld = to_ld(rho.matrix());
    detail::EigenLD eig = detail::jacobi_hermitian(rho_ld);

    std::array<long double, 4> roots{};
    for (std::size_t i = 0; i < 4; ++i) {
        long double lambda = eig.values[i];
        if (lambda < 0.0L) lambda = 0.0L; // validation already bounded it at -1e-10
        roots[i] = std::sqrt(lambda);
    }
    detail::MatLD sqrt_rho(4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            detail::CLD acc(0.0L, 0.0L);
            for (std::size_t k = 0; k < 4; ++k)
                acc += eig.vectors.at(i, k) * roots[k] * std::conj(eig.vectors.at(j, k));
            sqrt_rho.at(i, j) = acc;
        }

    detail::MatLD m = detail::matmul(detail::matmul(sqrt_rho, spin_flip_ld(rho_ld)), sqrt_rho);
    // Symmetrize away the residual skew of the sandwich product.
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i; j < 4; ++j) {
            const detail::CLD h = 0.5L * (m.at(i, j) + std::conj(m.at(j, i)));
            m.at(i, j) = h;
            m.at(j, i) = std::conj(h);
        }

    detail::EigenLD meig = detail::jacobi_hermitian(m);
    std::array<long double, 4> r{};
    for (std::size_t i = 0; i < 4; ++i) {
        long double val = meig.values[i];
        if (val < 0.0L) {
            if (val < -static_cast<long double>(kSpectrumClipTol)) {
                throw NotPSD("concurrence: surrogate eigenvalue below -1e-10");
            }
            val = 0.0L;
        }
        r[i] = val;
    }
    return r;
}

void require_reduced(const DensityMatrix& rho, const char* op) {
    if (rho.label() == SystemLabel::AB) {
        throw ValidationError(std::string(op) + ": expected a single-qubit reduced state");
    }
}

void require_pair(const DensityMatrix& rho, const char* op) {
    if (rho.label() != SystemLabel::AB) {
        throw ValidationError(std::string(op) + ": expected the full two-qubit state");
    }
}

void validate_record(const TrialityRecord& rec) {
    const double lo = -kRecordSlack;
    const double hi = 1.0 + kRecordSlack;
    for (double v : {rec.v_a, rec.v_b, rec.p_a, rec.p_b, rec.c, rec.c_max, rec.purity,
                     rec.sum_a, rec.sum_b}) {
        if (!(v >= lo && v <= hi)) {
            throw ValidationError("TrialityRecord: field outside [0, 1]");
        }
    }
    if (rec.c > rec.c_max + kRecordSlack) {
        throw ValidationError("TrialityRecord: concurrence exceeds its purity ceiling");
    }
}

} // namespace

double concurrence_pure(const PureTwoQubitState& s) {
    const Complex det = s.amplitude(0) * s.amplitude(3) - s.amplitude(1) * s.amplitude(2);
    return 2.0 * std::abs(det);
}

ComplexMatrix spin_flip_conjugate(const ComplexMatrix& rho) {
    if (rho.rows() != 4 || rho.cols() != 4) {
        throw ValidationError("spin_flip_conjugate: expected a 4x4 matrix");
    }
    ComplexMatrix r(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            r(i, j) = kFlipSign[i] * kFlipSign[j] * std::conj(rho(3 - i, 3 - j));
    return r;
}

std::array<double, 4> wootters_spectrum(const DensityMatrix& rho) {
    require_pair(rho, "wootters_spectrum");
    const std::array<long double, 4> r = wootters_spectrum_ld(rho);
    return {static_cast<double>(r[0]), static_cast<double>(r[1]), static_cast<double>(r[2]),
            static_cast<double>(r[3])};
}

double concurrence_mixed(const DensityMatrix& rho) {
    require_pair(rho, "concurrence_mixed");
    const std::array<long double, 4> r = wootters_spectrum_ld(rho);
    const long double raw =
        std::sqrt(r[0]) - std::sqrt(r[1]) - std::sqrt(r[2]) - std::sqrt(r[3]);
    return raw > 0.0L ? static_cast<double>(raw) : 0.0;
}

double coherence(const DensityMatrix& reduced) {
    require_reduced(reduced, "coherence");
    const ComplexMatrix& m = reduced.matrix();
    return std::abs(m(0, 1)) + std::abs(m(1, 0));
}

double predictability(const DensityMatrix& reduced) {
    require_reduced(reduced, "predictability");
    const ComplexMatrix& m = reduced.matrix();
    return std::abs(m(1, 1).real() - m(0, 0).real());
}

double c_max(const DensityMatrix& rho) {
    require_pair(rho, "c_max");
    const std::vector<double>& l = rho.eigenvalues();
    const double raw = l[0] - l[2] - 2.0 * std::sqrt(l[1] * l[3]);
    return raw > 0.0 ? raw : 0.0;
}

TrialityRecord evaluate(const DensityMatrix& rho) {
    require_pair(rho, "evaluate");
    const DensityMatrix rho_a = partial_trace(rho, SystemLabel::A);
    const DensityMatrix rho_b = partial_trace(rho, SystemLabel::B);

    TrialityRecord rec{};
    rec.v_a = coherence(rho_a);
    rec.v_b = coherence(rho_b);
    rec.p_a = predictability(rho_a);
    rec.p_b = predictability(rho_b);
    rec.c = concurrence_mixed(rho);
    rec.c_max = c_max(rho);
    rec.purity = purity(rho);
    rec.sum_a = rec.v_a * rec.v_a + rec.p_a * rec.p_a + rec.c * rec.c;
    rec.sum_b = rec.v_b * rec.v_b + rec.p_b * rec.p_b + rec.c * rec.c;
    validate_record(rec);
    return rec;
}

TrialityRecord evaluate_pure(const PureTwoQubitState& s) {
    const Complex a = s.amplitude(0);
    const Complex b = s.amplitude(1);
    const Complex g = s.amplitude(2);
    const Complex d = s.amplitude(3);

    TrialityRecord rec{};
    rec.v_a = 2.0 * std::abs(a * std::conj(g) + b * std::conj(d));
    rec.v_b = 2.0 * std::abs(a * std::conj(b) + g * std::conj(d));
    rec.p_a = std::abs(std::norm(g) + std::norm(d) - std::norm(a) - std::norm(b));
    rec.p_b = std::abs(std::norm(b) + std::norm(d) - std::norm(a) - std::norm(g));
    rec.c = concurrence_pure(s);
    rec.c_max = 1.0;
    rec.purity = 1.0;
    rec.sum_a = rec.v_a * rec.v_a + rec.p_a * rec.p_a + rec.c * rec.c;
    rec.sum_b = rec.v_b * rec.v_b + rec.p_b * rec.p_b + rec.c * rec.c;
    validate_record(rec);
    return rec;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string record_csv_header() {
    return "alpha,theta,v_a,p_a,v_b,p_b,c,c_max,purity,sum_a,sum_b";
}

std::string record_csv_row(const TrialityRecord& rec, std::optional<PrepParams> angles) {
    std::string row;
    if (angles) {
        row += format_double(angles->alpha);
        row += ',';
        row += format_double(angles->theta);
    } else {
        row += ',';
    }
    for (double v : {rec.v_a, rec.p_a, rec.v_b, rec.p_b, rec.c, rec.c_max, rec.purity,
                     rec.sum_a, rec.sum_b}) {
        row += ',';
        row += format_double(v);
    }
    return row;
}

} // namespace qtriality
