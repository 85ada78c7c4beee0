#include "qtriality/states.hpp"

#include "jacobi_ld.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <utility>

namespace qtriality {

namespace {

constexpr double kValidationTol = 1e-10;
constexpr double kNormTol = 1e-10;

detail::MatLD to_ld(const ComplexMatrix& m) {
    detail::MatLD r(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r.at(i, j) = detail::CLD(m(i, j).real(), m(i, j).imag());
    return r;
}

std::size_t expected_dim(SystemLabel label) { return label == SystemLabel::AB ? 4 : 2; }

} // namespace

std::string system_label_name(SystemLabel label) {
    switch (label) {
        case SystemLabel::AB: return "AB";
        case SystemLabel::A: return "A";
        case SystemLabel::B: return "B";
    }
    throw std::logic_error("system_label_name: unreachable");
}

SystemLabel system_label_from_name(const std::string& name) {
    if (name == "AB") return SystemLabel::AB;
    if (name == "A") return SystemLabel::A;
    if (name == "B") return SystemLabel::B;
    throw ValidationError("unknown system label: " + name);
}

PrepParams::PrepParams(double alpha_, double theta_) : alpha(alpha_), theta(theta_) {
    const double pi = std::acos(-1.0);
    const double slack = 1e-12;
    if (!(alpha >= -slack && alpha <= pi + slack) || !(theta >= -slack && theta <= pi + slack)) {
        throw ValidationError("PrepParams: angles must lie in [0, pi]");
    }
}

PureTwoQubitState::PureTwoQubitState(std::array<Complex, 4> amplitudes)
    : amps_(amplitudes) {
    double norm2 = 0.0;
    for (const Complex& a : amps_) norm2 += std::norm(a);
    if (std::abs(std::sqrt(norm2) - 1.0) > kNormTol) {
        throw ValidationError("PureTwoQubitState: amplitudes are not normalized");
    }
}

PureTwoQubitState PureTwoQubitState::normalized(std::array<Complex, 4> amplitudes) {
    double norm2 = 0.0;
    for (const Complex& a : amplitudes) norm2 += std::norm(a);
    if (norm2 <= 0.0) throw ValidationError("PureTwoQubitState: cannot normalize the zero vector");
    const double inv = 1.0 / std::sqrt(norm2);
    for (Complex& a : amplitudes) a *= inv;
    return PureTwoQubitState(amplitudes);
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, SystemLabel label)
    : matrix_(std::move(matrix)), label_(label) {
    const std::size_t n = expected_dim(label_);
    if (matrix_.rows() != n || matrix_.cols() != n) {
        throw ValidationError("DensityMatrix: matrix dimension does not match the system label");
    }
    if (!matrix_.is_hermitian(kValidationTol)) {
        throw NotHermitian("DensityMatrix: matrix is not Hermitian within 1e-10");
    }
    const Complex tr = matrix_.trace();
    if (std::abs(tr - Complex(1.0)) > kValidationTol) {
        throw ValidationError("DensityMatrix: trace is not 1 within 1e-10");
    }

    detail::EigenLD eig = detail::jacobi_hermitian(to_ld(matrix_));
    bool clipped = false;
    for (long double& lambda : eig.values) {
        if (lambda < 0.0L) {
            if (lambda < -static_cast<long double>(kValidationTol)) {
                throw NotPSD("DensityMatrix: eigenvalue below -1e-10");
            }
            lambda = 0.0L;
            clipped = true;
        }
    }

    if (clipped) {
        // Rebuild from the repaired spectrum and renormalize the trace. When
        // nothing was clipped the original entries are kept untouched.
        long double sum = 0.0L;
        for (long double lambda : eig.values) sum += lambda;
        for (long double& lambda : eig.values) lambda /= sum;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                detail::CLD acc(0.0L, 0.0L);
                for (std::size_t k = 0; k < n; ++k)
                    acc += eig.vectors.at(i, k) * eig.values[k] * std::conj(eig.vectors.at(j, k));
                matrix_(i, j) = Complex(static_cast<double>(acc.real()),
                                        static_cast<double>(acc.imag()));
            }
        }
    }

    eigenvalues_.resize(n);
    for (std::size_t i = 0; i < n; ++i) eigenvalues_[i] = static_cast<double>(eig.values[i]);
}

ComplexMatrix ry(double alpha) {
    const double c = std::cos(alpha / 2.0);
    const double s = std::sin(alpha / 2.0);
    return ComplexMatrix(2, 2, {Complex(c), Complex(-s), Complex(s), Complex(c)});
}

ComplexMatrix cu3_theta(double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    ComplexMatrix u = ComplexMatrix::identity(4);
    u(2, 2) = c;
    u(2, 3) = -s;
    u(3, 2) = s;
    u(3, 3) = c;
    return u;
}

PureTwoQubitState prepare_state(const PrepParams& p) {
    const double ca = std::cos(p.alpha / 2.0);
    const double sa = std::sin(p.alpha / 2.0);
    const double ct = std::cos(p.theta / 2.0);
    const double st = std::sin(p.theta / 2.0);
    return PureTwoQubitState({Complex(ca), Complex(0.0), Complex(ct * sa), Complex(st * sa)});
}

DensityMatrix density_from_pure(const PureTwoQubitState& s) {
    ComplexMatrix rho(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            rho(i, j) = s.amplitude(i) * std::conj(s.amplitude(j));
    return DensityMatrix(std::move(rho), SystemLabel::AB);
}

DensityMatrix partial_trace(const DensityMatrix& rho, SystemLabel keep) {
    if (rho.label() != SystemLabel::AB) {
        throw ValidationError("partial_trace: input must describe the full pair");
    }
    if (keep == SystemLabel::AB) {
        throw ValidationError("partial_trace: keep must name one qubit");
    }
    const ComplexMatrix& m = rho.matrix();
    ComplexMatrix r(2, 2);
    if (keep == SystemLabel::A) {
        // Sum over qubit B: basis index is 2a + b.
        r(0, 0) = m(0, 0) + m(1, 1);
        r(0, 1) = m(0, 2) + m(1, 3);
        r(1, 0) = m(2, 0) + m(3, 1);
        r(1, 1) = m(2, 2) + m(3, 3);
    } else {
        r(0, 0) = m(0, 0) + m(2, 2);
        r(0, 1) = m(0, 1) + m(2, 3);
        r(1, 0) = m(1, 0) + m(3, 2);
        r(1, 1) = m(1, 1) + m(3, 3);
    }
    return DensityMatrix(std::move(r), keep);
}

double purity(const DensityMatrix& rho) {
    // For Hermitian rho, Tr(rho^2) equals the squared Frobenius norm.
    const ComplexMatrix& m = rho.matrix();
    long double s = 0.0L;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Complex& e = m(i, j);
            s += static_cast<long double>(e.real()) * e.real() +
                 static_cast<long double>(e.imag()) * e.imag();
        }
    double p = static_cast<double>(s);
    if (p < 0.0) p = 0.0;
    if (p > 1.0) p = 1.0;
    return p;
}

std::string density_matrix_to_json(const DensityMatrix& rho) {
    nlohmann::ordered_json j;
    j["label"] = system_label_name(rho.label());
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    const ComplexMatrix& m = rho.matrix();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t k = 0; k < m.cols(); ++k)
            entries.push_back({m(i, k).real(), m(i, k).imag()});
    j["entries"] = std::move(entries);
    return j.dump();
}

DensityMatrix density_matrix_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("density matrix JSON: ") + e.what());
    }
    if (!j.contains("label") || !j.contains("entries")) {
        throw ValidationError("density matrix JSON: missing label or entries");
    }
    const SystemLabel label = system_label_from_name(j["label"].get<std::string>());
    const std::size_t n = expected_dim(label);
    const auto& entries = j["entries"];
    if (!entries.is_array() || entries.size() != n * n) {
        throw ValidationError("density matrix JSON: wrong entry count for label");
    }
    std::vector<Complex> data;
    data.reserve(n * n);
    for (const auto& e : entries) {
        if (!e.is_array() || e.size() != 2) {
            throw ValidationError("density matrix JSON: each entry must be [re, im]");
        }
        data.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return DensityMatrix(ComplexMatrix(n, n, std::move(data)), label);
}

} // namespace qtriality
