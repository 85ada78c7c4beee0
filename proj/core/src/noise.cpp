#include "qtriality/noise.hpp"

#include "qtriality/rng.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <utility>

namespace qtriality {

namespace {

constexpr double kRowSumTol = 1e-12;
constexpr double kProbSlack = 1e-9;

void require_probability(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ValidationError(std::string("NoiseModel: ") + name + " must lie in [0, 1]");
    }
}

// Lift a single-qubit Kraus operator onto the pair.
ComplexMatrix lift(const ComplexMatrix& k, SystemLabel qubit) {
    return qubit == SystemLabel::A ? kron(k, ComplexMatrix::identity(2))
                                   : kron(ComplexMatrix::identity(2), k);
}

ComplexMatrix apply_kraus_pair(const ComplexMatrix& rho, const ComplexMatrix& k0,
                               const ComplexMatrix& k1) {
    return k0 * rho * k0.adjoint() + k1 * rho * k1.adjoint();
}

} // namespace

void ReadoutConfusion::validate() const {
    for (const auto& row : rows) {
        for (double p : row) {
            if (!(p >= 0.0 && p <= 1.0)) {
                throw ValidationError("ReadoutConfusion: probabilities must lie in [0, 1]");
            }
        }
        if (std::abs(row[0] + row[1] - 1.0) > kRowSumTol) {
            throw ValidationError("ReadoutConfusion: rows must sum to 1 within 1e-12");
        }
    }
}

void NoiseModel::validate() const {
    require_probability(depol_1q, "depol_1q");
    require_probability(depol_2q, "depol_2q");
    require_probability(amp_damping_gamma, "amp_damping_gamma");
    require_probability(phase_damping_gamma, "phase_damping_gamma");
    for (const ReadoutConfusion& rc : readout_confusion) rc.validate();
}

NoiseModel NoiseModel::from_json_string(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("noise model JSON: ") + e.what());
    }
    if (!j.is_object()) throw ValidationError("noise model JSON: expected an object");

    NoiseModel nm;
    try {
        nm.depol_1q = j.value("depol_1q", 0.0);
        nm.depol_2q = j.value("depol_2q", 0.0);
        nm.amp_damping_gamma = j.value("amp_damping_gamma", 0.0);
        nm.phase_damping_gamma = j.value("phase_damping_gamma", 0.0);
        if (j.contains("readout_confusion")) {
            const auto& rc = j["readout_confusion"];
            if (!rc.is_array() || rc.size() != 2) {
                throw ValidationError(
                    "noise model JSON: readout_confusion must hold one 2x2 matrix per qubit");
            }
            for (std::size_t q = 0; q < 2; ++q) {
                const auto& m = rc[q];
                if (!m.is_array() || m.size() != 2 || !m[0].is_array() || m[0].size() != 2 ||
                    !m[1].is_array() || m[1].size() != 2) {
                    throw ValidationError("noise model JSON: readout_confusion entries must be 2x2");
                }
                for (std::size_t r = 0; r < 2; ++r)
                    for (std::size_t c = 0; c < 2; ++c)
                        nm.readout_confusion[q].rows[r][c] = m[r][c].get<double>();
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("noise model JSON: ") + e.what());
    }
    nm.validate();
    return nm;
}

NoiseModel NoiseModel::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("noise model JSON: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_string(buf.str());
}

CountsTable::CountsTable(BasisSetting s, std::array<std::uint64_t, 4> c, std::uint64_t n)
    : setting(s), counts(c), shots(n) {
    const std::uint64_t total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    if (total != shots) {
        throw ValidationError("CountsTable: counts do not sum to the shot count");
    }
}

std::string CountsTable::outcome_label(std::size_t index) {
    static const std::array<std::string, 4> labels = {"00", "01", "10", "11"};
    return labels.at(index);
}

DensityMatrix depolarize(const DensityMatrix& rho, double p, NoiseTarget target) {
    require_probability(p, "depolarize strength");
    if (rho.label() != SystemLabel::AB) {
        throw ValidationError("depolarize: expected the full two-qubit state");
    }
    ComplexMatrix mixed(4, 4);
    switch (target) {
        case NoiseTarget::Both:
            mixed = Complex(0.25) * ComplexMatrix::identity(4);
            break;
        case NoiseTarget::A:
            mixed = Complex(0.5) * kron(ComplexMatrix::identity(2),
                                        partial_trace(rho, SystemLabel::B).matrix());
            break;
        case NoiseTarget::B:
            mixed = Complex(0.5) * kron(partial_trace(rho, SystemLabel::A).matrix(),
                                        ComplexMatrix::identity(2));
            break;
    }
    ComplexMatrix out = Complex(1.0 - p) * rho.matrix() + Complex(p) * mixed;
    return DensityMatrix(std::move(out), SystemLabel::AB);
}

DensityMatrix damp(const DensityMatrix& rho, double gamma_amp, double gamma_phase,
                   SystemLabel qubit) {
    require_probability(gamma_amp, "amplitude damping gamma");
    require_probability(gamma_phase, "phase damping gamma");
    if (rho.label() != SystemLabel::AB) {
        throw ValidationError("damp: expected the full two-qubit state");
    }
    if (qubit == SystemLabel::AB) {
        throw ValidationError("damp: qubit must be A or B");
    }

    ComplexMatrix m = rho.matrix();
    if (gamma_amp > 0.0) {
        ComplexMatrix k0(2, 2, {Complex(1.0), Complex(0.0), Complex(0.0),
                                Complex(std::sqrt(1.0 - gamma_amp))});
        ComplexMatrix k1(2, 2, {Complex(0.0), Complex(std::sqrt(gamma_amp)), Complex(0.0),
                                Complex(0.0)});
        m = apply_kraus_pair(m, lift(k0, qubit), lift(k1, qubit));
    }
    if (gamma_phase > 0.0) {
        ComplexMatrix k0(2, 2, {Complex(1.0), Complex(0.0), Complex(0.0),
                                Complex(std::sqrt(1.0 - gamma_phase))});
        ComplexMatrix k1(2, 2, {Complex(0.0), Complex(0.0), Complex(0.0),
                                Complex(std::sqrt(gamma_phase))});
        m = apply_kraus_pair(m, lift(k0, qubit), lift(k1, qubit));
    }
    return DensityMatrix(std::move(m), SystemLabel::AB);
}

DensityMatrix run_noisy_prep(const PrepParams& p, const NoiseModel& nm) {
    nm.validate();

    ComplexMatrix rho(4, 4);
    rho(0, 0) = 1.0;
    DensityMatrix state(std::move(rho), SystemLabel::AB);

    // Gate 1: Ry(alpha) on qubit A.
    const ComplexMatrix u1 = kron(ry(p.alpha), ComplexMatrix::identity(2));
    state = DensityMatrix(u1 * state.matrix() * u1.adjoint(), SystemLabel::AB);
    if (nm.depol_1q > 0.0) state = depolarize(state, nm.depol_1q, NoiseTarget::A);
    if (nm.amp_damping_gamma > 0.0 || nm.phase_damping_gamma > 0.0) {
        state = damp(state, nm.amp_damping_gamma, nm.phase_damping_gamma, SystemLabel::A);
        state = damp(state, nm.amp_damping_gamma, nm.phase_damping_gamma, SystemLabel::B);
    }

    // Gate 2: the controlled rotation.
    const ComplexMatrix u2 = cu3_theta(p.theta);
    state = DensityMatrix(u2 * state.matrix() * u2.adjoint(), SystemLabel::AB);
    if (nm.depol_2q > 0.0) state = depolarize(state, nm.depol_2q, NoiseTarget::Both);
    if (nm.amp_damping_gamma > 0.0 || nm.phase_damping_gamma > 0.0) {
        state = damp(state, nm.amp_damping_gamma, nm.phase_damping_gamma, SystemLabel::A);
        state = damp(state, nm.amp_damping_gamma, nm.phase_damping_gamma, SystemLabel::B);
    }
    return state;
}

std::array<double, 4> outcome_probabilities(const ComplexMatrix& rho, BasisSetting setting) {
    if (rho.rows() != 4 || rho.cols() != 4) {
        throw ValidationError("outcome_probabilities: expected a 4x4 matrix");
    }
    const ComplexMatrix u = kron(basis_rotation(setting.basis_a), basis_rotation(setting.basis_b));
    const ComplexMatrix rotated = u * rho * u.adjoint();
    std::array<double, 4> probs{};
    for (std::size_t i = 0; i < 4; ++i) {
        double p = rotated(i, i).real();
        if (p < -kProbSlack || p > 1.0 + kProbSlack) {
            throw InvalidProbabilities("outcome probability outside [-1e-9, 1 + 1e-9]");
        }
        probs[i] = std::min(std::max(p, 0.0), 1.0);
    }
    return probs;
}

std::array<double, 4> expected_frequencies(const DensityMatrix& rho, BasisSetting setting,
                                           const NoiseModel& nm) {
    if (rho.label() != SystemLabel::AB) {
        throw ValidationError("expected_frequencies: expected the full two-qubit state");
    }
    nm.validate();
    const std::array<double, 4> ideal = outcome_probabilities(rho.matrix(), setting);

    // Readout confusion factorizes per qubit: P(read ab | true a'b').
    std::array<double, 4> confused{};
    const auto& ca = nm.readout_confusion[0].rows;
    const auto& cb = nm.readout_confusion[1].rows;
    for (std::size_t ta = 0; ta < 2; ++ta)
        for (std::size_t tb = 0; tb < 2; ++tb)
            for (std::size_t ra = 0; ra < 2; ++ra)
                for (std::size_t rb = 0; rb < 2; ++rb)
                    confused[ra * 2 + rb] += ideal[ta * 2 + tb] * ca[ta][ra] * cb[tb][rb];

    double total = confused[0] + confused[1] + confused[2] + confused[3];
    if (total <= 0.0) throw InvalidProbabilities("outcome probabilities sum to zero");
    for (double& p : confused) p /= total;
    return confused;
}

CountsTable sample_counts(const DensityMatrix& rho, BasisSetting setting, std::uint64_t shots,
                          const NoiseModel& nm, std::uint64_t seed) {
    const std::array<double, 4> confused = expected_frequencies(rho, setting, nm);
    Rng rng(seed);
    return CountsTable(setting, multinomial_sample(confused, shots, rng), shots);
}

} // namespace qtriality
