#include "qtriality/tomography.hpp"

#include "qtriality/linalg.hpp"
#include "qtriality/rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>

namespace qtriality {

namespace {

constexpr double kExpectationSlack = 1e-9;
constexpr double kTraceTol = 1e-6;
constexpr double kHermitianTol = 1e-8;

ComplexMatrix pauli_matrix(Pauli p) {
    switch (p) {
        case Pauli::I: return ComplexMatrix::identity(2);
        case Pauli::X: return pauli_x();
        case Pauli::Y: return pauli_y();
        case Pauli::Z: return pauli_z();
    }
    throw std::logic_error("pauli_matrix: unreachable");
}

Pauli pauli_from_basis(PauliBasis b) {
    switch (b) {
        case PauliBasis::X: return Pauli::X;
        case PauliBasis::Y: return Pauli::Y;
        case PauliBasis::Z: return Pauli::Z;
    }
    throw std::logic_error("pauli_from_basis: unreachable");
}

double outcome_sign(std::size_t bit) { return bit == 0 ? 1.0 : -1.0; }

} // namespace

ExpectationSet::ExpectationSet() {
    for (auto& row : values_)
        for (double& v : row) v = 0.0;
    values_[0][0] = 1.0;
}

double ExpectationSet::get(Pauli a, Pauli b) const {
    return values_[static_cast<int>(a)][static_cast<int>(b)];
}

void ExpectationSet::set(Pauli a, Pauli b, double value) {
    if (a == Pauli::I && b == Pauli::I) {
        throw ValidationError("ExpectationSet: the (I, I) term is fixed at 1");
    }
    values_[static_cast<int>(a)][static_cast<int>(b)] = value;
}

void ExpectationSet::validate() const {
    for (const auto& row : values_)
        for (double v : row)
            if (!(v >= -1.0 - kExpectationSlack && v <= 1.0 + kExpectationSlack)) {
                throw ValidationError("ExpectationSet: value outside [-1, 1]");
            }
}

ExpectationSet expectations_from_frequencies(
    const std::array<std::array<double, 4>, 9>& frequencies) {
    for (const auto& f : frequencies) {
        double total = 0.0;
        for (double x : f) {
            if (x < 0.0) throw ValidationError("outcome frequencies must be nonnegative");
            total += x;
        }
        if (std::abs(total - 1.0) > 1e-9)
            throw ValidationError("outcome frequencies must sum to 1");
    }

    ExpectationSet e;
    const std::array<PauliBasis, 3> bases = {PauliBasis::X, PauliBasis::Y, PauliBasis::Z};

    // Correlators, each from its own setting.
    for (PauliBasis a : bases) {
        for (PauliBasis b : bases) {
            const std::array<double, 4>& f = frequencies[BasisSetting{a, b}.index()];
            double corr = 0.0;
            for (std::size_t o = 0; o < 4; ++o)
                corr += outcome_sign(o >> 1) * outcome_sign(o & 1) * f[o];
            e.set(pauli_from_basis(a), pauli_from_basis(b), corr);
        }
    }

    // Single-qubit terms, averaged over the three compatible settings.
    for (PauliBasis a : bases) {
        double acc = 0.0;
        for (PauliBasis b : bases) {
            const std::array<double, 4>& f = frequencies[BasisSetting{a, b}.index()];
            acc += outcome_sign(0) * (f[0] + f[1]) + outcome_sign(1) * (f[2] + f[3]);
        }
        e.set(pauli_from_basis(a), Pauli::I, acc / 3.0);
    }
    for (PauliBasis b : bases) {
        double acc = 0.0;
        for (PauliBasis a : bases) {
            const std::array<double, 4>& f = frequencies[BasisSetting{a, b}.index()];
            acc += outcome_sign(0) * (f[0] + f[2]) + outcome_sign(1) * (f[1] + f[3]);
        }
        e.set(Pauli::I, pauli_from_basis(b), acc / 3.0);
    }

    e.validate();
    return e;
}

ExpectationSet estimate_expectations(std::span<const CountsTable> tables) {
    std::array<std::optional<std::size_t>, 9> by_setting{};
    for (std::size_t i = 0; i < tables.size(); ++i) {
        if (tables[i].shots == 0) {
            throw ValidationError("estimate_expectations: table with zero shots");
        }
        by_setting[tables[i].setting.index()] = i;
    }
    for (std::size_t s = 0; s < 9; ++s) {
        if (!by_setting[s]) {
            throw MissingSetting("estimate_expectations: no counts for setting " +
                                 setting_from_index(s).name());
        }
    }

    std::array<std::array<double, 4>, 9> frequencies{};
    for (std::size_t s = 0; s < 9; ++s) {
        const CountsTable& t = tables[*by_setting[s]];
        for (std::size_t o = 0; o < 4; ++o)
            frequencies[s][o] =
                static_cast<double>(t.counts[o]) / static_cast<double>(t.shots);
    }
    return expectations_from_frequencies(frequencies);
}

ExpectationSet exact_expectations(const DensityMatrix& rho) {
    if (rho.label() != SystemLabel::AB) {
        throw ValidationError("exact_expectations: expected the full two-qubit state");
    }
    ExpectationSet e;
    const std::array<Pauli, 4> paulis = {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};
    for (Pauli a : paulis) {
        for (Pauli b : paulis) {
            if (a == Pauli::I && b == Pauli::I) continue;
            const ComplexMatrix op = kron(pauli_matrix(a), pauli_matrix(b));
            e.set(a, b, (rho.matrix() * op).trace().real());
        }
    }
    e.validate();
    return e;
}

ComplexMatrix linear_inversion(const ExpectationSet& e) {
    e.validate();
    ComplexMatrix rho(4, 4);
    const std::array<Pauli, 4> paulis = {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};
    for (Pauli a : paulis) {
        for (Pauli b : paulis) {
            const double coeff = 0.25 * e.get(a, b);
            const ComplexMatrix op = kron(pauli_matrix(a), pauli_matrix(b));
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t j = 0; j < 4; ++j) rho(i, j) += coeff * op(i, j);
        }
    }
    return rho;
}

DensityMatrix project_to_physical(const ComplexMatrix& raw) {
    if (raw.rows() != 4 || raw.cols() != 4 || !raw.is_hermitian(kHermitianTol)) {
        throw NotHermitian("project_to_physical: input must be a Hermitian 4x4 matrix");
    }
    if (std::abs(raw.trace() - Complex(1.0)) > kTraceTol) {
        throw ValidationError("project_to_physical: trace must be within 1e-6 of 1");
    }

    EigenDecomposition eig = hermitian_eigen(raw);
    std::array<long double, 4> lambda{};
    for (std::size_t i = 0; i < 4; ++i) lambda[i] = eig.eigenvalues[i];
    std::array<bool, 4> active = {true, true, true, true};

    // Spread the unit-trace deficit evenly over the active support, clip
    // whatever went negative, and repeat; this is the exact Euclidean
    // projection of the spectrum onto the probability simplex.
    while (true) {
        long double sum = 0.0L;
        int n_active = 0;
        for (std::size_t i = 0; i < 4; ++i)
            if (active[i]) {
                sum += lambda[i];
                ++n_active;
            }
        const long double shift = (1.0L - sum) / n_active;
        for (std::size_t i = 0; i < 4; ++i)
            if (active[i]) lambda[i] += shift;

        bool any_negative = false;
        for (std::size_t i = 0; i < 4; ++i) {
            if (active[i] && lambda[i] < 0.0L) {
                lambda[i] = 0.0L;
                active[i] = false;
                any_negative = true;
            }
        }
        if (!any_negative) break;
    }

    ComplexMatrix out(4, 4);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            long double re = 0.0L, im = 0.0L;
            for (std::size_t k = 0; k < 4; ++k) {
                const Complex vik = eig.eigenvectors(i, k);
                const Complex vjk = eig.eigenvectors(j, k);
                const Complex prod = vik * std::conj(vjk);
                re += lambda[k] * prod.real();
                im += lambda[k] * prod.imag();
            }
            out(i, j) = Complex(static_cast<double>(re), static_cast<double>(im));
        }
    }
    return DensityMatrix(std::move(out), SystemLabel::AB);
}

TomographyRun tomography_run(const PrepParams& p, const NoiseModel& nm, std::uint64_t shots,
                             std::uint64_t seed) {
    const DensityMatrix prepared = run_noisy_prep(p, nm);

    std::vector<CountsTable> counts;
    std::vector<std::uint64_t> seeds;
    counts.reserve(9);
    seeds.reserve(9);
    for (const BasisSetting& setting : all_settings()) {
        const std::uint64_t setting_seed = derive_seed(seed, setting.index());
        counts.push_back(sample_counts(prepared, setting, shots, nm, setting_seed));
        seeds.push_back(setting_seed);
    }

    const ExpectationSet e = estimate_expectations(counts);
    DensityMatrix rho = project_to_physical(linear_inversion(e));
    return TomographyRun{std::move(rho), std::move(counts), std::move(seeds)};
}

DensityMatrix tomography_pipeline(const PrepParams& p, const NoiseModel& nm, std::uint64_t shots,
                                  std::uint64_t seed) {
    return tomography_run(p, nm, shots, seed).rho;
}

DensityMatrix tomography_limit(const PrepParams& p, const NoiseModel& nm) {
    const DensityMatrix prepared = run_noisy_prep(p, nm);
    std::array<std::array<double, 4>, 9> frequencies{};
    for (const BasisSetting& setting : all_settings())
        frequencies[setting.index()] = expected_frequencies(prepared, setting, nm);
    return project_to_physical(linear_inversion(expectations_from_frequencies(frequencies)));
}

} // namespace qtriality
