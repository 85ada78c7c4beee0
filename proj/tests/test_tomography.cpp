#include "doctest.h"
#include "test_support.hpp"

#include "qtriality/errors.hpp"
#include "qtriality/metrics.hpp"
#include "qtriality/noise.hpp"
#include "qtriality/tomography.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

using namespace qtriality;

namespace {
constexpr double kPi = std::numbers::pi;

DensityMatrix bell_rho() { return density_from_pure(prepare_state(qtest::bell_params())); }

NoiseModel preset_like() {
    NoiseModel nm;
    nm.depol_1q = 0.002;
    nm.depol_2q = 0.03;
    nm.amp_damping_gamma = 0.002;
    nm.phase_damping_gamma = 0.002;
    nm.readout_confusion[0].rows = {{{0.97, 0.03}, {0.03, 0.97}}};
    nm.readout_confusion[1].rows = {{{0.97, 0.03}, {0.03, 0.97}}};
    return nm;
}
} // namespace

TEST_SUITE("tomography") {

TEST_CASE("settings enumerate in canonical order and round-trip by index") {
    const auto settings = all_settings();
    CHECK(settings.size() == 9);
    CHECK(settings[0].name() == "XX");
    CHECK(settings[1].name() == "XY");
    CHECK(settings[2].name() == "XZ");
    CHECK(settings[3].name() == "YX");
    CHECK(settings[8].name() == "ZZ");
    for (std::size_t i = 0; i < 9; ++i) {
        CHECK(settings[i].index() == i);
        CHECK(setting_from_index(i) == settings[i]);
    }
    CHECK_THROWS_AS((void)setting_from_index(9), std::out_of_range);
}

TEST_CASE("basis rotations are unitary and Z maps to the identity") {
    for (PauliBasis b : {PauliBasis::X, PauliBasis::Y, PauliBasis::Z}) {
        const ComplexMatrix u = basis_rotation(b);
        CHECK(max_abs_diff(u * u.adjoint(), ComplexMatrix::identity(2)) < 1e-15);
    }
    CHECK(max_abs_diff(basis_rotation(PauliBasis::Z), ComplexMatrix::identity(2)) == 0.0);
}

TEST_CASE("exact expectations of the maximally entangled state") {
    const ExpectationSet e = exact_expectations(bell_rho());
    CHECK(std::abs(e.get(Pauli::X, Pauli::X) - 1.0) < 1e-14);
    CHECK(std::abs(e.get(Pauli::Y, Pauli::Y) + 1.0) < 1e-14);
    CHECK(std::abs(e.get(Pauli::Z, Pauli::Z) - 1.0) < 1e-14);
    CHECK(std::abs(e.get(Pauli::X, Pauli::I)) < 1e-14);
    CHECK(std::abs(e.get(Pauli::I, Pauli::Z)) < 1e-14);
    CHECK(e.get(Pauli::I, Pauli::I) == 1.0);
}

TEST_CASE("exact expectations of the ground state") {
    const DensityMatrix ground = density_from_pure(prepare_state(PrepParams{0.0, kPi}));
    const ExpectationSet e = exact_expectations(ground);
    CHECK(std::abs(e.get(Pauli::Z, Pauli::I) - 1.0) < 1e-14);
    CHECK(std::abs(e.get(Pauli::I, Pauli::Z) - 1.0) < 1e-14);
    CHECK(std::abs(e.get(Pauli::Z, Pauli::Z) - 1.0) < 1e-14);
    CHECK(std::abs(e.get(Pauli::X, Pauli::X)) < 1e-14);
}

TEST_CASE("the identity-identity slot is fixed") {
    ExpectationSet e;
    CHECK(e.get(Pauli::I, Pauli::I) == 1.0);
    CHECK_THROWS_AS(e.set(Pauli::I, Pauli::I, 0.5), ValidationError);
    e.set(Pauli::X, Pauli::Y, 0.25);
    CHECK(e.get(Pauli::X, Pauli::Y) == 0.25);
    e.set(Pauli::X, Pauli::Y, 2.0);
    CHECK_THROWS_AS(e.validate(), ValidationError);
}

TEST_CASE("estimation from exact integer tables reproduces exact expectations") {
    // Build counts proportional to the exact outcome distribution of a state
    // whose probabilities are multiples of 1/4 in every basis.
    const DensityMatrix rho = bell_rho();
    std::vector<CountsTable> tables;
    const std::uint64_t shots = 400000;
    for (const BasisSetting& setting : all_settings()) {
        const auto probs = outcome_probabilities(rho.matrix(), setting);
        std::array<std::uint64_t, 4> counts{};
        std::uint64_t assigned = 0;
        for (std::size_t o = 0; o < 3; ++o) {
            counts[o] = static_cast<std::uint64_t>(std::llround(probs[o] * shots));
            assigned += counts[o];
        }
        counts[3] = shots - assigned;
        tables.emplace_back(setting, counts, shots);
    }
    const ExpectationSet est = estimate_expectations(tables);
    const ExpectationSet exact = exact_expectations(rho);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            const auto pa = static_cast<Pauli>(a);
            const auto pb = static_cast<Pauli>(b);
            CHECK(std::abs(est.get(pa, pb) - exact.get(pa, pb)) < 1e-9);
        }
}

TEST_CASE("estimation rejects incomplete or empty inputs") {
    std::vector<CountsTable> tables;
    for (const BasisSetting& setting : all_settings())
        tables.emplace_back(setting, std::array<std::uint64_t, 4>{25, 25, 25, 25}, 100);

    std::vector<CountsTable> missing(tables.begin(), tables.end() - 1);
    CHECK_THROWS_AS((void)estimate_expectations(missing), MissingSetting);

    std::vector<CountsTable> zero = tables;
    zero[4] = CountsTable(zero[4].setting, {0, 0, 0, 0}, 0);
    CHECK_THROWS_AS((void)estimate_expectations(zero), ValidationError);
}

TEST_CASE("frequency-based expectations validate their inputs") {
    std::array<std::array<double, 4>, 9> freqs{};
    for (auto& f : freqs) f = {0.25, 0.25, 0.25, 0.25};
    CHECK_NOTHROW((void)expectations_from_frequencies(freqs));

    auto bad_sum = freqs;
    bad_sum[2] = {0.3, 0.3, 0.3, 0.3};
    CHECK_THROWS_AS((void)expectations_from_frequencies(bad_sum), ValidationError);

    auto negative = freqs;
    negative[5] = {0.5, 0.5, 0.5, -0.5};
    CHECK_THROWS_AS((void)expectations_from_frequencies(negative), ValidationError);
}

TEST_CASE("linear inversion inverts exact expectations") {
    Rng rng(90);
    for (int rep = 0; rep < 25; ++rep) {
        const DensityMatrix rho = qtest::random_density(rng);
        const ComplexMatrix raw = linear_inversion(exact_expectations(rho));
        CHECK(max_abs_diff(raw, rho.matrix()) < 1e-12);
    }
}

TEST_CASE("linear inversion of estimated expectations is Hermitian, unit trace") {
    const DensityMatrix rho = bell_rho();
    std::vector<CountsTable> tables;
    for (const BasisSetting& setting : all_settings())
        tables.push_back(sample_counts(rho, setting, 500, NoiseModel{},
                                       derive_seed(4242, setting.index())));
    const ComplexMatrix raw = linear_inversion(estimate_expectations(tables));
    CHECK(raw.is_hermitian(1e-12));
    CHECK(std::abs(raw.trace().real() - 1.0) < 1e-12);
}

TEST_CASE("physical projection matches the hand-worked spectrum") {
    // Eigenvalues (1.1, 0.2, -0.2, -0.1) must project to (0.95, 0.05, 0, 0).
    const ComplexMatrix raw = ComplexMatrix::diagonal({1.1, 0.2, -0.2, -0.1});
    const DensityMatrix projected = project_to_physical(raw);
    const auto evals = projected.eigenvalues();
    CHECK(std::abs(evals[0] - 0.95) < 1e-12);
    CHECK(std::abs(evals[1] - 0.05) < 1e-12);
    CHECK(std::abs(evals[2]) < 1e-12);
    CHECK(std::abs(evals[3]) < 1e-12);
}

TEST_CASE("physical projection agrees with the sorted-threshold oracle") {
    Rng rng(91);
    for (int rep = 0; rep < 50; ++rep) {
        // Hermitian, unit-trace, generally non-positive inputs.
        ComplexMatrix h = qtest::random_hermitian(rng, 4);
        const double tr = h.trace().real();
        for (std::size_t i = 0; i < 4; ++i) h(i, i) -= (tr - 1.0) / 4.0;

        const EigenDecomposition eig = hermitian_eigen(h);
        const std::vector<double> oracle = qtest::simplex_project_oracle(
            {eig.eigenvalues[0], eig.eigenvalues[1], eig.eigenvalues[2], eig.eigenvalues[3]});

        const auto projected = project_to_physical(h).eigenvalues();
        for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(projected[i] - oracle[i]) < 1e-6);
    }
}

TEST_CASE("physical projection is idempotent") {
    Rng rng(92);
    for (int rep = 0; rep < 20; ++rep) {
        ComplexMatrix h = qtest::random_hermitian(rng, 4);
        const double tr = h.trace().real();
        for (std::size_t i = 0; i < 4; ++i) h(i, i) -= (tr - 1.0) / 4.0;
        const DensityMatrix once = project_to_physical(h);
        const DensityMatrix twice = project_to_physical(once.matrix());
        CHECK(max_abs_diff(once.matrix(), twice.matrix()) < 1e-10);
    }
}

TEST_CASE("physical projection validates its input") {
    Rng rng(93);
    const ComplexMatrix not_hermitian = qtest::random_complex_matrix(rng, 4);
    CHECK_THROWS_AS((void)project_to_physical(not_hermitian), NotHermitian);
    const ComplexMatrix wrong_trace = ComplexMatrix::diagonal({1.0, 1.0, 0.0, 0.0});
    CHECK_THROWS_AS((void)project_to_physical(wrong_trace), ValidationError);
}

TEST_CASE("the noiseless pipeline limit is the prepared state itself") {
    Rng rng(94);
    for (int rep = 0; rep < 10; ++rep) {
        const PrepParams p{rng.uniform(0.0, kPi), rng.uniform(0.0, kPi)};
        const DensityMatrix limit = tomography_limit(p, NoiseModel{});
        const DensityMatrix exact = density_from_pure(prepare_state(p));
        CHECK(max_abs_diff(limit.matrix(), exact.matrix()) < 1e-10);
    }
}

TEST_CASE("sampled reconstructions approach the pipeline limit as shots grow") {
    const NoiseModel nm = preset_like();
    const PrepParams p = qtest::bell_params();
    const DensityMatrix limit = tomography_limit(p, nm);

    double previous = 1e9;
    for (std::uint64_t shots : {1000ULL, 10000ULL, 100000ULL, 1000000ULL}) {
        const DensityMatrix rec = tomography_pipeline(p, nm, shots, 31);
        const double dist = max_abs_diff(rec.matrix(), limit.matrix());
        CHECK(dist < previous);
        previous = dist;
    }
    CHECK(previous < 0.01);
}

TEST_CASE("a heavy noiseless sample reconstructs the entangled state") {
    const DensityMatrix rec =
        tomography_pipeline(qtest::bell_params(), NoiseModel{}, 1000000, 77);
    CHECK(concurrence_mixed(rec) >= 0.99);
    CHECK(purity(rec) > 0.99);
}

TEST_CASE("pipeline runs are reproducible and expose per-setting seeds") {
    const NoiseModel nm = preset_like();
    const TomographyRun a = tomography_run(qtest::bell_params(), nm, 2000, 555);
    const TomographyRun b = tomography_run(qtest::bell_params(), nm, 2000, 555);
    const TomographyRun c = tomography_run(qtest::bell_params(), nm, 2000, 556);

    CHECK(max_abs_diff(a.rho.matrix(), b.rho.matrix()) == 0.0);
    CHECK(a.counts.size() == 9);
    CHECK(a.setting_seeds.size() == 9);
    for (std::size_t i = 0; i < 9; ++i) {
        CHECK(a.counts[i].counts == b.counts[i].counts);
        CHECK(a.setting_seeds[i] == derive_seed(555, i));
    }
    CHECK(max_abs_diff(a.rho.matrix(), c.rho.matrix()) > 0.0);
}

} // TEST_SUITE
