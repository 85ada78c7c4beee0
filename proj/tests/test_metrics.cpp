#include "doctest.h"
#include "test_support.hpp"

#include "qtriality/errors.hpp"
#include "qtriality/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

using namespace qtriality;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE("metrics") {

TEST_CASE("pure concurrence at the anchor points") {
    CHECK(concurrence_pure(prepare_state(qtest::bell_params())) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(concurrence_pure(prepare_state(PrepParams{0.0, kPi})) == 0.0);
    CHECK(concurrence_pure(prepare_state(PrepParams{kPi / 2.0, 0.0})) == 0.0);
    CHECK(concurrence_pure(prepare_state(PrepParams{kPi / 2.0, kPi / 2.0})) ==
          doctest::Approx(std::sin(kPi / 4.0)).epsilon(1e-14));
}

TEST_CASE("pure records satisfy the sum identity to near machine precision") {
    Rng rng(66);
    for (int rep = 0; rep < 200; ++rep) {
        const PrepParams p{rng.uniform(0.0, kPi), rng.uniform(0.0, kPi)};
        const TrialityRecord rec = evaluate_pure(prepare_state(p));
        CHECK(std::abs(rec.sum_a - 1.0) < 1e-12);
        CHECK(std::abs(rec.sum_b - 1.0) < 1e-12);
        CHECK(rec.c_max == 1.0);
        CHECK(rec.purity == 1.0);
    }
}

TEST_CASE("coherence doubles the reduced off-diagonal magnitude") {
    Rng rng(67);
    for (int rep = 0; rep < 100; ++rep) {
        const PureTwoQubitState psi = qtest::random_pure(rng);
        const DensityMatrix reduced =
            partial_trace(density_from_pure(psi), SystemLabel::A);
        const double direct = 2.0 * std::abs(reduced.matrix()(0, 1));
        CHECK(std::abs(coherence(reduced) - direct) < 1e-12);
        const TrialityRecord rec = evaluate_pure(psi);
        CHECK(std::abs(rec.v_a - direct) < 1e-12);
    }
}

TEST_CASE("coherence and predictability require a reduced state") {
    Rng rng(68);
    const DensityMatrix full = qtest::random_density(rng);
    CHECK_THROWS_AS((void)coherence(full), ValidationError);
    CHECK_THROWS_AS((void)predictability(full), ValidationError);
}

TEST_CASE("predictability is the absolute population imbalance") {
    const DensityMatrix reduced(
        ComplexMatrix::diagonal({0.3, 0.7}), SystemLabel::A);
    CHECK(predictability(reduced) == doctest::Approx(0.4).epsilon(1e-14));
}

TEST_CASE("spin flip conjugation is an exact sign permutation") {
    Rng rng(69);
    const DensityMatrix rho = qtest::random_density(rng);
    const ComplexMatrix direct =
        kron(pauli_y(), pauli_y()) * rho.matrix().conjugate() * kron(pauli_y(), pauli_y());
    CHECK(max_abs_diff(spin_flip_conjugate(rho.matrix()), direct) < 1e-15);
}

TEST_CASE("mixed-route concurrence agrees with the pure closed form") {
    Rng rng(70);
    double worst = 0.0;
    for (int rep = 0; rep < 1000; ++rep) {
        const PureTwoQubitState psi = qtest::random_pure(rng);
        const double diff =
            std::abs(concurrence_pure(psi) - concurrence_mixed(density_from_pure(psi)));
        worst = std::max(worst, diff);
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("surrogate spectrum matches the characteristic-polynomial oracle") {
    Rng rng(71);
    double worst = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        const DensityMatrix rho = qtest::random_density(rng);
        const auto fast = wootters_spectrum(rho);
        const auto slow = qtest::spin_flip_product_spectrum(rho);
        for (std::size_t k = 0; k < 4; ++k)
            worst = std::max(worst, std::abs(fast[k] - slow[k]));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("one-parameter Bell mixture: concurrence meets its ceiling") {
    for (int i = 0; i <= 100; ++i) {
        const double w = i / 100.0;
        const double expected = std::max(0.0, (3.0 * w - 1.0) / 2.0);
        const DensityMatrix rho = qtest::werner(w);
        CHECK(std::abs(concurrence_mixed(rho) - expected) < 1e-10);
        CHECK(std::abs(c_max(rho) - expected) < 1e-10);
    }
}

TEST_CASE("concurrence vanishes exactly at and below purity one third") {
    for (double w : {0.0, 0.1, 0.2, 0.3, 0.32, 1.0 / 3.0}) {
        const DensityMatrix rho = qtest::werner(w);
        CHECK(purity(rho) <= 1.0 / 3.0 + 1e-12);
        CHECK(concurrence_mixed(rho) == 0.0);
        CHECK(c_max(rho) == 0.0);
    }
}

TEST_CASE("concurrence never exceeds its purity ceiling") {
    Rng rng(72);
    for (int rep = 0; rep < 200; ++rep) {
        const DensityMatrix rho = qtest::random_density(rng);
        CHECK(concurrence_mixed(rho) <= c_max(rho) + 1e-9);
    }
}

TEST_CASE("local unitaries cannot change concurrence") {
    Rng rng(73);
    for (int rep = 0; rep < 100; ++rep) {
        const DensityMatrix rho = qtest::random_density(rng);
        const ComplexMatrix u = qtest::random_local_unitary(rng);
        const DensityMatrix rotated(u * rho.matrix() * u.adjoint(), SystemLabel::AB);
        CHECK(std::abs(concurrence_mixed(rho) - concurrence_mixed(rotated)) < 1e-10);
    }
}

TEST_CASE("local unitaries on pure states leave the closed form unchanged") {
    Rng rng(74);
    for (int rep = 0; rep < 100; ++rep) {
        const PureTwoQubitState psi = qtest::random_pure(rng);
        const ComplexMatrix u = qtest::random_local_unitary(rng);
        std::array<Complex, 4> rotated{};
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) rotated[i] += u(i, j) * psi.amplitudes()[j];
        CHECK(std::abs(concurrence_pure(psi) -
                       concurrence_pure(PureTwoQubitState::normalized(rotated))) < 1e-12);
    }
}

TEST_CASE("evaluate on the Bell state") {
    const TrialityRecord rec = evaluate(density_from_pure(prepare_state(qtest::bell_params())));
    CHECK(std::abs(rec.c - 1.0) < 1e-8);
    CHECK(rec.v_a < 1e-12);
    CHECK(rec.p_a < 1e-12);
    CHECK(std::abs(rec.purity - 1.0) < 1e-12);
    CHECK(std::abs(rec.sum_a - 1.0) < 1e-7);
}

TEST_CASE("evaluate and evaluate_pure agree through the mixed route") {
    Rng rng(75);
    for (int rep = 0; rep < 100; ++rep) {
        const PureTwoQubitState psi = qtest::random_pure(rng);
        const TrialityRecord a = evaluate_pure(psi);
        const TrialityRecord b = evaluate(density_from_pure(psi));
        CHECK(std::abs(a.v_a - b.v_a) < 1e-10);
        CHECK(std::abs(a.v_b - b.v_b) < 1e-10);
        CHECK(std::abs(a.p_a - b.p_a) < 1e-10);
        CHECK(std::abs(a.p_b - b.p_b) < 1e-10);
        CHECK(std::abs(a.c - b.c) < 1e-8);
    }
}

TEST_CASE("locality splits the sum into local and entangled shares") {
    Rng rng(76);
    const PureTwoQubitState psi = qtest::random_pure(rng);
    const TrialityRecord rec = evaluate_pure(psi);
    CHECK(std::abs(rec.locality_a() - (rec.v_a * rec.v_a + rec.p_a * rec.p_a)) < 1e-12);
    CHECK(std::abs(rec.locality_b() - (rec.v_b * rec.v_b + rec.p_b * rec.p_b)) < 1e-12);
}

TEST_CASE("canonical double formatting survives a round trip") {
    for (double x : {0.0, 1.0, -1.0, 1.0 / 3.0, 0.1, 1e-17, 6.123233995736766e-17,
                     0.9999999999999999}) {
        const std::string s = format_double(x);
        CHECK(std::stod(s) == x);
    }
    // Adjacent doubles must format distinctly.
    const double a = 0.1;
    const double b = std::nextafter(a, 1.0);
    CHECK(format_double(a) != format_double(b));
}

TEST_CASE("CSV rows carry the header's column count") {
    const std::string header = record_csv_header();
    const auto count_fields = [](const std::string& line) {
        return 1 + std::count(line.begin(), line.end(), ',');
    };
    const TrialityRecord rec = evaluate_pure(prepare_state(qtest::bell_params()));
    const std::string with_angles = record_csv_row(rec, qtest::bell_params());
    const std::string without = record_csv_row(rec, std::nullopt);
    CHECK(count_fields(with_angles) == count_fields(header));
    CHECK(count_fields(without) == count_fields(header));
    // Blank angle fields when the record has no preparation angles.
    CHECK(without.substr(0, 2) == ",,");
}

} // TEST_SUITE
