#include "qtriality/experiments.hpp"

#include "qtriality/errors.hpp"
#include "qtriality/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qtriality {

namespace {

constexpr double kPi = std::numbers::pi;
// Below this, a noise-sim axis mean is too close to zero to divide by.
constexpr double kNormalizationFloor = 1e-3;
// Ideal axis values at or below this are reported as degenerate: the ideal
// factor pins the normalized value to (numerically) zero.
constexpr double kDegenerateIdeal = 1e-9;

double sample_stddev(std::span<const double> xs, double mean) {
    long double acc = 0.0L;
    for (double x : xs) {
        const long double d = static_cast<long double>(x) - static_cast<long double>(mean);
        acc += d * d;
    }
    return std::sqrt(static_cast<double>(acc / static_cast<long double>(xs.size() - 1)));
}

AxisStats axis_stats(std::span<const double> xs) {
    long double sum = 0.0L;
    for (double x : xs) sum += static_cast<long double>(x);
    AxisStats st;
    st.mean = static_cast<double>(sum / static_cast<long double>(xs.size()));
    st.stddev = sample_stddev(xs, st.mean);
    st.halfwidth = 4.0 * st.stddev;
    return st;
}

NormalizedAxis normalize_axis(const AxisStats& measured, const AxisStats& noise_sim,
                              double ideal) {
    NormalizedAxis axis;
    axis.raw_mean = measured.mean;
    axis.noise_sim_mean = noise_sim.mean;
    axis.ideal = ideal;
    if (std::abs(noise_sim.mean) < kNormalizationFloor) {
        axis.normalized = measured.mean;
        axis.halfwidth = measured.halfwidth;
        axis.flag = AxisFlag::Unnormalizable;
        return axis;
    }
    const double scale = ideal / noise_sim.mean;
    axis.normalized = measured.mean * scale;
    axis.halfwidth = measured.halfwidth * std::abs(scale);
    axis.flag = std::abs(ideal) <= kDegenerateIdeal ? AxisFlag::DegenerateIdeal : AxisFlag::Ok;
    return axis;
}

TrialityRecord sampled_record(const PrepParams& params, const NoiseModel& nm,
                              std::uint64_t shots, std::uint64_t seed) {
    return evaluate(tomography_pipeline(params, nm, shots, seed));
}

} // namespace

std::string sweep_mode_name(SweepMode mode) {
    switch (mode) {
        case SweepMode::Analytic: return "analytic";
        case SweepMode::Channel: return "channel";
        case SweepMode::SampledTomography: return "sampled-tomography";
    }
    throw ValidationError("unknown sweep mode");
}

SweepMode sweep_mode_from_name(const std::string& name) {
    if (name == "analytic") return SweepMode::Analytic;
    if (name == "channel") return SweepMode::Channel;
    if (name == "sampled-tomography" || name == "sampled") return SweepMode::SampledTomography;
    throw ValidationError("unknown sweep mode: " + name);
}

void SweepConfig::validate() const {
    if (states.empty()) throw ValidationError("sweep needs at least one state");
    if (repetitions == 0) throw ValidationError("sweep needs at least one repetition");
    if (mode == SweepMode::SampledTomography && shots == 0)
        throw ValidationError("sampled sweep needs at least one shot per setting");
    noise.validate();
}

std::vector<PrepParams> thirteen_states() {
    return {
        PrepParams{0.0, kPi},           // product |00>-like pole
        PrepParams{kPi / 4.0, kPi},
        PrepParams{kPi / 2.0, kPi},     // maximally entangled
        PrepParams{3.0 * kPi / 4.0, kPi},
        PrepParams{kPi, kPi},           // product pole at the far end
        PrepParams{kPi / 2.0, 0.0},     // full visibility, no entanglement
        PrepParams{kPi / 2.0, kPi / 4.0},
        PrepParams{kPi / 2.0, kPi / 2.0},
        PrepParams{kPi / 2.0, 3.0 * kPi / 4.0},
        PrepParams{kPi / 4.0, kPi / 2.0},
        PrepParams{3.0 * kPi / 4.0, kPi / 2.0},
        PrepParams{kPi / 3.0, kPi / 3.0},
        PrepParams{2.0 * kPi / 3.0, 2.0 * kPi / 3.0},
    };
}

std::vector<StateResult> run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    std::vector<StateResult> results;
    results.reserve(cfg.states.size());
    for (std::size_t si = 0; si < cfg.states.size(); ++si) {
        const PrepParams& params = cfg.states[si];
        StateResult result{params, {}, {}};
        result.records.reserve(cfg.repetitions);
        result.seeds.reserve(cfg.repetitions);

        // Deterministic modes produce one record; copy it across repetitions.
        std::optional<TrialityRecord> fixed;
        if (cfg.mode == SweepMode::Analytic) {
            fixed = evaluate_pure(prepare_state(params));
        } else if (cfg.mode == SweepMode::Channel) {
            fixed = evaluate(run_noisy_prep(params, cfg.noise));
        }

        for (std::uint64_t rep = 0; rep < cfg.repetitions; ++rep) {
            const std::uint64_t seed =
                derive_seed(cfg.master_seed, static_cast<std::uint64_t>(si), rep);
            result.seeds.push_back(seed);
            if (fixed) {
                result.records.push_back(*fixed);
            } else {
                result.records.push_back(sampled_record(params, cfg.noise, cfg.shots, seed));
            }
        }
        results.push_back(std::move(result));
    }
    return results;
}

EllipsoidStats ellipsoid_stats(std::span<const TrialityRecord> records) {
    if (records.size() < 2)
        throw InsufficientData("ellipsoid statistics need at least two records");
    std::vector<double> v, p, c;
    v.reserve(records.size());
    p.reserve(records.size());
    c.reserve(records.size());
    for (const TrialityRecord& rec : records) {
        v.push_back(rec.v_a);
        p.push_back(rec.p_a);
        c.push_back(rec.c);
    }
    EllipsoidStats st;
    st.v_a = axis_stats(v);
    st.p_a = axis_stats(p);
    st.c = axis_stats(c);
    return st;
}

std::string axis_flag_name(AxisFlag flag) {
    switch (flag) {
        case AxisFlag::Ok: return "ok";
        case AxisFlag::DegenerateIdeal: return "degenerate";
        case AxisFlag::Unnormalizable: return "unnormalizable";
    }
    throw ValidationError("unknown axis flag");
}

double NormalizedPoint::sum() const {
    return v_a.normalized * v_a.normalized + p_a.normalized * p_a.normalized +
           c.normalized * c.normalized;
}

double NormalizedPoint::sum_bound() const {
    // |(n+h)^2 - n^2| <= 2|n|h + h^2 per axis; the bound is exact for the
    // worst corner of the box.
    double bound = 0.0;
    for (const NormalizedAxis* axis : {&v_a, &p_a, &c}) {
        const double n = std::abs(axis->normalized);
        const double h = axis->halfwidth;
        bound += 2.0 * n * h + h * h;
    }
    return bound;
}

NormalizedPoint normalize_against_noise_sim(const EllipsoidStats& measured,
                                            const EllipsoidStats& noise_sim,
                                            const TrialityRecord& ideal) {
    NormalizedPoint point;
    point.v_a = normalize_axis(measured.v_a, noise_sim.v_a, ideal.v_a);
    point.p_a = normalize_axis(measured.p_a, noise_sim.p_a, ideal.p_a);
    point.c = normalize_axis(measured.c, noise_sim.c, ideal.c);
    return point;
}

SweepOutputs run_normalized_sweep(const std::vector<PrepParams>& states,
                                  std::uint64_t repetitions, std::uint64_t shots,
                                  const NoiseModel& nm, std::uint64_t master_seed) {
    SweepOutputs out;
    out.states = states;

    out.ideal.reserve(states.size());
    for (const PrepParams& params : states) out.ideal.push_back(evaluate_pure(prepare_state(params)));

    SweepConfig cfg;
    cfg.states = states;
    cfg.repetitions = repetitions;
    cfg.shots = shots;
    cfg.noise = nm;
    cfg.mode = SweepMode::SampledTomography;

    // Disjoint seed streams: the measured run and the noise-sim reference run
    // must not share randomness, or the normalization would cancel shot noise
    // instead of the systematic bias.
    cfg.master_seed = derive_seed(master_seed, 0);
    out.measured = run_sweep(cfg);
    cfg.master_seed = derive_seed(master_seed, 1);
    out.noise_sim = run_sweep(cfg);

    out.measured_stats.reserve(states.size());
    out.noise_sim_stats.reserve(states.size());
    out.normalized.reserve(states.size());
    for (std::size_t si = 0; si < states.size(); ++si) {
        out.measured_stats.push_back(ellipsoid_stats(out.measured[si].records));
        out.noise_sim_stats.push_back(ellipsoid_stats(out.noise_sim[si].records));
        out.normalized.push_back(normalize_against_noise_sim(
            out.measured_stats[si], out.noise_sim_stats[si], out.ideal[si]));
    }
    return out;
}

std::vector<SliceRow> slice_study(const NoiseModel& nm, std::size_t n_alpha, std::uint64_t shots,
                                  std::uint64_t repetitions, std::uint64_t seed) {
    if (n_alpha < 3) throw ValidationError("slice study needs at least three alpha points");
    if (shots == 0 || repetitions == 0)
        throw ValidationError("slice study needs nonzero shots and repetitions");
    nm.validate();

    std::vector<SliceRow> rows;
    rows.reserve(n_alpha);
    for (std::size_t i = 0; i < n_alpha; ++i) {
        const double alpha =
            kPi * static_cast<double>(i) / static_cast<double>(n_alpha - 1);
        const PrepParams params{alpha, kPi};

        SliceRow row;
        row.alpha = alpha;

        const TrialityRecord channel = evaluate(run_noisy_prep(params, nm));
        row.p_a = channel.p_a;
        row.c_channel = channel.c;
        row.c_max = channel.c_max;

        long double c_sum = 0.0L;
        for (std::uint64_t rep = 0; rep < repetitions; ++rep) {
            const std::uint64_t rep_seed = derive_seed(seed, static_cast<std::uint64_t>(i), rep);
            c_sum += static_cast<long double>(sampled_record(params, nm, shots, rep_seed).c);
        }
        row.c_sampled_mean = static_cast<double>(c_sum / static_cast<long double>(repetitions));

        const double c_ideal = concurrence_pure(prepare_state(params));
        if (c_ideal > 0.05) row.ratio = channel.c / c_ideal;

        rows.push_back(row);
    }
    return rows;
}

std::vector<PurityRow> purity_study(const PrepParams& state, std::span<const double> levels) {
    if (levels.empty()) throw ValidationError("purity study needs at least one level");
    for (double level : levels)
        if (!(level >= 0.0 && level <= 1.0))
            throw ValidationError("depolarization level must lie in [0, 1]");

    const DensityMatrix base = density_from_pure(prepare_state(state));
    std::vector<PurityRow> rows;
    rows.reserve(levels.size());
    for (double level : levels) {
        const TrialityRecord rec = evaluate(depolarize(base, level, NoiseTarget::Both));
        rows.push_back(PurityRow{rec.purity, rec.c, rec.c_max});
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const PurityRow& a, const PurityRow& b) { return a.purity > b.purity; });
    return rows;
}

ScanResult random_scan(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw ValidationError("scan needs at least one sample");
    Rng rng(seed);
    ScanResult result;
    result.rows.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double alpha = rng.uniform(0.0, kPi);
        const double theta = rng.uniform(0.0, kPi);
        const TrialityRecord rec = evaluate_pure(prepare_state(PrepParams{alpha, theta}));

        ScanRow row;
        row.alpha = alpha;
        row.theta = theta;
        row.v_a = rec.v_a;
        row.p_a = rec.p_a;
        row.c = rec.c;
        row.v_a_closed = std::sin(alpha) * std::abs(std::cos(theta / 2.0));
        row.p_a_closed = std::abs(std::cos(alpha));
        row.c_closed = std::sin(alpha) * std::sin(theta / 2.0);

        result.max_discrepancy = std::max({result.max_discrepancy,
                                           std::abs(row.v_a - row.v_a_closed),
                                           std::abs(row.p_a - row.p_a_closed),
                                           std::abs(row.c - row.c_closed)});
        result.rows.push_back(row);
    }
    return result;
}

} // namespace qtriality
