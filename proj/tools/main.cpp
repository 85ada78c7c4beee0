#include "qtriality/experiments.hpp"
#include "qtriality/io.hpp"
#include "qtriality/metrics.hpp"
#include "qtriality/noise.hpp"
#include "qtriality/states.hpp"
#include "qtriality/tomography.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace qtriality;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kDefaultSeed = 12345;

NoiseModel load_noise(const std::string& path) {
    if (path.empty()) return NoiseModel{};
    return NoiseModel::from_json_file(path);
}

// States files hold a JSON array of [alpha, theta] pairs in units of pi.
std::vector<PrepParams> load_states(const std::string& spec) {
    if (spec == "default13") return thirteen_states();
    std::ifstream in(spec, std::ios::binary);
    if (!in) throw ValidationError("cannot open states file: " + spec);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("states file is not valid JSON: ") + e.what());
    }
    if (!j.is_array() || j.empty())
        throw ValidationError("states file must hold a non-empty JSON array");
    std::vector<PrepParams> states;
    states.reserve(j.size());
    for (const auto& entry : j) {
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
            !entry[1].is_number())
            throw ValidationError("each state must be a [alpha, theta] pair in units of pi");
        states.emplace_back(entry[0].get<double>() * kPi, entry[1].get<double>() * kPi);
    }
    return states;
}

// "start:end:step" -> inclusive grid; returns nullopt on malformed input.
std::optional<std::vector<double>> parse_levels(const std::string& text) {
    const auto first = text.find(':');
    const auto second = text.find(':', first == std::string::npos ? first : first + 1);
    if (first == std::string::npos || second == std::string::npos) return std::nullopt;
    double start = 0.0, end = 0.0, step = 0.0;
    try {
        std::size_t pos = 0;
        start = std::stod(text.substr(0, first), &pos);
        if (pos != first) return std::nullopt;
        const std::string mid = text.substr(first + 1, second - first - 1);
        end = std::stod(mid, &pos);
        if (pos != mid.size()) return std::nullopt;
        const std::string tail = text.substr(second + 1);
        step = std::stod(tail, &pos);
        if (pos != tail.size()) return std::nullopt;
    } catch (const std::exception&) {
        return std::nullopt;
    }
    if (!(step > 0.0) || end < start) return std::nullopt;
    std::vector<double> levels;
    for (double x = start; x <= end + 1e-12; x += step) levels.push_back(std::min(x, end));
    return levels;
}

ordered_json record_to_json(const TrialityRecord& rec) {
    ordered_json j;
    j["v_a"] = rec.v_a;
    j["p_a"] = rec.p_a;
    j["v_b"] = rec.v_b;
    j["p_b"] = rec.p_b;
    j["c"] = rec.c;
    j["c_max"] = rec.c_max;
    j["purity"] = rec.purity;
    j["sum_a"] = rec.sum_a;
    j["sum_b"] = rec.sum_b;
    j["locality_a"] = rec.locality_a();
    j["locality_b"] = rec.locality_b();
    return j;
}

ordered_json counts_to_json(const TomographyRun& run) {
    ordered_json arr = ordered_json::array();
    for (std::size_t i = 0; i < run.counts.size(); ++i) {
        const CountsTable& table = run.counts[i];
        ordered_json entry;
        entry["setting"] = table.setting.name();
        entry["counts"] = table.counts;
        entry["shots"] = table.shots;
        entry["seed"] = run.setting_seeds[i];
        arr.push_back(entry);
    }
    return arr;
}

struct TrialityArgs {
    double alpha_pi = 0.0;
    double theta_pi = 0.0;
    std::string noise_file;
    std::string mode = "analytic";
    std::uint64_t shots = 1000;
    std::uint64_t seed = kDefaultSeed;
    bool dump_rho = false;
    bool dump_counts = false;
};

int cmd_triality(const TrialityArgs& args) {
    const PrepParams params{args.alpha_pi * kPi, args.theta_pi * kPi};
    const NoiseModel nm = load_noise(args.noise_file);
    const SweepMode mode = sweep_mode_from_name(args.mode);

    ordered_json out;
    out["alpha"] = params.alpha;
    out["theta"] = params.theta;
    out["mode"] = sweep_mode_name(mode);

    if (mode == SweepMode::Analytic) {
        out.update(record_to_json(evaluate_pure(prepare_state(params))));
        if (args.dump_rho)
            out["rho"] = ordered_json::parse(density_matrix_to_json(density_from_pure(prepare_state(params))));
    } else if (mode == SweepMode::Channel) {
        const DensityMatrix rho = run_noisy_prep(params, nm);
        out.update(record_to_json(evaluate(rho)));
        if (args.dump_rho) out["rho"] = ordered_json::parse(density_matrix_to_json(rho));
    } else {
        out["shots"] = args.shots;
        out["seed"] = args.seed;
        const TomographyRun run = tomography_run(params, nm, args.shots, args.seed);
        out.update(record_to_json(evaluate(run.rho)));
        if (args.dump_rho) out["rho"] = ordered_json::parse(density_matrix_to_json(run.rho));
        if (args.dump_counts) out["counts"] = counts_to_json(run);
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

struct SweepArgs {
    std::string states = "default13";
    std::uint64_t reps = 10;
    std::uint64_t shots = 1000;
    std::string noise_file;
    std::uint64_t seed = kDefaultSeed;
    std::string out_dir;
    bool svg = false;
};

int cmd_sweep(const SweepArgs& args) {
    const std::vector<PrepParams> states = load_states(args.states);
    const NoiseModel nm = load_noise(args.noise_file);
    const SweepOutputs outputs =
        run_normalized_sweep(states, args.reps, args.shots, nm, args.seed);

    const fs::path dir(args.out_dir);
    fs::create_directories(dir);
    write_records_csv(dir / "raw.csv", outputs.measured, SweepMode::SampledTomography);
    write_records_csv(dir / "noise_sim.csv", outputs.noise_sim, SweepMode::SampledTomography);
    write_normalized_csv(dir / "normalized.csv", outputs);
    write_ellipsoids_csv(dir / "ellipsoids.csv", outputs.states, outputs.measured_stats);

    ordered_json summary;
    summary["out"] = dir.string();
    summary["states"] = outputs.states.size();
    summary["repetitions"] = args.reps;
    summary["shots"] = args.shots;
    summary["seed"] = args.seed;
    ordered_json files = {"raw.csv", "noise_sim.csv", "normalized.csv", "ellipsoids.csv"};
    if (args.svg) {
        for (const fs::path& p : write_projection_svgs(dir, outputs))
            files.push_back(p.filename().string());
    }
    summary["files"] = files;
    std::cout << summary.dump(2) << "\n";
    return 0;
}

struct SliceArgs {
    std::size_t n_alpha = 21;
    std::uint64_t shots = 1000;
    std::uint64_t reps = 10;
    std::string noise_file;
    std::uint64_t seed = kDefaultSeed;
    std::string out_dir;
};

int cmd_slice(const SliceArgs& args) {
    const NoiseModel nm = load_noise(args.noise_file);
    const std::vector<SliceRow> rows =
        slice_study(nm, args.n_alpha, args.shots, args.reps, args.seed);
    const fs::path dir(args.out_dir);
    fs::create_directories(dir);
    write_slice_csv(dir / "slice.csv", rows);
    ordered_json summary;
    summary["out"] = (dir / "slice.csv").string();
    summary["rows"] = rows.size();
    std::cout << summary.dump(2) << "\n";
    return 0;
}

struct PurityArgs {
    std::string levels = "0:1:0.05";
    double alpha_pi = 0.5;
    double theta_pi = 1.0;
    std::string out_dir;
};

int cmd_purity(const PurityArgs& args, const CLI::App& app) {
    const auto levels = parse_levels(args.levels);
    if (!levels) {
        std::cerr << "error: --levels expects start:end:step with step > 0\n";
        std::cerr << app.help() << "\n";
        return 2;
    }
    const PrepParams state{args.alpha_pi * kPi, args.theta_pi * kPi};
    const std::vector<PurityRow> rows = purity_study(state, *levels);
    const fs::path dir(args.out_dir);
    fs::create_directories(dir);
    write_purity_csv(dir / "purity.csv", rows);
    ordered_json summary;
    summary["out"] = (dir / "purity.csv").string();
    summary["rows"] = rows.size();
    std::cout << summary.dump(2) << "\n";
    return 0;
}

struct ScanArgs {
    std::size_t n = 200;
    std::uint64_t seed = kDefaultSeed;
    std::string out_dir;
};

int cmd_scan(const ScanArgs& args) {
    const ScanResult scan = random_scan(args.n, args.seed);
    const fs::path dir(args.out_dir);
    fs::create_directories(dir);
    write_scan_csv(dir / "scan.csv", scan);
    ordered_json summary;
    summary["out"] = (dir / "scan.csv").string();
    summary["rows"] = scan.rows.size();
    summary["max_discrepancy"] = scan.max_discrepancy;
    std::cout << summary.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-qubit visibility/predictability/concurrence simulator"};
    app.require_subcommand(1);

    TrialityArgs triality_args;
    CLI::App* triality = app.add_subcommand(
        "triality", "Evaluate one prepared state and print its record as JSON");
    triality->add_option("--alpha", triality_args.alpha_pi, "Preparation angle alpha in units of pi")
        ->required()
        ->check(CLI::Range(0.0, 1.0));
    triality->add_option("--theta", triality_args.theta_pi, "Preparation angle theta in units of pi")
        ->required()
        ->check(CLI::Range(0.0, 1.0));
    triality->add_option("--noise", triality_args.noise_file, "Noise model JSON file");
    triality->add_option("--mode", triality_args.mode, "analytic | channel | sampled")
        ->check(CLI::IsMember({"analytic", "channel", "sampled"}));
    triality->add_option("--shots", triality_args.shots, "Shots per measurement setting")
        ->check(CLI::PositiveNumber);
    triality->add_option("--seed", triality_args.seed, "Master seed for sampled mode");
    triality->add_flag("--dump-rho", triality_args.dump_rho, "Include the density matrix");
    triality->add_flag("--dump-counts", triality_args.dump_counts,
                       "Include per-setting counts (sampled mode)");

    SweepArgs sweep_args;
    CLI::App* sweep = app.add_subcommand(
        "sweep", "Sampled sweep with noise-sim normalization; writes CSV files");
    sweep->add_option("--states", sweep_args.states,
                      "default13 or a JSON file of [alpha, theta] pairs in units of pi");
    sweep->add_option("--reps", sweep_args.reps, "Repetitions per state")
        ->check(CLI::PositiveNumber);
    sweep->add_option("--shots", sweep_args.shots, "Shots per measurement setting")
        ->check(CLI::PositiveNumber);
    sweep->add_option("--noise", sweep_args.noise_file, "Noise model JSON file");
    sweep->add_option("--seed", sweep_args.seed, "Master seed");
    sweep->add_option("--out", sweep_args.out_dir, "Output directory")->required();
    sweep->add_flag("--svg", sweep_args.svg, "Also write projection SVG plots");

    SliceArgs slice_args;
    CLI::App* slice = app.add_subcommand(
        "slice", "Fixed-theta slice: concurrence against its purity bound across alpha");
    slice->add_option("--n-alpha", slice_args.n_alpha, "Number of alpha points")
        ->check(CLI::Range(static_cast<std::size_t>(3), static_cast<std::size_t>(100000)));
    slice->add_option("--shots", slice_args.shots, "Shots per measurement setting")
        ->check(CLI::PositiveNumber);
    slice->add_option("--reps", slice_args.reps, "Sampled repetitions per alpha")
        ->check(CLI::PositiveNumber);
    slice->add_option("--noise", slice_args.noise_file, "Noise model JSON file");
    slice->add_option("--seed", slice_args.seed, "Master seed");
    slice->add_option("--out", slice_args.out_dir, "Output directory")->required();

    PurityArgs purity_args;
    CLI::App* purity = app.add_subcommand(
        "purity-study", "Concurrence and its ceiling along a depolarization grid");
    purity->add_option("--levels", purity_args.levels, "Depolarization grid start:end:step");
    purity->add_option("--alpha", purity_args.alpha_pi, "State angle alpha in units of pi")
        ->check(CLI::Range(0.0, 1.0));
    purity->add_option("--theta", purity_args.theta_pi, "State angle theta in units of pi")
        ->check(CLI::Range(0.0, 1.0));
    purity->add_option("--out", purity_args.out_dir, "Output directory")->required();

    ScanArgs scan_args;
    CLI::App* scan = app.add_subcommand(
        "scan", "Random preparation angles against the closed-form metrics");
    scan->add_option("--n", scan_args.n, "Number of random samples")->check(CLI::PositiveNumber);
    scan->add_option("--seed", scan_args.seed, "Random seed");
    scan->add_option("--out", scan_args.out_dir, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(triality)) return cmd_triality(triality_args);
        if (app.got_subcommand(sweep)) return cmd_sweep(sweep_args);
        if (app.got_subcommand(slice)) return cmd_slice(slice_args);
        if (app.got_subcommand(purity)) return cmd_purity(purity_args, *purity);
        if (app.got_subcommand(scan)) return cmd_scan(scan_args);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
