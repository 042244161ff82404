// Command-line runner for the delayed-choice energy-duality experiments:
// analytic capacities, phase scans, count simulation, tomography, the three
// figure reproductions and the randomized property suite.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "duality/capacity.hpp"
#include "duality/counts.hpp"
#include "duality/harness.hpp"
#include "duality/io.hpp"
#include "duality/optics.hpp"
#include "duality/presets.hpp"
#include "duality/tomography.hpp"

namespace {

using namespace duality;
using nlohmann::json;

Convention parse_convention(const std::string& name) {
    if (name == "main") return Convention::main_text();
    if (name == "appendix") return Convention::appendix();
    throw CLI::ValidationError("--convention must be 'main' or 'appendix'");
}

// A --state argument: preset name (phi1..phi4) or a state file path.
DensityMatrix resolve_state(const std::string& arg) {
    if (is_preset_name(arg)) return density_from_pure(preset_state(arg));
    return read_state_file(arg);
}

// Pure-state variant for the figure harness; stokes-only files are rejected.
NamedState resolve_pure_state(const std::string& arg) {
    if (is_preset_name(arg)) return {arg, preset_state(arg)};
    std::ifstream in(arg);
    if (!in) throw CLI::ValidationError("cannot open state file: " + arg);
    json j;
    in >> j;
    if (!j.contains("alpha") || !j.contains("beta")) {
        throw CLI::ValidationError("figure experiments need a pure state (alpha/beta form): " + arg);
    }
    return {std::filesystem::path(arg).stem().string(),
            PureState({j["alpha"][0].get<double>(), j["alpha"][1].get<double>()},
                      {j["beta"][0].get<double>(), j["beta"][1].get<double>()})};
}

NoiseModel make_noise(std::uint64_t seed, int counts_per_axis, int repeats) {
    NoiseModel noise;
    noise.seed = seed;
    noise.n_repeats = repeats;
    noise.duration_s = static_cast<double>(counts_per_axis) / (noise.mean_rate * repeats);
    return noise;
}

void emit(const std::string& text, const std::filesystem::path& out_dir,
          const std::string& filename) {
    std::cout << text;
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        std::ofstream file(out_dir / filename);
        file << text;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"virtual delayed-choice lab: energy-coherence duality for qubit batteries"};
    app.require_subcommand(1);

    std::string state_arg = "phi1";
    std::string convention_name = "appendix";
    std::uint64_t seed = 1;
    int counts_per_axis = 16000;
    int repeats = 100;
    bool analytic_only = false;
    std::string out_dir;
    double e_joules = default_energy_joules;

    auto add_common = [&](CLI::App* cmd, bool with_state = true) {
        if (with_state) cmd->add_option("--state", state_arg, "preset phi1..phi4 or a state file");
        cmd->add_option("--convention", convention_name, "main or appendix")
            ->check(CLI::IsMember({"main", "appendix"}));
        cmd->add_option("--seed", seed, "RNG seed");
        cmd->add_option("--counts-per-axis", counts_per_axis, "target coincidences per axis");
        cmd->add_option("--repeats", repeats, "coincidence sets per axis");
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--e-joules", e_joules, "photon energy unit in joules");
    };

    auto* cmd_capacities =
        app.add_subcommand("capacities", "analytic capacity report for a state");
    add_common(cmd_capacities);

    auto* cmd_scan = app.add_subcommand("scan", "phase scan of the extractable energy");
    int scan_points = 1001;
    cmd_scan->add_option("--points", scan_points, "grid points over [0, 2pi]");
    add_common(cmd_scan);

    auto* cmd_simulate = app.add_subcommand("simulate", "generate photon coincidence counts");
    add_common(cmd_simulate);

    auto* cmd_tomo = app.add_subcommand("tomo", "maximum-likelihood reconstruction from counts");
    std::string counts_file;
    std::string target_arg;
    int bootstrap_b = 0;
    cmd_tomo->add_option("--counts", counts_file, "count CSV file")->required();
    cmd_tomo->add_option("--target", target_arg, "optional target state for fidelity");
    cmd_tomo->add_option("--bootstrap", bootstrap_b, "bootstrap replicates for error bars");
    add_common(cmd_tomo, false);

    auto* cmd_reproduce = app.add_subcommand("reproduce", "run one of the figure experiments");
    int figure = 0;
    std::vector<std::string> figure_states;
    cmd_reproduce->add_option("--figure", figure, "3, 4 or 5")
        ->required()
        ->check(CLI::IsMember({3, 4, 5}));
    cmd_reproduce->add_option("--state", figure_states,
                              "states to run (default: all four presets)");
    cmd_reproduce->add_flag("--analytic-only", analytic_only, "skip all random draws");
    add_common(cmd_reproduce, false);

    auto* cmd_proptest = app.add_subcommand("proptest", "randomized invariant sweeps");
    int n_states = 1000;
    cmd_proptest->add_option("--n-states", n_states, "random states per sweep");
    add_common(cmd_proptest, false);

    CLI11_PARSE(app, argc, argv);

    try {
        const Convention conv = parse_convention(convention_name);

        if (cmd_capacities->parsed()) {
            const DensityMatrix rho = resolve_state(state_arg);
            const CapacityReport report = duality_check(rho, conv);
            emit(capacity_report_json(report, e_joules), out_dir, "capacities.json");
            return 0;
        }

        if (cmd_scan->parsed()) {
            const DensityMatrix rho = resolve_state(state_arg);
            const PhaseScan scan = phase_scan(rho, conv, scan_points);
            const ScanExtrema extrema = w_phi_extrema(rho, conv);
            const std::filesystem::path dir = out_dir.empty() ? "." : out_dir;
            std::filesystem::create_directories(dir);
            const auto csv_path = dir / "scan.csv";
            write_scan_csv(csv_path, scan);
            json meta;
            meta["scan_file"] = csv_path.string();
            meta["convention"] = conv.name();
            meta["state"] = state_arg;
            meta["points"] = scan_points;
            meta["w_max_closed_form"] = extrema.w_max;
            meta["w_min_closed_form"] = extrema.w_min;
            emit(meta.dump(2) + "\n", out_dir, "scan_meta.json");
            return 0;
        }

        if (cmd_simulate->parsed()) {
            const DensityMatrix rho = resolve_state(state_arg);
            const NoiseModel noise = make_noise(seed, counts_per_axis, repeats);
            const auto records = simulate_counts(rho, noise);
            const std::filesystem::path dir = out_dir.empty() ? "." : out_dir;
            std::filesystem::create_directories(dir);
            const auto csv_path = dir / "counts.csv";
            write_counts_csv(csv_path, records);
            json meta;
            meta["counts_file"] = csv_path.string();
            meta["state"] = state_arg;
            meta["seed"] = seed;
            meta["mean_rate"] = noise.mean_rate;
            meta["duration_s"] = noise.duration_s;
            meta["n_repeats"] = noise.n_repeats;
            emit(meta.dump(2) + "\n", out_dir, "counts_meta.json");
            return 0;
        }

        if (cmd_tomo->parsed()) {
            const auto records = read_counts_csv(counts_file);
            MleOptions opts;
            if (!target_arg.empty()) opts.target = resolve_state(target_arg);
            const TomographyResult result = mle_reconstruct(records, opts);
            const CapacityReport caps = duality_check(result.rho_hat, conv);
            json j;
            j["rho_hat"] = {
                {"r00", {result.rho_hat(0, 0).real(), result.rho_hat(0, 0).imag()}},
                {"r01", {result.rho_hat(0, 1).real(), result.rho_hat(0, 1).imag()}},
                {"r10", {result.rho_hat(1, 0).real(), result.rho_hat(1, 0).imag()}},
                {"r11", {result.rho_hat(1, 1).real(), result.rho_hat(1, 1).imag()}},
            };
            j["neg_log_lik"] = result.neg_log_lik;
            j["iterations"] = result.iterations;
            j["converged"] = result.converged;
            if (result.fidelity_vs_target) j["fidelity_vs_target"] = *result.fidelity_vs_target;
            j["capacities"] = {{"c_p", caps.c_p}, {"c_d", caps.c_d}, {"c_v", caps.c_v}};
            j["convention"] = conv.name();
            if (bootstrap_b > 0) {
                const BootstrapResult boot = bootstrap_capacities(records, bootstrap_b, conv, seed);
                j["bootstrap"] = {{"replicates", boot.replicates},
                                  {"valid", boot.valid},
                                  {"nonconverged", boot.nonconverged},
                                  {"se_c_p", boot.std_errors.c_p},
                                  {"se_c_d", boot.std_errors.c_d},
                                  {"se_c_v", boot.std_errors.c_v},
                                  {"se_residual", boot.std_errors.residual}};
            }
            emit(j.dump(2) + "\n", out_dir, "tomo.json");
            return 0;
        }

        if (cmd_reproduce->parsed()) {
            ExperimentConfig config = ExperimentConfig::with_presets();
            if (!figure_states.empty()) {
                config.states.clear();
                for (const auto& s : figure_states) config.states.push_back(resolve_pure_state(s));
            }
            config.convention = conv;
            config.noise = make_noise(seed, counts_per_axis, repeats);
            config.analytic_only = analytic_only;
            config.e_joules = e_joules;
            if (!out_dir.empty()) config.output_dir = out_dir;

            FigureReport report;
            switch (figure) {
                case 3: report = run_figure3(config); break;
                case 4: report = run_figure4(config); break;
                case 5: report = run_figure5(config); break;
            }
            emit(report.to_json(), out_dir, "figure" + std::to_string(figure) + ".json");
            return report.all_pass ? 0 : 1;
        }

        if (cmd_proptest->parsed()) {
            PropertyOptions opts;
            opts.n_states = n_states;
            opts.seed = seed;
            const PropertySummary summary = run_property_suite(opts);
            json j;
            j["n_states"] = summary.n_states;
            j["violations"] = summary.violations;
            if (!summary.first_failure.empty()) j["first_failure"] = summary.first_failure;
            emit(j.dump(2) + "\n", out_dir, "proptest.json");
            return summary.ok() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
