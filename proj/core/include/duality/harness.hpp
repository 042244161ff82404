#ifndef DUALITY_HARNESS_HPP
#define DUALITY_HARNESS_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "duality/capacity.hpp"
#include "duality/counts.hpp"
#include "duality/optics.hpp"
#include "duality/presets.hpp"
#include "duality/qstate.hpp"

namespace duality {

// One experiment input state: a preset name or an explicit pure state.
struct NamedState {
    std::string name;
    PureState state;
};

struct ExperimentConfig {
    std::vector<NamedState> states;
    Convention convention = Convention::appendix();
    NoiseModel noise;
    bool analytic_only = false;
    std::filesystem::path output_dir;
    double e_joules = default_energy_joules;
    int scan_points = 1001;      // analytic phase grid
    int sim_scan_points = 100;   // phases at which counts are simulated

    static ExperimentConfig with_presets();
};

// One per-state row; every row carries analytic, simulated and reference
// values so nothing is silently absent (simulated mirrors analytic when
// analytic_only is set).
struct FigureRow {
    std::string state;
    std::map<std::string, double> analytic;
    std::map<std::string, double> simulated;
    std::map<std::string, double> reference;
    std::map<std::string, double> deviation;  // |simulated - analytic|
    bool pass = false;
    std::string note;
};

struct FigureReport {
    int figure = 0;
    std::string convention;
    std::uint64_t seed = 0;
    bool analytic_only = false;
    std::vector<FigureRow> rows;
    bool all_pass = false;

    std::string to_json() const;
};

// Phase-scan experiment: analytic W_phi curves, simulated estimates from
// counts on the Hamiltonian axis, and the wave capacity from the extrema.
// Writes one scan CSV per state into output_dir when it is set.
FigureReport run_figure3(const ExperimentConfig& config);

// Capacity-triple experiment: analytic (C_d, C_v, C_p) against values
// reconstructed by tomography on simulated counts, plus the inequality check.
FigureReport run_figure4(const ExperimentConfig& config);

// Duality-equality experiment: C_p^2 vs C_d^2 + C_v^2, analytic and
// simulated with bootstrap error bars.
FigureReport run_figure5(const ExperimentConfig& config);

struct PropertyOptions {
    int n_states = 1000;
    std::uint64_t seed = 1;
    int oracle_states = 40;       // subsample for the brute-force sweeps
    int frame_pairs = 100;
    // Test-of-the-test hook: negates S2 in the closed-form energy route so
    // the consistency sweep must fail.
    bool inject_s2_sign_bug = false;
};

struct PropertySummary {
    int n_states = 0;
    int violations = 0;
    std::string first_failure;

    bool ok() const { return violations == 0; }
};

// Equality, inequality, closed-form-vs-matrix consistency, oracle and
// frame-covariance sweeps over random states. Reports the first failing
// state verbatim.
PropertySummary run_property_suite(const PropertyOptions& opts);

}  // namespace duality

#endif
