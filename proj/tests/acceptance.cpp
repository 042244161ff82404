// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion is timed; the limits are part of the contract.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "duality/capacity.hpp"
#include "duality/counts.hpp"
#include "duality/harness.hpp"
#include "duality/optics.hpp"
#include "duality/presets.hpp"
#include "duality/qstate.hpp"
#include "duality/tomography.hpp"

using namespace duality;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point start) {
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

Outcome timed(Outcome o, double elapsed, double limit) {
    if (elapsed > limit) {
        o.pass = false;
        o.detail += " [over time limit]";
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), " (%.2fs / limit %.0fs)", elapsed, limit);
    o.detail += buf;
    return o;
}

// 1. Preset particle capacities match the published theory values and the
//    pure-state full capacity equals E.
Outcome criterion1() {
    const auto start = clock_type::now();
    Outcome o{true, ""};
    double worst_cd = 0.0, worst_cp = 0.0;
    for (const auto& entry : reference_table()) {
        const DensityMatrix rho = density_from_pure(preset_state(entry.name));
        const CapacityReport rep = duality_check(rho, Convention::appendix());
        worst_cd = std::max(worst_cd, std::abs(rep.c_d - entry.theory_c_d));
        worst_cp = std::max(worst_cp, std::abs(rep.c_p - entry.theory_c_p));
    }
    o.pass = worst_cd < 5e-4 && worst_cp < 1e-3;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "max |C_d - theory| = %.2e, max |C_p - E| = %.2e", worst_cd,
                  worst_cp);
    o.detail = buf;
    return timed(o, seconds_since(start), 1.0);
}

// 2 & 3. Equality residual and inequality over 1e5 Bloch-ball states in both
//    conventions. Shared sweep; reported as two criteria.
struct SweepResult {
    double max_residual = 0.0;
    int inequality_violations = 0;
    double elapsed = 0.0;
};

SweepResult equality_sweep() {
    const auto start = clock_type::now();
    SweepResult r;
    const Convention convs[2] = {Convention::main_text(), Convention::appendix()};
    for (int i = 0; i < 100000; ++i) {
        const DensityMatrix rho = random_state(mix_seed(42, i), RandomKind::bloch_ball);
        for (const auto& conv : convs) {
            const CapacityReport rep = duality_check(rho, conv);
            r.max_residual = std::max(r.max_residual, rep.equality_residual);
            if (!rep.inequality_ok) ++r.inequality_violations;
        }
    }
    r.elapsed = seconds_since(start);
    return r;
}

// 4. Frame covariance: random (state, rank-one Hamiltonian) pairs keep the
//    equality after rotation into the canonical frame.
Outcome criterion4() {
    const auto start = clock_type::now();
    Outcome o{true, ""};
    std::mt19937_64 rng(2718);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        complexd a(gauss(rng), gauss(rng)), b(gauss(rng), gauss(rng));
        const double n = std::sqrt(std::norm(a) + std::norm(b));
        const BareHamiltonian h(1.0, PureState(a / n, b / n));
        const Unitary2 u = frame_rotation(h, Convention::appendix());
        const DensityMatrix rho = random_state(mix_seed(99, i), RandomKind::bloch_ball);
        const CapacityReport rep = duality_check(rho, Convention::general(u));
        worst = std::max(worst, rep.equality_residual);
    }
    o.pass = worst < 1e-10;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "max residual = %.2e over 1000 pairs", worst);
    o.detail = buf;
    return timed(o, seconds_since(start), 5.0);
}

// 5. Phase-scan grid extrema agree with the closed form and sit inside the
//    experimental reference band.
Outcome criterion5() {
    const auto start = clock_type::now();
    Outcome o{true, ""};
    double worst_grid = 0.0, worst_ref = 0.0;
    for (const auto& entry : reference_table()) {
        const DensityMatrix rho = density_from_pure(preset_state(entry.name));
        const ScanExtrema exact = w_phi_extrema(rho, Convention::appendix());
        const PhaseScan scan = phase_scan(rho, Convention::appendix(), 1001);
        double g_max = scan.energies.front(), g_min = scan.energies.front();
        for (double w : scan.energies) {
            g_max = std::max(g_max, w);
            g_min = std::min(g_min, w);
        }
        worst_grid = std::max({worst_grid, std::abs(g_max - exact.w_max),
                               std::abs(g_min - exact.w_min)});
        worst_ref = std::max({worst_ref, std::abs(exact.w_max - entry.exp_w_max),
                              std::abs(exact.w_min - entry.exp_w_min)});
    }
    const ScanExtrema phi1 = w_phi_extrema(density_from_pure(preset_state("phi1")),
                                           Convention::appendix());
    const bool phi1_ok =
        std::abs(phi1.w_max - 0.9414) < 1e-4 && std::abs(phi1.w_min - 0.0586) < 1e-4;
    o.pass = worst_grid < 1e-4 && worst_ref < 0.03 && phi1_ok;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "grid dev = %.2e, reference dev = %.4f", worst_grid,
                  worst_ref);
    o.detail = buf;
    return timed(o, seconds_since(start), 10.0);
}

// 6. Brute-force unitary search converges to cap_p from below.
Outcome criterion6() {
    const auto start = clock_type::now();
    Outcome o{true, ""};
    const BareHamiltonian h(1.0, state_h());
    double worst_over = -1.0, worst_deficit = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const DensityMatrix rho = random_state(mix_seed(314, i), RandomKind::bloch_ball);
        const double oracle = brute_force_cap_p(rho, h, 50);
        const double closed = cap_p(rho);
        worst_over = std::max(worst_over, oracle - closed);
        worst_deficit = std::max(worst_deficit, closed - oracle);
    }
    o.pass = worst_over < 1e-9 && worst_deficit < 5e-3;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "max overshoot = %.2e, max deficit = %.2e", worst_over,
                  worst_deficit);
    o.detail = buf;
    return timed(o, seconds_since(start), 60.0);
}

// 7. Tomography at experiment-scale counts recovers each preset with F > 0.98 in
//    at least 95% of 200 seeded trials.
Outcome criterion7() {
    const auto start = clock_type::now();
    Outcome o{true, ""};
    int min_good = 200;
    const auto& table = reference_table();
    for (std::size_t p = 0; p < table.size(); ++p) {
        const DensityMatrix truth = density_from_pure(preset_state(table[p].name));
        int good = 0;
        for (int trial = 0; trial < 200; ++trial) {
            NoiseModel noise;
            noise.seed = mix_seed(7000, p * 1000 + trial);
            MleOptions opts;
            opts.target = truth;
            const TomographyResult result = mle_reconstruct(simulate_counts(truth, noise), opts);
            if (result.fidelity_vs_target && *result.fidelity_vs_target > 0.98) ++good;
        }
        min_good = std::min(min_good, good);
    }
    o.pass = min_good >= 190;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "worst preset: %d/200 trials with F > 0.98", min_good);
    o.detail = buf;
    return timed(o, seconds_since(start), 300.0);
}

// 8. End-to-end simulated experiments: capacity triples within 0.05 E of the
//    analytic values and equality residual below 0.05 E^2 in >= 95% of runs.
Outcome criterion8() {
    const auto start = clock_type::now();
    Outcome o{true, ""};
    int triple_pass = 0, residual_pass = 0, total = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        ExperimentConfig cfg = ExperimentConfig::with_presets();
        cfg.noise.seed = seed;
        cfg.sim_scan_points = 60;
        const FigureReport fig4 = run_figure4(cfg);
        const FigureReport fig5 = run_figure5(cfg);
        for (const auto& row : fig4.rows) {
            if (row.pass) ++triple_pass;
        }
        for (const auto& row : fig5.rows) {
            if (row.simulated.at("residual") < 0.05) ++residual_pass;
        }
        total += static_cast<int>(fig4.rows.size());
    }
    // ceil(0.95 * total)
    const int need = (19 * total + 19) / 20;
    o.pass = triple_pass >= need && residual_pass >= need;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "triples %d/%d, residuals %d/%d (need %d)", triple_pass,
                  total, residual_pass, total, need);
    o.detail = buf;
    return timed(o, seconds_since(start), 300.0);
}

// 9. The MLE is never beaten (beyond 1e-6) by an exhaustive Bloch-ball grid
//    at step 0.02. The likelihood is linear in the counts, so pooled per-axis
//    totals reproduce the full-record value exactly.
double pooled_grid_min_nll(const std::vector<CountRecord>& counts) {
    const auto pooled = pool_by_axis(counts);
    const double n0z = static_cast<double>(pooled[0].n0), n1z = static_cast<double>(pooled[0].n1);
    const double n0x = static_cast<double>(pooled[1].n0), n1x = static_cast<double>(pooled[1].n1);
    const double n0y = static_cast<double>(pooled[2].n0), n1y = static_cast<double>(pooled[2].n1);
    auto term = [](double n0, double n1, double s) {
        double p = 0.5 * (1.0 + s);
        p = std::min(std::max(p, 1e-12), 1.0 - 1e-12);
        return -(n0 * std::log(p) + n1 * std::log(1.0 - p));
    };
    double best = std::numeric_limits<double>::infinity();
    constexpr double step = 0.02;
    for (int i = -50; i <= 50; ++i) {
        const double s1 = i * step;
        for (int j = -50; j <= 50; ++j) {
            const double s2 = j * step;
            if (s1 * s1 + s2 * s2 > 1.0) continue;
            const double tx = term(n0x, n1x, s1);
            const double ty = term(n0y, n1y, s2);
            for (int k = -50; k <= 50; ++k) {
                const double s3 = k * step;
                if (s1 * s1 + s2 * s2 + s3 * s3 > 1.0) continue;
                const double nll = tx + ty + term(n0z, n1z, s3);
                best = std::min(best, nll);
            }
        }
    }
    return best;
}

Outcome criterion9() {
    const auto start = clock_type::now();
    Outcome o{true, ""};
    double worst_gap = -std::numeric_limits<double>::infinity();
    for (int set = 0; set < 20; ++set) {
        const DensityMatrix truth =
            set < 10 ? density_from_pure(preset_state(reference_table()[set % 4].name))
                     : random_state(mix_seed(555, set), RandomKind::bloch_ball);
        NoiseModel noise;
        noise.seed = mix_seed(888, set);
        const auto counts = simulate_counts(truth, noise);
        const TomographyResult result = mle_reconstruct(counts);
        const double grid_best = pooled_grid_min_nll(counts);
        // positive gap means the grid found a better likelihood than the MLE
        worst_gap = std::max(worst_gap, result.neg_log_lik - grid_best);
    }
    o.pass = worst_gap < 1e-6;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "max (MLE nll - grid nll) = %.2e", worst_gap);
    o.detail = buf;
    return timed(o, seconds_since(start), 60.0);
}

void report(int index, const char* title, const Outcome& o, int& failures) {
    std::printf("[%s] criterion %d: %s -- %s\n", o.pass ? "PASS" : "FAIL", index, title,
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
}

}  // namespace

int main() {
    int failures = 0;

    report(1, "preset capacities match published theory", criterion1(), failures);

    const SweepResult sweep = equality_sweep();
    {
        Outcome o;
        o.pass = sweep.max_residual < 1e-10;
        char buf[64];
        std::snprintf(buf, sizeof(buf), "max residual = %.2e over 1e5 states", sweep.max_residual);
        o.detail = buf;
        report(2, "duality equality on random states, both conventions",
               timed(o, sweep.elapsed, 10.0), failures);
    }
    {
        Outcome o;
        o.pass = sweep.inequality_violations == 0;
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%d violations over 1e5 states",
                      sweep.inequality_violations);
        o.detail = buf;
        report(3, "duality inequality never violated", timed(o, sweep.elapsed, 10.0), failures);
    }

    report(4, "frame covariance for random Hamiltonians", criterion4(), failures);
    report(5, "phase-scan extrema: grid, closed form and references", criterion5(), failures);
    report(6, "brute-force unitary search converges to cap_p", criterion6(), failures);
    report(7, "tomography fidelity at experiment-scale counts", criterion7(), failures);
    report(8, "simulated experiments reproduce the analytic values", criterion8(), failures);
    report(9, "no Bloch-grid point beats the MLE likelihood", criterion9(), failures);

    if (failures > 0) {
        std::printf("ACCEPTANCE: %d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("ACCEPTANCE: all criteria passed\n");
    return 0;
}
