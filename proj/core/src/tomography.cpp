#include "duality/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

namespace duality {

namespace {

constexpr double kProbClamp = 1e-12;

double clamp_prob(double p) {
    return std::min(std::max(p, kProbClamp), 1.0 - kProbClamp);
}

// T parameters reproducing rho via T'T/Tr(T'T), with a slight shrink
// toward I/2 so the Cholesky factor stays well conditioned on pure seeds.
TParams t_from_rho(const DensityMatrix& rho, double shrink = 0.01) {
    Mat2 m = rho.matrix() * complexd(1.0 - shrink) + Mat2::identity() * complexd(shrink / 2.0);
    const double r00 = m(0, 0).real();
    const double r11 = m(1, 1).real();
    TParams t;
    t.t[0] = std::sqrt(std::max(r00, 1e-12));
    const complexd c = m(1, 0) / t.t[0];
    t.t[2] = c.real();
    t.t[3] = c.imag();
    t.t[1] = std::sqrt(std::max(r11 - std::norm(c), 1e-12));
    return t;
}

struct SimplexOutcome {
    TParams best;
    double f_best = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Nelder-Mead over R^4. Converged when the simplex value spread and the
// best-value improvement over a full cycle both drop below tol.
SimplexOutcome nelder_mead(const std::function<double(const TParams&)>& f, const TParams& start,
                           double step, double tol, int max_iters) {
    constexpr int dim = 4;
    std::array<TParams, dim + 1> pts;
    std::array<double, dim + 1> vals;
    pts[0] = start;
    vals[0] = f(start);
    for (int i = 0; i < dim; ++i) {
        pts[i + 1] = start;
        pts[i + 1].t[i] += step;
        vals[i + 1] = f(pts[i + 1]);
    }

    auto order = [&] {
        std::array<int, dim + 1> idx{0, 1, 2, 3, 4};
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return vals[a] < vals[b]; });
        std::array<TParams, dim + 1> p2;
        std::array<double, dim + 1> v2;
        for (int i = 0; i <= dim; ++i) {
            p2[i] = pts[idx[i]];
            v2[i] = vals[idx[i]];
        }
        pts = p2;
        vals = v2;
    };

    order();
    SimplexOutcome out;
    double prev_best = vals[0];
    for (int iter = 0; iter < max_iters; ++iter) {
        // centroid of all but the worst
        TParams cen;
        cen.t = {0, 0, 0, 0};
        for (int i = 0; i < dim; ++i)
            for (int k = 0; k < dim; ++k) cen.t[k] += pts[i].t[k] / dim;

        auto affine = [&](double coef) {
            TParams p;
            for (int k = 0; k < dim; ++k) p.t[k] = cen.t[k] + coef * (pts[dim].t[k] - cen.t[k]);
            return p;
        };

        const TParams refl = affine(-1.0);
        const double f_refl = f(refl);
        if (f_refl < vals[0]) {
            const TParams expd = affine(-2.0);
            const double f_expd = f(expd);
            if (f_expd < f_refl) {
                pts[dim] = expd;
                vals[dim] = f_expd;
            } else {
                pts[dim] = refl;
                vals[dim] = f_refl;
            }
        } else if (f_refl < vals[dim - 1]) {
            pts[dim] = refl;
            vals[dim] = f_refl;
        } else {
            const TParams contr = affine(f_refl < vals[dim] ? -0.5 : 0.5);
            const double f_contr = f(contr);
            if (f_contr < std::min(f_refl, vals[dim])) {
                pts[dim] = contr;
                vals[dim] = f_contr;
            } else {
                // shrink toward the best vertex
                for (int i = 1; i <= dim; ++i) {
                    for (int k = 0; k < dim; ++k)
                        pts[i].t[k] = pts[0].t[k] + 0.5 * (pts[i].t[k] - pts[0].t[k]);
                    vals[i] = f(pts[i]);
                }
            }
        }
        order();
        out.iterations = iter + 1;
        const double spread = vals[dim] - vals[0];
        const double gain = prev_best - vals[0];
        prev_best = vals[0];
        if (spread < tol && gain < tol) {
            out.converged = true;
            break;
        }
    }
    out.best = pts[0];
    out.f_best = vals[0];
    return out;
}

}  // namespace

DensityMatrix rho_from_t(const TParams& t) {
    const complexd c(t.t[2], t.t[3]);
    // T = [[t0, 0], [c, t1]]; T'T = [[t0^2, t0 c*], [c t0, |c|^2 + t1^2]]
    const double a = t.t[0] * t.t[0];
    const double d = std::norm(c) + t.t[1] * t.t[1];
    const double tr = a + d;
    if (!(tr > 1e-300)) throw degenerate_params("trace normalizer underflow");
    Mat2 rho;
    rho(0, 0) = a / tr;
    rho(0, 1) = t.t[0] * std::conj(c) / tr;
    rho(1, 0) = std::conj(rho(0, 1));
    rho(1, 1) = d / tr;
    return DensityMatrix(rho);
}

double neg_log_likelihood(const TParams& t, const std::vector<CountRecord>& counts) {
    if (counts.empty()) throw std::invalid_argument("no count records supplied");
    const DensityMatrix rho = rho_from_t(t);
    const double p[3] = {clamp_prob(born_prob(rho, axis_setting(Axis::Z))),
                         clamp_prob(born_prob(rho, axis_setting(Axis::X))),
                         clamp_prob(born_prob(rho, axis_setting(Axis::Y)))};
    double nll = 0.0;
    for (const auto& rec : counts) {
        const double p0 = p[static_cast<int>(rec.axis)];
        if (rec.n0 > 0) nll -= static_cast<double>(rec.n0) * std::log(p0);
        if (rec.n1 > 0) nll -= static_cast<double>(rec.n1) * std::log(1.0 - p0);
    }
    return nll;
}

StokesVector linear_inversion(const AxisProbs& probs) {
    StokesVector s;
    s.s3 = 2.0 * probs.z - 1.0;
    s.s1 = 2.0 * probs.x - 1.0;
    s.s2 = 2.0 * probs.y - 1.0;
    const double r = s.radius();
    if (r > 1.0) {
        s.s1 /= r;
        s.s2 /= r;
        s.s3 /= r;
    }
    return s;
}

TomographyResult mle_reconstruct(const std::vector<CountRecord>& counts, const MleOptions& opts) {
    const auto pooled = pool_by_axis(counts);
    bool axes_covered = true;
    AxisProbs probs;
    for (const auto& rec : pooled) {
        if (rec.n0 + rec.n1 == 0) {
            axes_covered = false;
            break;
        }
    }
    if (!axes_covered) throw std::invalid_argument("counts must cover all three axes");
    probs.z = estimate_prob(pooled[0]);
    probs.x = estimate_prob(pooled[1]);
    probs.y = estimate_prob(pooled[2]);

    const DensityMatrix seed = from_stokes(linear_inversion(probs));
    const TParams t_seed = t_from_rho(seed);
    auto objective = [&](const TParams& t) { return neg_log_likelihood(t, counts); };

    SimplexOutcome run = nelder_mead(objective, t_seed, 0.05, opts.convergence_tol, opts.max_iters);
    if (!run.converged) {
        // one restart from a deterministic perturbation of the best point
        TParams restart = run.best;
        std::mt19937_64 rng(0x7f4a7c15);
        std::uniform_real_distribution<double> jitter(-0.02, 0.02);
        for (auto& v : restart.t) v += jitter(rng);
        SimplexOutcome second =
            nelder_mead(objective, restart, 0.02, opts.convergence_tol, opts.max_iters);
        second.iterations += run.iterations;
        if (second.f_best <= run.f_best) {
            run = second;
        } else {
            run.iterations = second.iterations;
        }
    }

    // Never report worse than the unshrunk linear-inversion seed itself.
    const TParams t_li = t_from_rho(seed, 0.0);
    const double f_li = objective(t_li);
    if (f_li < run.f_best) {
        run.best = t_li;
        run.f_best = f_li;
    }

    TomographyResult result{rho_from_t(run.best), run.f_best, run.iterations, run.converged, {}};
    if (opts.target) {
        result.fidelity_vs_target = fidelity(*opts.target, result.rho_hat);
    }
    return result;
}

BootstrapResult bootstrap_capacities(const std::vector<CountRecord>& counts, int b,
                                     const Convention& conv, std::uint64_t seed) {
    BootstrapResult out;
    out.replicates = b;
    if (b < 1) throw std::invalid_argument("bootstrap needs at least one replicate");

    std::vector<double> cps, cds, cvs, residuals;
    cps.reserve(b);
    for (int rep = 0; rep < b; ++rep) {
        std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(rep)));
        std::vector<CountRecord> resampled;
        resampled.reserve(counts.size());
        for (const auto& rec : counts) {
            const std::uint64_t total = rec.n0 + rec.n1;
            CountRecord r2 = rec;
            if (total > 0) {
                std::binomial_distribution<std::uint64_t> split(
                    total, static_cast<double>(rec.n0) / static_cast<double>(total));
                r2.n0 = split(rng);
                r2.n1 = total - r2.n0;
            }
            resampled.push_back(r2);
        }
        const TomographyResult tomo = mle_reconstruct(resampled);
        if (!tomo.converged) ++out.nonconverged;
        const CapacityReport rep_caps = duality_check(tomo.rho_hat, conv);
        cps.push_back(rep_caps.c_p);
        cds.push_back(rep_caps.c_d);
        cvs.push_back(rep_caps.c_v);
        residuals.push_back(rep_caps.c_p * rep_caps.c_p - rep_caps.c_d * rep_caps.c_d -
                            rep_caps.c_v * rep_caps.c_v);
    }

    auto sample_std = [](const std::vector<double>& xs) {
        if (xs.size() < 2) return 0.0;
        double mean = 0.0;
        for (double x : xs) mean += x;
        mean /= static_cast<double>(xs.size());
        double ss = 0.0;
        for (double x : xs) ss += (x - mean) * (x - mean);
        return std::sqrt(ss / static_cast<double>(xs.size() - 1));
    };

    out.std_errors.c_p = sample_std(cps);
    out.std_errors.c_d = sample_std(cds);
    out.std_errors.c_v = sample_std(cvs);
    out.std_errors.residual = sample_std(residuals);
    out.valid = b >= 2;
    return out;
}

}  // namespace duality
