#ifndef DUALITY_TOMOGRAPHY_HPP
#define DUALITY_TOMOGRAPHY_HPP

#include <array>
#include <optional>
#include <vector>

#include "duality/capacity.hpp"
#include "duality/counts.hpp"
#include "duality/qstate.hpp"

namespace duality {

struct degenerate_params : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Cholesky-style parametrization: T lower triangular with
// T = [[t0, 0], [t2 + i t3, t1]] and rho = T'T / Tr(T'T). Physical by
// construction for any parameters with nonzero trace.
struct TParams {
    std::array<double, 4> t{1.0, 1.0, 0.0, 0.0};
};

DensityMatrix rho_from_t(const TParams& t);

// Binomial negative log-likelihood of the records under rho(t), with
// outcome-0 probabilities clamped to [1e-12, 1 - 1e-12].
double neg_log_likelihood(const TParams& t, const std::vector<CountRecord>& counts);

// Per-axis outcome-0 probabilities, order Z, X, Y.
struct AxisProbs {
    double z = 0.5;
    double x = 0.5;
    double y = 0.5;
};

// s_k = 2 p_k - 1; radially projected onto the unit sphere when r > 1.
StokesVector linear_inversion(const AxisProbs& probs);

struct MleOptions {
    int max_iters = 100000;
    double convergence_tol = 1e-10;
    std::optional<DensityMatrix> target;  // when set, fidelity_vs_target is filled
};

struct TomographyResult {
    DensityMatrix rho_hat;
    double neg_log_lik = 0.0;
    int iterations = 0;
    bool converged = false;
    std::optional<double> fidelity_vs_target;
};

// Simplex descent over the four T parameters, seeded by linear inversion.
// The result's likelihood never exceeds that of the seed. Restarts once
// from a perturbed simplex if the first pass fails to converge.
TomographyResult mle_reconstruct(const std::vector<CountRecord>& counts,
                                 const MleOptions& opts = {});

struct BootstrapResult {
    CapacityErrors std_errors;
    int replicates = 0;
    int nonconverged = 0;
    bool valid = false;  // false for degenerate runs (B < 2)
};

// Resamples each record from Binomial(n0+n1, n0/(n0+n1)) with the totals
// held fixed, re-runs the MLE and duality check per replicate, and returns
// the sample standard deviations of the capacities and of C_p^2-C_d^2-C_v^2.
BootstrapResult bootstrap_capacities(const std::vector<CountRecord>& counts, int b,
                                     const Convention& conv, std::uint64_t seed);

}  // namespace duality

#endif
