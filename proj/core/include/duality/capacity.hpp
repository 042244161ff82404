#ifndef DUALITY_CAPACITY_HPP
#define DUALITY_CAPACITY_HPP

#include <optional>

#include "duality/optics.hpp"
#include "duality/qstate.hpp"

namespace duality {

// Per-capacity standard errors, attached when bootstrap data exists.
struct CapacityErrors {
    double c_p = 0.0;
    double c_d = 0.0;
    double c_v = 0.0;
    double residual = 0.0;
};

// The three work capacities in units of E, plus the duality diagnostics.
struct CapacityReport {
    double c_p = 0.0;
    double c_d = 0.0;
    double c_v = 0.0;
    Convention convention = Convention::appendix();
    double equality_residual = 0.0;  // |C_p^2 - C_d^2 - C_v^2|
    bool inequality_ok = false;      // max(C_d,C_v) <= C_p <= C_d + C_v
    std::optional<CapacityErrors> std_errors;

    static constexpr double inequality_tol = 1e-9;
};

// Full work capacity rE; independent of the Hamiltonian eigendirection.
double cap_p(const DensityMatrix& rho);
double cap_p(const DensityMatrix& rho, const BareHamiltonian& h);

// Wave capacity VE: sqrt(S2^2+S3^2) (main text) or sqrt(S1^2+S2^2) (appendix).
double cap_v(const DensityMatrix& rho, const Convention& conv);

// Particle capacity: |S1| (main text) or |S3| (appendix).
double cap_d(const DensityMatrix& rho, const Convention& conv);

CapacityReport duality_check(const DensityMatrix& rho, const Convention& conv);

// Grid oracle for cap_p: max - min of Tr(H U rho U') over an Euler-angle
// grid of SU(2). Converges to cap_p from below.
double brute_force_cap_p(const DensityMatrix& rho, const BareHamiltonian& h, int grid_density);

// Grid oracle for cap_v: max - min of w_phi over an n_phi-point grid.
double brute_force_cap_v(const DensityMatrix& rho, const Convention& conv, int n_phi);

}  // namespace duality

#endif
