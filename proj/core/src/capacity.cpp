#include "duality/capacity.hpp"

#include <cmath>
#include <vector>

namespace duality {

double cap_p(const DensityMatrix& rho) {
    return to_stokes(rho).radius();
}

double cap_p(const DensityMatrix& rho, const BareHamiltonian& h) {
    return h.energy_unit * cap_p(rho);
}

double cap_v(const DensityMatrix& rho, const Convention& conv) {
    const StokesVector s = effective_stokes(rho, conv);
    if (conv.tag() == Convention::Tag::main_text) {
        return std::sqrt(s.s2 * s.s2 + s.s3 * s.s3);
    }
    return std::sqrt(s.s1 * s.s1 + s.s2 * s.s2);
}

double cap_d(const DensityMatrix& rho, const Convention& conv) {
    const StokesVector s = effective_stokes(rho, conv);
    if (conv.tag() == Convention::Tag::main_text) {
        return std::abs(s.s1);
    }
    return std::abs(s.s3);
}

CapacityReport duality_check(const DensityMatrix& rho, const Convention& conv) {
    CapacityReport rep;
    rep.c_p = cap_p(rho);
    rep.c_d = cap_d(rho, conv);
    rep.c_v = cap_v(rho, conv);
    rep.convention = conv;
    rep.equality_residual = std::abs(rep.c_p * rep.c_p - rep.c_d * rep.c_d - rep.c_v * rep.c_v);
    const double tol = CapacityReport::inequality_tol;
    rep.inequality_ok = std::max(rep.c_d, rep.c_v) <= rep.c_p + tol &&
                        rep.c_p <= rep.c_d + rep.c_v + tol;
    return rep;
}

double brute_force_cap_p(const DensityMatrix& rho, const BareHamiltonian& h, int grid_density) {
    if (grid_density < 20) throw std::invalid_argument("grid density must be >= 20 per angle");
    const int n = grid_density;
    const complexd i(0.0, 1.0);
    const complexd a = h.eigendirection.alpha();
    const complexd b = h.eigendirection.beta();

    std::vector<complexd> ea(n), eg(n);
    std::vector<double> cb(n), sb(n);
    for (int k = 0; k < n; ++k) {
        ea[k] = std::exp(-i * (M_PI * k / n));            // e^{-i alpha/2}, alpha = 2pi k/n
        eg[k] = ea[k];                                    // same grid for gamma
        const double be = M_PI * k / (n - 1);             // beta in [0, pi]
        cb[k] = std::cos(be / 2.0);
        sb[k] = std::sin(be / 2.0);
    }

    const double r00 = rho(0, 0).real();
    const double r11 = rho(1, 1).real();
    const complexd r01 = rho(0, 1);

    double e_max = -1.0;
    double e_min = 2.0;
    // U(alpha,beta,gamma) = Rz(alpha) Ry(beta) Rz(gamma); energy is
    // E <u|rho|u> with |u> = U'|psi> = Rz(-gamma) Ry(-beta) Rz(-alpha) |psi>.
    for (int ia = 0; ia < n; ++ia) {
        const complexd pa = ea[ia] * a;
        const complexd pb = std::conj(ea[ia]) * b;
        for (int ib = 0; ib < n; ++ib) {
            const complexd v0 = cb[ib] * pa + sb[ib] * pb;
            const complexd v1 = -sb[ib] * pa + cb[ib] * pb;
            const double n0 = std::norm(v0);
            const double n1 = std::norm(v1);
            const complexd cross = std::conj(v0) * v1 * r01;  // before the gamma phase
            const double base = n0 * r00 + n1 * r11;
            for (int ig = 0; ig < n; ++ig) {
                // gamma phase multiplies the cross term by e^{-i gamma}
                const complexd g = eg[ig] * eg[ig];
                const double e = base + 2.0 * (cross * g).real();
                if (e > e_max) e_max = e;
                if (e < e_min) e_min = e;
            }
        }
    }
    return h.energy_unit * (e_max - e_min);
}

double brute_force_cap_v(const DensityMatrix& rho, const Convention& conv, int n_phi) {
    if (n_phi < 100) throw std::invalid_argument("phase grid must have >= 100 points");
    double w_max = -1.0;
    double w_min = 2.0;
    for (int k = 0; k < n_phi; ++k) {
        const double phi = 2.0 * M_PI * k / n_phi;
        const double w = w_phi(rho, phi, conv);
        if (w > w_max) w_max = w;
        if (w < w_min) w_min = w;
    }
    return w_max - w_min;
}

}  // namespace duality
