#include "duality/optics.hpp"

#include <cmath>

namespace duality {

namespace {

const complexd kI(0.0, 1.0);

Mat2 outer(const PureState& ket, const PureState& bra) {
    Mat2 m;
    m(0, 0) = ket.alpha() * std::conj(bra.alpha());
    m(0, 1) = ket.alpha() * std::conj(bra.beta());
    m(1, 0) = ket.beta() * std::conj(bra.alpha());
    m(1, 1) = ket.beta() * std::conj(bra.beta());
    return m;
}

}  // namespace

Unitary2::Unitary2(const Mat2& entries) : u_(entries) {
    const Mat2 gram = u_.adjoint() * u_;
    if (gram.max_abs_diff(Mat2::identity()) > unitarity_tol) {
        throw std::invalid_argument("matrix is not unitary");
    }
}

BareHamiltonian::BareHamiltonian(double e, PureState psi) : energy_unit(e), eigendirection(psi) {
    if (!(e >= 0.0) || !std::isfinite(e)) {
        throw std::invalid_argument("energy unit must be finite and nonnegative");
    }
}

Convention Convention::general(const Unitary2& rotation) {
    Convention c(Tag::general);
    c.rotation_ = rotation;
    return c;
}

const Unitary2& Convention::rotation() const {
    if (!rotation_) throw std::logic_error("convention carries no rotation");
    return *rotation_;
}

std::string Convention::name() const {
    switch (tag_) {
        case Tag::main_text: return "main";
        case Tag::appendix: return "appendix";
        case Tag::general: return "general";
    }
    return "?";
}

PureState state_h() { return PureState(1.0, 0.0); }
PureState state_v() { return PureState(0.0, 1.0); }
PureState state_d() { return PureState(M_SQRT1_2, M_SQRT1_2); }
PureState state_a() { return PureState(M_SQRT1_2, -M_SQRT1_2); }
PureState state_r() { return PureState(M_SQRT1_2, kI * M_SQRT1_2); }
PureState state_l() { return PureState(M_SQRT1_2, -kI * M_SQRT1_2); }

Unitary2 u_bs() {
    return Unitary2((pauli(1) + pauli(3)) * complexd(M_SQRT1_2));
}

Unitary2 u_phase(double phi) {
    if (!std::isfinite(phi)) throw std::invalid_argument("phase must be finite");
    Mat2 m;
    m(0, 0) = std::exp(kI * (phi / 2.0));
    m(1, 1) = std::exp(-kI * (phi / 2.0));
    return Unitary2(m);
}

Unitary2 u_wave(double phi, const Convention& conv) {
    switch (conv.tag()) {
        case Convention::Tag::main_text: {
            const Unitary2 bs = u_bs();
            return bs * u_phase(phi) * bs.adjoint();
        }
        case Convention::Tag::appendix:
            return u_phase(phi);
        case Convention::Tag::general: {
            const Unitary2& r = conv.rotation();
            return r.adjoint() * u_phase(phi) * r;
        }
    }
    throw std::logic_error("unreachable");
}

Unitary2 u_particle(ParticleSign sign) {
    const double s = (sign == ParticleSign::plus) ? 1.0 : -1.0;
    return Unitary2((pauli(1) + pauli(3) * complexd(s)) * complexd(M_SQRT1_2));
}

DensityMatrix evolve(const DensityMatrix& rho, const Unitary2& u) {
    return DensityMatrix(u.matrix() * rho.matrix() * u.matrix().adjoint());
}

double mean_energy(const DensityMatrix& rho, const BareHamiltonian& h) {
    const PureState& psi = h.eigendirection;
    const complexd a = psi.alpha();
    const complexd b = psi.beta();
    // <psi|rho|psi>
    const complexd val = std::conj(a) * (rho(0, 0) * a + rho(0, 1) * b) +
                         std::conj(b) * (rho(1, 0) * a + rho(1, 1) * b);
    return h.energy_unit * val.real();
}

BareHamiltonian convention_hamiltonian(const Convention& conv) {
    switch (conv.tag()) {
        case Convention::Tag::main_text:
            return BareHamiltonian(1.0, state_h());
        case Convention::Tag::appendix:
            return BareHamiltonian(1.0, state_d());
        case Convention::Tag::general: {
            // R' |D>
            const Mat2 ud = conv.rotation().matrix().adjoint();
            const PureState d = state_d();
            return BareHamiltonian(1.0, PureState(ud(0, 0) * d.alpha() + ud(0, 1) * d.beta(),
                                                  ud(1, 0) * d.alpha() + ud(1, 1) * d.beta()));
        }
    }
    throw std::logic_error("unreachable");
}

StokesVector effective_stokes(const DensityMatrix& rho, const Convention& conv) {
    if (conv.tag() == Convention::Tag::general) {
        return to_stokes(evolve(rho, conv.rotation()));
    }
    return to_stokes(rho);
}

double w_phi(const DensityMatrix& rho, double phi, const Convention& conv) {
    const StokesVector s = effective_stokes(rho, conv);
    if (conv.tag() == Convention::Tag::main_text) {
        return 0.5 * (1.0 - s.s2 * std::sin(phi) + s.s3 * std::cos(phi));
    }
    // From U_phi = exp(i phi sigma3/2): S1' = S1 cos phi + S2 sin phi and
    // W = (1 + S1')/2 against H = |D><D|.
    return 0.5 * (1.0 + s.s1 * std::cos(phi) + s.s2 * std::sin(phi));
}

PhaseScan phase_scan(const DensityMatrix& rho, const Convention& conv, int n_points) {
    if (n_points < 8) throw std::invalid_argument("phase scan needs at least 8 points");
    PhaseScan scan;
    scan.phases.reserve(n_points);
    scan.energies.reserve(n_points);
    for (int i = 0; i < n_points; ++i) {
        const double phi = 2.0 * M_PI * static_cast<double>(i) / (n_points - 1);
        scan.phases.push_back(phi);
        scan.energies.push_back(w_phi(rho, phi, conv));
    }
    return scan;
}

ScanExtrema w_phi_extrema(const DensityMatrix& rho, const Convention& conv) {
    const StokesVector s = effective_stokes(rho, conv);
    const double v = (conv.tag() == Convention::Tag::main_text)
                         ? std::sqrt(s.s2 * s.s2 + s.s3 * s.s3)
                         : std::sqrt(s.s1 * s.s1 + s.s2 * s.s2);
    return ScanExtrema{0.5 * (1.0 + v), 0.5 * (1.0 - v)};
}

Unitary2 frame_rotation(const BareHamiltonian& h, const Convention& conv_target) {
    const PureState canonical =
        (conv_target.tag() == Convention::Tag::main_text) ? state_h() : state_d();
    const PureState psi = h.eigendirection;
    // U = |canon><psi| + |canon_perp><psi_perp|
    Mat2 u = outer(canonical, psi) + outer(canonical.orthogonal(), psi.orthogonal());
    // Fix the global phase: first nonzero entry of the first column real positive.
    complexd pivot = u(0, 0);
    if (std::abs(pivot) < 1e-12) pivot = u(1, 0);
    u = u * (std::abs(pivot) / pivot);
    return Unitary2(u);
}

}  // namespace duality
