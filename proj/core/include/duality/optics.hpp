#ifndef DUALITY_OPTICS_HPP
#define DUALITY_OPTICS_HPP

#include <optional>
#include <string>
#include <vector>

#include "duality/qstate.hpp"

namespace duality {

// 2x2 unitary, validated on construction (||U'U - I||_inf < 1e-12).
class Unitary2 {
  public:
    explicit Unitary2(const Mat2& entries);

    const Mat2& matrix() const { return u_; }
    complexd operator()(int r, int c) const { return u_(r, c); }
    Unitary2 adjoint() const { return Unitary2(u_.adjoint()); }
    Unitary2 operator*(const Unitary2& o) const { return Unitary2(u_ * o.u_); }

    static constexpr double unitarity_tol = 1e-12;

  private:
    Mat2 u_;
};

// Rank-one Hamiltonian H = E |psi><psi|.
struct BareHamiltonian {
    double energy_unit = 1.0;  // in units of E unless stated otherwise
    PureState eigendirection;

    BareHamiltonian(double e, PureState psi);
};

// Frame in which the interferometer and capacities are expressed.
//   main_text: H along |h>, wave unitary U_bs U_phi U_bs'
//   appendix:  H along |D>, wave unitary U_phi
//   general:   arbitrary rank-one H, handled by rotating into the appendix frame
class Convention {
  public:
    enum class Tag { main_text, appendix, general };

    static Convention main_text() { return Convention(Tag::main_text); }
    static Convention appendix() { return Convention(Tag::appendix); }
    static Convention general(const Unitary2& rotation);

    Tag tag() const { return tag_; }
    const Unitary2& rotation() const;  // general only
    std::string name() const;

  private:
    explicit Convention(Tag t) : tag_(t) {}
    Tag tag_;
    std::optional<Unitary2> rotation_;
};

// Phase grid with the extractable energy at each point (units of E).
struct PhaseScan {
    std::vector<double> phases;
    std::vector<double> energies;
};

// Beam splitter (sigma1 + sigma3)/sqrt(2), i.e. the Hadamard.
Unitary2 u_bs();

// Phase plate exp(i phi sigma3 / 2) = diag(e^{i phi/2}, e^{-i phi/2}).
Unitary2 u_phase(double phi);

// Wave-configuration unitary for the given frame.
Unitary2 u_wave(double phi, const Convention& conv);

enum class ParticleSign { plus, minus };

// Particle-configuration unitary (sigma1 +/- sigma3)/sqrt(2).
Unitary2 u_particle(ParticleSign sign);

// U rho U'
DensityMatrix evolve(const DensityMatrix& rho, const Unitary2& u);

// Tr(H rho) = E <psi|rho|psi>
double mean_energy(const DensityMatrix& rho, const BareHamiltonian& h);

// The Hamiltonian the convention measures against (energy_unit = 1).
BareHamiltonian convention_hamiltonian(const Convention& conv);

// Stokes components of rho after rotation into the convention's canonical
// frame (identity for main_text and appendix).
StokesVector effective_stokes(const DensityMatrix& rho, const Convention& conv);

// Extractable energy after the wave unitary at phase phi, in units of E.
double w_phi(const DensityMatrix& rho, double phi, const Convention& conv);

// Uniform grid over [0, 2pi], both endpoints included. n_points >= 8.
PhaseScan phase_scan(const DensityMatrix& rho, const Convention& conv, int n_points);

// Closed-form extrema (1 +/- V)/2 of the W_phi curve, in units of E.
struct ScanExtrema {
    double w_max;
    double w_min;
};
ScanExtrema w_phi_extrema(const DensityMatrix& rho, const Convention& conv);

// Unitary mapping the Hamiltonian eigendirection onto the target frame's
// canonical axis (|D> for appendix, |h> for main_text). Global phase fixed
// by making the first nonzero entry of the first column real positive.
Unitary2 frame_rotation(const BareHamiltonian& h, const Convention& conv_target);

// Canonical basis states.
PureState state_h();
PureState state_v();
PureState state_d();
PureState state_a();
PureState state_r();
PureState state_l();

}  // namespace duality

#endif
