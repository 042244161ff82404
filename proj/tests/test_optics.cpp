#include <cmath>
#include <random>

#include <doctest.h>

#include "duality/optics.hpp"
#include "duality/presets.hpp"
#include "duality/qstate.hpp"

using namespace duality;

namespace {

const complexd kI(0.0, 1.0);

DensityMatrix phi1_rho() { return density_from_pure(preset_state("phi1")); }

}  // namespace

TEST_CASE("u_bs is the Hadamard: action, involution, conjugation") {
    const Unitary2 bs = u_bs();
    // |h> -> |D>
    CHECK(std::abs(bs(0, 0) - complexd(M_SQRT1_2)) < 1e-15);
    CHECK(std::abs(bs(1, 0) - complexd(M_SQRT1_2)) < 1e-15);
    // involution
    CHECK((bs.matrix() * bs.matrix()).max_abs_diff(Mat2::identity()) < 1e-15);
    // U_bs sigma3 U_bs' = sigma1
    const Mat2 conj = bs.matrix() * pauli(3) * bs.matrix().adjoint();
    CHECK(conj.max_abs_diff(pauli(1)) < 1e-15);
}

TEST_CASE("u_phase: endpoints and quarter turn") {
    CHECK(u_phase(0.0).matrix().max_abs_diff(Mat2::identity()) < 1e-15);
    CHECK(u_phase(2.0 * M_PI).matrix().max_abs_diff(Mat2::identity() * complexd(-1.0)) < 1e-12);
    CHECK(u_phase(M_PI).matrix().max_abs_diff(pauli(3) * kI) < 1e-12);
}

TEST_CASE("u_wave: main-text conjugation identity, appendix passthrough") {
    CHECK(u_wave(0.0, Convention::main_text()).matrix().max_abs_diff(Mat2::identity()) < 1e-12);
    for (double phi : {0.3, 1.0, 2.5, 5.0}) {
        const Mat2 expected =
            Mat2::identity() * complexd(std::cos(phi / 2)) + pauli(1) * (kI * std::sin(phi / 2));
        CHECK(u_wave(phi, Convention::main_text()).matrix().max_abs_diff(expected) < 1e-12);
    }
    const Unitary2 quarter = u_wave(M_PI / 2, Convention::appendix());
    CHECK(std::abs(quarter(0, 0) - std::exp(kI * (M_PI / 4))) < 1e-15);
    CHECK(std::abs(quarter(1, 1) - std::exp(-kI * (M_PI / 4))) < 1e-15);
}

TEST_CASE("u_particle: Hadamard branch, |D> -> |v>, involutions") {
    CHECK(u_particle(ParticleSign::plus).matrix().max_abs_diff(u_bs().matrix()) < 1e-15);

    const DensityMatrix mapped =
        evolve(density_from_pure(state_d()), u_particle(ParticleSign::minus));
    CHECK(mapped(1, 1).real() == doctest::Approx(1.0).epsilon(1e-12));

    for (auto sign : {ParticleSign::plus, ParticleSign::minus}) {
        const Mat2 sq = u_particle(sign).matrix() * u_particle(sign).matrix();
        CHECK(sq.max_abs_diff(Mat2::identity()) < 1e-15);
    }
}

TEST_CASE("evolve: identity and the Stokes rotation law at phi = pi/2") {
    const DensityMatrix rho = phi1_rho();
    CHECK(evolve(rho, Unitary2(Mat2::identity())).matrix().max_abs_diff(rho.matrix()) < 1e-15);

    // main text: (0,0,1) -> (0,1,0)
    const StokesVector m = to_stokes(evolve(from_stokes(StokesVector{0, 0, 1}),
                                            u_wave(M_PI / 2, Convention::main_text())));
    CHECK(m.s1 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(m.s2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.s3 == doctest::Approx(0.0).epsilon(1e-12));

    // appendix: (1,0,0) -> (0,-1,0)
    const StokesVector a = to_stokes(evolve(from_stokes(StokesVector{1, 0, 0}),
                                            u_wave(M_PI / 2, Convention::appendix())));
    CHECK(a.s1 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(a.s2 == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(a.s3 == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("Stokes rotation law holds for both conventions on random states") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
    for (int i = 0; i < 200; ++i) {
        const DensityMatrix rho = random_state(i, RandomKind::bloch_ball);
        const StokesVector s = to_stokes(rho);
        const double phi = phase(rng);

        const StokesVector m =
            to_stokes(evolve(rho, u_wave(phi, Convention::main_text())));
        CHECK(m.s1 == doctest::Approx(s.s1).epsilon(1e-12));
        CHECK(m.s2 == doctest::Approx(s.s2 * std::cos(phi) + s.s3 * std::sin(phi)).epsilon(1e-12));
        CHECK(m.s3 == doctest::Approx(-s.s2 * std::sin(phi) + s.s3 * std::cos(phi)).epsilon(1e-12));

        const StokesVector a =
            to_stokes(evolve(rho, u_wave(phi, Convention::appendix())));
        CHECK(a.s1 == doctest::Approx(s.s1 * std::cos(phi) + s.s2 * std::sin(phi)).epsilon(1e-12));
        CHECK(a.s2 == doctest::Approx(-s.s1 * std::sin(phi) + s.s2 * std::cos(phi)).epsilon(1e-12));
        CHECK(a.s3 == doctest::Approx(s.s3).epsilon(1e-12));
    }
}

TEST_CASE("mean_energy anchors") {
    const BareHamiltonian h(1.0, state_h());
    CHECK(mean_energy(density_from_pure(state_h()), h) == doctest::Approx(1.0));
    CHECK(mean_energy(from_stokes(StokesVector{0, 0, 0}), h) == doctest::Approx(0.5));
    const double p00 = phi1_rho()(0, 0).real();
    CHECK(mean_energy(phi1_rho(), h) == doctest::Approx(p00).epsilon(1e-12));
    CHECK(mean_energy(phi1_rho(), h) == doctest::Approx(0.7350).epsilon(1e-4));
}

TEST_CASE("w_phi: identity interferometer and appendix extrema") {
    const DensityMatrix rho = phi1_rho();
    const StokesVector s = to_stokes(rho);
    CHECK(w_phi(rho, 0.0, Convention::main_text()) ==
          doctest::Approx(0.5 * (1.0 + s.s3)).epsilon(1e-12));

    const ScanExtrema ex = w_phi_extrema(rho, Convention::appendix());
    CHECK(ex.w_max == doctest::Approx(0.9414).epsilon(2e-4));
    CHECK(ex.w_min == doctest::Approx(0.0586).epsilon(2e-3));

    // |D>: S1 = 1, S2 = 0 so W = (1 + cos phi)/2 (maximal at phi = 0,
    // where the phase plate leaves the state aligned with the Hamiltonian)
    const DensityMatrix d = density_from_pure(state_d());
    for (double phi : {0.0, 0.7, 2.0, 4.5}) {
        CHECK(w_phi(d, phi, Convention::appendix()) ==
              doctest::Approx(0.5 * (1.0 + std::cos(phi))).epsilon(1e-12));
    }
}

TEST_CASE("w_phi equals the evolve-then-measure route") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
    const Convention convs[2] = {Convention::main_text(), Convention::appendix()};
    for (int i = 0; i < 1000; ++i) {
        const DensityMatrix rho = random_state(i, RandomKind::bloch_ball);
        const double phi = phase(rng);
        for (const auto& conv : convs) {
            const double direct = w_phi(rho, phi, conv);
            const double route =
                mean_energy(evolve(rho, u_wave(phi, conv)), convention_hamiltonian(conv));
            CHECK(direct == doctest::Approx(route).epsilon(1e-12));
            // range bound
            const double r = to_stokes(rho).radius();
            CHECK(direct >= (1.0 - r) / 2.0 - 1e-12);
            CHECK(direct <= (1.0 + r) / 2.0 + 1e-12);
        }
    }
}

TEST_CASE("phase_scan: constant curve, grid extrema, capacity bound") {
    const PhaseScan flat = phase_scan(from_stokes(StokesVector{0, 0, 0}),
                                      Convention::appendix(), 101);
    for (double w : flat.energies) CHECK(w == doctest::Approx(0.5).epsilon(1e-15));

    const DensityMatrix rho = phi1_rho();
    const PhaseScan scan = phase_scan(rho, Convention::appendix(), 1000);
    double g_max = 0.0, g_min = 1.0;
    for (double w : scan.energies) {
        g_max = std::max(g_max, w);
        g_min = std::min(g_min, w);
    }
    const ScanExtrema ex = w_phi_extrema(rho, Convention::appendix());
    CHECK(std::abs(g_max - ex.w_max) < 1e-4);
    CHECK(std::abs(g_min - ex.w_min) < 1e-4);
    CHECK(g_max - g_min <= (ex.w_max - ex.w_min) + 1e-12);

    CHECK_THROWS_AS(phase_scan(rho, Convention::appendix(), 4), std::invalid_argument);
}

TEST_CASE("three-point fit reconstructs the full sinusoid") {
    for (int i = 0; i < 50; ++i) {
        const DensityMatrix rho = random_state(i + 500, RandomKind::bloch_ball);
        for (const auto& conv : {Convention::main_text(), Convention::appendix()}) {
            const double w0 = w_phi(rho, 0.0, conv);
            const double w1 = w_phi(rho, M_PI / 2, conv);
            const double w2 = w_phi(rho, M_PI, conv);
            // W = 1/2 + A cos(phi) + B sin(phi)
            const double a = (w0 - w2) / 2.0;
            const double b = w1 - 0.5;
            for (double phi : {0.1, 1.3, 2.2, 3.9, 5.8}) {
                const double fit = 0.5 + a * std::cos(phi) + b * std::sin(phi);
                CHECK(fit == doctest::Approx(w_phi(rho, phi, conv)).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("frame_rotation: canonical anchors") {
    // H along |D>, appendix target: |D> is fixed (up to phase)
    const Unitary2 u_d = frame_rotation(BareHamiltonian(1.0, state_d()), Convention::appendix());
    const DensityMatrix d = density_from_pure(state_d());
    CHECK(evolve(d, u_d).matrix().max_abs_diff(d.matrix()) < 1e-12);

    // H along |h>, appendix target: |h> maps to |D>
    const Unitary2 u_h = frame_rotation(BareHamiltonian(1.0, state_h()), Convention::appendix());
    CHECK(evolve(density_from_pure(state_h()), u_h).matrix().max_abs_diff(d.matrix()) < 1e-12);

    // deterministic global phase: same unitary every time
    const Unitary2 again = frame_rotation(BareHamiltonian(1.0, state_h()), Convention::appendix());
    CHECK(u_h.matrix().max_abs_diff(again.matrix()) == 0.0);
}

TEST_CASE("frame_rotation: energy invariance on random pairs") {
    std::mt19937_64 rng(23);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        complexd a(gauss(rng), gauss(rng)), b(gauss(rng), gauss(rng));
        const double n = std::sqrt(std::norm(a) + std::norm(b));
        const BareHamiltonian h(1.0, PureState(a / n, b / n));
        const DensityMatrix rho = random_state(i + 900, RandomKind::bloch_ball);
        const Unitary2 u = frame_rotation(h, Convention::appendix());
        const double direct = mean_energy(rho, h);
        const double rotated =
            mean_energy(evolve(rho, u), convention_hamiltonian(Convention::appendix()));
        CHECK(direct == doctest::Approx(rotated).epsilon(1e-12));
    }
}

TEST_CASE("constructed unitaries satisfy the unitarity invariant") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
    for (int i = 0; i < 100; ++i) {
        const double phi = phase(rng);
        for (const auto& u : {u_bs(), u_phase(phi), u_wave(phi, Convention::main_text()),
                              u_wave(phi, Convention::appendix()),
                              u_particle(ParticleSign::minus)}) {
            const Mat2 gram = u.matrix().adjoint() * u.matrix();
            CHECK(gram.max_abs_diff(Mat2::identity()) < 1e-12);
        }
    }
    Mat2 not_unitary = Mat2::identity();
    not_unitary(0, 0) = 1.1;
    CHECK_THROWS_AS((void)Unitary2(not_unitary), std::invalid_argument);
}
