#include "duality/qstate.hpp"

#include <cmath>
#include <random>

namespace duality {

namespace {

bool finite(complexd z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace

Mat2 Mat2::identity() {
    return Mat2{{complexd(1), complexd(0), complexd(0), complexd(1)}};
}

Mat2 Mat2::zero() {
    return Mat2{};
}

Mat2 Mat2::adjoint() const {
    return Mat2{{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}};
}

Mat2 Mat2::operator*(const Mat2& o) const {
    return Mat2{{m[0] * o.m[0] + m[1] * o.m[2], m[0] * o.m[1] + m[1] * o.m[3],
                 m[2] * o.m[0] + m[3] * o.m[2], m[2] * o.m[1] + m[3] * o.m[3]}};
}

Mat2 Mat2::operator+(const Mat2& o) const {
    return Mat2{{m[0] + o.m[0], m[1] + o.m[1], m[2] + o.m[2], m[3] + o.m[3]}};
}

Mat2 Mat2::operator-(const Mat2& o) const {
    return Mat2{{m[0] - o.m[0], m[1] - o.m[1], m[2] - o.m[2], m[3] - o.m[3]}};
}

Mat2 Mat2::operator*(complexd s) const {
    return Mat2{{m[0] * s, m[1] * s, m[2] * s, m[3] * s}};
}

double Mat2::max_abs_diff(const Mat2& o) const {
    double d = 0.0;
    for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(m[i] - o.m[i]));
    return d;
}

Mat2 pauli(int k) {
    const complexd i(0.0, 1.0);
    switch (k) {
        case 0: return Mat2::identity();
        case 1: return Mat2{{complexd(0), complexd(1), complexd(1), complexd(0)}};
        case 2: return Mat2{{complexd(0), -i, i, complexd(0)}};
        case 3: return Mat2{{complexd(1), complexd(0), complexd(0), complexd(-1)}};
        default: throw std::out_of_range("pauli index must be 0..3");
    }
}

PureState::PureState(complexd alpha, complexd beta) : alpha_(alpha), beta_(beta) {
    if (!finite(alpha) || !finite(beta)) {
        throw normalization_error("pure-state amplitudes must be finite");
    }
    const double norm2 = std::norm(alpha) + std::norm(beta);
    if (std::abs(norm2 - 1.0) > ingest_tolerance) {
        throw normalization_error("amplitudes deviate from unit norm by more than 1e-3: |a|^2+|b|^2 = " +
                                  std::to_string(norm2));
    }
    const double inv = 1.0 / std::sqrt(norm2);
    alpha_ *= inv;
    beta_ *= inv;
}

complexd PureState::overlap(const PureState& other) const {
    return std::conj(alpha_) * other.alpha_ + std::conj(beta_) * other.beta_;
}

PureState PureState::orthogonal() const {
    return PureState(std::conj(beta_), -std::conj(alpha_));
}

double StokesVector::radius() const {
    return std::sqrt(s1 * s1 + s2 * s2 + s3 * s3);
}

DensityMatrix::DensityMatrix(const Mat2& entries) : rho_(entries) {
    for (const auto& z : rho_.m) {
        if (!finite(z)) throw invalid_density("density matrix entries must be finite");
    }
    if (rho_.max_abs_diff(rho_.adjoint()) > hermiticity_tol) {
        throw invalid_density("density matrix is not Hermitian");
    }
    if (std::abs(rho_.trace() - complexd(1.0)) > trace_tol) {
        throw invalid_density("density matrix trace is not 1");
    }
    // Closed-form spectrum (1 +/- r)/2; lambda_min >= psd_tol required.
    const double s1 = 2.0 * rho_(0, 1).real();
    const double s2 = -2.0 * rho_(0, 1).imag();
    const double s3 = rho_(0, 0).real() - rho_(1, 1).real();
    const double r = std::sqrt(s1 * s1 + s2 * s2 + s3 * s3);
    if ((1.0 - r) / 2.0 < psd_tol) {
        throw invalid_density("density matrix has a negative eigenvalue");
    }
}

double DensityMatrix::purity() const {
    return (rho_ * rho_).trace().real();
}

DensityMatrix density_from_pure(const PureState& state) {
    const complexd a = state.alpha();
    const complexd b = state.beta();
    Mat2 rho;
    rho(0, 0) = std::norm(a);
    rho(0, 1) = a * std::conj(b);
    rho(1, 0) = std::conj(rho(0, 1));
    rho(1, 1) = std::norm(b);
    return DensityMatrix(rho);
}

StokesVector to_stokes(const DensityMatrix& rho) {
    StokesVector s;
    s.s1 = 2.0 * rho(0, 1).real();
    s.s2 = -2.0 * rho(0, 1).imag();
    s.s3 = rho(0, 0).real() - rho(1, 1).real();
    return s;
}

DensityMatrix from_stokes(const StokesVector& s) {
    const double r = s.radius();
    StokesVector v = s;
    if (r > 1.0 + 1e-10) {
        throw bloch_violation("Stokes radius " + std::to_string(r) + " exceeds the Bloch ball");
    }
    if (r > 1.0) {  // round-off outside the sphere; clamp radially
        const double f = 1.0 / r;
        v.s1 *= f;
        v.s2 *= f;
        v.s3 *= f;
    }
    Mat2 rho;
    rho(0, 0) = 0.5 * (1.0 + v.s3);
    rho(1, 1) = 0.5 * (1.0 - v.s3);
    rho(0, 1) = 0.5 * complexd(v.s1, -v.s2);
    rho(1, 0) = std::conj(rho(0, 1));
    return DensityMatrix(rho);
}

Spectrum eigvals(const DensityMatrix& rho) {
    const double r = to_stokes(rho).radius();
    return Spectrum{(1.0 + r) / 2.0, (1.0 - r) / 2.0};
}

double fidelity(const DensityMatrix& rho_ideal, const DensityMatrix& rho_exp) {
    const double tr = (rho_ideal.matrix() * rho_exp.matrix()).trace().real();
    double d1 = rho_ideal.matrix().det().real();
    double d2 = rho_exp.matrix().det().real();
    if (d1 < 0.0) d1 = 0.0;  // round-off on nearly pure states
    if (d2 < 0.0) d2 = 0.0;
    double f = tr + 2.0 * std::sqrt(d1 * d2);
    if (f < 0.0) f = 0.0;
    if (f > 1.0) f = 1.0;
    return f;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 finalizer over the combined word
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

DensityMatrix random_state(std::uint64_t seed, RandomKind kind) {
    std::mt19937_64 rng(mix_seed(seed, 0));
    if (kind == RandomKind::pure) {
        std::normal_distribution<double> gauss(0.0, 1.0);
        complexd a(gauss(rng), gauss(rng));
        complexd b(gauss(rng), gauss(rng));
        double n = std::sqrt(std::norm(a) + std::norm(b));
        while (n < 1e-12) {  // essentially impossible, but keep it total
            a = complexd(gauss(rng), gauss(rng));
            b = complexd(gauss(rng), gauss(rng));
            n = std::sqrt(std::norm(a) + std::norm(b));
        }
        return density_from_pure(PureState(a / n, b / n));
    }
    // Uniform in the ball: isotropic direction, radius ~ u^(1/3).
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double u = unif(rng);
    const double cos_t = 2.0 * unif(rng) - 1.0;
    const double phi = 2.0 * M_PI * unif(rng);
    const double r = std::cbrt(u);
    const double sin_t = std::sqrt(std::max(0.0, 1.0 - cos_t * cos_t));
    StokesVector s;
    s.s1 = r * sin_t * std::cos(phi);
    s.s2 = r * sin_t * std::sin(phi);
    s.s3 = r * cos_t;
    return from_stokes(s);
}

}  // namespace duality
