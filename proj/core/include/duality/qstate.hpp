#ifndef DUALITY_QSTATE_HPP
#define DUALITY_QSTATE_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace duality {

using complexd = std::complex<double>;

// Thrown when a pure-state amplitude pair deviates from unit norm by more
// than the ingest tolerance (1e-3, matching 4-decimal rounded inputs).
struct normalization_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when a Stokes vector lies outside the Bloch ball beyond tolerance.
struct bloch_violation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when a 2x2 matrix fails the density-matrix invariants
// (Hermiticity, unit trace, positive semidefiniteness).
struct invalid_density : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Dense 2x2 complex matrix, row-major. Small enough that everything is
// closed-form; no general linear-algebra machinery needed.
struct Mat2 {
    std::array<complexd, 4> m{};  // m[0]=a00, m[1]=a01, m[2]=a10, m[3]=a11

    complexd& operator()(int r, int c) { return m[2 * r + c]; }
    const complexd& operator()(int r, int c) const { return m[2 * r + c]; }

    static Mat2 identity();
    static Mat2 zero();

    Mat2 adjoint() const;
    complexd trace() const { return m[0] + m[3]; }
    complexd det() const { return m[0] * m[3] - m[1] * m[2]; }

    Mat2 operator*(const Mat2& o) const;
    Mat2 operator+(const Mat2& o) const;
    Mat2 operator-(const Mat2& o) const;
    Mat2 operator*(complexd s) const;

    // max |a_ij - b_ij|
    double max_abs_diff(const Mat2& o) const;
};

Mat2 pauli(int k);  // k in {0,1,2,3}; sigma_0 = I

// Normalized single-qubit amplitudes over {|h>, |v>}. Input is accepted if
// |alpha|^2 + |beta|^2 is within 1e-3 of 1, then renormalized exactly.
class PureState {
  public:
    PureState(complexd alpha, complexd beta);

    complexd alpha() const { return alpha_; }
    complexd beta() const { return beta_; }

    // <this|other>
    complexd overlap(const PureState& other) const;

    // Orthogonal companion (beta*, -alpha*), normalized.
    PureState orthogonal() const;

    static constexpr double ingest_tolerance = 1e-3;

  private:
    complexd alpha_, beta_;
};

// Bloch/Stokes components of a qubit state; s0 is identically 1.
struct StokesVector {
    double s1 = 0.0;
    double s2 = 0.0;
    double s3 = 0.0;

    double radius() const;
    static constexpr double s0 = 1.0;
};

// 2x2 Hermitian, unit-trace, PSD operator. Validated on construction.
class DensityMatrix {
  public:
    explicit DensityMatrix(const Mat2& entries);

    const Mat2& matrix() const { return rho_; }
    complexd operator()(int r, int c) const { return rho_(r, c); }

    double purity() const;  // Tr(rho^2)

    static constexpr double hermiticity_tol = 1e-12;
    static constexpr double trace_tol = 1e-12;
    static constexpr double psd_tol = -1e-10;

  private:
    Mat2 rho_;
};

// rho = |phi><phi| after exact renormalization.
DensityMatrix density_from_pure(const PureState& state);

// S_k = Tr(rho sigma_k): s1 = 2 Re rho01, s2 = -2 Im rho01, s3 = rho00 - rho11.
StokesVector to_stokes(const DensityMatrix& rho);

// rho = (I + s1 sigma1 + s2 sigma2 + s3 sigma3) / 2. Radii in (1, 1+1e-6]
// are clamped onto the sphere; larger radii raise bloch_violation.
DensityMatrix from_stokes(const StokesVector& s);

struct Spectrum {
    double lambda_max;
    double lambda_min;
};

// Closed form (1 +/- r) / 2.
Spectrum eigvals(const DensityMatrix& rho);

// Uhlmann fidelity; for qubits Tr(rho sigma) + 2 sqrt(det rho * det sigma).
double fidelity(const DensityMatrix& rho_ideal, const DensityMatrix& rho_exp);

enum class RandomKind {
    pure,       // Haar-uniform on the Bloch sphere
    bloch_ball  // uniform in the Bloch ball (r^3 law)
};

DensityMatrix random_state(std::uint64_t seed, RandomKind kind);

// Deterministic stream splitting for independent substreams.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace duality

#endif
