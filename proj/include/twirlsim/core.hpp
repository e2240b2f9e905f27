#pragma once

// One- and two-qubit linear algebra, canonical states, and state metrics.
//
// Basis ordering is |00>,|01>,|10>,|11> with qubit I leftmost, so
// tensor(a, b) puts a's indices outermost.

#include <array>
#include <complex>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace twirlsim {

using cd = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Vec2 = Eigen::Vector2cd;
using Vec4 = Eigen::Vector4cd;

inline constexpr double kPi = 3.14159265358979323846;

/// Thrown when a value violates a documented invariant (bad epsilon,
/// non-Hermitian matrix, non-unit axis, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class PauliAxis { identity, x, y, z };

Mat2 pauli(PauliAxis axis);
/// Pauli by index 0..3 = identity, x, y, z.
Mat2 pauli(int index);

Mat4 tensor(const Mat2& a, const Mat2& b);

enum class StateKind { state, deviation };

/// Hermitian matrix interpreted either as a physical state (trace 1,
/// positive semidefinite) or an NMR deviation matrix (trace 0).
template <int Dim>
class DensityMatrix {
 public:
  static_assert(Dim == 2 || Dim == 4);
  using Matrix = Eigen::Matrix<cd, Dim, Dim>;

  static constexpr double kHermitianTol = 1e-12;
  static constexpr double kTraceTol = 1e-12;
  static constexpr double kEigenTol = 1e-10;

  DensityMatrix(const Matrix& m, StateKind kind);

  /// Skips validation. For kernels that already preserve the invariants.
  static DensityMatrix unchecked(const Matrix& m, StateKind kind) {
    DensityMatrix d;
    d.m_ = m;
    d.kind_ = kind;
    return d;
  }

  const Matrix& matrix() const { return m_; }
  StateKind kind() const { return kind_; }
  cd operator()(int r, int c) const { return m_(r, c); }

  /// Hermiticity, trace and (for states) eigenvalue residuals.
  double hermitian_residual() const;
  double trace_residual() const;
  double min_eigenvalue() const;

 private:
  DensityMatrix() = default;
  Matrix m_ = Matrix::Zero();
  StateKind kind_ = StateKind::state;
};

using Density2 = DensityMatrix<2>;
using Density4 = DensityMatrix<4>;

enum class BellState { psi_minus, psi_plus, phi_minus, phi_plus };

Vec4 bell_state(BellState kind);
/// Columns are psi-, psi+, phi-, phi+.
Mat4 bell_basis();
Mat4 projector(const Vec4& v);
Mat2 projector(const Vec2& v);

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double norm() const;
};

BlochVector bloch_vector(const Density2& rho);
Density2 from_bloch(const BlochVector& r);

struct WernerParams {
  double epsilon = 0.0;
  /// Throws DomainError unless epsilon lies in [-1/3, 1].
  static WernerParams make(double epsilon);
};

Density4 werner(WernerParams params);

/// <psi-| rho |psi->. For deviation matrices this is the signed singlet
/// coefficient and may be negative.
double singlet_fidelity(const Mat4& rho);
double singlet_fidelity(const Density4& rho);

struct BellDiagonal {
  // psi-, psi+, phi-, phi+
  std::array<double, 4> populations{};
  double max_off_diagonal = 0.0;

  double psi_minus() const { return populations[0]; }
  double psi_plus() const { return populations[1]; }
  double phi_minus() const { return populations[2]; }
  double phi_plus() const { return populations[3]; }
};

BellDiagonal bell_diagonal_populations(const Mat4& rho);
BellDiagonal bell_diagonal_populations(const Density4& rho);

// Product operators. With B = (sigma_a (x) sigma_b) / 2 the orthonormal
// Pauli basis coincides with the NMR operators: I_a = sigma_a/2 (x) 1 and
// 2 I_a S_b = (sigma_a (x) sigma_b)/2, so Tr(B_j B_k) = delta_jk and the
// usual Iz + Sz thermal deviation has coefficients (1, 1).
enum class ProductOp {
  Ix, Iy, Iz, Sx, Sy, Sz,
  IxSx, IxSy, IxSz, IySx, IySy, IySz, IzSx, IzSy, IzSz,
};
inline constexpr int kProductOpCount = 15;

using ProductCoefficients = std::array<double, kProductOpCount>;

std::string_view product_op_name(ProductOp op);
std::optional<ProductOp> product_op_from_name(std::string_view name);
Mat4 product_operator(ProductOp op);

inline double coefficient(const ProductCoefficients& c, ProductOp op) {
  return c[static_cast<int>(op)];
}

/// Coefficients of the traceless part of rho. Throws DomainError for a
/// kind=state input.
ProductCoefficients product_operator_decomposition(const Density4& rho);
/// Same expansion on a raw matrix (its trace part is ignored).
ProductCoefficients product_operator_decomposition(const Mat4& rho);
Mat4 product_operator_sum(const ProductCoefficients& coeffs);

double trace_distance(const Mat2& a, const Mat2& b);
double trace_distance(const Mat4& a, const Mat4& b);
template <int Dim>
double trace_distance(const DensityMatrix<Dim>& a, const DensityMatrix<Dim>& b) {
  return trace_distance(a.matrix(), b.matrix());
}

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2; reduces to
/// <psi|sigma|psi> when rho is pure. Both inputs must be states.
template <int Dim>
double fidelity(const DensityMatrix<Dim>& rho, const DensityMatrix<Dim>& sigma);

/// Largest absolute entry of a - b.
double max_abs_diff(const Mat4& a, const Mat4& b);

/// The Werner-form part of rho: for states werner((4F-1)/3), for deviation
/// matrices (4F/3)(|psi-><psi-| - 1/4).
Mat4 werner_projection(const Mat4& rho, StateKind kind);

/// epsilon* if rho is within tol (max entry) of its Werner projection. For
/// deviation matrices epsilon* = 4F/3 is an amplitude, not bounded to
/// [-1/3, 1].
std::optional<WernerParams> is_werner(const Density4& rho, double tol);

/// Haar-like random mixed state from a Ginibre matrix.
template <int Dim>
DensityMatrix<Dim> random_state(std::mt19937_64& rng);

/// Random Hermitian traceless matrix with entries of order one.
Mat4 random_deviation(std::mt19937_64& rng);

}  // namespace twirlsim
