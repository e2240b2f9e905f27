#include "twirlsim/core.hpp"

#include <algorithm>
#include <cmath>

namespace twirlsim {

namespace {

constexpr cd kI{0.0, 1.0};

template <int Dim>
double hermitian_residual_of(const Eigen::Matrix<cd, Dim, Dim>& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

constexpr std::array<std::string_view, kProductOpCount> kProductOpNames = {
    "Ix",    "Iy",    "Iz",    "Sx",    "Sy",    "Sz",    "2IxSx", "2IxSy",
    "2IxSz", "2IySx", "2IySy", "2IySz", "2IzSx", "2IzSy", "2IzSz",
};

// Pauli index pair (a, b) of each product operator in sigma_a (x) sigma_b.
std::pair<int, int> pauli_pair(ProductOp op) {
  const int k = static_cast<int>(op);
  if (k < 3) return {k + 1, 0};
  if (k < 6) return {0, k - 2};
  const int j = k - 6;
  return {j / 3 + 1, j % 3 + 1};
}

}  // namespace

Mat2 pauli(PauliAxis axis) {
  Mat2 m;
  switch (axis) {
    case PauliAxis::identity:
      m << 1, 0, 0, 1;
      break;
    case PauliAxis::x:
      m << 0, 1, 1, 0;
      break;
    case PauliAxis::y:
      m << 0, -kI, kI, 0;
      break;
    case PauliAxis::z:
      m << 1, 0, 0, -1;
      break;
  }
  return m;
}

Mat2 pauli(int index) {
  if (index < 0 || index > 3) throw DomainError("pauli index must be 0..3");
  return pauli(static_cast<PauliAxis>(index));
}

Mat4 tensor(const Mat2& a, const Mat2& b) {
  Mat4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

// ---------------------------------------------------------------------------
// DensityMatrix

template <int Dim>
DensityMatrix<Dim>::DensityMatrix(const Matrix& m, StateKind kind) : m_(m), kind_(kind) {
  if (!m_.allFinite()) throw DomainError("density matrix has non-finite entries");
  if (hermitian_residual() >= kHermitianTol)
    throw DomainError("density matrix is not Hermitian");
  if (trace_residual() >= kTraceTol)
    throw DomainError(kind == StateKind::state ? "state must have unit trace"
                                               : "deviation matrix must be traceless");
  if (kind == StateKind::state && min_eigenvalue() < -kEigenTol)
    throw DomainError("state has a negative eigenvalue");
}

template <int Dim>
double DensityMatrix<Dim>::hermitian_residual() const {
  return hermitian_residual_of<Dim>(m_);
}

template <int Dim>
double DensityMatrix<Dim>::trace_residual() const {
  const double target = kind_ == StateKind::state ? 1.0 : 0.0;
  return std::abs(m_.trace() - cd(target));
}

template <int Dim>
double DensityMatrix<Dim>::min_eigenvalue() const {
  const Matrix h = 0.5 * (m_ + m_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

template class DensityMatrix<2>;
template class DensityMatrix<4>;

// ---------------------------------------------------------------------------
// Bell states

Vec4 bell_state(BellState kind) {
  const double s = 1.0 / std::sqrt(2.0);
  Vec4 v = Vec4::Zero();
  switch (kind) {
    case BellState::psi_minus:
      v << 0, s, -s, 0;
      break;
    case BellState::psi_plus:
      v << 0, s, s, 0;
      break;
    case BellState::phi_minus:
      v << s, 0, 0, -s;
      break;
    case BellState::phi_plus:
      v << s, 0, 0, s;
      break;
  }
  return v;
}

Mat4 bell_basis() {
  Mat4 b;
  b.col(0) = bell_state(BellState::psi_minus);
  b.col(1) = bell_state(BellState::psi_plus);
  b.col(2) = bell_state(BellState::phi_minus);
  b.col(3) = bell_state(BellState::phi_plus);
  return b;
}

Mat4 projector(const Vec4& v) { return v * v.adjoint(); }
Mat2 projector(const Vec2& v) { return v * v.adjoint(); }

// ---------------------------------------------------------------------------
// Bloch vectors

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

BlochVector bloch_vector(const Density2& rho) {
  const Mat2& m = rho.matrix();
  return {(m * pauli(PauliAxis::x)).trace().real(), (m * pauli(PauliAxis::y)).trace().real(),
          (m * pauli(PauliAxis::z)).trace().real()};
}

Density2 from_bloch(const BlochVector& r) {
  if (r.norm() > 1.0 + 1e-10) throw DomainError("Bloch vector longer than one");
  const Mat2 m = 0.5 * (pauli(PauliAxis::identity) + r.x * pauli(PauliAxis::x) +
                        r.y * pauli(PauliAxis::y) + r.z * pauli(PauliAxis::z));
  return Density2(m, StateKind::state);
}

// ---------------------------------------------------------------------------
// Werner states

WernerParams WernerParams::make(double epsilon) {
  if (!(epsilon >= -1.0 / 3.0 - 1e-12 && epsilon <= 1.0 + 1e-12))
    throw DomainError("Werner epsilon must lie in [-1/3, 1], got " + std::to_string(epsilon));
  return WernerParams{epsilon};
}

Density4 werner(WernerParams params) {
  const double eps = WernerParams::make(params.epsilon).epsilon;
  const Mat4 m = eps * projector(bell_state(BellState::psi_minus)) +
                 (1.0 - eps) * 0.25 * Mat4::Identity();
  return Density4(m, StateKind::state);
}

double singlet_fidelity(const Mat4& rho) {
  const Vec4 s = bell_state(BellState::psi_minus);
  return (s.adjoint() * rho * s)(0, 0).real();
}

double singlet_fidelity(const Density4& rho) { return singlet_fidelity(rho.matrix()); }

BellDiagonal bell_diagonal_populations(const Mat4& rho) {
  const Mat4 b = bell_basis();
  const Mat4 in_bell = b.adjoint() * rho * b;
  BellDiagonal out;
  for (int i = 0; i < 4; ++i) {
    out.populations[i] = in_bell(i, i).real();
    for (int j = 0; j < 4; ++j)
      if (i != j) out.max_off_diagonal = std::max(out.max_off_diagonal, std::abs(in_bell(i, j)));
  }
  return out;
}

BellDiagonal bell_diagonal_populations(const Density4& rho) {
  return bell_diagonal_populations(rho.matrix());
}

// ---------------------------------------------------------------------------
// Product operators

std::string_view product_op_name(ProductOp op) { return kProductOpNames[static_cast<int>(op)]; }

std::optional<ProductOp> product_op_from_name(std::string_view name) {
  for (int k = 0; k < kProductOpCount; ++k)
    if (kProductOpNames[k] == name) return static_cast<ProductOp>(k);
  return std::nullopt;
}

Mat4 product_operator(ProductOp op) {
  const auto [a, b] = pauli_pair(op);
  return 0.5 * tensor(pauli(a), pauli(b));
}

ProductCoefficients product_operator_decomposition(const Mat4& rho) {
  ProductCoefficients c{};
  for (int k = 0; k < kProductOpCount; ++k)
    c[k] = (product_operator(static_cast<ProductOp>(k)) * rho).trace().real();
  return c;
}

ProductCoefficients product_operator_decomposition(const Density4& rho) {
  if (rho.kind() != StateKind::deviation)
    throw DomainError("product operator decomposition expects a deviation matrix");
  return product_operator_decomposition(rho.matrix());
}

Mat4 product_operator_sum(const ProductCoefficients& coeffs) {
  Mat4 m = Mat4::Zero();
  for (int k = 0; k < kProductOpCount; ++k)
    m += coeffs[k] * product_operator(static_cast<ProductOp>(k));
  return m;
}

// ---------------------------------------------------------------------------
// Metrics

namespace {

template <int Dim>
double trace_norm_half(const Eigen::Matrix<cd, Dim, Dim>& d) {
  const Eigen::Matrix<cd, Dim, Dim> h = 0.5 * (d + d.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<cd, Dim, Dim>> es(h, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

template <int Dim>
Eigen::Matrix<cd, Dim, Dim> psd_sqrt(const Eigen::Matrix<cd, Dim, Dim>& m) {
  using M = Eigen::Matrix<cd, Dim, Dim>;
  const M h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<M> es(h);
  const auto roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * roots.template cast<cd>().asDiagonal() *
         es.eigenvectors().adjoint();
}

}  // namespace

double trace_distance(const Mat2& a, const Mat2& b) { return trace_norm_half<2>(a - b); }
double trace_distance(const Mat4& a, const Mat4& b) { return trace_norm_half<4>(a - b); }

template <int Dim>
double fidelity(const DensityMatrix<Dim>& rho, const DensityMatrix<Dim>& sigma) {
  if (rho.kind() != StateKind::state || sigma.kind() != StateKind::state)
    throw DomainError("fidelity is defined for states only");
  using M = Eigen::Matrix<cd, Dim, Dim>;
  const M root = psd_sqrt<Dim>(rho.matrix());
  const M inner = root * sigma.matrix() * root;
  const M inner_root = psd_sqrt<Dim>(inner);
  const double t = inner_root.trace().real();
  return t * t;
}

template double fidelity<2>(const Density2&, const Density2&);
template double fidelity<4>(const Density4&, const Density4&);

double max_abs_diff(const Mat4& a, const Mat4& b) { return (a - b).cwiseAbs().maxCoeff(); }

Mat4 werner_projection(const Mat4& rho, StateKind kind) {
  const double f = singlet_fidelity(rho);
  const Mat4 p = projector(bell_state(BellState::psi_minus));
  if (kind == StateKind::state) {
    const double eps = (4.0 * f - 1.0) / 3.0;
    return eps * p + (1.0 - eps) * 0.25 * Mat4::Identity();
  }
  return (4.0 * f / 3.0) * (p - 0.25 * Mat4::Identity());
}

std::optional<WernerParams> is_werner(const Density4& rho, double tol) {
  const double f = singlet_fidelity(rho);
  const double eps = rho.kind() == StateKind::state ? (4.0 * f - 1.0) / 3.0 : 4.0 * f / 3.0;
  if (max_abs_diff(rho.matrix(), werner_projection(rho.matrix(), rho.kind())) > tol)
    return std::nullopt;
  return WernerParams{eps};
}

// ---------------------------------------------------------------------------
// Random matrices

template <int Dim>
DensityMatrix<Dim> random_state(std::mt19937_64& rng) {
  using M = Eigen::Matrix<cd, Dim, Dim>;
  std::normal_distribution<double> normal(0.0, 1.0);
  M g;
  for (int i = 0; i < Dim; ++i)
    for (int j = 0; j < Dim; ++j) g(i, j) = cd(normal(rng), normal(rng));
  M rho = g * g.adjoint();
  rho /= rho.trace();
  rho = 0.5 * (rho + rho.adjoint());
  return DensityMatrix<Dim>(rho, StateKind::state);
}

template Density2 random_state<2>(std::mt19937_64&);
template Density4 random_state<4>(std::mt19937_64&);

Mat4 random_deviation(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  ProductCoefficients c{};
  for (double& v : c) v = uni(rng);
  return product_operator_sum(c);
}

}  // namespace twirlsim
