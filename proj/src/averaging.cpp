#include "twirlsim/averaging.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace twirlsim {

namespace {

const std::array<Mat2, 4>& one_qubit_basis() {
  static const std::array<Mat2, 4> basis = [] {
    std::array<Mat2, 4> b;
    for (int a = 0; a < 4; ++a) b[a] = pauli(a) / std::sqrt(2.0);
    return b;
  }();
  return basis;
}

const std::array<Mat4, 16>& two_qubit_basis() {
  static const std::array<Mat4, 16> basis = [] {
    std::array<Mat4, 16> b;
    for (int a = 0; a < 4; ++a)
      for (int c = 0; c < 4; ++c) b[4 * a + c] = 0.5 * tensor(pauli(a), pauli(c));
    return b;
  }();
  return basis;
}

}  // namespace

// ---------------------------------------------------------------------------
// Superoperator

double Superoperator::trace_preservation_residual() const {
  double r = std::abs(m_(0, 0) - 1.0);
  for (int c = 1; c < m_.cols(); ++c) r = std::max(r, std::abs(m_(0, c)));
  return r;
}

double Superoperator::distance(const Superoperator& other) const {
  if (other.dim() != dim()) throw UsageError("superoperator dimensions differ");
  return (m_ - other.m_).cwiseAbs().maxCoeff();
}

Mat2 Superoperator::apply(const Mat2& op) const {
  if (mode_ != AveragingMode::local_1q) throw UsageError("two-qubit channel applied to 2x2 operator");
  const auto& basis = one_qubit_basis();
  Mat2 out = Mat2::Zero();
  for (int b = 0; b < 4; ++b) {
    const cd coeff = (basis[b] * op).trace();
    for (int a = 0; a < 4; ++a) out += m_(a, b) * coeff * basis[a];
  }
  return out;
}

Mat4 Superoperator::apply(const Mat4& op) const {
  if (mode_ != AveragingMode::bilateral_2q) throw UsageError("one-qubit channel applied to 4x4 operator");
  const auto& basis = two_qubit_basis();
  Eigen::Matrix<cd, 16, 1> coeff;
  for (int b = 0; b < 16; ++b) coeff[b] = (basis[b] * op).trace();
  const Eigen::Matrix<cd, 16, 1> image = m_.cast<cd>() * coeff;
  Mat4 out = Mat4::Zero();
  for (int a = 0; a < 16; ++a) out += image[a] * basis[a];
  return out;
}

Eigen::Matrix3d Superoperator::bloch_block() const {
  if (mode_ != AveragingMode::local_1q) throw UsageError("Bloch block needs a one-qubit channel");
  return m_.block(1, 1, 3, 3);
}

// ---------------------------------------------------------------------------
// Averages

Density2 average(const Density2& rho, const RotationSetSpec& spec) {
  const auto elements = realize(spec);
  return Density2::unchecked(kernels::conjugation_sum(elements, rho.matrix()), rho.kind());
}

Density4 average(const Density4& rho, const RotationSetSpec& spec) {
  const auto elements = realize(spec);
  return Density4::unchecked(kernels::bilateral_conjugation_sum(elements, rho.matrix()), rho.kind());
}

template <int Dim>
DensityMatrix<Dim> average(const DensityMatrix<Dim>& rho, const RotationSetSpec& spec,
                           AveragingMode mode) {
  const bool matches = (Dim == 2) == (mode == AveragingMode::local_1q);
  if (!matches) throw UsageError("matrix dimension does not match averaging mode");
  return average(rho, spec);
}

template Density2 average<2>(const Density2&, const RotationSetSpec&, AveragingMode);
template Density4 average<4>(const Density4&, const RotationSetSpec&, AveragingMode);

Mat4 average_operator(const Mat4& op, std::span<const WeightedUnitary> elements) {
  return kernels::bilateral_conjugation_sum(elements, op);
}

Superoperator superoperator(std::span<const WeightedUnitary> elements, AveragingMode mode) {
  if (mode == AveragingMode::local_1q) return Superoperator(kernels::ptm_sum(elements));
  return Superoperator(kernels::bilateral_ptm_sum(elements));
}

Superoperator superoperator(const RotationSetSpec& spec, AveragingMode mode) {
  const auto elements = realize(spec);
  return superoperator(elements, mode);
}

const Superoperator& exact_twirl_superoperator() {
  static const Superoperator twirl =
      superoperator(RotationSetSpec::make(SetVariant::bennett12), AveragingMode::bilateral_2q);
  return twirl;
}

namespace {

std::array<double, 3> singular_values(const Superoperator& local) {
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(local.bloch_block());
  const Eigen::Vector3d s = svd.singularValues();
  return {s[0], s[1], s[2]};
}

}  // namespace

std::array<double, 3> bloch_shrink(const RotationSetSpec& spec) {
  return singular_values(superoperator(spec, AveragingMode::local_1q));
}

// ---------------------------------------------------------------------------
// Classification

double default_tolerance(const RotationSetSpec& spec) {
  if (spec.is_discrete()) return 1e-12;
  if (spec.sampling.kind == SamplingKind::monte_carlo)
    return 3.0 / std::sqrt(static_cast<double>(spec.sampling.n));
  return 1e-3;
}

TwirlReport classify(const RotationSetSpec& spec) { return classify(spec, default_tolerance(spec)); }

TwirlReport classify(const RotationSetSpec& spec, double tolerance) {
  const auto elements = realize(spec);
  const Superoperator local = superoperator(elements, AveragingMode::local_1q);
  const Superoperator pair = superoperator(elements, AveragingMode::bilateral_2q);

  TwirlReport r;
  r.spec = spec.to_string();
  r.tolerance = tolerance;
  r.bloch_shrink_singular_values = singular_values(local);
  r.is_single_qubit_averager = r.bloch_shrink_singular_values[0] <= tolerance;
  r.residual_to_exact_twirl = pair.distance(exact_twirl_superoperator());
  r.is_full_twirl = r.residual_to_exact_twirl <= tolerance;

  for (const Mat4& b : two_qubit_basis()) {
    const Mat4 image = pair.apply(b);
    const BellDiagonal bell = bell_diagonal_populations(image);
    r.bell_diagonal_residual =
        std::max({r.bell_diagonal_residual, bell.max_off_diagonal,
                  std::abs(bell.phi_plus() - bell.phi_minus())});
    r.singlet_fidelity_drift =
        std::max(r.singlet_fidelity_drift, std::abs(singlet_fidelity(image) - singlet_fidelity(b)));
  }
  r.is_partial_twirl = !r.is_full_twirl && r.bell_diagonal_residual <= tolerance;
  return r;
}

std::string to_json(const TwirlReport& r) {
  nlohmann::ordered_json j;
  j["spec"] = r.spec;
  j["is_single_qubit_averager"] = r.is_single_qubit_averager;
  j["bloch_shrink_singular_values"] = r.bloch_shrink_singular_values;
  j["is_partial_twirl"] = r.is_partial_twirl;
  j["is_full_twirl"] = r.is_full_twirl;
  j["residual_to_exact_twirl"] = r.residual_to_exact_twirl;
  j["singlet_fidelity_drift"] = r.singlet_fidelity_drift;
  j["bell_diagonal_residual"] = r.bell_diagonal_residual;
  j["tolerance"] = r.tolerance;
  return j.dump(2);
}

std::string to_text(const TwirlReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << std::boolalpha;
  os << "spec=" << r.spec << "\n"
     << "is_single_qubit_averager=" << r.is_single_qubit_averager << "\n"
     << "bloch_shrink_singular_values=" << r.bloch_shrink_singular_values[0] << ","
     << r.bloch_shrink_singular_values[1] << "," << r.bloch_shrink_singular_values[2] << "\n"
     << "is_partial_twirl=" << r.is_partial_twirl << "\n"
     << "is_full_twirl=" << r.is_full_twirl << "\n"
     << "residual_to_exact_twirl=" << r.residual_to_exact_twirl << "\n"
     << "singlet_fidelity_drift=" << r.singlet_fidelity_drift << "\n"
     << "bell_diagonal_residual=" << r.bell_diagonal_residual << "\n"
     << "tolerance=" << r.tolerance << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------

Mat4 exact_twirl(const Mat4& rho, StateKind kind) { return werner_projection(rho, kind); }

Density4 exact_twirl(const Density4& rho) {
  return Density4::unchecked(exact_twirl(rho.matrix(), rho.kind()), rho.kind());
}

}  // namespace twirlsim
