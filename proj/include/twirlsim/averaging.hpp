#pragma once

// The averaging engine: applies a rotation set to one qubit (local) or to
// two qubits (bilateral, U (x) U), builds channel superoperators in the
// Pauli-transfer representation, and classifies sets as single-qubit
// averagers, partial twirls or full twirls.

#include <array>
#include <string>

#include "twirlsim/core.hpp"
#include "twirlsim/kernels.hpp"
#include "twirlsim/rotation_set.hpp"

namespace twirlsim {

enum class AveragingMode { local_1q, bilateral_2q };

/// Pauli-transfer matrix of a channel. For one qubit the basis is
/// sigma_a / sqrt(2) (4x4); for two qubits (sigma_a (x) sigma_b) / 2 with
/// index 4a + b (16x16). Column k is the image of basis operator k.
class Superoperator {
 public:
  explicit Superoperator(const Ptm1& m) : mode_(AveragingMode::local_1q), m_(m) {}
  explicit Superoperator(const Ptm2& m) : mode_(AveragingMode::bilateral_2q), m_(m) {}

  AveragingMode mode() const { return mode_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& matrix() const { return m_; }
  double operator()(int r, int c) const { return m_(r, c); }

  /// Largest deviation of the first row from (1, 0, ..., 0).
  double trace_preservation_residual() const;
  /// Entrywise max |a - b|. Throws UsageError on dimension mismatch.
  double distance(const Superoperator& other) const;

  /// Applies the channel to an operator (trace part included).
  Mat2 apply(const Mat2& op) const;
  Mat4 apply(const Mat4& op) const;

  /// The 3x3 block acting on the Bloch vector (local channels only).
  Eigen::Matrix3d bloch_block() const;

 private:
  AveragingMode mode_;
  Eigen::MatrixXd m_;
};

/// Local average (1/N) sum U rho U^dag, or the sampling-plan estimate of the
/// integral for continuous sets.
Density2 average(const Density2& rho, const RotationSetSpec& spec);
/// Bilateral average with U (x) U.
Density4 average(const Density4& rho, const RotationSetSpec& spec);
/// Mode-checked entry point; throws UsageError if Dim does not match mode.
template <int Dim>
DensityMatrix<Dim> average(const DensityMatrix<Dim>& rho, const RotationSetSpec& spec,
                           AveragingMode mode);

Mat4 average_operator(const Mat4& op, std::span<const WeightedUnitary> elements);

Superoperator superoperator(const RotationSetSpec& spec, AveragingMode mode);
Superoperator superoperator(std::span<const WeightedUnitary> elements, AveragingMode mode);

/// The exact two-qubit twirl (bennett12 bilateral), computed once.
const Superoperator& exact_twirl_superoperator();

/// Singular values of the Bloch block of the local channel, descending.
std::array<double, 3> bloch_shrink(const RotationSetSpec& spec);

struct TwirlReport {
  std::string spec;
  bool is_single_qubit_averager = false;
  std::array<double, 3> bloch_shrink_singular_values{};
  bool is_partial_twirl = false;
  bool is_full_twirl = false;
  double residual_to_exact_twirl = 0.0;
  double singlet_fidelity_drift = 0.0;
  /// Largest Bell-basis off-diagonal or |p(phi+) - p(phi-)| over the images
  /// of the 16 basis operators.
  double bell_diagonal_residual = 0.0;
  double tolerance = 0.0;
};

/// Tolerance by sampling plan: 1e-12 discrete, 1e-3 quadrature, three
/// standard errors (3/sqrt(n)) for Monte Carlo.
double default_tolerance(const RotationSetSpec& spec);

TwirlReport classify(const RotationSetSpec& spec);
TwirlReport classify(const RotationSetSpec& spec, double tolerance);

/// Flat JSON object with the report fields.
std::string to_json(const TwirlReport& report);
/// One `key=value` per line.
std::string to_text(const TwirlReport& report);

/// werner((4F - 1)/3) for states; (4F/3)(|psi-><psi-| - 1/4) for deviation
/// matrices.
Density4 exact_twirl(const Density4& rho);
Mat4 exact_twirl(const Mat4& rho, StateKind kind);

}  // namespace twirlsim
