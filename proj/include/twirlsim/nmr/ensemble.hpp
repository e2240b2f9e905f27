#pragma once

// Spatial ensembles of two-spin deviation matrices. Pulses act on every
// member identically; a crush gradient splits each member across N_g
// positions that see bilateral z rotations by 2 pi k / N_g (homonuclear
// spins share one gyromagnetic ratio), then evolves for the gradient length.

#include <optional>
#include <string>
#include <vector>

#include "twirlsim/core.hpp"
#include "twirlsim/kernels.hpp"
#include "twirlsim/nmr/pulse_program.hpp"
#include "twirlsim/nmr/spin_system.hpp"

namespace twirlsim::nmr {

inline constexpr int kDefaultPhaseCount = 16;
inline constexpr std::size_t kMaxMembers = std::size_t{1} << 22;

struct EnsembleState {
  std::vector<EnsembleMember> members;
  int gradient_phase_count = 1;
  /// Set when a gradient length was not a multiple of 1/delta.
  bool refocus_warning = false;
  std::vector<std::string> warnings;

  std::size_t size() const { return members.size(); }
  double weight_sum() const;
  /// Weighted sum of the members in fixed order.
  Mat4 mean() const;
  Density4 mean_density() const { return Density4::unchecked(mean(), StateKind::deviation); }
};

/// Single member holding `deviation`.
EnsembleState ensemble_of(const Mat4& deviation);
/// Iz + Sz
EnsembleState thermal_state();

/// exp(-i angle (cos(phase) X + sin(phase) Y)/2) on the targeted spin(s).
Mat4 pulse_unitary(PulseTarget target, double angle_rad, double phase_rad);

EnsembleState apply_pulse(EnsembleState state, PulseTarget target, double angle_rad,
                          double phase_rad);
/// Free evolution under the weak-coupling Hamiltonian. Throws DomainError
/// for t < 0.
EnsembleState evolve(EnsembleState state, const SpinSystemParams& params, double t);

/// True when t is an integer multiple of 1/delta to within 1e-9 s.
bool refocuses(double t, const SpinSystemParams& params);

/// Crush (split over phase_count bilateral z phases) followed by evolution
/// for t. Flags a warning when t does not refocus the difference frequency.
EnsembleState apply_gradient(EnsembleState state, const SpinSystemParams& params, double t,
                             int phase_count = kDefaultPhaseCount);

/// 60 I_y, delay tau, 30 S_y applied to the thermal state.
PulseSequence preparation_sequence(double tau);
EnsembleState prepare_A(const SpinSystemParams& params, double tau);

/// (sqrt 3 / 8) sin(pi J tau) sin(2 pi nu_I tau)
double singlet_fraction_formula(double tau, const SpinSystemParams& params);

/// Hard 90 at phase 45, delay 1/(4 delta), hard 90 at phase 180.
PulseSequence detection_sequence(const SpinSystemParams& params);
EnsembleState detect_sequence(EnsembleState state, const SpinSystemParams& params);

/// Runs the events in order; acquisition events are skipped here (see
/// spectrum.hpp).
EnsembleState run_sequence(const PulseSequence& seq, EnsembleState state,
                           const SpinSystemParams& params, int phase_count = kDefaultPhaseCount);

}  // namespace twirlsim::nmr
