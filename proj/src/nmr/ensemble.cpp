#include "twirlsim/nmr/ensemble.hpp"

#include <cmath>
#include <sstream>

#include "twirlsim/rotations.hpp"

namespace twirlsim::nmr {

double EnsembleState::weight_sum() const {
  double s = 0.0;
  for (const auto& m : members) s += m.weight;
  return s;
}

Mat4 EnsembleState::mean() const { return kernels::weighted_mean(members); }

EnsembleState ensemble_of(const Mat4& deviation) {
  EnsembleState s;
  s.members.push_back({1.0, deviation});
  return s;
}

EnsembleState thermal_state() {
  return ensemble_of(product_operator(ProductOp::Iz) + product_operator(ProductOp::Sz));
}

Mat4 pulse_unitary(PulseTarget target, double angle_rad, double phase_rad) {
  const Vec3 axis(std::cos(phase_rad), std::sin(phase_rad), 0.0);
  const Mat2 u = axis_angle_unitary({angle_rad, axis}).matrix();
  switch (target) {
    case PulseTarget::I:
      return tensor(u, Mat2::Identity());
    case PulseTarget::S:
      return tensor(Mat2::Identity(), u);
    case PulseTarget::both:
      break;
  }
  return tensor(u, u);
}

EnsembleState apply_pulse(EnsembleState state, PulseTarget target, double angle_rad,
                          double phase_rad) {
  kernels::conjugate_members(state.members, pulse_unitary(target, angle_rad, phase_rad));
  return state;
}

EnsembleState evolve(EnsembleState state, const SpinSystemParams& params, double t) {
  if (t < 0.0) throw DomainError("evolution time must be non-negative");
  if (t > 0.0) kernels::evolve_members(state.members, params.energies(), t);
  return state;
}

bool refocuses(double t, const SpinSystemParams& params) {
  const double delta = params.delta_hz();
  if (delta == 0.0) return true;
  const double period = 1.0 / std::abs(delta);
  return std::abs(t - std::round(t / period) * period) <= 1e-9;
}

EnsembleState apply_gradient(EnsembleState state, const SpinSystemParams& params, double t,
                             int phase_count) {
  if (t < 0.0) throw DomainError("gradient length must be non-negative");
  if (phase_count < 1) throw DomainError("gradient needs at least one phase");
  if (state.members.size() * static_cast<std::size_t>(phase_count) > kMaxMembers)
    throw DomainError("ensemble would exceed " + std::to_string(kMaxMembers) +
                      " members; use fewer gradient phases");

  std::vector<Mat4> rotations(phase_count);
  for (int k = 0; k < phase_count; ++k)
    rotations[k] = bilateral(rotation_z(2.0 * kPi * k / phase_count));
  state.members = kernels::split_members(state.members, rotations);
  state.gradient_phase_count = phase_count;

  if (!refocuses(t, params)) {
    state.refocus_warning = true;
    std::ostringstream os;
    os.precision(6);
    os << "gradient length " << t << " s is not a multiple of 1/delta = " << 1.0 / params.delta_hz()
       << " s; zero-quantum terms will not refocus";
    state.warnings.push_back(os.str());
  }
  return evolve(std::move(state), params, t);
}

PulseSequence preparation_sequence(double tau) {
  return PulseSequence{{Pulse{PulseTarget::I, 60.0, 90.0}, Delay{tau}, Pulse{PulseTarget::S, 30.0, 90.0}}};
}

EnsembleState prepare_A(const SpinSystemParams& params, double tau) {
  if (tau < 0.0) throw DomainError("tau must be non-negative");
  return run_sequence(preparation_sequence(tau), thermal_state(), params);
}

double singlet_fraction_formula(double tau, const SpinSystemParams& params) {
  return std::sqrt(3.0) / 8.0 * std::sin(kPi * params.j_hz * tau) *
         std::sin(2.0 * kPi * params.nu_i_hz * tau);
}

PulseSequence detection_sequence(const SpinSystemParams& params) {
  return PulseSequence{{Pulse{PulseTarget::both, 90.0, 45.0}, Delay{1.0 / (4.0 * params.delta_hz())},
                        Pulse{PulseTarget::both, 90.0, 180.0}}};
}

EnsembleState detect_sequence(EnsembleState state, const SpinSystemParams& params) {
  return run_sequence(detection_sequence(params), std::move(state), params);
}

EnsembleState run_sequence(const PulseSequence& seq, EnsembleState state,
                           const SpinSystemParams& params, int phase_count) {
  for (const PulseEvent& event : seq.events) {
    if (const auto* p = std::get_if<Pulse>(&event)) {
      state = apply_pulse(std::move(state), p->target, degrees_to_radians(p->angle_deg),
                          degrees_to_radians(p->phase_deg));
    } else if (const auto* d = std::get_if<Delay>(&event)) {
      state = evolve(std::move(state), params, d->seconds);
    } else if (const auto* g = std::get_if<Gradient>(&event)) {
      state = apply_gradient(std::move(state), params, g->seconds, phase_count);
    }
  }
  return state;
}

}  // namespace twirlsim::nmr
