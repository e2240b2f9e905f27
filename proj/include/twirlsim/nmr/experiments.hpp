#pragma once

// The two desk-scale NMR experiments: a stepwise run through the three
// crush-gradient stages of the twirl, and a tau sweep of the prepared state.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "twirlsim/nmr/spectrum.hpp"

namespace twirlsim::nmr {

struct AcquisitionOptions {
  std::size_t points = 4096;
  double dwell = 0.0;             // 0 selects 1/(4 delta)
  double line_broadening_hz = 0;  // plots use 1 Hz, integrals 0
  double window_hz = 0.0;         // peak window; 0 selects J

  double dwell_for(const SpinSystemParams& p) const { return dwell > 0 ? dwell : 1.0 / (4.0 * p.delta_hz()); }
  double window_for(const SpinSystemParams& p) const { return window_hz > 0 ? window_hz : p.j_hz; }
};

struct TwirlOptions {
  int phase_count = kDefaultPhaseCount;
  double grad_k = 2.0;  // gradient length in units of 1/delta

  double grad_seconds(const SpinSystemParams& p) const { return grad_k / p.delta_hz(); }
};

/// Stage 0..3 twirl sequence (without preparation or acquisition):
/// stage 1 = G, stage 2 = G 90x G, stage 3 = G 90x G magic_x G.
PulseSequence twirl_stage_sequence(int stage, double grad_seconds);

struct StageResult {
  int stage = 0;
  Mat4 state = Mat4::Zero();  // ensemble mean before detection
  Fid direct_fid;
  Fid detected_fid;
  Spectrum direct;
  Spectrum detected;
  double direct_power = 0.0;  // FID power of direct acquisition
  BellDiagonal bell;
  double singlet_coefficient = 0.0;
  double werner_residual = 0.0;  // max entry distance to the Werner projection
  DoubletIntegrals detected_doublets;
};

struct Experiment1Options {
  double tau = 0.0693;
  TwirlOptions twirl;
  AcquisitionOptions acquisition;
};

struct Experiment1Result {
  SpinSystemParams params;
  Experiment1Options options;
  Mat4 prepared = Mat4::Zero();
  std::array<StageResult, 4> stages;
  bool refocus_warning = false;

  /// Stage-1 direct power over stage-0 direct power.
  double stage1_relative_power() const;
};

Experiment1Result run_experiment1(const SpinSystemParams& params, const Experiment1Options& options);
std::string to_json(const Experiment1Result& result);

struct SinusoidFit {
  double amplitude = 0.0;
  double frequency_hz = 0.0;
  double phase = 0.0;
  double offset = 0.0;
  double period_steps = 0.0;
  double rms_residual = 0.0;
};

/// Least-squares fit of A sin(2 pi f tau + phi0) + c. The frequency is
/// searched over periods of 2.5 .. n steps and refined with Brent's method.
SinusoidFit fit_sinusoid(const std::vector<double>& tau, const std::vector<double>& values, double dtau);

struct Experiment2Options {
  double tau_center = 0.0693;
  double dtau = 0.0;  // 0 selects 1/(10 nu_I)
  int steps = 30;
  TwirlOptions twirl;
  AcquisitionOptions acquisition;

  double dtau_for(const SpinSystemParams& p) const { return dtau > 0 ? dtau : 1.0 / (10.0 * p.nu_i_hz); }
};

struct Experiment2Step {
  int index = 0;
  double tau = 0.0;
  double intensity = 0.0;      // upper line of the S doublet after detection
  double formula = 0.0;        // singlet_fraction_formula(tau)
  double singlet_coefficient = 0.0;  // of the prepared state
};

struct Experiment2Result {
  SpinSystemParams params;
  Experiment2Options options;
  std::vector<Experiment2Step> steps;
  SinusoidFit fit;
  double scale = 0.0;  // least-squares intensity / formula
  double max_relative_error = 0.0;
  bool refocus_warning = false;
};

/// tau_k = tau_center + (k - (steps - 1)/2) dtau. Throws DomainError for
/// steps < 20.
Experiment2Result run_experiment2(const SpinSystemParams& params, const Experiment2Options& options);
std::string to_json(const Experiment2Result& result);

}  // namespace twirlsim::nmr
