#include "twirlsim/nmr/experiments.hpp"

#include <boost/math/tools/minima.hpp>

#include <cmath>

#include "json.hpp"
#include "twirlsim/rotations.hpp"

namespace twirlsim::nmr {

namespace {

nlohmann::ordered_json bell_json(const BellDiagonal& b) {
  return {{"psi_minus", b.psi_minus()},
          {"psi_plus", b.psi_plus()},
          {"phi_minus", b.phi_minus()},
          {"phi_plus", b.phi_plus()},
          {"max_off_diagonal", b.max_off_diagonal}};
}

nlohmann::ordered_json doublet_json(const DoubletIntegrals& d) {
  return {{"i_upper", d.i_upper},         {"i_lower", d.i_lower},
          {"s_upper", d.s_upper},         {"s_lower", d.s_lower},
          {"i_antiphase", d.i_antiphase()}, {"s_antiphase", d.s_antiphase()}};
}

nlohmann::ordered_json params_json(const SpinSystemParams& p) {
  return {{"nu_i_hz", p.nu_i_hz}, {"nu_s_hz", p.nu_s_hz}, {"j_hz", p.j_hz}, {"delta_hz", p.delta_hz()}};
}

nlohmann::ordered_json decomposition_json(const Mat4& m) {
  nlohmann::ordered_json j;
  const auto c = product_operator_decomposition(m);
  for (int k = 0; k < kProductOpCount; ++k) j[std::string(product_op_name(static_cast<ProductOp>(k)))] = c[k];
  return j;
}

struct LinearFit {
  Eigen::Vector3d coeffs;  // sin, cos, offset
  double rss = 0.0;
};

LinearFit fit_at(double f, const std::vector<double>& tau, const std::vector<double>& values) {
  const Eigen::Index n = static_cast<Eigen::Index>(tau.size());
  Eigen::MatrixXd a(n, 3);
  Eigen::VectorXd y(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    a(k, 0) = std::sin(2.0 * kPi * f * tau[k]);
    a(k, 1) = std::cos(2.0 * kPi * f * tau[k]);
    a(k, 2) = 1.0;
    y[k] = values[k];
  }
  LinearFit out;
  out.coeffs = a.colPivHouseholderQr().solve(y);
  out.rss = (a * out.coeffs - y).squaredNorm();
  return out;
}

}  // namespace

PulseSequence twirl_stage_sequence(int stage, double grad_seconds) {
  if (stage < 0 || stage > 3) throw DomainError("twirl stage must be 0..3");
  PulseSequence seq;
  if (stage >= 1) seq.events.push_back(Gradient{grad_seconds});
  if (stage >= 2) {
    seq.events.push_back(Pulse{PulseTarget::both, 90.0, 0.0});
    seq.events.push_back(Gradient{grad_seconds});
  }
  if (stage >= 3) {
    seq.events.push_back(Pulse{PulseTarget::both, radians_to_degrees(magic_angle()), 0.0});
    seq.events.push_back(Gradient{grad_seconds});
  }
  return seq;
}

double Experiment1Result::stage1_relative_power() const {
  return stages[0].direct_power > 0 ? stages[1].direct_power / stages[0].direct_power : 0.0;
}

Experiment1Result run_experiment1(const SpinSystemParams& params, const Experiment1Options& options) {
  params.validate();
  Experiment1Result result;
  result.params = params;
  result.options = options;

  const EnsembleState prepared = prepare_A(params, options.tau);
  result.prepared = prepared.mean();
  const auto& acq = options.acquisition;
  const double dwell = acq.dwell_for(params);

  for (int stage = 0; stage <= 3; ++stage) {
    const EnsembleState twirled =
        run_sequence(twirl_stage_sequence(stage, options.twirl.grad_seconds(params)), prepared, params,
                     options.twirl.phase_count);
    result.refocus_warning = result.refocus_warning || twirled.refocus_warning;

    StageResult& r = result.stages[stage];
    r.stage = stage;
    r.state = twirled.mean();
    r.direct_fid = acquire(r.state, params, acq.points, dwell);
    r.direct_power = r.direct_fid.power();
    r.direct = spectrum(r.direct_fid, acq.line_broadening_hz);

    const EnsembleState detected = detect_sequence(ensemble_of(r.state), params);
    r.detected_fid = acquire(detected, params, acq.points, dwell);
    r.detected = spectrum(r.detected_fid, acq.line_broadening_hz);

    r.bell = bell_diagonal_populations(r.state);
    r.singlet_coefficient = singlet_fidelity(r.state);
    r.werner_residual = max_abs_diff(r.state, werner_projection(r.state, StateKind::deviation));
    r.detected_doublets = measure_doublets(r.detected, params, acq.window_for(params));
  }
  return result;
}

std::string to_json(const Experiment1Result& result) {
  nlohmann::ordered_json j;
  j["experiment"] = 1;
  j["params"] = params_json(result.params);
  j["tau_s"] = result.options.tau;
  j["phase_count"] = result.options.twirl.phase_count;
  j["grad_s"] = result.options.twirl.grad_seconds(result.params);
  j["refocus_warning"] = result.refocus_warning;
  j["prepared_singlet_coefficient"] = singlet_fidelity(result.prepared);
  j["prepared_formula"] = singlet_fraction_formula(result.options.tau, result.params);
  j["stage1_relative_direct_power"] = result.stage1_relative_power();
  for (const StageResult& r : result.stages) {
    nlohmann::ordered_json s;
    s["stage"] = r.stage;
    s["direct_power"] = r.direct_power;
    s["bell"] = bell_json(r.bell);
    s["singlet_coefficient"] = r.singlet_coefficient;
    s["werner_residual"] = r.werner_residual;
    s["detected_doublets"] = doublet_json(r.detected_doublets);
    s["product_operators"] = decomposition_json(r.state);
    j["stages"].push_back(s);
  }
  return j.dump(2);
}

SinusoidFit fit_sinusoid(const std::vector<double>& tau, const std::vector<double>& values, double dtau) {
  if (tau.size() != values.size() || tau.size() < 4) throw DomainError("sinusoid fit needs >= 4 points");
  const double n = static_cast<double>(tau.size());
  const double f_lo = 1.0 / (n * dtau);
  const double f_hi = 1.0 / (2.5 * dtau);

  constexpr int kGrid = 400;
  double best_f = f_lo;
  double best_rss = fit_at(f_lo, tau, values).rss;
  for (int g = 1; g <= kGrid; ++g) {
    const double f = f_lo + (f_hi - f_lo) * g / kGrid;
    const double rss = fit_at(f, tau, values).rss;
    if (rss < best_rss) {
      best_rss = rss;
      best_f = f;
    }
  }
  const double step = (f_hi - f_lo) / kGrid;
  const auto [f, rss] = boost::math::tools::brent_find_minima(
      [&](double x) { return fit_at(x, tau, values).rss; }, std::max(f_lo, best_f - step),
      std::min(f_hi, best_f + step), 52);

  const LinearFit lf = fit_at(f, tau, values);
  SinusoidFit out;
  out.frequency_hz = f;
  out.amplitude = std::hypot(lf.coeffs[0], lf.coeffs[1]);
  out.phase = std::atan2(lf.coeffs[1], lf.coeffs[0]);
  out.offset = lf.coeffs[2];
  out.period_steps = 1.0 / (f * dtau);
  out.rms_residual = std::sqrt(rss / n);
  return out;
}

Experiment2Result run_experiment2(const SpinSystemParams& params, const Experiment2Options& options) {
  params.validate();
  if (options.steps < 20) throw DomainError("experiment 2 needs at least 20 steps");
  Experiment2Result result;
  result.params = params;
  result.options = options;

  const double dtau = options.dtau_for(params);
  const auto& acq = options.acquisition;
  const double dwell = acq.dwell_for(params);
  const PulseSequence twirl = twirl_stage_sequence(3, options.twirl.grad_seconds(params));
  const PulseSequence detect = detection_sequence(params);

  std::vector<double> taus;
  std::vector<double> intensities;
  for (int k = 0; k < options.steps; ++k) {
    Experiment2Step step;
    step.index = k;
    step.tau = options.tau_center + (k - 0.5 * (options.steps - 1)) * dtau;
    if (step.tau < 0.0) throw DomainError("tau sweep reaches negative delays");
    step.formula = singlet_fraction_formula(step.tau, params);

    EnsembleState state = prepare_A(params, step.tau);
    step.singlet_coefficient = singlet_fidelity(state.mean());
    state = run_sequence(twirl, std::move(state), params, options.twirl.phase_count);
    result.refocus_warning = result.refocus_warning || state.refocus_warning;
    state = ensemble_of(state.mean());
    state = run_sequence(detect, std::move(state), params);
    const Spectrum spec = spectrum(acquire(state, params, acq.points, dwell), acq.line_broadening_hz);
    step.intensity = integrate_peak(spec, params.nu_s_hz + params.j_hz / 2.0, acq.window_for(params));

    taus.push_back(step.tau);
    intensities.push_back(step.intensity);
    result.steps.push_back(step);
  }

  result.fit = fit_sinusoid(taus, intensities, dtau);

  double num = 0.0;
  double den = 0.0;
  for (const auto& s : result.steps) {
    num += s.intensity * s.formula;
    den += s.formula * s.formula;
  }
  result.scale = den > 0.0 ? num / den : 0.0;
  for (const auto& s : result.steps) {
    const double predicted = result.scale * s.formula;
    if (predicted != 0.0)
      result.max_relative_error =
          std::max(result.max_relative_error, std::abs(s.intensity - predicted) / std::abs(predicted));
  }
  return result;
}

std::string to_json(const Experiment2Result& result) {
  nlohmann::ordered_json j;
  j["experiment"] = 2;
  j["params"] = params_json(result.params);
  j["tau_center_s"] = result.options.tau_center;
  j["dtau_s"] = result.options.dtau_for(result.params);
  j["steps"] = result.options.steps;
  j["refocus_warning"] = result.refocus_warning;
  j["fit"] = {{"amplitude", result.fit.amplitude},     {"frequency_hz", result.fit.frequency_hz},
              {"phase_rad", result.fit.phase},         {"offset", result.fit.offset},
              {"period_steps", result.fit.period_steps}, {"rms_residual", result.fit.rms_residual}};
  j["scale"] = result.scale;
  j["max_relative_error"] = result.max_relative_error;
  return j.dump(2);
}

}  // namespace twirlsim::nmr
