#include "doctest.h"
#include "json.hpp"
#include "twirlsim/averaging.hpp"
#include "twirlsim/nmr/experiments.hpp"
#include "twirlsim/rotations.hpp"

using namespace twirlsim;
using namespace twirlsim::nmr;

namespace {

const Experiment1Result& default_run() {
  static const Experiment1Result r = run_experiment1(SpinSystemParams{}, Experiment1Options{});
  return r;
}

}  // namespace

TEST_CASE("stage sequences") {
  CHECK(twirl_stage_sequence(0, 1.0).events.empty());
  CHECK(to_string(twirl_stage_sequence(2, 0.5)) == "grad 0.5\npulse both 90 x\ngrad 0.5\n");
  const PulseSequence s3 = twirl_stage_sequence(3, 0.5);
  REQUIRE(s3.events.size() == 5);
  CHECK(std::get<Pulse>(s3.events[3]).angle_deg == doctest::Approx(radians_to_degrees(magic_angle())));
  CHECK_THROWS_AS(twirl_stage_sequence(4, 0.5), DomainError);
}

TEST_CASE("experiment 1 ladder") {
  const Experiment1Result& r = default_run();
  CHECK_FALSE(r.refocus_warning);
  CHECK(r.stage1_relative_power() <= 1e-10);

  const StageResult& s2 = r.stages[2];
  CHECK(std::abs(s2.bell.phi_plus() - s2.bell.phi_minus()) <= 1e-10);
  CHECK(std::abs(std::abs(s2.detected_doublets.i_antiphase()) - std::abs(s2.detected_doublets.s_antiphase())) >
        0.2 * std::abs(s2.detected_doublets.i_antiphase()));

  const StageResult& s3 = r.stages[3];
  CHECK(s3.werner_residual <= 1e-9);
  const auto& d = s3.detected_doublets;
  CHECK(std::abs(d.i_antiphase() + d.s_antiphase()) <= 0.02 * std::abs(d.i_antiphase()));
}

TEST_CASE("stage states match the gradient-sequence channels") {
  const Experiment1Result& r = default_run();
  const Mat4 prepared = r.prepared;
  CHECK(singlet_fidelity(prepared) == doctest::Approx(singlet_fraction_formula(0.0693, SpinSystemParams{})));

  const Superoperator g2 = superoperator(RotationSetSpec::parse("gradient-sequence:2:quad:8"), AveragingMode::bilateral_2q);
  const Superoperator g3 = superoperator(RotationSetSpec::parse("gradient-sequence:3:quad:8"), AveragingMode::bilateral_2q);
  CHECK(max_abs_diff(r.stages[2].state, g2.apply(prepared)) < 1e-12);
  CHECK(max_abs_diff(r.stages[3].state, g3.apply(prepared)) < 1e-12);
  CHECK(max_abs_diff(r.stages[3].state, exact_twirl(prepared, StateKind::deviation)) < 1e-12);
  CHECK(max_abs_diff(r.stages[0].state, prepared) == 0.0);
}

TEST_CASE("singlet coefficient survives every stage") {
  const Experiment1Result& r = default_run();
  for (const auto& s : r.stages) CHECK(s.singlet_coefficient == doctest::Approx(r.stages[0].singlet_coefficient));
}

TEST_CASE("two gradient phases leave double-quantum terms") {
  Experiment1Options opt;
  opt.twirl.phase_count = 2;
  const Experiment1Result r = run_experiment1(SpinSystemParams{}, opt);
  CHECK(r.stages[3].werner_residual > 1e-3);
  opt.twirl.phase_count = 3;
  CHECK(run_experiment1(SpinSystemParams{}, opt).stages[3].werner_residual < 1e-12);
}

TEST_CASE("gradients that miss the refocusing condition") {
  for (double k : {1.0, 2.0, 3.0}) {
    CAPTURE(k);
    Experiment1Options opt;
    opt.twirl.grad_k = k + 0.37;
    const Experiment1Result off = run_experiment1(SpinSystemParams{}, opt);
    CHECK(off.refocus_warning);
    CHECK(off.stages[3].bell.max_off_diagonal > 1e-3);
    opt.twirl.grad_k = k;
    const Experiment1Result on = run_experiment1(SpinSystemParams{}, opt);
    CHECK_FALSE(on.refocus_warning);
    CHECK(on.stages[3].bell.max_off_diagonal < 1e-9);
  }
}

TEST_CASE("sinusoid fit recovers a known signal") {
  const double dtau = 1e-3;
  const double f = 1.0 / (7.3 * dtau);
  std::vector<double> tau;
  std::vector<double> y;
  for (int k = 0; k < 40; ++k) {
    tau.push_back(0.5 + k * dtau);
    y.push_back(2.5 * std::sin(2 * kPi * f * tau.back() + 0.4) + 0.1);
  }
  const SinusoidFit fit = fit_sinusoid(tau, y, dtau);
  CHECK(fit.period_steps == doctest::Approx(7.3).epsilon(1e-8));
  CHECK(fit.amplitude == doctest::Approx(2.5).epsilon(1e-8));
  CHECK(fit.offset == doctest::Approx(0.1).epsilon(1e-8));
  CHECK(fit.rms_residual < 1e-8);
  CHECK_THROWS_AS(fit_sinusoid({1, 2}, {1, 2}, 1.0), DomainError);
}

TEST_CASE("experiment 2 sweep") {
  const Experiment2Result r = run_experiment2(SpinSystemParams{}, Experiment2Options{});
  REQUIRE(r.steps.size() == 30);
  CHECK(r.options.dtau_for(r.params) == doctest::Approx(218.4e-6).epsilon(1e-3));
  CHECK(std::abs(r.fit.period_steps - 10.0) <= 0.1);
  CHECK(r.max_relative_error <= 0.02);
  CHECK_FALSE(r.refocus_warning);
  const double mid = 0.5 * (r.steps[14].tau + r.steps[15].tau);
  CHECK(mid == doctest::Approx(0.0693));
  for (const auto& s : r.steps) CHECK(s.singlet_coefficient == doctest::Approx(s.formula).epsilon(1e-10));

  Experiment2Options short_sweep;
  short_sweep.steps = 10;
  CHECK_THROWS_AS(run_experiment2(SpinSystemParams{}, short_sweep), DomainError);
}

TEST_CASE("metrics serialize to json") {
  const auto j1 = nlohmann::json::parse(to_json(default_run()));
  CHECK(j1.at("stages").size() == 4);
  CHECK(j1.at("stages")[3].contains("werner_residual"));
  CHECK(j1.at("refocus_warning") == false);

  Experiment2Options opt;
  opt.steps = 20;
  const auto j2 = nlohmann::json::parse(to_json(run_experiment2(SpinSystemParams{}, opt)));
  CHECK(j2.at("steps") == 20);
  CHECK(j2.at("fit").contains("period_steps"));
}
