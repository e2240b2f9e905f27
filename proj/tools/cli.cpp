#include "cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "twirlsim/averaging.hpp"
#include "twirlsim/nmr/experiments.hpp"

namespace twirlsim::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

struct RunConfig {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  std::optional<int> phase_count;
  std::optional<double> grad_k;

  nmr::KeyValues values;
  nmr::SpinSystemParams params;

  void load() {
    if (!config_path.empty()) values = nmr::load_key_values(config_path);
    params = nmr::spin_system_from(values);
    params.validate();
  }

  double number(const std::string& key, double fallback) const {
    return nmr::get_double(values, key, fallback);
  }

  nmr::TwirlOptions twirl() const {
    nmr::TwirlOptions t;
    t.phase_count = phase_count.value_or(static_cast<int>(number("ng", t.phase_count)));
    t.grad_k = grad_k.value_or(number("grad_k", t.grad_k));
    return t;
  }

  nmr::AcquisitionOptions acquisition() const {
    nmr::AcquisitionOptions a;
    a.points = static_cast<std::size_t>(number("points", static_cast<double>(a.points)));
    a.dwell = number("dwell_s", a.dwell);
    a.window_hz = number("window_hz", a.window_hz);
    return a;
  }

  double plot_line_broadening() const { return number("line_broadening_hz", 1.0); }

  fs::path output(const std::string& name) const {
    const fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw nmr::IoError(dir, ec.message());
    return dir / name;
  }
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw nmr::IoError(path, "cannot open for writing");
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
  if (!out) throw nmr::IoError(path, "write failed");
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw nmr::IoError(path, "cannot open for reading");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ordered_json decomposition(const Mat4& m) {
  ordered_json j;
  const auto c = product_operator_decomposition(m);
  for (int k = 0; k < kProductOpCount; ++k) j[std::string(product_op_name(static_cast<ProductOp>(k)))] = c[k];
  return j;
}

ordered_json bell_json(const BellDiagonal& b) {
  return {{"psi_minus", b.psi_minus()},
          {"psi_plus", b.psi_plus()},
          {"phi_minus", b.phi_minus()},
          {"phi_plus", b.phi_plus()},
          {"max_off_diagonal", b.max_off_diagonal}};
}

Density4 input_state(const std::string& name, std::uint64_t seed) {
  if (name == "psi-") return Density4(projector(bell_state(BellState::psi_minus)), StateKind::state);
  if (name == "psi+") return Density4(projector(bell_state(BellState::psi_plus)), StateKind::state);
  if (name == "phi-") return Density4(projector(bell_state(BellState::phi_minus)), StateKind::state);
  if (name == "phi+") return Density4(projector(bell_state(BellState::phi_plus)), StateKind::state);
  if (name == "00") {
    Mat4 m = Mat4::Zero();
    m(0, 0) = 1.0;
    return Density4(m, StateKind::state);
  }
  if (name == "random") {
    std::mt19937_64 rng(seed);
    return random_state<4>(rng);
  }
  if (name.rfind("werner:", 0) == 0) {
    double eps = 0.0;
    try {
      std::size_t used = 0;
      eps = std::stod(name.substr(7), &used);
      if (used != name.size() - 7) throw std::invalid_argument(name);
    } catch (const std::logic_error&) {
      throw UsageError("bad werner parameter in '" + name + "'");
    }
    return werner(WernerParams::make(eps));
  }
  throw UsageError("unknown input state '" + name + "' (psi-, psi+, phi-, phi+, 00, random, werner:<eps>)");
}

void cmd_classify(const std::string& spec_text, const std::string& format, std::optional<double> tol,
                  std::ostream& out) {
  const RotationSetSpec spec = RotationSetSpec::parse(spec_text);
  const TwirlReport report = tol ? classify(spec, *tol) : classify(spec);
  out << (format == "json" ? to_json(report) : to_text(report)) << '\n';
}

void cmd_shrink(const std::string& spec_text, std::ostream& out) {
  const RotationSetSpec spec = RotationSetSpec::parse(spec_text);
  const auto s = bloch_shrink(spec);
  ordered_json j;
  j["spec"] = spec.to_string();
  j["singular_values"] = s;
  out << j.dump(2) << '\n';
}

void cmd_twirl(const std::string& spec_text, const std::string& input, const RunConfig& cfg,
               std::ostream& out) {
  const RotationSetSpec spec = RotationSetSpec::parse(spec_text);
  const Density4 rho = input_state(input, cfg.seed);
  const Density4 twirled = average(rho, spec);
  const Density4 exact = exact_twirl(rho);

  ordered_json j;
  j["spec"] = spec.to_string();
  j["input"] = input;
  j["singlet_fidelity_in"] = singlet_fidelity(rho);
  j["singlet_fidelity_out"] = singlet_fidelity(twirled);
  j["bell_out"] = bell_json(bell_diagonal_populations(twirled));
  const auto w = is_werner(twirled, default_tolerance(spec));
  j["werner_epsilon"] = w ? ordered_json(w->epsilon) : ordered_json(nullptr);
  j["trace_distance_to_exact_twirl"] = trace_distance(twirled, exact);
  out << j.dump(2) << '\n';
}

void cmd_run(const std::string& program_path, const RunConfig& cfg, std::ostream& out,
             std::ostream& err) {
  const nmr::PulseSequence seq = nmr::parse_sequence(read_text(program_path));
  const nmr::EnsembleState state =
      nmr::run_sequence(seq, nmr::thermal_state(), cfg.params, cfg.twirl().phase_count);
  for (const auto& w : state.warnings) err << "warning: " << w << '\n';

  const Mat4 mean = state.mean();
  ordered_json j;
  j["program"] = nmr::to_string(seq);
  j["ensemble_members"] = state.size();
  j["product_operators"] = decomposition(mean);
  const fs::path decomp = cfg.output("decomposition.json");
  write_text(decomp, j.dump(2));
  out << "wrote " << decomp.string() << '\n';

  if (!seq.events.empty()) {
    if (const auto* acq = std::get_if<nmr::Acquire>(&seq.events.back())) {
      const nmr::Fid fid = nmr::acquire(mean, cfg.params, acq->points, acq->dwell);
      const fs::path csv = cfg.output("spectrum.csv");
      nmr::write_csv(nmr::spectrum(fid, cfg.number("line_broadening_hz", 0.0)), csv);
      out << "wrote " << csv.string() << '\n';
    }
  }
}

void cmd_experiment1(const RunConfig& cfg, std::optional<double> tau, std::ostream& out,
                     std::ostream& err) {
  nmr::Experiment1Options opt;
  opt.tau = tau.value_or(cfg.number("tau_s", opt.tau));
  opt.twirl = cfg.twirl();
  opt.acquisition = cfg.acquisition();
  const nmr::Experiment1Result r = nmr::run_experiment1(cfg.params, opt);
  if (r.refocus_warning) err << "warning: gradient length does not refocus the difference frequency\n";

  const double lb = cfg.plot_line_broadening();
  for (const auto& s : r.stages) {
    const std::string stem = "exp1_stage" + std::to_string(s.stage);
    nmr::write_csv(nmr::spectrum(s.direct_fid, lb), cfg.output(stem + "_direct.csv"));
    nmr::write_csv(nmr::spectrum(s.detected_fid, lb), cfg.output(stem + "_detected.csv"));
  }
  const fs::path metrics = cfg.output("exp1_metrics.json");
  write_text(metrics, nmr::to_json(r));
  out << "wrote 8 spectra and " << metrics.string() << '\n';
}

void cmd_experiment2(const RunConfig& cfg, std::optional<int> steps, std::optional<double> center,
                     std::ostream& out, std::ostream& err) {
  nmr::Experiment2Options opt;
  opt.steps = steps.value_or(static_cast<int>(cfg.number("steps", opt.steps)));
  opt.tau_center = center.value_or(cfg.number("tau_s", opt.tau_center));
  opt.dtau = cfg.number("dtau_s", opt.dtau);
  opt.twirl = cfg.twirl();
  opt.acquisition = cfg.acquisition();
  const nmr::Experiment2Result r = nmr::run_experiment2(cfg.params, opt);
  if (r.refocus_warning) err << "warning: gradient length does not refocus the difference frequency\n";

  std::string csv = "step,tau_s,intensity,formula,singlet_coefficient\n";
  for (const auto& s : r.steps) {
    csv += std::to_string(s.index) + ',' + format_double(s.tau) + ',' + format_double(s.intensity) + ',' +
           format_double(s.formula) + ',' + format_double(s.singlet_coefficient) + '\n';
  }
  const fs::path steps_path = cfg.output("exp2_steps.csv");
  write_text(steps_path, csv);
  const fs::path fit_path = cfg.output("exp2_fit.json");
  write_text(fit_path, nmr::to_json(r));
  out << "wrote " << steps_path.string() << " and " << fit_path.string() << '\n';
  out << "period_steps=" << r.fit.period_steps << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Twirl and single-qubit averaging simulator"};
  app.name("twirlsim");
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--config", cfg.config_path, "key=value file with spin-system and run parameters");
  app.add_option("--out", cfg.out_dir, "output directory")->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for random inputs")->capture_default_str();
  app.add_option("--ng", cfg.phase_count, "gradient phases per crush")->check(CLI::PositiveNumber);
  app.add_option("--grad-k", cfg.grad_k, "gradient length in units of 1/delta");

  std::string spec_text;
  std::string format = "text";
  std::optional<double> tol;
  auto* classify_cmd = app.add_subcommand("classify", "classify a rotation set");
  classify_cmd->add_option("spec", spec_text, "rotation set, e.g. bennett12 or euler:quad:32")->required();
  classify_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  classify_cmd->add_option("--tol", tol, "override the classification tolerance");

  auto* shrink_cmd = app.add_subcommand("shrink", "Bloch shrink singular values of a rotation set");
  shrink_cmd->add_option("spec", spec_text)->required();

  std::string input = "psi-";
  auto* twirl_cmd = app.add_subcommand("twirl", "apply a bilateral average to a two-qubit state");
  twirl_cmd->add_option("spec", spec_text)->required();
  twirl_cmd->add_option("--input", input, "psi-, psi+, phi-, phi+, 00, random or werner:<eps>")
      ->capture_default_str();

  std::string program;
  auto* run_cmd = app.add_subcommand("run", "run a pulse program on the thermal state");
  run_cmd->add_option("program", program, "pulse program file")->required();

  std::optional<double> tau;
  auto* exp1_cmd = app.add_subcommand("experiment1", "staged crush-gradient twirl");
  exp1_cmd->add_option("--tau", tau, "preparation delay in seconds");

  std::optional<int> steps;
  std::optional<double> center;
  auto* exp2_cmd = app.add_subcommand("experiment2", "tau sweep of the twirled singlet signal");
  exp2_cmd->add_option("--steps", steps);
  exp2_cmd->add_option("--tau-center", center, "center of the sweep in seconds");

  try {
    std::vector<std::string> args;
    for (int k = argc - 1; k > 0; --k) args.emplace_back(argv[k]);
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    if (e.get_exit_code() == 0) return kOk;
    return kUsage;
  }

  try {
    if (*classify_cmd) {
      cmd_classify(spec_text, format, tol, out);
    } else if (*shrink_cmd) {
      cmd_shrink(spec_text, out);
    } else {
      cfg.load();
      if (*twirl_cmd) cmd_twirl(spec_text, input, cfg, out);
      if (*run_cmd) cmd_run(program, cfg, out, err);
      if (*exp1_cmd) cmd_experiment1(cfg, tau, out, err);
      if (*exp2_cmd) cmd_experiment2(cfg, steps, center, out, err);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const nmr::IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntime;
  }
  return kOk;
}

}  // namespace twirlsim::cli
