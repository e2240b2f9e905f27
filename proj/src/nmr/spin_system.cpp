#include "twirlsim/nmr/spin_system.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace twirlsim::nmr {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

void SpinSystemParams::validate() const {
  if (!std::isfinite(nu_i_hz) || !std::isfinite(nu_s_hz) || !std::isfinite(j_hz))
    throw DomainError("spin system parameters must be finite");
  if (j_hz < 0.0) throw DomainError("coupling J must be non-negative");
}

Eigen::Vector4d SpinSystemParams::energies() const {
  const double wi = 2.0 * kPi * nu_i_hz;
  const double ws = 2.0 * kPi * nu_s_hz;
  const double wj = kPi * j_hz;
  Eigen::Vector4d e;
  // m_I, m_S = +-1/2; 2 Iz Sz has eigenvalue 2 m_I m_S.
  const double m[2] = {0.5, -0.5};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) e[2 * a + b] = wi * m[a] + ws * m[b] + wj * 2.0 * m[a] * m[b];
  return e;
}

Mat4 SpinSystemParams::hamiltonian() const {
  return energies().cast<cd>().asDiagonal();
}

KeyValues parse_key_values(const std::string& text) {
  KeyValues kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw DomainError("line " + std::to_string(lineno) + ": expected key=value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

double get_double(const KeyValues& kv, const std::string& key, double fallback) {
  const auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(it->second, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != it->second.size())
    throw DomainError("value of '" + key + "' is not a number: '" + it->second + "'");
  return v;
}

SpinSystemParams spin_system_from(const KeyValues& kv) {
  SpinSystemParams p;
  p.nu_i_hz = get_double(kv, "nu_i_hz", p.nu_i_hz);
  p.nu_s_hz = get_double(kv, "nu_s_hz", p.nu_s_hz);
  p.j_hz = get_double(kv, "j_hz", p.j_hz);
  p.validate();
  return p;
}

KeyValues load_key_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_key_values(buf.str());
}

}  // namespace twirlsim::nmr
