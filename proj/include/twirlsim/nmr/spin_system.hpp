#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>

#include "twirlsim/core.hpp"

namespace twirlsim::nmr {

/// File could not be opened, read or written. Carries the offending path.
class IoError : public std::runtime_error {
 public:
  IoError(const std::filesystem::path& path, const std::string& what)
      : std::runtime_error(path.string() + ": " + what), path_(path) {}
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

/// Weakly coupled homonuclear pair:
/// H / hbar = 2 pi nu_I Iz + 2 pi nu_S Sz + pi J 2 Iz Sz   (all in Hz).
struct SpinSystemParams {
  double nu_i_hz = 457.9;
  double nu_s_hz = -457.9;
  double j_hz = 7.2;

  double delta_hz() const { return nu_i_hz - nu_s_hz; }

  /// Throws DomainError when J < 0 or a value is not finite.
  void validate() const;

  /// Diagonal of H / hbar in rad/s, basis |00>,|01>,|10>,|11>.
  Eigen::Vector4d energies() const;
  Mat4 hamiltonian() const;
};

/// `key=value` lines, `#` comments, blank lines ignored.
using KeyValues = std::map<std::string, std::string>;
KeyValues parse_key_values(const std::string& text);

/// Reads nu_i_hz, nu_s_hz, j_hz; missing keys keep their defaults.
SpinSystemParams spin_system_from(const KeyValues& kv);
/// Throws IoError if the file cannot be read.
KeyValues load_key_values(const std::filesystem::path& path);

/// Double from a key, or `fallback` when absent. Throws DomainError when
/// present but malformed.
double get_double(const KeyValues& kv, const std::string& key, double fallback);

}  // namespace twirlsim::nmr
