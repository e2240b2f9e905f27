#pragma once

// Pulse programs. Statements are separated by newlines or `;`, `#` starts
// a comment, and whitespace is insignificant:
//
//   pulse <I|S|both> <angle_deg|magic> <x|y|-x|-y|phase_deg>
//   delay <seconds>
//   grad <seconds>
//   acquire <points> <dwell_seconds>
//
// `acquire` may appear at most once and must be the last statement.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace twirlsim::nmr {

enum class PulseTarget { I, S, both };

struct Pulse {
  PulseTarget target = PulseTarget::both;
  double angle_deg = 0.0;
  double phase_deg = 0.0;  // 0 = x, 90 = y
  bool operator==(const Pulse&) const = default;
};

struct Delay {
  double seconds = 0.0;
  bool operator==(const Delay&) const = default;
};

struct Gradient {
  double seconds = 0.0;
  bool operator==(const Gradient&) const = default;
};

struct Acquire {
  std::size_t points = 0;
  double dwell = 0.0;
  bool operator==(const Acquire&) const = default;
};

using PulseEvent = std::variant<Pulse, Delay, Gradient, Acquire>;

struct PulseSequence {
  std::vector<PulseEvent> events;
  bool operator==(const PulseSequence&) const = default;
};

/// Syntax or semantic error at a 1-based line and column.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  int line_;
  int column_;
  std::string message_;
};

PulseSequence parse_sequence(std::string_view text);

/// One statement per line in canonical form; parse_sequence(to_string(s)) == s.
std::string to_string(const PulseSequence& seq);
std::string to_string(const PulseEvent& event);

}  // namespace twirlsim::nmr
