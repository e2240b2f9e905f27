#include "twirlsim/nmr/pulse_program.hpp"

#include <charconv>
#include <cmath>
#include <optional>

namespace twirlsim::nmr {

namespace {

double magic_degrees() { return std::acos(1.0 / std::sqrt(3.0)) * 180.0 / 3.14159265358979323846; }

struct Token {
  std::string_view text;
  int line;
  int column;
};

struct Statement {
  std::vector<Token> tokens;
  int end_line;
  int end_column;  // column just past the last character of the statement
};

std::vector<Statement> split_statements(std::string_view text) {
  std::vector<Statement> out;
  Statement current{{}, 1, 1};
  int line = 1;
  int column = 1;
  std::size_t i = 0;
  auto flush = [&] {
    if (!current.tokens.empty()) out.push_back(current);
    current = Statement{{}, line, column};
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      flush();
      ++line;
      column = 1;
      ++i;
      current.end_line = line;
      current.end_column = column;
      continue;
    }
    if (c == ';') {
      flush();
      ++i;
      ++column;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') {
        ++i;
        ++column;
      }
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      ++column;
      continue;
    }
    const std::size_t start = i;
    const int start_col = column;
    while (i < text.size() && text[i] != ' ' && text[i] != '\t' && text[i] != '\r' &&
           text[i] != '\n' && text[i] != ';' && text[i] != '#') {
      ++i;
      ++column;
    }
    current.tokens.push_back({text.substr(start, i - start), line, start_col});
    current.end_line = line;
    current.end_column = column;
  }
  flush();
  return out;
}

std::optional<double> to_double(std::string_view s) {
  double v = 0.0;
  const char* first = s.data();
  if (!s.empty() && s.front() == '+') ++first;
  const auto res = std::from_chars(first, s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

[[noreturn]] void fail(const Token& t, const std::string& msg) { throw ParseError(t.line, t.column, msg); }

class StatementReader {
 public:
  explicit StatementReader(const Statement& s) : s_(s) {}

  const Token& next(const char* what) {
    if (pos_ >= s_.tokens.size())
      throw ParseError(s_.end_line, s_.end_column, std::string("missing ") + what);
    return s_.tokens[pos_++];
  }

  double non_negative(const char* what) {
    const Token& t = next(what);
    const auto v = to_double(t.text);
    if (!v) fail(t, std::string("expected ") + what + ", got '" + std::string(t.text) + "'");
    if (*v < 0.0) fail(t, std::string(what) + " must be non-negative");
    return *v;
  }

  void finish() const {
    if (pos_ < s_.tokens.size())
      fail(s_.tokens[pos_], "unexpected '" + std::string(s_.tokens[pos_].text) + "'");
  }

 private:
  const Statement& s_;
  std::size_t pos_ = 0;
};

PulseEvent parse_statement(const Statement& s) {
  StatementReader r(s);
  const Token& keyword = r.next("statement");
  PulseEvent event;
  if (keyword.text == "pulse") {
    Pulse p;
    const Token& target = r.next("pulse target (I, S or both)");
    if (target.text == "I")
      p.target = PulseTarget::I;
    else if (target.text == "S")
      p.target = PulseTarget::S;
    else if (target.text == "both")
      p.target = PulseTarget::both;
    else
      fail(target, "unknown pulse target '" + std::string(target.text) + "'");

    const Token& angle = r.next("pulse angle");
    if (angle.text == "magic") {
      p.angle_deg = magic_degrees();
    } else {
      const auto v = to_double(angle.text);
      if (!v) fail(angle, "expected pulse angle, got '" + std::string(angle.text) + "'");
      p.angle_deg = *v;
    }

    const Token& phase = r.next("pulse phase");
    if (phase.text == "x")
      p.phase_deg = 0.0;
    else if (phase.text == "y")
      p.phase_deg = 90.0;
    else if (phase.text == "-x")
      p.phase_deg = 180.0;
    else if (phase.text == "-y")
      p.phase_deg = 270.0;
    else if (const auto v = to_double(phase.text))
      p.phase_deg = *v;
    else
      fail(phase, "expected pulse phase, got '" + std::string(phase.text) + "'");
    event = p;
  } else if (keyword.text == "delay") {
    event = Delay{r.non_negative("delay in seconds")};
  } else if (keyword.text == "grad") {
    event = Gradient{r.non_negative("gradient length in seconds")};
  } else if (keyword.text == "acquire") {
    const Token& pts = r.next("number of points");
    std::size_t n = 0;
    const auto res = std::from_chars(pts.text.data(), pts.text.data() + pts.text.size(), n);
    if (res.ec != std::errc() || res.ptr != pts.text.data() + pts.text.size())
      fail(pts, "expected number of points, got '" + std::string(pts.text) + "'");
    if (n < 2) fail(pts, "acquire needs at least 2 points");
    const Token& dwell_tok = r.next("dwell time in seconds");
    const auto dwell = to_double(dwell_tok.text);
    if (!dwell) fail(dwell_tok, "expected dwell time, got '" + std::string(dwell_tok.text) + "'");
    if (*dwell <= 0.0) fail(dwell_tok, "dwell time must be positive");
    event = Acquire{n, *dwell};
  } else {
    fail(keyword, "unknown statement '" + std::string(keyword.text) + "'");
  }
  r.finish();
  return event;
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_phase(double deg) {
  if (deg == 0.0) return "x";
  if (deg == 90.0) return "y";
  if (deg == 180.0) return "-x";
  if (deg == 270.0) return "-y";
  return format_number(deg);
}

}  // namespace

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + message),
      line_(line),
      column_(column),
      message_(message) {}

PulseSequence parse_sequence(std::string_view text) {
  PulseSequence seq;
  const auto statements = split_statements(text);
  bool acquired = false;
  for (const Statement& s : statements) {
    if (acquired)
      fail(s.tokens.front(), "acquire must be the last statement");
    PulseEvent e = parse_statement(s);
    acquired = std::holds_alternative<Acquire>(e);
    seq.events.push_back(std::move(e));
  }
  return seq;
}

std::string to_string(const PulseEvent& event) {
  struct Visitor {
    std::string operator()(const Pulse& p) const {
      const char* target = p.target == PulseTarget::I ? "I" : p.target == PulseTarget::S ? "S" : "both";
      return std::string("pulse ") + target + " " + format_number(p.angle_deg) + " " +
             format_phase(p.phase_deg);
    }
    std::string operator()(const Delay& d) const { return "delay " + format_number(d.seconds); }
    std::string operator()(const Gradient& g) const { return "grad " + format_number(g.seconds); }
    std::string operator()(const Acquire& a) const {
      return "acquire " + std::to_string(a.points) + " " + format_number(a.dwell);
    }
  };
  return std::visit(Visitor{}, event);
}

std::string to_string(const PulseSequence& seq) {
  std::string out;
  for (const auto& e : seq.events) out += to_string(e) + "\n";
  return out;
}

}  // namespace twirlsim::nmr
