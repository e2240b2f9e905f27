#include "twirlsim/rotation_set.hpp"

#include <gsl/gsl_integration.h>

#include <charconv>
#include <cmath>
#include <memory>
#include <span>
#include <sstream>

namespace twirlsim {

namespace {

struct VariantName {
  SetVariant variant;
  std::string_view name;
};

// First entry per variant is canonical.
constexpr VariantName kNames[] = {
    {SetVariant::random_axis, "random-axis"},
    {SetVariant::random_axis, "R"},
    {SetVariant::euler, "euler"},
    {SetVariant::euler, "E"},
    {SetVariant::two_axis_zy, "two-axis"},
    {SetVariant::two_axis_zy, "two-axis-zy"},
    {SetVariant::pauli4, "pauli4"},
    {SetVariant::axis120, "axis120"},
    {SetVariant::axis120, "axis120-random"},
    {SetVariant::fixed_angle, "axis-fixed"},
    {SetVariant::cyclic, "cyclic"},
    {SetVariant::continuous_axis, "continuous"},
    {SetVariant::bennett12, "bennett12"},
    {SetVariant::discrete27, "discrete27"},
    {SetVariant::discrete18a, "discrete18a"},
    {SetVariant::discrete18b, "discrete18b"},
    {SetVariant::gradient_sequence, "gradient-sequence"},
    {SetVariant::gradient_sequence, "gradient"},
};

std::string_view canonical_name(SetVariant v) {
  for (const auto& n : kNames)
    if (n.variant == v) return n.name;
  return "?";
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <class T>
bool parse_number(std::string_view s, T& out) {
  if (s.empty()) return false;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

Vec3 parse_axis(std::string_view s) {
  if (s == "x") return Vec3::UnitX();
  if (s == "y") return Vec3::UnitY();
  if (s == "z") return Vec3::UnitZ();
  const auto parts = split(s, ',');
  if (parts.size() != 3) throw UsageError("bad axis '" + std::string(s) + "'");
  Vec3 v;
  for (int i = 0; i < 3; ++i)
    if (!parse_number(parts[i], v[i])) throw UsageError("bad axis '" + std::string(s) + "'");
  if (v.norm() == 0.0) throw UsageError("axis must be non-zero");
  return v.normalized();
}

Vec3 axis_from_char(char c) {
  switch (c) {
    case 'x':
      return Vec3::UnitX();
    case 'y':
      return Vec3::UnitY();
    case 'z':
      return Vec3::UnitZ();
  }
  throw UsageError(std::string("unknown axis '") + c + "'");
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

Vec3 spherical_axis(double cos_theta, double phi) {
  const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
  return Vec3(sin_theta * std::cos(phi), sin_theta * std::sin(phi), cos_theta);
}

Unitary about(const Vec3& axis, double angle) { return axis_angle_unitary({angle, axis}); }

// Time-ordered product {Z_a^m} 90x {Z_b^n} magic_x {Z_c^p}.
std::vector<WeightedUnitary> sequential_discrete(int first, int middle, int last) {
  const Mat2 x90 = rotation_x(kPi / 2).matrix();
  const Mat2 xm = rotation_x(magic_angle()).matrix();
  std::vector<WeightedUnitary> out;
  const double w = 1.0 / (first * middle * last);
  for (int m = 0; m < first; ++m)
    for (int n = 0; n < middle; ++n)
      for (int p = 0; p < last; ++p) {
        const Mat2 u = rotation_z(2 * kPi * p / last).matrix() * xm *
                       rotation_z(2 * kPi * n / middle).matrix() * x90 *
                       rotation_z(2 * kPi * m / first).matrix();
        out.push_back({w, u});
      }
  return out;
}

Mat2 gradient_unitary(std::span<const double> z_angles) {
  Mat2 u = rotation_z(z_angles[0]).matrix();
  u = rotation_x(kPi / 2).matrix() * u;
  u = rotation_z(z_angles[1]).matrix() * u;
  if (z_angles.size() == 3) {
    u = rotation_x(magic_angle()).matrix() * u;
    u = rotation_z(z_angles[2]).matrix() * u;
  }
  return u;
}

std::vector<double> periodic_nodes(std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = 2.0 * kPi * static_cast<double>(k) / n;
  return out;
}

std::vector<WeightedUnitary> quadrature(const RotationSetSpec& spec) {
  const std::size_t n = spec.sampling.n;
  if (n < 1) throw UsageError("quadrature needs at least one point per angle");
  const auto angles = periodic_nodes(n);
  const double wa = 1.0 / static_cast<double>(n);
  std::vector<WeightedUnitary> out;

  switch (spec.variant) {
    case SetVariant::random_axis:
    case SetVariant::euler: {
      const GaussLegendre gl = gauss_legendre(n);
      out.reserve(n * n * n);
      for (double a : angles)
        for (std::size_t b = 0; b < n; ++b)
          for (double c : angles) {
            const double w = wa * 0.5 * gl.weights[b] * wa;
            const double u = gl.nodes[b];
            Mat2 m;
            if (spec.variant == SetVariant::random_axis) {
              m = about(spherical_axis(u, c), a).matrix();
            } else {
              m = euler_unitary({a, std::acos(u), c}).matrix();
            }
            out.push_back({w, m});
          }
      break;
    }
    case SetVariant::two_axis_zy:
      out.reserve(n * n);
      for (double phi : angles)
        for (double theta : angles)
          out.push_back({wa * wa, rotation_y(theta).matrix() * rotation_z(phi).matrix()});
      break;
    case SetVariant::axis120:
    case SetVariant::fixed_angle: {
      const double xi = spec.variant == SetVariant::axis120 ? 2 * kPi / 3 : spec.fixed_angle;
      const GaussLegendre gl = gauss_legendre(n);
      out.reserve(n * n);
      for (std::size_t b = 0; b < n; ++b)
        for (double phi : angles)
          out.push_back({0.5 * gl.weights[b] * wa, about(spherical_axis(gl.nodes[b], phi), xi).matrix()});
      break;
    }
    case SetVariant::continuous_axis:
      for (double xi : angles) out.push_back({wa, about(spec.axis, xi).matrix()});
      break;
    case SetVariant::gradient_sequence: {
      const int stages = spec.gradient_stages;
      std::size_t total = 1;
      for (int s = 0; s < stages; ++s) total *= n;
      out.reserve(total);
      std::vector<double> z(stages);
      for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rest = idx;
        for (int s = 0; s < stages; ++s) {
          z[s] = angles[rest % n];
          rest /= n;
        }
        out.push_back({std::pow(wa, stages), gradient_unitary(z)});
      }
      break;
    }
    default:
      throw UsageError("not a continuous set");
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

bool RotationSetSpec::is_discrete() const {
  switch (variant) {
    case SetVariant::pauli4:
    case SetVariant::cyclic:
    case SetVariant::bennett12:
    case SetVariant::discrete27:
    case SetVariant::discrete18a:
    case SetVariant::discrete18b:
      return true;
    default:
      return false;
  }
}

RotationSetSpec RotationSetSpec::make(SetVariant variant) {
  RotationSetSpec s;
  s.variant = variant;
  s.sampling = s.is_discrete() ? SamplingPlan{SamplingKind::exact, 0, 0}
                               : SamplingPlan{SamplingKind::quadrature, 64, 0};
  return s;
}

RotationSetSpec RotationSetSpec::cyclic(int p, char axis) {
  if (p < 1) throw UsageError("cyclic order must be >= 1");
  RotationSetSpec s = make(SetVariant::cyclic);
  s.cyclic_order = p;
  s.axis = axis_from_char(axis);
  s.axis_text = std::string(1, axis);
  return s;
}

RotationSetSpec RotationSetSpec::continuous_about(char axis) {
  RotationSetSpec s = make(SetVariant::continuous_axis);
  s.axis = axis_from_char(axis);
  s.axis_text = std::string(1, axis);
  return s;
}

RotationSetSpec RotationSetSpec::fixed_angle_random_axis(double radians) {
  RotationSetSpec s = make(SetVariant::fixed_angle);
  s.fixed_angle = radians;
  return s;
}

RotationSetSpec RotationSetSpec::gradient(int stages) {
  if (stages != 2 && stages != 3) throw UsageError("gradient sequence has 2 or 3 stages");
  RotationSetSpec s = make(SetVariant::gradient_sequence);
  s.gradient_stages = stages;
  return s;
}

RotationSetSpec RotationSetSpec::with_quadrature(std::size_t n) const {
  RotationSetSpec s = *this;
  if (!s.is_discrete()) s.sampling = {SamplingKind::quadrature, n, 0};
  return s;
}

RotationSetSpec RotationSetSpec::with_monte_carlo(std::size_t n, std::uint64_t seed) const {
  if (n < 1) throw UsageError("Monte Carlo needs at least one draw");
  RotationSetSpec s = *this;
  if (!s.is_discrete()) s.sampling = {SamplingKind::monte_carlo, n, seed};
  return s;
}

RotationSetSpec RotationSetSpec::parse(std::string_view text) {
  const auto tokens = split(text, ':');
  const std::string_view name = tokens[0];
  const VariantName* found = nullptr;
  for (const auto& n : kNames)
    if (n.name == name) found = &n;
  if (!found) throw UsageError("unknown rotation set '" + std::string(name) + "'");

  RotationSetSpec spec = make(found->variant);
  std::size_t i = 1;
  auto need = [&](const char* what) -> std::string_view {
    if (i >= tokens.size())
      throw UsageError("rotation set '" + std::string(text) + "' is missing " + what);
    return tokens[i++];
  };

  switch (spec.variant) {
    case SetVariant::cyclic: {
      const std::string_view p = need("the cyclic order");
      if (!parse_number(p, spec.cyclic_order) || spec.cyclic_order < 1)
        throw UsageError("bad cyclic order '" + std::string(p) + "'");
      const std::string_view ax = need("the axis");
      spec.axis = parse_axis(ax);
      spec.axis_text = std::string(ax);
      break;
    }
    case SetVariant::continuous_axis: {
      const std::string_view ax = need("the axis");
      spec.axis = parse_axis(ax);
      spec.axis_text = std::string(ax);
      break;
    }
    case SetVariant::fixed_angle: {
      const std::string_view deg = need("the angle in degrees");
      double d = 0.0;
      if (!parse_number(deg, d)) throw UsageError("bad angle '" + std::string(deg) + "'");
      spec.fixed_angle = degrees_to_radians(d);
      break;
    }
    case SetVariant::gradient_sequence:
      if (i < tokens.size() && parse_number(tokens[i], spec.gradient_stages)) {
        ++i;
        if (spec.gradient_stages != 2 && spec.gradient_stages != 3)
          throw UsageError("gradient sequence has 2 or 3 stages");
      }
      break;
    default:
      break;
  }

  if (i < tokens.size()) {
    const std::string_view mode = tokens[i++];
    if (mode == "exact") {
      if (!spec.is_discrete()) throw UsageError("continuous sets need quad or mc sampling");
    } else if (mode == "quad") {
      std::size_t n = 0;
      const std::string_view t = need("the quadrature size");
      if (!parse_number(t, n) || n < 1) throw UsageError("bad quadrature size '" + std::string(t) + "'");
      if (!spec.is_discrete()) spec.sampling = {SamplingKind::quadrature, n, 0};
    } else if (mode == "mc") {
      std::size_t n = 0;
      const std::string_view t = need("the sample count");
      if (!parse_number(t, n) || n < 1) throw UsageError("bad sample count '" + std::string(t) + "'");
      std::uint64_t seed = 0;
      if (i < tokens.size()) {
        const std::string_view s = tokens[i++];
        if (s.substr(0, 5) != "seed=" || !parse_number(s.substr(5), seed))
          throw UsageError("expected seed=<n>, got '" + std::string(s) + "'");
      }
      if (!spec.is_discrete()) spec.sampling = {SamplingKind::monte_carlo, n, seed};
    } else {
      throw UsageError("unknown sampling mode '" + std::string(mode) + "'");
    }
  }
  if (i != tokens.size())
    throw UsageError("trailing text in rotation set '" + std::string(text) + "'");
  return spec;
}

std::string RotationSetSpec::to_string() const {
  std::string out(canonical_name(variant));
  switch (variant) {
    case SetVariant::cyclic:
      out += ":" + std::to_string(cyclic_order) + ":" + axis_text;
      break;
    case SetVariant::continuous_axis:
      out += ":" + axis_text;
      break;
    case SetVariant::fixed_angle:
      out += ":" + format_double(radians_to_degrees(fixed_angle));
      break;
    case SetVariant::gradient_sequence:
      out += ":" + std::to_string(gradient_stages);
      break;
    default:
      break;
  }
  if (!is_discrete()) {
    if (sampling.kind == SamplingKind::monte_carlo)
      out += ":mc:" + std::to_string(sampling.n) + ":seed=" + std::to_string(sampling.seed);
    else
      out += ":quad:" + std::to_string(sampling.n);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<WeightedUnitary> enumerate(const RotationSetSpec& spec) {
  std::vector<WeightedUnitary> out;
  switch (spec.variant) {
    case SetVariant::pauli4:
      out = {{0.25, Mat2::Identity()},
             {0.25, rotation_x(kPi).matrix()},
             {0.25, rotation_y(kPi).matrix()},
             {0.25, rotation_z(kPi).matrix()}};
      break;
    case SetVariant::cyclic: {
      const int p = spec.cyclic_order;
      for (int k = 0; k < p; ++k) out.push_back({1.0 / p, about(spec.axis, 2 * kPi * k / p).matrix()});
      break;
    }
    case SetVariant::bennett12: {
      out.push_back({1.0 / 12, Mat2::Identity()});
      out.push_back({1.0 / 12, rotation_x(kPi).matrix()});
      out.push_back({1.0 / 12, rotation_y(kPi).matrix()});
      out.push_back({1.0 / 12, rotation_z(kPi).matrix()});
      for (double sx : {1.0, -1.0})
        for (double sy : {1.0, -1.0}) {
          const Vec3 diag = Vec3(sx, sy, 1.0).normalized();
          out.push_back({1.0 / 12, about(diag, 2 * kPi / 3).matrix()});
          out.push_back({1.0 / 12, about(diag, -2 * kPi / 3).matrix()});
        }
      break;
    }
    case SetVariant::discrete27:
      out = sequential_discrete(3, 3, 3);
      break;
    case SetVariant::discrete18a:
      out = sequential_discrete(2, 3, 3);
      break;
    case SetVariant::discrete18b:
      out = sequential_discrete(3, 2, 3);
      break;
    default:
      throw UsageError("cannot enumerate continuous set '" + spec.to_string() + "'");
  }
  return out;
}

Unitary sample(const RotationSetSpec& spec, std::mt19937_64& rng) {
  if (spec.is_discrete())
    throw UsageError("cannot sample discrete set '" + spec.to_string() + "'; enumerate it");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto angle = [&] { return 2.0 * kPi * unit(rng); };
  auto cosine = [&] { return 2.0 * unit(rng) - 1.0; };

  switch (spec.variant) {
    case SetVariant::random_axis: {
      const double xi = angle();
      const double u = cosine();
      const double phi = angle();
      return axis_angle_unitary({xi, spherical_axis(u, phi)});
    }
    case SetVariant::euler: {
      const double phi = angle();
      const double u = cosine();
      const double xi = angle();
      return euler_unitary({phi, std::acos(u), xi});
    }
    case SetVariant::two_axis_zy: {
      const double phi = angle();
      const double theta = angle();
      return rotation_z(phi).then(rotation_y(theta));
    }
    case SetVariant::axis120:
    case SetVariant::fixed_angle: {
      const double xi = spec.variant == SetVariant::axis120 ? 2 * kPi / 3 : spec.fixed_angle;
      const double u = cosine();
      const double phi = angle();
      return axis_angle_unitary({xi, spherical_axis(u, phi)});
    }
    case SetVariant::continuous_axis:
      return axis_angle_unitary({angle(), spec.axis});
    case SetVariant::gradient_sequence: {
      std::vector<double> z(spec.gradient_stages);
      for (double& a : z) a = angle();
      return Unitary::from_matrix(gradient_unitary(z));
    }
    default:
      break;
  }
  throw UsageError("unsupported set");
}

std::vector<WeightedUnitary> realize(const RotationSetSpec& spec) {
  if (spec.is_discrete()) return enumerate(spec);
  if (spec.sampling.kind == SamplingKind::monte_carlo) {
    std::mt19937_64 rng(spec.sampling.seed);
    std::vector<WeightedUnitary> out;
    out.reserve(spec.sampling.n);
    const double w = 1.0 / static_cast<double>(spec.sampling.n);
    for (std::size_t k = 0; k < spec.sampling.n; ++k) out.push_back({w, sample(spec, rng).matrix()});
    return out;
  }
  return quadrature(spec);
}

GaussLegendre gauss_legendre(std::size_t n) {
  std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)> table(
      gsl_integration_glfixed_table_alloc(n), &gsl_integration_glfixed_table_free);
  if (!table) throw std::runtime_error("failed to allocate Gauss-Legendre table");
  GaussLegendre out;
  out.nodes.resize(n);
  out.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    gsl_integration_glfixed_point(-1.0, 1.0, i, &out.nodes[i], &out.weights[i], table.get());
  return out;
}

}  // namespace twirlsim
