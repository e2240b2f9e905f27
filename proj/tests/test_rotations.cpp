#include <random>
#include <set>

#include "doctest.h"
#include "twirlsim/rotation_set.hpp"
#include "twirlsim/rotations.hpp"

using namespace twirlsim;

namespace {

// cos(xi/2) 1 - i sin(xi/2) n.sigma
Mat2 closed_form(double xi, const Vec3& n) {
  const cd i(0, 1);
  return std::cos(xi / 2) * pauli(0) -
         i * std::sin(xi / 2) * (n.x() * pauli(1) + n.y() * pauli(2) + n.z() * pauli(3));
}

bool contains(const std::vector<WeightedUnitary>& set, const Mat2& u) {
  for (const auto& e : set)
    if (channel_distance(e.u, u) < 1e-12) return true;
  return false;
}

}  // namespace

TEST_CASE("axis-angle unitaries match the closed form") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> angle(-2 * kPi, 2 * kPi);
  for (int k = 0; k < 200; ++k) {
    Vec3 n(g(rng), g(rng), g(rng));
    n.normalize();
    const double xi = angle(rng);
    const Unitary u = axis_angle_unitary({xi, n});
    CHECK(channel_distance(u.matrix(), closed_form(xi, n)) < 1e-14);
    CHECK(u.unitarity_residual() < 1e-14);
    CHECK(u.det_residual() < 1e-14);
  }
  CHECK_THROWS_AS(axis_angle_unitary({1.0, Vec3(1, 1, 0)}), DomainError);
}

TEST_CASE("pi rotations act like the pauli matrices") {
  CHECK(channel_distance(rotation_x(kPi).matrix(), pauli(1)) < 1e-15);
  CHECK(channel_distance(rotation_y(kPi).matrix(), pauli(2)) < 1e-15);
  CHECK(channel_distance(rotation_z(kPi).matrix(), pauli(3)) < 1e-15);
}

TEST_CASE("rotation sense: 90 about x takes z to -y") {
  const Eigen::Matrix4d r = pauli_transfer(rotation_x(kPi / 2).matrix());
  CHECK(r(2, 3) == doctest::Approx(-1.0));
  CHECK(r(3, 2) == doctest::Approx(1.0));
  CHECK(r(1, 1) == doctest::Approx(1.0));
  const Eigen::Matrix4d rz = pauli_transfer(rotation_z(kPi / 2).matrix());
  CHECK(rz(2, 1) == doctest::Approx(1.0));  // x -> y
}

TEST_CASE("time order of sequences") {
  const Unitary a = rotation_x(0.3);
  const Unitary b = rotation_y(1.1);
  const Unitary c = rotation_z(-0.7);
  const Mat2 expected = c.matrix() * b.matrix() * a.matrix();
  CHECK(channel_distance(sequence({a, b, c}).matrix(), expected) < 1e-15);
  CHECK(channel_distance(a.then(b).matrix(), b.matrix() * a.matrix()) < 1e-15);
  CHECK(channel_distance(a.then(a.adjoint()).matrix(), Mat2::Identity()) < 1e-15);
}

TEST_CASE("euler unitary") {
  const EulerTriple e{0.4, 1.2, -2.0};
  const Mat2 expected = rotation_z(e.xi).matrix() * rotation_y(e.theta).matrix() * rotation_z(e.phi).matrix();
  const Unitary u = euler_unitary(e);
  CHECK(channel_distance(u.matrix(), expected) < 1e-15);
  CHECK(std::holds_alternative<EulerTriple>(u.provenance()));
}

TEST_CASE("from_matrix normalizes the determinant") {
  const Mat2 phased = cd(0, 1) * rotation_x(0.5).matrix();
  const Unitary u = Unitary::from_matrix(phased);
  CHECK(std::abs(u.matrix().determinant() - cd(1.0)) < 1e-15);
  CHECK(channel_distance(u.matrix(), phased) < 1e-15);
  Mat2 bad = Mat2::Identity();
  bad(0, 1) = 0.2;
  CHECK_THROWS_AS(Unitary::from_matrix(bad), DomainError);
}

TEST_CASE("pauli transfer matrices are rotations") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> a(0, 2 * kPi);
  for (int k = 0; k < 50; ++k) {
    const Unitary u = euler_unitary({a(rng), a(rng), a(rng)});
    const Eigen::Matrix4d r = pauli_transfer(u.matrix());
    CHECK(r(0, 0) == doctest::Approx(1.0));
    CHECK((r.transpose() * r - Eigen::Matrix4d::Identity()).norm() < 1e-13);
    CHECK(r.determinant() == doctest::Approx(1.0));
  }
}

TEST_CASE("bilateral rotation is u tensor u") {
  const Mat2 u = rotation_y(0.9).matrix();
  CHECK((bilateral(u) - tensor(u, u)).norm() == 0.0);
}

TEST_CASE("magic angle") {
  CHECK(std::cos(magic_angle()) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(radians_to_degrees(magic_angle()) == doctest::Approx(54.7356103172));
}

TEST_CASE("spec text round trip") {
  for (const char* text :
       {"bennett12", "pauli4", "discrete27", "discrete18a", "discrete18b", "cyclic:3:z", "cyclic:5:1,1,0",
        "random-axis:quad:64", "euler:mc:100000:seed=7", "two-axis:quad:16", "axis120:quad:32",
        "axis-fixed:45:quad:8", "continuous:x:quad:12", "gradient-sequence:2:quad:8",
        "gradient-sequence:3:mc:10:seed=2"}) {
    CAPTURE(text);
    const RotationSetSpec s = RotationSetSpec::parse(text);
    CHECK(s.to_string() == text);
    CHECK(RotationSetSpec::parse(s.to_string()).to_string() == s.to_string());
  }
  CHECK(RotationSetSpec::parse("R").variant == SetVariant::random_axis);
  CHECK(RotationSetSpec::parse("E").variant == SetVariant::euler);
  CHECK(RotationSetSpec::parse("euler").sampling.n == 64);
  CHECK(RotationSetSpec::parse("bennett12:quad:10").to_string() == "bennett12");
}

TEST_CASE("malformed spec text") {
  for (const char* text : {"bogus", "", "cyclic", "cyclic:0:z", "cyclic:3:q", "cyclic:3:0,0,0", "euler:quad:0",
                           "euler:mc:5:seed=x", "euler:exact", "bennett12:fast", "pauli4:exact:extra",
                           "gradient-sequence:4", "axis-fixed:abc"}) {
    CAPTURE(text);
    CHECK_THROWS_AS(RotationSetSpec::parse(text), UsageError);
  }
}

TEST_CASE("discrete set sizes") {
  CHECK(enumerate(RotationSetSpec::cyclic(3)).size() == 3);
  CHECK(enumerate(RotationSetSpec::make(SetVariant::pauli4)).size() == 4);
  CHECK(enumerate(RotationSetSpec::make(SetVariant::bennett12)).size() == 12);
  CHECK(enumerate(RotationSetSpec::make(SetVariant::discrete27)).size() == 27);
  CHECK(enumerate(RotationSetSpec::make(SetVariant::discrete18a)).size() == 18);
  CHECK(enumerate(RotationSetSpec::make(SetVariant::discrete18b)).size() == 18);
  for (const auto& e : enumerate(RotationSetSpec::make(SetVariant::discrete27)))
    CHECK(e.weight == doctest::Approx(1.0 / 27));
  CHECK_THROWS_AS(enumerate(RotationSetSpec::make(SetVariant::euler)), UsageError);
  std::mt19937_64 rng(0);
  CHECK_THROWS_AS(sample(RotationSetSpec::make(SetVariant::bennett12), rng), UsageError);
}

TEST_CASE("cyclic set elements") {
  const auto c3 = enumerate(RotationSetSpec::cyclic(3, 'z'));
  for (int k = 0; k < 3; ++k) CHECK(contains(c3, rotation_z(2 * kPi * k / 3).matrix()));
  const RotationSetSpec diag = RotationSetSpec::parse("cyclic:4:1,1,1");
  const Vec3 n = Vec3(1, 1, 1).normalized();
  const auto c4 = enumerate(diag);
  for (int k = 0; k < 4; ++k) CHECK(contains(c4, axis_angle_unitary({2 * kPi * k / 4, n}).matrix()));
}

TEST_CASE("bennett12 is closed under composition") {
  const auto g = enumerate(RotationSetSpec::make(SetVariant::bennett12));
  for (const auto& a : g)
    for (const auto& b : g) CHECK(contains(g, a.u * b.u));
  // the tetrahedron with vertices (1,1,1), (1,-1,-1), (-1,1,-1), (-1,-1,1) is mapped to itself
  std::vector<Vec3> vertices{{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  for (const auto& e : g) {
    const Eigen::Matrix3d r = pauli_transfer(e.u).bottomRightCorner<3, 3>();
    for (const auto& v : vertices) {
      bool found = false;
      for (const auto& w : vertices) found = found || (r * v - w).norm() < 1e-12;
      CHECK(found);
    }
  }
}

TEST_CASE("discrete27 matches its generating product") {
  const auto d27 = enumerate(RotationSetSpec::make(SetVariant::discrete27));
  const auto z3 = [](int k) { return rotation_z(2 * kPi * k / 3); };
  for (int m = 0; m < 3; ++m)
    for (int n = 0; n < 3; ++n)
      for (int p = 0; p < 3; ++p) {
        const Unitary u = sequence({z3(m), rotation_x(kPi / 2), z3(n), rotation_x(magic_angle()), z3(p)});
        CHECK(contains(d27, u.matrix()));
      }
  const auto d18b = enumerate(RotationSetSpec::make(SetVariant::discrete18b));
  for (int m = 0; m < 3; ++m)
    for (int n = 0; n < 2; ++n)
      for (int p = 0; p < 3; ++p) {
        const Unitary u = sequence(
            {z3(m), rotation_x(kPi / 2), rotation_z(kPi * n), rotation_x(magic_angle()), z3(p)});
        CHECK(contains(d18b, u.matrix()));
      }
}

TEST_CASE("realized weights sum to one") {
  for (const char* text : {"random-axis:quad:8", "euler:quad:6", "two-axis:quad:5", "axis120:quad:7",
                           "continuous:y:quad:9", "gradient-sequence:3:quad:4", "euler:mc:50:seed=1", "discrete18a"}) {
    CAPTURE(text);
    double total = 0.0;
    for (const auto& e : realize(RotationSetSpec::parse(text))) total += e.weight;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
  }
  CHECK(realize(RotationSetSpec::parse("euler:quad:6")).size() == 216);
  CHECK(realize(RotationSetSpec::parse("two-axis:quad:5")).size() == 25);
}

TEST_CASE("monte carlo realization is reproducible") {
  const auto a = realize(RotationSetSpec::parse("random-axis:mc:20:seed=3"));
  const auto b = realize(RotationSetSpec::parse("random-axis:mc:20:seed=3"));
  const auto c = realize(RotationSetSpec::parse("random-axis:mc:20:seed=4"));
  REQUIRE(a.size() == 20);
  bool differs = false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK((a[k].u - b[k].u).norm() == 0.0);
    differs = differs || (a[k].u - c[k].u).norm() > 0.0;
  }
  CHECK(differs);
}

TEST_CASE("sampled axis120 elements rotate by 120 degrees") {
  std::mt19937_64 rng(8);
  const RotationSetSpec s = RotationSetSpec::make(SetVariant::axis120);
  for (int k = 0; k < 20; ++k) {
    const Mat2 u = sample(s, rng).matrix();
    // |Tr U| = 2 |cos(xi/2)|
    CHECK(std::abs(u.trace()) == doctest::Approx(2 * std::abs(std::cos(kPi / 3))));
  }
}

TEST_CASE("gauss-legendre rule") {
  const GaussLegendre g2 = gauss_legendre(2);
  std::multiset<double> nodes(g2.nodes.begin(), g2.nodes.end());
  CHECK(*nodes.begin() == doctest::Approx(-1 / std::sqrt(3.0)));
  CHECK(*nodes.rbegin() == doctest::Approx(1 / std::sqrt(3.0)));
  const GaussLegendre g = gauss_legendre(10);
  for (int p = 0; p < 20; ++p) {
    double sum = 0.0;
    for (std::size_t k = 0; k < g.nodes.size(); ++k) sum += g.weights[k] * std::pow(g.nodes[k], p);
    const double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
    CHECK(sum == doctest::Approx(exact).epsilon(1e-13));
  }
}
