#include <random>

#include "doctest.h"
#include "twirlsim/core.hpp"

using namespace twirlsim;

namespace {

Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) m(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return m;
}

Vec4 ket(cd a, cd b, cd c, cd d) {
  Vec4 v;
  v << a, b, c, d;
  return v;
}

}  // namespace

TEST_CASE("pauli matrices and tensor product") {
  const Mat2 x = pauli(PauliAxis::x);
  const Mat2 y = pauli(PauliAxis::y);
  const Mat2 z = pauli(PauliAxis::z);
  const cd i(0, 1);
  CHECK((x * y - i * z).norm() < 1e-15);
  CHECK((pauli(0) - Mat2::Identity()).norm() == 0.0);
  CHECK((tensor(x, z) - kron(x, z)).norm() == 0.0);
  CHECK((tensor(y, x) - kron(y, x)).norm() == 0.0);
}

TEST_CASE("bell states in the computational basis") {
  const double s = 1.0 / std::sqrt(2.0);
  CHECK((bell_state(BellState::psi_minus) - ket(0, s, -s, 0)).norm() < 1e-15);
  CHECK((bell_state(BellState::psi_plus) - ket(0, s, s, 0)).norm() < 1e-15);
  CHECK((bell_state(BellState::phi_minus) - ket(s, 0, 0, -s)).norm() < 1e-15);
  CHECK((bell_state(BellState::phi_plus) - ket(s, 0, 0, s)).norm() < 1e-15);
  const Mat4 b = bell_basis();
  CHECK((b.adjoint() * b - Mat4::Identity()).norm() < 1e-14);
  CHECK((b.col(0) - bell_state(BellState::psi_minus)).norm() == 0.0);
  CHECK((b.col(3) - bell_state(BellState::phi_plus)).norm() == 0.0);
}

TEST_CASE("density matrix validation") {
  Mat4 m = Mat4::Identity() / 4.0;
  CHECK_NOTHROW(Density4(m, StateKind::state));
  CHECK_THROWS_AS(Density4(m, StateKind::deviation), DomainError);

  Mat4 bad_trace = Mat4::Identity() / 2.0;
  CHECK_THROWS_AS(Density4(bad_trace, StateKind::state), DomainError);

  Mat4 non_hermitian = m;
  non_hermitian(0, 1) = 0.1;
  CHECK_THROWS_AS(Density4(non_hermitian, StateKind::state), DomainError);

  Mat4 negative = Mat4::Zero();
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  CHECK_THROWS_AS(Density4(negative, StateKind::state), DomainError);
  CHECK_NOTHROW(Density4(negative - Mat4::Identity() / 4.0, StateKind::deviation));

  const Mat4 dev = tensor(pauli(3), pauli(0)) / 2.0;
  const Density4 d(dev, StateKind::deviation);
  CHECK(d.kind() == StateKind::deviation);
  CHECK(d.trace_residual() == 0.0);
}

TEST_CASE("random states are valid density matrices") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 1000; ++k) {
    const Density4 rho = random_state<4>(rng);
    CHECK(rho.hermitian_residual() < 1e-12);
    CHECK(rho.trace_residual() < 1e-12);
    CHECK(rho.min_eigenvalue() > -1e-12);
  }
  const Density2 r2 = random_state<2>(rng);
  CHECK(bloch_vector(r2).norm() <= 1.0 + 1e-12);
}

TEST_CASE("bloch vector round trip") {
  const BlochVector r{0.3, -0.4, 0.5};
  const Density2 rho = from_bloch(r);
  const Mat2 expected = (pauli(0) + r.x * pauli(1) + r.y * pauli(2) + r.z * pauli(3)) / 2.0;
  CHECK((rho.matrix() - expected).norm() < 1e-15);
  const BlochVector back = bloch_vector(rho);
  CHECK(back.x == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(back.y == doctest::Approx(-0.4).epsilon(1e-14));
  CHECK(back.z == doctest::Approx(0.5).epsilon(1e-14));
  CHECK_THROWS_AS(from_bloch({1.0, 1.0, 0.0}), DomainError);
}

TEST_CASE("werner states") {
  CHECK_THROWS_AS(WernerParams::make(-0.5), DomainError);
  CHECK_THROWS_AS(WernerParams::make(1.01), DomainError);
  for (double eps : {-1.0 / 3.0, 0.0, 0.25, 1.0}) {
    const Density4 w = werner(WernerParams::make(eps));
    const Mat4 expected =
        eps * projector(bell_state(BellState::psi_minus)) + (1.0 - eps) / 4.0 * Mat4::Identity();
    CHECK(max_abs_diff(w.matrix(), expected) < 1e-15);
    CHECK(singlet_fidelity(w) == doctest::Approx((1.0 + 3.0 * eps) / 4.0).epsilon(1e-14));
    const auto found = is_werner(w, 1e-12);
    REQUIRE(found);
    CHECK(found->epsilon == doctest::Approx(eps).epsilon(1e-13));
  }
  const Density4 product(projector(ket(1, 0, 0, 0)), StateKind::state);
  CHECK_FALSE(is_werner(product, 1e-9));
}

TEST_CASE("bell diagonal populations") {
  const Density4 w = werner(WernerParams::make(0.6));
  const BellDiagonal b = bell_diagonal_populations(w);
  CHECK(b.psi_minus() == doctest::Approx(0.7));
  CHECK(b.psi_plus() == doctest::Approx(0.1));
  CHECK(b.phi_minus() == doctest::Approx(0.1));
  CHECK(b.phi_plus() == doctest::Approx(0.1));
  CHECK(b.max_off_diagonal < 1e-15);

  const Density4 up(projector(ket(1, 0, 0, 0)), StateKind::state);
  const BellDiagonal u = bell_diagonal_populations(up);
  CHECK(u.phi_plus() == doctest::Approx(0.5));
  CHECK(u.phi_minus() == doctest::Approx(0.5));
  CHECK(u.max_off_diagonal == doctest::Approx(0.5));
}

TEST_CASE("product operators match spin operators") {
  const Mat2 one = Mat2::Identity();
  CHECK((product_operator(ProductOp::Ix) - kron(pauli(1) / 2.0, one)).norm() < 1e-15);
  CHECK((product_operator(ProductOp::Sy) - kron(one, pauli(2) / 2.0)).norm() < 1e-15);
  CHECK((product_operator(ProductOp::IxSz) - 2.0 * kron(pauli(1) / 2.0, pauli(3) / 2.0)).norm() < 1e-15);
  CHECK((product_operator(ProductOp::IzSz) - 2.0 * kron(pauli(3) / 2.0, pauli(3) / 2.0)).norm() < 1e-15);

  for (int j = 0; j < kProductOpCount; ++j)
    for (int k = 0; k < kProductOpCount; ++k) {
      const cd t = (product_operator(static_cast<ProductOp>(j)) * product_operator(static_cast<ProductOp>(k))).trace();
      CHECK(std::abs(t - cd(j == k ? 1.0 : 0.0)) < 1e-15);
    }
}

TEST_CASE("product operator names round trip") {
  CHECK(product_op_name(ProductOp::IxSz) == "2IxSz");
  CHECK(product_op_name(ProductOp::Iz) == "Iz");
  for (int k = 0; k < kProductOpCount; ++k) {
    const auto op = static_cast<ProductOp>(k);
    CHECK(product_op_from_name(product_op_name(op)) == op);
  }
  CHECK_FALSE(product_op_from_name("2IqSz"));
}

TEST_CASE("product operator decomposition") {
  const Mat4 thermal = product_operator(ProductOp::Iz) + product_operator(ProductOp::Sz);
  const auto c = product_operator_decomposition(Density4(thermal, StateKind::deviation));
  CHECK(coefficient(c, ProductOp::Iz) == doctest::Approx(1.0));
  CHECK(coefficient(c, ProductOp::Sz) == doctest::Approx(1.0));
  CHECK(coefficient(c, ProductOp::IxSx) == doctest::Approx(0.0));

  // |psi-><psi-| - 1/4 = -(2IxSx + 2IySy + 2IzSz)/2
  const Mat4 singlet = projector(bell_state(BellState::psi_minus)) - Mat4::Identity() / 4.0;
  const auto s = product_operator_decomposition(singlet);
  CHECK(coefficient(s, ProductOp::IxSx) == doctest::Approx(-0.5));
  CHECK(coefficient(s, ProductOp::IySy) == doctest::Approx(-0.5));
  CHECK(coefficient(s, ProductOp::IzSz) == doctest::Approx(-0.5));
  CHECK(coefficient(s, ProductOp::Iz) == doctest::Approx(0.0));

  CHECK_THROWS_AS(product_operator_decomposition(werner(WernerParams::make(0.5))), DomainError);

  std::mt19937_64 rng(5);
  for (int k = 0; k < 100; ++k) {
    const Mat4 d = random_deviation(rng);
    CHECK(max_abs_diff(product_operator_sum(product_operator_decomposition(d)), d) < 1e-14);
  }
}

TEST_CASE("trace distance and fidelity") {
  const Density4 a(projector(bell_state(BellState::psi_minus)), StateKind::state);
  const Density4 b(projector(bell_state(BellState::phi_plus)), StateKind::state);
  CHECK(trace_distance(a, b) == doctest::Approx(1.0));
  CHECK(trace_distance(a, a) == doctest::Approx(0.0));
  CHECK(fidelity(a, b) == doctest::Approx(0.0));

  const Density4 w = werner(WernerParams::make(0.2));
  CHECK(fidelity(a, w) == doctest::Approx(singlet_fidelity(w)).epsilon(1e-10));

  std::mt19937_64 rng(3);
  for (int k = 0; k < 50; ++k) {
    const Density4 r = random_state<4>(rng);
    const Density4 s = random_state<4>(rng);
    CHECK(fidelity(r, s) == doctest::Approx(fidelity(s, r)).epsilon(1e-8));
    CHECK(fidelity(r, s) <= 1.0 + 1e-10);
    CHECK(fidelity(r, r) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(trace_distance(r, s) <= 1.0 + 1e-12);
  }
}

TEST_CASE("werner projection of a general state") {
  std::mt19937_64 rng(9);
  const Density4 r = random_state<4>(rng);
  const double f = singlet_fidelity(r);
  const Mat4 p = werner_projection(r.matrix(), StateKind::state);
  CHECK(max_abs_diff(p, werner(WernerParams::make((4.0 * f - 1.0) / 3.0)).matrix()) < 1e-14);

  const Mat4 d = random_deviation(rng);
  const Mat4 pd = werner_projection(d, StateKind::deviation);
  CHECK(std::abs(pd.trace()) < 1e-14);
  CHECK(singlet_fidelity(pd) == doctest::Approx(singlet_fidelity(d)).epsilon(1e-13));
}
