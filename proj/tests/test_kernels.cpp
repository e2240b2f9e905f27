#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "doctest.h"
#include "twirlsim/kernels.hpp"
#include "twirlsim/rotation_set.hpp"
#include "twirlsim/rotations.hpp"

using namespace twirlsim;

namespace {

std::vector<WeightedUnitary> random_elements(std::size_t n, std::uint64_t seed) {
  return realize(RotationSetSpec::make(SetVariant::euler).with_monte_carlo(n, seed));
}

std::vector<EnsembleMember> random_members(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> w(0.0, 1.0);
  std::vector<EnsembleMember> out(n);
  for (auto& m : out) m = {w(rng), random_deviation(rng)};
  return out;
}

double max_diff(std::span<const EnsembleMember> a, std::span<const EnsembleMember> b) {
  REQUIRE(a.size() == b.size());
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    d = std::max(d, std::abs(a[k].weight - b[k].weight));
    d = std::max(d, (a[k].rho - b[k].rho).cwiseAbs().maxCoeff());
  }
  return d;
}

}  // namespace

TEST_CASE("conjugation sums agree with the reference") {
  const auto el = random_elements(1000, 2);
  std::mt19937_64 rng(1);
  const Mat2 rho2 = from_bloch({0.1, 0.5, -0.3}).matrix();
  const Mat4 rho4 = random_state<4>(rng).matrix();
  CHECK((kernels::conjugation_sum(el, rho2) - kernels::reference::conjugation_sum(el, rho2)).cwiseAbs().maxCoeff() <
        1e-14);
  CHECK((kernels::bilateral_conjugation_sum(el, rho4) - kernels::reference::bilateral_conjugation_sum(el, rho4))
            .cwiseAbs()
            .maxCoeff() < 1e-14);
}

TEST_CASE("transfer-matrix sums agree with the reference") {
  const auto el = random_elements(700, 3);
  CHECK((kernels::ptm_sum(el) - kernels::reference::ptm_sum(el)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((kernels::bilateral_ptm_sum(el) - kernels::reference::bilateral_ptm_sum(el)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("member kernels agree with the reference") {
  const auto members = random_members(600, 4);
  const Mat4 u = bilateral(euler_unitary({0.3, 1.0, 2.0}));

  auto a = members;
  auto b = members;
  kernels::conjugate_members(a, u);
  kernels::reference::conjugate_members(b, u);
  CHECK(max_diff(a, b) < 1e-14);

  const Eigen::Vector4d energies(3.0e3, -1.2e3, 2.2e3, -4.0e3);
  a = members;
  b = members;
  kernels::evolve_members(a, energies, 1.7e-3);
  kernels::reference::evolve_members(b, energies, 1.7e-3);
  CHECK(max_diff(a, b) < 1e-12);

  std::vector<Mat4> rotations;
  for (int k = 0; k < 5; ++k) rotations.push_back(bilateral(rotation_z(2 * kPi * k / 5)));
  const auto sa = kernels::split_members(members, rotations);
  const auto sb = kernels::reference::split_members(members, rotations);
  REQUIRE(sa.size() == members.size() * 5);
  CHECK(max_diff(sa, sb) < 1e-14);
  // member-major, rotation-minor
  CHECK(sa[7].weight == doctest::Approx(members[1].weight / 5));
  CHECK((sa[7].rho - rotations[2] * members[1].rho * rotations[2].adjoint()).cwiseAbs().maxCoeff() < 1e-14);

  CHECK((kernels::weighted_mean(members) - kernels::reference::weighted_mean(members)).cwiseAbs().maxCoeff() <
        1e-12);
}

TEST_CASE("fid kernel agrees with the reference") {
  std::mt19937_64 rng(6);
  const Mat4 rho = random_deviation(rng);
  const Mat4 obs = random_deviation(rng);
  const Eigen::Vector4d energies(2.0e3, -1.0e3, 1.5e3, -2.5e3);
  const auto a = kernels::fid(rho, energies, obs, 1000, 2.7e-4);
  const auto b = kernels::reference::fid(rho, energies, obs, 1000, 2.7e-4);
  REQUIRE(a.size() == 1000);
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  CHECK(d < 1e-10);
  CHECK(std::abs(a[0] - (rho * obs).trace()) < 1e-14);
}

TEST_CASE("reductions are bitwise reproducible") {
  const auto el = random_elements(5000, 9);
  const auto members = random_members(3000, 10);
  const Ptm2 first = kernels::bilateral_ptm_sum(el);
  const Mat4 mean = kernels::weighted_mean(members);
#ifdef _OPENMP
  const int saved = omp_get_max_threads();
  for (int threads : {1, 2, 3, 8}) {
    omp_set_num_threads(threads);
#else
  {
#endif
    CHECK((kernels::bilateral_ptm_sum(el) - first).cwiseAbs().maxCoeff() == 0.0);
    CHECK((kernels::weighted_mean(members) - mean).cwiseAbs().maxCoeff() == 0.0);
  }
#ifdef _OPENMP
  omp_set_num_threads(saved);
#endif
  CHECK(kernels::thread_count() >= 1);
}

TEST_CASE("empty inputs") {
  const std::vector<WeightedUnitary> none;
  CHECK(kernels::ptm_sum(none).cwiseAbs().maxCoeff() == 0.0);
  const std::vector<EnsembleMember> nobody;
  CHECK(kernels::weighted_mean(nobody).cwiseAbs().maxCoeff() == 0.0);
}
