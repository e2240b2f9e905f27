#include "twirlsim/kernels.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace twirlsim::kernels {

namespace {

using Index = std::ptrdiff_t;

template <class T, class Term>
T block_reduce(std::size_t n, const T& zero, Term&& term) {
  const std::size_t blocks = (n + kReductionBlock - 1) / kReductionBlock;
  std::vector<T> partial(blocks, zero);
#pragma omp parallel for schedule(static)
  for (Index b = 0; b < static_cast<Index>(blocks); ++b) {
    T acc = zero;
    const std::size_t end = std::min(n, (static_cast<std::size_t>(b) + 1) * kReductionBlock);
    for (std::size_t i = static_cast<std::size_t>(b) * kReductionBlock; i < end; ++i) acc += term(i);
    partial[b] = acc;
  }
  T total = zero;
  for (const T& p : partial) total += p;
  return total;
}

Eigen::Vector4cd phases(const Eigen::Vector4d& energies, double t) {
  Eigen::Vector4cd p;
  for (int i = 0; i < 4; ++i) p[i] = std::polar(1.0, -energies[i] * t);
  return p;
}

Ptm2 kron(const Ptm1& a, const Ptm1& b) {
  Ptm2 out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.block<4, 4>(4 * i, 4 * j) = a(i, j) * b;
  return out;
}

std::array<Mat4, 16> two_qubit_pauli_basis() {
  std::array<Mat4, 16> basis;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) basis[4 * a + b] = 0.5 * tensor(pauli(a), pauli(b));
  return basis;
}

}  // namespace

int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

Mat2 conjugation_sum(std::span<const WeightedUnitary> elements, const Mat2& rho) {
  return block_reduce<Mat2>(elements.size(), Mat2::Zero(), [&](std::size_t i) -> Mat2 {
    const auto& e = elements[i];
    return e.weight * (e.u * rho * e.u.adjoint());
  });
}

Mat4 bilateral_conjugation_sum(std::span<const WeightedUnitary> elements, const Mat4& rho) {
  return block_reduce<Mat4>(elements.size(), Mat4::Zero(), [&](std::size_t i) -> Mat4 {
    const auto& e = elements[i];
    const Mat4 u = tensor(e.u, e.u);
    return e.weight * (u * rho * u.adjoint());
  });
}

Ptm1 ptm_sum(std::span<const WeightedUnitary> elements) {
  return block_reduce<Ptm1>(elements.size(), Ptm1::Zero(), [&](std::size_t i) -> Ptm1 {
    return elements[i].weight * pauli_transfer(elements[i].u);
  });
}

Ptm2 bilateral_ptm_sum(std::span<const WeightedUnitary> elements) {
  return block_reduce<Ptm2>(elements.size(), Ptm2::Zero(), [&](std::size_t i) -> Ptm2 {
    const Ptm1 r = pauli_transfer(elements[i].u);
    return elements[i].weight * kron(r, r);
  });
}

void conjugate_members(std::span<EnsembleMember> members, const Mat4& u) {
  const Mat4 ud = u.adjoint();
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < static_cast<Index>(members.size()); ++i)
    members[i].rho = u * members[i].rho * ud;
}

void evolve_members(std::span<EnsembleMember> members, const Eigen::Vector4d& energies, double t) {
  const Eigen::Vector4cd p = phases(energies, t);
  const Mat4 factor = p * p.adjoint();
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < static_cast<Index>(members.size()); ++i)
    members[i].rho = members[i].rho.cwiseProduct(factor);
}

std::vector<EnsembleMember> split_members(std::span<const EnsembleMember> members,
                                          std::span<const Mat4> rotations) {
  const std::size_t r = rotations.size();
  std::vector<EnsembleMember> out(members.size() * r);
  std::vector<Mat4> adjoints(r);
  for (std::size_t k = 0; k < r; ++k) adjoints[k] = rotations[k].adjoint();
#pragma omp parallel for schedule(static)
  for (Index idx = 0; idx < static_cast<Index>(out.size()); ++idx) {
    const std::size_t m = static_cast<std::size_t>(idx) / r;
    const std::size_t k = static_cast<std::size_t>(idx) % r;
    out[idx].weight = members[m].weight / static_cast<double>(r);
    out[idx].rho = rotations[k] * members[m].rho * adjoints[k];
  }
  return out;
}

Mat4 weighted_mean(std::span<const EnsembleMember> members) {
  return block_reduce<Mat4>(members.size(), Mat4::Zero(), [&](std::size_t i) -> Mat4 {
    return members[i].weight * members[i].rho;
  });
}

std::vector<std::complex<double>> fid(const Mat4& rho, const Eigen::Vector4d& energies,
                                      const Mat4& observable, std::size_t points, double dwell) {
  // Tr(rho(t) O) = sum_ij rho_ij O_ji exp(-i (E_i - E_j) t)
  struct Term {
    cd amplitude;
    double omega;
  };
  std::vector<Term> terms;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const cd a = rho(i, j) * observable(j, i);
      if (a != cd(0.0)) terms.push_back({a, energies[i] - energies[j]});
    }
  std::vector<std::complex<double>> out(points);
#pragma omp parallel for schedule(static)
  for (Index k = 0; k < static_cast<Index>(points); ++k) {
    const double t = static_cast<double>(k) * dwell;
    cd s = 0.0;
    for (const Term& term : terms) s += term.amplitude * std::polar(1.0, -term.omega * t);
    out[k] = s;
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace reference {

Mat2 conjugation_sum(std::span<const WeightedUnitary> elements, const Mat2& rho) {
  Mat2 acc = Mat2::Zero();
  for (const auto& e : elements) acc += e.weight * (e.u * rho * e.u.adjoint());
  return acc;
}

Mat4 bilateral_conjugation_sum(std::span<const WeightedUnitary> elements, const Mat4& rho) {
  Mat4 acc = Mat4::Zero();
  for (const auto& e : elements) {
    const Mat4 u = tensor(e.u, e.u);
    acc += e.weight * (u * rho * u.adjoint());
  }
  return acc;
}

Ptm1 ptm_sum(std::span<const WeightedUnitary> elements) {
  Ptm1 acc = Ptm1::Zero();
  for (const auto& e : elements) acc += e.weight * pauli_transfer(e.u);
  return acc;
}

Ptm2 bilateral_ptm_sum(std::span<const WeightedUnitary> elements) {
  const auto basis = two_qubit_pauli_basis();
  Ptm2 out;
  for (int k = 0; k < 16; ++k) {
    const Mat4 image = bilateral_conjugation_sum(elements, basis[k]);
    for (int j = 0; j < 16; ++j) out(j, k) = (basis[j] * image).trace().real();
  }
  return out;
}

void conjugate_members(std::span<EnsembleMember> members, const Mat4& u) {
  for (auto& m : members) m.rho = u * m.rho * u.adjoint();
}

void evolve_members(std::span<EnsembleMember> members, const Eigen::Vector4d& energies, double t) {
  Mat4 u = Mat4::Zero();
  for (int i = 0; i < 4; ++i) u(i, i) = std::exp(cd(0.0, -energies[i] * t));
  for (auto& m : members) m.rho = u * m.rho * u.adjoint();
}

std::vector<EnsembleMember> split_members(std::span<const EnsembleMember> members,
                                          std::span<const Mat4> rotations) {
  std::vector<EnsembleMember> out;
  out.reserve(members.size() * rotations.size());
  for (const auto& m : members)
    for (const Mat4& r : rotations)
      out.push_back({m.weight / static_cast<double>(rotations.size()), r * m.rho * r.adjoint()});
  return out;
}

Mat4 weighted_mean(std::span<const EnsembleMember> members) {
  Mat4 acc = Mat4::Zero();
  for (const auto& m : members) acc += m.weight * m.rho;
  return acc;
}

std::vector<std::complex<double>> fid(const Mat4& rho, const Eigen::Vector4d& energies,
                                      const Mat4& observable, std::size_t points, double dwell) {
  std::vector<std::complex<double>> out(points);
  for (std::size_t k = 0; k < points; ++k) {
    EnsembleMember m{1.0, rho};
    evolve_members(std::span(&m, 1), energies, static_cast<double>(k) * dwell);
    out[k] = (m.rho * observable).trace();
  }
  return out;
}

}  // namespace reference
}  // namespace twirlsim::kernels
