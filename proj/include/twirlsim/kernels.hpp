#pragma once

// Data-parallel inner loops. Every kernel has a plain serial version in
// `reference` that is kept for testing and benchmarking.
//
// Parallel reductions are deterministic: terms are summed serially inside
// fixed-size blocks, and block sums are added in block order, so the result
// does not depend on the number of threads.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "twirlsim/core.hpp"
#include "twirlsim/rotation_set.hpp"

namespace twirlsim {

using Ptm1 = Eigen::Matrix4d;
using Ptm2 = Eigen::Matrix<double, 16, 16>;

/// One member of a spatial ensemble.
struct EnsembleMember {
  double weight = 0.0;
  Mat4 rho = Mat4::Zero();
};

namespace kernels {

inline constexpr std::size_t kReductionBlock = 256;

/// Number of OpenMP threads in use (1 when built without OpenMP).
int thread_count();

/// sum_k w_k U_k rho U_k^dag
Mat2 conjugation_sum(std::span<const WeightedUnitary> elements, const Mat2& rho);
/// sum_k w_k (U_k (x) U_k) rho (U_k (x) U_k)^dag
Mat4 bilateral_conjugation_sum(std::span<const WeightedUnitary> elements, const Mat4& rho);

/// sum_k w_k R(U_k), R the single-qubit Pauli transfer matrix.
Ptm1 ptm_sum(std::span<const WeightedUnitary> elements);
/// sum_k w_k R(U_k) (x) R(U_k): the bilateral channel over the basis
/// (sigma_a (x) sigma_b)/2 with index 4a + b.
Ptm2 bilateral_ptm_sum(std::span<const WeightedUnitary> elements);

/// rho -> u rho u^dag on every member.
void conjugate_members(std::span<EnsembleMember> members, const Mat4& u);
/// rho_ij -> rho_ij exp(-i (E_i - E_j) t) on every member (diagonal H).
void evolve_members(std::span<EnsembleMember> members, const Eigen::Vector4d& energies, double t);
/// Splits every member into one copy per rotation, weights divided evenly.
/// Output order: member-major, rotation-minor.
std::vector<EnsembleMember> split_members(std::span<const EnsembleMember> members,
                                          std::span<const Mat4> rotations);
/// sum_k w_k rho_k
Mat4 weighted_mean(std::span<const EnsembleMember> members);

/// s_k = Tr(rho(t_k) O) with t_k = k dwell under the diagonal Hamiltonian.
std::vector<std::complex<double>> fid(const Mat4& rho, const Eigen::Vector4d& energies,
                                      const Mat4& observable, std::size_t points, double dwell);

namespace reference {

Mat2 conjugation_sum(std::span<const WeightedUnitary> elements, const Mat2& rho);
Mat4 bilateral_conjugation_sum(std::span<const WeightedUnitary> elements, const Mat4& rho);
Ptm1 ptm_sum(std::span<const WeightedUnitary> elements);
/// Builds the channel column by column from images of the basis operators,
/// without using the Kronecker structure.
Ptm2 bilateral_ptm_sum(std::span<const WeightedUnitary> elements);
void conjugate_members(std::span<EnsembleMember> members, const Mat4& u);
/// Uses the full propagator matrix exp(-i H t) instead of phase factors.
void evolve_members(std::span<EnsembleMember> members, const Eigen::Vector4d& energies, double t);
std::vector<EnsembleMember> split_members(std::span<const EnsembleMember> members,
                                          std::span<const Mat4> rotations);
Mat4 weighted_mean(std::span<const EnsembleMember> members);
std::vector<std::complex<double>> fid(const Mat4& rho, const Eigen::Vector4d& energies,
                                      const Mat4& observable, std::size_t points, double dwell);

}  // namespace reference
}  // namespace kernels
}  // namespace twirlsim
