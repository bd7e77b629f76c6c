#pragma once

#include <cstdint>
#include <vector>

#include "qps/gf.hpp"
#include "qps/hilbert.hpp"

namespace qps {

// Label pair (alpha, beta) of Z_alpha X_beta and of phase-space points.
struct PhasePoint {
  FieldElement alpha;
  FieldElement beta;
};

// Phase rule phi(alpha, beta) = i^w, where w = sum_k a_k b_k is an integer
// computed over the field's self-dual coordinates (the canonical index
// bits).  Then phi^2 = chi(alpha*beta), every displacement operator is
// Hermitian, and displacements factor per qubit.
//
// exponent_offset is a deliberate fault hook for the verification suite:
// offset 1 yields i^(w+1), which keeps displacements unitary but destroys
// their Hermiticity (D(0,0) becomes i*I).  A plain sign flip of phi would
// not do: -D and (-i)^w D stay Hermitian.
struct PhaseConvention {
  int exponent_offset = 0;

  bool broken() const { return exponent_offset != 0; }
  const char* id() const { return broken() ? "i^(w+1)" : "i^w"; }
};

// w = number of coordinate slots where alpha and beta are both 1.
int phase_exponent(const Field& field, FieldElement alpha, FieldElement beta);

Complex phase_phi(const Field& field, PhasePoint point,
                  PhaseConvention conv = {});

// Z_beta = sum_alpha chi(alpha*beta) |alpha><alpha|
DenseOperator z_op(const Field& field, FieldElement beta);

// X_beta = sum_alpha |alpha+beta><alpha|
DenseOperator x_op(const Field& field, FieldElement beta);

// F = 2^(-n/2) sum_{mu,nu} chi(mu*nu) |mu><nu|; real, symmetric, F^2 = I.
DenseOperator fourier_op(const Field& field);

// D(alpha, beta) = phi(alpha, beta) Z_alpha X_beta
DenseOperator displacement(const Field& field, PhasePoint point,
                           PhaseConvention conv = {});

// S_lambda = sum_kappa |kappa><lambda*kappa|, lambda != 0.
// perm[i] is the canonical source index feeding output index i, so applying
// the squeeze is out[i] = in[perm[i]].
std::vector<std::uint32_t> squeeze_permutation(const Field& field,
                                               FieldElement lambda);
DenseOperator squeeze_op(const Field& field, FieldElement lambda);
StateVector apply_squeeze(const StateVector& state, FieldElement lambda);

// Kronecker helpers; kron_all takes per-qubit factors with qubit 1 the
// least significant canonical-index bit.
DenseOperator kron(const DenseOperator& a, const DenseOperator& b);
DenseOperator kron_all(const std::vector<Eigen::Matrix2cd>& factors);

namespace single_qubit {

Eigen::Matrix2cd sigma_z();  // diag(1, -1): the n=1 z_op
Eigen::Matrix2cd sigma_x();
Eigen::Matrix2cd displacement(int a, int b, PhaseConvention conv = {});

}  // namespace single_qubit

}  // namespace qps
