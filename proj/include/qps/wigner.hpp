#pragma once

#include <cstdint>
#include <vector>

#include "qps/gf.hpp"
#include "qps/hilbert.hpp"
#include "qps/pauli.hpp"

namespace qps {

enum class Normalization { Raw, UnitSum };

const char* normalization_tag(Normalization norm);  // "raw" | "unit-sum"

/// Discrete Wigner function on the 2^n x 2^n phase-space grid.
/// values(i, j) = W(alpha, beta) with alpha = from_canonical_index(i) the
/// row and beta = from_canonical_index(j) the column.
///
/// Raw normalization keeps the kernel equations literal, which makes the
/// grid of a trace-one input sum to 2^n; unit-sum divides by 2^n.
struct WignerGrid {
  FieldPtr field;
  Eigen::MatrixXd values;
  PhaseConvention convention;
  Normalization normalization = Normalization::Raw;

  double sum() const { return values.sum(); }
};

/// Hermitian phase-space kernel, the literal definition sum
///   Delta(alpha, beta) = 2^(-n) sum_{mu,nu} chi(alpha nu + beta mu) D(mu, nu)
/// (in characteristic 2 the textbook chi(alpha nu - beta mu) is the same
/// thing).  Satisfies Tr Delta = 1 and sum over all points = 2^n I.
DenseOperator kernel(const Field& field, PhasePoint point,
                     PhaseConvention conv = {});

/// All 4^n kernels, indexed i_alpha * 2^n + i_beta.  Shares one displacement
/// table across points; meant for exhaustive small-degree sweeps (n <= 4).
struct KernelCache {
  FieldPtr field;
  PhaseConvention convention;
  std::vector<DenseOperator> kernels;

  const DenseOperator& at(std::uint32_t i_alpha, std::uint32_t i_beta) const {
    return kernels[(static_cast<std::size_t>(i_alpha) << field->degree()) +
                   i_beta];
  }
};
KernelCache build_kernel_cache(FieldPtr field, PhaseConvention conv = {});

/// W(alpha, beta) = Tr[rho Delta(alpha, beta)] for a normalized pure state
/// or a trace-one density matrix, evaluated through the displacement moment
/// table and a two-axis Walsh transform (no dense kernel is formed).
/// Rejects inputs whose norm/trace strays from 1 by more than 1e-10.
WignerGrid wigner_of(const StateVector& state, PhaseConvention conv = {},
                     Normalization norm = Normalization::Raw);
WignerGrid wigner_of(FieldPtr field, const DenseOperator& rho,
                     PhaseConvention conv = {},
                     Normalization norm = Normalization::Raw);

/// Closed-form coherent-state Wigner value: the triple sum
///   2^(-n) (1+|xi|^2)^(-n) sum_{mu,nu,gamma} xi^h(gamma)
///     conj(xi)^h(gamma+nu) chi(alpha nu + beta mu + mu nu + mu gamma)
///     phi(mu, nu)
/// evaluated literally, term by term.  Raw normalization.
double wigner_coherent_closed_form(const Field& field, Complex xi,
                                   PhasePoint point, PhaseConvention conv = {});

/// Marginals of the grid: over_alpha(j) = sum_i values(i, j) is the
/// position distribution at beta = from_canonical_index(j); over_beta(i)
/// sums the rows and gives the conjugate (Fourier-basis) distribution.
struct Marginals {
  Eigen::VectorXd over_alpha;
  Eigen::VectorXd over_beta;
};
Marginals marginals(const WignerGrid& grid);

/// Product-state fast path: W(alpha, beta) = prod_k w1(a_k, b_k; factor_k)
/// from per-qubit 2x2 kernel tables, O(n) per point.  `factors` follow the
/// tensor_factors convention (qubit 1 first);  the StateVector overload
/// certifies the input and rejects non-product states.
WignerGrid fast_product_path(FieldPtr field,
                             const std::vector<Eigen::Vector2cd>& factors,
                             PhaseConvention conv = {},
                             Normalization norm = Normalization::Raw);
WignerGrid fast_product_path(const StateVector& state,
                             PhaseConvention conv = {},
                             Normalization norm = Normalization::Raw,
                             double tol = 1e-10);

namespace single_qubit {

/// Delta_1(a, b) = (1/2) sum_{m,n in {0,1}} (-1)^(a n + b m) D_1(m, n).
Eigen::Matrix2cd kernel_factor(int a, int b, PhaseConvention conv = {});

}  // namespace single_qubit

}  // namespace qps
