#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

#include "qps/gf.hpp"

namespace qps {

using Complex = std::complex<double>;
using DenseOperator = Eigen::MatrixXcd;

/// Stereographic Bloch-sphere coordinate: xi = cot(theta/2) e^{-i phi}.
struct BlochPoint {
  double theta = 0.0;  // polar angle in [0, pi]
  double phi = 0.0;    // azimuth in [0, 2*pi)
};

Complex bloch_to_xi(const BlochPoint& point);

/// The two xi values whose coherent states are Fourier eigenstates.
double xi_plus();   //  sqrt(2) - 1
double xi_minus();  // -sqrt(2) - 1

/// 2^n complex amplitudes over GF(2^n), indexed in canonical order
/// (amplitude i belongs to field->from_canonical_index(i), i.e. the
/// self-dual coordinates of the element are the bits of i, qubit 1 = LSB).
class StateVector {
 public:
  StateVector(FieldPtr field, Eigen::VectorXcd amplitudes);

  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  int n() const { return field_->degree(); }
  Eigen::Index dim() const { return amps_.size(); }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  Complex amplitude(FieldElement gamma) const {
    return amps_(field_->canonical_index(gamma));
  }
  double norm() const { return amps_.norm(); }

 private:
  FieldPtr field_;
  Eigen::VectorXcd amps_;
};

/// Number of nonzero expansion coefficients of gamma in a self-dual basis.
/// Rejects a non-self-dual basis: the tensor decomposition below needs the
/// coordinate bits to act as qubit labels.
int hamming_h(const Field& field, FieldElement gamma, const Basis& sd_basis);
int hamming_h(const Field& field, FieldElement gamma);

/// Symmetric state with equal weight on every element of coordinate
/// weight k; amplitudes sqrt(k!(n-k)!/n!).
StateVector dicke_state(FieldPtr field, int k);

/// SU(2) coherent state: amplitudes xi^h(gamma) / (1+|xi|^2)^(n/2).
StateVector su2_coherent(FieldPtr field, Complex xi);

/// Coherent states at xi = +-sqrt(2) - 1; eigenstates of the finite
/// Fourier operator with eigenvalue +1 and (-1)^n respectively.
StateVector coherent_plus(FieldPtr field);
StateVector coherent_minus(FieldPtr field);

/// Permutation matrix relabeling kets from the coordinates of `from` to the
/// coordinates of `to`: column index_from(mu) maps onto row index_to(mu).
DenseOperator basis_change_permutation(const Field& field, const Basis& from,
                                       const Basis& to);

StateVector apply_operator(const DenseOperator& op, const StateVector& state);

/// Applies the finite Fourier operator through its single-qubit
/// factorization (a 1/sqrt(2)-scaled Walsh-Hadamard butterfly); works for
/// any degree, no dense matrix involved.
StateVector apply_fourier(const StateVector& state);

struct FourierEigenReport {
  int sign = +1;        // nearest eigenvalue sign
  double overlap = 0;   // Re <psi|F|psi>
  double residual = 0;  // || F|psi> - sign |psi> ||
};
FourierEigenReport fourier_eigen_report(const StateVector& state);

/// Rank-1 peeling of successive qubit reshapes. Returns one normalized
/// 2-vector per qubit (qubit 1 first, carrying the global phase) when the
/// input factorizes, std::nullopt otherwise.
std::optional<std::vector<Eigen::Vector2cd>> tensor_factors(
    const Eigen::VectorXcd& amplitudes, double tol = 1e-10);
std::optional<std::vector<Eigen::Vector2cd>> tensor_factors(
    const StateVector& state, double tol = 1e-10);

bool is_unitary(const DenseOperator& op, double tol = 1e-12);
bool is_hermitian(const DenseOperator& op, double tol = 1e-12);

/// Exact binomial coefficient for the small n used here.
std::uint64_t binomial(int n, int k);

/// Throws when a dense 2^n x 2^n object would exceed the operator cap.
void check_dense_cap(const Field& field);

}  // namespace qps
