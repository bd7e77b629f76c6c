#include "qps/hilbert.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qps {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Complex bloch_to_xi(const BlochPoint& point) {
  if (!(point.theta >= 0.0 && point.theta <= kPi)) {
    throw std::invalid_argument("theta must lie in [0, pi]");
  }
  if (point.theta == 0.0) {
    throw std::domain_error("theta = 0 is the pole: xi diverges");
  }
  const double c = 1.0 / std::tan(point.theta / 2.0);
  return c * std::exp(Complex(0.0, -point.phi));
}

double xi_plus() {
  static const double v = static_cast<double>(std::sqrt(2.0L) - 1.0L);
  return v;
}

double xi_minus() {
  static const double v = static_cast<double>(-std::sqrt(2.0L) - 1.0L);
  return v;
}

StateVector::StateVector(FieldPtr field, Eigen::VectorXcd amplitudes)
    : field_(std::move(field)), amps_(std::move(amplitudes)) {
  if (!field_) throw std::invalid_argument("state requires a field");
  if (amps_.size() != static_cast<Eigen::Index>(field_->order())) {
    throw std::invalid_argument("amplitude count must be 2^n");
  }
}

int hamming_h(const Field& field, FieldElement gamma, const Basis& sd_basis) {
  field.check_basis(sd_basis);
  if (!field.is_self_dual(sd_basis)) {
    throw std::invalid_argument("hamming weight h needs a self-dual basis");
  }
  return std::popcount(field.coordinate_mask(gamma, sd_basis));
}

int hamming_h(const Field& field, FieldElement gamma) {
  return std::popcount(field.canonical_index(gamma));
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t num = 1, den = 1;
  for (int i = 1; i <= k; ++i) {
    num *= static_cast<std::uint64_t>(n - k + i);
    den *= static_cast<std::uint64_t>(i);
  }
  return num / den;
}

StateVector dicke_state(FieldPtr field, int k) {
  const int n = field->degree();
  if (k < 0 || k > n) {
    throw std::out_of_range("dicke excitation k must lie in [0, n]");
  }
  const double amp = 1.0 / std::sqrt(static_cast<double>(binomial(n, k)));
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(field->order());
  for (std::uint32_t i = 0; i < field->order(); ++i) {
    if (std::popcount(i) == k) amps(i) = amp;
  }
  return StateVector(std::move(field), std::move(amps));
}

StateVector su2_coherent(FieldPtr field, Complex xi) {
  const int n = field->degree();
  std::vector<Complex> xi_pow(static_cast<std::size_t>(n) + 1);
  xi_pow[0] = 1.0;
  for (int k = 1; k <= n; ++k) xi_pow[k] = xi_pow[k - 1] * xi;
  const double norm = std::pow(1.0 + std::norm(xi), n / 2.0);
  Eigen::VectorXcd amps(field->order());
  for (std::uint32_t i = 0; i < field->order(); ++i) {
    amps(i) = xi_pow[static_cast<std::size_t>(std::popcount(i))] / norm;
  }
  return StateVector(std::move(field), std::move(amps));
}

StateVector coherent_plus(FieldPtr field) {
  return su2_coherent(std::move(field), xi_plus());
}

StateVector coherent_minus(FieldPtr field) {
  return su2_coherent(std::move(field), xi_minus());
}

void check_dense_cap(const Field& field) {
  if (field.degree() > Field::kDenseDegreeCap) {
    throw std::out_of_range("dense 2^n x 2^n operators are capped at n = " +
                            std::to_string(Field::kDenseDegreeCap));
  }
}

DenseOperator basis_change_permutation(const Field& field, const Basis& from,
                                       const Basis& to) {
  field.check_basis(from);
  field.check_basis(to);
  check_dense_cap(field);
  const auto dim = static_cast<Eigen::Index>(field.order());
  DenseOperator perm = DenseOperator::Zero(dim, dim);
  for (std::uint32_t bits = 0; bits < field.order(); ++bits) {
    const FieldElement mu{bits};
    perm(field.coordinate_mask(mu, to), field.coordinate_mask(mu, from)) = 1.0;
  }
  return perm;
}

StateVector apply_operator(const DenseOperator& op, const StateVector& state) {
  if (op.rows() != state.dim() || op.cols() != state.dim()) {
    throw std::invalid_argument("operator dimension does not match state");
  }
  return StateVector(state.field_ptr(), op * state.amplitudes());
}

StateVector apply_fourier(const StateVector& state) {
  Eigen::VectorXcd v = state.amplitudes();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const auto dim = static_cast<std::uint32_t>(v.size());
  for (std::uint32_t stride = 1; stride < dim; stride <<= 1) {
    for (std::uint32_t base = 0; base < dim; base += stride << 1) {
      for (std::uint32_t j = base; j < base + stride; ++j) {
        const Complex a = v(j);
        const Complex b = v(j + stride);
        v(j) = (a + b) * inv_sqrt2;
        v(j + stride) = (a - b) * inv_sqrt2;
      }
    }
  }
  return StateVector(state.field_ptr(), std::move(v));
}

FourierEigenReport fourier_eigen_report(const StateVector& state) {
  const StateVector transformed = apply_fourier(state);
  FourierEigenReport report;
  report.overlap =
      state.amplitudes().dot(transformed.amplitudes()).real();
  report.sign = report.overlap >= 0.0 ? +1 : -1;
  report.residual =
      (transformed.amplitudes() -
       static_cast<double>(report.sign) * state.amplitudes())
          .norm();
  return report;
}

std::optional<std::vector<Eigen::Vector2cd>> tensor_factors(
    const Eigen::VectorXcd& amplitudes, double tol) {
  const auto dim = amplitudes.size();
  if (dim < 2 || (dim & (dim - 1)) != 0) {
    throw std::invalid_argument("amplitude count must be a power of two >= 2");
  }
  const int n = std::countr_zero(static_cast<std::uint64_t>(dim));

  std::vector<Eigen::Vector2cd> factors(static_cast<std::size_t>(n));
  Eigen::VectorXcd rest = amplitudes;
  // Peel the most significant qubit each round; its two index blocks are
  // the columns of a (2^(k-1) x 2) reshape, and factorizability is exactly
  // rank 1 of that reshape.
  for (int k = n; k >= 2; --k) {
    const Eigen::Index half = rest.size() / 2;
    Eigen::MatrixXcd reshaped(half, 2);
    reshaped.col(0) = rest.head(half);
    reshaped.col(1) = rest.tail(half);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
        reshaped, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.singularValues()(1) > tol) return std::nullopt;
    Eigen::Vector2cd factor = svd.matrixV().col(0).conjugate();
    // Push the factor's phase into the remainder so only qubit 1 keeps a
    // global phase.
    const int lead = std::abs(factor(0)) >= std::abs(factor(1)) ? 0 : 1;
    const Complex phase = factor(lead) / std::abs(factor(lead));
    factor *= std::conj(phase);
    factors[static_cast<std::size_t>(k - 1)] = factor;
    rest = svd.matrixU().col(0) * (svd.singularValues()(0) * phase);
  }
  // Factor 1 keeps the leftover magnitude and global phase, so the
  // Kronecker product of the factors reproduces the input exactly.
  factors[0] = rest;
  return factors;
}

std::optional<std::vector<Eigen::Vector2cd>> tensor_factors(
    const StateVector& state, double tol) {
  if (state.n() == 1) {
    return std::vector<Eigen::Vector2cd>{Eigen::Vector2cd(state.amplitudes())};
  }
  return tensor_factors(state.amplitudes(), tol);
}

bool is_unitary(const DenseOperator& op, double tol) {
  const DenseOperator gram = op.adjoint() * op;
  const DenseOperator eye =
      DenseOperator::Identity(op.rows(), op.cols());
  return (gram - eye).cwiseAbs().maxCoeff() < tol;
}

bool is_hermitian(const DenseOperator& op, double tol) {
  return (op - op.adjoint()).cwiseAbs().maxCoeff() < tol;
}

}  // namespace qps
