#include "qps/pauli.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qps {

namespace {

Complex i_power(int w) {
  static const Complex table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[((w % 4) + 4) % 4];
}

}  // namespace

int phase_exponent(const Field& field, FieldElement alpha, FieldElement beta) {
  return std::popcount(field.canonical_index(alpha) &
                       field.canonical_index(beta));
}

Complex phase_phi(const Field& field, PhasePoint point, PhaseConvention conv) {
  return i_power(phase_exponent(field, point.alpha, point.beta) +
                 conv.exponent_offset);
}

DenseOperator z_op(const Field& field, FieldElement beta) {
  check_dense_cap(field);
  const auto dim = static_cast<Eigen::Index>(field.order());
  DenseOperator op = DenseOperator::Zero(dim, dim);
  for (std::uint32_t bits = 0; bits < field.order(); ++bits) {
    const FieldElement alpha{bits};
    const auto i = field.canonical_index(alpha);
    op(i, i) = field.character(field.mul(alpha, beta));
  }
  return op;
}

DenseOperator x_op(const Field& field, FieldElement beta) {
  check_dense_cap(field);
  const auto dim = static_cast<Eigen::Index>(field.order());
  DenseOperator op = DenseOperator::Zero(dim, dim);
  for (std::uint32_t bits = 0; bits < field.order(); ++bits) {
    const FieldElement alpha{bits};
    op(field.canonical_index(field.add(alpha, beta)),
       field.canonical_index(alpha)) = 1.0;
  }
  return op;
}

DenseOperator fourier_op(const Field& field) {
  check_dense_cap(field);
  const auto dim = static_cast<Eigen::Index>(field.order());
  const double scale = 1.0 / std::sqrt(static_cast<double>(field.order()));
  DenseOperator op(dim, dim);
  for (std::uint32_t mb = 0; mb < field.order(); ++mb) {
    const FieldElement mu{mb};
    for (std::uint32_t nb = 0; nb < field.order(); ++nb) {
      const FieldElement nu{nb};
      op(field.canonical_index(mu), field.canonical_index(nu)) =
          scale * field.character(field.mul(mu, nu));
    }
  }
  return op;
}

DenseOperator displacement(const Field& field, PhasePoint point,
                           PhaseConvention conv) {
  return phase_phi(field, point, conv) *
         (z_op(field, point.alpha) * x_op(field, point.beta));
}

std::vector<std::uint32_t> squeeze_permutation(const Field& field,
                                               FieldElement lambda) {
  if (lambda.bits == 0) {
    throw std::domain_error("squeeze requires an invertible lambda");
  }
  std::vector<std::uint32_t> perm(field.order());
  for (std::uint32_t bits = 0; bits < field.order(); ++bits) {
    const FieldElement kappa{bits};
    perm[field.canonical_index(kappa)] =
        field.canonical_index(field.mul(lambda, kappa));
  }
  return perm;
}

DenseOperator squeeze_op(const Field& field, FieldElement lambda) {
  check_dense_cap(field);
  const auto perm = squeeze_permutation(field, lambda);
  const auto dim = static_cast<Eigen::Index>(field.order());
  DenseOperator op = DenseOperator::Zero(dim, dim);
  for (std::uint32_t i = 0; i < field.order(); ++i) op(i, perm[i]) = 1.0;
  return op;
}

StateVector apply_squeeze(const StateVector& state, FieldElement lambda) {
  const auto perm = squeeze_permutation(state.field(), lambda);
  Eigen::VectorXcd out(state.dim());
  for (std::uint32_t i = 0; i < perm.size(); ++i) {
    out(i) = state.amplitudes()(perm[i]);
  }
  return StateVector(state.field_ptr(), std::move(out));
}

DenseOperator kron(const DenseOperator& a, const DenseOperator& b) {
  DenseOperator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

DenseOperator kron_all(const std::vector<Eigen::Matrix2cd>& factors) {
  if (factors.empty()) throw std::invalid_argument("kron_all needs factors");
  DenseOperator out = factors.back();
  for (auto it = std::next(factors.rbegin()); it != factors.rend(); ++it) {
    out = kron(out, DenseOperator(*it));
  }
  return out;
}

namespace single_qubit {

Eigen::Matrix2cd sigma_z() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}

Eigen::Matrix2cd sigma_x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

Eigen::Matrix2cd displacement(int a, int b, PhaseConvention conv) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
  if (a) m = sigma_z() * m;
  if (b) m = m * sigma_x();
  return i_power(a * b + conv.exponent_offset) * m;
}

}  // namespace single_qubit

}  // namespace qps
