#include "qps/wigner.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace qps {

namespace {

constexpr double kTraceTol = 1e-10;

int parity_sign(std::uint32_t mask) {
  return (std::popcount(mask) & 1) ? -1 : +1;
}

Complex i_power(int w) {
  static const Complex table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[((w % 4) + 4) % 4];
}

// Unnormalized +-1 Walsh transform along the row index of every column.
void walsh_rows(Eigen::MatrixXcd& m) {
  const auto dim = static_cast<std::uint32_t>(m.rows());
  for (std::uint32_t stride = 1; stride < dim; stride <<= 1) {
    for (std::uint32_t base = 0; base < dim; base += stride << 1) {
      for (std::uint32_t r = base; r < base + stride; ++r) {
        const Eigen::RowVectorXcd a = m.row(r);
        const Eigen::RowVectorXcd b = m.row(r + stride);
        m.row(r) = a + b;
        m.row(r + stride) = a - b;
      }
    }
  }
}

// Moment table M(i_mu, i_nu) = Tr[rho D(mu, nu)] -> Wigner grid.  In
// self-dual coordinates chi(mu gamma) is the bit parity of i_mu & i_gamma,
// so the double character sum of the kernel definition becomes a Walsh
// transform over each axis:
//   W(alpha, beta) = 2^(-n) sum_{mu,nu} (-1)^(<i_beta, i_mu> + <i_alpha,
//   i_nu>) M(i_mu, i_nu).
WignerGrid grid_from_moments(FieldPtr field, Eigen::MatrixXcd moments,
                             PhaseConvention conv, Normalization norm) {
  walsh_rows(moments);         // i_mu -> i_beta
  moments.transposeInPlace();  // bring the nu axis to the rows
  walsh_rows(moments);         // i_nu -> i_alpha
  // moments is now (i_alpha, i_beta) up to the 2^-n prefactor.
  double scale = 1.0 / static_cast<double>(field->order());
  if (norm == Normalization::UnitSum) {
    scale /= static_cast<double>(field->order());
  }
  return {std::move(field), scale * moments.real(), conv, norm};
}

}  // namespace

const char* normalization_tag(Normalization norm) {
  return norm == Normalization::Raw ? "raw" : "unit-sum";
}

DenseOperator kernel(const Field& field, PhasePoint point,
                     PhaseConvention conv) {
  check_dense_cap(field);
  const auto dim = static_cast<Eigen::Index>(field.order());
  DenseOperator sum = DenseOperator::Zero(dim, dim);
  for (std::uint32_t mb = 0; mb < field.order(); ++mb) {
    const FieldElement mu{mb};
    for (std::uint32_t nb = 0; nb < field.order(); ++nb) {
      const FieldElement nu{nb};
      const int chi = field.character(
          field.add(field.mul(point.alpha, nu), field.mul(point.beta, mu)));
      sum += static_cast<double>(chi) * displacement(field, {mu, nu}, conv);
    }
  }
  return sum / static_cast<double>(field.order());
}

KernelCache build_kernel_cache(FieldPtr field, PhaseConvention conv) {
  check_dense_cap(*field);
  const auto order = static_cast<std::uint32_t>(field->order());
  const auto dim = static_cast<Eigen::Index>(order);

  std::vector<DenseOperator> disp;
  disp.reserve(static_cast<std::size_t>(order) * order);
  for (std::uint32_t mb = 0; mb < order; ++mb) {
    for (std::uint32_t nb = 0; nb < order; ++nb) {
      disp.push_back(
          displacement(*field, {FieldElement{mb}, FieldElement{nb}}, conv));
    }
  }

  KernelCache cache{field, conv, {}};
  cache.kernels.reserve(disp.size());
  const double scale = 1.0 / static_cast<double>(order);
  for (std::uint32_t ia = 0; ia < order; ++ia) {
    const FieldElement alpha = field->from_canonical_index(ia);
    for (std::uint32_t ib = 0; ib < order; ++ib) {
      const FieldElement beta = field->from_canonical_index(ib);
      DenseOperator sum = DenseOperator::Zero(dim, dim);
      std::size_t k = 0;
      for (std::uint32_t mb = 0; mb < order; ++mb) {
        const FieldElement mu{mb};
        for (std::uint32_t nb = 0; nb < order; ++nb, ++k) {
          const FieldElement nu{nb};
          const int chi = field->character(
              field->add(field->mul(alpha, nu), field->mul(beta, mu)));
          sum += static_cast<double>(chi) * disp[k];
        }
      }
      cache.kernels.push_back(scale * sum);
    }
  }
  return cache;
}

WignerGrid wigner_of(const StateVector& state, PhaseConvention conv,
                     Normalization norm) {
  check_dense_cap(state.field());
  if (std::abs(state.norm() - 1.0) > kTraceTol) {
    throw std::invalid_argument("wigner_of expects a normalized state");
  }
  const auto& psi = state.amplitudes();
  const auto order = static_cast<std::uint32_t>(state.field().order());
  Eigen::MatrixXcd moments(order, order);
  for (std::uint32_t imu = 0; imu < order; ++imu) {
    for (std::uint32_t inu = 0; inu < order; ++inu) {
      Complex acc = 0;
      for (std::uint32_t ig = 0; ig < order; ++ig) {
        acc += static_cast<double>(parity_sign(imu & ig)) *
               std::conj(psi(ig)) * psi(ig ^ inu);
      }
      moments(imu, inu) = i_power(std::popcount(imu & inu) +
                                  conv.exponent_offset) *
                          acc;
    }
  }
  return grid_from_moments(state.field_ptr(), std::move(moments), conv, norm);
}

WignerGrid wigner_of(FieldPtr field, const DenseOperator& rho,
                     PhaseConvention conv, Normalization norm) {
  check_dense_cap(*field);
  const auto order = static_cast<std::uint32_t>(field->order());
  if (rho.rows() != static_cast<Eigen::Index>(order) ||
      rho.cols() != static_cast<Eigen::Index>(order)) {
    throw std::invalid_argument("density matrix dimension must be 2^n");
  }
  if (std::abs(rho.trace() - Complex(1.0)) > kTraceTol) {
    throw std::invalid_argument("wigner_of expects a trace-one density matrix");
  }
  Eigen::MatrixXcd moments(order, order);
  for (std::uint32_t imu = 0; imu < order; ++imu) {
    for (std::uint32_t inu = 0; inu < order; ++inu) {
      Complex acc = 0;
      for (std::uint32_t ig = 0; ig < order; ++ig) {
        acc += static_cast<double>(parity_sign(imu & (ig ^ inu))) *
               rho(ig, ig ^ inu);
      }
      moments(imu, inu) = i_power(std::popcount(imu & inu) +
                                  conv.exponent_offset) *
                          acc;
    }
  }
  return grid_from_moments(std::move(field), std::move(moments), conv, norm);
}

double wigner_coherent_closed_form(const Field& field, Complex xi,
                                   PhasePoint point, PhaseConvention conv) {
  const int n = field.degree();
  const auto order = static_cast<std::uint32_t>(field.order());

  std::vector<Complex> xi_pow(static_cast<std::size_t>(n) + 1);
  std::vector<Complex> xi_bar_pow(static_cast<std::size_t>(n) + 1);
  xi_pow[0] = xi_bar_pow[0] = 1.0;
  for (int k = 1; k <= n; ++k) {
    xi_pow[k] = xi_pow[k - 1] * xi;
    xi_bar_pow[k] = xi_bar_pow[k - 1] * std::conj(xi);
  }

  Complex total = 0;
  for (std::uint32_t mb = 0; mb < order; ++mb) {
    const FieldElement mu{mb};
    for (std::uint32_t nb = 0; nb < order; ++nb) {
      const FieldElement nu{nb};
      const Complex phi = phase_phi(field, {mu, nu}, conv);
      const FieldElement fixed = field.add(field.mul(point.alpha, nu),
                                           field.add(field.mul(point.beta, mu),
                                                     field.mul(mu, nu)));
      for (std::uint32_t gb = 0; gb < order; ++gb) {
        const FieldElement gamma{gb};
        const int chi =
            field.character(field.add(fixed, field.mul(mu, gamma)));
        total += static_cast<double>(chi) * phi *
                 xi_pow[static_cast<std::size_t>(hamming_h(field, gamma))] *
                 xi_bar_pow[static_cast<std::size_t>(
                     hamming_h(field, field.add(gamma, nu)))];
      }
    }
  }
  const double prefactor =
      1.0 / (static_cast<double>(order) *
             std::pow(1.0 + std::norm(xi), static_cast<double>(n)));
  return (prefactor * total).real();
}

Marginals marginals(const WignerGrid& grid) {
  return {grid.values.colwise().sum().transpose(),
          grid.values.rowwise().sum()};
}

WignerGrid fast_product_path(FieldPtr field,
                             const std::vector<Eigen::Vector2cd>& factors,
                             PhaseConvention conv, Normalization norm) {
  const int n = field->degree();
  if (static_cast<int>(factors.size()) != n) {
    throw std::invalid_argument("need one factor per qubit");
  }
  // w1[k][a][b] = <f_k| Delta_1(a, b) |f_k>, real for unit factors since
  // Delta_1 is Hermitian.
  std::vector<std::array<std::array<double, 2>, 2>> w1(
      static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        const Eigen::Vector2cd& f = factors[static_cast<std::size_t>(k)];
        w1[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)]
          [static_cast<std::size_t>(b)] =
              f.dot(single_qubit::kernel_factor(a, b, conv) * f).real();
      }
    }
  }
  const auto order = static_cast<std::uint32_t>(field->order());
  Eigen::MatrixXd values(order, order);
  for (std::uint32_t ia = 0; ia < order; ++ia) {
    for (std::uint32_t ib = 0; ib < order; ++ib) {
      double w = 1.0;
      for (int k = 0; k < n; ++k) {
        w *= w1[static_cast<std::size_t>(k)][(ia >> k) & 1u][(ib >> k) & 1u];
      }
      values(ia, ib) = w;
    }
  }
  if (norm == Normalization::UnitSum) {
    values /= static_cast<double>(order);
  }
  return {std::move(field), std::move(values), conv, norm};
}

WignerGrid fast_product_path(const StateVector& state, PhaseConvention conv,
                             Normalization norm, double tol) {
  if (std::abs(state.norm() - 1.0) > kTraceTol) {
    throw std::invalid_argument("fast path expects a normalized state");
  }
  auto factors = tensor_factors(state, tol);
  if (!factors) {
    throw std::invalid_argument(
        "state does not factor into single-qubit states; use wigner_of");
  }
  return fast_product_path(state.field_ptr(), *factors, conv, norm);
}

namespace single_qubit {

Eigen::Matrix2cd kernel_factor(int a, int b, PhaseConvention conv) {
  Eigen::Matrix2cd sum = Eigen::Matrix2cd::Zero();
  for (int m = 0; m < 2; ++m) {
    for (int n = 0; n < 2; ++n) {
      const int sign = ((a * n + b * m) & 1) ? -1 : +1;
      sum += static_cast<double>(sign) * displacement(m, n, conv);
    }
  }
  return 0.5 * sum;
}

}  // namespace single_qubit

}  // namespace qps
