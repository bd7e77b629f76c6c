#pragma once

// Reference implementations used only by the tests. Everything here is
// written independently of the library code paths it checks: polynomial
// arithmetic is coefficient-vector schoolbook (the library uses carry-less
// bit tricks), traces are built from repeated schoolbook squaring, and the
// small matrices are hardcoded numeric tables.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

namespace oracle {

using Complex = std::complex<double>;

inline std::vector<int> mask_to_coeffs(std::uint32_t mask) {
  std::vector<int> c;
  while (mask != 0) {
    c.push_back(static_cast<int>(mask & 1u));
    mask >>= 1;
  }
  return c;
}

inline std::uint32_t coeffs_to_mask(const std::vector<int>& c) {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] % 2 != 0) mask |= (1u << i);
  }
  return mask;
}

// Schoolbook product in GF(2)[x] followed by long division by the modulus.
inline std::uint32_t poly_mul_mod(std::uint32_t a, std::uint32_t b,
                                  std::uint32_t modulus) {
  const std::vector<int> ca = mask_to_coeffs(a);
  const std::vector<int> cb = mask_to_coeffs(b);
  if (ca.empty() || cb.empty()) return 0;
  std::vector<int> prod(ca.size() + cb.size() - 1, 0);
  for (std::size_t i = 0; i < ca.size(); ++i) {
    for (std::size_t j = 0; j < cb.size(); ++j) {
      prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % 2;
    }
  }
  const std::vector<int> cm = mask_to_coeffs(modulus);
  const std::size_t deg_m = cm.size() - 1;
  for (std::size_t k = prod.size(); k-- > deg_m;) {
    if (prod[k] == 0) continue;
    for (std::size_t j = 0; j < cm.size(); ++j) {
      prod[k - deg_m + j] = (prod[k - deg_m + j] + cm[j]) % 2;
    }
  }
  return coeffs_to_mask(prod);
}

inline std::uint32_t poly_pow_mod(std::uint32_t base, std::uint64_t e,
                                  std::uint32_t modulus) {
  std::uint32_t acc = 1;
  while (e-- > 0) acc = poly_mul_mod(acc, base, modulus);
  return acc;
}

// tr(a) = a + a^2 + a^4 + ... + a^(2^(n-1)), which lands in {0, 1}.
inline int trace(std::uint32_t a, std::uint32_t modulus, int degree) {
  std::uint32_t term = a;
  std::uint32_t sum = 0;
  for (int k = 0; k < degree; ++k) {
    sum ^= term;
    term = poly_mul_mod(term, term, modulus);
  }
  return static_cast<int>(sum & 1u);
}

inline int character(std::uint32_t a, std::uint32_t modulus, int degree) {
  return trace(a, modulus, degree) == 0 ? 1 : -1;
}

// x is primitive iff its multiplicative order is exactly 2^n - 1.
inline bool x_is_primitive(std::uint32_t modulus, int degree) {
  const std::uint32_t group = (1u << degree) - 1u;
  std::uint32_t acc = poly_mul_mod(1u, 0x2u, modulus);
  std::uint32_t order = 1;
  while (acc != 1u) {
    if (acc == 0u || order > group) return false;
    acc = poly_mul_mod(acc, 0x2u, modulus);
    ++order;
  }
  return order == group;
}

// Every ordered tuple (b_1 ... b_n) with tr(b_i b_j) = delta_ij, found by
// exhaustive search. Practical for small degrees only.
inline std::vector<std::vector<std::uint32_t>> self_dual_bases(
    std::uint32_t modulus, int degree) {
  const std::uint32_t order = 1u << degree;
  std::vector<std::vector<std::uint32_t>> found;
  std::vector<std::uint32_t> tuple(static_cast<std::size_t>(degree), 0);
  const std::uint64_t total = 1ull << (degree * degree);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t rest = code;
    for (int i = 0; i < degree; ++i) {
      tuple[static_cast<std::size_t>(i)] =
          static_cast<std::uint32_t>(rest % order);
      rest /= order;
    }
    bool good = true;
    for (int i = 0; i < degree && good; ++i) {
      for (int j = 0; j < degree && good; ++j) {
        const int want = (i == j) ? 1 : 0;
        if (trace(poly_mul_mod(tuple[static_cast<std::size_t>(i)],
                               tuple[static_cast<std::size_t>(j)], modulus),
                  modulus, degree) != want) {
          good = false;
        }
      }
    }
    if (good) found.push_back(tuple);
  }
  return found;
}

inline Eigen::Matrix2cd sigma_z() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}

inline Eigen::Matrix2cd sigma_x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

inline Eigen::Matrix2cd hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd m;
  m << s, s, s, -s;
  return m;
}

// D(a, b) = i^{ab} Z^a X^b on one qubit, written out entry by entry.
inline Eigen::Matrix2cd displacement_1q(int a, int b) {
  const Complex i(0.0, 1.0);
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  if (a == 0 && b == 0) {
    m << 1, 0, 0, 1;
  } else if (a == 0 && b == 1) {
    m << 0, 1, 1, 0;
  } else if (a == 1 && b == 0) {
    m << 1, 0, 0, -1;
  } else {
    m << 0, i, -i, 0;
  }
  return m;
}

// One-qubit kernel values 1/2 sum_{mu nu} (-1)^(a nu + b mu) D(mu, nu).
inline Eigen::Matrix2cd kernel_1q(int a, int b) {
  Eigen::Matrix2cd acc = Eigen::Matrix2cd::Zero();
  for (int mu = 0; mu < 2; ++mu) {
    for (int nu = 0; nu < 2; ++nu) {
      const double sign = ((a * nu + b * mu) % 2 == 0) ? 1.0 : -1.0;
      acc += sign * displacement_1q(mu, nu);
    }
  }
  return 0.5 * acc;
}

// Frozen value of the kernel at the phase-space origin for one qubit:
//   1/2 (I + X + Z + i Z X) = [[1, (1+i)/2], [(1-i)/2, 0]].
inline Eigen::Matrix2cd kernel_origin_1q() {
  Eigen::Matrix2cd m;
  m << Complex(1.0, 0.0), Complex(0.5, 0.5), Complex(0.5, -0.5),
      Complex(0.0, 0.0);
  return m;
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a,
                             const Eigen::MatrixXcd& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

// Wigner values of the +1 Fourier-eigenstate coherent state on one qubit.
// With xi = sqrt(2) - 1 the grid is
//   [ (1+sqrt 2)/2   1/2 ]
//   [ 1/2            (1-sqrt 2)/2 ].
inline std::array<double, 4> coherent_plus_grid_1q() {
  const double s = std::sqrt(2.0);
  return {(1.0 + s) / 2.0, 0.5, 0.5, (1.0 - s) / 2.0};
}

template <typename A, typename B>
double max_abs_diff(const Eigen::MatrixBase<A>& a,
                    const Eigen::MatrixBase<B>& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace oracle
