#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace qps {

/// An element of GF(2^n), stored as the n-bit coefficient vector of its
/// polynomial representation (bit k = coefficient of x^k).
struct FieldElement {
  std::uint32_t bits = 0;

  constexpr bool is_zero() const { return bits == 0; }
  friend constexpr bool operator==(FieldElement, FieldElement) = default;
  friend constexpr bool operator<(FieldElement a, FieldElement b) {
    return a.bits < b.bits;
  }
};

enum class BasisKind { Polynomial, Normal, SelfDual, Arbitrary };

/// An ordered GF(2)-basis of the field. `inverse_rows` caches the inverse of
/// the coordinate matrix so that coordinate extraction is a parity of a
/// masked AND; it and the owning field's modulus tag are filled in by
/// Field::make_basis and friends.
struct Basis {
  std::vector<FieldElement> elements;
  BasisKind kind = BasisKind::Arbitrary;
  std::vector<std::uint32_t> inverse_rows;
  std::uint32_t field_modulus = 0;
};

/// GF(2^n) under a fixed primitive modulus polynomial. Immutable after
/// construction; all lookup tables and cached bases are built once, so
/// const methods are safe to call concurrently.
class Field {
 public:
  /// Degree cap for element/state enumeration.
  static constexpr int kMaxDegree = 12;
  /// Degree cap for dense 2^n x 2^n operators built on top of this field.
  static constexpr int kDenseDegreeCap = 6;

  /// Builds GF(2^n) with the built-in primitive polynomial for degree n
  /// (overridable through the QPS_POLY_TABLE environment variable).
  explicit Field(int n);

  /// Builds GF(2^n) with an explicit modulus polynomial (bit n must be set).
  /// Throws std::invalid_argument if the polynomial is not primitive: the
  /// residue class of x must generate the full multiplicative group.
  Field(int n, std::uint32_t modulus_poly);

  int degree() const { return n_; }
  std::uint32_t modulus() const { return poly_; }
  std::size_t order() const { return std::size_t{1} << n_; }

  FieldElement zero() const { return {0}; }
  FieldElement one() const { return {1}; }
  /// The primitive element sigma (residue class of x).
  FieldElement generator() const { return sigma_; }

  /// Validates that `bits` fits in n bits and wraps it.
  FieldElement element(std::uint32_t bits) const;

  FieldElement add(FieldElement a, FieldElement b) const {
    return {a.bits ^ b.bits};
  }
  FieldElement mul(FieldElement a, FieldElement b) const;
  /// Multiplicative inverse; throws std::domain_error on zero.
  FieldElement inv(FieldElement a) const;
  /// a^k with integer (possibly negative) exponent; pow(0, 0) = 1,
  /// pow(0, k<0) throws std::domain_error.
  FieldElement pow(FieldElement a, long long k) const;

  /// Discrete logarithm base sigma; throws std::domain_error on zero.
  int log(FieldElement a) const;

  /// tr(a) = a + a^2 + ... + a^(2^(n-1)), always 0 or 1.
  int trace(FieldElement a) const { return trace_[a.bits]; }
  /// Additive character chi(a) = (-1)^tr(a).
  int character(FieldElement a) const { return trace_[a.bits] ? -1 : +1; }

  /// {1, sigma, ..., sigma^(n-1)}.
  const Basis& polynomial_basis() const { return poly_basis_; }
  /// Frobenius orbit {zeta, zeta^2, zeta^4, ...} of the first primitive
  /// element whose orbit is linearly independent.
  const Basis& normal_basis() const { return normal_basis_; }
  /// A basis with tr(s_i s_j) = delta_ij, built by symmetric congruence
  /// reduction of the polynomial basis Gram matrix.
  const Basis& self_dual_basis() const { return sd_basis_; }

  /// Wraps `elements` as a basis, validating linear independence.
  /// Throws std::invalid_argument for a dependent set.
  Basis make_basis(std::vector<FieldElement> elements,
                   BasisKind kind = BasisKind::Arbitrary) const;

  /// The unique basis {t'_l} with tr(t_k t'_l) = delta_kl.
  Basis dual_basis(const Basis& basis) const;

  /// True iff tr(b_i b_j) = delta_ij for all i, j.
  bool is_self_dual(const Basis& basis) const;

  /// Throws std::invalid_argument if `basis` belongs to a different field.
  void check_basis(const Basis& basis) const;

  /// Expansion coefficients of `a` in `basis` (bit k = coefficient of
  /// element k); inverse of from_coordinate_mask.
  std::uint32_t coordinate_mask(FieldElement a, const Basis& basis) const;
  FieldElement from_coordinate_mask(std::uint32_t mask,
                                    const Basis& basis) const;

  std::vector<int> coordinates(FieldElement a, const Basis& basis) const;
  FieldElement from_coordinates(const std::vector<int>& coords,
                                const Basis& basis) const;

  /// Canonical index of an element: the little-endian integer of its
  /// self-dual coordinates. This fixes amplitude positions in state vectors
  /// and rows/columns of every dense operator.
  std::uint32_t canonical_index(FieldElement a) const {
    return canon_of_bits_[a.bits];
  }
  FieldElement from_canonical_index(std::uint32_t index) const {
    return {bits_of_canon_[index]};
  }

  /// All elements in canonical order (index i -> from_canonical_index(i)).
  std::vector<FieldElement> elements_canonical() const;
  /// The power labeling {0, sigma, sigma^2, ..., sigma^(2^n - 1) = 1}.
  std::vector<FieldElement> elements_power() const;

  /// Schoolbook carry-less multiply followed by reduction mod `poly`.
  /// The table-free definition of the field product; mul() agrees with it.
  static std::uint32_t carryless_mul_mod(std::uint32_t a, std::uint32_t b,
                                         std::uint32_t poly, int n);

  /// The built-in primitive polynomial for degree n.
  static std::uint32_t default_modulus(int n);

 private:
  void build_tables();
  void build_bases();
  void build_self_dual();

  int n_;
  std::uint32_t poly_;
  FieldElement sigma_;
  std::vector<std::uint32_t> exp_;  // exp_[i] = sigma^i, i in [0, 2^n-2]
  std::vector<int> log_;            // log_[bits], -1 for zero
  std::vector<std::uint8_t> trace_;
  Basis poly_basis_, normal_basis_, sd_basis_;
  std::vector<std::uint32_t> canon_of_bits_, bits_of_canon_;
};

using FieldPtr = std::shared_ptr<const Field>;

/// Shared-ownership constructors; these are the intended entry points.
FieldPtr make_field(int n);
FieldPtr make_field(int n, std::uint32_t modulus_poly);

/// Inverts an n x n bit matrix given as row masks. Returns empty on a
/// singular matrix.
std::vector<std::uint32_t> invert_bit_matrix(
    const std::vector<std::uint32_t>& rows, int n);

/// Formats an element as a polynomial in sigma, e.g. "sigma^2 + sigma + 1".
std::string to_polynomial_string(FieldElement a);

}  // namespace qps
