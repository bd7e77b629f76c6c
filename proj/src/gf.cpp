#include "qps/gf.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qps {

namespace {

// Primitive polynomials (x is a generator of the multiplicative group).
constexpr std::array<std::uint32_t, Field::kMaxDegree + 1> kDefaultPoly = {
    0,      // unused
    0x3,    // x + 1
    0x7,    // x^2 + x + 1
    0xB,    // x^3 + x + 1
    0x13,   // x^4 + x + 1
    0x25,   // x^5 + x^2 + 1
    0x43,   // x^6 + x + 1
    0x89,   // x^7 + x^3 + 1
    0x11D,  // x^8 + x^4 + x^3 + x^2 + 1
    0x211,  // x^9 + x^4 + 1
    0x409,  // x^10 + x^3 + 1
    0x805,  // x^11 + x^2 + 1
    0x1053  // x^12 + x^6 + x^4 + x + 1
};

int parity(std::uint32_t v) { return std::popcount(v) & 1; }

// Looks up an override for degree n in the QPS_POLY_TABLE file, if any.
// File format: one "n: bitmask" pair per line; '#' starts a comment.
std::uint32_t modulus_for_degree(int n) {
  const char* path = std::getenv("QPS_POLY_TABLE");
  if (path != nullptr) {
    std::ifstream in(path);
    if (!in) {
      throw std::invalid_argument(std::string("QPS_POLY_TABLE file not readable: ") + path);
    }
    std::string line;
    while (std::getline(in, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      int degree = 0;
      char colon = 0;
      std::string mask;
      if (ls >> degree >> colon >> mask && colon == ':' && degree == n) {
        return static_cast<std::uint32_t>(std::stoul(mask, nullptr, 0));
      }
    }
  }
  return Field::default_modulus(n);
}

}  // namespace

std::uint32_t Field::default_modulus(int n) {
  if (n < 1 || n > kMaxDegree) {
    throw std::out_of_range("field degree must be in [1, " +
                            std::to_string(kMaxDegree) + "], got " +
                            std::to_string(n));
  }
  return kDefaultPoly[static_cast<std::size_t>(n)];
}

std::uint32_t Field::carryless_mul_mod(std::uint32_t a, std::uint32_t b,
                                       std::uint32_t poly, int n) {
  std::uint64_t prod = 0;
  for (int j = 0; j < n; ++j) {
    if ((b >> j) & 1u) prod ^= std::uint64_t{a} << j;
  }
  for (int d = 2 * n - 2; d >= n; --d) {
    if ((prod >> d) & 1u) prod ^= std::uint64_t{poly} << (d - n);
  }
  return static_cast<std::uint32_t>(prod);
}

Field::Field(int n) : Field(n, modulus_for_degree(n)) {}

Field::Field(int n, std::uint32_t modulus_poly) : n_(n), poly_(modulus_poly) {
  if (n < 1 || n > kMaxDegree) {
    throw std::out_of_range("field degree must be in [1, " +
                            std::to_string(kMaxDegree) + "], got " +
                            std::to_string(n));
  }
  const std::uint32_t top = 1u << n_;
  if ((poly_ & top) == 0 || poly_ >= (top << 1)) {
    throw std::invalid_argument("modulus polynomial must have degree exactly " +
                                std::to_string(n_));
  }
  std::uint32_t s = 2;  // residue class of x
  if (s & top) s ^= poly_;
  sigma_ = {s & (top - 1)};
  build_tables();
  build_bases();
}

void Field::build_tables() {
  const std::size_t ord = order();
  const std::size_t group = ord - 1;

  exp_.assign(group, 0);
  log_.assign(ord, -1);
  std::vector<bool> seen(ord, false);
  std::uint32_t cur = 1;
  for (std::size_t i = 0; i < group; ++i) {
    if (cur == 0 || seen[cur]) {
      throw std::invalid_argument(
          "modulus polynomial is not primitive: powers of x collide");
    }
    seen[cur] = true;
    exp_[i] = cur;
    log_[cur] = static_cast<int>(i);
    cur = carryless_mul_mod(cur, sigma_.bits, poly_, n_);
  }
  if (cur != 1) {
    throw std::invalid_argument(
        "modulus polynomial is not primitive: x^(2^n - 1) != 1");
  }

  trace_.assign(ord, 0);
  for (std::uint32_t a = 0; a < ord; ++a) {
    std::uint32_t frob = a;
    std::uint32_t sum = a;
    for (int k = 1; k < n_; ++k) {
      frob = carryless_mul_mod(frob, frob, poly_, n_);
      sum ^= frob;
    }
    if (sum > 1) {
      throw std::logic_error("trace fell outside the prime field");
    }
    trace_[a] = static_cast<std::uint8_t>(sum);
  }
}

FieldElement Field::element(std::uint32_t bits) const {
  if (bits >= order()) {
    throw std::invalid_argument("element bits out of range for GF(2^" +
                                std::to_string(n_) + ")");
  }
  return {bits};
}

FieldElement Field::mul(FieldElement a, FieldElement b) const {
  if (a.is_zero() || b.is_zero()) return {0};
  const std::size_t group = order() - 1;
  const std::size_t s = static_cast<std::size_t>(log_[a.bits]) +
                        static_cast<std::size_t>(log_[b.bits]);
  return {exp_[s % group]};
}

FieldElement Field::inv(FieldElement a) const {
  if (a.is_zero()) throw std::domain_error("zero has no multiplicative inverse");
  const std::size_t group = order() - 1;
  return {exp_[(group - static_cast<std::size_t>(log_[a.bits])) % group]};
}

FieldElement Field::pow(FieldElement a, long long k) const {
  if (a.is_zero()) {
    if (k == 0) return one();
    if (k < 0) throw std::domain_error("negative power of zero");
    return {0};
  }
  const long long group = static_cast<long long>(order()) - 1;
  long long e = (static_cast<long long>(log_[a.bits]) * (k % group)) % group;
  if (e < 0) e += group;
  return {exp_[static_cast<std::size_t>(e)]};
}

int Field::log(FieldElement a) const {
  if (a.is_zero()) throw std::domain_error("discrete log of zero");
  return log_[a.bits];
}

std::vector<std::uint32_t> invert_bit_matrix(
    const std::vector<std::uint32_t>& rows, int n) {
  // Gauss-Jordan on [rows | I] packed into one mask per row.
  std::vector<std::uint64_t> aug(rows.size());
  for (int i = 0; i < n; ++i) {
    aug[i] = rows[i] | (std::uint64_t{1} << (n + i));
  }
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r) {
      if ((aug[r] >> col) & 1u) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return {};
    std::swap(aug[col], aug[pivot]);
    for (int r = 0; r < n; ++r) {
      if (r != col && ((aug[r] >> col) & 1u)) aug[r] ^= aug[col];
    }
  }
  std::vector<std::uint32_t> inv(rows.size());
  for (int i = 0; i < n; ++i) {
    inv[i] = static_cast<std::uint32_t>(aug[i] >> n);
  }
  return inv;
}

Basis Field::make_basis(std::vector<FieldElement> elements,
                        BasisKind kind) const {
  if (static_cast<int>(elements.size()) != n_) {
    throw std::invalid_argument("basis must have exactly " +
                                std::to_string(n_) + " elements");
  }
  // Coordinate matrix: column k holds elements[k]; row i is bit i across
  // the columns. Invertibility over GF(2) is exactly linear independence.
  std::vector<std::uint32_t> rows(static_cast<std::size_t>(n_), 0);
  for (int i = 0; i < n_; ++i) {
    for (int k = 0; k < n_; ++k) {
      rows[i] |= ((elements[k].bits >> i) & 1u) << k;
    }
  }
  auto inv = invert_bit_matrix(rows, n_);
  if (inv.empty()) {
    throw std::invalid_argument("basis elements are linearly dependent");
  }
  Basis b;
  b.elements = std::move(elements);
  b.kind = kind;
  b.inverse_rows = std::move(inv);
  b.field_modulus = poly_;
  return b;
}

void Field::check_basis(const Basis& basis) const {
  if (basis.field_modulus != poly_ ||
      static_cast<int>(basis.elements.size()) != n_) {
    throw std::invalid_argument("basis does not belong to this field");
  }
}

bool Field::is_self_dual(const Basis& basis) const {
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      const int want = (i == j) ? 1 : 0;
      if (trace(mul(basis.elements[i], basis.elements[j])) != want) {
        return false;
      }
    }
  }
  return true;
}

Basis Field::dual_basis(const Basis& basis) const {
  // Writing t'_l = sum_m C_lm t_m, the duality condition tr(t_k t'_l) =
  // delta_kl reads G C^T = I with G the Gram matrix of the trace form,
  // so C = (G^-1)^T = G^-1 (G symmetric).
  std::vector<std::uint32_t> gram(static_cast<std::size_t>(n_), 0);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      gram[i] |= static_cast<std::uint32_t>(
                     trace(mul(basis.elements[i], basis.elements[j])))
                 << j;
    }
  }
  auto ginv = invert_bit_matrix(gram, n_);
  if (ginv.empty()) {
    throw std::logic_error("trace form degenerate on a valid basis");
  }
  std::vector<FieldElement> dual(static_cast<std::size_t>(n_));
  for (int l = 0; l < n_; ++l) {
    std::uint32_t acc = 0;
    for (int m = 0; m < n_; ++m) {
      if ((ginv[l] >> m) & 1u) acc ^= basis.elements[m].bits;
    }
    dual[l] = {acc};
  }
  Basis out = make_basis(std::move(dual), BasisKind::Arbitrary);
  if (is_self_dual(out)) out.kind = BasisKind::SelfDual;
  return out;
}

void Field::build_bases() {
  // Polynomial basis {1, sigma, ..., sigma^(n-1)}.
  std::vector<FieldElement> poly_elems;
  poly_elems.reserve(static_cast<std::size_t>(n_));
  for (int k = 0; k < n_; ++k) {
    poly_elems.push_back(pow(sigma_, k));
  }
  poly_basis_ = make_basis(std::move(poly_elems), BasisKind::Polynomial);

  // Normal basis: Frobenius orbit of a primitive element. Not every
  // primitive element has an independent orbit (x fails already for the
  // degree-4 default modulus), so scan sigma^k over exponents coprime to
  // the group order and take the first that works.
  const std::size_t group = order() - 1;
  for (std::size_t k = 1; k <= group; ++k) {
    if (std::gcd(k, group) != 1) continue;
    FieldElement zeta = {exp_[k % group]};
    std::vector<FieldElement> orbit(static_cast<std::size_t>(n_));
    orbit[0] = zeta;
    for (int j = 1; j < n_; ++j) {
      orbit[j] = mul(orbit[j - 1], orbit[j - 1]);
    }
    try {
      normal_basis_ = make_basis(std::move(orbit), BasisKind::Normal);
      break;
    } catch (const std::invalid_argument&) {
      continue;
    }
  }
  if (normal_basis_.elements.empty()) {
    throw std::logic_error("no primitive normal basis found");
  }

  build_self_dual();

  // Canonical index = little-endian integer of self-dual coordinates.
  canon_of_bits_.assign(order(), 0);
  bits_of_canon_.assign(order(), 0);
  for (std::uint32_t bits = 0; bits < order(); ++bits) {
    const std::uint32_t idx = coordinate_mask({bits}, sd_basis_);
    canon_of_bits_[bits] = idx;
    bits_of_canon_[idx] = bits;
  }
}

void Field::build_self_dual() {
  // Symmetric congruence reduction of the trace form B(u, v) = tr(uv),
  // starting from the polynomial basis. In characteristic 2 the quadratic
  // map q(v) = B(v, v) = tr(v) is linear, so either some working vector has
  // q = 1 (a unit pivot) or the remaining block is alternating; alternating
  // blocks are absorbed with a finished pivot e via the orthonormal triple
  // {e+u, e+v, e+u+v} built from a symplectic pair (u, v).
  auto bform = [this](FieldElement u, FieldElement v) {
    return trace(mul(u, v));
  };
  std::vector<FieldElement> w = poly_basis_.elements;
  const int n = n_;
  for (int i = 0; i < n; ++i) {
    int pivot = -1;
    for (int j = i; j < n; ++j) {
      if (bform(w[j], w[j]) == 1) {
        pivot = j;
        break;
      }
    }
    if (pivot >= 0) {
      std::swap(w[i], w[pivot]);
      for (int k = i + 1; k < n; ++k) {
        if (bform(w[i], w[k]) == 1) w[k] = add(w[k], w[i]);
      }
      continue;
    }
    // Alternating tail. The trace form itself is non-alternating (tr is
    // onto {0,1}), so at least one pivot has already been placed.
    if (i == 0) throw std::logic_error("trace form alternating on GF(2^n)");
    int a = -1, b = -1;
    for (int p = i; p < n && a < 0; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (bform(w[p], w[q]) == 1) {
          a = p;
          b = q;
          break;
        }
      }
    }
    if (a < 0) throw std::logic_error("trace form degenerate on tail block");
    for (int k = i; k < n; ++k) {
      if (k == a || k == b) continue;
      const int cu = bform(w[k], w[a]);
      const int cv = bform(w[k], w[b]);
      if (cv) w[k] = add(w[k], w[a]);
      if (cu) w[k] = add(w[k], w[b]);
    }
    std::swap(w[i], w[a]);
    std::swap(w[i + 1], w[b]);
    const FieldElement e = w[i - 1];
    const FieldElement u = w[i];
    const FieldElement v = w[i + 1];
    w[i - 1] = add(e, u);
    w[i] = add(e, v);
    w[i + 1] = add(add(e, u), v);
    ++i;  // the triple fills slots i-1, i, i+1
  }
  sd_basis_ = make_basis(std::move(w), BasisKind::SelfDual);
  if (!is_self_dual(sd_basis_)) {
    throw std::logic_error("self-dual congruence construction failed");
  }
}

std::uint32_t Field::coordinate_mask(FieldElement a, const Basis& basis) const {
  std::uint32_t mask = 0;
  for (int k = 0; k < n_; ++k) {
    mask |= static_cast<std::uint32_t>(parity(basis.inverse_rows[k] & a.bits))
            << k;
  }
  return mask;
}

FieldElement Field::from_coordinate_mask(std::uint32_t mask,
                                         const Basis& basis) const {
  std::uint32_t acc = 0;
  for (int k = 0; k < n_; ++k) {
    if ((mask >> k) & 1u) acc ^= basis.elements[k].bits;
  }
  return {acc};
}

std::vector<int> Field::coordinates(FieldElement a, const Basis& basis) const {
  const std::uint32_t mask = coordinate_mask(a, basis);
  std::vector<int> out(static_cast<std::size_t>(n_));
  for (int k = 0; k < n_; ++k) out[k] = (mask >> k) & 1;
  return out;
}

FieldElement Field::from_coordinates(const std::vector<int>& coords,
                                     const Basis& basis) const {
  if (static_cast<int>(coords.size()) != n_) {
    throw std::invalid_argument("coordinate vector length must equal n");
  }
  std::uint32_t mask = 0;
  for (int k = 0; k < n_; ++k) {
    if (coords[k] & 1) mask |= 1u << k;
  }
  return from_coordinate_mask(mask, basis);
}

std::vector<FieldElement> Field::elements_canonical() const {
  std::vector<FieldElement> out(order());
  for (std::uint32_t i = 0; i < order(); ++i) {
    out[i] = from_canonical_index(i);
  }
  return out;
}

std::vector<FieldElement> Field::elements_power() const {
  std::vector<FieldElement> out;
  out.reserve(order());
  out.push_back(zero());
  for (std::size_t k = 1; k < order(); ++k) {
    out.push_back({exp_[k % (order() - 1)]});  // ends with sigma^(2^n-1) = 1
  }
  return out;
}

std::string to_polynomial_string(FieldElement a) {
  if (a.is_zero()) return "0";
  std::string s;
  for (int k = 31; k >= 0; --k) {
    if (((a.bits >> k) & 1u) == 0) continue;
    if (!s.empty()) s += " + ";
    if (k == 0)
      s += "1";
    else if (k == 1)
      s += "sigma";
    else
      s += "sigma^" + std::to_string(k);
  }
  return s;
}

FieldPtr make_field(int n) { return std::make_shared<Field>(n); }

FieldPtr make_field(int n, std::uint32_t modulus_poly) {
  return std::make_shared<Field>(n, modulus_poly);
}

}  // namespace qps
