#include <algorithm>
#include <bit>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "qps/gf.hpp"

using qps::Basis;
using qps::BasisKind;
using qps::Field;
using qps::FieldElement;
using qps::make_field;

TEST_CASE("field product matches schoolbook polynomial arithmetic") {
  for (int n = 1; n <= 5; ++n) {
    auto f = make_field(n);
    for (std::uint32_t a = 0; a < f->order(); ++a) {
      for (std::uint32_t b = 0; b < f->order(); ++b) {
        const std::uint32_t want = oracle::poly_mul_mod(a, b, f->modulus());
        CHECK(f->mul({a}, {b}).bits == want);
        CHECK(Field::carryless_mul_mod(a, b, f->modulus(), n) == want);
      }
    }
  }
  // Spot checks at the largest supported degree.
  auto f12 = make_field(12);
  for (std::uint32_t a = 1; a < f12->order(); a = a * 5 + 13) {
    for (std::uint32_t b = 3; b < f12->order(); b = b * 7 + 5) {
      CHECK(f12->mul({a}, {b}).bits ==
            oracle::poly_mul_mod(a, b, f12->modulus()));
    }
  }
}

TEST_CASE("trace and character match the repeated-squaring oracle") {
  for (int n = 1; n <= 6; ++n) {
    auto f = make_field(n);
    for (std::uint32_t a = 0; a < f->order(); ++a) {
      CHECK(f->trace({a}) == oracle::trace(a, f->modulus(), n));
      CHECK(f->character({a}) == oracle::character(a, f->modulus(), n));
    }
  }
}

TEST_CASE("built-in modulus is primitive at every supported degree") {
  for (int n = 1; n <= Field::kMaxDegree; ++n) {
    CAPTURE(n);
    CHECK(oracle::x_is_primitive(Field::default_modulus(n), n));
  }
}

TEST_CASE("non-primitive moduli are rejected") {
  CHECK_THROWS_AS(make_field(2, 0x5), std::invalid_argument);   // (x+1)^2
  CHECK_THROWS_AS(make_field(3, 0xF), std::invalid_argument);   // reducible
  // x^4+x^3+x^2+x+1 is irreducible but x has order 5, not 15.
  CHECK(!oracle::x_is_primitive(0x1F, 4));
  CHECK_THROWS_AS(make_field(4, 0x1F), std::invalid_argument);
  // Degree mismatch between n and the top bit.
  CHECK_THROWS_AS(make_field(3, 0x13), std::invalid_argument);
  // Degree bounds are range errors, not modulus problems.
  CHECK_THROWS_AS(make_field(0), std::out_of_range);
  CHECK_THROWS_AS(make_field(Field::kMaxDegree + 1), std::out_of_range);
  // An alternative primitive modulus is accepted and changes the product.
  auto alt = make_field(4, 0x19);
  CHECK(alt->modulus() == 0x19);
  CHECK(alt->mul({0x8}, {0x2}).bits ==
        oracle::poly_mul_mod(0x8, 0x2, 0x19));
}

TEST_CASE("GF(4) worked facts") {
  auto f = make_field(2);
  const FieldElement sigma = f->generator();
  CHECK(sigma.bits == 0x2);
  CHECK(f->mul(sigma, sigma).bits == 0x3);           // sigma^2 = sigma + 1
  CHECK(f->pow(sigma, 3).bits == 0x1);               // sigma^3 = 1
  CHECK(f->inv(sigma).bits == 0x3);                  // sigma^-1 = sigma^2
  CHECK(f->log({0x3}) == 2);
  CHECK(f->trace({0x0}) == 0);
  CHECK(f->trace({0x1}) == 0);
  CHECK(f->trace({0x2}) == 1);
  CHECK(f->trace({0x3}) == 1);

  // Self-dual basis is (sigma, sigma^2); canonical order follows it.
  REQUIRE(f->self_dual_basis().elements.size() == 2);
  CHECK(f->self_dual_basis().elements[0].bits == 0x2);
  CHECK(f->self_dual_basis().elements[1].bits == 0x3);
  const std::vector<std::uint32_t> canon = {0x0, 0x2, 0x3, 0x1};
  for (std::uint32_t i = 0; i < 4; ++i) {
    CHECK(f->from_canonical_index(i).bits == canon[i]);
    CHECK(f->canonical_index({canon[i]}) == i);
  }

  // Dual of the polynomial basis {1, sigma} is (sigma^2, 1).
  const Basis dual = f->dual_basis(f->polynomial_basis());
  REQUIRE(dual.elements.size() == 2);
  CHECK(dual.elements[0].bits == 0x3);
  CHECK(dual.elements[1].bits == 0x1);
}

TEST_CASE("self-dual bases agree with exhaustive search") {
  for (int n = 1; n <= 4; ++n) {
    auto f = make_field(n);
    const auto all = oracle::self_dual_bases(f->modulus(), n);
    REQUIRE(!all.empty());
    std::vector<std::uint32_t> built;
    for (FieldElement e : f->self_dual_basis().elements) {
      built.push_back(e.bits);
    }
    CHECK(std::find(all.begin(), all.end(), built) != all.end());
    CHECK(f->is_self_dual(f->self_dual_basis()));
    // Every tuple the search finds passes the library predicate too.
    for (const auto& tuple : all) {
      std::vector<FieldElement> elems;
      for (std::uint32_t bits : tuple) elems.push_back({bits});
      CHECK(f->is_self_dual(f->make_basis(elems)));
    }
  }
}

TEST_CASE("dual pairing and dual-of-dual") {
  for (int n = 1; n <= 6; ++n) {
    auto f = make_field(n);
    const Basis& poly = f->polynomial_basis();
    const Basis dual = f->dual_basis(poly);
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) {
        const int want = (k == l) ? 1 : 0;
        CHECK(f->trace(f->mul(poly.elements[static_cast<std::size_t>(k)],
                              dual.elements[static_cast<std::size_t>(l)])) ==
              want);
      }
    }
    const Basis back = f->dual_basis(dual);
    for (int k = 0; k < n; ++k) {
      CHECK(back.elements[static_cast<std::size_t>(k)] ==
            poly.elements[static_cast<std::size_t>(k)]);
    }
    // A self-dual basis is its own dual.
    const Basis sd_dual = f->dual_basis(f->self_dual_basis());
    for (int k = 0; k < n; ++k) {
      CHECK(sd_dual.elements[static_cast<std::size_t>(k)] ==
            f->self_dual_basis().elements[static_cast<std::size_t>(k)]);
    }
  }
}

TEST_CASE("normal basis is a Frobenius orbit") {
  for (int n = 2; n <= 8; ++n) {
    auto f = make_field(n);
    const auto& nb = f->normal_basis().elements;
    REQUIRE(static_cast<int>(nb.size()) == n);
    for (int j = 1; j < n; ++j) {
      CHECK(f->mul(nb[static_cast<std::size_t>(j - 1)],
                   nb[static_cast<std::size_t>(j - 1)]) ==
            nb[static_cast<std::size_t>(j)]);
    }
    // Orbit closes: squaring the last element returns the first.
    CHECK(f->mul(nb.back(), nb.back()) == nb.front());
  }
}

TEST_CASE("canonical index is a bijection and GF(2)-linear") {
  for (int n = 1; n <= 6; ++n) {
    auto f = make_field(n);
    std::set<std::uint32_t> seen;
    for (std::uint32_t bits = 0; bits < f->order(); ++bits) {
      const std::uint32_t idx = f->canonical_index({bits});
      CHECK(idx < f->order());
      seen.insert(idx);
      CHECK(f->from_canonical_index(idx).bits == bits);
    }
    CHECK(seen.size() == f->order());
    CHECK(f->canonical_index(f->zero()) == 0);

    for (std::uint32_t a = 0; a < f->order(); ++a) {
      for (std::uint32_t b = 0; b < f->order(); ++b) {
        CHECK(f->canonical_index(f->add({a}, {b})) ==
              (f->canonical_index({a}) ^ f->canonical_index({b})));
        // Trace form = bit overlap parity of the canonical indices.
        const int overlap = std::popcount(f->canonical_index({a}) &
                                          f->canonical_index({b})) &
                            1;
        CHECK(f->trace(f->mul({a}, {b})) == overlap);
      }
    }
  }
}

TEST_CASE("coordinate maps round-trip on every basis") {
  auto f = make_field(3);
  const Basis arbitrary =
      f->make_basis({f->generator(), f->one(), f->element(0x6)});
  const Basis* bases[] = {&f->polynomial_basis(), &f->normal_basis(),
                          &f->self_dual_basis(), &arbitrary};
  for (const Basis* b : bases) {
    for (std::uint32_t bits = 0; bits < f->order(); ++bits) {
      const std::uint32_t mask = f->coordinate_mask({bits}, *b);
      CHECK(f->from_coordinate_mask(mask, *b).bits == bits);
      const auto coords = f->coordinates({bits}, *b);
      CHECK(f->from_coordinates(coords, *b).bits == bits);
      // Expansion reproduces the element directly.
      FieldElement acc = f->zero();
      for (int k = 0; k < 3; ++k) {
        if (coords[static_cast<std::size_t>(k)]) {
          acc = f->add(acc, b->elements[static_cast<std::size_t>(k)]);
        }
      }
      CHECK(acc.bits == bits);
    }
  }
}

TEST_CASE("basis validation") {
  auto f = make_field(3);
  CHECK_THROWS_AS(f->make_basis({f->one(), f->generator()}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      f->make_basis({f->one(), f->generator(), f->element(0x3)}),
      std::invalid_argument);  // 1 + sigma = 0x3 is dependent
  auto other = make_field(4, 0x19);
  CHECK_THROWS_AS(f->check_basis(other->polynomial_basis()),
                  std::invalid_argument);
  CHECK_THROWS_AS(f->element(0x8), std::invalid_argument);
  CHECK_THROWS_AS(f->from_coordinates({1, 0}, f->polynomial_basis()),
                  std::invalid_argument);
}

TEST_CASE("zero-element edge cases") {
  auto f = make_field(4);
  CHECK_THROWS_AS(f->inv(f->zero()), std::domain_error);
  CHECK_THROWS_AS(f->log(f->zero()), std::domain_error);
  CHECK_THROWS_AS(f->pow(f->zero(), -1), std::domain_error);
  CHECK(f->pow(f->zero(), 0).bits == 0x1);
  CHECK(f->pow(f->zero(), 5).bits == 0x0);
  CHECK(f->pow(f->generator(), -1) == f->inv(f->generator()));
  CHECK(f->pow(f->generator(), 15).bits == 0x1);
  CHECK(f->pow(f->generator(), -3) ==
        f->inv(f->pow(f->generator(), 3)));
}

TEST_CASE("element enumerations") {
  auto f = make_field(3);
  const auto canon = f->elements_canonical();
  REQUIRE(canon.size() == 8);
  for (std::uint32_t i = 0; i < 8; ++i) {
    CHECK(canon[i] == f->from_canonical_index(i));
  }
  const auto powers = f->elements_power();
  REQUIRE(powers.size() == 8);
  CHECK(powers[0].is_zero());
  for (std::uint32_t k = 1; k < 8; ++k) {
    CHECK(powers[k] == f->pow(f->generator(), k));
  }
  CHECK(powers.back() == f->one());  // sigma^7 = 1
}

TEST_CASE("bit-matrix inversion") {
  using qps::invert_bit_matrix;
  CHECK(invert_bit_matrix({0x1, 0x2}, 2) ==
        std::vector<std::uint32_t>{0x1, 0x2});
  // [[1,1],[0,1]] is its own inverse over GF(2).
  CHECK(invert_bit_matrix({0x3, 0x2}, 2) ==
        std::vector<std::uint32_t>{0x3, 0x2});
  CHECK(invert_bit_matrix({0x3, 0x3}, 2).empty());
  CHECK(invert_bit_matrix({0x5, 0x2, 0x4}, 3).empty() == false);
}

TEST_CASE("polynomial strings") {
  CHECK(qps::to_polynomial_string({0x0}) == "0");
  CHECK(qps::to_polynomial_string({0x1}) == "1");
  CHECK(qps::to_polynomial_string({0x2}) == "sigma");
  CHECK(qps::to_polynomial_string({0x7}) == "sigma^2 + sigma + 1");
}

TEST_CASE("modulus table override through the environment") {
  const char* path = "poly_table_test.txt";
  {
    std::ofstream out(path);
    out << "# test override\n4: 0x19\n";
  }
  REQUIRE(setenv("QPS_POLY_TABLE", path, 1) == 0);
  auto f = make_field(4);
  CHECK(f->modulus() == 0x19);
  // Other degrees fall back to the built-in table.
  CHECK(make_field(3)->modulus() == Field::default_modulus(3));
  REQUIRE(setenv("QPS_POLY_TABLE", "no_such_file_here.txt", 1) == 0);
  CHECK_THROWS_AS(make_field(4), std::invalid_argument);
  unsetenv("QPS_POLY_TABLE");
  CHECK(make_field(4)->modulus() == Field::default_modulus(4));
  std::remove(path);
}
