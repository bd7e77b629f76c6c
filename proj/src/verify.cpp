#include "qps/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "qps/gridio.hpp"
#include "qps/wigner.hpp"

namespace qps {

namespace {

using Fields = std::vector<FieldPtr>;

constexpr double kTightTol = 1e-12;
constexpr double kExactTol = 1e-14;
constexpr double kSumTol = 1e-10;

struct Checker {
  CheckResult result;

  explicit Checker(std::string name) { result.name = std::move(name); }
  bool ok() const { return result.passed; }
  void ran(int n) { result.n_max_run = std::max(result.n_max_run, n); }
  void fail(std::string detail) {
    if (result.passed) {
      result.passed = false;
      result.detail = std::move(detail);
    }
  }
};

std::string hexmask(FieldElement a) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "0x%x", a.bits);
  return buf;
}

double inf_norm(const DenseOperator& m) { return m.cwiseAbs().maxCoeff(); }

DenseOperator identity(const Field& f) {
  const auto d = static_cast<Eigen::Index>(f.order());
  return DenseOperator::Identity(d, d);
}

// Degrees to sweep: 1..min(n_max, cap), resolved against the prebuilt list.
std::vector<const Field*> sweep(const Fields& fields, const VerifyOptions& opt,
                                int cap) {
  std::vector<const Field*> out;
  for (const auto& f : fields) {
    if (f->degree() <= std::min(opt.n_max, cap)) out.push_back(f.get());
  }
  return out;
}

FieldPtr shared(const Fields& fields, const Field& f) {
  return fields[static_cast<std::size_t>(f.degree() - 1)];
}

std::vector<std::pair<std::string, StateVector>> test_states(FieldPtr field) {
  std::vector<std::pair<std::string, StateVector>> states;
  states.emplace_back("coherent_plus", coherent_plus(field));
  states.emplace_back("coherent_minus", coherent_minus(field));
  states.emplace_back("coherent(0.3+0.2i)",
                      su2_coherent(field, Complex(0.3, 0.2)));
  if (field->degree() >= 2) {
    states.emplace_back("dicke(1)", dicke_state(field, 1));
  }
  return states;
}

// ---------------------------------------------------------------- gf checks

CheckResult check_product_tables(const Fields& fields,
                                 const VerifyOptions& opt) {
  Checker c("field product: log/exp tables match the carry-less definition");
  for (const Field* f : sweep(fields, opt, 6)) {
    c.ran(f->degree());
    for (std::uint32_t a = 0; a < f->order() && c.ok(); ++a) {
      for (std::uint32_t b = 0; b < f->order(); ++b) {
        const auto via_tables = f->mul({a}, {b}).bits;
        const auto via_def =
            Field::carryless_mul_mod(a, b, f->modulus(), f->degree());
        if (via_tables != via_def) {
          c.fail("n=" + std::to_string(f->degree()) + " " + hexmask({a}) +
                 "*" + hexmask({b}) + ": tables give " +
                 hexmask({via_tables}) + ", definition gives " +
                 hexmask({via_def}));
          break;
        }
      }
    }
    for (std::uint32_t a = 1; a < f->order() && c.ok(); ++a) {
      if (f->mul({a}, f->inv({a})).bits != 1) {
        c.fail("n=" + std::to_string(f->degree()) + ": " + hexmask({a}) +
               " * inv != 1");
      }
    }
  }
  return c.result;
}

CheckResult check_trace_character(const Fields& fields,
                                  const VerifyOptions& opt) {
  Checker c("trace is GF(2)-linear; character sum collapses to 2^n delta");
  for (const Field* f : sweep(fields, opt, 6)) {
    c.ran(f->degree());
    for (std::uint32_t a = 0; a < f->order() && c.ok(); ++a) {
      for (std::uint32_t b = 0; b < f->order(); ++b) {
        if (f->trace(f->add({a}, {b})) != (f->trace({a}) ^ f->trace({b}))) {
          c.fail("n=" + std::to_string(f->degree()) + ": tr(" + hexmask({a}) +
                 " + " + hexmask({b}) + ") is not the XOR of traces");
          break;
        }
      }
    }
  }
  for (const Field* f : sweep(fields, opt, 10)) {
    c.ran(f->degree());
    for (std::uint32_t b = 0; b < f->order() && c.ok(); ++b) {
      long long sum = 0;
      for (std::uint32_t a = 0; a < f->order(); ++a) {
        sum += f->character(f->mul({a}, {b}));
      }
      const long long expect = b == 0 ? static_cast<long long>(f->order()) : 0;
      if (sum != expect) {
        c.fail("n=" + std::to_string(f->degree()) +
               ": sum_alpha chi(alpha * " + hexmask({b}) + ") = " +
               std::to_string(sum) + ", expected " + std::to_string(expect));
      }
    }
  }
  return c.result;
}

CheckResult check_dual_pairing(const Fields& fields,
                               const VerifyOptions& opt) {
  Checker c("dual basis pairing tr(t_k t'_l) = delta_kl; dual is involutive");
  for (const Field* f : sweep(fields, opt, Field::kMaxDegree)) {
    c.ran(f->degree());
    for (const Basis* basis : {&f->polynomial_basis(), &f->normal_basis()}) {
      const Basis dual = f->dual_basis(*basis);
      const int n = f->degree();
      for (int i = 0; i < n && c.ok(); ++i) {
        for (int j = 0; j < n; ++j) {
          const int got = f->trace(
              f->mul(basis->elements[static_cast<std::size_t>(i)],
                     dual.elements[static_cast<std::size_t>(j)]));
          if (got != (i == j ? 1 : 0)) {
            c.fail("n=" + std::to_string(n) + ": tr(t_" + std::to_string(i) +
                   " t'_" + std::to_string(j) + ") = " + std::to_string(got));
            break;
          }
        }
      }
      const Basis back = f->dual_basis(dual);
      if (c.ok() && back.elements != basis->elements) {
        c.fail("n=" + std::to_string(f->degree()) +
               ": dual of dual differs from the original basis");
      }
    }
  }
  return c.result;
}

CheckResult check_normal_basis(const Fields& fields,
                               const VerifyOptions& opt) {
  Checker c("normal basis is the Frobenius orbit of one element");
  for (const Field* f : sweep(fields, opt, Field::kMaxDegree)) {
    c.ran(f->degree());
    const auto& e = f->normal_basis().elements;
    for (std::size_t k = 0; k + 1 < e.size(); ++k) {
      if (f->mul(e[k], e[k]) != e[k + 1]) {
        c.fail("n=" + std::to_string(f->degree()) + ": element " +
               std::to_string(k + 1) + " is not the square of element " +
               std::to_string(k));
      }
    }
    if (c.ok() && f->mul(e.back(), e.back()) != e.front()) {
      c.fail("n=" + std::to_string(f->degree()) +
             ": orbit does not close under squaring");
    }
  }
  return c.result;
}

CheckResult check_self_dual(const Fields& fields, const VerifyOptions& opt) {
  Checker c("self-dual basis satisfies tr(s_i s_j) = delta_ij");
  for (const Field* f : sweep(fields, opt, Field::kMaxDegree)) {
    c.ran(f->degree());
    const auto& e = f->self_dual_basis().elements;
    for (std::size_t i = 0; i < e.size() && c.ok(); ++i) {
      for (std::size_t j = 0; j < e.size(); ++j) {
        if (f->trace(f->mul(e[i], e[j])) != (i == j ? 1 : 0)) {
          c.fail("n=" + std::to_string(f->degree()) + ": tr(s_" +
                 std::to_string(i) + " s_" + std::to_string(j) +
                 ") != delta");
          break;
        }
      }
    }
  }
  return c.result;
}

CheckResult check_canonical_index(const Fields& fields,
                                  const VerifyOptions& opt) {
  Checker c("canonical index: linear bijection carrying the trace form");
  for (const Field* f : sweep(fields, opt, Field::kMaxDegree)) {
    c.ran(f->degree());
    for (std::uint32_t a = 0; a < f->order() && c.ok(); ++a) {
      if (f->from_canonical_index(f->canonical_index({a})).bits != a) {
        c.fail("n=" + std::to_string(f->degree()) + ": round trip fails at " +
               hexmask({a}));
      }
      if (f->canonical_index({a}) !=
          f->coordinate_mask({a}, f->self_dual_basis())) {
        c.fail("n=" + std::to_string(f->degree()) +
               ": index differs from self-dual coordinates at " +
               hexmask({a}));
      }
    }
  }
  for (const Field* f : sweep(fields, opt, 6)) {
    for (std::uint32_t a = 0; a < f->order() && c.ok(); ++a) {
      for (std::uint32_t b = 0; b < f->order(); ++b) {
        const auto ia = f->canonical_index({a});
        const auto ib = f->canonical_index({b});
        if (f->canonical_index(f->add({a}, {b})) != (ia ^ ib)) {
          c.fail("n=" + std::to_string(f->degree()) +
                 ": index not additive at " + hexmask({a}) + ", " +
                 hexmask({b}));
          break;
        }
        if (f->trace(f->mul({a}, {b})) !=
            (std::popcount(ia & ib) & 1)) {
          c.fail("n=" + std::to_string(f->degree()) +
                 ": tr(ab) != parity of AND of indices at " + hexmask({a}) +
                 ", " + hexmask({b}));
          break;
        }
      }
    }
  }
  return c.result;
}

// ----------------------------------------------------------- hilbert checks

CheckResult check_state_norms(const Fields& fields, const VerifyOptions& opt) {
  Checker c("coherent and Dicke states are normalized");
  for (const Field* f : sweep(fields, opt, Field::kMaxDegree)) {
    c.ran(f->degree());
    for (const auto& [name, state] : test_states(shared(fields, *f))) {
      if (std::abs(state.norm() - 1.0) > kTightTol) {
        c.fail("n=" + std::to_string(f->degree()) + " " + name + ": norm " +
               format_scientific(state.norm()));
      }
    }
  }
  return c.result;
}

CheckResult check_fourier_dense_vs_butterfly(const Fields& fields,
                                             const VerifyOptions& opt) {
  Checker c("Fourier butterfly equals the dense character kernel");
  for (const Field* f : sweep(fields, opt, 4)) {
    c.ran(f->degree());
    const DenseOperator dense = fourier_op(*f);
    const auto dim = static_cast<Eigen::Index>(f->order());
    for (Eigen::Index j = 0; j < dim && c.ok(); ++j) {
      Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim);
      e(j) = 1.0;
      const StateVector col =
          apply_fourier(StateVector(shared(fields, *f), e));
      if ((col.amplitudes() - dense.col(j)).cwiseAbs().maxCoeff() >
          kExactTol) {
        c.fail("n=" + std::to_string(f->degree()) + ": column " +
               std::to_string(j) + " differs");
      }
    }
  }
  return c.result;
}

CheckResult check_fourier_involution(const Fields& fields,
                                     const VerifyOptions& opt) {
  Checker c("Fourier operator is a unitary involution");
  for (const Field* f : sweep(fields, opt, 5)) {
    c.ran(f->degree());
    const DenseOperator fop = fourier_op(*f);
    const double inv_err = inf_norm(fop * fop - identity(*f));
    if (inv_err > kTightTol) {
      c.fail("n=" + std::to_string(f->degree()) +
             ": ||F^2 - I||_inf = " + format_scientific(inv_err));
    }
    if (!is_unitary(fop)) {
      c.fail("n=" + std::to_string(f->degree()) + ": F not unitary");
    }
  }
  return c.result;
}

CheckResult check_coherent_eigenstates(const Fields& fields,
                                       const VerifyOptions& opt) {
  Checker c("coherent states at xi = +-sqrt(2)-1 are Fourier eigenstates");
  for (const Field* f : sweep(fields, opt, Field::kMaxDegree)) {
    c.ran(f->degree());
    const auto plus = fourier_eigen_report(coherent_plus(shared(fields, *f)));
    if (plus.sign != +1 || plus.residual > kTightTol) {
      c.fail("n=" + std::to_string(f->degree()) + " xi_plus: sign " +
             std::to_string(plus.sign) + ", residual " +
             format_scientific(plus.residual));
    }
    const auto minus =
        fourier_eigen_report(coherent_minus(shared(fields, *f)));
    const int want = (f->degree() % 2 == 0) ? +1 : -1;
    if (minus.sign != want || minus.residual > kTightTol) {
      c.fail("n=" + std::to_string(f->degree()) + " xi_minus: sign " +
             std::to_string(minus.sign) + ", residual " +
             format_scientific(minus.residual));
    }
  }
  return c.result;
}

CheckResult check_tensor_factorization(const Fields& fields,
                                       const VerifyOptions& opt) {
  Checker c("coherent states factor per qubit; middle Dicke states do not");
  for (const Field* f : sweep(fields, opt, 6)) {
    c.ran(f->degree());
    const FieldPtr fp = shared(fields, *f);
    const StateVector coh = su2_coherent(fp, Complex(0.4, -0.3));
    const auto factors = tensor_factors(coh);
    if (!factors) {
      c.fail("n=" + std::to_string(f->degree()) +
             ": coherent state reported non-product");
      continue;
    }
    for (std::uint32_t i = 0; i < f->order() && c.ok(); ++i) {
      Complex prod = 1.0;
      for (int k = 0; k < f->degree(); ++k) {
        prod *= (*factors)[static_cast<std::size_t>(k)]((i >> k) & 1u);
      }
      if (std::abs(prod - coh.amplitudes()(i)) > kTightTol) {
        c.fail("n=" + std::to_string(f->degree()) +
               ": factor product mismatches amplitude " + std::to_string(i));
      }
    }
    for (int k = 1; k < f->degree() && c.ok(); ++k) {
      if (tensor_factors(dicke_state(fp, k))) {
        c.fail("n=" + std::to_string(f->degree()) + ": dicke(" +
               std::to_string(k) + ") reported as a product state");
      }
    }
  }
  return c.result;
}

CheckResult check_basis_relabeling(const Fields& fields,
                                   const VerifyOptions& opt) {
  Checker c("basis relabeling permutations are unitary and compose");
  for (const Field* f : sweep(fields, opt, 4)) {
    c.ran(f->degree());
    const Basis& p = f->polynomial_basis();
    const Basis& m = f->normal_basis();
    const Basis& s = f->self_dual_basis();
    const DenseOperator ps = basis_change_permutation(*f, p, s);
    const DenseOperator sm = basis_change_permutation(*f, s, m);
    const DenseOperator pm = basis_change_permutation(*f, p, m);
    if (!is_unitary(ps) || !is_unitary(sm)) {
      c.fail("n=" + std::to_string(f->degree()) + ": relabeling not unitary");
    }
    if (c.ok() && inf_norm(sm * ps - pm) > kExactTol) {
      c.fail("n=" + std::to_string(f->degree()) +
             ": composition differs from the direct relabeling");
    }
    if (c.ok() &&
        inf_norm(basis_change_permutation(*f, s, s) - identity(*f)) >
            kExactTol) {
      c.fail("n=" + std::to_string(f->degree()) +
             ": identity relabeling is not the identity matrix");
    }
  }
  return c.result;
}

// ------------------------------------------------------------- pauli checks

CheckResult check_displacement_hermitian(const Fields& fields,
                                         const VerifyOptions& opt) {
  Checker c("displacement operators are Hermitian with D(0,0) = I");
  for (const Field* f : sweep(fields, opt, 4)) {
    c.ran(f->degree());
    for (std::uint32_t a = 0; a < f->order() && c.ok(); ++a) {
      for (std::uint32_t b = 0; b < f->order(); ++b) {
        const DenseOperator d =
            displacement(*f, {{a}, {b}}, opt.convention);
        const double herm_err = inf_norm(d - d.adjoint());
        if (herm_err > kTightTol) {
          c.fail("n=" + std::to_string(f->degree()) + " alpha=" +
                 hexmask({a}) + " beta=" + hexmask({b}) +
                 ": ||D - D^dagger||_inf = " + format_scientific(herm_err));
          break;
        }
        if (!is_unitary(d)) {
          c.fail("n=" + std::to_string(f->degree()) + " alpha=" +
                 hexmask({a}) + " beta=" + hexmask({b}) + ": D not unitary");
          break;
        }
      }
    }
    if (!c.ok()) break;
    const double id_err = inf_norm(
        displacement(*f, {f->zero(), f->zero()}, opt.convention) -
        identity(*f));
    if (id_err > kExactTol) {
      c.fail("n=" + std::to_string(f->degree()) +
             " alpha=0x0 beta=0x0: ||D(0,0) - I||_inf = " +
             format_scientific(id_err));
      break;
    }
  }
  return c.result;
}

CheckResult check_pauli_algebra(const Fields& fields,
                                const VerifyOptions& opt) {
  Checker c("z/x are involutive unitaries obeying the commutation rule");
  for (const Field* f : sweep(fields, opt, 4)) {
    c.ran(f->degree());
    std::vector<DenseOperator> zs, xs;
    for (std::uint32_t b = 0; b < f->order(); ++b) {
      zs.push_back(z_op(*f, {b}));
      xs.push_back(x_op(*f, {b}));
    }
    for (std::uint32_t b = 0; b < f->order() && c.ok(); ++b) {
      if (inf_norm(zs[b] * zs[b] - identity(*f)) > kExactTol ||
          inf_norm(xs[b] * xs[b] - identity(*f)) > kExactTol) {
        c.fail("n=" + std::to_string(f->degree()) + " beta=" + hexmask({b}) +
               ": z or x is not an involution");
      }
      if (c.ok() && (!is_unitary(zs[b]) || !is_unitary(xs[b]))) {
        c.fail("n=" + std::to_string(f->degree()) + " beta=" + hexmask({b}) +
               ": z or x is not unitary");
      }
    }
    for (std::uint32_t a = 0; a < f->order() && c.ok(); ++a) {
      for (std::uint32_t b = 0; b < f->order(); ++b) {
        const double chi = f->character(f->mul({a}, {b}));
        if (inf_norm(zs[a] * xs[b] - chi * (xs[b] * zs[a])) > kExactTol) {
          c.fail("n=" + std::to_string(f->degree()) + " alpha=" +
                 hexmask({a}) + " beta=" + hexmask({b}) +
                 ": Z X != chi(alpha beta) X Z");
          break;
        }
      }
    }
  }
  return c.result;
}

CheckResult check_fourier_conjugation(const Fields& fields,
                                      const VerifyOptions& opt) {
  Checker c("Fourier conjugation turns z into x");
  for (const Field* f : sweep(fields, opt, 4)) {
    c.ran(f->degree());
    const DenseOperator fop = fourier_op(*f);
    for (std::uint32_t b = 0; b < f->order() && c.ok(); ++b) {
      const double err =
          inf_norm(fop * z_op(*f, {b}) * fop.adjoint() - x_op(*f, {b}));
      if (err > kTightTol) {
        c.fail("n=" + std::to_string(f->degree()) + " beta=" + hexmask({b}) +
               ": ||F Z F^dagger - X||_inf = " + format_scientific(err));
      }
    }
  }
  return c.result;
}

CheckResult check_factorized_builds(const Fields& fields,
                                    const VerifyOptions& opt) {
  Checker c("per-qubit Kronecker builds equal the definition builds");
  const PhaseConvention clean{};
  for (const Field* f : sweep(fields, opt, 4)) {
    c.ran(f->degree());
    const int n = f->degree();
    auto bits_of = [&](std::uint32_t mask) {
      std::vector<int> v(static_cast<std::size_t>(n));
      for (int k = 0; k < n; ++k) v[static_cast<std::size_t>(k)] = (mask >> k) & 1;
      return v;
    };
    for (std::uint32_t a = 0; a < f->order() && c.ok(); ++a) {
      const auto ia = bits_of(f->canonical_index({a}));
      std::vector<Eigen::Matrix2cd> zf, xf;
      for (int k = 0; k < n; ++k) {
        zf.push_back(ia[static_cast<std::size_t>(k)]
                         ? single_qubit::sigma_z()
                         : Eigen::Matrix2cd::Identity());
        xf.push_back(ia[static_cast<std::size_t>(k)]
                         ? single_qubit::sigma_x()
                         : Eigen::Matrix2cd::Identity());
      }
      if (inf_norm(kron_all(zf) - z_op(*f, {a})) > kExactTol) {
        c.fail("n=" + std::to_string(n) + " beta=" + hexmask({a}) +
               ": factorized z build differs");
      }
      if (c.ok() && inf_norm(kron_all(xf) - x_op(*f, {a})) > kExactTol) {
        c.fail("n=" + std::to_string(n) + " beta=" + hexmask({a}) +
               ": factorized x build differs");
      }
    }
    for (std::uint32_t a = 0; a < f->order() && c.ok(); ++a) {
      for (std::uint32_t b = 0; b < f->order(); ++b) {
        const auto ia = bits_of(f->canonical_index({a}));
        const auto ib = bits_of(f->canonical_index({b}));
        std::vector<Eigen::Matrix2cd> df;
        for (int k = 0; k < n; ++k) {
          df.push_back(single_qubit::displacement(
              ia[static_cast<std::size_t>(k)], ib[static_cast<std::size_t>(k)],
              clean));
        }
        if (inf_norm(kron_all(df) - displacement(*f, {{a}, {b}}, clean)) >
            kExactTol) {
          c.fail("n=" + std::to_string(n) + " alpha=" + hexmask({a}) +
                 " beta=" + hexmask({b}) + ": factorized D build differs");
          break;
        }
      }
    }
    std::vector<Eigen::Matrix2cd> hf(static_cast<std::size_t>(n));
    Eigen::Matrix2cd h;
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    std::fill(hf.begin(), hf.end(), h);
    if (c.ok() && inf_norm(kron_all(hf) - fourier_op(*f)) > kExactTol) {
      c.fail("n=" + std::to_string(n) +
             ": Fourier operator is not the per-qubit Kronecker build");
    }
  }
  return c.result;
}

CheckResult check_displacement_orthogonality(const Fields& fields,
                                             const VerifyOptions& opt) {
  Checker c("displacements are a trace-orthogonal operator basis");
  for (const Field* f : sweep(fields, opt, 3)) {
    c.ran(f->degree());
    std::vector<DenseOperator> ds;
    for (std::uint32_t a = 0; a < f->order(); ++a) {
      for (std::uint32_t b = 0; b < f->order(); ++b) {
        ds.push_back(displacement(*f, {{a}, {b}}, opt.convention));
      }
    }
    const double dim = static_cast<double>(f->order());
    for (std::size_t p = 0; p < ds.size() && c.ok(); ++p) {
      for (std::size_t q = 0; q < ds.size(); ++q) {
        const Complex g = ds[p].conjugate().cwiseProduct(ds[q]).sum() / dim;
        const Complex want = p == q ? 1.0 : 0.0;
        if (std::abs(g - want) > kTightTol) {
          c.fail("n=" + std::to_string(f->degree()) + ": Gram(" +
                 std::to_string(p) + "," + std::to_string(q) + ") = " +
                 format_scientific(g.real()) + " + " +
                 format_scientific(g.imag()) + "i");
          break;
        }
      }
    }
  }
  return c.result;
}

CheckResult check_phase_rule(const Fields& fields, const VerifyOptions& opt) {
  Checker c("phase rule: phi(0,.) = phi(.,0) = 1 and phi^2 = chi");
  for (const Field* f : sweep(fields, opt, 6)) {
    c.ran(f->degree());
    for (std::uint32_t a = 0; a < f->order() && c.ok(); ++a) {
      const Complex pa0 = phase_phi(*f, {{a}, f->zero()}, opt.convention);
      const Complex p0a = phase_phi(*f, {f->zero(), {a}}, opt.convention);
      if (std::abs(pa0 - 1.0) > kExactTol || std::abs(p0a - 1.0) > kExactTol) {
        c.fail("n=" + std::to_string(f->degree()) + " element " +
               hexmask({a}) + ": phi against zero is not 1");
      }
      for (std::uint32_t b = 0; b < f->order() && c.ok(); ++b) {
        const Complex phi = phase_phi(*f, {{a}, {b}}, opt.convention);
        const double chi = f->character(f->mul({a}, {b}));
        if (std::abs(phi * phi - chi) > kExactTol) {
          c.fail("n=" + std::to_string(f->degree()) + " alpha=" +
                 hexmask({a}) + " beta=" + hexmask({b}) +
                 ": phi^2 != chi(alpha beta)");
        }
      }
    }
  }
  return c.result;
}

CheckResult check_squeeze_relations(const Fields& fields,
                                    const VerifyOptions& opt) {
  Checker c("squeeze conjugation rescales z and x labels");
  for (const Field* f : sweep(fields, opt, 3)) {
    c.ran(f->degree());
    if (inf_norm(squeeze_op(*f, f->one()) - identity(*f)) > kExactTol) {
      c.fail("n=" + std::to_string(f->degree()) + ": S_1 != I");
    }
    for (std::uint32_t l = 1; l < f->order() && c.ok(); ++l) {
      const FieldElement lambda{l};
      const DenseOperator s = squeeze_op(*f, lambda);
      if (!is_unitary(s)) {
        c.fail("n=" + std::to_string(f->degree()) + " lambda=" +
               hexmask(lambda) + ": S not unitary");
      }
      for (std::uint32_t a = 0; a < f->order() && c.ok(); ++a) {
        const FieldElement alpha{a};
        const double z_err = inf_norm(
            s.adjoint() * z_op(*f, alpha) * s -
            z_op(*f, f->mul(alpha, f->inv(lambda))));
        const double x_err = inf_norm(s.adjoint() * x_op(*f, alpha) * s -
                                      x_op(*f, f->mul(alpha, lambda)));
        if (z_err > kExactTol || x_err > kExactTol) {
          c.fail("n=" + std::to_string(f->degree()) + " lambda=" +
                 hexmask(lambda) + " alpha=" + hexmask(alpha) +
                 ": conjugation identity fails");
        }
      }
    }
  }
  return c.result;
}

CheckResult check_squeeze_expectation(const Fields& fields,
                                      const VerifyOptions& opt) {
  Checker c("squeezed x and z expectations agree on coherent eigenstates");
  for (const Field* f : sweep(fields, opt, 4)) {
    c.ran(f->degree());
    const FieldPtr fp = shared(fields, *f);
    for (const StateVector& psi : {coherent_plus(fp), coherent_minus(fp)}) {
      for (std::uint32_t l = 1; l < f->order() && c.ok(); ++l) {
        const FieldElement lambda{l};
        const DenseOperator s = squeeze_op(*f, lambda);
        for (std::uint32_t a = 0; a < f->order(); ++a) {
          const FieldElement alpha{a};
          const Complex lhs = psi.amplitudes().dot(
              s.adjoint() * x_op(*f, alpha) * s * psi.amplitudes());
          const FieldElement al2 =
              f->mul(alpha, f->mul(lambda, lambda));
          const Complex rhs = psi.amplitudes().dot(
              s.adjoint() * z_op(*f, al2) * s * psi.amplitudes());
          if (std::abs(lhs - rhs) > kTightTol) {
            c.fail("n=" + std::to_string(f->degree()) + " lambda=" +
                   hexmask(lambda) + " alpha=" + hexmask(alpha) +
                   ": expectations differ by " +
                   format_scientific(std::abs(lhs - rhs)));
            break;
          }
        }
      }
    }
  }
  return c.result;
}

// ------------------------------------------------------------ wigner checks

CheckResult check_kernel_hermitian_trace(const Fields& fields,
                                         const VerifyOptions& opt) {
  Checker c("phase-space kernel is Hermitian with unit trace");
  for (const Field* f : sweep(fields, opt, 3)) {
    c.ran(f->degree());
    const KernelCache cache =
        build_kernel_cache(shared(fields, *f), opt.convention);
    for (std::uint32_t ia = 0; ia < f->order() && c.ok(); ++ia) {
      for (std::uint32_t ib = 0; ib < f->order(); ++ib) {
        const DenseOperator& k = cache.at(ia, ib);
        const double herm = inf_norm(k - k.adjoint());
        if (herm > kTightTol) {
          c.fail("n=" + std::to_string(f->degree()) + " point (" +
                 std::to_string(ia) + "," + std::to_string(ib) +
                 "): ||Delta - Delta^dagger||_inf = " +
                 format_scientific(herm));
          break;
        }
        if (std::abs(k.trace() - Complex(1.0)) > kTightTol) {
          c.fail("n=" + std::to_string(f->degree()) + " point (" +
                 std::to_string(ia) + "," + std::to_string(ib) +
                 "): Tr Delta != 1");
          break;
        }
      }
    }
  }
  return c.result;
}

CheckResult check_kernel_resolution(const Fields& fields,
                                    const VerifyOptions& opt) {
  Checker c("kernel sums: full grid gives 2^n I, alpha-sections project");
  for (const Field* f : sweep(fields, opt, 3)) {
    c.ran(f->degree());
    const KernelCache cache =
        build_kernel_cache(shared(fields, *f), opt.convention);
    const auto dim = static_cast<Eigen::Index>(f->order());
    DenseOperator total = DenseOperator::Zero(dim, dim);
    for (std::uint32_t ib = 0; ib < f->order(); ++ib) {
      DenseOperator section = DenseOperator::Zero(dim, dim);
      for (std::uint32_t ia = 0; ia < f->order(); ++ia) {
        section += cache.at(ia, ib);
      }
      total += section;
      DenseOperator projector = DenseOperator::Zero(dim, dim);
      projector(ib, ib) = static_cast<double>(f->order());
      if (inf_norm(section - projector) > kSumTol) {
        c.fail("n=" + std::to_string(f->degree()) + " beta index " +
               std::to_string(ib) +
               ": sum over alpha is not 2^n |beta><beta|");
      }
    }
    if (c.ok() &&
        inf_norm(total - static_cast<double>(f->order()) * identity(*f)) >
            kSumTol) {
      c.fail("n=" + std::to_string(f->degree()) +
             ": kernel grid does not sum to 2^n I");
    }
  }
  return c.result;
}

CheckResult check_kernel_factorization(const Fields& fields,
                                       const VerifyOptions& opt) {
  Checker c("kernel factorizes into per-qubit 2x2 kernels");
  const PhaseConvention clean{};
  for (const Field* f : sweep(fields, opt, 3)) {
    c.ran(f->degree());
    const int n = f->degree();
    for (std::uint32_t ia = 0; ia < f->order() && c.ok(); ++ia) {
      for (std::uint32_t ib = 0; ib < f->order(); ++ib) {
        std::vector<Eigen::Matrix2cd> kf;
        for (int k = 0; k < n; ++k) {
          kf.push_back(single_qubit::kernel_factor((ia >> k) & 1,
                                                   (ib >> k) & 1, clean));
        }
        const DenseOperator direct =
            kernel(*f,
                   {f->from_canonical_index(ia), f->from_canonical_index(ib)},
                   clean);
        if (inf_norm(kron_all(kf) - direct) > kTightTol) {
          c.fail("n=" + std::to_string(n) + " point (" + std::to_string(ia) +
                 "," + std::to_string(ib) + "): factorization differs");
          break;
        }
      }
    }
  }
  return c.result;
}

CheckResult check_wigner_reality_and_trace_route(const Fields& fields,
                                                 const VerifyOptions& opt) {
  Checker c("Wigner values are real and match the kernel trace route");
  for (const Field* f : sweep(fields, opt, 3)) {
    c.ran(f->degree());
    const KernelCache cache =
        build_kernel_cache(shared(fields, *f), opt.convention);
    for (const auto& [name, psi] : test_states(shared(fields, *f))) {
      const DenseOperator rho =
          psi.amplitudes() * psi.amplitudes().adjoint();
      const WignerGrid grid = wigner_of(psi, opt.convention);
      for (std::uint32_t ia = 0; ia < f->order() && c.ok(); ++ia) {
        for (std::uint32_t ib = 0; ib < f->order(); ++ib) {
          const Complex w = (rho * cache.at(ia, ib)).trace();
          if (std::abs(w.imag()) > kTightTol) {
            c.fail("n=" + std::to_string(f->degree()) + " " + name +
                   " point (" + std::to_string(ia) + "," +
                   std::to_string(ib) +
                   "): Im W = " + format_scientific(w.imag()));
            break;
          }
          if (std::abs(w.real() - grid.values(ia, ib)) > kTightTol) {
            c.fail("n=" + std::to_string(f->degree()) + " " + name +
                   " point (" + std::to_string(ia) + "," +
                   std::to_string(ib) +
                   "): moment route and trace route disagree");
            break;
          }
        }
      }
    }
  }
  return c.result;
}

CheckResult check_wigner_normalization(const Fields& fields,
                                       const VerifyOptions& opt) {
  Checker c("Wigner grids sum to 2^n (raw) and 1 (unit-sum)");
  for (const Field* f : sweep(fields, opt, Field::kDenseDegreeCap)) {
    c.ran(f->degree());
    const double order = static_cast<double>(f->order());
    for (const auto& [name, psi] : test_states(shared(fields, *f))) {
      const double raw = wigner_of(psi, opt.convention).sum();
      if (std::abs(raw - order) > kSumTol) {
        c.fail("n=" + std::to_string(f->degree()) + " " + name +
               ": raw sum " + format_scientific(raw));
      }
      const double unit =
          wigner_of(psi, opt.convention, Normalization::UnitSum).sum();
      if (c.ok() && std::abs(unit - 1.0) > kSumTol) {
        c.fail("n=" + std::to_string(f->degree()) + " " + name +
               ": unit sum " + format_scientific(unit));
      }
    }
    const auto dim = static_cast<Eigen::Index>(f->order());
    const DenseOperator mixed = DenseOperator::Identity(dim, dim) / order;
    const WignerGrid grid =
        wigner_of(shared(fields, *f), mixed, opt.convention);
    if ((grid.values.array() - 1.0 / order).abs().maxCoeff() > kTightTol) {
      c.fail("n=" + std::to_string(f->degree()) +
             ": maximally mixed state is not flat at 1/2^n");
    }
  }
  return c.result;
}

CheckResult check_marginals(const Fields& fields, const VerifyOptions& opt) {
  Checker c("marginals reproduce position and Fourier-basis distributions");
  for (const Field* f : sweep(fields, opt, 4)) {
    c.ran(f->degree());
    const double order = static_cast<double>(f->order());
    for (const auto& [name, psi] : test_states(shared(fields, *f))) {
      const Marginals m = marginals(wigner_of(psi, opt.convention));
      const StateVector fpsi = apply_fourier(psi);
      for (std::uint32_t i = 0; i < f->order() && c.ok(); ++i) {
        const double pos = order * std::norm(psi.amplitudes()(i));
        if (std::abs(m.over_alpha(i) - pos) > kSumTol) {
          c.fail("n=" + std::to_string(f->degree()) + " " + name +
                 ": alpha-marginal at " + std::to_string(i) + " is " +
                 format_scientific(m.over_alpha(i)) + ", expected " +
                 format_scientific(pos));
        }
        const double conj = order * std::norm(fpsi.amplitudes()(i));
        if (c.ok() && std::abs(m.over_beta(i) - conj) > kSumTol) {
          c.fail("n=" + std::to_string(f->degree()) + " " + name +
                 ": beta-marginal at " + std::to_string(i) + " is " +
                 format_scientific(m.over_beta(i)) + ", expected " +
                 format_scientific(conj));
        }
      }
    }
  }
  return c.result;
}

CheckResult check_coherent_marginal_form(const Fields& fields,
                                         const VerifyOptions& opt) {
  Checker c("coherent marginals are 2^n |xi|^2h / (1+|xi|^2)^n");
  for (const Field* f : sweep(fields, opt, 4)) {
    c.ran(f->degree());
    const double order = static_cast<double>(f->order());
    for (const double xi : {xi_plus(), xi_minus()}) {
      const StateVector psi = su2_coherent(shared(fields, *f), xi);
      const Marginals m = marginals(wigner_of(psi, opt.convention));
      const double denom =
          std::pow(1.0 + xi * xi, static_cast<double>(f->degree()));
      for (std::uint32_t i = 0; i < f->order() && c.ok(); ++i) {
        const double want =
            order * std::pow(xi * xi, std::popcount(i)) / denom;
        if (std::abs(m.over_alpha(i) - want) > kSumTol ||
            std::abs(m.over_beta(i) - want) > kSumTol) {
          c.fail("n=" + std::to_string(f->degree()) +
                 " xi=" + format_scientific(xi) + " index " +
                 std::to_string(i) + ": marginal differs from closed form");
        }
      }
    }
  }
  return c.result;
}

CheckResult check_closed_form(const Fields& fields,
                              const VerifyOptions& opt) {
  Checker c("closed-form coherent Wigner values equal the matrix route");
  for (const Field* f : sweep(fields, opt, 3)) {
    c.ran(f->degree());
    for (const Complex xi :
         {Complex(xi_plus(), 0), Complex(xi_minus(), 0), Complex(0.3, 0.2)}) {
      const WignerGrid grid =
          wigner_of(su2_coherent(shared(fields, *f), xi), opt.convention);
      for (std::uint32_t ia = 0; ia < f->order() && c.ok(); ++ia) {
        for (std::uint32_t ib = 0; ib < f->order(); ++ib) {
          const double direct = wigner_coherent_closed_form(
              *f, xi,
              {f->from_canonical_index(ia), f->from_canonical_index(ib)},
              opt.convention);
          if (std::abs(direct - grid.values(ia, ib)) > kSumTol) {
            c.fail("n=" + std::to_string(f->degree()) + " point (" +
                   std::to_string(ia) + "," + std::to_string(ib) +
                   "): closed form " + format_scientific(direct) +
                   " vs grid " + format_scientific(grid.values(ia, ib)));
            break;
          }
        }
      }
    }
  }
  return c.result;
}

CheckResult check_fast_path(const Fields& fields, const VerifyOptions& opt) {
  Checker c("factorized fast path equals the dense route on product states");
  for (const Field* f : sweep(fields, opt, 3)) {
    c.ran(f->degree());
    const FieldPtr fp = shared(fields, *f);
    std::vector<std::pair<std::string, StateVector>> states;
    states.emplace_back("coherent_plus", coherent_plus(fp));
    states.emplace_back("coherent_minus", coherent_minus(fp));
    {
      // distinct per-qubit factors
      const auto dim = static_cast<Eigen::Index>(f->order());
      Eigen::VectorXcd amps(dim);
      for (Eigen::Index i = 0; i < dim; ++i) {
        Complex prod = 1.0;
        for (int k = 0; k < f->degree(); ++k) {
          const double theta = 0.3 + 0.2 * k;
          const Complex up = std::cos(theta);
          const Complex down =
              std::sin(theta) * std::exp(Complex(0, 0.5 * k));
          prod *= ((i >> k) & 1) ? down : up;
        }
        amps(i) = prod;
      }
      states.emplace_back("generic product", StateVector(fp, amps));
    }
    for (const auto& [name, psi] : states) {
      const WignerGrid dense = wigner_of(psi, opt.convention);
      const WignerGrid fast = fast_product_path(psi, opt.convention);
      const double err = (dense.values - fast.values).cwiseAbs().maxCoeff();
      if (err > kTightTol) {
        c.fail("n=" + std::to_string(f->degree()) + " " + name +
               ": max deviation " + format_scientific(err));
      }
    }
  }
  return c.result;
}

CheckResult check_covariance(const Fields& fields, const VerifyOptions& opt) {
  Checker c("x-translating the state translates the beta axis of the grid");
  for (const Field* f : sweep(fields, opt, 3)) {
    c.ran(f->degree());
    const StateVector psi = coherent_plus(shared(fields, *f));
    const WignerGrid base = wigner_of(psi, opt.convention);
    for (std::uint32_t d = 0; d < f->order() && c.ok(); ++d) {
      const FieldElement delta{d};
      const WignerGrid moved =
          wigner_of(apply_operator(x_op(*f, delta), psi), opt.convention);
      const auto id = f->canonical_index(delta);
      for (std::uint32_t ia = 0; ia < f->order() && c.ok(); ++ia) {
        for (std::uint32_t ib = 0; ib < f->order(); ++ib) {
          if (std::abs(moved.values(ia, ib) - base.values(ia, ib ^ id)) >
              kTightTol) {
            c.fail("n=" + std::to_string(f->degree()) + " delta=" +
                   hexmask(delta) + " point (" + std::to_string(ia) + "," +
                   std::to_string(ib) + "): covariance fails");
            break;
          }
        }
      }
    }
  }
  return c.result;
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  if (options.n_max < 1 || options.n_max > Field::kMaxDegree) {
    throw std::invalid_argument("n_max must lie in [1, " +
                                std::to_string(Field::kMaxDegree) + "]");
  }
  Fields fields;
  for (int n = 1; n <= options.n_max; ++n) fields.push_back(make_field(n));

  std::vector<CheckResult> results;
  // Displacement Hermiticity runs first among the convention-sensitive
  // checks, so a broken phase surfaces as a Hermiticity counterexample.
  results.push_back(check_product_tables(fields, options));
  results.push_back(check_trace_character(fields, options));
  results.push_back(check_dual_pairing(fields, options));
  results.push_back(check_normal_basis(fields, options));
  results.push_back(check_self_dual(fields, options));
  results.push_back(check_canonical_index(fields, options));
  results.push_back(check_state_norms(fields, options));
  results.push_back(check_fourier_dense_vs_butterfly(fields, options));
  results.push_back(check_fourier_involution(fields, options));
  results.push_back(check_coherent_eigenstates(fields, options));
  results.push_back(check_tensor_factorization(fields, options));
  results.push_back(check_basis_relabeling(fields, options));
  results.push_back(check_displacement_hermitian(fields, options));
  results.push_back(check_pauli_algebra(fields, options));
  results.push_back(check_fourier_conjugation(fields, options));
  results.push_back(check_factorized_builds(fields, options));
  results.push_back(check_displacement_orthogonality(fields, options));
  results.push_back(check_phase_rule(fields, options));
  results.push_back(check_squeeze_relations(fields, options));
  results.push_back(check_squeeze_expectation(fields, options));
  results.push_back(check_kernel_hermitian_trace(fields, options));
  results.push_back(check_kernel_resolution(fields, options));
  results.push_back(check_kernel_factorization(fields, options));
  results.push_back(check_wigner_reality_and_trace_route(fields, options));
  results.push_back(check_wigner_normalization(fields, options));
  results.push_back(check_marginals(fields, options));
  results.push_back(check_coherent_marginal_form(fields, options));
  results.push_back(check_closed_form(fields, options));
  results.push_back(check_fast_path(fields, options));
  results.push_back(check_covariance(fields, options));
  return results;
}

int print_report(std::ostream& out, const std::vector<CheckResult>& results) {
  int failed = 0;
  const CheckResult* first_failure = nullptr;
  for (const auto& r : results) {
    if (r.passed) {
      out << "PASS  " << r.name << " (n <= " << r.n_max_run << ")\n";
    } else {
      ++failed;
      if (!first_failure) first_failure = &r;
      out << "FAIL  " << r.name << ": " << r.detail << "\n";
    }
  }
  out << results.size() - static_cast<std::size_t>(failed) << " of "
      << results.size() << " checks passed\n";
  if (first_failure) {
    out << "first counterexample: " << first_failure->detail << "\n";
    return 1;
  }
  return 0;
}

}  // namespace qps
