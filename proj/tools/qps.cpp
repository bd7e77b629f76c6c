#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qps/gridio.hpp"
#include "qps/verify.hpp"

namespace {

using namespace qps;

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

std::string modulus_polynomial(std::uint32_t poly, int n) {
  std::string out;
  for (int k = n; k >= 0; --k) {
    if (!((poly >> k) & 1u)) continue;
    if (!out.empty()) out += " + ";
    if (k == 0) {
      out += "1";
    } else if (k == 1) {
      out += "x";
    } else {
      out += "x^" + std::to_string(k);
    }
  }
  return out;
}

std::string power_label(const Field& field, FieldElement a) {
  if (a.is_zero()) return "0";
  const int k = field.log(a);
  if (k == 0) return "1";
  if (k == 1) return "sigma";
  return "sigma^" + std::to_string(k);
}

void print_basis(std::ostream& out, const Field& field, const char* label,
                 const Basis& basis) {
  out << label << ":";
  for (const FieldElement e : basis.elements) {
    out << " " << power_label(field, e) << " (" << to_polynomial_string(e)
        << ")";
  }
  out << "\n" << label << " gram:";
  for (const FieldElement a : basis.elements) {
    out << " ";
    for (const FieldElement b : basis.elements) {
      out << field.trace(field.mul(a, b));
    }
  }
  out << "\n";
}

void print_field_report(std::ostream& out, const Field& field) {
  const int n = field.degree();
  out << "GF(2^" << n << "), modulus 0x" << std::hex << field.modulus()
      << std::dec << " = " << modulus_polynomial(field.modulus(), n) << "\n";

  out << "\npowers of sigma:\n";
  for (std::size_t k = 1; k <= field.order() - 1; ++k) {
    const FieldElement e = field.pow(field.generator(), static_cast<long long>(k));
    char mask[16];
    std::snprintf(mask, sizeof(mask), "0x%x", e.bits);
    out << "sigma^" << k << " = " << mask << " = " << to_polynomial_string(e)
        << "\n";
  }

  out << "\ncanonical order (index = self-dual coordinates):\n";
  out << "index bits trace chi element\n";
  int trace_ones = 0;
  for (std::uint32_t i = 0; i < field.order(); ++i) {
    const FieldElement e = field.from_canonical_index(i);
    trace_ones += field.trace(e);
    char mask[16];
    std::snprintf(mask, sizeof(mask), "0x%x", e.bits);
    out << i << " " << mask << " " << field.trace(e) << " "
        << (field.character(e) > 0 ? "+1" : "-1") << " "
        << to_polynomial_string(e) << "\n";
  }
  out << "trace balance: " << trace_ones << " ones of " << field.order()
      << " elements\n\n";

  print_basis(out, field, "polynomial basis", field.polynomial_basis());
  print_basis(out, field, "normal basis", field.normal_basis());
  print_basis(out, field, "self-dual basis", field.self_dual_basis());
}

std::uint32_t parse_poly(const std::string& text) {
  std::size_t used = 0;
  unsigned long value = 0;
  try {
    value = std::stoul(text, &used, 0);
  } catch (const std::exception&) {
    throw std::invalid_argument("polynomial must be an integer: " + text);
  }
  if (used != text.size() || value > 0xffffffffUL) {
    throw std::invalid_argument("polynomial must be an integer: " + text);
  }
  return static_cast<std::uint32_t>(value);
}

FieldPtr build_field(int n, const std::string& poly_text) {
  if (poly_text.empty()) return make_field(n);
  return make_field(n, parse_poly(poly_text));
}

struct StateSpec {
  std::string kind;
  int k = 0;
  double xi_re = 0.0;
  double xi_im = 0.0;
};

StateVector build_state(FieldPtr field, const StateSpec& spec) {
  if (spec.kind == "coherent-plus") return coherent_plus(std::move(field));
  if (spec.kind == "coherent-minus") return coherent_minus(std::move(field));
  if (spec.kind == "coherent") {
    return su2_coherent(std::move(field), Complex(spec.xi_re, spec.xi_im));
  }
  if (spec.kind == "dicke") return dicke_state(std::move(field), spec.k);
  throw std::invalid_argument("unknown state kind: " + spec.kind);
}

// Emits through a stringstream so that a failed write never leaves a
// half-written file behind the reproducibility contract.
int emit(const std::string& out_path, const std::string& payload) {
  if (out_path.empty()) {
    std::cout << payload;
    return 0;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot open " << out_path << " for writing\n";
    return kExitIo;
  }
  file << payload;
  file.flush();
  if (!file.good()) {
    std::cerr << "error: failed while writing " << out_path << "\n";
    return kExitIo;
  }
  return 0;
}

int cmd_field(int n, const std::string& poly_text) {
  const FieldPtr field = build_field(n, poly_text);
  std::ostringstream os;
  print_field_report(os, *field);
  std::cout << os.str();
  return 0;
}

int cmd_state(int n, const std::string& poly_text, const StateSpec& spec,
              bool check_fourier, const std::string& out_path) {
  const StateVector state = build_state(build_field(n, poly_text), spec);
  std::ostringstream os;
  write_state_text(os, state);
  const int code = emit(out_path, os.str());
  if (code != 0) return code;
  if (check_fourier) {
    const FourierEigenReport report = fourier_eigen_report(state);
    std::cout << "# fourier eigenvalue sign: "
              << (report.sign > 0 ? "+1" : "-1") << "\n";
    std::cout << "# fourier overlap: " << format_scientific(report.overlap)
              << "\n";
    std::cout << "# fourier residual: " << format_scientific(report.residual)
              << "\n";
  }
  return 0;
}

int cmd_wigner(int n, const std::string& poly_text, const StateSpec& spec,
               const std::string& format, const std::string& normalization,
               const std::string& out_path) {
  FieldPtr field = build_field(n, poly_text);
  const StateVector state = build_state(field, spec);
  const Normalization norm = normalization == "unit-sum"
                                 ? Normalization::UnitSum
                                 : Normalization::Raw;
  const PhaseConvention conv{};

  WignerGrid grid = [&] {
    if (const auto factors = tensor_factors(state)) {
      return fast_product_path(field, *factors, conv, norm);
    }
    if (field->degree() > Field::kDenseDegreeCap) {
      throw std::invalid_argument(
          "state does not factor per qubit and n exceeds the dense cap (" +
          std::to_string(Field::kDenseDegreeCap) +
          "); only product states are supported at this size");
    }
    return wigner_of(state, conv, norm);
  }();

  std::ostringstream os;
  if (format == "csv") {
    write_grid_csv(os, grid);
  } else if (format == "json") {
    write_grid_json(os, grid);
  } else if (format == "pgm") {
    write_grid_pgm(os, grid);
  } else {
    write_grid_ascii(os, grid);
  }
  return emit(out_path, os.str());
}

int cmd_verify(int n_max, bool break_phase) {
  VerifyOptions options;
  options.n_max = n_max;
  options.convention.exponent_offset = break_phase ? 1 : 0;
  const auto results = run_verification(options);
  return print_report(std::cout, results);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "discrete coherent states and Wigner functions for n qubits over "
      "GF(2^n)"};
  app.require_subcommand(1);

  int n = 1;
  std::string poly_text;
  StateSpec spec;
  bool check_fourier = false;
  std::string out_path;
  std::string format = "ascii";
  std::string normalization = "raw";
  int n_max = 3;
  bool break_phase = false;

  CLI::App* field_cmd =
      app.add_subcommand("field", "print the field element and basis tables");
  field_cmd->add_option("--n", n, "extension degree")
      ->required()
      ->check(CLI::Range(1, Field::kMaxDegree));
  field_cmd->add_option("--poly", poly_text,
                        "modulus polynomial override (bitmask, e.g. 0x13)");

  CLI::App* state_cmd =
      app.add_subcommand("state", "build a state and export it as text");
  state_cmd
      ->add_option("kind", spec.kind,
                   "coherent-plus | coherent-minus | coherent | dicke")
      ->required()
      ->check(CLI::IsMember(
          {"coherent-plus", "coherent-minus", "coherent", "dicke"}));
  state_cmd->add_option("--n", n, "extension degree")
      ->required()
      ->check(CLI::Range(1, Field::kMaxDegree));
  state_cmd->add_option("--poly", poly_text, "modulus polynomial override");
  state_cmd->add_option("--k", spec.k, "excitation count for dicke");
  state_cmd->add_option("--xi-re", spec.xi_re, "Re(xi) for coherent");
  state_cmd->add_option("--xi-im", spec.xi_im, "Im(xi) for coherent");
  state_cmd->add_flag("--check-fourier", check_fourier,
                      "print the Fourier eigen-report");
  state_cmd->add_option("--out", out_path, "output path (default stdout)");

  CLI::App* wigner_cmd =
      app.add_subcommand("wigner", "emit the Wigner grid of a state");
  wigner_cmd->add_option("--n", n, "extension degree")
      ->required()
      ->check(CLI::Range(1, Field::kMaxDegree));
  wigner_cmd->add_option("--poly", poly_text, "modulus polynomial override");
  wigner_cmd
      ->add_option("--state", spec.kind,
                   "coherent-plus | coherent-minus | coherent | dicke")
      ->required()
      ->check(CLI::IsMember(
          {"coherent-plus", "coherent-minus", "coherent", "dicke"}));
  wigner_cmd->add_option("--k", spec.k, "excitation count for dicke");
  wigner_cmd->add_option("--xi-re", spec.xi_re, "Re(xi) for coherent");
  wigner_cmd->add_option("--xi-im", spec.xi_im, "Im(xi) for coherent");
  wigner_cmd->add_option("--format", format, "csv | json | pgm | ascii")
      ->check(CLI::IsMember({"csv", "json", "pgm", "ascii"}));
  wigner_cmd
      ->add_option("--normalization", normalization, "raw | unit-sum")
      ->check(CLI::IsMember({"raw", "unit-sum"}));
  wigner_cmd->add_option("--out", out_path, "output path (default stdout)");

  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "run every module invariant and report PASS/FAIL");
  verify_cmd->add_option("--n-max", n_max, "largest degree to sweep")
      ->check(CLI::Range(1, Field::kMaxDegree));
  verify_cmd->add_flag(
      "--break-phase", break_phase,
      "fault hook: offset the phase exponent to i^(w+1) and watch the "
      "Hermiticity checks catch it");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*field_cmd) return cmd_field(n, poly_text);
    if (*state_cmd) {
      return cmd_state(n, poly_text, spec, check_fourier, out_path);
    }
    if (*wigner_cmd) {
      return cmd_wigner(n, poly_text, spec, format, normalization, out_path);
    }
    return cmd_verify(n_max, break_phase);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
