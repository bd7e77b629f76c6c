#include "qps/gridio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qps {

namespace {

const char kAsciiRamp[] = " .:-=+*#%@";

std::string hex_mask(std::uint32_t bits) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "0x%x", bits);
  return buf;
}

std::string basis_masks(const Field& field) {
  std::string out = "[";
  const auto& elems = field.self_dual_basis().elements;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (i) out += ",";
    out += hex_mask(elems[i].bits);
  }
  return out + "]";
}

struct LinearMap {
  double min, max;
  // bin in [0, levels-1], linear in value; a constant grid maps to 0.
  int bin(double v, int levels) const {
    if (max <= min) return 0;
    const int b = static_cast<int>((v - min) / (max - min) * levels);
    return std::clamp(b, 0, levels - 1);
  }
};

LinearMap value_range(const WignerGrid& grid) {
  return {grid.values.minCoeff(), grid.values.maxCoeff()};
}

}  // namespace

std::string format_scientific(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.16e", value);
  return buf;
}

std::string grid_header(const WignerGrid& grid) {
  std::ostringstream os;
  os << "# wigner grid n=" << grid.field->degree()
     << " poly=" << hex_mask(grid.field->modulus())
     << " self_dual=" << basis_masks(*grid.field)
     << " convention=" << grid.convention.id()
     << " normalization=" << normalization_tag(grid.normalization)
     << " rows=alpha cols=beta";
  return os.str();
}

void write_state_text(std::ostream& out, const StateVector& state) {
  const Field& field = state.field();
  out << "# state n=" << field.degree() << " poly=" << hex_mask(field.modulus())
      << " self_dual=" << basis_masks(field) << "\n";
  out << "# columns: canonical index, Re(amplitude), Im(amplitude)\n";
  for (Eigen::Index i = 0; i < state.dim(); ++i) {
    out << i << " " << format_scientific(state.amplitudes()(i).real()) << " "
        << format_scientific(state.amplitudes()(i).imag()) << "\n";
  }
}

StateVector parse_state_text(std::istream& in) {
  std::string line;
  int n = -1;
  unsigned poly = 0;
  if (!std::getline(in, line) ||
      std::sscanf(line.c_str(), "# state n=%d poly=%x", &n, &poly) != 2) {
    throw std::invalid_argument("state text must start with '# state n=...'");
  }
  FieldPtr field = make_field(n, poly);
  Eigen::VectorXcd amps(field->order());
  Eigen::Index seen = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    long long idx;
    double re, im;
    if (std::sscanf(line.c_str(), "%lld %lf %lf", &idx, &re, &im) != 3 ||
        idx != seen || seen >= amps.size()) {
      throw std::invalid_argument("malformed state line: " + line);
    }
    amps(seen++) = Complex(re, im);
  }
  if (seen != amps.size()) {
    throw std::invalid_argument("state text is missing amplitudes");
  }
  return StateVector(std::move(field), std::move(amps));
}

void write_grid_csv(std::ostream& out, const WignerGrid& grid) {
  out << grid_header(grid) << "\n";
  for (Eigen::Index r = 0; r < grid.values.rows(); ++r) {
    for (Eigen::Index c = 0; c < grid.values.cols(); ++c) {
      if (c) out << ",";
      out << format_scientific(grid.values(r, c));
    }
    out << "\n";
  }
}

void write_grid_json(std::ostream& out, const WignerGrid& grid) {
  // Emitted by hand so that the payload keeps the fixed 17-digit rendering.
  const auto& basis = grid.field->self_dual_basis().elements;
  out << "{\n";
  out << "  \"n\": " << grid.field->degree() << ",\n";
  out << "  \"poly\": " << grid.field->modulus() << ",\n";
  out << "  \"self_dual_basis\": [";
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (i) out << ", ";
    out << basis[i].bits;
  }
  out << "],\n";
  out << "  \"convention\": \"" << grid.convention.id() << "\",\n";
  out << "  \"normalization\": \"" << normalization_tag(grid.normalization)
      << "\",\n";
  out << "  \"rows\": \"alpha\",\n  \"cols\": \"beta\",\n";
  out << "  \"values\": [\n";
  for (Eigen::Index r = 0; r < grid.values.rows(); ++r) {
    out << "    [";
    for (Eigen::Index c = 0; c < grid.values.cols(); ++c) {
      if (c) out << ", ";
      out << format_scientific(grid.values(r, c));
    }
    out << (r + 1 < grid.values.rows() ? "],\n" : "]\n");
  }
  out << "  ]\n}\n";
}

void write_grid_pgm(std::ostream& out, const WignerGrid& grid) {
  const LinearMap map = value_range(grid);
  out << "P2\n";
  out << grid_header(grid) << "\n";
  out << "# linear map: " << format_scientific(map.min) << " -> 0, "
      << format_scientific(map.max) << " -> 255\n";
  out << grid.values.cols() << " " << grid.values.rows() << "\n255\n";
  for (Eigen::Index r = 0; r < grid.values.rows(); ++r) {
    for (Eigen::Index c = 0; c < grid.values.cols(); ++c) {
      if (c) out << " ";
      out << map.bin(grid.values(r, c), 256);
    }
    out << "\n";
  }
}

void write_grid_ascii(std::ostream& out, const WignerGrid& grid) {
  const LinearMap map = value_range(grid);
  out << grid_header(grid) << "\n";
  out << "# ramp \"" << kAsciiRamp << "\": " << format_scientific(map.min)
      << " -> ' ', " << format_scientific(map.max) << " -> '@'\n";
  for (Eigen::Index r = 0; r < grid.values.rows(); ++r) {
    for (Eigen::Index c = 0; c < grid.values.cols(); ++c) {
      out << kAsciiRamp[map.bin(grid.values(r, c), 10)];
    }
    out << "\n";
  }
}

}  // namespace qps
