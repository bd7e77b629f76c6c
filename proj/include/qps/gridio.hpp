#pragma once

#include <iosfwd>
#include <string>

#include "qps/hilbert.hpp"
#include "qps/wigner.hpp"

namespace qps {

/// %.16e rendering: 17 significant digits, locale-independent.
std::string format_scientific(double value);

/// Header comment carried by every emitted grid: degree, modulus
/// polynomial, self-dual basis masks, phase convention id, normalization
/// tag, and the rows=alpha cols=beta orientation.  Reproducibility contract:
/// equal headers imply byte-identical payloads.
std::string grid_header(const WignerGrid& grid);

/// Text export of a state: header comments, then one line per canonical
/// index with the amplitude's real and imaginary parts.
void write_state_text(std::ostream& out, const StateVector& state);
StateVector parse_state_text(std::istream& in);

void write_grid_csv(std::ostream& out, const WignerGrid& grid);
void write_grid_json(std::ostream& out, const WignerGrid& grid);
/// Plain-text PGM (P2), 255 gray levels, linear [min, max] -> [0, 255]
/// mapping recorded in a comment; zero is not pinned to mid-gray.
void write_grid_pgm(std::ostream& out, const WignerGrid& grid);
/// Fixed ten-character ramp " .:-=+*#%@"; same linear mapping as the PGM.
void write_grid_ascii(std::ostream& out, const WignerGrid& grid);

}  // namespace qps
