#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "oracles.hpp"
#include "qps/gridio.hpp"

using qps::StateVector;
using qps::WignerGrid;
using qps::make_field;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

WignerGrid ramp_grid() {
  auto f = make_field(1);
  WignerGrid g{f, Eigen::MatrixXd(2, 2), {}, qps::Normalization::Raw};
  g.values << 0, 1, 2, 3;
  return g;
}

}  // namespace

TEST_CASE("scientific formatting is fixed-width and round-trips") {
  CHECK(qps::format_scientific(0.5) == "5.0000000000000000e-01");
  CHECK(qps::format_scientific(-0.20710678118654752) ==
        "-2.0710678118654752e-01");
  CHECK(qps::format_scientific(1.2071067811865475) ==
        "1.2071067811865475e+00");
  CHECK(qps::format_scientific(0.0) == "0.0000000000000000e+00");
  // 17 significant digits reproduce the double exactly.
  for (double v : {1.0 / 3.0, std::sqrt(2.0), -1e-300, 6.02214076e23}) {
    CHECK(std::strtod(qps::format_scientific(v).c_str(), nullptr) == v);
  }
}

TEST_CASE("grid header carries the full reproducibility tag") {
  auto f = make_field(1);
  const WignerGrid grid = qps::wigner_of(qps::coherent_plus(f));
  CHECK(qps::grid_header(grid) ==
        "# wigner grid n=1 poly=0x3 self_dual=[0x1] convention=i^w "
        "normalization=raw rows=alpha cols=beta");
  auto f2 = make_field(2);
  const WignerGrid unit = qps::wigner_of(qps::coherent_plus(f2), {},
                                         qps::Normalization::UnitSum);
  CHECK(qps::grid_header(unit) ==
        "# wigner grid n=2 poly=0x7 self_dual=[0x2,0x3] convention=i^w "
        "normalization=unit-sum rows=alpha cols=beta");
}

TEST_CASE("state text round-trips exactly") {
  auto f = make_field(2);
  const StateVector out = qps::su2_coherent(f, {0.3, 0.2});
  std::ostringstream os;
  qps::write_state_text(os, out);
  const auto ls = lines_of(os.str());
  REQUIRE(ls.size() == 6);
  CHECK(ls[0] == "# state n=2 poly=0x7 self_dual=[0x2,0x3]");
  CHECK(ls[1] == "# columns: canonical index, Re(amplitude), Im(amplitude)");

  std::istringstream in(os.str());
  const StateVector back = qps::parse_state_text(in);
  CHECK(back.n() == 2);
  CHECK(back.field().modulus() == 0x7);
  for (Eigen::Index i = 0; i < 4; ++i) {
    CHECK(back.amplitudes()(i) == out.amplitudes()(i));
  }
}

TEST_CASE("malformed state text is rejected") {
  {
    std::istringstream in("not a header\n");
    CHECK_THROWS_AS(qps::parse_state_text(in), std::invalid_argument);
  }
  {
    // Indices must be sequential from zero.
    std::istringstream in(
        "# state n=1 poly=0x3 self_dual=[0x1]\n1 0.0 0.0\n0 1.0 0.0\n");
    CHECK_THROWS_AS(qps::parse_state_text(in), std::invalid_argument);
  }
  {
    // Too few amplitude lines.
    std::istringstream in("# state n=1 poly=0x3 self_dual=[0x1]\n0 1.0 0.0\n");
    CHECK_THROWS_AS(qps::parse_state_text(in), std::invalid_argument);
  }
  {
    // Too many.
    std::istringstream in(
        "# state n=1 poly=0x3\n0 1.0 0.0\n1 0.0 0.0\n2 0.0 0.0\n");
    CHECK_THROWS_AS(qps::parse_state_text(in), std::invalid_argument);
  }
}

TEST_CASE("csv payload parses back to the grid values") {
  auto f = make_field(2);
  const WignerGrid grid = qps::wigner_of(qps::coherent_plus(f));
  std::ostringstream os;
  qps::write_grid_csv(os, grid);
  const auto ls = lines_of(os.str());
  REQUIRE(ls.size() == 5);
  CHECK(ls[0] == qps::grid_header(grid));
  for (int r = 0; r < 4; ++r) {
    std::istringstream row(ls[static_cast<std::size_t>(r) + 1]);
    std::string cell;
    for (int c = 0; c < 4; ++c) {
      REQUIRE(std::getline(row, cell, ','));
      CHECK(std::strtod(cell.c_str(), nullptr) == grid.values(r, c));
    }
    CHECK(!std::getline(row, cell, ','));
  }
}

TEST_CASE("json payload is valid and value-exact") {
  auto f = make_field(1);
  const WignerGrid grid = qps::wigner_of(qps::coherent_plus(f));
  std::ostringstream os;
  qps::write_grid_json(os, grid);
  const auto j = nlohmann::json::parse(os.str());
  CHECK(j["n"] == 1);
  CHECK(j["poly"] == 3);
  CHECK(j["self_dual_basis"] == nlohmann::json::array({1}));
  CHECK(j["convention"] == "i^w");
  CHECK(j["normalization"] == "raw");
  CHECK(j["rows"] == "alpha");
  CHECK(j["cols"] == "beta");
  REQUIRE(j["values"].size() == 2);
  for (int r = 0; r < 2; ++r) {
    REQUIRE(j["values"][r].size() == 2);
    for (int c = 0; c < 2; ++c) {
      CHECK(j["values"][r][c].get<double>() == grid.values(r, c));
    }
  }
}

TEST_CASE("pgm output is a plain P2 raster") {
  const WignerGrid grid = ramp_grid();
  std::ostringstream os;
  qps::write_grid_pgm(os, grid);
  const auto ls = lines_of(os.str());
  REQUIRE(ls.size() == 7);
  CHECK(ls[0] == "P2");
  CHECK(ls[1] == qps::grid_header(grid));
  CHECK(ls[2].substr(0, 13) == "# linear map:");
  CHECK(ls[3] == "2 2");
  CHECK(ls[4] == "255");
  CHECK(ls[5] == "0 85");
  CHECK(ls[6] == "170 255");
}

TEST_CASE("ascii heatmap uses the fixed ramp") {
  const WignerGrid grid = ramp_grid();
  std::ostringstream os;
  qps::write_grid_ascii(os, grid);
  const auto ls = lines_of(os.str());
  REQUIRE(ls.size() == 4);
  CHECK(ls[0] == qps::grid_header(grid));
  CHECK(ls[1].substr(0, 19) == "# ramp \" .:-=+*#%@\"");
  CHECK(ls[2] == " -");
  CHECK(ls[3] == "*@");
}

TEST_CASE("degenerate value range maps to the bottom bin") {
  auto f = make_field(1);
  WignerGrid g{f, Eigen::MatrixXd::Constant(2, 2, 0.25), {},
               qps::Normalization::UnitSum};
  std::ostringstream pgm, art;
  qps::write_grid_pgm(pgm, g);
  qps::write_grid_ascii(art, g);
  const auto pl = lines_of(pgm.str());
  CHECK(pl[5] == "0 0");
  CHECK(pl[6] == "0 0");
  const auto al = lines_of(art.str());
  CHECK(al[2] == "  ");
  CHECK(al[3] == "  ");
}
