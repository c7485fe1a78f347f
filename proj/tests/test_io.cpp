#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "s2xs2/io.hpp"

using namespace s2xs2;
namespace fs = std::filesystem;

namespace {

std::string temp_name(const std::string& stem) {
  return (fs::temp_directory_path() / stem).string();
}

SurfaceGrid sample_grid() {
  // two closing circles keep the grid periodic in both directions and
  // small enough for cheap format checks
  CurvatureProfile c1 = CurvatureProfile::constant(1.0);
  CurvatureProfile c2 = CurvatureProfile::constant(0.5);
  SurfaceGrid g =
      build_product(c1, circle_period(1.0), 24, c2, circle_period(0.5), 20);
  g.params["k0"] = 0.1 + 0.2;  // not exactly representable, good probe
  return g;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(bool(in));
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("json roundtrip preserves every float bit-exactly") {
  SurfaceGrid g = sample_grid();
  SurfaceGrid h = grid_from_json(grid_to_json(g, true));

  CHECK(h.construction == g.construction);
  CHECK(h.spec.n1 == g.spec.n1);
  CHECK(h.spec.n2 == g.spec.n2);
  CHECK(h.spec.periodic1 == g.spec.periodic1);
  CHECK(h.spec.periodic2 == g.spec.periodic2);
  CHECK(h.spec.u1a == g.spec.u1a);
  CHECK(h.spec.u1b == g.spec.u1b);
  CHECK(h.spec.u2a == g.spec.u2a);
  CHECK(h.spec.u2b == g.spec.u2b);
  CHECK(h.params == g.params);
  REQUIRE(h.x.size() == g.x.size());
  for (size_t i = 0; i < g.x.size(); ++i)
    for (int c = 0; c < 6; ++c) CHECK(h.x[i](c) == g.x[i](c));
  REQUIRE(h.jets.size() == g.jets.size());
  for (size_t i = 0; i < g.jets.size(); ++i) {
    const FundamentalData& a = g.jets[i].F;
    const FundamentalData& b = h.jets[i].F;
    CHECK(a.sigma == b.sigma);
    CHECK(a.rho == b.rho);
    CHECK(a.C1 == b.C1);
    CHECK(a.C2 == b.C2);
    CHECK(a.g1 == b.g1);
    CHECK(a.g2 == b.g2);
    CHECK(a.f1 == b.f1);
    CHECK(a.f2 == b.f2);
    CHECK(a.H == b.H);
  }
}

TEST_CASE("points-only roundtrip and data errors") {
  SurfaceGrid g = sample_grid();
  SurfaceGrid h = grid_from_json(grid_to_json(g, false));
  CHECK(h.jets.empty());
  CHECK(h.x.size() == g.x.size());

  SurfaceGrid bare = h;
  CHECK_THROWS_AS(grid_to_json(bare, true), std::invalid_argument);
  CHECK_THROWS_AS(grid_from_json("{\"meta\": {}}"), std::exception);
  CHECK_THROWS_AS(read_grid_json(temp_name("does_not_exist_o4x.json")),
                  std::runtime_error);
}

TEST_CASE("file roundtrip through disk") {
  SurfaceGrid g = sample_grid();
  std::string path = temp_name("s2xs2_io_grid.json");
  write_grid_json(path, g, true);
  SurfaceGrid h = read_grid_json(path);
  CHECK(h.construction == g.construction);
  CHECK(h.x.size() == g.x.size());
  for (size_t i = 0; i < g.x.size(); ++i)
    CHECK((h.x[i] - g.x[i]).norm() == 0.0);
  std::remove(path.c_str());
}

TEST_CASE("node table: header, row count, crlf endings") {
  SurfaceGrid g = sample_grid();
  ExtractedData e = extract_fundamental_data(g);
  JetField jf = jets_from_extracted(e);
  ResidualFields r = compute_residuals(jf);
  auto drv = derived_fields(jf);
  std::string path = temp_name("s2xs2_io_fields.csv");
  write_fields_csv(path, g, e, r, drv);

  std::vector<std::string> lines = read_lines(path);
  REQUIRE(lines.size() == static_cast<size_t>(g.spec.size()) + 1);
  for (const std::string& l : lines) {
    REQUIRE_FALSE(l.empty());
    CHECK(l.back() == '\r');
  }
  CHECK(lines[0].rfind("i1,i2,u1,u2,x1a,", 0) == 0);
  CHECK(lines[0].find("sigma") != std::string::npos);
  CHECK(lines[0].find("res_willmore") != std::string::npos);
  // every row carries the same number of cells as the header
  size_t cols = std::count(lines[0].begin(), lines[0].end(), ',');
  for (const std::string& l : lines)
    CHECK(std::count(l.begin(), l.end(), ',') == static_cast<long>(cols));
  std::remove(path.c_str());
}

TEST_CASE("factor meshes: vertex and face counts, seams closed") {
  SurfaceGrid g = sample_grid();
  std::string p1 = temp_name("s2xs2_io_f1.obj");
  std::string p2 = temp_name("s2xs2_io_f2.obj");
  write_factor_objs(p1, p2, g);

  for (const std::string& p : {p1, p2}) {
    std::vector<std::string> lines = read_lines(p);
    int nv = 0, nf = 0;
    for (const std::string& l : lines) {
      if (l.rfind("v ", 0) == 0) ++nv;
      if (l.rfind("f ", 0) == 0) ++nf;
    }
    CHECK(nv == g.spec.size());
    // fully periodic grid: two triangles per cell, seams wrap around
    CHECK(nf == 2 * g.spec.n1 * g.spec.n2);
    // face indices stay inside the vertex range
    for (const std::string& l : lines) {
      if (l.rfind("f ", 0) != 0) continue;
      std::istringstream ss(l.substr(2));
      int a = 0, b = 0, c = 0;
      ss >> a >> b >> c;
      for (int idx : {a, b, c}) {
        CHECK(idx >= 1);
        CHECK(idx <= nv);
      }
    }
  }
  std::remove(p1.c_str());
  std::remove(p2.c_str());
}
