#include "s2xs2/io.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace s2xs2 {

namespace {

using nlohmann::json;

const char* kLayout[15] = {"sigma", "rho_re", "rho_im", "C1",    "C2",
                           "g1_re", "g1_im",  "g2_re",  "g2_im", "f1_re",
                           "f1_im", "f2_re",  "f2_im",  "H_re",  "H_im"};

std::array<double, 15> pack_data(const FundamentalData& F) {
  return {F.sigma,        F.rho.real(),  F.rho.imag(), F.C1,
          F.C2,           F.g1.real(),   F.g1.imag(),  F.g2.real(),
          F.g2.imag(),    F.f1.real(),   F.f1.imag(),  F.f2.real(),
          F.f2.imag(),    F.H.real(),    F.H.imag()};
}

FundamentalData unpack_data(const std::vector<double>& v) {
  FundamentalData F;
  F.sigma = v[0];
  F.rho = cplx(v[1], v[2]);
  F.C1 = v[3];
  F.C2 = v[4];
  F.g1 = cplx(v[5], v[6]);
  F.g2 = cplx(v[7], v[8]);
  F.f1 = cplx(v[9], v[10]);
  F.f2 = cplx(v[11], v[12]);
  F.H = cplx(v[13], v[14]);
  return F;
}

}  // namespace

std::string grid_to_json(const SurfaceGrid& g, bool with_data) {
  json meta;
  meta["construction"] = g.construction;
  meta["n1"] = g.spec.n1;
  meta["n2"] = g.spec.n2;
  meta["u1_range"] = {g.spec.u1a, g.spec.u1b};
  meta["u2_range"] = {g.spec.u2a, g.spec.u2b};
  meta["periodic"] = {g.spec.periodic1, g.spec.periodic2};
  meta["params"] = g.params;

  json points = json::array();
  for (const Vec6& x : g.x)
    points.push_back({x(0), x(1), x(2), x(3), x(4), x(5)});

  json out;
  out["meta"] = meta;
  out["points"] = std::move(points);

  if (with_data) {
    if (!g.has_jets())
      throw std::invalid_argument("grid_to_json: grid carries no data");
    for (const char* name : kLayout)
      out["meta"]["fundamental_data_layout"].push_back(name);
    json rows = json::array();
    for (const DataJet& d : g.jets) {
      std::array<double, 15> v = pack_data(d.F);
      rows.push_back(json(v));
    }
    out["fundamental_data"] = std::move(rows);
  }
  return out.dump();
}

SurfaceGrid grid_from_json(const std::string& text) {
  json in = json::parse(text);
  const json& meta = in.at("meta");

  SurfaceGrid g;
  g.construction = meta.at("construction").get<std::string>();
  g.spec.n1 = meta.at("n1").get<int>();
  g.spec.n2 = meta.at("n2").get<int>();
  g.spec.u1a = meta.at("u1_range").at(0).get<double>();
  g.spec.u1b = meta.at("u1_range").at(1).get<double>();
  g.spec.u2a = meta.at("u2_range").at(0).get<double>();
  g.spec.u2b = meta.at("u2_range").at(1).get<double>();
  g.spec.periodic1 = meta.at("periodic").at(0).get<bool>();
  g.spec.periodic2 = meta.at("periodic").at(1).get<bool>();
  if (meta.contains("params"))
    g.params = meta.at("params").get<std::map<std::string, double>>();
  if (g.spec.n1 <= 0 || g.spec.n2 <= 0 || g.spec.u1b <= g.spec.u1a ||
      g.spec.u2b <= g.spec.u2a)
    throw std::invalid_argument("grid_from_json: bad grid spec");

  const json& points = in.at("points");
  if (static_cast<int>(points.size()) != g.spec.size())
    throw std::invalid_argument("grid_from_json: point count mismatch");
  g.x.resize(g.spec.size());
  for (int at = 0; at < g.spec.size(); ++at) {
    const json& p = points.at(at);
    if (p.size() != 6)
      throw std::invalid_argument("grid_from_json: point is not a 6-vector");
    for (int c = 0; c < 6; ++c) g.x[at](c) = p.at(c).get<double>();
  }

  if (in.contains("fundamental_data")) {
    const json& rows = in.at("fundamental_data");
    if (static_cast<int>(rows.size()) != g.spec.size())
      throw std::invalid_argument("grid_from_json: data row count mismatch");
    Tolerances tol;
    g.jets.resize(g.spec.size());
    for (int at = 0; at < g.spec.size(); ++at) {
      std::vector<double> v = rows.at(at).get<std::vector<double>>();
      if (v.size() != 15)
        throw std::invalid_argument("grid_from_json: data row is not 15 wide");
      DataJet& d = g.jets[at];
      d.F = unpack_data(v);
      d.flag1 = 1.0 - d.F.C1 * d.F.C1 < tol.near_complex;
      d.flag2 = 1.0 - d.F.C2 * d.F.C2 < tol.near_complex;
    }
  }
  return g;
}

void write_grid_json(const std::string& path, const SurfaceGrid& g,
                     bool with_data) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << grid_to_json(g, with_data) << "\n";
}

SurfaceGrid read_grid_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return grid_from_json(text);
}

void write_fields_csv(const std::string& path, const SurfaceGrid& g,
                      const ExtractedData& e, const ResidualFields& r,
                      const std::map<std::string, std::vector<double>>& drv) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.precision(17);

  out << "i1,i2,u1,u2,x1a,x1b,x1c,x2a,x2b,x2c";
  for (const char* name : kLayout) out << "," << name;
  out << ",flag1,flag2";
  for (const auto& kv : drv) out << "," << kv.first;
  for (const auto& kv : r.fields) out << ",res_" << kv.first;
  out << "\r\n";

  const GridSpec& spec = g.spec;
  for (int j = 0; j < spec.m2(); ++j) {
    for (int i = 0; i < spec.m1(); ++i) {
      int at = spec.idx(i, j);
      out << i << "," << j << "," << spec.u1(i) << "," << spec.u2(j);
      for (int c = 0; c < 6; ++c) out << "," << g.x[at](c);
      std::array<double, 15> v = pack_data(e.F[at]);
      for (double d : v) out << "," << d;
      out << "," << int(e.flag1[at]) << "," << int(e.flag2[at]);
      for (const auto& kv : drv) out << "," << kv.second[at];
      for (const auto& kv : r.fields) out << "," << kv.second[at];
      out << "\r\n";
    }
  }
}

namespace {

void write_one_obj(const std::string& path, const SurfaceGrid& g, int factor) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.precision(9);
  const GridSpec& spec = g.spec;
  int off = 3 * factor;
  for (int j = 0; j < spec.m2(); ++j)
    for (int i = 0; i < spec.m1(); ++i) {
      const Vec6& x = g.x[spec.idx(i, j)];
      out << "v " << x(off) << " " << x(off + 1) << " " << x(off + 2) << "\n";
    }
  int c1 = spec.periodic1 ? spec.m1() : spec.m1() - 1;
  int c2 = spec.periodic2 ? spec.m2() : spec.m2() - 1;
  for (int j = 0; j < c2; ++j) {
    int jn = (j + 1) % spec.m2();
    for (int i = 0; i < c1; ++i) {
      int in = (i + 1) % spec.m1();
      int a = spec.idx(i, j) + 1, b = spec.idx(in, j) + 1;
      int c = spec.idx(in, jn) + 1, d = spec.idx(i, jn) + 1;
      out << "f " << a << " " << b << " " << c << "\n";
      out << "f " << a << " " << c << " " << d << "\n";
    }
  }
}

}  // namespace

void write_factor_objs(const std::string& path1, const std::string& path2,
                       const SurfaceGrid& g) {
  write_one_obj(path1, g, 0);
  write_one_obj(path2, g, 1);
}

}  // namespace s2xs2
