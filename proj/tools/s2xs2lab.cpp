// s2xs2lab: build surfaces in S2 x S2, verify them against the suite
// checks, export fields for plotting and sweep family parameters.
//
// Exit codes: 0 success, 1 verification failure, 2 configuration error.

#include <algorithm>
#include <cctype>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "s2xs2/curves.hpp"
#include "s2xs2/elliptic.hpp"
#include "s2xs2/extraction.hpp"
#include "s2xs2/io.hpp"
#include "s2xs2/residuals.hpp"
#include "s2xs2/suites.hpp"
#include "s2xs2/surfaces.hpp"

namespace {

using namespace s2xs2;
namespace fs = std::filesystem;

// relative output paths land in $S2XS2LAB_OUT when it is set
std::string out_path(const std::string& p) {
  fs::path path(p);
  if (path.is_absolute()) return p;
  const char* base = std::getenv("S2XS2LAB_OUT");
  if (base == nullptr || *base == '\0') return p;
  fs::create_directories(base);
  return (fs::path(base) / path).string();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t from = 0;
  while (true) {
    size_t at = s.find(sep, from);
    if (at == std::string::npos) {
      out.push_back(s.substr(from));
      return out;
    }
    out.push_back(s.substr(from, at - from));
    from = at + 1;
  }
}

// numbers in range specs may use pi: "pi", "2*pi", "pi/8", "-pi/4"
double parse_pi_token(const std::string& tok) {
  std::string s;
  for (char ch : tok)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw std::invalid_argument("empty number in range spec");
  size_t pos = s.find("pi");
  size_t used = 0;
  if (pos == std::string::npos) {
    double v = std::stod(s, &used);
    if (used != s.size())
      throw std::invalid_argument("bad number '" + tok + "'");
    return v;
  }
  double coef = 1.0;
  std::string head = s.substr(0, pos);
  if (head == "-") {
    coef = -1.0;
  } else if (!head.empty()) {
    if (head.back() == '*') head.pop_back();
    coef = std::stod(head, &used);
    if (used != head.size())
      throw std::invalid_argument("bad number '" + tok + "'");
  }
  double div = 1.0;
  std::string tail = s.substr(pos + 2);
  if (!tail.empty()) {
    if (tail.front() != '/')
      throw std::invalid_argument("bad number '" + tok + "'");
    div = std::stod(tail.substr(1), &used);
    if (used != tail.size() - 1 || div == 0.0)
      throw std::invalid_argument("bad number '" + tok + "'");
  }
  return coef * kPi / div;
}

std::vector<double> parse_range(const std::string& text) {
  std::vector<std::string> parts = split(text, ':');
  if (parts.size() != 3)
    throw std::invalid_argument("range must be start:end:step");
  double a = parse_pi_token(parts[0]);
  double b = parse_pi_token(parts[1]);
  double h = parse_pi_token(parts[2]);
  if (h <= 0.0) throw std::invalid_argument("range step must be positive");
  if (b < a) throw std::invalid_argument("empty range: end is below start");
  if (h > b - a)
    throw std::invalid_argument("range step exceeds the range itself");
  std::vector<double> out;
  double slack = 1e-9 * std::max(1.0, std::abs(b));
  for (double v = a; v <= b + slack; v += h)
    out.push_back(std::min(v, b));
  return out;
}

std::pair<int, int> parse_grid(const std::string& s) {
  size_t at = s.find('x');
  size_t u1 = 0, u2 = 0;
  int n1 = 0, n2 = 0;
  if (at != std::string::npos) {
    n1 = std::stoi(s.substr(0, at), &u1);
    n2 = std::stoi(s.substr(at + 1), &u2);
  }
  if (at == std::string::npos || u1 != at || u2 != s.size() - at - 1 ||
      n1 < 4 || n2 < 4)
    throw std::invalid_argument("grid must look like 128x128, at least 4x4");
  return {n1, n2};
}

// --config file.json supplies defaults for the subcommand flags; values
// typed on the command line win, booleans turn into bare flags
std::vector<std::string> apply_config(std::vector<std::string> tokens) {
  std::string path;
  for (size_t i = 0; i + 1 < tokens.size(); ++i) {
    if (tokens[i] == "--config") {
      path = tokens[i + 1];
      tokens.erase(tokens.begin() + static_cast<long>(i),
                   tokens.begin() + static_cast<long>(i) + 2);
      break;
    }
  }
  if (path.empty()) return tokens;
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("cannot read config file '" + path + "'");
  nlohmann::json cfg = nlohmann::json::parse(in, nullptr, true, true);
  if (!cfg.is_object())
    throw std::invalid_argument("config file must hold a JSON object");
  static const char* subs[] = {"verify", "build", "export-fields", "sweep"};
  size_t at = tokens.size();
  for (size_t i = 0; i < tokens.size() && at == tokens.size(); ++i)
    for (const char* s : subs)
      if (tokens[i] == s) at = i + 1;
  if (at == tokens.size() && !tokens.empty())
    at = 1;  // no known subcommand, let the parser complain later
  std::vector<std::string> inject;
  for (auto it = cfg.begin(); it != cfg.end(); ++it) {
    std::string flag = "--" + it.key();
    if (std::find(tokens.begin(), tokens.end(), flag) != tokens.end())
      continue;
    if (it.value().is_boolean()) {
      if (it.value().get<bool>()) inject.push_back(flag);
      continue;
    }
    inject.push_back(flag);
    inject.push_back(it.value().is_string() ? it.value().get<std::string>()
                                            : it.value().dump());
  }
  tokens.insert(tokens.begin() + static_cast<long>(std::min(at, tokens.size())),
                inject.begin(), inject.end());
  return tokens;
}

// ---- verify ------------------------------------------------------------

struct VerifyArgs {
  std::string suite = "all";
  std::string grids;
  std::string report = "verify_report.json";
};

int run_verify(const VerifyArgs& a) {
  SuiteOptions opt;
  if (!a.grids.empty()) {
    std::vector<std::string> parts = split(a.grids, ',');
    if (parts.size() != 2)
      throw std::invalid_argument("--grids wants two cell counts, coarse,fine");
    opt.coarse = std::stoi(parts[0]);
    opt.fine = std::stoi(parts[1]);
  }
  std::vector<CheckResult> checks =
      a.suite == "all" ? run_all_suites(opt) : run_suite(a.suite, opt);
  int failures = 0;
  for (const CheckResult& ck : checks) {
    failures += !ck.pass;
    std::printf("[%s] %s: %.6g against %.3g (%.2fs)\n",
                ck.pass ? "PASS" : "FAIL", ck.name.c_str(), ck.value,
                ck.threshold, ck.seconds);
    if (!ck.pass && !ck.detail.empty())
      std::printf("       %s\n", ck.detail.c_str());
  }
  std::string path = out_path(a.report);
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write report to '" << path << "'\n";
    return 2;
  }
  out << report_json(checks) << "\n";
  std::printf("%zu checks, %d failures; report written to %s\n",
              checks.size(), failures, path.c_str());
  return failures > 0 ? 1 : 0;
}

// ---- build -------------------------------------------------------------

struct BuildArgs {
  std::string construction;
  std::string grid = "64x64";
  double vmax = 3.0;
  double elastic_k0 = 1.0, elastic_k0p = 0.0, k1 = 0.0;
  bool circle = false;
  double circle_k = 1.0;
  double span1 = 0.0, span2 = 0.0;
  double k = 1.0, delta = 0.0, t = 0.0, wk = 0.0, wdelta = 0.0;
  double tau_im = 1.0, z0_re = 0.3, z0_im = 0.2;
  std::string out, obj, csv;
  bool points_only = false;
};

SurfaceGrid build_grid(const CLI::App& sub, const BuildArgs& a) {
  auto [n1, n2] = parse_grid(a.grid);
  const std::string& c = a.construction;
  if (c == "slice-first")
    return build_canonical(CanonicalKind::slice_first, n1, n2, a.vmax);
  if (c == "slice-second")
    return build_canonical(CanonicalKind::slice_second, n1, n2, a.vmax);
  if (c == "diagonal")
    return build_canonical(CanonicalKind::diagonal, n1, n2, a.vmax);
  if (c == "clifford")
    return build_canonical(CanonicalKind::clifford, n1, n2);
  if (c == "product") {
    CurvatureProfile p1 = CurvatureProfile::constant(a.k1);
    double span1 = a.span1;
    if (sub.count("--elastic-k0") > 0) {
      double need = std::max(20.0, span1 * 1.05 + 0.1);
      p1 = CurvatureProfile::elastic(a.elastic_k0, a.elastic_k0p, need,
                                     0.002);
      if (span1 <= 0.0) {
        if (a.elastic_k0p != 0.0)
          throw std::invalid_argument(
              "--span1 is required when the elastic profile starts with "
              "nonzero slope");
        span1 = p1.period();
      }
    } else if (span1 <= 0.0) {
      span1 = circle_period(a.k1);
    }
    double k2 = (a.circle || sub.count("--circle-k") > 0) ? a.circle_k : 0.0;
    CurvatureProfile p2 = CurvatureProfile::constant(k2);
    double span2 = a.span2 > 0.0 ? a.span2 : circle_period(k2);
    return build_product(p1, span1, n1, p2, span2, n2);
  }
  if (c == "xt") {
    SinhGordonProfile pv{a.k, a.delta};
    XtParams P;
    P.t = a.t;
    P.v = SolutionField1D::closed_form(pv);
    P.w = sub.count("--wk") > 0
              ? SolutionField1D::closed_form(SinhGordonProfile{a.wk, a.wdelta})
              : SolutionField1D::zero();
    double s1 = a.span1 > 0.0 ? a.span1 : pv.period();
    double s2 = a.span2 > 0.0 ? a.span2 : pv.period();
    return build_xt(P, n1, n2, s1, s2);
  }
  if (c == "weierstrass")
    return build_weierstrass(cplx(0.0, a.tau_im), cplx(a.z0_re, a.z0_im), n1,
                             n2);
  if (c == "gaussmap")
    return build_gauss_map(SinhGordonProfile{a.k, a.delta}, n1, n2);
  throw std::invalid_argument("unknown construction '" + c + "'");
}

int run_build(const CLI::App& sub, const BuildArgs& a) {
  SurfaceGrid g = build_grid(sub, a);
  std::string path = out_path(a.out.empty() ? a.construction + ".json"
                                            : a.out);
  bool with_data = !a.points_only && !g.jets.empty();
  if (!a.points_only && g.jets.empty())
    std::cerr << "note: " << a.construction
              << " provides positions only, writing points without data\n";
  write_grid_json(path, g, with_data);
  std::cout << "wrote " << path << " (" << g.spec.m1() << "x" << g.spec.m2()
            << " nodes" << (with_data ? ", with data)" : ")") << "\n";
  if (!a.obj.empty()) {
    std::string p1 = out_path(a.obj + "_factor1.obj");
    std::string p2 = out_path(a.obj + "_factor2.obj");
    write_factor_objs(p1, p2, g);
    std::cout << "wrote " << p1 << " and " << p2 << "\n";
  }
  if (!a.csv.empty()) {
    ExtractedData e = extract_fundamental_data(g);
    JetField jf = jets_from_extracted(e);
    ResidualFields r = compute_residuals(jf);
    std::string pc = out_path(a.csv);
    write_fields_csv(pc, g, e, r, derived_fields(jf));
    std::cout << "wrote " << pc << "\n";
  }
  return 0;
}

// ---- export-fields -------------------------------------------------------

struct ExportArgs {
  std::string input, out, fields;
  int order = 4;
};

struct Column {
  std::string name;
  std::vector<double> re, im;
};

Column resolve_field(const std::string& name, const ExtractedData& e,
                     const ResidualFields& r,
                     const std::map<std::string, std::vector<double>>& drv) {
  int n = e.spec.size();
  Column col;
  col.name = name;
  col.re.assign(n, 0.0);
  col.im.assign(n, 0.0);
  auto real_of = [&](auto get) {
    for (int i = 0; i < n; ++i) col.re[i] = get(e.F[i]);
  };
  auto cplx_of = [&](auto get) {
    for (int i = 0; i < n; ++i) {
      cplx v = get(e.F[i]);
      col.re[i] = v.real();
      col.im[i] = v.imag();
    }
  };
  if (name == "sigma")
    real_of([](const FundamentalData& F) { return F.sigma; });
  else if (name == "C1")
    real_of([](const FundamentalData& F) { return F.C1; });
  else if (name == "C2")
    real_of([](const FundamentalData& F) { return F.C2; });
  else if (name == "rho")
    cplx_of([](const FundamentalData& F) { return F.rho; });
  else if (name == "gamma1")
    cplx_of([](const FundamentalData& F) { return F.g1; });
  else if (name == "gamma2")
    cplx_of([](const FundamentalData& F) { return F.g2; });
  else if (name == "f1")
    cplx_of([](const FundamentalData& F) { return F.f1; });
  else if (name == "f2")
    cplx_of([](const FundamentalData& F) { return F.f2; });
  else if (name == "H")
    cplx_of([](const FundamentalData& F) { return F.H; });
  else if (name.size() > 9 &&
           name.compare(name.size() - 9, 9, "_residual") == 0 &&
           r.fields.count(name.substr(0, name.size() - 9)) > 0)
    col.re = r.fields.at(name.substr(0, name.size() - 9));
  else if (drv.count(name) > 0)
    col.re = drv.at(name);
  else
    throw std::invalid_argument(
        "unknown field '" + name +
        "'; use sigma, rho, C1, C2, gamma1, gamma2, f1, f2, H, a derived "
        "name (K, Kperp, Babs, Habs, hopf_abs, area_density) or a residual "
        "with the _residual suffix, e.g. willmore_residual");
  return col;
}

int run_export(const ExportArgs& a) {
  SurfaceGrid g = read_grid_json(a.input);
  ExtractionOptions eo;
  eo.order = a.order;
  ExtractedData e = extract_fundamental_data(g, eo);
  JetField jf = jets_from_extracted(e);
  ResidualFields r = compute_residuals(jf);
  auto drv = derived_fields(jf);
  std::string path = out_path(a.out);
  if (a.fields.empty()) {
    write_fields_csv(path, g, e, r, drv);
    std::cout << "wrote " << path << "\n";
    return 0;
  }
  std::vector<Column> cols;
  for (const std::string& name : split(a.fields, ','))
    cols.push_back(resolve_field(name, e, r, drv));
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out.precision(17);
  out << "u1,u2";
  for (const Column& col : cols)
    out << ',' << col.name << "_re," << col.name << "_im";
  out << "\r\n";
  for (int j = 0; j < g.spec.m2(); ++j)
    for (int i = 0; i < g.spec.m1(); ++i) {
      int at = g.spec.idx(i, j);
      out << g.spec.u1(i) << ',' << g.spec.u2(j);
      for (const Column& col : cols)
        out << ',' << col.re[at] << ',' << col.im[at];
      out << "\r\n";
    }
  std::cout << "wrote " << path << " (" << cols.size() << " field"
            << (cols.size() == 1 ? "" : "s") << ")\n";
  return 0;
}

// ---- sweep ---------------------------------------------------------------

struct SweepArgs {
  std::string param, range, out;
  double k = 1.0, delta = 0.0;
};

int run_sweep(const SweepArgs& a) {
  std::vector<double> vals = parse_range(a.range);
  std::ostringstream csv;
  csv.precision(17);
  if (a.param == "t") {
    SinhGordonProfile pv{a.k, a.delta};
    SolutionField1D v = SolutionField1D::closed_form(pv);
    csv << "t,mw_sup,constraint_sup\r\n";
    for (double t : vals) {
      XtParams P;
      P.t = t;
      P.v = v;
      P.w = SolutionField1D::zero();
      double mw = 0.0, cons = 0.0;
      for (int i = 0; i <= 512; ++i) {
        double u = pv.period() * i / 512.0;
        DataJet d = xt_data(P, u);
        cplx m = d.F.f1 * std::conj(d.F.g1) * std::conj(d.F.g1) +
                 std::conj(d.F.f2) * d.F.g2 * d.F.g2;
        mw = std::max(mw, std::abs(m));
        cons = std::max(cons, std::abs(xt_constraint_residual(P, u)));
      }
      csv << t << ',' << mw << ',' << cons << "\r\n";
    }
  } else {
    csv << "k0,willmore_sup,drift\r\n";
    CurvatureProfile great = CurvatureProfile::constant(0.0);
    for (double k0 : vals) {
      CurvatureProfile p =
          CurvatureProfile::elastic(k0, 0.0, 2.0 * kPi + 0.1, 0.002);
      SurfaceGrid g =
          build_product(p, 2.0 * kPi, 256, great, 2.0 * kPi, 64);
      ResidualFields r = compute_residuals(jets_from_fields_fd(g, 4));
      csv << k0 << ',' << r.sup("willmore") << ',' << p.energy_drift()
          << "\r\n";
    }
  }
  if (a.out.empty()) {
    std::cout << csv.str();
    return 0;
  }
  std::string path = out_path(a.out);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << csv.str();
  std::cout << "wrote " << path << " (" << vals.size() << " rows)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "surfaces in the product of two round spheres: build grids, verify "
      "them, export fields, sweep parameters"};
  app.require_subcommand(1);
  std::string config_doc;
  app.add_option("--config", config_doc,
                 "JSON object with default values for the subcommand flags; "
                 "flags typed on the command line win");

  VerifyArgs va;
  CLI::App* sv = app.add_subcommand("verify", "run a verification suite");
  sv->add_option("--suite", va.suite,
                 "canonical, product, xt, weierstrass, gaussmap, "
                 "special-functions or all")
      ->capture_default_str();
  sv->add_option("--grids", va.grids,
                 "coarse,fine cell counts for refinement checks");
  sv->add_option("--report", va.report, "JSON report path")
      ->capture_default_str();
  sv->add_flag("--negative-control",
               "keep the non-critical circle pair in the product suite "
               "(always on, accepted for script compatibility)");

  BuildArgs ba;
  CLI::App* sb = app.add_subcommand("build", "build a surface grid");
  sb->add_option("construction", ba.construction, "what to build")
      ->required()
      ->check(CLI::IsMember({"slice-first", "slice-second", "diagonal",
                             "clifford", "product", "xt", "weierstrass",
                             "gaussmap"}));
  sb->add_option("--grid", ba.grid, "cells per direction, e.g. 128x128")
      ->capture_default_str();
  sb->add_option("--vmax", ba.vmax, "latitude extent of sphere grids")
      ->capture_default_str();
  sb->add_option("--elastic-k0", ba.elastic_k0,
                 "product: elastic first factor with k(0) = k0");
  sb->add_option("--elastic-k0p", ba.elastic_k0p,
                 "product: initial slope of the elastic profile");
  sb->add_option("--k1", ba.k1,
                 "product: constant curvature of the first factor");
  sb->add_flag("--circle", ba.circle,
               "product: second factor is a circle (curvature --circle-k)");
  sb->add_option("--circle-k", ba.circle_k,
                 "product: curvature of the circle factor")
      ->capture_default_str();
  sb->add_option("--span1", ba.span1, "parameter span in the first direction");
  sb->add_option("--span2", ba.span2,
                 "parameter span in the second direction");
  sb->add_option("--k", ba.k, "profile amplitude for xt and gaussmap")
      ->capture_default_str();
  sb->add_option("--delta", ba.delta, "profile phase shift")
      ->capture_default_str();
  sb->add_option("--t", ba.t, "family angle")->capture_default_str();
  sb->add_option("--wk", ba.wk, "xt: amplitude of the second profile w");
  sb->add_option("--wdelta", ba.wdelta, "xt: phase shift of w")
      ->capture_default_str();
  sb->add_option("--tau-im", ba.tau_im, "weierstrass: lattice ratio tau = i b")
      ->capture_default_str();
  sb->add_option("--z0-re", ba.z0_re, "weierstrass: shift, real part")
      ->capture_default_str();
  sb->add_option("--z0-im", ba.z0_im, "weierstrass: shift, imaginary part")
      ->capture_default_str();
  sb->add_option("-o,--out", ba.out, "grid JSON path");
  sb->add_flag("--points-only", ba.points_only,
               "write positions without the fundamental data block");
  sb->add_option("--obj", ba.obj,
                 "also write <prefix>_factor1.obj and <prefix>_factor2.obj");
  sb->add_option("--csv", ba.csv, "also write the full node table as CSV");

  ExportArgs ea;
  CLI::App* se =
      app.add_subcommand("export-fields", "re-extract a grid and dump fields");
  se->add_option("input", ea.input, "grid JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  se->add_option("-o,--out", ea.out, "CSV output path")->required();
  se->add_option("--fields", ea.fields,
                 "comma list of fields; omit for the full node table");
  se->add_option("--order", ea.order, "differencing order for re-extraction")
      ->capture_default_str();

  SweepArgs sa;
  CLI::App* ss = app.add_subcommand("sweep", "scan a family parameter");
  ss->add_option("param", sa.param, "t (family angle) or k0 (elastic)")
      ->required()
      ->check(CLI::IsMember({"t", "k0"}));
  ss->add_option("--range", sa.range, "start:end:step, numbers may use pi")
      ->required();
  ss->add_option("--k", sa.k, "t sweep: profile amplitude")
      ->capture_default_str();
  ss->add_option("--delta", sa.delta, "t sweep: profile phase shift")
      ->capture_default_str();
  ss->add_option("-o,--out", sa.out, "CSV path; stdout when omitted");

  std::vector<std::string> tokens(argv + 1, argv + argc);
  try {
    tokens = apply_config(std::move(tokens));
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  try {
    std::reverse(tokens.begin(), tokens.end());
    app.parse(tokens);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    if (*sv) return run_verify(va);
    if (*sb) return run_build(*sb, ba);
    if (*se) return run_export(ea);
    if (*ss) return run_sweep(sa);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 2;
}
