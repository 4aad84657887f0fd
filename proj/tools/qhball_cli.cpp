// qhball command-line front end. Talks to the library only through qhball.h.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qhball/qhball.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Failure {
  int code;
  std::string message;
};

void check(qhb_status status) {
  if (status == QHB_OK) return;
  const bool usage = status == QHB_ERR_INVALID_ARGUMENT || status == QHB_ERR_OUTSIDE_DOMAIN;
  throw Failure{usage ? kExitUsage : kExitFailure,
                std::string(qhb_status_name(status)) + ": " + qhb_last_error()};
}

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  const char* p = text.data();
  const char* end = p + text.size();
  while (true) {
    double v = 0.0;
    auto [next, ec] = std::from_chars(p, end, v);
    if (ec != std::errc() || !std::isfinite(v)) {
      throw Failure{kExitUsage, std::string("malformed ") + what + " '" + text + "'"};
    }
    out.push_back(v);
    if (next == end) break;
    if (*next != ',') throw Failure{kExitUsage, std::string("malformed ") + what + " '" + text + "'"};
    p = next + 1;
  }
  return out;
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string general(double v, int digits = 17) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

struct PathHandle {
  qhb_path* p = nullptr;
  ~PathHandle() { qhb_path_free(p); }
};

struct DomainHandle {
  qhb_domain* d = nullptr;
  ~DomainHandle() { qhb_domain_free(d); }
};

void write_path_csv(const qhb_path* path, const std::string& file) {
  const std::size_t dim = qhb_path_dim(path);
  std::string out = "t";
  for (std::size_t i = 1; i <= dim; ++i) out += ",x" + std::to_string(i);
  out += '\n';
  std::vector<double> coords(dim);
  for (std::size_t k = 0; k < qhb_path_size(path); ++k) {
    double t = 0.0;
    check(qhb_path_point(path, k, &t, coords.data()));
    out += general(t);
    for (double c : coords) out += ',' + general(c);
    out += '\n';
  }
  std::ofstream f(file, std::ios::binary);
  f << out;
  if (!f) throw Failure{kExitFailure, "cannot write '" + file + "'"};
}

struct DistArgs {
  bool punctured = false;
  std::string domain;
  double h = 0.01;
  int stencil = 3;
  std::string path;
  std::string bbox;
  std::size_t samples = 257;
  std::string x;
  std::string y;
};

int cmd_dist(const DistArgs& a) {
  const auto x = parse_list(a.x, "point");
  const auto y = parse_list(a.y, "point");
  if (x.size() != y.size()) throw Failure{kExitUsage, "points differ in dimension"};

  if (a.domain.empty()) {
    double k = 0.0;
    check(qhb_distance(x.data(), y.data(), x.size(), &k));
    std::cout << fixed(k, 12) << '\n';
    if (!a.path.empty()) {
      PathHandle g;
      check(qhb_geodesic(x.data(), y.data(), x.size(), a.samples, &g.p));
      write_path_csv(g.p, a.path);
    }
    return kExitOk;
  }

  if (x.size() != 2) throw Failure{kExitUsage, "domain mode takes planar points"};
  DomainHandle dom;
  check(qhb_domain_create(a.domain.c_str(), &dom.d));
  if (!a.bbox.empty()) {
    const auto b = parse_list(a.bbox, "bounding box");
    if (b.size() != 4) throw Failure{kExitUsage, "--bbox takes xmin,ymin,xmax,ymax"};
    check(qhb_domain_set_bbox(dom.d, b.data()));
  }
  PathHandle path;
  double k = 0.0;
  check(qhb_grid_distance(dom.d, qhb_grid{a.h, a.stencil}, x.data(), y.data(), &k,
                          a.path.empty() ? nullptr : &path.p));
  std::cout << fixed(k, 12) << '\n';
  if (!a.path.empty()) write_path_csv(path.p, a.path);
  return kExitOk;
}

double solved_kappa() {
  qhb_constants c{};
  check(qhb_solve_constants(&c));
  return c.kappa;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

struct TraceArgs {
  std::optional<double> M;
  std::size_t n = 1024;
  std::string output;
  bool figure1 = false;
};

int cmd_trace(const TraceArgs& a) {
  if (a.n < 16) throw Failure{kExitUsage, "sample count must be at least 16"};
  const bool svg = ends_with(a.output, ".svg");
  if (a.figure1) {
    if (!svg) throw Failure{kExitUsage, "--figure1 writes SVG; use -o <file>.svg"};
    const double radii[] = {1.0, 2.0, solved_kappa()};
    check(qhb_write_boundary_svg(radii, 3, a.n, a.output.c_str()));
  } else {
    if (!a.M) throw Failure{kExitUsage, "-M is required without --figure1"};
    if (svg) {
      check(qhb_write_boundary_svg(&*a.M, 1, a.n, a.output.c_str()));
    } else if (ends_with(a.output, ".csv")) {
      check(qhb_write_trace_csv(*a.M, a.n, a.output.c_str()));
    } else {
      throw Failure{kExitUsage, "output must end in .csv or .svg"};
    }
  }
  std::cout << "wrote " << a.output << '\n';
  return kExitOk;
}

int cmd_constants(bool json) {
  qhb_constants c{};
  check(qhb_solve_constants(&c));
  if (json) {
    nlohmann::ordered_json j;
    j["kappa"] = c.kappa;
    j["lambda"] = c.lambda;
    j["residuals"] = {{"kappa", c.kappa_residual}, {"lambda", c.lambda_residual}};
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "kappa  = " << general(c.kappa, 15) << "  (residual " << general(c.kappa_residual, 3)
              << ")\n"
              << "lambda = " << general(c.lambda, 15) << "  (residual "
              << general(c.lambda_residual, 3) << ")\n";
  }
  return kExitOk;
}

const char* yes_no(int v) { return v ? "yes" : "no"; }

int cmd_classify(double M, std::size_t rays) {
  qhb_ball_report r{};
  check(qhb_classify_ball(M, rays, 0, &r));
  std::cout << "M                 " << general(r.M, 15) << '\n'
            << "convexity         " << (r.strictly_convex ? "strictly convex" : "not convex") << '\n'
            << "starlike (1,0)    " << (r.strictly_starlike ? "strictly starlike" : "not starlike")
            << '\n'
            << "smooth            " << yes_no(r.smooth) << '\n'
            << "simply connected  " << yes_no(r.simply_connected) << '\n';
  if (r.has_corner) {
    std::cout << "corner            m = " << fixed(r.corner_parameter, 12) << ", point ("
              << fixed(r.corner[0], 12) << ", 0), slope limit " << fixed(r.corner_slope_limit, 12)
              << '\n';
  } else {
    std::cout << "corner            none\n";
  }
  std::cout << "numeric convexity " << (r.numeric_convex ? "convex" : "not convex")
            << " (positive c' samples " << r.positive_cprime_samples
            << (r.reflex_corner ? ", reflex corner" : "") << ")\n"
            << "numeric starlike  " << (r.numeric_starlike ? "starlike" : "not starlike")
            << " (multi-crossing rays " << r.multi_crossing_rays << ")\n";
  const bool agree = r.numeric_convex == r.strictly_convex && r.numeric_starlike == r.strictly_starlike;
  std::cout << "agreement         " << (agree ? "analytic and numeric verdicts agree"
                                             : "MISMATCH between analytic and numeric verdicts")
            << '\n';
  return agree ? kExitOk : kExitFailure;
}

int cmd_verify(const std::string& suite, double h, int stencil) {
  qhb_report* report = nullptr;
  check(qhb_verify(suite.c_str(), qhb_grid{h, stencil}, &report));
  std::cout << qhb_report_text(report);
  const bool ok = qhb_report_passed(report);
  if (!ok) std::cerr << qhb_report_failures(report) << " check(s) failed\n";
  qhb_report_free(report);
  return ok ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasihyperbolic distances, ball boundaries and shape checks"};
  app.require_subcommand(1);
  // `--h` is the grid spacing, so help is long-form only.
  app.set_help_flag("--help", "print help and exit");

  DistArgs dist;
  auto* d = app.add_subcommand("dist", "distance between two points");
  auto* punct = d->add_flag("--punctured", dist.punctured, "exact formula in the punctured space (default)");
  d->add_option("--domain", dist.domain, "domain name[:params] or polygon CSV")->excludes(punct);
  d->add_option("--grid,--h", dist.h, "grid spacing")->check(CLI::PositiveNumber);
  d->add_option("--stencil", dist.stencil, "stencil radius")->check(CLI::Range(1, 3));
  d->add_option("--bbox", dist.bbox, "grid window xmin,ymin,xmax,ymax");
  d->add_option("--path", dist.path, "write the geodesic polyline as CSV");
  d->add_option("--samples", dist.samples, "samples on the exact geodesic")->check(CLI::Range(2, 1000000));
  d->add_option("x", dist.x, "first point, comma separated")->required();
  d->add_option("y", dist.y, "second point, comma separated")->required();

  TraceArgs trace;
  auto* t = app.add_subcommand("trace", "boundary of D(1, M) as CSV or SVG");
  t->add_option("-M", trace.M, "radius")->check(CLI::PositiveNumber);
  t->add_option("-n", trace.n, "samples on the upper half");
  t->add_option("-o", trace.output, "output path (.csv or .svg)")->required();
  t->add_flag("--figure1", trace.figure1, "overlay M = 1, 2 and kappa");

  bool json = false;
  auto* c = app.add_subcommand("constants", "solve for kappa and lambda");
  c->add_flag("--json", json, "machine-readable output");

  double classify_M = 0.0;
  std::size_t rays = 0;
  auto* k = app.add_subcommand("classify", "shape report for D(1, M)");
  k->add_option("-M", classify_M, "radius")->required()->check(CLI::PositiveNumber);
  k->add_option("--rays", rays, "rays for the crossing test (default 4096)");

  std::string suite;
  double verify_h = 0.01;
  int verify_stencil = 3;
  auto* v = app.add_subcommand("verify", "run an invariant battery");
  v->add_option("suite", suite, "metric, shape, grid, bounds or all")
      ->required()
      ->check(CLI::IsMember({"metric", "shape", "grid", "bounds", "all"}));
  v->add_option("--h,--grid", verify_h, "grid spacing")->check(CLI::PositiveNumber);
  v->add_option("--stencil", verify_stencil, "stencil radius")->check(CLI::Range(1, 3));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*d) return cmd_dist(dist);
    if (*t) return cmd_trace(trace);
    if (*c) return cmd_constants(json);
    if (*k) return cmd_classify(classify_M, rays);
    if (*v) return cmd_verify(suite, verify_h, verify_stencil);
  } catch (const Failure& f) {
    std::cerr << "qhball: " << f.message << '\n';
    return f.code;
  }
  return kExitUsage;
}
