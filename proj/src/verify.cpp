#include "qhball/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "qhball/boundary_trace.hpp"
#include "qhball/error.hpp"
#include "qhball/numeric_domain.hpp"
#include "qhball/punctured_metric.hpp"
#include "qhball/shape_analysis.hpp"

namespace qhball {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), pattern, a, b);
  return buf;
}

// Passes when `error` stays at or below `tolerance`.
CheckResult at_most(std::string name, double error, double tolerance) {
  const bool ok = std::isfinite(error) && error <= tolerance;
  return {std::move(name), ok, tolerance - error, fmt("error %.3e, tolerance %.1e", error, tolerance)};
}

CheckResult count_zero(std::string name, std::size_t failures, std::size_t total) {
  return {std::move(name), failures == 0, -static_cast<double>(failures),
          fmt("%.0f of %.0f samples failed", static_cast<double>(failures),
              static_cast<double>(total))};
}

Point random_point(std::mt19937_64& rng, std::size_t dim) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (;;) {
    std::vector<double> c(dim);
    for (double& v : c) v = u(rng);
    double n2 = 0.0;
    for (double v : c) n2 += v * v;
    if (n2 > 0.01) return Point(std::move(c));
  }
}

void metric_suite(std::vector<CheckResult>& out) {
  std::mt19937_64 rng(20240601);
  double sym = 0.0, tri = 0.0, inv = 0.0, sim = 0.0, add = 0.0, bnd = 0.0;
  for (int i = 0; i < 300; ++i) {
    const std::size_t dim = 2 + static_cast<std::size_t>(i % 3);
    const Point x = random_point(rng, dim);
    const Point y = random_point(rng, dim);
    const Point z = random_point(rng, dim);
    const double kxy = qh_distance(x, y);
    sym = std::max(sym, std::abs(kxy - qh_distance(y, x)));
    tri = std::max(tri, qh_distance(x, z) - kxy - qh_distance(y, z));
    inv = std::max(inv, std::abs(kxy - qh_distance(x, invert_about_sphere(x, y))));

    // Rotation in the (0, 1) coordinate plane with a stretch.
    const double a = 0.37 * i;
    const double lambda = std::exp(0.01 * (i % 50) - 0.25);
    auto transform = [&](const Point& p) {
      std::vector<double> c(p.coords().begin(), p.coords().end());
      const double c0 = std::cos(a) * c[0] - std::sin(a) * c[1];
      const double c1 = std::sin(a) * c[0] + std::cos(a) * c[1];
      c[0] = c0;
      c[1] = c1;
      for (double& v : c) v *= lambda;
      return Point(std::move(c));
    };
    sim = std::max(sim, std::abs(kxy - qh_distance(transform(x), transform(y))));

    if (angle_at_origin(x, y).radians() < kPi - 1e-6) {
      const GeodesicPath g = geodesic(x, y, 9);
      for (std::size_t p = 1; p < g.samples.size(); ++p) {
        for (std::size_t q = p; q < g.samples.size(); ++q) {
          const double lhs = qh_distance(x, g.samples[p].point) +
                             qh_distance(g.samples[p].point, g.samples[q].point);
          add = std::max(add, std::abs(lhs - qh_distance(x, g.samples[q].point)));
        }
      }
    }
  }
  for (double M : {0.3, 1.0, 2.0, 3.0, 3.5, 5.0}) {
    const BoundaryParamDomain dom = boundary_param_domain(M);
    for (int i = 0; i <= 200; ++i) {
      const double s = dom.s_min + (dom.s_max - dom.s_min) * i / 200.0;
      bnd = std::max(bnd, std::abs(qh_distance(Vec2{1.0, 0.0}, boundary_point(M, s)) - M));
    }
  }
  out.push_back(at_most("metric.symmetry", sym, 1e-12));
  out.push_back(at_most("metric.triangle_inequality", tri, 1e-12));
  out.push_back(at_most("metric.inversion_invariance", inv, 1e-12));
  out.push_back(at_most("metric.similarity_invariance", sim, 1e-12));
  out.push_back(at_most("metric.geodesic_additivity", add, 1e-9));
  out.push_back(at_most("metric.boundary_on_sphere", bnd, 1e-12));
}

void shape_suite(std::vector<CheckResult>& out) {
  const RootSolution k = solve_kappa();
  const RootSolution l = solve_lambda();
  out.push_back(at_most("shape.kappa_value", std::abs(k.value - 2.83297), 1e-5));
  out.push_back(at_most("shape.kappa_residual", k.residual, 1e-12));
  out.push_back(at_most("shape.lambda_value", std::abs(l.value - 2.9648984), 1e-6));
  out.push_back(at_most("shape.lambda_residual", l.residual, 1e-12));

  std::size_t sign_fail = 0, sign_total = 0;
  double fd_err = 0.0;
  for (double M : {0.5, 1.0, 1.5, 2.0, 2.5, 3.0}) {
    for (int i = 1; i < 400; ++i) {
      const double s = -M + 2.0 * M * i / 400.0;
      const TangentData t = tangent_data(M, s);
      if (!t.c_prime) continue;
      ++sign_total;
      const double expected = -(1.0 + s);
      if (std::abs(expected) > 1e-12 && (*t.c_prime > 0.0) != (expected > 0.0)) ++sign_fail;
      const double h = 1e-5;
      if (std::abs(t.a) < 0.05 || s - h <= -M || s + h >= M) continue;
      const TangentData lo = tangent_data(M, s - h);
      const TangentData hi = tangent_data(M, s + h);
      if (!lo.c || !hi.c) continue;
      const double fd = (*hi.c - *lo.c) / (2.0 * h);
      fd_err = std::max(fd_err, std::abs(fd - *t.c_prime) / std::max(1.0, std::abs(*t.c_prime)));
    }
  }
  out.push_back(count_zero("shape.cprime_sign_law", sign_fail, sign_total));
  out.push_back(at_most("shape.cprime_finite_difference", fd_err, 1e-4));

  double f2_err = 0.0;
  for (double M : {0.5, 1.0, 2.0}) {
    auto f = [M](double phi) { return std::exp(-std::sqrt(M * M - phi * phi)) * std::cos(phi); };
    const double h = 1e-3;
    const double fd = (f(h) - 2.0 * f(0.0) + f(-h)) / (h * h);
    const double analytic = std::exp(-M) * (1.0 / M - 1.0);
    f2_err = std::max(f2_err, std::abs(fd - analytic) / (std::exp(-M) * std::max(1.0, std::abs(1.0 / M - 1.0))));
  }
  out.push_back(at_most("shape.second_derivative_at_tip", f2_err, 1e-3));

  const double kap = kappa();
  std::size_t disagree = 0;
  const double radii[] = {0.25, 0.5, 1.0, 1.01, 2.0, kap - 0.01, kap, kap + 0.01, 3.0, kPi, 3.5};
  for (double M : radii) {
    if (!classify_ball(M).numeric_agrees()) ++disagree;
  }
  out.push_back(count_zero("shape.classification_numeric_agreement", disagree, std::size(radii)));

  std::size_t inversions = 0;
  for (double M : {0.5, 1.0, 2.0, kap}) {
    double prev = radius_profile(M, -M);
    for (int i = 1; i <= 10000; ++i) {
      const double s = std::min(M, -M + 2.0 * M * i / 10000.0);
      const double v = radius_profile(M, s);
      if (!(v > prev)) ++inversions;
      prev = v;
    }
  }
  out.push_back(count_zero("shape.radius_profile_monotone", inversions, 40000));
}

// Closed form against the grid engine at the snapped nodes.
void grid_suite(std::vector<CheckResult>& out, const VerifyOptions& opt) {
  const GridSpec grid{opt.spacing, opt.stencil_radius, std::nullopt};
  const double tolerance = (opt.spacing <= 0.01 && opt.stencil_radius == 3) ? 0.02 : 0.05;

  const DomainField punctured = DomainField::punctured({0.0, 0.0}, {-4.0, -4.0, 4.0, 4.0});
  double worst = 0.0;
  const std::pair<double, double> log_polar[] = {{0.5, 0.0}, {0.0, 1.0}, {0.7, 1.2},
                                                 {-0.8, 1.5}, {1.0, 2.0}, {-1.0, 2.2}};
  for (auto [s, theta] : log_polar) {
    const Vec2 y{std::exp(s) * std::cos(theta), std::exp(s) * std::sin(theta)};
    const GeodesicEstimate est = grid_qh_distance(punctured, grid, {1.0, 0.0}, y);
    const double exact = qh_distance(est.path.front(), est.path.back());
    worst = std::max(worst, std::abs(est.value - exact) / exact);
  }
  out.push_back(at_most("grid.punctured_closed_form", worst, tolerance));

  const DomainField half = DomainField::half_plane({-4.0, 0.0, 4.0, 8.0});
  worst = 0.0;
  const std::pair<Vec2, Vec2> pairs[] = {{{0.0, 1.0}, {0.0, 2.72}},
                                         {{0.0, 1.0}, {1.0, 1.0}},
                                         {{-1.0, 0.5}, {1.0, 1.5}},
                                         {{0.5, 2.0}, {-1.5, 0.8}}};
  for (auto [a, b] : pairs) {
    const GeodesicEstimate est = grid_qh_distance(half, grid, a, b);
    const Vec2 p = est.path.front();
    const Vec2 q = est.path.back();
    const Vec2 d = p - q;
    const double exact = std::acosh(1.0 + dot(d, d) / (2.0 * p.y * q.y));
    worst = std::max(worst, std::abs(est.value - exact) / exact);
  }
  out.push_back(at_most("grid.half_plane_closed_form", worst, tolerance));
}

void bounds_suite(std::vector<CheckResult>& out, const VerifyOptions& opt) {
  const GridSpec grid{opt.spacing, opt.stencil_radius, std::nullopt};
  const double h = opt.spacing;
  const DomainField half = DomainField::half_plane({-3.0, 0.0, 3.0, 6.0});

  std::size_t gp_fail = 0, gp_total = 0;
  std::size_t sandwich_fail = 0, sandwich_total = 0;
  for (Vec2 source : {Vec2{0.0, 1.0}, Vec2{1.0, 2.0}, Vec2{-1.0, 0.5}}) {
    const DistanceField field = grid_distance_field(half, grid, source);
    const Vec2 z = field.source_node();
    const double dz = half.boundary_distance(z);
    std::size_t idx = 0;
    field.for_each_node([&](Vec2 p, double value, double dp) {
      if (!std::isfinite(value)) return;
      if (idx++ % 997 == 0) {
        ++gp_total;
        const double tol = 3.0 * h * std::max(1.0 / dz, 1.0 / dp);
        if (value < gp_lower_bound(z, p, dz) - tol) ++gp_fail;
      }
      for (double M : {0.5, 1.0, 2.0}) {
        const SandwichRadii r = ball_sandwich_radii(M, dz);
        const double dist = norm(p - z);
        const double tol = 3.0 * h * std::max(1.0 / dz, 1.0 / dp);
        ++sandwich_total;
        if (value < M && dist > r.outer + h) ++sandwich_fail;
        if (dist < r.inner && value >= M + tol) ++sandwich_fail;
      }
    });
  }
  out.push_back(count_zero("bounds.gehring_palka_lower_bound", gp_fail, gp_total));
  out.push_back(count_zero("bounds.ball_sandwich", sandwich_fail, sandwich_total));

  // Interior balls along exact geodesics to the boundary of D(1, 2).
  std::size_t interior_fail = 0, interior_total = 0;
  const Point center{1.0, 0.0};
  for (int i = 1; i < 24; ++i) {
    const double s = -2.0 + 4.0 * i / 24.0;
    const Vec2 yb = boundary_point(2.0, s);
    const GeodesicPath g = geodesic(center, Point{yb.x, yb.y}, 12);
    for (std::size_t j = 1; j + 1 < g.samples.size(); ++j) {
      const Vec2 z{g.samples[j].point[0], g.samples[j].point[1]};
      const double r = interior_ball_radius(norm(z - yb), norm(z));
      for (int a = 0; a < 32; ++a) {
        const double ang = 2.0 * kPi * a / 32.0;
        const Vec2 p = z + Vec2{std::cos(ang), std::sin(ang)} * (0.999 * r);
        ++interior_total;
        if (!(qh_distance(Vec2{1.0, 0.0}, p) < 2.0)) ++interior_fail;
      }
    }
  }
  out.push_back(count_zero("bounds.interior_ball", interior_fail, interior_total));

  const DomainField square = DomainField::square({0.0, 0.0}, 1.0);
  const DeltaR0Result dr = delta_r0_check(square, 0.3, 0.5, 100, 8);
  out.push_back({"bounds.delta_r0_square", dr.holds, dr.holds ? 0.0 : -1.0,
                 fmt("%.0f boundary points, %.0f failures", static_cast<double>(dr.boundary_points),
                     static_cast<double>(dr.failures.size()))});

  const CoverageResult cov = hull_coverage_check(square, GridSpec{0.01, 3, std::nullopt}, {0.5, 0.5},
                                                 PhiFunction::identity(), 0.3, 0.5, 0.2);
  out.push_back({"bounds.hull_coverage_square", cov.covered, cov.M_s - cov.empirical_M,
                 fmt("M(s) = %.4f, empirically sufficient %.4f", cov.M_s, cov.empirical_M)});
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::string VerifyReport::text() const {
  std::string out;
  std::size_t failed = 0;
  for (const CheckResult& c : checks) {
    out += c.passed ? "PASS " : "FAIL ";
    out += c.name;
    out += "  margin=" + fmt("%.3e", c.margin == 0.0 ? 0.0 : c.margin) + "  " + c.detail + "\n";
    failed += c.passed ? 0 : 1;
  }
  out += "suite " + suite + ": " + std::to_string(checks.size() - failed) + "/" +
         std::to_string(checks.size()) + " checks passed\n";
  return out;
}

VerifyReport run_verify(const std::string& suite, const VerifyOptions& options) {
  const bool all = suite == "all";
  if (!all && suite != "metric" && suite != "shape" && suite != "grid" && suite != "bounds") {
    throw Error(ErrorCode::InvalidArgument, "unknown suite '" + suite + "'");
  }
  VerifyReport report{suite, {}};
  if (all || suite == "metric") metric_suite(report.checks);
  if (all || suite == "shape") shape_suite(report.checks);
  if (all || suite == "grid") grid_suite(report.checks, options);
  if (all || suite == "bounds") bounds_suite(report.checks, options);
  return report;
}

}  // namespace qhball
