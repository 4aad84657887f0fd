#include "qhball/shape_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "qhball/error.hpp"

namespace qhball {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxBisections = 200;

RootSolution bisect(const std::function<double(double)>& f, std::pair<double, double> bracket) {
  double lo = bracket.first;
  double hi = bracket.second;
  if (!(lo < hi)) throw Error(ErrorCode::BracketFailure, "empty bracket");
  double f_lo = f(lo);
  const double f_hi = f(hi);
  if (!(f_lo * f_hi < 0.0)) {
    throw Error(ErrorCode::BracketFailure, "no sign change on the bracket");
  }
  int it = 0;
  for (; it < kMaxBisections; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  const double root = std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;
  return {root, std::abs(f(root)), bracket, it};
}

// Left-hand side shared by both constants, in the variable x = sqrt(p^2 - 1).
double starlike_lhs(double x) { return std::cos(x) + x * std::sin(x); }

double kappa_equation_in_p(double p) {
  return starlike_lhs(std::sqrt(p * p - 1.0)) - std::exp(-1.0);
}

double lambda_equation_in_p(double p) {
  return starlike_lhs(std::sqrt(p * p - 1.0)) - std::exp(-1.0 - p);
}

RootSolution to_p(RootSolution x_root, double (*equation)(double)) {
  const double p = std::sqrt(x_root.value * x_root.value + 1.0);
  x_root.value = p;
  x_root.residual = std::abs(equation(p));
  return x_root;
}

const std::pair<double, double> kDefaultBracket{0.0, std::sqrt(kPi * kPi - 1.0)};

void require_interior(const BoundaryParamDomain& dom, double s) {
  if (!(s > dom.s_min && s < dom.s_max)) {
    throw Error(ErrorCode::OutsideDomain, "parameter must lie strictly inside the boundary domain");
  }
}

double tangent_a(double M, double s) {
  const double phi = boundary_angle(M, s);
  return phi * std::cos(phi) + s * std::sin(phi);
}

double tangent_b(double M, double s) {
  const double phi = boundary_angle(M, s);
  return phi * std::sin(phi) - s * std::cos(phi);
}

}  // namespace

TangentData tangent_data(double M, double s) {
  const BoundaryParamDomain dom = boundary_param_domain(M);
  require_interior(dom, s);
  TangentData t{};
  t.s = s;
  t.phi = boundary_angle(M, s);
  t.a = t.phi * std::cos(t.phi) + s * std::sin(t.phi);
  t.b = t.phi * std::sin(t.phi) - s * std::cos(t.phi);
  if (std::abs(t.a) > 1e-12 * std::max(1.0, std::hypot(t.a, t.b))) {
    t.c = t.b / t.a;
    t.c_prime = -(1.0 + s) * M * M / (t.phi * t.a * t.a);
  }
  return t;
}

RootSolution solve_kappa() { return solve_kappa(kDefaultBracket); }

RootSolution solve_kappa(std::pair<double, double> x_bracket) {
  const double target = std::exp(-1.0);
  auto h = [target](double x) { return starlike_lhs(x) - target; };
  return to_p(bisect(h, x_bracket), kappa_equation_in_p);
}

RootSolution solve_lambda() { return solve_lambda(kDefaultBracket); }

RootSolution solve_lambda(std::pair<double, double> x_bracket) {
  auto g = [](double x) { return starlike_lhs(x) - std::exp(-1.0 - std::sqrt(x * x + 1.0)); };
  return to_p(bisect(g, x_bracket), lambda_equation_in_p);
}

Constants solve_constants() {
  const RootSolution k = solve_kappa();
  const RootSolution l = solve_lambda();
  return {k.value, l.value, k.residual, l.residual, kDefaultBracket};
}

double kappa() {
  static const double value = solve_kappa().value;
  return value;
}

double tangent_through_center_residual(double M, double s) {
  const TangentData t = tangent_data(M, s);
  if (t.vertical()) throw Error(ErrorCode::VerticalTangent, "vertical tangent");
  const Vec2 x = boundary_point(M, s);
  if (std::abs(x.x - 1.0) <= 1e-14) {
    throw Error(ErrorCode::InvalidArgument, "center is on the vertical through the sample");
  }
  return *t.c - x.y / (x.x - 1.0);
}

const char* to_string(Convexity c) {
  return c == Convexity::StrictlyConvex ? "strictly convex" : "not convex";
}

const char* to_string(Starlikeness s) {
  return s == Starlikeness::StrictlyStarlike ? "strictly starlike" : "not starlike";
}

RayScan scan_rays(const BoundaryLoops& loops, Vec2 origin, std::size_t rays, double tie_tolerance) {
  if (rays == 0) throw Error(ErrorCode::InvalidArgument, "ray count must be positive");
  RayScan scan;
  scan.rays = rays;
  std::vector<double> q;
  for (std::size_t k = 0; k < rays; ++k) {
    const double angle = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(rays);
    const Vec2 dir{std::cos(angle), std::sin(angle)};
    const Vec2 normal{-dir.y, dir.x};
    std::size_t crossings = 0;
    for (const auto* loop : {&loops.outer, &loops.inner}) {
      const std::size_t n = loop->size();
      q.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double v = dot(normal, (*loop)[i] - origin);
        q[i] = std::abs(v) <= tie_tolerance ? 0.0 : v;
      }
      for (std::size_t i = 0; i + 1 < n; ++i) {
        if ((q[i] > 0.0) == (q[i + 1] > 0.0)) continue;
        const double w = q[i] / (q[i] - q[i + 1]);
        const Vec2 hit = (*loop)[i] + ((*loop)[i + 1] - (*loop)[i]) * w;
        if (dot(dir, hit - origin) > 0.0) ++crossings;
      }
    }
    if (crossings != 1) {
      if (crossings == 0) ++scan.zero_crossing_rays; else ++scan.multi_crossing_rays;
      if (!scan.first_bad_angle) scan.first_bad_angle = angle;
    }
  }
  return scan;
}

BallReport classify_ball(double M, const ClassifyOptions& options) {
  const BoundaryParamDomain dom = boundary_param_domain(M);
  BallReport report{};
  report.M = M;
  report.convexity = M <= 1.0 ? Convexity::StrictlyConvex : Convexity::NotConvex;
  report.starlike_wrt_center =
      M <= kappa() + 1e-12 ? Starlikeness::StrictlyStarlike : Starlikeness::NotStarlike;
  report.smooth = M <= kPi;
  report.simply_connected = M <= kPi;
  if (dom.wraps) {
    const double m = dom.s_min;
    report.corner_parameter = m;
    // At phi(m) = pi the corner is e^m (cos pi, sin pi).
    report.corner = Vec2{-std::exp(m), 0.0};
    report.corner_slope_limit = -m / boundary_angle(M, m);
  }

  // Turning sign a b' - b a' has the sign of c' wherever a != 0 and, unlike
  // c = b / a, stays finite across vertical tangents.
  NumericConfirmation& num = report.numeric;
  const double theta_lo = dom.wraps ? std::acos(-dom.s_min / M) : 0.0;
  const std::size_t count = std::max<std::size_t>(options.cprime_samples, 2);
  for (std::size_t i = 1; i <= count; ++i) {
    const double theta =
        theta_lo + (kPi - theta_lo) * static_cast<double>(i) / static_cast<double>(count + 1);
    const double s = -M * std::cos(theta);
    const double room = std::min(s - dom.s_min, dom.s_max - s);
    if (!(room > 0.0)) continue;
    const double h = std::min(1e-5, 0.25 * room);
    const double a = tangent_a(M, s);
    const double b = tangent_b(M, s);
    const double da = (tangent_a(M, s + h) - tangent_a(M, s - h)) / (2.0 * h);
    const double db = (tangent_b(M, s + h) - tangent_b(M, s - h)) / (2.0 * h);
    const double turning = a * db - b * da;
    if (turning > 1e-8 * (a * a + b * b)) ++num.positive_cprime_samples;
  }
  if (dom.wraps) {
    const double m = dom.s_min;
    const Vec2 corner = boundary_point(M, m);
    const Vec2 up = boundary_point(M, m + 1e-4 * (M - m));
    const Vec2 down{up.x, -up.y};
    num.reflex_corner = cross(corner - down, up - corner) > 0.0;
  }
  num.convex = num.positive_cprime_samples == 0 && !num.reflex_corner;

  const RayScan scan =
      scan_rays(trace_loops(M, options.trace_samples), Vec2{1.0, 0.0}, options.rays,
                options.tie_tolerance);
  num.multi_crossing_rays = scan.multi_crossing_rays;
  num.starlike = scan.every_ray_crosses_once();
  return report;
}

double radius_profile(double M, double s) {
  const BoundaryParamDomain dom = boundary_param_domain(M);
  const double slack = 1e-12 * std::max(1.0, M);
  if (!(s >= dom.s_min - slack && s <= dom.s_max + slack)) {
    throw Error(ErrorCode::OutsideDomain, "boundary parameter outside its domain");
  }
  const double r = std::exp(s);
  return r * r + 1.0 - 2.0 * r * std::cos(boundary_angle(M, s));
}

bool star_center_admissible(double M, Vec2 z, const ClassifyOptions& options) {
  boundary_param_domain(M);
  if (!(qh_distance(Vec2{1.0, 0.0}, z) < M)) {
    throw Error(ErrorCode::OutsideDomain, "star center candidate is not inside the ball");
  }
  const RayScan scan =
      scan_rays(trace_loops(M, options.trace_samples), z, options.rays, options.tie_tolerance);
  return scan.every_ray_crosses_once();
}

}  // namespace qhball
