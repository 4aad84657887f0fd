#include "qhball/punctured_metric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qhball/error.hpp"

namespace qhball {

namespace {

constexpr double kPi = std::numbers::pi;

void require_same_dim(const Point& x, const Point& y) {
  if (x.dim() != y.dim()) {
    throw Error(ErrorCode::InvalidArgument,
                "dimension mismatch: " + std::to_string(x.dim()) + " vs " +
                    std::to_string(y.dim()));
  }
}

void require_radius(double M) {
  if (!(M > 0.0) || !std::isfinite(M)) {
    throw Error(ErrorCode::InvalidArgument, "radius M must be positive and finite");
  }
}

}  // namespace

Point::Point(std::vector<double> coords) : coords_(std::move(coords)), norm_(0.0) {
  if (coords_.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "points need at least two coordinates");
  }
  double sum = 0.0;
  for (double c : coords_) {
    if (!std::isfinite(c)) {
      throw Error(ErrorCode::InvalidArgument, "point coordinates must be finite");
    }
    sum += c * c;
  }
  norm_ = std::sqrt(sum);
  if (!(norm_ > 0.0)) {
    throw Error(ErrorCode::OutsideDomain, "the origin is not in the punctured space");
  }
}

double norm(Vec2 v) { return std::hypot(v.x, v.y); }
double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

AngleAtOrigin::AngleAtOrigin(double radians) : value_(radians) {
  if (!(radians >= 0.0 && radians <= kPi)) {
    throw Error(ErrorCode::InvalidArgument, "angle outside [0, pi]");
  }
}

AngleAtOrigin angle_at_origin(const Point& x, const Point& y) {
  require_same_dim(x, y);
  // 2 atan2(|u - v|, |u + v|) for unit u, v keeps full precision near 0 and pi,
  // where acos of the clamped cosine loses half the digits.
  double diff = 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    const double u = x[i] / x.norm();
    const double v = y[i] / y.norm();
    diff += (u - v) * (u - v);
    sum += (u + v) * (u + v);
  }
  const double angle = 2.0 * std::atan2(std::sqrt(diff), std::sqrt(sum));
  return AngleAtOrigin(std::clamp(angle, 0.0, kPi));
}

double qh_distance(const Point& x, const Point& y) {
  const double phi = angle_at_origin(x, y).radians();
  const double log_ratio = std::log(x.norm() / y.norm());
  return std::hypot(phi, log_ratio);
}

double qh_distance(Vec2 x, Vec2 y) {
  return qh_distance(Point{x.x, x.y}, Point{y.x, y.y});
}

Point invert_about_sphere(const Point& x, const Point& y) {
  require_same_dim(x, y);
  const double scale = (x.norm() * x.norm()) / (y.norm() * y.norm());
  std::vector<double> out(y.coords().begin(), y.coords().end());
  for (double& c : out) c *= scale;
  return Point(std::move(out));
}

GeodesicPath geodesic(const Point& x, const Point& y, std::size_t n_samples) {
  require_same_dim(x, y);
  if (n_samples < 2) {
    throw Error(ErrorCode::InvalidArgument, "a geodesic needs at least two samples");
  }
  const std::size_t n = x.dim();
  const double phi = angle_at_origin(x, y).radians();

  // Orthonormal frame of span(0, x, y) by Gram-Schmidt.
  std::vector<double> e1(n), e2(n, 0.0);
  double along = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    e1[i] = x[i] / x.norm();
    along += e1[i] * (y[i] / y.norm());
  }
  double w_norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    e2[i] = y[i] / y.norm() - along * e1[i];
    w_norm += e2[i] * e2[i];
  }
  w_norm = std::sqrt(w_norm);
  const bool collinear = w_norm <= 1e-12;
  if (collinear && along < 0.0) {
    throw Error(ErrorCode::Antipodal, "antipodal: geodesic plane not unique");
  }
  if (!collinear) {
    for (double& c : e2) c /= w_norm;
  }

  const double log_x = std::log(x.norm());
  const double log_y = std::log(y.norm());

  GeodesicPath path;
  path.samples.reserve(n_samples);
  for (std::size_t k = 0; k < n_samples; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(n_samples - 1);
    if (k == 0) {
      path.samples.push_back({0.0, x});
      continue;
    }
    if (k + 1 == n_samples) {
      path.samples.push_back({1.0, y});
      continue;
    }
    const double radius = std::exp((1.0 - t) * log_x + t * log_y);
    const double theta = collinear ? 0.0 : t * phi;
    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) {
      z[i] = radius * (std::cos(theta) * e1[i] + std::sin(theta) * e2[i]);
    }
    path.samples.push_back({t, Point(std::move(z))});
  }
  for (std::size_t k = 1; k < path.samples.size(); ++k) {
    path.total_length += qh_distance(path.samples[k - 1].point, path.samples[k].point);
  }
  return path;
}

BoundaryParamDomain boundary_param_domain(double M) {
  require_radius(M);
  if (M <= kPi) return {-M, M, false};
  return {std::sqrt(M * M - kPi * kPi), M, true};
}

double boundary_angle(double M, double s) {
  return std::sqrt(std::max(0.0, M * M - s * s));
}

Vec2 boundary_point(double M, double s) {
  const BoundaryParamDomain dom = boundary_param_domain(M);
  const double slack = 1e-12 * std::max(1.0, M);
  if (!std::isfinite(s) || s < dom.s_min - slack || s > dom.s_max + slack) {
    throw Error(ErrorCode::OutsideDomain, "boundary parameter outside its domain");
  }
  const double phi = boundary_angle(M, s);
  const double r = std::exp(s);
  return {r * std::cos(phi), r * std::sin(phi)};
}

}  // namespace qhball
