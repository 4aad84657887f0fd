#pragma once

// Closed-form quasihyperbolic geometry of the punctured space R^n \ {0}.
//
// The density is 1/|z|, so in logarithmic polar coordinates (log|z|, angle)
// the metric is Euclidean and
//
//   k(x, y) = sqrt(phi^2 + log^2(|x| / |y|)),
//
// where phi is the angle between the rays through x and y.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qhball {

/// A nonzero point of R^n, n >= 2, with its Euclidean norm cached.
class Point {
 public:
  /// Throws ErrorCode::InvalidArgument for n < 2, non-finite coordinates or
  /// the origin.
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords)
      : Point(std::vector<double>(coords)) {}

  std::size_t dim() const noexcept { return coords_.size(); }
  double norm() const noexcept { return norm_; }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
  double norm_;
};

/// Planar point; used for boundary curves of D(1, M) and general domains.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double a) const { return {x * a, y * a}; }
};

double norm(Vec2 v);
double dot(Vec2 a, Vec2 b);
double cross(Vec2 a, Vec2 b);

/// Angle in [0, pi] between the rays [0, x] and [0, y].
class AngleAtOrigin {
 public:
  explicit AngleAtOrigin(double radians);
  double radians() const noexcept { return value_; }

 private:
  double value_;
};

AngleAtOrigin angle_at_origin(const Point& x, const Point& y);

/// Quasihyperbolic distance in R^n \ {0}. Valid for every angle including pi.
double qh_distance(const Point& x, const Point& y);

/// Planar convenience overload; both points must be nonzero.
double qh_distance(Vec2 x, Vec2 y);

/// Inversion of y in the sphere S^{n-1}(|x|): y |x|^2 / |y|^2.
Point invert_about_sphere(const Point& x, const Point& y);

struct GeodesicSample {
  double t;
  Point point;
};

struct GeodesicPath {
  std::vector<GeodesicSample> samples;
  double total_length = 0.0;
};

/// Geodesic from x to y sampled at `n_samples` uniform parameters in [0, 1].
///
/// The path lies in span(0, x, y) with |z(t)| = |x|^(1-t) |y|^t and the angle
/// to x growing linearly, so k(x, z(t)) = t k(x, y). Antipodal pairs have no
/// unique geodesic plane and raise ErrorCode::Antipodal.
GeodesicPath geodesic(const Point& x, const Point& y, std::size_t n_samples);

/// Parameter interval of the upper half of the boundary of D(1, M).
struct BoundaryParamDomain {
  double s_min;
  double s_max;
  /// True when M > pi: the two halves meet on the negative axis at a corner.
  bool wraps;
};

BoundaryParamDomain boundary_param_domain(double M);

/// phi(s) = sqrt(M^2 - s^2), clamped at zero for s within rounding of +-M.
double boundary_angle(double M, double s);

/// (e^s cos phi(s), e^s sin phi(s)); throws ErrorCode::OutsideDomain when
/// s leaves boundary_param_domain(M).
Vec2 boundary_point(double M, double s);

}  // namespace qhball
