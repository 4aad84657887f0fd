#pragma once

// Tangent analytics of the boundary of D(1, M) in the punctured plane, the
// starlikeness constants kappa and lambda, and ball classification.
//
// Every ball of radius M in R^n \ {0} is similar to D(1, M) through a
// rotation and a stretching, and is symmetric about the line through its
// center and the origin, so the planar upper half-curve carries all of the
// shape information.

#include <cstddef>
#include <optional>
#include <utility>

#include "qhball/boundary_trace.hpp"
#include "qhball/punctured_metric.hpp"

namespace qhball {

/// Tangent of the upper boundary half at parameter s.
///
/// x'(s) = (e^s / phi(s)) (a(s), b(s)) with
///   a = phi cos phi + s sin phi,  b = phi sin phi - s cos phi,
/// slope c = b / a and c' = -(1 + s) M^2 / (phi a^2).
struct TangentData {
  double s;
  double phi;
  double a;
  double b;
  /// Empty where a(s) vanishes (vertical tangent).
  std::optional<double> c;
  std::optional<double> c_prime;

  bool vertical() const noexcept { return !c.has_value(); }
};

/// Requires s strictly inside boundary_param_domain(M).
TangentData tangent_data(double M, double s);

struct RootSolution {
  double value;
  double residual;
  std::pair<double, double> bracket;
  int iterations;
};

/// h(x) = cos x + x sin x - e^{-1} on x = sqrt(p^2 - 1). The bracket is in
/// x and defaults to (0, sqrt(pi^2 - 1)); the returned value is p = kappa.
RootSolution solve_kappa();
RootSolution solve_kappa(std::pair<double, double> x_bracket);

/// Same left-hand side equal to e^{-1-p}; returns p = lambda.
RootSolution solve_lambda();
RootSolution solve_lambda(std::pair<double, double> x_bracket);

struct Constants {
  double kappa;
  double lambda;
  double kappa_residual;
  double lambda_residual;
  std::pair<double, double> bracket;
};

Constants solve_constants();

/// kappa, solved once per process.
double kappa();

/// c(s) - x2 / (x1 - 1) for (x1, x2) = boundary_point(M, s): zero exactly when
/// the tangent at x(s) passes through the center (1, 0).
double tangent_through_center_residual(double M, double s);

enum class Convexity { StrictlyConvex, NotConvex };
enum class Starlikeness { StrictlyStarlike, NotStarlike };

const char* to_string(Convexity c);
const char* to_string(Starlikeness s);

struct ClassifyOptions {
  std::size_t rays = 4096;
  std::size_t trace_samples = 16384;
  std::size_t cprime_samples = 4096;
  double tie_tolerance = 1e-10;
};

/// Numeric cross-checks of the analytic verdicts; advisory near kappa where
/// ray crossing degenerates at tangency.
struct NumericConfirmation {
  /// Samples of the turning sign a b' - b a' (finite differences) with the
  /// sign of a positive c'.
  std::size_t positive_cprime_samples = 0;
  /// Inward corner on the negative axis (M > pi).
  bool reflex_corner = false;
  bool convex = false;
  std::size_t multi_crossing_rays = 0;
  bool starlike = false;
};

struct BallReport {
  double M;
  Convexity convexity;
  Starlikeness starlike_wrt_center;
  bool smooth;
  bool simply_connected;
  std::optional<double> corner_parameter;
  std::optional<Vec2> corner;
  std::optional<double> corner_slope_limit;
  NumericConfirmation numeric;

  bool numeric_agrees() const noexcept {
    return numeric.convex == (convexity == Convexity::StrictlyConvex) &&
           numeric.starlike == (starlike_wrt_center == Starlikeness::StrictlyStarlike);
  }
};

BallReport classify_ball(double M, const ClassifyOptions& options = {});

/// |x(s) - 1|^2 = e^{2s} + 1 - 2 e^s cos phi(s).
double radius_profile(double M, double s);

/// Result of casting rays from `origin` against closed polylines.
struct RayScan {
  std::size_t rays = 0;
  std::size_t multi_crossing_rays = 0;
  std::size_t zero_crossing_rays = 0;
  /// Direction angle of the first ray that did not cross exactly once.
  std::optional<double> first_bad_angle;

  bool every_ray_crosses_once() const noexcept {
    return multi_crossing_rays == 0 && zero_crossing_rays == 0;
  }
};

/// Crossings are sign changes of the ray-normal coordinate between
/// consecutive vertices whose interpolated along-ray coordinate is positive.
RayScan scan_rays(const BoundaryLoops& loops, Vec2 origin, std::size_t rays,
                  double tie_tolerance = 1e-10);

/// Numeric starlikeness of D(1, M) with respect to z. Throws
/// ErrorCode::OutsideDomain when z is not inside the ball.
bool star_center_admissible(double M, Vec2 z, const ClassifyOptions& options = {});

}  // namespace qhball
