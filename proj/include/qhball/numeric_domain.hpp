#pragma once

// Grid-graph approximation of the quasihyperbolic metric
//
//   k_G(x, y) = inf over curves of the integral of |dz| / d(z, boundary G)
//
// in general planar domains, and executable forms of the classical bounds
// for quasihyperbolic balls.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qhball/punctured_metric.hpp"

namespace qhball {

struct Box {
  double xmin, ymin, xmax, ymax;

  bool contains(Vec2 p) const noexcept {
    return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
  }
  double diameter() const noexcept { return std::hypot(xmax - xmin, ymax - ymin); }
};

/// A proper subdomain of the plane given by oracles. `boundary_distance`
/// must be positive wherever `inside` holds and 1-Lipschitz.
struct DomainField {
  std::string name;
  std::function<bool(Vec2)> inside;
  std::function<double(Vec2)> boundary_distance;
  Box bbox;
  /// False for domains truncated to `bbox` (punctured plane, half-plane).
  bool bounded = true;

  static DomainField punctured(Vec2 center, Box bbox);
  /// {y > 0}.
  static DomainField half_plane(Box bbox);
  static DomainField square(Vec2 lower_left, double side);
  static DomainField disk(Vec2 center, double radius);
  /// [0, 2s]^2 minus the closed upper-right quadrant [s, 2s]^2.
  static DomainField l_shape(double s);
  /// Simple polygon, vertices in either orientation, closed implicitly.
  static DomainField polygon(std::vector<Vec2> vertices, std::string name = "polygon");
};

/// CSV with one `x,y` pair per line; blank lines and `#` comments skipped.
DomainField load_polygon_csv(const std::filesystem::path& path);

/// `punctured`, `half-plane`, `square`, `disk`, `l-shape`, optionally followed
/// by `:p1,p2,...` parameters, or a path to a polygon CSV.
///
///   punctured[:cx,cy[,half_width]]   half-plane[:half_width]
///   square[:x0,y0,side]              disk[:cx,cy,r]    l-shape[:s]
DomainField parse_domain(const std::string& spec);

struct GridSpec {
  double spacing = 0.01;
  int stencil_radius = 3;
  /// Empty means the domain's bbox.
  std::optional<Box> bbox;
};

struct Offset {
  int dx, dy;
};

/// Lattice moves with Chebyshev length <= radius and coprime components.
std::vector<Offset> stencil_offsets(int radius);

/// Single-source quasihyperbolic distances on the grid graph of a domain.
///
/// Nodes are the lattice points of the bbox where the domain is inside; an
/// edge joins two nodes along a stencil offset when its quarter, half and
/// three-quarter points are inside too, and costs
/// |u - v| (1/d(u) + 1/d(v)) / 2.
class DistanceField {
 public:
  DistanceField(const DomainField& domain, const GridSpec& grid, Vec2 source,
                std::optional<Vec2> stop_at = std::nullopt);
  ~DistanceField();
  DistanceField(DistanceField&&) noexcept;
  DistanceField& operator=(DistanceField&&) noexcept;

  double spacing() const noexcept;
  int stencil_radius() const noexcept;
  Vec2 source_node() const noexcept;
  std::size_t node_count() const noexcept;

  /// Every valid node as (position, value, d); value is +inf when unreached.
  void for_each_node(const std::function<void(Vec2, double, double)>& visit) const;

  /// Value at the nearest valid node to `p`, snapping as the queries do.
  std::optional<double> at_nearest(Vec2 p) const;
  /// Bilinear interpolation when the four surrounding nodes are reached,
  /// otherwise the nearest reached node within two cells.
  std::optional<double> sample(Vec2 p) const;
  /// Node path from the source to the node nearest `p`.
  std::vector<Vec2> path_to(Vec2 p) const;
  std::optional<Vec2> snap(Vec2 p) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct GeodesicEstimate {
  double value;
  std::vector<Vec2> path;
  double spacing;
  int stencil_radius;
  /// h (1/d(x) + 1/d(y)) bound on the effect of snapping the endpoints.
  double snap_error_bound;
};

/// Throws ErrorCode::OutsideDomain for endpoints outside G or the bbox,
/// ErrorCode::InvalidArgument when h > min(d(x), d(y)) / 4 and
/// ErrorCode::Disconnected when the grid does not join the endpoints.
GeodesicEstimate grid_qh_distance(const DomainField& domain, const GridSpec& grid, Vec2 x, Vec2 y);

/// Full single-source field; same preconditions as grid_qh_distance for x.
DistanceField grid_distance_field(const DomainField& domain, const GridSpec& grid, Vec2 x);

/// log(1 + |z - y| / d(z)).
double gp_lower_bound(Vec2 z, Vec2 y, double d_z);

struct SandwichRadii {
  double inner;
  double outer;
};

/// ((1 - e^{-M}) d(x), (e^M - 1) d(x)).
SandwichRadii ball_sandwich_radii(double M, double d_x);

/// |z - y| d(z) / (d(z) + |z - y|).
double interior_ball_radius(double dist_zy, double d_z);

/// Increasing homeomorphism of [0, inf) with its inverse.
struct PhiFunction {
  std::string name;
  std::function<double(double)> evaluate;
  std::function<double(double)> inverse;

  static PhiFunction identity();
  static PhiFunction linear(double c);
  /// c log(1 + t).
  static PhiFunction logarithmic(double c);
};

/// min(d_x0, d_x) > |x - x0| / phi^{-1}(M). True is sufficient for x being in
/// D_G(x0, M) when G is phi-uniform.
bool phi_uniform_membership(const PhiFunction& phi, double M, Vec2 x0, Vec2 x, double d_x0,
                            double d_x);

/// phi((|x0 - z| + r2) / (delta r2)) with r2 = min(r1, d(x0) / 2).
double coverage_radius_bound(const PhiFunction& phi, double dist_x0z, double r1, double d_x0,
                             double delta);

/// Boundary points from a raster of the bbox (expanded by 2%) refined by
/// bisection of the inside predicate along raster edges.
std::vector<Vec2> sample_boundary(const DomainField& domain, std::size_t raster);

struct DeltaR0Witness {
  Vec2 z;
  double r;
};

struct DeltaR0Result {
  bool holds;
  std::vector<DeltaR0Witness> failures;
  std::size_t boundary_points;
};

DeltaR0Result delta_r0_check(const DomainField& domain, double delta, double r0,
                             std::size_t boundary_samples, std::size_t radial_samples);

struct MonotonicityViolation {
  double ray_angle;
  Vec2 earlier;
  Vec2 later;
  double earlier_value;
  double later_value;
  double tolerance;
};

struct RayMonotonicityResult {
  bool monotone;
  std::vector<MonotonicityViolation> violations;
  std::size_t rays_checked;
};

/// Along each ray from x the grid distance must not drop below an earlier
/// value at any sample still inside D(x, M). The allowance for a pair of
/// samples is 3h max(1/d) over the two.
RayMonotonicityResult ray_monotonicity_check(const DomainField& domain, const GridSpec& grid,
                                             Vec2 x, double M, std::size_t ray_count,
                                             std::size_t samples_per_ray);

struct CoverageResult {
  bool covered;
  double M_s;
  std::size_t nodes_checked;
  std::size_t uncovered_nodes;
  /// Smallest radius whose grid ball already covers every node within s.
  double empirical_M;
};

/// Chooses M(s) above the coverage bound over sampled boundary points and
/// checks every grid node lies within s of the grid ball D(x, M(s)).
CoverageResult hull_coverage_check(const DomainField& domain, const GridSpec& grid, Vec2 x,
                                   const PhiFunction& phi, double delta, double r0, double s);

}  // namespace qhball
