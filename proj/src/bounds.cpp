#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <unordered_map>

#include "qhball/error.hpp"
#include "qhball/numeric_domain.hpp"

namespace qhball {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be positive");
  }
}

void require_bounded(const DomainField& domain) {
  if (!domain.bounded) {
    throw Error(ErrorCode::InvalidArgument, "domain '" + domain.name + "' is not bounded");
  }
}

// Bucket grid over points for radius queries.
class PointBuckets {
 public:
  PointBuckets(double cell) : cell_(cell) {}

  void add(Vec2 p, double value) { buckets_[key(cell_of(p.x), cell_of(p.y))].push_back({p, value}); }

  // Minimum value among points strictly within `r` of p (r <= cell).
  double min_within(Vec2 p, double r) const {
    double best = kInf;
    const long long ci = cell_of(p.x);
    const long long cj = cell_of(p.y);
    for (long long j = cj - 1; j <= cj + 1; ++j) {
      for (long long i = ci - 1; i <= ci + 1; ++i) {
        auto it = buckets_.find(key(i, j));
        if (it == buckets_.end()) continue;
        for (const auto& [q, v] : it->second) {
          if (v < best && norm(q - p) < r) best = v;
        }
      }
    }
    return best;
  }

 private:
  long long cell_of(double c) const { return static_cast<long long>(std::floor(c / cell_)); }
  static long long key(long long i, long long j) { return i * 1'000'003LL + j; }

  double cell_;
  std::unordered_map<long long, std::vector<std::pair<Vec2, double>>> buckets_;
};

}  // namespace

double gp_lower_bound(Vec2 z, Vec2 y, double d_z) {
  require_positive(d_z, "d(z)");
  return std::log1p(norm(z - y) / d_z);
}

SandwichRadii ball_sandwich_radii(double M, double d_x) {
  require_positive(M, "M");
  require_positive(d_x, "d(x)");
  return {-std::expm1(-M) * d_x, std::expm1(M) * d_x};
}

double interior_ball_radius(double dist_zy, double d_z) {
  require_positive(d_z, "d(z)");
  if (!(dist_zy >= 0.0)) throw Error(ErrorCode::InvalidArgument, "|z - y| must be nonnegative");
  return dist_zy * d_z / (d_z + dist_zy);
}

PhiFunction PhiFunction::identity() {
  return {"identity", [](double t) { return t; }, [](double m) { return m; }};
}

PhiFunction PhiFunction::linear(double c) {
  require_positive(c, "phi scale");
  return {"linear", [c](double t) { return c * t; }, [c](double m) { return m / c; }};
}

PhiFunction PhiFunction::logarithmic(double c) {
  require_positive(c, "phi scale");
  return {"logarithmic", [c](double t) { return c * std::log1p(t); },
          [c](double m) { return std::expm1(m / c); }};
}

bool phi_uniform_membership(const PhiFunction& phi, double M, Vec2 x0, Vec2 x, double d_x0,
                            double d_x) {
  require_positive(M, "M");
  require_positive(d_x0, "d(x0)");
  require_positive(d_x, "d(x)");
  return std::min(d_x0, d_x) > norm(x - x0) / phi.inverse(M);
}

double coverage_radius_bound(const PhiFunction& phi, double dist_x0z, double r1, double d_x0,
                             double delta) {
  require_positive(r1, "r1");
  require_positive(d_x0, "d(x0)");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "delta must lie in (0, 1)");
  }
  const double r2 = std::min(r1, d_x0 / 2.0);
  return phi.evaluate((dist_x0z + r2) / (delta * r2));
}

std::vector<Vec2> sample_boundary(const DomainField& domain, std::size_t raster) {
  if (raster < 2) throw Error(ErrorCode::InvalidArgument, "raster must be at least 2");
  const Box& b = domain.bbox;
  const double mx = 0.02 * (b.xmax - b.xmin);
  const double my = 0.02 * (b.ymax - b.ymin);
  const Box box{b.xmin - mx, b.ymin - my, b.xmax + mx, b.ymax + my};
  const std::size_t n = raster + 1;
  auto at = [&](std::size_t i, std::size_t j) {
    return Vec2{box.xmin + (box.xmax - box.xmin) * static_cast<double>(i) / static_cast<double>(raster),
                box.ymin + (box.ymax - box.ymin) * static_cast<double>(j) / static_cast<double>(raster)};
  };
  std::vector<std::uint8_t> in(n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) in[j * n + i] = domain.inside(at(i, j)) ? 1 : 0;

  auto refine = [&](Vec2 a, Vec2 c, bool a_inside) {
    for (int it = 0; it < 60; ++it) {
      const Vec2 mid = (a + c) * 0.5;
      if (domain.inside(mid) == a_inside) a = mid; else c = mid;
    }
    return (a + c) * 0.5;
  };

  std::vector<Vec2> out;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const bool here = in[j * n + i];
      if (i + 1 < n && here != static_cast<bool>(in[j * n + i + 1]))
        out.push_back(refine(at(i, j), at(i + 1, j), here));
      if (j + 1 < n && here != static_cast<bool>(in[(j + 1) * n + i]))
        out.push_back(refine(at(i, j), at(i, j + 1), here));
    }
  }
  return out;
}

DeltaR0Result delta_r0_check(const DomainField& domain, double delta, double r0,
                             std::size_t boundary_samples, std::size_t radial_samples) {
  require_bounded(domain);
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "delta must lie in (0, 1)");
  }
  require_positive(r0, "r0");
  if (radial_samples == 0) throw Error(ErrorCode::InvalidArgument, "radial_samples must be positive");

  const auto boundary = sample_boundary(domain, std::max<std::size_t>(boundary_samples, 2));
  if (boundary.empty()) {
    throw Error(ErrorCode::InvalidArgument, "boundary sampling produced no points");
  }

  constexpr int kAngles = 64;
  constexpr int kDepths = 16;
  DeltaR0Result result{true, {}, boundary.size()};
  for (Vec2 z : boundary) {
    for (std::size_t k = 1; k <= radial_samples; ++k) {
      const double r = r0 * static_cast<double>(k) / static_cast<double>(radial_samples);
      bool found = false;
      for (int a = 0; a < kAngles && !found; ++a) {
        const double angle = 2.0 * std::numbers::pi * a / kAngles;
        const Vec2 dir{std::cos(angle), std::sin(angle)};
        for (int q = 1; q <= kDepths && !found; ++q) {
          const double rho = q == kDepths ? 0.999 : static_cast<double>(q) / kDepths;
          const Vec2 p = z + dir * (rho * r);
          found = domain.inside(p) && domain.boundary_distance(p) > delta * r;
        }
      }
      if (!found) {
        result.holds = false;
        result.failures.push_back({z, r});
        break;
      }
    }
  }
  return result;
}

RayMonotonicityResult ray_monotonicity_check(const DomainField& domain, const GridSpec& grid,
                                             Vec2 x, double M, std::size_t ray_count,
                                             std::size_t samples_per_ray) {
  require_positive(M, "M");
  if (ray_count == 0 || samples_per_ray < 2) {
    throw Error(ErrorCode::InvalidArgument, "need at least one ray and two samples per ray");
  }
  const DistanceField field = grid_distance_field(domain, grid, x);
  const Box box = grid.bbox.value_or(domain.bbox);
  const double h = grid.spacing;
  const double reach = std::min(ball_sandwich_radii(M, domain.boundary_distance(x)).outer * 1.05,
                                box.diameter());

  RayMonotonicityResult result{true, {}, ray_count};
  struct Sample {
    Vec2 p;
    double value;
    double inv_d;
  };
  std::vector<Sample> seen;
  for (std::size_t k = 0; k < ray_count; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(ray_count);
    const Vec2 dir{std::cos(angle), std::sin(angle)};
    seen.clear();
    std::optional<MonotonicityViolation> worst;
    double worst_margin = 0.0;
    for (std::size_t j = 1; j <= samples_per_ray; ++j) {
      const Vec2 p = x + dir * (reach * static_cast<double>(j) / static_cast<double>(samples_per_ray));
      if (!box.contains(p) || !domain.inside(p)) break;
      const auto v = field.sample(p);
      if (!v) break;
      const double inv_d = 1.0 / domain.boundary_distance(p);
      if (*v < M) {
        for (const Sample& e : seen) {
          const double tol = 3.0 * h * std::max(e.inv_d, inv_d);
          const double margin = e.value - *v - tol;
          if (margin > worst_margin) {
            worst_margin = margin;
            worst = MonotonicityViolation{angle, e.p, p, e.value, *v, tol};
          }
        }
      }
      seen.push_back({p, *v, inv_d});
    }
    if (worst) {
      result.monotone = false;
      result.violations.push_back(*worst);
    }
  }
  return result;
}

CoverageResult hull_coverage_check(const DomainField& domain, const GridSpec& grid, Vec2 x,
                                   const PhiFunction& phi, double delta, double r0, double s) {
  require_bounded(domain);
  if (!(s > 0.0 && s < r0)) throw Error(ErrorCode::InvalidArgument, "s must lie in (0, r0)");
  const double d_x = domain.boundary_distance(x);
  const auto boundary = sample_boundary(domain, 200);
  if (boundary.empty()) {
    throw Error(ErrorCode::InvalidArgument, "boundary sampling produced no points");
  }
  double bound = 0.0;
  for (Vec2 z : boundary) {
    bound = std::max(bound, coverage_radius_bound(phi, norm(x - z), s, d_x, delta));
  }
  CoverageResult result{};
  result.M_s = bound * (1.0 + 1e-9) + 1e-9;

  const DistanceField field = grid_distance_field(domain, grid, x);
  PointBuckets buckets(s);
  field.for_each_node([&](Vec2 p, double value, double) {
    if (std::isfinite(value)) buckets.add(p, value);
  });
  double empirical = 0.0;
  field.for_each_node([&](Vec2 p, double, double) {
    ++result.nodes_checked;
    const double needed = buckets.min_within(p, s);
    empirical = std::max(empirical, needed);
    if (!(needed < result.M_s)) ++result.uncovered_nodes;
  });
  result.empirical_M = empirical;
  result.covered = result.uncovered_nodes == 0;
  return result;
}

}  // namespace qhball
