#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>

#include "qhball/error.hpp"
#include "qhball/numeric_domain.hpp"

namespace qhball {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

std::vector<Offset> stencil_offsets(int radius) {
  if (radius < 1 || radius > 3) {
    throw Error(ErrorCode::InvalidArgument, "stencil radius must be 1, 2 or 3");
  }
  std::vector<Offset> out;
  for (int dx = -radius; dx <= radius; ++dx) {
    for (int dy = -radius; dy <= radius; ++dy) {
      if (dx == 0 && dy == 0) continue;
      if (std::gcd(std::abs(dx), std::abs(dy)) != 1) continue;
      out.push_back({dx, dy});
    }
  }
  return out;
}

struct DistanceField::Impl {
  DomainField domain;
  Box box{};
  double h = 0.0;
  int radius = 0;
  std::int64_t nx = 0;
  std::int64_t ny = 0;
  std::vector<std::uint8_t> valid;
  std::vector<double> d;
  std::vector<double> dist;
  std::vector<std::int64_t> prev;
  std::int64_t source = -1;

  Vec2 position(std::int64_t idx) const {
    return {box.xmin + static_cast<double>(idx % nx) * h,
            box.ymin + static_cast<double>(idx / nx) * h};
  }

  std::int64_t index(std::int64_t i, std::int64_t j) const { return j * nx + i; }

  // Nearest valid node within a few cells of p, by Euclidean distance.
  std::int64_t nearest_valid(Vec2 p, int search = 3) const {
    const auto ci = static_cast<std::int64_t>(std::llround((p.x - box.xmin) / h));
    const auto cj = static_cast<std::int64_t>(std::llround((p.y - box.ymin) / h));
    std::int64_t best = -1;
    double best_d = kInf;
    for (std::int64_t j = cj - search; j <= cj + search; ++j) {
      for (std::int64_t i = ci - search; i <= ci + search; ++i) {
        if (i < 0 || j < 0 || i >= nx || j >= ny) continue;
        const std::int64_t idx = index(i, j);
        if (!valid[idx]) continue;
        const double dd = norm(position(idx) - p);
        if (dd < best_d) {
          best_d = dd;
          best = idx;
        }
      }
    }
    return best;
  }

  bool segment_inside(Vec2 a, Vec2 b, double d_a) const {
    const double len = norm(b - a);
    // The open disk B(a, d(a)) lies inside G.
    if (len < d_a) return true;
    for (double t : {0.25, 0.5, 0.75}) {
      if (!domain.inside(a + (b - a) * t)) return false;
    }
    return true;
  }

  void run(std::int64_t target) {
    const auto offsets = stencil_offsets(radius);
    dist.assign(valid.size(), kInf);
    prev.assign(valid.size(), -1);
    using Entry = std::pair<double, std::int64_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    dist[source] = 0.0;
    queue.push({0.0, source});
    while (!queue.empty()) {
      const auto [du, u] = queue.top();
      queue.pop();
      if (du > dist[u]) continue;
      if (u == target) break;
      const std::int64_t ui = u % nx;
      const std::int64_t uj = u / nx;
      const Vec2 pu = position(u);
      for (const Offset& o : offsets) {
        const std::int64_t vi = ui + o.dx;
        const std::int64_t vj = uj + o.dy;
        if (vi < 0 || vj < 0 || vi >= nx || vj >= ny) continue;
        const std::int64_t v = index(vi, vj);
        if (!valid[v]) continue;
        const double len = h * std::hypot(static_cast<double>(o.dx), static_cast<double>(o.dy));
        const double cand = du + 0.5 * len * (1.0 / d[u] + 1.0 / d[v]);
        if (cand >= dist[v]) continue;
        if (!segment_inside(pu, position(v), d[u])) continue;
        dist[v] = cand;
        prev[v] = u;
        queue.push({cand, v});
      }
    }
  }
};

DistanceField::DistanceField(const DomainField& domain, const GridSpec& grid, Vec2 source,
                             std::optional<Vec2> stop_at)
    : impl_(std::make_unique<Impl>()) {
  if (!(grid.spacing > 0.0) || !std::isfinite(grid.spacing)) {
    throw Error(ErrorCode::InvalidArgument, "grid spacing must be positive");
  }
  stencil_offsets(grid.stencil_radius);
  Impl& s = *impl_;
  s.domain = domain;
  s.box = grid.bbox.value_or(domain.bbox);
  if (!(s.box.xmax > s.box.xmin && s.box.ymax > s.box.ymin)) {
    throw Error(ErrorCode::InvalidArgument, "empty bounding box");
  }
  s.h = grid.spacing;
  s.radius = grid.stencil_radius;
  s.nx = static_cast<std::int64_t>(std::floor((s.box.xmax - s.box.xmin) / s.h + 1e-9)) + 1;
  s.ny = static_cast<std::int64_t>(std::floor((s.box.ymax - s.box.ymin) / s.h + 1e-9)) + 1;
  if (s.nx * s.ny > 50'000'000) {
    throw Error(ErrorCode::InvalidArgument, "grid too large; increase the spacing");
  }
  const auto total = static_cast<std::size_t>(s.nx * s.ny);
  s.valid.assign(total, 0);
  s.d.assign(total, 0.0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    const Vec2 p = s.position(static_cast<std::int64_t>(idx));
    if (!domain.inside(p)) continue;
    const double dp = domain.boundary_distance(p);
    if (!(dp > 0.0)) continue;
    s.valid[idx] = 1;
    s.d[idx] = dp;
  }
  s.source = s.nearest_valid(source);
  if (s.source < 0) throw Error(ErrorCode::OutsideDomain, "source has no grid node nearby");
  std::int64_t target = -1;
  if (stop_at) {
    target = s.nearest_valid(*stop_at);
    if (target < 0) throw Error(ErrorCode::OutsideDomain, "target has no grid node nearby");
  }
  s.run(target);
}

DistanceField::~DistanceField() = default;
DistanceField::DistanceField(DistanceField&&) noexcept = default;
DistanceField& DistanceField::operator=(DistanceField&&) noexcept = default;

double DistanceField::spacing() const noexcept { return impl_->h; }
int DistanceField::stencil_radius() const noexcept { return impl_->radius; }
Vec2 DistanceField::source_node() const noexcept { return impl_->position(impl_->source); }
std::size_t DistanceField::node_count() const noexcept {
  return static_cast<std::size_t>(std::count(impl_->valid.begin(), impl_->valid.end(), 1));
}

void DistanceField::for_each_node(const std::function<void(Vec2, double, double)>& visit) const {
  const Impl& s = *impl_;
  for (std::size_t idx = 0; idx < s.valid.size(); ++idx) {
    if (!s.valid[idx]) continue;
    visit(s.position(static_cast<std::int64_t>(idx)), s.dist[idx], s.d[idx]);
  }
}

std::optional<Vec2> DistanceField::snap(Vec2 p) const {
  const std::int64_t idx = impl_->nearest_valid(p);
  if (idx < 0) return std::nullopt;
  return impl_->position(idx);
}

std::optional<double> DistanceField::at_nearest(Vec2 p) const {
  const std::int64_t idx = impl_->nearest_valid(p);
  if (idx < 0 || !std::isfinite(impl_->dist[idx])) return std::nullopt;
  return impl_->dist[idx];
}

std::optional<double> DistanceField::sample(Vec2 p) const {
  const Impl& s = *impl_;
  const double fx = (p.x - s.box.xmin) / s.h;
  const double fy = (p.y - s.box.ymin) / s.h;
  const auto i0 = static_cast<std::int64_t>(std::floor(fx));
  const auto j0 = static_cast<std::int64_t>(std::floor(fy));
  if (i0 >= 0 && j0 >= 0 && i0 + 1 < s.nx && j0 + 1 < s.ny) {
    const std::int64_t c[4] = {s.index(i0, j0), s.index(i0 + 1, j0), s.index(i0, j0 + 1),
                               s.index(i0 + 1, j0 + 1)};
    bool ok = true;
    for (std::int64_t idx : c) ok = ok && s.valid[idx] && std::isfinite(s.dist[idx]);
    if (ok) {
      const double tx = fx - static_cast<double>(i0);
      const double ty = fy - static_cast<double>(j0);
      return (1 - tx) * (1 - ty) * s.dist[c[0]] + tx * (1 - ty) * s.dist[c[1]] +
             (1 - tx) * ty * s.dist[c[2]] + tx * ty * s.dist[c[3]];
    }
  }
  const std::int64_t idx = s.nearest_valid(p, 2);
  if (idx < 0 || !std::isfinite(s.dist[idx])) return std::nullopt;
  return s.dist[idx];
}

std::vector<Vec2> DistanceField::path_to(Vec2 p) const {
  const Impl& s = *impl_;
  std::vector<Vec2> out;
  std::int64_t idx = s.nearest_valid(p);
  if (idx < 0 || !std::isfinite(s.dist[idx])) return out;
  for (; idx >= 0; idx = s.prev[idx]) out.push_back(s.position(idx));
  std::reverse(out.begin(), out.end());
  return out;
}

namespace {

double checked_depth(const DomainField& domain, const Box& box, Vec2 p, const char* which) {
  if (!domain.inside(p) || !box.contains(p)) {
    throw Error(ErrorCode::OutsideDomain, std::string(which) + " point is outside the domain");
  }
  const double d = domain.boundary_distance(p);
  if (!(d > 0.0)) {
    throw Error(ErrorCode::OutsideDomain, std::string(which) + " point is on the boundary");
  }
  return d;
}

}  // namespace

GeodesicEstimate grid_qh_distance(const DomainField& domain, const GridSpec& grid, Vec2 x,
                                  Vec2 y) {
  const Box box = grid.bbox.value_or(domain.bbox);
  const double dx = checked_depth(domain, box, x, "start");
  const double dy = checked_depth(domain, box, y, "end");
  if (grid.spacing > std::min(dx, dy) / 4.0) {
    throw Error(ErrorCode::InvalidArgument,
                "grid spacing must be at most a quarter of the endpoint depth");
  }
  DistanceField field(domain, grid, x, y);
  const auto value = field.at_nearest(y);
  if (!value) {
    throw Error(ErrorCode::Disconnected, "insufficient resolution or disconnected domain");
  }
  return {*value, field.path_to(y), grid.spacing, grid.stencil_radius,
          grid.spacing * (1.0 / dx + 1.0 / dy)};
}

DistanceField grid_distance_field(const DomainField& domain, const GridSpec& grid, Vec2 x) {
  const Box box = grid.bbox.value_or(domain.bbox);
  const double dx = checked_depth(domain, box, x, "source");
  if (grid.spacing > dx / 4.0) {
    throw Error(ErrorCode::InvalidArgument,
                "grid spacing must be at most a quarter of the source depth");
  }
  return DistanceField(domain, grid, x);
}

}  // namespace qhball
