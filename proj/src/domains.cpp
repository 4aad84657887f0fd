#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "qhball/error.hpp"
#include "qhball/numeric_domain.hpp"

namespace qhball {

namespace {

double segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return norm(p - (a + ab * t));
}

std::vector<double> parse_numbers(std::string_view text, const std::string& what) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view field = text.substr(start, comma - start);
    while (!field.empty() && std::isspace(static_cast<unsigned char>(field.front())))
      field.remove_prefix(1);
    while (!field.empty() && std::isspace(static_cast<unsigned char>(field.back())))
      field.remove_suffix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size() ||
        !std::isfinite(v)) {
      throw Error(ErrorCode::InvalidArgument, "malformed number in " + what);
    }
    out.push_back(v);
    start = comma + 1;
  }
  return out;
}

void require_count(const std::vector<double>& p, std::size_t lo, std::size_t hi,
                   const std::string& name) {
  if (p.size() < lo || p.size() > hi) {
    throw Error(ErrorCode::InvalidArgument, "wrong number of parameters for domain " + name);
  }
}

}  // namespace

DomainField DomainField::punctured(Vec2 center, Box bbox) {
  DomainField g;
  g.name = "punctured";
  g.inside = [center](Vec2 p) { return p.x != center.x || p.y != center.y; };
  g.boundary_distance = [center](Vec2 p) { return norm(p - center); };
  g.bbox = bbox;
  g.bounded = false;
  return g;
}

DomainField DomainField::half_plane(Box bbox) {
  DomainField g;
  g.name = "half-plane";
  g.inside = [](Vec2 p) { return p.y > 0.0; };
  g.boundary_distance = [](Vec2 p) { return p.y; };
  g.bbox = bbox;
  g.bounded = false;
  return g;
}

DomainField DomainField::square(Vec2 lower_left, double side) {
  if (!(side > 0.0)) throw Error(ErrorCode::InvalidArgument, "square side must be positive");
  DomainField g;
  g.name = "square";
  const Box box{lower_left.x, lower_left.y, lower_left.x + side, lower_left.y + side};
  g.inside = [box](Vec2 p) {
    return p.x > box.xmin && p.x < box.xmax && p.y > box.ymin && p.y < box.ymax;
  };
  g.boundary_distance = [box](Vec2 p) {
    return std::min({p.x - box.xmin, box.xmax - p.x, p.y - box.ymin, box.ymax - p.y});
  };
  g.bbox = box;
  return g;
}

DomainField DomainField::disk(Vec2 center, double radius) {
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "disk radius must be positive");
  DomainField g;
  g.name = "disk";
  g.inside = [center, radius](Vec2 p) { return norm(p - center) < radius; };
  g.boundary_distance = [center, radius](Vec2 p) { return radius - norm(p - center); };
  g.bbox = {center.x - radius, center.y - radius, center.x + radius, center.y + radius};
  return g;
}

DomainField DomainField::l_shape(double s) {
  if (!(s > 0.0)) throw Error(ErrorCode::InvalidArgument, "l-shape size must be positive");
  DomainField g = polygon({{0, 0}, {2 * s, 0}, {2 * s, s}, {s, s}, {s, 2 * s}, {0, 2 * s}},
                          "l-shape");
  return g;
}

DomainField DomainField::polygon(std::vector<Vec2> vertices, std::string name) {
  if (vertices.size() < 3) {
    throw Error(ErrorCode::InvalidArgument, "a polygon needs at least three vertices");
  }
  if (vertices.front() == vertices.back()) vertices.pop_back();
  Box box{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
          -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (Vec2 v : vertices) {
    box.xmin = std::min(box.xmin, v.x);
    box.ymin = std::min(box.ymin, v.y);
    box.xmax = std::max(box.xmax, v.x);
    box.ymax = std::max(box.ymax, v.y);
  }
  auto edges_distance = [vertices](Vec2 p) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0, j = vertices.size() - 1; i < vertices.size(); j = i++) {
      best = std::min(best, segment_distance(p, vertices[j], vertices[i]));
    }
    return best;
  };
  DomainField g;
  g.name = std::move(name);
  g.inside = [vertices, edges_distance](Vec2 p) {
    bool in = false;
    for (std::size_t i = 0, j = vertices.size() - 1; i < vertices.size(); j = i++) {
      const Vec2 a = vertices[i];
      const Vec2 b = vertices[j];
      if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) {
        in = !in;
      }
    }
    return in && edges_distance(p) > 0.0;
  };
  g.boundary_distance = edges_distance;
  g.bbox = box;
  return g;
}

DomainField load_polygon_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read polygon file " + path.string());
  std::vector<Vec2> vertices;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto v = parse_numbers(std::string_view(line).substr(first), path.string());
    if (v.size() != 2) {
      throw Error(ErrorCode::InvalidArgument, "polygon lines must hold one x,y pair");
    }
    vertices.push_back({v[0], v[1]});
  }
  return DomainField::polygon(std::move(vertices), path.filename().string());
}

DomainField parse_domain(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  std::vector<double> p;
  if (colon != std::string::npos) p = parse_numbers(std::string_view(spec).substr(colon + 1), spec);

  if (name == "punctured") {
    require_count(p, 0, 3, name);
    const Vec2 c = p.size() >= 2 ? Vec2{p[0], p[1]} : Vec2{0.0, 0.0};
    const double w = p.size() == 3 ? p[2] : 4.0;
    return DomainField::punctured(c, {c.x - w, c.y - w, c.x + w, c.y + w});
  }
  if (name == "half-plane") {
    require_count(p, 0, 1, name);
    const double w = p.empty() ? 4.0 : p[0];
    return DomainField::half_plane({-w, 0.0, w, 2.0 * w});
  }
  if (name == "square") {
    require_count(p, 0, 3, name);
    if (p.empty()) return DomainField::square({0.0, 0.0}, 1.0);
    require_count(p, 3, 3, name);
    return DomainField::square({p[0], p[1]}, p[2]);
  }
  if (name == "disk") {
    require_count(p, 0, 3, name);
    if (p.empty()) return DomainField::disk({0.0, 0.0}, 1.0);
    require_count(p, 3, 3, name);
    return DomainField::disk({p[0], p[1]}, p[2]);
  }
  if (name == "l-shape") {
    require_count(p, 0, 1, name);
    return DomainField::l_shape(p.empty() ? 1.0 : p[0]);
  }
  if (std::filesystem::exists(spec)) return load_polygon_csv(spec);
  throw Error(ErrorCode::InvalidArgument, "unknown domain '" + spec + "'");
}

}  // namespace qhball
