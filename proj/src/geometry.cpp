#include "dunk/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dunk {

using nlohmann::json;

double norm(Vec2 a) { return std::hypot(a.x, a.y); }

std::string to_string(DomainKind k) {
  switch (k) {
    case DomainKind::Interval: return "interval";
    case DomainKind::Disk: return "disk";
    case DomainKind::Sphere: return "sphere";
    case DomainKind::Polygon: return "polygon";
    case DomainKind::Tensorized: return "tensorized";
  }
  return "unknown";
}

std::string to_string(EdgeTag t) {
  return t == EdgeTag::Robin ? "robin" : "neumann";
}

EdgeTag edge_tag_from_string(const std::string& s) {
  if (s == "robin") return EdgeTag::Robin;
  if (s == "neumann") return EdgeTag::Neumann;
  throw GeometryError("unknown edge tag '" + s + "'");
}

double polygon_area(const std::vector<Vec2>& v) {
  double a = 0.0;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) a += cross(v[i], v[(i + 1) % n]);
  return 0.5 * a;
}

double polygon_perimeter(const std::vector<Vec2>& v) {
  double p = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    p += norm(v[(i + 1) % v.size()] - v[i]);
  return p;
}

namespace {

int orientation(Vec2 a, Vec2 b, Vec2 c) {
  const double o = cross(b - a, c - a);
  const double scale = norm(b - a) * norm(c - a);
  if (std::abs(o) <= 1e-14 * scale) return 0;
  return o > 0 ? 1 : -1;
}

bool on_segment(Vec2 a, Vec2 b, Vec2 p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const int o1 = orientation(a, b, c), o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a), o4 = orientation(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

void finalize_polygon(DomainSpec& d) {
  d.dim = 2;
  d.volume = polygon_area(d.vertices);
  d.boundary = 0.0;
  const std::size_t n = d.vertices.size();
  for (std::size_t i = 0; i < n; ++i)
    if (d.edge_tags[i] == EdgeTag::Robin)
      d.boundary += norm(d.vertices[(i + 1) % n] - d.vertices[i]);
  if (d.boundary <= 0.0) throw GeometryError("polygon has no Robin edge");
  d.gamma = d.boundary / d.volume;
  d.diameter = polygon_diameter(d.vertices);
  d.in_radius = in_radius(d);
}

}  // namespace

bool polygon_is_simple(const std::vector<Vec2>& v) {
  const std::size_t n = v.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (norm(v[(i + 1) % n] - v[i]) == 0.0) return false;
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]))
        return false;
    }
  }
  return true;
}

double polygon_diameter(const std::vector<Vec2>& v) {
  double d = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      d = std::max(d, norm(v[i] - v[j]));
  return d;
}

bool point_in_polygon(const std::vector<Vec2>& v, Vec2 p) {
  bool inside = false;
  const std::size_t n = v.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    if ((v[i].y > p.y) != (v[j].y > p.y)) {
      const double xc =
          v[j].x + (p.y - v[j].y) * (v[i].x - v[j].x) / (v[i].y - v[j].y);
      if (p.x < xc) inside = !inside;
    }
  }
  return inside;
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return norm(p - (a + t * ab));
}

DomainSpec make_interval(double half_length) {
  if (!(half_length > 0.0)) throw GeometryError("interval half length must be positive");
  DomainSpec d;
  d.kind = DomainKind::Interval;
  d.name = "interval";
  d.dim = 1;
  d.half_length = half_length;
  d.volume = 2.0 * half_length;
  d.boundary = 2.0;
  d.gamma = d.boundary / d.volume;
  d.diameter = 2.0 * half_length;
  d.in_radius = half_length;
  return d;
}

DomainSpec make_disk(double radius) {
  if (!(radius > 0.0)) throw GeometryError("disk radius must be positive");
  DomainSpec d;
  d.kind = DomainKind::Disk;
  d.name = "disk";
  d.dim = 2;
  d.radius = radius;
  d.volume = std::numbers::pi * radius * radius;
  d.boundary = 2.0 * std::numbers::pi * radius;
  d.gamma = 2.0 / radius;
  d.diameter = 2.0 * radius;
  d.in_radius = radius;
  return d;
}

DomainSpec make_sphere(double radius) {
  if (!(radius > 0.0)) throw GeometryError("sphere radius must be positive");
  DomainSpec d;
  d.kind = DomainKind::Sphere;
  d.name = "sphere";
  d.dim = 3;
  d.radius = radius;
  d.volume = 4.0 / 3.0 * std::numbers::pi * radius * radius * radius;
  d.boundary = 4.0 * std::numbers::pi * radius * radius;
  d.gamma = 3.0 / radius;
  d.diameter = 2.0 * radius;
  d.in_radius = radius;
  return d;
}

DomainSpec make_polygon(std::vector<Vec2> vertices, std::vector<EdgeTag> tags,
                        std::string name) {
  if (vertices.size() < 3) throw GeometryError("polygon needs at least 3 vertices");
  if (tags.empty()) tags.assign(vertices.size(), EdgeTag::Robin);
  if (tags.size() != vertices.size())
    throw GeometryError("polygon tag count does not match edge count");
  if (!polygon_is_simple(vertices))
    throw GeometryError("polygon '" + name + "' is not simple (edges intersect)");
  const double a = polygon_area(vertices);
  if (std::abs(a) <= 1e-14 * std::pow(polygon_diameter(vertices), 2))
    throw GeometryError("polygon '" + name + "' is degenerate (zero area)");
  if (a < 0.0) {
    std::reverse(vertices.begin(), vertices.end());
    // Edge i ran from v[i] to v[i+1]; after reversal it runs between the
    // mirrored indices, which shifts the tag list by one.
    std::vector<EdgeTag> t(tags.size());
    const std::size_t n = tags.size();
    for (std::size_t i = 0; i < n; ++i) t[(2 * n - 2 - i) % n] = tags[i];
    tags = t;
  }
  DomainSpec d;
  d.kind = DomainKind::Polygon;
  d.name = std::move(name);
  d.vertices = std::move(vertices);
  d.edge_tags = std::move(tags);
  finalize_polygon(d);
  return d;
}

DomainSpec make_rectangle(double lx, double ly) {
  if (!(lx > 0.0 && ly > 0.0)) throw GeometryError("rectangle sides must be positive");
  return make_polygon({{0, 0}, {lx, 0}, {lx, ly}, {0, ly}}, {}, "rectangle");
}

DomainSpec make_right_triangle(double w) {
  if (!(w > 0.0)) throw GeometryError("triangle leg must be positive");
  return make_polygon({{0, 0}, {w, 0}, {0, 1}}, {}, "right_triangle");
}

DomainSpec make_equilateral_triangle(double side) {
  if (!(side > 0.0)) throw GeometryError("triangle side must be positive");
  return make_polygon({{0, 0}, {side, 0}, {0.5 * side, 0.5 * std::sqrt(3.0) * side}},
                      {}, "equilateral_triangle");
}

DomainSpec make_ngon(int n, double radius) {
  if (n < 3 || !(radius > 0.0)) throw GeometryError("ngon needs n >= 3 and radius > 0");
  std::vector<Vec2> v(n);
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * std::numbers::pi * i / n;
    v[i] = {radius * std::cos(t), radius * std::sin(t)};
  }
  return make_polygon(std::move(v), {}, "ngon");
}

DomainSpec make_tensorized(const DomainSpec& base, double length) {
  if (base.dim != 2) throw GeometryError("tensorization needs a 2D base");
  if (!(length > 0.0)) throw GeometryError("extrusion length must be positive");
  DomainSpec d;
  d.kind = DomainKind::Tensorized;
  d.name = base.name + "_x_interval";
  d.dim = 3;
  d.base = std::make_shared<DomainSpec>(base);
  d.extrusion = length;
  d.volume = base.volume * length;
  d.boundary = base.boundary * length + 2.0 * base.volume;
  d.gamma = d.boundary / d.volume;
  d.diameter = std::hypot(base.diameter, length);
  d.in_radius = std::min(base.in_radius, 0.5 * length);
  return d;
}

DomainSpec scaled(const DomainSpec& d, double alpha) {
  if (!(alpha > 0.0)) throw GeometryError("scale factor must be positive");
  switch (d.kind) {
    case DomainKind::Interval: return make_interval(alpha * d.half_length);
    case DomainKind::Disk: return make_disk(alpha * d.radius);
    case DomainKind::Sphere: return make_sphere(alpha * d.radius);
    case DomainKind::Tensorized:
      return make_tensorized(scaled(*d.base, alpha), alpha * d.extrusion);
    case DomainKind::Polygon: {
      std::vector<Vec2> v = d.vertices;
      for (auto& p : v) p = alpha * p;
      return make_polygon(std::move(v), d.edge_tags, d.name);
    }
  }
  throw GeometryError("unknown domain kind");
}

double in_radius(const DomainSpec& p, double tol) {
  if (p.kind != DomainKind::Polygon) return p.in_radius;
  const auto& v = p.vertices;
  const std::size_t n = v.size();
  const double diam = polygon_diameter(v);
  if (tol <= 0.0) tol = 1e-6 * diam;
  auto clearance = [&](Vec2 q) {
    if (!point_in_polygon(v, q)) return -1.0;
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
      if (p.edge_tags[i] == EdgeTag::Robin)
        d = std::min(d, point_segment_distance(q, v[i], v[(i + 1) % n]));
    return d;
  };
  double xmin = v[0].x, xmax = v[0].x, ymin = v[0].y, ymax = v[0].y;
  for (const auto& q : v) {
    xmin = std::min(xmin, q.x);
    xmax = std::max(xmax, q.x);
    ymin = std::min(ymin, q.y);
    ymax = std::max(ymax, q.y);
  }
  const int grid = 80;
  std::vector<std::pair<double, Vec2>> cand;
  for (int i = 0; i <= grid; ++i)
    for (int j = 0; j <= grid; ++j) {
      const Vec2 q{xmin + (xmax - xmin) * i / grid, ymin + (ymax - ymin) * j / grid};
      const double c = clearance(q);
      if (c > 0.0) cand.emplace_back(c, q);
    }
  // Vertices and edge midpoints guard against thin polygons the grid misses.
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = v[i], b = v[(i + 1) % n], c = v[(i + 2) % n];
    const Vec2 q = (1.0 / 3.0) * (a + b + c);
    const double cl = clearance(q);
    if (cl > 0.0) cand.emplace_back(cl, q);
  }
  if (cand.empty()) throw GeometryError("in_radius: no interior sample point");
  std::sort(cand.begin(), cand.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  cand.resize(std::min<std::size_t>(cand.size(), 12));
  double best = 0.0;
  const double h0 = std::max(xmax - xmin, ymax - ymin) / grid;
  for (auto [c, q] : cand) {
    double h = h0;
    while (h > 0.25 * tol) {
      bool moved = false;
      for (int k = 0; k < 8; ++k) {
        const double a = std::numbers::pi * k / 4.0;
        const Vec2 r = q + h * Vec2{std::cos(a), std::sin(a)};
        const double cr = clearance(r);
        if (cr > c) {
          c = cr;
          q = r;
          moved = true;
        }
      }
      if (!moved) h *= 0.5;
    }
    best = std::max(best, c);
  }
  return best;
}

namespace {

std::vector<Vec2> sample_boundary(const std::vector<Vec2>& v, double spacing) {
  std::vector<Vec2> out;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = v[i], b = v[(i + 1) % n];
    const int k = std::max(1, static_cast<int>(std::ceil(norm(b - a) / spacing)));
    for (int j = 0; j < k; ++j) out.push_back(a + (static_cast<double>(j) / k) * (b - a));
  }
  return out;
}

double directed_hausdorff(const std::vector<Vec2>& samples, const std::vector<Vec2>& poly) {
  double h = 0.0;
  const std::size_t n = poly.size();
  for (const auto& s : samples) {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
      d = std::min(d, point_segment_distance(s, poly[i], poly[(i + 1) % n]));
    h = std::max(h, d);
  }
  return h;
}

}  // namespace

double hausdorff_distance(const DomainSpec& a, const DomainSpec& b, double spacing) {
  if (a.kind != DomainKind::Polygon || b.kind != DomainKind::Polygon)
    throw GeometryError("hausdorff_distance needs two polygons");
  if (spacing <= 0.0) spacing = std::max(a.diameter, b.diameter) / 2000.0;
  return std::max(directed_hausdorff(sample_boundary(a.vertices, spacing), b.vertices),
                  directed_hausdorff(sample_boundary(b.vertices, spacing), a.vertices));
}

double dist(const DomainSpec& a, const DomainSpec& b, double c1, double c2, double spacing) {
  if (c1 < 0.0 || c2 < 0.0) throw GeometryError("dist constants must be nonnegative");
  return c1 * hausdorff_distance(a, b, spacing) +
         c2 * std::abs(polygon_perimeter(a.vertices) - polygon_perimeter(b.vertices));
}

double feat2(const DomainSpec& d) { return d.in_radius * d.gamma; }

GeometryFeatures features(const DomainSpec& d, double c1, double c2) {
  return {feat2(d), c1, c2};
}

namespace {

std::vector<Vec2> halftooth_outline(int n, double q, int arc_segments) {
  const double theta = std::numbers::pi / n;
  const double delta = std::pow(theta, q);
  if (!(delta < 1.0)) throw GeometryError("gear tooth depth must be below the tip radius");
  std::vector<Vec2> v;
  v.push_back({0.0, 0.0});
  for (int k = 0; k <= arc_segments; ++k) {
    const double t = 0.5 * theta * k / arc_segments;
    v.push_back({std::cos(t), std::sin(t)});
  }
  const double rr = 1.0 - delta;
  for (int k = 0; k <= arc_segments; ++k) {
    const double t = 0.5 * theta + 0.5 * theta * k / arc_segments;
    v.push_back({rr * std::cos(t), rr * std::sin(t)});
  }
  return v;
}

void check_gear_args(int n, double q) {
  if (n % 2 != 0) throw GeometryError("gear half-tooth count n must be even");
  if (n < 8) throw GeometryError("gear needs at least 4 teeth (n >= 8)");
  if (!(q > 0.0)) throw GeometryError("gear exponent q must be positive");
}

}  // namespace

DomainSpec gear_halftooth(int n, double q, int arc_segments) {
  check_gear_args(n, q);
  auto v = halftooth_outline(n, q, arc_segments);
  std::vector<EdgeTag> tags(v.size(), EdgeTag::Robin);
  tags.front() = EdgeTag::Neumann;
  tags.back() = EdgeTag::Neumann;
  DomainSpec d = make_polygon(std::move(v), std::move(tags), "gear_halftooth");
  d.copies = 2 * n;
  return d;
}

DomainSpec gear_full(int n, double q, int arc_segments) {
  check_gear_args(n, q);
  const auto cell = halftooth_outline(n, q, arc_segments);
  const double theta = std::numbers::pi / n;
  // Boundary points of one cell excluding the origin and the last point.
  std::vector<Vec2> up(cell.begin() + 1, cell.end());
  std::vector<Vec2> v;
  for (int c = 0; c < n; ++c) {
    const double base = 2.0 * theta * c;
    for (std::size_t i = 0; i + 1 < up.size(); ++i) {
      const double r = norm(up[i]), t = std::atan2(up[i].y, up[i].x);
      v.push_back({r * std::cos(base + t), r * std::sin(base + t)});
    }
    for (std::size_t i = up.size() - 1; i >= 1; --i) {
      const double r = norm(up[i]), t = std::atan2(up[i].y, up[i].x);
      v.push_back({r * std::cos(base + 2.0 * theta - t), r * std::sin(base + 2.0 * theta - t)});
    }
  }
  return make_polygon(std::move(v), {}, "gear");
}

DomainSpec make_domain(const json& p) {
  const std::string kind = p.at("kind").get<std::string>();
  auto num = [&](const char* key) {
    const double x = p.at(key).get<double>();
    if (!(x > 0.0)) throw GeometryError(std::string("parameter '") + key + "' must be positive");
    return x;
  };
  DomainSpec d;
  if (kind == "interval") d = make_interval(num("half_length"));
  else if (kind == "disk") d = make_disk(num("radius"));
  else if (kind == "sphere") d = make_sphere(num("radius"));
  else if (kind == "rectangle") d = make_rectangle(num("lx"), num("ly"));
  else if (kind == "right_triangle") d = make_right_triangle(num("W"));
  else if (kind == "equilateral_triangle") d = make_equilateral_triangle(p.value("side", 1.0));
  else if (kind == "ngon") d = make_ngon(p.at("n").get<int>(), p.value("radius", 1.0));
  else if (kind == "gear_halftooth") d = gear_halftooth(p.at("n").get<int>(), num("q"));
  else if (kind == "gear") d = gear_full(p.at("n").get<int>(), num("q"));
  else if (kind == "tensorized") d = make_tensorized(make_domain(p.at("base")), num("length"));
  else if (kind == "polygon") {
    std::vector<Vec2> v;
    for (const auto& q : p.at("vertices")) v.push_back({q.at(0).get<double>(), q.at(1).get<double>()});
    std::vector<EdgeTag> tags(v.size(), EdgeTag::Robin);
    if (p.contains("tags"))
      for (const auto& [key, val] : p.at("tags").items()) {
        const std::size_t i = std::stoul(key);
        if (i >= tags.size()) throw GeometryError("tag index out of range");
        tags[i] = edge_tag_from_string(val.get<std::string>());
      }
    d = make_polygon(std::move(v), std::move(tags), p.value("name", std::string("polygon")));
  } else {
    throw GeometryError("unknown domain kind '" + kind + "'");
  }
  return d;
}

json to_json(const DomainSpec& d) {
  json j;
  j["kind"] = to_string(d.kind);
  j["name"] = d.name;
  j["dim"] = d.dim;
  switch (d.kind) {
    case DomainKind::Interval: j["half_length"] = d.half_length; break;
    case DomainKind::Disk:
    case DomainKind::Sphere: j["radius"] = d.radius; break;
    case DomainKind::Tensorized:
      j["base"] = to_json(*d.base);
      j["length"] = d.extrusion;
      break;
    case DomainKind::Polygon: {
      json verts = json::array();
      for (const auto& q : d.vertices) verts.push_back({q.x, q.y});
      j["vertices"] = verts;
      json tags = json::object();
      for (std::size_t i = 0; i < d.edge_tags.size(); ++i)
        if (d.edge_tags[i] != EdgeTag::Robin) tags[std::to_string(i)] = to_string(d.edge_tags[i]);
      j["tags"] = tags;
      break;
    }
  }
  j["volume"] = d.volume;
  j["boundary"] = d.boundary;
  j["gamma"] = d.gamma;
  j["diameter"] = d.diameter;
  j["in_radius"] = d.in_radius;
  if (d.copies != 1) j["copies"] = d.copies;
  j["feat2"] = feat2(d);
  return j;
}

}  // namespace dunk
