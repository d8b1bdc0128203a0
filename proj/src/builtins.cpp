#include "dunk/builtins.hpp"

#include <algorithm>
#include <cmath>

#include "dunk/sensitivity.hpp"

namespace dunk {

namespace {

// Grid lines on [0, 1] through a, 1 - a with roughly n cells per unit length.
std::vector<double> framed_lines(double a, int n) {
  auto cells = [&](double len) { return std::max(1, static_cast<int>(std::lround(len * n))); };
  std::vector<double> x = uniform_lines(0.0, a, cells(a));
  const auto mid = uniform_lines(a, 1.0 - a, cells(1.0 - 2.0 * a));
  const auto hi = uniform_lines(1.0 - a, 1.0, cells(a));
  x.insert(x.end(), mid.begin() + 1, mid.end());
  x.insert(x.end(), hi.begin() + 1, hi.end());
  return x;
}

// Unit square with a centred inner square of the given area (region 0)
// and a border (region 1); the heavy region has 1000 times the sigma of the
// light one.
Problem concentric_squares(const std::string& name, double inner_area, bool heavy_inner, int level) {
  Problem p;
  p.name = name;
  p.domain = make_rectangle(1.0, 1.0);
  const double a = 0.5 * (1.0 - std::sqrt(inner_area));
  const int n = 8 << level;
  const auto lines = framed_lines(a, n);
  p.mesh = structured_rectangle(lines, lines, [a](Vec2 c) {
    return (c.x > a && c.x < 1.0 - a && c.y > a && c.y < 1.0 - a) ? 0 : 1;
  });
  p.material = normalize(heavy_inner ? two_material(1000.0, 1.0) : two_material(1.0, 1000.0), p.mesh);
  p.phi_uniform = 2.0 / 3.0;
  return p;
}

Problem triangle_problem(const std::string& name, DomainSpec d, int level) {
  Problem p;
  p.name = name;
  p.domain = std::move(d);
  p.mesh = refine(single_polygon_mesh(p.domain), level);
  p.material = uniform_material();
  p.material.normalized = true;
  return p;
}

}  // namespace

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {"rect",    "square", "sart1",   "sart2",
                                                 "right_triangle_w1", "equilateral", "recthi",
                                                 "evfcs",   "dvfcslf", "dvfcshf", "disk",
                                                 "gear-<n>-<q>"};
  return names;
}

Problem builtin(const std::string& name, int level) {
  if (level < 0) throw GeometryError("level must be nonnegative");
  if (name == "rect" || name == "square") {
    Problem p;
    p.name = name;
    const double lx = name == "rect" ? 0.25 : 1.0, ly = name == "rect" ? 0.99 : 1.0;
    p.domain = make_rectangle(lx, ly);
    const int n = 2 << level;
    const int ny = std::max(1, static_cast<int>(std::lround(n * ly / lx)));
    p.mesh = structured_rectangle(uniform_lines(0.0, lx, n), uniform_lines(0.0, ly, ny));
    p.material = uniform_material();
    p.material.normalized = true;
    p.phi_uniform = 2.0 / 3.0;
    return p;
  }
  if (name == "sart1" || name == "sart2") {
    Problem p = triangle_problem(name, make_right_triangle(name == "sart1" ? 0.25 : 1.0 / 16.0), level);
    p.phi_uniform = triangle_phi_exact(name == "sart1" ? 0.25 : 1.0 / 16.0);
    return p;
  }
  if (name == "right_triangle_w1") {
    Problem p = triangle_problem(name, make_right_triangle(1.0), level);
    p.phi_uniform = 4.0 / 3.0;
    return p;
  }
  if (name == "equilateral") {
    Problem p = triangle_problem(name, make_equilateral_triangle(1.0), level);
    p.phi_uniform = 1.0;
    return p;
  }
  if (name == "recthi") {
    Problem p;
    p.name = name;
    p.domain = make_rectangle(0.25, 1.0);
    const int n = 2 << level;
    p.mesh = structured_rectangle(uniform_lines(0.0, 0.25, n), uniform_lines(0.0, 1.0, 4 * n),
                                  [](Vec2 c) { return c.y > 0.5 ? 0 : 1; });
    p.material = normalize(two_material(1000.0, 1.0), p.mesh);
    p.phi_uniform = 2.0 / 3.0;
    return p;
  }
  if (name == "evfcs") return concentric_squares(name, 0.5, true, level);
  if (name == "dvfcslf") return concentric_squares(name, 20.0 / 21.0, true, level);
  // Thin heavy film around a light core.
  if (name == "dvfcshf") return concentric_squares(name, 20.0 / 21.0, false, level);
  if (name == "disk") {
    Problem p;
    p.name = name;
    p.domain = make_ngon(256, 1.0);
    Mesh m;
    m.vertices.push_back({0.0, 0.0});
    const int n = static_cast<int>(p.domain.vertices.size());
    for (const auto& v : p.domain.vertices) m.vertices.push_back(v);
    for (int i = 0; i < n; ++i) {
      m.triangles.push_back({0, 1 + i, 1 + (i + 1) % n});
      m.region.push_back(0);
      m.boundary.push_back({1 + i, 1 + (i + 1) % n, EdgeTag::Robin, i});
    }
    p.mesh = refine(m, level);
    p.material = uniform_material();
    p.material.normalized = true;
    p.phi_uniform = 0.5;
    return p;
  }
  if (name.rfind("gear-", 0) == 0) {
    const auto dash = name.find('-', 5);
    if (dash == std::string::npos) throw GeometryError("gear builtin is gear-<n>-<q>");
    const int n = std::stoi(name.substr(5, dash - 5));
    const double q = std::stod(name.substr(dash + 1));
    Problem p;
    p.name = name;
    p.domain = gear_halftooth(n, q);
    p.mesh = refine(coarse_mesh(p.domain), level);
    p.material = uniform_material();
    p.material.normalized = true;
    return p;
  }
  throw GeometryError("unknown builtin '" + name + "'");
}

}  // namespace dunk
