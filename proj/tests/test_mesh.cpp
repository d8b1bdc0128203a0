#include <doctest.h>

#include <cmath>

#include "dunk/mesh.hpp"

using namespace dunk;

TEST_CASE("ear clipping covers the polygon") {
  const std::vector<Vec2> l = {{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}};
  const auto tris = ear_clip(l);
  CHECK(tris.size() == l.size() - 2);
  double a = 0.0;
  for (const auto& t : tris) a += 0.5 * cross(l[t[1]] - l[t[0]], l[t[2]] - l[t[0]]);
  CHECK(a == doctest::Approx(3.0));
}

TEST_CASE("red refinement quadruples cells and keeps area and boundary") {
  const auto d = make_polygon({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});
  const auto m0 = coarse_mesh(d);
  const auto m2 = refine(m0, 2);
  check_mesh(m2);
  CHECK(m2.triangles.size() == 16 * m0.triangles.size());
  CHECK(mesh_area(m2) == doctest::Approx(3.0));
  CHECK(boundary_length(m2, EdgeTag::Robin) == doctest::Approx(8.0));
  CHECK(max_edge_length(m2) == doctest::Approx(max_edge_length(m0) / 4.0));
}

TEST_CASE("P2 dof count follows Euler's formula") {
  const auto m = structured_rectangle(uniform_lines(0, 1, 3), uniform_lines(0, 1, 2));
  const auto s = p2_space(m);
  // 12 vertices, 12 triangles; E = V + T - 1 for a disk-like mesh.
  CHECK(s.n_vertices == 12);
  CHECK(s.n_edges == 12 + 12 - 1);
  CHECK(s.ndof == s.n_vertices + s.n_edges);
}

TEST_CASE("prolongation reproduces quadratics exactly") {
  const auto d = make_right_triangle(0.5);
  const auto m = refine(single_polygon_mesh(d), 1);
  const auto f = refine(m);
  const auto cs = p2_space(m), fs = p2_space(f);
  auto q = [](Vec2 p) { return 1.0 + 2.0 * p.x - p.y + 3.0 * p.x * p.y - p.y * p.y; };
  std::vector<double> u(cs.ndof);
  for (int i = 0; i < cs.ndof; ++i) u[i] = q(cs.dof_coords[i]);
  const auto v = prolongate(m, cs, f, fs, u);
  for (int i = 0; i < fs.ndof; ++i) CHECK(v[i] == doctest::Approx(q(fs.dof_coords[i])).epsilon(1e-13));
  CHECK(p2_evaluate(m, cs, u, 0, {0.1, 0.1}) == doctest::Approx(q({0.1, 0.1})));
}

TEST_CASE("structured rectangle regions and boundary sources") {
  const auto m = structured_rectangle(uniform_lines(0, 1, 4), uniform_lines(0, 1, 4),
                                      [](Vec2 c) { return c.y > 0.5 ? 0 : 1; });
  int top = 0;
  for (int r : m.region) top += r == 0;
  CHECK(top == 16);
  std::array<int, 4> per_side{};
  for (const auto& e : m.boundary) per_side.at(e.source)++;
  for (int c : per_side) CHECK(c == 4);
}

TEST_CASE("mesh json round trip") {
  const auto m = refine(single_polygon_mesh(make_rectangle(1, 2)), 1);
  const auto back = mesh_from_json(to_json(m));
  CHECK(back.triangles.size() == m.triangles.size());
  CHECK(mesh_area(back) == doctest::Approx(2.0));
}
