#include "dunk/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace dunk {

using nlohmann::json;

namespace {

std::pair<int, int> key(int a, int b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

bool in_triangle(Vec2 p, Vec2 a, Vec2 b, Vec2 c) {
  const double d1 = cross(b - a, p - a), d2 = cross(c - b, p - b), d3 = cross(a - c, p - c);
  return d1 >= 0.0 && d2 >= 0.0 && d3 >= 0.0;
}

void add_polygon_boundary(Mesh& m, const DomainSpec& d) {
  const int n = static_cast<int>(d.vertices.size());
  for (int i = 0; i < n; ++i) m.boundary.push_back({i, (i + 1) % n, d.edge_tags[i], i});
}

std::array<double, 3> barycentric(Vec2 p, Vec2 a, Vec2 b, Vec2 c) {
  const double det = cross(b - a, c - a);
  const double l1 = cross(p - a, c - a) / det;
  const double l2 = cross(b - a, p - a) / det;
  return {1.0 - l1 - l2, l1, l2};
}

}  // namespace

std::vector<std::array<int, 3>> ear_clip(const std::vector<Vec2>& v) {
  std::vector<int> idx(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) idx[i] = static_cast<int>(i);
  std::vector<std::array<int, 3>> tris;
  double scale = polygon_diameter(v);
  while (idx.size() > 3) {
    const std::size_t n = idx.size();
    bool clipped = false;
    // Prefer the ear with the largest minimum angle for better shapes.
    double best_quality = -1.0;
    std::size_t best = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const int ia = idx[(i + n - 1) % n], ib = idx[i], ic = idx[(i + 1) % n];
      const Vec2 a = v[ia], b = v[ib], c = v[ic];
      const double area2 = cross(b - a, c - b);
      if (area2 <= 1e-14 * scale * scale) continue;
      bool ear = true;
      for (std::size_t j = 0; j < n && ear; ++j) {
        const int k = idx[j];
        if (k == ia || k == ib || k == ic) continue;
        const Vec2 p = v[k];
        if (norm(p - a) == 0.0 || norm(p - b) == 0.0 || norm(p - c) == 0.0) continue;
        if (in_triangle(p, a, b, c)) ear = false;
      }
      if (!ear) continue;
      const double la = norm(b - c), lb = norm(c - a), lc = norm(a - b);
      const double q = area2 / (la * la + lb * lb + lc * lc);
      if (q > best_quality) {
        best_quality = q;
        best = i;
      }
      clipped = true;
    }
    if (!clipped) throw GeometryError("ear clipping failed: polygon is not simple");
    tris.push_back({idx[(best + n - 1) % n], idx[best], idx[(best + 1) % n]});
    idx.erase(idx.begin() + static_cast<long>(best));
  }
  tris.push_back({idx[0], idx[1], idx[2]});
  return tris;
}

Mesh single_polygon_mesh(const DomainSpec& d) {
  if (d.kind != DomainKind::Polygon) throw GeometryError("mesh needs a polygon");
  Mesh m;
  m.vertices = d.vertices;
  if (d.vertices.size() == 3) {
    m.triangles.push_back({0, 1, 2});
  } else if (d.vertices.size() == 4) {
    // Split along the shorter diagonal.
    const auto& v = d.vertices;
    if (norm(v[2] - v[0]) <= norm(v[3] - v[1])) {
      m.triangles = {{0, 1, 2}, {0, 2, 3}};
    } else {
      m.triangles = {{0, 1, 3}, {1, 2, 3}};
    }
  } else {
    throw GeometryError("single_polygon_mesh expects 3 or 4 vertices");
  }
  m.region.assign(m.triangles.size(), 0);
  add_polygon_boundary(m, d);
  check_mesh(m);
  return m;
}

Mesh coarse_mesh(const DomainSpec& d) {
  if (d.kind != DomainKind::Polygon) throw GeometryError("mesh needs a polygon");
  if (d.vertices.size() == 3) return single_polygon_mesh(d);
  Mesh m;
  m.vertices = d.vertices;
  m.triangles = ear_clip(d.vertices);
  m.region.assign(m.triangles.size(), 0);
  add_polygon_boundary(m, d);
  check_mesh(m);
  return m;
}

Mesh triangulate(const DomainSpec& d, double target_h) {
  if (!(target_h > 0.0)) throw GeometryError("target_h must be positive");
  Mesh m = coarse_mesh(d);
  while (max_edge_length(m) > target_h) m = refine(m);
  return m;
}

Mesh refine(const Mesh& m) {
  Mesh r;
  r.vertices = m.vertices;
  r.level = m.level + 1;
  std::map<std::pair<int, int>, int> mid;
  auto midpoint = [&](int a, int b) {
    auto [it, inserted] = mid.try_emplace(key(a, b), static_cast<int>(r.vertices.size()));
    if (inserted) r.vertices.push_back(0.5 * (m.vertices[a] + m.vertices[b]));
    return it->second;
  };
  r.triangles.reserve(4 * m.triangles.size());
  for (std::size_t t = 0; t < m.triangles.size(); ++t) {
    const auto [a, b, c] = m.triangles[t];
    const int ab = midpoint(a, b), bc = midpoint(b, c), ca = midpoint(c, a);
    r.triangles.push_back({a, ab, ca});
    r.triangles.push_back({ab, b, bc});
    r.triangles.push_back({ca, bc, c});
    r.triangles.push_back({ab, bc, ca});
    for (int k = 0; k < 4; ++k) {
      r.region.push_back(m.region[t]);
      r.parent.push_back(static_cast<int>(t));
    }
  }
  for (const auto& e : m.boundary) {
    const int c = midpoint(e.a, e.b);
    r.boundary.push_back({e.a, c, e.tag, e.source});
    r.boundary.push_back({c, e.b, e.tag, e.source});
  }
  return r;
}

Mesh refine(const Mesh& m, int times) {
  Mesh r = m;
  for (int i = 0; i < times; ++i) r = refine(r);
  return r;
}

std::vector<double> uniform_lines(double a, double b, int n) {
  std::vector<double> x(n + 1);
  for (int i = 0; i <= n; ++i) x[i] = a + (b - a) * i / n;
  x[n] = b;
  return x;
}

Mesh structured_rectangle(const std::vector<double>& xs, const std::vector<double>& ys,
                          const std::function<int(Vec2)>& region_of) {
  if (xs.size() < 2 || ys.size() < 2) throw GeometryError("grid needs at least two lines per axis");
  const int nx = static_cast<int>(xs.size()) - 1, ny = static_cast<int>(ys.size()) - 1;
  Mesh m;
  auto id = [&](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) m.vertices.push_back({xs[i], ys[j]});
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const int a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
      m.triangles.push_back({a, b, c});
      m.triangles.push_back({a, c, d});
      const Vec2 centre{0.5 * (xs[i] + xs[i + 1]), 0.5 * (ys[j] + ys[j + 1])};
      const int reg = region_of ? region_of(centre) : 0;
      m.region.push_back(reg);
      m.region.push_back(reg);
    }
  for (int i = 0; i < nx; ++i) m.boundary.push_back({id(i, 0), id(i + 1, 0), EdgeTag::Robin, 0});
  for (int j = 0; j < ny; ++j) m.boundary.push_back({id(nx, j), id(nx, j + 1), EdgeTag::Robin, 1});
  for (int i = nx; i > 0; --i) m.boundary.push_back({id(i, ny), id(i - 1, ny), EdgeTag::Robin, 2});
  for (int j = ny; j > 0; --j) m.boundary.push_back({id(0, j), id(0, j - 1), EdgeTag::Robin, 3});
  check_mesh(m);
  return m;
}

P2Space p2_space(const Mesh& m) {
  P2Space s;
  s.n_vertices = static_cast<int>(m.vertices.size());
  s.dof_coords = m.vertices;
  std::map<std::pair<int, int>, int> edge;
  auto edge_dof = [&](int a, int b) {
    auto [it, inserted] = edge.try_emplace(key(a, b), s.n_vertices + static_cast<int>(edge.size()));
    if (inserted) s.dof_coords.push_back(0.5 * (m.vertices[a] + m.vertices[b]));
    return it->second;
  };
  s.cell_dofs.reserve(m.triangles.size());
  for (const auto& [a, b, c] : m.triangles)
    s.cell_dofs.push_back({a, b, c, edge_dof(a, b), edge_dof(b, c), edge_dof(c, a)});
  for (const auto& e : m.boundary) {
    auto it = edge.find(key(e.a, e.b));
    if (it == edge.end()) throw GeometryError("boundary edge is not a mesh edge");
    s.boundary_dofs.push_back({e.a, e.b, it->second});
  }
  s.n_edges = static_cast<int>(edge.size());
  s.ndof = s.n_vertices + s.n_edges;
  return s;
}

double triangle_area(const Mesh& m, int t) {
  const auto [a, b, c] = m.triangles[t];
  return 0.5 * cross(m.vertices[b] - m.vertices[a], m.vertices[c] - m.vertices[a]);
}

double mesh_area(const Mesh& m) {
  double s = 0.0;
  for (std::size_t t = 0; t < m.triangles.size(); ++t) s += triangle_area(m, static_cast<int>(t));
  return s;
}

double boundary_length(const Mesh& m, EdgeTag tag) {
  double s = 0.0;
  for (const auto& e : m.boundary)
    if (e.tag == tag) s += norm(m.vertices[e.b] - m.vertices[e.a]);
  return s;
}

double max_edge_length(const Mesh& m) {
  double h = 0.0;
  for (const auto& [a, b, c] : m.triangles) {
    h = std::max({h, norm(m.vertices[a] - m.vertices[b]), norm(m.vertices[b] - m.vertices[c]),
                  norm(m.vertices[c] - m.vertices[a])});
  }
  return h;
}

void check_mesh(const Mesh& m) {
  std::map<std::pair<int, int>, int> count;
  for (std::size_t t = 0; t < m.triangles.size(); ++t) {
    if (!(triangle_area(m, static_cast<int>(t)) > 0.0))
      throw GeometryError("mesh triangle " + std::to_string(t) + " has nonpositive area");
    const auto [a, b, c] = m.triangles[t];
    ++count[key(a, b)];
    ++count[key(b, c)];
    ++count[key(c, a)];
  }
  std::map<std::pair<int, int>, int> bcount;
  for (const auto& e : m.boundary) ++bcount[key(e.a, e.b)];
  for (const auto& [k, c] : count) {
    const int expected = bcount.count(k) ? 1 : 2;
    if (c != expected) throw GeometryError("mesh is not conforming");
  }
  for (const auto& [k, c] : bcount)
    if (c != 1 || !count.count(k)) throw GeometryError("mesh boundary edge list is inconsistent");
}

double p2_evaluate(const Mesh& m, const P2Space& s, const std::vector<double>& u, int t, Vec2 p) {
  const auto& tri = m.triangles[t];
  const auto l = barycentric(p, m.vertices[tri[0]], m.vertices[tri[1]], m.vertices[tri[2]]);
  const std::array<double, 6> phi = {l[0] * (2 * l[0] - 1), l[1] * (2 * l[1] - 1),
                                     l[2] * (2 * l[2] - 1), 4 * l[0] * l[1],
                                     4 * l[1] * l[2],       4 * l[2] * l[0]};
  double v = 0.0;
  for (int k = 0; k < 6; ++k) v += phi[k] * u[s.cell_dofs[t][k]];
  return v;
}

std::vector<double> prolongate(const Mesh& coarse, const P2Space& cs, const Mesh& fine,
                               const P2Space& fs, const std::vector<double>& u) {
  if (static_cast<int>(u.size()) != cs.ndof || fine.parent.size() != fine.triangles.size() ||
      fine.level != coarse.level + 1)
    throw GeometryError("prolongate: meshes are not nested");
  std::vector<double> out(fs.ndof, 0.0);
  std::vector<char> done(fs.ndof, 0);
  for (std::size_t t = 0; t < fine.triangles.size(); ++t) {
    const int p = fine.parent[t];
    for (int k = 0; k < 6; ++k) {
      const int dof = fs.cell_dofs[t][k];
      if (done[dof]) continue;
      out[dof] = p2_evaluate(coarse, cs, u, p, fs.dof_coords[dof]);
      done[dof] = 1;
    }
  }
  return out;
}

json to_json(const Mesh& m) {
  json j;
  json v = json::array(), t = json::array(), b = json::array();
  for (const auto& p : m.vertices) v.push_back({p.x, p.y});
  for (std::size_t i = 0; i < m.triangles.size(); ++i)
    t.push_back({m.triangles[i][0], m.triangles[i][1], m.triangles[i][2], m.region[i]});
  for (const auto& e : m.boundary) b.push_back({e.a, e.b, to_string(e.tag)});
  j["vertices"] = v;
  j["triangles"] = t;
  j["boundary"] = b;
  j["level"] = m.level;
  return j;
}

Mesh mesh_from_json(const json& j) {
  Mesh m;
  for (const auto& p : j.at("vertices")) m.vertices.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  for (const auto& t : j.at("triangles")) {
    m.triangles.push_back({t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<int>()});
    m.region.push_back(t.size() > 3 ? t.at(3).get<int>() : 0);
  }
  for (const auto& e : j.at("boundary"))
    m.boundary.push_back({e.at(0).get<int>(), e.at(1).get<int>(),
                          edge_tag_from_string(e.at(2).get<std::string>()), -1});
  m.level = j.value("level", 0);
  check_mesh(m);
  return m;
}

}  // namespace dunk
