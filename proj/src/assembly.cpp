#include "dunk/assembly.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace dunk {

namespace {

struct QuadPoint {
  double l0, l1, l2, w;
};

// Symmetric 6-point rule, exact for degree 4; weights sum to one.
const std::array<QuadPoint, 6>& triangle_rule() {
  static const std::array<QuadPoint, 6> rule = [] {
    const double s = std::sqrt(38.0 - 44.0 * std::sqrt(0.4));
    const double t = std::sqrt(213125.0 - 53320.0 * std::sqrt(10.0));
    const double a1 = (8.0 - std::sqrt(10.0) + s) / 18.0, w1 = (620.0 + t) / 3720.0;
    const double a2 = (8.0 - std::sqrt(10.0) - s) / 18.0, w2 = (620.0 - t) / 3720.0;
    return std::array<QuadPoint, 6>{{{a1, a1, 1 - 2 * a1, w1},
                                     {a1, 1 - 2 * a1, a1, w1},
                                     {1 - 2 * a1, a1, a1, w1},
                                     {a2, a2, 1 - 2 * a2, w2},
                                     {a2, 1 - 2 * a2, a2, w2},
                                     {1 - 2 * a2, a2, a2, w2}}};
  }();
  return rule;
}

// 3-point Gauss rule on [0, 1].
const std::array<std::pair<double, double>, 3>& edge_rule() {
  static const std::array<std::pair<double, double>, 3> rule = [] {
    const double g = 0.5 * std::sqrt(3.0 / 5.0);
    return std::array<std::pair<double, double>, 3>{
        {{0.5 - g, 5.0 / 18.0}, {0.5, 8.0 / 18.0}, {0.5 + g, 5.0 / 18.0}}};
  }();
  return rule;
}

std::array<double, 6> p2_values(double l0, double l1, double l2) {
  return {l0 * (2 * l0 - 1), l1 * (2 * l1 - 1), l2 * (2 * l2 - 1),
          4 * l0 * l1,       4 * l1 * l2,       4 * l2 * l0};
}

std::array<Vec2, 6> p2_gradients(double l0, double l1, double l2, const std::array<Vec2, 3>& gl) {
  return {(4 * l0 - 1) * gl[0],
          (4 * l1 - 1) * gl[1],
          (4 * l2 - 1) * gl[2],
          4.0 * (l1 * gl[0] + l0 * gl[1]),
          4.0 * (l2 * gl[1] + l1 * gl[2]),
          4.0 * (l0 * gl[2] + l2 * gl[0])};
}

double lookup(const std::map<int, double>& values, int region, const char* what) {
  auto it = values.find(region);
  if (it == values.end())
    throw GeometryError(std::string("no ") + what + " value for region " + std::to_string(region));
  return it->second;
}

}  // namespace

MaterialField uniform_material() {
  MaterialField mat;
  mat.sigma[0] = 1.0;
  mat.kappa[0] = 1.0;
  return mat;
}

MaterialField uniform_material(const Mesh& m) {
  MaterialField mat;
  for (int r : m.region) {
    mat.sigma[r] = 1.0;
    mat.kappa[r] = 1.0;
  }
  mat.normalized = true;
  return mat;
}

MaterialField two_material(double sigma0, double sigma1, double kappa0, double kappa1) {
  MaterialField mat;
  mat.sigma = {{0, sigma0}, {1, sigma1}};
  mat.kappa = {{0, kappa0}, {1, kappa1}};
  return mat;
}

std::map<int, double> region_volumes(const Mesh& m) {
  std::map<int, double> vol;
  for (std::size_t t = 0; t < m.triangles.size(); ++t) vol[m.region[t]] += triangle_area(m, static_cast<int>(t));
  return vol;
}

MaterialField normalize(const MaterialField& mat, const Mesh& m) {
  const auto vol = region_volumes(m);
  double total = 0.0, weighted = 0.0;
  double kmin = std::numeric_limits<double>::infinity();
  for (const auto& [r, v] : vol) {
    const double s = lookup(mat.sigma, r, "sigma");
    const double k = lookup(mat.kappa, r, "kappa");
    if (!(s > 0.0) || !(k > 0.0)) throw GeometryError("sigma and kappa must be positive");
    total += v;
    weighted += v * s;
    kmin = std::min(kmin, k);
  }
  MaterialField out;
  for (const auto& [r, v] : vol) {
    out.sigma[r] = mat.sigma.at(r) * total / weighted;
    out.kappa[r] = mat.kappa.at(r) / kmin;
  }
  out.normalized = true;
  return out;
}

double sigma_variance(const MaterialField& mat, const Mesh& m) {
  const auto vol = region_volumes(m);
  double total = 0.0, acc = 0.0;
  for (const auto& [r, v] : vol) {
    const double s = lookup(mat.sigma, r, "sigma");
    total += v;
    acc += v * (s - 1.0) * (s - 1.0);
  }
  return acc / total;
}

Forms assemble(const Mesh& m, const P2Space& s, const MaterialField& mat) {
  using T = Eigen::Triplet<double>;
  std::vector<T> tm, ta;
  tm.reserve(36 * m.triangles.size());
  ta.reserve(36 * m.triangles.size());
  const auto& rule = triangle_rule();
  for (std::size_t t = 0; t < m.triangles.size(); ++t) {
    const auto& tri = m.triangles[t];
    const Vec2 p0 = m.vertices[tri[0]], p1 = m.vertices[tri[1]], p2 = m.vertices[tri[2]];
    const double area2 = cross(p1 - p0, p2 - p0);
    const double area = 0.5 * area2;
    const std::array<Vec2, 3> gl = {(1.0 / area2) * Vec2{p1.y - p2.y, p2.x - p1.x},
                                    (1.0 / area2) * Vec2{p2.y - p0.y, p0.x - p2.x},
                                    (1.0 / area2) * Vec2{p0.y - p1.y, p1.x - p0.x}};
    const double sig = lookup(mat.sigma, m.region[t], "sigma");
    const double kap = lookup(mat.kappa, m.region[t], "kappa");
    double me[6][6] = {}, ae[6][6] = {};
    for (const auto& q : rule) {
      const auto phi = p2_values(q.l0, q.l1, q.l2);
      const auto gphi = p2_gradients(q.l0, q.l1, q.l2, gl);
      const double w = q.w * area;
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
          me[i][j] += w * sig * phi[i] * phi[j];
          ae[i][j] += w * kap * dot(gphi[i], gphi[j]);
        }
    }
    const auto& dofs = s.cell_dofs[t];
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) {
        tm.emplace_back(dofs[i], dofs[j], me[i][j]);
        ta.emplace_back(dofs[i], dofs[j], ae[i][j]);
      }
  }
  Forms f;
  f.M.resize(s.ndof, s.ndof);
  f.A0.resize(s.ndof, s.ndof);
  f.M.setFromTriplets(tm.begin(), tm.end());
  f.A0.setFromTriplets(ta.begin(), ta.end());
  f.A1 = assemble_boundary(m, s);
  const Vec one = Vec::Ones(s.ndof);
  f.m1 = f.M * one;
  f.b1 = f.A1 * one;
  f.volume = mesh_area(m);
  f.boundary = boundary_length(m, EdgeTag::Robin);
  f.gamma = f.boundary / f.volume;
  return f;
}

SpMat assemble_boundary(const Mesh& m, const P2Space& s, const std::vector<double>& weights) {
  if (!weights.empty() && weights.size() != m.boundary.size())
    throw GeometryError("boundary weight count does not match boundary edge count");
  using T = Eigen::Triplet<double>;
  std::vector<T> tb;
  tb.reserve(9 * m.boundary.size());
  for (std::size_t e = 0; e < m.boundary.size(); ++e) {
    const auto& be = m.boundary[e];
    if (be.tag != EdgeTag::Robin) continue;
    const double w = weights.empty() ? 1.0 : weights[e];
    const double len = norm(m.vertices[be.b] - m.vertices[be.a]);
    double ke[3][3] = {};
    for (const auto& [x, wq] : edge_rule()) {
      const double phi[3] = {(1 - x) * (1 - 2 * x), x * (2 * x - 1), 4 * x * (1 - x)};
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) ke[i][j] += wq * len * w * phi[i] * phi[j];
    }
    const auto& dofs = s.boundary_dofs[e];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) tb.emplace_back(dofs[i], dofs[j], ke[i][j]);
  }
  SpMat a(s.ndof, s.ndof);
  a.setFromTriplets(tb.begin(), tb.end());
  return a;
}

Functionals functionals(const Forms& f) {
  return {f.m1, f.b1, f.volume, f.boundary, f.gamma};
}

}  // namespace dunk
