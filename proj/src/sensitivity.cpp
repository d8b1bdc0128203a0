#include "dunk/sensitivity.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include <Eigen/SparseLU>

namespace dunk {

SensitivityResult solve_sensitivity(const Forms& f) {
  const int n = static_cast<int>(f.A0.rows());
  using T = Eigen::Triplet<double>;
  std::vector<T> trip;
  trip.reserve(f.A0.nonZeros() + 2 * n);
  for (int k = 0; k < f.A0.outerSize(); ++k)
    for (SpMat::InnerIterator it(f.A0, k); it; ++it) trip.emplace_back(it.row(), it.col(), it.value());
  for (int i = 0; i < n; ++i) {
    if (f.m1[i] == 0.0) continue;
    trip.emplace_back(i, n, f.m1[i]);
    trip.emplace_back(n, i, f.m1[i]);
  }
  SpMat K(n + 1, n + 1);
  K.setFromTriplets(trip.begin(), trip.end());
  K.makeCompressed();
  const double c = 1.0 / std::sqrt(f.volume);
  Vec rhs = Vec::Zero(n + 1);
  rhs.head(n) = -c * f.b1;
  Eigen::SparseLU<SpMat> lu;
  lu.compute(K);
  if (lu.info() != Eigen::Success)
    throw GeometryError("sensitivity: factorization of the bordered system failed (disconnected mesh?)");
  const Vec x = lu.solve(rhs);
  if (lu.info() != Eigen::Success || !x.allFinite())
    throw GeometryError("sensitivity: bordered solve failed");
  SensitivityResult r;
  r.psi_prime0 = x.head(n);
  r.p = x[n];
  r.phi = r.psi_prime0.dot(f.A0 * r.psi_prime0);
  r.chi = r.psi_prime0.dot(f.A1 * r.psi_prime0);
  r.upsilon = r.psi_prime0.dot(f.M * r.psi_prime0);
  r.gamma = f.gamma;
  r.volume = f.volume;
  r.lcond = r.phi / r.gamma;
  return r;
}

SensitivityResult solve_sensitivity(const Mesh& m, const MaterialField& mat) {
  const P2Space s = p2_space(m);
  return solve_sensitivity(assemble(m, s, mat.normalized ? mat : normalize(mat, m)));
}

nlohmann::json to_json(const SensitivityResult& r) {
  return {{"phi", r.phi},
          {"chi", r.chi},
          {"upsilon", r.upsilon},
          {"gamma", r.gamma},
          {"gamma_chi", r.gamma_chi()},
          {"gamma2_upsilon", r.gamma2_upsilon()},
          {"e_phi", r.e_phi},
          {"lcond", r.lcond}};
}

double max_principle_J(const Forms& f, const Vec& w) {
  return -w.dot(f.A0 * w) - 2.0 / std::sqrt(f.volume) * f.b1.dot(w);
}

Functional functional_from_string(const std::string& s) {
  if (s == "phi") return Functional::Phi;
  if (s == "gamma_chi") return Functional::GammaChi;
  if (s == "gamma2_upsilon") return Functional::Gamma2Upsilon;
  throw GeometryError("unknown functional '" + s + "'");
}

namespace {

double pick(const ExactFunctionals& e, Functional which) {
  switch (which) {
    case Functional::Phi: return e.phi;
    case Functional::GammaChi: return e.gamma_chi();
    case Functional::Gamma2Upsilon: return e.gamma2_upsilon();
  }
  return 0.0;
}

double pick_row(std::array<double, 3> v, Functional which) { return v[static_cast<int>(which)]; }

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Bivariate quadratic c0 + c1 x + c2 y + c3 x^2 + c4 xy + c5 y^2.
using Quad = std::array<double, 6>;

double eval(const Quad& q, double x, double y) {
  return q[0] + q[1] * x + q[2] * y + q[3] * x * x + q[4] * x * y + q[5] * y * y;
}

// Integral of x^a y^b over the triangle (0,0), (W,0), (0,1).
double monomial(double w, int a, int b) {
  return std::pow(w, a + 1) * factorial(a) * factorial(b) / factorial(a + b + 2);
}

// Integral of a polynomial of degree <= 9 along a segment.
template <class F>
double segment_integral(Vec2 a, Vec2 b, F f) {
  static const double x[5] = {0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640,
                              0.9061798459386640};
  static const double w[5] = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                              0.2369268850561891, 0.2369268850561891};
  double s = 0.0;
  for (int i = 0; i < 5; ++i) {
    const double t = 0.5 * (1.0 + x[i]);
    const Vec2 p = a + t * (b - a);
    s += 0.5 * w[i] * f(p.x, p.y);
  }
  return s * norm(b - a);
}

}  // namespace

ExactFunctionals triangle_functionals_exact(double w) {
  if (!(w > 0.0)) throw GeometryError("triangle leg must be positive");
  const double b1 = std::sqrt(2.0 / w);
  const double h = std::sqrt(1.0 + w * w);
  const double b2 = -std::sqrt(1.0 / (2.0 * w)) * (1.0 + w + h) / w;
  Quad q = {0.0, b1, b1, b2, 0.0, b2};
  const double area = 0.5 * w;
  // Zero mean fixes the constant.
  const double mean = (q[1] * monomial(w, 1, 0) + q[2] * monomial(w, 0, 1) + q[3] * monomial(w, 2, 0) +
                       q[5] * monomial(w, 0, 2)) /
                      area;
  q[0] = -mean;
  ExactFunctionals e;
  // grad = (b1 + 2 b2 x, b1 + 2 b2 y).
  auto sq_int = [&](double c0, double cx, int axis) {
    // Integral of (c0 + cx * s)^2 with s = x or y.
    const int ax = axis == 0 ? 1 : 0, ay = axis == 0 ? 0 : 1;
    return c0 * c0 * monomial(w, 0, 0) + 2 * c0 * cx * monomial(w, ax, ay) +
           cx * cx * monomial(w, 2 * ax, 2 * ay);
  };
  e.phi = sq_int(q[1], 2 * q[3], 0) + sq_int(q[2], 2 * q[5], 1);
  // psi^2 is quartic; expand via products of monomials.
  const int pw[6][2] = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
  double ups = 0.0;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      ups += q[i] * q[j] * monomial(w, pw[i][0] + pw[j][0], pw[i][1] + pw[j][1]);
  e.upsilon = ups;
  auto f2 = [&](double x, double y) { return std::pow(eval(q, x, y), 2); };
  const Vec2 v0{0, 0}, v1{w, 0}, v2{0, 1};
  e.chi = segment_integral(v0, v1, f2) + segment_integral(v1, v2, f2) + segment_integral(v2, v0, f2);
  e.gamma = (1.0 + w + h) / area;
  return e;
}

double triangle_phi_exact(double w) { return triangle_functionals_exact(w).phi; }

ExactFunctionals interval_functionals(double length) {
  if (!(length > 0.0)) throw GeometryError("interval length must be positive");
  ExactFunctionals e;
  e.gamma = 2.0 / length;
  e.phi = 1.0 / 3.0;
  e.chi = (1.0 / 9.0) / e.gamma;
  e.upsilon = (1.0 / 45.0) / (e.gamma * e.gamma);
  return e;
}

namespace {

ExactFunctionals product(const ExactFunctionals& a, const ExactFunctionals& b) {
  ExactFunctionals e;
  e.phi = a.phi + b.phi;
  e.upsilon = a.upsilon + b.upsilon;
  e.chi = a.chi + b.chi + a.gamma * b.upsilon + b.gamma * a.upsilon;
  e.gamma = a.gamma + b.gamma;
  return e;
}

}  // namespace

ExactFunctionals rectangle_functionals(double lx, double ly) {
  return product(interval_functionals(lx), interval_functionals(ly));
}

double tensorize_phi(double phi2d) { return phi2d + 1.0 / 3.0; }

ExactFunctionals tensorize(const ExactFunctionals& base2d, double length) {
  return product(base2d, interval_functionals(length));
}

const std::vector<std::string>& catalog_rows() {
  static const std::vector<std::string> rows = {"interval",          "disk",
                                                "sphere",            "right_triangle_w1",
                                                "equilateral_triangle", "right_triangle_thin"};
  return rows;
}

double closed_form(const std::string& row, Functional which) {
  const double s2 = std::sqrt(2.0);
  if (row == "interval") return pick_row({1.0 / 3.0, 1.0 / 9.0, 1.0 / 45.0}, which);
  if (row == "disk") return pick_row({1.0 / 2.0, 1.0 / 4.0, 1.0 / 12.0}, which);
  if (row == "sphere") return pick_row({3.0 / 5.0, 9.0 / 25.0, 27.0 / 175.0}, which);
  if (row == "right_triangle_w1")
    return pick_row({4.0 / 3.0, 0.8 * (3.0 + 2.0 * s2), 4.0 / 15.0 * (3.0 + 2.0 * s2)}, which);
  if (row == "equilateral_triangle") return pick_row({1.0, 9.0 / 5.0, 3.0 / 5.0}, which);
  if (row == "right_triangle_thin") return pick_row({2.0 / 3.0, 28.0 / 15.0, 28.0 / 45.0}, which);
  throw GeometryError("'" + row + "' is not in catalog");
}

double closed_form(const DomainSpec& d, Functional which) {
  switch (d.kind) {
    case DomainKind::Interval: return closed_form("interval", which);
    case DomainKind::Disk: return closed_form("disk", which);
    case DomainKind::Sphere: return closed_form("sphere", which);
    case DomainKind::Tensorized: {
      const auto& b = *d.base;
      if (b.kind == DomainKind::Disk) {
        // Disk values rescaled by its gamma.
        ExactFunctionals disk;
        disk.gamma = b.gamma;
        disk.phi = 0.5;
        disk.chi = 0.25 / b.gamma;
        disk.upsilon = (1.0 / 12.0) / (b.gamma * b.gamma);
        return pick(tensorize(disk, d.extrusion), which);
      }
      if (b.kind == DomainKind::Polygon && b.name == "rectangle") {
        const auto& v = b.vertices;
        return pick(tensorize(rectangle_functionals(norm(v[1] - v[0]), norm(v[2] - v[1])), d.extrusion), which);
      }
      break;
    }
    case DomainKind::Polygon: {
      const auto& v = d.vertices;
      if (d.name == "rectangle") return pick(rectangle_functionals(norm(v[1] - v[0]), norm(v[2] - v[1])), which);
      if (d.name == "right_triangle") return pick(triangle_functionals_exact(norm(v[1] - v[0]) / norm(v[2] - v[0])), which);
      if (d.name == "equilateral_triangle") return closed_form("equilateral_triangle", which);
      break;
    }
  }
  throw GeometryError("domain '" + d.name + "' is not in catalog");
}

SigmaBound phi_upper_bound_sigma(double phi_uniform, double mu, double sigma_variance, double gamma) {
  if (!(mu > 0.0)) throw GeometryError("mu must be positive");
  SigmaBound b;
  b.delta = std::sqrt(gamma * gamma / mu * sigma_variance);
  b.phi_ub = std::pow(std::sqrt(phi_uniform) + b.delta, 2);
  return b;
}

double mu_payne_weinberger_lb(double diameter) {
  if (!(diameter > 0.0)) throw GeometryError("diameter must be positive");
  return std::numbers::pi * std::numbers::pi / (diameter * diameter);
}

double phi_lower_bound_F(const DomainSpec& d, double sigma_min, double kappa_max) {
  const double f2 = d.in_radius * d.gamma;
  const double pre = sigma_min * sigma_min / kappa_max;
  if (d.dim == 2) return pre * std::numbers::pi / 8.0 * d.in_radius * d.in_radius / d.body_volume() * f2 * f2;
  if (d.dim == 3)
    return pre * 4.0 * std::numbers::pi / 45.0 * std::pow(d.in_radius, 3) / d.body_volume() * f2 * f2;
  throw GeometryError("lower bound is defined in two and three dimensions");
}

double error_estimate_phi(const std::vector<double>& phis) {
  if (phis.size() < 3) throw GeometryError("error estimate needs at least three refinement levels");
  const std::size_t n = phis.size();
  const double d1 = phis[n - 3] - phis[n - 2];
  const double d2 = phis[n - 2] - phis[n - 1];
  if (d2 == 0.0) return 0.0;
  const double rho = d1 / d2;
  if (rho <= 1.1) return std::abs(d2);
  return std::abs(d2) / std::abs(rho - 1.0);
}

}  // namespace dunk
