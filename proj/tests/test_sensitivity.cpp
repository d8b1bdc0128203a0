#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dunk/builtins.hpp"
#include "dunk/sensitivity.hpp"

using namespace dunk;

namespace {

SensitivityResult fem(const DomainSpec& d, int level) {
  const auto m = refine(coarse_mesh(d), level);
  auto mat = uniform_material();
  mat.normalized = true;
  return solve_sensitivity(m, mat);
}

}  // namespace

TEST_CASE("catalog values") {
  CHECK(closed_form("interval", Functional::Phi) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(closed_form("disk", Functional::GammaChi) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(closed_form("sphere", Functional::Gamma2Upsilon) == doctest::Approx(27.0 / 175.0).epsilon(1e-14));
  CHECK(closed_form(make_disk(7.0), Functional::Phi) == doctest::Approx(0.5));
  CHECK_THROWS_AS(closed_form(make_ngon(5), Functional::Phi), GeometryError);
  CHECK_THROWS(functional_from_string("theta"));
}

TEST_CASE("interval functionals from the explicit sensitivity function") {
  // On (-l, l) with sigma = kappa = 1 the sensitivity function is
  // c (x^2 - l^2/3) with c = -1/(2 l sqrt(2 l)) up to sign.
  const double l = 0.7, L = 2 * l;
  const double c = 1.0 / (2.0 * l * std::sqrt(L));
  const double phi = c * c * 4.0 * (2.0 * l * l * l / 3.0);
  const double chi = 2.0 * std::pow(c * (l * l - l * l / 3.0), 2);
  const double ups = c * c * (2.0 * std::pow(l, 5) / 5.0 - 2.0 * l * l * 2.0 * std::pow(l, 3) / 9.0 +
                              std::pow(l, 4) / 9.0 * 2.0 * l);
  const auto e = interval_functionals(L);
  CHECK(e.phi == doctest::Approx(phi));
  CHECK(e.chi == doctest::Approx(chi));
  CHECK(e.upsilon == doctest::Approx(ups));
}

TEST_CASE("right triangle W = 1/4 matches independent symbolic values") {
  const auto e = triangle_functionals_exact(0.25);
  CHECK(e.phi == doctest::Approx(15.0 * std::sqrt(17.0) / 16.0 + 253.0 / 48.0).epsilon(1e-12));
  CHECK(e.gamma_chi() == doctest::Approx(465.1176).epsilon(1e-6));
  CHECK(e.gamma2_upsilon() == doctest::Approx(155.0392).epsilon(1e-6));
  const auto w1 = triangle_functionals_exact(1.0);
  CHECK(w1.phi == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("thin triangle asymptotics") {
  const double w = 1e-3;
  const auto e = triangle_functionals_exact(w);
  CHECK(e.phi * w * w == doctest::Approx(2.0 / 3.0).epsilon(1e-2));
  CHECK(e.gamma_chi() * std::pow(w, 4) == doctest::Approx(28.0 / 15.0).epsilon(1e-2));
}

TEST_CASE("P2 finite elements are exact for quadratic sensitivity functions") {
  const auto r = fem(make_rectangle(0.25, 0.99), 1);
  CHECK(r.phi == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(r.p == doctest::Approx(-r.gamma / std::sqrt(r.volume)).epsilon(1e-10));
  const auto t = fem(make_right_triangle(0.25), 0);
  const auto e = triangle_functionals_exact(0.25);
  CHECK(t.phi == doctest::Approx(e.phi).epsilon(1e-12));
  CHECK(t.gamma_chi() == doctest::Approx(e.gamma_chi()).epsilon(1e-12));
  CHECK(t.gamma2_upsilon() == doctest::Approx(e.gamma2_upsilon()).epsilon(1e-12));
  const auto eq = fem(make_equilateral_triangle(2.0), 0);
  CHECK(eq.phi == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(eq.gamma_chi() == doctest::Approx(9.0 / 5.0).epsilon(1e-12));
}

TEST_CASE("rectangle upsilon and tensorization") {
  const double l1 = 0.6, l2 = 1.7;
  const auto r = fem(make_rectangle(l1, l2), 1);
  CHECK(r.upsilon == doctest::Approx(l1 * l1 / 180.0 + l2 * l2 / 180.0).epsilon(1e-10));
  const auto e = rectangle_functionals(l1, l2);
  CHECK(r.chi == doctest::Approx(e.chi).epsilon(1e-10));
  CHECK(tensorize_phi(0.5) == doctest::Approx(5.0 / 6.0));
  CHECK(tensorize(rectangle_functionals(1, 2), 3).phi == doctest::Approx(1.0));
}

TEST_CASE("J(w) never exceeds phi") {
  const auto p = builtin("sart1", 2);
  const auto s = p2_space(p.mesh);
  const auto f = assemble(p.mesh, s, p.material);
  const auto r = solve_sensitivity(f);
  CHECK(max_principle_J(f, r.psi_prime0) == doctest::Approx(r.phi).epsilon(1e-10));
  std::mt19937 rng(3);
  std::normal_distribution<double> n;
  for (int k = 0; k < 20; ++k) {
    Vec w(s.ndof);
    for (int i = 0; i < s.ndof; ++i) w[i] = n(rng);
    w.array() -= f.m1.dot(w) / f.volume;
    CHECK(max_principle_J(f, w) <= r.phi);
  }
}

TEST_CASE("sigma bound and lower bounds") {
  const auto b = phi_upper_bound_sigma(2.0 / 3.0, std::numbers::pi * std::numbers::pi, 0.0, 5.0);
  CHECK(b.phi_ub == doctest::Approx(2.0 / 3.0));
  CHECK(mu_payne_weinberger_lb(1.0) == doctest::Approx(std::numbers::pi * std::numbers::pi));
  // Disk: F reduces to pi/8 * R^4 gamma^2 / |disk| = 1/2.
  CHECK(phi_lower_bound_F(make_disk(1.0)) == doctest::Approx(0.5));
}

TEST_CASE("error estimate from a refinement sequence") {
  CHECK(error_estimate_phi({1.0, 1.0, 1.0}) == 0.0);
  // Geometric convergence with ratio 4: remaining error is d2 / 3.
  const double e = error_estimate_phi({1.0 + 1.0, 1.0 + 0.25, 1.0 + 0.0625});
  CHECK(e == doctest::Approx(0.0625).epsilon(1e-12));
}
