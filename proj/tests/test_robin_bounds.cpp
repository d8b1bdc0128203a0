#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "dunk/builtins.hpp"
#include "dunk/robin_bounds.hpp"
#include "dunk/sensitivity.hpp"

using namespace dunk;

TEST_CASE("gap function") {
  // Independent evaluation through logarithms.
  for (double r : {0.01, 0.1, 0.5, 0.9}) {
    const double l = std::log1p(-r);
    CHECK(gap_g(r) == doctest::Approx(std::exp((1.0 - r) / r * l) - std::exp(l / r)).epsilon(1e-14));
  }
  CHECK(gap_g(0.5) == doctest::Approx(0.25));
  CHECK(gap_g(1e-4) == doctest::Approx(1e-4 / std::numbers::e).epsilon(1e-3));
  CHECK(gap_G(0.1, 0.02) == doctest::Approx(0.5 * (gap_g(0.1) + 0.02)));
  CHECK_THROWS(gap_g(0.0));
  CHECK_THROWS(gap_g(1.0));
  CHECK(gap_g(0.05) < gap_g(0.1));
}

TEST_CASE("robin field statistics") {
  const auto m = structured_rectangle(uniform_lines(0, 1, 2), uniform_lines(0, 1, 2));
  std::vector<double> v(m.boundary.size());
  for (std::size_t e = 0; e < v.size(); ++e) v[e] = m.boundary[e].source == 0 ? 3.0 : 1.0;
  const auto f = make_robin_field(m, v);
  CHECK(f.B_inf == 1.0);
  CHECK(f.B_sup == 3.0);
  CHECK(f.B_bar == doctest::Approx(1.5));
  CHECK(f.r == doctest::Approx(2.0 / 3.0));
  CHECK(f.r_prime == doctest::Approx(1.0 / 3.0));
  double mean = 0.0;
  for (std::size_t e = 0; e < v.size(); ++e) mean += f.eta[e] * 0.5 / 4.0;
  CHECK(mean == doctest::Approx(1.0));
  CHECK_THROWS(make_robin_field(m, std::vector<double>(3, 1.0)));
}

TEST_CASE("envelope") {
  const auto c = make_coefficients(4.0, 0.5, 0.1, 0.01, 0.1);
  const double E = first_order_error_estimates(c).e_asymp;
  const auto e = envelope(c, 0.1, {0.0, 1.0, 2.0});
  CHECK(e.u_lb[0] == 1.0);
  CHECK(e.u_ub[0] == doctest::Approx(1.0 + E));
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(e.u_ub[k] - e.u_lb[k] == doctest::Approx(E));
    CHECK(e.u_lb[k] <= e.u_mid[k]);
    CHECK(e.u_mid[k] <= e.u_ub[k]);
  }
  CHECK_THROWS(envelope(c, 0.05, {0.0}));
  CHECK(envelope(make_coefficients(4.0, 0.5, 0.1, 0.01, 0.0), 0.1, {0.0}).degenerate);
}

TEST_CASE("one-sided bound and schedules") {
  const auto lb = one_sided_lb(0.2, 5.0, {0.0, 1.0});
  CHECK(lb[1] == doctest::Approx(std::exp(-1.0)));
  const auto m = structured_rectangle(uniform_lines(0, 1, 2), uniform_lines(0, 1, 2));
  RobinSchedule s{{0.0, 1.0}, {std::vector<double>(m.boundary.size(), 1.0), std::vector<double>(m.boundary.size(), 2.0)}};
  CHECK_THROWS(one_sided_lb(m, s, 4.0, {0.0}));
  const auto f = make_robin_field(m, s);
  CHECK(f.B_inf == 1.0);
  CHECK(f.B_sup == 2.0);
  CHECK(time_average({0.0, 1.0}, {1.0, 3.0}, 0.5, 2.0) == doctest::Approx((0.5 * 1.0 + 1.0 * 3.0) / 1.5));
}

TEST_CASE("simulated nonuniform coefficient stays inside the envelope") {
  const auto p = builtin("sart1", 2);
  const auto s = p2_space(p.mesh);
  const auto f = assemble(p.mesh, s, p.material);
  const auto r = solve_sensitivity(f);
  // Two-level field with the extremes 0.0185 and 0.126.
  std::vector<double> v(p.mesh.boundary.size());
  for (std::size_t e = 0; e < v.size(); ++e) v[e] = p.mesh.boundary[e].source == 2 ? 0.126 : 0.0185;
  const auto field = make_robin_field(p.mesh, v);
  const auto q = step_heat(p.mesh, s, f, v, field.B_bar, 2.0, 800);
  const auto c = make_coefficients(r.gamma, r.phi, r.chi, r.upsilon, field.B_inf);
  const auto env = envelope(c, field.B_sup, q.t);
  const auto lbp = one_sided_lb(field.B_bar, r.gamma, q.t);
  for (std::size_t k = 0; k < q.t.size(); ++k) {
    CHECK(env.u_lb[k] <= q.u_avg[k] + 1e-12);
    CHECK(q.u_avg[k] <= env.u_ub[k]);
    CHECK(lbp[k] <= q.u_avg[k] + 1e-12);
  }
  std::ostringstream os;
  write_bounds_csv(os, env, lbp, q.u_avg);
  CHECK(os.str().rfind("T,u_LB,u_LBprime,u_MID,u_UB,u_star_avg\n", 0) == 0);
}
