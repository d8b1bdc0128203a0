#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "dunk/lumped.hpp"
#include "dunk/sensitivity.hpp"

using namespace dunk;

namespace {

LumpedCoefficients sart1(double B) {
  const auto e = triangle_functionals_exact(0.25);
  return make_coefficients(e.gamma, e.phi, e.chi, e.upsilon, B);
}

}  // namespace

TEST_CASE("lumped models") {
  const auto c = make_coefficients(2.0, 1.0, 0.1, 0.01, 1.0);
  CHECK(c.bi_prime == doctest::Approx(0.5));
  const auto m0 = lumped_models(c, 0.0);
  CHECK(m0.u1 == 1.0);
  CHECK(m0.u2p == 1.0);
  CHECK(m0.udelta2p == doctest::Approx(1.0 / 3.0));
  const auto m = lumped_models(c, 1.5);
  CHECK(m.u2p >= m.u1);
  CHECK_THROWS(lumped_models(c, -1.0));
}

TEST_CASE("first-order estimates") {
  const auto c = sart1(1e-3);
  const double bip = c.phi * 1e-3 / c.gamma;
  const auto e = first_order_error_estimates(c);
  CHECK(e.e_asymp == doctest::Approx(bip / std::numbers::e));
  CHECK(e.t_max == doctest::Approx(1.0 + bip / 2.0));
  CHECK(e.e_ub == doctest::Approx(0.5 * std::sqrt(bip)));
  // Rounded reference values for this triangle.
  CHECK(e.e_asymp == doctest::Approx(1.84e-4).epsilon(5e-3));
  CHECK(e.e_ub == doctest::Approx(1.12e-2).epsilon(5e-3));
  const auto z = first_order_error_estimates(sart1(0.0));
  CHECK(z.e_asymp == 0.0);
  CHECK(z.t_max == 1.0);
}

TEST_CASE("second-order and delta estimates") {
  const auto c = sart1(1e-2);
  const double g2u = c.gamma * c.gamma * c.upsilon;
  const double mixed = std::abs(c.gamma * c.chi - g2u - c.phi * c.phi);
  const double bi = 1e-2 / c.gamma;
  CHECK(second_order_error_estimate(c) == doctest::Approx((mixed / std::numbers::e + g2u) * bi * bi));
  CHECK(second_order_error_estimate(c) == doctest::Approx(7.16e-5).epsilon(5e-3));
  CHECK(second_order_error_estimate(sart1(0.0)) == 0.0);
  const auto d = delta_error_estimate(sart1(1e-3), 0.2);
  CHECK(d.c1_bi == doctest::Approx(1.81e-3).epsilon(5e-3));
  CHECK(d.bound == doctest::Approx(3.52e-3).epsilon(5e-3));
  const auto d1 = delta_error_estimate(c, 1.0);
  CHECK(d1.bound == doctest::Approx((d1.c0 + d1.c1) * bi));
  CHECK_THROWS(delta_error_estimate(c, 0.0));
  CHECK_THROWS(delta_error_estimate(c, 1.5));
}

TEST_CASE("measured errors on a synthetic series") {
  const auto c = make_coefficients(2.0, 1.0, 0.1, 0.01, 0.2);
  QoISeries q;
  for (int k = 0; k <= 20; ++k) {
    const double T = 0.1 * k;
    q.T.push_back(T);
    q.u_avg.push_back(std::exp(-T) + 0.01 * T * std::exp(-T));
    q.u_delta.push_back(0.1 * 1.1);
  }
  const auto m = measured_errors(q, c, 0.2);
  CHECK(m.e1 == doctest::Approx(0.01 / std::numbers::e).epsilon(1e-9));
  CHECK(m.edelta_rel == doctest::Approx(0.1 * 1.1 / (0.1 / 1.1) - 1.0));
  CHECK_THROWS(measured_errors(q, c, 2.0));
}

TEST_CASE("dimensional conversion") {
  const auto d = from_dimensional(10.0, 0.01, 1.0, 1e6);
  CHECK(d.B == doctest::Approx(0.1));
  CHECK(d.t_diff == doctest::Approx(100.0));
  const auto d2 = from_dimensional(10.0, 0.02, 1.0, 1e6);
  CHECK(d2.B == doctest::Approx(2.0 * d.B));
  CHECK(d2.t_diff == doctest::Approx(4.0 * d.t_diff));
  CHECK_THROWS(from_dimensional(0.0, 1.0, 1.0, 1.0));
}

TEST_CASE("sweep csv header") {
  std::ostringstream os;
  write_sweep_csv(os, {});
  CHECK(os.str() == "B,bi,bi_prime,E1,E1_asymp,E1_ratio,E1_UB,E2P,E2P_asymp,EDelta_rel,EDelta_bound\n");
}
