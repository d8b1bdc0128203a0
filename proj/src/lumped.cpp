#include "dunk/lumped.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <string>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace dunk {

LumpedCoefficients make_coefficients(double gamma, double phi, double chi, double upsilon, double B,
                                     double T0) {
  if (!(gamma > 0.0) || !(phi > 0.0)) throw std::invalid_argument("gamma and phi must be positive");
  if (B < 0.0) throw std::invalid_argument("B must be nonnegative");
  LumpedCoefficients c;
  c.gamma = gamma;
  c.phi = phi;
  c.chi = chi;
  c.upsilon = upsilon;
  c.B = B;
  c.bi = B / gamma;
  c.bi_prime = phi * c.bi;
  c.lcond = phi / gamma;
  c.T0 = T0;
  return c;
}

LumpedCoefficients make_coefficients_normalized(double gamma, double phi, double gamma_chi,
                                                double gamma2_upsilon, double B, double T0) {
  return make_coefficients(gamma, phi, gamma_chi / gamma, gamma2_upsilon / (gamma * gamma), B, T0);
}

LumpedModels lumped_models(const LumpedCoefficients& c, double T) {
  if (T < 0.0) throw std::invalid_argument("T must be nonnegative");
  return {std::exp(-T), std::exp(-T / (1.0 + c.bi_prime)), c.bi_prime / (1.0 + c.bi_prime)};
}

FirstOrderEstimates first_order_error_estimates(const LumpedCoefficients& c) {
  if (c.bi_prime < 0.0) throw std::invalid_argument("Bi' must be nonnegative");
  return {c.bi_prime / std::numbers::e, 1.0 + 0.5 * c.bi_prime, 0.5 * std::sqrt(c.bi_prime)};
}

namespace {

double mixed_term(const LumpedCoefficients& c) {
  const double gc = c.gamma * c.chi, g2u = c.gamma * c.gamma * c.upsilon;
  return std::abs(gc - g2u - c.phi * c.phi);
}

}  // namespace

double second_order_error_estimate(const LumpedCoefficients& c) {
  const double g2u = c.gamma * c.gamma * c.upsilon;
  return (mixed_term(c) / std::numbers::e + g2u) * c.bi * c.bi;
}

DeltaEstimate delta_error_estimate(const LumpedCoefficients& c, double T0) {
  if (!(T0 > 0.0 && T0 <= 1.0)) throw std::invalid_argument("T0 must lie in (0, 1]");
  DeltaEstimate d;
  d.c0 = c.gamma * c.gamma * c.upsilon / (std::numbers::e * c.phi);
  d.c1 = mixed_term(c) / c.phi;
  d.c1_bi = d.c1 * c.bi;
  d.bound = (d.c0 / T0 + d.c1) * c.bi;
  return d;
}

MeasuredErrors measured_errors(const QoISeries& q, const LumpedCoefficients& c, double T0) {
  if (q.T.empty()) throw std::invalid_argument("empty QoI series");
  if (!(T0 < q.T.back())) throw std::invalid_argument("T0 must be below T_final");
  MeasuredErrors e;
  e.e1 = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < q.T.size(); ++k) {
    const auto l = lumped_models(c, q.T[k]);
    e.e1 = std::max(e.e1, q.u_avg[k] - l.u1);
    e.e2p = std::max(e.e2p, std::abs(q.u_avg[k] - l.u2p));
    if (q.T[k] >= T0 - 1e-12 && l.udelta2p > 0.0)
      e.edelta_rel = std::max(e.edelta_rel, std::abs(q.u_delta[k] - l.udelta2p) / l.udelta2p);
  }
  return e;
}

Dimensional from_dimensional(double h, double ell, double k_inf, double mean_rho_c) {
  if (!(h > 0.0 && ell > 0.0 && k_inf > 0.0 && mean_rho_c > 0.0))
    throw std::invalid_argument("dimensional inputs must be positive");
  return {h * ell / k_inf, ell * ell * mean_rho_c / k_inf};
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "B,bi,bi_prime,E1,E1_asymp,E1_ratio,E1_UB,E2P,E2P_asymp,EDelta_rel,EDelta_bound\n";
  auto fmt = [&](double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return std::string(buf);
  };
  for (const auto& r : rows) {
    const double ratio = r.measured.e1 > 0.0 ? r.first.e_asymp / r.measured.e1 : 0.0;
    os << fmt(r.B) << ',' << fmt(r.c.bi) << ',' << fmt(r.c.bi_prime) << ',' << fmt(r.measured.e1) << ','
       << fmt(r.first.e_asymp) << ',' << fmt(ratio) << ',' << fmt(r.first.e_ub) << ','
       << fmt(r.measured.e2p) << ',' << fmt(r.e2p_asymp) << ',' << fmt(r.measured.edelta_rel) << ','
       << fmt(r.delta.bound) << '\n';
  }
}

}  // namespace dunk
