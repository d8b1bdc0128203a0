#include "dunk/robin_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace dunk {

namespace {

struct Stats {
  double inf = std::numeric_limits<double>::infinity();
  double sup = 0.0;
  double integral = 0.0;
  double length = 0.0;
};

void accumulate(Stats& s, const Mesh& m, const std::vector<double>& values) {
  if (values.size() != m.boundary.size())
    throw std::invalid_argument("Robin field needs one value per boundary edge");
  for (std::size_t e = 0; e < values.size(); ++e) {
    const auto& be = m.boundary[e];
    if (be.tag != EdgeTag::Robin) continue;
    if (values[e] < 0.0) throw std::invalid_argument("Robin coefficient must be nonnegative");
    const double len = norm(m.vertices[be.b] - m.vertices[be.a]);
    s.inf = std::min(s.inf, values[e]);
    s.sup = std::max(s.sup, values[e]);
    s.integral += len * values[e];
    s.length += len;
  }
}

RobinField finish(const Stats& s, std::vector<double> values) {
  RobinField f;
  f.values = std::move(values);
  f.B_inf = s.inf;
  f.B_sup = s.sup;
  f.B_bar = s.integral / s.length;
  f.r = s.sup > 0.0 ? (s.sup - s.inf) / s.sup : 0.0;
  f.r_prime = f.B_bar > 0.0 ? (f.B_bar - s.inf) / f.B_bar : 0.0;
  f.eta.resize(f.values.size());
  for (std::size_t e = 0; e < f.values.size(); ++e) f.eta[e] = f.B_bar > 0.0 ? f.values[e] / f.B_bar : 0.0;
  return f;
}

}  // namespace

RobinField make_robin_field(const Mesh& m, std::vector<double> values) {
  Stats s;
  accumulate(s, m, values);
  return finish(s, std::move(values));
}

RobinField make_robin_field(const Mesh& m, const RobinSchedule& sched) {
  if (sched.edge_values.empty()) throw std::invalid_argument("empty Robin schedule");
  Stats s;
  for (const auto& v : sched.edge_values) accumulate(s, m, v);
  // B_bar is only meaningful for a single phase; report the first one.
  Stats first;
  accumulate(first, m, sched.edge_values.front());
  RobinField f = finish(s, sched.edge_values.front());
  f.B_bar = first.integral / first.length;
  f.r_prime = f.B_bar > 0.0 ? (f.B_bar - f.B_inf) / f.B_bar : 0.0;
  return f;
}

Envelope envelope(const LumpedCoefficients& c_inf, double B_sup, const std::vector<double>& t) {
  if (B_sup < c_inf.B) throw std::invalid_argument("B_sup must not be below B_inf");
  Envelope e;
  e.degenerate = c_inf.B <= 0.0;
  const double E = first_order_error_estimates(c_inf).e_asymp;
  e.t = t;
  for (double tk : t) {
    const double lb = std::exp(-B_sup * c_inf.gamma * tk);
    const double ub = std::exp(-c_inf.B * c_inf.gamma * tk) + E;
    e.u_lb.push_back(lb);
    e.u_ub.push_back(ub);
    e.u_mid.push_back(0.5 * (lb + ub));
  }
  return e;
}

double gap_g(double r) {
  if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("r must lie in (0, 1)");
  return std::pow(1.0 - r, (1.0 - r) / r) - std::pow(1.0 - r, 1.0 / r);
}

double gap_G(double r, double e_asymp_at_binf) { return 0.5 * (gap_g(r) + e_asymp_at_binf); }

std::vector<double> one_sided_lb(double B_bar, double gamma, const std::vector<double>& t) {
  std::vector<double> u;
  u.reserve(t.size());
  for (double tk : t) u.push_back(std::exp(-B_bar * gamma * tk));
  return u;
}

std::vector<double> one_sided_lb(const Mesh& m, const RobinSchedule& s, double gamma,
                                 const std::vector<double>& t) {
  if (s.edge_values.size() != 1)
    throw std::invalid_argument(
        "one_sided_lb needs a time-independent coefficient; use envelope() for schedules");
  return one_sided_lb(make_robin_field(m, s.edge_values.front()).B_bar, gamma, t);
}

double time_average(const std::vector<double>& start_times, const std::vector<double>& values,
                    double cutoff, double t_end) {
  if (start_times.size() != values.size() || start_times.empty())
    throw std::invalid_argument("schedule needs one value per phase");
  if (!(t_end > cutoff)) throw std::invalid_argument("averaging window is empty");
  double acc = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double a = std::max(start_times[i], cutoff);
    const double b = std::min(i + 1 < values.size() ? start_times[i + 1] : t_end, t_end);
    if (b > a) acc += (b - a) * values[i];
  }
  return acc / (t_end - cutoff);
}

void write_bounds_csv(std::ostream& os, const Envelope& e, const std::vector<double>& u_lb_prime,
                      const std::vector<double>& u_star) {
  os << "T,u_LB,u_LBprime,u_MID,u_UB,u_star_avg\n" << std::setprecision(10);
  for (std::size_t k = 0; k < e.t.size(); ++k) {
    os << e.t[k] << ',' << e.u_lb[k] << ',';
    if (k < u_lb_prime.size()) os << u_lb_prime[k];
    os << ',' << e.u_mid[k] << ',' << e.u_ub[k] << ',';
    if (k < u_star.size()) os << u_star[k];
    os << '\n';
  }
}

}  // namespace dunk
