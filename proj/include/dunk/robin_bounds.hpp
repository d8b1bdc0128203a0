#pragma once

#include <iosfwd>
#include <vector>

#include "dunk/lumped.hpp"
#include "dunk/mesh.hpp"

namespace dunk {

struct RobinField {
  // One value per mesh boundary edge; Neumann edges are ignored.
  std::vector<double> values;
  double B_inf = 0.0;
  double B_sup = 0.0;
  double B_bar = 0.0;
  double r = 0.0;
  double r_prime = 0.0;
  std::vector<double> eta;
};

RobinField make_robin_field(const Mesh& m, std::vector<double> values);
// Extremes taken over every phase of a schedule.
RobinField make_robin_field(const Mesh& m, const RobinSchedule& s);

struct Envelope {
  std::vector<double> t;
  std::vector<double> u_lb;
  std::vector<double> u_ub;
  std::vector<double> u_mid;
  bool degenerate = false;
};

// c_inf holds the coefficients evaluated at B_inf; t is physical time.
Envelope envelope(const LumpedCoefficients& c_inf, double B_sup, const std::vector<double>& t);
// Exponential-difference part (1-r)^((1-r)/r) - (1-r)^(1/r).
double gap_g(double r);
double gap_G(double r, double e_asymp_at_binf);
std::vector<double> one_sided_lb(double B_bar, double gamma, const std::vector<double>& t);
std::vector<double> one_sided_lb(const Mesh& m, const RobinSchedule& s, double gamma,
                                 const std::vector<double>& t);
// Mean of a piecewise-constant schedule over [cutoff, t_end].
double time_average(const std::vector<double>& start_times, const std::vector<double>& values,
                    double cutoff, double t_end);

void write_bounds_csv(std::ostream& os, const Envelope& e, const std::vector<double>& u_lb_prime,
                      const std::vector<double>& u_star);

}  // namespace dunk
