#pragma once

#include <iosfwd>
#include <vector>

#include "dunk/transient.hpp"

namespace dunk {

struct LumpedCoefficients {
  double gamma = 0.0;
  double phi = 0.0;
  double chi = 0.0;
  double upsilon = 0.0;
  double B = 0.0;
  double bi = 0.0;
  double bi_prime = 0.0;
  double lcond = 0.0;
  double T0 = 0.2;
};

LumpedCoefficients make_coefficients(double gamma, double phi, double chi, double upsilon, double B,
                                     double T0 = 0.2);
// From the scale-invariant products gamma*chi and gamma^2*upsilon.
LumpedCoefficients make_coefficients_normalized(double gamma, double phi, double gamma_chi,
                                                double gamma2_upsilon, double B, double T0 = 0.2);

struct LumpedModels {
  double u1 = 0.0;
  double u2p = 0.0;
  double udelta2p = 0.0;
};

struct FirstOrderEstimates {
  double e_asymp = 0.0;
  double t_max = 0.0;
  double e_ub = 0.0;
};

struct DeltaEstimate {
  double c0 = 0.0;
  double c1 = 0.0;
  double c1_bi = 0.0;
  double bound = 0.0;
};

struct MeasuredErrors {
  double e1 = 0.0;
  double e2p = 0.0;
  double edelta_rel = 0.0;
};

struct Dimensional {
  double B = 0.0;
  double t_diff = 0.0;
};

LumpedModels lumped_models(const LumpedCoefficients& c, double T);
FirstOrderEstimates first_order_error_estimates(const LumpedCoefficients& c);
double second_order_error_estimate(const LumpedCoefficients& c);
DeltaEstimate delta_error_estimate(const LumpedCoefficients& c, double T0);
MeasuredErrors measured_errors(const QoISeries& q, const LumpedCoefficients& c, double T0 = 0.2);
Dimensional from_dimensional(double h, double ell, double k_inf, double mean_rho_c);

struct SweepRow {
  double B = 0.0;
  LumpedCoefficients c;
  FirstOrderEstimates first;
  double e2p_asymp = 0.0;
  DeltaEstimate delta;
  MeasuredErrors measured;
};

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

}  // namespace dunk
