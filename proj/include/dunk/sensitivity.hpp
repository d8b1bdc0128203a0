#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "dunk/assembly.hpp"

namespace dunk {

struct SensitivityResult {
  Vec psi_prime0;
  double p = 0.0;
  double phi = 0.0;
  double chi = 0.0;
  double upsilon = 0.0;
  double gamma = 0.0;
  double volume = 0.0;
  double e_phi = 0.0;
  double lcond = 0.0;

  double gamma_chi() const { return gamma * chi; }
  double gamma2_upsilon() const { return gamma * gamma * upsilon; }
};

SensitivityResult solve_sensitivity(const Forms& f);
SensitivityResult solve_sensitivity(const Mesh& m, const MaterialField& mat);
nlohmann::json to_json(const SensitivityResult& r);

// -a0(w,w) - 2 a1(w, psi0) with psi0 the normalized constant.
double max_principle_J(const Forms& f, const Vec& w);

struct ExactFunctionals {
  double phi = 0.0;
  double chi = 0.0;
  double upsilon = 0.0;
  double gamma = 0.0;

  double gamma_chi() const { return gamma * chi; }
  double gamma2_upsilon() const { return gamma * gamma * upsilon; }
};

enum class Functional { Phi, GammaChi, Gamma2Upsilon };

Functional functional_from_string(const std::string& s);
// Uniform-material values; throws GeometryError("not in catalog") otherwise.
double closed_form(const DomainSpec& d, Functional which);
// Named rows: interval, disk, sphere, right_triangle_w1, equilateral_triangle,
// and right_triangle_thin whose values are the coefficients of W^-2 (phi) and
// W^-4 (gamma_chi, gamma2_upsilon) as W -> 0.
double closed_form(const std::string& row, Functional which);
const std::vector<std::string>& catalog_rows();

// Right triangle with legs W and 1, by exact integration of the quadratic
// sensitivity function.
ExactFunctionals triangle_functionals_exact(double w);
double triangle_phi_exact(double w);
// Interval of the given length, uniform materials.
ExactFunctionals interval_functionals(double length);
ExactFunctionals rectangle_functionals(double lx, double ly);

double tensorize_phi(double phi2d);
ExactFunctionals tensorize(const ExactFunctionals& base2d, double length);

struct SigmaBound {
  double delta = 0.0;
  double phi_ub = 0.0;
};

SigmaBound phi_upper_bound_sigma(double phi_uniform, double mu, double sigma_variance, double gamma);
double mu_payne_weinberger_lb(double diameter);
double phi_lower_bound_F(const DomainSpec& d, double sigma_min = 1.0, double kappa_max = 1.0);
// Error estimate for the last entry of a nested refinement sequence.
double error_estimate_phi(const std::vector<double>& phis);

}  // namespace dunk
