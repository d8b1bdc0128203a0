#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dunk/assembly.hpp"
#include "dunk/spectral.hpp"

namespace dunk {

struct QoISeries {
  std::vector<double> T;
  std::vector<double> t;
  std::vector<double> u_avg;
  std::vector<double> u_boundary_avg;
  std::vector<double> u_delta;
  double B = 0.0;
  double gamma = 0.0;
  Vec final_field;
  // Integral of a0(u,u) over slow time.
  double energy_integral = 0.0;
  // Smallest vertex value seen over all steps.
  double min_value = 0.0;
};

// Piecewise-constant-in-time Robin coefficient: one value per mesh boundary
// edge, switching at the given physical times (the first must be 0).
struct RobinSchedule {
  std::vector<double> start_times;
  std::vector<std::vector<double>> edge_values;
};

// Uniform B; T_final is slow time B*gamma*t. For B = 0 the time axis is t.
QoISeries step_heat(const Forms& f, double B, double T_final, int n_steps);
// Edge-varying coefficient on mesh m; slow time uses B_ref.
QoISeries step_heat(const Mesh& m, const P2Space& s, const Forms& f, const std::vector<double>& edge_B,
                    double B_ref, double T_final, int n_steps);
QoISeries step_heat(const Mesh& m, const P2Space& s, const Forms& f, const RobinSchedule& schedule,
                    double B_ref, double T_final, int n_steps);

QoISeries sov_qoi(const Forms& f, const EigenPairs& pairs, double B, const std::vector<double>& T);
std::vector<double> uniform_grid(double T_final, int n_steps);

// Same mesh, nested time grids: H1 norm of the final-field difference plus
// the largest u_avg difference at the coarser series' times. The boundary
// average is left out because its initial layer is not smooth in time.
double discretization_error_indicator(const Forms& f, const QoISeries& coarse, const QoISeries& fine);
// Coarse run on m, fine run on refine(m): the coarse field is prolongated.
double discretization_error_indicator(const Mesh& coarse_mesh, const P2Space& coarse_space,
                                      const Mesh& fine_mesh, const P2Space& fine_space,
                                      const Forms& fine_forms, const QoISeries& coarse,
                                      const QoISeries& fine);

void write_csv(std::ostream& os, const QoISeries& q);
void write_csv(const std::string& path, const QoISeries& q);

}  // namespace dunk
