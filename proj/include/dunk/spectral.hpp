#pragma once

#include <vector>

#include "dunk/assembly.hpp"

namespace dunk {

struct SpectralResult {
  double lambda1 = 0.0;
  Vec psi1;
  double mu = 0.0;
  double B = 0.0;
  int iterations = 0;
};

struct EigenPairs {
  std::vector<double> lambda;
  // Columns are sigma-orthonormal eigenvectors.
  Eigen::MatrixXd psi;
  int iterations = 0;
};

struct Approximants {
  double first = 0.0;
  double second = 0.0;
  double pade = 0.0;
};

class SpectralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

SpectralResult first_eigenpair(const Forms& f, double B, double tol = 1e-12, int max_iter = 500);
// Same with the Robin term given as an already weighted boundary matrix.
SpectralResult first_eigenpair(const Forms& f, const SpMat& robin, double tol = 1e-12,
                               int max_iter = 500);
// Forms must carry sigma = 1.
double second_neumann_eigenvalue(const Forms& f, double tol = 1e-12, int max_iter = 2000);
EigenPairs eigenpairs(const Forms& f, double B, int count = 30, double tol = 1e-10,
                      int max_iter = 500);
Approximants lambda_approximants(double B, double gamma, double phi);
double rayleigh_quotient(const Forms& f, double B, const Vec& v);

}  // namespace dunk
