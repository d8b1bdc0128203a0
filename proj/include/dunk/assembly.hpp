#pragma once

#include <map>
#include <vector>

#include <Eigen/Sparse>

#include "dunk/mesh.hpp"

namespace dunk {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;

struct MaterialField {
  std::map<int, double> sigma;
  std::map<int, double> kappa;
  bool normalized = false;
};

MaterialField uniform_material();
// sigma = kappa = 1 on every region of the mesh.
MaterialField uniform_material(const Mesh& m);
// Two regions 0 and 1 with the given values.
MaterialField two_material(double sigma0, double sigma1, double kappa0 = 1.0, double kappa1 = 1.0);
std::map<int, double> region_volumes(const Mesh& m);
// Rescales sigma to volume mean one and kappa to minimum one.
MaterialField normalize(const MaterialField& mat, const Mesh& m);
// Volume mean of (sigma - 1)^2.
double sigma_variance(const MaterialField& mat, const Mesh& m);

struct Forms {
  SpMat M;
  SpMat A0;
  SpMat A1;
  // M * 1 and A1 * 1.
  Vec m1;
  Vec b1;
  double volume = 0.0;
  double boundary = 0.0;
  double gamma = 0.0;
};

Forms assemble(const Mesh& m, const P2Space& s, const MaterialField& mat);
// Boundary mass over Robin edges weighted by one constant per mesh boundary
// edge; an empty weight list means weight one.
SpMat assemble_boundary(const Mesh& m, const P2Space& s, const std::vector<double>& weights = {});

struct Functionals {
  Vec m1;
  Vec b1;
  double volume = 0.0;
  double boundary = 0.0;
  double gamma = 0.0;

  double M(const Vec& v) const { return m1.dot(v) / volume; }
  double H(const Vec& v) const { return b1.dot(v) / boundary; }
  double L(const Vec& v) const { return gamma * m1.dot(v) - b1.dot(v); }
};

Functionals functionals(const Forms& f);

}  // namespace dunk
