#include "dunk/spectral.hpp"

#include <cmath>
#include <random>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

namespace dunk {

namespace {

Vec random_vector(int n, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = u(gen);
  return v;
}

}  // namespace

SpectralResult first_eigenpair(const Forms& f, double B, double tol, int max_iter) {
  if (B < 0.0) throw SpectralError("B must be nonnegative");
  if (B == 0.0) {
    SpectralResult r;
    r.B = 0.0;
    r.psi1 = Vec::Constant(f.M.rows(), 1.0 / std::sqrt(f.volume));
    return r;
  }
  SpectralResult r = first_eigenpair(f, SpMat(B * f.A1), tol, max_iter);
  r.B = B;
  return r;
}

SpectralResult first_eigenpair(const Forms& f, const SpMat& robin, double tol, int max_iter) {
  const SpMat K = f.A0 + robin;
  Eigen::SimplicialLDLT<SpMat> ldlt(K);
  if (ldlt.info() != Eigen::Success) throw SpectralError("first_eigenpair: factorization failed");
  Vec x = Vec::Ones(K.rows());
  double lambda = 0.0, prev = -1.0, residual = 0.0;
  SpectralResult r;
  for (int it = 1; it <= max_iter; ++it) {
    x = ldlt.solve(f.M * x);
    x /= std::sqrt(x.dot(f.M * x));
    const Vec kx = K * x;
    lambda = x.dot(kx);
    residual = (kx - lambda * (f.M * x)).norm();
    if (it > 1 && std::abs(lambda - prev) <= tol * std::abs(lambda)) {
      r.iterations = it;
      break;
    }
    prev = lambda;
    if (it == max_iter)
      throw SpectralError("first_eigenpair: no convergence, last residual " + std::to_string(residual));
  }
  if (f.m1.dot(x) < 0.0) x = -x;
  r.lambda1 = lambda;
  r.psi1 = x;
  return r;
}

double second_neumann_eigenvalue(const Forms& f, double tol, int max_iter) {
  const SpMat S = f.A0 + f.M;
  Eigen::SimplicialLDLT<SpMat> ldlt(S);
  if (ldlt.info() != Eigen::Success) throw SpectralError("second_neumann_eigenvalue: factorization failed");
  const double total = f.m1.sum();
  auto project = [&](Vec& v) { v.array() -= f.m1.dot(v) / total; };
  Vec x = random_vector(static_cast<int>(S.rows()), 7u);
  project(x);
  double mu = 0.0, prev = -1.0;
  for (int it = 1; it <= max_iter; ++it) {
    x = ldlt.solve(f.M * x);
    project(x);
    x /= std::sqrt(x.dot(f.M * x));
    mu = x.dot(f.A0 * x);
    if (it > 1 && std::abs(mu - prev) <= tol * std::abs(mu)) return mu;
    prev = mu;
  }
  throw SpectralError("second_neumann_eigenvalue: no convergence, last value " + std::to_string(mu));
}

EigenPairs eigenpairs(const Forms& f, double B, int count, double tol, int max_iter) {
  const int n = static_cast<int>(f.M.rows());
  if (count < 1 || count > n) throw SpectralError("eigenpairs: invalid count");
  const int p = std::min(n, count + std::max(8, count / 2));
  const SpMat K = f.A0 + B * f.A1;
  // A small shift keeps the factorization definite at B = 0.
  const double shift = B > 0.0 ? 0.0 : 1.0;
  const SpMat S = K + shift * f.M;
  Eigen::SimplicialLDLT<SpMat> ldlt(S);
  if (ldlt.info() != Eigen::Success) throw SpectralError("eigenpairs: factorization failed");
  Eigen::MatrixXd X(n, p);
  for (int j = 0; j < p; ++j) X.col(j) = random_vector(n, 11u + j);
  X.col(0).setOnes();
  EigenPairs out;
  Eigen::VectorXd prev = Eigen::VectorXd::Zero(count);
  for (int it = 1; it <= max_iter; ++it) {
    Eigen::MatrixXd Y(n, p);
    for (int j = 0; j < p; ++j) Y.col(j) = ldlt.solve(f.M * X.col(j));
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(Y);
    Y = qr.householderQ() * Eigen::MatrixXd::Identity(n, p);
    const Eigen::MatrixXd KY = K * Y, MY = f.M * Y;
    Eigen::MatrixXd kr = Y.transpose() * KY, mr = Y.transpose() * MY;
    kr = 0.5 * (kr + kr.transpose());
    mr = 0.5 * (mr + mr.transpose());
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(kr, mr);
    X = Y * ges.eigenvectors();
    const Eigen::VectorXd lam = ges.eigenvalues().head(count);
    const double change = ((lam - prev).array().abs() / lam.array().abs().max(1e-300)).maxCoeff();
    prev = lam;
    if (it > 1 && change <= tol) {
      out.iterations = it;
      break;
    }
    if (it == max_iter) throw SpectralError("eigenpairs: no convergence");
  }
  out.lambda.assign(prev.data(), prev.data() + count);
  out.psi = X.leftCols(count);
  for (int j = 0; j < count; ++j) {
    Vec c = out.psi.col(j);
    c /= std::sqrt(c.dot(f.M * c));
    if (f.m1.dot(c) < 0.0) c = -c;
    out.psi.col(j) = c;
  }
  return out;
}

Approximants lambda_approximants(double B, double gamma, double phi) {
  if (B < 0.0) throw SpectralError("B must be nonnegative");
  Approximants a;
  a.first = B * gamma;
  a.second = B * gamma - phi * B * B;
  a.pade = B * gamma / (1.0 + phi * B / gamma);
  return a;
}

double rayleigh_quotient(const Forms& f, double B, const Vec& v) {
  return v.dot(f.A0 * v + B * (f.A1 * v)) / v.dot(f.M * v);
}

}  // namespace dunk
