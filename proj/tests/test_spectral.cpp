#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dunk/builtins.hpp"
#include "dunk/spectral.hpp"

using namespace dunk;

namespace {

// Smallest root of a tan(a/2) = B on (0, pi), the symmetric Robin mode of
// the unit interval.
double robin_root(double B) {
  double lo = 0.0, hi = std::numbers::pi - 1e-15;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mid * std::tan(mid / 2.0) < B ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Forms square_forms(int n) {
  const auto m = structured_rectangle(uniform_lines(0, 1, n), uniform_lines(0, 1, n));
  return assemble(m, p2_space(m), uniform_material());
}

}  // namespace

TEST_CASE("first Robin eigenvalue of the unit square separates") {
  const auto f = square_forms(8), g = square_forms(16);
  for (double B : {0.01, 0.5, 5.0}) {
    const double exact = 2.0 * std::pow(robin_root(B), 2);
    const auto r = first_eigenpair(g, B);
    const double e8 = std::abs(first_eigenpair(f, B).lambda1 - exact), e16 = std::abs(r.lambda1 - exact);
    CHECK(e16 / exact < 1e-5);
    // P2 eigenvalues converge at fourth order.
    if (e8 > 1e-8 * exact) CHECK(e8 / e16 > 12.0);
    CHECK(g.m1.dot(r.psi1) > 0.0);
    CHECK(r.psi1.dot(g.M * r.psi1) == doctest::Approx(1.0));
    CHECK(rayleigh_quotient(g, B, r.psi1) == doctest::Approx(r.lambda1).epsilon(1e-12));
  }
}

TEST_CASE("B = 0 gives the constant mode") {
  const auto f = square_forms(4);
  const auto r = first_eigenpair(f, 0.0);
  CHECK(r.lambda1 == 0.0);
  CHECK(r.psi1.minCoeff() == doctest::Approx(r.psi1.maxCoeff()));
}

TEST_CASE("second Neumann eigenvalue of the unit square is pi^2") {
  const auto f = square_forms(16);
  CHECK(second_neumann_eigenvalue(f) == doctest::Approx(std::numbers::pi * std::numbers::pi).epsilon(1e-5));
}

TEST_CASE("subspace iteration agrees with inverse iteration and is orthonormal") {
  const auto f = square_forms(8);
  const auto e = eigenpairs(f, 0.3, 6);
  CHECK(e.lambda.size() == 6);
  CHECK(e.lambda[0] == doctest::Approx(first_eigenpair(f, 0.3).lambda1).epsilon(1e-9));
  const Eigen::MatrixXd G = e.psi.transpose() * (f.M * e.psi);
  CHECK((G - Eigen::MatrixXd::Identity(6, 6)).norm() < 1e-8);
  for (std::size_t k = 1; k < e.lambda.size(); ++k) CHECK(e.lambda[k] >= e.lambda[k - 1]);
  // Second and third modes of the square are a degenerate pair, up to the
  // discretization error of the diagonal triangulation.
  CHECK(e.lambda[1] == doctest::Approx(e.lambda[2]).epsilon(1e-4));
}

TEST_CASE("small-B expansion on the right triangle") {
  const auto p = builtin("sart1", 3);
  const auto f = assemble(p.mesh, p2_space(p.mesh), p.material);
  const double phi = p.phi_uniform;
  double prev = 0.0;
  for (double B : {4e-3, 2e-3, 1e-3}) {
    const double l = first_eigenpair(f, B).lambda1;
    const auto a = lambda_approximants(B, f.gamma, phi);
    CHECK(l < a.first);
    const double err = std::abs(l - a.second) / l;
    if (prev > 0.0) CHECK(prev / err == doctest::Approx(4.0).epsilon(0.2));
    prev = err;
  }
}

TEST_CASE("approximants") {
  const auto a = lambda_approximants(0.1, 4.0, 0.5);
  CHECK(a.first == doctest::Approx(0.4));
  CHECK(a.second == doctest::Approx(0.4 - 0.005));
  CHECK(a.pade == doctest::Approx(0.4 / (1.0 + 0.0125)));
  CHECK_THROWS_AS(lambda_approximants(-1.0, 1.0, 1.0), SpectralError);
}
