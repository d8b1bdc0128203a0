#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dunk/builtins.hpp"
#include "dunk/cli.hpp"
#include "dunk/expected.hpp"
#include "dunk/robin_bounds.hpp"
#include "dunk/sensitivity.hpp"
#include "dunk/spectral.hpp"
#include "dunk/transient.hpp"

using namespace dunk;

namespace {

struct Check {
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void near(double computed, const Expected& e, const std::string& what) {
    std::ostringstream os;
    os << what << " = " << computed << " (ref " << e.value << ")";
    expect(e.accepts(computed), os.str());
  }
  void rel(double computed, double ref, double tol, const std::string& what) {
    std::ostringstream os;
    os << what << " = " << computed << " (ref " << ref << ")";
    expect(std::abs(computed - ref) <= tol * std::abs(ref), os.str());
  }
};

SensitivityResult fem(const DomainSpec& d, int level) {
  auto mat = uniform_material();
  mat.normalized = true;
  return solve_sensitivity(refine(coarse_mesh(d), level), mat);
}

SensitivityResult fem(const Problem& p) { return solve_sensitivity(p.mesh, p.material); }

void closed_forms(Check& c) {
  const auto& t1 = expected_table("table1");
  for (const auto& e : t1.values) c.near(closed_form(e.row, Functional::Phi), e, e.row + " phi");
  const auto& t5 = expected_table("table5");
  for (const auto& e : t5.values)
    c.near(closed_form(e.row, functional_from_string(e.column)), e, e.row + " " + e.column);
}

void machine_precision(Check& c) {
  const auto rect = fem(make_rectangle(0.25, 0.99), 2);
  c.expect(std::abs(rect.phi - 2.0 / 3.0) <= 1e-10, "RECT phi error above 1e-10");
  const auto sart = fem(builtin("sart1", 2));
  c.expect(std::abs(sart.phi - triangle_phi_exact(0.25)) <= 1e-8, "SART phi differs from the exact value");
  c.near(sart.phi, expected_table("table2-subset").at("SART", "phi_h"), "SART phi_h");
}

void tensorization(Check& c) {
  c.expect(std::abs(tensorize_phi(0.5) - 5.0 / 6.0) <= 1e-14, "cylinder phi");
  c.expect(std::abs(tensorize(rectangle_functionals(1.0, 2.0), 3.0).phi - 1.0) <= 1e-14, "box phi");
  for (const auto& [l1, l2] : {std::pair{1.0, 1.0}, std::pair{0.6, 1.7}, std::pair{0.25, 0.99}}) {
    const auto r = fem(make_rectangle(l1, l2), 2);
    c.rel(r.upsilon, (l1 * l1 + l2 * l2) / 180.0, 1e-3, "rectangle upsilon");
  }
}

double cell(const Report& r, const std::string& row, const std::string& column) {
  const auto col = std::find(r.header.begin(), r.header.end(), column) - r.header.begin();
  for (const auto& line : r.rows)
    if (line.front() == row) return std::stod(line.at(col));
  throw std::out_of_range("report has no row " + row);
}

std::string text_cell(const Report& r, const std::string& row, const std::string& column) {
  const auto col = std::find(r.header.begin(), r.header.end(), column) - r.header.begin();
  for (const auto& line : r.rows)
    if (line.front() == row) return line.at(col);
  throw std::out_of_range("report has no row " + row);
}

void heterogeneous(Check& c) {
  const auto r = reproduce("table4");
  const auto& t = expected_table("table4");
  for (const char* row : {"RECTHI", "EVFCS", "DVFCSLF", "DVFCSHF"}) {
    c.near(cell(r, row, "mu_h"), t.at(row, "mu_h"), std::string(row) + " mu_h");
    c.expect(text_cell(r, row, "phi_le_UB") == "yes", std::string(row) + " phi_h above phi_UB");
  }
  c.near(cell(r, "RECTHI", "phi_h"), t.at("RECTHI", "phi_h"), "RECTHI phi_h");
  c.near(cell(r, "RECTHI", "phi_UB"), t.at("RECTHI", "phi_UB"), "RECTHI phi_UB");
  c.near(cell(r, "DVFCSLF", "phi_h"), t.at("DVFCSLF", "phi_h"), "DVFCSLF phi_h");
}

void gears(Check& c) {
  const auto& t = expected_table("table3");
  for (const std::string cfg : {"32-1.6", "32-0.4"}) {
    const auto p = builtin("gear-" + cfg, 5);
    const auto r = fem(p);
    const double F = phi_lower_bound_F(p.domain);
    c.near(p.domain.gamma, t.at(cfg, "gamma"), cfg + " gamma");
    c.near(r.phi, t.at(cfg, "phi_h"), cfg + " phi_h");
    c.near(F, t.at(cfg, "F"), cfg + " F");
    c.expect(F <= r.phi, cfg + " F above phi_h");
  }
}

void eigen_expansion(Check& c) {
  const auto p = builtin("sart1", 3);
  const auto f = assemble(p.mesh, p2_space(p.mesh), p.material);
  double prev = 0.0;
  for (double B : {4e-3, 2e-3, 1e-3}) {
    const double l = first_eigenpair(f, B).lambda1;
    const double err = std::abs(l - (B * f.gamma - p.phi_uniform * B * B)) / l;
    if (prev > 0.0) c.rel(prev / err, 4.0, 0.2, "expansion error factor at B=" + b_key(B));
    prev = err;
  }
  for (double B : {1e-3, 1e-2, 1e-1, 1.0, 10.0})
    c.expect(first_eigenpair(f, B).lambda1 < B * f.gamma, "lambda1 not below B gamma at B=" + b_key(B));
}

void first_order(Check& c) {
  const auto& t = expected_table("sart1-errors");
  const auto pts = run_sweep("sart1", {1e-3, 1e-2, 1e-1}, SweepOptions{});
  for (const auto& pt : pts) {
    const auto key = b_key(pt.row.B);
    const auto& m = pt.row.measured;
    c.expect(pt.gate_passed, "indicator gate failed at B=" + key);
    c.near(m.e1, t.at(key, "E1"), "E1 at B=" + key);
    c.near(pt.row.first.e_asymp / m.e1, t.at(key, "E1_ratio"), "E1 ratio at B=" + key);
    c.expect(m.e1 <= pt.row.first.e_ub, "E1 above E_UB at B=" + key);
    for (std::size_t k = 0; k < pt.series.T.size(); ++k)
      if (pt.series.u_avg[k] < std::exp(-pt.series.T[k]) - 1e-10) {
        c.expect(false, "U_avg below exp(-T) at B=" + key);
        break;
      }
  }
}

const std::vector<double> kTableB = {1e-3, 2e-3, 5e-3, 1e-2, 2e-2, 5e-2, 1e-1, 2e-1, 5e-1, 1.0};

void second_order(Check& c) {
  const auto& t = expected_table("sart1-second-order");
  for (const auto& pt : run_sweep("sart1", kTableB, SweepOptions{})) {
    const auto key = b_key(pt.row.B);
    const double e2p = pt.row.measured.e2p;
    if (key == "1e-02" || key == "1e-01") c.near(e2p, t.at(key, "E2P"), "E2P at B=" + key);
    if (pt.row.B <= 5e-2 * (1 + 1e-12)) {
      const double ratio = pt.row.e2p_asymp / e2p;
      c.expect(ratio >= 1.0 && ratio <= 2.5, "E2P ratio " + std::to_string(ratio) + " at B=" + key);
    }
  }
}

void delta(Check& c) {
  const auto& t = expected_table("sart1-delta");
  for (const auto& pt : run_sweep("sart1", kTableB, SweepOptions{})) {
    const auto key = b_key(pt.row.B);
    const double measured = pt.row.measured.edelta_rel;
    if (key == "1e-02") c.near(measured, t.at(key, "EDelta_rel"), "EDelta_rel at B=" + key);
    c.expect(pt.row.delta.bound >= measured, "bound below measured at B=" + key);
  }
}

void appendix_bounds(Check& c) {
  const auto& t = expected_table("table10");
  for (const auto& e : t.values)
    if (e.column == "g") c.near(gap_g(std::stod(e.row)), e, "g(" + e.row + ")");
  const auto p = builtin("sart1", 3);
  const auto s = p2_space(p.mesh);
  const auto f = assemble(p.mesh, s, p.material);
  const auto r = solve_sensitivity(f);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> level(std::log(5e-3), std::log(0.5));
  int trials = 0;
  for (int trial = 0; trial < 8; ++trial) {
    // Piecewise constant along the boundary, one value per group of edges.
    const int pieces = 2 + trial % 5;
    std::vector<double> piece(pieces);
    for (double& v : piece) v = std::exp(level(rng));
    std::vector<double> v(p.mesh.boundary.size());
    for (std::size_t e = 0; e < v.size(); ++e) v[e] = piece[e * pieces / v.size()];
    const auto field = make_robin_field(p.mesh, v);
    if (field.B_inf < 5e-3) continue;
    ++trials;
    const auto q = step_heat(p.mesh, s, f, v, field.B_bar, 2.0, 800);
    const auto env = envelope(make_coefficients(r.gamma, r.phi, r.chi, r.upsilon, field.B_inf), field.B_sup, q.t);
    const auto lbp = one_sided_lb(field.B_bar, r.gamma, q.t);
    for (std::size_t k = 0; k < q.t.size(); ++k) {
      const bool ok = env.u_lb[k] <= q.u_avg[k] + 1e-12 && q.u_avg[k] <= env.u_ub[k] && lbp[k] <= q.u_avg[k] + 1e-12;
      if (!ok) {
        c.expect(false, "envelope violated in trial " + std::to_string(trial));
        break;
      }
    }
  }
  c.expect(trials >= 6, "too few admissible random fields");
}

void properties(Check& c) {
  const auto base = make_right_triangle(0.25);
  const auto r0 = fem(base, 2);
  for (double alpha : {0.5, 3.0}) {
    const auto r = fem(scaled(base, alpha), 2);
    c.rel(r.phi, r0.phi, 1e-8, "scaled phi");
    c.rel(r.gamma_chi(), r0.gamma_chi(), 1e-8, "scaled gamma chi");
    c.rel(r.gamma2_upsilon(), r0.gamma2_upsilon(), 1e-8, "scaled gamma^2 upsilon");
  }

  std::mt19937 rng(5);
  std::uniform_real_distribution<double> logu(std::log(0.1), std::log(10.0));
  std::uniform_real_distribution<double> grow(1.0, 5.0);
  std::uniform_real_distribution<double> split(0.2, 0.8);
  for (int trial = 0; trial < 20; ++trial) {
    const double y = split(rng);
    const auto m = structured_rectangle(uniform_lines(0.0, 1.0, 8), uniform_lines(0.0, 1.0, 8),
                                        [y](Vec2 p) { return p.y > y ? 0 : 1; });
    const auto a = normalize(two_material(std::exp(logu(rng)), std::exp(logu(rng)), std::exp(logu(rng)),
                                          std::exp(logu(rng))),
                             m);
    auto b = a;
    b.kappa[trial % 2] *= grow(rng);
    const double pa = solve_sensitivity(m, a).phi, pb = solve_sensitivity(m, b).phi;
    c.expect(pb <= pa * (1 + 1e-12), "phi increased with kappa in trial " + std::to_string(trial));
  }

  const auto p = builtin("sart1", 2);
  const auto s = p2_space(p.mesh);
  const auto f = assemble(p.mesh, s, p.material);
  const auto r = solve_sensitivity(f);
  std::normal_distribution<double> normal;
  for (int k = 0; k < 100; ++k) {
    Vec w(s.ndof);
    for (int i = 0; i < s.ndof; ++i) w[i] = normal(rng);
    w.array() -= f.m1.dot(w) / f.volume;
    if (max_principle_J(f, w) > r.phi * (1 + 1e-12)) {
      c.expect(false, "J(w) above phi");
      break;
    }
  }

  const auto p3 = builtin("sart1", 3);
  const auto f3 = assemble(p3.mesh, p2_space(p3.mesh), p3.material);
  for (double B : {0.05, 0.5}) {
    const auto q = step_heat(f3, B, 2.0, 2000);
    const auto sov = sov_qoi(f3, eigenpairs(f3, B, 30), B, q.T);
    double worst = 0.0;
    for (std::size_t k = 0; k < q.T.size(); ++k) worst = std::max(worst, std::abs(q.u_avg[k] - sov.u_avg[k]));
    c.expect(worst <= 5e-4, "SoV and BDF2 differ by " + std::to_string(worst) + " at B=" + b_key(B));
    for (std::size_t k = 0; k < q.T.size(); ++k)
      if (q.T[k] > 0.0 && q.u_delta[k] < -1e-10) {
        c.expect(false, "negative U_delta at B=" + b_key(B));
        break;
      }
  }
}

struct Criterion {
  const char* name;
  std::function<void(Check&)> run;
};

const std::vector<Criterion> kCriteria = {
    {"closed-form catalog", closed_forms},
    {"machine-precision FEM rows", machine_precision},
    {"tensorization and rectangle upsilon", tensorization},
    {"heterogeneous sigma bounds", heterogeneous},
    {"gear geometries", gears},
    {"first eigenvalue expansion", eigen_expansion},
    {"first-order transient errors", first_order},
    {"second-order errors", second_order},
    {"U_delta errors", delta},
    {"non-uniform coefficient bounds", appendix_bounds},
    {"property suite", properties},
};

bool run(std::size_t i) {
  Check c;
  try {
    kCriteria[i].run(c);
  } catch (const std::exception& e) {
    c.failures.push_back(std::string("exception: ") + e.what());
  }
  const bool ok = c.failures.empty();
  std::printf("%s %zu %s", ok ? "PASS" : "FAIL", i + 1, kCriteria[i].name);
  for (std::size_t k = 0; k < c.failures.size(); ++k) std::printf("%s%s", k ? "; " : ": ", c.failures[k].c_str());
  std::printf("\n");
  std::fflush(stdout);
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::size_t> which;
  for (int a = 1; a < argc; ++a) {
    const int n = std::atoi(argv[a]);
    if (n < 1 || n > static_cast<int>(kCriteria.size())) {
      std::fprintf(stderr, "usage: acceptance [criterion 1-%zu ...]\n", kCriteria.size());
      return 2;
    }
    which.push_back(static_cast<std::size_t>(n - 1));
  }
  if (which.empty())
    for (std::size_t i = 0; i < kCriteria.size(); ++i) which.push_back(i);
  bool all = true;
  for (auto i : which) all = run(i) && all;
  return all ? 0 : 1;
}
