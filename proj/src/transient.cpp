#include "dunk/transient.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>

#include <Eigen/SparseCholesky>

namespace dunk {

namespace {

struct Phase {
  double start = 0.0;
  SpMat robin;
};

void record(QoISeries& q, const Forms& f, const Vec& u, double t, double slow) {
  const double ua = f.m1.dot(u) / f.volume;
  const double ub = f.b1.dot(u) / f.boundary;
  q.t.push_back(t);
  q.T.push_back(slow * t);
  q.u_avg.push_back(ua);
  q.u_boundary_avg.push_back(ub);
  q.u_delta.push_back((ua - ub) / ua);
}

QoISeries run(const Forms& f, const std::vector<Phase>& phases, double slow, double T_final, int n_steps,
              int n_vertices) {
  if (n_steps < 2) throw std::invalid_argument("step_heat needs at least two steps");
  if (!(T_final > 0.0)) throw std::invalid_argument("T_final must be positive");
  const double dt = T_final / slow / n_steps;
  const int n = static_cast<int>(f.M.rows());
  QoISeries q;
  Vec u = Vec::Ones(n), u_old;
  record(q, f, u, 0.0, slow);
  q.min_value = 1.0;
  std::size_t phase = 0;
  Eigen::SimplicialLDLT<SpMat> bdf1, bdf2;
  SpMat K;
  bool restart = true;
  auto a0 = [&](const Vec& v) { return v.dot(f.A0 * v); };
  double prev_a0 = a0(u);
  for (int k = 1; k <= n_steps; ++k) {
    const double t_new = k * dt;
    bool changed = (k == 1);
    while (phase + 1 < phases.size() && phases[phase + 1].start < t_new - 0.5 * dt) {
      ++phase;
      changed = true;
    }
    if (changed) {
      K = f.A0 + phases[phase].robin;
      bdf1.compute(SpMat(f.M + dt * K));
      bdf2.compute(SpMat(3.0 * f.M + 2.0 * dt * K));
      if (bdf1.info() != Eigen::Success || bdf2.info() != Eigen::Success)
        throw std::runtime_error("step_heat: factorization failed");
      restart = true;
    }
    Vec u_new;
    if (restart) {
      u_new = bdf1.solve(f.M * u);
      restart = false;
    } else {
      u_new = bdf2.solve(f.M * (4.0 * u - u_old));
    }
    u_old = u;
    u = u_new;
    const double cur_a0 = a0(u);
    q.energy_integral += 0.5 * slow * dt * (prev_a0 + cur_a0);
    prev_a0 = cur_a0;
    q.min_value = std::min(q.min_value, u.head(n_vertices).minCoeff());
    record(q, f, u, t_new, slow);
  }
  q.final_field = u;
  return q;
}

}  // namespace

std::vector<double> uniform_grid(double T_final, int n_steps) {
  std::vector<double> T(n_steps + 1);
  for (int k = 0; k <= n_steps; ++k) T[k] = T_final * k / n_steps;
  return T;
}

QoISeries step_heat(const Forms& f, double B, double T_final, int n_steps) {
  if (B < 0.0) throw std::invalid_argument("B must be nonnegative");
  const double slow = B > 0.0 ? B * f.gamma : 1.0;
  std::vector<Phase> phases{{0.0, SpMat(B * f.A1)}};
  QoISeries q = run(f, phases, slow, T_final, n_steps, static_cast<int>(f.M.rows()));
  q.B = B;
  q.gamma = f.gamma;
  return q;
}

QoISeries step_heat(const Mesh& m, const P2Space& s, const Forms& f, const std::vector<double>& edge_B,
                    double B_ref, double T_final, int n_steps) {
  RobinSchedule sched{{0.0}, {edge_B}};
  return step_heat(m, s, f, sched, B_ref, T_final, n_steps);
}

QoISeries step_heat(const Mesh& m, const P2Space& s, const Forms& f, const RobinSchedule& schedule,
                    double B_ref, double T_final, int n_steps) {
  if (schedule.start_times.empty() || schedule.start_times.size() != schedule.edge_values.size() ||
      schedule.start_times.front() != 0.0)
    throw std::invalid_argument("Robin schedule must start at t = 0 with one field per phase");
  if (!(B_ref > 0.0)) throw std::invalid_argument("reference B must be positive");
  std::vector<Phase> phases;
  for (std::size_t i = 0; i < schedule.start_times.size(); ++i) {
    for (double b : schedule.edge_values[i])
      if (b < 0.0) throw std::invalid_argument("Robin coefficient must be nonnegative");
    phases.push_back({schedule.start_times[i], assemble_boundary(m, s, schedule.edge_values[i])});
  }
  QoISeries q = run(f, phases, B_ref * f.gamma, T_final, n_steps, s.n_vertices);
  q.B = B_ref;
  q.gamma = f.gamma;
  return q;
}

QoISeries sov_qoi(const Forms& f, const EigenPairs& pairs, double B, const std::vector<double>& T) {
  if (!(B > 0.0)) throw std::invalid_argument("sov_qoi needs B > 0");
  const double bg = B * f.gamma;
  QoISeries q;
  q.B = B;
  q.gamma = f.gamma;
  const std::size_t K = pairs.lambda.size();
  std::vector<double> weight(K);
  for (std::size_t k = 0; k < K; ++k) {
    const double Mk = f.m1.dot(pairs.psi.col(static_cast<long>(k))) / f.volume;
    weight[k] = f.volume * Mk * Mk;
  }
  for (double Tk : T) {
    double ua = 0.0, ub = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      const double e = std::exp(-pairs.lambda[k] * Tk / bg);
      ua += weight[k] * e;
      ub += weight[k] * pairs.lambda[k] / bg * e;
    }
    q.T.push_back(Tk);
    q.t.push_back(Tk / bg);
    q.u_avg.push_back(ua);
    q.u_boundary_avg.push_back(ub);
    q.u_delta.push_back((ua - ub) / ua);
  }
  return q;
}

namespace {

double interp(const std::vector<double>& x, const std::vector<double>& y, double xi) {
  auto it = std::lower_bound(x.begin(), x.end(), xi);
  if (it == x.begin()) return y.front();
  if (it == x.end()) return y.back();
  const std::size_t j = static_cast<std::size_t>(it - x.begin());
  const double w = (xi - x[j - 1]) / (x[j] - x[j - 1]);
  return (1.0 - w) * y[j - 1] + w * y[j];
}

double qoi_difference(const QoISeries& a, const QoISeries& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.T.size(); ++k)
    d = std::max(d, std::abs(a.u_avg[k] - interp(b.T, b.u_avg, a.T[k])));
  return d;
}

}  // namespace

double discretization_error_indicator(const Forms& f, const QoISeries& coarse, const QoISeries& fine) {
  if (coarse.final_field.size() != fine.final_field.size() || coarse.final_field.size() != f.M.rows())
    throw std::invalid_argument("discretization indicator: mismatched meshes");
  const Vec d = coarse.final_field - fine.final_field;
  return std::sqrt(std::max(0.0, d.dot(f.A0 * d) + d.dot(f.M * d))) + qoi_difference(coarse, fine);
}

double discretization_error_indicator(const Mesh& coarse_mesh, const P2Space& coarse_space,
                                      const Mesh& fine_mesh, const P2Space& fine_space,
                                      const Forms& fine_forms, const QoISeries& coarse,
                                      const QoISeries& fine) {
  std::vector<double> u(coarse.final_field.data(), coarse.final_field.data() + coarse.final_field.size());
  const auto p = prolongate(coarse_mesh, coarse_space, fine_mesh, fine_space, u);
  QoISeries c = coarse;
  c.final_field = Eigen::Map<const Vec>(p.data(), static_cast<long>(p.size()));
  return discretization_error_indicator(fine_forms, c, fine);
}

void write_csv(std::ostream& os, const QoISeries& q) {
  os << "T,u_avg,u_boundary_avg,u_delta\n" << std::setprecision(12);
  for (std::size_t k = 0; k < q.T.size(); ++k)
    os << q.T[k] << ',' << q.u_avg[k] << ',' << q.u_boundary_avg[k] << ',' << q.u_delta[k] << '\n';
}

void write_csv(const std::string& path, const QoISeries& q) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  write_csv(os, q);
}

}  // namespace dunk
