#include "dunk/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "dunk/expected.hpp"
#include "dunk/robin_bounds.hpp"
#include "dunk/spectral.hpp"
#include "dunk/transient.hpp"

namespace dunk {

using nlohmann::json;

Study make_study(Problem p) {
  Study s;
  s.problem = std::move(p);
  s.space = p2_space(s.problem.mesh);
  s.forms = assemble(s.problem.mesh, s.space, s.problem.material);
  s.sens = solve_sensitivity(s.forms);
  return s;
}

Study make_study(const std::string& builtin_name, int level) { return make_study(builtin(builtin_name, level)); }

std::string sci4(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

unsigned sweep_threads(std::size_t jobs) {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("DUNKKIT_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, static_cast<unsigned>(cap));
  }
  return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(n, jobs)));
}

namespace {

// Runs f(i) for i in [0, n) on up to sweep_threads(n) workers.
template <class F>
void parallel_for(std::size_t n, F f) {
  const unsigned workers = sweep_threads(n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_lock;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard lock(error_lock);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

LumpedCoefficients coefficients(const SensitivityResult& s, double B, double T0) {
  return make_coefficients(s.gamma, s.phi, s.chi, s.upsilon, B, T0);
}

}  // namespace

SweepPoint run_sweep_point(const Study& coarse, const Study& fine, double B, const SweepOptions& o) {
  if (!(o.T_final > 0.0) || o.steps < 2) throw std::invalid_argument("sweep needs T_final > 0 and steps >= 2");
  SweepPoint pt;
  const auto c = coefficients(fine.sens, B, o.T0);
  const double predicted = first_order_error_estimates(c).e_asymp;
  int n = o.steps;
  for (int d = 0;; ++d) {
    const auto qc = step_heat(coarse.forms, B, o.T_final, n);
    pt.series = step_heat(fine.forms, B, o.T_final, 2 * n);
    pt.indicator = discretization_error_indicator(coarse.problem.mesh, coarse.space, fine.problem.mesh,
                                                  fine.space, fine.forms, qc, pt.series);
    pt.steps = 2 * n;
    pt.gate_passed = B == 0.0 || pt.indicator < o.gate_fraction * predicted;
    if (pt.gate_passed || d >= o.max_doublings) break;
    n *= 2;
  }
  pt.row.B = B;
  pt.row.c = c;
  pt.row.first = first_order_error_estimates(c);
  pt.row.e2p_asymp = second_order_error_estimate(c);
  pt.row.delta = delta_error_estimate(c, o.T0);
  pt.row.measured = measured_errors(pt.series, c, o.T0);
  return pt;
}

std::vector<SweepPoint> run_sweep(const std::string& builtin_name, const std::vector<double>& Bs,
                                  const SweepOptions& o) {
  Study coarse, fine;
  parallel_for(2, [&](std::size_t i) {
    if (i == 0) coarse = make_study(builtin_name, o.level);
    else fine = make_study(builtin_name, o.level + 1);
  });
  std::vector<SweepPoint> out(Bs.size());
  parallel_for(Bs.size(), [&](std::size_t i) { out[i] = run_sweep_point(coarse, fine, Bs[i], o); });
  return out;
}

void write_report(std::ostream& os, const Report& r, const std::string& format) {
  if (format == "json") {
    json rows = json::array();
    for (const auto& row : r.rows) {
      json o = json::object();
      for (std::size_t i = 0; i < r.header.size() && i < row.size(); ++i) o[r.header[i]] = row[i];
      rows.push_back(o);
    }
    os << json{{"id", r.id}, {"pass", r.pass}, {"rows", rows}}.dump(2) << '\n';
    return;
  }
  if (format != "csv") throw std::invalid_argument("format must be csv or json");
  auto line = [&](const std::vector<std::string>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << '\n';
  };
  line(r.header);
  for (const auto& row : r.rows) line(row);
}

namespace {

struct RowData {
  std::string label;
  std::vector<double> values;
  std::vector<std::pair<std::string, bool>> flags;
};

// Lays out computed columns, their reference values where the table has
// them, extra boolean checks, and a final pass/fail column.
Report make_report(const std::string& id, const std::string& table_id, const std::string& label,
                   const std::vector<std::string>& columns, const std::vector<RowData>& rows) {
  const ExpectedTable* t = table_id.empty() ? nullptr : &expected_table(table_id);
  std::vector<bool> has_ref(columns.size(), false);
  if (t)
    for (std::size_t c = 0; c < columns.size(); ++c)
      for (const auto& r : rows) has_ref[c] = has_ref[c] || t->has(r.label, columns[c]);
  Report rep;
  rep.id = id;
  rep.header.push_back(label);
  for (std::size_t c = 0; c < columns.size(); ++c) {
    rep.header.push_back(columns[c]);
    if (has_ref[c]) rep.header.push_back(columns[c] + "_ref");
  }
  if (!rows.empty())
    for (const auto& f : rows.front().flags) rep.header.push_back(f.first);
  rep.header.push_back("pass");
  rep.header.push_back("failed");
  for (const auto& r : rows) {
    std::vector<std::string> out{r.label};
    std::string failed;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      out.push_back(sci4(r.values[c]));
      if (!has_ref[c]) continue;
      if (t->has(r.label, columns[c])) {
        const auto& e = t->at(r.label, columns[c]);
        out.push_back(sci4(e.value));
        if (!e.accepts(r.values[c])) failed += (failed.empty() ? "" : ";") + columns[c];
      } else {
        out.push_back("");
      }
    }
    for (const auto& f : r.flags) {
      out.push_back(f.second ? "yes" : "no");
      if (!f.second) failed += (failed.empty() ? "" : ";") + f.first;
    }
    out.push_back(failed.empty() ? "pass" : "fail");
    out.push_back(failed);
    rep.pass = rep.pass && failed.empty();
    rep.rows.push_back(std::move(out));
  }
  return rep;
}

const std::vector<double>& table_B() {
  static const std::vector<double> b = {1e-3, 2e-3, 5e-3, 1e-2, 2e-2, 5e-2, 1e-1, 2e-1, 5e-1, 1.0};
  return b;
}

struct PhiLevels {
  SensitivityResult finest;
  double e_phi = 0.0;
};

PhiLevels phi_with_estimate(const std::string& name, int level) {
  const int lo = std::max(0, level - 2);
  std::vector<SensitivityResult> res(level - lo + 1);
  parallel_for(res.size(), [&](std::size_t i) {
    const auto p = builtin(name, lo + static_cast<int>(i));
    res[i] = solve_sensitivity(assemble(p.mesh, p2_space(p.mesh), p.material));
  });
  std::vector<double> phis;
  for (const auto& r : res) phis.push_back(r.phi);
  return {res.back(), error_estimate_phi(phis)};
}

double sigma_min(const MaterialField& m) {
  double s = 1.0;
  if (!m.sigma.empty()) {
    s = m.sigma.begin()->second;
    for (const auto& [k, v] : m.sigma) s = std::min(s, v);
  }
  return s;
}

double kappa_max(const MaterialField& m) {
  double k = 1.0;
  if (!m.kappa.empty()) {
    k = m.kappa.begin()->second;
    for (const auto& [r, v] : m.kappa) k = std::max(k, v);
  }
  return k;
}

Report reproduce_table1() {
  std::vector<RowData> rows;
  for (const std::string r : {"interval", "disk", "sphere"}) rows.push_back({r, {closed_form(r, Functional::Phi)}, {}});
  return make_report("table1", "table1", "domain", {"phi"}, rows);
}

Report reproduce_table5() {
  std::vector<RowData> rows;
  for (const auto& r : catalog_rows())
    rows.push_back({r,
                    {closed_form(r, Functional::Phi), closed_form(r, Functional::GammaChi),
                     closed_form(r, Functional::Gamma2Upsilon)},
                    {}});
  return make_report("table5", "table5", "domain", {"phi", "gamma_chi", "gamma2_upsilon"}, rows);
}

Report reproduce_table2(const ReproduceOptions& o) {
  const int level = o.level < 0 ? 3 : o.level;
  std::vector<RowData> rows;
  for (const auto& [label, name] : std::vector<std::pair<std::string, std::string>>{{"SART", "sart1"}, {"RECT", "rect"}}) {
    const auto r = phi_with_estimate(name, level);
    const double exact = builtin(name, 0).phi_uniform;
    rows.push_back({label,
                    {r.finest.phi, r.finest.phi / r.finest.gamma, r.e_phi, exact},
                    {{"matches_exact", std::abs(r.finest.phi - exact) <= 1e-8 * std::max(1.0, exact)}}});
  }
  return make_report("table2-subset", "table2-subset", "shape", {"phi_h", "phi_over_gamma", "e_phi", "phi_exact"}, rows);
}

Report reproduce_table3(const ReproduceOptions& o) {
  const int level = o.level < 0 ? 5 : o.level;
  const std::vector<std::string> cfg = {"32-1.6", "256-1.6", "2048-1.6", "32-0.4", "256-0.4", "2048-0.4"};
  std::vector<RowData> rows(cfg.size());
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    const auto name = "gear-" + cfg[i];
    const auto r = phi_with_estimate(name, level);
    const auto d = builtin(name, 0).domain;
    const double F = phi_lower_bound_F(d);
    rows[i] = {cfg[i], {d.gamma, r.finest.phi, r.e_phi, F}, {{"F_le_phi", F <= r.finest.phi}}};
  }
  return make_report("table3", "table3", "n-q", {"gamma", "phi_h", "e_phi", "F"}, rows);
}

Report reproduce_table4(const ReproduceOptions& o) {
  const std::vector<std::pair<std::string, std::string>> cfg = {
      {"RECTHI", "recthi"}, {"EVFCS", "evfcs"}, {"DVFCSLF", "dvfcslf"}, {"DVFCSHF", "dvfcshf"}};
  std::vector<RowData> rows(cfg.size());
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    const auto& name = cfg[i].second;
    const int level = o.level >= 0 ? o.level : (name == "recthi" ? 4 : 2);
    const auto r = phi_with_estimate(name, level);
    const auto p = builtin(name, level);
    const auto s = p2_space(p.mesh);
    const double mu = second_neumann_eigenvalue(assemble(p.mesh, s, uniform_material(p.mesh)));
    const double var = sigma_variance(p.material, p.mesh);
    const auto ub = phi_upper_bound_sigma(p.phi_uniform, mu, var, r.finest.gamma);
    rows[i] = {cfg[i].first, {mu, var, ub.phi_ub, r.finest.phi, r.e_phi}, {{"phi_le_UB", r.finest.phi <= ub.phi_ub}}};
  }
  return make_report("table4", "table4", "shape", {"mu_h", "sigma_variance", "phi_UB", "phi_h", "e_phi"}, rows);
}

Report reproduce_table10() {
  std::vector<RowData> rows;
  for (double r : {0.01, 0.02, 0.05, 0.10, 0.20, 0.50}) {
    char key[16];
    std::snprintf(key, sizeof key, "%.2f", r);
    rows.push_back({key, {gap_g(r), r / std::numbers::e}, {}});
  }
  return make_report("table10", "table10", "r", {"g", "r_over_e"}, rows);
}

Report reproduce_sweep(const std::string& id, const ReproduceOptions& o) {
  const bool sart2 = id.rfind("sart2", 0) == 0;
  SweepOptions so;
  so.level = o.level < 0 ? 4 : o.level;
  so.steps = o.steps;
  so.T_final = o.T_final;
  so.T0 = o.T0;
  const auto pts = run_sweep(sart2 ? "sart2" : "sart1", table_B(), so);
  std::vector<RowData> rows;
  const bool first = id.ends_with("-errors");
  const bool second = id.ends_with("-second-order");
  for (const auto& p : pts) {
    const auto& r = p.row;
    RowData d;
    d.label = b_key(r.B);
    if (first) {
      const double ratio = r.measured.e1 > 0.0 ? r.first.e_asymp / r.measured.e1 : 0.0;
      d.values = {r.c.bi, r.c.bi_prime, r.measured.e1, r.first.e_asymp, ratio, r.first.e_ub};
      d.flags = {{"E1_le_UB", r.measured.e1 <= r.first.e_ub}};
    } else if (second) {
      const double ratio = r.measured.e2p > 0.0 ? r.e2p_asymp / r.measured.e2p : 0.0;
      d.values = {r.c.bi, r.c.bi_prime, r.measured.e2p, r.e2p_asymp, ratio};
    } else {
      d.values = {r.c.bi, r.measured.edelta_rel, r.delta.c1_bi, r.delta.bound};
      d.flags = {{"bound_dominates", r.measured.edelta_rel <= r.delta.bound}};
    }
    d.flags.push_back({"gate", p.gate_passed});
    rows.push_back(std::move(d));
  }
  const std::string table = id == "sart2-errors" ? "sart2-errors" : id;
  if (first) return make_report(id, table, "B", {"bi", "bi_prime", "E1", "E1_asymp", "E1_ratio", "E1_UB"}, rows);
  if (second) return make_report(id, table, "B", {"bi", "bi_prime", "E2P", "E2P_asymp", "E2P_ratio"}, rows);
  return make_report(id, table, "B", {"bi", "EDelta_rel", "C1_bi", "EDelta_bound"}, rows);
}

}  // namespace

const std::vector<std::string>& reproduce_ids() {
  static const std::vector<std::string> ids = {"table1",      "table2-subset",      "table3",     "table4",
                                               "table5",      "sart1-errors",       "sart2-errors",
                                               "sart1-second-order", "sart1-delta", "table10"};
  return ids;
}

Report reproduce(const std::string& id, const ReproduceOptions& o) {
  if (id == "table1") return reproduce_table1();
  if (id == "table2-subset") return reproduce_table2(o);
  if (id == "table3") return reproduce_table3(o);
  if (id == "table4") return reproduce_table4(o);
  if (id == "table5") return reproduce_table5();
  if (id == "table10") return reproduce_table10();
  if (id == "sart1-errors" || id == "sart2-errors" || id == "sart1-second-order" || id == "sart1-delta")
    return reproduce_sweep(id, o);
  throw std::invalid_argument("unknown reproduce id '" + id + "'");
}

namespace {

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad number '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty value list");
  return out;
}

struct Config {
  std::string builtin;
  std::string geometry;
  std::string B = "1e-2";
  double tfinal = 2.0;
  double t0 = 0.2;
  int steps = 2000;
  int levels = 3;
  std::string out;
  std::string format = "csv";
  std::string id;
  bool mesh = false;
};

// A builtin problem, or a polygon from a geometry file meshed at the level.
Problem load_problem(const Config& c) {
  if (!c.builtin.empty() && !c.geometry.empty()) throw std::invalid_argument("give either --builtin or --geometry");
  if (!c.builtin.empty()) return builtin(c.builtin, c.levels);
  if (c.geometry.empty()) throw std::invalid_argument("one of --builtin or --geometry is required");
  std::ifstream in(c.geometry);
  if (!in) throw std::runtime_error("cannot open " + c.geometry);
  Problem p;
  p.domain = make_domain(json::parse(in));
  p.name = p.domain.name;
  if (p.domain.kind != DomainKind::Polygon) throw GeometryError("only polygons can be meshed");
  p.mesh = refine(coarse_mesh(p.domain), c.levels);
  p.material = uniform_material();
  p.material.normalized = true;
  return p;
}

DomainSpec load_domain(const Config& c) {
  if (!c.geometry.empty()) {
    std::ifstream in(c.geometry);
    if (!in) throw std::runtime_error("cannot open " + c.geometry);
    return make_domain(json::parse(in));
  }
  return load_problem(c).domain;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open " + path);
    }
  }
  std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void validate(const Config& c) {
  if (!(c.tfinal > 0.0)) throw std::invalid_argument("--tfinal must be positive");
  if (!(c.t0 > 0.0)) throw std::invalid_argument("--t0 must be positive");
  if (c.steps < 2) throw std::invalid_argument("--steps must be at least 2");
  if (c.levels < 0) throw std::invalid_argument("--levels must be nonnegative");
  if (c.format != "csv" && c.format != "json") throw std::invalid_argument("--format must be csv or json");
}

int cmd_geometry(const Config& c) {
  const auto d = load_domain(c);
  json j{{"domain", to_json(d)}};
  if (c.mesh && d.kind == DomainKind::Polygon) j["mesh"] = to_json(load_problem(c).mesh);
  Output o(c.out);
  o.os() << j.dump(2) << '\n';
  return 0;
}

int cmd_phi(const Config& c) {
  json j;
  const auto d = load_domain(c);
  if (d.kind != DomainKind::Polygon) {
    j = {{"phi", closed_form(d, Functional::Phi)},
         {"gamma", d.gamma},
         {"gamma_chi", closed_form(d, Functional::GammaChi)},
         {"gamma2_upsilon", closed_form(d, Functional::Gamma2Upsilon)},
         {"e_phi", 0.0}};
    j["chi"] = j["gamma_chi"].get<double>() / d.gamma;
    j["upsilon"] = j["gamma2_upsilon"].get<double>() / (d.gamma * d.gamma);
    j["lcond"] = j["phi"].get<double>() / d.gamma;
  } else {
    std::vector<double> phis;
    SensitivityResult r;
    Problem p;
    for (int l = std::max(0, c.levels - 2); l <= c.levels; ++l) {
      Config cl = c;
      cl.levels = l;
      p = load_problem(cl);
      r = solve_sensitivity(assemble(p.mesh, p2_space(p.mesh), p.material));
      phis.push_back(r.phi);
    }
    r.e_phi = error_estimate_phi(phis);
    j = to_json(r);
    j["F"] = phi_lower_bound_F(p.domain, sigma_min(p.material), kappa_max(p.material));
    if (p.material.sigma.size() > 1 && p.phi_uniform > 0.0) {
      const auto s = p2_space(p.mesh);
      const double mu = second_neumann_eigenvalue(assemble(p.mesh, s, uniform_material(p.mesh)));
      const double var = sigma_variance(p.material, p.mesh);
      j["mu_h"] = mu;
      j["sigma_variance"] = var;
      j["phi_UB"] = phi_upper_bound_sigma(p.phi_uniform, mu, var, r.gamma).phi_ub;
    }
  }
  Output o(c.out);
  o.os() << j.dump(2) << '\n';
  return 0;
}

int cmd_spectrum(const Config& c) {
  const auto p = load_problem(c);
  const auto s = p2_space(p.mesh);
  const auto f = assemble(p.mesh, s, p.material);
  const auto sens = solve_sensitivity(f);
  const auto Bs = parse_list(c.B);
  const auto flat = assemble(p.mesh, s, uniform_material(p.mesh));
  const double mu = second_neumann_eigenvalue(flat);
  std::vector<SpectralResult> res(Bs.size());
  parallel_for(Bs.size(), [&](std::size_t i) { res[i] = first_eigenpair(f, Bs[i]); });
  Report rep;
  rep.id = "spectrum";
  rep.header = {"B", "lambda1", "first", "second", "pade", "mu"};
  for (std::size_t i = 0; i < Bs.size(); ++i) {
    const auto a = lambda_approximants(Bs[i], sens.gamma, sens.phi);
    rep.rows.push_back({sci4(Bs[i]), sci4(res[i].lambda1), sci4(a.first), sci4(a.second), sci4(a.pade), sci4(mu)});
  }
  Output o(c.out);
  write_report(o.os(), rep, c.format);
  return 0;
}

int cmd_transient(const Config& c) {
  const auto p = load_problem(c);
  const auto s = p2_space(p.mesh);
  const auto f = assemble(p.mesh, s, p.material);
  const auto Bs = parse_list(c.B);
  if (Bs.size() != 1) throw std::invalid_argument("transient takes a single --B");
  const auto q = step_heat(f, Bs[0], c.tfinal, c.steps);
  Output o(c.out);
  write_csv(o.os(), q);
  return 0;
}

int cmd_estimate(const Config& c) {
  if (c.builtin.empty()) throw std::invalid_argument("estimate needs --builtin");
  SweepOptions so;
  so.level = c.levels;
  so.T_final = c.tfinal;
  so.T0 = c.t0;
  so.steps = c.steps;
  const auto pts = run_sweep(c.builtin, parse_list(c.B), so);
  std::vector<SweepRow> rows;
  for (const auto& p : pts) {
    rows.push_back(p.row);
    if (!p.gate_passed)
      std::cerr << "warning: discretization indicator " << sci4(p.indicator) << " not below "
                << so.gate_fraction << " E1_asymp at B = " << sci4(p.row.B) << '\n';
  }
  Output o(c.out);
  write_sweep_csv(o.os(), rows);
  return 0;
}

int cmd_bounds(const Config& c) {
  const auto p = load_problem(c);
  const auto s = p2_space(p.mesh);
  const auto f = assemble(p.mesh, s, p.material);
  const auto sens = solve_sensitivity(f);
  // One value per polygon side, repeated cyclically.
  const auto side = parse_list(c.B);
  std::vector<double> edge(p.mesh.boundary.size());
  for (std::size_t e = 0; e < edge.size(); ++e) edge[e] = side[p.mesh.boundary[e].source % side.size()];
  const auto field = make_robin_field(p.mesh, edge);
  const auto q = step_heat(p.mesh, s, f, edge, field.B_bar, c.tfinal, c.steps);
  const auto cinf = make_coefficients(sens.gamma, sens.phi, sens.chi, sens.upsilon, field.B_inf, c.t0);
  const auto env = envelope(cinf, field.B_sup, q.t);
  const auto lbp = one_sided_lb(field.B_bar, sens.gamma, q.t);
  Output o(c.out);
  write_bounds_csv(o.os(), env, lbp, q.u_avg);
  return 0;
}

int cmd_reproduce(const Config& c) {
  ReproduceOptions ro;
  ro.level = c.levels;
  ro.steps = c.steps;
  ro.T_final = c.tfinal;
  ro.T0 = c.t0;
  const auto rep = reproduce(c.id, ro);
  Output o(c.out);
  write_report(o.os(), rep, c.format);
  return rep.pass ? 0 : 2;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Lumped-model heat transfer toolkit"};
  app.require_subcommand(1);
  Config c;
  int level_override = -1;

  auto common = [&](CLI::App* s, bool source) {
    if (source) {
      s->add_option("--builtin", c.builtin, "builtin problem name");
      s->add_option("--geometry", c.geometry, "geometry JSON file");
    }
    s->add_option("--levels", level_override, "refinement level");
    s->add_option("--out", c.out, "output file (default stdout)");
    s->add_option("--format", c.format, "csv or json");
  };
  auto timing = [&](CLI::App* s) {
    s->add_option("--B", c.B, "comma-separated B values");
    s->add_option("--tfinal", c.tfinal, "final slow time");
    s->add_option("--t0", c.t0, "slow-time cutoff for U_delta");
    s->add_option("--steps", c.steps, "time steps");
  };

  auto* geo = app.add_subcommand("geometry", "emit a domain spec and optionally its mesh");
  common(geo, true);
  geo->add_flag("--mesh", c.mesh, "include the mesh");
  auto* phi = app.add_subcommand("phi", "sensitivity solve with bounds (JSON)");
  common(phi, true);
  auto* spec = app.add_subcommand("spectrum", "first eigenvalue, approximants and mu");
  common(spec, true);
  timing(spec);
  auto* tr = app.add_subcommand("transient", "QoI time series (CSV)");
  common(tr, true);
  timing(tr);
  auto* est = app.add_subcommand("estimate", "error sweep (CSV)");
  common(est, true);
  timing(est);
  auto* bnd = app.add_subcommand("bounds", "envelope for a per-side Robin coefficient (CSV)");
  common(bnd, true);
  timing(bnd);
  auto* rep = app.add_subcommand("reproduce", "reproduce a reference table with pass/fail column");
  common(rep, false);
  timing(rep);
  rep->add_option("id", c.id, "table id")->required()->check(CLI::IsMember(reproduce_ids()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (level_override >= 0) c.levels = level_override;
    else if (est->parsed()) c.levels = 4;
    validate(c);
    if (geo->parsed()) return cmd_geometry(c);
    if (phi->parsed()) return cmd_phi(c);
    if (spec->parsed()) return cmd_spectrum(c);
    if (tr->parsed()) return cmd_transient(c);
    if (est->parsed()) return cmd_estimate(c);
    if (bnd->parsed()) {
      if (c.builtin.empty() && c.geometry.empty()) c.builtin = "sart1";
      return cmd_bounds(c);
    }
    if (rep->parsed()) {
      if (level_override < 0) c.levels = -1;
      return cmd_reproduce(c);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace dunk
