#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dunk/builtins.hpp"
#include "dunk/lumped.hpp"
#include "dunk/sensitivity.hpp"

namespace dunk {

// Mesh, space, forms and sensitivity solve for one builtin at one level.
struct Study {
  Problem problem;
  P2Space space;
  Forms forms;
  SensitivityResult sens;
};

Study make_study(const std::string& builtin_name, int level);
Study make_study(Problem p);

struct SweepOptions {
  int level = 4;
  double T_final = 2.0;
  double T0 = 0.2;
  int steps = 2000;
  // Steps are doubled at most this many times while the gate fails.
  int max_doublings = 2;
  // The indicator must fall below this fraction of E1_asymp.
  double gate_fraction = 0.1;
};

struct SweepPoint {
  SweepRow row;
  QoISeries series;
  double indicator = 0.0;
  int steps = 0;
  bool gate_passed = false;
};

// Coarse run on `coarse` with n steps against `fine` (one level finer) with
// 2n steps; the fine run is reported.
SweepPoint run_sweep_point(const Study& coarse, const Study& fine, double B, const SweepOptions& o);
std::vector<SweepPoint> run_sweep(const std::string& builtin_name, const std::vector<double>& Bs,
                                  const SweepOptions& o);

// Worker count for `jobs` independent tasks, capped by DUNKKIT_THREADS.
unsigned sweep_threads(std::size_t jobs);

// Scientific notation with 4 significant digits.
std::string sci4(double x);

struct Report {
  std::string id;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  bool pass = true;
};

void write_report(std::ostream& os, const Report& r, const std::string& format = "csv");

struct ReproduceOptions {
  int level = -1;  // per-table default when negative
  int steps = 2000;
  double T_final = 2.0;
  double T0 = 0.2;
};

const std::vector<std::string>& reproduce_ids();
Report reproduce(const std::string& id, const ReproduceOptions& o = {});

int run_cli(int argc, char** argv);

}  // namespace dunk
