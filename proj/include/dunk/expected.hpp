#pragma once

#include <string>
#include <vector>

namespace dunk {

// A reference value with its acceptance tolerance. When relative is set the
// tolerance is a fraction of |value|.
struct Expected {
  std::string row;
  std::string column;
  double value = 0.0;
  double tol = 0.0;
  bool relative = true;

  bool accepts(double computed) const;
};

struct ExpectedTable {
  std::string id;
  std::string title;
  std::vector<Expected> values;

  // Throws std::out_of_range if the entry is missing.
  const Expected& at(const std::string& row, const std::string& column) const;
  bool has(const std::string& row, const std::string& column) const;
};

// Ids: table1, table2-subset, table3, table4, table5, sart1-errors,
// sart2-errors, sart1-second-order, sart2-second-order, sart1-delta,
// sart2-delta, table10, sart-functionals.
const ExpectedTable& expected_table(const std::string& id);
const std::vector<std::string>& expected_table_ids();

// Sweep rows are keyed by B written as "%.0e", e.g. "1e-03".
std::string b_key(double B);

}  // namespace dunk
