#pragma once

#include <string>
#include <vector>

#include "dunk/assembly.hpp"

namespace dunk {

struct Problem {
  std::string name;
  DomainSpec domain;
  Mesh mesh;
  MaterialField material;
  // Uniform-material phi of the same shape, when known in closed form.
  double phi_uniform = 0.0;
};

// Names: rect, square, sart1, sart2, right_triangle_w1, equilateral,
// recthi, evfcs, dvfcslf, dvfcshf, disk, gear-<n>-<q>.
// Higher levels are uniformly finer.
Problem builtin(const std::string& name, int level = 3);
const std::vector<std::string>& builtin_names();

}  // namespace dunk
