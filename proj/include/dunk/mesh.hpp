#pragma once

#include <array>
#include <functional>
#include <vector>

#include <json.hpp>

#include "dunk/geometry.hpp"

namespace dunk {

struct BoundaryEdge {
  int a = 0;
  int b = 0;
  EdgeTag tag = EdgeTag::Robin;
  // Index of the polygon edge this segment lies on, or -1.
  int source = -1;
};

struct Mesh {
  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<int> region;
  std::vector<BoundaryEdge> boundary;
  // Triangle of the previous level containing each triangle, empty at level 0.
  std::vector<int> parent;
  int level = 0;
};

// Quadratic Lagrange layout: vertex dofs first, then one dof per edge.
struct P2Space {
  int n_vertices = 0;
  int n_edges = 0;
  int ndof = 0;
  // Local order v0, v1, v2, m01, m12, m20.
  std::vector<std::array<int, 6>> cell_dofs;
  // a, b, midpoint.
  std::vector<std::array<int, 3>> boundary_dofs;
  std::vector<Vec2> dof_coords;
};

Mesh triangulate(const DomainSpec& d, double target_h);
Mesh refine(const Mesh& m);
Mesh refine(const Mesh& m, int times);

// Grid with lines at xs and ys, two triangles per cell; region_of maps a
// cell centre to a region id.
Mesh structured_rectangle(const std::vector<double>& xs, const std::vector<double>& ys,
                          const std::function<int(Vec2)>& region_of = {});
std::vector<double> uniform_lines(double a, double b, int n);
// Conforming mesh of a polygon that is a single triangle or convex quad.
Mesh single_polygon_mesh(const DomainSpec& d);
// Coarse mesh for a polygon: a single cell when possible, ear clipping otherwise.
Mesh coarse_mesh(const DomainSpec& d);
// Ear clipping of a simple counter-clockwise polygon.
std::vector<std::array<int, 3>> ear_clip(const std::vector<Vec2>& v);

P2Space p2_space(const Mesh& m);

double triangle_area(const Mesh& m, int t);
double mesh_area(const Mesh& m);
double boundary_length(const Mesh& m, EdgeTag tag);
double max_edge_length(const Mesh& m);
void check_mesh(const Mesh& m);

// Value of a P2 field at point p inside cell t.
double p2_evaluate(const Mesh& m, const P2Space& s, const std::vector<double>& u, int t, Vec2 p);
// Interpolates a P2 field from m onto refine(m), exactly.
std::vector<double> prolongate(const Mesh& coarse, const P2Space& cs, const Mesh& fine,
                               const P2Space& fs, const std::vector<double>& u);

nlohmann::json to_json(const Mesh& m);
Mesh mesh_from_json(const nlohmann::json& j);

}  // namespace dunk
