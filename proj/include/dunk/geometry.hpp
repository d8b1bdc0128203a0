#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace dunk {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double norm(Vec2 a);

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class DomainKind { Interval, Disk, Sphere, Polygon, Tensorized };

enum class EdgeTag { Robin = 0, Neumann = 1 };

std::string to_string(DomainKind k);
std::string to_string(EdgeTag t);
EdgeTag edge_tag_from_string(const std::string& s);

struct DomainSpec {
  DomainKind kind = DomainKind::Polygon;
  std::string name;
  int dim = 2;
  double half_length = 0.0;  // Interval
  double radius = 0.0;       // Disk, Sphere
  std::vector<Vec2> vertices;  // Polygon, counter-clockwise
  std::vector<EdgeTag> edge_tags;  // edge i joins vertex i and i+1
  std::shared_ptr<const DomainSpec> base;  // Tensorized
  double extrusion = 0.0;                  // Tensorized

  double volume = 0.0;
  // Measure of the Robin part of the boundary.
  double boundary = 0.0;
  double gamma = 0.0;
  double diameter = 0.0;
  double in_radius = 0.0;
  // Mirrored copies that make up the whole body (symmetry cells).
  int copies = 1;

  double body_volume() const { return copies * volume; }
};

struct GeometryFeatures {
  double feat2 = 0.0;
  double c1 = 1.0;
  double c2 = 1.0;
};

DomainSpec make_interval(double half_length);
DomainSpec make_disk(double radius);
DomainSpec make_sphere(double radius);
DomainSpec make_polygon(std::vector<Vec2> vertices,
                        std::vector<EdgeTag> tags = {},
                        std::string name = "polygon");
DomainSpec make_rectangle(double lx, double ly);
// Right triangle with legs W (along x) and 1 (along y).
DomainSpec make_right_triangle(double w);
DomainSpec make_equilateral_triangle(double side = 1.0);
DomainSpec make_ngon(int n, double radius = 1.0);
DomainSpec make_tensorized(const DomainSpec& base, double length);
DomainSpec scaled(const DomainSpec& d, double alpha);

// Builds a domain from {"kind": ..., params..., "tags": {...}}.
DomainSpec make_domain(const nlohmann::json& params);
nlohmann::json to_json(const DomainSpec& d);

double polygon_area(const std::vector<Vec2>& v);
double polygon_perimeter(const std::vector<Vec2>& v);
bool polygon_is_simple(const std::vector<Vec2>& v);
double polygon_diameter(const std::vector<Vec2>& v);
bool point_in_polygon(const std::vector<Vec2>& v, Vec2 p);
double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);

// Largest ball inside the polygon whose distance is measured to the Robin
// edges only, so symmetry cuts tagged Neumann do not shrink it.
double in_radius(const DomainSpec& p, double tol = -1.0);

// Default spacing is diameter/2000.
double hausdorff_distance(const DomainSpec& a, const DomainSpec& b,
                          double spacing = -1.0);
double dist(const DomainSpec& a, const DomainSpec& b, double c1 = 1.0,
            double c2 = 1.0, double spacing = -1.0);
double feat2(const DomainSpec& d);
GeometryFeatures features(const DomainSpec& d, double c1 = 1.0,
                          double c2 = 1.0);

// Half tooth of a gear with n half teeth: the cell spans the angle
// theta = pi/n, the tooth tip of radius 1 covers [0, theta/2] and the root
// of radius 1 - delta covers [theta/2, theta], delta = theta^q. The two
// radial cuts are Neumann edges.
DomainSpec gear_halftooth(int n, double q, int arc_segments = 8);
// Full gear built from 2n mirrored half teeth.
DomainSpec gear_full(int n, double q, int arc_segments = 8);

}  // namespace dunk
