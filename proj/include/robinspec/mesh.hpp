// Structured polar triangulations of star-shaped 2D domains with a
// geometrically graded radial coordinate toward the boundary (the Robin
// ground state decays like e^{-alpha t} off the boundary).
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "robinspec/domain.hpp"
#include "robinspec/numerics.hpp"

namespace robinspec {

struct BoundaryEdge {
  int a = 0, b = 0;   // vertex indices, CCW order
  double param_mid = 0.0;  // boundary parameter (theta) at the edge midpoint
};

struct MeshGrading {
  int n_angular = 0;
  int n_radial = 0;      // uniform intervals inside the graded collar
  double layer_ratio = 0.5;  // q in (0,1)
  int layers = 0;
};

struct Mesh2D {
  std::vector<std::array<double, 2>> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<BoundaryEdge> boundary_edges;
  MeshGrading grading;

  double triangle_area(int t) const {
    const auto& tri = triangles[t];
    const auto& p0 = vertices[tri[0]];
    const auto& p1 = vertices[tri[1]];
    const auto& p2 = vertices[tri[2]];
    return 0.5 * ((p1[0] - p0[0]) * (p2[1] - p0[1]) -
                  (p2[0] - p0[0]) * (p1[1] - p0[1]));
  }

  double total_area() const {
    double s = 0.0;
    for (std::size_t t = 0; t < triangles.size(); ++t)
      s += triangle_area(static_cast<int>(t));
    return s;
  }

  double boundary_length() const {
    double s = 0.0;
    for (const auto& e : boundary_edges)
      s += std::hypot(vertices[e.b][0] - vertices[e.a][0],
                      vertices[e.b][1] - vertices[e.a][1]);
    return s;
  }

  // Counts distinct edges; V - E + F must be 1 for a disk-type mesh.
  long euler_characteristic() const {
    std::map<std::pair<int, int>, int> edges;
    for (const auto& t : triangles)
      for (int i = 0; i < 3; ++i) {
        int a = t[i], b = t[(i + 1) % 3];
        edges[{std::min(a, b), std::max(a, b)}]++;
      }
    return static_cast<long>(vertices.size()) - static_cast<long>(edges.size()) +
           static_cast<long>(triangles.size());
  }
};

// Radial node fractions in [0, 1]: a uniform block on [0, q^layers] followed
// by geometric widths (1-q) q^i, coarse to fine, so the finest layer next to
// the boundary has thickness (1-q) q^{layers-1}.
inline std::vector<double> graded_fractions(int n_radial, double q, int layers) {
  if (n_radial < 1 || layers < 1 || !(q > 0.0) || !(q < 1.0))
    throw std::invalid_argument("graded_fractions: bad grading parameters");
  std::vector<double> f;
  double core = std::pow(q, layers);
  for (int i = 0; i <= n_radial; ++i) f.push_back(core * i / n_radial);
  for (int i = 1; i < layers; ++i) f.push_back(core + 1.0 - std::pow(q, i));
  f.push_back(1.0);
  return f;
}

inline std::vector<double> midpoint_refine(const std::vector<double>& f) {
  std::vector<double> out;
  out.reserve(2 * f.size());
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    out.push_back(f[i]);
    out.push_back(0.5 * (f[i] + f[i + 1]));
  }
  out.push_back(f.back());
  return out;
}

// Structured triangulation from explicit radial fractions (f[0] = 0 exact,
// f.back() = 1). Ring vertices sit on t * r(theta); the origin is a fan.
inline Mesh2D build_mesh_from_fractions(const DomainSpec& spec, int n_angular,
                                        const std::vector<double>& fractions) {
  if (spec.kind != DomainKind::Star2D)
    throw std::invalid_argument("build_mesh: spec is not star2d");
  spec.validate();
  if (n_angular < 16) throw std::invalid_argument("build_mesh: n_angular < 16");
  if (fractions.size() < 2 || fractions.front() != 0.0 || fractions.back() != 1.0)
    throw std::invalid_argument("build_mesh: bad fraction vector");

  Mesh2D mesh;
  mesh.grading.n_angular = n_angular;
  const int nr = static_cast<int>(fractions.size()) - 1;  // rings
  mesh.vertices.reserve(1 + static_cast<std::size_t>(nr) * n_angular);
  mesh.vertices.push_back({0.0, 0.0});
  for (int j = 1; j <= nr; ++j) {
    double t = fractions[j];
    for (int i = 0; i < n_angular; ++i) {
      double theta = kTwoPi * i / n_angular;
      double r = t * spec.radial.eval(theta);
      mesh.vertices.push_back({r * std::cos(theta), r * std::sin(theta)});
    }
  }
  auto ring = [&](int j, int i) {  // j >= 1
    return 1 + (j - 1) * n_angular + (i % n_angular);
  };
  for (int i = 0; i < n_angular; ++i)
    mesh.triangles.push_back({0, ring(1, i), ring(1, i + 1)});
  for (int j = 1; j < nr; ++j) {
    for (int i = 0; i < n_angular; ++i) {
      int inner_i = ring(j, i), inner_ip = ring(j, i + 1);
      int outer_i = ring(j + 1, i), outer_ip = ring(j + 1, i + 1);
      mesh.triangles.push_back({inner_i, outer_i, outer_ip});
      mesh.triangles.push_back({inner_i, outer_ip, inner_ip});
    }
  }
  for (int i = 0; i < n_angular; ++i) {
    BoundaryEdge e;
    e.a = ring(nr, i);
    e.b = ring(nr, i + 1);
    e.param_mid = kTwoPi * (i + 0.5) / n_angular;
    mesh.boundary_edges.push_back(e);
  }
  return mesh;
}

inline Mesh2D build_mesh(const DomainSpec& spec, int n_angular, int n_radial,
                         double layer_ratio, int layers) {
  if (n_radial < 4) throw std::invalid_argument("build_mesh: n_radial < 4");
  Mesh2D mesh = build_mesh_from_fractions(
      spec, n_angular, graded_fractions(n_radial, layer_ratio, layers));
  mesh.grading.n_radial = n_radial;
  mesh.grading.layer_ratio = layer_ratio;
  mesh.grading.layers = layers;
  return mesh;
}

// Quadrisection by edge midpoints. Purely geometric, so the refined P1 space
// contains the coarse one (the polygonal domain is unchanged).
inline Mesh2D refine_uniform(const Mesh2D& mesh) {
  Mesh2D out;
  out.vertices = mesh.vertices;
  out.grading = mesh.grading;
  out.grading.n_angular *= 2;
  std::map<std::pair<int, int>, int> midpoint;
  auto mid = [&](int a, int b) {
    auto key = std::make_pair(std::min(a, b), std::max(a, b));
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    int idx = static_cast<int>(out.vertices.size());
    out.vertices.push_back({0.5 * (mesh.vertices[a][0] + mesh.vertices[b][0]),
                            0.5 * (mesh.vertices[a][1] + mesh.vertices[b][1])});
    midpoint.emplace(key, idx);
    return idx;
  };
  for (const auto& t : mesh.triangles) {
    int m01 = mid(t[0], t[1]), m12 = mid(t[1], t[2]), m20 = mid(t[2], t[0]);
    out.triangles.push_back({t[0], m01, m20});
    out.triangles.push_back({m01, t[1], m12});
    out.triangles.push_back({m20, m12, t[2]});
    out.triangles.push_back({m01, m12, m20});
  }
  for (const auto& e : mesh.boundary_edges) {
    int m = mid(e.a, e.b);
    out.boundary_edges.push_back({e.a, m, e.param_mid});
    out.boundary_edges.push_back({m, e.b, e.param_mid});
  }
  return out;
}

// Debug dump: {"vertices": [[x,y],...], "triangles": [[a,b,c],...]}.
inline nlohmann::json mesh_to_json(const Mesh2D& mesh) {
  nlohmann::json j;
  j["vertices"] = nlohmann::json::array();
  for (const auto& v : mesh.vertices) j["vertices"].push_back({v[0], v[1]});
  j["triangles"] = nlohmann::json::array();
  for (const auto& t : mesh.triangles) j["triangles"].push_back({t[0], t[1], t[2]});
  return j;
}

}  // namespace robinspec
