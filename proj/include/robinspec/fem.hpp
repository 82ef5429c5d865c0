// P1 finite elements for the Robin quadratic form
//   q(u,u) = int_Omega |grad u|^2 - alpha int_S |u|^2,
// assembled exactly per triangle / boundary edge, plus a shift-invert
// subspace eigensolver for the generalized problem (K - alpha B) x = E M x
// and a Richardson ladder driver.
#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "robinspec/geometry.hpp"
#include "robinspec/mesh.hpp"
#include "robinspec/spectral_result.hpp"

namespace robinspec {

struct AssembledSystem {
  Eigen::SparseMatrix<double> stiffness;      // int grad u . grad v
  Eigen::SparseMatrix<double> mass;           // int u v
  Eigen::SparseMatrix<double> boundary_mass;  // int_S u v
  int n = 0;
};

inline AssembledSystem assemble(const Mesh2D& mesh) {
  const int n = static_cast<int>(mesh.vertices.size());
  std::vector<Eigen::Triplet<double>> tk, tm, tb;
  tk.reserve(9 * mesh.triangles.size());
  tm.reserve(9 * mesh.triangles.size());
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    const auto& p0 = mesh.vertices[tri[0]];
    const auto& p1 = mesh.vertices[tri[1]];
    const auto& p2 = mesh.vertices[tri[2]];
    double det = (p1[0] - p0[0]) * (p2[1] - p0[1]) -
                 (p2[0] - p0[0]) * (p1[1] - p0[1]);
    if (!(det > 0.0))
      throw std::runtime_error("assemble: degenerate triangle " + std::to_string(t));
    double area = 0.5 * det;
    // gradients of the barycentric hats: b_i = rot90(opposite edge) / det
    double gx[3] = {(p1[1] - p2[1]) / det, (p2[1] - p0[1]) / det,
                    (p0[1] - p1[1]) / det};
    double gy[3] = {(p2[0] - p1[0]) / det, (p0[0] - p2[0]) / det,
                    (p1[0] - p0[0]) / det};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        tk.emplace_back(tri[i], tri[j], area * (gx[i] * gx[j] + gy[i] * gy[j]));
        tm.emplace_back(tri[i], tri[j], area / 12.0 * (i == j ? 2.0 : 1.0));
      }
  }
  for (const auto& e : mesh.boundary_edges) {
    double len = std::hypot(mesh.vertices[e.b][0] - mesh.vertices[e.a][0],
                            mesh.vertices[e.b][1] - mesh.vertices[e.a][1]);
    int v[2] = {e.a, e.b};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        tb.emplace_back(v[i], v[j], len / 6.0 * (i == j ? 2.0 : 1.0));
  }
  AssembledSystem sys;
  sys.n = n;
  sys.stiffness.resize(n, n);
  sys.mass.resize(n, n);
  sys.boundary_mass.resize(n, n);
  sys.stiffness.setFromTriplets(tk.begin(), tk.end());
  sys.mass.setFromTriplets(tm.begin(), tm.end());
  sys.boundary_mass.setFromTriplets(tb.begin(), tb.end());
  return sys;
}

struct FemSolveOptions {
  double shift = 0.0;          // 0: derive from alpha and inradius_estimate
  double inradius_estimate = 0.0;  // 0: estimate from the mass total
  double rel_tol = 1e-8;
  int max_iter = 400;
  unsigned seed = 12345;
};

struct FemEigenResult {
  std::vector<double> eigenvalues;
  Eigen::MatrixXd eigenvectors;  // columns, M-orthonormal
  std::vector<double> residuals;
  bool converged = true;
  int iterations = 0;
};

// Lowest eigenpairs of (K - alpha B) x = E M x by shift-invert subspace
// iteration with a sparse LDLT at a shift strictly below the spectrum
// (checked through the factorization inertia).
inline FemEigenResult solve_lowest(const AssembledSystem& sys, double alpha,
                                   int count, FemSolveOptions opt = {}) {
  if (alpha < 0.0) throw std::invalid_argument("solve_lowest: alpha < 0");
  if (count < 1) throw std::invalid_argument("solve_lowest: count < 1");
  const int n = sys.n;
  Eigen::SparseMatrix<double> A = sys.stiffness - alpha * sys.boundary_mass;

  double rho = opt.inradius_estimate;
  if (!(rho > 0.0)) {
    double area = sys.mass.sum();
    rho = 0.5 * std::sqrt(area / kPi);
  }
  double sigma = opt.shift != 0.0 ? opt.shift : -(alpha + 2.0 / rho) * (alpha + 2.0 / rho);

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
  bool factored = false;
  for (int attempt = 0; attempt < 40 && !factored; ++attempt) {
    Eigen::SparseMatrix<double> shifted = A - sigma * sys.mass;
    ldlt.compute(shifted);
    if (ldlt.info() == Eigen::Success && (ldlt.vectorD().array() > 0.0).all()) {
      factored = true;
    } else {
      sigma *= attempt < 20 ? 1.01 : 2.0;  // move further below the spectrum
    }
  }
  if (!factored) throw std::runtime_error("solve_lowest: factorization failed");

  const int m = std::min(n, std::max(count + 3, 6));
  std::mt19937 rng(opt.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd X(n, m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < n; ++i) X(i, j) = gauss(rng);

  auto m_orthonormalize = [&](Eigen::MatrixXd& V) {
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j < V.cols(); ++j) {
        Eigen::VectorXd mv = sys.mass * V.col(j);
        for (int i = 0; i < j; ++i)
          V.col(j) -= (V.col(i).dot(sys.mass * V.col(j))) * V.col(i);
        mv = sys.mass * V.col(j);
        double nrm = std::sqrt(V.col(j).dot(mv));
        if (nrm > 0.0) V.col(j) /= nrm;
      }
    }
  };
  m_orthonormalize(X);

  FemEigenResult out;
  Eigen::VectorXd theta(m);
  for (int it = 1; it <= opt.max_iter; ++it) {
    Eigen::MatrixXd Y(n, m);
    for (int j = 0; j < m; ++j) Y.col(j) = ldlt.solve(sys.mass * X.col(j));
    m_orthonormalize(Y);
    Eigen::MatrixXd Ap = Y.transpose() * (A * Y);
    Eigen::MatrixXd Mp = Y.transpose() * (sys.mass * Y);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(Ap, Mp);
    X = Y * es.eigenvectors();
    theta = es.eigenvalues();

    out.iterations = it;
    bool done = true;
    out.residuals.assign(count, 0.0);
    for (int j = 0; j < count; ++j) {
      Eigen::VectorXd mx = sys.mass * X.col(j);
      Eigen::VectorXd r = A * X.col(j) - theta(j) * mx;
      double proxy = r.norm() / mx.norm();
      out.residuals[j] = proxy;
      if (proxy > opt.rel_tol * std::max(std::abs(theta(j)), 1.0)) done = false;
    }
    if (done) break;
    if (it == opt.max_iter) out.converged = false;
  }
  out.eigenvalues.assign(theta.data(), theta.data() + count);
  out.eigenvectors = X.leftCols(count);
  return out;
}

struct FemPreset {
  int n_angular = 64;
  int n_radial = 6;
  double layer_ratio = 0.7;
  int layers = 0;     // 0: derived from alpha
  int levels = 4;     // ladder depth, ratio-2 refinement
};

// Layers so the finest layer is below 1/(4 alpha) and at least 6 layers sit
// inside t <= 3/alpha (relative to the local radius).
inline int layers_for_alpha(double alpha, double q = 0.7) {
  double want_fine = std::log(1.0 / (4.0 * std::max(alpha, 1.0))) / std::log(q);
  double want_depth = 6.0 + std::log(std::max(alpha, 3.0) / 3.0) / std::log(1.0 / q);
  int L = static_cast<int>(std::ceil(std::max(want_fine, want_depth)));
  return std::max(L, 7);
}

inline FemPreset fem_preset(const std::string& name) {
  if (name == "coarse") return {48, 4, 0.7, 0, 3};
  if (name == "fine") return {64, 6, 0.7, 0, 4};
  if (name == "extra-fine") return {96, 8, 0.7, 0, 4};
  throw std::invalid_argument("unknown mesh preset: " + name);
}

struct FemLadderResult {
  std::vector<SpectralResult> results;           // extrapolated, j = 1..count
  std::vector<std::vector<double>> raw_levels;   // eigenvalues per level
  std::vector<double> observed_order;            // per j, from the last triple
  bool monotone = true;
};

// Solves on a ratio-2 mesh ladder and Richardson-extrapolates assuming an
// O(h^2) eigenvalue error; err_est is extrapolated-minus-finest.
inline FemLadderResult refine_and_extrapolate(const DomainSpec& spec, double alpha,
                                              int count, FemPreset preset = {},
                                              const std::string& domain_id = "star2d") {
  if (preset.levels < 3)
    throw std::invalid_argument("refine_and_extrapolate: need >= 3 ladder levels");
  int layers = preset.layers > 0 ? preset.layers : layers_for_alpha(alpha, preset.layer_ratio);
  std::vector<double> fractions =
      graded_fractions(preset.n_radial, preset.layer_ratio, layers);

  double inradius = 1e300;
  for (int i = 0; i < 256; ++i)
    inradius = std::min(inradius, support_star2d(spec, kTwoPi * i / 256.0));

  FemLadderResult out;
  int n_ang = preset.n_angular;
  bool all_converged = true;
  for (int lvl = 0; lvl < preset.levels; ++lvl) {
    Mesh2D mesh = build_mesh_from_fractions(spec, n_ang, fractions);
    AssembledSystem sys = assemble(mesh);
    FemSolveOptions opt;
    opt.inradius_estimate = inradius;
    FemEigenResult eig = solve_lowest(sys, alpha, count, opt);
    all_converged = all_converged && eig.converged;
    out.raw_levels.push_back(eig.eigenvalues);
    n_ang *= 2;
    fractions = midpoint_refine(fractions);
  }

  int L = preset.levels;
  for (int j = 0; j < count; ++j) {
    double e0 = out.raw_levels[L - 3][j];
    double e1 = out.raw_levels[L - 2][j];
    double e2 = out.raw_levels[L - 1][j];
    double d1 = e1 - e0, d2 = e2 - e1;
    bool monotone = d1 * d2 > 0.0;
    SpectralResult r;
    r.domain_id = domain_id;
    r.alpha = alpha;
    r.j = j + 1;
    r.method = SpectralMethod::Fem2D;
    r.disc = "nang=" + std::to_string(preset.n_angular) + ";nrad=" +
             std::to_string(preset.n_radial) + ";q=" + format_double(preset.layer_ratio) +
             ";layers=" + std::to_string(layers) + ";levels=" + std::to_string(L);
    if (monotone) {
      r.E = e2 + (e2 - e1) / 3.0;
      r.err_est = std::abs(r.E - e2);
      out.observed_order.push_back(std::log2(std::abs(d1 / d2)));
    } else {
      r.E = e2;
      r.err_est = 2.0 * std::max(std::abs(d1), std::abs(d2));
      r.flagged = true;
      out.monotone = false;
      out.observed_order.push_back(0.0);
    }
    if (!all_converged) r.flagged = true;
    out.results.push_back(r);
  }
  return out;
}

}  // namespace robinspec
