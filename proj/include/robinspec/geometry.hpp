// Boundary geometry of the supported domains: curvature, outward normals,
// support function, and quadrature summaries (volume, area, max mean
// curvature).
#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "robinspec/domain.hpp"
#include "robinspec/numerics.hpp"

namespace robinspec {

// Volume of the unit ball in `dim` dimensions.
inline double unit_ball_volume(int dim) {
  return std::pow(kPi, 0.5 * dim) / std::tgamma(0.5 * dim + 1.0);
}

struct GeometrySummary {
  double volume = 0.0;
  double boundary_area = 0.0;
  double h_max = 0.0;
  std::vector<std::pair<double, double>> h_samples;  // (boundary param, H)
  std::vector<std::pair<double, double>> p_samples;  // (boundary param, s.n(s))
  int quadrature_n = 0;
  bool converged = true;
  double refinement_delta = 0.0;  // max relative change when doubling n
};

// ---------------------------------------------------------------------------
// Star2D: boundary s(theta) = r(theta) (cos theta, sin theta).

// Planar curvature, positive for a convex boundary with outward normal
// (circle of radius R gives +1/R).
inline double curvature_star2d(const DomainSpec& spec, double theta) {
  if (spec.kind != DomainKind::Star2D)
    throw std::invalid_argument("curvature_star2d: spec is not star2d");
  double r = spec.radial.eval(theta);
  double r1 = spec.radial.eval(theta, 1);
  double r2 = spec.radial.eval(theta, 2);
  double g = r * r + r1 * r1;
  return (r * r + 2.0 * r1 * r1 - r * r2) / (g * std::sqrt(g));
}

inline std::array<double, 2> boundary_point_star2d(const DomainSpec& spec,
                                                   double theta) {
  double r = spec.radial.eval(theta);
  return {r * std::cos(theta), r * std::sin(theta)};
}

// Outward unit normal (tangent rotated by -pi/2 for the CCW parametrization).
inline std::array<double, 2> outward_normal_star2d(const DomainSpec& spec,
                                                   double theta) {
  double r = spec.radial.eval(theta);
  double r1 = spec.radial.eval(theta, 1);
  double c = std::cos(theta), s = std::sin(theta);
  double tx = r1 * c - r * s;
  double ty = r1 * s + r * c;
  double len = std::hypot(tx, ty);
  return {ty / len, -tx / len};
}

// Arc-length element |s'(theta)|.
inline double speed_star2d(const DomainSpec& spec, double theta) {
  double r = spec.radial.eval(theta);
  double r1 = spec.radial.eval(theta, 1);
  return std::hypot(r, r1);
}

// Support function p = s.n(s); for a radial graph p = r^2 / sqrt(r^2 + r'^2).
inline double support_star2d(const DomainSpec& spec, double theta) {
  double r = spec.radial.eval(theta);
  double r1 = spec.radial.eval(theta, 1);
  return r * r / std::hypot(r, r1);
}

// ---------------------------------------------------------------------------
// Revolution3D: boundary X(u, phi) = R(u) (sin u cos phi, sin u sin phi, cos u)
// with polar angle u in [0, pi]. All curvature data depend on u only.

namespace detail {

// Meridian and parallel principal curvatures at polar angle u, with the
// parallel one switched to its pole limit (= meridian value) near the axis.
inline std::array<double, 2> principal_curvatures_revolution(
    const DomainSpec& spec, double u, double pole_band = 1e-6) {
  double R = spec.profile.eval(u);
  double R1 = spec.profile.eval(u, 1);
  double R2 = spec.profile.eval(u, 2);
  double g = R * R + R1 * R1;
  double km = (R * R + 2.0 * R1 * R1 - R * R2) / (g * std::sqrt(g));
  double su = std::sin(u);
  double kp;
  if (su < pole_band) {
    // Pole: smooth only when R' vanishes there; then kappa_parallel has the
    // same limit as the meridian curvature.
    double pole = u < 0.5 * kPi ? 0.0 : kPi;
    double R1_pole = spec.profile.eval(pole, 1);
    if (std::abs(R1_pole) > 1e-8 * (std::abs(R) + 1.0))
      throw std::invalid_argument(
          "revolution: profile meets the axis at a nonzero angle (conical "
          "pole)");
    kp = km;
  } else {
    kp = (R * su - R1 * std::cos(u)) / (R * su * std::sqrt(g));
  }
  return {km, kp};
}

}  // namespace detail

// Mean curvature H = (kappa_meridian + kappa_parallel) / 2 at polar angle u.
// The azimuth is irrelevant by symmetry and accepted for interface parity.
inline double mean_curvature_revolution(const DomainSpec& spec, double u,
                                        double /*azimuth*/ = 0.0) {
  if (spec.kind != DomainKind::Revolution3D)
    throw std::invalid_argument("mean_curvature_revolution: wrong kind");
  auto k = detail::principal_curvatures_revolution(spec, u);
  return 0.5 * (k[0] + k[1]);
}

inline double support_revolution(const DomainSpec& spec, double u) {
  double R = spec.profile.eval(u);
  double R1 = spec.profile.eval(u, 1);
  return R * R / std::hypot(R, R1);
}

// ---------------------------------------------------------------------------
// Mean curvature as a function of the boundary parameter, for the kinds with
// a one-dimensional parameter space.
inline double mean_curvature(const DomainSpec& spec, double param) {
  switch (spec.kind) {
    case DomainKind::Star2D: return curvature_star2d(spec, param);
    case DomainKind::Revolution3D: return mean_curvature_revolution(spec, param);
    case DomainKind::Ball: return 1.0 / spec.radius;
    case DomainKind::Shell:
      // param <= 0: inner sphere (outward normal points to the center),
      // param > 0: outer sphere.
      return param > 0.0 ? 1.0 / spec.outer : -1.0 / spec.inner;
  }
  throw std::logic_error("unreachable");
}

namespace detail {

// Dense scan of H over [lo, hi) (periodic) or [lo, hi] followed by
// golden-section refinement around the best sample.
template <class F>
double maximize_scan(const F& f, double lo, double hi, int samples,
                     bool periodic) {
  int n = samples < 8 ? 8 : samples;
  double best_x = lo, best = f(lo);
  int last = periodic ? n - 1 : n;
  double h = (hi - lo) / n;
  for (int i = 1; i <= last; ++i) {
    double x = lo + i * h;
    double v = f(x);
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  double a = best_x - h, b = best_x + h;
  if (!periodic) {
    if (a < lo) a = lo;
    if (b > hi) b = hi;
  }
  auto [xm, vm] = golden_max(f, a, b, 1e-12);
  (void)xm;
  return vm > best ? vm : best;
}

struct SummaryNumbers {
  double volume = 0.0;
  double area = 0.0;
};

inline SummaryNumbers star2d_numbers(const DomainSpec& spec, int n) {
  SummaryNumbers out;
  out.volume = 0.5 * trapezoid_periodic(
                         [&](double t) {
                           double r = spec.radial.eval(t);
                           return r * r;
                         },
                         n);
  out.area = trapezoid_periodic([&](double t) { return speed_star2d(spec, t); }, n);
  return out;
}

inline SummaryNumbers revolution_numbers(const DomainSpec& spec, int n) {
  SummaryNumbers out;
  QuadratureRule rule = gauss_legendre(n, 0.0, kPi);
  out.volume = (kTwoPi / 3.0) * integrate(rule, [&](double u) {
                 double R = spec.profile.eval(u);
                 return R * R * R * std::sin(u);
               });
  out.area = kTwoPi * integrate(rule, [&](double u) {
               double R = spec.profile.eval(u);
               double R1 = spec.profile.eval(u, 1);
               return R * std::sin(u) * std::hypot(R, R1);
             });
  return out;
}

}  // namespace detail

// Volume, boundary area and H_max by quadrature (closed forms for the radial
// kinds). Doubling quadrature_n is used as the convergence probe.
inline GeometrySummary geometry_summary(const DomainSpec& spec, int quadrature_n) {
  if (quadrature_n < 16)
    throw std::invalid_argument("geometry_summary: quadrature_n < 16");
  spec.validate();

  GeometrySummary out;
  out.quadrature_n = quadrature_n;

  switch (spec.kind) {
    case DomainKind::Ball: {
      double w = unit_ball_volume(spec.dim);
      out.volume = w * std::pow(spec.radius, spec.dim);
      out.boundary_area = spec.dim * w * std::pow(spec.radius, spec.dim - 1);
      out.h_max = 1.0 / spec.radius;
      out.h_samples = {{0.0, out.h_max}};
      out.p_samples = {{0.0, spec.radius}};
      return out;
    }
    case DomainKind::Shell: {
      double w = unit_ball_volume(spec.dim);
      out.volume =
          w * (std::pow(spec.outer, spec.dim) - std::pow(spec.inner, spec.dim));
      out.boundary_area = spec.dim * w *
                          (std::pow(spec.outer, spec.dim - 1) +
                           std::pow(spec.inner, spec.dim - 1));
      out.h_max = 1.0 / spec.outer;
      out.h_samples = {{-1.0, -1.0 / spec.inner}, {1.0, 1.0 / spec.outer}};
      return out;
    }
    case DomainKind::Star2D: {
      auto coarse = detail::star2d_numbers(spec, quadrature_n);
      auto fine = detail::star2d_numbers(spec, 2 * quadrature_n);
      out.volume = fine.volume;
      out.boundary_area = fine.area;
      out.refinement_delta =
          std::max(std::abs(fine.volume - coarse.volume) / std::abs(fine.volume),
                   std::abs(fine.area - coarse.area) / std::abs(fine.area));
      out.converged = out.refinement_delta < 1e-10;
      out.h_max = detail::maximize_scan(
          [&](double t) { return curvature_star2d(spec, t); }, 0.0, kTwoPi,
          4 * quadrature_n, true);
      for (int i = 0; i < quadrature_n; ++i) {
        double t = kTwoPi * i / quadrature_n;
        out.h_samples.emplace_back(t, curvature_star2d(spec, t));
        out.p_samples.emplace_back(t, support_star2d(spec, t));
      }
      return out;
    }
    case DomainKind::Revolution3D: {
      auto coarse = detail::revolution_numbers(spec, quadrature_n);
      auto fine = detail::revolution_numbers(spec, 2 * quadrature_n);
      out.volume = fine.volume;
      out.boundary_area = fine.area;
      out.refinement_delta =
          std::max(std::abs(fine.volume - coarse.volume) / std::abs(fine.volume),
                   std::abs(fine.area - coarse.area) / std::abs(fine.area));
      out.converged = out.refinement_delta < 1e-10;
      out.h_max = detail::maximize_scan(
          [&](double u) { return mean_curvature_revolution(spec, u); }, 0.0, kPi,
          4 * quadrature_n, false);
      for (int i = 0; i <= quadrature_n; ++i) {
        double u = kPi * i / quadrature_n;
        out.h_samples.emplace_back(u, mean_curvature_revolution(spec, u));
        out.p_samples.emplace_back(u, support_revolution(spec, u));
      }
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace robinspec
