// Executable forms of the geometric identities and inequalities behind the
// H_max minimization problem: the divergence identity Vol = (1/nu) int p dS,
// the Minkowski formula Area = int p H dS, the lower bound
// H_max >= (Vol B_nu / Vol)^{1/nu} with its equality case, and the
// area-preserving perturbation that strictly reduces H_max on non-balls.
#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "robinspec/geometry.hpp"

namespace robinspec {

// p(s) = s . n(s) at the given boundary parameter (theta for Star2D, polar
// angle for Revolution3D). Requires the origin inside the domain, which the
// radial-graph data model guarantees.
inline double support_function(const DomainSpec& spec, double param) {
  switch (spec.kind) {
    case DomainKind::Star2D: return support_star2d(spec, param);
    case DomainKind::Revolution3D: return support_revolution(spec, param);
    default:
      throw std::invalid_argument("support_function: star2d or revolution only");
  }
}

struct GeomCheck {
  std::string check;
  std::string domain_id;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual_or_margin = 0.0;
  int quadrature_n = 0;
  bool pass = false;
};

namespace geominequal_detail {

// int_S p dS and int_S p H dS for each kind.
struct SupportIntegrals {
  double p_ds = 0.0;
  double ph_ds = 0.0;
};

inline SupportIntegrals support_integrals(const DomainSpec& spec, int n) {
  SupportIntegrals out;
  switch (spec.kind) {
    case DomainKind::Star2D:
      out.p_ds = trapezoid_periodic(
          [&](double t) { return support_star2d(spec, t) * speed_star2d(spec, t); }, n);
      out.ph_ds = trapezoid_periodic(
          [&](double t) {
            return support_star2d(spec, t) * curvature_star2d(spec, t) *
                   speed_star2d(spec, t);
          },
          n);
      return out;
    case DomainKind::Revolution3D: {
      QuadratureRule rule = gauss_legendre(n, 0.0, kPi);
      auto area_el = [&](double u) {
        double R = spec.profile.eval(u);
        double R1 = spec.profile.eval(u, 1);
        return kTwoPi * R * std::sin(u) * std::hypot(R, R1);
      };
      out.p_ds = integrate(rule, [&](double u) {
        return support_revolution(spec, u) * area_el(u);
      });
      out.ph_ds = integrate(rule, [&](double u) {
        return support_revolution(spec, u) * mean_curvature_revolution(spec, u) *
               area_el(u);
      });
      return out;
    }
    case DomainKind::Ball: {
      double w = unit_ball_volume(spec.dim);
      double area = spec.dim * w * std::pow(spec.radius, spec.dim - 1);
      out.p_ds = spec.radius * area;
      out.ph_ds = area;
      return out;
    }
    case DomainKind::Shell: {
      double w = unit_ball_volume(spec.dim);
      double area_out = spec.dim * w * std::pow(spec.outer, spec.dim - 1);
      double area_in = spec.dim * w * std::pow(spec.inner, spec.dim - 1);
      // p = b on the outer sphere, -a on the inner (outward normal points
      // toward the center there); H = 1/b and -1/a respectively.
      out.p_ds = spec.outer * area_out - spec.inner * area_in;
      out.ph_ds = area_out + area_in;
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace geominequal_detail

// |Vol - (1/nu) int p dS| / Vol.
inline GeomCheck check_divergence_identity(const DomainSpec& spec, int quadrature_n,
                                           const std::string& domain_id = "domain") {
  GeometrySummary g = geometry_summary(spec, quadrature_n);
  auto ints = geominequal_detail::support_integrals(spec, quadrature_n);
  GeomCheck c;
  c.check = "divergence";
  c.domain_id = domain_id;
  c.lhs = g.volume;
  c.rhs = ints.p_ds / spec.dim;
  c.residual_or_margin = std::abs(c.lhs - c.rhs) / std::abs(c.lhs);
  c.quadrature_n = quadrature_n;
  c.pass = c.residual_or_margin < 1e-8;
  return c;
}

// |Area - int p H dS| / Area.
inline GeomCheck check_minkowski(const DomainSpec& spec, int quadrature_n,
                                 const std::string& domain_id = "domain") {
  GeometrySummary g = geometry_summary(spec, quadrature_n);
  auto ints = geominequal_detail::support_integrals(spec, quadrature_n);
  GeomCheck c;
  c.check = "minkowski";
  c.domain_id = domain_id;
  c.lhs = g.boundary_area;
  c.rhs = ints.ph_ds;
  c.residual_or_margin = std::abs(c.lhs - c.rhs) / std::abs(c.lhs);
  c.quadrature_n = quadrature_n;
  c.pass = c.residual_or_margin < 1e-8;
  return c;
}

struct HmaxBoundReport {
  double lhs = 0.0;       // H_max
  double rhs_ball = 0.0;  // (Vol B_nu / Vol)^{1/nu}
  double rhs_area = 0.0;  // (1/nu) Area / Vol, the intermediate bound
  double margin = 0.0;    // lhs - rhs_ball
};

// H_max >= (Vol B_nu / Vol)^{1/nu}, with equality only for balls; the
// intermediate bound H_max >= (1/nu) Area/Vol is reported alongside.
inline HmaxBoundReport check_hmax_bound(const DomainSpec& spec, int quadrature_n = 256) {
  GeometrySummary g = geometry_summary(spec, quadrature_n);
  HmaxBoundReport rep;
  rep.lhs = g.h_max;
  rep.rhs_ball = std::pow(unit_ball_volume(spec.dim) / g.volume, 1.0 / spec.dim);
  rep.rhs_area = g.boundary_area / (spec.dim * g.volume);
  rep.margin = rep.lhs - rep.rhs_ball;
  return rep;
}

inline GeomCheck hmax_bound_as_check(const DomainSpec& spec, int quadrature_n,
                                     const std::string& domain_id = "domain") {
  HmaxBoundReport rep = check_hmax_bound(spec, quadrature_n);
  GeomCheck c;
  c.check = "hmax-bound";
  c.domain_id = domain_id;
  c.lhs = rep.lhs;
  c.rhs = rep.rhs_ball;
  c.residual_or_margin = rep.margin;
  c.quadrature_n = quadrature_n;
  c.pass = rep.margin >= -1e-10;
  return c;
}

namespace geominequal_detail {

// C^3 bump, max 1, support [-1, 1].
inline double bump(double x) {
  if (std::abs(x) >= 1.0) return 0.0;
  double y = 1.0 - x * x;
  return y * y * y * y;
}

}  // namespace geominequal_detail

struct PerturbOptions {
  int harmonics = 48;      // Fourier cap of the perturbed radius
  int scan_n = 2048;       // curvature sampling for the checks
  int quadrature_n = 512;  // area quadrature
  int max_halvings = 20;
};

// The area-preserving H_max-reducing step on a non-circular Star2D domain:
// carve a shallow smooth dent in a low-curvature window, project back onto
// a finite Fourier series, and rescale to the original area. Fails
// (invalid_argument) on circles, where H is constant.
inline DomainSpec perturb_reduce_hmax(const DomainSpec& spec, double eps,
                                      PerturbOptions opt = {}) {
  if (spec.kind != DomainKind::Star2D)
    throw std::invalid_argument("perturb_reduce_hmax: star2d only");
  spec.validate();
  if (!(eps > 0.0)) throw std::invalid_argument("perturb_reduce_hmax: eps <= 0");

  const int n = opt.scan_n;
  std::vector<double> kappa(n);
  double kappa_min = 1e300, kappa_max = -1e300, kappa_mean = 0.0;
  double theta_min = 0.0, theta_max = 0.0, r_min = 1e300;
  for (int i = 0; i < n; ++i) {
    double t = kTwoPi * i / n;
    kappa[i] = curvature_star2d(spec, t);
    kappa_mean += kappa[i] / n;
    r_min = std::min(r_min, spec.radial.eval(t));
    if (kappa[i] > kappa_max) {
      kappa_max = kappa[i];
      theta_max = t;
    }
    if (kappa[i] < kappa_min) {
      kappa_min = kappa[i];
      theta_min = t;
    }
  }
  if (kappa_max - kappa_min <= 1e-6 * std::abs(kappa_mean))
    throw std::invalid_argument(
        "perturb_reduce_hmax: constant mean curvature (ball); no admissible "
        "perturbation");

  GeometrySummary g0 = geometry_summary(spec, opt.quadrature_n);
  const double h_max0 = g0.h_max;

  // Pick the dent center with the largest achievable reduction: depth
  // kappa-slack delta at the center, times the width of the contiguous
  // window staying below H_max - delta/2, with the bump depth capped by
  // delta * width^2 so the curvature perturbation stays of order delta.
  const double slack_all = h_max0 - kappa_min;
  double best_score = -1.0, theta_star = theta_min, width = 0.0, delta_star = 0.0;
  for (int i = 0; i < n; i += 4) {
    double delta = h_max0 - kappa[i];
    if (delta < 0.05 * slack_all) continue;
    double thr = h_max0 - 0.5 * delta;
    double w = 0.0;
    for (int s = 1; s <= n / 2; ++s) {
      if (kappa[(i + s) % n] > thr || kappa[(i - s + n) % n] > thr) break;
      w = kTwoPi * s / n;
    }
    double t_i = kTwoPi * i / n;
    double dist_max = std::abs(std::remainder(theta_max - t_i, kTwoPi));
    w = std::min({0.9 * w, 1.2, 0.6 * dist_max});
    if (w <= kTwoPi / n * 4.0) continue;
    double depth = std::min({eps, 0.25 * r_min, delta * w * w / 30.0});
    double score = depth * w;
    if (score > best_score) {
      best_score = score;
      theta_star = t_i;
      width = w;
      delta_star = delta;
    }
  }
  if (best_score <= 0.0)
    throw std::runtime_error("perturb_reduce_hmax: no admissible dent window");
  const double slack = delta_star;

  double e = std::min({eps, 0.25 * r_min, slack * width * width / 30.0});
  for (int attempt = 0; attempt <= opt.max_halvings; ++attempt, e *= 0.5) {
    auto dented = [&](double t) {
      double d = std::remainder(t - theta_star, kTwoPi);
      return spec.radial.eval(t) - e * geominequal_detail::bump(d / width);
    };
    int kcap = std::max({opt.harmonics, spec.radial.max_harmonic() + 8,
                         static_cast<int>(48.0 / width)});
    kcap = std::min(kcap, 360);
    DomainSpec cand = DomainSpec::star2d(fourier_fit(dented, kcap));
    try {
      cand.validate();
    } catch (const std::invalid_argument&) {
      continue;  // dent too deep
    }
    // a posteriori: over the bump support (and a margin for the Fourier
    // spill-over) the perturbed curvature must stay strictly below the old
    // maximum; outside it the curve is unchanged
    double window_max = -1e300;
    for (int i = -n / 4; i <= n / 4; ++i) {
      double t = theta_star + 1.2 * width * i / (n / 4);
      window_max = std::max(window_max, curvature_star2d(cand, t));
    }
    if (window_max > h_max0 - 0.02 * slack) continue;
    GeometrySummary gc = geometry_summary(cand, opt.quadrature_n);
    double lambda = std::sqrt(g0.volume / gc.volume);
    DomainSpec rescaled = cand.scaled(lambda);
    GeometrySummary gr = geometry_summary(rescaled, opt.quadrature_n);
    if (gr.h_max < h_max0 &&
        std::abs(gr.volume - g0.volume) < 1e-10 * g0.volume)
      return rescaled;
  }
  throw std::runtime_error(
      "perturb_reduce_hmax: no admissible eps found after halvings");
}

inline nlohmann::json to_json(const GeomCheck& c) {
  nlohmann::json j;
  j["check"] = c.check;
  j["domain_id"] = c.domain_id;
  j["lhs"] = c.lhs;
  j["rhs"] = c.rhs;
  j["residual_or_margin"] = c.residual_or_margin;
  j["quadrature_n"] = c.quadrature_n;
  j["pass"] = c.pass;
  return j;
}

}  // namespace robinspec
