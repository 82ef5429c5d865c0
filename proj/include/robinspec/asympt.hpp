// Extracts the two-term eigenvalue asymptotics E_j = -alpha^2 - c alpha + R
// from computed curves: the linear coefficient c by Richardson acceleration
// in alpha, the remainder exponent by a log-log slope, and curve-vs-curve
// comparison with an empirical crossing bracket.
#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "robinspec/spectral_result.hpp"

namespace robinspec {

struct AsymptoticFit {
  int j = 1;
  double c_hat = 0.0;
  double c_err = 0.0;
  double remainder_exponent_hat = 0.0;
  double exponent_err = 0.0;
  std::pair<double, double> alpha_window = {0.0, 0.0};
  int points_used = 0;
  std::string verdict = "ok";
};

namespace asympt_detail {

struct CurvePoint {
  double alpha, E, err;
};

inline std::vector<CurvePoint> curve_for_j(const std::vector<SpectralResult>& rows,
                                           int j) {
  std::vector<CurvePoint> pts;
  for (const auto& r : rows)
    if (r.j == j) pts.push_back({r.alpha, r.E, r.err_est});
  std::sort(pts.begin(), pts.end(),
            [](const CurvePoint& a, const CurvePoint& b) { return a.alpha < b.alpha; });
  return pts;
}

// One acceleration sweep assuming c(alpha) = c + D alpha^{p-1}; returns the
// estimate from the largest-alpha pair and its propagated uncertainty.
inline std::pair<double, double> accelerate(const std::vector<CurvePoint>& pts,
                                            double p) {
  std::size_t n = pts.size();
  auto c_of = [](const CurvePoint& q) { return -(q.E + q.alpha * q.alpha) / q.alpha; };
  auto dc_of = [](const CurvePoint& q) { return q.err / q.alpha; };
  const CurvePoint& lo = pts[n - 2];
  const CurvePoint& hi = pts[n - 1];
  if (std::abs(p - 1.0) < 1e-12)  // constant correction: no acceleration possible
    return {c_of(hi), dc_of(hi)};
  double rho = std::pow(hi.alpha / lo.alpha, p - 1.0);
  double w_hi = 1.0 / (1.0 - rho);
  double w_lo = -rho / (1.0 - rho);
  double c = w_hi * c_of(hi) + w_lo * c_of(lo);
  double dc = std::abs(w_hi) * dc_of(hi) + std::abs(w_lo) * dc_of(lo);
  return {c, dc};
}

}  // namespace asympt_detail

// Estimate of the coefficient of alpha in -E - alpha^2, assuming an
// O(alpha^{2/3}) remainder by default, with sensitivity against exponents
// 1/2 and 1 folded into c_err.
inline AsymptoticFit fit_linear_coefficient(const std::vector<SpectralResult>& rows,
                                            int j = 1) {
  auto pts = asympt_detail::curve_for_j(rows, j);
  if (pts.size() < 4)
    throw std::invalid_argument("fit_linear_coefficient: need >= 4 alpha values");
  if (pts.back().alpha < 4.0 * pts.front().alpha)
    throw std::invalid_argument("fit_linear_coefficient: alpha span below factor 4");

  AsymptoticFit fit;
  fit.j = j;
  fit.alpha_window = {pts.front().alpha, pts.back().alpha};
  fit.points_used = static_cast<int>(pts.size());

  auto [c23, dc23] = asympt_detail::accelerate(pts, 2.0 / 3.0);
  auto [c12, dc12] = asympt_detail::accelerate(pts, 0.5);
  auto [c1, dc1] = asympt_detail::accelerate(pts, 1.0);
  fit.c_hat = c23;
  fit.c_err = std::max(std::abs(c12 - c23), std::abs(c1 - c23)) +
              std::max({dc23, dc12, dc1});

  // Non-monotone c(alpha) beyond the error estimates means grid noise.
  int flips = 0;
  for (std::size_t i = 2; i < pts.size(); ++i) {
    auto c_of = [](const asympt_detail::CurvePoint& q) {
      return -(q.E + q.alpha * q.alpha) / q.alpha;
    };
    double d1 = c_of(pts[i - 1]) - c_of(pts[i - 2]);
    double d2 = c_of(pts[i]) - c_of(pts[i - 1]);
    double noise = (pts[i].err + 2.0 * pts[i - 1].err + pts[i - 2].err) /
                   pts[i - 2].alpha;
    if (d1 * d2 < 0.0 && std::min(std::abs(d1), std::abs(d2)) > noise) ++flips;
  }
  if (flips > 0) fit.verdict = "non-monotone";
  return fit;
}

// Slope of log |E + alpha^2 + c_reference alpha| against log alpha, with the
// least-squares standard error. Points below the numerical noise floor are
// dropped; too few survivors makes the fit inconclusive.
inline AsymptoticFit fit_remainder_exponent(const std::vector<SpectralResult>& rows,
                                            double c_reference, int j = 1) {
  for (const auto& r : rows)
    if (r.j == j && r.method == SpectralMethod::Fem2D)
      throw std::invalid_argument(
          "fit_remainder_exponent: needs exact-method data (radial or model1d)");
  auto pts = asympt_detail::curve_for_j(rows, j);
  AsymptoticFit fit;
  fit.j = j;
  if (!pts.empty()) fit.alpha_window = {pts.front().alpha, pts.back().alpha};

  std::vector<double> lx, ly;
  for (const auto& p : pts) {
    double rem = p.E + p.alpha * p.alpha + c_reference * p.alpha;
    if (std::abs(rem) <= 10.0 * (p.err + 1e-13 * std::abs(p.E))) continue;
    lx.push_back(std::log(p.alpha));
    ly.push_back(std::log(std::abs(rem)));
  }
  fit.points_used = static_cast<int>(lx.size());
  if (fit.points_used < 4) {
    fit.verdict = "inconclusive";
    return fit;
  }
  double n = static_cast<double>(lx.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  double denom = n * sxx - sx * sx;
  double slope = (n * sxy - sx * sy) / denom;
  double intercept = (sy - slope * sx) / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    double resid = ly[i] - slope * lx[i] - intercept;
    ss += resid * resid;
  }
  double se = lx.size() > 2
                  ? std::sqrt(ss / (n - 2.0) / (sxx - sx * sx / n))
                  : 0.0;
  fit.remainder_exponent_hat = slope;
  fit.exponent_err = se;
  return fit;
}

struct CrossingReport {
  std::string domain_a, domain_b;
  int j = 1;
  std::string sign_pattern;  // per grid point: '+', '-', or '0' within noise
  bool crossing_found = false;
  double alpha0_lo = 0.0, alpha0_hi = 0.0;  // bracket of the last sign change
  int predicted_sign = 0;  // sign of E_A - E_B for large alpha, from c_hat
  bool inconclusive = false;
};

// Sign pattern of E_j^A - E_j^B over the common alpha grid plus the
// asymptotic prediction from the fitted linear coefficients.
inline CrossingReport compare_domains(const std::vector<SpectralResult>& res_a,
                                      const std::vector<SpectralResult>& res_b,
                                      int j = 1) {
  auto a = asympt_detail::curve_for_j(res_a, j);
  auto b = asympt_detail::curve_for_j(res_b, j);
  CrossingReport rep;
  rep.j = j;
  if (!res_a.empty()) rep.domain_a = res_a.front().domain_id;
  if (!res_b.empty()) rep.domain_b = res_b.front().domain_id;
  if (a.size() != b.size() || a.empty())
    throw std::invalid_argument("compare_domains: need a common alpha grid");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i].alpha - b[i].alpha) > 1e-12 * (a[i].alpha + 1.0))
      throw std::invalid_argument("compare_domains: alpha grids differ");

  int last_flip = -1;
  char prev = '0';
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i].E - b[i].E;
    double noise = a[i].err + b[i].err;
    char s = std::abs(d) <= noise ? '0' : (d > 0.0 ? '+' : '-');
    if (s != '0') {
      if (prev != '0' && s != prev) last_flip = static_cast<int>(i);
      prev = s;
    }
    rep.sign_pattern.push_back(s);
  }
  rep.inconclusive =
      rep.sign_pattern.find_first_not_of('0') == std::string::npos;
  if (last_flip > 0) {
    rep.crossing_found = true;
    rep.alpha0_lo = a[last_flip - 1].alpha;
    rep.alpha0_hi = a[last_flip].alpha;
  }
  if (a.size() >= 4 && a.back().alpha >= 4.0 * a.front().alpha) {
    AsymptoticFit fa = fit_linear_coefficient(res_a, j);
    AsymptoticFit fb = fit_linear_coefficient(res_b, j);
    double dc = fa.c_hat - fb.c_hat;
    if (std::abs(dc) > 3.0 * (fa.c_err + fb.c_err))
      rep.predicted_sign = dc > 0.0 ? -1 : 1;  // larger c means lower E_j
  }
  return rep;
}

inline nlohmann::json to_json(const AsymptoticFit& f, const std::string& domain_id) {
  nlohmann::json j;
  j["domain_id"] = domain_id;
  j["j"] = f.j;
  j["c_hat"] = f.c_hat;
  j["c_err"] = f.c_err;
  j["exponent_hat"] = f.remainder_exponent_hat;
  j["exponent_err"] = f.exponent_err;
  j["window"] = {f.alpha_window.first, f.alpha_window.second};
  j["points_used"] = f.points_used;
  j["verdict"] = f.verdict;
  return j;
}

inline nlohmann::json to_json(const CrossingReport& r) {
  nlohmann::json j;
  j["domain_a"] = r.domain_a;
  j["domain_b"] = r.domain_b;
  j["j"] = r.j;
  j["sign_pattern"] = r.sign_pattern;
  j["crossing_found"] = r.crossing_found;
  j["alpha0_bracket"] = {r.alpha0_lo, r.alpha0_hi};
  j["predicted_sign"] = r.predicted_sign;
  j["inconclusive"] = r.inconclusive;
  return j;
}

}  // namespace robinspec
