// Exact negative Robin spectra of balls and spherical shells in dimension
// nu >= 2, by separation of variables. Radial solutions are
// r^{1-nu/2} I_{nu/2-1+l}(kr) (plus the K branch on shells); the Robin
// conditions turn into secular equations in k that are bracketed and
// bisected using the scaled Bessel primitives.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "robinspec/bessel.hpp"
#include "robinspec/numerics.hpp"
#include "robinspec/spectral_result.hpp"

namespace robinspec {

struct RadialMode {
  int l = 0;
  int multiplicity = 1;
  double k = 0.0;
  double E = 0.0;
};

struct NegativeSpectrum {
  std::vector<SpectralResult> modes;  // first `count`, multiplicities expanded
  std::vector<RadialMode> raw;        // one entry per (l, k) root
  bool truncated = false;             // fewer than `count` negatives exist
};

// Dimension of the space of degree-l spherical harmonics in nu variables.
inline int harmonic_multiplicity(int l, int nu) {
  auto binom = [](std::int64_t n, std::int64_t k) -> std::int64_t {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    std::int64_t r = 1;
    for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  if (l < 0) throw std::invalid_argument("harmonic_multiplicity: l < 0");
  return static_cast<int>(binom(l + nu - 2, l) + binom(l + nu - 3, l - 1));
}

namespace radial_detail {

// Ball secular function: k I_{mu+1}(kR)/I_mu(kR) - (alpha - l/R).
// Its positive root exists iff alpha - l/R > 0 and is unique (the ratio side
// is increasing in k from 0 to infinity).
inline double ball_secular(double k, double mu, double R, double rhs) {
  return k * bessel_i_ratio(mu, k * R) - rhs;
}

// Shell secular determinant in a row/column-rescaled, overflow-free form.
// W_I, W_K are the Robin combinations divided by the Bessel values; the
// cross factors are ratios of the same function at the two radii, both < 1.
inline double shell_secular(double k, double mu, double p, double a, double b,
                            double alpha) {
  double ga = -alpha + p / a;
  double gb = alpha + p / b;
  double ka = k * a, kb = k * b;
  double wi_b = mu / b + k * bessel_i_ratio(mu, kb) - gb;
  double wi_a = mu / a + k * bessel_i_ratio(mu, ka) - ga;
  double wk_b = mu / b - k * bessel_k_ratio(mu, kb) - gb;
  double wk_a = mu / a - k * bessel_k_ratio(mu, ka) - ga;
  double ci = std::exp(log_bessel_i(mu, ka) - log_bessel_i(mu, kb));
  double ck = std::exp(log_bessel_k(mu, kb) - log_bessel_k(mu, ka));
  return wi_b * wk_a - ci * ck * wk_b * wi_a;
}

inline void expand_modes(const std::vector<RadialMode>& raw,
                         const std::string& domain_id, double alpha, int count,
                         NegativeSpectrum& out) {
  std::vector<RadialMode> sorted = raw;
  std::sort(sorted.begin(), sorted.end(), [](const RadialMode& x, const RadialMode& y) {
    return x.E != y.E ? x.E < y.E : x.l < y.l;
  });
  out.raw = sorted;
  int j = 0;
  for (const auto& m : sorted) {
    for (int c = 0; c < m.multiplicity && j < count; ++c) {
      SpectralResult r;
      r.domain_id = domain_id;
      r.alpha = alpha;
      r.j = ++j;
      r.E = m.E;
      r.method = SpectralMethod::RadialExact;
      r.err_est = 1e-11 * std::abs(m.E) + 1e-14;
      r.l = m.l;
      r.multiplicity = m.multiplicity;
      out.modes.push_back(r);
    }
    if (j >= count) break;
  }
  out.truncated = j < count;
  if (out.truncated)
    for (auto& m : out.modes) m.flagged = true;
}

}  // namespace radial_detail

// Negative spectrum of the ball of radius R in dimension nu at Robin
// strength alpha. Per l there is at most one negative eigenvalue; they
// increase with l, so the scan stops at the first empty sector.
inline NegativeSpectrum ball_negative_spectrum(int nu, double R, double alpha,
                                               int count,
                                               const std::string& domain_id = "ball") {
  if (nu < 2) throw std::invalid_argument("ball spectrum: nu < 2");
  if (!(R > 0.0)) throw std::invalid_argument("ball spectrum: R <= 0");
  if (count < 1) throw std::invalid_argument("ball spectrum: count < 1");
  NegativeSpectrum out;
  if (!(alpha > 0.0)) {  // Neumann or repulsive: no negative spectrum
    out.truncated = true;
    return out;
  }
  std::vector<RadialMode> raw;
  int found = 0;
  for (int l = 0;; ++l) {
    double rhs = alpha - l / R;
    if (rhs <= 0.0) break;
    double mu = 0.5 * nu - 1.0 + l;
    auto f = [&](double k) { return radial_detail::ball_secular(k, mu, R, rhs); };
    double k_lo = 1e-12 * alpha;
    double k_hi = rhs + (2.0 * mu + 3.0) / R;
    int grow = 0;
    while (f(k_hi) <= 0.0 && grow++ < 200) k_hi *= 1.5;
    double k = bisect_root(f, k_lo, k_hi, 1e-13);
    RadialMode m{l, harmonic_multiplicity(l, nu), k, -k * k};
    raw.push_back(m);
    found += m.multiplicity;
    if (found >= count) break;  // eigenvalues only increase with l
  }
  radial_detail::expand_modes(raw, domain_id, alpha, count, out);
  return out;
}

// Negative spectrum of the shell a < r < b. The outward normal points toward
// the center on the inner sphere, so the Robin data there is -u'(a) = alpha
// u(a). Up to two negative roots per l (inner- and outer-localized).
inline NegativeSpectrum shell_negative_spectrum(int nu, double a, double b,
                                                double alpha, int count,
                                                const std::string& domain_id = "shell") {
  if (nu < 2) throw std::invalid_argument("shell spectrum: nu < 2");
  if (!(a > 0.0) || !(b > a)) throw std::invalid_argument("shell spectrum: need 0 < a < b");
  if (count < 1) throw std::invalid_argument("shell spectrum: count < 1");
  NegativeSpectrum out;
  if (!(alpha > 0.0)) {
    out.truncated = true;
    return out;
  }
  const double p = 0.5 * nu - 1.0;
  std::vector<RadialMode> raw;
  int found = 0;
  double count_th = 0.0;  // current count-th smallest E (valid once found>=count)
  for (int l = 0;; ++l) {
    double mu = p + l;
    auto f = [&](double k) {
      return radial_detail::shell_secular(k, mu, p, a, b, alpha);
    };
    double k_hi = alpha + (2.0 * mu + 6.0) / a + 6.0 / (b - a);
    auto roots = find_roots_scan(f, 1e-12 * alpha, k_hi, 512, 1e-13);
    if (roots.empty()) break;  // higher l sectors bind even less
    double sector_min_E = 0.0;
    for (double k : roots) {
      RadialMode m{l, harmonic_multiplicity(l, nu), k, -k * k};
      raw.push_back(m);
      found += m.multiplicity;
      sector_min_E = std::min(sector_min_E, m.E);
    }
    if (found >= count) {
      std::vector<double> all;
      for (const auto& m : raw)
        for (int c = 0; c < m.multiplicity; ++c) all.push_back(m.E);
      std::nth_element(all.begin(), all.begin() + (count - 1), all.end());
      count_th = all[count - 1];
      if (sector_min_E > count_th) break;
    }
  }
  radial_detail::expand_modes(raw, domain_id, alpha, count, out);
  return out;
}

}  // namespace robinspec
