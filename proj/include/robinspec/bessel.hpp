// Modified Bessel functions I_mu, K_mu for real order mu >= 0 and x > 0,
// in exponentially scaled and log forms, plus the ratio primitives the
// radial secular equations are built from.
//
// Paths: a normalized power series for I at small x, the fixed-order
// asymptotic expansion at large x, Temme's series (x <= 2) and a Steed
// continued fraction (x > 2) for the K base pair, and stable recurrences
// in the order: Gauss continued fraction ratios upward for I, three-term
// ratio recurrence upward for K.
#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "robinspec/numerics.hpp"

namespace robinspec {

struct ScaledBessel {
  double value = 0.0;
  bool underflow = false;  // value fell below the normal double range
  bool overflow = false;   // K only: scaled value exceeded the double range
};

namespace bessel_detail {

inline constexpr double kEulerGamma = 0.57721566490153286061;
inline constexpr int kMaxIter = 10000;

// I_{mu+1}(x) / I_mu(x) by the Gauss continued fraction (modified Lentz).
inline double i_ratio_cf1(double mu, double x) {
  const double tiny = 1e-300;
  double f = tiny, c = f, d = 0.0;
  for (int j = 1; j <= kMaxIter; ++j) {
    double b = 2.0 * (mu + j) / x;
    d = b + d;
    if (d == 0.0) d = tiny;
    c = b + 1.0 / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) return f;
  }
  throw std::runtime_error("bessel: CF1 failed to converge");
}

// log I_mu(x) by the normalized power series; valid everywhere, used x < 16.
inline double log_i_series(double mu, double x) {
  double sum = 1.0, term = 1.0;
  double x24 = 0.25 * x * x;
  for (int m = 1; m <= kMaxIter; ++m) {
    term *= x24 / (m * (mu + m));
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return mu * std::log(0.5 * x) - std::lgamma(mu + 1.0) + std::log(sum);
}

// log I_nu(x) by the large-argument expansion, order nu in [0,1), x >= 16.
inline double log_i_asymptotic(double nu, double x) {
  double fournu2 = 4.0 * nu * nu;
  double sum = 1.0, term = 1.0;
  for (int m = 1; m <= 40; ++m) {
    double num = fournu2 - (2.0 * m - 1.0) * (2.0 * m - 1.0);
    double next = -term * num / (8.0 * m * x);
    if (std::abs(next) >= std::abs(term)) break;  // past optimal truncation
    term = next;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return x - 0.5 * std::log(2.0 * kPi * x) + std::log(sum);
}

// Temme's series: K_nu(x) and K_{nu+1}(x) for |nu| <= 1/2, x <= 2.
struct KPair {
  double k_lo;  // K_nu
  double k_hi;  // K_{nu+1}
};

inline KPair k_pair_temme(double nu, double x) {
  double nu2 = nu * nu;
  double l2x = std::log(2.0 / x);
  double sigma = nu * l2x;
  double fact = std::abs(nu) < 1e-14 ? 1.0 : kPi * nu / std::sin(kPi * nu);
  double fact2 = std::abs(sigma) < 1e-14 ? 1.0 : std::sinh(sigma) / sigma;
  double gampl = 1.0 / std::tgamma(1.0 + nu);
  double gammi = 1.0 / std::tgamma(1.0 - nu);
  // gam1 = (1/Gamma(1-nu) - 1/Gamma(1+nu)) / (2 nu), limit -euler_gamma.
  double gam1 = std::abs(nu) < 1e-5
                    ? -kEulerGamma + 0.04199869462271048 * nu2
                    : (gammi - gampl) / (2.0 * nu);
  double gam2 = 0.5 * (gammi + gampl);
  double f = fact * (gam1 * std::cosh(sigma) + gam2 * fact2 * l2x);
  double e = std::exp(sigma);  // (2/x)^nu
  double p = 0.5 * e / gampl;
  double q = 0.5 / (e * gammi);
  double c = 1.0;
  double d = 0.25 * x * x;
  double sum = f;
  double sum1 = p;
  for (int i = 1; i <= kMaxIter; ++i) {
    f = (i * f + p + q) / (i * i - nu2);
    c *= d / i;
    p /= (i - nu);
    q /= (i + nu);
    double del = c * f;
    sum += del;
    sum1 += c * (p - i * f);
    if (std::abs(del) < std::abs(sum) * 1e-17) break;
  }
  return {sum, sum1 * (2.0 / x)};
}

// Steed continued fraction: scaled e^x K_nu(x) and e^x K_{nu+1}(x) for
// |nu| <= 1/2, x > 2.
inline KPair k_pair_cf2_scaled(double nu, double x) {
  double nu2 = nu * nu;
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d, delh = d;
  double q1 = 0.0, q2 = 1.0;
  double a1 = 0.25 - nu2;
  double q = a1, c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 2; i <= kMaxIter; ++i) {
    a -= 2.0 * (i - 1);
    c = -a * c / i;
    double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < 1e-16) break;
  }
  h = a1 * h;
  double k_lo = std::sqrt(kPi / (2.0 * x)) / s;
  double k_hi = k_lo * (nu + x + 0.5 - h) / x;
  return {k_lo, k_hi};
}

// log K at the base order in [-1/2, 1/2] plus the ratio K_{base+1}/K_base.
struct KBase {
  double base_order;
  double log_k;  // log K_base(x)
  double ratio;  // K_{base+1} / K_base
};

inline KBase k_base(double mu, double x) {
  double mu0 = mu - std::floor(mu);
  double base = mu0 <= 0.5 ? mu0 : mu0 - 1.0;
  KPair pair = x <= 2.0 ? k_pair_temme(base, x) : k_pair_cf2_scaled(base, x);
  // the CF2 pair carries the e^x scale; remove it in log space
  double log_k = std::log(pair.k_lo) - (x > 2.0 ? x : 0.0);
  return {base, log_k, pair.k_hi / pair.k_lo};
}

}  // namespace bessel_detail

// log I_mu(x); stable for all mu >= 0, x > 0 within double range.
inline double log_bessel_i(double mu, double x) {
  if (!(x > 0.0) || mu < 0.0)
    throw std::invalid_argument("log_bessel_i: need x > 0, order >= 0");
  if (x < 16.0) return bessel_detail::log_i_series(mu, x);
  double mu0 = mu - std::floor(mu);
  double acc = bessel_detail::log_i_asymptotic(mu0, x);
  for (double m = mu0; m < mu - 0.5; m += 1.0)
    acc += std::log(bessel_detail::i_ratio_cf1(m, x));
  return acc;
}

// log K_mu(x).
inline double log_bessel_k(double mu, double x) {
  if (!(x > 0.0) || mu < 0.0)
    throw std::invalid_argument("log_bessel_k: need x > 0, order >= 0");
  auto base = bessel_detail::k_base(mu, x);
  int steps = static_cast<int>(std::lround(mu - base.base_order));
  if (steps == 0) return base.log_k;
  double acc = base.log_k + std::log(base.ratio);
  double rho = base.ratio;  // K_{lambda+1}/K_lambda at lambda = base
  double lambda = base.base_order + 1.0;
  for (int j = 1; j < steps; ++j, lambda += 1.0) {
    rho = 2.0 * lambda / x + 1.0 / rho;
    acc += std::log(rho);
  }
  return acc;
}

// I_{mu+1}(x) / I_mu(x).
inline double bessel_i_ratio(double mu, double x) {
  if (!(x > 0.0) || mu < 0.0)
    throw std::invalid_argument("bessel_i_ratio: need x > 0, order >= 0");
  return bessel_detail::i_ratio_cf1(mu, x);
}

// K_{mu+1}(x) / K_mu(x).
inline double bessel_k_ratio(double mu, double x) {
  if (!(x > 0.0) || mu < 0.0)
    throw std::invalid_argument("bessel_k_ratio: need x > 0, order >= 0");
  auto base = bessel_detail::k_base(mu, x);
  int steps = static_cast<int>(std::lround(mu - base.base_order));
  double rho = base.ratio;
  double lambda = base.base_order + 1.0;
  for (int j = 0; j < steps; ++j, lambda += 1.0) rho = 2.0 * lambda / x + 1.0 / rho;
  return rho;
}

// e^{-x} I_mu(x) with an underflow flag.
inline ScaledBessel bessel_i_scaled(double order, double x) {
  if (!(x > 0.0)) throw std::invalid_argument("bessel_i_scaled: x must be > 0");
  if (order < 0.0 || order > 200.0)
    throw std::invalid_argument("bessel_i_scaled: order must be in [0, 200]");
  double lg = log_bessel_i(order, x) - x;
  ScaledBessel out;
  if (lg < std::log(std::numeric_limits<double>::min())) {
    out.value = 0.0;
    out.underflow = true;
  } else {
    out.value = std::exp(lg);
  }
  return out;
}

// e^{x} K_mu(x) with an overflow flag.
inline ScaledBessel bessel_k_scaled(double order, double x) {
  if (!(x > 0.0)) throw std::invalid_argument("bessel_k_scaled: x must be > 0");
  if (order < 0.0 || order > 200.0)
    throw std::invalid_argument("bessel_k_scaled: order must be in [0, 200]");
  double lg = log_bessel_k(order, x) + x;
  ScaledBessel out;
  if (lg > std::log(std::numeric_limits<double>::max())) {
    out.value = std::numeric_limits<double>::infinity();
    out.overflow = true;
  } else {
    out.value = std::exp(lg);
  }
  return out;
}

}  // namespace robinspec
