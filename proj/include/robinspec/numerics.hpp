// Small numerical kit: root bracketing/bisection, golden-section maximization,
// periodic trapezoid and Gauss-Legendre quadrature.
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace robinspec {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Refines a sign change of f on [lo, hi] down to a relative interval width.
// Assumes f(lo) and f(hi) have opposite (nonzero) signs.
template <class F>
double bisect_root(const F& f, double lo, double hi, double rel_tol = 1e-13,
                   int max_iter = 200) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0))
    throw std::invalid_argument("bisect_root: no sign change in bracket");
  for (int i = 0; i < max_iter; ++i) {
    double mid = 0.5 * (lo + hi);
    if (hi - lo <= rel_tol * (std::abs(lo) + std::abs(hi) + 1e-300)) return mid;
    double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Scans [lo, hi] with n equal cells and returns every cell with a sign change,
// each refined by bisection. Endpoints where f vanishes exactly are kept once.
template <class F>
std::vector<double> find_roots_scan(const F& f, double lo, double hi, int n,
                                    double rel_tol = 1e-13) {
  std::vector<double> roots;
  if (n < 1 || !(hi > lo)) return roots;
  double h = (hi - lo) / n;
  double xprev = lo;
  double fprev = f(xprev);
  for (int i = 1; i <= n; ++i) {
    double x = (i == n) ? hi : lo + i * h;
    double fx = f(x);
    if (fprev == 0.0) {
      roots.push_back(xprev);
    } else if (fx != 0.0 && (fprev < 0.0) != (fx < 0.0)) {
      roots.push_back(bisect_root(f, xprev, x, rel_tol));
    }
    xprev = x;
    fprev = fx;
  }
  if (fprev == 0.0) roots.push_back(xprev);
  return roots;
}

// Golden-section maximization on [lo, hi]; returns (argmax, max).
template <class F>
std::pair<double, double> golden_max(const F& f, double lo, double hi,
                                     double x_tol = 1e-12) {
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > x_tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  double xm = 0.5 * (a + b);
  return {xm, f(xm)};
}

// Periodic trapezoid rule over [0, 2*pi): spectrally accurate for smooth
// periodic integrands.
template <class F>
double trapezoid_periodic(const F& f, int n) {
  if (n < 1) throw std::invalid_argument("trapezoid_periodic: n < 1");
  double sum = 0.0;
  double h = kTwoPi / n;
  for (int i = 0; i < n; ++i) sum += f(i * h);
  return sum * h;
}

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre rule on [a, b], nodes by Newton iteration on P_n.
inline QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n < 1");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double xm = 0.5 * (b + a);
    double xl = 0.5 * (b - a);
    rule.nodes[i] = xm - xl * x;
    rule.nodes[n - 1 - i] = xm + xl * x;
    rule.weights[i] = 2.0 * xl / ((1.0 - x * x) * pp * pp);
    rule.weights[n - 1 - i] = rule.weights[i];
  }
  return rule;
}

template <class F>
double integrate(const QuadratureRule& rule, const F& f) {
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    sum += rule.weights[i] * f(rule.nodes[i]);
  return sum;
}

}  // namespace robinspec
