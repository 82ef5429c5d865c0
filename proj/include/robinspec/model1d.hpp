// One-dimensional model operators on (0, delta): the Laplacian with an
// attractive Robin condition of strength alpha + m_max at t = 0 and either a
// Dirichlet end (T+) or a Robin end of strength beta (T-) at t = delta.
// Eigenvalues come from closed-form secular equations, written in
// overflow-free tanh / e^{-k delta} form.
#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "robinspec/numerics.hpp"

namespace robinspec {

struct Model1DParams {
  double delta = 1.0;   // interval length
  double m_max = 0.0;   // (nu-1)/2 * H at its maximum
  double beta = 0.0;    // far-end Robin coefficient of T-
  double alpha = 1.0;   // Robin strength

  void validate() const {
    if (!(delta > 0.0)) throw std::invalid_argument("model1d: delta <= 0");
    if (beta < 0.0) throw std::invalid_argument("model1d: beta < 0");
  }
};

enum class Model1DOperator { TMinus, TPlus };

struct Model1DResult {
  Model1DOperator op = Model1DOperator::TPlus;
  std::vector<double> eigenvalues;  // all E < 0, then nonnegatives, ascending
  std::vector<double> k_values;     // k = sqrt(-E) for each E < 0
  bool has_ground = false;          // a negative ground state exists
  double trace0 = 0.0;              // |psi(0)|^2 of the normalized ground state
  double coeff_ratio = 0.0;         // C1/C2 in psi = C1 e^{kt} + C2 e^{-kt}
};

namespace model1d_detail {

// Secular function of T+ for E = -k^2:  k - q tanh(k delta), q = alpha + m_max.
inline double secular_tplus_neg(double k, double q, double delta) {
  return k - q * std::tanh(k * delta);
}

// Secular function of T+ for E = +w^2:  w cos(w delta) - q sin(w delta).
inline double secular_tplus_pos(double w, double q, double delta) {
  return w * std::cos(w * delta) - q * std::sin(w * delta);
}

// T- for E = -k^2, scaled by e^{-k delta} to stay finite:
//   e^{-2 k delta} (k+q)(k+beta) + (q-k)(k-beta).
inline double secular_tminus_neg(double k, double q, double beta, double delta) {
  return std::exp(-2.0 * k * delta) * (k + q) * (k + beta) + (q - k) * (k - beta);
}

// T- for E = +w^2:  (w^2 - beta q) sin(w delta) + w (q + beta) cos(w delta).
inline double secular_tminus_pos(double w, double q, double beta, double delta) {
  return (w * w - beta * q) * std::sin(w * delta) +
         w * (q + beta) * std::cos(w * delta);
}

// Ground-state data for E = -k^2 in the overflow-safe basis
// f(t) = c1 e^{-k t} + c2 e^{k (t - delta)}.
struct GroundState {
  double c1 = 0.0, c2 = 0.0;
  double norm2 = 0.0;     // integral of f^2 over (0, delta)
  double trace0 = 0.0;    // f(0)^2 / norm2
  double coeff_ratio = 0.0;
};

inline GroundState ground_state(double k, double q, double delta, bool dirichlet_end,
                                double beta) {
  double emd = std::exp(-k * delta);
  // rows of the 2x2 boundary-condition system in (c1, c2)
  double row0[2] = {q - k, emd * (q + k)};
  double rowd[2];
  if (dirichlet_end) {
    rowd[0] = emd;
    rowd[1] = 1.0;
  } else {
    rowd[0] = -emd * (k + beta);
    rowd[1] = k - beta;
  }
  const double* row = (std::abs(row0[0]) + std::abs(row0[1]) >
                       std::abs(rowd[0]) + std::abs(rowd[1]))
                          ? row0
                          : rowd;
  GroundState g;
  g.c1 = row[1];
  g.c2 = -row[0];
  double cross = (k * delta < 1e-8)
                     ? delta * (1.0 - k * delta)  // series fallback
                     : (1.0 - emd * emd) / (2.0 * k);
  g.norm2 = (g.c1 * g.c1 + g.c2 * g.c2) * cross +
            2.0 * g.c1 * g.c2 * delta * emd;
  double f0 = g.c1 + g.c2 * emd;
  g.trace0 = f0 * f0 / g.norm2;
  // C2 multiplies e^{-kt}, C1 multiplies e^{+kt}
  g.coeff_ratio = (g.c2 * emd) / g.c1;
  return g;
}

}  // namespace model1d_detail

// Eigenvalues of T+ (Dirichlet far end): all negative ones plus nonnegative
// ones until at least `count` values are collected.
inline Model1DResult tplus_eigenvalues(const Model1DParams& p, int count) {
  p.validate();
  if (count < 1) throw std::invalid_argument("tplus_eigenvalues: count < 1");
  const double q = p.alpha + p.m_max;
  Model1DResult res;
  res.op = Model1DOperator::TPlus;

  if (q > 0.0) {
    double k_hi = q + 10.0 / p.delta;
    int cells = std::max(10 * count, 256);
    auto f = [&](double k) {
      return model1d_detail::secular_tplus_neg(k, q, p.delta);
    };
    auto roots = find_roots_scan(f, 1e-9 / p.delta, k_hi, cells);
    std::sort(roots.rbegin(), roots.rend());  // descending k = ascending E
    for (double k : roots) {
      res.eigenvalues.push_back(-k * k);
      res.k_values.push_back(k);
    }
  }
  if (!res.k_values.empty()) {
    res.has_ground = true;
    auto g = model1d_detail::ground_state(res.k_values.front(), q, p.delta,
                                          /*dirichlet_end=*/true, 0.0);
    res.trace0 = g.trace0;
    res.coeff_ratio = g.coeff_ratio;
  }

  int need = std::max(count - static_cast<int>(res.eigenvalues.size()), 1);
  double w_hi = (need + 3) * kPi / p.delta + std::max(q, 0.0);
  int cells = std::max(64 * (need + 3), 512);
  auto fp = [&](double w) {
    return model1d_detail::secular_tplus_pos(w, q, p.delta);
  };
  auto wroots = find_roots_scan(fp, 1e-9 / p.delta, w_hi, cells);
  std::sort(wroots.begin(), wroots.end());
  for (double w : wroots) {
    if (static_cast<int>(res.eigenvalues.size()) >=
        std::max<std::size_t>(count, res.k_values.size() + 1))
      break;
    res.eigenvalues.push_back(w * w);
  }
  return res;
}

// Eigenvalues of T- (Robin of strength beta at the far end).
inline Model1DResult tminus_eigenvalues(const Model1DParams& p, int count) {
  p.validate();
  if (count < 1) throw std::invalid_argument("tminus_eigenvalues: count < 1");
  const double q = p.alpha + p.m_max;
  Model1DResult res;
  res.op = Model1DOperator::TMinus;

  double k_hi = std::max(q, 0.0) + p.beta + 10.0 / p.delta;
  int cells = std::max(10 * count, 256);
  auto f = [&](double k) {
    return model1d_detail::secular_tminus_neg(k, q, p.beta, p.delta);
  };
  auto roots = find_roots_scan(f, 1e-9 / p.delta, k_hi, cells);
  std::sort(roots.rbegin(), roots.rend());
  for (double k : roots) {
    res.eigenvalues.push_back(-k * k);
    res.k_values.push_back(k);
  }
  if (!res.k_values.empty()) {
    res.has_ground = true;
    auto g = model1d_detail::ground_state(res.k_values.front(), q, p.delta,
                                          /*dirichlet_end=*/false, p.beta);
    res.trace0 = g.trace0;
    res.coeff_ratio = g.coeff_ratio;
  }

  int need = std::max(count - static_cast<int>(res.eigenvalues.size()), 1);
  double w_hi = (need + 3) * kPi / p.delta + std::max(q, 0.0) + p.beta;
  int pcells = std::max(64 * (need + 3), 512);
  auto fp = [&](double w) {
    return model1d_detail::secular_tminus_pos(w, q, p.beta, p.delta);
  };
  auto wroots = find_roots_scan(fp, 1e-9 / p.delta, w_hi, pcells);
  std::sort(wroots.begin(), wroots.end());
  for (double w : wroots) {
    if (static_cast<int>(res.eigenvalues.size()) >=
        std::max<std::size_t>(count, res.k_values.size() + 1))
      break;
    res.eigenvalues.push_back(w * w);
  }
  return res;
}

// Boundary-trace growth along an alpha grid: rows (alpha, |psi(0)|^2,
// |psi(0)|^2 / (2k)) for the T+ ground state. The last column tends to 1.
inline std::vector<std::tuple<double, double, double>> trace_growth(
    const std::vector<Model1DParams>& grid) {
  std::vector<std::tuple<double, double, double>> rows;
  rows.reserve(grid.size());
  for (const auto& p : grid) {
    Model1DResult r = tplus_eigenvalues(p, 1);
    if (!r.has_ground)
      throw std::invalid_argument("trace_growth: no ground state on grid");
    double k = r.k_values.front();
    rows.emplace_back(p.alpha, r.trace0, r.trace0 / (2.0 * k));
  }
  return rows;
}

}  // namespace robinspec
