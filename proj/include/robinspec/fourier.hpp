// Real trigonometric polynomials with analytic derivatives; the data model
// behind star-shaped boundaries and revolution profiles.
#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "robinspec/numerics.hpp"

namespace robinspec {

// f(t) = cos_coeffs[0] + sum_k cos_coeffs[k]*cos(k t) + sin_coeffs[k-1]*sin(k t)
struct FourierSeries {
  std::vector<double> cos_coeffs;  // a_0 .. a_K
  std::vector<double> sin_coeffs;  // b_1 .. b_K (may be shorter than cos)

  int max_harmonic() const {
    int kc = static_cast<int>(cos_coeffs.size()) - 1;
    int ks = static_cast<int>(sin_coeffs.size());
    return kc > ks ? kc : ks;
  }

  // derivative order 0..3
  double eval(double t, int deriv = 0) const {
    double sum = (deriv == 0 && !cos_coeffs.empty()) ? cos_coeffs[0] : 0.0;
    int kmax = max_harmonic();
    for (int k = 1; k <= kmax; ++k) {
      double a = k < static_cast<int>(cos_coeffs.size()) ? cos_coeffs[k] : 0.0;
      double b = k <= static_cast<int>(sin_coeffs.size()) ? sin_coeffs[k - 1] : 0.0;
      double c = std::cos(k * t), s = std::sin(k * t);
      double kp = std::pow(static_cast<double>(k), deriv);
      switch (deriv % 4) {
        case 0: sum += kp * (a * c + b * s); break;
        case 1: sum += kp * (-a * s + b * c); break;
        case 2: sum += kp * (-a * c - b * s); break;
        case 3: sum += kp * (a * s - b * c); break;
      }
    }
    return sum;
  }

  // f(t - phase): rotates the graph by `phase`.
  FourierSeries rotated(double phase) const {
    FourierSeries out;
    int kmax = max_harmonic();
    out.cos_coeffs.assign(kmax + 1, 0.0);
    out.sin_coeffs.assign(kmax, 0.0);
    if (!cos_coeffs.empty()) out.cos_coeffs[0] = cos_coeffs[0];
    for (int k = 1; k <= kmax; ++k) {
      double a = k < static_cast<int>(cos_coeffs.size()) ? cos_coeffs[k] : 0.0;
      double b = k <= static_cast<int>(sin_coeffs.size()) ? sin_coeffs[k - 1] : 0.0;
      double c = std::cos(k * phase), s = std::sin(k * phase);
      // a cos(k(t-p)) + b sin(k(t-p))
      out.cos_coeffs[k] = a * c - b * s;
      out.sin_coeffs[k - 1] = a * s + b * c;
    }
    return out;
  }

  FourierSeries scaled(double factor) const {
    FourierSeries out = *this;
    for (double& a : out.cos_coeffs) a *= factor;
    for (double& b : out.sin_coeffs) b *= factor;
    return out;
  }
};

// Projects a smooth 2*pi-periodic function onto harmonics 0..kmax using the
// trapezoid rule with 8*(kmax+1) samples (exact for trig polynomials of that
// degree, spectrally accurate otherwise).
template <class F>
FourierSeries fourier_fit(const F& f, int kmax) {
  if (kmax < 0) throw std::invalid_argument("fourier_fit: kmax < 0");
  int n = 8 * (kmax + 1);
  std::vector<double> samples(n);
  for (int i = 0; i < n; ++i) samples[i] = f(kTwoPi * i / n);
  FourierSeries out;
  out.cos_coeffs.assign(kmax + 1, 0.0);
  out.sin_coeffs.assign(kmax, 0.0);
  for (int i = 0; i < n; ++i) out.cos_coeffs[0] += samples[i];
  out.cos_coeffs[0] /= n;
  for (int k = 1; k <= kmax; ++k) {
    double ca = 0.0, sa = 0.0;
    for (int i = 0; i < n; ++i) {
      double t = kTwoPi * i / n;
      ca += samples[i] * std::cos(k * t);
      sa += samples[i] * std::sin(k * t);
    }
    out.cos_coeffs[k] = 2.0 * ca / n;
    out.sin_coeffs[k - 1] = 2.0 * sa / n;
  }
  return out;
}

}  // namespace robinspec
