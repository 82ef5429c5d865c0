#include <doctest.h>

#include <cmath>
#include <vector>

#include "robinspec/asympt.hpp"
#include "robinspec/model1d.hpp"
#include "robinspec/radial.hpp"

using namespace robinspec;

namespace {

std::vector<double> geometric_grid(double a, double b, int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(a * std::pow(b / a, double(i) / (n - 1)));
  return g;
}

std::vector<SpectralResult> synthetic_curve(double c, double r, double p,
                                            const std::vector<double>& alphas) {
  std::vector<SpectralResult> rows;
  for (double a : alphas) {
    SpectralResult s;
    s.domain_id = "synthetic";
    s.alpha = a;
    s.j = 1;
    s.E = -a * a - c * a + r * std::pow(a, p);
    s.method = SpectralMethod::RadialExact;
    s.err_est = 1e-12;
    rows.push_back(s);
  }
  return rows;
}

std::vector<SpectralResult> radial_curve(int nu, double R, const std::vector<double>& alphas,
                                         const std::string& id) {
  std::vector<SpectralResult> rows;
  for (double a : alphas) {
    auto spec = ball_negative_spectrum(nu, R, a, 1, id);
    rows.push_back(spec.modes[0]);
  }
  return rows;
}

}  // namespace

TEST_CASE("synthetic recovery: c within 1%, exponent within 0.03") {
  auto grid = geometric_grid(10.0, 1e4, 21);
  for (double p : {2.0 / 3.0, 0.5}) {
    auto rows = synthetic_curve(3.0, 1.0, p, grid);
    AsymptoticFit fit = fit_linear_coefficient(rows, 1);
    CHECK(std::abs(fit.c_hat - 3.0) < 0.03);
    AsymptoticFit efit = fit_remainder_exponent(rows, 3.0, 1);
    CHECK(efit.verdict == "ok");
    CHECK(std::abs(efit.remainder_exponent_hat - p) < 0.03);
  }
  // the canonical 2/3-exponent instance
  auto rows = synthetic_curve(3.0, 1.0, 2.0 / 3.0, grid);
  AsymptoticFit efit = fit_remainder_exponent(rows, 3.0, 1);
  CHECK(efit.remainder_exponent_hat == doctest::Approx(0.667).epsilon(0.03));
}

TEST_CASE("disk: linear coefficient is the maximum curvature") {
  auto grid = geometric_grid(10.0, 160.0, 9);
  auto rows = radial_curve(2, 1.0, grid, "disk");
  AsymptoticFit fit = fit_linear_coefficient(rows, 1);
  CHECK(std::abs(fit.c_hat - 1.0) < 0.05);
}

TEST_CASE("disk R=2: linear coefficient is the curvature 1/2") {
  auto grid = geometric_grid(10.0, 160.0, 9);
  auto rows = radial_curve(2, 2.0, grid, "diskR2");
  AsymptoticFit fit = fit_linear_coefficient(rows, 1);
  CHECK(std::abs(fit.c_hat - 0.5) < 0.03);
}

TEST_CASE("ball nu=3: linear coefficient is (nu-1) H_max = 2") {
  auto grid = geometric_grid(10.0, 160.0, 9);
  auto rows = radial_curve(3, 1.0, grid, "ball3");
  AsymptoticFit fit = fit_linear_coefficient(rows, 1);
  CHECK(std::abs(fit.c_hat - 2.0) < 0.05);
}

TEST_CASE("shell (1,2): coefficient (nu-1)/b confirms outer-boundary localization") {
  auto grid = geometric_grid(10.0, 160.0, 9);
  std::vector<SpectralResult> rows;
  for (double a : grid)
    rows.push_back(shell_negative_spectrum(3, 1.0, 2.0, a, 1, "shell").modes[0]);
  AsymptoticFit fit = fit_linear_coefficient(rows, 1);
  CHECK(std::abs(fit.c_hat - 1.0) < 0.05);
}

TEST_CASE("ball remainder stays bounded (slope <= 0.1)") {
  auto grid = geometric_grid(10.0, 160.0, 9);
  auto rows = radial_curve(3, 1.0, grid, "ball3");
  AsymptoticFit efit = fit_remainder_exponent(rows, 2.0, 1);
  CHECK(efit.verdict == "ok");
  CHECK(efit.remainder_exponent_hat <= 0.1);
}

TEST_CASE("model operator remainder |E_1 + (alpha+m)^2| decays") {
  // The gap closes like e^{-2 delta alpha}, so pick the window where it is
  // still far above the double-precision floor of E itself.
  double m = 1.0;
  auto grid = geometric_grid(3.0, 12.0, 8);
  std::vector<SpectralResult> rows;
  for (double a : grid) {
    Model1DResult r = tplus_eigenvalues({1.0, m, 0.0, a}, 1);
    SpectralResult s;
    s.domain_id = "tplus";
    s.alpha = a;
    s.j = 1;
    // recenter by m^2 so E + alpha^2 + 2 m alpha equals E_1 + (alpha+m)^2
    s.E = r.eigenvalues[0] + m * m;
    s.method = SpectralMethod::Model1D;
    s.err_est = 1e-13 * std::abs(r.eigenvalues[0]);
    rows.push_back(s);
  }
  AsymptoticFit efit = fit_remainder_exponent(rows, 2.0 * m, 1);
  CHECK(efit.verdict == "ok");
  CHECK(efit.remainder_exponent_hat < 0.0);
}

TEST_CASE("compare: identical curves are inconclusive zeros") {
  auto grid = geometric_grid(10.0, 160.0, 9);
  auto a = radial_curve(2, 1.0, grid, "disk");
  CrossingReport rep = compare_domains(a, a, 1);
  CHECK(rep.inconclusive);
  CHECK(rep.sign_pattern == std::string(grid.size(), '0'));
  CHECK(!rep.crossing_found);
}

TEST_CASE("compare: ball vs equal-volume shell finds the crossing") {
  auto grid = geometric_grid(10.0, 160.0, 9);
  auto ball = radial_curve(3, 1.0, grid, "ball3");
  std::vector<SpectralResult> shell;
  double b = std::cbrt(2.0);
  for (double a : grid)
    shell.push_back(shell_negative_spectrum(3, 1.0, b, a, 1, "shell").modes[0]);
  CrossingReport rep = compare_domains(ball, shell, 1);
  CHECK(rep.crossing_found);
  CHECK(rep.alpha0_lo == doctest::Approx(10.0));
  CHECK(rep.alpha0_hi == doctest::Approx(10.0 * std::pow(16.0, 1.0 / 8.0)));
  CHECK(rep.sign_pattern.back() == '-');   // E(ball) < E(shell) at the far end
  CHECK(rep.sign_pattern.front() == '+');  // reversed below the crossing
  CHECK(rep.predicted_sign == -1);
}

TEST_CASE("compare: small disk sits below the big disk at large alpha") {
  auto grid = geometric_grid(10.0, 160.0, 9);
  auto small = radial_curve(2, 1.0, grid, "diskR1");
  auto big = radial_curve(2, 2.0, grid, "diskR2");
  CrossingReport rep = compare_domains(small, big, 1);
  CHECK(rep.sign_pattern.back() == '-');
  CHECK(rep.predicted_sign == -1);
}

TEST_CASE("fit preconditions and flags") {
  auto grid = geometric_grid(10.0, 160.0, 9);
  auto rows = radial_curve(2, 1.0, grid, "disk");
  std::vector<SpectralResult> three(rows.begin(), rows.begin() + 3);
  CHECK_THROWS_AS(fit_linear_coefficient(three, 1), std::invalid_argument);
  auto narrow_grid = geometric_grid(10.0, 20.0, 5);
  auto narrow = radial_curve(2, 1.0, narrow_grid, "disk");
  CHECK_THROWS_AS(fit_linear_coefficient(narrow, 1), std::invalid_argument);

  SpectralResult fem_row;
  fem_row.j = 1;
  fem_row.method = SpectralMethod::Fem2D;
  CHECK_THROWS_AS(fit_remainder_exponent({fem_row}, 1.0, 1), std::invalid_argument);

  // alternating bumps far above the stated errors flag non-monotone c
  auto noisy = synthetic_curve(3.0, 0.0, 0.0, grid);
  for (std::size_t i = 0; i < noisy.size(); ++i)
    noisy[i].E += (i % 2 ? 1.0 : -1.0) * 0.5 * noisy[i].alpha;
  AsymptoticFit fit = fit_linear_coefficient(noisy, 1);
  CHECK(fit.verdict == "non-monotone");
}

TEST_CASE("remainder below noise is inconclusive") {
  auto grid = geometric_grid(10.0, 160.0, 9);
  std::vector<SpectralResult> rows = synthetic_curve(2.0, 0.0, 0.0, grid);
  for (auto& r : rows) r.err_est = 1.0;  // every remainder drowns
  AsymptoticFit efit = fit_remainder_exponent(rows, 2.0, 1);
  CHECK(efit.verdict == "inconclusive");
}
