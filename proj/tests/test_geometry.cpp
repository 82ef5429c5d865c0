#include <doctest.h>

#include <cmath>
#include <random>

#include "robinspec/domain.hpp"
#include "robinspec/geominequal.hpp"
#include "robinspec/geometry.hpp"
#include "support/oracles.hpp"

using namespace robinspec;

namespace {

DomainSpec ellipse_spec(double a, double b, int kmax = 64) {
  return DomainSpec::star2d(
      fourier_fit([&](double t) { return oracles::ellipse_radius(a, b, t); }, kmax));
}

DomainSpec perturbed_disk(double amplitude, int harmonic) {
  FourierSeries r;
  r.cos_coeffs.assign(harmonic + 1, 0.0);
  r.cos_coeffs[0] = 1.0;
  r.cos_coeffs[harmonic] = amplitude;
  return DomainSpec::star2d(r);
}

}  // namespace

TEST_CASE("circle curvature is 1/R") {
  for (double R : {1.0, 2.0}) {
    DomainSpec disk = DomainSpec::disk(R);
    for (double theta : {0.0, 0.3, 1.7, 4.4})
      CHECK(curvature_star2d(disk, theta) == doctest::Approx(1.0 / R).epsilon(1e-13));
  }
}

TEST_CASE("ellipse curvature matches the arc-length parametrization oracle") {
  double a = 2.0, b = 1.0;
  DomainSpec e = ellipse_spec(a, b);
  // long-axis tip: theta = 0 in the radial graph corresponds to t = 0
  CHECK(curvature_star2d(e, 0.0) == doctest::Approx(a / (b * b)).epsilon(1e-9));
  CHECK(curvature_star2d(e, 0.0) ==
        doctest::Approx(oracles::ellipse_curvature_param(a, b, 0.0)).epsilon(1e-9));
  // a generic point: map theta -> t through tan t = (a/b) tan theta
  double theta = 0.6;
  double t = std::atan2(a * std::sin(theta), b * std::cos(theta));
  CHECK(curvature_star2d(e, theta) ==
        doctest::Approx(oracles::ellipse_curvature_param(a, b, t)).epsilon(1e-9));
  // H_max of the ellipse is the tip value
  GeometrySummary g = geometry_summary(e, 256);
  CHECK(g.h_max == doctest::Approx(a / (b * b)).epsilon(1e-9));
}

TEST_CASE("revolution: spheres are umbilic, poles included") {
  for (double R : {1.0, 2.0}) {
    DomainSpec s = DomainSpec::revolution(FourierSeries{{R}, {}});
    for (double u : {0.0, 1e-9, 0.4, kPi / 2, 3.0, kPi})
      CHECK(mean_curvature_revolution(s, u) == doctest::Approx(1.0 / R).epsilon(1e-12));
  }
}

TEST_CASE("revolution: cylinder-like equator has H = 1/(2R)") {
  // R(u) = 5c + c cos 2u gives R(pi/2) = 4c, R'(pi/2) = 0, R'' = R there,
  // so the meridian is straight and only the parallel curvature remains.
  double c = 0.25;
  DomainSpec s = DomainSpec::revolution(FourierSeries{{5.0 * c, 0.0, c}, {}});
  double R_cyl = 4.0 * c;
  CHECK(mean_curvature_revolution(s, kPi / 2) ==
        doctest::Approx(1.0 / (2.0 * R_cyl)).epsilon(1e-12));
}

TEST_CASE("revolution: parallel-surface finite-difference oracle") {
  // Displace the boundary along the outward normal; the area element of the
  // parallel surface grows like 1 + (nu-1) H t.
  DomainSpec s = DomainSpec::revolution(FourierSeries{{1.0, 0.0, 0.15}, {}});
  auto area_band = [&](double u0, double du, double t) {
    QuadratureRule rule = gauss_legendre(64, u0 - du, u0 + du);
    return integrate(rule, [&](double u) {
      double R = s.profile.eval(u);
      double R1 = s.profile.eval(u, 1);
      double w = std::hypot(R, R1);
      // position and outward normal in the (rho, z) half-plane
      double rho = R * std::sin(u), z = R * std::cos(u);
      double rho1 = R1 * std::sin(u) + R * std::cos(u);
      double z1 = R1 * std::cos(u) - R * std::sin(u);
      double nrho = -z1 / w, nz = rho1 / w;
      double rho_t = rho + t * nrho, z_t = z + t * nz;
      // tangent of the displaced generating curve by the same parameter
      double h = 1e-5;
      auto pos = [&](double v) {
        double Rv = s.profile.eval(v);
        double R1v = s.profile.eval(v, 1);
        double wv = std::hypot(Rv, R1v);
        double rv = Rv * std::sin(v), zv = Rv * std::cos(v);
        double r1v = R1v * std::sin(v) + Rv * std::cos(v);
        double z1v = R1v * std::cos(v) - Rv * std::sin(v);
        return std::pair<double, double>{rv - t * z1v / wv, zv + t * r1v / wv};
      };
      auto [rp, zp] = pos(u + h);
      auto [rm, zm] = pos(u - h);
      double speed = std::hypot((rp - rm) / (2 * h), (zp - zm) / (2 * h));
      (void)z_t;
      return kTwoPi * rho_t * speed;
    });
  };
  for (double u0 : {0.8, 1.6, 2.3}) {
    double du = 0.05, t = 1e-4;
    double a0 = area_band(u0, du, 0.0);
    double a1 = area_band(u0, du, t);
    double H_fd = (a1 / a0 - 1.0) / (2.0 * t);  // (nu - 1) = 2
    CHECK(mean_curvature_revolution(s, u0) == doctest::Approx(H_fd).epsilon(1e-3));
  }
}

TEST_CASE("revolution: conical pole is reported") {
  // sine harmonic gives R'(0) != 0
  DomainSpec s;
  s.kind = DomainKind::Revolution3D;
  s.dim = 3;
  s.profile = FourierSeries{{1.0}, {0.3}};
  CHECK_THROWS_AS(mean_curvature_revolution(s, 1e-8), std::invalid_argument);
}

TEST_CASE("geometry_summary closed forms") {
  SUBCASE("ball nu=3 R=1") {
    GeometrySummary g = geometry_summary(DomainSpec::ball(3, 1.0), 64);
    CHECK(g.volume == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-14));
    CHECK(g.boundary_area == doctest::Approx(4.0 * kPi).epsilon(1e-14));
    CHECK(g.h_max == 1.0);
  }
  SUBCASE("shell nu=3 a=1 b=2") {
    GeometrySummary g = geometry_summary(DomainSpec::shell(3, 1.0, 2.0), 64);
    CHECK(g.volume == doctest::Approx(4.0 * kPi / 3.0 * 7.0).epsilon(1e-14));
    CHECK(g.h_max == doctest::Approx(0.5));
    // inner-boundary sample carries the sign of the outward-normal convention
    CHECK(g.h_samples.front().second == doctest::Approx(-1.0));
  }
  SUBCASE("unit disk as star2d") {
    GeometrySummary g = geometry_summary(DomainSpec::disk(1.0), 64);
    CHECK(g.volume == doctest::Approx(kPi).epsilon(1e-13));
    CHECK(g.boundary_area == doctest::Approx(kTwoPi).epsilon(1e-13));
    CHECK(g.h_max == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g.converged);
  }
}

TEST_CASE("shell inner curvature sign: normal displacement oracle") {
  // Move the inner sphere outward (toward the center): the surface area
  // shrinks, so (1/(nu-1)) d log(area)/dt = -1/a < 0.
  double a = 1.0;
  int nu = 3;
  double t = 1e-6;
  double area0 = nu * unit_ball_volume(nu) * std::pow(a, nu - 1);
  double area1 = nu * unit_ball_volume(nu) * std::pow(a - t, nu - 1);
  double H_fd = (area1 / area0 - 1.0) / ((nu - 1) * t);
  GeometrySummary g = geometry_summary(DomainSpec::shell(nu, a, 2.0), 64);
  CHECK(g.h_samples.front().second == doctest::Approx(H_fd).epsilon(1e-5));
}

TEST_CASE("rotation invariance of summaries") {
  FourierSeries r{{1.0, 0.05, 0.2, 0.0, 0.03}, {0.0, 0.1, 0.02}};
  DomainSpec s = DomainSpec::star2d(r);
  DomainSpec rotated = DomainSpec::star2d(r.rotated(0.7));
  GeometrySummary g0 = geometry_summary(s, 256);
  GeometrySummary g1 = geometry_summary(rotated, 256);
  CHECK(g1.volume == doctest::Approx(g0.volume).epsilon(1e-10));
  CHECK(g1.boundary_area == doctest::Approx(g0.boundary_area).epsilon(1e-10));
  CHECK(g1.h_max == doctest::Approx(g0.h_max).epsilon(1e-10));
}

TEST_CASE("scaling covariance of summaries") {
  double lambda = 2.5;
  std::vector<DomainSpec> specs = {
      DomainSpec::star2d(FourierSeries{{1.0, 0.0, 0.2}, {0.05}}),
      DomainSpec::ball(4, 1.3), DomainSpec::shell(3, 0.7, 1.9),
      DomainSpec::revolution(FourierSeries{{1.0, 0.0, 0.15}, {}})};
  for (const auto& s : specs) {
    GeometrySummary g0 = geometry_summary(s, 256);
    GeometrySummary g1 = geometry_summary(s.scaled(lambda), 256);
    CHECK(g1.volume ==
          doctest::Approx(g0.volume * std::pow(lambda, s.dim)).epsilon(1e-10));
    CHECK(g1.boundary_area ==
          doctest::Approx(g0.boundary_area * std::pow(lambda, s.dim - 1)).epsilon(1e-10));
    CHECK(g1.h_max == doctest::Approx(g0.h_max / lambda).epsilon(1e-10));
  }
}

TEST_CASE("H_max positive on random valid specs") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> amp(-0.08, 0.08);
  for (int trial = 0; trial < 20; ++trial) {
    FourierSeries r;
    r.cos_coeffs = {1.0};
    for (int k = 1; k <= 5; ++k) r.cos_coeffs.push_back(amp(rng));
    for (int k = 1; k <= 5; ++k) r.sin_coeffs.push_back(amp(rng));
    DomainSpec s = DomainSpec::star2d(r);
    GeometrySummary g = geometry_summary(s, 128);
    CHECK(g.h_max > 0.0);
  }
}

TEST_CASE("invalid specs are rejected") {
  CHECK_THROWS_AS(DomainSpec::ball(3, -1.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(DomainSpec::shell(3, 2.0, 1.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(DomainSpec::shell(1, 1.0, 2.0).validate(), std::invalid_argument);
  // r(theta) dips negative
  CHECK_THROWS_AS(DomainSpec::star2d(FourierSeries{{1.0, 1.5}, {}}).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(geometry_summary(DomainSpec::disk(1.0), 8), std::invalid_argument);
}

TEST_CASE("support function: circle and translated circle") {
  DomainSpec disk = DomainSpec::disk(2.0);
  for (double t : {0.1, 1.0, 3.0})
    CHECK(support_function(disk, t) == doctest::Approx(2.0).epsilon(1e-13));

  // translated circle via its radial graph: center (0.3, 0), radius 1
  double cx = 0.3;
  auto radius = [&](double th) {
    return cx * std::cos(th) + std::sqrt(1.0 - cx * cx * std::sin(th) * std::sin(th));
  };
  DomainSpec shifted = DomainSpec::star2d(fourier_fit(radius, 64));
  // p varies, but (1/nu) int p dS still equals the area
  double integral = trapezoid_periodic(
      [&](double th) { return support_star2d(shifted, th) * speed_star2d(shifted, th); },
      512);
  CHECK(integral / 2.0 == doctest::Approx(kPi).epsilon(1e-10));
  // dot-product route agrees with the closed radial-graph formula
  for (double th : {0.0, 0.9, 2.2, 5.1}) {
    auto pt = boundary_point_star2d(shifted, th);
    auto nv = outward_normal_star2d(shifted, th);
    CHECK(support_star2d(shifted, th) ==
          doctest::Approx(pt[0] * nv[0] + pt[1] * nv[1]).epsilon(1e-12));
  }
}

TEST_CASE("ellipse support function is positive (star-shaped)") {
  DomainSpec e = ellipse_spec(2.0, 1.0);
  for (int i = 0; i < 64; ++i) CHECK(support_function(e, kTwoPi * i / 64) > 0.0);
}

TEST_CASE("perturbed-disk summary self-consistency under refinement") {
  DomainSpec s = perturbed_disk(0.1, 3);
  GeometrySummary coarse = geometry_summary(s, 64);
  GeometrySummary fine = geometry_summary(s, 256);
  CHECK(coarse.volume == doctest::Approx(fine.volume).epsilon(1e-12));
  CHECK(coarse.h_max == doctest::Approx(fine.h_max).epsilon(1e-10));
}

TEST_CASE("h_max agrees with the sample maximum up to grid resolution") {
  for (const DomainSpec& s :
       {perturbed_disk(0.15, 2), ellipse_spec(1.6, 1.0),
        DomainSpec::revolution(FourierSeries{{1.0, 0.0, 0.12}, {}})}) {
    GeometrySummary g = geometry_summary(s, 128);
    double sample_max = -1e300;
    for (const auto& [t, h] : g.h_samples) sample_max = std::max(sample_max, h);
    CHECK(g.h_max >= sample_max - 1e-12);
    CHECK(g.h_max - sample_max < 1e-2 * std::abs(g.h_max));
  }
}
