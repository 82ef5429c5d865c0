// Declarative domain descriptions and their JSON wire format.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "robinspec/fourier.hpp"

namespace robinspec {

enum class DomainKind { Star2D, Ball, Shell, Revolution3D };

inline std::string to_string(DomainKind kind) {
  switch (kind) {
    case DomainKind::Star2D: return "star2d";
    case DomainKind::Ball: return "ball";
    case DomainKind::Shell: return "shell";
    case DomainKind::Revolution3D: return "revolution";
  }
  return "?";
}

// One struct for all kinds; only the fields of the active kind are meaningful.
struct DomainSpec {
  DomainKind kind = DomainKind::Ball;

  // Star2D: boundary radius r(theta) as a Fourier series.
  FourierSeries radial;

  // Ball / Shell
  int dim = 2;
  double radius = 1.0;  // Ball
  double inner = 0.0, outer = 0.0;  // Shell

  // Revolution3D: radius R(u) of the boundary as a function of the polar
  // angle u in [0, pi], extended as a 2*pi-periodic Fourier series.
  FourierSeries profile;

  static DomainSpec star2d(FourierSeries r) {
    DomainSpec s;
    s.kind = DomainKind::Star2D;
    s.dim = 2;
    s.radial = std::move(r);
    return s;
  }
  static DomainSpec ball(int dim, double radius) {
    DomainSpec s;
    s.kind = DomainKind::Ball;
    s.dim = dim;
    s.radius = radius;
    return s;
  }
  static DomainSpec shell(int dim, double inner, double outer) {
    DomainSpec s;
    s.kind = DomainKind::Shell;
    s.dim = dim;
    s.inner = inner;
    s.outer = outer;
    return s;
  }
  static DomainSpec revolution(FourierSeries profile) {
    DomainSpec s;
    s.kind = DomainKind::Revolution3D;
    s.dim = 3;
    s.profile = std::move(profile);
    return s;
  }

  static DomainSpec disk(double radius) {
    return star2d(FourierSeries{{radius}, {}});
  }

  // Throws std::invalid_argument when the description is unusable.
  void validate() const {
    switch (kind) {
      case DomainKind::Star2D: {
        if (radial.cos_coeffs.empty())
          throw std::invalid_argument("star2d: empty radial series");
        int n = 8 * (radial.max_harmonic() + 1) + 64;
        for (int i = 0; i < n; ++i) {
          if (radial.eval(kTwoPi * i / n) <= 0.0)
            throw std::invalid_argument("star2d: r(theta) must be positive");
        }
        break;
      }
      case DomainKind::Ball:
        if (dim < 2) throw std::invalid_argument("ball: dim must be >= 2");
        if (!(radius > 0.0)) throw std::invalid_argument("ball: radius <= 0");
        break;
      case DomainKind::Shell:
        if (dim < 2) throw std::invalid_argument("shell: dim must be >= 2");
        if (!(inner > 0.0) || !(outer > inner))
          throw std::invalid_argument("shell: need 0 < inner < outer");
        break;
      case DomainKind::Revolution3D: {
        if (profile.cos_coeffs.empty())
          throw std::invalid_argument("revolution: empty profile series");
        int n = 8 * (profile.max_harmonic() + 1) + 64;
        for (int i = 0; i <= n; ++i) {
          if (profile.eval(kPi * i / n) <= 0.0)
            throw std::invalid_argument("revolution: R(u) must be positive");
        }
        break;
      }
    }
  }

  // Dilation by `factor`: lengths scale linearly.
  DomainSpec scaled(double factor) const {
    DomainSpec out = *this;
    switch (kind) {
      case DomainKind::Star2D: out.radial = radial.scaled(factor); break;
      case DomainKind::Ball: out.radius = radius * factor; break;
      case DomainKind::Shell:
        out.inner = inner * factor;
        out.outer = outer * factor;
        break;
      case DomainKind::Revolution3D: out.profile = profile.scaled(factor); break;
    }
    return out;
  }
};

inline nlohmann::json to_json(const DomainSpec& spec) {
  nlohmann::json j;
  j["kind"] = to_string(spec.kind);
  switch (spec.kind) {
    case DomainKind::Star2D:
      j["cos"] = spec.radial.cos_coeffs;
      j["sin"] = spec.radial.sin_coeffs;
      break;
    case DomainKind::Ball:
      j["dim"] = spec.dim;
      j["radius"] = spec.radius;
      break;
    case DomainKind::Shell:
      j["dim"] = spec.dim;
      j["inner"] = spec.inner;
      j["outer"] = spec.outer;
      break;
    case DomainKind::Revolution3D:
      j["profile_cos"] = spec.profile.cos_coeffs;
      j["profile_sin"] = spec.profile.sin_coeffs;
      break;
  }
  return j;
}

inline DomainSpec domain_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  DomainSpec spec;
  if (kind == "star2d") {
    FourierSeries r;
    r.cos_coeffs = j.at("cos").get<std::vector<double>>();
    if (j.contains("sin")) r.sin_coeffs = j.at("sin").get<std::vector<double>>();
    spec = DomainSpec::star2d(std::move(r));
  } else if (kind == "ball") {
    spec = DomainSpec::ball(j.at("dim").get<int>(), j.at("radius").get<double>());
  } else if (kind == "shell") {
    spec = DomainSpec::shell(j.at("dim").get<int>(), j.at("inner").get<double>(),
                             j.at("outer").get<double>());
  } else if (kind == "revolution") {
    FourierSeries p;
    p.cos_coeffs = j.at("profile_cos").get<std::vector<double>>();
    if (j.contains("profile_sin"))
      p.sin_coeffs = j.at("profile_sin").get<std::vector<double>>();
    spec = DomainSpec::revolution(std::move(p));
  } else {
    throw std::invalid_argument("unknown domain kind: " + kind);
  }
  spec.validate();
  return spec;
}

}  // namespace robinspec
