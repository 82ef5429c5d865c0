// robinspec CLI: batch driver around the Robin-eigenvalue and boundary
// geometry library. Subcommands: eig, model1d, fit, geom, compare, perturb,
// plot. Exit codes: 0 ok, 2 configuration error, 3 solver non-convergence
// (partial results are still written).
#include <atomic>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "robinspec/asympt.hpp"
#include "robinspec/domain.hpp"
#include "robinspec/fem.hpp"
#include "robinspec/geominequal.hpp"
#include "robinspec/geometry.hpp"
#include "robinspec/model1d.hpp"
#include "robinspec/radial.hpp"
#include "robinspec/spectral_result.hpp"
#include "robinspec/svg.hpp"

namespace {

using namespace robinspec;

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_alpha_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string p;
  while (std::getline(ss, p, ':')) parts.push_back(p);
  if (parts.size() < 3 || parts.size() > 4)
    throw ConfigError("alpha-grid must be A:B:N or A:B:N:geom");
  double a = parse_double(parts[0]);
  double b = parse_double(parts[1]);
  int n = std::stoi(parts[2]);
  bool geom = parts.size() == 4;
  if (geom && parts[3] != "geom")
    throw ConfigError("alpha-grid: unknown spacing '" + parts[3] + "'");
  if (n < 1 || b < a) throw ConfigError("alpha-grid: need N >= 1 and B >= A");
  if (geom && !(a > 0.0)) throw ConfigError("alpha-grid: geometric needs A > 0");
  std::vector<double> grid;
  if (n == 1) {
    grid.push_back(a);
    return grid;
  }
  for (int i = 0; i < n; ++i)
    grid.push_back(geom ? a * std::pow(b / a, double(i) / (n - 1))
                        : a + (b - a) * double(i) / (n - 1));
  return grid;
}

std::string file_stem(const std::string& path) {
  auto slash = path.find_last_of("/\\");
  std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
  auto dot = name.find_last_of('.');
  return dot == std::string::npos ? name : name.substr(0, dot);
}

DomainSpec load_domain(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open domain file: " + path);
  nlohmann::json j;
  try {
    in >> j;
    return domain_from_json(j);
  } catch (const std::exception& e) {
    throw ConfigError("bad domain file " + path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write: " + path);
  out << content;
}

// Fans jobs over a small worker pool; results land at their input index, so
// output order is independent of scheduling.
template <class Job>
void run_pool(int jobs, const Job& job) {
  unsigned workers = std::min<unsigned>(std::thread::hardware_concurrency(),
                                        static_cast<unsigned>(jobs));
  if (workers <= 1) {
    for (int i = 0; i < jobs; ++i) job(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next++; i < jobs; i = next++) job(i);
    });
  for (auto& t : pool) t.join();
}

// ---------------------------------------------------------------------------

int cmd_eig(const std::string& domain_file, const std::string& grid_text,
            int count, const std::string& method, const std::string& preset_name,
            const std::string& out_file) {
  DomainSpec spec = load_domain(domain_file);
  std::vector<double> grid = parse_alpha_grid(grid_text);
  std::string id = file_stem(domain_file);

  bool any_flagged = false;
  std::vector<std::vector<SpectralResult>> per_alpha(grid.size());
  if (method == "radial") {
    if (spec.kind != DomainKind::Ball && spec.kind != DomainKind::Shell)
      throw ConfigError("method radial needs a ball or shell domain");
    run_pool(static_cast<int>(grid.size()), [&](int i) {
      NegativeSpectrum s =
          spec.kind == DomainKind::Ball
              ? ball_negative_spectrum(spec.dim, spec.radius, grid[i], count, id)
              : shell_negative_spectrum(spec.dim, spec.inner, spec.outer, grid[i],
                                        count, id);
      per_alpha[i] = std::move(s.modes);
    });
  } else if (method == "fem") {
    if (spec.kind != DomainKind::Star2D)
      throw ConfigError("method fem needs a star2d domain");
    FemPreset preset = fem_preset(preset_name);
    run_pool(static_cast<int>(grid.size()), [&](int i) {
      FemLadderResult lad = refine_and_extrapolate(spec, grid[i], count, preset, id);
      per_alpha[i] = std::move(lad.results);
    });
  } else {
    throw ConfigError("unknown method: " + method);
  }

  std::vector<SpectralResult> rows;
  for (const auto& block : per_alpha)
    for (const auto& r : block) {
      rows.push_back(r);
      any_flagged = any_flagged || r.flagged;
    }
  write_csv_file(out_file, rows);
  if (any_flagged) {
    std::cerr << "warning: some results flagged (truncation or non-convergence)\n";
    return kExitSolver;
  }
  return 0;
}

int cmd_model1d(double delta, double m_max, double beta,
                const std::string& grid_text, int count, const std::string& op,
                const std::string& out_file) {
  std::vector<double> grid = parse_alpha_grid(grid_text);
  std::ostringstream out;
  out << "alpha,operator,j,E,k,trace0\n";
  for (double alpha : grid) {
    Model1DParams p{delta, m_max, beta, alpha};
    std::vector<std::pair<std::string, Model1DResult>> runs;
    if (op == "tplus" || op == "both")
      runs.emplace_back("tplus", tplus_eigenvalues(p, count));
    if (op == "tminus" || op == "both")
      runs.emplace_back("tminus", tminus_eigenvalues(p, count));
    if (runs.empty()) throw ConfigError("operator must be tplus, tminus, or both");
    for (const auto& [name, res] : runs) {
      for (std::size_t jj = 0; jj < res.eigenvalues.size(); ++jj) {
        double k = jj < res.k_values.size() ? res.k_values[jj] : 0.0;
        double trace0 = (jj == 0 && res.has_ground) ? res.trace0 : 0.0;
        out << format_double(alpha) << "," << name << "," << (jj + 1) << ","
            << format_double(res.eigenvalues[jj]) << "," << format_double(k) << ","
            << format_double(trace0) << "\n";
      }
    }
  }
  write_text(out_file, out.str());
  return 0;
}

int cmd_geom(const std::string& domain_file, const std::string& checks_text,
             int quadrature_n, const std::string& out_file) {
  DomainSpec spec = load_domain(domain_file);
  std::string id = file_stem(domain_file);
  std::set<std::string> wanted;
  std::stringstream ss(checks_text);
  std::string c;
  while (std::getline(ss, c, ',')) wanted.insert(c);
  for (const auto& w : wanted)
    if (w != "divergence" && w != "minkowski" && w != "hmax-bound")
      throw ConfigError("unknown check: " + w);

  GeometrySummary g = geometry_summary(spec, quadrature_n);
  nlohmann::json out;
  out["domain_id"] = id;
  out["dim"] = spec.dim;
  out["volume"] = g.volume;
  out["area"] = g.boundary_area;
  out["h_max"] = g.h_max;
  out["quadrature_n"] = quadrature_n;
  out["checks"] = nlohmann::json::array();
  if (wanted.count("divergence"))
    out["checks"].push_back(to_json(check_divergence_identity(spec, quadrature_n, id)));
  if (wanted.count("minkowski"))
    out["checks"].push_back(to_json(check_minkowski(spec, quadrature_n, id)));
  if (wanted.count("hmax-bound"))
    out["checks"].push_back(to_json(hmax_bound_as_check(spec, quadrature_n, id)));
  write_text(out_file, out.dump(2) + "\n");
  return 0;
}

int cmd_fit(const std::string& in_file, int j, const std::string& mode,
            const std::string& geometry_file, const std::string& out_file) {
  std::vector<SpectralResult> rows = read_csv_file(in_file);
  if (rows.empty()) throw ConfigError("no data rows in " + in_file);
  for (const auto& r : rows)
    if (r.domain_id != rows.front().domain_id)
      throw ConfigError("input mixes several curves (" + rows.front().domain_id +
                        ", " + r.domain_id + "); fit one at a time");
  AsymptoticFit fit;
  if (mode == "coeff") {
    fit = fit_linear_coefficient(rows, j);
  } else if (mode == "exponent") {
    if (geometry_file.empty())
      throw ConfigError("--geometry is required for exponent mode");
    std::ifstream in(geometry_file);
    if (!in) throw ConfigError("cannot open geometry file: " + geometry_file);
    nlohmann::json g;
    in >> g;
    double c_ref = (g.at("dim").get<int>() - 1) * g.at("h_max").get<double>();
    fit = fit_remainder_exponent(rows, c_ref, j);
  } else {
    throw ConfigError("mode must be coeff or exponent");
  }
  write_text(out_file, to_json(fit, rows.front().domain_id).dump(2) + "\n");
  return 0;
}

int cmd_compare(const std::string& a_file, const std::string& b_file, int j,
                const std::string& out_file) {
  auto a = read_csv_file(a_file);
  auto b = read_csv_file(b_file);
  CrossingReport rep = compare_domains(a, b, j);
  write_text(out_file, to_json(rep).dump(2) + "\n");
  return 0;
}

int cmd_perturb(const std::string& domain_file, double eps, int iters,
                const std::string& out_file) {
  DomainSpec spec = load_domain(domain_file);
  if (iters < 1) throw ConfigError("--iters must be >= 1");
  for (int i = 0; i < iters; ++i) spec = perturb_reduce_hmax(spec, eps);
  write_text(out_file, to_json(spec).dump(2) + "\n");
  return 0;
}

int cmd_plot(const std::string& in_file, const std::string& kind,
             const std::string& out_file) {
  if (kind == "geometry") {
    DomainSpec spec = load_domain(in_file);
    std::vector<std::vector<std::array<double, 2>>> curves;
    auto circle = [](double R) {
      std::vector<std::array<double, 2>> pts;
      for (int i = 0; i < 256; ++i) {
        double t = kTwoPi * i / 256;
        pts.push_back({R * std::cos(t), R * std::sin(t)});
      }
      return pts;
    };
    switch (spec.kind) {
      case DomainKind::Star2D: {
        std::vector<std::array<double, 2>> pts;
        for (int i = 0; i < 512; ++i)
          pts.push_back(boundary_point_star2d(spec, kTwoPi * i / 512));
        curves.push_back(std::move(pts));
        break;
      }
      case DomainKind::Ball:
        curves.push_back(circle(spec.radius));
        break;
      case DomainKind::Shell:
        curves.push_back(circle(spec.outer));
        curves.push_back(circle(spec.inner));
        break;
      case DomainKind::Revolution3D: {
        // meridian cross-section through the axis
        std::vector<std::array<double, 2>> pts;
        for (int i = 0; i <= 256; ++i) {
          double u = kPi * i / 256;
          double R = spec.profile.eval(u);
          pts.push_back({R * std::sin(u), R * std::cos(u)});
        }
        for (int i = 256; i >= 0; --i) {
          double u = kPi * i / 256;
          double R = spec.profile.eval(u);
          pts.push_back({-R * std::sin(u), R * std::cos(u)});
        }
        curves.push_back(std::move(pts));
        break;
      }
    }
    write_text(out_file,
               render_curves_plot(curves, "boundary: " + file_stem(in_file)));
    return 0;
  }

  if (kind != "eig-curve" && kind != "c-curve")
    throw ConfigError("kind must be eig-curve, c-curve, or geometry");
  std::vector<SpectralResult> rows = read_csv_file(in_file);
  if (rows.empty()) throw ConfigError("no data rows in " + in_file);
  std::map<int, PlotSeries> by_j;
  for (const auto& r : rows) {
    PlotSeries& s = by_j[r.j];
    s.label = "j=" + std::to_string(r.j);
    s.x.push_back(r.alpha);
    s.y.push_back(kind == "eig-curve" ? r.E + r.alpha * r.alpha
                                      : -(r.E + r.alpha * r.alpha) / r.alpha);
  }
  std::vector<PlotSeries> series;
  for (auto& [jj, s] : by_j) series.push_back(std::move(s));
  std::string title = rows.front().domain_id +
                      (kind == "eig-curve" ? ": E + alpha^2" : ": c(alpha)");
  std::string ylabel = kind == "eig-curve" ? "E + alpha^2" : "-(E + alpha^2)/alpha";
  write_text(out_file, render_line_plot(series, title, "alpha", ylabel, true));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robin Laplacian eigenvalues and boundary mean-curvature toolkit"};
  app.require_subcommand(1);

  std::string domain_file, grid_text = "10:160:9:geom", method = "radial";
  std::string preset = "fine", out_file, in_file, a_file, b_file;
  std::string checks = "divergence,minkowski,hmax-bound", mode = "coeff";
  std::string geometry_file, kind = "eig-curve", op = "both";
  int count = 1, j = 1, iters = 1, quadrature_n = 256;
  double eps = 0.01, delta = 1.0, m_max = 0.0, beta = 0.0;

  auto* eig = app.add_subcommand("eig", "compute eigenvalue curves");
  eig->add_option("--domain", domain_file)->required();
  eig->add_option("--alpha-grid", grid_text);
  eig->add_option("--count", count);
  eig->add_option("--method", method);
  eig->add_option("--mesh-preset", preset);
  eig->add_option("--out", out_file)->required();

  auto* m1d = app.add_subcommand("model1d", "1D model operator spectra");
  m1d->add_option("--delta", delta);
  m1d->add_option("--mmax", m_max);
  m1d->add_option("--beta", beta);
  m1d->add_option("--alpha-grid", grid_text);
  m1d->add_option("--count", count);
  m1d->add_option("--operator", op);
  m1d->add_option("--out", out_file)->required();

  auto* fit = app.add_subcommand("fit", "asymptotic fits of eigenvalue curves");
  fit->add_option("--in", in_file)->required();
  fit->add_option("--j", j);
  fit->add_option("--mode", mode);
  fit->add_option("--geometry", geometry_file);
  fit->add_option("--out", out_file)->required();

  auto* geom = app.add_subcommand("geom", "geometry summaries and checks");
  geom->add_option("--domain", domain_file)->required();
  geom->add_option("--checks", checks);
  geom->add_option("--quadrature-n", quadrature_n);
  geom->add_option("--out", out_file)->required();

  auto* cmp = app.add_subcommand("compare", "compare two eigenvalue curves");
  cmp->add_option("--a", a_file)->required();
  cmp->add_option("--b", b_file)->required();
  cmp->add_option("--j", j);
  cmp->add_option("--out", out_file)->required();

  auto* pert = app.add_subcommand("perturb", "area-preserving H_max reduction");
  pert->add_option("--domain", domain_file)->required();
  pert->add_option("--eps", eps);
  pert->add_option("--iters", iters);
  pert->add_option("--out", out_file)->required();

  auto* plot = app.add_subcommand("plot", "SVG plots of curves and domains");
  plot->add_option("--in", in_file)->required();
  plot->add_option("--kind", kind);
  plot->add_option("--out", out_file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (eig->parsed())
      return cmd_eig(domain_file, grid_text, count, method, preset, out_file);
    if (m1d->parsed())
      return cmd_model1d(delta, m_max, beta, grid_text, count, op, out_file);
    if (fit->parsed()) return cmd_fit(in_file, j, mode, geometry_file, out_file);
    if (geom->parsed()) return cmd_geom(domain_file, checks, quadrature_n, out_file);
    if (cmp->parsed()) return cmd_compare(a_file, b_file, j, out_file);
    if (pert->parsed()) return cmd_perturb(domain_file, eps, iters, out_file);
    if (plot->parsed()) return cmd_plot(in_file, kind, out_file);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  }
  return 0;
}
