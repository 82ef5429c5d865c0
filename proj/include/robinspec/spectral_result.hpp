// Per-eigenvalue result records and their CSV wire format.
#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace robinspec {

enum class SpectralMethod { RadialExact, Fem2D, Model1D };

inline std::string to_string(SpectralMethod m) {
  switch (m) {
    case SpectralMethod::RadialExact: return "radial";
    case SpectralMethod::Fem2D: return "fem";
    case SpectralMethod::Model1D: return "model1d";
  }
  return "?";
}

inline SpectralMethod method_from_string(const std::string& s) {
  if (s == "radial") return SpectralMethod::RadialExact;
  if (s == "fem") return SpectralMethod::Fem2D;
  if (s == "model1d") return SpectralMethod::Model1D;
  throw std::invalid_argument("unknown method: " + s);
}

struct SpectralResult {
  std::string domain_id;
  double alpha = 0.0;
  int j = 0;  // eigenvalue index, 1-based
  double E = 0.0;
  SpectralMethod method = SpectralMethod::RadialExact;
  std::string disc;  // method-specific discretization note
  double err_est = 0.0;
  int l = -1;            // angular momentum (radial method only)
  int multiplicity = 1;  // of the (l, k) mode (radial method only)
  bool flagged = false;  // truncation or non-convergence happened
};

// Shortest decimal that parses back to the same double.
inline std::string format_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{})
    throw std::invalid_argument("bad float field: " + s);
  return v;
}

// CSV layouts. The radial method pins its own column order; fem appends the
// discretization note after the common columns.
inline std::string csv_header(SpectralMethod m) {
  switch (m) {
    case SpectralMethod::RadialExact:
      return "domain_id,alpha,j,E,l,multiplicity,method,err_est";
    case SpectralMethod::Fem2D:
      return "domain_id,alpha,j,E,method,err_est,disc";
    case SpectralMethod::Model1D:
      return "alpha,operator,j,E,k,trace0";
  }
  return "";
}

inline std::string csv_row(const SpectralResult& r) {
  std::string out;
  switch (r.method) {
    case SpectralMethod::RadialExact:
      out = r.domain_id + "," + format_double(r.alpha) + "," +
            std::to_string(r.j) + "," + format_double(r.E) + "," +
            std::to_string(r.l) + "," + std::to_string(r.multiplicity) + "," +
            to_string(r.method) + "," + format_double(r.err_est);
      break;
    case SpectralMethod::Fem2D:
      out = r.domain_id + "," + format_double(r.alpha) + "," +
            std::to_string(r.j) + "," + format_double(r.E) + "," +
            to_string(r.method) + "," + format_double(r.err_est) + "," + r.disc;
      break;
    case SpectralMethod::Model1D:
      throw std::logic_error("model1d rows use their own writer");
  }
  return out;
}

inline void write_csv(std::ostream& os, const std::vector<SpectralResult>& rows) {
  if (rows.empty()) {
    os << "domain_id,alpha,j,E,method,err_est\n";
    return;
  }
  os << csv_header(rows.front().method) << "\n";
  for (const auto& r : rows) os << csv_row(r) << "\n";
}

// Header-driven reader covering all three layouts. Rows of the model1d
// layout come back with the operator name as domain_id and a solver-floor
// error estimate.
inline std::vector<SpectralResult> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("empty CSV");
  std::vector<std::string> cols;
  {
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cols.push_back(c);
  }
  std::map<std::string, int> idx;
  for (int i = 0; i < static_cast<int>(cols.size()); ++i) idx[cols[i]] = i;

  if (line == csv_header(SpectralMethod::Model1D)) {
    std::vector<SpectralResult> rows;
    while (std::getline(is, line)) {
      if (line.empty()) continue;
      std::vector<std::string> f;
      std::stringstream ss(line);
      std::string c;
      while (std::getline(ss, c, ',')) f.push_back(c);
      if (f.size() < 6) throw std::invalid_argument("short model1d CSV row");
      SpectralResult r;
      r.domain_id = f[1];
      r.alpha = parse_double(f[0]);
      r.j = std::stoi(f[2]);
      r.E = parse_double(f[3]);
      r.method = SpectralMethod::Model1D;
      r.err_est = 4e-13 * std::abs(r.E);
      rows.push_back(std::move(r));
    }
    return rows;
  }

  for (const char* need : {"domain_id", "alpha", "j", "E", "method", "err_est"})
    if (!idx.count(need))
      throw std::invalid_argument(std::string("CSV missing column: ") + need);

  std::vector<SpectralResult> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) f.push_back(c);
    if (f.size() < cols.size()) f.resize(cols.size());
    SpectralResult r;
    r.domain_id = f[idx["domain_id"]];
    r.alpha = parse_double(f[idx["alpha"]]);
    r.j = std::stoi(f[idx["j"]]);
    r.E = parse_double(f[idx["E"]]);
    r.method = method_from_string(f[idx["method"]]);
    r.err_est = parse_double(f[idx["err_est"]]);
    if (idx.count("l")) r.l = std::stoi(f[idx["l"]]);
    if (idx.count("multiplicity")) r.multiplicity = std::stoi(f[idx["multiplicity"]]);
    if (idx.count("disc")) r.disc = f[idx["disc"]];
    rows.push_back(std::move(r));
  }
  return rows;
}

inline std::vector<SpectralResult> read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open CSV: " + path);
  return read_csv(in);
}

inline void write_csv_file(const std::string& path,
                           const std::vector<SpectralResult>& rows) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write CSV: " + path);
  write_csv(out, rows);
}

}  // namespace robinspec
