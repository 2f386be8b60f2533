#pragma once

// Named test functions ("monomial:2,1", "chi_disk:0.7071", ...) and CSV
// sample files (r,theta,re,im on a product grid or x,y,re,im free points).

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpapprox/certificates.hpp"
#include "lpapprox/grid.hpp"

namespace lpapprox {

struct FunctionRef {
  std::string text;  ///< original spelling
  std::string name;
  std::vector<double> params;
  std::string path;  ///< samples file
  int dim = 2;       ///< newton kernels: ambient dimension after '@'

  static FunctionRef parse(const std::string& text) {
    FunctionRef ref;
    ref.text = text;
    const auto colon = text.find(':');
    ref.name = text.substr(0, colon);
    if (ref.name.empty()) throw std::invalid_argument("function reference is empty");
    std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    if (ref.name == "samples") {
      if (rest.empty()) throw std::invalid_argument("samples: needs a file path");
      ref.path = rest;
      return ref;
    }
    if (const auto at = rest.find('@'); at != std::string::npos) {
      ref.dim = std::stoi(rest.substr(at + 1));
      rest = rest.substr(0, at);
    }
    std::stringstream ss(rest);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size() || tok.empty())
        throw std::invalid_argument("bad parameter '" + tok + "' in function reference '" + text + "'");
      ref.params.push_back(v);
    }
    ref.validate();
    return ref;
  }

  bool is_samples() const { return name == "samples"; }
  bool is_newton() const { return name == "newton"; }

 private:
  void validate() const {
    static const std::map<std::string, std::pair<std::size_t, std::size_t>> arity{
        {"zero", {0, 0}},        {"monomial", {2, 2}}, {"conj_shift", {1, 1}}, {"chi_disk", {1, 1}},
        {"prop53", {1, 1}},      {"ratio53", {1, 1}},  {"radial_r", {0, 0}},   {"abs_pow", {1, 1}},
        {"re_plus_abs2", {0, 0}}, {"poly_mix", {0, 0}}, {"newton", {2, 8}},     {"abs2", {0, 0}}};
    const auto it = arity.find(name);
    if (it == arity.end()) throw std::invalid_argument("unknown catalog function '" + name + "'");
    if (params.size() < it->second.first || params.size() > it->second.second)
      throw std::invalid_argument("wrong parameter count for '" + name + "'");
    if (name == "monomial" && (params[0] < 0 || params[1] < 0 || params[0] != std::floor(params[0]) ||
                               params[1] != std::floor(params[1])))
      throw std::invalid_argument("monomial: exponents must be nonnegative integers");
    if (name == "newton" && static_cast<int>(params.size()) != dim)
      throw std::invalid_argument("newton: point dimension must match the '@n' suffix");
  }
};

/// Disk evaluator for a catalog reference.
inline std::function<cplx(cplx)> disk_function(const FunctionRef& ref) {
  const auto& p = ref.params;
  if (ref.name == "zero") return [](cplx) { return cplx(0.0); };
  if (ref.name == "monomial") {
    const int n = static_cast<int>(p[0]), m = static_cast<int>(p[1]);
    return [n, m](cplx z) { return std::pow(z, n) * std::pow(std::conj(z), m); };
  }
  if (ref.name == "conj_shift") {
    const double a = p[0];
    return [a](cplx z) { return std::conj(z + a); };
  }
  if (ref.name == "chi_disk") {
    const double r0 = p[0];
    return [r0](cplx z) { return std::abs(z) < r0 ? cplx(1.0) : cplx(0.0); };
  }
  if (ref.name == "prop53") {
    const double a = p[0];
    return [a](cplx z) { return std::pow(std::conj(z) - a, 4); };
  }
  if (ref.name == "ratio53") {
    const double a = p[0];
    return [a](cplx z) {
      const cplx q = (z - a) / (std::conj(z) - a);
      return q * q;
    };
  }
  if (ref.name == "radial_r") return [](cplx z) { return cplx(std::abs(z)); };
  if (ref.name == "abs2") return [](cplx z) { return cplx(std::norm(z)); };
  if (ref.name == "abs_pow") {
    const double s = p[0];
    return [s](cplx z) { return cplx(std::pow(std::abs(z), s)); };
  }
  if (ref.name == "re_plus_abs2") return [](cplx z) { return cplx(z.real() + std::norm(z)); };
  if (ref.name == "poly_mix")
    return [](cplx z) { return 0.5 * z * z * std::conj(z) - cplx(0, 0.25) * std::conj(z) + 0.3 * z + 0.1; };
  if (ref.name == "newton") {
    if (ref.dim != 2) throw std::invalid_argument("newton: only the planar kernel is a disk function");
    const cplx y(p[0], p[1]);
    return [y](cplx z) { return cplx(std::log(std::abs(z - y))); };
  }
  throw std::invalid_argument("'" + ref.name + "' has no disk evaluator");
}

/// Radial breaks that make the product grid respect a function's jumps.
inline std::vector<double> natural_breaks(const FunctionRef& ref) {
  if (ref.name == "chi_disk" && ref.params[0] > 0.0 && ref.params[0] < 1.0) return {ref.params[0]};
  return {};
}

/// Catalog entries used as fixtures in tests and sweeps.
inline std::vector<std::string> catalog_fixtures() {
  return {"monomial:1,1",  "monomial:2,1", "monomial:0,1",      "monomial:3,1", "conj_shift:2",
          "chi_disk:0.5",  "prop53:0.5",   "re_plus_abs2",      "poly_mix",     "abs_pow:1.5"};
}

// ------------------------------------------------------------------ CSV I/O

inline std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

/// Writes r,theta,re,im for product grids and x,y,re,im otherwise.
inline void write_samples_csv(std::ostream& os, const DiskGrid& grid, const Field& f) {
  detail::check_aligned(f.size(), grid.size());
  if (grid.is_product()) {
    os << "r,theta,re,im\n";
  } else {
    os << "x,y,re,im\n";
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const cplx z = grid.nodes()[i];
    if (grid.is_product()) {
      double th = std::arg(z);
      if (th < 0.0) th += 2.0 * kPi;
      os << format_double(std::abs(z)) << ',' << format_double(th);
    } else {
      os << format_double(z.real()) << ',' << format_double(z.imag());
    }
    os << ',' << format_double(f.values[i].real()) << ',' << format_double(f.values[i].imag()) << '\n';
  }
}

struct SampleSet {
  DiskGrid grid;
  Field field;
};

namespace detail {
inline std::vector<std::vector<double>> read_rows(std::istream& is, std::string& header) {
  if (!std::getline(is, header)) throw std::runtime_error("samples: empty file");
  header.erase(std::remove_if(header.begin(), header.end(), [](char c) { return c == ' ' || c == '\r'; }),
               header.end());
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string tok;
    std::vector<double> row;
    while (std::getline(ss, tok, ',')) {
      std::size_t used = 0;
      try {
        row.push_back(std::stod(tok, &used));
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0) throw std::runtime_error("samples: bad number on line " + std::to_string(lineno));
    }
    if (row.size() != 4) throw std::runtime_error("samples: expected 4 columns on line " + std::to_string(lineno));
    rows.push_back(row);
  }
  if (rows.empty()) throw std::runtime_error("samples: no data rows");
  return rows;
}
}  // namespace detail

/// Reads a samples file. Polar files must lie on a product grid with either
/// no radial split or a split at 1/sqrt(2); free points get equal weights.
inline SampleSet read_samples_csv(std::istream& is) {
  std::string header;
  const auto rows = detail::read_rows(is, header);
  if (header == "x,y,re,im") {
    std::vector<cplx> nodes;
    std::vector<double> w(rows.size(), 1.0 / static_cast<double>(rows.size()));
    Field f;
    for (const auto& r : rows) {
      const cplx z(r[0], r[1]);
      if (std::abs(z) > 1.0 + 1e-12) throw std::runtime_error("samples: free point outside the closed disk");
      nodes.push_back(z);
      f.values.emplace_back(r[2], r[3]);
    }
    f.source = "samples";
    return {DiskGrid::scattered(std::move(nodes), std::move(w)), f};
  }
  if (header != "r,theta,re,im") throw std::runtime_error("samples: header must be r,theta,re,im or x,y,re,im");
  std::vector<double> rs;
  for (const auto& r : rows) rs.push_back(r[0]);
  std::sort(rs.begin(), rs.end());
  rs.erase(std::unique(rs.begin(), rs.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }), rs.end());
  const std::size_t n_r = rs.size();
  if (rows.size() % n_r != 0) throw std::runtime_error("samples: rows do not form a product grid");
  const int n_theta = static_cast<int>(rows.size() / n_r);
  if (n_theta < 4) throw std::runtime_error("samples: a product grid needs at least 4 angles per ring");
  for (const std::vector<double>& breaks : {std::vector<double>{}, std::vector<double>{std::sqrt(0.5)}}) {
    const int panels = static_cast<int>(breaks.size()) + 1;
    if (n_r % panels != 0) continue;
    DiskGrid g = DiskGrid::product(static_cast<int>(n_r) / panels, n_theta, breaks);
    bool match = true;
    for (std::size_t k = 0; k < n_r && match; ++k) match = std::abs(g.radii()[k] - rs[k]) < 1e-12;
    if (!match) continue;
    Field f;
    f.source = "samples";
    f.values.assign(g.size(), cplx(0.0));
    std::vector<char> seen(g.size(), 0);
    for (const auto& r : rows) {
      const auto ir = static_cast<std::size_t>(
          std::lower_bound(rs.begin(), rs.end(), r[0] - 1e-12) - rs.begin());
      const double jt = r[1] / (2.0 * kPi) * n_theta;
      const long j = std::lround(jt);
      if (std::abs(jt - static_cast<double>(j)) > 1e-6) throw std::runtime_error("samples: theta off the grid");
      const std::size_t idx = g.index(ir, static_cast<int>(((j % n_theta) + n_theta) % n_theta));
      if (seen[idx]) throw std::runtime_error("samples: duplicate grid node");
      seen[idx] = 1;
      f.values[idx] = cplx(r[2], r[3]);
    }
    return {std::move(g), std::move(f)};
  }
  throw std::runtime_error("samples: radii are not the nodes of a standard product grid");
}

inline SampleSet read_samples_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("samples: cannot open " + path);
  return read_samples_csv(in);
}

}  // namespace lpapprox
