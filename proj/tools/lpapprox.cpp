// lpapprox command-line driver.
//
//   lpapprox solve|certify|oracle|potential|peakset|sweep [args] [flags]
//
// Exit codes: 0 success/certified, 2 refuted, 3 inconclusive, 1 error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "lpapprox/lpapprox.hpp"

using namespace lpapprox;
using json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kRefuted = 2;
constexpr int kInconclusive = 3;

struct Common {
  std::string format = "json";
  std::string grid = "128,256";
  double tol = 1e-3;
  std::uint64_t seed = 0;
  std::string out;
};

struct Options {
  Common common;
  // function / solver
  std::string omega;
  std::string fstar = "zero";
  double p = 1.0;
  std::string basis = "analytic:4";
  std::string split;
  int K = -1;
  int flatness = -1;
  // geometry
  std::string region;
  std::string point;  // --y / --x / --z
  int dim = 2;
  std::string density = "sigma";
  std::string space = "analytic";
  std::string degrees = "1..8";
  std::string direction;
  double h = std::numeric_limits<double>::quiet_NaN();
  double M = 1e3;
  int samples = 100000;
  double band = 1e-3;
  int count = -1;
  int order = 3;
  int radial_points = 8;
  int radial_panels = 4096;
  double t_min = 1e-2, t_max = 1e-1;
  int t_count = 8;
  std::vector<std::string> args;
};

struct Outcome {
  json result = json::object();
  std::vector<std::string> paper_refs;
  int code = kOk;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

int verdict_code(const Verdict& v) {
  switch (v.status) {
    case VerdictStatus::certified: return kOk;
    case VerdictStatus::refuted: return kRefuted;
    case VerdictStatus::inconclusive: return kInconclusive;
  }
  return kError;
}

json verdict_json(const Verdict& v) {
  json j;
  j["status"] = to_string(v.status);
  j["witness"] = v.witness;
  j["witness_index"] = v.witness_index;
  j["witness_value"] = v.witness_value;
  j["tolerance"] = v.tolerance;
  j["notes"] = v.notes;
  return j;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || tok.empty()) throw std::invalid_argument("bad number '" + tok + "' in '" + s + "'");
    out.push_back(v);
  }
  return out;
}

Point parse_point(const std::string& s, int dim) {
  const auto v = parse_list(s);
  if (static_cast<int>(v.size()) != dim)
    throw std::invalid_argument("point '" + s + "' must have " + std::to_string(dim) + " coordinates");
  Point p(dim);
  for (int k = 0; k < dim; ++k) p[k] = v[static_cast<std::size_t>(k)];
  return p;
}

std::vector<int> parse_degrees(const std::string& s) {
  std::vector<int> out;
  if (const auto dots = s.find(".."); dots != std::string::npos) {
    const int a = std::stoi(s.substr(0, dots)), b = std::stoi(s.substr(dots + 2));
    if (a < 0 || b < a) throw std::invalid_argument("bad degree range '" + s + "'");
    for (int k = a; k <= b; ++k) out.push_back(k);
    return out;
  }
  for (double d : parse_list(s)) {
    if (d < 0 || d != std::floor(d)) throw std::invalid_argument("degrees must be nonnegative integers");
    out.push_back(static_cast<int>(d));
  }
  if (out.empty()) throw std::invalid_argument("no degrees given");
  return out;
}

std::pair<int, int> parse_grid(const std::string& s) {
  const auto v = parse_list(s);
  if (v.size() != 2 || v[0] < 1 || v[1] < 4 || v[0] != std::floor(v[0]) || v[1] != std::floor(v[1]))
    throw std::invalid_argument("--grid must be NR,NT with NR >= 1 and NT >= 4");
  return {static_cast<int>(v[0]), static_cast<int>(v[1])};
}

BasisSpec parse_basis(const std::string& s) {
  const auto colon = s.find(':');
  const std::string kind = s.substr(0, colon);
  int m = 0;
  if (colon != std::string::npos) m = std::stoi(s.substr(colon + 1));
  if (kind == "analytic") return {BasisKind::analytic, m};
  if (kind == "harmonic2d" || kind == "harmonic") return {BasisKind::harmonic2d, m};
  if (kind == "constants") return {BasisKind::constants, 0};
  throw std::invalid_argument("unknown basis '" + s + "' (analytic:m, harmonic2d:m, constants)");
}

std::string basis_string(const BasisSpec& b) {
  return b.kind == BasisKind::constants ? "constants" : to_string(b.kind) + ":" + std::to_string(b.degree);
}

/// Omega on a grid: catalog functions are sampled on the configured product
/// grid (split at their jump radii); sample files bring their own grid.
struct Sampled {
  DiskGrid grid;
  Field field;
  std::function<cplx(cplx)> fn;  // empty for samples
  std::vector<double> breaks;
};

/// Monomials: the best residual z^(n-m)(|z|^(2m) - c) changes sign on a
/// circle, where the p < 2 dual jumps.
std::vector<double> default_breaks(const FunctionRef& ref, const Options& o) {
  std::vector<double> breaks = natural_breaks(ref);
  if (ref.name != "monomial" || o.p < 1.0) return breaks;
  const int n = static_cast<int>(ref.params[0]), m = static_cast<int>(ref.params[1]);
  const int lo = std::min(n, m), hi = std::max(n, m);
  const bool harmonic = parse_basis(o.basis).kind == BasisKind::harmonic2d;
  if (lo < 1 || (!harmonic && m > n)) return breaks;
  breaks.push_back(std::pow(monomial_constant(hi, lo, o.p), 0.5 / lo));
  return breaks;
}

Sampled sample_omega(const FunctionRef& ref, const Options& o) {
  if (ref.is_samples()) {
    auto s = read_samples_csv(ref.path);
    return {std::move(s.grid), std::move(s.field), {}, {}};
  }
  const auto [nr, nt] = parse_grid(o.common.grid);
  std::vector<double> breaks = o.split.empty() ? default_breaks(ref, o) : parse_list(o.split);
  DiskGrid g = DiskGrid::product(nr, nt, breaks);
  auto fn = disk_function(ref);
  Field f = Field::sample(g, fn, ref.text);
  return {std::move(g), std::move(f), fn, breaks};
}

json coeffs_json(const Coeffs& c, const BasisSpec& spec) {
  json arr = json::array();
  for (std::size_t k = 0; k < spec.dimension(); ++k) {
    const cplx v = c[static_cast<Eigen::Index>(k)];
    const int pw = spec.power(k);
    arr.push_back({{"term", pw >= 0 ? "z^" + std::to_string(pw) : "conj(z)^" + std::to_string(-pw)},
                   {"re", v.real()},
                   {"im", v.imag()}});
  }
  return arr;
}

std::string fmt(double v) { return format_double(v); }

// ------------------------------------------------------------------ solve

Outcome cmd_solve(const Options& o, json& cfg) {
  if (o.omega.empty()) throw std::invalid_argument("solve: --omega is required");
  const FunctionRef ref = FunctionRef::parse(o.omega);
  const BasisSpec spec = parse_basis(o.basis);
  Sampled s = sample_omega(ref, o);
  SolverOptions so;
  so.p = o.p;
  so.seed = o.common.seed;
  so.flatness_probes = o.flatness >= 0 ? o.flatness : (o.p == 1.0 ? 8 : 0);
  const int K = o.K >= 0 ? o.K : 2 * spec.degree + 4;
  cfg["split"] = s.breaks;
  cfg["flatness_probes"] = so.flatness_probes;
  cfg["K"] = K;
  cfg["solver"] = {{"eps0", so.eps0}, {"eps_decay", so.eps_decay}, {"eps_min", so.eps_min},
                   {"max_outer", so.max_outer}, {"max_inner", so.max_inner}, {"grad_tol", so.grad_tol}};

  const ApproxSolution sol = solve_best(s.field, spec, so, s.grid);
  Outcome out;
  out.paper_refs = {"existence and duality characterization of best approximants",
                    "iteratively reweighted smoothing for the L1 problem"};
  json& r = out.result;
  r["coefficients"] = coeffs_json(sol.coeffs, spec);
  r["lambda"] = sol.lambda;
  r["iterations"] = sol.iterations;
  r["converged"] = sol.converged;
  r["flat"] = sol.flat;
  r["final_eps"] = sol.final_eps;
  r["gradient_norm"] = sol.gradient_norm;
  r["message"] = sol.message;
  const Field fstar = eval_combo(sol.coeffs, spec, s.grid.nodes());
  json cert;
  if (sol.lambda > 0.0) {
    const auto dual = construct_dual(s.field, fstar, o.p, sol.lambda);
    const auto problem = spec.kind == BasisKind::harmonic2d ? ProblemKind::harmonic : ProblemKind::analytic;
    cert["moment_residuals"] = check_annihilation(dual.g, problem, K, s.grid);
    cert["alignment_deviation"] = dual.alignment_deviation;
    cert["sup_norm"] = dual.sup_norm;
  } else {
    cert["moment_residuals"] = json::array();
    cert["note"] = "zero residual: omega lies in the span";
  }
  r["certificate"] = cert;
  out.code = sol.converged ? kOk : kInconclusive;
  out.header = {s.grid.is_product() ? "r" : "x", s.grid.is_product() ? "theta" : "y", "re", "im"};
  for (std::size_t i = 0; i < s.grid.size(); ++i) {
    const cplx z = s.grid.nodes()[i];
    const cplx res = sol.residual.values[i];
    double a = s.grid.is_product() ? std::abs(z) : z.real();
    double b = z.imag();
    if (s.grid.is_product()) {
      b = std::arg(z);
      if (b < 0.0) b += 2.0 * kPi;
    }
    out.rows.push_back({fmt(a), fmt(b), fmt(res.real()), fmt(res.imag())});
  }
  return out;
}

// ---------------------------------------------------------------- certify

Outcome cmd_certify(const Options& o, json& cfg) {
  if (o.omega.empty()) throw std::invalid_argument("certify: --omega is required");
  const FunctionRef ref = FunctionRef::parse(o.omega);
  Outcome out;
  if (ref.is_newton()) {
    if (o.fstar != "oracle") throw std::invalid_argument("certify: newton kernels are certified against --fstar oracle");
    const BallSpec spec(ref.dim);
    Point y(ref.dim);
    for (int k = 0; k < ref.dim; ++k) y[k] = ref.params[static_cast<std::size_t>(k)];
    const BallSampler sampler(spec, 16, 64, o.common.seed);
    NewtonCertificateOptions no;
    no.samples = static_cast<std::size_t>(o.samples);
    no.band = o.band;
    cfg["samples"] = o.samples;
    cfg["band"] = o.band;
    const NewtonApproximant a = newton_best_harmonic(y, spec);
    const Verdict v = newton_sign_certificate(y, spec, sampler, no);
    out.paper_refs = {"Newton kernel best harmonic approximant via Kelvin reflection",
                      "sharpness of the radius rho_n^2"};
    out.result["approximant"] = {{"valid", a.valid},
                                 {"constant", a.kelvin ? json(nullptr) : json(a.constant)},
                                 {"reflected_pole", a.kelvin ? json(std::vector<double>(a.kelvin->y_reflected.data(),
                                                                     a.kelvin->y_reflected.data() + ref.dim))
                                                             : json(nullptr)}};
    out.result["verdict"] = verdict_json(v);
    out.code = verdict_code(v);
    return out;
  }
  const BasisSpec spec = parse_basis(o.basis);
  const int K = o.K >= 0 ? o.K : 2 * spec.degree + 4;
  cfg["K"] = K;
  const auto problem = spec.kind == BasisKind::harmonic2d ? ProblemKind::harmonic : ProblemKind::analytic;
  out.header = {"k", "residual"};
  if (o.fstar == "zero" && !ref.is_samples()) {
    const auto [nr, nt] = parse_grid(o.common.grid);
    BadApproxOptions bo;
    bo.tolerance = o.common.tol;
    bo.n_r = nr;
    bo.n_theta = nt;
    bo.radial_breaks = o.split.empty() ? natural_breaks(ref) : parse_list(o.split);
    cfg["split"] = bo.radial_breaks;
    const auto res = badly_approximable_test(disk_function(ref), o.p, K, bo, problem);
    out.paper_refs = {"badly approximable functions: zero is the best approximant",
                      "duality characterization of best approximants"};
    out.result["verdict"] = verdict_json(res.verdict);
    out.result["residuals_coarse"] = res.residuals_coarse;
    out.result["residuals_fine"] = res.residuals_fine;
    out.result["zero_nodes"] = res.zero_nodes;
    for (std::size_t k = 0; k < res.residuals_fine.size(); ++k)
      out.rows.push_back({std::to_string(k), fmt(res.residuals_fine[k])});
    out.code = verdict_code(res.verdict);
    return out;
  }
  Sampled s = sample_omega(ref, o);
  cfg["split"] = s.breaks;
  Field fstar;
  if (o.fstar == "zero") {
    fstar.values.assign(s.grid.size(), 0.0);
  } else if (o.fstar == "oracle") {
    if (ref.name != "monomial") throw std::invalid_argument("certify: --fstar oracle needs a monomial or newton omega");
    MonomialProblem mp{static_cast<int>(ref.params[0]), static_cast<int>(ref.params[1]), o.p,
                       problem == ProblemKind::harmonic};
    const MonomialBest mb = monomial_best(mp);
    fstar = Field::sample(s.grid, mb, "oracle");
    out.result["oracle"] = {{"zero", mb.zero}, {"power", mb.power}, {"coefficient", mb.coefficient}};
  } else {
    const FunctionRef fr = FunctionRef::parse(o.fstar);
    if (fr.is_samples()) throw std::invalid_argument("certify: --fstar must be a catalog function");
    fstar = Field::sample(s.grid, disk_function(fr), fr.text);
  }
  const auto rep = certify_optimality(s.field, fstar, o.p, problem, K, s.grid, o.common.tol);
  out.paper_refs = {"duality characterization of best approximants",
                    "annihilator membership by vanishing moments"};
  out.result["verdict"] = verdict_json(rep.verdict);
  out.result["moment_residuals"] = rep.dual.moment_residuals;
  out.result["alignment_deviation"] = rep.dual.alignment_deviation;
  for (std::size_t k = 0; k < rep.dual.moment_residuals.size(); ++k)
    out.rows.push_back({std::to_string(k), fmt(rep.dual.moment_residuals[k])});
  out.code = verdict_code(rep.verdict);
  return out;
}

// ----------------------------------------------------------------- oracle

Outcome cmd_oracle(const Options& o, json& cfg) {
  if (o.args.empty()) throw std::invalid_argument("oracle: kind required (monomial|radial|kelvin|newton|aghr|cutoff)");
  const std::string kind = o.args[0];
  Outcome out;
  if (kind == "monomial") {
    if (o.args.size() != 3) throw std::invalid_argument("oracle monomial: expects N M");
    const int n = std::stoi(o.args[1]), m = std::stoi(o.args[2]);
    cfg["space"] = o.space;
    const MonomialBest mb = monomial_best({n, m, o.p, o.space == "harmonic"});
    out.paper_refs = {"closed-form best approximant of z^n conj(z)^m"};
    out.result["zero"] = mb.zero;
    out.result["power"] = mb.power;
    out.result["coefficient"] = mb.coefficient;
    if (!mb.zero && mb.coefficient != 1.0) {
      const int a = std::max(n, m), b = std::min(n, m);
      out.result["psi_at_root"] = monomial_psi(a, b, o.p, mb.coefficient);
    }
    out.header = {"key", "value"};
    out.rows = {{"coefficient", fmt(mb.coefficient)}, {"power", std::to_string(mb.power)}};
    return out;
  }
  if (kind == "radial") {
    if (o.omega.empty()) throw std::invalid_argument("oracle radial: --omega is required");
    const FunctionRef ref = FunctionRef::parse(o.omega);
    const auto fn = disk_function(ref);
    cfg["radial_points"] = o.radial_points;
    cfg["radial_panels"] = o.radial_panels;
    const RadialGrid g = build_radial_grid(o.radial_points, o.dim, natural_breaks(ref), o.radial_panels);
    const Field a = Field::sample(g, [&](double r) { return fn(cplx(r, 0.0)); }, ref.text);
    const RadialBest rb = radial_best_constant(a, g);
    out.paper_refs = {"best L1 approximant of a radial function is a constant"};
    out.result["value"] = {{"re", rb.value.real()}, {"im", rb.value.imag()}};
    out.result["objective"] = rb.objective;
    out.result["best_sample_objective"] = rb.best_sample_objective;
    out.result["flat"] = rb.flat;
    out.result["converged"] = rb.converged;
    out.code = rb.converged ? kOk : kInconclusive;
    return out;
  }
  const BallSpec spec(o.dim);
  if (kind == "kelvin" || kind == "newton") {
    const Point y = parse_point(o.point, o.dim);
    out.paper_refs = {"Kelvin reflection in the half-volume sphere"};
    if (kind == "kelvin") {
      const KelvinPoint kp = kelvin_reflect(y, spec);
      out.result["reflected"] = std::vector<double>(kp.y_reflected.data(), kp.y_reflected.data() + o.dim);
      out.result["product_of_norms"] = y.norm() * kp.y_reflected.norm();
      out.result["rho"] = kp.rho;
      return out;
    }
    const NewtonApproximant a = newton_best_harmonic(y, spec);
    out.paper_refs.push_back("Newton kernel best harmonic approximant");
    out.result["valid"] = a.valid;
    if (a.kelvin) {
      out.result["reflected_pole"] =
          std::vector<double>(a.kelvin->y_reflected.data(), a.kelvin->y_reflected.data() + o.dim);
      out.result["scale"] = o.dim == 2 ? y.norm() / spec.rho() : std::pow(spec.rho() / y.norm(), o.dim - 2.0);
    } else {
      out.result["constant"] = a.constant;
    }
    out.code = a.valid ? kOk : kRefuted;
    return out;
  }
  if (kind == "aghr") {
    const double rho2 = spec.rho() * spec.rho();
    const double h = std::isnan(o.h) ? rho2 : o.h;
    cfg["h"] = h;
    const BallSampler sampler(spec, 16, 64, o.common.seed);
    AghrOptions ao;
    ao.tol = o.common.tol;
    const Verdict v = aghr_verify([](const Point& x) { return x.squaredNorm(); },
                                  [h](const Point&) { return h; }, spec, sampler, ao);
    out.paper_refs = {"best harmonic approximant by agreement on the half-volume sphere"};
    out.result["omega"] = "|x|^2";
    out.result["verdict"] = verdict_json(v);
    out.code = verdict_code(v);
    return out;
  }
  if (kind == "cutoff") {
    const Point y = parse_point(o.point, o.dim);
    cfg["M"] = o.M;
    const BallSampler sampler(spec, 16, 64, o.common.seed);
    NewtonCertificateOptions no;
    no.samples = static_cast<std::size_t>(o.samples);
    no.band = o.band;
    const Verdict v = newton_cutoff_certificate(y, spec, o.M, sampler, no);
    out.paper_refs = {"bounded Newton kernel with unbounded best approximant"};
    out.result["verdict"] = verdict_json(v);
    out.code = verdict_code(v);
    return out;
  }
  throw std::invalid_argument("oracle: unknown kind '" + kind + "'");
}

// -------------------------------------------------------------- potential

RealFn density(const std::string& name, const BallSpec& spec, std::uint64_t seed, std::vector<double>& breaks) {
  const double rho = spec.rho();
  if (name == "sigma") return [spec](const Point& x) { return sigma(x.norm(), spec); };
  if (name == "chi_b") return [](const Point& x) { return x.norm() < 1.0 ? 1.0 : 0.0; };
  if (name == "chi_b0") return [rho](const Point& x) { return x.norm() < rho ? 1.0 : 0.0; };
  if (name == "annihilator") {
    auto a = random_annihilator(spec, seed);
    breaks = a.radial_breaks;
    return a.fn;
  }
  throw std::invalid_argument("unknown density '" + name + "' (sigma|chi_b|chi_b0|annihilator)");
}

double density_closed_form(const std::string& name, double r, const BallSpec& spec) {
  if (name == "sigma") return sigma_potential(r, spec);
  if (name == "chi_b") return ball_potential(r, 1.0, spec.dim);
  if (name == "chi_b0") return ball_potential(r, spec.rho(), spec.dim);
  return std::numeric_limits<double>::quiet_NaN();
}

Outcome cmd_potential(const Options& o, json& cfg) {
  if (o.args.empty())
    throw std::invalid_argument("potential: kind required (cauchy|ahlfors-beurling|newton|L|schwarz|cor74|extremality)");
  const std::string kind = o.args[0];
  Outcome out;
  if (kind == "cauchy" || kind == "ahlfors-beurling") {
    const Region F = Region::parse(o.region.empty() ? "d0" : o.region, 2);
    cfg["region"] = F.name;
    if (kind == "cauchy") {
      const auto z = parse_list(o.point);
      if (z.size() != 2) throw std::invalid_argument("potential cauchy: --z re,im");
      const cplx c = cauchy_transform(F, cplx(z[0], z[1]));
      out.paper_refs = {"Cauchy transform of a set"};
      out.result["value"] = {{"re", c.real()}, {"im", c.imag()}};
      out.result["modulus"] = std::abs(c);
      return out;
    }
    const auto rep = ahlfors_beurling_check(F, {}, o.common.tol);
    out.paper_refs = {"Ahlfors-Beurling extremality of the disk"};
    out.result["max_modulus"] = rep.max_modulus;
    out.result["argmax"] = {{"re", rep.argmax.real()}, {"im", rep.argmax.imag()}};
    out.result["normalized_area"] = rep.normalized_area;
    out.result["bound"] = 1.0 / std::sqrt(2.0);
    out.result["verdict"] = verdict_json(rep.verdict);
    out.code = verdict_code(rep.verdict);
    return out;
  }
  const BallSpec spec(o.dim);
  if (kind == "schwarz") {
    const Point x = parse_point(o.point, o.dim);
    out.paper_refs = {"modified Schwarz potential of the sphere"};
    out.result["value"] = schwarz_potential(x, spec);
    return out;
  }
  if (kind == "newton" || kind == "L") {
    if (o.dim != 2 && o.dim != 3) throw std::invalid_argument("potential: quadrature supports --dim 2 or 3");
    const Point y = parse_point(o.point, o.dim);
    std::vector<double> breaks;
    const RealFn g = density(o.density, spec, o.common.seed, breaks);
    cfg["density"] = o.density;
    const BallRule rule(spec, y, breaks);
    if (kind == "newton") {
      out.paper_refs = {"Newton potential with the fundamental solution"};
      out.result["value"] = newton_potential(g, y, rule);
      const double cf = density_closed_form(o.density, y.norm(), spec);
      if (!std::isnan(cf)) out.result["closed_form"] = cf;
      return out;
    }
    out.paper_refs = {"extremality of sigma for the operator L"};
    out.result["value"] = L_apply_potential(g, y, rule);
    out.result["kernel_integral"] = L_kernel_integral(g, y, rule);
    return out;
  }
  if (kind == "cor74" || kind == "extremality") {
    if (o.dim != 2 && o.dim != 3) throw std::invalid_argument("potential: quadrature supports --dim 2 or 3");
    const int count = o.count > 0 ? o.count : (kind == "cor74" ? 1 : 50);
    cfg["count"] = count;
    Point y = Point::Zero(o.dim);
    if (!o.point.empty()) {
      y = parse_point(o.point, o.dim);
    } else {
      y[0] = kind == "cor74" ? spec.rho() * spec.rho() : spec.rho();
    }
    const auto sig = [spec](const Point& x) { return sigma(x.norm(), spec); };
    const auto hs = o.dim == 2 ? harmonic_polynomials_2d(6) : random_harmonic_polynomials(3, 8, 4, o.common.seed);
    json rows = json::array();
    int worst = kOk;
    if (kind == "cor74") {
      out.paper_refs = {"extremality of sigma among bounded annihilators for Newton potentials"};
      for (int j = 0; j < count; ++j) {
        const auto a = random_annihilator(spec, o.common.seed + static_cast<std::uint64_t>(j));
        const BallRule rule(spec, y, a.radial_breaks);
        const Verdict v = cor74_compare(a.fn, y, rule, hs, o.common.tol);
        rows.push_back(verdict_json(v));
        worst = std::max(worst, verdict_code(v));
      }
      out.result["comparisons"] = rows;
      out.code = worst;
      return out;
    }
    out.paper_refs = {"extremality of sigma for the operator L"};
    const BallRule base(spec, y);
    const double Ls = L_apply_potential(sig, y, base);
    double max_ratio = 0.0;
    for (int j = 0; j < count; ++j) {
      const auto a = random_annihilator(spec, o.common.seed + static_cast<std::uint64_t>(j));
      const BallRule rule(spec, y, a.radial_breaks);
      const double L = L_apply_potential(a.fn, y, rule);
      max_ratio = std::max(max_ratio, std::abs(L) / std::abs(Ls));
      rows.push_back({{"seed", o.common.seed + static_cast<std::uint64_t>(j)}, {"value", L}});
    }
    out.result["L_sigma"] = Ls;
    out.result["max_ratio"] = max_ratio;
    out.result["samples"] = rows;
    Verdict v;
    v.tolerance = o.common.tol;
    v.witness_value = 1.0 - max_ratio;
    v.witness = "largest |L(E*g)| / |L(E*sigma)| over random annihilators";
    v.status = max_ratio < 1.0 - o.common.tol ? VerdictStatus::certified : VerdictStatus::inconclusive;
    out.result["verdict"] = verdict_json(v);
    out.code = verdict_code(v);
    return out;
  }
  throw std::invalid_argument("potential: unknown kind '" + kind + "'");
}

// ---------------------------------------------------------------- peakset

Outcome cmd_peakset(const Options& o, json& cfg) {
  if (o.args.empty()) throw std::invalid_argument("peakset: kind required (thinness|bounds|extension)");
  const std::string kind = o.args[0];
  const Region F = Region::parse(o.region.empty() ? "cusp3" : o.region, o.dim);
  cfg["region"] = F.name;
  Outcome out;
  if (kind == "thinness") {
    const auto rep = thinness_check(F);
    out.paper_refs = {"thin sets near the boundary are not weak peak sets"};
    out.result["deltas"] = rep.deltas;
    out.result["integrals"] = rep.integrals;
    out.result["relative_change"] = rep.relative_change;
    out.result["converged"] = rep.converged;
    out.result["tail_radius"] = rep.tail_radius;
    out.result["tail_value"] = rep.tail_value;
    out.result["verdict"] = rep.verdict;
    out.header = {"delta", "integral"};
    for (std::size_t k = 0; k < rep.deltas.size(); ++k) out.rows.push_back({fmt(rep.deltas[k]), fmt(rep.integrals[k])});
    out.code = rep.verdict == "not-weak-peak" ? kOk : kInconclusive;
    return out;
  }
  if (kind == "bounds") {
    Point dir = Point::Zero(o.dim);
    if (o.direction.empty()) {
      dir[0] = 1.0;
    } else {
      dir = parse_point(o.direction, o.dim);
    }
    const int count = o.count > 0 ? o.count : 12;
    cfg["order"] = o.order;
    cfg["count"] = count;
    const PoleFamily fam = make_pole_family(o.dim, dir, o.order, count, true);
    const PeakBounds pb = peak_lower_bounds(F, fam);
    out.paper_refs = {"weak and strong peak sets via multipole families"};
    out.result["A_lower"] = pb.A_lower;
    out.result["B_lower"] = pb.B_lower;
    out.header = {"pole_distance", "ratio_A", "ratio_B"};
    json members = json::array();
    for (std::size_t j = 0; j < fam.members.size(); ++j) {
      members.push_back({{"pole_distance", fam.members[j].distance}, {"ratio_A", pb.ratio_A[j]}, {"ratio_B", pb.ratio_B[j]}});
      out.rows.push_back({fmt(fam.members[j].distance), fmt(pb.ratio_A[j]), fmt(pb.ratio_B[j])});
    }
    out.result["members"] = members;
    return out;
  }
  if (kind == "extension") {
    const auto degrees = parse_degrees(o.degrees);
    cfg["degrees"] = degrees;
    const auto sups = extension_growth(F, degrees);
    out.paper_refs = {"annihilators equal to one on a set meeting the half-volume ball"};
    out.result["sup_norms"] = sups;
    bool monotone = true;
    for (std::size_t k = 1; k < sups.size(); ++k) monotone = monotone && sups[k] > sups[k - 1];
    out.result["monotone_growth"] = monotone;
    out.header = {"degree", "sup_norm"};
    for (std::size_t k = 0; k < sups.size(); ++k) out.rows.push_back({std::to_string(degrees[k]), fmt(sups[k])});
    return out;
  }
  throw std::invalid_argument("peakset: unknown kind '" + kind + "'");
}

// ------------------------------------------------------------------ sweep

Outcome cmd_sweep(const Options& o, json& cfg) {
  if (o.args.empty()) throw std::invalid_argument("sweep: kind required (boundary-norm|modulus)");
  if (o.omega.empty()) throw std::invalid_argument("sweep: --omega is required");
  const std::string kind = o.args[0];
  const FunctionRef ref = FunctionRef::parse(o.omega);
  Sampled s = sample_omega(ref, o);
  cfg["split"] = s.breaks;
  SolverOptions so;
  so.p = o.p;
  so.seed = o.common.seed;
  Outcome out;
  if (kind == "boundary-norm") {
    const auto degrees = parse_degrees(o.degrees);
    cfg["degrees"] = degrees;
    const auto rows = boundary_norm_sweep(s.field, so, degrees, s.grid);
    out.paper_refs = {"boundary norms of best approximants under degree growth"};
    out.header = {"degree", "boundary_norm", "lambda", "converged"};
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"degree", r.degree}, {"boundary_norm", r.boundary_norm}, {"lambda", r.lambda}, {"converged", r.converged}});
      out.rows.push_back({std::to_string(r.degree), fmt(r.boundary_norm), fmt(r.lambda), r.converged ? "1" : "0"});
    }
    out.result["rows"] = arr;
    return out;
  }
  if (kind == "modulus") {
    const BasisSpec spec = parse_basis(o.basis);
    cfg["t_range"] = {o.t_min, o.t_max, o.t_count};
    if (!(o.t_min > 0.0 && o.t_max > o.t_min && o.t_count >= 2))
      throw std::invalid_argument("sweep modulus: need 0 < t-min < t-max and t-count >= 2");
    const ApproxSolution sol = solve_best(s.field, spec, so, s.grid);
    std::vector<double> ts, ds;
    for (int k = 0; k < o.t_count; ++k) {
      const double t = o.t_min * std::pow(o.t_max / o.t_min, static_cast<double>(k) / (o.t_count - 1));
      ts.push_back(t);
      ds.push_back(modulus_Dt(sol.coeffs, spec, t, o.p, s.grid));
    }
    out.paper_refs = {"smoothness of best approximants measured by second differences"};
    out.header = {"t", "D_t"};
    json arr = json::array();
    for (std::size_t k = 0; k < ts.size(); ++k) {
      arr.push_back({{"t", ts[k]}, {"D_t", ds[k]}});
      out.rows.push_back({fmt(ts[k]), fmt(ds[k])});
    }
    out.result["rows"] = arr;
    out.result["loglog_slope"] = loglog_slope(ts, ds);
    return out;
  }
  throw std::invalid_argument("sweep: unknown kind '" + kind + "'");
}

void add_common(CLI::App* app, Options& o) {
  app->add_option("--format", o.common.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  app->add_option("--grid", o.common.grid, "NR,NT product grid sizes");
  app->add_option("--tol", o.common.tol, "certificate tolerance");
  app->add_option("--seed", o.common.seed, "seed for all randomness");
  app->add_option("--out", o.common.out, "write the report to a file");
}

std::string render_csv(const Outcome& out, const json& report) {
  std::ostringstream os;
  if (!out.header.empty()) {
    for (std::size_t k = 0; k < out.header.size(); ++k) os << (k ? "," : "") << out.header[k];
    os << '\n';
    for (const auto& row : out.rows) {
      for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << row[k];
      os << '\n';
    }
    return os.str();
  }
  os << "key,value\n";
  const json flat = report["result"].flatten();
  for (const auto& [k, v] : flat.items()) os << k << ',' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Best L^p approximation on the disk and ball: solvers, certificates, oracles, potentials"};
  app.require_subcommand(1);
  Options o;

  auto* solve = app.add_subcommand("solve", "best approximant of a function by a polynomial space");
  auto* certify = app.add_subcommand("certify", "duality certificate for a candidate best approximant");
  auto* oracle = app.add_subcommand("oracle", "closed-form best approximants");
  auto* potential = app.add_subcommand("potential", "Cauchy/Newton transforms and extremality checks");
  auto* peakset = app.add_subcommand("peakset", "peak-set lower bounds and the thinness criterion");
  auto* sweep = app.add_subcommand("sweep", "degree and smoothness sweeps");
  for (auto* sc : {solve, certify, oracle, potential, peakset, sweep}) add_common(sc, o);

  for (auto* sc : {solve, certify, sweep, oracle}) sc->add_option("--omega", o.omega, "catalog function or samples:path");
  for (auto* sc : {solve, certify, sweep, oracle}) sc->add_option("--p", o.p, "exponent p >= 1");
  for (auto* sc : {solve, certify, sweep}) {
    sc->add_option("--basis", o.basis, "analytic:m | harmonic2d:m | constants");
    sc->add_option("--split", o.split, "radial break points r1,r2,...");
  }
  for (auto* sc : {solve, certify}) sc->add_option("--K", o.K, "highest moment checked");
  solve->add_option("--flatness", o.flatness, "random flatness probe directions (p = 1)");
  certify->add_option("--fstar", o.fstar, "zero | oracle | catalog function");
  for (auto* sc : {certify, oracle}) {
    sc->add_option("--samples", o.samples, "uniform samples for sign certificates");
    sc->add_option("--band", o.band, "exclusion band around the half-volume sphere");
  }
  for (auto* sc : {oracle, potential, peakset}) {
    sc->add_option("kind", o.args, "what to compute");
    sc->add_option("--dim", o.dim, "ambient dimension");
  }
  oracle->add_option("--space", o.space, "analytic|harmonic")->check(CLI::IsMember({"analytic", "harmonic"}));
  oracle->add_option("--y", o.point, "pole position y1,y2[,y3]");
  oracle->add_option("--hconst", o.h, "constant approximant to test against |x|^2");
  oracle->add_option("--M", o.M, "cutoff level");
  oracle->add_option("--radial-points", o.radial_points, "Gauss points per radial panel");
  oracle->add_option("--radial-panels", o.radial_panels, "radial panels");
  potential->add_option("--region", o.region, "region name");
  potential->add_option("--z,--y,--x", o.point, "evaluation point");
  potential->add_option("--density", o.density, "sigma|chi_b|chi_b0|annihilator");
  potential->add_option("--count", o.count, "number of random annihilators");
  peakset->add_option("--region", o.region, "region name");
  peakset->add_option("--order", o.order, "pole order of the family");
  peakset->add_option("--count", o.count, "family size");
  peakset->add_option("--direction", o.direction, "approach direction");
  peakset->add_option("--degrees", o.degrees, "degree list or a..b");
  sweep->add_option("kind", o.args, "boundary-norm|modulus");
  sweep->add_option("--degrees", o.degrees, "degree list or a..b");
  sweep->add_option("--t-min", o.t_min, "smallest t");
  sweep->add_option("--t-max", o.t_max, "largest t");
  sweep->add_option("--t-count", o.t_count, "number of t values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kError;
  }

  CLI::App* active = app.get_subcommands().front();
  const std::string command = active->get_name();
  json cfg;
  cfg["command"] = command;
  if (!o.args.empty()) cfg["kind"] = o.args[0];
  if (o.args.size() > 1) cfg["args"] = std::vector<std::string>(o.args.begin() + 1, o.args.end());
  cfg["omega"] = o.omega;
  cfg["fstar"] = o.fstar;
  cfg["p"] = o.p;
  cfg["basis"] = o.basis;
  cfg["grid"] = o.common.grid;
  cfg["tol"] = o.common.tol;
  cfg["seed"] = o.common.seed;
  cfg["format"] = o.common.format;
  cfg["dim"] = o.dim;
  if (!o.point.empty()) cfg["point"] = o.point;
  if (!o.region.empty()) cfg["region"] = o.region;

  Outcome out;
  try {
    if (command == "solve") out = cmd_solve(o, cfg);
    else if (command == "certify") out = cmd_certify(o, cfg);
    else if (command == "oracle") out = cmd_oracle(o, cfg);
    else if (command == "potential") out = cmd_potential(o, cfg);
    else if (command == "peakset") out = cmd_peakset(o, cfg);
    else out = cmd_sweep(o, cfg);
  } catch (const std::exception& e) {
    std::cerr << "lpapprox " << command << ": " << e.what() << '\n';
    return kError;
  }

  json report;
  report["config"] = cfg;
  report["paper_refs"] = out.paper_refs;
  report["result"] = out.result;
  report["exit_code"] = out.code;
  const std::string text = o.common.format == "csv" ? render_csv(out, report) : report.dump(2) + "\n";
  if (o.common.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.common.out);
    if (!f) {
      std::cerr << "lpapprox: cannot write " << o.common.out << '\n';
      return kError;
    }
    f << text;
  }
  return out.code;
}
