// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "lpapprox/lpapprox.hpp"

using namespace lpapprox;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  std::function<Outcome()> run;
};

std::string sci(double v) {
  std::ostringstream os;
  os << std::setprecision(3) << std::scientific << v;
  return os.str();
}

std::string fix(double v, int digits = 6) {
  std::ostringstream os;
  os << std::setprecision(digits) << std::fixed << v;
  return os.str();
}

const double kR0 = std::sqrt(0.5);

Field monomial_field(const DiskGrid& g, int n, int m) {
  return Field::sample(g, [n, m](cplx z) { return std::pow(z, n) * std::pow(std::conj(z), m); });
}

double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

Point axis_point(int dim, double r) {
  Point y = Point::Zero(dim);
  y[0] = r;
  return y;
}

// ------------------------------------------------------------------ 1..5

Outcome c1() {
  const DiskGrid g = DiskGrid::product(128, 256, {kR0});
  const auto sol = solve_best(monomial_field(g, 1, 1), BasisSpec(BasisKind::analytic, 4), SolverOptions{}, g);
  // 2 int_0^1 |r^2 - 1/2| r dr, by a fine midpoint rule.
  double lam = 0.0;
  const int N = 200000;
  for (int k = 0; k < N; ++k) {
    const double r = (k + 0.5) / N;
    lam += 2.0 * std::abs(r * r - 0.5) * r / N;
  }
  double others = 0.0;
  for (int k = 1; k <= 4; ++k) others = std::max(others, std::abs(sol.coeffs[k]));
  const double c0 = sol.coeffs[0].real();
  const bool ok = std::abs(c0 - 0.5) < 1e-2 && std::abs(sol.lambda - lam) < 1e-2 && std::abs(lam - 0.25) < 1e-6 &&
                  others < 1e-2 && std::abs(sol.coeffs[0].imag()) < 1e-2;
  return {ok, "constant " + fix(c0) + ", lambda " + fix(sol.lambda) + " (1D oracle " + fix(lam) + "), max other |c| " +
                  sci(others)};
}

Outcome c2() {
  const DiskGrid g = DiskGrid::product(128, 256);
  const auto sol = solve_best(monomial_field(g, 0, 2), BasisSpec(BasisKind::analytic, 4), SolverOptions{}, g);
  const double norm1 = 0.5;  // int |z|^2 dA
  const double cmax = sol.coeffs.cwiseAbs().maxCoeff();
  const bool ok = cmax < 1e-2 && std::abs(sol.lambda - norm1) < 1e-2;
  return {ok, "max |c| " + sci(cmax) + ", lambda " + fix(sol.lambda) + " vs ||conj(z)^2||_1 = 0.5"};
}

Outcome c3() {
  const DiskGrid g = DiskGrid::product(64, 128, {kR0});
  SolverOptions o;
  o.p = 2.0;
  double worst = 0.0;
  int count = 0;
  for (const auto& name : catalog_fixtures()) {
    const FunctionRef ref = FunctionRef::parse(name);
    const DiskGrid gg = DiskGrid::product(64, 128, natural_breaks(ref));
    const Field w = Field::sample(gg, disk_function(ref));
    for (const BasisSpec spec : {BasisSpec(BasisKind::analytic, 6), BasisSpec(BasisKind::harmonic2d, 4)}) {
      const auto sol = solve_best(w, spec, o, gg);
      worst = std::max(worst, (sol.coeffs - project_l2(w, spec, gg)).cwiseAbs().maxCoeff());
    }
    ++count;
  }
  const Coeffs proj = project_l2(monomial_field(g, 2, 1), BasisSpec(BasisKind::analytic, 4), g);
  const double c = monomial_constant(2, 1, 2.0);
  const double dc = std::abs(c - proj[1].real());
  const bool ok = count == 10 && worst < 1e-6 && dc < 1e-8 && std::abs(c - 2.0 / 3.0) < 1e-8;
  return {ok, std::to_string(count) + " fixtures, max |solve - project| " + sci(worst) +
                  "; c(2,1,2) = " + fix(c, 10) + ", |c - projection| " + sci(dc)};
}

Outcome c4() {
  const RadialGrid rg = build_radial_grid(8, 2, {}, 512);
  const auto best = radial_best_constant(Field::sample(rg, [](double r) { return cplx(r); }), rg);
  const double err1 = std::abs(best.value - kR0);

  const DiskGrid g = DiskGrid::product(128, 256, {kR0});
  const Field w = Field::sample(g, [](cplx z) { return cplx(std::abs(z)); });
  const BasisSpec spec(BasisKind::harmonic2d, 4);
  const auto sol = solve_best(w, spec, SolverOptions{}, g);
  double others = 0.0;
  for (Eigen::Index k = 1; k < sol.coeffs.size(); ++k) others = std::max(others, std::abs(sol.coeffs[k]));
  const double err2 = std::abs(sol.coeffs[0] - best.value);
  const bool ok = err1 < 1e-4 && err2 < 1e-2 && others < 1e-2;
  return {ok, "radial median " + fix(best.value.real(), 8) + " (|err| " + sci(err1) + "), 2D constant " +
                  fix(sol.coeffs[0].real(), 8) + ", max non-constant |c| " + sci(others)};
}

Outcome c5() {
  const DiskGrid g = DiskGrid::product(128, 256, {kR0});
  const Field chi = Field::sample(g, [](cplx z) { return cplx(std::abs(z) < kR0 ? 1.0 : 0.0); });
  double dev = 0.0;
  std::string dists;
  for (double c : {0.0, 0.25, 0.5, 1.0}) {
    double d = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) d += g.weights()[i] * std::abs(chi.values[i] - c);
    dev = std::max(dev, std::abs(d - 0.5));
    dists += (dists.empty() ? "" : ",") + fix(d, 4);
  }
  SolverOptions o;
  o.flatness_probes = 8;
  const auto sol = solve_best(chi, BasisSpec(BasisKind::constants, 0), o, g);
  const Field split = Field::sample(g, [](cplx z) { return cplx(std::abs(z) < kR0 ? -1.0 : 1.0); });
  const double res = max_of(check_annihilation(split, ProblemKind::harmonic, 10, g));
  const bool ok = dev < 1e-3 && sol.flat && res < 1e-3;
  return {ok, "distances {" + dists + "}, flat=" + (sol.flat ? std::string("true") : "false") +
                  ", max split-sign moment " + sci(res)};
}

// ------------------------------------------------------------------ 6..10

Outcome c6() {
  const DiskGrid g = DiskGrid::product(128, 256, {kR0});
  const Field s = Field::sample(g, [](cplx z) { return cplx(std::abs(z) < kR0 ? -1.0 : 1.0); });
  const double res2 = max_of(check_annihilation(s, ProblemKind::harmonic, 10, g));

  const BallSpec spec(3);
  const BallSampler smp(spec, 16, 4096, 0);
  const auto hs = random_harmonic_polynomials(3, 5, 4, 0);
  bool ok3 = true;
  double worst_z = 0.0;
  for (const auto& h : hs) {
    const auto e = integrate_mc(smp, [&](const Point& x) { return sigma(x.norm(), spec) * h(x); });
    const double z = e.std_error > 0.0 ? std::abs(e.value) / e.std_error : (e.value == 0.0 ? 0.0 : 1e300);
    worst_z = std::max(worst_z, z);
    ok3 = ok3 && std::abs(e.value) < 3.0 * e.std_error;
  }
  return {res2 < 1e-3 && ok3, "2D max moment " + sci(res2) + "; 3D worst |estimate|/stderr " + fix(worst_z, 3)};
}

Outcome c7() {
  bool ok = true;
  std::string detail;
  NewtonCertificateOptions opts;
  opts.samples = 100000;
  opts.band = 1e-3;
  for (int n : {2, 3}) {
    const BallSpec spec(n);
    const BallSampler smp(spec, 8, 16, 0);
    for (double r : {0.0, 0.3, spec.rho() * spec.rho()}) {
      const Verdict v = newton_sign_certificate(axis_point(n, r), spec, smp, opts);
      ok = ok && v.certified() && v.witness_value == 0.0;
    }
    const Verdict far = newton_sign_certificate(axis_point(n, 0.9), spec, smp, opts);
    ok = ok && far.refuted();
    detail += "n=" + std::to_string(n) + ": |y|=0.9 " + to_string(far.status) + " (" +
              fix(far.witness_value, 0) + " violations); ";
  }
  return {ok, detail + "certified at |y| in {0, 0.3, rho^2}"};
}

Outcome c8() {
  bool ok = true;
  std::string detail;
  for (int n : {2, 3}) {
    const BallSpec spec(n);
    const BallSampler smp(spec, 8, 16, 0);
    const double h = std::pow(2.0, -2.0 / n);
    const auto omega = [](const Point& x) { return x.squaredNorm(); };
    const Verdict good = aghr_verify(omega, [h](const Point&) { return h; }, spec, smp);
    const Verdict bad = aghr_verify(omega, [h](const Point&) { return h + 0.05; }, spec, smp);
    ok = ok && good.certified() && bad.refuted() && bad.witness.find("sphere witness") != std::string::npos;
    detail += "n=" + std::to_string(n) + " " + to_string(good.status) + "/" + to_string(bad.status) + "; ";
  }
  return {ok, detail};
}

Outcome c9() {
  const double a = 0.5;
  const auto ratio = [a](cplx z) {
    const cplx q = (z - a) / (std::conj(z) - a);
    return q * q;
  };
  const DiskGrid coarse = DiskGrid::product(128, 256);
  const DiskGrid fine = coarse.refined();
  const double res = std::max(max_of(check_annihilation(Field::sample(coarse, ratio), ProblemKind::analytic, 10, coarse)),
                              max_of(check_annihilation(Field::sample(fine, ratio), ProblemKind::analytic, 10, fine)));
  double bnd = 0.0;
  for (int j = 0; j < 256; ++j) bnd = std::max(bnd, std::abs(prop53_witness(a, std::polar(1.0, 2.0 * kPi * j / 256))));
  std::mt19937_64 rng(0);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double fd = 0.0;
  int pts = 0;
  while (pts < 20) {
    const cplx z(u(rng), u(rng));
    if (std::abs(z) > 0.9 || std::abs(std::conj(z) - a) < 0.2) continue;
    fd = std::max(fd, std::abs(dbar_central([a](cplx w) { return prop53_witness(a, w); }, z, 1e-4) - ratio(z)));
    ++pts;
  }
  const bool ok = res < 1e-3 && bnd < 1e-12 && fd < 1e-6;
  return {ok, "max moment " + sci(res) + ", boundary max " + sci(bnd) + ", dbar mismatch " + sci(fd)};
}

Outcome c10() {
  const DiskGrid g = DiskGrid::product(128, 256, {kR0});
  const Field chi = Field::sample(g, [](cplx z) { return cplx(std::abs(z) < kR0 ? 1.0 : 0.0); });
  const cplx c1 = cauchy_transform(chi, cplx(1.0), g).value;
  const cplx c1r = cauchy_transform(Region::half_volume_ball(2), cplx(1.0));
  const auto disk = ahlfors_beurling_check(Region::half_volume_ball(2));
  const double bound = 1.0 / std::sqrt(2.0);
  bool ok = std::abs(c1 - 0.5) < 1e-3 && std::abs(c1r - 0.5) < 1e-3 && std::abs(disk.max_modulus - bound) < 1e-3;
  std::string maxima;
  for (const Region& F : random_equal_area_regions(3, 0)) {
    const auto rep = ahlfors_beurling_check(F);
    ok = ok && bound - rep.max_modulus > 1e-2;
    maxima += (maxima.empty() ? "" : ",") + fix(rep.max_modulus, 4);
  }
  return {ok, "C(1) = " + fix(c1.real()) + " (grid), " + fix(c1r.real()) + " (rays); D0 max " +
                  fix(disk.max_modulus) + "; others {" + maxima + "}"};
}

// ------------------------------------------------------------------ 11..15

Outcome c11() {
  const BallSpec spec(3);
  const double rho = spec.rho();
  const Point y = axis_point(3, rho);
  const RealFn sig = [spec](const Point& x) { return sigma(x.norm(), spec); };
  const RealFn neg = [spec](const Point& x) { return -sigma(x.norm(), spec); };
  const BallRule base(spec, y);
  const double Ls = L_apply_potential(sig, y, base);
  const double Lneg = L_apply_potential(neg, y, base);
  const auto u = [&](double t) { return sigma_potential(t, spec); };
  const double closed = rho * (u(rho + 1e-6) - u(rho - 1e-6)) / 2e-6 + 0.5 * u(rho);
  const auto hs = random_harmonic_polynomials(3, 8, 4, 0);
  double max_ratio = 0.0, max_res = 0.0;
  for (int j = 0; j < 50; ++j) {
    const auto a = random_annihilator(spec, static_cast<std::uint64_t>(j));
    const BallRule rule(spec, y, a.radial_breaks);
    max_res = std::max(max_res, annihilation_residual(a.fn, hs, rule));
    max_ratio = std::max(max_ratio, std::abs(L_apply_potential(a.fn, y, rule)) / std::abs(Ls));
  }
  const double eq = std::abs(std::abs(Lneg) / std::abs(Ls) - 1.0);
  const bool ok = max_ratio < 1.0 && max_res < 1e-8 && eq < 1e-12 && std::abs(Ls - closed) < 1e-5;
  return {ok, "L(E*sigma) = " + fix(Ls, 7) + " (closed form " + fix(closed, 7) + "), max ratio over 50 annihilators " +
                  fix(max_ratio, 4) + " (margin " + fix(1.0 - max_ratio, 4) + "), -sigma ratio off by " + sci(eq)};
}

Outcome c12() {
  const auto cusp = thinness_check(Region::cusp3());
  const auto ann = thinness_check(Region::shell(0.9, 1.0, 2));
  std::string is;
  for (double v : cusp.integrals) is += (is.empty() ? "" : ",") + fix(v, 4);
  const bool ok = cusp.verdict == "not-weak-peak" && cusp.converged && cusp.relative_change < 0.05 &&
                  ann.verdict == "criterion inapplicable" && !ann.converged;
  return {ok, "cusp I {" + is + "} -> " + cusp.verdict + "; annulus -> " + ann.verdict};
}

Outcome c13() {
  const DiskGrid g = DiskGrid::product(64, 128);
  SolverOptions o;
  o.p = 2.0;
  const std::vector<int> degrees{1, 2, 3, 4, 5, 6, 7, 8};
  double dev = 0.0;
  for (const auto& row : boundary_norm_sweep(monomial_field(g, 2, 1), o, degrees, g))
    dev = std::max(dev, std::abs(row.boundary_norm - 2.0 / 3.0));

  const FunctionRef ref = FunctionRef::parse("re_plus_abs2");
  const BasisSpec spec(BasisKind::analytic, 8);
  const auto sol = solve_best(Field::sample(g, disk_function(ref)), spec, o, g);
  std::vector<double> ts, ds;
  for (int k = 0; k < 9; ++k) {
    const double t = 1e-2 * std::pow(10.0, k / 8.0);
    ts.push_back(t);
    ds.push_back(modulus_Dt(sol.coeffs, spec, t, 2.0, g));
  }
  const double slope = loglog_slope(ts, ds);
  return {dev < 1e-6 && slope >= 0.9, "max |boundary norm - 2/3| " + sci(dev) + ", D_t slope " + fix(slope, 4)};
}

Outcome c14() {
  struct Pair {
    int n, m;
  };
  double worst = 0.0;
  int cases = 0;
  for (const Pair pr : {Pair{1, 1}, Pair{2, 1}, Pair{3, 1}, Pair{3, 2}, Pair{0, 2}}) {
    const MonomialBest mb = monomial_best({pr.n, pr.m, 1.0, false});
    std::vector<double> breaks;
    if (!mb.zero) breaks.push_back(std::pow(mb.coefficient, 0.5 / pr.m));
    const DiskGrid g = DiskGrid::product(64, 128, breaks);
    const BasisSpec spec(BasisKind::analytic, 4);
    const Field w = monomial_field(g, pr.n, pr.m);
    const Field f = Field::sample(g, mb);
    const Coeffs target = mb.to_coeffs(spec);
    for (const auto& rho : std::vector<std::function<cplx(cplx)>>{[](cplx) { return cplx(0.5); },
                                                                    [](cplx) { return cplx(3.0); },
                                                                    [](cplx z) { return cplx(1.0 + 0.5 * z.real()); }}) {
      const Field nw = residual_reweight(w, f, Field::sample(g, rho));
      const auto sol = solve_best(nw, spec, SolverOptions{}, g);
      worst = std::max(worst, (sol.coeffs - target).cwiseAbs().maxCoeff());
      ++cases;
    }
  }
  return {cases == 15 && worst < 1e-2, std::to_string(cases) + " reweighted solves, max |c - f*| " + sci(worst)};
}

std::string run_cli(const std::string& args, int& code) {
  const std::string cmd = std::string(LPAPPROX_CLI) + " " + args + " 2>&1";
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    code = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int st = pclose(pipe);
  code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return out;
}

Outcome c15() {
  const std::vector<std::string> commands{
      "solve --omega monomial:1,1 --p 1 --basis analytic:4 --grid 32,64 --seed 3",
      "certify --omega newton:0.3,0,0@3 --fstar oracle --samples 20000 --seed 3",
      "oracle aghr --dim 3 --seed 5",
      "potential extremality --dim 2 --count 4 --seed 7",
      "sweep modulus --omega re_plus_abs2 --p 2 --basis analytic:6 --grid 32,64 --seed 1 --format csv",
      "peakset bounds --region half_disk --count 6 --seed 2"};
  bool ok = true;
  std::string detail;
  for (const auto& c : commands) {
    int ca = 0, cb = 0;
    const std::string a = run_cli(c, ca), b = run_cli(c, cb);
    const std::size_t ha = std::hash<std::string>{}(a), hb = std::hash<std::string>{}(b);
    ok = ok && ha == hb && ca == cb && ca != 1 && !a.empty();
    std::ostringstream os;
    os << std::hex << (ha & 0xffffffu);
    detail += (detail.empty() ? "" : " ") + os.str() + (ha == hb ? "=" : "!=") + "(" + std::to_string(ca) + ")";
  }
  return {ok, std::to_string(commands.size()) + " commands rerun: " + detail};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "monomial oracle equivalence", c1},      {2, "conjugate powers vanish", c2},
      {3, "p=2 cross-check", c3},                  {4, "radial reduction", c4},
      {5, "disk indicator flatness", c5},          {6, "sigma annihilates harmonics", c6},
      {7, "Newton kernel sign certificate", c7},   {8, "sphere agreement verifier", c8},
      {9, "explicit annihilator witness", c9},     {10, "Cauchy transform extremality", c10},
      {11, "L-operator extremality of sigma", c11}, {12, "thinness criterion", c12},
      {13, "regularity diagnostics", c13},         {14, "reweighting invariance", c14},
      {15, "determinism", c15}};
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!r.pass) ++failed;
    std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << std::setw(2) << c.id << " " << c.name << ": "
              << r.detail << " [" << fix(secs, 1) << "s]" << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
