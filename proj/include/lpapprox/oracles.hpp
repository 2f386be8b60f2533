#pragma once

// Closed-form best approximants: monomials z^n conj(z)^m, radial functions
// (best constant by weighted medians), Newton kernels on the ball via Kelvin
// reflection in the half-volume sphere, and the |x|^2-type characterization
// by boundary agreement on that sphere.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpapprox/basis.hpp"
#include "lpapprox/grid.hpp"
#include "lpapprox/quadrature.hpp"
#include "lpapprox/verdict.hpp"

namespace lpapprox {

struct NotApplicable : std::domain_error {
  using std::domain_error::domain_error;
};

// ---------------------------------------------------------------- monomials

struct MonomialProblem {
  int n = 0;
  int m = 0;
  double p = 1.0;
  bool harmonic = false;
};

/// Psi(c) = int_0^1 r^{p(n-m)} |r^{2m} - c|^{p-1} sgn(r^{2m} - c) r dr.
inline double monomial_psi(int n, int m, double p, double c) {
  const double s = std::pow(c, 0.5 / m);
  auto integrand = [&](double r) {
    const double d = std::pow(r, 2 * m) - c;
    const double mag = p == 1.0 ? 1.0 : std::pow(std::abs(d), p - 1.0);
    const double sg = d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
    return std::pow(r, p * (n - m)) * mag * sg * r;
  };
  std::vector<double> b = graded_breaks(0.0, 1.0, s, 1e-13, 0.25);
  b = merge_breaks(b, graded_breaks(0.0, 1.0, 0.0, 1e-10, 0.25));
  const Rule1D rule = composite_gauss_legendre(20, b);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) acc += rule.weights[i] * integrand(rule.nodes[i]);
  return acc;
}

/// c(n, m, p) in (0, 1), the root of Psi, by bisection on [1e-9, 1 - 1e-9].
inline double monomial_constant(int n, int m, double p) {
  if (p < 1.0) throw std::invalid_argument("monomial_constant: p must be >= 1");
  if (m < 1 || m > n) throw NotApplicable("monomial_constant: requires n >= m >= 1");
  double lo = 1e-9, hi = 1.0 - 1e-9;
  double flo = monomial_psi(n, m, p, lo);
  if (!(flo > 0.0) || !(monomial_psi(n, m, p, hi) < 0.0))
    throw std::runtime_error("monomial_constant: Psi does not change sign on the bracket");
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f = monomial_psi(n, m, p, mid);
    if (f > 0.0) {
      lo = mid;
      flo = f;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// f* = coefficient * z^power (power >= 0) or coefficient * conj(z)^(-power).
struct MonomialBest {
  bool zero = false;
  int power = 0;
  double coefficient = 0.0;

  cplx operator()(cplx z) const {
    if (zero) return 0.0;
    return coefficient * (power >= 0 ? std::pow(z, power) : std::pow(std::conj(z), -power));
  }

  /// Coefficient vector in `spec`; throws if the term is outside the span.
  Coeffs to_coeffs(const BasisSpec& spec) const {
    Coeffs c = Coeffs::Zero(static_cast<Eigen::Index>(spec.dimension()));
    if (zero) return c;
    for (std::size_t k = 0; k < spec.dimension(); ++k)
      if (spec.power(k) == power) {
        c[static_cast<Eigen::Index>(k)] = coefficient;
        return c;
      }
    throw std::invalid_argument("MonomialBest: term not contained in the basis");
  }
};

inline MonomialBest monomial_best(const MonomialProblem& prob) {
  if (prob.n < 0 || prob.m < 0) throw std::invalid_argument("monomial_best: exponents must be >= 0");
  MonomialBest out;
  const int n = prob.n, m = prob.m;
  if (!prob.harmonic) {
    if (m > n) {
      out.zero = true;
    } else if (m == 0) {
      out.power = n;
      out.coefficient = 1.0;
    } else {
      out.power = n - m;
      out.coefficient = monomial_constant(n, m, prob.p);
    }
    return out;
  }
  if (n == 0 || m == 0) {
    out.power = n - m;
    out.coefficient = 1.0;
  } else if (n >= m) {
    out.power = n - m;
    out.coefficient = monomial_constant(n, m, prob.p);
  } else {
    out.power = n - m;
    out.coefficient = monomial_constant(m, n, prob.p);
  }
  return out;
}

// ---------------------------------------------------------- radial medians

struct RadialBest {
  cplx value = 0.0;
  double objective = 0.0;        ///< int |a - c| r^(n-1) dr
  double best_sample_objective = 0.0;
  bool flat = false;             ///< minimizer not unique (mass splits evenly)
  bool converged = true;
  int iterations = 0;
};

namespace detail {
inline double radial_objective(const Field& a, const RadialGrid& g, cplx c) {
  double acc = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) acc += g.weights[i] * std::abs(a.values[i] - c);
  return acc;
}

struct Median1D {
  double value = 0.0;
  bool flat = false;
};

/// Weighted median of (x_i, w_i). Isolated samples are treated as cells of a
/// histogram so that sampled continuous data yields the continuous median;
/// repeated values act as atoms.
inline Median1D weighted_median(std::vector<double> x, std::vector<double> w) {
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  double span = 0.0;
  if (!idx.empty()) span = std::max(std::abs(x[idx.front()]), std::abs(x[idx.back()]));
  const double same = 1e-14 * std::max(span, 1.0);
  std::vector<double> ux, uw;
  std::vector<int> mult;
  for (std::size_t k : idx) {
    if (!ux.empty() && std::abs(x[k] - ux.back()) <= same) {
      uw.back() += w[k];
      ++mult.back();
    } else {
      ux.push_back(x[k]);
      uw.push_back(w[k]);
      mult.push_back(1);
    }
  }
  const double total = std::accumulate(uw.begin(), uw.end(), 0.0);
  const double half = 0.5 * total;
  double cum = 0.0;
  for (std::size_t k = 0; k < ux.size(); ++k) {
    const double next = cum + uw[k];
    if (std::abs(next - half) <= 1e-12 * total && k + 1 < ux.size() && mult[k] > 1 && mult[k + 1] > 1)
      return {0.5 * (ux[k] + ux[k + 1]), true};
    if (next >= half) {
      if (mult[k] > 1 || ux.size() < 3) return {ux[k], false};
      const double lo = k == 0 ? ux[k] : 0.5 * (ux[k - 1] + ux[k]);
      const double hi = k + 1 == ux.size() ? ux[k] : 0.5 * (ux[k] + ux[k + 1]);
      const double t = (half - cum) / uw[k];
      return {lo + t * (hi - lo), false};
    }
    cum = next;
  }
  return {ux.empty() ? 0.0 : ux.back(), false};
}
}  // namespace detail

/// Best L1 constant for radial data a(r) on a RadialGrid: weighted median
/// for real data, weighted geometric median (Weiszfeld) for complex data.
inline RadialBest radial_best_constant(const Field& a, const RadialGrid& g) {
  detail::check_aligned(a.size(), g.size());
  if (a.size() == 0) throw std::invalid_argument("radial_best_constant: empty field");
  a.check_finite();
  RadialBest out;
  const std::size_t N = a.size();
  bool real = true;
  double scale = 0.0;
  for (const cplx& v : a.values) {
    if (v.imag() != 0.0) real = false;
    scale = std::max(scale, std::abs(v));
  }
  const double tiny = 1e-14 * std::max(scale, 1e-300);

  // Collinear data reduces to a one-dimensional median along the line.
  std::optional<std::pair<cplx, cplx>> line;  // origin, unit direction
  if (real) {
    line = std::make_pair(cplx(0.0), cplx(1.0));
  } else {
    cplx base = a.values[0], dir = 0.0;
    for (const cplx& v : a.values)
      if (std::abs(v - base) > 1e3 * tiny) {
        dir = (v - base) / std::abs(v - base);
        break;
      }
    bool collinear = true;
    for (const cplx& v : a.values)
      if (std::abs(((v - base) * std::conj(dir)).imag()) > 1e-10 * std::max(scale, 1.0)) {
        collinear = false;
        break;
      }
    if (dir == 0.0) dir = 1.0;
    if (collinear) line = std::make_pair(base, dir);
  }

  if (line) {
    const auto [base, dir] = *line;
    std::vector<double> t(N);
    for (std::size_t i = 0; i < N; ++i) t[i] = ((a.values[i] - base) * std::conj(dir)).real();
    const auto med = detail::weighted_median(t, g.weights);
    out.value = base + med.value * dir;
    out.flat = med.flat;
  } else {
    cplx c = 0.0;
    double wsum = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      c += g.weights[i] * a.values[i];
      wsum += g.weights[i];
    }
    c /= wsum;
    out.converged = false;
    for (int it = 0; it < 20000; ++it) {
      out.iterations = it + 1;
      cplx num = 0.0, pull = 0.0;
      double den = 0.0, anchor_w = 0.0;
      for (std::size_t i = 0; i < N; ++i) {
        const double d = std::abs(a.values[i] - c);
        if (d <= tiny) {
          anchor_w += g.weights[i];
          continue;
        }
        num += g.weights[i] * a.values[i] / d;
        den += g.weights[i] / d;
        pull += g.weights[i] * (a.values[i] - c) / d;
      }
      if (anchor_w > 0.0) {
        // Iterate sits on a sample: optimal iff the pull of the others is weak.
        if (std::abs(pull) <= anchor_w) {
          out.converged = true;
          break;
        }
        c += 1e3 * tiny * pull / std::abs(pull);
        continue;
      }
      const cplx next = num / den;
      const double step = std::abs(next - c);
      c = next;
      if (step <= 1e-13 * std::max(scale, 1e-300)) {
        out.converged = true;
        break;
      }
    }
    out.value = c;
  }
  out.objective = detail::radial_objective(a, g, out.value);
  out.best_sample_objective = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < N; i += std::max<std::size_t>(1, N / 512))
    out.best_sample_objective = std::min(out.best_sample_objective, detail::radial_objective(a, g, a.values[i]));
  return out;
}

// ------------------------------------------------------------ Newton kernels

struct KelvinPoint {
  Point y;
  Point y_reflected;
  double rho = 0.0;
};

inline KelvinPoint kelvin_reflect(const Point& y, const BallSpec& spec) {
  if (y.size() != spec.dim) throw std::invalid_argument("kelvin_reflect: dimension mismatch");
  const double r2 = y.squaredNorm();
  if (r2 == 0.0) throw std::domain_error("kelvin_reflect: y = 0 reflects to infinity");
  const double rho = spec.rho();
  return {y, (rho * rho / r2) * y, rho};
}

/// f(x) = |x - y|^(2-n) (n >= 3) or log|x - y| (n = 2).
inline double newton_kernel(const Point& x, const Point& y, int dim) {
  const double d = (x - y).norm();
  return dim == 2 ? std::log(d) : std::pow(d, 2.0 - dim);
}

struct NewtonApproximant {
  Point y;
  BallSpec spec{2};
  std::optional<KelvinPoint> kelvin;  ///< empty for y = 0
  bool valid = false;                 ///< |y| <= rho^2, so h is harmonic on B
  double constant = 0.0;              ///< value of h when y = 0

  double f(const Point& x) const { return newton_kernel(x, y, spec.dim); }

  double h(const Point& x) const {
    if (!kelvin) return constant;
    const double ry = y.norm();
    const double d = (x - kelvin->y_reflected).norm();
    const double rho = kelvin->rho;
    if (spec.dim == 2) return std::log(ry / rho * d);
    return std::pow(rho / ry, spec.dim - 2.0) * std::pow(d, 2.0 - spec.dim);
  }

  /// sgn(f - h) equals expected_sign * sigma on the ball.
  double expected_sign() const { return spec.dim == 2 ? 1.0 : -1.0; }
};

/// Best harmonic L1 approximant of the Newton kernel with pole y; at y = 0 it
/// is the constant rho^(2-n) (log rho for n = 2).
inline NewtonApproximant newton_best_harmonic(const Point& y, const BallSpec& spec) {
  if (y.size() != spec.dim) throw std::invalid_argument("newton_best_harmonic: dimension mismatch");
  NewtonApproximant a;
  a.y = y;
  a.spec = spec;
  const double rho = spec.rho();
  if (y.squaredNorm() == 0.0) {
    a.valid = true;
    a.constant = spec.dim == 2 ? std::log(rho) : std::pow(rho, 2.0 - spec.dim);
    return a;
  }
  a.kelvin = kelvin_reflect(y, spec);
  a.valid = y.norm() <= rho * rho * (1.0 + 1e-12);
  return a;
}

namespace detail {
/// Mean of fn over the sphere |x - c| = s, by tensor rules for n = 2, 3 and
/// seeded sphere samples otherwise.
inline double sphere_mean(const std::function<double(const Point&)>& fn, const Point& c, double s,
                          const BallSampler& sampler) {
  const int dim = static_cast<int>(c.size());
  if (dim == 2) {
    const int n = 512;
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
      const double t = 2.0 * kPi * j / n;
      Point x(2);
      x << c[0] + s * std::cos(t), c[1] + s * std::sin(t);
      acc += fn(x);
    }
    return acc / n;
  }
  if (dim == 3) {
    const Rule1D mu = gauss_legendre(64);
    const int nphi = 128;
    double acc = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
      const double ct = mu.nodes[i], st = std::sqrt(1.0 - ct * ct);
      for (int j = 0; j < nphi; ++j) {
        const double ph = 2.0 * kPi * j / nphi;
        Point x(3);
        x << c[0] + s * st * std::cos(ph), c[1] + s * st * std::sin(ph), c[2] + s * ct;
        acc += mu.weights[i] * fn(x);
      }
    }
    return acc / (2.0 * nphi);
  }
  const auto pts = sampler.sphere_points(20000, s);
  double acc = 0.0;
  for (const Point& u : pts) acc += fn(c + u);
  return acc / static_cast<double>(pts.size());
}

struct SignCheck {
  std::size_t checked = 0;
  std::size_t violations = 0;
  int first_violation = -1;
  Point witness;
};

inline SignCheck sign_check(const std::function<double(const Point&)>& diff, double expected_sign,
                            const std::vector<Point>& pts, const BallSpec& spec, double band) {
  SignCheck out;
  const double rho = spec.rho();
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const double r = pts[k].norm();
    if (std::abs(r - rho) <= band) continue;
    const double v = diff(pts[k]);
    if (std::isnan(v)) continue;
    ++out.checked;
    const double want = expected_sign * sigma(r, spec);
    if (!(v * want > 0.0)) {
      if (out.violations == 0) {
        out.first_violation = static_cast<int>(k);
        out.witness = pts[k];
      }
      ++out.violations;
    }
  }
  return out;
}

inline std::string format_point(const Point& x) {
  std::string s = "(";
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    if (k) s += ", ";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x[k]);
    s += buf;
  }
  return s + ")";
}

/// Mean-value probes of h on spheres along the ray through y. Returns the
/// first probe where the sphere mean differs from the center value.
inline std::optional<std::pair<Point, double>> harmonicity_probe(const NewtonApproximant& a,
                                                                 const BallSampler& sampler) {
  if (!a.kelvin) return std::nullopt;
  const Point dir = a.y.normalized();
  std::vector<std::pair<double, double>> probes;  // center radius, sphere radius
  for (double t : {0.3, 0.6, 0.8}) probes.push_back({t, 0.5 * (1.0 - t)});
  const double ry = a.kelvin->y_reflected.norm();
  if (ry < 1.0) {
    const double c = ry - 0.25 * (1.0 - ry);
    probes.push_back({c, 0.5 * (1.0 - c)});
  }
  auto h = [&](const Point& x) { return a.h(x); };
  for (const auto& [t, s] : probes) {
    const Point c = t * dir;
    const double mean = sphere_mean(h, c, s, sampler);
    const double center = a.h(c);
    const double dev = std::abs(mean - center);
    if (dev > 1e-6 * std::max(1.0, std::abs(center))) return std::make_pair(c, dev);
  }
  return std::nullopt;
}
}  // namespace detail

struct NewtonCertificateOptions {
  std::size_t samples = 100000;
  double band = 1e-3;
};

/// Checks sgn(f - h) = -sigma (n >= 3) or +sigma (n = 2) on uniform samples
/// away from the sphere |x| = rho, and that h satisfies the mean-value
/// property on probe spheres inside B.
inline Verdict newton_sign_certificate(const Point& y, const BallSpec& spec, const BallSampler& sampler,
                                       const NewtonCertificateOptions& opts = {}) {
  const NewtonApproximant a = newton_best_harmonic(y, spec);
  const auto pts = sampler.uniform_points(opts.samples);
  const auto sc = detail::sign_check([&](const Point& x) { return a.f(x) - a.h(x); }, a.expected_sign(), pts,
                                     spec, opts.band);
  Verdict v;
  v.tolerance = opts.band;
  v.notes.push_back("checked " + std::to_string(sc.checked) + " samples outside the exclusion band");
  v.notes.push_back(std::string("validity flag |y| <= rho^2: ") + (a.valid ? "true" : "false"));
  if (sc.violations > 0) {
    v.status = VerdictStatus::refuted;
    v.witness_index = sc.first_violation;
    v.witness_value = static_cast<double>(sc.violations);
    v.witness = "sign of f - h disagrees with the sigma pattern at " + detail::format_point(sc.witness);
    return v;
  }
  if (const auto probe = detail::harmonicity_probe(a, sampler)) {
    v.status = VerdictStatus::refuted;
    v.witness_value = probe->second;
    v.witness = "h violates the mean-value property on a sphere centered at " + detail::format_point(probe->first) +
                " (reflected pole inside B)";
    return v;
  }
  v.status = VerdictStatus::certified;
  v.witness_value = 0.0;
  v.witness = "no sign violations; h passes mean-value probes";
  return v;
}

struct AghrOptions {
  double tol = 1e-9;
  std::size_t sphere_samples = 4096;
  std::size_t interior_samples = 20000;
  int shells = 16;
};

/// h = omega on the sphere |x| = rho and h <= omega on rho <= |x| <= 1.
/// Harmonicity of h is assumed, not verified.
inline Verdict aghr_verify(const std::function<double(const Point&)>& omega,
                           const std::function<double(const Point&)>& h, const BallSpec& spec,
                           const BallSampler& sampler, const AghrOptions& opts = {}) {
  const double rho = spec.rho();
  Verdict v;
  v.tolerance = opts.tol;
  v.notes.push_back("h is assumed harmonic on B");
  double worst_sphere = 0.0;
  Point sphere_witness;
  for (const Point& x : sampler.sphere_points(opts.sphere_samples, rho)) {
    const double d = std::abs(h(x) - omega(x));
    if (d > worst_sphere) {
      worst_sphere = d;
      sphere_witness = x;
    }
  }
  if (worst_sphere > opts.tol) {
    v.status = VerdictStatus::refuted;
    v.witness_value = worst_sphere;
    v.witness = "sphere witness: |h - omega| = " + std::to_string(worst_sphere) + " at " +
                detail::format_point(sphere_witness);
    return v;
  }
  std::vector<Point> outer;
  for (int k = 0; k <= opts.shells; ++k) {
    const double r = rho + (1.0 - rho) * k / opts.shells;
    for (const Point& x : sampler.sphere_points(opts.sphere_samples / 4, r)) outer.push_back(x);
  }
  for (const Point& x : sampler.uniform_points(opts.interior_samples))
    if (x.norm() >= rho) outer.push_back(x);
  double worst = std::numeric_limits<double>::infinity();
  Point witness;
  for (const Point& x : outer) {
    const double d = omega(x) - h(x);
    if (d < worst) {
      worst = d;
      witness = x;
    }
  }
  if (worst < -opts.tol) {
    v.status = VerdictStatus::refuted;
    v.witness_value = worst;
    v.witness = "omega - h = " + std::to_string(worst) + " < 0 at " + detail::format_point(witness);
    return v;
  }
  v.status = VerdictStatus::certified;
  v.witness_value = worst_sphere;
  v.witness = "max sphere mismatch " + std::to_string(worst_sphere) + "; min exterior gap " + std::to_string(worst);
  return v;
}

/// Bounded version of the Newton kernel: min(f, M) for n >= 3, max(f, -M)
/// for n = 2. M must clear the kernel's extreme value on |x| = rho.
inline std::function<double(const Point&)> newton_cutoff(const Point& y, const BallSpec& spec, double M) {
  const double ry = y.norm();
  const double rho = spec.rho();
  if (ry >= rho) throw std::invalid_argument("newton_cutoff: y must lie inside B0");
  const double gap = rho - ry;
  const double extreme = spec.dim == 2 ? -std::log(gap) : std::pow(gap, 2.0 - spec.dim);
  if (!(M > extreme))
    throw std::invalid_argument("newton_cutoff: M must exceed " + std::to_string(extreme) +
                                " so the cutoff leaves the sphere untouched");
  const int dim = spec.dim;
  return [y, dim, M](const Point& x) {
    const double f = newton_kernel(x, y, dim);
    return dim == 2 ? std::max(f, -M) : std::min(f, M);
  };
}

/// Sign certificate of the cutoff kernel against the same h.
inline Verdict newton_cutoff_certificate(const Point& y, const BallSpec& spec, double M, const BallSampler& sampler,
                                         const NewtonCertificateOptions& opts = {}) {
  const auto fM = newton_cutoff(y, spec, M);
  const NewtonApproximant a = newton_best_harmonic(y, spec);
  const auto pts = sampler.uniform_points(opts.samples);
  const auto sc =
      detail::sign_check([&](const Point& x) { return fM(x) - a.h(x); }, a.expected_sign(), pts, spec, opts.band);
  Verdict v;
  v.tolerance = opts.band;
  v.notes.push_back("cutoff M = " + std::to_string(M));
  if (sc.violations > 0) {
    v.status = VerdictStatus::refuted;
    v.witness_index = sc.first_violation;
    v.witness_value = static_cast<double>(sc.violations);
    v.witness = "cutoff changes the sign pattern at " + detail::format_point(sc.witness);
  } else if (const auto probe = detail::harmonicity_probe(a, sampler)) {
    v.status = VerdictStatus::refuted;
    v.witness_value = probe->second;
    v.witness = "h violates the mean-value property near " + detail::format_point(probe->first);
  } else {
    v.status = VerdictStatus::certified;
    v.witness = "cutoff kernel keeps the sigma sign pattern over " + std::to_string(sc.checked) + " samples";
  }
  return v;
}

}  // namespace lpapprox
