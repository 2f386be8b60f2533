#pragma once

// Cauchy and Newton transforms, the operator L = x.grad + (n-2)/2 applied to
// Newton potentials, modified Schwarz potentials of the ball, and the
// peak-set functionals: multipole lower bounds and the thinness integral.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpapprox/ball_quadrature.hpp"
#include "lpapprox/grid.hpp"
#include "lpapprox/quadrature.hpp"
#include "lpapprox/regions.hpp"
#include "lpapprox/verdict.hpp"

namespace lpapprox {

using RealFn = std::function<double(const Point&)>;

// ------------------------------------------------------------ Cauchy transform

struct CauchyValue {
  cplx value = 0.0;
  bool desingularized = false;  ///< z met the support; local subtraction used
  double error_estimate = 0.0;
};

/// int g(w) / (z - w) dA(w) for a field on a disk grid. When z lies within
/// one cell of the support the value g(z) is subtracted against the closed
/// form for the full disk (conj(z) inside, 1/z outside).
inline CauchyValue cauchy_transform(const Field& g, cplx z, const DiskGrid& grid) {
  detail::check_aligned(g.size(), grid.size());
  const auto nodes = grid.nodes();
  const auto w = grid.weights();
  double cell = 0.0;
  if (grid.is_product()) {
    cell = 2.0 * kPi / grid.n_theta();
    for (std::size_t k = 1; k < grid.radii().size(); ++k)
      cell = std::max(cell, grid.radii()[k] - grid.radii()[k - 1]);
  } else {
    cell = std::sqrt(1.0 / static_cast<double>(std::max<std::size_t>(1, grid.size())));
  }
  double near_dist = std::numeric_limits<double>::infinity();
  std::size_t near_idx = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (g.values[i] == 0.0) continue;
    const double d = std::abs(z - nodes[i]);
    if (d < near_dist) {
      near_dist = d;
      near_idx = i;
    }
  }
  CauchyValue out;
  if (near_dist == std::numeric_limits<double>::infinity()) return out;
  if (near_dist > cell) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
      if (g.values[i] != 0.0) acc += w[i] * g.values[i] / (z - nodes[i]);
    out.value = acc;
    return out;
  }
  const cplx g0 = g.values[near_idx];
  cplx acc = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const cplx d = z - nodes[i];
    if (std::abs(d) < 1e-300) continue;
    acc += w[i] * (g.values[i] - g0) / d;
  }
  const cplx disk = std::abs(z) <= 1.0 ? std::conj(z) : 1.0 / z;
  out.value = acc + g0 * disk;
  out.desingularized = true;
  out.error_estimate = std::abs(g0) * cell;
  return out;
}

/// Same transform for an indicator, by polar rays around z:
/// C(z) = -(1/pi) int e^{-i phi} L(phi) dphi with L the ray length inside F.
inline cplx cauchy_transform(const Region& F, cplx z, int n_phi = 16384) {
  if (F.dim != 2) throw std::invalid_argument("cauchy_transform: planar regions only");
  if (F.kind == RegionKind::empty) return 0.0;
  cplx acc = 0.0;
  for (int j = 0; j < n_phi; ++j) {
    const double phi = 2.0 * kPi * (j + 0.5) / n_phi;
    acc += std::polar(1.0, -phi) * F.ray_length(z, phi);
  }
  return -acc * (2.0 * kPi / n_phi) / kPi;
}

struct AhlforsBeurlingReport {
  double max_modulus = 0.0;
  cplx argmax = 0.0;
  double normalized_area = 0.0;
  Verdict verdict;
};

/// max over probes of |C_F|, compared with the disk bound 1/sqrt(2).
inline AhlforsBeurlingReport ahlfors_beurling_check(const Region& F, std::vector<cplx> probes = {},
                                                    double tol = 1e-3) {
  AhlforsBeurlingReport rep;
  rep.normalized_area = F.normalized_measure();
  if (std::abs(rep.normalized_area - 0.5) > 1e-2)
    throw std::invalid_argument("ahlfors_beurling_check: region must have normalized area 1/2");
  if (probes.empty()) probes = F.boundary_points(128);
  for (cplx z : probes) {
    const double m = std::abs(cauchy_transform(F, z));
    if (m > rep.max_modulus) {
      rep.max_modulus = m;
      rep.argmax = z;
    }
  }
  const double bound = 1.0 / std::sqrt(2.0);
  Verdict& v = rep.verdict;
  v.tolerance = tol;
  v.witness_value = rep.max_modulus;
  v.witness = "max |C| over " + std::to_string(probes.size()) + " probes";
  v.status = rep.max_modulus <= bound + tol ? VerdictStatus::certified : VerdictStatus::refuted;
  return rep;
}

// ------------------------------------------------------------ Newton potentials

/// Fundamental solution with Laplacian delta: log|x| / (2 pi) in 2D and
/// |x|^(2-n) / ((2-n) |S^(n-1)|) for n >= 3.
inline double fundamental_solution(double r, int dim) {
  if (dim == 2) return std::log(r) / (2.0 * kPi);
  const BallSpec s(dim);
  return std::pow(r, 2.0 - dim) / ((2.0 - dim) * s.sphere_area());
}

/// Normalization constant c in E(x) = c |x|^(2-n) (n >= 3) or c log|x| (n = 2).
inline double kernel_constant(int dim) {
  if (dim == 2) return 1.0 / (2.0 * kPi);
  return 1.0 / ((2.0 - dim) * BallSpec(dim).sphere_area());
}

inline double newton_potential(const RealFn& g, const Point& y, const BallRule& rule) {
  const int n = rule.spec().dim;
  return rule.integrate([&](const Point& x) {
    const double d = (y - x).norm();
    return d > 0.0 ? fundamental_solution(d, n) * g(x) : 0.0;
  });
}

inline double newton_potential(const Field& g, const Point& y, const BallRule& rule) {
  detail::check_aligned(g.size(), rule.size());
  const int n = rule.spec().dim;
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double d = (y - rule.nodes()[i]).norm();
    if (d > 0.0) acc += rule.weights()[i] * fundamental_solution(d, n) * g.values[i].real();
  }
  return acc;
}

/// E * chi_{|x| < R} evaluated at radius r.
inline double ball_potential(double r, double R, int dim) {
  if (!(R > 0.0)) return 0.0;
  const double n = dim;
  if (r >= R) {
    if (dim == 2) return 0.5 * R * R * std::log(r);
    return std::pow(R, n) * std::pow(r, 2.0 - n) / ((2.0 - n) * n);
  }
  const double C = dim == 2 ? 0.5 * R * R * std::log(R) - 0.25 * R * R : R * R / (2.0 * (2.0 - n));
  return r * r / (2.0 * n) + C;
}

/// E * sigma = E * chi_B - 2 E * chi_{B0} in closed form.
inline double sigma_potential(double r, const BallSpec& spec) {
  return ball_potential(r, 1.0, spec.dim) - 2.0 * ball_potential(r, spec.rho(), spec.dim);
}

/// L_y (E * g)(y) with L = y.grad + (n-2)/2:
///   n >= 3: ((n-2)/2) c int (|x|^2 - |y|^2) / |x-y|^n g(x) dx,
///   n = 2:  (1 / 4pi) int (|y|^2 - |x|^2) / |y-x|^2 g(x) dx  (needs int g = 0).
inline double L_apply_potential(const RealFn& g, const Point& y, const BallRule& rule) {
  const int n = rule.spec().dim;
  const double y2 = y.squaredNorm();
  const double K = rule.integrate([&](const Point& x) {
    const double d = (x - y).norm();
    if (d == 0.0) return 0.0;
    return (x.squaredNorm() - y2) / std::pow(d, n) * g(x);
  });
  if (n == 2) return -K / (4.0 * kPi);
  return 0.5 * (n - 2.0) * kernel_constant(n) * K;
}

/// int (|x|^2 - |y|^2) / |x-y|^n g(x) dx, the kernel integral inside L.
inline double L_kernel_integral(const RealFn& g, const Point& y, const BallRule& rule) {
  const int n = rule.spec().dim;
  const double y2 = y.squaredNorm();
  return rule.integrate([&](const Point& x) {
    const double d = (x - y).norm();
    return d == 0.0 ? 0.0 : (x.squaredNorm() - y2) / std::pow(d, n) * g(x);
  });
}

// ------------------------------------------------------- harmonic test functions

/// Harmonic polynomials in 2D: Re z^k, Im z^k (k >= 1) and 1.
inline std::vector<RealFn> harmonic_polynomials_2d(int degree) {
  std::vector<RealFn> out{[](const Point&) { return 1.0; }};
  for (int k = 1; k <= degree; ++k) {
    out.push_back([k](const Point& x) { return std::pow(cplx(x[0], x[1]), k).real(); });
    out.push_back([k](const Point& x) { return std::pow(cplx(x[0], x[1]), k).imag(); });
  }
  return out;
}

/// Re((u.x + i v.x)^k) with u, v orthonormal; harmonic because u + iv is null.
inline RealFn harmonic_polynomial_3d(const Point& u, const Point& v, int k) {
  return [u, v, k](const Point& x) { return std::pow(cplx(u.dot(x), v.dot(x)), k).real(); };
}

/// `count` seeded harmonic polynomials of degree 1..max_degree in R^n (n >= 3).
inline std::vector<RealFn> random_harmonic_polynomials(int dim, int count, int max_degree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<RealFn> out;
  for (int j = 0; j < count; ++j) {
    Point u(dim), v(dim);
    for (int k = 0; k < dim; ++k) u[k] = normal(rng);
    for (int k = 0; k < dim; ++k) v[k] = normal(rng);
    u.normalize();
    v = (v - v.dot(u) * u).normalized();
    const int deg = 1 + j % std::max(1, max_degree);
    out.push_back(harmonic_polynomial_3d(u, v, deg));
  }
  return out;
}

// ------------------------------------------------------ bounded annihilators

inline double legendre_p(int k, double t) {
  double p0 = 1.0, p1 = t;
  if (k == 0) return p0;
  for (int j = 1; j < k; ++j) {
    const double p2 = ((2.0 * j + 1.0) * t * p1 - j * p0) / (j + 1.0);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

/// g(x) = sum_j a_j(|x|) Y_j(x/|x|) with step profiles a_j orthogonal to
/// r^(j+n-1) on [0, 1], so g kills every harmonic polynomial. |g| <= 1.
struct Annihilator {
  RealFn fn;
  std::vector<double> radial_breaks;
};

inline Annihilator random_annihilator(const BallSpec& spec, std::uint64_t seed, int max_order = 3) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int n = spec.dim;
  struct Term {
    int order;
    std::vector<double> breaks;  // 0 = b_0 < ... < b_m = 1
    std::vector<double> levels;
    double coef;
    Point dir;     // 3D zonal axis
    double phase;  // 2D
  };
  std::vector<Term> terms;
  std::vector<double> all_breaks;
  double bound = 0.0;
  for (int j = 0; j <= max_order; ++j) {
    Term t;
    t.order = j;
    const int pieces = 2 + static_cast<int>(unif(rng) * 3.0);
    t.breaks = {0.0, 1.0};
    for (int k = 1; k < pieces; ++k) t.breaks.push_back(0.1 + 0.85 * unif(rng));
    std::sort(t.breaks.begin(), t.breaks.end());
    for (int k = 0; k < pieces; ++k) t.levels.push_back(2.0 * unif(rng) - 1.0);
    // Remove the r^(j+n-1)-weighted mean so the profile is orthogonal to r^j.
    const double pw = j + n;
    double mass = 0.0, mom = 0.0;
    for (int k = 0; k < pieces; ++k) {
      const double m = (std::pow(t.breaks[k + 1], pw) - std::pow(t.breaks[k], pw)) / pw;
      mass += m;
      mom += t.levels[k] * m;
    }
    double sup = 0.0;
    for (double& l : t.levels) {
      l -= mom / mass;
      sup = std::max(sup, std::abs(l));
    }
    if (sup > 0.0)
      for (double& l : t.levels) l /= sup;
    t.coef = j == 0 ? 1.0 : std::abs(normal(rng));
    t.dir = Point(n);
    for (int k = 0; k < n; ++k) t.dir[k] = normal(rng);
    t.dir.normalize();
    t.phase = 2.0 * kPi * unif(rng);
    bound += t.coef;
    all_breaks.insert(all_breaks.end(), t.breaks.begin() + 1, t.breaks.end() - 1);
    terms.push_back(std::move(t));
  }
  for (Term& t : terms) t.coef /= bound;
  Annihilator a;
  a.radial_breaks = all_breaks;
  a.fn = [terms, n](const Point& x) {
    const double r = x.norm();
    if (r >= 1.0) return 0.0;
    double acc = 0.0;
    for (const Term& t : terms) {
      const auto it = std::upper_bound(t.breaks.begin(), t.breaks.end(), r);
      const std::size_t k = std::min<std::size_t>(t.levels.size() - 1, static_cast<std::size_t>(it - t.breaks.begin()) - 1);
      double y = 1.0;
      if (t.order > 0 && r > 0.0) {
        if (n == 2) {
          y = std::cos(t.order * std::atan2(x[1], x[0]) + t.phase);
        } else {
          y = legendre_p(t.order, std::clamp(x.dot(t.dir) / r, -1.0, 1.0));
        }
      }
      acc += t.coef * t.levels[k] * y;
    }
    return acc;
  };
  return a;
}

/// Largest |int g h dx| over the given harmonic functions.
inline double annihilation_residual(const RealFn& g, const std::vector<RealFn>& harmonics, const BallRule& rule) {
  double worst = 0.0;
  for (const RealFn& h : harmonics)
    worst = std::max(worst, std::abs(rule.integrate([&](const Point& x) { return g(x) * h(x); })));
  return worst;
}

/// |E*g(y)| <= |E*sigma(y)| + tol for an annihilator g; inconclusive when g
/// fails the annihilation pre-check.
inline Verdict cor74_compare(const RealFn& g, const Point& y, const BallRule& rule,
                             const std::vector<RealFn>& harmonics, double tol = 1e-3) {
  const BallSpec& spec = rule.spec();
  Verdict v;
  v.tolerance = tol;
  const double res = annihilation_residual(g, harmonics, rule);
  if (res > tol) {
    v.status = VerdictStatus::inconclusive;
    v.witness_value = res;
    v.witness = "g fails the annihilation pre-check";
    return v;
  }
  const double eg = newton_potential(g, y, rule);
  const double es = newton_potential([&](const Point& x) { return sigma(x.norm(), spec); }, y, rule);
  v.witness_value = std::abs(es) - std::abs(eg);
  v.witness = "|E*g(y)| = " + std::to_string(std::abs(eg)) + ", |E*sigma(y)| = " + std::to_string(std::abs(es));
  v.status = std::abs(eg) <= std::abs(es) + tol ? VerdictStatus::certified : VerdictStatus::refuted;
  return v;
}

// -------------------------------------------------------- Schwarz potential

/// Solution of Lap v = 1 on B minus the origin with v = dv/dn = 0 on |x| = 1.
inline double schwarz_potential(const Point& x, const BallSpec& spec) {
  const double r = x.norm();
  if (r == 0.0) throw std::domain_error("schwarz_potential: singular at the origin");
  const double n = spec.dim;
  if (spec.dim == 2) return 0.25 * (r * r - 1.0) - 0.5 * std::log(r);
  return r * r / (2.0 * n) + std::pow(r, 2.0 - n) / (n * (n - 2.0)) - 1.0 / (2.0 * (n - 2.0));
}

// ------------------------------------------------------------- peak sets

struct PoleMember {
  RealFn u;
  Point pole;      ///< empty for the constant member
  double distance; ///< pole distance to the sphere
};

struct PoleFamily {
  int dim = 2;
  Point boundary_point;
  std::vector<PoleMember> members;
};

/// u_j = Re(1 / (z - z_j)^k) in 2D or the k-th axial derivative of
/// |x - p_j|^(2-n) in 3D, with poles p_j = (1 + d_j) e and d_j = 2^-j.
inline PoleFamily make_pole_family(int dim, const Point& direction, int order = 3, int count = 20,
                                   bool include_constant = false) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("make_pole_family: dimension must be 2 or 3");
  if (direction.size() != dim || direction.norm() == 0.0)
    throw std::invalid_argument("make_pole_family: bad direction");
  if (order < 1) throw std::invalid_argument("make_pole_family: order must be >= 1");
  PoleFamily fam;
  fam.dim = dim;
  const Point e = direction.normalized();
  fam.boundary_point = e;
  if (include_constant) fam.members.push_back({[](const Point&) { return 1.0; }, Point(), 0.0});
  for (int j = 1; j <= count; ++j) {
    const double d = std::ldexp(1.0, -j);
    const Point p = (1.0 + d) * e;
    RealFn u;
    if (dim == 2) {
      const cplx zp(p[0], p[1]);
      u = [zp, order](const Point& x) { return (1.0 / std::pow(cplx(x[0], x[1]) - zp, order)).real(); };
    } else {
      u = [p, e, order](const Point& x) {
        const Point w = x - p;
        const double r = w.norm();
        return legendre_p(order, w.dot(e) / r) / std::pow(r, order + 1);
      };
    }
    fam.members.push_back({u, p, d});
  }
  return fam;
}

struct PeakBounds {
  double A_lower = 0.0;
  double B_lower = 0.0;
  std::vector<double> ratio_A;  ///< per member
  std::vector<double> ratio_B;
};

/// Certified lower bounds for A(F) and B(F) over the unit ball G:
/// max_j int_F |u_j| / int_{G\F} |u_j| and max_j |int_F u_j| / int_{G\F} |u_j|.
inline PeakBounds peak_lower_bounds(const Region& F, const PoleFamily& fam, const BallRuleOptions& opts = {}) {
  PeakBounds out;
  if (F.dim != fam.dim) throw std::invalid_argument("peak_lower_bounds: dimension mismatch");
  const BallSpec spec(fam.dim);
  for (const PoleMember& m : fam.members) {
    if (m.pole.size() > 0 && !(m.pole.norm() > 1.0))
      throw std::invalid_argument("peak_lower_bounds: poles must lie outside the closed ball");
    if (F.kind == RegionKind::empty) {
      out.ratio_A.push_back(0.0);
      out.ratio_B.push_back(0.0);
      continue;
    }
    BallRuleOptions o = opts;
    Point focus = Point::Zero(fam.dim);
    if (m.pole.size() > 0) {
      focus = fam.boundary_point;
      o.min_width = std::min(opts.min_width, m.distance / 64.0);
    }
    const BallRule rule(spec, focus, F.radial_breaks(), o);
    double inF = 0.0, inF_signed = 0.0, outF = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const Point& x = rule.nodes()[i];
      const double val = m.u(x) * rule.weights()[i];
      if (F.contains(x)) {
        inF += std::abs(val);
        inF_signed += val;
      } else {
        outF += std::abs(val);
      }
    }
    const double inf = std::numeric_limits<double>::infinity();
    out.ratio_A.push_back(outF > 0.0 ? inF / outF : inf);
    out.ratio_B.push_back(outF > 0.0 ? std::abs(inF_signed) / outF : inf);
  }
  for (double a : out.ratio_A) out.A_lower = std::max(out.A_lower, a);
  for (double b : out.ratio_B) out.B_lower = std::max(out.B_lower, b);
  return out;
}

struct ThinnessReport {
  std::vector<double> deltas;
  std::vector<double> integrals;      ///< I truncated at dist >= delta
  double relative_change = 0.0;       ///< between the two finest truncations
  bool converged = false;
  double tail_radius = 0.0;           ///< largest c with int_{F_c} dist^-n < c_n / 2
  double tail_value = 0.0;
  std::string verdict;                ///< "not-weak-peak" or "criterion inapplicable"
};

/// I = int_F dist(x, dS)^(-n) dx from the angular slices of F, truncated at
/// dist = delta for delta = 1e-2 .. 1e-5.
inline ThinnessReport thinness_check(const Region& F, int n_gl = 16) {
  const int n = F.dim;
  const double cn = BallSpec(n).volume();
  auto integral = [&](double lo, double hi) {
    // Geometric panels toward hi = 1 - delta, plus the region's own breaks.
    std::vector<double> b{lo, hi};
    for (double t = 0.5; 1.0 - t < hi; t *= 0.5)
      if (1.0 - t > lo) b.push_back(1.0 - t);
    for (int k = 1; k < 8; ++k) b.push_back(lo + (hi - lo) * k / 8.0);
    b = merge_breaks(std::vector<double>{lo, hi}, b);
    b = merge_breaks(b, F.radial_breaks());
    const Rule1D rule = composite_gauss_legendre(n_gl, b);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double r = rule.nodes[i];
      acc += rule.weights[i] * F.slice(r) * std::pow(r, n - 1) * std::pow(1.0 - r, -n);
    }
    return acc;
  };
  ThinnessReport rep;
  for (double d : {1e-2, 1e-3, 1e-4, 1e-5}) {
    rep.deltas.push_back(d);
    rep.integrals.push_back(integral(0.0, 1.0 - d));
  }
  const std::size_t m = rep.integrals.size();
  const double last = rep.integrals[m - 1], prev = rep.integrals[m - 2];
  rep.relative_change = last > 0.0 ? std::abs(last - prev) / last : 0.0;
  rep.converged = true;
  for (std::size_t k = 1; k < m; ++k) {
    const double a = rep.integrals[k - 1], b = rep.integrals[k];
    if (b > 0.0 && std::abs(b - a) / b >= 0.05) rep.converged = false;
  }
  if (rep.converged) {
    for (double c = 0.5; c >= 1e-4; c *= 0.5) {
      const double tail = last - integral(0.0, 1.0 - c);
      if (tail < 0.5 * cn) {
        rep.tail_radius = c;
        rep.tail_value = std::max(0.0, tail);
        break;
      }
    }
  }
  rep.verdict = rep.converged && rep.tail_radius > 0.0 ? "not-weak-peak" : "criterion inapplicable";
  return rep;
}

/// Least-squares bounded extension: the minimal-L2 g on G \ F with
/// int_F h + int_{G\F} g h = 0 for harmonic polynomials of degree <= K.
/// Returns sup |g| for each K (2D).
inline std::vector<double> extension_growth(const Region& F, const std::vector<int>& degrees,
                                            const BallRuleOptions& opts = {}) {
  if (F.dim != 2) throw std::invalid_argument("extension_growth: planar regions only");
  const BallSpec spec(2);
  Point focus = Point::Zero(2);
  const BallRule rule(spec, focus, F.radial_breaks(), opts);
  std::vector<double> out;
  for (int K : degrees) {
    const auto hs = harmonic_polynomials_2d(K);
    const auto d = static_cast<Eigen::Index>(hs.size());
    std::vector<std::size_t> outside;
    Eigen::VectorXd b = Eigen::VectorXd::Zero(d);
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const Point& x = rule.nodes()[i];
      if (F.contains(x)) {
        for (Eigen::Index k = 0; k < d; ++k) b[k] += rule.weights()[i] * hs[k](x);
      } else {
        outside.push_back(i);
      }
    }
    Eigen::MatrixXd H(static_cast<Eigen::Index>(outside.size()), d);
    Eigen::VectorXd sw(static_cast<Eigen::Index>(outside.size()));
    for (std::size_t r = 0; r < outside.size(); ++r) {
      const Point& x = rule.nodes()[outside[r]];
      sw[static_cast<Eigen::Index>(r)] = std::sqrt(rule.weights()[outside[r]]);
      for (Eigen::Index k = 0; k < d; ++k) H(static_cast<Eigen::Index>(r), k) = hs[k](x);
    }
    // g = H c with (H^T W H) c = -b.
    const Eigen::MatrixXd WH = sw.asDiagonal() * H;
    const Eigen::VectorXd c = (WH.transpose() * WH).completeOrthogonalDecomposition().solve(-b);
    out.push_back((H * c).cwiseAbs().maxCoeff());
  }
  return out;
}

}  // namespace lpapprox
