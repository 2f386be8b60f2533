#pragma once

// Best L^p approximation of a sampled function by a finite basis on a disk grid:
// minimize sum_i w_i |omega_i - (Phi c)_i|^p over complex coefficients c.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpapprox/basis.hpp"
#include "lpapprox/grid.hpp"

namespace lpapprox {

struct SolverOptions {
  double p = 1.0;
  // Smoothing |t| ~ sqrt(t^2 + eps^2) for p = 1. eps values are relative to
  // the mean modulus of omega so that solutions scale with omega.
  double eps0 = 1e-1;
  double eps_decay = 0.3;
  double eps_min = 1e-7;
  int max_outer = 60;
  int max_inner = 400;
  double grad_tol = 1e-10;
  int flatness_probes = 0;  ///< 0 disables the automatic probe after p = 1 solves
  double flatness_step = 1e-2;
  std::uint64_t seed = 0;

  void validate() const {
    if (!(p >= 1.0)) throw std::invalid_argument("SolverOptions: p must be >= 1");
    if (!(eps0 > eps_min && eps_min > 0.0)) throw std::invalid_argument("SolverOptions: need eps0 > eps_min > 0");
    if (!(eps_decay > 0.0 && eps_decay < 1.0)) throw std::invalid_argument("SolverOptions: need 0 < eps_decay < 1");
    if (max_outer < 1 || max_inner < 1) throw std::invalid_argument("SolverOptions: iteration budgets must be >= 1");
  }
};

struct ApproxSolution {
  BasisSpec spec;
  Coeffs coeffs;
  double lambda = 0.0;       ///< discrete ||omega - f*||_p
  Field residual;            ///< omega - f* at the grid nodes
  int iterations = 0;
  double final_eps = 0.0;    ///< absolute smoothing at the last stage (p = 1)
  double gradient_norm = 0.0;
  bool converged = false;
  bool flat = false;
  std::vector<double> stage_objectives;  ///< smoothed objective at the end of each stage
  std::string message;
};

namespace detail {

inline double lp_objective(std::span<const cplx> r, std::span<const double> w, double p) {
  double acc = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) acc += w[i] * std::pow(std::abs(r[i]), p);
  return acc;
}

inline double smoothed_l1(std::span<const cplx> r, std::span<const double> w, double eps) {
  double acc = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) acc += w[i] * std::sqrt(std::norm(r[i]) + eps * eps);
  return acc;
}

inline std::vector<cplx> residual(const Eigen::MatrixXcd& phi, std::span<const cplx> omega, const Coeffs& c) {
  const Eigen::VectorXcd fit = phi * c;
  std::vector<cplx> r(omega.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = omega[i] - fit[static_cast<Eigen::Index>(i)];
  return r;
}

inline double mean_modulus(std::span<const cplx> v, std::span<const double> w) {
  double s = 0.0, ws = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    s += w[i] * std::abs(v[i]);
    ws += w[i];
  }
  return ws > 0.0 ? s / ws : 0.0;
}

/// Gradient of sum_i w_i psi(|r_i|) with respect to conj(c), as a complex vector.
inline Eigen::VectorXcd weighted_gradient(const Eigen::MatrixXcd& phi, std::span<const cplx> r,
                                          const std::vector<double>& u) {
  Eigen::VectorXcd g = Eigen::VectorXcd::Zero(phi.cols());
  for (Eigen::Index i = 0; i < phi.rows(); ++i)
    g -= u[static_cast<std::size_t>(i)] * phi.row(i).adjoint() * r[static_cast<std::size_t>(i)];
  return g;
}

inline void finalize(ApproxSolution& sol, const Eigen::MatrixXcd& phi, const Field& omega, double p,
                     std::span<const double> w) {
  const auto r = residual(phi, omega.values, sol.coeffs);
  sol.residual.values = r;
  sol.residual.source = "residual";
  sol.lambda = std::pow(lp_objective(r, w, p), 1.0 / p);
}

inline ApproxSolution solve_l2(const Field& omega, const BasisSpec& spec, const DiskGrid& g) {
  ApproxSolution sol;
  sol.spec = spec;
  sol.coeffs = project_l2(omega, spec, g);
  const Eigen::MatrixXcd phi = basis_matrix(spec, g.nodes());
  finalize(sol, phi, omega, 2.0, g.weights());
  std::vector<double> u(g.weights().begin(), g.weights().end());
  sol.gradient_norm = weighted_gradient(phi, sol.residual.values, u).norm();
  sol.converged = true;
  sol.iterations = 1;
  sol.message = "normal equations";
  return sol;
}

/// IRLS on the smoothed L1 objective with geometric eps continuation.
inline ApproxSolution solve_l1(const Field& omega, const BasisSpec& spec, const SolverOptions& opts,
                               const DiskGrid& g) {
  const auto w = g.weights();
  const Eigen::MatrixXcd phi = basis_matrix(spec, g.nodes());
  ApproxSolution sol;
  sol.spec = spec;
  const double scale = mean_modulus(omega.values, w);
  if (scale == 0.0) {
    sol.coeffs = Coeffs::Zero(static_cast<Eigen::Index>(spec.dimension()));
    finalize(sol, phi, omega, 1.0, w);
    sol.converged = true;
    sol.message = "omega vanishes on the grid";
    return sol;
  }

  const bool diagonal = false;
  Coeffs c = project_l2(omega, spec, g);
  std::vector<cplx> r = residual(phi, omega.values, c);
  std::vector<double> u(r.size());
  double eps = opts.eps0 * scale;
  const double eps_floor = opts.eps_min * scale;
  bool last_stage_converged = false;
  int total = 0;

  for (int stage = 0; stage < opts.max_outer; ++stage) {
    double obj = smoothed_l1(r, w, eps);
    last_stage_converged = false;
    for (int it = 0; it < opts.max_inner; ++it) {
      ++total;
      for (std::size_t i = 0; i < r.size(); ++i) u[i] = w[i] / std::sqrt(std::norm(r[i]) + eps * eps);
      Coeffs next;
      try {
        next = weighted_normal_solve(phi, u, omega.values, diagonal);
      } catch (const std::runtime_error&) {
        break;
      }
      std::vector<cplx> r_next = residual(phi, omega.values, next);
      const double obj_next = smoothed_l1(r_next, w, eps);
      // IRLS is a majorize-minimize step: obj_next <= obj up to rounding.
      const double step = (next - c).norm();
      c = std::move(next);
      r = std::move(r_next);
      const double decrease = obj - obj_next;
      obj = obj_next;
      if (decrease <= 1e-15 * obj || step <= 1e-13 * (1.0 + c.norm())) {
        last_stage_converged = true;
        break;
      }
    }
    sol.stage_objectives.push_back(obj);
    sol.final_eps = eps;
    if (eps <= eps_floor * (1.0 + 1e-12)) break;
    eps = std::max(eps * opts.eps_decay, eps_floor);
  }

  sol.coeffs = c;
  sol.iterations = total;
  finalize(sol, phi, omega, 1.0, w);
  for (std::size_t i = 0; i < r.size(); ++i) u[i] = w[i] / std::sqrt(std::norm(r[i]) + sol.final_eps * sol.final_eps);
  sol.gradient_norm = weighted_gradient(phi, r, u).norm();
  sol.converged = last_stage_converged;
  sol.message = sol.converged ? "IRLS converged at the final smoothing level"
                              : "IRLS hit the inner iteration budget at the final smoothing level";
  return sol;
}

/// Damped Newton in the real parametrization of the coefficients, p > 1.
/// For p < 2 the objective is smoothed to (|r|^2 + eps^2)^(p/2) and eps is
/// driven to eps_min * scale; the |r|^(p-2) Hessian is unusable near r = 0.
inline ApproxSolution solve_lp_newton(const Field& omega, const BasisSpec& spec, const SolverOptions& opts,
                                      const DiskGrid& g) {
  const double p = opts.p;
  const auto w = g.weights();
  const Eigen::MatrixXcd phi = basis_matrix(spec, g.nodes());
  const Eigen::Index d = phi.cols();
  ApproxSolution sol;
  sol.spec = spec;
  const double scale = mean_modulus(omega.values, w);
  Coeffs c = project_l2(omega, spec, g);
  if (scale == 0.0) {
    sol.coeffs = Coeffs::Zero(d);
    finalize(sol, phi, omega, p, w);
    sol.converged = true;
    return sol;
  }
  const double r_floor = opts.eps_min * scale;

  auto to_real = [d](const Coeffs& z) {
    Eigen::VectorXd x(2 * d);
    for (Eigen::Index k = 0; k < d; ++k) {
      x[2 * k] = z[k].real();
      x[2 * k + 1] = z[k].imag();
    }
    return x;
  };
  auto to_complex = [d](const Eigen::VectorXd& x) {
    Coeffs z(d);
    for (Eigen::Index k = 0; k < d; ++k) z[k] = cplx(x[2 * k], x[2 * k + 1]);
    return z;
  };
  auto objective = [&](const std::vector<cplx>& r, double eps) {
    if (eps == 0.0) return lp_objective(r, w, p);
    double acc = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) acc += w[i] * std::pow(std::norm(r[i]) + eps * eps, 0.5 * p);
    return acc;
  };

  std::vector<cplx> r = residual(phi, omega.values, c);
  double gnorm = 0.0;
  int total = 0;
  bool converged = false;
  const int budget = opts.max_outer * opts.max_inner / 10;

  // One Newton run at fixed smoothing; returns true when the gradient test passes.
  auto stage = [&](double eps) {
    double obj = objective(r, eps);
    Eigen::MatrixXd jac(2, 2 * d);
    for (int it = 0; total < budget; ++it, ++total) {
      Eigen::VectorXd grad = Eigen::VectorXd::Zero(2 * d);
      Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(2 * d, 2 * d);
      for (Eigen::Index i = 0; i < phi.rows(); ++i) {
        const cplx ri = r[static_cast<std::size_t>(i)];
        const double a = std::abs(ri);
        const double wi = w[static_cast<std::size_t>(i)];
        for (Eigen::Index k = 0; k < d; ++k) {
          const cplx f = phi(i, k);
          // d(Re r, Im r)/d(Re c_k, Im c_k) = -[[Re f, -Im f], [Im f, Re f]]
          jac(0, 2 * k) = -f.real();
          jac(0, 2 * k + 1) = f.imag();
          jac(1, 2 * k) = -f.imag();
          jac(1, 2 * k + 1) = -f.real();
        }
        const Eigen::Vector2d rv(ri.real(), ri.imag());
        Eigen::Matrix2d h;
        if (eps > 0.0) {
          const double sq = a * a + eps * eps;
          grad.noalias() += wi * p * std::pow(sq, 0.5 * p - 1.0) * jac.transpose() * rv;
          h = wi * p * (std::pow(sq, 0.5 * p - 1.0) * Eigen::Matrix2d::Identity() +
                        (p - 2.0) * std::pow(sq, 0.5 * p - 2.0) * rv * rv.transpose());
        } else {
          if (a > 0.0) grad.noalias() += wi * p * std::pow(a, p - 2.0) * jac.transpose() * rv;
          h = Eigen::Matrix2d::Identity();
          if (a > 0.0) h += (p - 2.0) * (rv / a) * (rv / a).transpose();
          h *= wi * p * std::pow(std::max(a, r_floor), p - 2.0);
        }
        hess.noalias() += jac.transpose() * h * jac;
      }
      gnorm = grad.norm();
      const double gscale = p * std::pow(obj, (p - 1.0) / p);
      if (gnorm <= opts.grad_tol * gscale) return true;
      Eigen::LDLT<Eigen::MatrixXd> ldlt(hess);
      Eigen::VectorXd step = -ldlt.solve(grad);
      if (ldlt.info() != Eigen::Success || !step.allFinite() || grad.dot(step) >= 0.0) step = -grad;
      const Eigen::VectorXd x = to_real(c);
      // Predicted decrease below the objective's rounding level: the line
      // search cannot discriminate, so take the Newton step and stop.
      if (-grad.dot(step) <= 64.0 * std::numeric_limits<double>::epsilon() * obj) {
        c = to_complex(x + step);
        r = residual(phi, omega.values, c);
        ++total;
        return true;
      }
      double t = 1.0;
      bool accepted = false;
      for (int ls = 0; ls < 60; ++ls) {
        const Coeffs trial = to_complex(x + t * step);
        auto r_trial = residual(phi, omega.values, trial);
        const double obj_trial = objective(r_trial, eps);
        if (obj_trial <= obj + 1e-4 * t * grad.dot(step)) {
          c = trial;
          r = std::move(r_trial);
          obj = obj_trial;
          accepted = true;
          break;
        }
        t *= 0.5;
      }
      // No representable decrease: stationary if the gradient is already small.
      if (!accepted) return gnorm <= 1e-6 * gscale;
    }
    return false;
  };

  if (p < 2.0) {
    double eps = opts.eps0 * scale;
    const double eps_end = opts.eps_min * scale;
    while (true) {
      converged = stage(eps);
      sol.stage_objectives.push_back(objective(r, eps));
      if (eps <= eps_end || total >= budget) break;
      eps = std::max(eps * opts.eps_decay, eps_end);
    }
    sol.final_eps = eps;
  } else {
    converged = stage(0.0);
    sol.stage_objectives.push_back(objective(r, 0.0));
  }
  sol.coeffs = c;
  sol.iterations = total;
  sol.gradient_norm = gnorm;
  sol.converged = converged;
  finalize(sol, phi, omega, p, w);
  sol.message = converged ? "Newton converged" : "Newton did not reach the gradient tolerance";
  return sol;
}

}  // namespace detail

struct FlatnessReport {
  double max_deviation = 0.0;  ///< max over probes of |dist - lambda| / lambda
  double min_deviation = 0.0;  ///< flattest probe direction
  std::vector<double> per_direction;
  double threshold = 0.0;
  bool flat = false;
};

/// Perturb f* along coordinate and random real unit directions by +-delta and
/// compare the L1 distance against lambda. A direction is flat when both
/// perturbations keep the relative deviation below 10 * delta * scale.
inline FlatnessReport flatness_probe(const Field& omega, const ApproxSolution& sol, const BasisSpec& spec,
                                     const DiskGrid& g, int n_dirs, double delta = 1e-2,
                                     std::uint64_t seed = 0, double scale = 1e-6) {
  FlatnessReport rep;
  rep.threshold = 10.0 * delta * scale;
  const auto d = static_cast<Eigen::Index>(spec.dimension());
  if (sol.lambda <= 0.0) {
    rep.flat = false;
    return rep;
  }
  const Eigen::MatrixXcd phi = basis_matrix(spec, g.nodes());
  std::vector<Coeffs> dirs;
  for (Eigen::Index k = 0; k < d; ++k) {
    Coeffs e = Coeffs::Zero(d);
    e[k] = 1.0;
    dirs.push_back(e);
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int j = 0; j < n_dirs; ++j) {
    Coeffs v(d);
    for (Eigen::Index k = 0; k < d; ++k) v[k] = normal(rng);
    if (v.norm() > 0.0) dirs.push_back(v / v.norm());
  }
  rep.min_deviation = std::numeric_limits<double>::infinity();
  for (const Coeffs& dir : dirs) {
    double dev = 0.0;
    for (double s : {delta, -delta}) {
      const auto r = detail::residual(phi, omega.values, sol.coeffs + s * dir);
      const double dist = detail::lp_objective(r, g.weights(), 1.0);
      dev = std::max(dev, std::abs(dist - sol.lambda) / sol.lambda);
    }
    rep.per_direction.push_back(dev);
    rep.max_deviation = std::max(rep.max_deviation, dev);
    rep.min_deviation = std::min(rep.min_deviation, dev);
  }
  rep.flat = rep.min_deviation <= rep.threshold;
  return rep;
}

inline ApproxSolution solve_best(const Field& omega, const BasisSpec& spec, const SolverOptions& opts,
                                 const DiskGrid& g) {
  opts.validate();
  detail::check_aligned(omega.size(), g.size());
  ApproxSolution sol;
  if (opts.p == 2.0) {
    sol = detail::solve_l2(omega, spec, g);
  } else if (opts.p == 1.0) {
    sol = detail::solve_l1(omega, spec, opts, g);
    if (opts.flatness_probes > 0)
      sol.flat = flatness_probe(omega, sol, spec, g, opts.flatness_probes, opts.flatness_step, opts.seed).flat;
  } else {
    sol = detail::solve_lp_newton(omega, spec, opts, g);
  }
  return sol;
}

/// n = rho * omega + (1 - rho) * f*; keeps sgn(n - f*) = sgn(omega - f*).
inline Field residual_reweight(const Field& omega, const Field& f_star, const Field& rho) {
  if (omega.size() != f_star.size() || omega.size() != rho.size())
    throw std::invalid_argument("residual_reweight: field sizes differ");
  Field out;
  out.source = "reweighted(" + omega.source + ")";
  out.values.resize(omega.size());
  for (std::size_t i = 0; i < omega.size(); ++i) {
    const cplx r = rho.values[i];
    if (!(r.real() > 0.0) || r.imag() != 0.0)
      throw std::invalid_argument("residual_reweight: weight must be real and strictly positive");
    out.values[i] = r.real() * omega.values[i] + (1.0 - r.real()) * f_star.values[i];
  }
  return out;
}

/// D_t f = || f(e^{it} z) + f(e^{-it} z) - 2 f(z) ||_p on the grid, evaluated
/// exactly from the coefficients.
inline double modulus_Dt(const Coeffs& c, const BasisSpec& spec, double t, double p, const DiskGrid& g) {
  if (!(t > 0.0 && t <= kPi)) throw std::invalid_argument("modulus_Dt: t must lie in (0, pi]");
  const cplx a = std::polar(1.0, t);
  std::vector<cplx> plus(g.size()), minus(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    plus[i] = a * g.nodes()[i];
    minus[i] = std::conj(a) * g.nodes()[i];
  }
  const Field f0 = eval_combo(c, spec, g.nodes());
  const Field fp = eval_combo(c, spec, plus);
  const Field fm = eval_combo(c, spec, minus);
  std::vector<cplx> d(g.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = fp.values[i] + fm.values[i] - 2.0 * f0.values[i];
  return std::pow(detail::lp_objective(d, g.weights(), p), 1.0 / p);
}

/// Same modulus for sampled values on a product grid. Each ring is rotated by
/// trigonometric interpolation, which is exact when t is a multiple of the
/// angular step and spectrally accurate otherwise.
inline double modulus_Dt(const Field& f, double t, double p, const DiskGrid& g) {
  if (!g.is_product()) throw std::invalid_argument("modulus_Dt: sampled fields need a product grid");
  detail::check_aligned(f.size(), g.size());
  const int n = g.n_theta();
  std::vector<cplx> d(g.size());
  std::vector<cplx> ring(n), coef(n);
  for (std::size_t ir = 0; ir < g.radii().size(); ++ir) {
    for (int j = 0; j < n; ++j) ring[j] = f.values[g.index(ir, j)];
    for (int k = 0; k < n; ++k) {
      cplx acc = 0.0;
      for (int j = 0; j < n; ++j) acc += ring[j] * std::polar(1.0, -2.0 * kPi * k * j / n);
      coef[k] = acc / static_cast<double>(n);
    }
    for (int j = 0; j < n; ++j) {
      const double theta = 2.0 * kPi * j / n;
      cplx vp = 0.0, vm = 0.0;
      for (int k = 0; k < n; ++k) {
        // Symmetric frequency assignment; the Nyquist mode is split in half.
        int freq = k <= n / 2 ? k : k - n;
        if (n % 2 == 0 && k == n / 2) {
          vp += coef[k] * std::cos(static_cast<double>(freq) * (theta + t));
          vm += coef[k] * std::cos(static_cast<double>(freq) * (theta - t));
          continue;
        }
        vp += coef[k] * std::polar(1.0, freq * (theta + t));
        vm += coef[k] * std::polar(1.0, freq * (theta - t));
      }
      d[g.index(ir, j)] = vp + vm - 2.0 * ring[j];
    }
  }
  return std::pow(detail::lp_objective(d, g.weights(), p), 1.0 / p);
}

/// Least-squares slope of log D_t against log t.
inline double loglog_slope(std::span<const double> ts, std::span<const double> values) {
  if (ts.size() != values.size() || ts.size() < 2) throw std::invalid_argument("loglog_slope: need >= 2 pairs");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double x = std::log(ts[i]);
    const double y = std::log(values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

struct SweepRow {
  int degree = 0;
  double boundary_norm = 0.0;
  double lambda = 0.0;
  bool converged = false;
};

/// Solve for each analytic degree m and report the H^p boundary norm of f*_m.
inline std::vector<SweepRow> boundary_norm_sweep(const Field& omega, const SolverOptions& opts,
                                                 std::span<const int> degrees, const DiskGrid& g,
                                                 int n_theta_boundary = 1024) {
  std::vector<SweepRow> rows;
  for (int m : degrees) {
    const BasisSpec spec(BasisKind::analytic, m);
    const ApproxSolution sol = solve_best(omega, spec, opts, g);
    rows.push_back({m, boundary_norm(sol.coeffs, spec, opts.p, n_theta_boundary), sol.lambda, sol.converged});
  }
  return rows;
}

}  // namespace lpapprox
