#pragma once

// Duality certificates for best L^p approximation on the disk. A pair
// (f*, g*) is optimal when g* annihilates the approximating space, has unit
// dual norm, and aligns with the residual omega - f*. Annihilation is tested
// through moments against z^k (and conj(z)^k for harmonic problems).

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpapprox/basis.hpp"
#include "lpapprox/grid.hpp"
#include "lpapprox/verdict.hpp"

namespace lpapprox {

enum class ProblemKind { analytic, harmonic };

struct DualCertificate {
  Field g;
  double alpha = 0.0;                   ///< phase; 0 by construction
  std::vector<double> moment_residuals;  ///< filled by check_annihilation
  double alignment_deviation = 0.0;
  double sup_norm = 0.0;
};

/// g* = lambda^(1-p) |r|^p / r for p > 1 and conj(sgn r) for p = 1, where
/// r = omega - f*. Nodes with vanishing residual get g* = 0.
inline DualCertificate construct_dual(const Field& omega, const Field& f_star, double p, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("construct_dual: lambda must be positive");
  if (p < 1.0) throw std::invalid_argument("construct_dual: p must be >= 1");
  if (omega.size() != f_star.size()) throw std::invalid_argument("construct_dual: field sizes differ");
  DualCertificate cert;
  cert.g.source = "dual";
  cert.g.values.resize(omega.size());
  for (std::size_t i = 0; i < omega.size(); ++i) {
    const cplx r = omega.values[i] - f_star.values[i];
    const double a = std::abs(r);
    cplx gi = 0.0;
    if (a > 0.0) gi = p == 1.0 ? std::conj(r) / a : std::pow(lambda, 1.0 - p) * std::pow(a, p) / r;
    cert.g.values[i] = gi;
    cert.sup_norm = std::max(cert.sup_norm, std::abs(gi));
    cert.alignment_deviation = std::max(cert.alignment_deviation, std::abs(gi * r - a));
  }
  return cert;
}

/// residual_k = |int g phi_k dA| for phi_k = z^k, k = 0..K, followed by
/// conj(z)^k, k = 1..K for the harmonic problem.
inline std::vector<double> check_annihilation(const Field& g, ProblemKind problem, int K, const DiskGrid& grid) {
  detail::check_aligned(g.size(), grid.size());
  if (K < 0) throw std::invalid_argument("check_annihilation: K must be >= 0");
  const std::size_t count = problem == ProblemKind::harmonic ? 2 * static_cast<std::size_t>(K) + 1
                                                             : static_cast<std::size_t>(K) + 1;
  std::vector<cplx> acc(count, 0.0);
  const auto nodes = grid.nodes();
  const auto w = grid.weights();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const cplx gw = w[i] * g.values[i];
    const cplx z = nodes[i];
    cplx zp = 1.0, zbp = 1.0;
    acc[0] += gw;
    for (int k = 1; k <= K; ++k) {
      zp *= z;
      acc[k] += gw * zp;
      if (problem == ProblemKind::harmonic) {
        zbp *= std::conj(z);
        acc[K + k] += gw * zbp;
      }
    }
  }
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) out[k] = std::abs(acc[k]);
  return out;
}

/// min over a phase grid of sup_i | e^{i alpha} g_i (omega_i - f*_i) - |omega_i - f*_i| |.
inline double check_alignment(const Field& g, const Field& omega, const Field& f_star, int n_phases = 720) {
  if (g.size() != omega.size() || g.size() != f_star.size())
    throw std::invalid_argument("check_alignment: field sizes differ");
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < n_phases; ++k) {
    const cplx rot = std::polar(1.0, 2.0 * kPi * k / n_phases);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const cplx r = omega.values[i] - f_star.values[i];
      worst = std::max(worst, std::abs(rot * g.values[i] * r - std::abs(r)));
    }
    best = std::min(best, worst);
  }
  return best;
}

struct BadApproxOptions {
  double tolerance = 1e-3;  ///< certificate tolerance on moment residuals
  int n_r = 128;
  int n_theta = 256;
  std::vector<double> radial_breaks;
};

struct BadApproxResult {
  Verdict verdict;
  std::vector<double> residuals_coarse;
  std::vector<double> residuals_fine;
  std::size_t zero_nodes = 0;  ///< nodes where omega vanished (g set to 0 there)
};

namespace detail {
inline Field bad_approx_dual(const DiskGrid& g, const std::function<cplx(cplx)>& omega, double p,
                             std::size_t& zeros) {
  Field out;
  out.values.resize(g.size());
  double sup = 0.0;
  zeros = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const cplx w = omega(g.nodes()[i]);
    const double a = std::abs(w);
    if (a == 0.0) {
      ++zeros;
      out.values[i] = 0.0;
      continue;
    }
    out.values[i] = std::pow(a, p) / w;
    sup = std::max(sup, std::abs(out.values[i]));
  }
  if (sup > 0.0)
    for (cplx& v : out.values) v /= sup;
  return out;
}
}  // namespace detail

/// Tests whether 0 is the best approximant of omega in A^p (analytic problem):
/// g = |omega|^p / omega, scaled to sup <= 1, must annihilate z^0..z^K. The
/// check runs on the base grid and on its 2x refinement.
inline BadApproxResult badly_approximable_test(const std::function<cplx(cplx)>& omega, double p, int K,
                                               const BadApproxOptions& opts = {},
                                               ProblemKind problem = ProblemKind::analytic) {
  if (p < 1.0) throw std::invalid_argument("badly_approximable_test: p must be >= 1");
  const DiskGrid coarse = DiskGrid::product(opts.n_r, opts.n_theta, opts.radial_breaks);
  const DiskGrid fine = coarse.refined();
  BadApproxResult res;
  std::size_t zc = 0, zf = 0;
  const Field gc = detail::bad_approx_dual(coarse, omega, p, zc);
  const Field gf = detail::bad_approx_dual(fine, omega, p, zf);
  if (zc == coarse.size()) throw std::invalid_argument("badly_approximable_test: omega vanishes identically");
  res.zero_nodes = zf;
  res.residuals_coarse = check_annihilation(gc, problem, K, coarse);
  res.residuals_fine = check_annihilation(gf, problem, K, fine);

  const double tol = opts.tolerance;
  Verdict& v = res.verdict;
  v.tolerance = tol;
  const auto worst_c = std::max_element(res.residuals_coarse.begin(), res.residuals_coarse.end());
  const auto worst_f = std::max_element(res.residuals_fine.begin(), res.residuals_fine.end());
  const int kc = static_cast<int>(worst_c - res.residuals_coarse.begin());
  const int kf = static_cast<int>(worst_f - res.residuals_fine.begin());
  if (*worst_c < tol && *worst_f < tol) {
    v.status = VerdictStatus::certified;
    v.witness_index = kf;
    v.witness_value = *worst_f;
    v.witness = "all moments k <= " + std::to_string(K) + " below tolerance at two resolutions";
  } else {
    // Refuted when the same moment stays above 10x tolerance on both grids.
    int stable = -1;
    double value = 0.0;
    for (std::size_t k = 0; k < res.residuals_fine.size(); ++k)
      if (res.residuals_coarse[k] > 10.0 * tol && res.residuals_fine[k] > 10.0 * tol &&
          res.residuals_fine[k] > value) {
        stable = static_cast<int>(k);
        value = res.residuals_fine[k];
      }
    if (stable >= 0) {
      v.status = VerdictStatus::refuted;
      v.witness_index = stable;
      v.witness_value = value;
      v.witness = "moment " + std::to_string(stable) + " stays above 10x tolerance under refinement";
    } else {
      v.status = VerdictStatus::inconclusive;
      v.witness_index = std::max(kc, kf);
      v.witness_value = std::max(*worst_c, *worst_f);
      v.witness = "moment residuals between tolerance and 10x tolerance";
    }
  }
  if (res.zero_nodes > 0)
    v.notes.push_back("omega vanishes at " + std::to_string(res.zero_nodes) + " nodes; g set to 0 there");
  v.notes.push_back("moments checked for k <= " + std::to_string(K));
  return res;
}

/// v(z) = z (z-a)^2 / (1 - a z) - (z-a)^2 / (conj(z) - a). It vanishes on
/// the unit circle and satisfies dv/dconj(z) = ((z-a)/(conj(z)-a))^2 in the disk.
inline cplx prop53_witness(double a, cplx z) {
  if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("prop53_witness: a must lie in (0, 1)");
  const cplx den = std::conj(z) - a;
  if (std::abs(den) == 0.0) throw std::domain_error("prop53_witness: conj(z) = a is a pole");
  const cplx za = z - a;
  return z * za * za / (1.0 - a * z) - za * za / den;
}

/// Wirtinger derivative d/dconj(z) = (d/dx + i d/dy) / 2 by central differences.
inline cplx dbar_central(const std::function<cplx(cplx)>& f, cplx z, double h) {
  const cplx dx = (f(z + h) - f(z - h)) / (2.0 * h);
  const cplx dy = (f(z + cplx(0, h)) - f(z - cplx(0, h))) / (2.0 * h);
  return 0.5 * (dx + cplx(0, 1) * dy);
}

/// Full optimality check of a candidate f* against omega: builds g*, then
/// tests annihilation (moments k <= K) and sign alignment.
struct OptimalityReport {
  DualCertificate dual;
  Verdict verdict;
};

inline OptimalityReport certify_optimality(const Field& omega, const Field& f_star, double p, ProblemKind problem,
                                           int K, const DiskGrid& grid, double tolerance = 1e-3) {
  double lambda_p = 0.0;
  for (std::size_t i = 0; i < omega.size(); ++i)
    lambda_p += grid.weights()[i] * std::pow(std::abs(omega.values[i] - f_star.values[i]), p);
  const double lambda = std::pow(lambda_p, 1.0 / p);
  OptimalityReport rep;
  Verdict& v = rep.verdict;
  v.tolerance = tolerance;
  if (!(lambda > 0.0)) {
    v.status = VerdictStatus::certified;
    v.witness = "omega coincides with f* on the grid";
    return rep;
  }
  rep.dual = construct_dual(omega, f_star, p, lambda);
  // For p > 1 the dual norm is measured in L^q; rescale so ||g||_q = 1.
  if (p > 1.0) {
    const double q = p / (p - 1.0);
    double nq = 0.0;
    for (std::size_t i = 0; i < omega.size(); ++i)
      nq += grid.weights()[i] * std::pow(std::abs(rep.dual.g.values[i]), q);
    v.notes.push_back("||g*||_q = " + std::to_string(std::pow(nq, 1.0 / q)));
  }
  rep.dual.moment_residuals = check_annihilation(rep.dual.g, problem, K, grid);
  const auto worst = std::max_element(rep.dual.moment_residuals.begin(), rep.dual.moment_residuals.end());
  const int k = static_cast<int>(worst - rep.dual.moment_residuals.begin());
  v.witness_index = k;
  v.witness_value = *worst;
  // Moments are scaled by lambda^(p-1) relative to the unit-norm dual.
  if (*worst < tolerance) {
    v.status = VerdictStatus::certified;
    v.witness = "annihilation residuals below tolerance for all checked moments";
  } else if (*worst > 10.0 * tolerance) {
    v.status = VerdictStatus::refuted;
    v.witness = "moment " + std::to_string(k) + " of g* exceeds 10x tolerance";
  } else {
    v.status = VerdictStatus::inconclusive;
    v.witness = "moment residual between tolerance and 10x tolerance";
  }
  return rep;
}

}  // namespace lpapprox
