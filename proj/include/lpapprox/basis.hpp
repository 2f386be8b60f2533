#pragma once

// Approximating subspaces on the disk: analytic polynomials of degree <= m,
// harmonic polynomials {1, z^k, conj(z)^k : k <= m}, and constants.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpapprox/grid.hpp"

namespace lpapprox {

enum class BasisKind { analytic, harmonic2d, constants };

inline std::string to_string(BasisKind k) {
  switch (k) {
    case BasisKind::analytic: return "analytic";
    case BasisKind::harmonic2d: return "harmonic2d";
    case BasisKind::constants: return "constants";
  }
  return "?";
}

struct BasisSpec {
  BasisKind kind = BasisKind::analytic;
  int degree = 0;

  BasisSpec() = default;
  BasisSpec(BasisKind k, int m) : kind(k), degree(k == BasisKind::constants ? 0 : m) {
    if (m < 0) throw std::invalid_argument("BasisSpec: degree must be >= 0");
  }

  std::size_t dimension() const {
    switch (kind) {
      case BasisKind::analytic: return static_cast<std::size_t>(degree) + 1;
      case BasisKind::harmonic2d: return 2 * static_cast<std::size_t>(degree) + 1;
      case BasisKind::constants: return 1;
    }
    return 0;
  }

  /// Element k: analytic z^k; harmonic2d orders 1, z, .., z^m, conj(z), .., conj(z)^m.
  cplx element(std::size_t k, cplx z) const {
    const auto m = static_cast<std::size_t>(degree);
    if (kind == BasisKind::harmonic2d && k > m) return std::pow(std::conj(z), static_cast<int>(k - m));
    return k == 0 ? cplx(1.0) : std::pow(z, static_cast<int>(k));
  }

  /// Signed power of element k: +j for z^j, -j for conj(z)^j.
  int power(std::size_t k) const {
    const auto m = static_cast<std::size_t>(degree);
    if (kind == BasisKind::harmonic2d && k > m) return -static_cast<int>(k - m);
    return static_cast<int>(k);
  }
};

using Coeffs = Eigen::VectorXcd;

/// Dense N x dim matrix of basis values at the points.
inline Eigen::MatrixXcd basis_matrix(const BasisSpec& spec, std::span<const cplx> points) {
  const auto n = static_cast<Eigen::Index>(points.size());
  const auto d = static_cast<Eigen::Index>(spec.dimension());
  Eigen::MatrixXcd phi(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    const cplx z = points[static_cast<std::size_t>(i)];
    const cplx zb = std::conj(z);
    cplx zp = 1.0, zbp = 1.0;
    phi(i, 0) = 1.0;
    for (int k = 1; k <= spec.degree; ++k) {
      zp *= z;
      zbp *= zb;
      phi(i, k) = zp;
      if (spec.kind == BasisKind::harmonic2d) phi(i, spec.degree + k) = zbp;
    }
  }
  return phi;
}

inline Field eval_combo(const Coeffs& c, const BasisSpec& spec, std::span<const cplx> points) {
  if (static_cast<std::size_t>(c.size()) != spec.dimension())
    throw std::invalid_argument("eval_combo: coefficient count does not match basis dimension");
  const Eigen::VectorXcd v = basis_matrix(spec, points) * c;
  Field f;
  f.values.assign(v.data(), v.data() + v.size());
  f.source = "combo:" + to_string(spec.kind);
  return f;
}

inline cplx eval_combo(const Coeffs& c, const BasisSpec& spec, cplx z) {
  cplx acc = 0.0;
  for (std::size_t k = 0; k < spec.dimension(); ++k) acc += c[static_cast<Eigen::Index>(k)] * spec.element(k, z);
  return acc;
}

namespace detail {
/// On a product grid every pair of distinct basis elements is orthogonal
/// when the angular frequencies |j - k| (analytic) or j + k (mixed) stay
/// below n_theta, since the trapezoid rule is exact for those modes.
inline bool gram_is_diagonal(const BasisSpec& spec, const DiskGrid& g) {
  if (!g.is_product()) return false;
  const int max_freq = spec.kind == BasisKind::harmonic2d ? 2 * spec.degree : spec.degree;
  return max_freq < g.n_theta();
}

inline Eigen::VectorXcd weighted_normal_solve(const Eigen::MatrixXcd& phi, std::span<const double> w,
                                              std::span<const cplx> rhs_values, bool diagonal) {
  const auto n = phi.rows();
  const auto d = phi.cols();
  Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(d, d);
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(d);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double wi = w[static_cast<std::size_t>(i)];
    const auto row = phi.row(i);
    rhs += wi * row.adjoint() * rhs_values[static_cast<std::size_t>(i)];
    if (diagonal) {
      for (Eigen::Index k = 0; k < d; ++k) gram(k, k) += wi * std::norm(row(k));
    } else {
      gram.noalias() += wi * row.adjoint() * row;
    }
  }
  if (diagonal) {
    Eigen::VectorXcd c(d);
    for (Eigen::Index k = 0; k < d; ++k) {
      if (!(std::abs(gram(k, k)) > 1e-300)) throw std::runtime_error("project_l2: singular Gram matrix");
      c[k] = rhs[k] / gram(k, k);
    }
    return c;
  }
  Eigen::LDLT<Eigen::MatrixXcd> ldlt(gram);
  const Eigen::VectorXd dvals = ldlt.vectorD().real();
  const double dmax = dvals.cwiseAbs().maxCoeff();
  if (ldlt.info() != Eigen::Success || dvals.minCoeff() <= 1e-13 * dmax)
    throw std::runtime_error("project_l2: singular Gram matrix (grid too coarse for the basis degree)");
  return ldlt.solve(rhs);
}
}  // namespace detail

/// Discrete L2 projection of omega onto span(spec) with the grid's weights.
inline Coeffs project_l2(const Field& omega, const BasisSpec& spec, const DiskGrid& g) {
  detail::check_aligned(omega.size(), g.size());
  const Eigen::MatrixXcd phi = basis_matrix(spec, g.nodes());
  return detail::weighted_normal_solve(phi, g.weights(), omega.values, detail::gram_is_diagonal(spec, g));
}

/// (int_T |f|^p dtheta / 2pi)^(1/p) by the trapezoid rule on n_theta points.
inline double boundary_norm(const Coeffs& c, const BasisSpec& spec, double p, int n_theta) {
  if (spec.kind == BasisKind::harmonic2d)
    throw std::invalid_argument("boundary_norm: expects an analytic (or constant) basis");
  if (p < 1.0) throw std::invalid_argument("boundary_norm: p must be >= 1");
  if (n_theta < 1) throw std::invalid_argument("boundary_norm: n_theta must be >= 1");
  double acc = 0.0;
  for (int j = 0; j < n_theta; ++j) {
    const cplx z = std::polar(1.0, 2.0 * kPi * j / n_theta);
    acc += std::pow(std::abs(eval_combo(c, spec, z)), p);
  }
  return std::pow(acc / n_theta, 1.0 / p);
}

}  // namespace lpapprox
