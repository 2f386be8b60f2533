#pragma once

// Quadrature grids on the unit disk (normalized area measure dA = dx dy / pi),
// on [0, 1] against r^(n-1) dr, and Monte-Carlo samplers on the unit ball of
// R^n (unnormalized Lebesgue measure).

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpapprox/quadrature.hpp"

namespace lpapprox {

using cplx = std::complex<double>;
using Point = Eigen::VectorXd;

inline constexpr double kPi = std::numbers::pi;

class DiskGrid {
 public:
  /// Product grid: Gauss-Legendre in r on each radial panel (n_r nodes per
  /// panel, panels delimited by `radial_breaks`), trapezoid in theta.
  /// Weights include the Jacobian 2 r dr * dtheta / (2 pi), so they sum to 1.
  static DiskGrid product(int n_r, int n_theta, std::vector<double> radial_breaks = {}) {
    if (n_r < 1) throw std::invalid_argument("build_disk_grid: n_r must be >= 1");
    if (n_theta < 4) throw std::invalid_argument("build_disk_grid: n_theta must be >= 4");
    std::vector<double> breaks{0.0, 1.0};
    breaks = merge_breaks(breaks, radial_breaks);
    const Rule1D radial = composite_gauss_legendre(n_r, breaks);

    DiskGrid g;
    g.product_ = true;
    g.n_theta_ = n_theta;
    g.radii_ = radial.nodes;
    g.breaks_ = breaks;
    g.nodes_.reserve(radial.size() * n_theta);
    g.weights_.reserve(radial.size() * n_theta);
    const double dtheta = 2.0 * kPi / n_theta;
    for (std::size_t i = 0; i < radial.size(); ++i) {
      const double r = radial.nodes[i];
      const double wr = 2.0 * r * radial.weights[i] / n_theta;
      for (int j = 0; j < n_theta; ++j) {
        g.nodes_.push_back(std::polar(r, j * dtheta));
        g.weights_.push_back(wr);
      }
    }
    return g;
  }

  /// Free points with caller-supplied weights (normalized area measure).
  static DiskGrid scattered(std::vector<cplx> nodes, std::vector<double> weights) {
    if (nodes.size() != weights.size()) throw std::invalid_argument("scattered grid: size mismatch");
    if (nodes.empty()) throw std::invalid_argument("scattered grid: no nodes");
    DiskGrid g;
    g.nodes_ = std::move(nodes);
    g.weights_ = std::move(weights);
    return g;
  }

  /// Same structure with n_r and n_theta doubled.
  DiskGrid refined() const {
    if (!product_) throw std::logic_error("refined(): only defined for product grids");
    const int panels = static_cast<int>(breaks_.size()) - 1;
    const int n_r = static_cast<int>(radii_.size()) / panels;
    return product(2 * n_r, 2 * n_theta_, std::vector<double>(breaks_.begin() + 1, breaks_.end() - 1));
  }

  std::span<const cplx> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }
  std::size_t size() const { return nodes_.size(); }
  bool is_product() const { return product_; }
  int n_theta() const { return n_theta_; }
  std::span<const double> radii() const { return radii_; }
  std::span<const double> radial_breaks() const { return breaks_; }
  std::size_t index(std::size_t i_r, int j_theta) const {
    return i_r * static_cast<std::size_t>(n_theta_) + static_cast<std::size_t>(j_theta);
  }

 private:
  DiskGrid() = default;

  std::vector<cplx> nodes_;
  std::vector<double> weights_;
  std::vector<double> radii_;
  std::vector<double> breaks_;
  int n_theta_ = 0;
  bool product_ = false;
};

/// Nodes on (0, 1) with weights for the measure r^(dim-1) dr.
struct RadialGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
  int dim = 2;

  std::size_t size() const { return nodes.size(); }
};

/// `n_pts` Gauss-Legendre nodes per panel; panels delimited by `breaks`
/// plus `panels` equal subdivisions of [0, 1].
inline RadialGrid build_radial_grid(int n_pts, int dim, std::vector<double> breaks = {}, int panels = 1) {
  if (dim < 2) throw std::invalid_argument("build_radial_grid: dim must be >= 2");
  if (n_pts < 2) throw std::invalid_argument("build_radial_grid: n_pts must be >= 2");
  if (panels < 1) throw std::invalid_argument("build_radial_grid: panels must be >= 1");
  std::vector<double> b;
  for (int k = 0; k <= panels; ++k) b.push_back(static_cast<double>(k) / panels);
  b = merge_breaks(b, breaks);
  const Rule1D rule = composite_gauss_legendre(n_pts, b);
  RadialGrid g;
  g.dim = dim;
  g.nodes = rule.nodes;
  g.weights.resize(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) g.weights[i] = rule.weights[i] * std::pow(rule.nodes[i], dim - 1);
  return g;
}

/// Unit ball of R^n together with the half-volume ball B0 of radius 2^(-1/n).
struct BallSpec {
  int dim = 2;

  explicit BallSpec(int n) : dim(n) {
    if (n < 2) throw std::invalid_argument("BallSpec: dimension must be >= 2");
  }

  double rho() const { return std::pow(2.0, -1.0 / dim); }
  /// Volume of the unit ball.
  double volume() const { return std::pow(kPi, 0.5 * dim) / std::tgamma(0.5 * dim + 1.0); }
  /// Surface area of the unit sphere.
  double sphere_area() const { return dim * volume(); }
};

/// sigma = -1 on B0, +1 on the rest of the ball, 0 outside.
inline double sigma(double r, const BallSpec& spec) {
  if (r >= 1.0) return 0.0;
  return r < spec.rho() ? -1.0 : 1.0;
}

/// Stratified sampler on the unit ball: radial Gauss-Legendre nodes (split at
/// rho_n) times pseudo-random directions. Weights realize Lebesgue measure.
class BallSampler {
 public:
  BallSampler(BallSpec spec, int n_radial, int n_directions, std::uint64_t seed)
      : spec_(spec), n_dirs_(n_directions), seed_(seed) {
    if (n_directions < 2) throw std::invalid_argument("BallSampler: need at least two directions");
    radial_ = build_radial_grid(n_radial, spec.dim, {spec.rho()});
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    directions_.reserve(n_directions);
    for (int j = 0; j < n_directions; ++j) directions_.push_back(random_unit(rng, normal, spec.dim));
    const double wd = spec.sphere_area() / n_directions;
    points_.reserve(radial_.size() * n_directions);
    weights_.reserve(radial_.size() * n_directions);
    for (std::size_t i = 0; i < radial_.size(); ++i)
      for (int j = 0; j < n_directions; ++j) {
        points_.push_back(radial_.nodes[i] * directions_[j]);
        weights_.push_back(radial_.weights[i] * wd);
      }
  }

  const BallSpec& spec() const { return spec_; }
  std::uint64_t seed() const { return seed_; }
  std::span<const Point> points() const { return points_; }
  std::span<const double> weights() const { return weights_; }
  std::span<const Point> directions() const { return directions_; }
  const RadialGrid& radial() const { return radial_; }
  std::size_t size() const { return points_.size(); }
  int n_directions() const { return n_dirs_; }

  /// `count` points uniformly distributed in the ball (independent stream).
  std::vector<Point> uniform_points(std::size_t count) const {
    std::mt19937_64 rng(seed_ ^ 0x9e3779b97f4a7c15ULL);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<Point> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
      const Point u = random_unit(rng, normal, spec_.dim);
      out.push_back(std::pow(unif(rng), 1.0 / spec_.dim) * u);
    }
    return out;
  }

  /// `count` points uniformly distributed on the sphere of radius `radius`.
  std::vector<Point> sphere_points(std::size_t count, double radius) const {
    std::mt19937_64 rng(seed_ ^ 0x243f6a8885a308d3ULL);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<Point> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) out.push_back(radius * random_unit(rng, normal, spec_.dim));
    return out;
  }

 private:
  static Point random_unit(std::mt19937_64& rng, std::normal_distribution<double>& normal, int dim) {
    Point v(dim);
    double n2 = 0.0;
    do {
      for (int k = 0; k < dim; ++k) v[k] = normal(rng);
      n2 = v.squaredNorm();
    } while (n2 < 1e-300);
    return v / std::sqrt(n2);
  }

  BallSpec spec_;
  int n_dirs_;
  std::uint64_t seed_;
  RadialGrid radial_;
  std::vector<Point> directions_;
  std::vector<Point> points_;
  std::vector<double> weights_;
};

/// Complex samples of a function on the nodes of some grid.
struct Field {
  std::vector<cplx> values;
  std::string source;  ///< catalog name or "samples:<path>"

  std::size_t size() const { return values.size(); }

  static Field sample(const DiskGrid& grid, const std::function<cplx(cplx)>& fn, std::string source = {}) {
    Field f;
    f.source = std::move(source);
    f.values.reserve(grid.size());
    for (cplx z : grid.nodes()) f.values.push_back(fn(z));
    f.check_finite();
    return f;
  }

  static Field sample(const RadialGrid& grid, const std::function<cplx(double)>& fn, std::string source = {}) {
    Field f;
    f.source = std::move(source);
    f.values.reserve(grid.size());
    for (double r : grid.nodes) f.values.push_back(fn(r));
    f.check_finite();
    return f;
  }

  static Field sample(const BallSampler& sampler, const std::function<cplx(const Point&)>& fn,
                      std::string source = {}) {
    Field f;
    f.source = std::move(source);
    f.values.reserve(sampler.size());
    for (const Point& x : sampler.points()) f.values.push_back(fn(x));
    f.check_finite();
    return f;
  }

  void check_finite() const {
    for (cplx v : values)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw std::domain_error("Field: non-finite sample value");
  }
};

namespace detail {
inline void check_aligned(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("integrate: field length does not match grid node count");
}

inline cplx weighted_sum(std::span<const cplx> v, std::span<const double> w) {
  check_aligned(v.size(), w.size());
  // Compensated summation keeps symmetric cancellations at rounding level.
  cplx sum = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const cplx y = w[i] * v[i] - comp;
    const cplx t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}
}  // namespace detail

inline cplx integrate(const Field& f, const DiskGrid& g) { return detail::weighted_sum(f.values, g.weights()); }
inline cplx integrate(const Field& f, const RadialGrid& g) { return detail::weighted_sum(f.values, g.weights); }
inline cplx integrate(const Field& f, const BallSampler& s) { return detail::weighted_sum(f.values, s.weights()); }

inline cplx integrate(const DiskGrid& g, const std::function<cplx(cplx)>& fn) {
  return integrate(Field::sample(g, fn), g);
}

/// Monte-Carlo integral over a BallSampler together with its standard error,
/// estimated from the spread of the per-direction radial integrals.
struct MonteCarloEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

inline MonteCarloEstimate integrate_mc(const BallSampler& s, const std::function<double(const Point&)>& fn) {
  const auto& rad = s.radial();
  const int nd = s.n_directions();
  const double area = s.spec().sphere_area();
  std::vector<double> per_dir(nd, 0.0);
  for (int j = 0; j < nd; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < rad.size(); ++i) acc += rad.weights[i] * fn(rad.nodes[i] * s.directions()[j]);
    per_dir[j] = area * acc;
  }
  double mean = 0.0;
  for (double v : per_dir) mean += v;
  mean /= nd;
  double var = 0.0;
  for (double v : per_dir) var += (v - mean) * (v - mean);
  var /= (nd - 1);
  return {mean, std::sqrt(var / nd)};
}

/// Integral on `g` plus an error estimate from the same rule at half
/// resolution (product grids only; zero otherwise).
struct IntegralEstimate {
  cplx value;
  double error;
};

inline IntegralEstimate integrate_with_error(const DiskGrid& g, const std::function<cplx(cplx)>& fn) {
  const cplx fine = integrate(g, fn);
  if (!g.is_product()) return {fine, 0.0};
  const int panels = static_cast<int>(g.radial_breaks().size()) - 1;
  const int n_r = static_cast<int>(g.radii().size()) / panels;
  if (n_r < 2 || g.n_theta() < 8) return {fine, 0.0};
  const auto inner = std::vector<double>(g.radial_breaks().begin() + 1, g.radial_breaks().end() - 1);
  const DiskGrid coarse = DiskGrid::product(n_r / 2, g.n_theta() / 2, inner);
  return {fine, std::abs(fine - integrate(coarse, fn))};
}

}  // namespace lpapprox
