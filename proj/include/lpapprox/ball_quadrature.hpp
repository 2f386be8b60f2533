#pragma once

// Deterministic product quadrature on the unit ball of R^2 or R^3, graded
// toward a focus point so that integrands with an integrable singularity
// there (potential kernels, multipole families) converge.

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "lpapprox/grid.hpp"
#include "lpapprox/quadrature.hpp"

namespace lpapprox {

struct BallRuleOptions {
  int n_gl = 8;             ///< Gauss-Legendre nodes per panel
  double min_width = 1e-6;  ///< grading stops below this panel width
  int n_phi = 32;           ///< azimuthal trapezoid points (3D)
  int base_panels = 4;      ///< uniform panels before grading
};

/// Nodes x_i with Lebesgue weights w_i on the unit ball. The polar axis
/// points at the focus; radii are graded toward |focus| (and split at the
/// supplied breaks), polar angles toward the axis.
class BallRule {
 public:
  BallRule(const BallSpec& spec, const Point& focus, std::vector<double> radial_breaks = {},
           const BallRuleOptions& opts = {})
      : spec_(spec) {
    if (spec.dim != 2 && spec.dim != 3) throw std::invalid_argument("BallRule: dimension must be 2 or 3");
    if (focus.size() != spec.dim) throw std::invalid_argument("BallRule: focus dimension mismatch");
    const int n = spec.dim;
    const double fr = focus.norm();
    Point e1 = Point::Zero(n);
    e1[0] = 1.0;
    const Point axis = fr > 0.0 ? Point(focus / fr) : e1;
    const bool near = fr > 0.0 && fr < 1.0 + 0.25;

    std::vector<double> rb;
    for (int k = 0; k <= opts.base_panels; ++k) rb.push_back(static_cast<double>(k) / opts.base_panels);
    radial_breaks.push_back(spec.rho());
    if (near) {
      const auto g = graded_breaks(0.0, 1.0, std::min(fr, 1.0), opts.min_width);
      radial_breaks.insert(radial_breaks.end(), g.begin(), g.end());
    }
    rb = merge_breaks(rb, radial_breaks);
    const Rule1D radial = composite_gauss_legendre(opts.n_gl, rb);

    std::vector<double> ab;
    if (n == 2) {
      ab = {-kPi, -kPi / 2, 0.0, kPi / 2, kPi};
      if (near) {
        auto g = graded_breaks(-kPi, kPi, 0.0, opts.min_width);
        ab = merge_breaks(ab, g);
      }
    } else {
      ab = {0.0, kPi / 4, kPi / 2, 3 * kPi / 4, kPi};
      if (near) ab = merge_breaks(ab, graded_breaks(0.0, kPi, 0.0, opts.min_width));
    }
    const Rule1D ang = composite_gauss_legendre(opts.n_gl, ab);

    if (n == 2) {
      const Point perp = (Point(2) << -axis[1], axis[0]).finished();
      for (std::size_t i = 0; i < radial.size(); ++i)
        for (std::size_t j = 0; j < ang.size(); ++j) {
          const double r = radial.nodes[i], t = ang.nodes[j];
          nodes_.push_back(r * (std::cos(t) * axis + std::sin(t) * perp));
          weights_.push_back(radial.weights[i] * ang.weights[j] * r);
        }
    } else {
      // Orthonormal frame (axis, u, v).
      Point u = std::abs(axis[0]) < 0.9 ? Point(e1) : (Point(3) << 0.0, 1.0, 0.0).finished();
      u = (u - u.dot(axis) * axis).normalized();
      Eigen::Vector3d a3 = axis, u3 = u;
      const Point v = a3.cross(u3);
      for (std::size_t i = 0; i < radial.size(); ++i)
        for (std::size_t j = 0; j < ang.size(); ++j) {
          const double r = radial.nodes[i], t = ang.nodes[j];
          const double w = radial.weights[i] * ang.weights[j] * r * r * std::sin(t) * 2.0 * kPi / opts.n_phi;
          for (int k = 0; k < opts.n_phi; ++k) {
            const double ph = 2.0 * kPi * (k + 0.5) / opts.n_phi;
            nodes_.push_back(r * (std::cos(t) * axis + std::sin(t) * (std::cos(ph) * u + std::sin(ph) * v)));
            weights_.push_back(w);
          }
        }
    }
  }

  const BallSpec& spec() const { return spec_; }
  std::span<const Point> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }
  std::size_t size() const { return nodes_.size(); }

  double integrate(const std::function<double(const Point&)>& fn) const {
    double acc = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const double y = weights_[i] * fn(nodes_[i]) - comp;
      const double t = acc + y;
      comp = (t - acc) - y;
      acc = t;
    }
    return acc;
  }

 private:
  BallSpec spec_;
  std::vector<Point> nodes_;
  std::vector<double> weights_;
};

}  // namespace lpapprox
