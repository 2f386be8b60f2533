#pragma once

// One-dimensional Gauss-Legendre rules: plain, composite over breakpoints,
// and geometrically graded toward a point where the integrand is singular
// or has a jump.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace lpapprox {

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }

  void append(const Rule1D& other) {
    nodes.insert(nodes.end(), other.nodes.begin(), other.nodes.end());
    weights.insert(weights.end(), other.weights.begin(), other.weights.end());
  }
};

/// Gauss-Legendre nodes and weights on [-1, 1], ascending.
inline Rule1D gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  if (n == 1) return Rule1D{{0.0}, {2.0}};
  Rule1D rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on the three-term recurrence.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[n - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

/// Gauss-Legendre rule mapped to [a, b].
inline Rule1D gauss_legendre(int n, double a, double b) {
  Rule1D ref = gauss_legendre(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  for (std::size_t i = 0; i < ref.size(); ++i) {
    ref.nodes[i] = mid + half * ref.nodes[i];
    ref.weights[i] *= half;
  }
  return ref;
}

/// n points per panel; `breaks` must be strictly increasing and include
/// both end points of the interval.
inline Rule1D composite_gauss_legendre(int n_per_panel, std::span<const double> breaks) {
  if (breaks.size() < 2) throw std::invalid_argument("composite rule needs at least two breaks");
  Rule1D rule;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    if (!(breaks[k + 1] > breaks[k])) throw std::invalid_argument("breaks must be strictly increasing");
    rule.append(gauss_legendre(n_per_panel, breaks[k], breaks[k + 1]));
  }
  return rule;
}

/// Breakpoints on [a, b] refined geometrically toward `focus` (which may lie
/// at an end point or inside the interval). Panels adjacent to the focus
/// shrink by `ratio` per level until they are shorter than `min_width`.
inline std::vector<double> graded_breaks(double a, double b, double focus, double min_width,
                                         double ratio = 0.25) {
  std::vector<double> out{a, b};
  auto grade_side = [&](double from, double to) {
    // from = focus, to = far end
    const double len = std::abs(to - from);
    if (len <= 0.0) return;
    const double dir = to > from ? 1.0 : -1.0;
    double width = len;
    while (width * ratio > min_width) {
      width *= ratio;
      out.push_back(from + dir * width);
    }
  };
  focus = std::clamp(focus, a, b);
  if (focus > a && focus < b) out.push_back(focus);
  if (focus < b) grade_side(focus, b);
  if (focus > a) grade_side(focus, a);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [](double x, double y) { return std::abs(x - y) < 1e-15; }),
            out.end());
  return out;
}

/// Merge extra break points (e.g. known jump radii) into a sorted break list,
/// ignoring those outside (lo, hi).
inline std::vector<double> merge_breaks(std::vector<double> breaks, std::span<const double> extra) {
  const double lo = breaks.front();
  const double hi = breaks.back();
  for (double e : extra)
    if (e > lo && e < hi) breaks.push_back(e);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(),
                           [](double x, double y) { return std::abs(x - y) < 1e-14; }),
               breaks.end());
  return breaks;
}

}  // namespace lpapprox
