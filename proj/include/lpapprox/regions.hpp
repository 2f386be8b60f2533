#pragma once

// Catalog of regions inside the unit ball: disks, balls, shells, ellipses,
// half-disks, a cubic cusp touching the boundary at 1, and the empty set.

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lpapprox/grid.hpp"

namespace lpapprox {

enum class RegionKind { empty, ball, shell, disk, ellipse, half_disk, cusp3 };

struct Region {
  RegionKind kind = RegionKind::empty;
  int dim = 2;
  double r1 = 0.0;      ///< ball/disk radius, shell inner radius, ellipse semi-axis a
  double r2 = 0.0;      ///< shell outer radius, ellipse semi-axis b
  cplx center = 0.0;    ///< disk/ellipse center (2D only)
  double angle = 0.0;   ///< ellipse rotation, half-disk normal direction
  std::string name;

  // ---- constructors
  static Region empty(int dim = 2) { return {RegionKind::empty, dim, 0, 0, 0, 0, "empty"}; }
  static Region ball(double R, int dim) { return {RegionKind::ball, dim, R, 0, 0, 0, "ball:" + num(R)}; }
  static Region half_volume_ball(int dim) {
    Region r = ball(BallSpec(dim).rho(), dim);
    r.name = "b0";
    return r;
  }
  static Region shell(double a, double b, int dim) {
    if (!(0.0 <= a && a < b)) throw std::invalid_argument("Region::shell: need 0 <= inner < outer");
    return {RegionKind::shell, dim, a, b, 0, 0, "shell:" + num(a) + "," + num(b)};
  }
  /// B minus the closed half-volume ball.
  static Region outer_shell(int dim) {
    Region r = shell(BallSpec(dim).rho(), 1.0, dim);
    r.name = "outer";
    return r;
  }
  static Region disk(cplx c, double R) {
    if (!(R > 0.0)) throw std::invalid_argument("Region::disk: radius must be positive");
    return {RegionKind::disk, 2, R, 0, c, 0, "disk:" + num(c.real()) + "," + num(c.imag()) + "," + num(R)};
  }
  static Region ellipse(double a, double b, double angle = 0.0, cplx c = 0.0) {
    if (!(a > 0.0 && b > 0.0)) throw std::invalid_argument("Region::ellipse: semi-axes must be positive");
    return {RegionKind::ellipse, 2, a, b, c, angle,
            "ellipse:" + num(a) + "," + num(b) + "," + num(angle) + "," + num(c.real()) + "," + num(c.imag())};
  }
  /// {|z| < 1, Re(z e^{-i angle}) > 0}.
  static Region half_disk(double angle = 0.0) {
    return {RegionKind::half_disk, 2, 1.0, 0, 0, angle, "half_disk:" + num(angle)};
  }
  /// {1 - s + i t : |t| < s^3, 0 < s < 1/2}.
  static Region cusp3() { return {RegionKind::cusp3, 2, 0, 0, 0, 0, "cusp3"}; }

  /// Parses "empty", "b0", "outer", "ball:R", "shell:a,b", "annulus:a,b",
  /// "disk:cx,cy,R", "ellipse:a,b[,angle,cx,cy]", "half_disk[:angle]", "cusp3".
  static Region parse(const std::string& text, int dim = 2) {
    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    std::vector<double> args;
    if (colon != std::string::npos) {
      std::stringstream ss(text.substr(colon + 1));
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
          v = std::stod(tok, &used);
        } catch (const std::exception&) {
          throw std::invalid_argument("Region::parse: bad number '" + tok + "'");
        }
        if (used != tok.size()) throw std::invalid_argument("Region::parse: bad number '" + tok + "'");
        args.push_back(v);
      }
    }
    auto need = [&](std::size_t lo, std::size_t hi) {
      if (args.size() < lo || args.size() > hi)
        throw std::invalid_argument("Region::parse: wrong argument count for '" + head + "'");
    };
    auto planar = [&] {
      if (dim != 2) throw std::invalid_argument("Region::parse: '" + head + "' is only defined in 2D");
    };
    if (head == "empty") return need(0, 0), empty(dim);
    if (head == "b0" || head == "d0") return need(0, 0), half_volume_ball(dim);
    if (head == "outer") return need(0, 0), outer_shell(dim);
    if (head == "ball") return need(1, 1), ball(args[0], dim);
    if (head == "shell" || head == "annulus") return need(2, 2), shell(args[0], args[1], dim);
    if (head == "disk") return planar(), need(3, 3), disk({args[0], args[1]}, args[2]);
    if (head == "ellipse") {
      planar();
      need(2, 5);
      args.resize(5, 0.0);
      return ellipse(args[0], args[1], args[2], {args[3], args[4]});
    }
    if (head == "half_disk") return planar(), need(0, 1), half_disk(args.empty() ? 0.0 : args[0]);
    if (head == "cusp3") return planar(), need(0, 0), cusp3();
    throw std::invalid_argument("Region::parse: unknown region '" + head + "'");
  }

  bool contains(const Point& x) const {
    if (x.size() != dim) throw std::invalid_argument("Region::contains: dimension mismatch");
    const double r = x.norm();
    switch (kind) {
      case RegionKind::empty: return false;
      case RegionKind::ball: return r < r1;
      case RegionKind::shell: return r > r1 && r < r2;
      default: return contains(cplx(x[0], x[1]));
    }
  }

  bool contains(cplx z) const {
    switch (kind) {
      case RegionKind::empty: return false;
      case RegionKind::ball: return std::abs(z) < r1;
      case RegionKind::shell: return std::abs(z) > r1 && std::abs(z) < r2;
      case RegionKind::disk: return std::abs(z - center) < r1;
      case RegionKind::ellipse: {
        const cplx w = (z - center) * std::polar(1.0, -angle);
        return std::norm(w.real() / r1) + std::norm(w.imag() / r2) < 1.0;
      }
      case RegionKind::half_disk: return std::abs(z) < 1.0 && (z * std::polar(1.0, -angle)).real() > 0.0;
      case RegionKind::cusp3: {
        const double s = 1.0 - z.real();
        return s > 0.0 && s < 0.5 && std::abs(z.imag()) < s * s * s;
      }
    }
    return false;
  }

  /// Lebesgue measure.
  double measure() const {
    const double vol = BallSpec(dim).volume();
    switch (kind) {
      case RegionKind::empty: return 0.0;
      case RegionKind::ball: return vol * std::pow(r1, dim);
      case RegionKind::shell: return vol * (std::pow(r2, dim) - std::pow(r1, dim));
      case RegionKind::disk: return kPi * r1 * r1;
      case RegionKind::ellipse: return kPi * r1 * r2;
      case RegionKind::half_disk: return 0.5 * kPi;
      case RegionKind::cusp3: return 2.0 * std::pow(0.5, 4) / 4.0;
    }
    return 0.0;
  }

  /// Measure relative to the unit ball (normalized area in 2D).
  double normalized_measure() const { return measure() / BallSpec(dim).volume(); }

  /// Radii where the indicator jumps along generic rays from the origin.
  std::vector<double> radial_breaks() const {
    switch (kind) {
      case RegionKind::ball: return {r1};
      case RegionKind::shell: return {r1, r2};
      case RegionKind::cusp3: return {0.5};
      default: return {};
    }
  }

  /// Parameter interval {t >= 0 : z + t e^{i phi} in region} as a list of
  /// disjoint pieces. Defined for the planar convex shapes and shells.
  std::vector<std::pair<double, double>> ray_pieces(cplx z, double phi) const {
    const cplx u = std::polar(1.0, phi);
    auto disk_hit = [&](cplx c, double R) -> std::optional<std::pair<double, double>> {
      const cplx d = z - c;
      const double b = (d * std::conj(u)).real();
      const double disc = b * b - (std::norm(d) - R * R);
      if (disc <= 0.0) return std::nullopt;
      const double s = std::sqrt(disc);
      const double lo = std::max(0.0, -b - s), hi = -b + s;
      if (hi <= lo) return std::nullopt;
      return std::make_pair(lo, hi);
    };
    std::vector<std::pair<double, double>> out;
    switch (kind) {
      case RegionKind::empty: break;
      case RegionKind::ball:
        if (auto h = disk_hit(0.0, r1)) out.push_back(*h);
        break;
      case RegionKind::disk:
        if (auto h = disk_hit(center, r1)) out.push_back(*h);
        break;
      case RegionKind::shell: {
        const auto outer = disk_hit(0.0, r2);
        if (!outer) break;
        const auto inner = r1 > 0.0 ? disk_hit(0.0, r1) : std::nullopt;
        if (!inner) {
          out.push_back(*outer);
          break;
        }
        if (inner->first > outer->first) out.push_back({outer->first, inner->first});
        if (outer->second > inner->second) out.push_back({inner->second, outer->second});
        break;
      }
      case RegionKind::ellipse: {
        const cplx rot = std::polar(1.0, -angle);
        const cplx d = (z - center) * rot, v = u * rot;
        const double dx = d.real() / r1, dy = d.imag() / r2, vx = v.real() / r1, vy = v.imag() / r2;
        const double A = vx * vx + vy * vy, B = dx * vx + dy * vy, C = dx * dx + dy * dy - 1.0;
        const double disc = B * B - A * C;
        if (disc <= 0.0) break;
        const double s = std::sqrt(disc);
        const double lo = std::max(0.0, (-B - s) / A), hi = (-B + s) / A;
        if (hi > lo) out.push_back({lo, hi});
        break;
      }
      case RegionKind::half_disk: {
        auto h = disk_hit(0.0, 1.0);
        if (!h) break;
        const cplx rot = std::polar(1.0, -angle);
        const double a0 = (z * rot).real(), a1 = (u * rot).real();
        double lo = h->first, hi = h->second;
        if (a1 > 0.0) {
          lo = std::max(lo, -a0 / a1);
        } else if (a1 < 0.0) {
          hi = std::min(hi, -a0 / a1);
        } else if (a0 <= 0.0) {
          break;
        }
        if (hi > lo) out.push_back({lo, hi});
        break;
      }
      case RegionKind::cusp3:
        throw std::invalid_argument("Region::ray_pieces: not available for the cusp");
    }
    return out;
  }

  double ray_length(cplx z, double phi) const {
    double len = 0.0;
    for (const auto& [a, b] : ray_pieces(z, phi)) len += b - a;
    return len;
  }

  /// Angular measure of the region on the sphere |x| = r (radians in 2D).
  double slice(double r) const {
    const double area = BallSpec(dim).sphere_area();
    switch (kind) {
      case RegionKind::empty: return 0.0;
      case RegionKind::ball: return r < r1 ? area : 0.0;
      case RegionKind::shell: return (r > r1 && r < r2) ? area : 0.0;
      case RegionKind::cusp3: {
        // r e^{i theta} with s = 1 - r cos(theta): need s < 1/2 and r|sin(theta)| < s^3.
        if (r <= 0.5 || r >= 1.0) return 0.0;
        auto gap = [r](double th) {
          const double s = 1.0 - r * std::cos(th);
          return s * s * s - r * std::sin(th);
        };
        const double th_max = std::acos(std::min(1.0, 0.5 / r));  // s = 1/2 on this ray
        if (gap(0.0) <= 0.0) return 0.0;
        double lo = 0.0, hi = th_max;
        if (gap(hi) > 0.0) return 2.0 * hi;
        for (int it = 0; it < 200 && hi - lo > 1e-16 * std::max(1.0, hi); ++it) {
          const double mid = 0.5 * (lo + hi);
          (gap(mid) > 0.0 ? lo : hi) = mid;
        }
        return 2.0 * lo;
      }
      default: {
        const int n = 8192;
        int hits = 0;
        for (int j = 0; j < n; ++j)
          if (contains(std::polar(r, 2.0 * kPi * (j + 0.5) / n))) ++hits;
        return 2.0 * kPi * hits / n;
      }
    }
  }

  /// Equally spaced boundary points (planar shapes).
  std::vector<cplx> boundary_points(int count) const {
    std::vector<cplx> out;
    switch (kind) {
      case RegionKind::ball:
      case RegionKind::disk:
        for (int j = 0; j < count; ++j) out.push_back(center + std::polar(r1, 2.0 * kPi * j / count));
        break;
      case RegionKind::shell:
        for (int j = 0; j < count; ++j) {
          out.push_back(std::polar(r1, 2.0 * kPi * j / count));
          out.push_back(std::polar(r2, 2.0 * kPi * j / count));
        }
        break;
      case RegionKind::ellipse:
        for (int j = 0; j < count; ++j) {
          const double t = 2.0 * kPi * j / count;
          out.push_back(center + cplx(r1 * std::cos(t), r2 * std::sin(t)) * std::polar(1.0, angle));
        }
        break;
      case RegionKind::half_disk: {
        const int arc = count * 2 / 3, seg = count - arc;
        for (int j = 0; j <= arc; ++j) out.push_back(std::polar(1.0, angle - kPi / 2 + kPi * j / arc));
        for (int j = 1; j < seg; ++j) out.push_back(std::polar(1.0, angle + kPi / 2) * (1.0 - 2.0 * j / seg));
        break;
      }
      default: throw std::invalid_argument("Region::boundary_points: not available for " + name);
    }
    return out;
  }

 private:
  static std::string num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
  }
};

/// Seeded non-disk planar regions of normalized area 1/2: rotated, shifted
/// ellipses with aspect ratio in [2, 4] and rotated half-disks.
inline std::vector<Region> random_equal_area_regions(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<Region> out;
  for (int k = 0; k < count; ++k) {
    const double ang = 2.0 * kPi * unif(rng);
    if (k % 3 == 2) {
      out.push_back(Region::half_disk(ang));
      continue;
    }
    const double aspect = 2.0 + 2.0 * unif(rng);
    const double a = std::sqrt(0.5 * aspect), b = 0.5 / a;
    const cplx c(0.2 * (unif(rng) - 0.5), 0.2 * (unif(rng) - 0.5));
    out.push_back(Region::ellipse(a, b, ang, c));
  }
  return out;
}

}  // namespace lpapprox
