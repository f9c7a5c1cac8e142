#pragma once

// Geometry of the plane H = {x in R^3 : x1+x2+x3 = 1}, the disk D of radius
// sqrt(8/75) about the barycenter, and the polar/boundary parametrizations.

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "kusuoka/numeric.hpp"

namespace kusuoka {

inline constexpr Vec3 kBarycenter = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
inline constexpr double kDiskRadiusSq = 8.0 / 75.0;
inline const double kDiskRadius = std::sqrt(kDiskRadiusSq);

/// Construction rejects points further from H than this; smaller drift is
/// projected back onto H.
inline constexpr double kSumDriftTolerance = 1e-9;
/// Radial excess beyond the disk up to this amount is clipped to the
/// boundary; more is a domain error.
inline constexpr double kRadiusDriftTolerance = 1e-9;

namespace detail {
// Orthonormal frame of H about the barycenter: the "cos" and "sin" axes of
// the polar coordinates.
inline const double kSqrt6 = std::sqrt(6.0);
inline const double kSqrt2 = std::sqrt(2.0);
inline constexpr Vec3 kCosAxisRaw = {-1.0, 2.0, -1.0};  // unit: /sqrt(6)
inline constexpr Vec3 kSinAxisRaw = {1.0, 0.0, -1.0};   // unit: /sqrt(2)
}  // namespace detail

/// A point of H. Coordinates sum to 1; small constructor drift is projected
/// out so the invariant holds to machine precision afterwards.
class PlanePoint {
 public:
  explicit PlanePoint(const Vec3& x) : x_(x) {
    const double sum = x_[0] + x_[1] + x_[2];
    if (std::abs(sum - 1.0) > kSumDriftTolerance) {
      throw std::invalid_argument("PlanePoint: coordinates must sum to 1");
    }
    const double shift = (sum - 1.0) / 3.0;
    x_[0] -= shift;
    x_[1] -= shift;
    x_[2] -= shift;
  }

  [[nodiscard]] const Vec3& coords() const { return x_; }
  [[nodiscard]] double operator[](std::size_t i) const { return x_[i]; }

 private:
  Vec3 x_;
};

[[nodiscard]] inline double radius(const PlanePoint& p) {
  const Vec3& x = p.coords();
  const double d0 = x[0] - kBarycenter[0];
  const double d1 = x[1] - kBarycenter[1];
  const double d2 = x[2] - kBarycenter[2];
  return std::sqrt(d0 * d0 + d1 * d1 + d2 * d2);
}

/// Polar angle in (-pi, pi]. Zero at the barycenter by convention, which
/// extends to a small neighborhood so rounding-level offsets from the center
/// don't produce arbitrary directions.
[[nodiscard]] inline double angle(const PlanePoint& p) {
  const Vec3& x = p.coords();
  const Vec3 d = {x[0] - kBarycenter[0], x[1] - kBarycenter[1], x[2] - kBarycenter[2]};
  const double c = dot(d, detail::kCosAxisRaw) / detail::kSqrt6;  // r cos(theta)
  const double s = dot(d, detail::kSinAxisRaw) / detail::kSqrt2;  // r sin(theta)
  if (c * c + s * s < 1e-26) {
    return 0.0;
  }
  double theta = std::atan2(s, c);
  if (theta <= -std::numbers::pi) {
    theta = std::numbers::pi;
  }
  return theta;
}

/// A point of the closed disk. Radial drift within tolerance is clipped back
/// to the boundary circle.
class DiskPoint {
 public:
  explicit DiskPoint(const PlanePoint& p) : p_(clip(p)) {}

  [[nodiscard]] const PlanePoint& plane() const { return p_; }
  [[nodiscard]] const Vec3& coords() const { return p_.coords(); }
  [[nodiscard]] double operator[](std::size_t i) const { return p_[i]; }

 private:
  static PlanePoint clip(const PlanePoint& p) {
    const double r = radius(p);
    if (r <= kDiskRadius) {
      return p;
    }
    if (r - kDiskRadius > kRadiusDriftTolerance) {
      throw std::domain_error("DiskPoint: point lies outside the closed disk");
    }
    const double shrink = kDiskRadius / r;
    const Vec3& x = p.coords();
    return PlanePoint({kBarycenter[0] + shrink * (x[0] - kBarycenter[0]),
                       kBarycenter[1] + shrink * (x[1] - kBarycenter[1]),
                       kBarycenter[2] + shrink * (x[2] - kBarycenter[2])});
  }

  PlanePoint p_;
};

[[nodiscard]] inline double radius(const DiskPoint& p) { return radius(p.plane()); }
[[nodiscard]] inline double angle(const DiskPoint& p) { return angle(p.plane()); }

[[nodiscard]] inline DiskPoint disk_center() { return DiskPoint(PlanePoint(kBarycenter)); }

/// Boundary parametrization phi(theta); theta is reduced mod 2*pi into
/// (-pi, pi] first.
[[nodiscard]] inline DiskPoint boundary_point(double theta) {
  double t = std::remainder(theta, 2.0 * std::numbers::pi);
  if (t <= -std::numbers::pi) {
    t = std::numbers::pi;
  }
  const double a = 2.0 * std::cos(t) / 15.0;
  const double b = 2.0 * std::sqrt(3.0) * std::sin(t) / 15.0;
  Vec3 x = kBarycenter;
  x = axpy(a, detail::kCosAxisRaw, x);
  x = axpy(b, detail::kSinAxisRaw, x);
  return DiskPoint(PlanePoint(x));
}

/// Affine change of ratio coordinates b = (5/4) c - 1/12 used by some of the
/// related literature; preserves H and fixes the barycenter.
[[nodiscard]] inline PlanePoint b_of_c(const PlanePoint& c) {
  const Vec3& x = c.coords();
  return PlanePoint({1.25 * x[0] - 1.0 / 12.0, 1.25 * x[1] - 1.0 / 12.0,
                     1.25 * x[2] - 1.0 / 12.0});
}

}  // namespace kusuoka
