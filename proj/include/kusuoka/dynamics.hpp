#pragma once

// The cell-ratio maps Psi_j on the closed disk, the function g(x) = sum of
// x_j log x_j, and iteration of the transition operator P f = sum_j f(Psi_j) x_j.

#include <cmath>
#include <stdexcept>
#include <utility>

#include "kusuoka/disk.hpp"

namespace kusuoka {

/// Iteration cap for P^n: the pure recursion costs 3^n leaf evaluations per
/// point.
inline constexpr int kMaxTransitionPower = 12;

/// Cyclic coordinate rotation R(x1,x2,x3) = (x2,x3,x1).
[[nodiscard]] constexpr Vec3 cycle(const Vec3& x) { return {x[1], x[2], x[0]}; }
[[nodiscard]] constexpr Vec3 cycle_back(const Vec3& x) { return {x[2], x[0], x[1]}; }

namespace detail {

// The j = 1 branch; x1 >= 1/15 on the closed disk keeps the divisions safe.
[[nodiscard]] inline Vec3 ratio_map_first(const Vec3& x) {
  const double a = 1.0 / (15.0 * x[0]);
  const double b = 1.0 / (25.0 * x[0]);
  return {10.0 * x[0] * a - b,
          (4.0 * x[0] + 3.0 * x[1]) * a - 2.0 * b,
          (4.0 * x[0] + 3.0 * x[2]) * a - 2.0 * b};
}

[[nodiscard]] inline Vec3 ratio_map_raw(int j, const Vec3& x) {
  switch (j) {
    case 1:
      return ratio_map_first(x);
    case 2:
      return cycle_back(ratio_map_first(cycle(x)));
    case 3:
      return cycle(ratio_map_first(cycle_back(x)));
    default:
      throw std::invalid_argument("child_ratio: branch must be in {1,2,3}");
  }
}

}  // namespace detail

/// Psi_j: the ratio vector of child cell j given the parent's ratio vector.
/// Maps the closed disk into itself and its boundary circle onto itself.
[[nodiscard]] inline DiskPoint child_ratio(int j, const DiskPoint& p) {
  return DiskPoint(PlanePoint(detail::ratio_map_raw(j, p.coords())));
}

/// g(x) = sum_j x_j log x_j, with 0 log 0 = 0. Strictly negative on the disk.
[[nodiscard]] inline double negative_entropy(const DiskPoint& p) {
  const Vec3& x = p.coords();
  double s = 0.0;
  for (double xi : x) {
    if (xi > 0.0) {
      s += xi * std::log(xi);
    }
  }
  return s;
}

/// One application of the transition operator: (P f)(p) = sum_j f(Psi_j p) x_j,
/// summed in branch order 1,2,3.
template <class F>
[[nodiscard]] double transition(F&& f, const DiskPoint& p) {
  const Vec3& x = p.coords();
  double s = x[0] * f(child_ratio(1, p));
  s += x[1] * f(child_ratio(2, p));
  s += x[2] * f(child_ratio(3, p));
  return s;
}

namespace detail {

template <class F>
[[nodiscard]] double transition_power_impl(int n, const F& f, const DiskPoint& p) {
  if (n == 0) {
    return f(p);
  }
  const Vec3& x = p.coords();
  double s = x[0] * transition_power_impl(n - 1, f, child_ratio(1, p));
  s += x[1] * transition_power_impl(n - 1, f, child_ratio(2, p));
  s += x[2] * transition_power_impl(n - 1, f, child_ratio(3, p));
  return s;
}

}  // namespace detail

/// (P^n f)(p) by direct 3^n-leaf recursion.
template <class F>
[[nodiscard]] double transition_power(int n, F&& f, const DiskPoint& p) {
  if (n < 0 || n > kMaxTransitionPower) {
    throw std::invalid_argument("transition_power: n out of range");
  }
  return detail::transition_power_impl(n, f, p);
}

/// (P^n g)(p): the integrand of the two-sided bound scan.
[[nodiscard]] inline double transition_power_entropy(int n, const DiskPoint& p) {
  return transition_power(n, [](const DiskPoint& q) { return negative_entropy(q); }, p);
}

}  // namespace kusuoka
