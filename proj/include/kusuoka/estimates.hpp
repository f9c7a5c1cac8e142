#pragma once

// Depth-m entropy sums rho_m computed two independent ways, the boundary
// min/max scan of P^n g with golden-section refinement, the exact n = 0
// endpoint formulas, and the conversions to local spectral dimension bounds.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "kusuoka/dynamics.hpp"
#include "kusuoka/gasket.hpp"
#include "kusuoka/numeric.hpp"

namespace kusuoka {

inline constexpr int kMaxRhoDepth = 18;

/// rho_m = (1/m) sum over |w| = m of nu(K_w) log nu(K_w). Negative; increases
/// with m toward its limit rho (approach from below, so each value is a lower
/// approximant of rho).
struct RhoEstimate {
  int depth;
  double value;
};

/// Direct form: stream every depth-m cell mass (fixed lexicographic order,
/// compensated summation).
[[nodiscard]] inline RhoEstimate rho_direct(int m, const HarmonicPair& pair = orthonormal_pair()) {
  if (m < 1 || m > kMaxRhoDepth) {
    throw std::invalid_argument("rho_direct: depth out of range");
  }
  KahanSum acc;
  enumerate_masses(
      m, [&acc](std::span<const int>, double mass) { acc.add(mass * std::log(mass)); }, pair);
  return {m, acc.value() / m};
}

namespace detail {

inline void cesaro_accumulate(const DiskPoint& p, double mass, int remaining, KahanSum& acc) {
  acc.add(mass * negative_entropy(p));
  if (remaining <= 1) {
    return;
  }
  const Vec3& x = p.coords();
  for (int j = 1; j <= 3; ++j) {
    cesaro_accumulate(child_ratio(j, p), mass * x[j - 1], remaining - 1, acc);
  }
}

}  // namespace detail

/// Cesaro form: rho_m = (1/m) sum_{k<m} sum_{|w|=k} nu(K_w) g(c^(w)), built by
/// tree recursion over the ratio maps carrying (point, mass) pairs. Agrees
/// with rho_direct by the telescoping identity (tested to 1e-10).
[[nodiscard]] inline RhoEstimate rho_cesaro(int m) {
  if (m < 1 || m > kMaxRhoDepth) {
    throw std::invalid_argument("rho_cesaro: depth out of range");
  }
  KahanSum acc;
  detail::cesaro_accumulate(disk_center(), 1.0, m, acc);
  return {m, acc.value() / m};
}

/// d(rho) = 2 - 2 log(5/3) / (log(5/3) - rho); decreasing in rho.
[[nodiscard]] inline double dsloc_from_rho(double rho) {
  const double scale_log = std::log(kEnergyScale);
  if (!(rho < scale_log)) {
    throw std::domain_error("dsloc_from_rho: rho must be below log(5/3)");
  }
  return 2.0 - 2.0 * scale_log / (scale_log - rho);
}

/// One row of the bound table: extrema of P^n g over the boundary circle and
/// the derived dimension bounds d_lower = d(g_max) <= d_upper = d(g_min).
struct BoundsRow {
  int n;
  double g_min;
  double g_max;
  double d_lower;
  double d_upper;
  double theta_min;  // angle attaining g_min (representative within the period)
  double theta_max;
};

/// Dense scan of theta -> (P^n g)(phi(theta)) over one 2*pi/3 period (the
/// rotation equivariance making that period valid is itself checked in the
/// verify suite), followed by golden-section refinement of every bracketed
/// local extremum down to angular width tol.
[[nodiscard]] inline BoundsRow bound_scan(int n, int grid_size = 4096, double tol = 1e-12) {
  if (n < 0 || n > kMaxTransitionPower) {
    throw std::invalid_argument("bound_scan: n out of range");
  }
  if (grid_size < 64) {
    throw std::invalid_argument("bound_scan: grid_size must be at least 64");
  }
  if (!(tol > 0.0)) {
    throw std::invalid_argument("bound_scan: tol must be positive");
  }
  const double period = 2.0 * std::numbers::pi / 3.0;
  const double step = period / grid_size;
  const auto h = [n](double theta) { return transition_power_entropy(n, boundary_point(theta)); };

  std::vector<double> values(grid_size);
  for (int i = 0; i < grid_size; ++i) {
    values[i] = h(i * step);
  }

  BoundsRow row{};
  row.n = n;
  row.g_min = values[0];
  row.g_max = values[0];
  row.theta_min = 0.0;
  row.theta_max = 0.0;
  for (int i = 0; i < grid_size; ++i) {
    const double prev = values[(i + grid_size - 1) % grid_size];
    const double next = values[(i + 1) % grid_size];
    const double here = values[i];
    const double lo = (i - 1) * step;
    const double hi = (i + 1) * step;
    if (here <= prev && here <= next) {
      const double t = golden_section_min(h, lo, hi, tol);
      const double val = h(t);
      if (val < row.g_min) {
        row.g_min = val;
        row.theta_min = t;
      }
    }
    if (here >= prev && here >= next) {
      const double t = golden_section_min([&h](double u) { return -h(u); }, lo, hi, tol);
      const double val = h(t);
      if (val > row.g_max) {
        row.g_max = val;
        row.theta_max = t;
      }
    }
  }
  row.d_lower = dsloc_from_rho(row.g_max);
  row.d_upper = dsloc_from_rho(row.g_min);
  return row;
}

/// Exact endpoint values at n = 0: the extrema of g on the boundary circle
/// and the dimension bounds they induce.
struct ClosedFormBounds {
  double g_min;    // (3/5) log 3 - log 5, attained at theta = 0
  double g_max;    // (14/15) log 7 - log 15, attained at theta = pi/3
  double d_lower;  // (15 log 3 + 15 log 5 - 14 log 7) / (15 log 5 - 7 log 7)
  double d_upper;  // (5 log 5 - 3 log 3) / (5 log 5 - 4 log 3)
};

[[nodiscard]] inline ClosedFormBounds closed_form_bounds() {
  const double log3 = std::log(3.0);
  const double log5 = std::log(5.0);
  const double log7 = std::log(7.0);
  ClosedFormBounds out{};
  out.g_min = 0.6 * log3 - log5;
  out.g_max = (14.0 / 15.0) * log7 - std::log(15.0);
  out.d_lower = (15.0 * log3 + 15.0 * log5 - 14.0 * log7) / (15.0 * log5 - 7.0 * log7);
  out.d_upper = (5.0 * log5 - 3.0 * log3) / (5.0 * log5 - 4.0 * log3);
  return out;
}

/// Closed-form derivative of theta -> g(phi(theta)); nonnegative on
/// [0, pi/3] with zeros exactly at the endpoints.
[[nodiscard]] inline double boundary_entropy_derivative(double theta) {
  const double x = 0.4 * std::cos(theta);
  const double y = (2.0 * std::sqrt(3.0) / 15.0) * std::sin(theta);
  const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
  return inv_sqrt3 * ((-x + y) * std::log(1.0 / 3.0 - x / 3.0 - y) -
                      2.0 * y * std::log(1.0 / 3.0 + 2.0 * x / 3.0) +
                      (x + y) * std::log(1.0 / 3.0 - x / 3.0 + y));
}

/// The classical exponents of the gasket: spectral dimension 2 log_5 3 and
/// walk dimension log_2 5.
struct ReferenceDimensions {
  double spectral;
  double walk;
};

[[nodiscard]] inline ReferenceDimensions reference_dimensions() {
  return {2.0 * std::log(3.0) / std::log(5.0), std::log(5.0) / std::log(2.0)};
}

}  // namespace kusuoka
