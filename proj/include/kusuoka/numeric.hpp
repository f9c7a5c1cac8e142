#pragma once

// Small numeric toolbox: fixed-size linear algebra on 3-vectors, compensated
// summation, golden-section refinement, locale-free float formatting.

#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace kusuoka {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;  // row-major

[[nodiscard]] constexpr Vec3 mat_vec(const Mat3& m, const Vec3& v) {
  return {m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
          m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
          m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2]};
}

[[nodiscard]] constexpr double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

[[nodiscard]] constexpr Vec3 axpy(double a, const Vec3& x, const Vec3& y) {
  return {a * x[0] + y[0], a * x[1] + y[1], a * x[2] + y[2]};
}

/// Neumaier-compensated accumulator. Deterministic for a fixed add order,
/// which every tree reduction in this library guarantees.
class KahanSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  [[nodiscard]] double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Golden-section search for the minimizer of a unimodal f on [a, b].
/// Returns the midpoint of the final bracket of width <= tol.
template <class F>
[[nodiscard]] double golden_section_min(F&& f, double a, double b, double tol) {
  if (!(tol > 0.0) || !(a < b)) {
    throw std::invalid_argument("golden_section_min: need a < b and tol > 0");
  }
  constexpr double kInvPhi = 0.6180339887498949;  // (sqrt(5) - 1) / 2
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

/// Fixed-format decimal rendering, independent of the global locale.
/// significant_digits <= 0 selects the shortest representation that
/// round-trips binary64 exactly.
[[nodiscard]] inline std::string format_double(double x, int significant_digits) {
  std::array<char, 64> buf{};
  const auto res =
      significant_digits > 0
          ? std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general,
                          significant_digits)
          : std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

}  // namespace kusuoka
