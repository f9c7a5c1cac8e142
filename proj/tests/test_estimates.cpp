#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "kusuoka/estimates.hpp"

using namespace kusuoka;

namespace {

constexpr double kPi = std::numbers::pi;

// Reference extrema of P^n g on the boundary circle and the derived
// dimension bounds, n = 0..3 (7 significant digits, truncated).
struct ReferenceRow {
  int n;
  double g_min, g_max, d_lower, d_upper;
};
constexpr ReferenceRow kReference[] = {
    {0, -0.9502705, -0.8918673, 1.271650, 1.300763},
    {1, -0.9353387, -0.9269092, 1.289402, 1.293544},
    {2, -0.9320224, -0.9287450, 1.290308, 1.291920},
    {3, -0.9307764, -0.9299684, 1.290911, 1.291308},
};

}  // namespace

TEST_CASE("rho at depth one and two") {
  CHECK(std::abs(rho_direct(1).value + std::log(3.0)) < 1e-14);
  CHECK(std::abs(rho_cesaro(1).value + std::log(3.0)) < 1e-14);

  // Depth two from the exact masses: three cells of 41/225, six of 17/225.
  const double m1 = 41.0 / 225.0;
  const double m2 = 17.0 / 225.0;
  const double expect = 0.5 * (3.0 * m1 * std::log(m1) + 6.0 * m2 * std::log(m2));
  CHECK(std::abs(rho_direct(2).value - expect) < 1e-14);

  // Cesaro route collapses by symmetry to (1/2)(g(center) + g(c1)).
  const double g_c1 = (41.0 / 75.0) * std::log(41.0 / 75.0) +
                      2.0 * (17.0 / 75.0) * std::log(17.0 / 75.0);
  CHECK(std::abs(rho_cesaro(2).value - 0.5 * (-std::log(3.0) + g_c1)) < 1e-14);
}

TEST_CASE("the two rho routes agree") {
  for (int m = 1; m <= 8; ++m) {
    CHECK(std::abs(rho_direct(m).value - rho_cesaro(m).value) < 1e-10);
  }
}

TEST_CASE("rho depth caps") {
  CHECK_THROWS_AS(rho_direct(0), std::invalid_argument);
  CHECK_THROWS_AS(rho_direct(kMaxRhoDepth + 1), std::invalid_argument);
  CHECK_THROWS_AS(rho_cesaro(0), std::invalid_argument);
  CHECK_THROWS_AS(rho_cesaro(kMaxRhoDepth + 1), std::invalid_argument);
}

TEST_CASE("dimension conversion") {
  // rho_1 = -log 3 converts exactly to the spectral dimension 2 log_5 3.
  CHECK(std::abs(dsloc_from_rho(-std::log(3.0)) - reference_dimensions().spectral) < 1e-15);

  const ClosedFormBounds cf = closed_form_bounds();
  CHECK(std::abs(dsloc_from_rho(cf.g_max) - cf.d_lower) < 1e-15);
  CHECK(std::abs(dsloc_from_rho(cf.g_min) - cf.d_upper) < 1e-15);

  CHECK_THROWS_AS(dsloc_from_rho(std::log(5.0 / 3.0)), std::domain_error);
  CHECK_THROWS_AS(dsloc_from_rho(1.0), std::domain_error);
}

TEST_CASE("closed-form endpoint values") {
  const ClosedFormBounds cf = closed_form_bounds();
  CHECK(std::abs(cf.g_min - (0.6 * std::log(3.0) - std::log(5.0))) < 1e-16);
  CHECK(std::abs(cf.g_max - ((14.0 / 15.0) * std::log(7.0) - std::log(15.0))) < 1e-16);
  CHECK(std::abs(cf.g_min + 0.9502705) < 1e-6);
  CHECK(std::abs(cf.g_max + 0.8918673) < 1e-6);
  CHECK(std::abs(cf.d_lower - 1.271650) < 1e-6);
  CHECK(std::abs(cf.d_upper - 1.300763) < 1e-6);
}

TEST_CASE("reference dimensions") {
  const ReferenceDimensions ref = reference_dimensions();
  CHECK(std::abs(ref.spectral - 1.36521) < 1e-5);
  CHECK(std::abs(ref.walk - 2.32192) < 1e-5);
  CHECK(closed_form_bounds().d_upper < ref.spectral);
}

TEST_CASE("bound scan matches the closed forms at n = 0") {
  const BoundsRow row = bound_scan(0, 256, 1e-13);
  const ClosedFormBounds cf = closed_form_bounds();
  CHECK(std::abs(row.g_min - cf.g_min) < 1e-9);
  CHECK(std::abs(row.g_max - cf.g_max) < 1e-9);
  CHECK(std::abs(row.d_lower - cf.d_lower) < 1e-9);
  CHECK(std::abs(row.d_upper - cf.d_upper) < 1e-9);

  // Argmin at 0 mod 2*pi/3, argmax at pi/3 mod 2*pi/3.
  const double period = 2.0 * kPi / 3.0;
  const double tmin = std::abs(std::remainder(row.theta_min, period));
  const double tmax = std::abs(std::remainder(row.theta_max - kPi / 3.0, period));
  CHECK(tmin < 1e-6);
  CHECK(tmax < 1e-6);
}

TEST_CASE("bound scan reproduces the reference rows") {
  for (const ReferenceRow& ref : kReference) {
    const BoundsRow row = bound_scan(ref.n, 1024, 1e-12);
    CHECK(std::abs(row.g_min - ref.g_min) < 1e-6);
    CHECK(std::abs(row.g_max - ref.g_max) < 1e-6);
    CHECK(std::abs(row.d_lower - ref.d_lower) < 1e-6);
    CHECK(std::abs(row.d_upper - ref.d_upper) < 1e-6);
    CHECK(row.g_min <= row.g_max);
    CHECK(row.d_lower <= row.d_upper);
  }
}

TEST_CASE("bound scan argument validation") {
  CHECK_THROWS_AS(bound_scan(-1), std::invalid_argument);
  CHECK_THROWS_AS(bound_scan(kMaxTransitionPower + 1), std::invalid_argument);
  CHECK_THROWS_AS(bound_scan(0, 32), std::invalid_argument);
  CHECK_THROWS_AS(bound_scan(0, 256, 0.0), std::invalid_argument);
}

TEST_CASE("boundary entropy derivative") {
  CHECK(std::abs(boundary_entropy_derivative(0.0)) < 1e-12);
  CHECK(std::abs(boundary_entropy_derivative(kPi / 3.0)) < 1e-12);

  // Frozen interior value (independent finite-difference oracle below).
  CHECK(std::abs(boundary_entropy_derivative(kPi / 6.0) - 0.08719019565422) < 1e-11);
  CHECK(boundary_entropy_derivative(kPi / 6.0) > 0.0);

  double low = 0.0;
  for (int i = 0; i <= 10000; ++i) {
    low = std::min(low, boundary_entropy_derivative(kPi / 3.0 * i / 10000.0));
  }
  CHECK(low >= -1e-12);

  const double h = 1e-6;
  for (int i = 0; i <= 50; ++i) {
    const double t = kPi / 3.0 * i / 50.0;
    const double fd = (negative_entropy(boundary_point(t + h)) -
                       negative_entropy(boundary_point(t - h))) /
                      (2.0 * h);
    CHECK(std::abs(fd - boundary_entropy_derivative(t)) < 1e-6);
  }
}

TEST_CASE("rho estimates are negative and convert into (1, 2)") {
  for (int m : {1, 3, 5, 7}) {
    const RhoEstimate est = rho_direct(m);
    CHECK(est.value < 0.0);
    const double d = dsloc_from_rho(est.value);
    CHECK(d > 1.0);
    CHECK(d < 2.0);
  }
}
