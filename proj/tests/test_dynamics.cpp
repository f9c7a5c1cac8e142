#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "kusuoka/chain.hpp"
#include "kusuoka/dynamics.hpp"
#include "kusuoka/gasket.hpp"

using namespace kusuoka;

namespace {

constexpr double kPi = std::numbers::pi;

DiskPoint random_point(SplitMix64& rng) {
  const double r = kDiskRadius * std::sqrt(rng.next_unit());
  const double t = 2.0 * kPi * rng.next_unit() - kPi;
  Vec3 x = kBarycenter;
  x = axpy(r * std::cos(t) / std::sqrt(6.0), {-1.0, 2.0, -1.0}, x);
  x = axpy(r * std::sin(t) / std::sqrt(2.0), {1.0, 0.0, -1.0}, x);
  return DiskPoint(PlanePoint(x));
}

}  // namespace

TEST_CASE("ratio maps at the barycenter") {
  const DiskPoint center = disk_center();
  const DiskPoint c1 = child_ratio(1, center);
  CHECK(std::abs(c1[0] - 41.0 / 75.0) < 1e-15);
  CHECK(std::abs(c1[1] - 17.0 / 75.0) < 1e-15);
  CHECK(std::abs(c1[2] - 17.0 / 75.0) < 1e-15);

  const DiskPoint c2 = child_ratio(2, center);
  CHECK(std::abs(c2[0] - 17.0 / 75.0) < 1e-15);
  CHECK(std::abs(c2[1] - 41.0 / 75.0) < 1e-15);
  CHECK(std::abs(c2[2] - 17.0 / 75.0) < 1e-15);

  const DiskPoint c3 = child_ratio(3, center);
  CHECK(std::abs(c3[2] - 41.0 / 75.0) < 1e-15);

  CHECK_THROWS_AS(child_ratio(0, center), std::invalid_argument);
  CHECK_THROWS_AS(child_ratio(4, center), std::invalid_argument);
}

TEST_CASE("ratio maps preserve the disk and its boundary") {
  SplitMix64 rng(5);
  for (int i = 0; i < 500; ++i) {
    const DiskPoint p = random_point(rng);
    for (int j = 1; j <= 3; ++j) {
      CHECK(radius(child_ratio(j, p)) <= kDiskRadius + 1e-12);
    }
  }
  for (int i = 0; i < 100; ++i) {
    const DiskPoint p = boundary_point(-kPi + 2.0 * kPi * (i + 0.5) / 100.0);
    for (int j = 1; j <= 3; ++j) {
      CHECK(std::abs(radius(child_ratio(j, p)) - kDiskRadius) < 1e-12);
    }
  }
}

TEST_CASE("rotation equivariance of the three branches") {
  SplitMix64 rng(13);
  for (int i = 0; i < 200; ++i) {
    const DiskPoint p = random_point(rng);
    const DiskPoint rp = DiskPoint(PlanePoint(cycle(p.coords())));
    const Vec3 lhs1 = child_ratio(1, rp).coords();
    const Vec3 rhs1 = cycle(child_ratio(2, p).coords());
    const Vec3 lhs2 = child_ratio(2, rp).coords();
    const Vec3 rhs2 = cycle(child_ratio(3, p).coords());
    const Vec3 lhs3 = child_ratio(3, rp).coords();
    const Vec3 rhs3 = cycle(child_ratio(1, p).coords());
    for (int c = 0; c < 3; ++c) {
      CHECK(std::abs(lhs1[c] - rhs1[c]) < 1e-14);
      CHECK(std::abs(lhs2[c] - rhs2[c]) < 1e-14);
      CHECK(std::abs(lhs3[c] - rhs3[c]) < 1e-14);
    }
  }
}

TEST_CASE("negative entropy values") {
  CHECK(std::abs(negative_entropy(disk_center()) + std::log(3.0)) < 1e-15);
  CHECK(std::abs(negative_entropy(boundary_point(0.0)) -
                 (0.6 * std::log(3.0) - std::log(5.0))) < 1e-14);
  CHECK(std::abs(negative_entropy(boundary_point(kPi / 3.0)) -
                 ((14.0 / 15.0) * std::log(7.0) - std::log(15.0))) < 1e-14);
}

TEST_CASE("transition operator basics") {
  const auto one = [](const DiskPoint&) { return 1.0; };
  SplitMix64 rng(17);
  for (int i = 0; i < 100; ++i) {
    CHECK(std::abs(transition(one, random_point(rng)) - 1.0) < 1e-15);
  }

  // At the barycenter the three images coincide modulo rotation, and g is
  // rotation invariant.
  const double lhs = transition([](const DiskPoint& q) { return negative_entropy(q); },
                                disk_center());
  const double rhs = negative_entropy(child_ratio(1, disk_center()));
  CHECK(std::abs(lhs - rhs) < 1e-14);

  // For any f the operator is exactly the x-weighted average of the three
  // branch values.
  const auto f = [](const DiskPoint& q) { return 2.0 * q[0] - q[2] + 0.25; };
  const DiskPoint p = boundary_point(1.1);
  const double direct = p[0] * f(child_ratio(1, p)) + p[1] * f(child_ratio(2, p)) +
                        p[2] * f(child_ratio(3, p));
  CHECK(transition(f, p) == direct);
}

TEST_CASE("iterated transition of g") {
  const DiskPoint p = boundary_point(0.0);
  CHECK(transition_power_entropy(0, p) == negative_entropy(p));
  CHECK(std::abs(transition_power_entropy(1, p) -
                 transition([](const DiskPoint& q) { return negative_entropy(q); }, p)) <
        1e-15);

  // Unrolling one level agrees with the recursion.
  const DiskPoint q = boundary_point(0.9);
  double unrolled = 0.0;
  for (int j = 1; j <= 3; ++j) {
    unrolled += q[j - 1] * transition_power_entropy(2, child_ratio(j, q));
  }
  CHECK(std::abs(transition_power_entropy(3, q) - unrolled) < 1e-15);

  CHECK_THROWS_AS(transition_power_entropy(kMaxTransitionPower + 1, p), std::invalid_argument);
  CHECK_THROWS_AS(transition_power_entropy(-1, p), std::invalid_argument);
}

TEST_CASE("iterated transition preserves constants") {
  const auto one = [](const DiskPoint&) { return 1.0; };
  SplitMix64 rng(23);
  for (int i = 0; i < 100; ++i) {
    const DiskPoint p = random_point(rng);
    const int n = 1 + static_cast<int>(rng.next_unit() * 5.0);
    CHECK(std::abs(transition_power(n, one, p) - 1.0) < 1e-12);
  }
}

TEST_CASE("boundary restriction is injective on a fine grid") {
  const int grid = 10000;
  for (int j = 1; j <= 3; ++j) {
    double prev = angle(child_ratio(j, boundary_point(0.0)));
    double first_sign = 0.0;
    bool monotone = true;
    for (int i = 1; i <= grid; ++i) {
      const double cur = angle(child_ratio(j, boundary_point(2.0 * kPi * i / grid)));
      double d = cur - prev;
      if (d <= -kPi) {
        d += 2.0 * kPi;
      } else if (d > kPi) {
        d -= 2.0 * kPi;
      }
      if (i == 1) {
        first_sign = d > 0.0 ? 1.0 : -1.0;
      } else if (d * first_sign <= 0.0) {
        monotone = false;
        break;
      }
      prev = cur;
    }
    CHECK(monotone);
  }
}
