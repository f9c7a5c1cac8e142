#pragma once

// Self-contained invariant suites over all modules, reported per check.
// Backs the `verify` CLI subcommand and the negative-control tests; the
// psi_fault knob exists so a harness can prove the ratio-map consistency
// check actually bites.

#include <algorithm>
#include <limits>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "kusuoka/chain.hpp"
#include "kusuoka/disk.hpp"
#include "kusuoka/dynamics.hpp"
#include "kusuoka/estimates.hpp"
#include "kusuoka/gasket.hpp"
#include "kusuoka/numeric.hpp"

namespace kusuoka {

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  [[nodiscard]] int failed() const {
    int n = 0;
    for (const auto& c : checks) {
      n += c.passed ? 0 : 1;
    }
    return n;
  }
  [[nodiscard]] int passed() const { return static_cast<int>(checks.size()) - failed(); }
};

struct VerifyOptions {
  int word_depth = 8;        // ratio-map consistency / additivity depth
  int scan_grid = 512;       // grid for the nesting and closed-form checks
  int chain_paths = 30000;   // chi-square sample size
  int sandwich_depth = 15;   // rho_m depth for the lower sandwich check (0 = skip)
  std::uint64_t seed = 20250809;
  double psi_fault = 0.0;    // fault injection for the negative control
};

namespace detail {

inline const double kPi = std::numbers::pi;

inline std::string describe(double deviation, double tol) {
  std::ostringstream os;
  os << "max deviation " << deviation << " (tol " << tol << ")";
  return os.str();
}

inline CheckResult bounded_check(std::string name, double deviation, double tol) {
  return {std::move(name), deviation <= tol, describe(deviation, tol)};
}

inline Vec3 random_vector(SplitMix64& rng) {
  return {2.0 * rng.next_unit() - 1.0, 2.0 * rng.next_unit() - 1.0, 2.0 * rng.next_unit() - 1.0};
}

inline DiskPoint random_disk_point(SplitMix64& rng) {
  const double r = kDiskRadius * std::sqrt(rng.next_unit());
  const double t = 2.0 * kPi * rng.next_unit() - kPi;
  Vec3 x = kBarycenter;
  x = axpy(r * std::cos(t) / kSqrt6, kCosAxisRaw, x);
  x = axpy(r * std::sin(t) / kSqrt2, kSinAxisRaw, x);
  return DiskPoint(PlanePoint(x));
}

/// 3x3 linear solve with partial pivoting (used to re-derive the harmonic
/// extension matrices from the energy-minimizing stationarity system).
inline Vec3 solve3(Mat3 a, Vec3 b) {
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) {
        piv = r;
      }
    }
    std::swap(a[col], a[piv]);
    std::swap(b[col], b[piv]);
    for (int r = col + 1; r < 3; ++r) {
      const double f = a[r][col] / a[col][col];
      for (int c = col; c < 3; ++c) {
        a[r][c] -= f * a[col][c];
      }
      b[r] -= f * b[col];
    }
  }
  Vec3 x{};
  for (int r = 2; r >= 0; --r) {
    double s = b[r];
    for (int c = r + 1; c < 3; ++c) {
      s -= a[r][c] * x[c];
    }
    x[r] = s / a[r][r];
  }
  return x;
}

inline double max_abs_diff(const Vec3& a, const Vec3& b) {
  return std::max({std::abs(a[0] - b[0]), std::abs(a[1] - b[1]), std::abs(a[2] - b[2])});
}

}  // namespace detail

/// Max infinity-norm gap between c^(wj) computed from the energy matrices and
/// the ratio map applied to c^(w), over all |w| <= max_depth, j in {1,2,3}.
/// fault_shift displaces the map output (negative-control hook).
[[nodiscard]] inline double max_ratio_map_deviation(int max_depth, double fault_shift = 0.0) {
  const Vec3 fault = {fault_shift, -fault_shift, 0.0};
  double dev = 0.0;
  struct Rec {
    const Vec3& fault;
    double& dev;
    int max_depth;
    void walk(const CellState& cell, int depth) {
      const double mass = cell_state_mass(cell);
      const std::array<CellState, 3> children = {child_cell(cell, 1), child_cell(cell, 2),
                                                 child_cell(cell, 3)};
      const Vec3 ratio = {cell_state_mass(children[0]) / mass, cell_state_mass(children[1]) / mass,
                          cell_state_mass(children[2]) / mass};
      for (int j = 1; j <= 3; ++j) {
        const double child_mass = cell_state_mass(children[j - 1]);
        const Vec3 from_matrices = {cell_state_mass(child_cell(children[j - 1], 1)) / child_mass,
                                    cell_state_mass(child_cell(children[j - 1], 2)) / child_mass,
                                    cell_state_mass(child_cell(children[j - 1], 3)) / child_mass};
        Vec3 mapped = detail::ratio_map_raw(j, ratio);
        mapped = {mapped[0] + fault[0], mapped[1] + fault[1], mapped[2] + fault[2]};
        dev = std::max(dev, detail::max_abs_diff(from_matrices, mapped));
        if (depth < max_depth) {
          walk(children[j - 1], depth + 1);
        }
      }
    }
  } rec{fault, dev, max_depth};
  rec.walk(root_cell(), 0);
  return dev;
}

// ---------------------------------------------------------------------------
// gasket suite
// ---------------------------------------------------------------------------

inline SuiteReport verify_gasket(const VerifyOptions& opt) {
  SuiteReport report{"gasket", {}};

  {
    // Midpoint values y minimize Q1; stationarity gives (4I - offdiag) y = rhs.
    // Re-derive each A_i column from the solved system and compare.
    double dev = 0.0;
    for (int k = 0; k < 3; ++k) {
      Vec3 v{};
      v[k] = 1.0;
      const Mat3 sys = {{{4.0, -1.0, -1.0}, {-1.0, 4.0, -1.0}, {-1.0, -1.0, 4.0}}};
      const Vec3 rhs = {v[0] + v[1], v[1] + v[2], v[0] + v[2]};
      const Vec3 y = detail::solve3(sys, rhs);  // (y12, y23, y13)
      // Vertex values per sub-triangle i: (A_i v) = (value at p_j under psi_i).
      const Vec3 a1 = {v[0], y[0], y[2]};
      const Vec3 a2 = {y[0], v[1], y[1]};
      const Vec3 a3 = {y[2], y[1], v[2]};
      const Vec3 col1 = {harmonic_matrix(1)[0][k], harmonic_matrix(1)[1][k], harmonic_matrix(1)[2][k]};
      const Vec3 col2 = {harmonic_matrix(2)[0][k], harmonic_matrix(2)[1][k], harmonic_matrix(2)[2][k]};
      const Vec3 col3 = {harmonic_matrix(3)[0][k], harmonic_matrix(3)[1][k], harmonic_matrix(3)[2][k]};
      dev = std::max({dev, detail::max_abs_diff(a1, col1), detail::max_abs_diff(a2, col2),
                      detail::max_abs_diff(a3, col3)});
    }
    report.checks.push_back(detail::bounded_check("harmonic-matrices-minimize-energy", dev, 1e-14));
  }

  {
    SplitMix64 rng(opt.seed);
    double dev = 0.0;
    for (int t = 0; t < 100; ++t) {
      const Vec3 v = detail::random_vector(rng);
      double sum = 0.0;
      for (int i = 1; i <= 3; ++i) {
        sum += graph_energy(mat_vec(harmonic_matrix(i), v));
      }
      const double q0 = graph_energy(v);
      dev = std::max(dev, std::abs(kEnergyScale * sum - q0) / std::max(1.0, q0));
    }
    report.checks.push_back(detail::bounded_check("energy-self-similarity", dev, 1e-12));
  }

  {
    // Additivity nu(K_w) = sum_j nu(K_wj) at every node to word_depth, and
    // normalization of each level.
    double add_dev = 0.0;
    std::vector<KahanSum> level_sums(static_cast<std::size_t>(opt.word_depth) + 1);
    struct Rec {
      int max_depth;
      double& add_dev;
      std::vector<KahanSum>& level_sums;
      void walk(const CellState& cell, int depth) {
        const double mass = cell_state_mass(cell);
        level_sums[static_cast<std::size_t>(depth)].add(mass);
        if (depth == max_depth) {
          return;
        }
        double child_total = 0.0;
        for (int j = 1; j <= 3; ++j) {
          const CellState child = child_cell(cell, j);
          child_total += cell_state_mass(child);
          walk(child, depth + 1);
        }
        add_dev = std::max(add_dev, std::abs(child_total - mass) / mass);
      }
    } rec{opt.word_depth, add_dev, level_sums};
    rec.walk(root_cell(), 0);
    double norm_dev = 0.0;
    for (const auto& s : level_sums) {
      norm_dev = std::max(norm_dev, std::abs(s.value() - 1.0));
    }
    report.checks.push_back(detail::bounded_check("measure-additivity", add_dev, 1e-12));
    report.checks.push_back(detail::bounded_check("measure-normalization", norm_dev, 1e-12));
  }

  {
    // An energy-orthogonal rotation of the pair must give the same measure.
    const HarmonicPair base = orthonormal_pair();
    const double alpha = 0.7;
    const HarmonicPair rotated = {
        axpy(std::cos(alpha), base.first, {std::sin(alpha) * base.second[0],
                                           std::sin(alpha) * base.second[1],
                                           std::sin(alpha) * base.second[2]}),
        axpy(-std::sin(alpha), base.first, {std::cos(alpha) * base.second[0],
                                            std::cos(alpha) * base.second[1],
                                            std::cos(alpha) * base.second[2]})};
    double dev = 0.0;
    struct Rec {
      double& dev;
      void walk(const CellState& a, const CellState& b, int remaining) {
        const double ma = cell_state_mass(a);
        dev = std::max(dev, std::abs(ma - cell_state_mass(b)) / ma);
        if (remaining == 0) {
          return;
        }
        for (int j = 1; j <= 3; ++j) {
          walk(child_cell(a, j), child_cell(b, j), remaining - 1);
        }
      }
    } rec{dev};
    rec.walk(root_cell(base), root_cell(rotated), 5);
    report.checks.push_back(detail::bounded_check("basis-independence", dev, 1e-12));
  }

  {
    // c^(wj) computed from the energy matrices must equal the ratio map
    // applied to c^(w). opt.psi_fault shifts the map output to prove the
    // check can fail.
    const double dev = max_ratio_map_deviation(opt.word_depth, opt.psi_fault);
    report.checks.push_back(detail::bounded_check("ratio-map-consistency", dev, 1e-12));
  }

  {
    double dev = 0.0;
    struct Rec {
      double& dev;
      Word word;
      void walk(int remaining) {
        const Rational exact = exact_cell_mass(word);
        const double exact_value = static_cast<double>(exact.num) / static_cast<double>(exact.den);
        const double approx = cell_mass(word);
        dev = std::max(dev, std::abs(approx - exact_value) / exact_value);
        if (remaining == 0) {
          return;
        }
        for (int j = 1; j <= 3; ++j) {
          Word child = word;
          child.push_back(j);
          std::swap(word, child);
          walk(remaining - 1);
          std::swap(word, child);
        }
      }
    } rec{dev, Word{}};
    rec.walk(6);
    report.checks.push_back(detail::bounded_check("exact-rational-agreement", dev, 1e-12));
  }

  return report;
}

// ---------------------------------------------------------------------------
// disk suite
// ---------------------------------------------------------------------------

inline SuiteReport verify_disk(const VerifyOptions& opt) {
  SuiteReport report{"disk", {}};
  SplitMix64 rng(opt.seed ^ 0xD15Cull);

  {
    double low = 1.0;
    double high = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const DiskPoint p = boundary_point(-detail::kPi + 2.0 * detail::kPi * (i + 1) / 1000.0);
      for (int c = 0; c < 3; ++c) {
        low = std::min(low, p[c]);
        high = std::max(high, p[c]);
      }
    }
    const double dev =
        std::max(1.0 / 15.0 - low, high - 3.0 / 5.0);  // how far outside [1/15, 3/5]
    report.checks.push_back(detail::bounded_check("boundary-coordinate-range", dev, 1e-12));
  }

  {
    double dev = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double t = -detail::kPi + 2.0 * detail::kPi * rng.next_unit();
      const double back = angle(boundary_point(t));
      double d = std::abs(back - t);
      d = std::min(d, std::abs(d - 2.0 * detail::kPi));  // wrap at the cut
      dev = std::max(dev, d);
    }
    report.checks.push_back(detail::bounded_check("angle-roundtrip", dev, 1e-12));
  }

  {
    double dev = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double t = -detail::kPi + 2.0 * detail::kPi * (i + 0.5) / 1000.0;
      dev = std::max(dev, std::abs(radius(boundary_point(t)) - kDiskRadius));
    }
    report.checks.push_back(detail::bounded_check("boundary-radius", dev, 1e-15));
  }

  {
    double dev = 0.0;
    const PlanePoint fixed = b_of_c(PlanePoint(kBarycenter));
    dev = std::max(dev, detail::max_abs_diff(fixed.coords(), kBarycenter));
    for (int i = 0; i < 200; ++i) {
      const DiskPoint p = detail::random_disk_point(rng);
      const PlanePoint image = b_of_c(p.plane());
      const double sum = image[0] + image[1] + image[2];
      dev = std::max(dev, std::abs(sum - 1.0));
    }
    report.checks.push_back(detail::bounded_check("affine-b-map", dev, 1e-13));
  }

  {
    double dev = 0.0;
    for (int i = 0; i < 500; ++i) {
      const double t = -detail::kPi + 2.0 * detail::kPi * rng.next_unit();
      dev = std::max(dev, detail::max_abs_diff(boundary_point(t).coords(),
                                               boundary_point(t + 2.0 * detail::kPi).coords()));
    }
    report.checks.push_back(detail::bounded_check("phi-periodicity", dev, 1e-12));
  }

  return report;
}

// ---------------------------------------------------------------------------
// dynamics suite
// ---------------------------------------------------------------------------

inline SuiteReport verify_dynamics(const VerifyOptions& opt) {
  SuiteReport report{"dynamics", {}};
  SplitMix64 rng(opt.seed ^ 0xD1Aull);

  {
    const DiskPoint c1 = child_ratio(1, disk_center());
    const DiskPoint c2 = child_ratio(2, disk_center());
    const DiskPoint c3 = child_ratio(3, disk_center());
    const Vec3 expect = {41.0 / 75.0, 17.0 / 75.0, 17.0 / 75.0};
    const double dev = std::max({detail::max_abs_diff(c1.coords(), expect),
                                 detail::max_abs_diff(c2.coords(), cycle_back(expect)),
                                 detail::max_abs_diff(c3.coords(), cycle(expect))});
    report.checks.push_back(detail::bounded_check("barycenter-images", dev, 1e-15));
  }

  {
    double dev = 0.0;
    const auto one = [](const DiskPoint&) { return 1.0; };
    for (int i = 0; i < 500; ++i) {
      const DiskPoint p = detail::random_disk_point(rng);
      const int n = static_cast<int>(rng.next_unit() * 5.0) + 1;
      dev = std::max(dev, std::abs(transition_power(n, one, p) - 1.0));
    }
    report.checks.push_back(detail::bounded_check("markov-property", dev, 1e-12));
  }

  {
    // Psi_1 R = R Psi_2, Psi_2 R = R Psi_3, Psi_3 R = R Psi_1 (as raw maps).
    double dev = 0.0;
    for (int i = 0; i < 200; ++i) {
      const Vec3 x = detail::random_disk_point(rng).coords();
      const Vec3 rx = cycle(x);
      dev = std::max(dev, detail::max_abs_diff(detail::ratio_map_raw(1, rx),
                                               cycle(detail::ratio_map_raw(2, x))));
      dev = std::max(dev, detail::max_abs_diff(detail::ratio_map_raw(2, rx),
                                               cycle(detail::ratio_map_raw(3, x))));
      dev = std::max(dev, detail::max_abs_diff(detail::ratio_map_raw(3, rx),
                                               cycle(detail::ratio_map_raw(1, x))));
    }
    report.checks.push_back(detail::bounded_check("rotation-equivariance", dev, 1e-14));
  }

  {
    double dev = 0.0;
    for (int i = 0; i < 300; ++i) {
      const double t = -detail::kPi + 2.0 * detail::kPi * (i + 0.5) / 300.0;
      const DiskPoint p = boundary_point(t);
      for (int j = 1; j <= 3; ++j) {
        dev = std::max(dev, std::abs(radius(child_ratio(j, p)) - kDiskRadius));
      }
    }
    report.checks.push_back(detail::bounded_check("boundary-preservation", dev, 1e-12));
  }

  {
    // theta -> angle(Psi_j(phi(theta))) strictly monotone mod 2*pi.
    bool ok = true;
    const int grid = 10000;
    for (int j = 1; j <= 3 && ok; ++j) {
      double prev = angle(child_ratio(j, boundary_point(0.0)));
      double first_sign = 0.0;
      for (int i = 1; i <= grid; ++i) {
        const double t = 2.0 * detail::kPi * i / grid;
        const double cur = angle(child_ratio(j, boundary_point(t)));
        double d = cur - prev;
        if (d <= -detail::kPi) {
          d += 2.0 * detail::kPi;
        } else if (d > detail::kPi) {
          d -= 2.0 * detail::kPi;
        }
        if (i == 1) {
          first_sign = d > 0.0 ? 1.0 : -1.0;
        } else if (d * first_sign <= 0.0) {
          ok = false;
          break;
        }
        prev = cur;
      }
    }
    report.checks.push_back({"boundary-injectivity", ok,
                             ok ? "strictly monotone on the sampled grid" : "direction reversal"});
  }

  {
    // 2*pi/3 periodicity and reflection symmetry about pi/3 of P^n g on the
    // boundary, checked numerically per n.
    double dev_period = 0.0;
    double dev_reflect = 0.0;
    for (int n = 0; n <= 3; ++n) {
      for (int i = 0; i < 60; ++i) {
        const double t = detail::kPi * (2.0 * i + 1.0) / 180.0;
        const double base = transition_power_entropy(n, boundary_point(t));
        dev_period = std::max(
            dev_period,
            std::abs(transition_power_entropy(n, boundary_point(t + 2.0 * detail::kPi / 3.0)) -
                     base));
        dev_reflect = std::max(
            dev_reflect,
            std::abs(transition_power_entropy(n, boundary_point(2.0 * detail::kPi / 3.0 - t)) -
                     base));
      }
    }
    report.checks.push_back(detail::bounded_check("boundary-periodicity", dev_period, 1e-10));
    report.checks.push_back(detail::bounded_check("reflection-symmetry", dev_reflect, 1e-10));
  }

  return report;
}

// ---------------------------------------------------------------------------
// estimates suite
// ---------------------------------------------------------------------------

inline SuiteReport verify_estimates(const VerifyOptions& opt) {
  SuiteReport report{"estimates", {}};

  {
    double dev = 0.0;
    for (int m = 1; m <= 8; ++m) {
      dev = std::max(dev, std::abs(rho_direct(m).value - rho_cesaro(m).value));
    }
    report.checks.push_back(detail::bounded_check("rho-two-route-equality", dev, 1e-10));
  }

  {
    double low = 0.0;
    const int grid = 10000;
    for (int i = 0; i <= grid; ++i) {
      const double t = (detail::kPi / 3.0) * i / grid;
      low = std::min(low, boundary_entropy_derivative(t));
    }
    const double end_dev = std::max(std::abs(boundary_entropy_derivative(0.0)),
                                    std::abs(boundary_entropy_derivative(detail::kPi / 3.0)));
    report.checks.push_back(detail::bounded_check("derivative-nonnegative", -low, 1e-12));
    report.checks.push_back(detail::bounded_check("derivative-endpoint-zeros", end_dev, 1e-9));
  }

  {
    double dev = 0.0;
    const double h = 1e-6;
    for (int i = 0; i <= 200; ++i) {
      const double t = (detail::kPi / 3.0) * i / 200.0;
      const double fd = (negative_entropy(boundary_point(t + h)) -
                         negative_entropy(boundary_point(t - h))) /
                        (2.0 * h);
      dev = std::max(dev, std::abs(fd - boundary_entropy_derivative(t)));
    }
    report.checks.push_back(detail::bounded_check("derivative-finite-difference", dev, 1e-6));
  }

  std::vector<BoundsRow> rows;
  rows.reserve(6);
  for (int n = 0; n <= 5; ++n) {
    rows.push_back(bound_scan(n, opt.scan_grid));
  }

  {
    const ClosedFormBounds cf = closed_form_bounds();
    const double dev = std::max({std::abs(rows[0].g_min - cf.g_min),
                                 std::abs(rows[0].g_max - cf.g_max),
                                 std::abs(rows[0].d_lower - cf.d_lower),
                                 std::abs(rows[0].d_upper - cf.d_upper)});
    report.checks.push_back(detail::bounded_check("scan-matches-closed-form", dev, 1e-9));
  }

  {
    bool nested = true;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      nested = nested && rows[i].g_min >= rows[i - 1].g_min && rows[i].g_max <= rows[i - 1].g_max;
    }
    report.checks.push_back({"bounds-nesting", nested,
                             nested ? "intervals nested decreasing for n = 0..5"
                                    : "nesting violated"});
  }

  {
    // rho_m <= g_max(n) for every n (rho_m increases to rho from below, and
    // rho <= g_max(n)); the lower edge g_min(0) <= rho_m needs the deepest
    // affordable m and only holds for n = 0 at feasible depth.
    const double rho12 = rho_direct(12).value;
    double dev_upper = std::numeric_limits<double>::lowest();
    for (const auto& row : rows) {
      dev_upper = std::max(dev_upper, rho12 - row.g_max);
    }
    report.checks.push_back(detail::bounded_check("rho-below-upper-bounds", dev_upper, 0.0));
    if (opt.sandwich_depth > 0) {
      const double rho_deep = rho_direct(opt.sandwich_depth).value;
      const double dev_lower = rows[0].g_min - rho_deep;
      report.checks.push_back(detail::bounded_check("rho-above-n0-lower-bound", dev_lower, 0.0));
    }
  }

  return report;
}

// ---------------------------------------------------------------------------
// chain suite
// ---------------------------------------------------------------------------

inline SuiteReport verify_chain(const VerifyOptions& opt) {
  SuiteReport report{"chain", {}};

  {
    std::vector<double> a;
    std::vector<double> b;
    const std::array<int, 2> cps = {5, 20};
    sample_paths(20, 50, opt.seed, cps, [&a](const ChainSample& s) {
      a.push_back(s.r);
      a.push_back(s.theta);
    });
    sample_paths(20, 50, opt.seed, cps, [&b](const ChainSample& s) {
      b.push_back(s.r);
      b.push_back(s.theta);
    });
    const bool ok = a == b && !a.empty();
    report.checks.push_back({"substream-determinism", ok,
                             ok ? "identical streams for identical seeds" : "streams differ"});
  }

  {
    double worst = 0.0;
    for (int path = 0; path < 200; ++path) {
      SplitMix64 rng(stream_seed(opt.seed, static_cast<std::uint64_t>(path)));
      DiskPoint p = disk_center();
      for (int m = 0; m < 300; ++m) {
        p = chain_step(p, rng);
        worst = std::max(worst, radius(p) - kDiskRadius);
      }
    }
    report.checks.push_back(detail::bounded_check("paths-stay-in-disk", worst, 1e-12));
  }

  {
    // Exact-law weights against the energy-matrix masses, atom by atom.
    double dev = 0.0;
    for (int m = 0; m <= 6; ++m) {
      const DiscreteLaw law = exact_law(m);
      std::size_t index = 0;
      double dev_m = 0.0;
      enumerate_masses(m, [&](std::span<const int>, double mass) {
        dev_m = std::max(dev_m, std::abs(law.weights[index] - mass));
        ++index;
      });
      KahanSum total;
      for (double w : law.weights) {
        total.add(w);
      }
      dev = std::max({dev, dev_m, std::abs(total.value() - 1.0)});
    }
    report.checks.push_back(detail::bounded_check("exact-law-matches-masses", dev, 1e-12));
  }

  {
    bool monotone = true;
    double prev = 0.0;
    double last = 0.0;
    for (int m = 1; m <= 10; ++m) {
      last = mean_square_radius(m);
      monotone = monotone && last >= prev;
      prev = last;
    }
    const bool level = last > 0.95 * kDiskRadiusSq;
    std::ostringstream os;
    os << "m=10 mean r^2 = " << last << " (floor " << 0.95 * kDiskRadiusSq << ")";
    report.checks.push_back({"radial-concentration", monotone && level, os.str()});
  }

  {
    const std::vector<long long> counts = simulated_word_counts(3, opt.chain_paths, opt.seed);
    const FitReport fit = chi_square_fit(counts, exact_law(3).weights);
    const std::vector<double> uniform(counts.size(), 1.0 / static_cast<double>(counts.size()));
    const FitReport control = chi_square_fit(counts, uniform);
    std::ostringstream os;
    os << "fit p = " << fit.p_value << ", negative control p = " << control.p_value;
    report.checks.push_back(
        {"chain-law-chi-square", fit.p_value > 1e-3 && control.p_value < 1e-6, os.str()});
  }

  {
    // The uniform-word ensemble is invariant under the cyclic relabeling of
    // symbols, so its angles shift by a fixed multiple of 2*pi/3.
    double dev = 0.0;
    double shift = 0.0;
    bool first = true;
    std::vector<double> base;
    uniform_word_law_exhaustive(5, [&base](double, double theta) { base.push_back(theta); });
    std::size_t index = 0;
    struct Rec {
      std::vector<double>& base;
      std::size_t& index;
      double& dev;
      double& shift;
      bool& first;
      void walk(const DiskPoint& p, int remaining) {
        if (remaining == 0) {
          const double rotated = angle(DiskPoint(PlanePoint(cycle(p.coords()))));
          double d = rotated - base[index];
          while (d <= -detail::kPi) {
            d += 2.0 * detail::kPi;
          }
          while (d > detail::kPi) {
            d -= 2.0 * detail::kPi;
          }
          if (first) {
            shift = d;
            first = false;
          }
          double err = std::abs(d - shift);
          err = std::min(err, std::abs(err - 2.0 * detail::kPi));
          dev = std::max(dev, err);
          ++index;
          return;
        }
        for (int j = 1; j <= 3; ++j) {
          walk(child_ratio(j, p), remaining - 1);
        }
      }
    } rec{base, index, dev, shift, first};
    rec.walk(disk_center(), 5);
    const bool magnitude_ok = std::abs(std::abs(shift) - 2.0 * detail::kPi / 3.0) < 1e-12;
    report.checks.push_back({"angle-rotation-equivariance", dev <= 1e-12 && magnitude_ok,
                             detail::describe(dev, 1e-12)});
  }

  return report;
}

[[nodiscard]] inline std::vector<SuiteReport> run_all_checks(const VerifyOptions& opt = {}) {
  return {verify_gasket(opt), verify_disk(opt), verify_dynamics(opt), verify_estimates(opt),
          verify_chain(opt)};
}

[[nodiscard]] inline bool all_passed(const std::vector<SuiteReport>& reports) {
  for (const auto& r : reports) {
    if (r.failed() > 0) {
      return false;
    }
  }
  return true;
}

}  // namespace kusuoka
