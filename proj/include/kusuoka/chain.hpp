#pragma once

// Seeded simulation of the disk-valued Markov chain X_{m+1} = Psi_J(X_m),
// P(J = j | X_m = x) = x_j, its exact small-depth laws, the uniform-word
// ensemble, and goodness-of-fit machinery.

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "kusuoka/dynamics.hpp"
#include "kusuoka/gasket.hpp"

namespace kusuoka {

inline constexpr int kMaxExactLawDepth = 10;
inline constexpr int kMaxExhaustiveWordDepth = 12;
inline constexpr int kMaxRadialMomentDepth = 14;

/// SplitMix64 (Steele-Lea-Flood, "Fast splittable pseudorandom number
/// generators", OOPSLA 2014): a Weyl sequence with golden-ratio increment,
/// finalized by the Stafford mix13 permutation. Tiny state, full 2^64
/// period, bit-reproducible on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) from the top 53 bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Independent substream seed for a path/sample index, SplittableRandom
/// style: the mix of seed advanced by (index+1) golden-ratio steps. Paths
/// then never share output positions.
[[nodiscard]] inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Inverse-CDF branch pick over the cumulative sums x1, x1+x2, 1 in
/// coordinate order.
[[nodiscard]] inline int sample_branch(const Vec3& x, double u) {
  if (u < x[0]) {
    return 1;
  }
  return u < x[0] + x[1] ? 2 : 3;
}

/// One chain transition; deterministic given the generator state.
[[nodiscard]] inline DiskPoint chain_step(const DiskPoint& p, SplitMix64& rng) {
  return child_ratio(sample_branch(p.coords(), rng.next_unit()), p);
}

struct ChainSample {
  long long path;
  int step;
  DiskPoint point;
  double r;
  double theta;
};

/// Runs n_paths independent paths from the barycenter for `steps` steps,
/// emitting sink(ChainSample) at every checkpoint step (checkpoints must be
/// sorted ascending). Path i uses substream stream_seed(seed, i).
template <class F>
void sample_paths(int steps, long long n_paths, std::uint64_t seed,
                  std::span<const int> checkpoints, F&& sink) {
  if (steps < 0 || n_paths < 0) {
    throw std::invalid_argument("sample_paths: negative steps or path count");
  }
  for (long long i = 0; i < n_paths; ++i) {
    SplitMix64 rng(stream_seed(seed, static_cast<std::uint64_t>(i)));
    DiskPoint p = disk_center();
    std::size_t next_cp = 0;
    for (int m = 0; m <= steps; ++m) {
      if (next_cp < checkpoints.size() && checkpoints[next_cp] == m) {
        sink(ChainSample{i, m, p, radius(p), angle(p)});
        ++next_cp;
      }
      if (m < steps) {
        p = chain_step(p, rng);
      }
    }
  }
}

/// Word-indexed branch counts of X_m over n_paths simulated paths; index is
/// the base-3 value of the address (lexicographic order, digit w1 most
/// significant).
[[nodiscard]] inline std::vector<long long> simulated_word_counts(int m, long long n_paths,
                                                                  std::uint64_t seed) {
  if (m < 0 || m > kMaxExactLawDepth) {
    throw std::invalid_argument("simulated_word_counts: depth out of range");
  }
  std::vector<long long> counts(static_cast<std::size_t>(std::pow(3.0, m)), 0);
  for (long long i = 0; i < n_paths; ++i) {
    SplitMix64 rng(stream_seed(seed, static_cast<std::uint64_t>(i)));
    DiskPoint p = disk_center();
    std::size_t index = 0;
    for (int k = 0; k < m; ++k) {
      const int j = sample_branch(p.coords(), rng.next_unit());
      index = index * 3 + static_cast<std::size_t>(j - 1);
      p = child_ratio(j, p);
    }
    ++counts[index];
  }
  return counts;
}

/// Atoms and weights of the exact law of X_m: (c^(w), nu(K_w)) over all
/// |w| = m in lexicographic order, built by ratio-map recursion carrying
/// masses.
struct DiscreteLaw {
  std::vector<DiskPoint> atoms;
  std::vector<double> weights;
};

namespace detail {

inline void exact_law_rec(const DiskPoint& p, double mass, int remaining, DiscreteLaw& law) {
  if (remaining == 0) {
    law.atoms.push_back(p);
    law.weights.push_back(mass);
    return;
  }
  const Vec3& x = p.coords();
  for (int j = 1; j <= 3; ++j) {
    exact_law_rec(child_ratio(j, p), mass * x[j - 1], remaining - 1, law);
  }
}

}  // namespace detail

[[nodiscard]] inline DiscreteLaw exact_law(int m) {
  if (m < 0 || m > kMaxExactLawDepth) {
    throw std::invalid_argument("exact_law: depth out of range");
  }
  DiscreteLaw law;
  const auto count = static_cast<std::size_t>(std::pow(3.0, m));
  law.atoms.reserve(count);
  law.weights.reserve(count);
  detail::exact_law_rec(disk_center(), 1.0, m, law);
  return law;
}

/// nu-weighted mean of r^2 over the exact law at depth m; approaches 8/75
/// from below as m grows (radial concentration).
[[nodiscard]] inline double mean_square_radius(int m) {
  if (m < 0 || m > kMaxRadialMomentDepth) {
    throw std::invalid_argument("mean_square_radius: depth out of range");
  }
  KahanSum acc;
  struct Rec {
    KahanSum& acc;
    void walk(const DiskPoint& p, double mass, int remaining) {
      if (remaining == 0) {
        const double r = radius(p);
        acc.add(mass * r * r);
        return;
      }
      const Vec3& x = p.coords();
      for (int j = 1; j <= 3; ++j) {
        walk(child_ratio(j, p), mass * x[j - 1], remaining - 1);
      }
    }
  } rec{acc};
  rec.walk(disk_center(), 1.0, m);
  return acc.value();
}

/// (r, theta) of c^(w) for every w in W_m, uniform-word ensemble, exhaustive
/// lexicographic sweep. sink(double r, double theta).
template <class F>
void uniform_word_law_exhaustive(int m, F&& sink) {
  if (m < 0 || m > kMaxExhaustiveWordDepth) {
    throw std::invalid_argument("uniform_word_law_exhaustive: depth out of range");
  }
  struct Rec {
    F& sink;
    void walk(const DiskPoint& p, int remaining) {
      if (remaining == 0) {
        sink(radius(p), angle(p));
        return;
      }
      for (int j = 1; j <= 3; ++j) {
        walk(child_ratio(j, p), remaining - 1);
      }
    }
  } rec{sink};
  rec.walk(disk_center(), m);
}

/// Same ensemble, sampled: n words drawn uniformly from W_m, one substream
/// per sample.
template <class F>
void uniform_word_law_sampled(int m, long long n, std::uint64_t seed, F&& sink) {
  if (m < 0) {
    throw std::invalid_argument("uniform_word_law_sampled: negative depth");
  }
  for (long long i = 0; i < n; ++i) {
    SplitMix64 rng(stream_seed(seed, static_cast<std::uint64_t>(i)));
    DiskPoint p = disk_center();
    for (int k = 0; k < m; ++k) {
      const int j = 1 + static_cast<int>(rng.next_unit() * 3.0);
      p = child_ratio(j > 3 ? 3 : j, p);
    }
    sink(radius(p), angle(p));
  }
}

/// Pearson chi-square report of observed counts against expected weights.
struct FitReport {
  double statistic;
  int dof;
  double p_value;
  long long n;
};

[[nodiscard]] inline FitReport chi_square_fit(const std::vector<long long>& counts,
                                              const std::vector<double>& expected_weights) {
  if (counts.size() != expected_weights.size() || counts.empty()) {
    throw std::invalid_argument("chi_square_fit: size mismatch");
  }
  long long n = 0;
  for (long long c : counts) {
    n += c;
  }
  KahanSum stat;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double expected = expected_weights[i] * static_cast<double>(n);
    if (!(expected > 0.0)) {
      throw std::invalid_argument("chi_square_fit: expected weights must be positive");
    }
    const double diff = static_cast<double>(counts[i]) - expected;
    stat.add(diff * diff / expected);
  }
  FitReport report{};
  report.statistic = stat.value();
  report.dof = static_cast<int>(counts.size()) - 1;
  report.n = n;
  if (report.dof == 0) {
    report.p_value = 1.0;  // a single category always matches exactly
    return report;
  }
  const boost::math::chi_squared_distribution<double> dist(report.dof);
  report.p_value = boost::math::cdf(boost::math::complement(dist, report.statistic));
  return report;
}

/// Simulates n_paths paths to depth m and tests the word-indexed counts
/// against the exact cell masses (atoms identified by address, not geometry).
[[nodiscard]] inline FitReport empirical_vs_exact(int m, long long n_paths, std::uint64_t seed) {
  const std::vector<long long> counts = simulated_word_counts(m, n_paths, seed);
  return chi_square_fit(counts, exact_law(m).weights);
}

/// Fixed-range bin counter used by the histogram exports.
class Histogram {
 public:
  Histogram(double lo, double hi, int bins) : lo_(lo), hi_(hi), counts_(bins, 0) {
    if (!(hi > lo) || bins < 1) {
      throw std::invalid_argument("Histogram: empty range or no bins");
    }
  }

  void add(double x) {
    const auto bins = static_cast<long long>(counts_.size());
    auto i = static_cast<long long>((x - lo_) / (hi_ - lo_) * static_cast<double>(bins));
    if (i < 0) {
      i = 0;
    }
    if (i >= bins) {
      i = bins - 1;  // right edge inclusive
    }
    ++counts_[static_cast<std::size_t>(i)];
  }

  [[nodiscard]] double bin_lo(int i) const {
    return lo_ + (hi_ - lo_) * i / static_cast<double>(counts_.size());
  }
  [[nodiscard]] double bin_hi(int i) const {
    return lo_ + (hi_ - lo_) * (i + 1) / static_cast<double>(counts_.size());
  }
  [[nodiscard]] const std::vector<long long>& counts() const { return counts_; }
  [[nodiscard]] long long total() const {
    long long t = 0;
    for (long long c : counts_) {
      t += c;
    }
    return t;
  }

 private:
  double lo_;
  double hi_;
  std::vector<long long> counts_;
};

}  // namespace kusuoka
