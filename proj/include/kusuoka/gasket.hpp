#pragma once

// Combinatorics and energy of the level-0 triangle graph, the harmonic
// extension matrices, and the Kusuoka measure's cell masses and ratio
// vectors, all driven by products of 3x3 matrices along cell addresses.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kusuoka/disk.hpp"
#include "kusuoka/numeric.hpp"

namespace kusuoka {

/// Energy renormalization factor of the gasket.
inline constexpr double kEnergyScale = 5.0 / 3.0;

/// Full-enumeration depth cap (3^18 ~ 3.9e8 cells).
inline constexpr int kMaxEnumerationDepth = 18;

/// Depth cap of the exact-rational path; keeps every intermediate integer
/// below 2^63 (|B_w u|_inf <= 2*5^n, so the energy numerators stay <= 48*25^n).
inline constexpr int kMaxExactDepth = 11;

/// Cell address: a finite string over {1,2,3}. The empty word names the
/// whole gasket.
class Word {
 public:
  Word() = default;

  explicit Word(std::vector<int> symbols) {
    symbols_.reserve(symbols.size());
    for (int s : symbols) {
      push_back(s);
    }
  }

  /// Parses a textual address such as "132". Empty text is the empty word.
  static Word parse(std::string_view text) {
    Word w;
    for (char ch : text) {
      if (ch < '1' || ch > '3') {
        throw std::invalid_argument("Word: symbols must be in {1,2,3}");
      }
      w.push_back(ch - '0');
    }
    return w;
  }

  void push_back(int symbol) {
    if (symbol < 1 || symbol > 3) {
      throw std::invalid_argument("Word: symbols must be in {1,2,3}");
    }
    symbols_.push_back(static_cast<std::uint8_t>(symbol));
  }

  void pop_back() { symbols_.pop_back(); }

  [[nodiscard]] std::size_t size() const { return symbols_.size(); }
  [[nodiscard]] bool empty() const { return symbols_.empty(); }
  [[nodiscard]] int operator[](std::size_t i) const { return symbols_[i]; }

  [[nodiscard]] std::string str() const {
    std::string out;
    out.reserve(symbols_.size());
    for (auto s : symbols_) {
      out.push_back(static_cast<char>('0' + s));
    }
    return out;
  }

  [[nodiscard]] auto begin() const { return symbols_.begin(); }
  [[nodiscard]] auto end() const { return symbols_.end(); }

 private:
  std::vector<std::uint8_t> symbols_;
};

/// Quadratic form of the level-0 graph energy: v^T M v = Q0(v).
inline constexpr Mat3 kEnergyMatrix = {{{2.0, -1.0, -1.0},
                                        {-1.0, 2.0, -1.0},
                                        {-1.0, -1.0, 2.0}}};

/// Q0(v): sum of squared differences over the three edges of the triangle.
[[nodiscard]] constexpr double graph_energy(const Vec3& v) {
  const double d01 = v[0] - v[1];
  const double d12 = v[1] - v[2];
  const double d02 = v[0] - v[2];
  return d01 * d01 + d12 * d12 + d02 * d02;
}

/// Polarization of Q0: bilinear form u^T M v, so energy_inner(v, v) == Q0(v).
[[nodiscard]] constexpr double energy_inner(const Vec3& u, const Vec3& v) {
  return dot(u, mat_vec(kEnergyMatrix, v));
}

namespace detail {
inline constexpr Mat3 kA1 = {{{1.0, 0.0, 0.0}, {0.4, 0.4, 0.2}, {0.4, 0.2, 0.4}}};
inline constexpr Mat3 kA2 = {{{0.4, 0.4, 0.2}, {0.0, 1.0, 0.0}, {0.2, 0.4, 0.4}}};
inline constexpr Mat3 kA3 = {{{0.4, 0.2, 0.4}, {0.2, 0.4, 0.4}, {0.0, 0.0, 1.0}}};
}  // namespace detail

/// A_i maps boundary values of a harmonic function h to boundary values of
/// h restricted to sub-triangle i: (A_i v)_i = v_i and, for j != i,
/// (A_i v)_j = (2 v_i + 2 v_j + v_k)/5 with k the remaining vertex. These are
/// the unique Q1-minimizing midpoint values; the tests re-derive them from
/// the stationarity system.
[[nodiscard]] constexpr const Mat3& harmonic_matrix(int i) {
  switch (i) {
    case 1:
      return detail::kA1;
    case 2:
      return detail::kA2;
    case 3:
      return detail::kA3;
    default:
      throw std::invalid_argument("harmonic_matrix: symbol must be in {1,2,3}");
  }
}

/// Boundary values of an energy-orthonormal harmonic pair,
/// 2 E(h_i, h_j) = delta_ij with E(h) = Q0 on harmonic functions.
struct HarmonicPair {
  Vec3 first;
  Vec3 second;
};

/// The fixed default pair; any energy-orthogonal rotation of it is equally
/// valid and must give the same measure (tested).
[[nodiscard]] inline HarmonicPair orthonormal_pair() {
  const double a = 1.0 / (2.0 * std::sqrt(3.0));
  const double b = 1.0 / 6.0;
  return {{a, 0.0, -a}, {-b, 2.0 * b, -b}};
}

/// Pair boundary values pulled back to a cell, with the (5/3)^depth energy
/// weight folded in. Children reuse the parent's product: one matrix apply
/// per generator per step. The stored vectors are the zero-mean
/// representatives: constants are A_i-invariant and energy-null, and keeping
/// the mean out preserves relative precision while the harmonic contraction
/// squeezes the values together.
struct CellState {
  Vec3 u1;
  Vec3 u2;
  double scale;  // (5/3)^depth
};

namespace detail {
[[nodiscard]] constexpr Vec3 drop_mean(const Vec3& v) {
  const double mean = (v[0] + v[1] + v[2]) / 3.0;
  return {v[0] - mean, v[1] - mean, v[2] - mean};
}
}  // namespace detail

[[nodiscard]] inline CellState root_cell(const HarmonicPair& pair = orthonormal_pair()) {
  return {detail::drop_mean(pair.first), detail::drop_mean(pair.second), 1.0};
}

[[nodiscard]] inline CellState child_cell(const CellState& cell, int symbol) {
  const Mat3& a = harmonic_matrix(symbol);
  return {detail::drop_mean(mat_vec(a, cell.u1)), detail::drop_mean(mat_vec(a, cell.u2)),
          cell.scale * kEnergyScale};
}

[[nodiscard]] inline double cell_state_mass(const CellState& cell) {
  return cell.scale * (graph_energy(cell.u1) + graph_energy(cell.u2));
}

/// nu(K_w). The matrix product is applied left symbol first (psi_w composes
/// the leftmost contraction outermost, so the pullback hits it first).
[[nodiscard]] inline double cell_mass(const Word& w,
                                      const HarmonicPair& pair = orthonormal_pair()) {
  CellState cell = root_cell(pair);
  for (int s : w) {
    cell = child_cell(cell, s);
  }
  return cell_state_mass(cell);
}

/// Ratio vector c^(w) = (nu(K_w1), nu(K_w2), nu(K_w3)) / nu(K_w).
[[nodiscard]] inline PlanePoint cell_ratio(const Word& w,
                                           const HarmonicPair& pair = orthonormal_pair()) {
  CellState cell = root_cell(pair);
  for (int s : w) {
    cell = child_cell(cell, s);
  }
  const double total = cell_state_mass(cell);
  return PlanePoint({cell_state_mass(child_cell(cell, 1)) / total,
                     cell_state_mass(child_cell(cell, 2)) / total,
                     cell_state_mass(child_cell(cell, 3)) / total});
}

namespace detail {

template <class F>
void enumerate_cells(const CellState& cell, int remaining, std::span<int> word,
                     std::size_t depth, F&& sink) {
  if (remaining == 0) {
    sink(std::span<const int>(word.data(), depth), cell_state_mass(cell));
    return;
  }
  for (int s = 1; s <= 3; ++s) {
    word[depth] = s;
    enumerate_cells(child_cell(cell, s), remaining - 1, word, depth + 1, sink);
  }
}

}  // namespace detail

/// Streams all (w, nu(K_w)) with |w| = depth in lexicographic order.
/// sink(std::span<const int> word, double mass).
template <class F>
void enumerate_masses(int depth, F&& sink,
                      const HarmonicPair& pair = orthonormal_pair()) {
  if (depth < 0 || depth > kMaxEnumerationDepth) {
    throw std::invalid_argument("enumerate_masses: depth out of range");
  }
  std::array<int, kMaxEnumerationDepth> word{};
  detail::enumerate_cells(root_cell(pair), depth, word, 0, sink);
}

/// Reduced fraction num/den.
struct Rational {
  long long num;
  long long den;

  friend bool operator==(const Rational&, const Rational&) = default;
};

namespace detail {

// 5 * A_i: integer matrices of the exact path.
inline constexpr std::array<std::array<long long, 3>, 3> kB1 = {{{5, 0, 0}, {2, 2, 1}, {2, 1, 2}}};
inline constexpr std::array<std::array<long long, 3>, 3> kB2 = {{{2, 2, 1}, {0, 5, 0}, {1, 2, 2}}};
inline constexpr std::array<std::array<long long, 3>, 3> kB3 = {{{2, 1, 2}, {1, 2, 2}, {0, 0, 5}}};

inline std::array<long long, 3> b_apply(int symbol, const std::array<long long, 3>& u) {
  const auto& b = symbol == 1 ? kB1 : (symbol == 2 ? kB2 : kB3);
  return {b[0][0] * u[0] + b[0][1] * u[1] + b[0][2] * u[2],
          b[1][0] * u[0] + b[1][1] * u[1] + b[1][2] * u[2],
          b[2][0] * u[0] + b[2][1] * u[1] + b[2][2] * u[2]};
}

inline long long q0_int(const std::array<long long, 3>& u) {
  const long long d01 = u[0] - u[1];
  const long long d12 = u[1] - u[2];
  const long long d02 = u[0] - u[2];
  return d01 * d01 + d12 * d12 + d02 * d02;
}

}  // namespace detail

/// Exact nu(K_w) in integer arithmetic. With B_i = 5 A_i and the unscaled
/// basis vectors (1,0,-1), (-1,2,-1), the mass telescopes to
/// (3 q1 + q2) / (36 * 15^n) where q_i = Q0(B_w u_i).
[[nodiscard]] inline Rational exact_cell_mass(const Word& w) {
  if (w.size() > static_cast<std::size_t>(kMaxExactDepth)) {
    throw std::invalid_argument("exact_cell_mass: depth exceeds exact-arithmetic cap");
  }
  std::array<long long, 3> u1 = {1, 0, -1};
  std::array<long long, 3> u2 = {-1, 2, -1};
  long long den = 36;
  for (int s : w) {
    u1 = detail::b_apply(s, u1);
    u2 = detail::b_apply(s, u2);
    den *= 15;
  }
  const long long num = 3 * detail::q0_int(u1) + detail::q0_int(u2);
  const long long g = std::gcd(num, den);
  return {num / g, den / g};
}

}  // namespace kusuoka
