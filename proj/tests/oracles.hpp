#pragma once

// Test-only oracles, written independently of the library kernels.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "aq/matrix.hpp"

namespace oracle {

using aq::BigInt;
using aq::Int;
using aq::Matrix;

inline BigInt big_gcd(BigInt a, BigInt b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    BigInt t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Laplace expansion; only for the tiny matrices used in tests.
inline BigInt minor_det(const Matrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  const std::size_t k = rows.size();
  if (k == 0) return 1;
  if (k == 1) return m(rows[0], cols[0]);
  BigInt total = 0;
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<std::size_t> sub_cols;
    for (std::size_t c = 0; c < k; ++c)
      if (c != j) sub_cols.push_back(cols[c]);
    std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
    BigInt term = BigInt(m(rows[0], cols[j])) * minor_det(m, sub_rows, sub_cols);
    total += (j % 2 == 0) ? term : BigInt(-term);
  }
  return total;
}

inline void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
}

// Invariant factors from determinantal divisors: d_k = gcd of k x k minors,
// invariant factor k = d_k / d_{k-1}. Nonzero factors only.
inline std::vector<BigInt> invariant_factors(const Matrix& m) {
  std::vector<BigInt> out;
  BigInt prev = 1;
  const std::size_t kmax = std::min(m.rows(), m.cols());
  for (std::size_t k = 1; k <= kmax; ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    subsets(m.rows(), k, rs);
    subsets(m.cols(), k, cs);
    BigInt g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) g = big_gcd(g, minor_det(m, r, c));
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

inline Matrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, Int bound) {
  std::uniform_int_distribution<Int> dist(-bound, bound);
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = dist(rng);
  return m;
}

// ker(y) / im(x) inside Z/b (b == 0 for Z), as a cyclic order (0 for Z).
inline Int cyclic_homology(Int b, Int x, Int y) {
  if (b == 0) {
    if (y != 0) return 1;
    return x < 0 ? -x : x;
  }
  const Int ker = std::gcd(y, b), im = b / std::gcd(x, b);
  return ker / im;
}

// Cyclic R-modules R/a for R = Z (m == 0) or Z/m (a | m), as abelian groups
// Z/a with a == 0 meaning Z. R/a is free when a == m.
// Multiplier of the k-th map (k >= 1) of its minimal resolution: Z --a--> Z
// over Z, and the periodic R --a--> R --m/a--> R --a--> ... over Z/m.
inline Int resolution_map(Int m, Int a, int k) {
  if (m == 0) return k == 1 ? a : 0;
  return k % 2 == 1 ? a : m / a;
}

// Ext^n_R(R/a, R/b) and Tor_n^R(R/a, R/b) as cyclic orders (0 means Z, 1 the
// zero group): Hom and tensor of that resolution with Z/b.
inline Int ext_cyclic(Int m, Int a, Int b, int n) {
  if (a == m) return n == 0 ? b : 1;
  if (m == 0 && n >= 2) return 1;
  const Int x_in = n == 0 ? 0 : resolution_map(m, a, n);
  return cyclic_homology(b, x_in, resolution_map(m, a, n + 1));
}
inline Int tor_cyclic(Int m, Int a, Int b, int n) {
  if (a == m) return n == 0 ? b : 1;
  if (m == 0 && n >= 2) return 1;
  const Int x_out = n == 0 ? 0 : resolution_map(m, a, n);
  return cyclic_homology(b, resolution_map(m, a, n + 1), x_out);
}

// H_i of a free Z-complex (d[k] : C_k -> C_{k-1}, d[0] unused) as cyclic
// orders: the rank count from matrix ranks, torsion from invariant factors.
inline std::vector<Int> free_complex_homology(const std::vector<std::size_t>& ranks, const std::vector<Matrix>& d,
                                              std::size_t i) {
  if (i >= ranks.size()) return {};
  auto rank = [&](std::size_t k) { return k == 0 || k >= d.size() ? std::size_t{0} : invariant_factors(d[k]).size(); };
  std::vector<Int> out(ranks[i] - rank(i) - rank(i + 1), 0);
  if (i + 1 < d.size())
    for (const BigInt& f : invariant_factors(d[i + 1]))
      if (f > 1) out.push_back(static_cast<Int>(f));
  return out;
}

// Künneth over Z from cyclic decompositions h[i] of each factor:
// H_n = sum of H_i ⊗ H_j (i + j = n) and Tor(H_i, H_j) (i + j = n - 1).
inline std::vector<Int> kunneth(const std::vector<std::vector<Int>>& ha, const std::vector<std::vector<Int>>& hb,
                                std::size_t n) {
  std::vector<Int> out;
  for (std::size_t i = 0; i <= n && i < ha.size(); ++i)
    for (std::size_t j = 0; i + j <= n && j < hb.size(); ++j)
      for (Int a : ha[i])
        for (Int b : hb[j]) {
          if (i + j == n) out.push_back(std::gcd(a, b));
          else if (i + j + 1 == n && a != 0 && b != 0) out.push_back(std::gcd(a, b));
        }
  return out;
}

}  // namespace oracle
