#include "aq/matrix.hpp"

#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace aq {

using detail::abs_value;
using detail::checked_add;
using detail::checked_mul;
using detail::checked_sub;
using detail::floor_div;

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error("matrix product: dimension mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Int x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (b(k, j) != 0) c(i, j) = checked_add(c(i, j), checked_mul(x, b(k, j)));
    }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error("matrix sum: dimension mismatch");
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = checked_add(a(i, j), b(i, j));
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) { return a + scaled(b, -1); }

Matrix scaled(const Matrix& a, Int k) {
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = checked_mul(a(i, j), k);
  return c;
}

Vector operator*(const Matrix& a, const Vector& v) {
  if (a.cols() != v.size()) throw Error("matrix-vector product: dimension mismatch");
  Vector out(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0 && v[j] != 0) out[i] = checked_add(out[i], checked_mul(a(i, j), v[j]));
  return out;
}

Matrix hconcat(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw Error("hconcat: row mismatch");
  Matrix c(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
  }
  return c;
}

Matrix vconcat(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw Error("vconcat: column mismatch");
  Matrix c(a.rows() + b.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) c(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i) c(a.rows() + i, j) = b(i, j);
  }
  return c;
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) c(a.rows() + i, a.cols() + j) = b(i, j);
  return c;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          c(i * b.rows() + k, j * b.cols() + l) = checked_mul(a(i, j), b(k, l));
    }
  return c;
}

Matrix select_rows(const Matrix& a, const std::vector<std::size_t>& rows) {
  Matrix c(rows.size(), a.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(rows[i], j);
  return c;
}

Matrix select_cols(const Matrix& a, const std::vector<std::size_t>& cols) {
  Matrix c(a.rows(), cols.size());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) c(i, j) = a(i, cols[j]);
  return c;
}

Matrix from_columns(std::size_t rows, const std::vector<Vector>& cols) {
  Matrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw Error("from_columns: length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

BigMatrix to_big(const Matrix& m) {
  BigMatrix b(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) b(i, j) = m(i, j);
  return b;
}

Matrix from_big(const BigMatrix& m) {
  Matrix r(m.rows(), m.cols());
  const BigInt lo = std::numeric_limits<Int>::min();
  const BigInt hi = std::numeric_limits<Int>::max();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) < lo || m(i, j) > hi) throw OverflowError();
      r(i, j) = static_cast<Int>(m(i, j));
    }
  return r;
}

std::string to_string(const Matrix& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

namespace {

template <typename T>
struct Reducer {
  BasicMatrix<T> a;
  BasicMatrix<T> u;
  BasicMatrix<T> v;
  BasicMatrix<T> uinv;
  bool track;

  void row_add(std::size_t dst, std::size_t src, const T& k) {
    a.add_row(dst, src, k);
    if (track) {
      u.add_row(dst, src, k);
      uinv.add_col(src, dst, checked_sub(T(0), k));
    }
  }
  void col_add(std::size_t dst, std::size_t src, const T& k) {
    a.add_col(dst, src, k);
    if (track) v.add_col(dst, src, k);
  }
  void row_swap(std::size_t x, std::size_t y) {
    a.swap_rows(x, y);
    if (track) {
      u.swap_rows(x, y);
      uinv.swap_cols(x, y);
    }
  }
  void col_swap(std::size_t x, std::size_t y) {
    a.swap_cols(x, y);
    if (track) v.swap_cols(x, y);
  }
  void row_negate(std::size_t r) {
    a.negate_row(r);
    if (track) {
      u.negate_row(r);
      uinv.negate_col(r);
    }
  }

  std::size_t run() {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    std::size_t t = 0;
    for (; t < m && t < n; ++t) {
      // smallest nonzero entry of the trailing block becomes the pivot
      bool found = false;
      std::size_t pi = t, pj = t;
      T best = 0;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (a(i, j) != 0 && (!found || abs_value(a(i, j)) < best)) {
            found = true;
            best = abs_value(a(i, j));
            pi = i;
            pj = j;
          }
      if (!found) break;
      row_swap(t, pi);
      col_swap(t, pj);
      for (;;) {
        bool clean = true;
        for (std::size_t i = t + 1; i < m; ++i)
          if (a(i, t) != 0) {
            T q = floor_div(a(i, t), a(t, t));
            row_add(i, t, checked_sub(T(0), q));
            if (a(i, t) != 0) clean = false;
          }
        for (std::size_t j = t + 1; j < n; ++j)
          if (a(t, j) != 0) {
            T q = floor_div(a(t, j), a(t, t));
            col_add(j, t, checked_sub(T(0), q));
            if (a(t, j) != 0) clean = false;
          }
        if (!clean) {
          // bring the smallest leftover of row/column t into the pivot
          T small = abs_value(a(t, t));
          std::size_t si = t, sj = t;
          for (std::size_t i = t + 1; i < m; ++i)
            if (a(i, t) != 0 && abs_value(a(i, t)) < small) {
              small = abs_value(a(i, t));
              si = i;
              sj = t;
            }
          for (std::size_t j = t + 1; j < n; ++j)
            if (a(t, j) != 0 && abs_value(a(t, j)) < small) {
              small = abs_value(a(t, j));
              si = t;
              sj = j;
            }
          row_swap(t, si);
          col_swap(t, sj);
          continue;
        }
        bool divisible = true;
        for (std::size_t i = t + 1; i < m && divisible; ++i)
          for (std::size_t j = t + 1; j < n; ++j)
            if (a(i, j) % a(t, t) != 0) {
              row_add(t, i, T(1));
              divisible = false;
              break;
            }
        if (divisible) break;
      }
      if (a(t, t) < 0) row_negate(t);
    }
    return t;
  }
};

template <typename T>
BasicSmithForm<T> smith_impl(const BasicMatrix<T>& in, bool track) {
  Reducer<T> r{in, track ? BasicMatrix<T>::identity(in.rows()) : BasicMatrix<T>(),
               track ? BasicMatrix<T>::identity(in.cols()) : BasicMatrix<T>(),
               track ? BasicMatrix<T>::identity(in.rows()) : BasicMatrix<T>(), track};
  const std::size_t rank = r.run();
  return {std::move(r.u), std::move(r.a), std::move(r.v), std::move(r.uinv), rank};
}

}  // namespace

SmithForm smith_normal_form(const Matrix& a) {
  try {
    return smith_impl<Int>(a, true);
  } catch (const OverflowError&) {
    auto big = smith_impl<BigInt>(to_big(a), true);
    return {from_big(big.U), from_big(big.D), from_big(big.V), from_big(big.Uinv), big.rank};
  }
}

BasicSmithForm<BigInt> smith_normal_form_big(const BigMatrix& a) { return smith_impl<BigInt>(a, true); }

std::vector<BigInt> elementary_divisors(const Matrix& a) {
  std::vector<BigInt> out;
  try {
    auto s = smith_impl<Int>(a, false);
    for (std::size_t i = 0; i < s.rank; ++i) out.emplace_back(s.D(i, i));
  } catch (const OverflowError&) {
    out.clear();
    auto s = smith_impl<BigInt>(to_big(a), false);
    for (std::size_t i = 0; i < s.rank; ++i) out.push_back(s.D(i, i));
  }
  return out;
}

Int determinant(const Matrix& a) {
  if (a.rows() != a.cols()) throw Error("determinant of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination
  BigMatrix m = to_big(a);
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  BigInt d = sign * m(n - 1, n - 1);
  if (d > std::numeric_limits<Int>::max() || d < std::numeric_limits<Int>::min()) throw OverflowError();
  return static_cast<Int>(d);
}

namespace {

Matrix snf_kernel(const Matrix& a) {
  const auto s = smith_normal_form(a);
  std::vector<std::size_t> cols;
  for (std::size_t j = s.rank; j < a.cols(); ++j) cols.push_back(j);
  return select_cols(s.V, cols);
}

// Unit pivots are eliminated sparsely first: a row with a +-1 entry at c fixes
// x_c in terms of the other variables. The SNF only sees what is left. Only
// the first `keep` coordinates of each kernel vector are returned.
Matrix sparse_kernel(SparseRows rows, std::size_t n, std::size_t keep) {
  const std::size_t m = rows.size();
  std::vector<std::set<std::size_t>> in_col(n);
  for (std::size_t i = 0; i < m; ++i)
    for (const auto& [j, v] : rows[i]) in_col[j].insert(i);

  struct Definition {
    std::size_t var;
    std::vector<std::pair<std::size_t, Int>> terms;
  };
  std::vector<Definition> defs;
  std::vector<bool> row_alive(m, true), eliminated(n, false);
  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t r = 0; r < m; ++r) {
      if (!row_alive[r]) continue;
      // dividing a row by its content keeps the kernel
      Int g = 0;
      for (const auto& [j, v] : rows[r]) g = std::gcd(g, v);
      if (g > 1)
        for (auto& [j, v] : rows[r]) v /= g;
      std::size_t c = n;
      for (const auto& [j, v] : rows[r])
        if ((v == 1 || v == -1) && (c == n || in_col[j].size() < in_col[c].size())) c = j;
      if (c == n) continue;
      progress = true;
      const Int p = rows[r][c];
      const auto pivot_row = rows[r];
      for (std::size_t i : std::vector<std::size_t>(in_col[c].begin(), in_col[c].end())) {
        if (i == r) continue;
        const Int f = checked_mul(rows[i][c], p);
        for (const auto& [j, v] : pivot_row) {
          Int& e = rows[i][j];
          if (e == 0) in_col[j].insert(i);
          e = checked_sub(e, checked_mul(f, v));
          if (e == 0) {
            rows[i].erase(j);
            in_col[j].erase(i);
          }
        }
      }
      Definition d{c, {}};
      for (const auto& [j, v] : pivot_row) {
        in_col[j].erase(r);
        if (j != c) d.terms.emplace_back(j, checked_mul(-p, v));
      }
      defs.push_back(std::move(d));
      rows[r].clear();
      row_alive[r] = false;
      eliminated[c] = true;
    }
  }
  in_col.clear();

  std::vector<std::size_t> free_vars, rest;
  std::vector<std::size_t> position(n, 0);
  for (std::size_t j = 0; j < n; ++j)
    if (!eliminated[j]) {
      position[j] = free_vars.size();
      free_vars.push_back(j);
    }
  for (std::size_t i = 0; i < m; ++i)
    if (row_alive[i] && !rows[i].empty()) rest.push_back(i);
  Matrix residual(rest.size(), free_vars.size());
  for (std::size_t i = 0; i < rest.size(); ++i)
    for (const auto& [j, v] : rows[rest[i]]) residual(i, position[j]) = v;
  rows.clear();
  const Matrix k = rest.empty() ? Matrix::identity(free_vars.size()) : snf_kernel(residual);

  Matrix out(keep, k.cols());
  std::vector<Int> x(n);
  for (std::size_t t = 0; t < k.cols(); ++t) {
    std::fill(x.begin(), x.end(), 0);
    for (std::size_t i = 0; i < free_vars.size(); ++i) x[free_vars[i]] = k(i, t);
    for (auto d = defs.rbegin(); d != defs.rend(); ++d) {
      Int v = 0;
      for (const auto& [j, c] : d->terms) v = checked_add(v, checked_mul(c, x[j]));
      x[d->var] = v;
    }
    for (std::size_t i = 0; i < keep; ++i) out(i, t) = x[i];
  }
  return out;
}

}  // namespace

SparseRows sparse_rows(const Matrix& a) {
  SparseRows rows(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0) rows[i].emplace(j, a(i, j));
  return rows;
}

Matrix integer_kernel(const Matrix& a) { return sparse_kernel(sparse_rows(a), a.cols(), a.cols()); }

Matrix preimage_lattice(const Matrix& a, const Matrix& r) {
  if (r.cols() == 0) return integer_kernel(a);
  return preimage_lattice(sparse_rows(a), a.cols(), sparse_rows(r), r.cols());
}

// Kernel of [a | -r], keeping the a-coordinates; [a | -r] is never formed densely.
Matrix preimage_lattice(SparseRows a, std::size_t n, const SparseRows& r, std::size_t r_cols) {
  if (r_cols > 0 && r.size() != a.size()) throw Error("preimage_lattice: row mismatch");
  for (std::size_t i = 0; i < r.size() && r_cols > 0; ++i)
    for (const auto& [j, v] : r[i]) a[i].emplace(n + j, -v);
  Matrix k = sparse_kernel(std::move(a), n + r_cols, n);
  return r_cols == 0 ? k : lattice_basis(k);
}

LatticeSolver::LatticeSolver(const Matrix& basis) : rows_(basis.rows()), cols_(basis.cols()) {
  echelon_ = true;
  for (std::size_t j = 0; j < cols_ && echelon_; ++j) {
    std::vector<std::pair<std::size_t, Int>> col;
    for (std::size_t i = 0; i < rows_; ++i)
      if (basis(i, j) != 0) col.emplace_back(i, basis(i, j));
    if (col.empty() || (j > 0 && col.front().first <= pivots_.back())) echelon_ = false;
    else {
      pivots_.push_back(col.front().first);
      sparse_cols_.push_back(std::move(col));
    }
  }
  if (echelon_) return;
  pivots_.clear();
  sparse_cols_.clear();
  const auto s = smith_normal_form(basis);
  u_ = s.U;
  v_ = s.V;
  for (std::size_t i = 0; i < s.rank; ++i) diag_.push_back(s.D(i, i));
}

std::optional<Vector> LatticeSolver::solve(const Vector& v) const {
  if (rows_ != v.size()) throw Error("solve_in_lattice: dimension mismatch");
  if (cols_ == 0) {
    for (Int x : v)
      if (x != 0) return std::nullopt;
    return Vector{};
  }
  if (echelon_) {
    Vector rest = v, y(cols_, 0);
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int top = sparse_cols_[k].front().second;
      if (rest[pivots_[k]] % top != 0) return std::nullopt;
      y[k] = rest[pivots_[k]] / top;
      if (y[k] == 0) continue;
      for (const auto& [i, b] : sparse_cols_[k]) rest[i] = checked_sub(rest[i], checked_mul(y[k], b));
    }
    for (Int x : rest)
      if (x != 0) return std::nullopt;
    return y;
  }
  const Vector w = u_ * v;
  Vector y(cols_, 0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i < diag_.size()) {
      if (w[i] % diag_[i] != 0) return std::nullopt;
      y[i] = w[i] / diag_[i];
    } else if (w[i] != 0) {
      return std::nullopt;
    }
  }
  // free coordinates of a rank-deficient basis are left at 0
  return v_ * y;
}

std::optional<Vector> solve_in_lattice(const Matrix& basis, const Vector& v) { return LatticeSolver(basis).solve(v); }

bool in_lattice(const Matrix& gens, const Vector& v) {
  if (gens.cols() == 0) {
    for (Int x : v)
      if (x != 0) return false;
    return true;
  }
  return solve_in_lattice(gens, v).has_value();
}

Matrix lattice_basis(const Matrix& gens) {
  // column echelon reduction; the surviving nonzero columns form a basis
  Matrix g = gens;
  const std::size_t m = g.rows();
  std::size_t pivot_col = 0;
  for (std::size_t row = 0; row < m && pivot_col < g.cols(); ++row) {
    for (;;) {
      std::size_t best = g.cols();
      for (std::size_t j = pivot_col; j < g.cols(); ++j)
        if (g(row, j) != 0 && (best == g.cols() || abs_value(g(row, j)) < abs_value(g(row, best)))) best = j;
      if (best == g.cols()) break;
      g.swap_cols(pivot_col, best);
      bool others = false;
      for (std::size_t j = pivot_col + 1; j < g.cols(); ++j)
        if (g(row, j) != 0) {
          g.add_col(j, pivot_col, checked_sub(0, floor_div(g(row, j), g(row, pivot_col))));
          if (g(row, j) != 0) others = true;
        }
      if (!others) {
        ++pivot_col;
        break;
      }
    }
  }
  std::vector<std::size_t> keep(pivot_col);
  for (std::size_t j = 0; j < pivot_col; ++j) keep[j] = j;
  return select_cols(g, keep);
}

}  // namespace aq
