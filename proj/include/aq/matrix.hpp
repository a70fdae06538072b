#pragma once

// Dense integer matrices and the Smith normal form kernel used by every
// homology computation in the library.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aq/error.hpp"

namespace aq {

using Int = long long;
using BigInt = boost::multiprecision::cpp_int;

namespace detail {

inline Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError();
  return r;
}
inline Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError();
  return r;
}
inline Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError();
  return r;
}
inline BigInt checked_add(const BigInt& a, const BigInt& b) { return a + b; }
inline BigInt checked_sub(const BigInt& a, const BigInt& b) { return a - b; }
inline BigInt checked_mul(const BigInt& a, const BigInt& b) { return a * b; }

inline Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int abs_value(Int a) {
  if (a == std::numeric_limits<Int>::min()) throw OverflowError();
  return a < 0 ? -a : a;
}
inline BigInt abs_value(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }

}  // namespace detail

template <typename T>
class BasicMatrix {
 public:
  BasicMatrix() = default;
  BasicMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  BasicMatrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw Error("ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static BasicMatrix identity(std::size_t n) {
    BasicMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const {
    for (const auto& x : data_)
      if (x != 0) return false;
    return true;
  }

  BasicMatrix transpose() const {
    BasicMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  std::vector<T> column(std::size_t c) const {
    std::vector<T> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
  }
  // row[dst] += k * row[src]
  void add_row(std::size_t dst, std::size_t src, const T& k) {
    if (k == 0) return;
    for (std::size_t c = 0; c < cols_; ++c)
      (*this)(dst, c) = detail::checked_add((*this)(dst, c), detail::checked_mul(k, (*this)(src, c)));
  }
  // col[dst] += k * col[src]
  void add_col(std::size_t dst, std::size_t src, const T& k) {
    if (k == 0) return;
    for (std::size_t r = 0; r < rows_; ++r)
      (*this)(r, dst) = detail::checked_add((*this)(r, dst), detail::checked_mul(k, (*this)(r, src)));
  }
  void negate_row(std::size_t r) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = detail::checked_sub(T(0), (*this)(r, c));
  }
  void negate_col(std::size_t c) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = detail::checked_sub(T(0), (*this)(r, c));
  }

  friend bool operator==(const BasicMatrix& a, const BasicMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  const std::vector<T>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using Matrix = BasicMatrix<Int>;
using BigMatrix = BasicMatrix<BigInt>;
using Vector = std::vector<Int>;

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix scaled(const Matrix& a, Int k);
Vector operator*(const Matrix& a, const Vector& v);

// Horizontal / vertical concatenation and block-diagonal sums.
Matrix hconcat(const Matrix& a, const Matrix& b);
Matrix vconcat(const Matrix& a, const Matrix& b);
Matrix block_diag(const Matrix& a, const Matrix& b);
// Kronecker product a ⊗ b.
Matrix kron(const Matrix& a, const Matrix& b);
Matrix select_rows(const Matrix& a, const std::vector<std::size_t>& rows);
Matrix select_cols(const Matrix& a, const std::vector<std::size_t>& cols);
Matrix from_columns(std::size_t rows, const std::vector<Vector>& cols);

BigMatrix to_big(const Matrix& m);
// Throws OverflowError when an entry does not fit.
Matrix from_big(const BigMatrix& m);

std::string to_string(const Matrix& m);

// U * A * V = D with U, V unimodular and D diagonal, nonnegative, each
// diagonal entry dividing the next.
template <typename T>
struct BasicSmithForm {
  BasicMatrix<T> U;
  BasicMatrix<T> D;
  BasicMatrix<T> V;
  BasicMatrix<T> Uinv;
  std::size_t rank = 0;  // number of nonzero diagonal entries
};
using SmithForm = BasicSmithForm<Int>;

SmithForm smith_normal_form(const Matrix& a);
BasicSmithForm<BigInt> smith_normal_form_big(const BigMatrix& a);

// Diagonal invariants only (no transforms); never overflows.
std::vector<BigInt> elementary_divisors(const Matrix& a);

Int determinant(const Matrix& a);

// Basis (as columns) of the lattice {x : A x = 0}.
Matrix integer_kernel(const Matrix& a);

// Basis of {x in Z^n : A x lies in the column span of R}.
Matrix preimage_lattice(const Matrix& a, const Matrix& r);

// Row i holds the nonzero entries of row i by column.
using SparseRows = std::vector<std::map<std::size_t, Int>>;
SparseRows sparse_rows(const Matrix& a);
// As above with A (n columns) and R given by sparse rows, one per row of A.
Matrix preimage_lattice(SparseRows a, std::size_t n, const SparseRows& r, std::size_t r_cols);

// Solves B c = v for integer c when B has full column rank; nullopt when v is
// not in the lattice spanned by B's columns.
std::optional<Vector> solve_in_lattice(const Matrix& basis, const Vector& v);

// solve_in_lattice for many right-hand sides, with one SNF of B.
class LatticeSolver {
 public:
  LatticeSolver() = default;
  explicit LatticeSolver(const Matrix& basis);
  std::optional<Vector> solve(const Vector& v) const;

 private:
  // column echelon bases are solved by substitution, others through the SNF
  bool echelon_ = false;
  std::vector<std::size_t> pivots_;
  std::vector<std::vector<std::pair<std::size_t, Int>>> sparse_cols_;
  Matrix u_, v_;
  std::vector<Int> diag_;
  std::size_t rows_ = 0, cols_ = 0;
};

// True iff v lies in the column span (over Z) of gens.
bool in_lattice(const Matrix& gens, const Vector& v);

// A Z-basis (as columns, full column rank) of the lattice spanned by gens.
Matrix lattice_basis(const Matrix& gens);

}  // namespace aq
