#pragma once

// Exact integer / rational linear algebra. Nothing in this library touches
// floating point.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "toricflip/error.hpp"

namespace toricflip {

using Int = mpz_class;
using Rat = mpq_class;
using IVector = std::vector<Int>;
using QVector = std::vector<Rat>;

/// Dense row-major matrix. Zero rows and zero columns are both allowed, so a
/// 0 x n matrix still remembers n.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Build from a list of rows; `cols` is used when `rows` is empty.
  static Matrix from_rows(const std::vector<std::vector<T>>& rows,
                          std::size_t cols = 0) {
    if (!rows.empty()) cols = rows.front().size();
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols)
        throw Error(ErrorCode::dimension_mismatch, "ragged matrix rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  /// Columns given as vectors of length `rows`.
  static Matrix from_columns(const std::vector<std::vector<T>>& cols,
                             std::size_t rows = 0) {
    return from_rows(cols, rows).transposed();
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<T> row(std::size_t i) {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const T> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::vector<T> row_vector(std::size_t i) const {
    auto r = row(i);
    return {r.begin(), r.end()};
  }
  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  std::vector<std::vector<T>> row_list() const {
    std::vector<std::vector<T>> out;
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row_vector(i));
    return out;
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Submatrix formed by the listed columns, in the listed order.
  Matrix select_columns(std::span<const std::size_t> idx) const {
    Matrix s(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < idx.size(); ++k) s(i, k) = (*this)(i, idx[k]);
    return s;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](const T& x) { return x == 0; });
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_)
      throw Error(ErrorCode::dimension_mismatch, "matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& x) {
    if (a.cols_ != x.size())
      throw Error(ErrorCode::dimension_mismatch, "matrix-vector shape mismatch");
    std::vector<T> y(a.rows_, T(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) y[i] += a(i, j) * x[j];
    return y;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IMatrix = Matrix<Int>;
using QMatrix = Matrix<Rat>;

// ---------------------------------------------------------------------------
// vector helpers

template <typename T>
T dot(std::span<const T> a, std::span<const T> b) {
  if (a.size() != b.size())
    throw Error(ErrorCode::dimension_mismatch, "dot product length mismatch");
  T s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}
inline Int dot(const IVector& a, const IVector& b) {
  return dot<Int>(std::span<const Int>(a), std::span<const Int>(b));
}
inline Rat dot(const QVector& a, const QVector& b) {
  return dot<Rat>(std::span<const Rat>(a), std::span<const Rat>(b));
}
inline Rat dot(const IVector& a, const QVector& b) {
  if (a.size() != b.size())
    throw Error(ErrorCode::dimension_mismatch, "dot product length mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * b[i];
  return s;
}

inline bool is_zero(const IVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}
inline bool is_zero(const QVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

inline Int content(const IVector& v) {
  Int g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

/// Divide out the content. The zero vector is returned unchanged.
inline IVector primitive(IVector v) {
  Int g = content(v);
  if (g > 1)
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return v;
}

/// Positive multiple of a rational vector that is a primitive integer vector.
inline IVector primitive_direction(const QVector& v) {
  Int l = 1;
  for (const auto& x : v) l = lcm(l, Int(x.get_den()));
  IVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Int(v[i] * l);
  return primitive(std::move(out));
}

inline QVector to_rational(const IVector& v) {
  return QVector(v.begin(), v.end());
}

inline bool is_integral(const QVector& v) {
  return std::all_of(v.begin(), v.end(),
                     [](const Rat& x) { return x.get_den() == 1; });
}

inline IVector to_integer(const QVector& v) {
  IVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].get_den() != 1)
      throw Error(ErrorCode::precondition, "vector has non-integral entries");
    out[i] = v[i].get_num();
  }
  return out;
}

inline QMatrix to_rational(const IMatrix& m) {
  QMatrix q(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = m(i, j);
  return q;
}

// ---------------------------------------------------------------------------
// rational strings: "p/q", or "p" when q = 1

inline std::string to_string(const Int& x) { return x.get_str(); }
inline std::string to_string(const Rat& x) { return x.get_str(); }

inline Rat parse_rational(const std::string& s) {
  auto valid_int = [](std::string_view t) {
    if (!t.empty() && (t.front() == '-' || t.front() == '+')) t.remove_prefix(1);
    return !t.empty() && std::all_of(t.begin(), t.end(),
                                     [](char c) { return c >= '0' && c <= '9'; });
  };
  auto slash = s.find('/');
  std::string_view num(s), den;
  if (slash != std::string::npos) {
    num = std::string_view(s).substr(0, slash);
    den = std::string_view(s).substr(slash + 1);
    if (!valid_int(den) || den.front() == '-' || den.front() == '+')
      throw Error(ErrorCode::schema, "malformed rational '" + s + "'");
  }
  if (!valid_int(num)) throw Error(ErrorCode::schema, "malformed rational '" + s + "'");
  Rat r;
  r.get_num() = Int(std::string(num.front() == '+' ? num.substr(1) : num), 10);
  r.get_den() = den.empty() ? Int(1) : Int(std::string(den), 10);
  if (r.get_den() == 0) throw Error(ErrorCode::schema, "zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

// ---------------------------------------------------------------------------
// Hermite normal form

template <typename T>
struct HnfResult {
  Matrix<T> H;
  Matrix<T> U;
};

/// Row-style Hermite normal form: U * M = H with U unimodular, H in row
/// echelon form, pivots positive, entries above each pivot in [0, pivot).
/// Zero rows of H sit at the bottom.
inline HnfResult<Int> hnf(const IMatrix& M) {
  IMatrix H = M;
  IMatrix U = IMatrix::identity(M.rows());
  const std::size_t m = H.rows(), n = H.cols();
  std::size_t p = 0;
  Int g, s, t, a, b, x, y;
  for (std::size_t j = 0; j < n && p < m; ++j) {
    // bring a nonzero entry into the pivot row
    std::size_t nz = p;
    while (nz < m && H(nz, j) == 0) ++nz;
    if (nz == m) continue;
    H.swap_rows(p, nz);
    U.swap_rows(p, nz);
    for (std::size_t i = p + 1; i < m; ++i) {
      if (H(i, j) == 0) continue;
      a = H(p, j);
      b = H(i, j);
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(),
                 b.get_mpz_t());
      Int ag = a / g, bg = b / g;
      // [s t; -b/g a/g] has determinant 1
      for (std::size_t k = 0; k < n; ++k) {
        x = H(p, k);
        y = H(i, k);
        H(p, k) = s * x + t * y;
        H(i, k) = ag * y - bg * x;
      }
      for (std::size_t k = 0; k < m; ++k) {
        x = U(p, k);
        y = U(i, k);
        U(p, k) = s * x + t * y;
        U(i, k) = ag * y - bg * x;
      }
    }
    if (H(p, j) < 0) {
      for (std::size_t k = 0; k < n; ++k) H(p, k) = -H(p, k);
      for (std::size_t k = 0; k < m; ++k) U(p, k) = -U(p, k);
    }
    for (std::size_t i = 0; i < p; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), H(i, j).get_mpz_t(), H(p, j).get_mpz_t());
      if (q == 0) continue;
      for (std::size_t k = 0; k < n; ++k) H(i, k) -= q * H(p, k);
      for (std::size_t k = 0; k < m; ++k) U(i, k) -= q * U(p, k);
    }
    ++p;
  }
  return {std::move(H), std::move(U)};
}

/// Nonzero rows of the HNF, i.e. the canonical basis of M's row lattice.
inline IMatrix row_lattice_basis(const IMatrix& M) {
  IMatrix H = hnf(M).H;
  std::vector<IVector> rows;
  for (std::size_t i = 0; i < H.rows(); ++i) {
    auto r = H.row_vector(i);
    if (!is_zero(r)) rows.push_back(std::move(r));
  }
  return IMatrix::from_rows(rows, M.cols());
}

// ---------------------------------------------------------------------------
// rank, determinant, solving

template <typename T>
std::size_t rank(const Matrix<T>& M) {
  QMatrix A(M.rows(), M.cols());
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) A(i, j) = M(i, j);
  std::size_t r = 0;
  for (std::size_t j = 0; j < A.cols() && r < A.rows(); ++j) {
    std::size_t piv = r;
    while (piv < A.rows() && A(piv, j) == 0) ++piv;
    if (piv == A.rows()) continue;
    A.swap_rows(r, piv);
    for (std::size_t i = r + 1; i < A.rows(); ++i) {
      if (A(i, j) == 0) continue;
      Rat f = A(i, j) / A(r, j);
      for (std::size_t k = j; k < A.cols(); ++k) A(i, k) -= f * A(r, k);
    }
    ++r;
  }
  return r;
}

/// Bareiss fraction-free determinant.
inline Int determinant(const IMatrix& M) {
  if (M.rows() != M.cols())
    throw Error(ErrorCode::dimension_mismatch, "determinant of non-square matrix");
  const std::size_t n = M.rows();
  if (n == 0) return 1;
  IMatrix A = M;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (A(k, k) == 0) {
      std::size_t piv = k + 1;
      while (piv < n && A(piv, k) == 0) ++piv;
      if (piv == n) return 0;
      A.swap_rows(k, piv);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        A(i, j) = A(i, j) * A(k, k) - A(i, k) * A(k, j);
        mpz_divexact(A(i, j).get_mpz_t(), A(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    prev = A(k, k);
  }
  return sign * A(n - 1, n - 1);
}

/// One exact solution of A x = b (free variables set to zero), or nullopt if
/// the system is inconsistent.
inline std::optional<QVector> solve(const QMatrix& A, const QVector& b) {
  if (A.rows() != b.size())
    throw Error(ErrorCode::dimension_mismatch, "solve: rhs length mismatch");
  const std::size_t m = A.rows(), n = A.cols();
  QMatrix M(m, n + 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) M(i, j) = A(i, j);
    M(i, n) = b[i];
  }
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t j = 0; j < n && r < m; ++j) {
    std::size_t piv = r;
    while (piv < m && M(piv, j) == 0) ++piv;
    if (piv == m) continue;
    M.swap_rows(r, piv);
    Rat inv = 1 / M(r, j);
    for (std::size_t k = j; k <= n; ++k) M(r, k) *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || M(i, j) == 0) continue;
      Rat f = M(i, j);
      for (std::size_t k = j; k <= n; ++k) M(i, k) -= f * M(r, k);
    }
    pivots.push_back(j);
    ++r;
  }
  for (std::size_t i = r; i < m; ++i)
    if (M(i, n) != 0) return std::nullopt;
  QVector x(n, Rat(0));
  for (std::size_t i = 0; i < r; ++i) x[pivots[i]] = M(i, n);
  return x;
}

inline std::optional<QVector> solve(const IMatrix& A, const QVector& b) {
  return solve(to_rational(A), b);
}

// ---------------------------------------------------------------------------
// lattices

/// Basis (as rows, in HNF) of the saturated lattice {x in Z^cols : M x = 0}.
inline IMatrix kernel_lattice(const IMatrix& M) {
  auto [H, U] = hnf(M.transposed());
  std::vector<IVector> rows;
  for (std::size_t i = 0; i < H.rows(); ++i)
    if (is_zero(H.row_vector(i))) rows.push_back(U.row_vector(i));
  return row_lattice_basis(IMatrix::from_rows(rows, M.cols()));
}

/// Saturated integer basis (HNF rows) of the rational span of M's rows.
inline IMatrix saturated_span(const IMatrix& M) {
  return kernel_lattice(kernel_lattice(M));
}

/// Is x in the integer row span of K?
inline bool in_row_lattice(const IMatrix& K, IVector x) {
  if (x.size() != K.cols())
    throw Error(ErrorCode::dimension_mismatch, "lattice membership length mismatch");
  IMatrix H = row_lattice_basis(K);
  for (std::size_t i = 0; i < H.rows(); ++i) {
    std::size_t j = 0;
    while (H(i, j) == 0) ++j;
    Int q, rem;
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), x[j].get_mpz_t(), H(i, j).get_mpz_t());
    if (rem != 0) return false;
    for (std::size_t k = j; k < x.size(); ++k) x[k] -= q * H(i, k);
  }
  return is_zero(x);
}

inline bool same_row_lattice(const IMatrix& A, const IMatrix& B) {
  return A.cols() == B.cols() && row_lattice_basis(A) == row_lattice_basis(B);
}

// ---------------------------------------------------------------------------
// combinatorics

/// All k-subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> k_subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

/// Sorted complement of a sorted index set within {0..n-1}.
inline std::vector<std::size_t> complement(std::span<const std::size_t> s, std::size_t n) {
  std::vector<std::size_t> out;
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (k < s.size() && s[k] == i) {
      ++k;
      continue;
    }
    out.push_back(i);
  }
  return out;
}

}  // namespace toricflip
