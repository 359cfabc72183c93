#pragma once

// Exact matrix algebra over F_q and the lattice of subspaces of F_q^m.
//
// Subspaces are stored by their reduced row echelon basis, which is the
// unique canonical representative of a row space. Equality and hashing of
// subspaces is therefore entry-wise comparison of basis matrices.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "schubert/error.hpp"
#include "schubert/field.hpp"

namespace schubert {

/// Dense row-major matrix of field elements. Carries no field; every
/// operation that needs arithmetic takes the Field explicitly.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<Elem> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw InvalidInput("matrix entry count does not match its shape");
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Build from nested rows; all rows must have the same length.
  static Matrix from_rows(const std::vector<std::vector<Elem>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw InvalidInput("ragged matrix rows");
      std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Elem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Elem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Elem> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  const std::vector<Elem>& data() const { return data_; }

  void append_row(std::span<const Elem> r) {
    if (r.size() != cols_) throw InvalidInput("row length does not match matrix width");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }

  /// First n rows.
  Matrix top_rows(std::size_t n) const {
    return Matrix(n, cols_, std::vector<Elem>(data_.begin(), data_.begin() + static_cast<std::ptrdiff_t>(n * cols_)));
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  std::vector<std::vector<Elem>> to_rows() const {
    std::vector<std::vector<Elem>> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i].assign(row(i).begin(), row(i).end());
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;
  friend auto operator<=>(const Matrix& a, const Matrix& b) {
    if (auto c = a.rows_ <=> b.rows_; c != 0) return c;
    if (auto c = a.cols_ <=> b.cols_; c != 0) return c;
    return a.data_ <=> b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

struct RrefResult {
  Matrix reduced;                   // same shape as the input, zero rows last
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;  // 0-based pivot columns, strictly increasing
};

namespace detail {

inline RrefResult rref_generic(Matrix m, const Field& f) {
  RrefResult out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    const Elem inv = f.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Elem factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  out.reduced = std::move(m);
  return out;
}

// F_2 with at most 64 columns: each row is one machine word, bit j = column j.
inline RrefResult rref_gf2(const Matrix& m) {
  std::vector<std::uint64_t> rows(m.rows(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j)) rows[i] |= std::uint64_t{1} << j;

  RrefResult out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < rows.size(); ++c) {
    const std::uint64_t bit = std::uint64_t{1} << c;
    std::size_t piv = r;
    while (piv < rows.size() && !(rows[piv] & bit)) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != r && (rows[i] & bit)) rows[i] ^= rows[r];
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  out.reduced = Matrix(m.rows(), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.reduced(i, j) = (rows[i] >> j) & 1;
  return out;
}

inline bool use_gf2_path(const Field& f, std::size_t cols) { return f.q() == 2 && cols <= 64; }

}  // namespace detail

/// Gauss-Jordan elimination. Pivot = first nonzero entry of the leftmost
/// unprocessed column, scanning top-down.
inline RrefResult rref(Matrix m, const Field& f) {
  if (detail::use_gf2_path(f, m.cols())) return detail::rref_gf2(m);
  return detail::rref_generic(std::move(m), f);
}

inline std::size_t rank(const Matrix& m, const Field& f) { return rref(m, f).rank; }

inline Matrix multiply(const Matrix& a, const Matrix& b, const Field& f) {
  if (a.cols() != b.rows()) throw InvalidInput("matrix product shape mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Elem x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = f.add(c(i, j), f.mul(x, b(k, j)));
    }
  return c;
}

/// Inverse of a square matrix; throws InvalidInput when singular.
inline Matrix inverse(const Matrix& m, const Field& f) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw InvalidInput("only square matrices are invertible");
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto red = rref(std::move(aug), f);
  if (red.rank < n || (n > 0 && red.pivots[n - 1] != n - 1)) throw InvalidInput("matrix is singular");
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = red.reduced(i, n + j);
  return inv;
}

/// Entry-wise x -> x^{p^k}.
inline Matrix frobenius(Matrix m, std::uint32_t k, const Field& f) {
  if (k == 0) return m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (auto& x : m.row(i)) x = f.frobenius(x, k);
  return m;
}

inline Elem dot(std::span<const Elem> a, std::span<const Elem> b, const Field& f) {
  Elem s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = f.add(s, f.mul(a[i], b[i]));
  return s;
}

/// A subspace of F_q^m held in canonical RREF.
class Subspace {
 public:
  Subspace() = default;

  /// The zero subspace of F_q^m.
  static Subspace zero(std::size_t m) { return Subspace(m, Matrix(0, m), {}); }

  static Subspace full(std::size_t m) {
    std::vector<std::size_t> piv(m);
    for (std::size_t i = 0; i < m; ++i) piv[i] = i;
    return Subspace(m, Matrix::identity(m), std::move(piv));
  }

  /// Wrap a matrix that is already in RREF with no zero rows. Validated.
  static Subspace from_canonical(Matrix basis, const Field& f) {
    auto red = rref(basis, f);
    if (red.rank != basis.rows() || red.reduced != basis)
      throw InvalidInput("subspace basis is not in reduced row echelon form");
    return Subspace(basis.cols(), std::move(basis), std::move(red.pivots));
  }

  /// Trusted constructor for callers that build echelon matrices directly
  /// (Grassmannian enumeration). No validation is performed.
  static Subspace from_echelon_unchecked(Matrix basis, std::vector<std::size_t> pivots) {
    const std::size_t m = basis.cols();
    return Subspace(m, std::move(basis), std::move(pivots));
  }

  std::size_t ambient_dim() const { return m_; }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.m_ == b.m_ && a.basis_ == b.basis_; }
  friend auto operator<=>(const Subspace& a, const Subspace& b) {
    if (auto c = a.m_ <=> b.m_; c != 0) return c;
    return a.basis_ <=> b.basis_;
  }

 private:
  friend Subspace row_space(const Matrix&, const Field&);
  Subspace(std::size_t m, Matrix basis, std::vector<std::size_t> pivots)
      : m_(m), basis_(std::move(basis)), pivots_(std::move(pivots)) {}

  std::size_t m_ = 0;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

struct SubspaceHash {
  std::size_t operator()(const Subspace& s) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ s.ambient_dim();
    for (Elem x : s.basis().data()) h = (h ^ x) * 0x100000001b3ull;
    return static_cast<std::size_t>(h ^ (s.dim() << 7));
  }
};

/// Canonical row space of M; zero rows allowed.
inline Subspace row_space(const Matrix& m, const Field& f) {
  auto red = rref(m, f);
  return Subspace(m.cols(), red.reduced.top_rows(red.rank), std::move(red.pivots));
}

inline void require_same_ambient(const Subspace& u, const Subspace& w) {
  if (u.ambient_dim() != w.ambient_dim())
    throw InvalidInput("ambient dimension mismatch: " + std::to_string(u.ambient_dim()) + " vs " +
                       std::to_string(w.ambient_dim()));
}

inline Subspace sum(const Subspace& u, const Subspace& w, const Field& f) {
  require_same_ambient(u, w);
  Matrix stacked = u.basis();
  for (std::size_t i = 0; i < w.dim(); ++i) stacked.append_row(w.basis().row(i));
  return row_space(stacked, f);
}

/// Right null space {v : M v^T = 0} as a subspace of F_q^{cols}.
inline Subspace kernel(const Matrix& m, const Field& f) {
  const std::size_t n = m.cols();
  auto red = rref(m, f);
  std::vector<bool> is_pivot(n, false);
  for (auto c : red.pivots) is_pivot[c] = true;
  Matrix gens(0, n);
  std::vector<Elem> v(n);
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::fill(v.begin(), v.end(), 0);
    v[free] = 1;
    for (std::size_t r = 0; r < red.rank; ++r) v[red.pivots[r]] = f.neg(red.reduced(r, free));
    gens.append_row(v);
  }
  return row_space(gens, f);
}

/// Annihilator under the standard dot product. Not a complement in general:
/// in characteristic 2, span{(1,1)} is its own perp.
inline Subspace perp(const Subspace& w, const Field& f) {
  if (w.dim() == 0) return Subspace::full(w.ambient_dim());
  return kernel(w.basis(), f);
}

inline Subspace intersect(const Subspace& u, const Subspace& w, const Field& f) {
  require_same_ambient(u, w);
  return perp(sum(perp(u, f), perp(w, f), f), f);
}

inline bool contains(const Subspace& outer, const Subspace& inner, const Field& f) {
  require_same_ambient(outer, inner);
  return sum(outer, inner, f).dim() == outer.dim();
}

inline bool contains_vector(const Subspace& s, std::span<const Elem> v, const Field& f) {
  Matrix stacked = s.basis();
  stacked.append_row(v);
  return rank(stacked, f) == s.dim();
}

/// Image of every basis row under x -> x M.
inline Subspace apply_matrix(const Subspace& w, const Matrix& m, const Field& f) {
  if (m.rows() != w.ambient_dim() || m.cols() != w.ambient_dim())
    throw InvalidInput("matrix does not act on this ambient space");
  return row_space(multiply(w.basis(), m, f), f);
}

}  // namespace schubert
