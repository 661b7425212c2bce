#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "fck/error.hpp"
#include "fck/rational.hpp"
#include "fck/ring.hpp"

namespace fck {

using Index = std::uint32_t;

/// Immutable exact matrix over a `Ring`.
///
/// Storage is compressed rows with entries in canonical ring form and
/// explicit zeros removed, so two matrices are equal iff their storage is.
/// The differentials produced by the cubical and simplicial constructions are
/// large block matrices with a handful of nonzeros per row; a dense carrier
/// does not fit those in memory.
class Matrix {
 public:
  Matrix() : Matrix(Ring::rationals(), 0, 0) {}
  Matrix(Ring ring, std::size_t rows, std::size_t cols)
      : ring_(ring), rows_(rows), cols_(cols), row_start_(rows + 1, 0) {}

  static Matrix identity(Ring ring, std::size_t n);
  static Matrix zero(Ring ring, std::size_t rows, std::size_t cols) { return Matrix(ring, rows, cols); }
  /// Row-major dense input; values are reduced into the ring.
  static Matrix from_dense(Ring ring, std::size_t rows, std::size_t cols, std::span<const Rational> entries);
  static Matrix from_ints(Ring ring, std::size_t rows, std::size_t cols, std::initializer_list<long long> entries);
  static Matrix from_rows(Ring ring, const std::vector<std::vector<Rational>>& rows);

  [[nodiscard]] const Ring& ring() const { return ring_; }
  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] std::size_t nnz() const { return values_.size(); }
  [[nodiscard]] bool is_zero() const { return values_.empty(); }
  [[nodiscard]] bool is_square() const { return rows_ == cols_; }

  [[nodiscard]] std::span<const Index> row_cols(std::size_t r) const {
    return {col_.data() + row_start_[r], row_start_[r + 1] - row_start_[r]};
  }
  [[nodiscard]] std::span<const Rational> row_values(std::size_t r) const {
    return {values_.data() + row_start_[r], row_start_[r + 1] - row_start_[r]};
  }

  [[nodiscard]] Rational at(std::size_t r, std::size_t c) const {
    auto cols = row_cols(r);
    auto it = std::lower_bound(cols.begin(), cols.end(), static_cast<Index>(c));
    if (it == cols.end() || *it != c) return Rational(0);
    return values_[row_start_[r] + static_cast<std::size_t>(it - cols.begin())];
  }

  [[nodiscard]] std::vector<Rational> to_dense() const {
    std::vector<Rational> out(rows_ * cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
      auto cs = row_cols(r);
      auto vs = row_values(r);
      for (std::size_t k = 0; k < cs.size(); ++k) out[r * cols_ + cs[k]] = vs[k];
    }
    return out;
  }

  [[nodiscard]] Matrix transpose() const;
  [[nodiscard]] Matrix scaled(const Rational& s) const;
  [[nodiscard]] Matrix negated() const { return scaled(ring_.neg(Rational(1))); }
  /// Rows [r0, r0+nr) and columns [c0, c0+nc).
  [[nodiscard]] Matrix block(std::size_t r0, std::size_t nr, std::size_t c0, std::size_t nc) const;
  /// Same entries reinterpreted over another ring (entries are re-reduced).
  [[nodiscard]] Matrix over(const Ring& ring) const;

  /// True when every row and every column has at most one nonzero, and that
  /// nonzero is +1 or -1.
  [[nodiscard]] bool is_signed_monomial() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a) { return a.negated(); }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.ring_ == b.ring_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.row_start_ == b.row_start_ &&
           a.col_ == b.col_ && a.values_ == b.values_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  [[nodiscard]] std::size_t hash() const {
    std::size_t h = rows_ * 1000003u ^ cols_;
    for (std::size_t k = 0; k < col_.size(); ++k) h = h * 1315423911u + col_[k] * 2654435761u + values_[k].hash();
    for (auto s : row_start_) h = h * 31u + s;
    return h;
  }

  [[nodiscard]] std::string to_string() const {
    std::string s = "[";
    for (std::size_t r = 0; r < rows_; ++r) {
      s += r ? ", [" : "[";
      for (std::size_t c = 0; c < cols_; ++c) s += (c ? ", " : "") + at(r, c).to_string();
      s += "]";
    }
    return s + "]";
  }

 private:
  friend class MatrixBuilder;

  Ring ring_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::size_t> row_start_;
  std::vector<Index> col_;
  std::vector<Rational> values_;
};

/// Accumulates (row, col, value) triplets; duplicates are summed in the ring.
class MatrixBuilder {
 public:
  MatrixBuilder(Ring ring, std::size_t rows, std::size_t cols) : ring_(ring), rows_(rows), cols_(cols) {}

  [[nodiscard]] const Ring& ring() const { return ring_; }
  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }

  void reserve(std::size_t n) { entries_.reserve(n); }

  /// Adds an already-canonical value (no reduction).
  void add_canonical(std::size_t r, std::size_t c, Rational v) {
    if (v.is_zero()) return;
    check(r, c);
    entries_.push_back({static_cast<Index>(r), static_cast<Index>(c), std::move(v)});
  }
  void add(std::size_t r, std::size_t c, const Rational& v) { add_canonical(r, c, ring_.reduce(v)); }

  /// Adds `sign * m` with its top-left corner at (r0, c0). `sign` is +1 or -1.
  void add_block(std::size_t r0, std::size_t c0, const Matrix& m, int sign = 1) {
    require_same_ring(ring_, m.ring(), "MatrixBuilder::add_block");
    if (r0 + m.rows() > rows_ || c0 + m.cols() > cols_)
      throw DimensionError("block " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " at (" +
                           std::to_string(r0) + "," + std::to_string(c0) + ") exceeds " + std::to_string(rows_) +
                           "x" + std::to_string(cols_));
    for (std::size_t r = 0; r < m.rows(); ++r) {
      auto cs = m.row_cols(r);
      auto vs = m.row_values(r);
      for (std::size_t k = 0; k < cs.size(); ++k)
        entries_.push_back({static_cast<Index>(r0 + r), static_cast<Index>(c0 + cs[k]), sign > 0 ? vs[k] : ring_.neg(vs[k])});
    }
  }

  /// Adds `sign` times an identity block of size n at (r0, c0).
  void add_identity(std::size_t r0, std::size_t c0, std::size_t n, int sign = 1) {
    if (r0 + n > rows_ || c0 + n > cols_) throw DimensionError("identity block exceeds matrix");
    Rational one = sign > 0 ? Rational(1) : ring_.neg(Rational(1));
    for (std::size_t i = 0; i < n; ++i) entries_.push_back({static_cast<Index>(r0 + i), static_cast<Index>(c0 + i), one});
  }

  Matrix build() &&;

 private:
  struct Entry {
    Index r;
    Index c;
    Rational v;
  };

  void check(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_)
      throw DimensionError("entry (" + std::to_string(r) + "," + std::to_string(c) + ") outside " +
                           std::to_string(rows_) + "x" + std::to_string(cols_));
  }

  Ring ring_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Entry> entries_;
};

inline Matrix MatrixBuilder::build() && {
  Matrix m(ring_, rows_, cols_);
  std::sort(entries_.begin(), entries_.end(),
            [](const Entry& a, const Entry& b) { return a.r != b.r ? a.r < b.r : a.c < b.c; });
  m.col_.reserve(entries_.size());
  m.values_.reserve(entries_.size());
  std::vector<std::size_t> counts(rows_, 0);
  std::size_t i = 0;
  while (i < entries_.size()) {
    std::size_t j = i + 1;
    Rational v = std::move(entries_[i].v);
    while (j < entries_.size() && entries_[j].r == entries_[i].r && entries_[j].c == entries_[i].c) {
      v = ring_.add(v, entries_[j].v);
      ++j;
    }
    if (!v.is_zero()) {
      m.col_.push_back(entries_[i].c);
      m.values_.push_back(std::move(v));
      ++counts[entries_[i].r];
    }
    i = j;
  }
  for (std::size_t r = 0; r < rows_; ++r) m.row_start_[r + 1] = m.row_start_[r] + counts[r];
  entries_.clear();
  return m;
}

inline Matrix Matrix::identity(Ring ring, std::size_t n) {
  MatrixBuilder b(ring, n, n);
  b.add_identity(0, 0, n);
  return std::move(b).build();
}

inline Matrix Matrix::from_dense(Ring ring, std::size_t rows, std::size_t cols, std::span<const Rational> entries) {
  if (entries.size() != rows * cols) throw DimensionError("dense entry count does not match shape");
  MatrixBuilder b(ring, rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) b.add(r, c, entries[r * cols + c]);
  return std::move(b).build();
}

inline Matrix Matrix::from_ints(Ring ring, std::size_t rows, std::size_t cols, std::initializer_list<long long> entries) {
  std::vector<Rational> vals;
  vals.reserve(entries.size());
  for (long long v : entries) vals.emplace_back(v);
  return from_dense(ring, rows, cols, vals);
}

inline Matrix Matrix::from_rows(Ring ring, const std::vector<std::vector<Rational>>& rows) {
  const std::size_t nr = rows.size();
  const std::size_t nc = nr ? rows.front().size() : 0;
  std::vector<Rational> flat;
  flat.reserve(nr * nc);
  for (const auto& row : rows) {
    if (row.size() != nc) throw DimensionError("ragged rows");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return from_dense(ring, nr, nc, flat);
}

inline Matrix Matrix::transpose() const {
  MatrixBuilder b(ring_, cols_, rows_);
  b.reserve(nnz());
  for (std::size_t r = 0; r < rows_; ++r) {
    auto cs = row_cols(r);
    auto vs = row_values(r);
    for (std::size_t k = 0; k < cs.size(); ++k) b.add_canonical(cs[k], r, vs[k]);
  }
  return std::move(b).build();
}

inline Matrix Matrix::scaled(const Rational& s) const {
  Rational sr = ring_.reduce(s);
  Matrix m(ring_, rows_, cols_);
  if (sr.is_zero()) return m;
  m.row_start_ = row_start_;
  m.col_ = col_;
  m.values_.reserve(values_.size());
  for (const auto& v : values_) m.values_.push_back(ring_.mul(v, sr));
  return m;
}

inline Matrix Matrix::block(std::size_t r0, std::size_t nr, std::size_t c0, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("block out of range");
  MatrixBuilder b(ring_, nr, nc);
  for (std::size_t r = 0; r < nr; ++r) {
    auto cs = row_cols(r0 + r);
    auto vs = row_values(r0 + r);
    for (std::size_t k = 0; k < cs.size(); ++k)
      if (cs[k] >= c0 && cs[k] < c0 + nc) b.add_canonical(r, cs[k] - c0, vs[k]);
  }
  return std::move(b).build();
}

inline Matrix Matrix::over(const Ring& ring) const {
  MatrixBuilder b(ring, rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    auto cs = row_cols(r);
    auto vs = row_values(r);
    for (std::size_t k = 0; k < cs.size(); ++k) b.add(r, cs[k], vs[k]);
  }
  return std::move(b).build();
}

inline bool Matrix::is_signed_monomial() const {
  std::vector<int> col_count(cols_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    auto cs = row_cols(r);
    auto vs = row_values(r);
    if (cs.size() > 1) return false;
    for (std::size_t k = 0; k < cs.size(); ++k) {
      if (!(vs[k].is_one() || ring_.neg(vs[k]).is_one())) return false;
      if (++col_count[cs[k]] > 1) return false;
    }
  }
  return true;
}

inline Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_ring(a.ring_, b.ring_, "matrix product");
  if (a.cols_ != b.rows_)
    throw DimensionError("matrix product: " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) + " times " +
                         std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
  const Ring& ring = a.ring_;
  Matrix m(ring, a.rows_, b.cols_);
  std::vector<Rational> acc(b.cols_);
  std::vector<char> used(b.cols_, 0);
  std::vector<Index> touched;
  for (std::size_t r = 0; r < a.rows_; ++r) {
    touched.clear();
    auto acs = a.row_cols(r);
    auto avs = a.row_values(r);
    for (std::size_t k = 0; k < acs.size(); ++k) {
      auto bcs = b.row_cols(acs[k]);
      auto bvs = b.row_values(acs[k]);
      for (std::size_t l = 0; l < bcs.size(); ++l) {
        Index c = bcs[l];
        Rational prod = ring.mul(avs[k], bvs[l]);
        if (!used[c]) {
          used[c] = 1;
          touched.push_back(c);
          acc[c] = std::move(prod);
        } else {
          acc[c] = ring.add(acc[c], prod);
        }
      }
    }
    std::sort(touched.begin(), touched.end());
    for (Index c : touched) {
      if (!acc[c].is_zero()) {
        m.col_.push_back(c);
        m.values_.push_back(std::move(acc[c]));
      }
      acc[c] = Rational(0);
      used[c] = 0;
    }
    m.row_start_[r + 1] = m.col_.size();
  }
  return m;
}

namespace detail {
inline Matrix combine(const Matrix& a, const Matrix& b, bool subtract, const char* what) {
  require_same_ring(a.ring(), b.ring(), what);
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError(std::string(what) + ": shape mismatch");
  MatrixBuilder out(a.ring(), a.rows(), a.cols());
  out.reserve(a.nnz() + b.nnz());
  out.add_block(0, 0, a);
  out.add_block(0, 0, b, subtract ? -1 : 1);
  return std::move(out).build();
}
}  // namespace detail

inline Matrix operator+(const Matrix& a, const Matrix& b) { return detail::combine(a, b, false, "matrix sum"); }
inline Matrix operator-(const Matrix& a, const Matrix& b) { return detail::combine(a, b, true, "matrix difference"); }

/// Product of two matrices; named form of operator*.
inline Matrix mat_mul(const Matrix& a, const Matrix& b) { return a * b; }

/// Kronecker product: entry ((i,k),(j,l)) = a(i,j) b(k,l), row index i*b.rows()+k.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  require_same_ring(a.ring(), b.ring(), "kron");
  const Ring& ring = a.ring();
  MatrixBuilder out(ring, a.rows() * b.rows(), a.cols() * b.cols());
  out.reserve(a.nnz() * b.nnz());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto acs = a.row_cols(i);
    auto avs = a.row_values(i);
    for (std::size_t k = 0; k < b.rows(); ++k) {
      auto bcs = b.row_cols(k);
      auto bvs = b.row_values(k);
      for (std::size_t p = 0; p < acs.size(); ++p)
        for (std::size_t q = 0; q < bcs.size(); ++q)
          out.add_canonical(i * b.rows() + k, acs[p] * b.cols() + bcs[q], ring.mul(avs[p], bvs[q]));
    }
  }
  return std::move(out).build();
}

}  // namespace fck
