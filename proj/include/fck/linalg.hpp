#pragma once

// Exact elimination: rank, row echelon form, kernels, Smith normal form.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "fck/error.hpp"
#include "fck/matrix.hpp"

namespace fck {

namespace detail {

using SparseRow = std::vector<std::pair<Index, Rational>>;

// r <- r - factor * p, both sorted by column.
inline void axpy_row(const Ring& ring, SparseRow& r, const Rational& factor, const SparseRow& p) {
  SparseRow out;
  out.reserve(r.size() + p.size());
  std::size_t i = 0, j = 0;
  while (i < r.size() || j < p.size()) {
    if (j == p.size() || (i < r.size() && r[i].first < p[j].first)) {
      out.push_back(std::move(r[i++]));
    } else if (i == r.size() || p[j].first < r[i].first) {
      out.emplace_back(p[j].first, ring.neg(ring.mul(factor, p[j].second)));
      ++j;
    } else {
      Rational v = ring.sub(r[i].second, ring.mul(factor, p[j].second));
      if (!v.is_zero()) out.emplace_back(r[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  r = std::move(out);
}

inline void require_field(const Matrix& m, const char* what) {
  if (!m.ring().is_field()) throw RingError(std::string(what) + " requires a field; use smith_normal_form over Z");
}

}  // namespace detail

/// Rank over a field by sparse Gaussian elimination. Rows are reduced in
/// order of increasing length; each row is eliminated against the stored
/// pivot whose leading column matches its first nonzero.
inline std::size_t rank(const Matrix& m) {
  detail::require_field(m, "rank");
  const Ring& ring = m.ring();
  // Eliminate along the shorter dimension.
  const Matrix& src = m;
  Matrix t;
  bool use_t = m.cols() > m.rows() * 2;
  if (use_t) t = m.transpose();
  const Matrix& a = use_t ? t : src;

  std::vector<detail::SparseRow> rows;
  rows.reserve(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto cs = a.row_cols(r);
    if (cs.empty()) continue;
    auto vs = a.row_values(r);
    detail::SparseRow row;
    row.reserve(cs.size());
    for (std::size_t k = 0; k < cs.size(); ++k) row.emplace_back(cs[k], vs[k]);
    rows.push_back(std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) { return x.size() < y.size(); });

  std::vector<std::int64_t> pivot_of_col(a.cols(), -1);
  std::vector<detail::SparseRow> pivots;
  for (auto& row : rows) {
    while (!row.empty()) {
      Index c = row.front().first;
      std::int64_t p = pivot_of_col[c];
      if (p < 0) {
        Rational lead_inv = ring.inv(row.front().second);
        for (auto& e : row) e.second = ring.mul(e.second, lead_inv);
        pivot_of_col[c] = static_cast<std::int64_t>(pivots.size());
        pivots.push_back(std::move(row));
        break;
      }
      Rational factor = row.front().second;
      detail::axpy_row(ring, row, factor, pivots[static_cast<std::size_t>(p)]);
    }
  }
  return pivots.size();
}

/// Reduced row echelon form over a field (dense), pivoting on the first
/// nonzero entry of each column.
struct RowEchelon {
  std::vector<std::vector<Rational>> rows;  // reduced rows, one per pivot
  std::vector<std::size_t> pivot_cols;
  std::size_t cols = 0;
};

inline RowEchelon row_echelon(const Matrix& m) {
  detail::require_field(m, "row_echelon");
  const Ring& ring = m.ring();
  std::vector<std::vector<Rational>> a(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto cs = m.row_cols(r);
    auto vs = m.row_values(r);
    for (std::size_t k = 0; k < cs.size(); ++k) a[r][cs[k]] = vs[k];
  }
  RowEchelon out;
  out.cols = m.cols();
  std::size_t lead = 0;
  for (std::size_t c = 0; c < m.cols() && lead < m.rows(); ++c) {
    std::size_t piv = lead;
    while (piv < m.rows() && a[piv][c].is_zero()) ++piv;
    if (piv == m.rows()) continue;
    std::swap(a[piv], a[lead]);
    Rational inv = ring.inv(a[lead][c]);
    for (std::size_t j = c; j < m.cols(); ++j) a[lead][j] = ring.mul(a[lead][j], inv);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead || a[r][c].is_zero()) continue;
      Rational f = a[r][c];
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!a[lead][j].is_zero()) a[r][j] = ring.sub(a[r][j], ring.mul(f, a[lead][j]));
    }
    out.pivot_cols.push_back(c);
    ++lead;
  }
  a.resize(lead);
  out.rows = std::move(a);
  return out;
}

/// Columns form a basis of the null space of `m` (cols x (cols - rank)).
/// Column j has a 1 in the j-th free (non-pivot) coordinate and zeros in the
/// other free coordinates.
inline Matrix kernel_basis(const Matrix& m) {
  detail::require_field(m, "kernel_basis");
  const Ring& ring = m.ring();
  RowEchelon e = row_echelon(m);
  std::vector<char> is_pivot(m.cols(), 0);
  for (auto c : e.pivot_cols) is_pivot[c] = 1;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  MatrixBuilder b(ring, m.cols(), free_cols.size());
  for (std::size_t j = 0; j < free_cols.size(); ++j) {
    std::size_t f = free_cols[j];
    b.add_canonical(f, j, Rational(1));
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r)
      if (!e.rows[r][f].is_zero()) b.add_canonical(e.pivot_cols[r], j, ring.neg(e.rows[r][f]));
  }
  return std::move(b).build();
}

/// Free (non-pivot) coordinates of `kernel_basis(m)`, in column order.
inline std::vector<std::size_t> kernel_free_coordinates(const Matrix& m) {
  RowEchelon e = row_echelon(m);
  std::vector<char> is_pivot(m.cols(), 0);
  for (auto c : e.pivot_cols) is_pivot[c] = 1;
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) out.push_back(c);
  return out;
}

/// Determinant of a square matrix over Q, F_p or Z (Z is computed over Q and
/// is exact).
inline Rational determinant(const Matrix& m) {
  if (!m.is_square()) throw DimensionError("determinant of non-square matrix");
  Ring ring = m.ring().is_field() ? m.ring() : Ring::rationals();
  Matrix a = m.ring().is_field() ? m : m.over(ring);
  const std::size_t n = a.rows();
  std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n));
  for (std::size_t r = 0; r < n; ++r) {
    auto cs = a.row_cols(r);
    auto vs = a.row_values(r);
    for (std::size_t k = 0; k < cs.size(); ++k) d[r][cs[k]] = vs[k];
  }
  Rational det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && d[piv][c].is_zero()) ++piv;
    if (piv == n) return Rational(0);
    if (piv != c) {
      std::swap(d[piv], d[c]);
      det = ring.neg(det);
    }
    det = ring.mul(det, d[c][c]);
    Rational inv = ring.inv(d[c][c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (d[r][c].is_zero()) continue;
      Rational f = ring.mul(d[r][c], inv);
      for (std::size_t j = c; j < n; ++j) d[r][j] = ring.sub(d[r][j], ring.mul(f, d[c][j]));
    }
  }
  return det;
}

struct SmithForm {
  /// Invariant factors, length min(rows, cols); nonzero ones first, each
  /// dividing the next, trailing zeros.
  std::vector<Rational> factors;
  Matrix u;  // rows x rows, unimodular
  Matrix v;  // cols x cols, unimodular
};

/// Smith normal form over Z: u * m * v = diag(factors). Pivots are chosen by
/// minimal nonzero absolute value in the remaining submatrix.
inline SmithForm smith_normal_form(const Matrix& m, bool with_transforms = true) {
  if (m.ring().kind() != Ring::Kind::Integers) throw RingError("smith_normal_form requires the integers");
  const Ring ring = m.ring();
  const std::size_t nr = m.rows(), nc = m.cols();
  using Dense = std::vector<std::vector<Rational>>;
  Dense a(nr, std::vector<Rational>(nc));
  for (std::size_t r = 0; r < nr; ++r) {
    auto cs = m.row_cols(r);
    auto vs = m.row_values(r);
    for (std::size_t k = 0; k < cs.size(); ++k) a[r][cs[k]] = vs[k];
  }
  Dense u, v;
  if (with_transforms) {
    u.assign(nr, std::vector<Rational>(nr));
    v.assign(nc, std::vector<Rational>(nc));
    for (std::size_t i = 0; i < nr; ++i) u[i][i] = Rational(1);
    for (std::size_t i = 0; i < nc; ++i) v[i][i] = Rational(1);
  }
  auto swap_rows = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    std::swap(a[i], a[j]);
    if (with_transforms) std::swap(u[i], u[j]);
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (auto& row : a) std::swap(row[i], row[j]);
    if (with_transforms)
      for (auto& row : v) std::swap(row[i], row[j]);
  };
  // row_i -= q * row_j
  auto row_op = [&](std::size_t i, std::size_t j, const Rational& q) {
    if (q.is_zero()) return;
    for (std::size_t c = 0; c < nc; ++c)
      if (!a[j][c].is_zero()) a[i][c] -= q * a[j][c];
    if (with_transforms)
      for (std::size_t c = 0; c < nr; ++c)
        if (!u[j][c].is_zero()) u[i][c] -= q * u[j][c];
  };
  // col_i -= q * col_j
  auto col_op = [&](std::size_t i, std::size_t j, const Rational& q) {
    if (q.is_zero()) return;
    for (std::size_t r = 0; r < nr; ++r)
      if (!a[r][j].is_zero()) a[r][i] -= q * a[r][j];
    if (with_transforms)
      for (std::size_t r = 0; r < nc; ++r)
        if (!v[r][j].is_zero()) v[r][i] -= q * v[r][j];
  };

  const std::size_t diag = std::min(nr, nc);
  for (std::size_t t = 0; t < diag; ++t) {
    // Minimal nonzero |entry| of the remaining submatrix.
    std::size_t br = nr, bc = nc;
    for (std::size_t r = t; r < nr; ++r)
      for (std::size_t c = t; c < nc; ++c)
        if (!a[r][c].is_zero() && (br == nr || a[r][c].abs() < a[br][bc].abs())) {
          br = r;
          bc = c;
        }
    if (br == nr) break;
    swap_rows(t, br);
    swap_cols(t, bc);
    for (;;) {
      bool clean = true;
      for (std::size_t r = t + 1; r < nr; ++r) {
        if (a[r][t].is_zero()) continue;
        row_op(r, t, Rational::int_quotient(a[r][t], a[t][t]));
        if (!a[r][t].is_zero()) clean = false;
      }
      for (std::size_t c = t + 1; c < nc; ++c) {
        if (a[t][c].is_zero()) continue;
        col_op(c, t, Rational::int_quotient(a[t][c], a[t][t]));
        if (!a[t][c].is_zero()) clean = false;
      }
      if (!clean) {
        // Move the smallest remainder in row/column t onto the pivot.
        std::size_t br2 = t, bc2 = t;
        for (std::size_t r = t + 1; r < nr; ++r)
          if (!a[r][t].is_zero() && a[r][t].abs() < a[br2][bc2].abs()) {
            br2 = r;
            bc2 = t;
          }
        for (std::size_t c = t + 1; c < nc; ++c)
          if (!a[t][c].is_zero() && a[t][c].abs() < a[br2][bc2].abs()) {
            br2 = t;
            bc2 = c;
          }
        swap_rows(t, br2);
        swap_cols(t, bc2);
        continue;
      }
      // Divisibility of the remaining block by the pivot.
      std::size_t bad = nr;
      for (std::size_t r = t + 1; r < nr && bad == nr; ++r)
        for (std::size_t c = t + 1; c < nc; ++c)
          if (!Rational::int_remainder(a[r][c], a[t][t]).is_zero()) {
            bad = r;
            break;
          }
      if (bad == nr) break;
      row_op(t, bad, Rational(-1));  // row_t += row_bad
    }
    if (a[t][t].sign() < 0) {
      for (auto& x : a[t]) x = -x;
      if (with_transforms)
        for (auto& x : u[t]) x = -x;
    }
  }

  SmithForm out;
  out.factors.resize(diag);
  for (std::size_t i = 0; i < diag; ++i) out.factors[i] = a[i][i];
  auto to_matrix = [&](const Dense& d, std::size_t n) {
    MatrixBuilder b(ring, n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) b.add_canonical(r, c, d[r][c]);
    return std::move(b).build();
  };
  out.u = with_transforms ? to_matrix(u, nr) : Matrix(ring, 0, 0);
  out.v = with_transforms ? to_matrix(v, nc) : Matrix(ring, 0, 0);
  return out;
}

/// Rank of an integer matrix, computed over Q.
inline std::size_t rank_over_rationals(const Matrix& m) {
  return m.ring().is_field() ? rank(m) : rank(m.over(Ring::rationals()));
}

}  // namespace fck
