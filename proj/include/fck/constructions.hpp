#pragma once

// Shift, direct sum, tensor product, cone, cylinder, path object and homotopy
// fiber of chain complexes and maps.

#include <functional>
#include <utility>
#include <vector>

#include "fck/chain_complex.hpp"
#include "fck/linalg.hpp"

namespace fck {

/// Degreewise concatenation of summands; summand i contributes
/// parts[i].complex_{k - parts[i].shift} in degree k, in the given order.
class Layout {
 public:
  struct Part {
    ChainComplex complex;
    int shift = 0;
  };

  Layout(Ring ring, std::vector<Part> parts) : ring_(ring), parts_(std::move(parts)) {
    bool any = false;
    for (const auto& p : parts_) {
      require_same_ring(ring_, p.complex.ring(), "Layout");
      if (p.complex.is_zero()) continue;
      int l = p.complex.min_degree() + p.shift, h = p.complex.max_degree() + p.shift;
      lo_ = any ? std::min(lo_, l) : l;
      hi_ = any ? std::max(hi_, h) : h;
      any = true;
    }
    if (!any) {
      lo_ = 0;
      hi_ = -1;
    }
    const std::size_t nk = static_cast<std::size_t>(hi_ - lo_ + 1);
    offsets_.assign(parts_.size() + 1, std::vector<std::size_t>(nk, 0));
    for (std::size_t i = 0; i < parts_.size(); ++i)
      for (std::size_t t = 0; t < nk; ++t)
        offsets_[i + 1][t] = offsets_[i][t] + part_rank(i, lo_ + static_cast<int>(t));
  }

  [[nodiscard]] const Ring& ring() const { return ring_; }
  [[nodiscard]] std::size_t size() const { return parts_.size(); }
  [[nodiscard]] const Part& part(std::size_t i) const { return parts_[i]; }
  [[nodiscard]] int lo() const { return lo_; }
  [[nodiscard]] int hi() const { return hi_; }

  [[nodiscard]] std::size_t part_rank(std::size_t i, int k) const { return parts_[i].complex.rank(k - parts_[i].shift); }
  [[nodiscard]] std::size_t offset(std::size_t i, int k) const {
    if (k < lo_ || k > hi_) return 0;
    return offsets_[i][static_cast<std::size_t>(k - lo_)];
  }
  [[nodiscard]] std::size_t rank(int k) const { return offset(parts_.size(), k); }

  /// Assembles the complex whose d_k is filled by `fill(k, builder)` for a
  /// builder of shape rank(k-1) x rank(k).
  [[nodiscard]] ChainComplex build(const std::function<void(int, MatrixBuilder&)>& fill) const {
    std::map<int, std::size_t> ranks;
    std::map<int, Matrix> diffs;
    for (int k = lo_; k <= hi_; ++k) ranks[k] = rank(k);
    for (int k = lo_; k <= hi_ + 1; ++k) {
      MatrixBuilder b(ring_, rank(k - 1), rank(k));
      if (b.rows() && b.cols()) fill(k, b);
      diffs.emplace(k, std::move(b).build());
    }
    return ChainComplex::from(ring_, ranks, std::move(diffs));
  }

  /// Adds `sign * m` into the (row part i at degree kr, column part j at
  /// degree kc) block. Empty matrices are skipped.
  void put(MatrixBuilder& b, std::size_t i, int kr, const Layout& cols, std::size_t j, int kc, const Matrix& m,
           int sign = 1) const {
    if (m.rows() == 0 || m.cols() == 0) return;
    if (m.rows() != part_rank(i, kr) || m.cols() != cols.part_rank(j, kc))
      throw DimensionError("Layout::put: block shape mismatch");
    b.add_block(offset(i, kr), cols.offset(j, kc), m, sign);
  }
  void put_identity(MatrixBuilder& b, std::size_t i, int kr, const Layout& cols, std::size_t j, int kc, int sign = 1) const {
    std::size_t n = part_rank(i, kr);
    if (n == 0) return;
    if (n != cols.part_rank(j, kc)) throw DimensionError("Layout::put_identity: block shape mismatch");
    b.add_identity(offset(i, kr), cols.offset(j, kc), n, sign);
  }

 private:
  Ring ring_;
  std::vector<Part> parts_;
  int lo_ = 0;
  int hi_ = -1;
  std::vector<std::vector<std::size_t>> offsets_;  // [part][degree - lo]
};

/// Chain map x -> y with f_k filled by `fill(k, builder)`; builder shape
/// rank y_k x rank x_k.
inline ChainMap build_map(const ChainComplex& x, const ChainComplex& y,
                          const std::function<void(int, MatrixBuilder&)>& fill) {
  std::map<int, Matrix> comps;
  for (int k : x.degrees()) {
    if (y.rank(k) == 0 || x.rank(k) == 0) continue;
    MatrixBuilder b(x.ring(), y.rank(k), x.rank(k));
    fill(k, b);
    comps.emplace(k, std::move(b).build());
  }
  return ChainMap(x, y, std::move(comps));
}

/// shift(X, s)_k = X_{k-s} with differential (-1)^s d.
inline ChainComplex shift(const ChainComplex& x, int s) {
  Layout l(x.ring(), {{x, s}});
  return l.build([&](int k, MatrixBuilder& b) { l.put(b, 0, k - 1, l, 0, k, x.d(k - s), s % 2 ? -1 : 1); });
}

/// The same matrices viewed between shifted complexes.
inline ChainMap shift(const ChainMap& f, int s) {
  ChainComplex x = shift(f.source(), s), y = shift(f.target(), s);
  return build_map(x, y, [&](int k, MatrixBuilder& b) {
    const Matrix& m = f.at(k - s);
    if (m.rows() && m.cols()) b.add_block(0, 0, m);
  });
}

/// Loop functor: (Omega X)_k = X_{k+1}.
inline ChainComplex loop(const ChainComplex& x) { return shift(x, -1); }

struct DirectSum {
  ChainComplex sum;
  std::vector<ChainMap> inclusions;
  std::vector<ChainMap> projections;
};

inline DirectSum direct_sum(Ring ring, const std::vector<ChainComplex>& xs) {
  std::vector<Layout::Part> parts;
  for (const auto& x : xs) parts.push_back({x, 0});
  Layout l(ring, parts);
  DirectSum out;
  out.sum = l.build([&](int k, MatrixBuilder& b) {
    for (std::size_t i = 0; i < xs.size(); ++i) l.put(b, i, k - 1, l, i, k, xs[i].d(k));
  });
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Layout li(ring, {{xs[i], 0}});
    out.inclusions.push_back(build_map(xs[i], out.sum, [&](int k, MatrixBuilder& b) { l.put_identity(b, i, k, li, 0, k); }));
    out.projections.push_back(build_map(out.sum, xs[i], [&](int k, MatrixBuilder& b) { li.put_identity(b, 0, k, l, i, k); }));
  }
  return out;
}

inline ChainComplex direct_sum_complex(Ring ring, const std::vector<ChainComplex>& xs) {
  std::vector<Layout::Part> parts;
  for (const auto& x : xs) parts.push_back({x, 0});
  Layout l(ring, parts);
  return l.build([&](int k, MatrixBuilder& b) {
    for (std::size_t i = 0; i < xs.size(); ++i) l.put(b, i, k - 1, l, i, k, xs[i].d(k));
  });
}

/// Block-diagonal map between the direct sums of sources and targets.
inline ChainMap direct_sum_maps(Ring ring, const std::vector<ChainMap>& fs) {
  std::vector<ChainComplex> xs, ys;
  std::vector<Layout::Part> px, py;
  for (const auto& f : fs) {
    xs.push_back(f.source());
    ys.push_back(f.target());
    px.push_back({f.source(), 0});
    py.push_back({f.target(), 0});
  }
  Layout lx(ring, px), ly(ring, py);
  return build_map(direct_sum_complex(ring, xs), direct_sum_complex(ring, ys), [&](int k, MatrixBuilder& b) {
    for (std::size_t i = 0; i < fs.size(); ++i) ly.put(b, i, k, lx, i, k, fs[i].at(k));
  });
}

namespace detail {

/// Degree-k summands X_i (x) Y_{k-i} of a tensor product, ascending in i.
struct TensorIndex {
  TensorIndex(const ChainComplex& x, const ChainComplex& y) : x(x), y(y) {
    if (x.is_zero() || y.is_zero()) return;
    lo = x.min_degree() + y.min_degree();
    hi = x.max_degree() + y.max_degree();
    for (int k = lo; k <= hi; ++k) {
      std::size_t off = 0;
      auto& row = offsets.emplace_back();
      for (int i = x.min_degree(); i <= x.max_degree(); ++i) {
        row.push_back(off);
        off += x.rank(i) * y.rank(k - i);
      }
      ranks.push_back(off);
    }
  }
  [[nodiscard]] std::size_t rank(int k) const {
    return (k < lo || k > hi) ? 0 : ranks[static_cast<std::size_t>(k - lo)];
  }
  [[nodiscard]] std::size_t offset(int k, int i) const {
    return offsets[static_cast<std::size_t>(k - lo)][static_cast<std::size_t>(i - x.min_degree())];
  }
  const ChainComplex& x;
  const ChainComplex& y;
  int lo = 0, hi = -1;
  std::vector<std::size_t> ranks;
  std::vector<std::vector<std::size_t>> offsets;
};

}  // namespace detail

/// (X (x) Y)_k = sum_{i+j=k} X_i (x) Y_j, ordered by ascending i, each block
/// in Kronecker order; d(a (x) b) = da (x) b + (-1)^{|a|} a (x) db.
inline ChainComplex tensor(const ChainComplex& x, const ChainComplex& y) {
  require_same_ring(x.ring(), y.ring(), "tensor");
  const Ring& ring = x.ring();
  detail::TensorIndex t(x, y);
  if (t.hi < t.lo) return ChainComplex::zero(ring);
  std::map<int, std::size_t> ranks;
  std::map<int, Matrix> diffs;
  for (int k = t.lo; k <= t.hi; ++k) ranks[k] = t.rank(k);
  for (int k = t.lo; k <= t.hi + 1; ++k) {
    MatrixBuilder b(ring, t.rank(k - 1), t.rank(k));
    if (b.rows() && b.cols()) {
      for (int i = x.min_degree(); i <= x.max_degree(); ++i) {
        int j = k - i;
        if (x.rank(i) == 0 || y.rank(j) == 0) continue;
        // da (x) b lands in X_{i-1} (x) Y_j.
        if (x.rank(i - 1))
          b.add_block(t.offset(k - 1, i - 1), t.offset(k, i), kron(x.d(i), Matrix::identity(ring, y.rank(j))));
        // (-1)^i a (x) db lands in X_i (x) Y_{j-1}.
        if (y.rank(j - 1))
          b.add_block(t.offset(k - 1, i), t.offset(k, i), kron(Matrix::identity(ring, x.rank(i)), y.d(j)), i % 2 ? -1 : 1);
      }
    }
    diffs.emplace(k, std::move(b).build());
  }
  return ChainComplex::from(ring, ranks, std::move(diffs));
}

/// (f (x) g)(a (x) b) = f(a) (x) g(b) for degree-0 chain maps.
inline ChainMap tensor(const ChainMap& f, const ChainMap& g) {
  ChainComplex x = tensor(f.source(), g.source()), y = tensor(f.target(), g.target());
  detail::TensorIndex tx(f.source(), g.source()), ty(f.target(), g.target());
  return build_map(x, y, [&](int k, MatrixBuilder& b) {
    const ChainComplex& a = f.source();
    for (int i = a.min_degree(); i <= a.max_degree(); ++i) {
      int j = k - i;
      const Matrix& fi = f.at(i);
      const Matrix& gj = g.at(j);
      if (fi.rows() == 0 || fi.cols() == 0 || gj.rows() == 0 || gj.cols() == 0) continue;
      b.add_block(ty.offset(k, i), tx.offset(k, i), kron(fi, gj));
    }
  });
}

struct Cone {
  ChainComplex cone;
  ChainMap inclusion;   // Y -> cone(f)
  ChainMap projection;  // cone(f) -> shift(X, 1)
};

/// cone(f)_k = X_{k-1} + Y_k, d(x, y) = (-dx, -f(x) + dy).
inline Cone cone(const ChainMap& f) {
  const ChainComplex& x = f.source();
  const ChainComplex& y = f.target();
  Layout l(f.ring(), {{x, 1}, {y, 0}});
  Cone out;
  out.cone = l.build([&](int k, MatrixBuilder& b) {
    l.put(b, 0, k - 1, l, 0, k, x.d(k - 1), -1);
    l.put(b, 1, k - 1, l, 0, k, f.at(k - 1), -1);
    l.put(b, 1, k - 1, l, 1, k, y.d(k));
  });
  Layout ly(f.ring(), {{y, 0}});
  out.inclusion = build_map(y, out.cone, [&](int k, MatrixBuilder& b) { l.put_identity(b, 1, k, ly, 0, k); });
  ChainComplex sx = shift(x, 1);
  Layout lsx(f.ring(), {{x, 1}});
  out.projection = build_map(out.cone, sx, [&](int k, MatrixBuilder& b) { lsx.put_identity(b, 0, k, l, 0, k); });
  return out;
}

struct Cylinder {
  ChainComplex cylinder;
  ChainMap source_end;  // X -> Cyl(f), x -> (x, 0, 0)
  ChainMap target_end;  // Y -> Cyl(f), y -> (0, 0, y)
  ChainMap projection;  // Cyl(f) -> Y, (x, x', y) -> f(x) + y
};

/// Cyl(f)_k = X_k + X_{k-1} + Y_k, d(x, x', y) = (dx + x', -dx', dy - f(x')).
inline Cylinder cylinder(const ChainMap& f) {
  const ChainComplex& x = f.source();
  const ChainComplex& y = f.target();
  Layout l(f.ring(), {{x, 0}, {x, 1}, {y, 0}});
  Cylinder out;
  out.cylinder = l.build([&](int k, MatrixBuilder& b) {
    l.put(b, 0, k - 1, l, 0, k, x.d(k));
    l.put_identity(b, 0, k - 1, l, 1, k);
    l.put(b, 1, k - 1, l, 1, k, x.d(k - 1), -1);
    l.put(b, 2, k - 1, l, 2, k, y.d(k));
    l.put(b, 2, k - 1, l, 1, k, f.at(k - 1), -1);
  });
  Layout lx(f.ring(), {{x, 0}}), ly(f.ring(), {{y, 0}});
  out.source_end = build_map(x, out.cylinder, [&](int k, MatrixBuilder& b) { l.put_identity(b, 0, k, lx, 0, k); });
  out.target_end = build_map(y, out.cylinder, [&](int k, MatrixBuilder& b) { l.put_identity(b, 2, k, ly, 0, k); });
  out.projection = build_map(out.cylinder, y, [&](int k, MatrixBuilder& b) {
    ly.put(b, 0, k, l, 0, k, f.at(k));
    ly.put_identity(b, 0, k, l, 2, k);
  });
  return out;
}

struct HomotopyFiber {
  ChainComplex fiber;
  ChainMap projection;  // hofib(f) -> U
};

/// hofib(f)_k = U_k + V_{k+1}, d(u, v) = (du, -f(u) - dv).
inline HomotopyFiber hofib(const ChainMap& f) {
  const ChainComplex& u = f.source();
  const ChainComplex& v = f.target();
  Layout l(f.ring(), {{u, 0}, {v, -1}});
  HomotopyFiber out;
  out.fiber = l.build([&](int k, MatrixBuilder& b) {
    l.put(b, 0, k - 1, l, 0, k, u.d(k));
    l.put(b, 1, k - 1, l, 0, k, f.at(k), -1);
    l.put(b, 1, k - 1, l, 1, k, v.d(k + 1), -1);
  });
  Layout lu(f.ring(), {{u, 0}});
  out.projection = build_map(out.fiber, u, [&](int k, MatrixBuilder& b) { lu.put_identity(b, 0, k, l, 0, k); });
  return out;
}

struct PathObject {
  ChainComplex path;
  ChainMap alpha;  // U -> P(f), u -> (u, 0, f(u))
  ChainMap beta;   // P(f) -> V, (u, v, v') -> v'
};

/// P(f)_k = U_k + V_{k+1} + V_k, d(u, v, v') = (du, -f(u) - dv + v', dv').
inline PathObject path_object(const ChainMap& f) {
  const ChainComplex& u = f.source();
  const ChainComplex& v = f.target();
  Layout l(f.ring(), {{u, 0}, {v, -1}, {v, 0}});
  PathObject out;
  out.path = l.build([&](int k, MatrixBuilder& b) {
    l.put(b, 0, k - 1, l, 0, k, u.d(k));
    l.put(b, 1, k - 1, l, 0, k, f.at(k), -1);
    l.put(b, 1, k - 1, l, 1, k, v.d(k + 1), -1);
    l.put_identity(b, 1, k - 1, l, 2, k);
    l.put(b, 2, k - 1, l, 2, k, v.d(k));
  });
  Layout lu(f.ring(), {{u, 0}}), lv(f.ring(), {{v, 0}});
  out.alpha = build_map(u, out.path, [&](int k, MatrixBuilder& b) {
    l.put_identity(b, 0, k, lu, 0, k);
    l.put(b, 2, k, lu, 0, k, f.at(k));
  });
  out.beta = build_map(out.path, v, [&](int k, MatrixBuilder& b) { lv.put_identity(b, 0, k, l, 2, k); });
  return out;
}

struct Subcomplex {
  ChainComplex complex;
  ChainMap inclusion;  // columns are the chosen basis in each degree
};

/// Subcomplex spanned in degree k by the columns of basis.at(k) (a matrix of
/// shape rank x_k by n_k whose rows at `pivots[k]` form an identity block).
/// The differential is read off at the pivot rows and checked exactly.
inline Subcomplex restrict_to(const ChainComplex& x, const std::map<int, Matrix>& basis,
                              const std::map<int, std::vector<std::size_t>>& pivots) {
  const Ring& ring = x.ring();
  std::map<int, std::size_t> ranks;
  for (const auto& [k, m] : basis) ranks[k] = m.cols();
  auto basis_at = [&](int k) -> const Matrix* {
    auto it = basis.find(k);
    return it == basis.end() ? nullptr : &it->second;
  };
  std::map<int, Matrix> diffs;
  for (const auto& [k, m] : basis) {
    const Matrix* below = basis_at(k - 1);
    if (!below || below->cols() == 0 || m.cols() == 0) continue;
    Matrix image = x.d(k) * m;  // rank x_{k-1} by n_k
    const auto& piv = pivots.at(k - 1);
    MatrixBuilder r(ring, piv.size(), image.rows());
    for (std::size_t i = 0; i < piv.size(); ++i) r.add_canonical(i, piv[i], Rational(1));
    Matrix coeffs = std::move(r).build() * image;
    if (*below * coeffs != image) throw PreconditionError("restrict_to: basis does not span a subcomplex");
    diffs.emplace(k, std::move(coeffs));
  }
  Subcomplex out;
  out.complex = ChainComplex::from(ring, ranks, std::move(diffs));
  std::map<int, Matrix> comps;
  for (const auto& [k, m] : basis)
    if (m.cols() && m.rows()) comps.emplace(k, m);
  out.inclusion = ChainMap(out.complex, x, std::move(comps));
  return out;
}

/// Kernel of a chain map, with the basis of kernel_basis in each degree.
/// Over Z the basis is computed over Q and must be integral (it is whenever
/// the echelon form has unit pivots, e.g. for coordinate projections).
inline Subcomplex kernel_complex(const ChainMap& f) {
  const ChainComplex& x = f.source();
  const bool over_z = !x.ring().is_field();
  std::map<int, Matrix> basis;
  std::map<int, std::vector<std::size_t>> pivots;
  for (int k : x.degrees()) {
    Matrix fk = f.target().rank(k) ? f.at(k) : Matrix(x.ring(), 0, x.rank(k));
    if (over_z) fk = fk.over(Ring::rationals());
    Matrix kb = kernel_basis(fk);
    basis.emplace(k, over_z ? kb.over(x.ring()) : kb);
    pivots.emplace(k, kernel_free_coordinates(fk));
  }
  return restrict_to(x, basis, pivots);
}

}  // namespace fck
