#pragma once

// Cubical diagrams of chain complexes, iterated and total homotopy fibers.

#include <bit>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fck/constructions.hpp"

namespace fck {

/// T subset of {1..n} as a bitmask; coordinate i is bit i-1.
struct Subset {
  unsigned n = 0;
  std::uint32_t bits = 0;

  static Subset full(unsigned n) { return {n, n == 32 ? ~0u : (1u << n) - 1}; }
  [[nodiscard]] bool contains(unsigned i) const { return (bits >> (i - 1)) & 1u; }
  [[nodiscard]] Subset with(unsigned i) const { return {n, bits | (1u << (i - 1))}; }
  [[nodiscard]] Subset without(unsigned i) const { return {n, bits & ~(1u << (i - 1))}; }
  [[nodiscard]] unsigned size() const { return static_cast<unsigned>(std::popcount(bits)); }
  /// |{s in T : s > i}|.
  [[nodiscard]] unsigned count_above(unsigned i) const {
    return static_cast<unsigned>(std::popcount(i >= 32 ? 0u : bits >> i));
  }
  /// "101" for {1,3} with n = 3; leftmost character is coordinate 1.
  [[nodiscard]] std::string to_string() const {
    std::string s;
    for (unsigned i = 1; i <= n; ++i) s += contains(i) ? '1' : '0';
    return s;
  }
  static Subset parse(const std::string& s) {
    Subset t{static_cast<unsigned>(s.size()), 0};
    for (unsigned i = 0; i < s.size(); ++i) {
      if (s[i] == '1')
        t.bits |= 1u << i;
      else if (s[i] != '0')
        throw PreconditionError("bad subset string: " + s);
    }
    return t;
  }
  friend bool operator==(const Subset&, const Subset&) = default;
};

/// Sign exponent of sigma_i^T in the iterated fiber differential.
inline unsigned sgn_sigma(Subset t, unsigned i) { return t.count_above(i); }

/// Functor from the subset lattice P(n) to chain complexes.
class CubicalDiagram {
 public:
  CubicalDiagram() = default;
  /// `vertex(T)` and `edge(T, i)` for i not in T; edges are stored for every
  /// such pair.
  CubicalDiagram(Ring ring, unsigned n, const std::function<ChainComplex(Subset)>& vertex,
                 const std::function<ChainMap(Subset, unsigned)>& edge)
      : ring_(ring), n_(n) {
    if (n > 16) throw PreconditionError("cube dimension too large");
    const std::uint32_t count = 1u << n;
    vertices_.reserve(count);
    for (std::uint32_t b = 0; b < count; ++b) vertices_.push_back(vertex({n, b}));
    edges_.resize(static_cast<std::size_t>(count) * n);
    for (std::uint32_t b = 0; b < count; ++b)
      for (unsigned i = 1; i <= n; ++i)
        if (!((b >> (i - 1)) & 1u)) edges_[b * n + (i - 1)] = edge({n, b}, i);
    for (std::uint32_t b = 0; b < count; ++b)
      for (unsigned i = 1; i <= n; ++i) {
        if ((b >> (i - 1)) & 1u) continue;
        const ChainMap& e = edges_[b * n + (i - 1)];
        if (e.source() != vertices_[b] || e.target() != vertices_[b | (1u << (i - 1))])
          throw PreconditionError("edge (" + Subset{n, b}.to_string() + ", " + std::to_string(i) +
                                  ") does not connect its vertices");
      }
  }

  [[nodiscard]] const Ring& ring() const { return ring_; }
  [[nodiscard]] unsigned n() const { return n_; }
  [[nodiscard]] const ChainComplex& vertex(Subset t) const { return vertices_[t.bits]; }
  [[nodiscard]] const ChainMap& edge(Subset t, unsigned i) const {
    if (i < 1 || i > n_ || t.contains(i)) throw PreconditionError("bad cube edge coordinate");
    return edges_[t.bits * n_ + (i - 1)];
  }

 private:
  Ring ring_ = Ring::rationals();
  unsigned n_ = 0;
  std::vector<ChainComplex> vertices_;
  std::vector<ChainMap> edges_;  // [bits * n + (i-1)]
};

/// Violations of: every edge a chain map, every square commuting.
inline std::vector<std::string> validate(const CubicalDiagram& x) {
  std::vector<std::string> out;
  const unsigned n = x.n();
  for (std::uint32_t b = 0; b < (1u << n); ++b) {
    Subset t{n, b};
    for (auto& s : validate(x.vertex(t))) out.push_back("vertex " + t.to_string() + ": " + s);
    for (unsigned i = 1; i <= n; ++i) {
      if (t.contains(i)) continue;
      if (!is_valid(x.edge(t, i))) out.push_back("edge " + t.to_string() + "+" + std::to_string(i) + " is not a chain map");
      for (unsigned j = i + 1; j <= n; ++j) {
        if (t.contains(j)) continue;
        if (x.edge(t.with(i), j) * x.edge(t, i) != x.edge(t.with(j), i) * x.edge(t, j))
          out.push_back("square at " + t.to_string() + " in directions " + std::to_string(i) + "," + std::to_string(j) +
                        " does not commute");
      }
    }
  }
  return out;
}

/// Restriction to subsets with coordinate i absent (side 0) or present
/// (side 1), reindexed as an (n-1)-cube.
inline CubicalDiagram face(const CubicalDiagram& x, unsigned i, int side) {
  const unsigned n = x.n();
  if (i < 1 || i > n) throw PreconditionError("face: bad coordinate " + std::to_string(i));
  auto lift = [&](Subset s) {
    std::uint32_t low = s.bits & ((1u << (i - 1)) - 1);
    std::uint32_t high = (s.bits >> (i - 1)) << i;
    return Subset{n, low | high | (side ? 1u << (i - 1) : 0u)};
  };
  return CubicalDiagram(
      x.ring(), n - 1, [&](Subset s) { return x.vertex(lift(s)); },
      [&](Subset s, unsigned j) { return x.edge(lift(s), j < i ? j : j + 1); });
}

/// Vertexwise maps between two cubes of the same dimension.
struct CubeMap {
  CubicalDiagram source;
  CubicalDiagram target;
  std::vector<ChainMap> components;  // indexed by bitmask
};

inline std::vector<std::string> validate(const CubeMap& f) {
  std::vector<std::string> out;
  const unsigned n = f.source.n();
  for (std::uint32_t b = 0; b < (1u << n); ++b) {
    Subset t{n, b};
    const ChainMap& c = f.components[b];
    if (c.source() != f.source.vertex(t) || c.target() != f.target.vertex(t))
      out.push_back("component " + t.to_string() + " has wrong endpoints");
    else if (!is_valid(c))
      out.push_back("component " + t.to_string() + " is not a chain map");
    for (unsigned i = 1; i <= n; ++i)
      if (!t.contains(i) && f.target.edge(t, i) * c != f.components[t.with(i).bits] * f.source.edge(t, i))
        out.push_back("naturality fails at " + t.to_string() + "+" + std::to_string(i));
  }
  return out;
}

/// The (n+1)-cube whose faces at the new highest coordinate are the source
/// (side 0) and target (side 1) of f, joined by its components.
inline CubicalDiagram cube_from_map(const CubeMap& f) {
  const unsigned n = f.source.n();
  const std::uint32_t top = 1u << n;
  return CubicalDiagram(
      f.source.ring(), n + 1,
      [&](Subset t) { return t.bits & top ? f.target.vertex({n, t.bits & ~top}) : f.source.vertex({n, t.bits}); },
      [&](Subset t, unsigned i) {
        if (i == n + 1) return f.components[t.bits];
        return t.bits & top ? f.target.edge({n, t.bits & ~top}, i) : f.source.edge({n, t.bits}, i);
      });
}

/// Vertexwise direct sum of two cubes, with the inclusion of the first.
inline std::pair<CubicalDiagram, CubeMap> direct_sum(const CubicalDiagram& x, const CubicalDiagram& y) {
  const Ring& ring = x.ring();
  const unsigned n = x.n();
  std::vector<DirectSum> sums;
  for (std::uint32_t b = 0; b < (1u << n); ++b) sums.push_back(direct_sum(ring, {x.vertex({n, b}), y.vertex({n, b})}));
  CubicalDiagram s(
      ring, n, [&](Subset t) { return sums[t.bits].sum; },
      [&](Subset t, unsigned i) { return direct_sum_maps(ring, {x.edge(t, i), y.edge(t, i)}); });
  CubeMap inc{x, s, {}};
  for (std::uint32_t b = 0; b < (1u << n); ++b) inc.components.push_back(sums[b].inclusions[0]);
  return {s, inc};
}

/// Vertexwise tensor product with a fixed complex.
inline CubicalDiagram tensor(const CubicalDiagram& x, const ChainComplex& e) {
  ChainMap id = ChainMap::identity(e);
  return CubicalDiagram(
      x.ring(), x.n(), [&](Subset t) { return tensor(x.vertex(t), e); },
      [&](Subset t, unsigned i) { return tensor(x.edge(t, i), id); });
}

namespace detail {

inline Layout ifiber_layout(const CubicalDiagram& x) {
  std::vector<Layout::Part> parts;
  for (std::uint32_t b = 0; b < (1u << x.n()); ++b)
    parts.push_back({x.vertex({x.n(), b}), -static_cast<int>(std::popcount(b))});
  return Layout(x.ring(), std::move(parts));
}

inline Layout ifiber_layout(const Ring& ring, const std::vector<ChainComplex>& vertices) {
  std::vector<Layout::Part> parts;
  for (std::uint32_t b = 0; b < vertices.size(); ++b)
    parts.push_back({vertices[b], -static_cast<int>(std::popcount(b))});
  return Layout(ring, std::move(parts));
}

}  // namespace detail

/// ifiber(X)_k = sum_T X(T)_{k+|T|}, T in ascending bitmask order, with
/// d(x) = (-1)^{|T|} dx + sum_{i not in T} (-1)^{sgn(sigma_i^T)+1} X(sigma_i^T)(x).
inline ChainComplex ifiber_closed(const CubicalDiagram& x) {
  const unsigned n = x.n();
  Layout l = detail::ifiber_layout(x);
  return l.build([&](int k, MatrixBuilder& b) {
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
      Subset t{n, bits};
      const int s = static_cast<int>(t.size());
      l.put(b, bits, k - 1, l, bits, k, x.vertex(t).d(k + s), s % 2 ? -1 : 1);
      for (unsigned i = 1; i <= n; ++i) {
        if (t.contains(i)) continue;
        int sign = (sgn_sigma(t, i) + 1) % 2 ? -1 : 1;
        l.put(b, t.with(i).bits, k - 1, l, bits, k, x.edge(t, i).at(k + s), sign);
      }
    }
  });
}

/// Map of iterated fibers induced by a cube map (blockwise).
inline ChainMap ifiber_map(const CubeMap& f, const ChainComplex& src, const ChainComplex& tgt) {
  const unsigned n = f.source.n();
  Layout ls = detail::ifiber_layout(f.source), lt = detail::ifiber_layout(f.target);
  return build_map(src, tgt, [&](int k, MatrixBuilder& b) {
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits)
      lt.put(b, bits, k, ls, bits, k, f.components[bits].at(k + std::popcount(bits)));
  });
}

/// Blockwise map of iterated fibers given only the vertexwise components
/// (indexed by bitmask).
inline ChainMap ifiber_map(const std::vector<ChainMap>& components, const ChainComplex& src, const ChainComplex& tgt) {
  std::vector<ChainComplex> sv, tv;
  for (const auto& c : components) {
    sv.push_back(c.source());
    tv.push_back(c.target());
  }
  Layout ls = detail::ifiber_layout(src.ring(), sv), lt = detail::ifiber_layout(src.ring(), tv);
  return build_map(src, tgt, [&](int k, MatrixBuilder& b) {
    for (std::uint32_t bits = 0; bits < components.size(); ++bits)
      lt.put(b, bits, k, ls, bits, k, components[bits].at(k + std::popcount(bits)));
  });
}

inline ChainMap ifiber_map(const CubeMap& f) {
  return ifiber_map(f, ifiber_closed(f.source), ifiber_closed(f.target));
}

/// Map hofib(f) -> hofib(f') induced by a commuting square f' a = b f:
/// (u, v) -> (a u, b v).
inline ChainMap hofib_map(const ChainMap& f, const ChainMap& fp, const ChainMap& a, const ChainMap& b,
                          const ChainComplex& src, const ChainComplex& tgt) {
  Layout ls(f.ring(), {{f.source(), 0}, {f.target(), -1}});
  Layout lt(f.ring(), {{fp.source(), 0}, {fp.target(), -1}});
  return build_map(src, tgt, [&](int k, MatrixBuilder& m) {
    lt.put(m, 0, k, ls, 0, k, a.at(k));
    lt.put(m, 1, k, ls, 1, k, b.at(k + 1));
  });
}

struct RecursiveFiber {
  ChainComplex complex;
  /// Vertex bitmask of each summand block, in the order the recursion emits
  /// them (the same order in every degree).
  std::vector<std::uint32_t> order;
};

namespace detail {

struct RecursiveCubeFiber {
  ChainComplex complex;
  std::vector<std::uint32_t> order;
};

inline RecursiveCubeFiber ifiber_rec(const CubicalDiagram& x);

/// Map of recursive iterated fibers induced by a cube map, built by the same
/// recursion (hofib functoriality).
inline ChainMap ifiber_rec_map(const CubeMap& f, const RecursiveCubeFiber& src, const RecursiveCubeFiber& tgt) {
  const unsigned n = f.source.n();
  if (n == 0) return f.components[0];
  CubicalDiagram s1 = face(f.source, n, 0), s2 = face(f.source, n, 1);
  CubicalDiagram t1 = face(f.target, n, 0), t2 = face(f.target, n, 1);
  const std::uint32_t half = 1u << (n - 1);
  CubeMap f1{s1, t1, {f.components.begin(), f.components.begin() + half}};
  CubeMap f2{s2, t2, {f.components.begin() + half, f.components.end()}};
  CubeMap es{s1, s2, {}}, et{t1, t2, {}};
  for (std::uint32_t b = 0; b < half; ++b) {
    es.components.push_back(f.source.edge({n, b}, n));
    et.components.push_back(f.target.edge({n, b}, n));
  }
  RecursiveCubeFiber is1 = ifiber_rec(s1), is2 = ifiber_rec(s2), it1 = ifiber_rec(t1), it2 = ifiber_rec(t2);
  ChainMap fs = ifiber_rec_map(es, is1, is2);
  ChainMap ft = ifiber_rec_map(et, it1, it2);
  ChainMap a = ifiber_rec_map(f1, is1, it1);
  ChainMap b = ifiber_rec_map(f2, is2, it2);
  return hofib_map(fs, ft, a, b, src.complex, tgt.complex);
}

inline RecursiveCubeFiber ifiber_rec(const CubicalDiagram& x) {
  const unsigned n = x.n();
  if (n == 0) return {x.vertex({0, 0}), {0}};
  CubicalDiagram y1 = face(x, n, 0), y2 = face(x, n, 1);
  RecursiveCubeFiber r1 = ifiber_rec(y1), r2 = ifiber_rec(y2);
  CubeMap e{y1, y2, {}};
  for (std::uint32_t b = 0; b < (1u << (n - 1)); ++b) e.components.push_back(x.edge({n, b}, n));
  ChainMap f = ifiber_rec_map(e, r1, r2);
  RecursiveCubeFiber out{hofib(f).fiber, {}};
  for (auto b : r1.order) out.order.push_back(b);
  for (auto b : r2.order) out.order.push_back(b | (1u << (n - 1)));
  return out;
}

}  // namespace detail

/// Iterated fiber by recursion on the highest coordinate:
/// ifiber(X) = hofib(ifiber(Y_1) -> ifiber(Y_2)), ifiber of a 0-cube is its vertex.
inline RecursiveFiber ifiber_recursive(const CubicalDiagram& x) {
  auto r = detail::ifiber_rec(x);
  return {r.complex, r.order};
}

/// Permutes the summand blocks of ifiber_closed(x) (ascending bitmask) into
/// `order`; the result is comparable matrix-for-matrix with ifiber_recursive.
inline ChainComplex reorder_ifiber(const CubicalDiagram& x, const ChainComplex& closed,
                                   const std::vector<std::uint32_t>& order) {
  Layout from = detail::ifiber_layout(x);
  std::vector<Layout::Part> parts;
  for (auto b : order) parts.push_back({x.vertex({x.n(), b}), -std::popcount(b)});
  Layout to(x.ring(), parts);
  std::map<int, Matrix> perm, inv;
  auto perm_at = [&](int k) {
    MatrixBuilder p(x.ring(), to.rank(k), from.rank(k));
    for (std::size_t j = 0; j < order.size(); ++j) to.put_identity(p, j, k, from, order[j], k);
    return std::move(p).build();
  };
  std::map<int, std::size_t> ranks;
  std::map<int, Matrix> diffs;
  if (closed.is_zero()) return closed;
  for (int k = closed.min_degree(); k <= closed.max_degree(); ++k) ranks[k] = closed.rank(k);
  for (int k = closed.min_degree(); k <= closed.max_degree() + 1; ++k) {
    if (closed.rank(k) == 0 || closed.rank(k - 1) == 0) continue;
    diffs.emplace(k, perm_at(k - 1) * closed.d(k) * perm_at(k).transpose());
  }
  return ChainComplex::from(x.ring(), ranks, std::move(diffs));
}

struct TotalFiber {
  ChainComplex complex;  // basis (a, c, d, b): A_k + C_{k+1} + D_{k+2} + B_{k+1}
  ChainComplex pullback;
};

/// Total fiber of a square A -f-> B, A -alpha-> C, B -beta-> D, C -g-> D
/// (vertices 00, 10, 01, 11): hofib of A -> B x^h_D C, where the homotopy
/// pullback is the fiber product of the path object P(g) -> D <- B. Its
/// elements (c, d, d', b) satisfy d' = beta(b) and are parametrized by (c, d, b).
inline TotalFiber tfiber_square(const CubicalDiagram& x) {
  if (x.n() != 2) throw PreconditionError("tfiber_square needs a 2-cube");
  const Ring& ring = x.ring();
  const Subset e{2, 0}, one{2, 1}, two{2, 2};
  const ChainMap& f = x.edge(e, 1);
  const ChainMap& alpha = x.edge(e, 2);
  const ChainMap& beta = x.edge(one, 2);
  const ChainMap& g = x.edge(two, 1);
  const ChainComplex& a = x.vertex(e);
  const ChainComplex& bcx = x.vertex(one);
  const ChainComplex& dcx = x.vertex({2, 3});

  PathObject pg = path_object(g);
  DirectSum pb = direct_sum(ring, {pg.path, bcx});
  // (p, b) -> beta_P(p) - beta(b); its kernel is the strict pullback.
  ChainMap diff = pg.beta * pb.projections[0] - beta * pb.projections[1];
  Subcomplex pull = kernel_complex(diff);

  // a -> (alpha a, 0, g alpha a, f a) in P(g) + B, then read off (c, d, b).
  Layout lp(ring, {{pg.path, 0}, {bcx, 0}});
  Layout lpath(ring, {{x.vertex(two), 0}, {dcx, -1}, {dcx, 0}});
  Layout la(ring, {{a, 0}});
  ChainMap into = build_map(a, pb.sum, [&](int k, MatrixBuilder& m) {
    const std::size_t base = lp.offset(0, k);
    if (alpha.at(k).rows() && alpha.at(k).cols()) m.add_block(base + lpath.offset(0, k), 0, alpha.at(k));
    Matrix ga = g.at(k) * alpha.at(k);
    if (ga.rows() && ga.cols()) m.add_block(base + lpath.offset(2, k), 0, ga);
    lp.put(m, 1, k, la, 0, k, f.at(k));
  });
  ChainMap a_to_pull = build_map(a, pull.complex, [&](int k, MatrixBuilder& m) {
    Matrix full = into.at(k);
    if (full.rows() == 0) return;
    // Kernel-basis coordinates are the free (non-pivot) rows.
    Matrix dk = diff.target().rank(k) ? diff.at(k) : Matrix(ring, 0, pb.sum.rank(k));
    auto freec = kernel_free_coordinates(ring.is_field() ? dk : dk.over(Ring::rationals()));
    MatrixBuilder sel(ring, freec.size(), full.rows());
    for (std::size_t i = 0; i < freec.size(); ++i) sel.add_canonical(i, freec[i], Rational(1));
    Matrix coeffs = std::move(sel).build() * full;
    if (pull.inclusion.at(k) * coeffs != full) throw PreconditionError("tfiber_square: square does not commute");
    m.add_block(0, 0, coeffs);
  });
  return {hofib(a_to_pull).fiber, pull.complex};
}

/// Isomorphism tfiber_square(x) -> ifiber_closed(x): (a, c, d, b) -> (a, b, c, d).
inline ChainMap tfiber_ifiber_iso(const CubicalDiagram& x, const ChainComplex& tfib, const ChainComplex& ifib) {
  if (x.n() != 2) throw PreconditionError("tfiber_ifiber_iso needs a 2-cube");
  const Ring& ring = x.ring();
  const ChainComplex& a = x.vertex({2, 0});
  const ChainComplex& b = x.vertex({2, 1});
  const ChainComplex& c = x.vertex({2, 2});
  const ChainComplex& d = x.vertex({2, 3});
  Layout lt(ring, {{a, 0}, {c, -1}, {d, -2}, {b, -1}});
  Layout li(ring, {{a, 0}, {b, -1}, {c, -1}, {d, -2}});
  return build_map(tfib, ifib, [&](int k, MatrixBuilder& m) {
    li.put_identity(m, 0, k, lt, 0, k);
    li.put_identity(m, 1, k, lt, 3, k);
    li.put_identity(m, 2, k, lt, 1, k);
    li.put_identity(m, 3, k, lt, 2, k);
  });
}

inline ChainMap tfiber_ifiber_iso(const CubicalDiagram& x) {
  return tfiber_ifiber_iso(x, tfiber_square(x).complex, ifiber_closed(x));
}

}  // namespace fck
