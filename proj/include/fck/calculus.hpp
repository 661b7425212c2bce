#pragma once

// Cross effects, the cotriple (t, xi, gamma) on functors of n variables and
// the diagonal cotriple (perp_n, epsilon, delta).

#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "fck/cube.hpp"
#include "fck/functor.hpp"

namespace fck {

// 0/1 matrices with n columns; row r is a bitmask over columns 1..n.

struct ZeroOneMatrix {
  unsigned n = 0;
  std::vector<std::uint32_t> rows;

  [[nodiscard]] unsigned at(unsigned r, unsigned j) const { return (rows[r - 1] >> (j - 1)) & 1u; }
  [[nodiscard]] ZeroOneMatrix row(unsigned l) const { return {n, {rows[l - 1]}}; }
  [[nodiscard]] ZeroOneMatrix pair(unsigned s, unsigned t) const { return {n, {rows[s - 1], rows[t - 1]}}; }
  [[nodiscard]] Subset row_subset(unsigned l) const { return {n, rows[l - 1]}; }
  /// The subset of {1..rows*n} with entry (r, j) at position (r-1)n + j.
  [[nodiscard]] Subset to_subset() const {
    Subset s{static_cast<unsigned>(rows.size()) * n, 0};
    for (std::size_t r = 0; r < rows.size(); ++r) s.bits |= rows[r] << (r * n);
    return s;
  }
  static ZeroOneMatrix from_subset(Subset w, unsigned nrows) {
    const unsigned n = w.n / nrows;
    ZeroOneMatrix m{n, std::vector<std::uint32_t>(nrows)};
    for (unsigned r = 0; r < nrows; ++r) m.rows[r] = (w.bits >> (r * n)) & ((1u << n) - 1);
    return m;
  }
  friend ZeroOneMatrix operator|(const ZeroOneMatrix& a, const ZeroOneMatrix& b) {
    ZeroOneMatrix m = a;
    m.rows.insert(m.rows.end(), b.rows.begin(), b.rows.end());
    return m;
  }
  /// Entrywise sum; defined when the supports are disjoint.
  friend ZeroOneMatrix operator+(const ZeroOneMatrix& a, const ZeroOneMatrix& b) {
    if (a.rows.size() != b.rows.size()) throw DimensionError("matrix sum needs equal row counts");
    ZeroOneMatrix m = a;
    for (std::size_t r = 0; r < m.rows.size(); ++r) {
      if (m.rows[r] & b.rows[r]) throw PreconditionError("matrix sum leaves {0,1}");
      m.rows[r] |= b.rows[r];
    }
    return m;
  }
  friend bool operator==(const ZeroOneMatrix&, const ZeroOneMatrix&) = default;
  [[nodiscard]] std::string to_string() const {
    std::string s = "[";
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r) s += ";";
      s += Subset{n, rows[r]}.to_string();
    }
    return s + "]";
  }
};

/// All matrices with `nrows` rows whose column sums are the indicator of u,
/// in ascending order of the associated subset.
inline std::vector<ZeroOneMatrix> enumerate_M(Subset u, unsigned nrows) {
  if (nrows == 0) throw PreconditionError("enumerate_M needs at least one row");
  std::vector<unsigned> cols;
  for (unsigned j = 1; j <= u.n; ++j)
    if (u.contains(j)) cols.push_back(j);
  std::size_t total = 1;
  for (std::size_t i = 0; i < cols.size(); ++i) total *= nrows;
  std::vector<ZeroOneMatrix> out;
  out.reserve(total);
  for (std::size_t code = 0; code < total; ++code) {
    ZeroOneMatrix m{u.n, std::vector<std::uint32_t>(nrows)};
    std::size_t c = code;
    for (unsigned j : cols) {
      m.rows[c % nrows] |= 1u << (j - 1);
      c /= nrows;
    }
    out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end(), [](const ZeroOneMatrix& a, const ZeroOneMatrix& b) {
    return a.to_subset().bits < b.to_subset().bits;
  });
  return out;
}

/// |{i < j : v_{2i} = v_{1j} = 1}|.
inline unsigned sgn2(const ZeroOneMatrix& v) {
  if (v.rows.size() != 2) throw PreconditionError("sgn2 needs a two-row matrix");
  unsigned count = 0;
  for (unsigned i = 1; i <= v.n; ++i)
    if (v.at(2, i)) count += static_cast<unsigned>(std::popcount(v.rows[0] >> i));
  return count;
}

/// sgn(M_23) + sgn(M_1 | M_2 + M_3) = sgn(M_12) + sgn(M_1 + M_2 | M_3).
inline bool sign_identity_holds(const ZeroOneMatrix& m) {
  if (m.rows.size() != 3) throw PreconditionError("sign identity needs a three-row matrix");
  const unsigned lhs = sgn2(m.pair(2, 3)) + sgn2(m.row(1) | (m.row(2) + m.row(3)));
  const unsigned rhs = sgn2(m.pair(1, 2)) + sgn2((m.row(1) + m.row(2)) | m.row(3));
  return lhs == rhs;
}

// Tuples and the cube G^X.

/// The morphism X(T) -> X(T + {i}): identities off slot i and the
/// augmentation X_i -> B on slot i.
inline std::vector<EtaMorphism> canonical_tuple_morphism(const std::vector<EtaObject>& xs, Subset t, unsigned i) {
  std::vector<EtaObject> src = replace_by_B(xs, t);
  std::vector<EtaMorphism> out;
  for (unsigned j = 1; j <= xs.size(); ++j) {
    const EtaObject& o = src[j - 1];
    if (j == i)
      out.push_back({o, terminal_object(o.ctx), o.aug});
    else
      out.push_back(identity(o));
  }
  return out;
}

/// Cofibrant replacement of a tuple slot. B itself is kept as is.
inline EtaObject prepare_slot(const EtaObject& x) {
  return x == terminal_object(x.ctx) ? x : ensure_cofibrant(x);
}

inline EtaMorphism prepare_slot(const EtaMorphism& f) {
  EtaObject s = prepare_slot(f.source), t = prepare_slot(f.target);
  if (s == f.source && t == f.target) return f;
  EtaMorphism g = ensure_cofibrant(f);
  if (t == f.target && !(g.target == t)) g = {g.source, t, cofibrant_replace(f.target).q.f * g.f};
  if (s == f.source && !(g.source == s)) throw PreconditionError("cannot replace a morphism out of B");
  return g;
}

inline std::vector<EtaObject> prepare_tuple(const std::vector<EtaObject>& xs) {
  std::vector<EtaObject> out;
  for (const auto& x : xs) out.push_back(prepare_slot(x));
  return out;
}

/// G^X(U) = G(X(U)) on the cofibrantly replaced tuple.
inline CubicalDiagram build_cube_GX(const Functor& g, const std::vector<EtaObject>& input) {
  if (input.size() != g.arity)
    throw PreconditionError("functor " + g.name + " has arity " + std::to_string(g.arity) + ", got " +
                            std::to_string(input.size()) + " arguments");
  if (input.empty()) throw PreconditionError("cube of a functor of no variables");
  const auto xs = prepare_tuple(input);
  const unsigned n = g.arity;
  const Ring& ring = xs.front().ctx->ring;
  return CubicalDiagram(
      ring, n, [&](Subset t) { return g(replace_by_B(xs, t)); },
      [&](Subset t, unsigned i) { return g(canonical_tuple_morphism(xs, t, i)); });
}

inline ChainComplex t_apply(const Functor& g, const std::vector<EtaObject>& xs) {
  return ifiber_closed(build_cube_GX(g, xs));
}

/// t applied to a tuple morphism: the map of iterated fibers with components
/// G(f(U)), where f(U) is f off U and the identity of B on U.
inline ChainMap t_apply(const Functor& g, const std::vector<EtaMorphism>& input, const ChainComplex& src,
                        const ChainComplex& tgt) {
  std::vector<EtaMorphism> fs;
  for (const auto& f : input) fs.push_back(prepare_slot(f));
  const unsigned n = g.arity;
  std::vector<ChainMap> comps;
  for (std::uint32_t b = 0; b < (1u << n); ++b) {
    std::vector<EtaMorphism> fu;
    for (unsigned j = 1; j <= n; ++j)
      fu.push_back(Subset{n, b}.contains(j) ? identity(terminal_object(fs[j - 1].source.ctx)) : fs[j - 1]);
    comps.push_back(g(fu));
  }
  return ifiber_map(comps, src, tgt);
}

/// tG as a functor of n variables.
inline Functor t_functor(const Functor& g) {
  return {"t(" + g.name + ")", g.arity, [g](const std::vector<EtaObject>& xs) { return t_apply(g, xs); },
          [g](const std::vector<EtaMorphism>& fs) {
            std::vector<EtaObject> s, t;
            for (const auto& f : fs) {
              s.push_back(f.source);
              t.push_back(f.target);
            }
            return t_apply(g, fs, t_apply(g, s), t_apply(g, t));
          }};
}

inline ChainComplex cr_n(const Functor& h, const std::vector<EtaObject>& xs) {
  return t_apply(coproduct_functor(h, static_cast<unsigned>(xs.size())), xs);
}

// The cubes for tt and ttt.

/// W subset of {1..rows*n} -> G(X(W_1 u ... u W_rows)); the edge in direction
/// s is the identity when another row already contains column s mod n.
inline CubicalDiagram stacked_cube(const CubicalDiagram& gx, unsigned nrows) {
  const unsigned n = gx.n();
  const std::uint32_t mask = (1u << n) - 1;
  auto collapse = [&](Subset w) {
    std::uint32_t u = 0;
    for (unsigned r = 0; r < nrows; ++r) u |= (w.bits >> (r * n)) & mask;
    return Subset{n, u};
  };
  return CubicalDiagram(
      gx.ring(), nrows * n, [&](Subset w) { return gx.vertex(collapse(w)); },
      [&](Subset w, unsigned s) {
        const unsigned col = (s - 1) % n + 1;
        Subset u = collapse(w);
        return u.contains(col) ? ChainMap::identity(gx.vertex(u)) : gx.edge(u, col);
      });
}

inline std::vector<ChainComplex> cube_vertices(const CubicalDiagram& x) {
  std::vector<ChainComplex> out;
  for (std::uint32_t b = 0; b < (1u << x.n()); ++b) out.push_back(x.vertex({x.n(), b}));
  return out;
}

struct Block {
  std::uint32_t target;
  int sign;
  std::optional<ChainMap> map;  // identity when empty
};

/// A map between iterated fibers (given by their vertex lists) assembled
/// from vertex blocks of equal size shift.
inline ChainMap block_map(const std::vector<ChainComplex>& sv, const ChainComplex& src, const std::vector<ChainComplex>& tv,
                          const ChainComplex& tgt, const std::function<std::vector<Block>(std::uint32_t)>& blocks) {
  const Ring& ring = src.ring();
  Layout ls = detail::ifiber_layout(ring, sv), lt = detail::ifiber_layout(ring, tv);
  std::vector<std::vector<Block>> all;
  for (std::uint32_t t = 0; t < sv.size(); ++t) {
    all.push_back(blocks(t));
    for (const auto& b : all.back())
      if (std::popcount(b.target) != std::popcount(t)) throw PreconditionError("block_map: summand sizes differ");
  }
  return build_map(src, tgt, [&](int k, MatrixBuilder& m) {
    for (std::uint32_t t = 0; t < sv.size(); ++t)
      for (const auto& b : all[t]) {
        if (b.map)
          lt.put(m, b.target, k, ls, t, k, b.map->at(k + std::popcount(t)), b.sign);
        else
          lt.put_identity(m, b.target, k, ls, t, k, b.sign);
      }
  });
}

/// Everything needed to state the cotriple identities for (G, X).
struct TData {
  CubicalDiagram gx, tt, ttt;
  ChainComplex t_complex, tt_complex, ttt_complex;
  ChainComplex g_complex;  // G(X)
};

inline TData t_data(const Functor& g, const std::vector<EtaObject>& xs, bool with_ttt = true) {
  TData d;
  d.gx = build_cube_GX(g, xs);
  d.tt = stacked_cube(d.gx, 2);
  d.t_complex = ifiber_closed(d.gx);
  d.tt_complex = ifiber_closed(d.tt);
  if (with_ttt) {
    d.ttt = stacked_cube(d.gx, 3);
    d.ttt_complex = ifiber_closed(d.ttt);
  }
  d.g_complex = d.gx.vertex({d.gx.n(), 0});
  return d;
}

inline int sign_of(unsigned e) { return e % 2 ? -1 : 1; }

/// xi : tG(X) -> ttG(X), y in summand T -> sum over V in M_2n(T) of
/// (-1)^sgn(V) y in summand (V_1, V_2).
inline ChainMap xi(const TData& d) {
  const unsigned n = d.gx.n();
  return block_map(cube_vertices(d.gx), d.t_complex, cube_vertices(d.tt), d.tt_complex, [&](std::uint32_t t) {
    std::vector<Block> out;
    for (const auto& v : enumerate_M({n, t}, 2)) out.push_back({v.to_subset().bits, sign_of(sgn2(v)), std::nullopt});
    return out;
  });
}

/// gamma : tG(X) -> G(X), projection onto the summand of the empty set.
inline ChainMap gamma(const TData& d) {
  return block_map(cube_vertices(d.gx), d.t_complex, {d.g_complex}, d.g_complex, [&](std::uint32_t t) {
    return t == 0 ? std::vector<Block>{{0, 1, std::nullopt}} : std::vector<Block>{};
  });
}

/// t(gamma) : ttG -> tG keeps the summands (empty, V) as V.
inline ChainMap t_gamma(const TData& d) {
  const unsigned n = d.gx.n();
  return block_map(cube_vertices(d.tt), d.tt_complex, cube_vertices(d.gx), d.t_complex, [&](std::uint32_t w) {
    auto m = ZeroOneMatrix::from_subset({2 * n, w}, 2);
    return m.rows[0] == 0 ? std::vector<Block>{{m.rows[1], 1, std::nullopt}} : std::vector<Block>{};
  });
}

/// gamma_t : ttG -> tG keeps the summands (U, empty) as U.
inline ChainMap gamma_t(const TData& d) {
  const unsigned n = d.gx.n();
  return block_map(cube_vertices(d.tt), d.tt_complex, cube_vertices(d.gx), d.t_complex, [&](std::uint32_t w) {
    auto m = ZeroOneMatrix::from_subset({2 * n, w}, 2);
    return m.rows[1] == 0 ? std::vector<Block>{{m.rows[0], 1, std::nullopt}} : std::vector<Block>{};
  });
}

/// t(xi) : ttG -> tttG splits the first row: (T, U) -> (V_1, V_2, U).
inline ChainMap t_xi(const TData& d) {
  const unsigned n = d.gx.n();
  return block_map(cube_vertices(d.tt), d.tt_complex, cube_vertices(d.ttt), d.ttt_complex, [&](std::uint32_t w) {
    auto m = ZeroOneMatrix::from_subset({2 * n, w}, 2);
    std::vector<Block> out;
    for (const auto& v : enumerate_M(m.row_subset(1), 2))
      out.push_back({(v | m.row(2)).to_subset().bits, sign_of(sgn2(v)), std::nullopt});
    return out;
  });
}

/// xi_t : ttG -> tttG splits the second row: (T, U) -> (T, V_1, V_2).
inline ChainMap xi_t(const TData& d) {
  const unsigned n = d.gx.n();
  return block_map(cube_vertices(d.tt), d.tt_complex, cube_vertices(d.ttt), d.ttt_complex, [&](std::uint32_t w) {
    auto m = ZeroOneMatrix::from_subset({2 * n, w}, 2);
    std::vector<Block> out;
    for (const auto& v : enumerate_M(m.row_subset(2), 2))
      out.push_back({(m.row(1) | v).to_subset().bits, sign_of(sgn2(v)), std::nullopt});
    return out;
  });
}

struct CheckReport {
  std::string check;
  bool pass = true;
  std::vector<std::string> failures;

  void fail(std::string what) {
    pass = false;
    failures.push_back(std::move(what));
  }
};

namespace detail {

inline std::string first_difference(const ChainMap& a, const ChainMap& b) {
  std::vector<int> degs = a.degrees();
  for (int k : b.degrees()) degs.push_back(k);
  for (int k : degs) {
    const Matrix& x = a.at(k);
    const Matrix& y = b.at(k);
    if (x == y) continue;
    if (x.rows() != y.rows() || x.cols() != y.cols()) return "degree " + std::to_string(k) + ": shapes differ";
    for (std::size_t r = 0; r < x.rows(); ++r)
      for (std::size_t c = 0; c < x.cols(); ++c)
        if (x.at(r, c) != y.at(r, c))
          return "degree " + std::to_string(k) + " entry (" + std::to_string(r) + "," + std::to_string(c) + "): " +
                 x.at(r, c).to_string() + " vs " + y.at(r, c).to_string();
  }
  return "maps differ";
}

inline void expect_equal(CheckReport& rep, const std::string& what, const ChainMap& a, const ChainMap& b) {
  if (a.source() != b.source() || a.target() != b.target())
    rep.fail(what + ": endpoints differ");
  else if (a != b)
    rep.fail(what + ": " + first_difference(a, b));
}

inline void expect_chain_map(CheckReport& rep, const std::string& what, const ChainMap& f) {
  auto v = validate(f);
  if (!v.empty()) rep.fail(what + ": " + v.front());
}

}  // namespace detail

/// xi and gamma are chain maps.
inline CheckReport verify_xi_chain_map(const TData& d) {
  CheckReport rep{"xi-chainmap", true, {}};
  detail::expect_chain_map(rep, "xi", xi(d));
  detail::expect_chain_map(rep, "gamma", gamma(d));
  return rep;
}

/// gamma_t o xi = id and t(gamma) o xi = id.
inline CheckReport verify_counital(const TData& d) {
  CheckReport rep{"counital", true, {}};
  ChainMap x = xi(d), id = ChainMap::identity(d.t_complex);
  detail::expect_equal(rep, "gamma_t o xi", gamma_t(d) * x, id);
  detail::expect_equal(rep, "t(gamma) o xi", t_gamma(d) * x, id);
  return rep;
}

/// (t xi) o xi = (xi_t) o xi.
inline CheckReport verify_coassoc(const TData& d) {
  CheckReport rep{"coassoc", true, {}};
  ChainMap x = xi(d);
  detail::expect_equal(rep, "t(xi) o xi vs xi_t o xi", t_xi(d) * x, xi_t(d) * x);
  detail::expect_chain_map(rep, "t(xi)", t_xi(d));
  detail::expect_chain_map(rep, "xi_t", xi_t(d));
  return rep;
}

/// The sign identity for every M in M_3n(T), every T subset of {1..n}.
inline CheckReport verify_sign_identity(unsigned n) {
  CheckReport rep{"sign-identity", true, {}};
  for (std::uint32_t t = 0; t < (1u << n); ++t)
    for (const auto& m : enumerate_M({n, t}, 3))
      if (!sign_identity_holds(m)) rep.fail("sign identity fails at " + m.to_string());
  return rep;
}

/// The 2n-cube iterated fiber equals t applied twice.
inline CheckReport tt_two_routes(const Functor& g, const std::vector<EtaObject>& xs, const TData& d) {
  CheckReport rep{"two-routes", true, {}};
  ChainComplex literal = t_apply(t_functor(g), xs);
  if (literal != d.tt_complex) {
    std::ostringstream os;
    os << "2n-cube fiber and t(tG) differ";
    for (int k : literal.degrees())
      if (literal.rank(k) != d.tt_complex.rank(k) || literal.d(k) != d.tt_complex.d(k)) {
        os << " first at degree " << k;
        break;
      }
    rep.fail(os.str());
  }
  return rep;
}

// The diagonal cotriple.

namespace detail {

struct ObjectCache {
  std::mutex mutex;
  std::unordered_multimap<std::size_t, std::pair<EtaObject, ChainComplex>> values;
};

}  // namespace detail

/// The n-fold self coproduct of X with slots in U replaced by B.
inline EtaObject diagonal_coproduct(const EtaObject& x, unsigned n, Subset u) {
  return coproduct_over_A(replace_by_B(std::vector<EtaObject>(n, x), u)).object;
}

/// perp_n H as a functor of one variable; object values are cached.
inline Functor perp_functor(const Functor& h, unsigned n) {
  if (h.arity != 1) throw PreconditionError("perp_n needs a functor of one variable");
  if (n == 0) throw PreconditionError("perp_n needs n >= 1");
  Functor g = coproduct_functor(h, n);
  auto cache = std::make_shared<detail::ObjectCache>();
  auto objects = [g, n, cache](const std::vector<EtaObject>& xs) {
    EtaObject x = ensure_cofibrant(xs[0]);
    const std::size_t key = x.hash();
    {
      std::lock_guard<std::mutex> lock(cache->mutex);
      auto [lo, hi] = cache->values.equal_range(key);
      for (auto it = lo; it != hi; ++it)
        if (it->second.first == x) return it->second.second;
    }
    ChainComplex value = t_apply(g, std::vector<EtaObject>(n, x));
    std::lock_guard<std::mutex> lock(cache->mutex);
    cache->values.emplace(key, std::make_pair(x, value));
    return value;
  };
  auto morphisms = [g, n, objects](const std::vector<EtaMorphism>& fs) {
    EtaMorphism f = ensure_cofibrant(fs[0]);
    return t_apply(g, std::vector<EtaMorphism>(n, f), objects({f.source}), objects({f.target}));
  };
  return {"perp" + std::to_string(n) + "(" + h.name + ")", 1, objects, morphisms};
}

inline ChainComplex perp_n(const Functor& h, unsigned n, const EtaObject& x) { return perp_functor(h, n)(x); }

/// epsilon : perp_n H(X) -> H(X), H(fold) o gamma (followed by H(q) when X
/// is replaced).
inline ChainMap epsilon(const Functor& h, const Functor& perp_h, unsigned n, const EtaObject& x) {
  EtaObject xc = ensure_cofibrant(x);
  ChainComplex src = perp_h(xc);
  Coproduct cp = coproduct_over_A(std::vector<EtaObject>(n, xc));
  ChainMap hfold = h(fold(cp, xc));
  const ChainComplex& top = hfold.source();
  std::vector<ChainComplex> sv;
  for (std::uint32_t b = 0; b < (1u << n); ++b) sv.push_back(b ? h(diagonal_coproduct(xc, n, {n, b})) : top);
  ChainMap proj = block_map(sv, src, {top}, top, [](std::uint32_t t) {
    return t == 0 ? std::vector<Block>{{0, 1, std::nullopt}} : std::vector<Block>{};
  });
  ChainMap out = hfold * proj;
  if (!(xc == x)) out = h(cofibrant_replace(x).q) * out;
  return out;
}

inline ChainMap epsilon(const Functor& h, unsigned n, const EtaObject& x) {
  return epsilon(h, perp_functor(h, n), n, x);
}

/// kappa_{V1,V2} : u_j X(V1 u V2)_j -> u_i Z_i with Z_i = B for i in V1 and
/// Z_i = u_j X(V2)_j otherwise.
inline EtaMorphism kappa(const EtaObject& x, unsigned n, Subset v1, Subset v2) {
  const auto& ctx = x.ctx;
  Coproduct src = coproduct_over_A(replace_by_B(std::vector<EtaObject>(n, x), {n, v1.bits | v2.bits}));
  Coproduct y = coproduct_over_A(replace_by_B(std::vector<EtaObject>(n, x), v2));
  Coproduct tgt = coproduct_over_A(replace_by_B(std::vector<EtaObject>(n, y.object), v1));
  std::vector<EtaMorphism> g;
  for (unsigned j = 1; j <= n; ++j) {
    if (v1.contains(j))
      g.push_back(tgt.inclusions[j - 1]);
    else
      g.push_back(compose(tgt.inclusions[j - 1], y.inclusions[j - 1]));
  }
  (void)ctx;
  return induced_from_coproduct(src, tgt.object, g);
}

/// delta : perp_n H(X) -> perp_n perp_n H(X); summand T goes to the pairs
/// (V1, V2) with V in M_2n(T), by (-1)^sgn(V) H(kappa_{V1,V2}).
inline ChainMap delta(const Functor& h, const Functor& perp_h, const Functor& perp_perp_h, unsigned n,
                      const EtaObject& x) {
  EtaObject xc = ensure_cofibrant(x);
  ChainComplex src = perp_h(xc), tgt = perp_perp_h(xc);
  std::vector<ChainComplex> sv, tv;
  for (std::uint32_t b = 0; b < (1u << n); ++b) sv.push_back(h(diagonal_coproduct(xc, n, {n, b})));
  for (std::uint32_t w = 0; w < (1u << (2 * n)); ++w) {
    auto m = ZeroOneMatrix::from_subset({2 * n, w}, 2);
    EtaObject y = diagonal_coproduct(xc, n, m.row_subset(2));
    tv.push_back(h(diagonal_coproduct(y, n, m.row_subset(1))));
  }
  return block_map(sv, src, tv, tgt, [&](std::uint32_t t) {
    std::vector<Block> out;
    for (const auto& v : enumerate_M({n, t}, 2))
      out.push_back({v.to_subset().bits, sign_of(sgn2(v)), h(kappa(xc, n, v.row_subset(1), v.row_subset(2)))});
    return out;
  });
}

inline ChainMap delta(const Functor& h, unsigned n, const EtaObject& x) {
  Functor p = perp_functor(h, n);
  return delta(h, p, perp_functor(p, n), n, x);
}

/// perp_n applied to a natural transformation theta : F -> G, given perp_n F
/// and perp_n G.
inline NatTrans perp_nat(const NatTrans& theta, const Functor& perp_f, const Functor& perp_g, unsigned n) {
  return {perp_f, perp_g, [theta, perp_f, perp_g, n](const EtaObject& x) {
            EtaObject xc = ensure_cofibrant(x);
            std::vector<ChainMap> comps;
            for (std::uint32_t b = 0; b < (1u << n); ++b) comps.push_back(theta.at(diagonal_coproduct(xc, n, {n, b})));
            return ifiber_map(comps, perp_f(xc), perp_g(xc));
          }};
}

}  // namespace fck
