#pragma once

// The factorization category: objects A -> X -> B factoring a fixed map
// eta : A -> B, with coproducts over A, cofibrant replacement and Sigma_B.

#include <memory>
#include <string>
#include <vector>

#include "fck/constructions.hpp"
#include "fck/cube.hpp"

namespace fck {

struct EtaContext {
  Ring ring;
  ChainComplex a;
  ChainComplex b;
  ChainMap eta;

  [[nodiscard]] bool is_based() const { return a.is_zero() && b.is_zero(); }
  friend bool operator==(const EtaContext& x, const EtaContext& y) {
    return x.ring == y.ring && x.a == y.a && x.b == y.b && x.eta == y.eta;
  }
};

using ContextPtr = std::shared_ptr<const EtaContext>;

inline ContextPtr make_context(const ChainMap& eta) {
  if (!is_valid(eta)) throw PreconditionError("context map eta is not a chain map");
  return std::make_shared<const EtaContext>(EtaContext{eta.ring(), eta.source(), eta.target(), eta});
}

/// Context with A = B = 0.
inline ContextPtr based_context(Ring ring) {
  ChainComplex z(ring);
  return make_context(ChainMap(z, z));
}

struct EtaObject {
  ContextPtr ctx;
  ChainComplex x;
  ChainMap unit;  // A -> X
  ChainMap aug;   // X -> B

  friend bool operator==(const EtaObject& p, const EtaObject& q) {
    return (p.ctx == q.ctx || *p.ctx == *q.ctx) && p.x == q.x && p.unit == q.unit && p.aug == q.aug;
  }
  [[nodiscard]] std::size_t hash() const { return x.hash() * 31u + unit.source().hash(); }
};

struct EtaMorphism {
  EtaObject source;
  EtaObject target;
  ChainMap f;
};

inline std::vector<std::string> validate(const EtaObject& x) {
  std::vector<std::string> out;
  if (x.unit.source() != x.ctx->a || x.unit.target() != x.x) out.push_back("unit has wrong endpoints");
  if (x.aug.source() != x.x || x.aug.target() != x.ctx->b) out.push_back("augmentation has wrong endpoints");
  if (!out.empty()) return out;
  for (auto& s : validate(x.x)) out.push_back("X: " + s);
  if (!is_valid(x.unit)) out.push_back("unit is not a chain map");
  if (!is_valid(x.aug)) out.push_back("augmentation is not a chain map");
  if (x.aug * x.unit != x.ctx->eta) out.push_back("aug o unit != eta");
  return out;
}

inline std::vector<std::string> validate(const EtaMorphism& m) {
  std::vector<std::string> out;
  if (m.f.source() != m.source.x || m.f.target() != m.target.x) return {"morphism has wrong endpoints"};
  if (!is_valid(m.f)) out.push_back("underlying map is not a chain map");
  if (m.f * m.source.unit != m.target.unit) out.push_back("f o unit_X != unit_Y");
  if (m.target.aug * m.f != m.source.aug) out.push_back("aug_Y o f != aug_X");
  return out;
}

inline EtaObject make_object(const ContextPtr& ctx, const ChainComplex& x, const ChainMap& unit, const ChainMap& aug) {
  EtaObject o{ctx, x, unit, aug};
  auto v = validate(o);
  if (!v.empty()) throw PreconditionError("invalid object: " + v.front());
  return o;
}

/// X in the based context (unit and augmentation are zero).
inline EtaObject based_object(const ContextPtr& ctx, const ChainComplex& x) {
  if (!ctx->is_based()) throw PreconditionError("based_object needs a based context");
  return {ctx, x, ChainMap(ctx->a, x), ChainMap(x, ctx->b)};
}

inline EtaMorphism identity(const EtaObject& x) { return {x, x, ChainMap::identity(x.x)}; }

inline EtaMorphism compose(const EtaMorphism& g, const EtaMorphism& f) { return {f.source, g.target, g.f * f.f}; }

/// B with unit eta and augmentation the identity (terminal object).
inline EtaObject terminal_object(const ContextPtr& ctx) {
  return {ctx, ctx->b, ctx->eta, ChainMap::identity(ctx->b)};
}

/// A with unit the identity and augmentation eta (initial object).
inline EtaObject initial_object(const ContextPtr& ctx) {
  return {ctx, ctx->a, ChainMap::identity(ctx->a), ctx->eta};
}

/// True when X_k = A_k + C_k with the unit the inclusion of the leading A
/// coordinates in every degree. Such objects have a degreewise split unit
/// with free cokernel and serve as the cofibrant objects.
inline bool is_split(const EtaObject& x) {
  const ChainComplex& a = x.ctx->a;
  for (int k : a.degrees()) {
    const std::size_t ra = a.rank(k);
    if (ra == 0) continue;
    if (x.x.rank(k) < ra) return false;
    const Matrix& u = x.unit.at(k);
    if (u.nnz() != ra) return false;
    for (std::size_t i = 0; i < ra; ++i)
      if (!u.at(i, i).is_one()) return false;
  }
  return true;
}

struct Replacement {
  EtaObject object;
  EtaMorphism q;  // object -> original, a quasi-isomorphism
};

/// Cyl(unit) = A + A[-1] + X with unit' the inclusion of A, aug'(a, a', x) =
/// eta(a) + aug(x) and q(a, a', x) = unit(a) + x.
inline Replacement cofibrant_replace(const EtaObject& x) {
  const auto& ctx = x.ctx;
  Cylinder cyl = cylinder(x.unit);
  Layout l(ctx->ring, {{ctx->a, 0}, {ctx->a, 1}, {x.x, 0}});
  Layout lb(ctx->ring, {{ctx->b, 0}});
  ChainMap aug = build_map(cyl.cylinder, ctx->b, [&](int k, MatrixBuilder& m) {
    lb.put(m, 0, k, l, 0, k, ctx->eta.at(k));
    lb.put(m, 0, k, l, 2, k, x.aug.at(k));
  });
  EtaObject rep{ctx, cyl.cylinder, cyl.source_end, aug};
  return {rep, {rep, x, cyl.projection}};
}

/// Morphism between replacements induced by f: (a, a', x) -> (a, a', f x).
inline EtaMorphism cofibrant_replace(const EtaMorphism& f, const EtaObject& src_rep, const EtaObject& tgt_rep) {
  const auto& ctx = f.source.ctx;
  Layout ls(ctx->ring, {{ctx->a, 0}, {ctx->a, 1}, {f.source.x, 0}});
  Layout lt(ctx->ring, {{ctx->a, 0}, {ctx->a, 1}, {f.target.x, 0}});
  ChainMap m = build_map(src_rep.x, tgt_rep.x, [&](int k, MatrixBuilder& b) {
    lt.put_identity(b, 0, k, ls, 0, k);
    lt.put_identity(b, 1, k, ls, 1, k);
    lt.put(b, 2, k, ls, 2, k, f.f.at(k));
  });
  return {src_rep, tgt_rep, m};
}

/// Identity on split objects, cofibrant_replace otherwise.
inline EtaObject ensure_cofibrant(const EtaObject& x) { return is_split(x) ? x : cofibrant_replace(x).object; }

namespace detail {

/// For a split object X = A + C: the blocks of d_X = [[dA, phi], [0, dC]]
/// and aug = [eta, psi].
struct SplitParts {
  Ring ring;
  ChainComplex a, b, c;
  std::map<int, Matrix> phi_;  // C_k -> A_{k-1}
  std::map<int, Matrix> psi_;  // C_k -> B_k

  [[nodiscard]] Matrix phi(int k) const {
    auto it = phi_.find(k);
    return it != phi_.end() ? it->second : Matrix(ring, a.rank(k - 1), c.rank(k));
  }
  [[nodiscard]] Matrix psi(int k) const {
    auto it = psi_.find(k);
    return it != psi_.end() ? it->second : Matrix(ring, b.rank(k), c.rank(k));
  }
};

inline SplitParts split_parts(const EtaObject& x) {
  const ChainComplex& a = x.ctx->a;
  const Ring& ring = x.ctx->ring;
  SplitParts out{ring, a, x.ctx->b, ChainComplex(ring), {}, {}};
  std::map<int, std::size_t> ranks;
  std::map<int, Matrix> dc;
  for (int k : x.x.degrees()) ranks[k] = x.x.rank(k) - a.rank(k);
  for (int k : x.x.degrees()) {
    const std::size_t ra = a.rank(k), rc = ranks[k];
    const std::size_t ra1 = a.rank(k - 1), rc1 = x.x.rank(k - 1) - ra1;
    const Matrix& d = x.x.d(k);
    if (rc && rc1) dc.emplace(k, d.block(ra1, rc1, ra, rc));
    if (rc && ra1) out.phi_.emplace(k, d.block(0, ra1, ra, rc));
    if (rc && x.ctx->b.rank(k)) out.psi_.emplace(k, x.aug.at(k).block(0, x.ctx->b.rank(k), ra, rc));
  }
  out.c = ChainComplex::from(ring, ranks, std::move(dc));
  return out;
}

}  // namespace detail

/// Map X -> Cyl(unit_Y) lifting f : X -> Y for split X = A + C:
/// (a, c) -> (a, phi(c), f(0, c)).
inline EtaMorphism lift_to_replacement(const EtaMorphism& f, const EtaObject& tgt_rep) {
  const auto& ctx = f.source.ctx;
  const ChainComplex& a = ctx->a;
  auto parts = detail::split_parts(f.source);
  Layout ls(ctx->ring, {{a, 0}, {parts.c, 0}});
  Layout lt(ctx->ring, {{a, 0}, {a, 1}, {f.target.x, 0}});
  ChainMap m = build_map(f.source.x, tgt_rep.x, [&](int k, MatrixBuilder& b) {
    lt.put_identity(b, 0, k, ls, 0, k);
    lt.put(b, 1, k, ls, 1, k, parts.phi(k));
    const std::size_t ra = a.rank(k), rc = parts.c.rank(k);
    if (rc && f.target.x.rank(k)) lt.put(b, 2, k, ls, 1, k, f.f.at(k).block(0, f.target.x.rank(k), ra, rc));
  });
  return {f.source, tgt_rep, m};
}

/// The morphism between ensure_cofibrant replacements induced by f.
inline EtaMorphism ensure_cofibrant(const EtaMorphism& f) {
  const bool s = is_split(f.source), t = is_split(f.target);
  if (s && t) return f;
  if (s) return lift_to_replacement(f, cofibrant_replace(f.target).object);
  Replacement rs = cofibrant_replace(f.source);
  if (t) return {rs.object, f.target, f.f * rs.q.f};
  return cofibrant_replace(f, rs.object, cofibrant_replace(f.target).object);
}

/// Fixed cofibrant model of the terminal object: Cyl(eta) = A + A[-1] + B.
/// Equals B in a based context.
inline EtaObject b_cofibrant(const ContextPtr& ctx) { return cofibrant_replace(terminal_object(ctx)).object; }

/// The canonical morphism X -> B^cof for split X = A + C:
/// (a, c) -> (a, phi(c), psi(c)).
inline EtaMorphism collapse(const EtaObject& x) {
  if (!is_split(x)) throw PreconditionError("collapse needs a split object");
  EtaObject bc = b_cofibrant(x.ctx);
  return lift_to_replacement({x, terminal_object(x.ctx), x.aug}, bc);
}

struct Coproduct {
  EtaObject object;
  std::vector<EtaMorphism> inclusions;
};

/// X_1 u_A ... u_A X_n for split inputs (others are replaced first):
/// A + C_1 + ... + C_n with d = [[dA, phi_1, ..., phi_n], [0, dC_1], ...]
/// and aug = [eta, psi_1, ..., psi_n].
inline Coproduct coproduct_over_A(const std::vector<EtaObject>& input) {
  if (input.empty()) throw PreconditionError("coproduct of no objects");
  const auto ctx = input.front().ctx;
  for (const auto& x : input)
    if (x.ctx != ctx && !(*x.ctx == *ctx)) throw PreconditionError("coproduct over A: mismatched contexts");
  std::vector<EtaObject> xs;
  for (const auto& x : input) xs.push_back(ensure_cofibrant(x));
  const Ring& ring = ctx->ring;
  const ChainComplex& a = ctx->a;
  const ChainComplex& b = ctx->b;
  std::vector<detail::SplitParts> parts;
  std::vector<Layout::Part> lp{{a, 0}};
  for (const auto& x : xs) {
    parts.push_back(detail::split_parts(x));
    lp.push_back({parts.back().c, 0});
  }
  Layout l(ring, lp);
  ChainComplex sum = l.build([&](int k, MatrixBuilder& m) {
    l.put(m, 0, k - 1, l, 0, k, a.d(k));
    for (std::size_t j = 0; j < xs.size(); ++j) {
      l.put(m, 0, k - 1, l, j + 1, k, parts[j].phi(k));
      l.put(m, j + 1, k - 1, l, j + 1, k, parts[j].c.d(k));
    }
  });
  Layout la(ring, {{a, 0}}), lb(ring, {{b, 0}});
  ChainMap unit = build_map(a, sum, [&](int k, MatrixBuilder& m) { l.put_identity(m, 0, k, la, 0, k); });
  ChainMap aug = build_map(sum, b, [&](int k, MatrixBuilder& m) {
    lb.put(m, 0, k, l, 0, k, ctx->eta.at(k));
    for (std::size_t j = 0; j < xs.size(); ++j) lb.put(m, 0, k, l, j + 1, k, parts[j].psi(k));
  });
  Coproduct out{{ctx, sum, unit, aug}, {}};
  for (std::size_t j = 0; j < xs.size(); ++j) {
    Layout lx(ring, {{a, 0}, {parts[j].c, 0}});
    ChainMap inc = build_map(xs[j].x, sum, [&](int k, MatrixBuilder& m) {
      l.put_identity(m, 0, k, lx, 0, k);
      l.put_identity(m, j + 1, k, lx, 1, k);
    });
    out.inclusions.push_back({xs[j], out.object, inc});
  }
  return out;
}

/// The map out of a coproduct of split objects determined by morphisms
/// g_j : X_j -> Y: (a, c_1, ..., c_n) -> unit_Y(a) + sum_j g_j(0, c_j).
inline EtaMorphism induced_from_coproduct(const Coproduct& cp, const EtaObject& y, const std::vector<EtaMorphism>& g) {
  const auto& ctx = y.ctx;
  const Ring& ring = ctx->ring;
  const ChainComplex& a = ctx->a;
  if (g.size() != cp.inclusions.size()) throw PreconditionError("induced_from_coproduct: wrong number of maps");
  ChainMap m = build_map(cp.object.x, y.x, [&](int k, MatrixBuilder& b) {
    const std::size_t ra = a.rank(k);
    if (ra) b.add_block(0, 0, y.unit.at(k));
    std::size_t off = ra;
    for (std::size_t j = 0; j < g.size(); ++j) {
      const std::size_t rx = g[j].source.x.rank(k), rc = rx - ra;
      if (rc) b.add_block(0, off, g[j].f.at(k).block(0, y.x.rank(k), ra, rc));
      off += rc;
    }
  });
  (void)ring;
  return {cp.object, y, m};
}

/// Coproduct of morphisms f_j : X_j -> Y_j, taken between the replacements
/// used by coproduct_over_A.
inline EtaMorphism coproduct_map(const Coproduct& src, const Coproduct& tgt, const std::vector<EtaMorphism>& fs) {
  std::vector<EtaMorphism> g;
  for (std::size_t j = 0; j < fs.size(); ++j) g.push_back(compose(tgt.inclusions[j], ensure_cofibrant(fs[j])));
  return induced_from_coproduct(src, tgt.object, g);
}

/// Codiagonal of the n-fold coproduct of a split object with itself.
inline EtaMorphism fold(const Coproduct& cp, const EtaObject& x) {
  return induced_from_coproduct(cp, x, std::vector<EtaMorphism>(cp.inclusions.size(), identity(x)));
}

/// Z_i(U) = X_i for i not in U and B (unit eta, aug id) for i in U.
inline std::vector<EtaObject> replace_by_B(const std::vector<EtaObject>& xs, Subset u) {
  std::vector<EtaObject> out = xs;
  for (unsigned i = 1; i <= xs.size(); ++i)
    if (u.contains(i)) out[i - 1] = terminal_object(xs[i - 1].ctx);
  return out;
}

/// Sigma_B X: B_k + X_{k-1} + B_k with d(b, x, b') = (db - p x, -dx, db' + p x),
/// p = aug, unit a -> (eta a, 0, 0), aug (b, x, b') -> b + b'.
inline EtaObject sigma_B(const EtaObject& x) {
  const auto& ctx = x.ctx;
  const Ring& ring = ctx->ring;
  const ChainComplex& b = ctx->b;
  Layout l(ring, {{b, 0}, {x.x, 1}, {b, 0}});
  ChainComplex s = l.build([&](int k, MatrixBuilder& m) {
    l.put(m, 0, k - 1, l, 0, k, b.d(k));
    l.put(m, 0, k - 1, l, 1, k, x.aug.at(k - 1), -1);
    l.put(m, 1, k - 1, l, 1, k, x.x.d(k - 1), -1);
    l.put(m, 2, k - 1, l, 2, k, b.d(k));
    l.put(m, 2, k - 1, l, 1, k, x.aug.at(k - 1));
  });
  Layout la(ring, {{ctx->a, 0}}), lb(ring, {{b, 0}});
  ChainMap unit = build_map(ctx->a, s, [&](int k, MatrixBuilder& m) { l.put(m, 0, k, la, 0, k, ctx->eta.at(k)); });
  ChainMap aug = build_map(s, b, [&](int k, MatrixBuilder& m) {
    lb.put_identity(m, 0, k, l, 0, k);
    lb.put_identity(m, 0, k, l, 2, k);
  });
  return {ctx, s, unit, aug};
}

inline EtaMorphism sigma_B(const EtaMorphism& f) {
  const auto& ctx = f.source.ctx;
  EtaObject s = sigma_B(f.source), t = sigma_B(f.target);
  const ChainComplex& b = ctx->b;
  Layout ls(ctx->ring, {{b, 0}, {f.source.x, 1}, {b, 0}});
  Layout lt(ctx->ring, {{b, 0}, {f.target.x, 1}, {b, 0}});
  ChainMap m = build_map(s.x, t.x, [&](int k, MatrixBuilder& blk) {
    lt.put_identity(blk, 0, k, ls, 0, k);
    lt.put(blk, 1, k, ls, 1, k, f.f.at(k - 1));
    lt.put_identity(blk, 2, k, ls, 2, k);
  });
  return {s, t, m};
}

inline EtaObject sigma_B_n(const EtaObject& x, unsigned n) {
  EtaObject y = x;
  for (unsigned i = 0; i < n; ++i) y = sigma_B(y);
  return y;
}

}  // namespace fck
