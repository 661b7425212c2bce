#pragma once

// Functors from the factorization category to chain complexes, and a small
// library of test functors.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "fck/eta.hpp"
#include "fck/linalg.hpp"

namespace fck {

/// A functor of n variables. Both actions must be deterministic.
struct Functor {
  std::string name;
  unsigned arity = 1;
  std::function<ChainComplex(const std::vector<EtaObject>&)> objects;
  std::function<ChainMap(const std::vector<EtaMorphism>&)> morphisms;

  ChainComplex operator()(const std::vector<EtaObject>& xs) const {
    if (xs.size() != arity) throw PreconditionError(name + ": expected " + std::to_string(arity) + " arguments");
    return objects(xs);
  }
  ChainMap operator()(const std::vector<EtaMorphism>& fs) const {
    if (fs.size() != arity) throw PreconditionError(name + ": expected " + std::to_string(arity) + " arguments");
    return morphisms(fs);
  }
  ChainComplex operator()(const EtaObject& x) const { return (*this)(std::vector<EtaObject>{x}); }
  ChainMap operator()(const EtaMorphism& f) const { return (*this)(std::vector<EtaMorphism>{f}); }
};

/// An endofunctor of chain complexes, used for post-composition.
struct ComplexFunctor {
  std::string name;
  std::function<ChainComplex(const ChainComplex&)> objects;
  std::function<ChainMap(const ChainMap&)> morphisms;
};

/// An endofunctor of the factorization category, used for pre-composition.
struct EtaEndofunctor {
  std::string name;
  std::function<EtaObject(const EtaObject&)> objects;
  std::function<EtaMorphism(const EtaMorphism&)> morphisms;
};

struct NatTrans {
  Functor source;
  Functor target;
  std::function<ChainMap(const EtaObject&)> at;
};

inline Functor identity_functor() {
  return {"identity", 1, [](const std::vector<EtaObject>& xs) { return xs[0].x; },
          [](const std::vector<EtaMorphism>& fs) { return fs[0].f; }};
}

inline Functor constant_functor(const ChainComplex& c, std::string name = "constant") {
  return {std::move(name), 1, [c](const std::vector<EtaObject>&) { return c; },
          [c](const std::vector<EtaMorphism>&) { return ChainMap::identity(c); }};
}

/// X -> B of the context, constant on morphisms.
inline Functor constant_B_functor() {
  return {"constant_B", 1, [](const std::vector<EtaObject>& xs) { return xs[0].ctx->b; },
          [](const std::vector<EtaMorphism>& fs) { return ChainMap::identity(fs[0].source.ctx->b); }};
}

/// X -> hofib(aug : X -> B).
inline Functor structure_fiber() {
  return {"structure_fiber", 1, [](const std::vector<EtaObject>& xs) { return hofib(xs[0].aug).fiber; },
          [](const std::vector<EtaMorphism>& fs) {
            const EtaMorphism& f = fs[0];
            return hofib_map(f.source.aug, f.target.aug, f.f, ChainMap::identity(f.source.ctx->b), hofib(f.source.aug).fiber,
                             hofib(f.target.aug).fiber);
          }};
}

inline Functor postcompose(const ComplexFunctor& g, const Functor& f) {
  return {g.name + "(" + f.name + ")", f.arity, [g, f](const std::vector<EtaObject>& xs) { return g.objects(f(xs)); },
          [g, f](const std::vector<EtaMorphism>& fs) { return g.morphisms(f(fs)); }};
}

inline Functor precompose(const Functor& f, const EtaEndofunctor& e) {
  if (f.arity != 1) throw PreconditionError("precompose needs a functor of one variable");
  return {f.name + "(" + e.name + ")", 1, [f, e](const std::vector<EtaObject>& xs) { return f(e.objects(xs[0])); },
          [f, e](const std::vector<EtaMorphism>& fs) { return f(e.morphisms(fs[0])); }};
}

inline EtaEndofunctor sigma_B_endofunctor() {
  return {"sigma_B", [](const EtaObject& x) { return sigma_B(x); }, [](const EtaMorphism& f) { return sigma_B(f); }};
}

/// H o (coproduct over A of n variables).
inline Functor coproduct_functor(const Functor& h, unsigned n) {
  if (h.arity != 1) throw PreconditionError("coproduct_functor needs a functor of one variable");
  return {h.name + " o u" + std::to_string(n), n,
          [h](const std::vector<EtaObject>& xs) { return h(coproduct_over_A(xs).object); },
          [h](const std::vector<EtaMorphism>& fs) {
            std::vector<EtaObject> src, tgt;
            for (const auto& f : fs) {
              src.push_back(f.source);
              tgt.push_back(f.target);
            }
            return h(coproduct_map(coproduct_over_A(src), coproduct_over_A(tgt), fs));
          }};
}

// Complex functors.

inline ComplexFunctor tensor_power(unsigned d) {
  if (d == 0) throw PreconditionError("tensor power needs d >= 1");
  return {"tensor:" + std::to_string(d),
          [d](const ChainComplex& x) {
            ChainComplex y = x;
            for (unsigned i = 1; i < d; ++i) y = tensor(y, x);
            return y;
          },
          [d](const ChainMap& f) {
            ChainMap g = f;
            for (unsigned i = 1; i < d; ++i) g = tensor(g, f);
            return g;
          }};
}

namespace detail {

using Factor = std::pair<int, std::size_t>;  // (degree, index)

/// Basis of X^{(x)d} in degree k as factor tuples, in the order used by the
/// iterated tensor product.
inline std::map<int, std::vector<std::vector<Factor>>> tensor_power_basis(const ChainComplex& x, unsigned d) {
  std::map<int, std::vector<std::vector<Factor>>> cur;
  for (int k : x.degrees())
    for (std::size_t i = 0; i < x.rank(k); ++i) cur[k].push_back({{k, i}});
  for (unsigned step = 1; step < d; ++step) {
    std::map<int, std::vector<std::vector<Factor>>> next;
    if (!cur.empty() && !x.is_zero())
      for (int k = cur.begin()->first + x.min_degree(); k <= cur.rbegin()->first + x.max_degree(); ++k)
        for (const auto& [i, tuples] : cur) {
          const int j = k - i;
          for (const auto& p : tuples)
            for (std::size_t y = 0; y < x.rank(j); ++y) {
              auto t = p;
              t.push_back({j, y});
              next[k].push_back(std::move(t));
            }
        }
    cur = std::move(next);
  }
  return cur;
}

struct SymmetrizedPower {
  Subcomplex sub;
  std::map<int, std::vector<std::size_t>> pivots;
};

/// Subcomplex of X^{(x)d} given by the image of sum_sigma s(sigma) sigma, where
/// sigma permutes factors with the Koszul sign and s is trivial (sym) or the
/// permutation sign (ext).
inline SymmetrizedPower symmetrized_power(const ChainComplex& x, unsigned d, bool alternating) {
  const Ring& ring = x.ring();
  if (!ring.is_field()) throw RingError("symmetric and exterior powers need a field");
  if (ring.characteristic() != 0 && ring.characteristic() <= static_cast<std::int64_t>(d))
    throw RingError("symmetric and exterior powers need characteristic > " + std::to_string(d));
  ChainComplex t = tensor_power(d).objects(x);
  auto basis = tensor_power_basis(x, d);
  std::vector<unsigned> perm(d);
  std::vector<std::vector<unsigned>> perms;
  std::iota(perm.begin(), perm.end(), 0u);
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));
  std::map<int, Matrix> bases;
  std::map<int, std::vector<std::size_t>> pivots;
  for (int k : t.degrees()) {
    const auto& tuples = basis[k];
    const std::size_t n = tuples.size();
    if (n != t.rank(k)) throw DimensionError("tensor power basis mismatch");
    std::map<std::vector<Factor>, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) index.emplace(tuples[i], i);
    // Rows of the transposed symmetrizer: row j is the image of basis vector j.
    MatrixBuilder e(ring, n, n);
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& p : perms) {
        std::vector<Factor> img(d);
        for (unsigned a = 0; a < d; ++a) img[a] = tuples[j][p[a]];
        int sign = 1;
        for (unsigned a = 0; a < d; ++a)
          for (unsigned b = a + 1; b < d; ++b)
            if (p[a] > p[b]) {
              if ((img[a].first & 1) && (img[b].first & 1)) sign = -sign;
              if (alternating) sign = -sign;
            }
        e.add(j, index.at(img), Rational(sign));
      }
    RowEchelon re = row_echelon(std::move(e).build());
    MatrixBuilder b(ring, n, re.rows.size());
    for (std::size_t c = 0; c < re.rows.size(); ++c)
      for (std::size_t r = 0; r < n; ++r)
        if (!re.rows[c][r].is_zero()) b.add(r, c, re.rows[c][r]);
    bases.emplace(k, std::move(b).build());
    pivots.emplace(k, re.pivot_cols);
  }
  Subcomplex sub = restrict_to(t, bases, pivots);
  return {std::move(sub), std::move(pivots)};
}

/// Coordinates of f^{(x)d} restricted to symmetrized powers, read off at
/// the target pivot rows.
inline ChainMap symmetrized_power_map(const ChainMap& f, unsigned d, bool alternating) {
  SymmetrizedPower s = symmetrized_power(f.source(), d, alternating);
  SymmetrizedPower t = symmetrized_power(f.target(), d, alternating);
  ChainMap fd = tensor_power(d).morphisms(f);
  const Ring& ring = f.ring();
  std::map<int, Matrix> comps;
  for (int k : s.sub.complex.degrees()) {
    if (!s.sub.complex.rank(k) || !t.sub.complex.rank(k)) continue;
    Matrix image = fd.at(k) * s.sub.inclusion.at(k);
    const Matrix& tb = t.sub.inclusion.at(k);
    const auto& piv = t.pivots.at(k);
    MatrixBuilder pick(ring, piv.size(), tb.rows());
    for (std::size_t i = 0; i < piv.size(); ++i) pick.add_canonical(i, piv[i], Rational(1));
    Matrix coeffs = std::move(pick).build() * image;
    if (tb * coeffs != image) throw PreconditionError("symmetrized power of a map left the subcomplex");
    comps.emplace(k, std::move(coeffs));
  }
  return ChainMap(s.sub.complex, t.sub.complex, std::move(comps));
}

}  // namespace detail

inline ComplexFunctor sym_power(unsigned d) {
  return {"sym:" + std::to_string(d),
          [d](const ChainComplex& x) { return detail::symmetrized_power(x, d, false).sub.complex; },
          [d](const ChainMap& f) { return detail::symmetrized_power_map(f, d, false); }};
}

inline ComplexFunctor ext_power(unsigned d) {
  return {"ext:" + std::to_string(d),
          [d](const ChainComplex& x) { return detail::symmetrized_power(x, d, true).sub.complex; },
          [d](const ChainMap& f) { return detail::symmetrized_power_map(f, d, true); }};
}

inline ComplexFunctor loop_functor() {
  return {"loop", [](const ChainComplex& x) { return loop(x); }, [](const ChainMap& f) { return shift(f, -1); }};
}

inline Functor functor_named(Functor f, std::string name) {
  f.name = std::move(name);
  return f;
}

/// Registry: identity, constant, constant_B, structure_fiber, tensor:d,
/// sym:d, ext:d. The constant functor takes the value R in degree 0.
inline Functor make_functor(const std::string& spec, const Ring& ring) {
  auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  auto param = [&]() -> unsigned {
    if (colon == std::string::npos) throw PreconditionError("functor " + head + " needs a parameter, e.g. " + head + ":2");
    const std::string p = spec.substr(colon + 1);
    if (p.empty() || p.find_first_not_of("0123456789") != std::string::npos || p.size() > 2)
      throw PreconditionError("bad functor parameter: " + spec);
    unsigned d = static_cast<unsigned>(std::stoul(p));
    if (d == 0) throw PreconditionError("functor parameter must be positive: " + spec);
    return d;
  };
  if (spec == "identity") return identity_functor();
  if (spec == "constant") return constant_functor(ChainComplex::concentrated(ring, 0, 1));
  if (spec == "constant_B") return constant_B_functor();
  if (spec == "structure_fiber") return structure_fiber();
  if (head == "tensor") return functor_named(postcompose(tensor_power(param()), identity_functor()), spec);
  if (head == "sym" || head == "ext") {
    unsigned d = param();
    if (!ring.is_field() || (ring.characteristic() != 0 && ring.characteristic() <= static_cast<std::int64_t>(d)))
      throw RingError(head + ":" + std::to_string(d) + " is not available over " + ring.name());
    return functor_named(postcompose(head == "sym" ? sym_power(d) : ext_power(d), identity_functor()), spec);
  }
  throw PreconditionError("unknown functor: " + spec);
}

}  // namespace fck
