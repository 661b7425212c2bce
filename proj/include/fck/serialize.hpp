#pragma once

// JSON encodings of matrices, complexes, chain maps, cubes and objects under
// A over B.

#include "json.hpp"

#include <string>

#include "fck/cube.hpp"
#include "fck/eta.hpp"
#include "fck/homology.hpp"

namespace fck {

using Json = nlohmann::json;

namespace detail {

inline Json integer_json(const mpz_class& z) {
  std::int64_t v = 0;
  if (mpz_to_i64(z, v)) return v;
  return z.get_str();
}

inline mpz_class integer_from_json(const Json& j) {
  if (j.is_number_integer()) return mpz_from_i64(j.get<std::int64_t>());
  if (j.is_string()) return mpz_class(j.get<std::string>());
  throw PreconditionError("expected an integer, got " + j.dump());
}

inline Json entry_json(const Ring& ring, const Rational& x) {
  if (ring.kind() == Ring::Kind::Rationals) return Json::array({integer_json(x.numerator()), integer_json(x.denominator())});
  return integer_json(x.numerator());
}

inline Rational entry_from_json(const Ring& ring, const Json& j) {
  if (ring.kind() == Ring::Kind::Rationals) {
    if (!j.is_array() || j.size() != 2) throw PreconditionError("rational entry must be [num, den]");
    mpz_class den = integer_from_json(j[1]);
    if (den <= 0) throw PreconditionError("rational entry needs a positive denominator");
    return Rational(mpq_class(integer_from_json(j[0]), den));
  }
  return ring.reduce(Rational(integer_from_json(j)));
}

inline Ring ring_from_json(const Json& j) { return Ring::parse(j.at("ring").get<std::string>()); }

}  // namespace detail

inline Json to_json(const Matrix& m) {
  Json entries = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) entries.push_back(detail::entry_json(m.ring(), m.at(r, c)));
  return {{"ring", m.ring().name()}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

inline Matrix matrix_from_json(const Json& j) {
  Ring ring = detail::ring_from_json(j);
  const auto rows = j.at("rows").get<std::size_t>(), cols = j.at("cols").get<std::size_t>();
  const Json& e = j.at("entries");
  if (e.size() != rows * cols) throw DimensionError("matrix entry count does not match rows x cols");
  std::vector<Rational> dense;
  dense.reserve(e.size());
  for (const auto& x : e) dense.push_back(detail::entry_from_json(ring, x));
  return Matrix::from_dense(ring, rows, cols, dense);
}

inline Json to_json(const ChainComplex& x) {
  Json degrees = Json::array(), diff = Json::array();
  for (int k : x.degrees()) degrees.push_back({{"k", k}, {"rank", x.rank(k)}});
  for (int k : x.degrees())
    if (x.rank(k - 1) && x.rank(k)) diff.push_back({{"k", k}, {"matrix", to_json(x.d(k))}});
  return {{"ring", x.ring().name()}, {"degrees", degrees}, {"diff", diff}};
}

inline ChainComplex complex_from_json(const Json& j) {
  Ring ring = detail::ring_from_json(j);
  std::map<int, std::size_t> ranks;
  std::map<int, Matrix> diffs;
  for (const auto& d : j.at("degrees")) ranks[d.at("k").get<int>()] = d.at("rank").get<std::size_t>();
  for (const auto& d : j.at("diff")) diffs.emplace(d.at("k").get<int>(), matrix_from_json(d.at("matrix")));
  ChainComplex x = ChainComplex::from(ring, ranks, std::move(diffs));
  if (!is_valid(x)) throw PreconditionError("complex read from JSON has d^2 != 0");
  return x;
}

inline Json to_json(const ChainMap& f) {
  Json comps = Json::array();
  for (int k : f.degrees()) comps.push_back({{"k", k}, {"matrix", to_json(f.at(k))}});
  return {{"ring", f.ring().name()}, {"source", to_json(f.source())}, {"target", to_json(f.target())}, {"components", comps}};
}

inline ChainMap chain_map_from_json(const Json& j) {
  ChainComplex s = complex_from_json(j.at("source")), t = complex_from_json(j.at("target"));
  std::map<int, Matrix> comps;
  for (const auto& c : j.at("components")) comps.emplace(c.at("k").get<int>(), matrix_from_json(c.at("matrix")));
  return ChainMap(s, t, std::move(comps));
}

/// Vertices and edges keyed by subset strings; an edge key is "<subset>:<i>".
inline Json to_json(const CubicalDiagram& x) {
  Json vertices = Json::object(), edges = Json::object();
  for (std::uint32_t b = 0; b < (1u << x.n()); ++b) {
    Subset t{x.n(), b};
    vertices[t.to_string()] = to_json(x.vertex(t));
    for (unsigned i = 1; i <= x.n(); ++i) {
      if (t.contains(i)) continue;
      Json comps = Json::array();
      const ChainMap& e = x.edge(t, i);
      for (int k : e.degrees()) comps.push_back({{"k", k}, {"matrix", to_json(e.at(k))}});
      edges[t.to_string() + ":" + std::to_string(i)] = comps;
    }
  }
  return {{"ring", x.ring().name()}, {"n", x.n()}, {"vertices", vertices}, {"edges", edges}};
}

inline CubicalDiagram cube_from_json(const Json& j) {
  Ring ring = detail::ring_from_json(j);
  const auto n = j.at("n").get<unsigned>();
  std::vector<ChainComplex> v;
  for (std::uint32_t b = 0; b < (1u << n); ++b) v.push_back(complex_from_json(j.at("vertices").at(Subset{n, b}.to_string())));
  return CubicalDiagram(
      ring, n, [&](Subset t) { return v[t.bits]; },
      [&](Subset t, unsigned i) {
        std::map<int, Matrix> comps;
        for (const auto& c : j.at("edges").at(t.to_string() + ":" + std::to_string(i)))
          comps.emplace(c.at("k").get<int>(), matrix_from_json(c.at("matrix")));
        return ChainMap(v[t.bits], v[t.with(i).bits], std::move(comps));
      });
}

/// Bundle {A, B, X, unit, aug}; eta is recovered as aug * unit.
inline Json to_json(const EtaObject& x) {
  auto comps = [](const ChainMap& f) {
    Json c = Json::array();
    for (int k : f.degrees()) c.push_back({{"k", k}, {"matrix", to_json(f.at(k))}});
    return c;
  };
  return {{"ring", x.ctx->ring.name()}, {"A", to_json(x.ctx->a)}, {"B", to_json(x.ctx->b)},
          {"X", to_json(x.x)},          {"unit", comps(x.unit)},  {"aug", comps(x.aug)}};
}

inline EtaObject eta_object_from_json(const Json& j) {
  ChainComplex a = complex_from_json(j.at("A")), b = complex_from_json(j.at("B")), x = complex_from_json(j.at("X"));
  auto read = [](const ChainComplex& s, const ChainComplex& t, const Json& c) {
    std::map<int, Matrix> comps;
    for (const auto& e : c) comps.emplace(e.at("k").get<int>(), matrix_from_json(e.at("matrix")));
    return ChainMap(s, t, std::move(comps));
  };
  ChainMap unit = read(a, x, j.at("unit")), aug = read(x, b, j.at("aug"));
  return make_object(make_context(aug * unit), x, unit, aug);
}

inline Json homology_table(const ChainComplex& x, int lo, int hi) {
  Json out = Json::array();
  for (int k = lo; k <= hi; ++k) {
    HomologyGroup h = homology(x, k);
    Json row{{"k", k}, {"rank", h.free_rank}};
    if (!h.torsion.empty()) {
      Json t = Json::array();
      for (const auto& q : h.torsion) t.push_back(q.to_string());
      row["torsion"] = t;
    }
    out.push_back(row);
  }
  return out;
}

}  // namespace fck
