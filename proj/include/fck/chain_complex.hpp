#pragma once

// Bounded chain complexes of finitely generated free modules and chain maps.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fck/error.hpp"
#include "fck/matrix.hpp"

namespace fck {

/// Homologically graded complex C_lo ... C_hi with d_k : C_k -> C_{k-1}.
///
/// Immutable; copies share storage. Only degrees with nonzero rank at the
/// ends are kept, so equal complexes have equal representations.
class ChainComplex {
 public:
  ChainComplex() : ChainComplex(Ring::rationals()) {}
  explicit ChainComplex(Ring ring) : data_(std::make_shared<Data>(ring)) {}

  /// `ranks[k]` is the rank in degree k; `diffs[k]` is d_k of shape
  /// rank(k-1) x rank(k). Missing differentials are zero. Shapes are checked;
  /// d^2 = 0 is not (see validate()).
  static ChainComplex from(Ring ring, const std::map<int, std::size_t>& ranks, std::map<int, Matrix> diffs = {});

  static ChainComplex zero(Ring ring) { return ChainComplex(ring); }
  /// R^rank concentrated in degree k.
  static ChainComplex concentrated(Ring ring, int k, std::size_t rank) { return from(ring, {{k, rank}}); }

  [[nodiscard]] const Ring& ring() const { return data_->ring; }
  [[nodiscard]] bool is_zero() const { return data_->ranks.empty(); }
  /// Lowest/highest degree with nonzero rank; meaningless for the zero complex.
  [[nodiscard]] int min_degree() const { return data_->lo; }
  [[nodiscard]] int max_degree() const { return data_->lo + static_cast<int>(data_->ranks.size()) - 1; }

  [[nodiscard]] std::size_t rank(int k) const {
    if (is_zero() || k < min_degree() || k > max_degree()) return 0;
    return data_->ranks[static_cast<std::size_t>(k - data_->lo)];
  }
  [[nodiscard]] std::size_t total_rank() const {
    std::size_t s = 0;
    for (auto r : data_->ranks) s += r;
    return s;
  }
  /// d_k : C_k -> C_{k-1}.
  [[nodiscard]] const Matrix& d(int k) const {
    if (is_zero() || k < min_degree() || k > max_degree() + 1) return data_->empty;
    return data_->diffs[static_cast<std::size_t>(k - data_->lo)];
  }
  /// Degrees lo..hi (inclusive) of the support, empty for the zero complex.
  [[nodiscard]] std::vector<int> degrees() const {
    std::vector<int> out;
    if (!is_zero())
      for (int k = min_degree(); k <= max_degree(); ++k) out.push_back(k);
    return out;
  }
  [[nodiscard]] std::map<int, std::size_t> ranks() const {
    std::map<int, std::size_t> out;
    for (int k : degrees())
      if (rank(k)) out[k] = rank(k);
    return out;
  }

  friend bool operator==(const ChainComplex& a, const ChainComplex& b) {
    if (a.data_ == b.data_) return true;
    return a.ring() == b.ring() && a.data_->lo == b.data_->lo && a.data_->ranks == b.data_->ranks &&
           a.data_->diffs == b.data_->diffs;
  }
  friend bool operator!=(const ChainComplex& a, const ChainComplex& b) { return !(a == b); }

  [[nodiscard]] std::size_t hash() const {
    std::size_t h = static_cast<std::size_t>(data_->lo) * 7919u;
    for (auto r : data_->ranks) h = h * 131u + r;
    for (const auto& m : data_->diffs) h = h * 1000003u ^ m.hash();
    return h;
  }

 private:
  struct Data {
    explicit Data(Ring r) : ring(r), empty(r, 0, 0) {}
    Ring ring;
    int lo = 0;
    std::vector<std::size_t> ranks;  // degrees lo..hi
    std::vector<Matrix> diffs;       // d_k for k = lo..hi+1
    Matrix empty;
  };
  std::shared_ptr<const Data> data_;
};

inline ChainComplex ChainComplex::from(Ring ring, const std::map<int, std::size_t>& ranks, std::map<int, Matrix> diffs) {
  int lo = 0, hi = -1;
  bool any = false;
  for (const auto& [k, r] : ranks) {
    if (r == 0) continue;
    if (!any) lo = hi = k;
    lo = std::min(lo, k);
    hi = std::max(hi, k);
    any = true;
  }
  auto rank_of = [&](int k) -> std::size_t {
    auto it = ranks.find(k);
    return it == ranks.end() ? 0 : it->second;
  };
  for (const auto& [k, m] : diffs) {
    require_same_ring(ring, m.ring(), "ChainComplex::from");
    if (m.rows() != rank_of(k - 1) || m.cols() != rank_of(k))
      throw DimensionError("differential d_" + std::to_string(k) + " has shape " + std::to_string(m.rows()) + "x" +
                           std::to_string(m.cols()) + ", expected " + std::to_string(rank_of(k - 1)) + "x" +
                           std::to_string(rank_of(k)));
  }
  auto data = std::make_shared<Data>(ring);
  if (any) {
    data->lo = lo;
    for (int k = lo; k <= hi; ++k) data->ranks.push_back(rank_of(k));
    for (int k = lo; k <= hi + 1; ++k) {
      auto it = diffs.find(k);
      if (it != diffs.end())
        data->diffs.push_back(std::move(it->second));
      else
        data->diffs.emplace_back(ring, rank_of(k - 1), rank_of(k));
    }
  }
  ChainComplex c(ring);
  c.data_ = std::move(data);
  return c;
}

/// Degreewise matrices f_k : X_k -> Y_k (shape rank Y_k x rank X_k).
class ChainMap {
 public:
  ChainMap() = default;
  /// Missing components are zero. Shapes are checked; commutation is not
  /// (see validate()).
  ChainMap(ChainComplex source, ChainComplex target, std::map<int, Matrix> components = {});

  static ChainMap identity(const ChainComplex& x);
  static ChainMap zero(const ChainComplex& x, const ChainComplex& y) { return ChainMap(x, y); }

  [[nodiscard]] const ChainComplex& source() const { return source_; }
  [[nodiscard]] const ChainComplex& target() const { return target_; }
  [[nodiscard]] const Ring& ring() const { return source_.ring(); }
  /// f_k, of shape rank target_k x rank source_k.
  [[nodiscard]] const Matrix& at(int k) const {
    if (k < lo_ || k >= lo_ + static_cast<int>(comps_.size())) return empty_;
    return comps_[static_cast<std::size_t>(k - lo_)];
  }
  /// Degrees where both source and target are nonzero.
  [[nodiscard]] std::vector<int> degrees() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < comps_.size(); ++i)
      if (comps_[i].rows() && comps_[i].cols()) out.push_back(lo_ + static_cast<int>(i));
    return out;
  }
  [[nodiscard]] bool is_zero() const {
    for (const auto& m : comps_)
      if (!m.is_zero()) return false;
    return true;
  }

  friend bool operator==(const ChainMap& a, const ChainMap& b) {
    if (a.source_ != b.source_ || a.target_ != b.target_) return false;
    for (int k : a.degrees())
      if (a.at(k) != b.at(k)) return false;
    return true;
  }
  friend bool operator!=(const ChainMap& a, const ChainMap& b) { return !(a == b); }

  /// g * f is the composite g after f.
  friend ChainMap operator*(const ChainMap& g, const ChainMap& f);
  friend ChainMap operator+(const ChainMap& f, const ChainMap& g);
  friend ChainMap operator-(const ChainMap& f, const ChainMap& g);
  friend ChainMap operator-(const ChainMap& f);
  [[nodiscard]] ChainMap scaled(const Rational& s) const;

 private:
  ChainComplex source_;
  ChainComplex target_;
  int lo_ = 0;
  std::vector<Matrix> comps_;
  Matrix empty_;
};

inline ChainMap::ChainMap(ChainComplex source, ChainComplex target, std::map<int, Matrix> components)
    : source_(std::move(source)), target_(std::move(target)), empty_(source_.ring(), 0, 0) {
  require_same_ring(source_.ring(), target_.ring(), "ChainMap");
  if (!source_.is_zero() || !target_.is_zero()) {
    int hi;
    if (source_.is_zero()) {
      lo_ = target_.min_degree();
      hi = target_.max_degree();
    } else if (target_.is_zero()) {
      lo_ = source_.min_degree();
      hi = source_.max_degree();
    } else {
      lo_ = std::min(source_.min_degree(), target_.min_degree());
      hi = std::max(source_.max_degree(), target_.max_degree());
    }
    for (int k = lo_; k <= hi; ++k) {
      auto it = components.find(k);
      if (it != components.end()) {
        require_same_ring(source_.ring(), it->second.ring(), "ChainMap component");
        if (it->second.rows() != target_.rank(k) || it->second.cols() != source_.rank(k))
          throw DimensionError("chain map component in degree " + std::to_string(k) + " has shape " +
                               std::to_string(it->second.rows()) + "x" + std::to_string(it->second.cols()) +
                               ", expected " + std::to_string(target_.rank(k)) + "x" + std::to_string(source_.rank(k)));
        comps_.push_back(std::move(it->second));
      } else {
        comps_.emplace_back(source_.ring(), target_.rank(k), source_.rank(k));
      }
    }
  }
  for (const auto& [k, m] : components) {
    if (k >= lo_ && k < lo_ + static_cast<int>(comps_.size())) continue;
    if (m.rows() || m.cols()) throw DimensionError("chain map component in degree " + std::to_string(k) + " outside the support");
  }
}

inline ChainMap ChainMap::identity(const ChainComplex& x) {
  std::map<int, Matrix> comps;
  for (int k : x.degrees()) comps.emplace(k, Matrix::identity(x.ring(), x.rank(k)));
  return ChainMap(x, x, std::move(comps));
}

inline ChainMap operator*(const ChainMap& g, const ChainMap& f) {
  if (f.target_ != g.source_) throw DimensionError("chain map composite: target of f is not source of g");
  std::map<int, Matrix> comps;
  for (int k : f.degrees()) {
    if (g.target_.rank(k) == 0) continue;
    comps.emplace(k, g.at(k) * f.at(k));
  }
  return ChainMap(f.source_, g.target_, std::move(comps));
}

inline ChainMap operator+(const ChainMap& f, const ChainMap& g) {
  if (f.source_ != g.source_ || f.target_ != g.target_) throw DimensionError("chain map sum: endpoints differ");
  std::map<int, Matrix> comps;
  for (int k : f.degrees()) comps.emplace(k, f.at(k) + g.at(k));
  return ChainMap(f.source_, f.target_, std::move(comps));
}

inline ChainMap operator-(const ChainMap& f, const ChainMap& g) {
  if (f.source_ != g.source_ || f.target_ != g.target_) throw DimensionError("chain map difference: endpoints differ");
  std::map<int, Matrix> comps;
  for (int k : f.degrees()) comps.emplace(k, f.at(k) - g.at(k));
  return ChainMap(f.source_, f.target_, std::move(comps));
}

inline ChainMap operator-(const ChainMap& f) { return f.scaled(Rational(-1)); }

inline ChainMap ChainMap::scaled(const Rational& s) const {
  std::map<int, Matrix> comps;
  for (int k : degrees()) comps.emplace(k, at(k).scaled(s));
  return ChainMap(source_, target_, std::move(comps));
}

/// One line per violated identity; empty iff d_{k-1} d_k = 0 for all k.
inline std::vector<std::string> validate(const ChainComplex& x) {
  std::vector<std::string> out;
  if (x.is_zero()) return out;
  for (int k = x.min_degree() + 1; k <= x.max_degree(); ++k) {
    Matrix dd = x.d(k - 1) * x.d(k);
    if (!dd.is_zero()) out.push_back("d_" + std::to_string(k - 1) + " d_" + std::to_string(k) + " != 0 at degree " + std::to_string(k));
  }
  return out;
}

/// One line per degree k where d^Y_k f_k != f_{k-1} d^X_k, plus any
/// violations inside source or target.
inline std::vector<std::string> validate(const ChainMap& f) {
  std::vector<std::string> out;
  for (auto& s : validate(f.source())) out.push_back("source: " + s);
  for (auto& s : validate(f.target())) out.push_back("target: " + s);
  const ChainComplex& x = f.source();
  const ChainComplex& y = f.target();
  if (x.is_zero() || y.is_zero()) return out;
  int lo = std::max(x.min_degree(), y.min_degree());
  int hi = std::min(x.max_degree(), y.max_degree() + 1);
  for (int k = lo; k <= hi; ++k) {
    if (x.rank(k) == 0 || y.rank(k - 1) == 0) continue;
    Matrix lhs = y.d(k) * f.at(k);
    Matrix rhs = f.at(k - 1) * x.d(k);
    if (lhs != rhs) out.push_back("chain map square fails at degree " + std::to_string(k));
  }
  return out;
}

inline bool is_valid(const ChainComplex& x) { return validate(x).empty(); }
inline bool is_valid(const ChainMap& f) {
  const ChainComplex& x = f.source();
  const ChainComplex& y = f.target();
  if (x.is_zero() || y.is_zero()) return true;
  for (int k = std::max(x.min_degree(), y.min_degree()); k <= std::min(x.max_degree(), y.max_degree() + 1); ++k) {
    if (x.rank(k) == 0 || y.rank(k - 1) == 0) continue;
    if (y.d(k) * f.at(k) != f.at(k - 1) * x.d(k)) return false;
  }
  return true;
}

}  // namespace fck
