#pragma once

#include <ostream>

#include "fck/chain_complex.hpp"

namespace fck {

inline void PrintTo(const Matrix& m, std::ostream* os) { *os << m.to_string(); }

inline void PrintTo(const ChainComplex& x, std::ostream* os) {
  *os << "complex over " << x.ring().name() << " {";
  for (int k : x.degrees()) *os << " " << k << ":" << x.rank(k) << " d=" << x.d(k).to_string();
  *os << " }";
}

inline void PrintTo(const ChainMap& f, std::ostream* os) {
  *os << "map {";
  for (int k : f.degrees()) *os << " " << k << ":" << f.at(k).to_string();
  *os << " }";
}

}  // namespace fck
