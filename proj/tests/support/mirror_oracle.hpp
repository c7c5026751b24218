#pragma once

// Independent model of the classical mirror ring Q[q][x,y]/(xy - q) of the
// two-point fixture. Elements are Laurent-free normal forms: each basis
// monomial is x^a or y^b (never both) times a power of q. The mirror
// module is never consulted; products here are plain polynomial algebra.

#include <map>
#include <utility>

#include "relqc/rational.hpp"

namespace oracle {

// Basis index: positive a means x^a, negative a means y^{-a}, 0 means 1.
struct Element {
  std::map<std::pair<long long, long long>, relqc::Rational> terms;  // (index, q-power)

  static Element monomial(long long index, long long q_power) {
    Element out;
    out.terms[{index, q_power}] = 1;
    return out;
  }

  Element times(const Element& other) const {
    Element out;
    for (const auto& [ka, ca] : terms) {
      for (const auto& [kb, cb] : other.terms) {
        long long a = ka.first, b = kb.first;
        long long q = ka.second + kb.second;
        long long index;
        if (a >= 0 && b >= 0) {
          index = a + b;
        } else if (a <= 0 && b <= 0) {
          index = a + b;
        } else {
          // x^a y^b -> q^min(a, -b) times the leftover power.
          long long xs = a > 0 ? a : b;
          long long ys = a > 0 ? -b : -a;
          long long killed = std::min(xs, ys);
          q += killed;
          index = (xs - killed) > 0 ? xs - killed : -(ys - killed);
        }
        auto key = std::make_pair(index, q);
        out.terms[key] += ca * cb;
        if (out.terms[key] == 0) out.terms.erase(key);
      }
    }
    return out;
  }

  /// Coefficient of q^d * (basis monomial `index`).
  relqc::Rational coefficient(long long index, long long q_power) const {
    auto it = terms.find({index, q_power});
    return it == terms.end() ? relqc::Rational(0) : it->second;
  }
};

/// theta_p for p = a v1 (index a > 0), b v2 (index -b), or the unit.
inline Element theta(long long index) { return Element::monomial(index, 0); }

}  // namespace oracle
