#pragma once

#include <map>
#include <vector>

#include "relqc/invariants.hpp"

namespace relqc {

/// Artinian truncation of the completed monoid ring on effective curve
/// classes: the finitely many classes outside the ideal, enumerated once.
class NovikovTruncation {
 public:
  /// Ideal given by a degree bound under the grading sum(weights . beta):
  /// q^beta survives iff its graded degree is strictly below the bound.
  static NovikovTruncation from_degree_bound(const PairDescription& pair,
                                             const std::vector<long long>& weights,
                                             long long bound);

  /// Convenience: rank-one lattice with weight 1, classes q^0..q^(bound-1).
  static NovikovTruncation powers_below(const PairDescription& pair, long long bound);

  bool contains(const CurveClass& beta) const;
  const std::vector<CurveClass>& classes() const { return classes_; }

 private:
  std::vector<CurveClass> classes_;  // P minus I, sorted
};

/// Exponent vector of a t-monomial in the formal variables t_{s,k}.
struct TMonomial {
  std::map<TermKey, int> powers;

  int total_degree() const;
  TMonomial times(const TermKey& key) const;
  Rational symmetry_factor() const;  // product of factorials of exponents

  bool operator==(const TMonomial& other) const = default;
  auto operator<=>(const TMonomial& other) const = default;
  std::string to_string() const;
};

/// Series truncated in both the Novikov direction and total t-degree.
template <typename Value>
struct TruncatedSeries {
  int t_order = 0;
  std::map<std::pair<CurveClass, TMonomial>, Value> coefficients;

  const Value* coefficient(const CurveClass& beta, const TMonomial& mono) const {
    auto it = coefficients.find({beta, mono});
    return it == coefficients.end() ? nullptr : &it->second;
  }
};

using ClassSeries = TruncatedSeries<StateClass>;
using ScalarSeries = TruncatedSeries<Rational>;

/// Small product a *_sm b = sum over beta of three-point invariants against
/// the dual basis, at the zero point of the big parameter space.
ClassSeries small_product(const Evaluator& eval, const StateClass& a, const StateClass& b,
                          const NovikovTruncation& trunc);

/// Big quantum product as a t-series: third derivatives of the genus-zero
/// potential contracted with the dual basis, truncated at t_order. The
/// t directions range over `directions`.
ClassSeries big_product(const Evaluator& eval, const StateClass& a, const StateClass& b,
                        const std::vector<TermKey>& directions, int t_order,
                        const NovikovTruncation& trunc);

/// Genus-zero potential truncated at t_order (terms need at least three
/// insertions; unstable keys never contribute).
ScalarSeries potential_phi0(const Evaluator& eval, const std::vector<TermKey>& directions,
                            int t_order, const NovikovTruncation& trunc);

/// Derivative of a scalar series in one t direction.
ScalarSeries derivative(const ScalarSeries& series, const TermKey& direction);

struct SeriesMultiDegree {
  Rational deg0;
  std::vector<Rational> contact;
};

/// Multi-degree of one monomial q^beta * prod t_{s,k}: the q part weighs
/// with divisor degrees and the log-c1 degree, each t variable with
/// 1 - deg0 of its class and minus its contacts.
SeriesMultiDegree monomial_multidegree(const StateSpace& space, const CurveClass& beta,
                                       const TMonomial& mono);

/// Extend a class-valued series by one more small-product factor on the
/// right; used for associativity checks.
ClassSeries star_extend(const Evaluator& eval, const ClassSeries& series,
                        const StateClass& rhs, const NovikovTruncation& trunc);

}  // namespace relqc
