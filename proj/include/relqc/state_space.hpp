#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "relqc/pair_geometry.hpp"
#include "relqc/rational.hpp"

namespace relqc {

/// Contact-order vector s; the summand it names is the cohomology of the
/// stratum cut out by the indices where s is nonzero.
using ContactVector = std::vector<long long>;

IndexSet support_of(const ContactVector& s);
ContactVector negate(const ContactVector& s);
ContactVector add_contacts(const ContactVector& a, const ContactVector& b);
bool is_zero_contact(const ContactVector& s);

/// Basis term [T_{I_s,k}]_s, addressed by contact vector and stratum label.
struct TermKey {
  ContactVector s;
  std::string label;

  bool operator==(const TermKey& other) const = default;
  auto operator<=>(const TermKey& other) const = default;
};

/// Finite linear combination of decorated classes. Zero coefficients are
/// never stored; terms over absent strata are rejected at construction.
class StateClass {
 public:
  StateClass() = default;

  void add_term(const TermKey& key, const Rational& coeff);
  const std::map<TermKey, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  StateClass& operator+=(const StateClass& other);
  StateClass& operator-=(const StateClass& other);
  StateClass& operator*=(const Rational& scalar);
  friend StateClass operator+(StateClass a, const StateClass& b) { return a += b; }
  friend StateClass operator-(StateClass a, const StateClass& b) { return a -= b; }
  friend StateClass operator*(const Rational& c, StateClass a) { return a *= c; }
  bool operator==(const StateClass& other) const = default;

  std::string to_string() const;

 private:
  std::map<TermKey, Rational> terms_;
};

struct MultiDegree {
  Rational deg0;                   // d/2 + number of negative contacts
  std::vector<long long> contact;  // deg^i = s_i

  bool operator==(const MultiDegree& other) const = default;
};

/// The graded state space attached to a validated pair: pairing, dual
/// bases, degrees, and the identity-class basis of its degree-zero part.
class StateSpace {
 public:
  explicit StateSpace(const PairDescription& pair);

  const PairDescription& pair() const { return *pair_; }
  int divisor_count() const { return pair_->divisor_count; }

  /// Stratum of I_s, or nullptr when the summand is the zero space.
  const StratumData* stratum_for(const ContactVector& s) const;

  StateClass basis_class(const ContactVector& s, const std::string& label) const;
  StateClass unit() const;  // [1]_0

  /// deg0 and per-divisor degrees of one basis term.
  Rational term_deg0(const TermKey& key) const;
  int term_hodge_p(const TermKey& key) const;

  Rational pair_classes(const StateClass& a, const StateClass& b) const;

  /// Pairs (T_{s,k}, dual at -s) with Gram matrix the identity. Empty when
  /// the stratum is absent; throws on a singular pairing matrix.
  std::vector<std::pair<StateClass, StateClass>> dual_basis(const ContactVector& s) const;

  /// Dual of basis term (s, k) as a class with contact -s.
  StateClass dual_of(const TermKey& key) const;

  /// Multi-degree of a homogeneous class; throws a Degree error listing the
  /// distinct degrees otherwise.
  MultiDegree multi_degree(const StateClass& c) const;

  /// The bijection p <-> [1]_{contact(p)} over lattice points up to bound.
  std::vector<std::pair<ConePoint, StateClass>> degree_zero_basis(
      const DualComplex& complex, long long bound) const;

  /// Cup with an ambient degree-2 class inside each term's stratum.
  StateClass cup_h2(const std::string& h2_label, const StateClass& c) const;

  /// Cup with c1 of the log tangent bundle (the rho operator's core).
  StateClass cup_log_c1(const StateClass& c) const;

 private:
  const PairDescription* pair_;
  mutable std::map<IndexSet, RationalMatrix> pairing_inverse_cache_;

  const RationalMatrix& pairing_inverse(const IndexSet& index_set) const;
};

}  // namespace relqc
