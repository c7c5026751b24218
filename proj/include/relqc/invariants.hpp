#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "relqc/state_space.hpp"

namespace relqc {

/// One marked point: decorated class plus descendant power.
struct Insertion {
  ContactVector s;
  std::string label;
  int psi = 0;

  bool operator==(const Insertion& other) const = default;
  auto operator<=>(const Insertion& other) const = default;
};

/// Symmetrized key of one invariant. Insertions are kept sorted so that
/// lookups are independent of marking order.
struct InvariantKey {
  int genus = 0;
  std::vector<Insertion> insertions;
  CurveClass beta;

  void canonicalize();
  int points() const { return static_cast<int>(insertions.size()); }

  bool operator==(const InvariantKey& other) const = default;
  auto operator<=>(const InvariantKey& other) const = default;

  std::string to_string() const;
};

/// Declared completeness contract of a table: which contact vectors the
/// splitting sums may range over, and how far the curve classes go. Keys
/// outside the window are never assumed zero silently.
struct SupportWindow {
  long long max_total_contact = 0;         // bound on sum of |s_i|
  std::vector<long long> beta_bound;       // componentwise bound on beta

  bool contains_contact(const ContactVector& s) const;
  bool contains_beta(const CurveClass& beta) const;
};

/// Table of formal invariants keyed by (genus, insertions, curve class).
/// Values are exact rationals; entries are validated against contact
/// balance and the virtual dimension constraint on load.
class InvariantTable {
 public:
  InvariantTable() = default;
  InvariantTable(const StateSpace& space, SupportWindow window)
      : space_(&space), window_(std::move(window)) {}

  const SupportWindow& window() const { return window_; }
  const StateSpace& space() const { return *space_; }

  /// Insert with validation. `source` names the file line for diagnostics.
  void insert(InvariantKey key, const Rational& value, const std::string& source = "");

  std::optional<Rational> lookup(const InvariantKey& key) const;
  std::size_t size() const { return values_.size(); }
  const std::map<InvariantKey, Rational>& entries() const { return values_; }

 private:
  const StateSpace* space_ = nullptr;
  SupportWindow window_;
  std::map<InvariantKey, Rational> values_;
  std::map<InvariantKey, std::string> sources_;
};

/// Contact balance: per divisor, the contact orders must sum to the degree
/// of that divisor on beta.
bool contact_balance_ok(const StateSpace& space, const InvariantKey& key);

/// Virtual dimension constraint for genus-zero bookkeeping (the principal
/// vanishing filter; callers treat failing keys as exactly zero).
bool virtual_dimension_ok(const StateSpace& space, const InvariantKey& key);

/// JSON-lines IO. First line is the manifest with the support window and
/// curve-class bound; each later line is one entry.
InvariantTable load_table(const std::string& path, const StateSpace& space);
void store_table(const InvariantTable& table, const std::string& path);

/// Formal linear combination of keys plus a constant, the result of one
/// rewrite step.
struct ReducedExpression {
  Rational constant;  // contribution with no remaining invariant factor
  std::vector<std::pair<Rational, InvariantKey>> terms;
};

struct Irreducible {
  std::string reason;
};

/// One step of string / divisor / dilaton rewriting. Applies only when the
/// key carries a suitable insertion at contact zero and the forgotten
/// moduli problem is stable; otherwise returns the Irreducible marker.
std::variant<ReducedExpression, Irreducible> reduce_elementary(const StateSpace& space,
                                                               const InvariantKey& key);

/// Memoizing evaluator over one table. Genus-zero keys not stored directly
/// are reduced through the universal equations until stored entries (or
/// provable zeros) are reached; anything else raises Incompleteness.
class Evaluator {
 public:
  explicit Evaluator(const InvariantTable& table);

  Rational evaluate(const InvariantKey& key) const;

  /// Mixed-class evaluation: expands StateClass insertions by linearity.
  Rational evaluate_classes(int genus,
                            const std::vector<std::pair<StateClass, int>>& insertions,
                            const CurveClass& beta) const;

  const InvariantTable& table() const { return *table_; }
  const StateSpace& space() const { return table_->space(); }

  /// Genus-zero topological recursion on the first positive descendant
  /// power. Exposed for direct use and order-independence tests; `anchor_b`
  /// and `anchor_c` pick which markings stay with the second factor.
  Rational trr_reduce(const InvariantKey& key, int descendant_index, int anchor_b,
                      int anchor_c) const;

  /// One splitting term: sum over the dual-basis pairs at the forced
  /// contact vector of (first factor) x (second factor against the dual).
  /// Raises Incompleteness when the forced vector escapes the window and
  /// the dimension filters cannot kill both factors.
  Rational splitting_sum(const std::vector<Insertion>& side1, const CurveClass& beta1,
                         const std::vector<Insertion>& side2, const CurveClass& beta2,
                         const ContactVector& forced) const;

 private:
  const InvariantTable* table_;
  mutable std::map<InvariantKey, Rational> cache_;
  mutable std::map<InvariantKey, int> in_progress_;

  Rational evaluate_uncached(const InvariantKey& key) const;
};

/// Difference of the two exchange-paired splitting sums for four anchor
/// insertions and optional spectators; zero on a consistent table.
Rational wdvv_residual(const Evaluator& eval, const std::vector<Insertion>& anchors,
                       const std::vector<Insertion>& spectators, const CurveClass& beta);

/// Enumerate splittings beta1 + beta2 = beta with both parts effective.
std::vector<std::pair<CurveClass, CurveClass>> effective_splittings(
    const PairDescription& pair, const CurveClass& beta);

}  // namespace relqc
