#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "relqc/quantum.hpp"

namespace relqc {

/// Element of the theta algebra: S_I-combination of theta classes, stored
/// as (curve class, cone point) -> coefficient.
struct ThetaElement {
  std::map<std::pair<CurveClass, ConePoint>, Rational> terms;

  void add(const CurveClass& beta, const ConePoint& p, const Rational& coeff);
  ThetaElement& operator-=(const ThetaElement& other);
  bool is_zero() const { return terms.empty(); }
  std::string to_string(int divisor_count) const;
  bool operator==(const ThetaElement& other) const = default;
};

/// Structure constants N^beta_{p1,p2,-r}, symmetrized in (p1,p2). A table
/// is complete within its declared contact and curve-class bounds: absent
/// balanced keys inside the bounds count as zero, outside they are an
/// incompleteness error. Entries violating the vanishing lemma (nonzero
/// value on beta with nonzero K+D degree) are rejected.
class StructureConstants {
 public:
  StructureConstants() = default;
  StructureConstants(const PairDescription& pair, const DualComplex& complex,
                     long long contact_bound, std::vector<long long> beta_bound);

  void insert(const ConePoint& p1, const ConePoint& p2, const ConePoint& r,
              const CurveClass& beta, const Rational& value);

  /// Value of N^beta_{p1,p2,-r}; throws Incompleteness outside the bounds.
  Rational value(const ConePoint& p1, const ConePoint& p2, const ConePoint& r,
                 const CurveClass& beta) const;

  long long contact_bound() const { return contact_bound_; }
  const std::vector<long long>& beta_bound() const { return beta_bound_; }
  const PairDescription& pair() const { return *pair_; }
  const DualComplex& complex() const { return *complex_; }
  std::size_t size() const { return entries_.size(); }

  /// All stored nonzero entries, canonically ordered.
  struct Entry {
    ConePoint p1, p2, r;
    CurveClass beta;
    Rational value;
  };
  std::vector<Entry> entries() const;

 private:
  const PairDescription* pair_ = nullptr;
  const DualComplex* complex_ = nullptr;
  long long contact_bound_ = 0;
  std::vector<long long> beta_bound_;
  std::map<std::tuple<ConePoint, ConePoint, ConePoint, CurveClass>, Rational> entries_;
};

StructureConstants load_constants(const std::string& path, const PairDescription& pair,
                                  const DualComplex& complex);
void store_constants(const StructureConstants& constants, const std::string& path);

/// Derive the constants from an invariant table via the three-point rule
/// with a point-class output; point classes of positive-dimensional strata
/// are the top classes listed in `point_labels` per stratum.
StructureConstants constants_from_invariants(const Evaluator& eval,
                                             const DualComplex& complex,
                                             long long contact_bound,
                                             std::vector<long long> beta_bound);

/// The free S_I-module on theta classes with the declared product table.
class MirrorAlgebra {
 public:
  MirrorAlgebra(const StructureConstants& constants, const NovikovTruncation& trunc,
                long long theta_bound);

  ThetaElement theta(const ConePoint& p) const;
  ThetaElement product(const ConePoint& p1, const ConePoint& p2) const;
  ThetaElement product(const ThetaElement& a, const ConePoint& p) const;

  const StructureConstants& constants() const { return *constants_; }
  const NovikovTruncation& truncation() const { return *trunc_; }
  long long theta_bound() const { return theta_bound_; }
  const DualComplex& complex() const { return constants_->complex(); }

 private:
  const StructureConstants* constants_;
  const NovikovTruncation* trunc_;
  long long theta_bound_;
};

struct LawReport {
  bool unit_ok = true;
  bool commutative = true;
  bool associative = true;
  bool associativity_asserted = true;  // false when the nef gate failed
  std::string witness;                 // first offending triple, if any
  ThetaElement residual;
};

/// Unit, commutativity, and associativity over all points up to the theta
/// bound. Associativity is asserted only under the nef hypothesis;
/// otherwise it is still computed but reported as informational.
LawReport algebra_laws(const MirrorAlgebra& algebra);

/// Chain recursion for the theta_0 coefficient of an m-fold product.
/// m = 2 reads the table directly; m >= 3 sums over splittings of beta and
/// intermediate cone points forced by balance.
Rational frobenius_constant(const MirrorAlgebra& algebra, const std::vector<ConePoint>& points,
                            const CurveClass& beta);

/// Max pairwise difference of the chain value over all orderings of the
/// insertion points; zero certifies order independence.
Rational frobenius_order_independence(const MirrorAlgebra& algebra,
                                      const std::vector<ConePoint>& points,
                                      const CurveClass& beta);

struct Presentation {
  struct Generator {
    std::string name;
    ConePoint point;
    std::optional<long long> grading;
  };
  std::vector<Generator> generators;
  std::vector<std::string> relations;  // canonical text form
  /// Relation data: coefficient per generator-exponent monomial, where the
  /// coefficient is a polynomial in the curve classes.
  std::vector<std::map<std::vector<int>, std::map<CurveClass, Rational>>> relation_data;
};

/// Present the algebra on the chosen generators (default: primitive ray
/// points plus the sum of the vertices of each higher simplex), extracting
/// ideal generators degree by degree with exact linear algebra over S_I.
/// An optional grading on cone points tags generators for downstream use.
Presentation mirror_presentation(const MirrorAlgebra& algebra,
                                 const std::vector<ConePoint>& generators,
                                 int relation_degree_bound,
                                 const std::map<ConePoint, long long>* grading = nullptr);

std::vector<ConePoint> default_generators(const DualComplex& complex);

}  // namespace relqc
