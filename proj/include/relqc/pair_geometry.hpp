#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "relqc/linalg.hpp"
#include "relqc/rational.hpp"

namespace relqc {

/// Sorted, 0-based divisor indices naming a stratum D_I (empty = the ambient
/// space itself).
using IndexSet = std::vector<int>;

/// Curve class in the user-declared basis of the degree-2 homology lattice.
using CurveClass = std::vector<long long>;

CurveClass add_classes(const CurveClass& a, const CurveClass& b);
CurveClass subtract_classes(const CurveClass& a, const CurveClass& b);
bool is_zero_class(const CurveClass& beta);

struct BasisClass {
  std::string label;
  int degree = 0;   // real cohomological degree
  int hodge_p = 0;  // defaults to degree/2 for algebraic classes
};

/// Finite cohomology table for one stratum. Geometry never enters: the
/// basis, Poincare pairing, and the cup actions we need are all declared.
struct StratumData {
  std::vector<BasisClass> basis;
  RationalMatrix pairing;
  /// Multiplication by a degree-2 ambient class restricted to this stratum,
  /// keyed by the ambient H^2 label. Column j holds gamma cup basis[j].
  std::map<std::string, RationalMatrix> cup_h2;
  /// Multiplication by c1 of the log tangent bundle restricted here.
  RationalMatrix log_c1_action;
  bool connected = true;

  int index_of(const std::string& label) const;  // -1 when absent
};

enum class NefClass { LogCalabiYau, KPlusDNef, AntiKPlusDNef, Neither };

std::string to_string(NefClass c);

/// Declarative description of the pair (X, D): strata cohomology tables,
/// the curve-class lattice with its intersection numbers, and effectivity
/// data. Immutable once validated; everything downstream reads it.
struct PairDescription {
  std::string name;
  int divisor_count = 0;       // n
  int ambient_dim = 0;         // complex dimension of X
  int curve_lattice_rank = 0;
  std::vector<CurveClass> effective_generators;
  /// divisor_degrees[j][i] = intersection of lattice basis class e_j with D_i.
  std::vector<std::vector<long long>> divisor_degrees;
  /// c1_degrees[j] = degree of c1(T_X) on e_j.
  std::vector<long long> c1_degrees;
  /// Optional directly-supplied degrees of K_X + D, cross-checked on load.
  std::optional<std::vector<long long>> kplusd_degrees;
  /// Degrees of ambient H^2 basis classes on lattice basis classes.
  std::map<std::string, std::vector<long long>> h2_degrees;
  std::map<IndexSet, StratumData> strata;
  std::optional<NefClass> declared_nef;

  bool has_stratum(const IndexSet& index_set) const;
  const StratumData& stratum(const IndexSet& index_set) const;

  /// Complex dimension of D_I; strata of a simple normal crossing divisor
  /// have pure codimension |I|.
  int stratum_dim(const IndexSet& index_set) const {
    return ambient_dim - static_cast<int>(index_set.size());
  }

  long long divisor_degree(const CurveClass& beta, int divisor_index) const;
  long long total_divisor_degree(const CurveClass& beta) const;
  long long c1_degree(const CurveClass& beta) const;
  long long h2_degree(const std::string& label, const CurveClass& beta) const;

  /// Throws on any violated invariant (closedness, pairing degeneracy,
  /// mismatched K+D input, inconsistent declared nef flag).
  void validate() const;
};

/// One integer point of the cone over the dual intersection complex,
/// stored as its support simplex and positive multiplicities.
struct ConePoint {
  IndexSet support;
  std::vector<long long> multiplicities;

  bool is_origin() const { return support.empty(); }
  long long total_multiplicity() const;

  bool operator==(const ConePoint& other) const = default;
  auto operator<=>(const ConePoint& other) const = default;
};

/// Vertex-and-simplex presentation of the dual intersection complex of D;
/// the cone B is carried implicitly by the simplex set.
struct DualComplex {
  int vertex_count = 0;
  std::set<IndexSet> simplices;  // nonempty index sets of nonempty strata

  bool has_simplex(const IndexSet& index_set) const {
    return index_set.empty() || simplices.count(index_set) > 0;
  }
};

DualComplex build_dual_complex(const PairDescription& pair);

/// All cone points with total multiplicity <= bound, origin first, then by
/// total multiplicity and lexicographic contact vector.
std::vector<ConePoint> lattice_points(const DualComplex& complex, long long bound);

std::vector<long long> contact_vector(const ConePoint& point, int divisor_count);

/// Cone point with the given contact vector, or nullopt when the vector has
/// a negative entry or its support is not a simplex of the complex.
std::optional<ConePoint> cone_point_from_contacts(const DualComplex& complex,
                                                  const std::vector<long long>& contacts);

/// Degree of K_X + D on beta, computed as -c1 degree plus the sum of the
/// divisor degrees.
long long log_canonical_degree(const PairDescription& pair, const CurveClass& beta);

NefClass nef_classification(const PairDescription& pair);

/// Sign pattern of K_X + D on the declared effective generators alone,
/// ignoring any declared flag.
NefClass nef_classification_from_generators(const PairDescription& pair);

}  // namespace relqc
