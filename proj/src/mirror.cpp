#include "relqc/mirror.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "relqc/error.hpp"

namespace relqc {

namespace {

using nlohmann::ordered_json;

std::string point_name(const ConePoint& p, int divisor_count) {
  std::ostringstream out;
  out << "(";
  auto s = contact_vector(p, divisor_count);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out << ",";
    out << s[i];
  }
  out << ")";
  return out.str();
}

std::string q_monomial_name(const CurveClass& beta) {
  if (is_zero_class(beta)) return "";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    if (beta[i] == 0) continue;
    if (!first) out << "*";
    first = false;
    out << "q";
    if (beta.size() > 1) out << (i + 1);
    if (beta[i] != 1) out << "^" << beta[i];
  }
  return out.str();
}

}  // namespace

void ThetaElement::add(const CurveClass& beta, const ConePoint& p, const Rational& coeff) {
  if (coeff == 0) return;
  auto key = std::make_pair(beta, p);
  auto [it, inserted] = terms.emplace(key, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms.erase(it);
  }
}

ThetaElement& ThetaElement::operator-=(const ThetaElement& other) {
  for (const auto& [key, coeff] : other.terms) add(key.first, key.second, -coeff);
  return *this;
}

std::string ThetaElement::to_string(int divisor_count) const {
  if (terms.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [key, coeff] : terms) {
    if (!first) out << " + ";
    first = false;
    out << format_rational(coeff);
    std::string q = q_monomial_name(key.first);
    if (!q.empty()) out << "*" << q;
    out << "*theta_" << point_name(key.second, divisor_count);
  }
  return out.str();
}

StructureConstants::StructureConstants(const PairDescription& pair, const DualComplex& complex,
                                       long long contact_bound,
                                       std::vector<long long> beta_bound)
    : pair_(&pair),
      complex_(&complex),
      contact_bound_(contact_bound),
      beta_bound_(std::move(beta_bound)) {}

void StructureConstants::insert(const ConePoint& p1, const ConePoint& p2, const ConePoint& r,
                                const CurveClass& beta, const Rational& value) {
  // Balance ties the three points to the curve class.
  auto s1 = contact_vector(p1, pair_->divisor_count);
  auto s2 = contact_vector(p2, pair_->divisor_count);
  auto sr = contact_vector(r, pair_->divisor_count);
  for (int i = 0; i < pair_->divisor_count; ++i) {
    if (s1[i] + s2[i] - sr[i] != pair_->divisor_degree(beta, i)) {
      throw Error(ErrorKind::Data, "structure constant violates contact balance");
    }
  }
  if (value != 0 && log_canonical_degree(*pair_, beta) != 0) {
    throw Error(ErrorKind::Data,
                "structure constant nonzero on a class where K+D has nonzero degree");
  }
  ConePoint a = std::min(p1, p2);
  ConePoint b = std::max(p1, p2);
  auto key = std::make_tuple(a, b, r, beta);
  auto [it, inserted] = entries_.emplace(key, value);
  if (!inserted && it->second != value) {
    throw Error(ErrorKind::Data, "conflicting duplicate structure constants");
  }
}

Rational StructureConstants::value(const ConePoint& p1, const ConePoint& p2, const ConePoint& r,
                                   const CurveClass& beta) const {
  if (log_canonical_degree(*pair_, beta) != 0) return 0;  // vanishing lemma
  ConePoint a = std::min(p1, p2);
  ConePoint b = std::max(p1, p2);
  auto it = entries_.find(std::make_tuple(a, b, r, beta));
  if (it != entries_.end()) return it->second;
  // Absent entries are zero only inside the declared bounds.
  long long contacts = a.total_multiplicity() + b.total_multiplicity() +
                       r.total_multiplicity();
  bool in_bounds = contacts <= contact_bound_;
  for (std::size_t i = 0; i < beta.size() && in_bounds; ++i) {
    long long v = beta[i] < 0 ? -beta[i] : beta[i];
    if (v > beta_bound_[i]) in_bounds = false;
  }
  if (!in_bounds) {
    throw Error(ErrorKind::Incompleteness,
                "structure constant outside the declared bounds: N_{" +
                    point_name(p1, pair_->divisor_count) + "," +
                    point_name(p2, pair_->divisor_count) + ",-" +
                    point_name(r, pair_->divisor_count) + "}");
  }
  return 0;
}

std::vector<StructureConstants::Entry> StructureConstants::entries() const {
  std::vector<Entry> out;
  for (const auto& [key, value] : entries_) {
    if (value == 0) continue;
    out.push_back(Entry{std::get<0>(key), std::get<1>(key), std::get<2>(key), std::get<3>(key),
                        value});
  }
  return out;
}

StructureConstants load_constants(const std::string& path, const PairDescription& pair,
                                  const DualComplex& complex) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open structure constants '" + path + "'");
  ordered_json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw Error(ErrorKind::Parse, "constants file '" + path + "': " + e.what());
  }
  try {
    StructureConstants constants(pair, complex, doc.at("contact_bound").get<long long>(),
                                 doc.at("beta_bound").get<std::vector<long long>>());
    for (const auto& entry : doc.at("entries")) {
      auto parse_point = [&](const ordered_json& contacts) {
        auto point = cone_point_from_contacts(complex, contacts.get<std::vector<long long>>());
        if (!point) {
          throw Error(ErrorKind::Data,
                      "constants file '" + path + "': contact vector is not a cone point");
        }
        return *point;
      };
      constants.insert(parse_point(entry.at("p1")), parse_point(entry.at("p2")),
                       parse_point(entry.at("r")), entry.at("beta").get<CurveClass>(),
                       parse_rational(entry.at("value").get<std::string>()));
    }
    return constants;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorKind::Parse, "constants file '" + path + "': " + e.what());
  }
}

void store_constants(const StructureConstants& constants, const std::string& path) {
  ordered_json doc;
  doc["contact_bound"] = constants.contact_bound();
  doc["beta_bound"] = constants.beta_bound();
  ordered_json entries = ordered_json::array();
  const int n = constants.pair().divisor_count;
  for (const auto& entry : constants.entries()) {
    ordered_json one;
    one["p1"] = contact_vector(entry.p1, n);
    one["p2"] = contact_vector(entry.p2, n);
    one["r"] = contact_vector(entry.r, n);
    one["beta"] = entry.beta;
    one["value"] = format_rational(entry.value);
    entries.push_back(one);
  }
  doc["entries"] = entries;
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Data, "cannot write constants file '" + path + "'");
  out << doc.dump(2) << "\n";
}

namespace {

/// Point class of the stratum at contact -r: the dual of the identity
/// classes, which for a disconnected stratum is the sum over components.
StateClass point_class_at_minus(const StateSpace& space, const ConePoint& r) {
  ContactVector plus = contact_vector(r, space.divisor_count());
  const StratumData* stratum = space.stratum_for(plus);
  if (stratum == nullptr) return StateClass{};
  StateClass out;
  for (const auto& basis_class : stratum->basis) {
    if (basis_class.degree == 0) {
      out += space.dual_of(TermKey{plus, basis_class.label});
    }
  }
  return out;
}

StateClass identity_class_at(const StateSpace& space, const ConePoint& p) {
  ContactVector s = contact_vector(p, space.divisor_count());
  const StratumData* stratum = space.stratum_for(s);
  if (stratum == nullptr) return StateClass{};
  StateClass out;
  for (const auto& basis_class : stratum->basis) {
    if (basis_class.degree == 0) out += space.basis_class(s, basis_class.label);
  }
  return out;
}

}  // namespace

StructureConstants constants_from_invariants(const Evaluator& eval, const DualComplex& complex,
                                             long long contact_bound,
                                             std::vector<long long> beta_bound) {
  const StateSpace& space = eval.space();
  const PairDescription& pair = space.pair();
  StructureConstants constants(pair, complex, contact_bound, std::move(beta_bound));

  std::vector<ConePoint> points = lattice_points(complex, contact_bound);
  // Enumerate curve classes within the bounds.
  long long beta_total = 0;
  for (long long b : constants.beta_bound()) beta_total += b;
  std::vector<CurveClass> betas;
  {
    NovikovTruncation trunc = NovikovTruncation::powers_below(pair, beta_total + 1);
    betas = trunc.classes();
  }

  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i; j < points.size(); ++j) {
      const ConePoint& p1 = points[i];
      const ConePoint& p2 = points[j];
      if (p1.total_multiplicity() + p2.total_multiplicity() > contact_bound) continue;
      for (const auto& beta : betas) {
        if (log_canonical_degree(pair, beta) != 0) continue;
        ContactVector target(space.divisor_count(), 0);
        auto s1 = contact_vector(p1, space.divisor_count());
        auto s2 = contact_vector(p2, space.divisor_count());
        for (int d = 0; d < space.divisor_count(); ++d) {
          target[d] = s1[d] + s2[d] - pair.divisor_degree(beta, d);
        }
        auto r = cone_point_from_contacts(complex, target);
        if (!r) continue;
        if (p1.total_multiplicity() + p2.total_multiplicity() + r->total_multiplicity() >
            contact_bound) {
          continue;
        }
        StateClass a = identity_class_at(space, p1);
        StateClass b = identity_class_at(space, p2);
        StateClass c = point_class_at_minus(space, *r);
        if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
        Rational value = eval.evaluate_classes(0, {{a, 0}, {b, 0}, {c, 0}}, beta);
        if (value != 0) constants.insert(p1, p2, *r, beta, value);
      }
    }
  }
  return constants;
}

MirrorAlgebra::MirrorAlgebra(const StructureConstants& constants,
                             const NovikovTruncation& trunc, long long theta_bound)
    : constants_(&constants), trunc_(&trunc), theta_bound_(theta_bound) {}

ThetaElement MirrorAlgebra::theta(const ConePoint& p) const {
  ThetaElement out;
  out.add(CurveClass(constants_->pair().curve_lattice_rank, 0), p, 1);
  return out;
}

ThetaElement MirrorAlgebra::product(const ConePoint& p1, const ConePoint& p2) const {
  const PairDescription& pair = constants_->pair();
  ThetaElement out;
  auto s1 = contact_vector(p1, pair.divisor_count);
  auto s2 = contact_vector(p2, pair.divisor_count);
  for (const auto& beta : trunc_->classes()) {
    ContactVector target(pair.divisor_count, 0);
    for (int d = 0; d < pair.divisor_count; ++d) {
      target[d] = s1[d] + s2[d] - pair.divisor_degree(beta, d);
    }
    auto r = cone_point_from_contacts(constants_->complex(), target);
    if (!r) continue;  // output would land in a zero summand
    out.add(beta, *r, constants_->value(p1, p2, *r, beta));
  }
  return out;
}

ThetaElement MirrorAlgebra::product(const ThetaElement& a, const ConePoint& p) const {
  ThetaElement out;
  for (const auto& [key, coeff] : a.terms) {
    ThetaElement partial = product(key.second, p);
    for (const auto& [pkey, pcoeff] : partial.terms) {
      CurveClass total = add_classes(key.first, pkey.first);
      if (!trunc_->contains(total)) continue;
      out.add(total, pkey.second, coeff * pcoeff);
    }
  }
  return out;
}

LawReport algebra_laws(const MirrorAlgebra& algebra) {
  LawReport report;
  const DualComplex& complex = algebra.complex();
  const int n = algebra.constants().pair().divisor_count;
  std::vector<ConePoint> points = lattice_points(complex, algebra.theta_bound());
  ConePoint origin;

  NefClass nef = nef_classification(algebra.constants().pair());
  report.associativity_asserted = nef != NefClass::Neither;

  for (const auto& p : points) {
    ThetaElement lhs = algebra.product(origin, p);
    ThetaElement expected = algebra.theta(p);
    lhs -= expected;
    if (!lhs.is_zero()) {
      report.unit_ok = false;
      report.witness = "unit failure at theta_" + point_name(p, n);
      report.residual = lhs;
      return report;
    }
  }

  // Commutativity is symmetrization-by-construction once constants are
  // stored unordered; verify through the product route anyway.
  for (const auto& p1 : points) {
    for (const auto& p2 : points) {
      ThetaElement ab = algebra.product(p1, p2);
      ThetaElement ba = algebra.product(p2, p1);
      ab -= ba;
      if (!ab.is_zero()) {
        report.commutative = false;
        report.witness = "commutativity failure at (" + point_name(p1, n) + ", " +
                         point_name(p2, n) + ")";
        report.residual = ab;
        return report;
      }
    }
  }

  for (const auto& p1 : points) {
    for (const auto& p2 : points) {
      for (const auto& p3 : points) {
        ThetaElement left = algebra.product(algebra.product(p1, p2), p3);
        ThetaElement right = algebra.product(algebra.product(p2, p3), p1);
        left -= right;
        if (!left.is_zero()) {
          report.associative = false;
          report.witness = "associativity failure at (" + point_name(p1, n) + ", " +
                           point_name(p2, n) + ", " + point_name(p3, n) + ")";
          report.residual = left;
          return report;
        }
      }
    }
  }
  return report;
}

namespace {

void compositions(const PairDescription& pair, const CurveClass& beta, int parts,
                  std::vector<CurveClass>& current,
                  const std::function<void(const std::vector<CurveClass>&)>& emit) {
  if (parts == 1) {
    current.push_back(beta);
    emit(current);
    current.pop_back();
    return;
  }
  for (const auto& [beta1, beta2] : effective_splittings(pair, beta)) {
    current.push_back(beta1);
    compositions(pair, beta2, parts - 1, current, emit);
    current.pop_back();
  }
}

}  // namespace

Rational frobenius_constant(const MirrorAlgebra& algebra, const std::vector<ConePoint>& points,
                            const CurveClass& beta) {
  const PairDescription& pair = algebra.constants().pair();
  if (points.size() < 2) {
    throw Error(ErrorKind::Config, "the chain recursion needs at least two points");
  }
  NefClass nef = nef_classification(pair);
  if (nef == NefClass::Neither) {
    throw Error(ErrorKind::Config,
                "K+D is neither nef nor anti-nef on the declared generators; the chain "
                "recursion is unproven in this regime and is refused");
  }
  const int m = static_cast<int>(points.size());
  ConePoint origin;
  if (m == 2) return algebra.constants().value(points[0], points[1], origin, beta);

  Rational total = 0;
  std::vector<CurveClass> current;
  compositions(pair, beta, m - 1, current, [&](const std::vector<CurveClass>& split) {
    ConePoint state = points[0];
    Rational partial = 1;
    for (int i = 0; i + 1 < m; ++i) {
      ContactVector target(pair.divisor_count, 0);
      auto s_state = contact_vector(state, pair.divisor_count);
      auto s_next = contact_vector(points[i + 1], pair.divisor_count);
      for (int d = 0; d < pair.divisor_count; ++d) {
        target[d] = s_state[d] + s_next[d] - pair.divisor_degree(split[i], d);
      }
      const bool last = i + 2 == m;
      if (last) {
        if (!is_zero_contact(target)) {
          partial = 0;
          break;
        }
        partial *= algebra.constants().value(state, points[i + 1], origin, split[i]);
      } else {
        auto next_state = cone_point_from_contacts(algebra.complex(), target);
        if (!next_state) {
          partial = 0;
          break;
        }
        partial *= algebra.constants().value(state, points[i + 1], *next_state, split[i]);
        state = *next_state;
      }
      if (partial == 0) break;
    }
    total += partial;
  });
  return total;
}

Rational frobenius_order_independence(const MirrorAlgebra& algebra,
                                      const std::vector<ConePoint>& points,
                                      const CurveClass& beta) {
  std::vector<ConePoint> ordered = points;
  std::sort(ordered.begin(), ordered.end());
  Rational lowest, highest;
  bool first = true;
  do {
    Rational value = frobenius_constant(algebra, ordered, beta);
    if (first) {
      lowest = highest = value;
      first = false;
    } else {
      lowest = std::min(lowest, value);
      highest = std::max(highest, value);
    }
  } while (std::next_permutation(ordered.begin(), ordered.end()));
  return highest - lowest;
}

std::vector<ConePoint> default_generators(const DualComplex& complex) {
  std::vector<ConePoint> generators;
  for (const auto& simplex : complex.simplices) {
    ConePoint p;
    p.support = simplex;
    p.multiplicities.assign(simplex.size(), 1);
    generators.push_back(std::move(p));
  }
  std::sort(generators.begin(), generators.end(),
            [](const ConePoint& a, const ConePoint& b) {
              if (a.support.size() != b.support.size()) {
                return a.support.size() < b.support.size();
              }
              return a < b;
            });
  return generators;
}

namespace {

std::string generator_name(std::size_t index) {
  static const char* names[] = {"x", "y", "z", "w"};
  if (index < 4) return names[index];
  return "g" + std::to_string(index + 1);
}

using ExponentVector = std::vector<int>;

/// Column index space for the linearized relation search: a generator
/// monomial together with a curve class multiplying it.
struct Column {
  ExponentVector alpha;
  CurveClass beta;

  bool operator<(const Column& other) const {
    int da = 0, db = 0;
    for (int e : alpha) da += e;
    for (int e : other.alpha) db += e;
    if (da != db) return da < db;
    if (alpha != other.alpha) return alpha < other.alpha;
    return beta < other.beta;
  }
};

}  // namespace

Presentation mirror_presentation(const MirrorAlgebra& algebra,
                                 const std::vector<ConePoint>& generators,
                                 int relation_degree_bound,
                                 const std::map<ConePoint, long long>* grading) {
  const PairDescription& pair = algebra.constants().pair();
  const int n = pair.divisor_count;
  const auto& trunc = algebra.truncation();

  Presentation presentation;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    Presentation::Generator g;
    g.name = generator_name(i);
    g.point = generators[i];
    if (grading) {
      auto it = grading->find(generators[i]);
      if (it != grading->end()) g.grading = it->second;
    }
    presentation.generators.push_back(std::move(g));
  }

  // Expand every generator monomial up to the degree bound.
  const int gen_count = static_cast<int>(generators.size());
  std::map<ExponentVector, ThetaElement> expansions;
  {
    ThetaElement one = algebra.theta(ConePoint{});
    ExponentVector zero(gen_count, 0);
    expansions[zero] = one;
    std::vector<ExponentVector> frontier{zero};
    for (int deg = 1; deg <= relation_degree_bound; ++deg) {
      std::vector<ExponentVector> next;
      for (const auto& alpha : frontier) {
        for (int g = 0; g < gen_count; ++g) {
          ExponentVector widened = alpha;
          widened[g] += 1;
          if (expansions.count(widened)) continue;
          expansions[widened] = algebra.product(expansions[alpha], generators[g]);
          next.push_back(widened);
        }
      }
      frontier = std::move(next);
    }
  }

  // Spanning check: every theta point up to the bound must be reachable.
  std::vector<ConePoint> points = lattice_points(algebra.complex(), algebra.theta_bound());
  {
    std::map<std::pair<CurveClass, ConePoint>, int> row_of;
    std::vector<Column> columns;
    for (const auto& [alpha, element] : expansions) {
      for (const auto& beta : trunc.classes()) {
        columns.push_back(Column{alpha, beta});
      }
    }
    for (const auto& column : columns) {
      for (const auto& [key, coeff] : expansions.at(column.alpha).terms) {
        (void)coeff;
        CurveClass shifted = add_classes(key.first, column.beta);
        if (!trunc.contains(shifted)) continue;
        auto row_key = std::make_pair(shifted, key.second);
        if (!row_of.count(row_key)) {
          int next = static_cast<int>(row_of.size());
          row_of[row_key] = next;
        }
      }
    }
    for (const auto& p : points) {
      auto key = std::make_pair(CurveClass(pair.curve_lattice_rank, 0), p);
      if (!row_of.count(key)) {
        int next = static_cast<int>(row_of.size());
        row_of[key] = next;
      }
    }
    RationalMatrix matrix(row_of.size(), std::vector<Rational>(columns.size(), 0));
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const auto& element = expansions.at(columns[c].alpha);
      for (const auto& [key, coeff] : element.terms) {
        CurveClass shifted = add_classes(key.first, columns[c].beta);
        if (!trunc.contains(shifted)) continue;
        matrix[row_of.at({shifted, key.second})][c] = coeff;
      }
    }
    std::vector<std::string> unreached;
    for (const auto& p : points) {
      std::vector<Rational> rhs(row_of.size(), 0);
      rhs[row_of.at({CurveClass(pair.curve_lattice_rank, 0), p})] = 1;
      if (!solve_linear(matrix, rhs)) unreached.push_back("theta_" + point_name(p, n));
    }
    if (!unreached.empty()) {
      std::string joined;
      for (const auto& name : unreached) joined += (joined.empty() ? "" : ", ") + name;
      throw Error(ErrorKind::Spanning,
                  "generators fail to span the truncation; unreached: " + joined);
    }
  }

  // Relation extraction, degree by degree. Kernel vectors already implied
  // by lower-degree relations (times monomials and curve classes) are
  // dropped; the survivors generate the ideal on this truncation.
  std::vector<std::map<ExponentVector, std::map<CurveClass, Rational>>> relations;

  for (int deg = 1; deg <= relation_degree_bound; ++deg) {
    std::vector<Column> columns;
    for (const auto& [alpha, element] : expansions) {
      int total = 0;
      for (int e : alpha) total += e;
      if (total > deg) continue;
      for (const auto& beta : trunc.classes()) columns.push_back(Column{alpha, beta});
    }
    std::sort(columns.begin(), columns.end());
    std::map<std::pair<CurveClass, ConePoint>, int> row_of;
    for (const auto& column : columns) {
      for (const auto& [key, coeff] : expansions.at(column.alpha).terms) {
        (void)coeff;
        CurveClass shifted = add_classes(key.first, column.beta);
        if (!trunc.contains(shifted)) continue;
        auto row_key = std::make_pair(shifted, key.second);
        if (!row_of.count(row_key)) {
          int next = static_cast<int>(row_of.size());
          row_of[row_key] = next;
        }
      }
    }
    RationalMatrix matrix(row_of.size(), std::vector<Rational>(columns.size(), 0));
    for (std::size_t c = 0; c < columns.size(); ++c) {
      for (const auto& [key, coeff] : expansions.at(columns[c].alpha).terms) {
        CurveClass shifted = add_classes(key.first, columns[c].beta);
        if (!trunc.contains(shifted)) continue;
        matrix[row_of.at({shifted, key.second})][c] += coeff;
      }
    }
    auto kernel = kernel_basis(matrix, static_cast<int>(columns.size()));
    if (kernel.empty()) continue;

    // Span of consequences of already-found relations: relation times a
    // generator monomial times a curve class, within this degree.
    std::vector<std::vector<Rational>> consequences;
    auto column_index = [&](const ExponentVector& alpha, const CurveClass& beta) -> int {
      Column probe{alpha, beta};
      auto it = std::lower_bound(columns.begin(), columns.end(), probe);
      if (it == columns.end() || probe < *it) return -1;
      return static_cast<int>(it - columns.begin());
    };
    auto push_consequence = [&](const std::map<ExponentVector, std::map<CurveClass, Rational>>&
                                    relation,
                                const ExponentVector& multiplier, const CurveClass& shift) {
      std::vector<Rational> vec(columns.size(), 0);
      for (const auto& [alpha, qpoly] : relation) {
        ExponentVector target = alpha;
        for (int g = 0; g < gen_count; ++g) target[g] += multiplier[g];
        int total = 0;
        for (int e : target) total += e;
        if (total > deg) return;  // escapes this degree; skip entirely
        for (const auto& [beta, coeff] : qpoly) {
          CurveClass shifted = add_classes(beta, shift);
          if (!trunc.contains(shifted)) continue;
          int c = column_index(target, shifted);
          if (c < 0) return;
          vec[c] += coeff;
        }
      }
      consequences.push_back(std::move(vec));
    };
    std::vector<ExponentVector> multipliers;
    {
      std::vector<ExponentVector> frontier{ExponentVector(gen_count, 0)};
      multipliers.push_back(frontier[0]);
      for (int d = 1; d <= deg; ++d) {
        std::vector<ExponentVector> next;
        for (const auto& alpha : frontier) {
          for (int g = 0; g < gen_count; ++g) {
            ExponentVector widened = alpha;
            widened[g] += 1;
            if (std::find(multipliers.begin(), multipliers.end(), widened) ==
                multipliers.end()) {
              multipliers.push_back(widened);
              next.push_back(widened);
            }
          }
        }
        frontier = std::move(next);
      }
    }
    for (const auto& relation : relations) {
      for (const auto& multiplier : multipliers) {
        for (const auto& beta : trunc.classes()) {
          push_consequence(relation, multiplier, beta);
        }
      }
    }

    for (const auto& candidate : kernel) {
      // Is the candidate in the span of the consequences?
      RationalMatrix system;
      for (const auto& consequence : consequences) system.push_back(consequence);
      // Solve system^T x = candidate.
      RationalMatrix transpose(columns.size(),
                               std::vector<Rational>(consequences.size(), 0));
      for (std::size_t r = 0; r < consequences.size(); ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) transpose[c][r] = consequences[r][c];
      }
      if (solve_linear(transpose, candidate)) continue;

      std::map<ExponentVector, std::map<CurveClass, Rational>> relation;
      for (std::size_t c = 0; c < columns.size(); ++c) {
        if (candidate[c] != 0) relation[columns[c].alpha][columns[c].beta] += candidate[c];
      }
      for (auto it = relation.begin(); it != relation.end();) {
        std::erase_if(it->second, [](const auto& e) { return e.second == 0; });
        it = it->second.empty() ? relation.erase(it) : std::next(it);
      }
      if (relation.empty()) continue;
      // Normalize: unit lead coefficient on the highest monomial.
      auto lead = std::prev(relation.end());
      Rational scale = lead->second.begin()->second;
      for (auto& [alpha, qpoly] : relation) {
        for (auto& [beta, coeff] : qpoly) coeff /= scale;
      }
      relations.push_back(relation);
      // Its own q-multiples become consequences for later candidates.
      for (const auto& beta : trunc.classes()) {
        push_consequence(relation, ExponentVector(gen_count, 0), beta);
      }
    }
  }

  presentation.relation_data = relations;
  for (const auto& relation : relations) {
    // Render with the highest monomial first.
    std::ostringstream out;
    bool first = true;
    for (auto it = relation.rbegin(); it != relation.rend(); ++it) {
      std::string monomial;
      for (int g = 0; g < gen_count; ++g) {
        if (it->first[g] == 0) continue;
        if (!monomial.empty()) monomial += "*";
        monomial += presentation.generators[g].name;
        if (it->first[g] > 1) monomial += "^" + std::to_string(it->first[g]);
      }
      for (const auto& [beta, coeff] : it->second) {
        std::string q = q_monomial_name(beta);
        std::string body = monomial;
        if (!q.empty()) body = body.empty() ? q : q + "*" + body;
        if (body.empty()) body = "1";
        Rational magnitude = coeff < 0 ? Rational(-coeff) : coeff;
        std::string prefix;
        if (first) {
          prefix = coeff < 0 ? "-" : "";
        } else {
          prefix = coeff < 0 ? " - " : " + ";
        }
        std::string scale = magnitude == 1 ? "" : format_rational(magnitude) + "*";
        out << prefix << scale << body;
        first = false;
      }
    }
    presentation.relations.push_back(out.str());
  }
  return presentation;
}

}  // namespace relqc
