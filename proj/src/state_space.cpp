#include "relqc/state_space.hpp"

#include <algorithm>
#include <sstream>

#include "relqc/error.hpp"

namespace relqc {

IndexSet support_of(const ContactVector& s) {
  IndexSet support;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != 0) support.push_back(static_cast<int>(i));
  }
  return support;
}

ContactVector negate(const ContactVector& s) {
  ContactVector out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = -s[i];
  return out;
}

ContactVector add_contacts(const ContactVector& a, const ContactVector& b) {
  ContactVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

bool is_zero_contact(const ContactVector& s) {
  return std::all_of(s.begin(), s.end(), [](long long v) { return v == 0; });
}

void StateClass::add_term(const TermKey& key, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.emplace(key, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

StateClass& StateClass::operator+=(const StateClass& other) {
  for (const auto& [key, coeff] : other.terms_) add_term(key, coeff);
  return *this;
}

StateClass& StateClass::operator-=(const StateClass& other) {
  for (const auto& [key, coeff] : other.terms_) add_term(key, -coeff);
  return *this;
}

StateClass& StateClass::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, coeff] : terms_) coeff *= scalar;
  return *this;
}

std::string StateClass::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [key, coeff] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << format_rational(coeff) << "*[" << key.label << "]_(";
    for (std::size_t i = 0; i < key.s.size(); ++i) {
      if (i) out << ",";
      out << key.s[i];
    }
    out << ")";
  }
  return out.str();
}

StateSpace::StateSpace(const PairDescription& pair) : pair_(&pair) {}

const StratumData* StateSpace::stratum_for(const ContactVector& s) const {
  auto it = pair_->strata.find(support_of(s));
  return it == pair_->strata.end() ? nullptr : &it->second;
}

StateClass StateSpace::basis_class(const ContactVector& s, const std::string& label) const {
  const StratumData* stratum = stratum_for(s);
  if (stratum == nullptr) return StateClass{};  // zero summand
  if (stratum->index_of(label) < 0) {
    throw Error(ErrorKind::Config, "no basis class '" + label + "' on the stratum of the "
                                   "given contact vector");
  }
  StateClass out;
  out.add_term(TermKey{s, label}, 1);
  return out;
}

StateClass StateSpace::unit() const {
  ContactVector zero(pair_->divisor_count, 0);
  const StratumData& ambient = pair_->stratum(IndexSet{});
  for (const auto& basis_class : ambient.basis) {
    if (basis_class.degree == 0) {
      StateClass out;
      out.add_term(TermKey{zero, basis_class.label}, 1);
      return out;
    }
  }
  throw Error(ErrorKind::Data, "ambient stratum has no degree-zero class");
}

Rational StateSpace::term_deg0(const TermKey& key) const {
  const StratumData* stratum = stratum_for(key.s);
  if (stratum == nullptr) {
    throw Error(ErrorKind::Config, "degree of a class over an absent stratum");
  }
  int idx = stratum->index_of(key.label);
  if (idx < 0) throw Error(ErrorKind::Config, "unknown basis label '" + key.label + "'");
  int negatives = 0;
  for (long long v : key.s) {
    if (v < 0) ++negatives;
  }
  return Rational(stratum->basis[idx].degree, 2) + negatives;
}

int StateSpace::term_hodge_p(const TermKey& key) const {
  const StratumData* stratum = stratum_for(key.s);
  if (stratum == nullptr) {
    throw Error(ErrorKind::Config, "Hodge degree of a class over an absent stratum");
  }
  int idx = stratum->index_of(key.label);
  if (idx < 0) throw Error(ErrorKind::Config, "unknown basis label '" + key.label + "'");
  return stratum->basis[idx].hodge_p;
}

Rational StateSpace::pair_classes(const StateClass& a, const StateClass& b) const {
  Rational total = 0;
  for (const auto& [ka, ca] : a.terms()) {
    const StratumData* stratum = stratum_for(ka.s);
    if (stratum == nullptr) continue;
    int row = stratum->index_of(ka.label);
    for (const auto& [kb, cb] : b.terms()) {
      if (kb.s != negate(ka.s)) continue;
      int col = stratum->index_of(kb.label);
      if (row < 0 || col < 0) continue;
      total += ca * cb * stratum->pairing[row][col];
    }
  }
  return total;
}

const RationalMatrix& StateSpace::pairing_inverse(const IndexSet& index_set) const {
  auto it = pairing_inverse_cache_.find(index_set);
  if (it != pairing_inverse_cache_.end()) return it->second;
  const StratumData& stratum = pair_->stratum(index_set);
  auto inverse = invert_matrix(stratum.pairing);
  if (!inverse) {
    throw Error(ErrorKind::Data, "singular pairing matrix; cannot form a dual basis");
  }
  return pairing_inverse_cache_.emplace(index_set, std::move(*inverse)).first->second;
}

std::vector<std::pair<StateClass, StateClass>> StateSpace::dual_basis(
    const ContactVector& s) const {
  std::vector<std::pair<StateClass, StateClass>> pairs;
  const StratumData* stratum = stratum_for(s);
  if (stratum == nullptr) return pairs;
  const RationalMatrix& inverse = pairing_inverse(support_of(s));
  const ContactVector minus = negate(s);
  for (std::size_t k = 0; k < stratum->basis.size(); ++k) {
    StateClass basic;
    basic.add_term(TermKey{s, stratum->basis[k].label}, 1);
    StateClass dual;
    for (std::size_t l = 0; l < stratum->basis.size(); ++l) {
      dual.add_term(TermKey{minus, stratum->basis[l].label}, inverse[l][k]);
    }
    pairs.emplace_back(std::move(basic), std::move(dual));
  }
  return pairs;
}

StateClass StateSpace::dual_of(const TermKey& key) const {
  const StratumData* stratum = stratum_for(key.s);
  if (stratum == nullptr) return StateClass{};
  const RationalMatrix& inverse = pairing_inverse(support_of(key.s));
  int k = stratum->index_of(key.label);
  if (k < 0) throw Error(ErrorKind::Config, "unknown basis label '" + key.label + "'");
  StateClass dual;
  const ContactVector minus = negate(key.s);
  for (std::size_t l = 0; l < stratum->basis.size(); ++l) {
    dual.add_term(TermKey{minus, stratum->basis[l].label}, inverse[l][static_cast<std::size_t>(k)]);
  }
  return dual;
}

MultiDegree StateSpace::multi_degree(const StateClass& c) const {
  if (c.is_zero()) {
    throw Error(ErrorKind::Degree, "multi-degree of the zero class is undefined");
  }
  std::optional<MultiDegree> found;
  std::vector<std::string> seen;
  for (const auto& [key, coeff] : c.terms()) {
    MultiDegree deg{term_deg0(key), key.s};
    if (!found) {
      found = deg;
    } else if (!(deg == *found)) {
      std::ostringstream out;
      out << "inhomogeneous class: distinct multi-degrees deg0=" << format_rational(found->deg0)
          << " and deg0=" << format_rational(deg.deg0) << " (contact vectors differ or degrees "
          << "differ)";
      throw Error(ErrorKind::Degree, out.str());
    }
  }
  return *found;
}

std::vector<std::pair<ConePoint, StateClass>> StateSpace::degree_zero_basis(
    const DualComplex& complex, long long bound) const {
  std::vector<std::pair<ConePoint, StateClass>> out;
  for (const auto& point : lattice_points(complex, bound)) {
    ContactVector s = contact_vector(point, pair_->divisor_count);
    const StratumData* stratum = stratum_for(s);
    if (stratum == nullptr) continue;
    // The identity class of the stratum: the unique degree-zero basis label.
    for (const auto& basis_class : stratum->basis) {
      if (basis_class.degree == 0) {
        StateClass theta;
        theta.add_term(TermKey{s, basis_class.label}, 1);
        out.emplace_back(point, std::move(theta));
        break;
      }
    }
  }
  return out;
}

StateClass StateSpace::cup_h2(const std::string& h2_label, const StateClass& c) const {
  StateClass out;
  for (const auto& [key, coeff] : c.terms()) {
    const StratumData* stratum = stratum_for(key.s);
    if (stratum == nullptr) continue;
    auto action = stratum->cup_h2.find(h2_label);
    if (action == stratum->cup_h2.end()) {
      throw Error(ErrorKind::Config, "stratum lacks a cup action for H^2 class '" + h2_label +
                                         "'");
    }
    int col = stratum->index_of(key.label);
    for (std::size_t row = 0; row < stratum->basis.size(); ++row) {
      out.add_term(TermKey{key.s, stratum->basis[row].label},
                   coeff * action->second[row][static_cast<std::size_t>(col)]);
    }
  }
  return out;
}

StateClass StateSpace::cup_log_c1(const StateClass& c) const {
  StateClass out;
  for (const auto& [key, coeff] : c.terms()) {
    const StratumData* stratum = stratum_for(key.s);
    if (stratum == nullptr) continue;
    int col = stratum->index_of(key.label);
    for (std::size_t row = 0; row < stratum->basis.size(); ++row) {
      out.add_term(TermKey{key.s, stratum->basis[row].label},
                   coeff * stratum->log_c1_action[row][static_cast<std::size_t>(col)]);
    }
  }
  return out;
}

}  // namespace relqc
