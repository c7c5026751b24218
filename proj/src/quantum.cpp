#include "relqc/quantum.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "relqc/error.hpp"

namespace relqc {

NovikovTruncation NovikovTruncation::from_degree_bound(const PairDescription& pair,
                                                       const std::vector<long long>& weights,
                                                       long long bound) {
  if (static_cast<int>(weights.size()) != pair.curve_lattice_rank) {
    throw Error(ErrorKind::Config, "grading weight vector length mismatch");
  }
  auto grading = [&](const CurveClass& beta) {
    long long g = 0;
    for (std::size_t i = 0; i < beta.size(); ++i) g += weights[i] * beta[i];
    return g;
  };
  for (const auto& gen : pair.effective_generators) {
    if (grading(gen) <= 0) {
      throw Error(ErrorKind::Config,
                  "declared grading is not positive on every effective generator; the "
                  "truncation would not be Artinian");
    }
  }

  NovikovTruncation trunc;
  std::set<CurveClass> seen;
  CurveClass zero(pair.curve_lattice_rank, 0);
  std::vector<CurveClass> frontier{zero};
  seen.insert(zero);
  while (!frontier.empty()) {
    CurveClass current = frontier.back();
    frontier.pop_back();
    for (const auto& gen : pair.effective_generators) {
      CurveClass next = add_classes(current, gen);
      if (grading(next) >= bound) continue;
      if (seen.insert(next).second) frontier.push_back(next);
    }
  }
  trunc.classes_.assign(seen.begin(), seen.end());
  std::sort(trunc.classes_.begin(), trunc.classes_.end(), [&](const auto& a, const auto& b) {
    if (grading(a) != grading(b)) return grading(a) < grading(b);
    return a < b;
  });
  return trunc;
}

NovikovTruncation NovikovTruncation::powers_below(const PairDescription& pair, long long bound) {
  return from_degree_bound(pair, std::vector<long long>(pair.curve_lattice_rank, 1), bound);
}

bool NovikovTruncation::contains(const CurveClass& beta) const {
  return std::find(classes_.begin(), classes_.end(), beta) != classes_.end();
}

int TMonomial::total_degree() const {
  int total = 0;
  for (const auto& [key, e] : powers) total += e;
  return total;
}

TMonomial TMonomial::times(const TermKey& key) const {
  TMonomial out = *this;
  out.powers[key] += 1;
  return out;
}

Rational TMonomial::symmetry_factor() const {
  Rational factor = 1;
  for (const auto& [key, e] : powers) {
    for (int i = 2; i <= e; ++i) factor *= i;
  }
  return factor;
}

std::string TMonomial::to_string() const {
  if (powers.empty()) return "1";
  std::ostringstream out;
  bool first = true;
  for (const auto& [key, e] : powers) {
    if (!first) out << "*";
    first = false;
    out << "t_(";
    for (std::size_t i = 0; i < key.s.size(); ++i) {
      if (i) out << ",";
      out << key.s[i];
    }
    out << ";" << key.label << ")";
    if (e > 1) out << "^" << e;
  }
  return out.str();
}

namespace {

/// All t-monomials in the given directions with degree in [min_deg, max_deg].
std::vector<TMonomial> enumerate_monomials(const std::vector<TermKey>& directions, int min_deg,
                                           int max_deg) {
  std::vector<TMonomial> out;
  TMonomial current;
  std::function<void(std::size_t, int)> walk = [&](std::size_t index, int degree) {
    if (degree >= min_deg) out.push_back(current);
    if (degree == max_deg || index == directions.size()) return;
    for (std::size_t j = index; j < directions.size(); ++j) {
      current.powers[directions[j]] += 1;
      walk(j, degree + 1);
      auto it = current.powers.find(directions[j]);
      if (--it->second == 0) current.powers.erase(it);
    }
  };
  walk(0, 0);
  return out;
}

std::vector<Insertion> monomial_insertions(const TMonomial& mono) {
  std::vector<Insertion> insertions;
  for (const auto& [key, e] : mono.powers) {
    for (int i = 0; i < e; ++i) insertions.push_back(Insertion{key.s, key.label, 0});
  }
  return insertions;
}

}  // namespace

ClassSeries small_product(const Evaluator& eval, const StateClass& a, const StateClass& b,
                          const NovikovTruncation& trunc) {
  const StateSpace& space = eval.space();
  ClassSeries series;
  series.t_order = 0;
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      for (const auto& beta : trunc.classes()) {
        ContactVector forced(space.divisor_count(), 0);
        for (int i = 0; i < space.divisor_count(); ++i) {
          forced[i] = space.pair().divisor_degree(beta, i) - ka.s[i] - kb.s[i];
        }
        const StratumData* stratum = space.stratum_for(forced);
        if (stratum == nullptr) continue;
        const bool in_window = eval.table().window().contains_contact(forced);
        StateClass value;
        for (const auto& basis_class : stratum->basis) {
          InvariantKey key;
          key.genus = 0;
          key.beta = beta;
          key.insertions = {Insertion{ka.s, ka.label, 0}, Insertion{kb.s, kb.label, 0},
                            Insertion{forced, basis_class.label, 0}};
          if (!in_window) {
            key.canonicalize();
            if (contact_balance_ok(space, key) && virtual_dimension_ok(space, key)) {
              throw Error(ErrorKind::Incompleteness,
                          "product output contact vector escapes the support window: " +
                              key.to_string());
            }
            continue;
          }
          Rational coefficient = eval.evaluate(key);
          if (coefficient == 0) continue;
          StateClass dual = space.dual_of(TermKey{forced, basis_class.label});
          dual *= coefficient;
          value += dual;
        }
        value *= ca * cb;
        if (value.is_zero()) continue;
        auto& slot = series.coefficients[{beta, TMonomial{}}];
        slot += value;
        if (slot.is_zero()) series.coefficients.erase({beta, TMonomial{}});
      }
    }
  }
  return series;
}

ClassSeries big_product(const Evaluator& eval, const StateClass& a, const StateClass& b,
                        const std::vector<TermKey>& directions, int t_order,
                        const NovikovTruncation& trunc) {
  const StateSpace& space = eval.space();
  ClassSeries series;
  series.t_order = t_order;
  std::vector<TMonomial> monomials = enumerate_monomials(directions, 0, t_order);

  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      for (const auto& beta : trunc.classes()) {
        for (const auto& mono : monomials) {
          ContactVector forced(space.divisor_count(), 0);
          for (int i = 0; i < space.divisor_count(); ++i) {
            forced[i] = space.pair().divisor_degree(beta, i) - ka.s[i] - kb.s[i];
            for (const auto& [key, e] : mono.powers) forced[i] -= e * key.s[i];
          }
          const StratumData* stratum = space.stratum_for(forced);
          if (stratum == nullptr) continue;
          const bool in_window = eval.table().window().contains_contact(forced);
          StateClass value;
          for (const auto& basis_class : stratum->basis) {
            InvariantKey key;
            key.genus = 0;
            key.beta = beta;
            key.insertions = monomial_insertions(mono);
            key.insertions.push_back(Insertion{ka.s, ka.label, 0});
            key.insertions.push_back(Insertion{kb.s, kb.label, 0});
            key.insertions.push_back(Insertion{forced, basis_class.label, 0});
            if (!in_window) {
              key.canonicalize();
              if (contact_balance_ok(space, key) && virtual_dimension_ok(space, key)) {
                throw Error(ErrorKind::Incompleteness,
                            "product output contact vector escapes the support window: " +
                                key.to_string());
              }
              continue;
            }
            Rational coefficient = eval.evaluate(key);
            if (coefficient == 0) continue;
            StateClass dual = space.dual_of(TermKey{forced, basis_class.label});
            dual *= coefficient;
            value += dual;
          }
          value *= ca * cb / mono.symmetry_factor();
          if (value.is_zero()) continue;
          auto& slot = series.coefficients[{beta, mono}];
          slot += value;
          if (slot.is_zero()) series.coefficients.erase({beta, mono});
        }
      }
    }
  }
  return series;
}

ScalarSeries potential_phi0(const Evaluator& eval, const std::vector<TermKey>& directions,
                            int t_order, const NovikovTruncation& trunc) {
  ScalarSeries series;
  series.t_order = t_order;
  for (const auto& mono : enumerate_monomials(directions, 3, t_order)) {
    for (const auto& beta : trunc.classes()) {
      InvariantKey key;
      key.genus = 0;
      key.beta = beta;
      key.insertions = monomial_insertions(mono);
      Rational value = eval.evaluate(key) / mono.symmetry_factor();
      if (value != 0) series.coefficients[{beta, mono}] = value;
    }
  }
  return series;
}

ScalarSeries derivative(const ScalarSeries& series, const TermKey& direction) {
  ScalarSeries out;
  out.t_order = series.t_order > 0 ? series.t_order - 1 : 0;
  for (const auto& [key, value] : series.coefficients) {
    const auto& [beta, mono] = key;
    auto it = mono.powers.find(direction);
    if (it == mono.powers.end()) continue;
    TMonomial lowered = mono;
    if (--lowered.powers[direction] == 0) lowered.powers.erase(direction);
    out.coefficients[{beta, lowered}] += value * it->second;
  }
  std::erase_if(out.coefficients, [](const auto& entry) { return entry.second == 0; });
  return out;
}

SeriesMultiDegree monomial_multidegree(const StateSpace& space, const CurveClass& beta,
                                       const TMonomial& mono) {
  const PairDescription& pair = space.pair();
  SeriesMultiDegree degree;
  degree.deg0 = pair.c1_degree(beta) - pair.total_divisor_degree(beta);
  degree.contact.assign(pair.divisor_count, Rational(0));
  for (int i = 0; i < pair.divisor_count; ++i) {
    degree.contact[i] = pair.divisor_degree(beta, i);
  }
  for (const auto& [key, e] : mono.powers) {
    degree.deg0 += e * (Rational(1) - space.term_deg0(key));
    for (int i = 0; i < pair.divisor_count; ++i) {
      degree.contact[i] -= Rational(e) * key.s[i];
    }
  }
  return degree;
}

ClassSeries star_extend(const Evaluator& eval, const ClassSeries& series, const StateClass& rhs,
                        const NovikovTruncation& trunc) {
  ClassSeries out;
  out.t_order = series.t_order;
  for (const auto& [key, value] : series.coefficients) {
    const auto& [beta, mono] = key;
    ClassSeries product = small_product(eval, value, rhs, trunc);
    for (const auto& [pkey, pvalue] : product.coefficients) {
      CurveClass total = add_classes(beta, pkey.first);
      if (!trunc.contains(total)) continue;  // truncated away by the ideal
      auto& slot = out.coefficients[{total, mono}];
      slot += pvalue;
      if (slot.is_zero()) out.coefficients.erase({total, mono});
    }
  }
  return out;
}

}  // namespace relqc
