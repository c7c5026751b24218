#include "relqc/invariants.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "relqc/error.hpp"

namespace relqc {

void InvariantKey::canonicalize() { std::sort(insertions.begin(), insertions.end()); }

std::string InvariantKey::to_string() const {
  std::ostringstream out;
  out << "<";
  for (std::size_t j = 0; j < insertions.size(); ++j) {
    if (j) out << ", ";
    out << "[" << insertions[j].label << "]_(";
    for (std::size_t i = 0; i < insertions[j].s.size(); ++i) {
      if (i) out << ",";
      out << insertions[j].s[i];
    }
    out << ")";
    if (insertions[j].psi > 0) out << " psi^" << insertions[j].psi;
  }
  out << ">_{g=" << genus << ", beta=(";
  for (std::size_t i = 0; i < beta.size(); ++i) {
    if (i) out << ",";
    out << beta[i];
  }
  out << ")}";
  return out.str();
}

bool SupportWindow::contains_contact(const ContactVector& s) const {
  long long total = 0;
  for (long long v : s) total += v < 0 ? -v : v;
  return total <= max_total_contact;
}

bool SupportWindow::contains_beta(const CurveClass& beta) const {
  if (beta.size() != beta_bound.size()) return false;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    long long a = beta[i] < 0 ? -beta[i] : beta[i];
    if (a > beta_bound[i]) return false;
  }
  return true;
}

bool contact_balance_ok(const StateSpace& space, const InvariantKey& key) {
  const int n = space.divisor_count();
  for (int i = 0; i < n; ++i) {
    long long sum = 0;
    for (const auto& ins : key.insertions) sum += ins.s[i];
    if (sum != space.pair().divisor_degree(key.beta, i)) return false;
  }
  return true;
}

bool virtual_dimension_ok(const StateSpace& space, const InvariantKey& key) {
  const PairDescription& pair = space.pair();
  Rational lhs = Rational(1 - key.genus) * (pair.ambient_dim - 3) + key.points() +
                 pair.c1_degree(key.beta) - pair.total_divisor_degree(key.beta);
  Rational rhs = 0;
  for (const auto& ins : key.insertions) {
    rhs += space.term_deg0(TermKey{ins.s, ins.label}) + ins.psi;
  }
  return lhs == rhs;
}

void InvariantTable::insert(InvariantKey key, const Rational& value, const std::string& source) {
  key.canonicalize();
  for (const auto& ins : key.insertions) {
    const StratumData* stratum = space_->stratum_for(ins.s);
    if (stratum == nullptr) {
      throw Error(ErrorKind::Data, source + ": insertion over an absent stratum in " +
                                       key.to_string());
    }
    if (stratum->index_of(ins.label) < 0) {
      throw Error(ErrorKind::Data, source + ": unknown basis label '" + ins.label + "' in " +
                                       key.to_string());
    }
    if (ins.psi < 0) throw Error(ErrorKind::Data, source + ": negative descendant power");
  }
  if (!contact_balance_ok(*space_, key)) {
    throw Error(ErrorKind::Data, source + ": contact balance violated in " + key.to_string());
  }
  if (key.genus == 0 && !virtual_dimension_ok(*space_, key)) {
    throw Error(ErrorKind::Data,
                source + ": virtual dimension constraint violated in " + key.to_string());
  }
  auto [it, inserted] = values_.emplace(key, value);
  if (!inserted) {
    if (it->second != value) {
      throw Error(ErrorKind::Data, "conflicting duplicate entries for " + key.to_string() +
                                       ": " + sources_[key] + " has " +
                                       format_rational(it->second) + ", " + source + " has " +
                                       format_rational(value));
    }
    return;  // symmetric duplicate with equal value: deduplicated silently
  }
  sources_[key] = source;
}

std::optional<Rational> InvariantTable::lookup(const InvariantKey& key) const {
  InvariantKey canonical = key;
  canonical.canonicalize();
  auto it = values_.find(canonical);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::variant<ReducedExpression, Irreducible> reduce_elementary(const StateSpace& space,
                                                               const InvariantKey& key) {
  const int m = key.points();
  // Stability of the forgotten moduli problem.
  const bool forgettable = !is_zero_class(key.beta) || 2 * key.genus - 2 + (m - 1) > 0;

  int string_at = -1, dilaton_at = -1, divisor_at = -1;
  for (int j = 0; j < m; ++j) {
    const Insertion& ins = key.insertions[j];
    if (!is_zero_contact(ins.s)) continue;
    Rational deg0 = space.term_deg0(TermKey{ins.s, ins.label});
    if (deg0 == 0 && ins.psi == 0 && string_at < 0) string_at = j;
    if (deg0 == 0 && ins.psi == 1 && dilaton_at < 0) dilaton_at = j;
    if (deg0 == 1 && ins.psi == 0 && divisor_at < 0) {
      // Degree-2 ambient class with declared curve-class degrees.
      if (space.pair().h2_degrees.count(ins.label)) divisor_at = j;
    }
  }
  if (string_at < 0 && dilaton_at < 0 && divisor_at < 0) {
    return Irreducible{"no unit, dilaton, or ambient divisor insertion at contact zero"};
  }
  if (!forgettable) {
    return Irreducible{"forgetting a marking leaves an unstable moduli problem"};
  }

  ReducedExpression expr;
  expr.constant = 0;

  auto without = [&](int drop) {
    InvariantKey out;
    out.genus = key.genus;
    out.beta = key.beta;
    for (int j = 0; j < m; ++j) {
      if (j != drop) out.insertions.push_back(key.insertions[j]);
    }
    return out;
  };

  if (string_at >= 0) {
    InvariantKey base = without(string_at);
    for (std::size_t j = 0; j < base.insertions.size(); ++j) {
      if (base.insertions[j].psi == 0) continue;
      InvariantKey term = base;
      term.insertions[j].psi -= 1;
      term.canonicalize();
      expr.terms.emplace_back(1, std::move(term));
    }
    return expr;
  }

  if (dilaton_at >= 0) {
    InvariantKey base = without(dilaton_at);
    base.canonicalize();
    Rational factor = 2 * key.genus - 2 + (m - 1);
    expr.terms.emplace_back(factor, std::move(base));
    return expr;
  }

  // Divisor equation.
  const Insertion& div = key.insertions[divisor_at];
  InvariantKey base = without(divisor_at);
  Rational degree = space.pair().h2_degree(div.label, key.beta);
  if (degree != 0) {
    InvariantKey main = base;
    main.canonicalize();
    expr.terms.emplace_back(degree, std::move(main));
  }
  for (std::size_t j = 0; j < base.insertions.size(); ++j) {
    if (base.insertions[j].psi == 0) continue;
    StateClass cupped =
        space.cup_h2(div.label, space.basis_class(base.insertions[j].s, base.insertions[j].label));
    for (const auto& [term_key, coeff] : cupped.terms()) {
      InvariantKey term = base;
      term.insertions[j] = Insertion{term_key.s, term_key.label, base.insertions[j].psi - 1};
      term.canonicalize();
      expr.terms.emplace_back(coeff, std::move(term));
    }
  }
  return expr;
}

Evaluator::Evaluator(const InvariantTable& table) : table_(&table) {}

Rational Evaluator::evaluate(const InvariantKey& raw_key) const {
  InvariantKey key = raw_key;
  key.canonicalize();
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  if (in_progress_.count(key)) {
    throw Error(ErrorKind::Data, "cyclic reduction reached " + key.to_string());
  }
  in_progress_[key] = 1;
  Rational value;
  try {
    value = evaluate_uncached(key);
  } catch (...) {
    in_progress_.erase(key);
    throw;
  }
  in_progress_.erase(key);
  cache_.emplace(std::move(key), value);
  return value;
}

Rational Evaluator::evaluate_uncached(const InvariantKey& key) const {
  const StateSpace& space = table_->space();

  // Zero summands kill the whole invariant.
  for (const auto& ins : key.insertions) {
    if (space.stratum_for(ins.s) == nullptr) return 0;
  }
  if (!contact_balance_ok(space, key)) return 0;

  if (key.genus != 0) {
    if (auto stored = table_->lookup(key)) return *stored;
    auto reduced = reduce_elementary(space, key);
    if (auto* expr = std::get_if<ReducedExpression>(&reduced)) {
      Rational total = expr->constant;
      for (const auto& [coeff, term] : expr->terms) total += coeff * evaluate(term);
      return total;
    }
    throw Error(ErrorKind::Incompleteness,
                "higher-genus entry absent from table: " + key.to_string());
  }

  if (!virtual_dimension_ok(space, key)) return 0;
  const int m = key.points();
  if (m < 3 && is_zero_class(key.beta)) return 0;  // unstable moduli

  if (auto stored = table_->lookup(key)) return *stored;

  if (m == 3 && is_zero_class(key.beta)) {
    // Degree-zero three-point invariants over a point: descendants vanish,
    // and a unit insertion reduces to the pairing of the other two.
    for (const auto& ins : key.insertions) {
      if (ins.psi > 0) return 0;
    }
    for (int j = 0; j < 3; ++j) {
      const Insertion& ins = key.insertions[j];
      if (!is_zero_contact(ins.s) || ins.psi != 0) continue;
      if (space.term_deg0(TermKey{ins.s, ins.label}) != 0) continue;
      const Insertion& a = key.insertions[(j + 1) % 3];
      const Insertion& b = key.insertions[(j + 2) % 3];
      return space.pair_classes(space.basis_class(a.s, a.label),
                                space.basis_class(b.s, b.label));
    }
  }

  auto reduced = reduce_elementary(space, key);
  if (auto* expr = std::get_if<ReducedExpression>(&reduced)) {
    Rational total = expr->constant;
    for (const auto& [coeff, term] : expr->terms) total += coeff * evaluate(term);
    return total;
  }

  // Topological recursion on the first descendant insertion, anchored at
  // the first two other markings in canonical order.
  if (m >= 3) {
    for (int j = 0; j < m; ++j) {
      if (key.insertions[j].psi >= 1) {
        int anchor_b = j == 0 ? 1 : 0;
        int anchor_c = anchor_b + 1 == j ? anchor_b + 2 : anchor_b + 1;
        return trr_reduce(key, j, anchor_b, anchor_c);
      }
    }
  }

  throw Error(ErrorKind::Incompleteness, "entry absent from table and not reducible: " +
                                             key.to_string());
}

Rational Evaluator::trr_reduce(const InvariantKey& raw_key, int descendant_index, int anchor_b,
                               int anchor_c) const {
  InvariantKey key = raw_key;
  const StateSpace& space = table_->space();
  const int m = key.points();
  if (key.genus != 0) throw Error(ErrorKind::Config, "topological recursion needs genus zero");
  if (m < 3) throw Error(ErrorKind::Config, "topological recursion needs at least 3 points");
  if (key.insertions[descendant_index].psi < 1) {
    throw Error(ErrorKind::Config, "chosen marking carries no descendant power");
  }
  if (descendant_index == anchor_b || descendant_index == anchor_c || anchor_b == anchor_c) {
    throw Error(ErrorKind::Config, "topological recursion markings must be distinct");
  }

  Insertion head = key.insertions[descendant_index];
  head.psi -= 1;
  std::vector<Insertion> spectators;
  for (int j = 0; j < m; ++j) {
    if (j != descendant_index && j != anchor_b && j != anchor_c) {
      spectators.push_back(key.insertions[j]);
    }
  }
  const Insertion& anchor1 = key.insertions[anchor_b];
  const Insertion& anchor2 = key.insertions[anchor_c];
  const int spectator_count = static_cast<int>(spectators.size());

  Rational total = 0;
  for (const auto& [beta1, beta2] : effective_splittings(space.pair(), key.beta)) {
    for (unsigned mask = 0; mask < (1u << spectator_count); ++mask) {
      std::vector<Insertion> side1{head};
      std::vector<Insertion> side2{anchor1, anchor2};
      for (int j = 0; j < spectator_count; ++j) {
        ((mask >> j) & 1u ? side1 : side2).push_back(spectators[j]);
      }

      // The splitting contact vector is forced by balance on the first factor.
      ContactVector forced(space.divisor_count(), 0);
      for (int i = 0; i < space.divisor_count(); ++i) {
        forced[i] = space.pair().divisor_degree(beta1, i);
        for (const auto& ins : side1) forced[i] -= ins.s[i];
      }
      total += splitting_sum(side1, beta1, side2, beta2, forced);
    }
  }
  return total;
}

Rational Evaluator::splitting_sum(const std::vector<Insertion>& side1, const CurveClass& beta1,
                                  const std::vector<Insertion>& side2, const CurveClass& beta2,
                                  const ContactVector& forced) const {
  const StateSpace& space = table_->space();
  const StratumData* stratum = space.stratum_for(forced);
  if (stratum == nullptr) return 0;  // zero summand, provably nothing to add

  const ContactVector minus = negate(forced);
  Rational total = 0;
  bool out_of_window = !table_->window().contains_contact(forced);

  for (std::size_t k = 0; k < stratum->basis.size(); ++k) {
    InvariantKey first;
    first.genus = 0;
    first.beta = beta1;
    first.insertions = side1;
    first.insertions.push_back(Insertion{forced, stratum->basis[k].label, 0});
    first.canonicalize();

    StateClass dual = space.dual_of(TermKey{forced, stratum->basis[k].label});

    bool first_alive = contact_balance_ok(space, first) && virtual_dimension_ok(space, first) &&
                       !(first.points() < 3 && is_zero_class(beta1));
    bool second_alive = false;
    for (const auto& [dual_key, coeff] : dual.terms()) {
      InvariantKey second;
      second.genus = 0;
      second.beta = beta2;
      second.insertions = side2;
      second.insertions.push_back(Insertion{dual_key.s, dual_key.label, 0});
      second.canonicalize();
      if (contact_balance_ok(space, second) && virtual_dimension_ok(space, second) &&
          !(second.points() < 3 && is_zero_class(beta2))) {
        second_alive = true;
      }
    }
    if (!first_alive || !second_alive) continue;  // term provably zero

    if (out_of_window) {
      throw Error(ErrorKind::Incompleteness,
                  "splitting class with contact vector outside the declared support window "
                  "survives the dimension filters; needed: " +
                      first.to_string());
    }

    Rational first_value = evaluate(first);
    if (first_value == 0) continue;
    Rational second_value = 0;
    for (const auto& [dual_key, coeff] : dual.terms()) {
      InvariantKey second;
      second.genus = 0;
      second.beta = beta2;
      second.insertions = side2;
      second.insertions.push_back(Insertion{dual_key.s, dual_key.label, 0});
      second_value += coeff * evaluate(second);
    }
    total += first_value * second_value;
  }
  return total;
}

Rational Evaluator::evaluate_classes(
    int genus, const std::vector<std::pair<StateClass, int>>& insertions,
    const CurveClass& beta) const {
  // Expand multilinearly into basis keys.
  Rational total = 0;
  std::function<void(std::size_t, Rational, std::vector<Insertion>&)> walk =
      [&](std::size_t j, Rational coeff, std::vector<Insertion>& acc) {
        if (j == insertions.size()) {
          InvariantKey key;
          key.genus = genus;
          key.beta = beta;
          key.insertions = acc;
          total += coeff * evaluate(key);
          return;
        }
        for (const auto& [term_key, c] : insertions[j].first.terms()) {
          acc.push_back(Insertion{term_key.s, term_key.label, insertions[j].second});
          walk(j + 1, coeff * c, acc);
          acc.pop_back();
        }
      };
  std::vector<Insertion> acc;
  walk(0, Rational(1), acc);
  return total;
}

std::vector<std::pair<CurveClass, CurveClass>> effective_splittings(const PairDescription& pair,
                                                                    const CurveClass& beta) {
  // Enumerate monoid elements by adding generators, bounded by the all-ones
  // grading of beta; every generator must have positive total coordinate.
  long long bound = 0;
  for (long long c : beta) bound += c;
  std::set<CurveClass> elements;
  std::vector<CurveClass> frontier;
  CurveClass zero(beta.size(), 0);
  elements.insert(zero);
  frontier.push_back(zero);
  auto grading = [](const CurveClass& c) {
    long long g = 0;
    for (long long v : c) g += v;
    return g;
  };
  for (const auto& gen : pair.effective_generators) {
    if (grading(gen) <= 0) {
      throw Error(ErrorKind::Data,
                  "effective generator with nonpositive total coordinate; cannot enumerate "
                  "curve-class splittings");
    }
  }
  while (!frontier.empty()) {
    CurveClass current = frontier.back();
    frontier.pop_back();
    for (const auto& gen : pair.effective_generators) {
      CurveClass next = add_classes(current, gen);
      if (grading(next) > bound) continue;
      if (elements.insert(next).second) frontier.push_back(next);
    }
  }
  std::vector<std::pair<CurveClass, CurveClass>> splittings;
  for (const auto& beta1 : elements) {
    CurveClass beta2 = subtract_classes(beta, beta1);
    if (elements.count(beta2)) splittings.emplace_back(beta1, beta2);
  }
  return splittings;
}

Rational wdvv_residual(const Evaluator& eval, const std::vector<Insertion>& anchors,
                       const std::vector<Insertion>& spectators, const CurveClass& beta) {
  if (anchors.size() != 4) {
    throw Error(ErrorKind::Config, "the exchange identity needs exactly four anchors");
  }
  const StateSpace& space = eval.space();

  auto side = [&](int a, int b, int c, int d) {
    Rational total = 0;
    const int spectator_count = static_cast<int>(spectators.size());
    for (const auto& [beta1, beta2] : effective_splittings(space.pair(), beta)) {
      for (unsigned mask = 0; mask < (1u << spectator_count); ++mask) {
        std::vector<Insertion> side1{anchors[a], anchors[b]};
        std::vector<Insertion> side2{anchors[c], anchors[d]};
        for (int j = 0; j < spectator_count; ++j) {
          ((mask >> j) & 1u ? side1 : side2).push_back(spectators[j]);
        }
        ContactVector forced(space.divisor_count(), 0);
        for (int i = 0; i < space.divisor_count(); ++i) {
          forced[i] = space.pair().divisor_degree(beta1, i);
          for (const auto& ins : side1) forced[i] -= ins.s[i];
        }
        total += eval.splitting_sum(side1, beta1, side2, beta2, forced);
      }
    }
    return total;
  };

  return side(0, 1, 2, 3) - side(0, 2, 1, 3);
}

}  // namespace relqc
