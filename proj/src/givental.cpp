#include "relqc/givental.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "relqc/error.hpp"

namespace relqc {

void ZSeries::add_term(int power, const StateClass& value) {
  if (value.is_zero()) return;
  if (!window_.contains(power)) {
    std::ostringstream out;
    out << "z-power " << power << " outside the window [" << window_.lo << ", " << window_.hi
        << "]";
    throw Error(ErrorKind::Overflow, out.str());
  }
  auto [it, inserted] = coeffs_.emplace(power, value);
  if (!inserted) {
    it->second += value;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

StateClass ZSeries::coefficient(int power) const {
  auto it = coeffs_.find(power);
  return it == coeffs_.end() ? StateClass{} : it->second;
}

ZSeries& ZSeries::operator+=(const ZSeries& other) {
  for (const auto& [power, value] : other.coeffs_) add_term(power, value);
  return *this;
}

ZSeries& ZSeries::operator-=(const ZSeries& other) {
  for (const auto& [power, value] : other.coeffs_) {
    StateClass negated = value;
    negated *= Rational(-1);
    add_term(power, negated);
  }
  return *this;
}

ZSeries& ZSeries::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [power, value] : coeffs_) value *= scalar;
  return *this;
}

ZSeries ZSeries::shifted(int k) const {
  ZSeries out(window_);
  for (const auto& [power, value] : coeffs_) out.add_term(power + k, value);
  return out;
}

Rational ZSeries::max_abs_coefficient() const {
  Rational best = 0;
  for (const auto& [power, value] : coeffs_) {
    for (const auto& [key, coeff] : value.terms()) {
      best = std::max(best, rational_abs(coeff));
    }
  }
  return best;
}

LinearOperator::LinearOperator(Action action, int reach_lo, int reach_hi, std::string name)
    : action_(std::move(action)), reach_lo_(reach_lo), reach_hi_(reach_hi),
      name_(std::move(name)) {}

ZSeries LinearOperator::apply_basis(const TermKey& key, int zpow, ZWindow out_window) const {
  ZSeries exact = action_(key, zpow);
  ZSeries out(out_window);
  for (const auto& [power, value] : exact.coefficients()) out.add_term(power, value);
  return out;
}

ZSeries LinearOperator::apply(const ZSeries& input, ZWindow out_window) const {
  ZSeries out(out_window);
  for (const auto& [power, value] : input.coefficients()) {
    for (const auto& [key, coeff] : value.terms()) {
      ZSeries image = action_(key, power);
      image *= coeff;
      for (const auto& [p, v] : image.coefficients()) out.add_term(p, v);
    }
  }
  return out;
}

LinearOperator LinearOperator::compose(const LinearOperator& outer, const LinearOperator& inner) {
  int lo = outer.reach_lo_ + inner.reach_lo_;
  int hi = outer.reach_hi_ + inner.reach_hi_;
  Action action = [outer, inner, lo, hi](const TermKey& key, int zpow) {
    ZWindow wide{zpow + lo, zpow + hi};
    ZSeries mid = inner.apply_basis(key, zpow, ZWindow{zpow + inner.reach_lo_,
                                                       zpow + inner.reach_hi_});
    return outer.apply(mid, wide);
  };
  return LinearOperator(std::move(action), lo, hi, outer.name_ + "∘" + inner.name_);
}

LinearOperator LinearOperator::multiply_z(int power) {
  Action action = [power](const TermKey& key, int zpow) {
    ZSeries out(ZWindow{zpow + power, zpow + power});
    StateClass value;
    value.add_term(key, 1);
    out.add_term(zpow + power, value);
    return out;
  };
  return LinearOperator(std::move(action), power, power,
                        "z^" + std::to_string(power));
}

Rational symplectic_form(const StateSpace& space, const ZSeries& f, const ZSeries& g) {
  Rational total = 0;
  for (const auto& [a, fa] : f.coefficients()) {
    auto it = g.coefficients().find(-1 - a);
    if (it == g.coefficients().end()) continue;
    Rational sign = (a % 2 == 0) ? 1 : -1;
    total += sign * space.pair_classes(fa, it->second);
  }
  return total;
}

namespace {

Rational mu_eigenvalue(const StateSpace& space, const TermKey& key) {
  int negatives = 0;
  for (long long v : key.s) {
    if (v < 0) ++negatives;
  }
  return Rational(space.pair().ambient_dim, 2) - space.term_hodge_p(key) - negatives;
}

LinearOperator make_l0(const StateSpace& space) {
  LinearOperator::Action action = [&space](const TermKey& key, int zpow) {
    ZSeries out(ZWindow{zpow - 1, zpow});
    StateClass diagonal;
    diagonal.add_term(key, Rational(zpow) + Rational(1, 2) + mu_eigenvalue(space, key));
    out.add_term(zpow, diagonal);
    StateClass single;
    single.add_term(key, 1);
    out.add_term(zpow - 1, space.cup_log_c1(single));
    return out;
  };
  return LinearOperator(std::move(action), -1, 0, "l_0");
}

}  // namespace

LinearOperator virasoro_operator(const StateSpace& space, int index) {
  if (index < -1) throw Error(ErrorKind::Config, "Virasoro index must be at least -1");
  if (index == -1) return LinearOperator::multiply_z(-1);
  LinearOperator l0 = make_l0(space);
  if (index == 0) return l0;
  LinearOperator result = l0;
  for (int i = 0; i < index; ++i) {
    result = LinearOperator::compose(result, LinearOperator::compose(
                                                 LinearOperator::multiply_z(1), l0));
  }
  return result;
}

std::vector<TermKey> window_basis(const StateSpace& space, const SupportWindow& window) {
  std::vector<TermKey> basis;
  const int n = space.divisor_count();
  std::vector<long long> s(n, 0);
  std::function<void(int, long long)> walk = [&](int pos, long long budget) {
    if (pos == n) {
      const StratumData* stratum = space.stratum_for(s);
      if (stratum != nullptr) {
        for (const auto& basis_class : stratum->basis) {
          basis.push_back(TermKey{s, basis_class.label});
        }
      }
      return;
    }
    for (long long v = -budget; v <= budget; ++v) {
      s[pos] = v;
      walk(pos + 1, budget - (v < 0 ? -v : v));
    }
    s[pos] = 0;
  };
  walk(0, window.max_total_contact);
  std::sort(basis.begin(), basis.end());
  return basis;
}

Rational symplecticity_residual(const StateSpace& space, const LinearOperator& op,
                                const std::vector<TermKey>& basis, ZWindow window) {
  Rational worst = 0;
  std::vector<std::pair<ZSeries, ZSeries>> vectors;
  ZWindow wide{window.lo + std::min(op.reach_lo(), 0), window.hi + std::max(op.reach_hi(), 0)};
  for (const auto& key : basis) {
    for (int a = window.lo; a <= window.hi; ++a) {
      ZSeries e(wide);
      StateClass c;
      c.add_term(key, 1);
      e.add_term(a, c);
      vectors.emplace_back(e, op.apply(e, wide));
    }
  }
  for (const auto& [f, af] : vectors) {
    for (const auto& [g, ag] : vectors) {
      Rational value = symplectic_form(space, af, g) + symplectic_form(space, f, ag);
      worst = std::max(worst, rational_abs(value));
    }
  }
  return worst;
}

Rational commutation_residual(const StateSpace& space, int m, int n, int sign,
                              const std::vector<TermKey>& basis, ZWindow window) {
  LinearOperator lm = virasoro_operator(space, m);
  LinearOperator ln = virasoro_operator(space, n);
  LinearOperator lmn = virasoro_operator(space, m + n);
  int span = std::abs(m) + std::abs(n) + 2;
  ZWindow wide{window.lo - span, window.hi + span};

  Rational worst = 0;
  for (const auto& key : basis) {
    for (int a = window.lo; a <= window.hi; ++a) {
      ZSeries e(wide);
      StateClass c;
      c.add_term(key, 1);
      e.add_term(a, c);
      ZSeries commutator = lm.apply(ln.apply(e, wide), wide);
      commutator -= ln.apply(lm.apply(e, wide), wide);
      ZSeries expected = lmn.apply(e, wide);
      expected *= Rational(sign) * Rational(n - m);
      commutator -= expected;
      worst = std::max(worst, commutator.max_abs_coefficient());
    }
  }
  return worst;
}

int calibrate_commutator_sign(const StateSpace& space, const std::vector<TermKey>& basis,
                              ZWindow window) {
  Rational plus = commutation_residual(space, 0, 1, +1, basis, window);
  Rational minus = commutation_residual(space, 0, 1, -1, basis, window);
  return plus <= minus ? +1 : -1;
}

std::map<CurveClass, ZSeries> j_function(const Evaluator& eval, const StateClass& t,
                                         int t_order, const NovikovTruncation& trunc,
                                         ZWindow window) {
  const StateSpace& space = eval.space();
  if (window.hi < 1 || window.lo > -1) {
    throw Error(ErrorKind::Overflow, "the J-function needs a window containing [-1, 1]");
  }
  const int depth = -window.lo - 1;

  std::map<CurveClass, ZSeries> result;
  CurveClass zero(space.pair().curve_lattice_rank, 0);
  ZSeries head(window);
  head.add_term(1, space.unit());
  head.add_term(0, t);
  result.emplace(zero, std::move(head));

  const SupportWindow& support = eval.table().window();
  std::vector<TermKey> keys = window_basis(space, support);

  for (const auto& beta : trunc.classes()) {
    ZSeries tail(window);
    for (const auto& key : keys) {
      for (int j = 0; j <= depth; ++j) {
        Rational sum = 0;
        Rational factorial = 1;
        for (int m = 1; m <= t_order; ++m) {
          factorial *= m;
          std::vector<std::pair<StateClass, int>> insertions;
          StateClass head_class;
          head_class.add_term(key, 1);
          insertions.emplace_back(head_class, j);
          for (int i = 0; i < m; ++i) insertions.emplace_back(t, 0);
          sum += eval.evaluate_classes(0, insertions, beta) / factorial;
        }
        if (sum == 0) continue;
        Rational sign = (j % 2 == 0) ? -1 : 1;  // expansion of 1/(-z - psi)
        StateClass dual = space.dual_of(key);
        dual *= sign * sum;
        tail.add_term(-1 - j, dual);
      }
    }
    if (is_zero_class(beta)) {
      result.at(zero) += tail;
    } else {
      result.emplace(beta, std::move(tail));
    }
  }
  return result;
}

Rational j_graph_residual(const Evaluator& eval, const std::vector<TermKey>& directions,
                          int t_order, const NovikovTruncation& trunc) {
  const StateSpace& space = eval.space();
  ScalarSeries phi = potential_phi0(eval, directions, t_order + 1, trunc);

  // Symbolic z^{-1} layer of the J-function: for each (beta, monomial),
  // the state-space coefficient assembled through the dual basis.
  std::map<std::pair<CurveClass, TMonomial>, StateClass> layer;
  const SupportWindow& support = eval.table().window();
  std::vector<TermKey> keys = window_basis(space, support);

  std::vector<TMonomial> monomials;
  {
    // Reuse the potential's monomial set: degrees 2..t_order.
    std::function<void(std::size_t, int, TMonomial&)> walk = [&](std::size_t index, int degree,
                                                                 TMonomial& current) {
      if (degree >= 2) monomials.push_back(current);
      if (degree == t_order || index == directions.size()) return;
      for (std::size_t j = index; j < directions.size(); ++j) {
        current.powers[directions[j]] += 1;
        walk(j, degree + 1, current);
        auto it = current.powers.find(directions[j]);
        if (--it->second == 0) current.powers.erase(it);
      }
    };
    TMonomial current;
    walk(0, 0, current);
  }

  for (const auto& beta : trunc.classes()) {
    for (const auto& mono : monomials) {
      StateClass value;
      for (const auto& key : keys) {
        InvariantKey inv;
        inv.genus = 0;
        inv.beta = beta;
        inv.insertions.push_back(Insertion{key.s, key.label, 0});
        for (const auto& [dir, e] : mono.powers) {
          for (int i = 0; i < e; ++i) inv.insertions.push_back(Insertion{dir.s, dir.label, 0});
        }
        Rational coefficient = eval.evaluate(inv) / mono.symmetry_factor();
        if (coefficient == 0) continue;
        StateClass dual = space.dual_of(key);
        dual *= Rational(-1) * coefficient;  // j = 0 sign of the expansion
        value += dual;
      }
      if (!value.is_zero()) layer[{beta, mono}] = value;
    }
  }

  // Compare the extracted components against the potential's gradient.
  Rational worst = 0;
  for (const auto& direction : directions) {
    ScalarSeries grad = derivative(phi, direction);
    for (const auto& beta : trunc.classes()) {
      for (const auto& mono : monomials) {
        Rational expected = 0;
        if (const Rational* g = grad.coefficient(beta, mono)) expected = *g;
        Rational got = 0;
        auto it = layer.find({beta, mono});
        if (it != layer.end()) {
          StateClass probe;
          probe.add_term(direction, 1);
          got = -space.pair_classes(it->second, probe);
        }
        worst = std::max(worst, rational_abs(got - expected));
      }
    }
  }
  return worst;
}

int DescendantMonomial::total_degree() const {
  int total = 0;
  for (const auto& [var, e] : powers) total += e;
  return total;
}

DescendantMonomial DescendantMonomial::times(int level, const TermKey& key) const {
  DescendantMonomial out = *this;
  out.powers[{level, key}] += 1;
  return out;
}

Rational DescendantMonomial::symmetry_factor() const {
  Rational factor = 1;
  for (const auto& [var, e] : powers) {
    for (int i = 2; i <= e; ++i) factor *= i;
  }
  return factor;
}

std::string DescendantMonomial::to_string() const {
  if (powers.empty()) return "1";
  std::ostringstream out;
  bool first = true;
  for (const auto& [var, e] : powers) {
    if (!first) out << "*";
    first = false;
    out << "t_{" << var.first << ";" << var.second.label << "}";
    if (e > 1) out << "^" << e;
  }
  return out.str();
}

DescendantPotential descendant_potential(const Evaluator& eval,
                                         const std::vector<TermKey>& directions,
                                         int t_order, int max_level,
                                         const NovikovTruncation& trunc,
                                         bool include_two_point) {
  // Variables (level, key), level 0..max_level.
  std::vector<std::pair<int, TermKey>> variables;
  for (int level = 0; level <= max_level; ++level) {
    for (const auto& key : directions) variables.emplace_back(level, key);
  }

  DescendantPotential potential;
  DescendantMonomial current;
  std::function<void(std::size_t, int)> walk = [&](std::size_t index, int degree) {
    if (degree >= 1 && (include_two_point || degree != 2)) {
      for (const auto& beta : trunc.classes()) {
        InvariantKey key;
        key.genus = 0;
        key.beta = beta;
        for (const auto& [var, e] : current.powers) {
          for (int i = 0; i < e; ++i) {
            key.insertions.push_back(Insertion{var.second.s, var.second.label, var.first});
          }
        }
        Rational value = eval.evaluate(key) / current.symmetry_factor();
        if (value != 0) potential[{beta, current}] = value;
      }
    }
    if (degree == t_order || index == variables.size()) return;
    for (std::size_t j = index; j < variables.size(); ++j) {
      current.powers[variables[j]] += 1;
      walk(j, degree + 1);
      auto it = current.powers.find(variables[j]);
      if (--it->second == 0) current.powers.erase(it);
    }
  };
  walk(0, 0);
  return potential;
}

namespace {

/// Darboux chart index: q-coordinates sit at z^level on the basis class,
/// p-coordinates at (-z)^{-1-level} on the dual class.
struct DarbouxIndex {
  bool is_p = false;
  int level = 0;
  TermKey key;

  auto operator<=>(const DarbouxIndex& other) const = default;
};

}  // namespace

VirasoroConstraintReport genus0_virasoro_residual(const Evaluator& eval, int index,
                                                  const std::vector<TermKey>& directions,
                                                  int t_order,
                                                  const NovikovTruncation& trunc,
                                                  bool include_two_point) {
  const StateSpace& space = eval.space();
  const int check_level = 2;
  const int q_level = std::max(check_level, 1) + std::max(index, 0) + 1;
  const int p_level = q_level + std::abs(index) + 2;

  LinearOperator op = virasoro_operator(space, index);
  ZWindow wide{-p_level - std::abs(index) - 3, q_level + std::abs(index) + 2};

  // Darboux basis vectors over the direction keys.
  std::vector<DarbouxIndex> chart;
  std::vector<ZSeries> vectors;
  for (int level = 0; level <= q_level; ++level) {
    for (const auto& key : directions) {
      chart.push_back(DarbouxIndex{false, level, key});
      ZSeries e(wide);
      StateClass c;
      c.add_term(key, 1);
      e.add_term(level, c);
      vectors.push_back(std::move(e));
    }
  }
  for (int level = 0; level <= p_level; ++level) {
    for (const auto& key : directions) {
      chart.push_back(DarbouxIndex{true, level, key});
      ZSeries e(wide);
      StateClass dual = space.dual_of(key);
      dual *= (level % 2 == 0) ? Rational(-1) : Rational(1);  // (-z)^{-1-level}
      e.add_term(-1 - level, dual);
      vectors.push_back(std::move(e));
    }
  }

  // Quadratic Hamiltonian h(f) = (1/2) Omega(A f, f); the bilinear form
  // Omega(A x, y) is symmetric precisely because A is infinitesimal
  // symplectic, which the operator suite checks separately.
  const std::size_t dim = chart.size();
  std::vector<ZSeries> images;
  images.reserve(dim);
  for (const auto& vector : vectors) images.push_back(op.apply(vector, wide));

  struct QQ {
    DarbouxIndex a, b;
    Rational coeff;
  };
  struct QP {
    DarbouxIndex q, p;
    Rational coeff;
  };
  struct PP {
    DarbouxIndex a, b;
    Rational coeff;
  };
  std::vector<QQ> qq_terms;
  std::vector<QP> qp_terms;
  std::vector<PP> pp_terms;
  int max_p_needed = 0;

  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i; j < dim; ++j) {
      Rational h = symplectic_form(space, images[i], vectors[j]);
      if (i == j) {
        h = h / 2;
      }
      if (h == 0) continue;
      const DarbouxIndex& x = chart[i];
      const DarbouxIndex& y = chart[j];
      if (!x.is_p && !y.is_p) {
        qq_terms.push_back(QQ{x, y, h});
      } else if (x.is_p && y.is_p) {
        pp_terms.push_back(PP{x, y, h});
        max_p_needed = std::max({max_p_needed, x.level, y.level});
      } else {
        const DarbouxIndex& q = x.is_p ? y : x;
        const DarbouxIndex& p = x.is_p ? x : y;
        qp_terms.push_back(QP{q, p, h});
        if (q.level <= std::max(check_level, 1)) {
          max_p_needed = std::max(max_p_needed, p.level);
        }
      }
    }
  }

  const int f_level = std::max(check_level, max_p_needed);
  DescendantPotential potential =
      descendant_potential(eval, directions, t_order + 1, f_level, trunc, include_two_point);

  const TermKey unit_key = space.unit().terms().begin()->first;
  auto is_dilaton = [&](const DarbouxIndex& d) {
    return !d.is_p && d.level == 1 && d.key == unit_key;
  };

  std::map<std::pair<CurveClass, DescendantMonomial>, Rational> residual;
  CurveClass zero_beta(space.pair().curve_lattice_rank, 0);
  auto add = [&](const CurveClass& beta, const DescendantMonomial& mono, const Rational& v) {
    if (v == 0) return;
    auto key = std::make_pair(beta, mono);
    residual[key] += v;
  };

  // Pure q part: the shifted coordinates expand as t - (dilaton direction).
  for (const auto& term : qq_terms) {
    DescendantMonomial mono;
    mono = mono.times(term.a.level, term.a.key).times(term.b.level, term.b.key);
    add(zero_beta, mono, term.coeff);
    if (is_dilaton(term.a)) {
      DescendantMonomial only_b;
      only_b = only_b.times(term.b.level, term.b.key);
      add(zero_beta, only_b, -term.coeff);
    }
    if (is_dilaton(term.b)) {
      DescendantMonomial only_a;
      only_a = only_a.times(term.a.level, term.a.key);
      add(zero_beta, only_a, -term.coeff);
    }
    if (is_dilaton(term.a) && is_dilaton(term.b)) {
      add(zero_beta, DescendantMonomial{}, term.coeff);
    }
  }

  // Mixed part: coefficient times q-coordinate times dF/dt at the p index.
  for (const auto& term : qp_terms) {
    for (const auto& [fkey, fvalue] : potential) {
      const auto& [beta, fmono] = fkey;
      auto var = std::make_pair(term.p.level, term.p.key);
      auto it = fmono.powers.find(var);
      if (it == fmono.powers.end()) continue;
      Rational dvalue = fvalue * it->second;
      DescendantMonomial lowered = fmono;
      if (--lowered.powers[var] == 0) lowered.powers.erase(var);
      // t-branch of the shifted coordinate.
      add(beta, lowered.times(term.q.level, term.q.key), term.coeff * dvalue);
      // -1 branch at the dilaton direction.
      if (is_dilaton(term.q)) add(beta, lowered, -term.coeff * dvalue);
    }
  }

  // Pure p part: products of two first derivatives.
  for (const auto& term : pp_terms) {
    for (const auto& [fkey1, fvalue1] : potential) {
      const auto& [beta1, fmono1] = fkey1;
      auto var1 = std::make_pair(term.a.level, term.a.key);
      auto it1 = fmono1.powers.find(var1);
      if (it1 == fmono1.powers.end()) continue;
      Rational d1 = fvalue1 * it1->second;
      DescendantMonomial lowered1 = fmono1;
      if (--lowered1.powers[var1] == 0) lowered1.powers.erase(var1);
      for (const auto& [fkey2, fvalue2] : potential) {
        const auto& [beta2, fmono2] = fkey2;
        auto var2 = std::make_pair(term.b.level, term.b.key);
        auto it2 = fmono2.powers.find(var2);
        if (it2 == fmono2.powers.end()) continue;
        Rational d2 = fvalue2 * it2->second;
        DescendantMonomial lowered2 = fmono2;
        if (--lowered2.powers[var2] == 0) lowered2.powers.erase(var2);
        CurveClass total = add_classes(beta1, beta2);
        if (!trunc.contains(total)) continue;
        DescendantMonomial merged = lowered1;
        for (const auto& [var, e] : lowered2.powers) merged.powers[var] += e;
        add(total, merged, term.coeff * d1 * d2);
      }
    }
  }

  VirasoroConstraintReport report;
  report.q_level = q_level;
  report.check_level = check_level;
  report.residual = 0;
  for (const auto& [key, value] : residual) {
    const auto& [beta, mono] = key;
    if (mono.total_degree() > t_order) continue;
    bool in_levels = true;
    for (const auto& [var, e] : mono.powers) {
      if (var.first > check_level) in_levels = false;
    }
    if (!in_levels) continue;
    ++report.checked_monomials;
    report.residual = std::max(report.residual, rational_abs(value));
  }
  return report;
}

}  // namespace relqc
