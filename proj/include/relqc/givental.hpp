#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "relqc/quantum.hpp"

namespace relqc {

struct ZWindow {
  int lo = 0;
  int hi = 0;

  bool contains(int power) const { return lo <= power && power <= hi; }
};

/// Laurent polynomial in z with state-space coefficients, confined to an
/// explicit window. Arithmetic that would land outside the window raises
/// an Overflow error instead of dropping terms.
class ZSeries {
 public:
  explicit ZSeries(ZWindow window) : window_(window) {}

  const ZWindow& window() const { return window_; }
  const std::map<int, StateClass>& coefficients() const { return coeffs_; }

  void add_term(int power, const StateClass& value);
  StateClass coefficient(int power) const;

  ZSeries& operator+=(const ZSeries& other);
  ZSeries& operator-=(const ZSeries& other);
  ZSeries& operator*=(const Rational& scalar);
  /// Multiply by z^k inside the same window; overflow when content moves out.
  ZSeries shifted(int k) const;
  bool is_zero() const { return coeffs_.empty(); }
  Rational max_abs_coefficient() const;

 private:
  ZWindow window_;
  std::map<int, StateClass> coeffs_;
};

/// Endomorphism of the z-graded state space, given by its exact action on
/// basis elements T_{s,k} z^a. `reach` bounds how far the image of z^a can
/// spread, so callers can size windows before applying.
class LinearOperator {
 public:
  using Action = std::function<ZSeries(const TermKey&, int)>;

  LinearOperator(Action action, int reach_lo, int reach_hi, std::string name);

  ZSeries apply(const ZSeries& input, ZWindow out_window) const;
  ZSeries apply_basis(const TermKey& key, int zpow, ZWindow out_window) const;

  int reach_lo() const { return reach_lo_; }
  int reach_hi() const { return reach_hi_; }
  const std::string& name() const { return name_; }

  static LinearOperator compose(const LinearOperator& outer, const LinearOperator& inner);
  static LinearOperator multiply_z(int power);

 private:
  Action action_;
  int reach_lo_;
  int reach_hi_;
  std::string name_;
};

/// Residue pairing: sum over power pairs a + b = -1 of (-1)^a times the
/// state-space pairing of the coefficients.
Rational symplectic_form(const StateSpace& space, const ZSeries& f, const ZSeries& g);

/// The Virasoro generators: index -1 is multiplication by 1/z, index 0 is
/// z d/dz + 1/2 + mu + rho/z, and index m >= 1 composes l_0 (z l_0)^m.
LinearOperator virasoro_operator(const StateSpace& space, int index);

/// Basis of the truncated state space used by residual scans: every basis
/// class whose contact vector lies in the window.
std::vector<TermKey> window_basis(const StateSpace& space, const SupportWindow& window);

/// Max |Omega(A f, g) + Omega(f, A g)| over basis pairs in the window.
Rational symplecticity_residual(const StateSpace& space, const LinearOperator& op,
                                const std::vector<TermKey>& basis, ZWindow window);

/// Coefficient norm of [l_m, l_n] - sign * (n - m) l_{m+n} over the window.
Rational commutation_residual(const StateSpace& space, int m, int n, int sign,
                              const std::vector<TermKey>& basis, ZWindow window);

/// Fix the bracket sign convention once on the pair (0, 1): the sign in
/// {+1, -1} with vanishing residual (or the smaller one, reported).
int calibrate_commutator_sign(const StateSpace& space, const std::vector<TermKey>& basis,
                              ZWindow window);

/// The J-function at a concrete state-space point t, as a family of
/// z-series indexed by curve class, truncated at t-degree t_order.
/// Includes the z and t heads at q^0.
std::map<CurveClass, ZSeries> j_function(const Evaluator& eval, const StateClass& t,
                                         int t_order, const NovikovTruncation& trunc,
                                         ZWindow window);

/// Graph property residual: the z^{-1} layer of the J-function against the
/// gradient of the genus-zero potential, compared coefficientwise over
/// t-monomials of degree 2..t_order in the given directions. Exact zero on
/// a consistent table.
Rational j_graph_residual(const Evaluator& eval, const std::vector<TermKey>& directions,
                          int t_order, const NovikovTruncation& trunc);

/// Descendant monomial: exponents of t_{l;s,k} with l the z-level.
struct DescendantMonomial {
  std::map<std::pair<int, TermKey>, int> powers;

  int total_degree() const;
  DescendantMonomial times(int level, const TermKey& key) const;
  Rational symmetry_factor() const;

  bool operator==(const DescendantMonomial& other) const = default;
  auto operator<=>(const DescendantMonomial& other) const = default;
  std::string to_string() const;
};

/// Truncated genus-zero descendant potential: coefficients of q^beta times
/// descendant monomials up to the given degree and level.
using DescendantPotential = std::map<std::pair<CurveClass, DescendantMonomial>, Rational>;

DescendantPotential descendant_potential(const Evaluator& eval,
                                         const std::vector<TermKey>& directions,
                                         int t_order, int max_level,
                                         const NovikovTruncation& trunc,
                                         bool include_two_point = true);

struct VirasoroConstraintReport {
  Rational residual;        // max |coefficient| over checked monomials
  int checked_monomials = 0;
  int q_level = 0;          // descendant levels carried by the q-side window
  int check_level = 0;      // descendant levels of the monomials checked
};

/// Genus-zero Virasoro constraint residual for operator index m: quantize
/// the quadratic Hamiltonian of l_m in Darboux coordinates, extract the
/// 1/hbar coefficient against the truncated descendant potential, and
/// evaluate every coefficient of the resulting t-polynomial. The potential
/// includes every stable range; `include_two_point` drops its quadratic
/// part, which probes how the polarization sector enters the constraint.
VirasoroConstraintReport genus0_virasoro_residual(const Evaluator& eval, int index,
                                                  const std::vector<TermKey>& directions,
                                                  int t_order,
                                                  const NovikovTruncation& trunc,
                                                  bool include_two_point = true);

}  // namespace relqc
