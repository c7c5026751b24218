#include <doctest.h>

#include "relqc/error.hpp"
#include "relqc/givental.hpp"
#include "relqc/state_space.hpp"
#include "support/fixtures.hpp"

using namespace relqc;
using testsupport::LineFixture;
using testsupport::TwoPointFixture;

TEST_CASE("pairing vanishes unless the contact vectors are opposite") {
  const auto& fx = TwoPointFixture::get();
  const StateSpace& space = *fx.space;
  StateClass a = space.basis_class(fx.ray(0, 1), "1");
  StateClass b = space.basis_class(fx.ray(0, 2), "1");
  CHECK(space.pair_classes(a, b) == 0);
  CHECK(space.pair_classes(a, space.basis_class(fx.ray(0, -1), "1")) == 1);
  CHECK(space.pair_classes(space.unit(), space.basis_class(fx.ray(0, 0), "pt")) == 1);

  // Quantified over the window basis.
  SupportWindow window{3, {4}};
  auto keys = window_basis(space, window);
  for (const auto& ka : keys) {
    for (const auto& kb : keys) {
      if (kb.s == negate(ka.s)) continue;
      CHECK(space.pair_classes(space.basis_class(ka.s, ka.label),
                               space.basis_class(kb.s, kb.label)) == 0);
    }
  }
}

TEST_CASE("dual bases have identity Gram matrices on every window stratum") {
  const auto& fx = TwoPointFixture::get();
  const StateSpace& space = *fx.space;

  auto duals = space.dual_basis(ContactVector{0, 0});
  REQUIRE(duals.size() == 2);
  // On the ambient stratum the duals swap the unit and the point class.
  CHECK(duals[0].second == space.basis_class(ContactVector{0, 0}, "pt"));
  CHECK(duals[1].second == space.basis_class(ContactVector{0, 0}, "1"));

  auto point_duals = space.dual_basis(fx.ray(0, 3));
  REQUIRE(point_duals.size() == 1);
  CHECK(point_duals[0].second == space.basis_class(fx.ray(0, -3), "1"));

  CHECK(space.dual_basis(ContactVector{1, 1}).empty());  // absent stratum

  for (long long a = -3; a <= 3; ++a) {
    for (int which = 0; which < 2; ++which) {
      ContactVector s = fx.ray(which, a);
      auto pairs = space.dual_basis(s);
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        for (std::size_t j = 0; j < pairs.size(); ++j) {
          CHECK(space.pair_classes(pairs[i].first, pairs[j].second) ==
                (i == j ? Rational(1) : Rational(0)));
        }
      }
    }
  }
}

TEST_CASE("multi-degrees match the shifted-degree formula") {
  const auto& fx = TwoPointFixture::get();
  const StateSpace& space = *fx.space;

  MultiDegree d0 = space.multi_degree(space.basis_class(fx.ray(0, 2), "1"));
  CHECK(d0.deg0 == 0);
  CHECK(d0.contact == std::vector<long long>{2, 0});

  MultiDegree dneg = space.multi_degree(space.basis_class(fx.ray(1, -3), "1"));
  CHECK(dneg.deg0 == 1);  // ambient complex dimension

  // Degree-2 class on a divisor stratum with one negative contact.
  const auto& line = LineFixture::get();
  MultiDegree dpt = line.space->multi_degree(line.space->basis_class({-1}, "pt"));
  CHECK(dpt.deg0 == 2);

  StateClass mixed = space.unit() + space.basis_class(fx.ray(0, 0), "pt");
  CHECK_THROWS_WITH_AS(space.multi_degree(mixed), doctest::Contains("inhomogeneous"), Error);
}

TEST_CASE("the degree-zero basis is the identity-class family over the cone") {
  const auto& fx = TwoPointFixture::get();
  auto basis = fx.space->degree_zero_basis(fx.complex, 1);
  REQUIRE(basis.size() == 3);
  CHECK(basis[0].second == fx.space->unit());
  CHECK(basis[1].second == fx.space->basis_class(fx.ray(1, 1), "1"));
  CHECK(basis[2].second == fx.space->basis_class(fx.ray(0, 1), "1"));

  auto one_ray = LineFixture::get().space->degree_zero_basis(LineFixture::get().complex, 2);
  CHECK(one_ray.size() == 3);

  // Exhaustion: the degree-zero classes in the window are exactly these.
  SupportWindow window{2, {4}};
  auto all = fx.space->degree_zero_basis(fx.complex, 2);
  int found = 0;
  for (const auto& key : window_basis(*fx.space, window)) {
    if (fx.space->term_deg0(key) == 0) ++found;
  }
  CHECK(found == static_cast<int>(all.size()));
}

TEST_CASE("dual classes complement degrees stratum by stratum") {
  const auto& fx = TwoPointFixture::get();
  const StateSpace& space = *fx.space;
  SupportWindow window{3, {4}};
  for (const auto& key : window_basis(space, window)) {
    int nonzero = 0;
    for (long long v : key.s) {
      if (v != 0) ++nonzero;
    }
    StateClass dual = space.dual_of(key);
    // Homogeneous by construction on these fixtures.
    MultiDegree dual_degree = space.multi_degree(dual);
    int stratum_dim = fx.pair.stratum_dim(support_of(key.s));
    CHECK(space.term_deg0(key) + dual_degree.deg0 == Rational(stratum_dim) + nonzero);
  }
}

TEST_CASE("serialization order of class terms is canonical") {
  const auto& fx = TwoPointFixture::get();
  StateClass c = fx.space->basis_class(fx.ray(0, 1), "1");
  c += fx.space->basis_class(fx.ray(1, 1), "1");
  c += fx.space->unit();
  std::vector<TermKey> keys;
  for (const auto& [key, coeff] : c.terms()) keys.push_back(key);
  CHECK(std::is_sorted(keys.begin(), keys.end()));
}
