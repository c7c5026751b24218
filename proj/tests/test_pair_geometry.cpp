#include <doctest.h>

#include "relqc/error.hpp"
#include "relqc/pair_geometry.hpp"
#include "support/fixtures.hpp"

using namespace relqc;
using testsupport::LineFixture;
using testsupport::TwoPointFixture;

namespace {

// A crossing pair: two divisors meeting in a point stratum, so the dual
// complex has an edge and the cone is two-dimensional.
PairDescription crossing_pair() {
  PairDescription pair;
  pair.name = "crossing";
  pair.divisor_count = 2;
  pair.ambient_dim = 2;
  pair.curve_lattice_rank = 1;
  pair.effective_generators = {{1}};
  pair.divisor_degrees = {{1, 1}};
  pair.c1_degrees = {3};

  StratumData ambient;
  ambient.basis = {{"1", 0, 0}, {"h", 2, 1}, {"pt", 4, 2}};
  ambient.pairing = {{Rational(0), Rational(0), Rational(1)},
                     {Rational(0), Rational(1), Rational(0)},
                     {Rational(1), Rational(0), Rational(0)}};
  ambient.log_c1_action.assign(3, std::vector<Rational>(3, 0));
  pair.strata[{}] = ambient;

  StratumData curve;
  curve.basis = {{"1", 0, 0}, {"pt", 2, 1}};
  curve.pairing = {{Rational(0), Rational(1)}, {Rational(1), Rational(0)}};
  curve.log_c1_action.assign(2, std::vector<Rational>(2, 0));
  pair.strata[{0}] = curve;
  pair.strata[{1}] = curve;

  StratumData point;
  point.basis = {{"1", 0, 0}};
  point.pairing = {{Rational(1)}};
  point.log_c1_action.assign(1, std::vector<Rational>(1, 0));
  pair.strata[{0, 1}] = point;

  return pair;
}

}  // namespace

TEST_CASE("dual complex of the two-point fixture has two rays and no edge") {
  const auto& fx = TwoPointFixture::get();
  CHECK(fx.complex.vertex_count == 2);
  CHECK(fx.complex.simplices == std::set<IndexSet>{{0}, {1}});
}

TEST_CASE("dual complex of the line fixture is a single ray") {
  const auto& fx = LineFixture::get();
  CHECK(fx.complex.simplices == std::set<IndexSet>{{0}});
}

TEST_CASE("a crossing pair produces a two-dimensional cone") {
  DualComplex complex = build_dual_complex(crossing_pair());
  CHECK(complex.simplices.count({0, 1}) == 1);
  auto points = lattice_points(complex, 2);
  // origin, v1, v2, 2v1, v1+v2, 2v2
  CHECK(points.size() == 6);
  CHECK(points[0].is_origin());
  std::vector<std::vector<long long>> contacts;
  for (const auto& p : points) contacts.push_back(contact_vector(p, 2));
  CHECK(contacts == std::vector<std::vector<long long>>{
                        {0, 0}, {0, 1}, {1, 0}, {0, 2}, {1, 1}, {2, 0}});
}

TEST_CASE("closedness violations are structural errors naming the subset") {
  PairDescription pair = crossing_pair();
  pair.strata.erase(IndexSet{1});
  CHECK_THROWS_WITH_AS(build_dual_complex(pair),
                       doctest::Contains("subset {2} missing"), Error);
}

TEST_CASE("lattice point enumeration follows the declared order and bounds") {
  const auto& fx = TwoPointFixture::get();
  auto points = lattice_points(fx.complex, 2);
  std::vector<std::vector<long long>> contacts;
  for (const auto& p : points) contacts.push_back(contact_vector(p, 2));
  CHECK(contacts == std::vector<std::vector<long long>>{
                        {0, 0}, {0, 1}, {1, 0}, {0, 2}, {2, 0}});

  auto one_ray = lattice_points(LineFixture::get().complex, 3);
  CHECK(one_ray.size() == 4);  // 0, v, 2v, 3v

  // Monotonicity in the bound.
  auto small = lattice_points(fx.complex, 1);
  for (const auto& p : small) {
    CHECK(std::find(points.begin(), points.end(), p) != points.end());
  }
  // The contact-vector map is injective on the enumeration.
  std::set<std::vector<long long>> seen(contacts.begin(), contacts.end());
  CHECK(seen.size() == contacts.size());
}

TEST_CASE("contact vectors read off multiplicities on the support") {
  const auto& fx = TwoPointFixture::get();
  CHECK(contact_vector(ConePoint{}, 2) == std::vector<long long>{0, 0});
  CHECK(contact_vector(fx.point(0, 2), 2) == std::vector<long long>{2, 0});
  DualComplex crossing = build_dual_complex(crossing_pair());
  ConePoint mixed{{0, 1}, {1, 3}};
  CHECK(contact_vector(mixed, 2) == std::vector<long long>{1, 3});
  CHECK(cone_point_from_contacts(crossing, {1, 3}) == mixed);
  // Not a cone point when the support is no simplex.
  CHECK(!cone_point_from_contacts(TwoPointFixture::get().complex, {1, 3}));
  CHECK(!cone_point_from_contacts(crossing, {-1, 0}));
}

TEST_CASE("log canonical degrees and their additivity") {
  const auto& two = TwoPointFixture::get();
  for (long long d = 0; d <= 3; ++d) {
    CHECK(log_canonical_degree(two.pair, {d}) == 0);
  }
  const auto& line = LineFixture::get();
  CHECK(log_canonical_degree(line.pair, {1}) == -2);
  CHECK(log_canonical_degree(line.pair, {3}) == -6);
  PairDescription quartic = load_pair(fixture_path("p2_quartic/pair.json"));
  CHECK(log_canonical_degree(quartic, {2}) == 2);
  CHECK(log_canonical_degree(quartic, {0}) == 0);
  // Additivity.
  CHECK(log_canonical_degree(line.pair, {5}) ==
        log_canonical_degree(line.pair, {2}) + log_canonical_degree(line.pair, {3}));
}

TEST_CASE("nef classification on the three bundled pairs") {
  CHECK(nef_classification(TwoPointFixture::get().pair) == NefClass::LogCalabiYau);
  CHECK(nef_classification(LineFixture::get().pair) == NefClass::AntiKPlusDNef);
  PairDescription quartic = load_pair(fixture_path("p2_quartic/pair.json"));
  CHECK(nef_classification(quartic) == NefClass::KPlusDNef);
}

TEST_CASE("a contradictory declared nef flag is a configuration error") {
  PairDescription pair = LineFixture::get().pair;
  pair.declared_nef = NefClass::KPlusDNef;
  CHECK_THROWS_AS(nef_classification(pair), Error);
}

TEST_CASE("K+D degrees computed two ways must agree") {
  PairDescription pair = crossing_pair();
  pair.kplusd_degrees = std::vector<long long>{7};
  CHECK_THROWS_WITH_AS(pair.validate(), doctest::Contains("K+D degree mismatch"), Error);
  pair.kplusd_degrees = std::vector<long long>{-1};
  CHECK_NOTHROW(pair.validate());
}

TEST_CASE("degenerate stratum pairings are rejected") {
  PairDescription pair = crossing_pair();
  pair.strata[{0}].pairing = {{Rational(0), Rational(1)}, {Rational(0), Rational(0)}};
  CHECK_THROWS_WITH_AS(pair.validate(), doctest::Contains("pairing"), Error);
}
