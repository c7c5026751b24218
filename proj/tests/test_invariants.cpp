#include <algorithm>
#include <cstdio>
#include <fstream>
#include <random>

#include <doctest.h>

#include "relqc/error.hpp"
#include "relqc/invariants.hpp"
#include "support/fixtures.hpp"

using namespace relqc;
using testsupport::TwoPointFixture;

TEST_CASE("the virtual dimension filter matches the fixture arithmetic") {
  const auto& fx = TwoPointFixture::get();
  InvariantKey key;
  key.genus = 0;
  key.beta = {1};
  key.insertions = {fx.unit_insertion(0, 1), fx.unit_insertion(1, 1), fx.ambient("pt")};
  CHECK(virtual_dimension_ok(*fx.space, key));
  key.insertions.back() = fx.ambient("1");
  CHECK(!virtual_dimension_ok(*fx.space, key));
  CHECK(fx.evaluator->evaluate(key) == 0);
}

TEST_CASE("elementary rewrites: string, dilaton, divisor") {
  const auto& fx = TwoPointFixture::get();

  // String with no descendant power to lower gives the empty expression.
  InvariantKey string_key;
  string_key.genus = 0;
  string_key.beta = {1};
  string_key.insertions = {fx.ambient("1"), fx.unit_insertion(0, 1), fx.unit_insertion(1, 1)};
  auto reduced = reduce_elementary(*fx.space, string_key);
  auto* expr = std::get_if<ReducedExpression>(&reduced);
  REQUIRE(expr != nullptr);
  CHECK(expr->terms.empty());
  CHECK(fx.evaluator->evaluate(string_key) == 0);

  // Dilaton on a three-point core: factor 2g - 2 + m = 1.
  InvariantKey dilaton_key;
  dilaton_key.genus = 0;
  dilaton_key.beta = {1};
  dilaton_key.insertions = {fx.ambient("1", 1), fx.unit_insertion(0, 1), fx.unit_insertion(1, 1),
                            fx.ambient("pt")};
  auto dilaton_reduced = reduce_elementary(*fx.space, dilaton_key);
  auto* dilaton_expr = std::get_if<ReducedExpression>(&dilaton_reduced);
  REQUIRE(dilaton_expr != nullptr);
  REQUIRE(dilaton_expr->terms.size() == 1);
  CHECK(dilaton_expr->terms[0].first == 1);
  CHECK(fx.evaluator->evaluate(dilaton_key) == 1);

  // Divisor with vanishing pairing degree and no cup corrections.
  InvariantKey divisor_key;
  divisor_key.genus = 0;
  divisor_key.beta = {0};
  divisor_key.insertions = {fx.ambient("pt"), fx.unit_insertion(0, 2), fx.unit_insertion(0, -2)};
  CHECK(fx.evaluator->evaluate(divisor_key) == 0);

  // Unstable forgetful map: irreducible marker.
  InvariantKey small;
  small.genus = 0;
  small.beta = {0};
  small.insertions = {fx.ambient("1"), fx.ambient("1"), fx.ambient("pt")};
  CHECK(std::holds_alternative<Irreducible>(reduce_elementary(*fx.space, small)));
  CHECK(fx.evaluator->evaluate(small) == 1);  // pairing normalization instead
}

TEST_CASE("table IO round-trips and reports line-precise duplicate conflicts") {
  const auto& fx = TwoPointFixture::get();
  std::string copy = "/tmp/relqc_table_roundtrip.jsonl";
  store_table(*fx.table, copy);
  InvariantTable reloaded = load_table(copy, *fx.space);
  CHECK(reloaded.entries() == fx.table->entries());
  std::remove(copy.c_str());

  std::string manifest = R"({"support":{"max_total_contact":6},"beta_bound":[4]})";
  std::string entry =
      R"({"g":0,"beta":[1],"insertions":[{"s":[1,0],"label":"1"},{"s":[0,1],"label":"1"},)"
      R"({"s":[0,0],"label":"pt"}],"value":"1"})";
  std::string conflicting =
      R"({"g":0,"beta":[1],"insertions":[{"s":[0,1],"label":"1"},{"s":[1,0],"label":"1"},)"
      R"({"s":[0,0],"label":"pt"}],"value":"2"})";

  {
    std::ofstream out("/tmp/relqc_dup_ok.jsonl");
    out << manifest << "\n" << entry << "\n" << entry << "\n";
  }
  InvariantTable deduped = load_table("/tmp/relqc_dup_ok.jsonl", *fx.space);
  CHECK(deduped.size() == 1);  // silent dedup of equal values
  std::remove("/tmp/relqc_dup_ok.jsonl");

  {
    std::ofstream out("/tmp/relqc_dup_bad.jsonl");
    out << manifest << "\n" << entry << "\n" << conflicting << "\n";
  }
  try {
    load_table("/tmp/relqc_dup_bad.jsonl", *fx.space);
    FAIL("conflicting duplicates must be rejected");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Data);
    CHECK(std::string(e.what()).find(":2") != std::string::npos);
    CHECK(std::string(e.what()).find(":3") != std::string::npos);
  }
  std::remove("/tmp/relqc_dup_bad.jsonl");

  {
    std::ofstream out("/tmp/relqc_unbalanced.jsonl");
    out << manifest << "\n"
        << R"({"g":0,"beta":[2],"insertions":[{"s":[1,0],"label":"1"},{"s":[0,1],"label":"1"},)"
        << R"({"s":[0,0],"label":"pt"}],"value":"1"})" << "\n";
  }
  CHECK_THROWS_WITH_AS(load_table("/tmp/relqc_unbalanced.jsonl", *fx.space),
                       doctest::Contains("balance"), Error);
  std::remove("/tmp/relqc_unbalanced.jsonl");
}

TEST_CASE("lookups are independent of insertion order") {
  const auto& fx = TwoPointFixture::get();
  std::mt19937 rng(20240817);
  std::vector<Insertion> insertions = {fx.ambient("pt", 2), fx.unit_insertion(0, 1),
                                       fx.unit_insertion(0, 1), fx.unit_insertion(1, 1),
                                       fx.unit_insertion(1, 1)};
  InvariantKey base;
  base.genus = 0;
  base.beta = {2};
  base.insertions = insertions;
  Rational expected = fx.evaluator->evaluate(base);
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(insertions.begin(), insertions.end(), rng);
    InvariantKey shuffled;
    shuffled.genus = 0;
    shuffled.beta = {2};
    shuffled.insertions = insertions;
    CHECK(fx.evaluator->evaluate(shuffled) == expected);
  }
}

TEST_CASE("topological recursion reproduces the mirror coefficient") {
  const auto& fx = TwoPointFixture::get();
  InvariantKey key;
  key.genus = 0;
  key.beta = {2};
  key.insertions = {fx.ambient("pt", 2), fx.unit_insertion(0, 1), fx.unit_insertion(0, 1),
                    fx.unit_insertion(1, 1), fx.unit_insertion(1, 1)};
  CHECK(fx.evaluator->evaluate(key) == 1);

  // Independence of the reduced marking and of the anchor choice.
  key.canonicalize();
  int descendant = -1;
  for (int j = 0; j < key.points(); ++j) {
    if (key.insertions[j].psi > 0) descendant = j;
  }
  REQUIRE(descendant >= 0);
  std::vector<Rational> values;
  for (int b = 0; b < key.points(); ++b) {
    for (int c = 0; c < key.points(); ++c) {
      if (b == c || b == descendant || c == descendant) continue;
      values.push_back(fx.evaluator->trr_reduce(key, descendant, b, c));
    }
  }
  for (const auto& v : values) CHECK(v == 1);
}

TEST_CASE("descendant keys whose splittings all fail the dimension filter vanish") {
  const auto& fx = TwoPointFixture::get();
  InvariantKey key;
  key.genus = 0;
  key.beta = {0};
  key.insertions = {fx.ambient("pt", 1), fx.unit_insertion(0, 1), fx.unit_insertion(0, -1)};
  // Balanced, but the dimension count fails upstream.
  CHECK(fx.evaluator->evaluate(key) == 0);
}

TEST_CASE("exchange identity vanishes on the fixture and detects perturbations") {
  const auto& fx = TwoPointFixture::get();
  std::vector<Insertion> anchors = {fx.unit_insertion(0, 1), fx.unit_insertion(0, 1),
                                    fx.unit_insertion(1, 1), fx.unit_insertion(1, 1)};
  CHECK(wdvv_residual(*fx.evaluator, anchors, {}, {2}) == 0);

  // All curve classes in the window and several anchor patterns.
  std::vector<Insertion> mixed = {fx.unit_insertion(0, 2), fx.unit_insertion(1, 1),
                                  fx.unit_insertion(1, 1), fx.ambient("pt")};
  for (long long d = 0; d <= 3; ++d) {
    CHECK(wdvv_residual(*fx.evaluator, anchors, {}, {d}) == 0);
    CHECK(wdvv_residual(*fx.evaluator, mixed, {}, {d}) == 0);
    CHECK(wdvv_residual(*fx.evaluator, anchors, {fx.ambient("pt")}, {d}) == 0);
  }

  // beta = 0 with unit anchors: both sides vanish termwise.
  std::vector<Insertion> units(4, fx.ambient("1"));
  CHECK(wdvv_residual(*fx.evaluator, units, {}, {0}) == 0);

  // The instances carrying the algebra structure anchor a point class of
  // negative contact against three identity classes; these have
  // nondegenerate products on both sides.
  std::vector<Insertion> algebra_anchors = {fx.unit_insertion(0, 1), fx.unit_insertion(1, 1),
                                            fx.unit_insertion(0, 1), fx.unit_insertion(0, -1)};
  for (long long d = 0; d <= 3; ++d) {
    CHECK(wdvv_residual(*fx.evaluator, algebra_anchors, {}, {d}) == 0);
  }
  std::vector<Insertion> deeper = {fx.unit_insertion(0, 2), fx.unit_insertion(1, 1),
                                   fx.unit_insertion(1, 1), fx.unit_insertion(1, -2)};
  for (long long d = 0; d <= 3; ++d) {
    CHECK(wdvv_residual(*fx.evaluator, deeper, {}, {d}) == 0);
  }

  // Antisymmetry under exchanging the pairing of the anchors.
  std::vector<Insertion> swapped = {algebra_anchors[0], algebra_anchors[2], algebra_anchors[1],
                                    algebra_anchors[3]};
  for (long long d = 0; d <= 2; ++d) {
    CHECK(wdvv_residual(*fx.evaluator, algebra_anchors, {}, {d}) ==
          -wdvv_residual(*fx.evaluator, swapped, {}, {d}));
  }

  // A single perturbed entry leaves a visible residual.
  InvariantTable perturbed(*fx.space, fx.table->window());
  InvariantKey probe;
  probe.genus = 0;
  probe.beta = {1};
  probe.insertions = {fx.unit_insertion(0, 1), fx.unit_insertion(1, 1), fx.ambient("pt")};
  probe.canonicalize();
  for (const auto& [key, value] : fx.table->entries()) {
    perturbed.insert(key, key == probe ? value + 1 : value, "perturbed");
  }
  Evaluator bad(perturbed);
  CHECK(wdvv_residual(bad, algebra_anchors, {}, {1}) != 0);
}

TEST_CASE("the evaluator closes over the declared nonnegative sector") {
  const auto& fx = TwoPointFixture::get();
  // Sweep: up to four insertions from the nonnegative window classes with
  // total descendant power at most two; every balanced key must evaluate
  // without incompleteness.
  std::vector<Insertion> pool;
  for (int which = 0; which < 2; ++which) {
    for (long long a = 1; a <= 2; ++a) pool.push_back(fx.unit_insertion(which, a));
  }
  pool.push_back(fx.ambient("1"));
  pool.push_back(fx.ambient("pt"));
  pool.push_back(fx.ambient("pt", 1));
  pool.push_back(fx.ambient("pt", 2));
  pool.push_back(fx.ambient("1", 1));

  int evaluated = 0;
  const int n = static_cast<int>(pool.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      for (int k = j; k < n; ++k) {
        for (int l = k; l <= n; ++l) {
          InvariantKey key;
          key.genus = 0;
          key.insertions = {pool[i], pool[j], pool[k]};
          if (l < n) key.insertions.push_back(pool[l]);
          int total_psi = 0;
          for (const auto& ins : key.insertions) total_psi += ins.psi;
          if (total_psi > 2) continue;
          for (long long d = 0; d <= 2; ++d) {
            key.beta = {d};
            CHECK_NOTHROW(fx.evaluator->evaluate(key));
            ++evaluated;
          }
        }
      }
    }
  }
  CHECK(evaluated > 500);
}

TEST_CASE("keys outside the certified sector raise incompleteness") {
  const auto& fx = TwoPointFixture::get();
  InvariantKey key;
  key.genus = 0;
  key.beta = {0};
  key.insertions = {fx.unit_insertion(0, 1), fx.unit_insertion(0, 1), fx.unit_insertion(0, -1),
                    fx.unit_insertion(0, -1)};
  try {
    fx.evaluator->evaluate(key);
    FAIL("multi-negative primary should be incomplete");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Incompleteness);
    CHECK(e.exit_code() == 3);
  }
}

TEST_CASE("higher-genus keys resolve through the table or report incompleteness") {
  const auto& fx = TwoPointFixture::get();
  InvariantKey key;
  key.genus = 1;
  key.beta = {1};
  key.insertions = {fx.unit_insertion(0, 1), fx.unit_insertion(1, 1)};
  CHECK_THROWS_AS(fx.evaluator->evaluate(key), Error);

  // The dilaton rewrite still applies in genus one.
  InvariantKey dilaton = key;
  dilaton.insertions.push_back(fx.ambient("1", 1));
  auto reduced = reduce_elementary(*fx.space, dilaton);
  auto* expr = std::get_if<ReducedExpression>(&reduced);
  REQUIRE(expr != nullptr);
  CHECK(expr->terms[0].first == 2);  // 2g - 2 + m with g = 1, m = 2
}
