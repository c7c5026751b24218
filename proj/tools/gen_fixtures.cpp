// Emits the bundled example data: pair descriptions, invariant tables, and
// structure-constant tables for two small geometries. Everything here is
// closed-form; the test suite re-derives the same numbers along independent
// routes.
//
// Geometry 1: the projective line with both torus-fixed points marked.
//   K+D is trivial, the cone has two rays, and the theta algebra is
//   Q[q][x,y]/(xy - q). Nonzero two- and three-point invariants:
//     <[1]_0, [1]_0, [pt]_0>_{0}              = 1
//     <[1]_0, [1]_{a v_i}, [1]_{-a v_i}>_{0}  = 1          (pairing)
//     <[1]_{a v_i}, [1]_{b v_i}, [1]_{-(a+b) v_i}>_{0} = 1 (one ray)
//     <[1]_{a v_1}, [1]_{b v_2}, [1]_{(a-b) v_1}>_{b} = 1  (a > b, both rays)
//     <[1]_{d v_1}, [1]_{d v_2}, [pt]_0>_{d}  = 1          (through a point)
//     <[1]_{d v_1}, [1]_{d v_2}>_{d}          = 1/d        (no point condition)
//   The 1/d two-point value is pinned by the divisor equation applied to the
//   degree-d point count above.
//
// Geometry 2: the projective plane with a line. K+D has degree -2d, so all
// constants with nonzero curve class vanish and the theta algebra is a
// polynomial ring on one generator.

#include <filesystem>
#include <iostream>

#include "relqc/invariants.hpp"
#include "relqc/io.hpp"
#include "relqc/mirror.hpp"

using namespace relqc;

namespace {

RationalMatrix rows(std::initializer_list<std::initializer_list<int>> values) {
  RationalMatrix m;
  for (const auto& row : values) {
    std::vector<Rational> out;
    for (int v : row) out.emplace_back(v);
    m.push_back(std::move(out));
  }
  return m;
}

PairDescription line_with_two_points() {
  PairDescription pair;
  pair.name = "p1_two_points";
  pair.divisor_count = 2;
  pair.ambient_dim = 1;
  pair.curve_lattice_rank = 1;
  pair.effective_generators = {{1}};
  pair.divisor_degrees = {{1, 1}};
  pair.c1_degrees = {2};
  pair.kplusd_degrees = std::vector<long long>{0};
  pair.h2_degrees["pt"] = {1};
  pair.declared_nef = NefClass::LogCalabiYau;

  StratumData ambient;
  ambient.basis = {{"1", 0, 0}, {"pt", 2, 1}};
  ambient.pairing = rows({{0, 1}, {1, 0}});
  ambient.cup_h2["pt"] = rows({{0, 0}, {1, 0}});
  ambient.log_c1_action = rows({{0, 0}, {0, 0}});
  pair.strata[{}] = ambient;

  StratumData point;
  point.basis = {{"1", 0, 0}};
  point.pairing = rows({{1}});
  point.cup_h2["pt"] = rows({{0}});
  point.log_c1_action = rows({{0}});
  pair.strata[{0}] = point;
  pair.strata[{1}] = point;

  return pair;
}

PairDescription plane_with_line() {
  PairDescription pair;
  pair.name = "p2_line";
  pair.divisor_count = 1;
  pair.ambient_dim = 2;
  pair.curve_lattice_rank = 1;
  pair.effective_generators = {{1}};
  pair.divisor_degrees = {{1}};
  pair.c1_degrees = {3};
  pair.kplusd_degrees = std::vector<long long>{-2};
  pair.h2_degrees["h"] = {1};
  pair.declared_nef = NefClass::AntiKPlusDNef;

  StratumData ambient;
  ambient.basis = {{"1", 0, 0}, {"h", 2, 1}, {"pt", 4, 2}};
  ambient.pairing = rows({{0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
  ambient.cup_h2["h"] = rows({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}});
  // c1 of the log tangent bundle is twice the hyperplane class.
  ambient.log_c1_action = rows({{0, 0, 0}, {2, 0, 0}, {0, 2, 0}});
  pair.strata[{}] = ambient;

  StratumData line;
  line.basis = {{"1", 0, 0}, {"pt", 2, 1}};
  line.pairing = rows({{0, 1}, {1, 0}});
  line.cup_h2["h"] = rows({{0, 0}, {1, 0}});
  line.log_c1_action = rows({{0, 0}, {2, 0}});
  pair.strata[{0}] = line;

  return pair;
}

PairDescription plane_with_quartic() {
  PairDescription pair;
  pair.name = "p2_quartic";
  pair.divisor_count = 1;
  pair.ambient_dim = 2;
  pair.curve_lattice_rank = 1;
  pair.effective_generators = {{1}};
  pair.divisor_degrees = {{4}};
  pair.c1_degrees = {3};
  pair.kplusd_degrees = std::vector<long long>{1};
  pair.h2_degrees["h"] = {1};

  StratumData ambient;
  ambient.basis = {{"1", 0, 0}, {"h", 2, 1}, {"pt", 4, 2}};
  ambient.pairing = rows({{0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
  ambient.cup_h2["h"] = rows({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}});
  ambient.log_c1_action = rows({{0, 0, 0}, {-1, 0, 0}, {0, -1, 0}});
  pair.strata[{}] = ambient;

  StratumData curve;
  curve.basis = {{"1", 0, 0}, {"pt", 2, 1}};
  curve.pairing = rows({{0, 1}, {1, 0}});
  curve.cup_h2["h"] = rows({{0, 0}, {4, 0}});
  curve.log_c1_action = rows({{0, 0}, {-4, 0}});
  pair.strata[{0}] = curve;

  return pair;
}

InvariantTable two_points_invariants(const StateSpace& space) {
  SupportWindow window{6, {4}};
  InvariantTable table(space, window);
  const long long contact_max = window.max_total_contact;
  const long long beta_max = window.beta_bound[0];

  auto ray = [&](int which, long long mult) {
    ContactVector s(2, 0);
    s[which] = mult;
    return s;
  };
  ContactVector zero(2, 0);

  auto add = [&](std::vector<Insertion> insertions, long long degree, Rational value) {
    InvariantKey key;
    key.genus = 0;
    key.beta = {degree};
    key.insertions = std::move(insertions);
    table.insert(std::move(key), value, "generator");
  };

  // Two-point multiple covers, fully tangent at both ends.
  for (long long d = 1; d <= beta_max && d <= contact_max; ++d) {
    add({{ray(0, d), "1", 0}, {ray(1, d), "1", 0}}, d, Rational(1, d));
  }

  // Degree zero: the pairing normalization and the one-ray products.
  add({{zero, "1", 0}, {zero, "1", 0}, {zero, "pt", 0}}, 0, 1);
  for (int which = 0; which < 2; ++which) {
    for (long long a = 1; a <= contact_max; ++a) {
      add({{zero, "1", 0}, {ray(which, a), "1", 0}, {ray(which, -a), "1", 0}}, 0, 1);
    }
    for (long long a = 1; a < contact_max; ++a) {
      for (long long b = a; a + b <= contact_max; ++b) {
        add({{ray(which, a), "1", 0}, {ray(which, b), "1", 0}, {ray(which, -a - b), "1", 0}},
            0, 1);
      }
    }
  }

  // Across the two rays: tangency a against b costs degree min(a, b).
  for (long long a = 1; a <= contact_max; ++a) {
    for (long long b = 1; b <= contact_max; ++b) {
      long long d = std::min(a, b);
      if (d > beta_max) continue;
      if (a == b) {
        add({{ray(0, a), "1", 0}, {ray(1, b), "1", 0}, {zero, "pt", 0}}, d, 1);
      } else {
        ContactVector out = a > b ? ray(0, -(a - b)) : ray(1, -(b - a));
        long long leftover = a > b ? a - b : b - a;
        if (leftover > contact_max) continue;
        add({{ray(0, a), "1", 0}, {ray(1, b), "1", 0}, {out, "1", 0}}, d, 1);
      }
    }
  }

  return table;
}

StructureConstants two_points_constants(const PairDescription& pair, const DualComplex& complex) {
  const long long contact_bound = 24;
  StructureConstants constants(pair, complex, contact_bound, {5});
  auto point = [&](int which, long long mult) {
    if (mult == 0) return ConePoint{};
    return ConePoint{{which}, {mult}};
  };
  ConePoint origin;

  auto fits = [&](const ConePoint& p1, const ConePoint& p2, const ConePoint& r) {
    return p1.total_multiplicity() + p2.total_multiplicity() + r.total_multiplicity() <=
           contact_bound;
  };

  // Unit column.
  constants.insert(origin, origin, origin, {0}, 1);
  for (int which = 0; which < 2; ++which) {
    for (long long a = 1; 2 * a <= contact_bound; ++a) {
      constants.insert(origin, point(which, a), point(which, a), {0}, 1);
    }
    for (long long a = 1; a <= contact_bound; ++a) {
      for (long long b = a; a + b + (a + b) <= contact_bound; ++b) {
        constants.insert(point(which, a), point(which, b), point(which, a + b), {0}, 1);
      }
    }
  }
  for (long long a = 1; a <= contact_bound; ++a) {
    for (long long b = 1; b <= contact_bound; ++b) {
      long long d = std::min(a, b);
      if (d > 5) continue;
      ConePoint out = a > b ? point(0, a - b) : point(1, b - a);
      if (!fits(point(0, a), point(1, b), out)) continue;
      constants.insert(point(0, a), point(1, b), out, {d}, 1);
    }
  }
  return constants;
}

StructureConstants line_constants(const PairDescription& pair, const DualComplex& complex) {
  const long long contact_bound = 24;
  StructureConstants constants(pair, complex, contact_bound, {5});
  auto point = [&](long long mult) {
    if (mult == 0) return ConePoint{};
    return ConePoint{{0}, {mult}};
  };
  constants.insert(point(0), point(0), point(0), {0}, 1);
  for (long long a = 1; 2 * a <= contact_bound; ++a) {
    constants.insert(point(0), point(a), point(a), {0}, 1);
  }
  for (long long a = 1; a <= contact_bound; ++a) {
    for (long long b = a; 2 * (a + b) <= contact_bound; ++b) {
      constants.insert(point(a), point(b), point(a + b), {0}, 1);
    }
  }
  return constants;
}

}  // namespace

int main(int argc, char** argv) {
  std::filesystem::path root = argc > 1 ? argv[1] : "fixtures";
  std::filesystem::create_directories(root / "p1_two_points");
  std::filesystem::create_directories(root / "p2_line");
  std::filesystem::create_directories(root / "p2_quartic");

  PairDescription p1 = line_with_two_points();
  store_pair(p1, (root / "p1_two_points" / "pair.json").string());
  StateSpace p1_space(p1);
  store_table(two_points_invariants(p1_space),
              (root / "p1_two_points" / "invariants.jsonl").string());
  DualComplex p1_complex = build_dual_complex(p1);
  store_constants(two_points_constants(p1, p1_complex),
                  (root / "p1_two_points" / "constants.json").string());

  PairDescription p2 = plane_with_line();
  store_pair(p2, (root / "p2_line" / "pair.json").string());
  DualComplex p2_complex = build_dual_complex(p2);
  store_constants(line_constants(p2, p2_complex), (root / "p2_line" / "constants.json").string());

  PairDescription quartic = plane_with_quartic();
  store_pair(quartic, (root / "p2_quartic" / "pair.json").string());

  std::cout << "fixtures written under " << root << "\n";
  return 0;
}
