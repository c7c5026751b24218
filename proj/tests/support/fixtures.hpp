#pragma once

#include <memory>

#include "relqc/invariants.hpp"
#include "relqc/io.hpp"
#include "relqc/mirror.hpp"
#include "support/paths.hpp"

namespace testsupport {

/// The two-point fixture with everything loaded once per binary.
struct TwoPointFixture {
  relqc::PairDescription pair;
  std::unique_ptr<relqc::StateSpace> space;
  relqc::DualComplex complex;
  std::unique_ptr<relqc::InvariantTable> table;
  std::unique_ptr<relqc::Evaluator> evaluator;
  std::unique_ptr<relqc::StructureConstants> constants;

  TwoPointFixture() {
    pair = relqc::load_pair(fixture_path("p1_two_points/pair.json"));
    space = std::make_unique<relqc::StateSpace>(pair);
    complex = relqc::build_dual_complex(pair);
    table = std::make_unique<relqc::InvariantTable>(
        relqc::load_table(fixture_path("p1_two_points/invariants.jsonl"), *space));
    evaluator = std::make_unique<relqc::Evaluator>(*table);
    constants = std::make_unique<relqc::StructureConstants>(
        relqc::load_constants(fixture_path("p1_two_points/constants.json"), pair, complex));
  }

  static const TwoPointFixture& get() {
    static TwoPointFixture instance;
    return instance;
  }

  relqc::ContactVector ray(int which, long long mult) const {
    relqc::ContactVector s(2, 0);
    s[which] = mult;
    return s;
  }

  relqc::ConePoint point(int which, long long mult) const {
    if (mult == 0) return relqc::ConePoint{};
    return relqc::ConePoint{{which}, {mult}};
  }

  relqc::Insertion unit_insertion(int which, long long mult, int psi = 0) const {
    return relqc::Insertion{ray(which, mult), "1", psi};
  }

  relqc::Insertion ambient(const std::string& label, int psi = 0) const {
    return relqc::Insertion{relqc::ContactVector(2, 0), label, psi};
  }
};

struct LineFixture {
  relqc::PairDescription pair;
  std::unique_ptr<relqc::StateSpace> space;
  relqc::DualComplex complex;
  std::unique_ptr<relqc::StructureConstants> constants;

  LineFixture() {
    pair = relqc::load_pair(fixture_path("p2_line/pair.json"));
    space = std::make_unique<relqc::StateSpace>(pair);
    complex = relqc::build_dual_complex(pair);
    constants = std::make_unique<relqc::StructureConstants>(
        relqc::load_constants(fixture_path("p2_line/constants.json"), pair, complex));
  }

  static const LineFixture& get() {
    static LineFixture instance;
    return instance;
  }
};

}  // namespace testsupport
