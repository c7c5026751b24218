// Command-line front end: loads a pair description plus invariant and
// structure-constant tables, runs the selected checks, and emits one
// report per subcommand (text and a machine-readable JSON twin).
//
// Exit codes: 0 all selected checks pass, 1 a check failed, 2 data or
// configuration problem, 3 the tables or truncations are too small to
// decide.

#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "relqc/error.hpp"
#include "relqc/givental.hpp"
#include "relqc/io.hpp"
#include "relqc/mirror.hpp"

using namespace relqc;
using nlohmann::ordered_json;

namespace {

struct Options {
  std::string pair_path;
  std::string invariants_path;
  std::string constants_path;
  long long q_bound = 3;
  int t_order = 2;
  long long theta_bound = 2;
  long long t_contact_bound = 2;
  std::string z_window = "-6:6";
  std::string out_path;
  std::string format = "text";
};

ZWindow parse_window(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw relqc::Error(ErrorKind::Config, "z-window must look like 'lo:hi'");
  }
  try {
    return ZWindow{std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw relqc::Error(ErrorKind::Config, "bad z-window '" + text + "'");
  }
}

StateClass parse_state_class(const StateSpace& space, const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw relqc::Error(ErrorKind::Parse, std::string("bad class literal: ") + e.what());
  }
  StateClass out;
  for (const auto& term : doc) {
    ContactVector s = term.at("s").get<ContactVector>();
    std::string label = term.at("label").get<std::string>();
    Rational coeff = term.contains("coeff") ? parse_rational(term.at("coeff").get<std::string>())
                                            : Rational(1);
    StateClass basis = space.basis_class(s, label);
    basis *= coeff;
    out += basis;
  }
  return out;
}

ordered_json class_json(const StateClass& value) {
  ordered_json terms = ordered_json::array();
  for (const auto& [key, coeff] : value.terms()) {
    ordered_json term;
    term["s"] = key.s;
    term["label"] = key.label;
    term["coeff"] = format_rational(coeff);
    terms.push_back(term);
  }
  return terms;
}

ordered_json theta_json(const ThetaElement& value, int divisor_count) {
  ordered_json terms = ordered_json::array();
  for (const auto& [key, coeff] : value.terms) {
    ordered_json term;
    term["beta"] = key.first;
    term["theta"] = contact_vector(key.second, divisor_count);
    term["coeff"] = format_rational(coeff);
    terms.push_back(term);
  }
  return terms;
}

/// Everything a subcommand might need, loaded lazily from the options.
struct Workbench {
  Options options;
  std::optional<PairDescription> pair;
  std::optional<StateSpace> space;
  std::optional<DualComplex> complex;
  std::optional<InvariantTable> table;
  std::optional<Evaluator> evaluator;
  std::optional<StructureConstants> constants;
  std::optional<NovikovTruncation> truncation;

  void load_pair() {
    if (pair) return;
    if (options.pair_path.empty()) {
      throw relqc::Error(ErrorKind::Config, "this subcommand needs --pair");
    }
    pair = relqc::load_pair(options.pair_path);
    space.emplace(*pair);
    complex = build_dual_complex(*pair);
    truncation = NovikovTruncation::powers_below(*pair, options.q_bound + 1);
  }

  const Evaluator& need_evaluator() {
    load_pair();
    if (!evaluator) {
      if (options.invariants_path.empty()) {
        throw relqc::Error(ErrorKind::Config, "this subcommand needs --invariants");
      }
      table = load_table(options.invariants_path, *space);
      evaluator.emplace(*table);
    }
    return *evaluator;
  }

  const StructureConstants& need_constants() {
    load_pair();
    if (!constants) {
      if (options.constants_path.empty()) {
        throw relqc::Error(ErrorKind::Config, "this subcommand needs --constants");
      }
      constants = load_constants(options.constants_path, *pair, *complex);
    }
    return *constants;
  }

  std::vector<TermKey> t_directions() {
    load_pair();
    SupportWindow window{options.t_contact_bound, {}};
    std::vector<TermKey> keys;
    for (const auto& key : window_basis(*space, window)) {
      bool nonneg = true;
      for (long long v : key.s) {
        if (v < 0) nonneg = false;
      }
      if (nonneg) keys.push_back(key);
    }
    return keys;
  }
};

int run_validate(Workbench& bench, ordered_json& report) {
  bench.load_pair();
  const PairDescription& pair = *bench.pair;
  report["pair"]["name"] = pair.name;
  report["pair"]["divisors"] = pair.divisor_count;
  report["pair"]["ambient_dim"] = pair.ambient_dim;
  report["pair"]["nef"] = to_string(nef_classification(pair));
  ordered_json simplices = ordered_json::array();
  for (const auto& simplex : bench.complex->simplices) {
    std::vector<int> one_based;
    for (int i : simplex) one_based.push_back(i + 1);
    simplices.push_back(one_based);
  }
  report["pair"]["dual_complex"]["simplices"] = simplices;
  ordered_json disconnected = ordered_json::array();
  for (const auto& [index_set, data] : pair.strata) {
    if (!data.connected) {
      std::vector<int> one_based;
      for (int i : index_set) one_based.push_back(i + 1);
      disconnected.push_back(one_based);
    }
  }
  report["pair"]["disconnected_strata"] = disconnected;

  if (!bench.options.invariants_path.empty()) {
    const Evaluator& eval = bench.need_evaluator();
    report["invariants"]["entries"] = bench.table->size();
    report["invariants"]["window"]["max_total_contact"] =
        bench.table->window().max_total_contact;
    report["invariants"]["window"]["beta_bound"] = bench.table->window().beta_bound;
    (void)eval;
  }
  if (!bench.options.constants_path.empty()) {
    const StructureConstants& constants = bench.need_constants();
    report["constants"]["entries"] = constants.entries().size();
    report["constants"]["contact_bound"] = constants.contact_bound();
  }
  if (bench.options.theta_bound > lattice_points(*bench.complex, bench.options.theta_bound).size()) {
    // theta bound sanity is covered by enumeration; nothing to add here.
  }
  report["status"] = "ok";
  return 0;
}

int run_product(Workbench& bench, const std::string& a_text, const std::string& b_text,
                bool big, ordered_json& report) {
  const Evaluator& eval = bench.need_evaluator();
  StateClass a = parse_state_class(*bench.space, a_text);
  StateClass b = parse_state_class(*bench.space, b_text);
  ClassSeries series =
      big ? big_product(eval, a, b, bench.t_directions(), bench.options.t_order, *bench.truncation)
          : small_product(eval, a, b, *bench.truncation);
  report["a"] = class_json(a);
  report["b"] = class_json(b);
  report["big"] = big;
  ordered_json terms = ordered_json::array();
  for (const auto& [key, value] : series.coefficients) {
    ordered_json term;
    term["beta"] = key.first;
    term["t"] = key.second.to_string();
    term["value"] = class_json(value);
    terms.push_back(term);
  }
  report["terms"] = terms;
  report["status"] = "ok";
  return 0;
}

int run_assoc(Workbench& bench, ordered_json& report) {
  const StructureConstants& constants = bench.need_constants();
  MirrorAlgebra algebra(constants, *bench.truncation, bench.options.theta_bound);
  LawReport laws = algebra_laws(algebra);
  report["unit"] = laws.unit_ok ? "pass" : "fail";
  report["commutativity"] = laws.commutative ? "pass" : "fail";
  report["associativity"] = laws.associative ? "pass" : "fail";
  report["associativity_asserted"] = laws.associativity_asserted;
  if (!laws.witness.empty()) {
    report["witness"] = laws.witness;
    report["residual"] = theta_json(laws.residual, bench.pair->divisor_count);
  }
  bool pass = laws.unit_ok && laws.commutative &&
              (laws.associative || !laws.associativity_asserted);
  report["status"] = pass ? "ok" : "check_failed";
  return pass ? 0 : 1;
}

int run_wdvv(Workbench& bench, const std::string& anchors_text,
             const std::string& spectators_text, const std::string& beta_text,
             ordered_json& report) {
  const Evaluator& eval = bench.need_evaluator();
  auto parse_insertions = [&](const std::string& text) {
    std::vector<Insertion> out;
    if (text.empty()) return out;
    ordered_json doc = ordered_json::parse(text);
    for (const auto& term : doc) {
      out.push_back(Insertion{term.at("s").get<ContactVector>(),
                              term.at("label").get<std::string>(), term.value("psi", 0)});
    }
    return out;
  };
  std::vector<Insertion> anchors = parse_insertions(anchors_text);
  std::vector<Insertion> spectators = parse_insertions(spectators_text);
  CurveClass beta = ordered_json::parse(beta_text).get<CurveClass>();
  Rational residual = wdvv_residual(eval, anchors, spectators, beta);
  report["beta"] = beta;
  report["residual"] = format_rational(residual);
  report["status"] = residual == 0 ? "ok" : "check_failed";
  return residual == 0 ? 0 : 1;
}

int run_frobenius(Workbench& bench, const std::string& points_text, const std::string& beta_text,
                  ordered_json& report) {
  const StructureConstants& constants = bench.need_constants();
  MirrorAlgebra algebra(constants, *bench.truncation, bench.options.theta_bound);
  std::vector<ConePoint> points;
  for (const auto& contacts : ordered_json::parse(points_text)) {
    auto point = cone_point_from_contacts(*bench.complex, contacts.get<ContactVector>());
    if (!point) throw relqc::Error(ErrorKind::Config, "a chosen point is not in the cone");
    points.push_back(*point);
  }
  CurveClass beta = ordered_json::parse(beta_text).get<CurveClass>();
  Rational value = frobenius_constant(algebra, points, beta);
  Rational spread = frobenius_order_independence(algebra, points, beta);
  report["beta"] = beta;
  report["value"] = format_rational(value);
  report["order_independence_residual"] = format_rational(spread);
  report["status"] = spread == 0 ? "ok" : "check_failed";
  return spread == 0 ? 0 : 1;
}

int run_presentation(Workbench& bench, int relation_degree, ordered_json& report) {
  const StructureConstants& constants = bench.need_constants();
  MirrorAlgebra algebra(constants, *bench.truncation, bench.options.theta_bound);
  Presentation presentation =
      mirror_presentation(algebra, default_generators(*bench.complex), relation_degree);
  ordered_json generators = ordered_json::array();
  for (const auto& g : presentation.generators) {
    ordered_json one;
    one["name"] = g.name;
    one["point"] = contact_vector(g.point, bench.pair->divisor_count);
    if (g.grading) one["grading"] = *g.grading;
    generators.push_back(one);
  }
  report["generators"] = generators;
  report["relations"] = presentation.relations;
  report["status"] = "ok";
  return 0;
}

int run_virasoro(Workbench& bench, ordered_json& report) {
  bench.load_pair();
  const StateSpace& space = *bench.space;
  SupportWindow scan_window{bench.options.t_contact_bound + 1, {}};
  std::vector<TermKey> basis = window_basis(space, scan_window);
  ZWindow window = parse_window(bench.options.z_window);

  int failures = 0;

  ordered_json symplectic;
  for (int m = -1; m <= 3; ++m) {
    LinearOperator op = virasoro_operator(space, m);
    Rational residual = symplecticity_residual(space, op, basis, window);
    symplectic["l_" + std::to_string(m)] = format_rational(residual);
    if (residual != 0) ++failures;
  }
  report["symplecticity"] = symplectic;

  int sign = calibrate_commutator_sign(space, basis, window);
  report["commutation"]["sign_convention"] = sign;
  ordered_json commutation;
  for (int m = -1; m <= 3; ++m) {
    for (int n = m + 1; n <= 3; ++n) {
      Rational residual = commutation_residual(space, m, n, sign, basis, window);
      commutation["[" + std::to_string(m) + "," + std::to_string(n) + "]"] =
          format_rational(residual);
      if (residual != 0) ++failures;
    }
  }
  report["commutation"]["residuals"] = commutation;
  report["window"] = bench.options.z_window;

  if (!bench.options.invariants_path.empty()) {
    const Evaluator& eval = bench.need_evaluator();
    std::vector<TermKey> directions = bench.t_directions();
    ordered_json genus0;
    for (int m : {-1, 0}) {
      VirasoroConstraintReport constraint =
          genus0_virasoro_residual(eval, m, directions, bench.options.t_order, *bench.truncation);
      ordered_json one;
      one["residual"] = format_rational(constraint.residual);
      one["checked_monomials"] = constraint.checked_monomials;
      one["check_level"] = constraint.check_level;
      genus0["L_" + std::to_string(m)] = one;
      if (constraint.residual != 0) ++failures;
    }
    report["genus0"] = genus0;
  }

  report["status"] = failures == 0 ? "ok" : "check_failed";
  return failures == 0 ? 0 : 1;
}

int run_jfunction(Workbench& bench, ordered_json& report) {
  const Evaluator& eval = bench.need_evaluator();
  std::vector<TermKey> directions = bench.t_directions();
  Rational residual =
      j_graph_residual(eval, directions, bench.options.t_order, *bench.truncation);
  report["graph_residual"] = format_rational(residual);
  report["t_order"] = bench.options.t_order;
  report["directions"] = directions.size();
  report["status"] = residual == 0 ? "ok" : "check_failed";
  return residual == 0 ? 0 : 1;
}

int run_check_all(Workbench& bench, ordered_json& report) {
  int status = 0;
  ordered_json validate_report;
  status = std::max(status, run_validate(bench, validate_report));
  report["validate"] = validate_report;

  if (!bench.options.constants_path.empty()) {
    ordered_json assoc_report;
    status = std::max(status, run_assoc(bench, assoc_report));
    report["assoc"] = assoc_report;
  }

  if (!bench.options.invariants_path.empty()) {
    // Exchange-identity sweep over identity-class anchors in the window.
    const Evaluator& eval = bench.need_evaluator();
    auto thetas = bench.space->degree_zero_basis(*bench.complex, 1);
    Rational worst = 0;
    for (const auto& beta : bench.truncation->classes()) {
      for (const auto& [p1, t1] : thetas) {
        for (const auto& [p2, t2] : thetas) {
          for (const auto& [p3, t3] : thetas) {
            for (const auto& [p4, t4] : thetas) {
              std::vector<Insertion> anchors;
              for (const auto* theta : {&t1, &t2, &t3, &t4}) {
                const auto& term = theta->terms().begin()->first;
                anchors.push_back(Insertion{term.s, term.label, 0});
              }
              worst = std::max(worst,
                               rational_abs(wdvv_residual(eval, anchors, {}, beta)));
            }
          }
        }
      }
    }
    report["wdvv"]["max_residual"] = format_rational(worst);
    report["wdvv"]["status"] = worst == 0 ? "ok" : "check_failed";
    if (worst != 0) status = std::max(status, 1);

    ordered_json j_report;
    status = std::max(status, run_jfunction(bench, j_report));
    report["j_function"] = j_report;
  }

  ordered_json virasoro_report;
  status = std::max(status, run_virasoro(bench, virasoro_report));
  report["virasoro"] = virasoro_report;

  report["status"] = status == 0 ? "ok" : "check_failed";
  return status;
}

void emit(const Options& options, const std::string& name, const ordered_json& report) {
  ordered_json wrapped;
  wrapped["subcommand"] = name;
  wrapped["report"] = report;
  if (!options.out_path.empty()) {
    std::ofstream out(options.out_path);
    if (!out) throw relqc::Error(ErrorKind::Data, "cannot write report to '" + options.out_path + "'");
    out << wrapped.dump(2) << "\n";
  }
  if (options.format == "json") {
    std::cout << wrapped.dump(2) << "\n";
  } else {
    std::function<void(const ordered_json&, int)> render = [&](const ordered_json& node,
                                                               int depth) {
      std::string indent(2 * depth, ' ');
      if (node.is_object()) {
        for (const auto& [key, value] : node.items()) {
          if (value.is_object() || value.is_array()) {
            std::cout << indent << key << ":\n";
            render(value, depth + 1);
          } else {
            std::cout << indent << key << ": " << value.dump() << "\n";
          }
        }
      } else if (node.is_array()) {
        for (const auto& value : node) {
          if (value.is_object() || value.is_array()) {
            std::cout << indent << "-\n";
            render(value, depth + 1);
          } else {
            std::cout << indent << "- " << value.dump() << "\n";
          }
        }
      } else {
        std::cout << indent << node.dump() << "\n";
      }
    };
    std::cout << name << "\n";
    render(report, 1);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relative quantum cohomology workbench"};
  app.require_subcommand(1);

  Options options;
  app.add_option("--pair", options.pair_path, "pair description JSON");
  app.add_option("--invariants", options.invariants_path, "invariant table JSONL");
  app.add_option("--constants", options.constants_path, "structure constants JSON");
  app.add_option("--q-bound", options.q_bound, "curve classes kept strictly below this degree+1");
  app.add_option("--t-order", options.t_order, "t-series truncation order");
  app.add_option("--theta-bound", options.theta_bound, "theta index bound");
  app.add_option("--t-contact-bound", options.t_contact_bound,
                 "total contact bound for t-directions");
  app.add_option("--z-window", options.z_window, "z-power window lo:hi");
  app.add_option("--out", options.out_path, "write the JSON report here");
  app.add_option("--format", options.format, "stdout format: text or json")
      ->check(CLI::IsMember({"text", "json"}));

  auto* validate = app.add_subcommand("validate", "validate the pair and tables");
  auto* product = app.add_subcommand("product", "small or big quantum product");
  std::string a_text, b_text;
  bool big = false;
  product->add_option("--a", a_text, "left factor, JSON class")->required();
  product->add_option("--b", b_text, "right factor, JSON class")->required();
  product->add_flag("--big", big, "use the big product at the configured t-order");
  auto* assoc = app.add_subcommand("assoc", "mirror algebra laws");
  auto* wdvv = app.add_subcommand("wdvv", "exchange-identity residual");
  std::string anchors_text, spectators_text, beta_text = "[0]";
  wdvv->add_option("--anchors", anchors_text, "four anchor insertions, JSON")->required();
  wdvv->add_option("--spectators", spectators_text, "spectator insertions, JSON");
  wdvv->add_option("--beta", beta_text, "curve class, JSON array")->required();
  auto* frobenius = app.add_subcommand("frobenius", "theta_0 coefficient chain recursion");
  std::string points_text, fbeta_text;
  frobenius->add_option("--points", points_text, "insertion points, JSON array of contacts")
      ->required();
  frobenius->add_option("--beta", fbeta_text, "curve class, JSON array")->required();
  auto* presentation = app.add_subcommand("mirror-presentation", "generators and relations");
  int relation_degree = 2;
  presentation->add_option("--relation-degree", relation_degree, "monomial degree bound");
  auto* virasoro = app.add_subcommand("virasoro", "operator and constraint residuals");
  auto* jfun = app.add_subcommand("j-function", "graph property residual");
  auto* check_all = app.add_subcommand("check-all", "every check the inputs allow");

  CLI11_PARSE(app, argc, argv);

  Workbench bench;
  bench.options = options;

  try {
    ordered_json report;
    int status = 0;
    std::string name;
    if (validate->parsed()) {
      name = "validate";
      status = run_validate(bench, report);
    } else if (product->parsed()) {
      name = "product";
      status = run_product(bench, a_text, b_text, big, report);
    } else if (assoc->parsed()) {
      name = "assoc";
      status = run_assoc(bench, report);
    } else if (wdvv->parsed()) {
      name = "wdvv";
      status = run_wdvv(bench, anchors_text, spectators_text, beta_text, report);
    } else if (frobenius->parsed()) {
      name = "frobenius";
      status = run_frobenius(bench, points_text, fbeta_text, report);
    } else if (presentation->parsed()) {
      name = "mirror-presentation";
      status = run_presentation(bench, relation_degree, report);
    } else if (virasoro->parsed()) {
      name = "virasoro";
      status = run_virasoro(bench, report);
    } else if (jfun->parsed()) {
      name = "j-function";
      status = run_jfunction(bench, report);
    } else if (check_all->parsed()) {
      name = "check-all";
      status = run_check_all(bench, report);
    }
    emit(options, name, report);
    return status;
  } catch (const relqc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
