#include "relqc/io.hpp"

#include <fstream>

#include <json.hpp>

#include "relqc/error.hpp"

namespace relqc {

namespace {

using nlohmann::ordered_json;

RationalMatrix parse_matrix(const ordered_json& rows) {
  RationalMatrix m;
  for (const auto& row : rows) {
    std::vector<Rational> out;
    for (const auto& cell : row) out.push_back(parse_rational(cell.get<std::string>()));
    m.push_back(std::move(out));
  }
  return m;
}

ordered_json matrix_json(const RationalMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : m) {
    ordered_json cells = ordered_json::array();
    for (const auto& cell : row) cells.push_back(format_rational(cell));
    rows.push_back(cells);
  }
  return rows;
}

NefClass parse_nef(const std::string& text) {
  if (text == "log_cy") return NefClass::LogCalabiYau;
  if (text == "kd_nef") return NefClass::KPlusDNef;
  if (text == "anti_kd_nef") return NefClass::AntiKPlusDNef;
  if (text == "neither") return NefClass::Neither;
  throw Error(ErrorKind::Parse, "unknown nef flag '" + text + "'");
}

}  // namespace

PairDescription load_pair(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open pair file '" + path + "'");
  ordered_json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw Error(ErrorKind::Parse, "pair file '" + path + "': " + e.what());
  }

  PairDescription pair;
  try {
    pair.name = doc.value("name", std::string{});
    pair.divisor_count = doc.at("divisor_count").get<int>();
    pair.ambient_dim = doc.at("ambient_dim").get<int>();
    pair.curve_lattice_rank = doc.at("curve_lattice_rank").get<int>();
    for (const auto& gen : doc.at("effective_generators")) {
      pair.effective_generators.push_back(gen.get<CurveClass>());
    }
    for (const auto& row : doc.at("divisor_degrees")) {
      pair.divisor_degrees.push_back(row.get<std::vector<long long>>());
    }
    pair.c1_degrees = doc.at("c1_degrees").get<std::vector<long long>>();
    if (doc.contains("kplusd_degrees")) {
      pair.kplusd_degrees = doc.at("kplusd_degrees").get<std::vector<long long>>();
    }
    if (doc.contains("h2_degrees")) {
      for (const auto& [label, degrees] : doc.at("h2_degrees").items()) {
        pair.h2_degrees[label] = degrees.get<std::vector<long long>>();
      }
    }
    if (doc.contains("nef_flag")) pair.declared_nef = parse_nef(doc.at("nef_flag"));

    for (const auto& entry : doc.at("strata")) {
      IndexSet index_set;
      for (int i : entry.at("indices").get<std::vector<int>>()) index_set.push_back(i - 1);
      StratumData data;
      data.connected = entry.value("connected", true);
      for (const auto& basis_entry : entry.at("basis")) {
        BasisClass basis_class;
        basis_class.label = basis_entry.at("label").get<std::string>();
        basis_class.degree = basis_entry.at("degree").get<int>();
        basis_class.hodge_p = basis_entry.value("hodge_p", basis_class.degree / 2);
        data.basis.push_back(std::move(basis_class));
      }
      data.pairing = parse_matrix(entry.at("pairing"));
      if (entry.contains("cup_h2")) {
        for (const auto& [label, rows] : entry.at("cup_h2").items()) {
          data.cup_h2[label] = parse_matrix(rows);
        }
      }
      if (entry.contains("log_c1_action")) {
        data.log_c1_action = parse_matrix(entry.at("log_c1_action"));
      } else {
        data.log_c1_action.assign(data.basis.size(),
                                  std::vector<Rational>(data.basis.size(), 0));
      }
      pair.strata.emplace(std::move(index_set), std::move(data));
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorKind::Parse, "pair file '" + path + "': " + e.what());
  }

  pair.validate();
  return pair;
}

void store_pair(const PairDescription& pair, const std::string& path) {
  ordered_json doc;
  doc["name"] = pair.name;
  doc["divisor_count"] = pair.divisor_count;
  doc["ambient_dim"] = pair.ambient_dim;
  doc["curve_lattice_rank"] = pair.curve_lattice_rank;
  doc["effective_generators"] = pair.effective_generators;
  doc["divisor_degrees"] = pair.divisor_degrees;
  doc["c1_degrees"] = pair.c1_degrees;
  if (pair.kplusd_degrees) doc["kplusd_degrees"] = *pair.kplusd_degrees;
  if (!pair.h2_degrees.empty()) {
    ordered_json h2;
    for (const auto& [label, degrees] : pair.h2_degrees) h2[label] = degrees;
    doc["h2_degrees"] = h2;
  }
  if (pair.declared_nef) doc["nef_flag"] = to_string(*pair.declared_nef);

  ordered_json strata = ordered_json::array();
  for (const auto& [index_set, data] : pair.strata) {
    ordered_json entry;
    std::vector<int> indices;
    for (int i : index_set) indices.push_back(i + 1);
    entry["indices"] = indices;
    entry["connected"] = data.connected;
    ordered_json basis = ordered_json::array();
    for (const auto& basis_class : data.basis) {
      ordered_json b;
      b["label"] = basis_class.label;
      b["degree"] = basis_class.degree;
      if (basis_class.hodge_p != basis_class.degree / 2) b["hodge_p"] = basis_class.hodge_p;
      basis.push_back(b);
    }
    entry["basis"] = basis;
    entry["pairing"] = matrix_json(data.pairing);
    if (!data.cup_h2.empty()) {
      ordered_json cup;
      for (const auto& [label, m] : data.cup_h2) cup[label] = matrix_json(m);
      entry["cup_h2"] = cup;
    }
    entry["log_c1_action"] = matrix_json(data.log_c1_action);
    strata.push_back(entry);
  }
  doc["strata"] = strata;

  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Data, "cannot write pair file '" + path + "'");
  out << doc.dump(2) << "\n";
}

}  // namespace relqc
