#include <fstream>
#include <sstream>

#include <json.hpp>

#include "relqc/error.hpp"
#include "relqc/invariants.hpp"

namespace relqc {

namespace {

using nlohmann::ordered_json;

}  // namespace

InvariantTable load_table(const std::string& path, const StateSpace& space) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open invariant table '" + path + "'");

  std::string line;
  int line_number = 0;

  auto next_json = [&](ordered_json& doc) -> bool {
    while (std::getline(in, line)) {
      ++line_number;
      // Skip blank lines between records.
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        doc = ordered_json::parse(line);
      } catch (const std::exception& e) {
        throw Error(ErrorKind::Parse,
                    path + ":" + std::to_string(line_number) + ": " + e.what());
      }
      return true;
    }
    return false;
  };

  ordered_json manifest;
  if (!next_json(manifest) || !manifest.contains("support")) {
    throw Error(ErrorKind::Parse, path + ": missing manifest line with the support window");
  }
  SupportWindow window;
  try {
    window.max_total_contact = manifest.at("support").at("max_total_contact").get<long long>();
    window.beta_bound = manifest.at("beta_bound").get<std::vector<long long>>();
  } catch (const std::exception& e) {
    throw Error(ErrorKind::Parse, path + ": bad manifest: " + e.what());
  }
  if (static_cast<int>(window.beta_bound.size()) != space.pair().curve_lattice_rank) {
    throw Error(ErrorKind::Parse, path + ": beta bound length does not match the lattice rank");
  }

  InvariantTable table(space, window);
  ordered_json doc;
  while (next_json(doc)) {
    const std::string source = path + ":" + std::to_string(line_number);
    try {
      InvariantKey key;
      key.genus = doc.at("g").get<int>();
      key.beta = doc.at("beta").get<CurveClass>();
      for (const auto& ins : doc.at("insertions")) {
        Insertion insertion;
        insertion.s = ins.at("s").get<ContactVector>();
        insertion.label = ins.at("label").get<std::string>();
        insertion.psi = ins.value("psi", 0);
        if (static_cast<int>(insertion.s.size()) != space.divisor_count()) {
          throw Error(ErrorKind::Data, source + ": contact vector length mismatch");
        }
        key.insertions.push_back(std::move(insertion));
      }
      if (static_cast<int>(key.beta.size()) != space.pair().curve_lattice_rank) {
        throw Error(ErrorKind::Data, source + ": curve class length mismatch");
      }
      Rational value = parse_rational(doc.at("value").get<std::string>());
      table.insert(std::move(key), value, source);
    } catch (const Error&) {
      throw;
    } catch (const std::exception& e) {
      throw Error(ErrorKind::Parse, source + ": " + e.what());
    }
  }
  return table;
}

void store_table(const InvariantTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Data, "cannot write invariant table '" + path + "'");

  ordered_json manifest;
  manifest["support"]["max_total_contact"] = table.window().max_total_contact;
  manifest["beta_bound"] = table.window().beta_bound;
  out << manifest.dump() << "\n";

  for (const auto& [key, value] : table.entries()) {
    ordered_json doc;
    doc["g"] = key.genus;
    doc["beta"] = key.beta;
    ordered_json insertions = ordered_json::array();
    for (const auto& ins : key.insertions) {
      ordered_json entry;
      entry["s"] = ins.s;
      entry["label"] = ins.label;
      if (ins.psi != 0) entry["psi"] = ins.psi;
      insertions.push_back(entry);
    }
    doc["insertions"] = insertions;
    doc["value"] = format_rational(value);
    out << doc.dump() << "\n";
  }
}

}  // namespace relqc
