#include "relqc/pair_geometry.hpp"

#include <algorithm>
#include <sstream>

#include "relqc/error.hpp"

namespace relqc {

namespace {

std::string index_set_name(const IndexSet& index_set) {
  std::ostringstream out;
  out << "{";
  for (std::size_t i = 0; i < index_set.size(); ++i) {
    if (i) out << ",";
    out << index_set[i] + 1;
  }
  out << "}";
  return out.str();
}

}  // namespace

CurveClass add_classes(const CurveClass& a, const CurveClass& b) {
  CurveClass out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

CurveClass subtract_classes(const CurveClass& a, const CurveClass& b) {
  CurveClass out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

bool is_zero_class(const CurveClass& beta) {
  return std::all_of(beta.begin(), beta.end(), [](long long c) { return c == 0; });
}

int StratumData::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].label == label) return static_cast<int>(i);
  }
  return -1;
}

std::string to_string(NefClass c) {
  switch (c) {
    case NefClass::LogCalabiYau: return "log_cy";
    case NefClass::KPlusDNef: return "kd_nef";
    case NefClass::AntiKPlusDNef: return "anti_kd_nef";
    case NefClass::Neither: return "neither";
  }
  return "neither";
}

bool PairDescription::has_stratum(const IndexSet& index_set) const {
  return strata.count(index_set) > 0;
}

const StratumData& PairDescription::stratum(const IndexSet& index_set) const {
  auto it = strata.find(index_set);
  if (it == strata.end()) {
    throw Error(ErrorKind::Structural, "no stratum for index set " + index_set_name(index_set));
  }
  return it->second;
}

long long PairDescription::divisor_degree(const CurveClass& beta, int divisor_index) const {
  long long sum = 0;
  for (std::size_t j = 0; j < beta.size(); ++j) sum += beta[j] * divisor_degrees[j][divisor_index];
  return sum;
}

long long PairDescription::total_divisor_degree(const CurveClass& beta) const {
  long long sum = 0;
  for (int i = 0; i < divisor_count; ++i) sum += divisor_degree(beta, i);
  return sum;
}

long long PairDescription::c1_degree(const CurveClass& beta) const {
  long long sum = 0;
  for (std::size_t j = 0; j < beta.size(); ++j) sum += beta[j] * c1_degrees[j];
  return sum;
}

long long PairDescription::h2_degree(const std::string& label, const CurveClass& beta) const {
  auto it = h2_degrees.find(label);
  if (it == h2_degrees.end()) {
    throw Error(ErrorKind::Config, "no curve-class degrees declared for H^2 class '" + label + "'");
  }
  long long sum = 0;
  for (std::size_t j = 0; j < beta.size(); ++j) sum += beta[j] * it->second[j];
  return sum;
}

void PairDescription::validate() const {
  if (!strata.count(IndexSet{})) {
    throw Error(ErrorKind::Structural, "strata table lacks the empty index set (X itself)");
  }
  for (const auto& [index_set, data] : strata) {
    for (int i : index_set) {
      if (i < 0 || i >= divisor_count) {
        throw Error(ErrorKind::Structural,
                    "stratum " + index_set_name(index_set) + " references divisor out of range");
      }
    }
    if (!std::is_sorted(index_set.begin(), index_set.end())) {
      throw Error(ErrorKind::Structural, "stratum indices must be sorted");
    }
    // Closedness: every subset of a present index set is present.
    for (std::size_t drop = 0; drop < index_set.size(); ++drop) {
      IndexSet smaller;
      for (std::size_t i = 0; i < index_set.size(); ++i) {
        if (i != drop) smaller.push_back(index_set[i]);
      }
      if (!strata.count(smaller)) {
        throw Error(ErrorKind::Structural,
                    "closedness violated: stratum " + index_set_name(index_set) +
                        " present but subset " + index_set_name(smaller) + " missing");
      }
    }

    const std::size_t b = data.basis.size();
    if (data.pairing.size() != b) {
      throw Error(ErrorKind::Data, "pairing matrix size mismatch on stratum " +
                                       index_set_name(index_set));
    }
    const int dim = stratum_dim(index_set);
    for (std::size_t k = 0; k < b; ++k) {
      if (data.pairing[k].size() != b) {
        throw Error(ErrorKind::Data, "pairing matrix not square on stratum " +
                                         index_set_name(index_set));
      }
      for (std::size_t l = 0; l < b; ++l) {
        if (data.pairing[k][l] != 0 && data.basis[k].degree + data.basis[l].degree != 2 * dim) {
          throw Error(ErrorKind::Data, "pairing violates degrees on stratum " +
                                           index_set_name(index_set));
        }
        if (data.pairing[k][l] != data.pairing[l][k] &&
            data.basis[k].degree % 2 == 0 && data.basis[l].degree % 2 == 0) {
          throw Error(ErrorKind::Data, "pairing not symmetric on even classes, stratum " +
                                           index_set_name(index_set));
        }
      }
    }
    if (!invert_matrix(data.pairing)) {
      throw Error(ErrorKind::Data,
                  "degenerate pairing on stratum " + index_set_name(index_set));
    }
  }

  if (static_cast<int>(divisor_degrees.size()) != curve_lattice_rank ||
      static_cast<int>(c1_degrees.size()) != curve_lattice_rank) {
    throw Error(ErrorKind::Data, "intersection tables must cover every lattice basis class");
  }
  for (const auto& row : divisor_degrees) {
    if (static_cast<int>(row.size()) != divisor_count) {
      throw Error(ErrorKind::Data, "divisor degree row has wrong length");
    }
  }

  if (kplusd_degrees) {
    if (static_cast<int>(kplusd_degrees->size()) != curve_lattice_rank) {
      throw Error(ErrorKind::Data, "K+D degree table has wrong length");
    }
    for (int j = 0; j < curve_lattice_rank; ++j) {
      long long direct = (*kplusd_degrees)[j];
      long long derived = -c1_degrees[j];
      for (int i = 0; i < divisor_count; ++i) derived += divisor_degrees[j][i];
      if (direct != derived) {
        std::ostringstream out;
        out << "K+D degree mismatch on lattice class " << j << ": declared " << direct
            << ", derived " << derived;
        throw Error(ErrorKind::Data, out.str());
      }
    }
  }

  if (declared_nef) {
    NefClass computed = nef_classification_from_generators(*this);
    bool compatible = computed == *declared_nef ||
                      (computed == NefClass::LogCalabiYau &&
                       (*declared_nef == NefClass::KPlusDNef ||
                        *declared_nef == NefClass::AntiKPlusDNef));
    if (!compatible) {
      throw Error(ErrorKind::Config, "declared nef flag '" + relqc::to_string(*declared_nef) +
                                         "' contradicts computed '" +
                                         relqc::to_string(computed) + "'");
    }
  }
}

long long ConePoint::total_multiplicity() const {
  long long sum = 0;
  for (long long m : multiplicities) sum += m;
  return sum;
}

DualComplex build_dual_complex(const PairDescription& pair) {
  pair.validate();
  DualComplex complex;
  complex.vertex_count = pair.divisor_count;
  for (const auto& [index_set, data] : pair.strata) {
    if (!index_set.empty()) complex.simplices.insert(index_set);
  }
  return complex;
}

std::vector<ConePoint> lattice_points(const DualComplex& complex, long long bound) {
  std::vector<ConePoint> points;
  points.push_back(ConePoint{});
  for (const auto& simplex : complex.simplices) {
    // Points with support exactly this simplex: all strictly positive
    // multiplicity vectors with the right total.
    const int k = static_cast<int>(simplex.size());
    std::vector<long long> mults(k, 1);
    while (true) {
      long long total = 0;
      for (long long m : mults) total += m;
      if (total <= bound) points.push_back(ConePoint{simplex, mults});
      // Advance odometer in total-multiplicity order is awkward; enumerate
      // the box [1, bound]^k and filter instead.
      int pos = k - 1;
      while (pos >= 0) {
        if (++mults[pos] <= bound) break;
        mults[pos] = 1;
        --pos;
      }
      if (pos < 0) break;
    }
  }
  std::sort(points.begin(), points.end(), [&](const ConePoint& a, const ConePoint& b) {
    if (a.total_multiplicity() != b.total_multiplicity()) {
      return a.total_multiplicity() < b.total_multiplicity();
    }
    return contact_vector(a, complex.vertex_count) < contact_vector(b, complex.vertex_count);
  });
  return points;
}

std::vector<long long> contact_vector(const ConePoint& point, int divisor_count) {
  std::vector<long long> s(divisor_count, 0);
  for (std::size_t i = 0; i < point.support.size(); ++i) {
    s[point.support[i]] = point.multiplicities[i];
  }
  return s;
}

std::optional<ConePoint> cone_point_from_contacts(const DualComplex& complex,
                                                  const std::vector<long long>& contacts) {
  ConePoint point;
  for (std::size_t i = 0; i < contacts.size(); ++i) {
    if (contacts[i] < 0) return std::nullopt;
    if (contacts[i] > 0) {
      point.support.push_back(static_cast<int>(i));
      point.multiplicities.push_back(contacts[i]);
    }
  }
  if (!complex.has_simplex(point.support)) return std::nullopt;
  return point;
}

long long log_canonical_degree(const PairDescription& pair, const CurveClass& beta) {
  return -pair.c1_degree(beta) + pair.total_divisor_degree(beta);
}

NefClass nef_classification_from_generators(const PairDescription& pair) {
  bool any_positive = false;
  bool any_negative = false;
  for (const auto& generator : pair.effective_generators) {
    long long deg = log_canonical_degree(pair, generator);
    if (deg > 0) any_positive = true;
    if (deg < 0) any_negative = true;
  }
  if (!any_positive && !any_negative) return NefClass::LogCalabiYau;
  if (!any_negative) return NefClass::KPlusDNef;
  if (!any_positive) return NefClass::AntiKPlusDNef;
  return NefClass::Neither;
}

NefClass nef_classification(const PairDescription& pair) {
  NefClass computed = nef_classification_from_generators(pair);
  if (pair.declared_nef) {
    bool compatible = computed == *pair.declared_nef ||
                      (computed == NefClass::LogCalabiYau &&
                       (*pair.declared_nef == NefClass::KPlusDNef ||
                        *pair.declared_nef == NefClass::AntiKPlusDNef));
    if (!compatible) {
      throw Error(ErrorKind::Config, "declared nef flag '" + to_string(*pair.declared_nef) +
                                         "' contradicts computed '" + to_string(computed) + "'");
    }
    return *pair.declared_nef;
  }
  return computed;
}

}  // namespace relqc
