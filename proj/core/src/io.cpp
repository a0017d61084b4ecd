#include "qsearch/io.hpp"

#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "qsearch/error.hpp"

namespace qsearch {

using nlohmann::json;

namespace {

const json& require(const json& doc, const char* key) {
  if (!doc.contains(key)) throw ValidationError(std::string("scenario: missing required key '") + key + "'");
  return doc.at(key);
}

std::size_t as_index(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ValidationError("scenario: " + where + " must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

std::vector<ItemIndex> as_index_array(const json& v, const std::string& where) {
  if (!v.is_array()) throw ValidationError("scenario: " + where + " must be an array");
  std::vector<ItemIndex> out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(as_index(e, where + " entry"));
  return out;
}

std::string csv_field(const std::string& v) {
  if (v.find_first_of(",\"\n") == std::string::npos) return v;
  std::string out = "\"";
  for (char c : v) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

SearchScenario scenario_from_json(const json& doc) {
  if (!doc.is_object()) throw ValidationError("scenario: document must be a JSON object");
  static const std::set<std::string> known{"n_items", "targets", "info_sets", "energy", "labels", "schema_version"};
  for (const auto& [key, _] : doc.items()) {
    if (!known.count(key)) throw ValidationError("scenario: unknown key '" + key + "'");
  }

  if (doc.contains("schema_version") && doc.at("schema_version") != kSchemaVersion) {
    throw ValidationError("scenario: unsupported schema_version " + doc.at("schema_version").dump());
  }
  const std::size_t n_items = as_index(require(doc, "n_items"), "n_items");
  std::vector<ItemIndex> targets = as_index_array(require(doc, "targets"), "targets");

  const json& sets_doc = require(doc, "info_sets");
  if (!sets_doc.is_array()) throw ValidationError("scenario: info_sets must be an array");
  std::vector<InformationSet> sets;
  for (std::size_t j = 0; j < sets_doc.size(); ++j) {
    const json& s = sets_doc[j];
    const std::string where = "info_sets[" + std::to_string(j) + "]";
    if (!s.is_object()) throw ValidationError("scenario: " + where + " must be an object");
    InformationSet set;
    if (!s.contains("members")) throw ValidationError("scenario: " + where + " is missing 'members'");
    set.members = as_index_array(s.at("members"), where + ".members");
    if (!s.contains("weight") || !s.at("weight").is_number()) {
      throw ValidationError("scenario: " + where + ".weight must be a number");
    }
    set.weight = s.at("weight").get<double>();
    if (s.contains("name")) {
      if (!s.at("name").is_string()) throw ValidationError("scenario: " + where + ".name must be a string");
      set.name = s.at("name").get<std::string>();
    }
    sets.push_back(std::move(set));
  }

  double energy = 1.0;
  if (doc.contains("energy")) {
    if (!doc.at("energy").is_number()) throw ValidationError("scenario: energy must be a number");
    energy = doc.at("energy").get<double>();
  }

  SearchScenario scenario = SearchScenario::create(n_items, std::move(targets), std::move(sets), energy);
  if (doc.contains("labels")) {
    const json& l = doc.at("labels");
    if (!l.is_array()) throw ValidationError("scenario: labels must be an array of strings");
    std::vector<std::string> labels;
    for (const auto& e : l) {
      if (!e.is_string()) throw ValidationError("scenario: labels must be an array of strings");
      labels.push_back(e.get<std::string>());
    }
    scenario = scenario.with_labels(std::move(labels));
  }
  return scenario;
}

json scenario_to_json(const SearchScenario& scenario) {
  json sets = json::array();
  for (const auto& s : scenario.info_sets()) {
    json e{{"members", s.members}, {"weight", s.weight}};
    if (!s.name.empty()) e["name"] = s.name;
    sets.push_back(std::move(e));
  }
  json doc{{"schema_version", kSchemaVersion},
           {"n_items", scenario.n_items()},
           {"targets", std::vector<ItemIndex>(scenario.targets().begin(), scenario.targets().end())},
           {"info_sets", std::move(sets)},
           {"energy", scenario.energy()}};
  if (!scenario.labels().empty()) {
    doc["labels"] = std::vector<std::string>(scenario.labels().begin(), scenario.labels().end());
  }
  return doc;
}

SearchScenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read scenario file '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("scenario file '" + path.string() + "' is not valid JSON: " + e.what());
  }
  try {
    return scenario_from_json(doc);
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

json to_json(const StatePrep& prep) {
  return json{{"schema_version", kSchemaVersion},
              {"beta", prep.beta},
              {"nu", prep.nu},
              {"y", prep.y},
              {"r_count", prep.r_count},
              {"target_items", prep.target_items},
              {"residual_items", prep.residual_items}};
}

json to_json(const ConfidenceReport& report) {
  return json{{"classification", to_string(report.kind)}, {"intersections", report.intersections}};
}

json to_json(const SuccessDistribution& dist) {
  return json{{"probability", dist.probability}, {"target_mass", dist.target_mass}, {"failure_mass", dist.failure_mass}};
}

json to_json(const VerificationReport& r) {
  return json{{"schema_version", kSchemaVersion},
              {"n_items", r.n_items},
              {"y", r.y},
              {"optimal_time", r.optimal_time},
              {"grid_points", r.grid_points},
              {"subspace_residual", r.subspace_residual},
              {"reduced_deviation", r.reduced_deviation},
              {"energy_drift", r.energy_drift},
              {"norm_drift", r.norm_drift},
              {"outside_support_max", r.outside_support_max},
              {"plane_eigenvalues", r.plane_eigenvalues},
              {"spectrum_error", r.spectrum_error},
              {"min_eigenvalue", r.min_eigenvalue},
              {"max_eigenvalue", r.max_eigenvalue}};
}

json to_json(const PhaseEstimate& e) {
  json histogram = json::object();
  for (std::size_t k = 0; k < e.histogram.size(); ++k) {
    if (e.histogram[k] > 0) histogram[std::to_string(k)] = e.histogram[k];
  }
  return json{{"schema_version", kSchemaVersion},
              {"m_size", e.m_size},
              {"k_mode", e.k_mode},
              {"k_histogram", std::move(histogram)},
              {"y_candidates", {e.y_candidates.first, e.y_candidates.second}},
              {"y_hat", e.y_hat},
              {"resolution", e.resolution},
              {"samples_used", e.samples_used},
              {"low_side", e.low_side},
              {"high_side", e.high_side},
              {"branch_rule", to_string(e.rule)}};
}

json to_json(const TailBoundReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    entries.push_back({{"m", e.m},
                       {"bound", e.bound},
                       {"y_branch_probability", e.y_branch_probability},
                       {"complement_probability", e.complement_probability},
                       {"satisfied", e.satisfied}});
  }
  return json{{"y", r.y},
              {"m_size", r.m_size},
              {"entries", std::move(entries)},
              {"pointwise_min_slack", r.pointwise_min_slack},
              {"pointwise_satisfied", r.pointwise_satisfied},
              {"all_satisfied", r.all_satisfied}};
}

json to_json(const BoundReport& r) {
  return json{{"scenario_id", r.scenario_id}, {"y", r.y},
              {"T", r.time},                  {"bound_value", r.bound_value},
              {"bound_kind", to_string(r.bound_kind)}, {"satisfied", r.satisfied},
              {"margin", r.margin}};
}

json to_json(const NuBoundCheck& c) {
  json doc{{"nu_squared", c.nu_squared},
           {"lower", c.lower},
           {"upper", c.upper},
           {"weight_square_sum", c.weight_square_sum},
           {"inverse_set_count", c.inverse_set_count},
           {"satisfied", c.satisfied}};
  doc["disjoint_upper"] = c.disjoint_upper ? json(*c.disjoint_upper) : json(nullptr);
  return doc;
}

json to_json(const ComparisonReport& r) {
  return json{{"schema_version", kSchemaVersion},
              {"y_structured", r.y_structured},
              {"y_unstructured", r.y_unstructured},
              {"T_structured", r.t_structured},
              {"T_unstructured", r.t_unstructured},
              {"speedup", r.speedup},
              {"time_ratio", r.time_ratio},
              {"confidence", to_json(r.confidence)},
              {"support_size", r.support_size},
              {"support_exponent", r.support_exponent},
              {"baseline", to_json(r.baseline)}};
}

json to_json(const CountResult& r) {
  return json{{"schema_version", kSchemaVersion},
              {"scenario", scenario_to_json(r.scenario)},
              {"support_size", r.support_size},
              {"m_size", r.m_size},
              {"estimate", to_json(r.estimate)},
              {"count", r.count}};
}

void write_phase_distribution_csv(std::ostream& os, const PhaseDistribution& d) {
  os << "k,p_total,p_y_branch,p_complement_branch\n";
  for (std::size_t k = 0; k < d.m_size; ++k) {
    os << k << ',' << csv_double(d.total[k]) << ',' << csv_double(d.given_y_branch[k]) << ','
       << csv_double(d.given_complement_branch[k]) << '\n';
  }
}

void write_success_distribution_csv(std::ostream& os, const SuccessDistribution& dist,
                                    const SearchScenario& scenario) {
  os << "item,label,probability,is_target\n";
  const auto labels = scenario.labels();
  for (std::size_t i = 0; i < dist.probability.size(); ++i) {
    os << i << ',' << (labels.empty() ? std::string{} : csv_field(labels[i])) << ',' << csv_double(dist.probability[i]) << ','
       << oracle_eval(scenario, i) << '\n';
  }
}

void write_misplaced_curve_csv(std::ostream& os, std::span<const MisplacedPoint> curve) {
  os << "alpha2,nu,y,T\n";
  for (const auto& p : curve) {
    os << csv_double(p.alpha2) << ',' << csv_double(p.nu) << ',' << csv_double(p.y) << ',' << csv_double(p.time)
       << '\n';
  }
}

}  // namespace qsearch
