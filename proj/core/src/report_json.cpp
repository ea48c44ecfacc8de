#include "twa/report_json.hpp"

#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace twa {

using nlohmann::json;

namespace {

json pairs_to_json(const std::vector<std::pair<int, int>>& v) {
  json a = json::array();
  for (const auto& [x, y] : v) a.push_back(json::array({x, y}));
  return a;
}

std::vector<std::pair<int, int>> pairs_from_json(const json& a) {
  std::vector<std::pair<int, int>> v;
  for (const auto& e : a) v.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  return v;
}

json verdict_to_json(const Verdict& v) {
  json j;
  j["detail"] = v.detail;
  j["status"] = v.status;
  return j;
}

Verdict verdict_from_json(const json& j) {
  return Verdict{j.at("status").get<std::string>(), j.at("detail").get<std::string>()};
}

json result_to_json(const CharacteristicResult& r, bool with_timings) {
  json j;
  json blocks = json::array();
  for (const auto& b : r.blocks) {
    json bj;
    bj["label"] = b.label;
    bj["size"] = b.size;
    blocks.push_back(std::move(bj));
  }
  j["blocks"] = std::move(blocks);
  j["characteristic"] = r.characteristic;
  j["closure_dim"] = r.closure_dim;
  j["decomposition"] = verdict_to_json(r.decomposition);
  j["dimension"] = verdict_to_json(r.dimension);
  if (with_timings) j["elapsed_ms"] = r.elapsed_ms;
  j["formula_dim"] = r.formula_dim;
  j["nilpotency"] = r.nilpotency ? json(*r.nilpotency) : json(nullptr);
  j["radical_dim"] = r.radical_dim;
  j["vertex_independence"] = verdict_to_json(r.vertex_independence);
  return j;
}

CharacteristicResult result_from_json(const json& j) {
  CharacteristicResult r;
  r.characteristic = j.at("characteristic").get<std::uint64_t>();
  r.closure_dim = j.at("closure_dim").get<long long>();
  r.formula_dim = j.at("formula_dim").get<long long>();
  r.dimension = verdict_from_json(j.at("dimension"));
  r.radical_dim = j.at("radical_dim").get<long long>();
  if (!j.at("nilpotency").is_null()) r.nilpotency = j.at("nilpotency").get<int>();
  for (const auto& bj : j.at("blocks"))
    r.blocks.push_back({bj.at("label").get<std::string>(), bj.at("size").get<int>()});
  r.decomposition = verdict_from_json(j.at("decomposition"));
  r.vertex_independence = verdict_from_json(j.at("vertex_independence"));
  if (j.contains("elapsed_ms")) r.elapsed_ms = j.at("elapsed_ms").get<double>();
  return r;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

constexpr const char* kCsvHeader =
    "identifier,n,d,valid,thin,quasi_thin,triply_regular,characteristic,closure_dim,"
    "formula_dim,dimension,radical_dim,nilpotency,blocks,decomposition,"
    "vertex_independence,all_pass,error\n";

std::string bool_str(bool b) { return b ? "true" : "false"; }

std::string blocks_str(const std::vector<BlockInfo>& blocks) {
  std::string out;
  for (const auto& b : blocks) {
    if (!out.empty()) out += ' ';
    out += b.label + ":" + std::to_string(b.size);
  }
  return out;
}

void csv_rows_for_report(std::ostream& os, const VerificationReport& rep) {
  const std::string prefix = csv_escape(rep.identifier) + "," + std::to_string(rep.n) + "," +
                             std::to_string(rep.d) + "," + bool_str(rep.valid) + "," +
                             bool_str(rep.thin) + "," + bool_str(rep.quasi_thin) + "," +
                             (rep.triply_regular ? bool_str(*rep.triply_regular) : "");
  if (rep.results.empty()) {
    os << prefix << ",,,,,,,,,," << bool_str(rep.all_pass()) << ",\n";
    return;
  }
  for (const auto& r : rep.results) {
    os << prefix << "," << r.characteristic << "," << r.closure_dim << ","
       << (r.formula_dim >= 0 ? std::to_string(r.formula_dim) : "") << "," << r.dimension.status << ","
       << (r.radical_dim >= 0 ? std::to_string(r.radical_dim) : "") << ","
       << (r.nilpotency ? std::to_string(*r.nilpotency) : "") << "," << csv_escape(blocks_str(r.blocks))
       << "," << r.decomposition.status << "," << r.vertex_independence.status << ","
       << bool_str(rep.all_pass()) << ",\n";
  }
}

json report_json_obj(const VerificationReport& rep, bool with_timings) {
  json j;
  j["all_pass"] = rep.all_pass();
  j["base_vertex"] = rep.base_vertex;
  j["d"] = rep.d;
  j["identifier"] = rep.identifier;
  j["n"] = rep.n;
  j["quasi_thin"] = rep.quasi_thin;
  j["r_set"] = pairs_to_json(rep.r_set);
  j["readings_differ"] = rep.readings_differ;
  json results = json::array();
  for (const auto& r : rep.results) results.push_back(result_to_json(r, with_timings));
  j["results"] = std::move(results);
  j["s_set"] = pairs_to_json(rep.s_set);
  j["schema"] = "twa-report-v1";
  j["thin"] = rep.thin;
  j["triply_regular"] = rep.triply_regular ? json(*rep.triply_regular) : json(nullptr);
  j["valencies"] = rep.valencies;
  json hist = json::array();
  for (const auto& [k, c] : rep.valency_histogram) hist.push_back(json::array({k, c}));
  j["valency_histogram"] = std::move(hist);
  j["valid"] = rep.valid;
  j["validation_summary"] = rep.validation_summary;
  if (rep.witness) {
    json w = json::array();
    for (int v : *rep.witness) w.push_back(v);
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

VerificationReport report_from_json_obj(const json& j) {
  if (j.value("schema", "") != "twa-report-v1")
    throw std::invalid_argument("report_from_json: unexpected schema");
  VerificationReport rep;
  rep.identifier = j.at("identifier").get<std::string>();
  rep.n = j.at("n").get<int>();
  rep.d = j.at("d").get<int>();
  rep.valencies = j.at("valencies").get<std::vector<long long>>();
  for (const auto& e : j.at("valency_histogram"))
    rep.valency_histogram.emplace_back(e.at(0).get<long long>(), e.at(1).get<long long>());
  rep.valid = j.at("valid").get<bool>();
  rep.validation_summary = j.at("validation_summary").get<std::string>();
  rep.thin = j.at("thin").get<bool>();
  rep.quasi_thin = j.at("quasi_thin").get<bool>();
  rep.r_set = pairs_from_json(j.at("r_set"));
  rep.s_set = pairs_from_json(j.at("s_set"));
  rep.readings_differ = j.at("readings_differ").get<bool>();
  if (!j.at("triply_regular").is_null()) rep.triply_regular = j.at("triply_regular").get<bool>();
  if (!j.at("witness").is_null()) {
    std::array<int, 5> w{};
    const auto& wj = j.at("witness");
    for (int i = 0; i < 5; ++i) w[static_cast<std::size_t>(i)] = wj.at(i).get<int>();
    rep.witness = w;
  }
  rep.base_vertex = j.at("base_vertex").get<int>();
  for (const auto& rj : j.at("results")) rep.results.push_back(result_from_json(rj));
  return rep;
}

json batch_json_obj(const BatchReport& batch, bool with_timings) {
  json j;
  j["all_pass"] = batch.all_pass();
  json entries = json::array();
  for (const auto& e : batch.entries) {
    json ej;
    ej["error"] = e.error;
    ej["identifier"] = e.identifier;
    ej["loaded"] = e.loaded;
    ej["report"] = e.report ? report_json_obj(*e.report, with_timings) : json(nullptr);
    entries.push_back(std::move(ej));
  }
  j["entries"] = std::move(entries);
  j["schema"] = "twa-batch-v1";
  json summary;
  summary["failed"] = batch.failed;
  summary["load_failures"] = batch.load_failures;
  summary["loaded"] = batch.loaded;
  summary["passed"] = batch.passed;
  summary["total"] = batch.total;
  j["summary"] = std::move(summary);
  return j;
}

BatchReport batch_from_json_obj(const json& j) {
  if (j.value("schema", "") != "twa-batch-v1")
    throw std::invalid_argument("batch_from_json: unexpected schema");
  BatchReport batch;
  const auto& s = j.at("summary");
  batch.total = s.at("total").get<int>();
  batch.loaded = s.at("loaded").get<int>();
  batch.load_failures = s.at("load_failures").get<int>();
  batch.passed = s.at("passed").get<int>();
  batch.failed = s.at("failed").get<int>();
  for (const auto& ej : j.at("entries")) {
    BatchEntry e;
    e.identifier = ej.at("identifier").get<std::string>();
    e.loaded = ej.at("loaded").get<bool>();
    e.error = ej.at("error").get<std::string>();
    if (!ej.at("report").is_null()) e.report = report_from_json_obj(ej.at("report"));
    batch.entries.push_back(std::move(e));
  }
  return batch;
}

json parse_or_invalid(std::string_view text, const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw std::invalid_argument(std::string(what) + ": malformed JSON");
  return j;
}

}  // namespace

std::string report_to_json(const VerificationReport& rep, bool with_timings) {
  return report_json_obj(rep, with_timings).dump(2) + "\n";
}

VerificationReport report_from_json(std::string_view json_text) {
  try {
    return report_from_json_obj(parse_or_invalid(json_text, "report_from_json"));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("report_from_json: ") + e.what());
  }
}

std::string batch_to_json(const BatchReport& batch, bool with_timings) {
  return batch_json_obj(batch, with_timings).dump(2) + "\n";
}

BatchReport batch_from_json(std::string_view json_text) {
  try {
    return batch_from_json_obj(parse_or_invalid(json_text, "batch_from_json"));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("batch_from_json: ") + e.what());
  }
}

std::string reports_to_csv(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  os << kCsvHeader;
  for (const auto& rep : reports) csv_rows_for_report(os, rep);
  return os.str();
}

std::string batch_to_csv(const BatchReport& batch) {
  std::ostringstream os;
  os << kCsvHeader;
  for (const auto& e : batch.entries) {
    if (e.report) {
      csv_rows_for_report(os, *e.report);
    } else {
      os << csv_escape(e.identifier) << ",,,,,,,,,,,,,,,,false," << csv_escape(e.error) << "\n";
    }
  }
  return os.str();
}

std::string report_to_text(const VerificationReport& rep, bool with_timings) {
  std::ostringstream os;
  os << "scheme " << rep.identifier << ": n=" << rep.n << ", d=" << rep.d << "\n";
  if (!rep.valid) {
    os << "  INVALID: " << rep.validation_summary << "\n";
    return os.str();
  }
  os << "  valencies:";
  for (auto k : rep.valencies) os << " " << k;
  os << "\n  thin: " << (rep.thin ? "yes" : "no") << ", quasi-thin: " << (rep.quasi_thin ? "yes" : "no")
     << "\n";
  if (rep.quasi_thin) {
    os << "  |R| = " << rep.r_set.size() << ", |S| = " << rep.s_set.size();
    if (rep.readings_differ) os << "  (chain-definition readings differ; literal reading reported)";
    os << "\n  triply regular: " << (*rep.triply_regular ? "yes" : "no");
    if (rep.witness) {
      os << "  (witness u,v,w,y,z =";
      for (int v : *rep.witness) os << " " << v;
      os << ")";
    }
    os << "\n";
  }
  os << "  base vertex: " << rep.base_vertex << "\n";
  for (const auto& r : rep.results) {
    os << "  characteristic " << r.characteristic << ": dim T = " << r.closure_dim;
    if (r.formula_dim >= 0) os << ", formula = " << r.formula_dim;
    os << "\n";
    os << "    dimension:           " << r.dimension.status << " - " << r.dimension.detail << "\n";
    os << "    decomposition:       " << r.decomposition.status << " - " << r.decomposition.detail
       << "\n";
    os << "    vertex independence: " << r.vertex_independence.status << " - "
       << r.vertex_independence.detail << "\n";
    if (with_timings) os << "    elapsed: " << r.elapsed_ms << " ms\n";
  }
  os << "  overall: " << (rep.all_pass() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::string batch_to_text(const BatchReport& batch) {
  std::ostringstream os;
  for (const auto& e : batch.entries) {
    if (!e.loaded) {
      os << "scheme " << e.identifier << ": LOAD ERROR - " << e.error << "\n";
    } else {
      os << "scheme " << e.identifier << ": " << (e.report->all_pass() ? "PASS" : "FAIL") << "\n";
    }
  }
  os << "total " << batch.total << ", loaded " << batch.loaded << ", passed " << batch.passed
     << ", failed " << batch.failed << ", load failures " << batch.load_failures << "\n";
  return os.str();
}

}  // namespace twa
