#include "gpfree/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace gpfree::io {

namespace {

json finite_or_string(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

json table_entries_json(const std::vector<std::pair<u64, double>>& entries) {
  json out = json::array();
  for (const auto& [n, v] : entries) out.push_back(json::array({n, v}));
  return out;
}

std::vector<std::pair<u64, double>> table_entries_from_json(const json& j) {
  std::vector<std::pair<u64, double>> out;
  for (const auto& e : j) out.push_back({e.at(0).get<u64>(), e.at(1).get<double>()});
  return out;
}

}  // namespace

json progression_json(const GeomProgression& p) {
  return {{"a", p.a}, {"b", p.b}, {"c", p.c}, {"len", p.len}, {"terms", terms(p)}};
}

json length_function_json(const LengthFunction& k) {
  json out;
  switch (k.kind()) {
    case LengthFunction::Kind::constant:
      out = {{"kind", "const"}, {"value", k.param()}};
      break;
    case LengthFunction::Kind::eps_log:
      out = {{"kind", "epslog"}, {"eps", k.param()}};
      break;
    case LengthFunction::Kind::table:
      out = {{"kind", "table"}, {"entries", table_entries_json(k.entries())}};
      break;
  }
  out["normalized"] = k.is_normalized();
  return out;
}

LengthFunction length_function_from_json(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  LengthFunction k = LengthFunction::constant(6);
  if (kind == "const") {
    k = LengthFunction::constant(j.at("value").get<double>());
  } else if (kind == "epslog") {
    k = LengthFunction::eps_log(j.at("eps").get<double>());
  } else if (kind == "table") {
    k = LengthFunction::table(table_entries_from_json(j.at("entries")));
  } else {
    fail(errc::parse_error, "unknown length function kind: " + kind);
  }
  if (j.value("normalized", false)) k = k.normalized();
  return k;
}

json gap_function_json(const GapFunction& h) {
  switch (h.kind()) {
    case GapFunction::Kind::constant:
      return {{"kind", "const"}, {"value", h.param()}};
    case GapFunction::Kind::power:
      return {{"kind", "power"}, {"alpha", h.param()}};
    case GapFunction::Kind::exp_log_ratio:
      return {{"kind", "explog"}, {"c", h.param()}};
    case GapFunction::Kind::table:
      return {{"kind", "table"}, {"entries", table_entries_json(h.entries())}};
  }
  fail(errc::parse_error, "bad gap function");
}

GapFunction gap_function_from_json(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "const") return GapFunction::constant(j.at("value").get<double>());
  if (kind == "power") return GapFunction::power(j.at("alpha").get<double>());
  if (kind == "explog") return GapFunction::exp_log_ratio(j.at("c").get<double>());
  if (kind == "table") return GapFunction::table(table_entries_from_json(j.at("entries")));
  fail(errc::parse_error, "unknown gap function kind: " + kind);
}

std::string window_to_string(const SequenceWindow& w, const json& k, std::optional<u64> seed) {
  json out;
  out["format"] = "gpfree-window/1";
  out["n"] = w.n();
  out["k"] = k;
  if (seed) out["seed"] = *seed;
  else out["seed"] = nullptr;
  json rle = json::array();
  for (const auto& [start, len] : w.excluded_rle()) rle.push_back(json::array({start, len}));
  out["excluded_rle"] = rle;
  return out.dump(2) + "\n";
}

WindowFile window_from_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(errc::parse_error, e.what());
  }
  if (j.value("format", "") != "gpfree-window/1") fail(errc::parse_error, "not a window file");
  WindowFile wf;
  u64 n = j.at("n").get<u64>();
  std::vector<std::pair<u64, u64>> runs;
  for (const auto& r : j.at("excluded_rle")) runs.push_back({r.at(0).get<u64>(), r.at(1).get<u64>()});
  wf.window = SequenceWindow::from_excluded_rle(n, runs);
  wf.k = j.value("k", json(nullptr));
  if (j.contains("seed") && !j.at("seed").is_null()) wf.seed = j.at("seed").get<u64>();
  return wf;
}

json check_result_json(const LemmaCheckResult& r) {
  return {{"claim", r.claim},
          {"params", r.params},
          {"lhs", finite_or_string(r.lhs)},
          {"rhs", finite_or_string(r.rhs)},
          {"holds", r.holds},
          {"witness", r.witness}};
}

json gap_report_json(const GapReport& r) {
  json decades = json::array();
  for (const auto& d : r.per_decade)
    decades.push_back({{"decade_start", d.decade_start}, {"max_gap", d.max_gap}, {"at", d.at}});
  return {{"n", r.n},
          {"max_gap", r.max_gap},
          {"gap_low", r.gap_low},
          {"gap_high", r.gap_high},
          {"lead_gap", r.lead_gap},
          {"trail_gap", r.trail_gap},
          {"fitted_c", r.fitted_c},
          {"per_decade", decades}};
}

std::string exclusions_to_csv(const std::vector<ExclusionRecord>& records) {
  std::ostringstream os;
  os << "a,b,c,len,lower,upper,chosen\n";
  for (const auto& rec : records) {
    MiddlePair mid = middle_terms(rec.progression);
    os << rec.progression.a << ',' << rec.progression.b << ',' << rec.progression.c << ','
       << rec.progression.len << ',' << mid.lower << ',' << mid.upper << ',' << rec.chosen
       << '\n';
  }
  return os.str();
}

std::string witnesses_to_csv(const std::vector<KFreeWitness>& witnesses) {
  std::ostringstream os;
  os << "m,p,exponent\n";
  for (const auto& w : witnesses) os << w.m << ',' << w.p << ',' << w.exponent << '\n';
  return os.str();
}

std::string check_results_to_csv(const std::vector<LemmaCheckResult>& results) {
  std::ostringstream os;
  std::vector<std::string> keys;
  for (const auto& r : results) {
    for (auto it = r.params.begin(); it != r.params.end(); ++it) {
      if (!it.value().is_primitive()) continue;
      if (std::find(keys.begin(), keys.end(), it.key()) == keys.end()) keys.push_back(it.key());
    }
  }
  std::sort(keys.begin(), keys.end());
  os << "claim";
  for (const auto& key : keys) os << ',' << key;
  os << ",lhs,rhs,holds\n";
  for (const auto& r : results) {
    os << r.claim;
    for (const auto& key : keys) {
      os << ',';
      if (r.params.contains(key)) {
        const json& v = r.params.at(key);
        if (v.is_string()) os << v.get<std::string>();
        else if (!v.is_null()) os << v.dump();
      }
    }
    os << ',' << finite_or_string(r.lhs).dump() << ',' << finite_or_string(r.rhs).dump() << ','
       << (r.holds ? 1 : 0) << '\n';
  }
  return os.str();
}

std::string progressions_to_csv(const std::vector<GeomProgression>& ps) {
  std::ostringstream os;
  os << "a,b,c,len,min_term,max_term\n";
  for (const auto& p : ps)
    os << p.a << ',' << p.b << ',' << p.c << ',' << p.len << ',' << p.min_term() << ','
       << p.max_term() << '\n';
  return os.str();
}

std::string gap_report_to_csv(const GapReport& r) {
  std::ostringstream os;
  os << "scope,decade_start,max_gap,at\n";
  os << "interior,," << r.max_gap << ',' << r.gap_low << '\n';
  os << "lead,," << r.lead_gap << ",0\n";
  os << "trail,," << r.trail_gap << ',' << (r.n + 1 - r.trail_gap) << '\n';
  for (const auto& d : r.per_decade)
    os << "decade," << d.decade_start << ',' << d.max_gap << ',' << d.at << '\n';
  return os.str();
}

std::string manifest_to_string(const RunManifest& m) {
  json out;
  out["format"] = "gpfree-manifest/1";
  out["command"] = m.command;
  out["argv"] = m.argv;
  out["params"] = m.params;
  if (m.seed) out["seed"] = *m.seed;
  else out["seed"] = nullptr;
  out["version"] = m.version;
  out["outputs"] = m.outputs;
  return out.dump(2) + "\n";
}

RunManifest manifest_from_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(errc::parse_error, e.what());
  }
  if (j.value("format", "") != "gpfree-manifest/1") fail(errc::parse_error, "not a manifest");
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.argv = j.at("argv").get<std::vector<std::string>>();
  m.params = j.value("params", json::object());
  if (j.contains("seed") && !j.at("seed").is_null()) m.seed = j.at("seed").get<u64>();
  m.version = j.value("version", "");
  m.outputs = j.value("outputs", std::vector<std::string>{});
  return m;
}

std::string manifest_path_for(const std::string& output_path) {
  return output_path + ".manifest.json";
}

void write_file_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(errc::parse_error, "cannot open " + tmp + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) fail(errc::parse_error, "short write to " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) fail(errc::parse_error, "rename failed: " + ec.message());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::parse_error, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

SequenceWindow ingest_sequence(const std::string& path, std::optional<u64> max_override) {
  std::string text = read_file(path);
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    WindowFile wf = window_from_string(text);
    if (max_override && *max_override != wf.window.n())
      fail(errc::parse_error, "max override conflicts with stored window bound");
    return wf.window;
  }

  std::vector<u64> members;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t begin = line.find_first_not_of(" \t");
    if (begin == std::string::npos) continue;
    std::size_t end = line.find_last_not_of(" \t");
    std::string tok = line.substr(begin, end - begin + 1);
    u64 value = 0;
    try {
      std::size_t used = 0;
      value = std::stoull(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      fail(errc::parse_error, "line " + std::to_string(lineno) + ": not a positive integer");
    }
    if (value < 1) fail(errc::parse_error, "line " + std::to_string(lineno) + ": zero entry");
    if (!members.empty() && value <= members.back())
      fail(errc::not_ascending, "line " + std::to_string(lineno) + ": entries must strictly ascend");
    members.push_back(value);
  }
  u64 n = max_override.value_or(members.empty() ? 0 : members.back());
  if (max_override && !members.empty() && *max_override < members.back())
    fail(errc::parse_error, "max override below the largest element");
  return SequenceWindow::from_members(n, members);
}

}  // namespace gpfree::io
