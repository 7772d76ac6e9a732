#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gpfree/analysis.hpp"
#include "gpfree/baselines.hpp"
#include "gpfree/gp_model.hpp"
#include "gpfree/process.hpp"
#include "gpfree/window.hpp"

namespace gpfree::io {

using nlohmann::json;

inline constexpr const char* kArtifactVersion = "gpfree/0.1.0";

json progression_json(const GeomProgression& p);

json length_function_json(const LengthFunction& k);
LengthFunction length_function_from_json(const json& j);

json gap_function_json(const GapFunction& h);
GapFunction gap_function_from_json(const json& j);

// Window carrier: {"format": "gpfree-window/1", "n", "k", "seed",
// "excluded_rle"}. k and seed are null unless the window came out of the
// process. The excluded set is run-length encoded as [start, length] pairs.
struct WindowFile {
  SequenceWindow window;
  std::optional<u64> seed;
  json k = nullptr;
};

std::string window_to_string(const SequenceWindow& w, const json& k, std::optional<u64> seed);
WindowFile window_from_string(const std::string& text);

json check_result_json(const LemmaCheckResult& r);
json gap_report_json(const GapReport& r);

std::string exclusions_to_csv(const std::vector<ExclusionRecord>& records);
std::string witnesses_to_csv(const std::vector<KFreeWitness>& witnesses);
// One row per result: claim plus flattened scalar params, then lhs/rhs/holds.
std::string check_results_to_csv(const std::vector<LemmaCheckResult>& results);
std::string progressions_to_csv(const std::vector<GeomProgression>& ps);
std::string gap_report_to_csv(const GapReport& r);

// Run description written beside every output file; replaying argv must
// reproduce the outputs byte for byte. No timestamps by design.
struct RunManifest {
  std::string command;
  std::vector<std::string> argv;
  json params;
  std::optional<u64> seed;
  std::string version = kArtifactVersion;
  std::vector<std::string> outputs;
};

std::string manifest_to_string(const RunManifest& m);
RunManifest manifest_from_string(const std::string& text);
std::string manifest_path_for(const std::string& output_path);

// Write via a sibling temp file and rename, so readers never observe a
// partial file.
void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

// Plain newline-separated ascending integers, or the native window format
// (detected by a leading '{'). max_override extends the bound above the
// largest element.
SequenceWindow ingest_sequence(const std::string& path, std::optional<u64> max_override);

}  // namespace gpfree::io
