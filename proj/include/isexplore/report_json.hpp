#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "isexplore/selector.hpp"

namespace isexplore {

using Json = nlohmann::ordered_json;

// Serializes with every floating-point number printed at 17 significant
// digits ("%.17g"); integers, strings, and null use their usual JSON form.
std::string dump_json(const Json& value, int indent = 2);

Json config_to_json(const SelectionConfig& cfg);

// Timings are wall-clock and vary run to run; they are written as null
// unless requested so that identical inputs give identical bytes.
Json report_to_json(const SelectionReport& report, bool include_timings = false);

struct CutManifest {
  std::optional<std::string> source_media;
  double start_s = 0.0;
  double end_s = 0.0;
  double fps = 0.0;
  std::string report_path;
};

CutManifest make_manifest(const SelectionReport& report, double fps, std::optional<std::string> source_media,
                          std::string report_path);
Json manifest_to_json(const CutManifest& manifest);

}  // namespace isexplore
