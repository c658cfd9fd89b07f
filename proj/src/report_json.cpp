#include "isexplore/report_json.hpp"

#include <cstdio>
#include <sstream>

namespace isexplore {

namespace {

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

void emit(std::ostringstream& out, const Json& v, int indent, int depth) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out << "{}";
        return;
      }
      out << '{' << nl;
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out << ',' << nl;
        first = false;
        out << pad << Json(it.key()).dump() << (indent > 0 ? ": " : ":");
        emit(out, it.value(), indent, depth + 1);
      }
      out << nl << close_pad << '}';
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out << "[]";
        return;
      }
      out << '[' << nl;
      bool first = true;
      for (const auto& item : v) {
        if (!first) out << ',' << nl;
        first = false;
        out << pad;
        emit(out, item, indent, depth + 1);
      }
      out << nl << close_pad << ']';
      return;
    }
    case Json::value_t::number_float: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
      out << buf;
      return;
    }
    default:
      out << v.dump();
  }
}

}  // namespace

std::string dump_json(const Json& value, int indent) {
  std::ostringstream out;
  emit(out, value, indent, 0);
  return out.str();
}

Json config_to_json(const SelectionConfig& cfg) {
  Json metric;
  metric["kind"] = to_string(cfg.diversity_metric.kind);
  if (cfg.diversity_metric.kind == DiversityMetricKind::MeanPairwiseEuclidean) {
    metric["k"] = nullptr;
  } else {
    metric["k"] = cfg.diversity_metric.k;
  }
  Json j;
  j["segment_len_s"] = cfg.segment_len_s;
  j["stride_s"] = cfg.stride_s;
  j["top_m"] = cfg.top_m;
  j["diversity_metric"] = metric;
  j["hf_threshold"] = cfg.spectral.hf_threshold;
  j["w_lip"] = cfg.w_lip;
  j["w_pose"] = cfg.w_pose;
  j["epsilon"] = cfg.epsilon;
  j["strategy"] = to_string(cfg.strategy);
  j["seed"] = cfg.seed;
  return j;
}

Json report_to_json(const SelectionReport& report, bool include_timings) {
  Json j;
  j["config"] = config_to_json(report.config);
  Json candidates = Json::array();
  for (const auto& c : report.candidates) {
    Json item;
    item["index"] = c.window.index;
    item["start_s"] = c.window.start_s;
    item["end_s"] = c.window.end_s;
    item["D"] = c.D;
    item["mc_lip"] = optional_number(c.mc_lip);
    item["mc_pose"] = optional_number(c.mc_pose);
    item["mc"] = optional_number(c.mc);
    item["I"] = optional_number(c.I);
    item["rank"] = c.rank;
    candidates.push_back(std::move(item));
  }
  j["candidates"] = std::move(candidates);
  j["chosen"] = Json{{"index", report.chosen.index}, {"start_s", report.chosen.start_s}, {"end_s", report.chosen.end_s}};
  Json timings;
  const auto& t = report.timings;
  timings["candidates_ms"] = include_timings ? Json(t.candidates_ms) : Json(nullptr);
  timings["diversity_ms"] = include_timings ? Json(t.diversity_ms) : Json(nullptr);
  timings["spectral_ms"] = include_timings ? Json(t.spectral_ms) : Json(nullptr);
  timings["total_ms"] = include_timings ? Json(t.total_ms) : Json(nullptr);
  j["timings"] = std::move(timings);
  return j;
}

CutManifest make_manifest(const SelectionReport& report, double fps, std::optional<std::string> source_media,
                          std::string report_path) {
  return CutManifest{std::move(source_media), report.chosen.start_s, report.chosen.end_s, fps, std::move(report_path)};
}

Json manifest_to_json(const CutManifest& m) {
  Json j;
  j["source_media"] = m.source_media ? Json(*m.source_media) : Json(nullptr);
  j["start_s"] = m.start_s;
  j["end_s"] = m.end_s;
  j["fps"] = m.fps;
  j["report_path"] = m.report_path;
  return j;
}

}  // namespace isexplore
