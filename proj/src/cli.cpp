#include "isexplore/cli.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "isexplore/errors.hpp"
#include "isexplore/report_json.hpp"
#include "isexplore/selector.hpp"
#include "isexplore/synth_bench.hpp"
#include "isexplore/track_store.hpp"

namespace isexplore::cli {

namespace {

struct SelectionFlags {
  double segment_len_s = 5.0;
  double stride_s = 1.0;
  std::size_t top_m = 5;
  double hf_threshold = 0.25;
  double w_lip = 0.5;
  double w_pose = 0.5;
  std::string metric = "pairwise-euclidean";
  std::size_t metric_k = 8;
  std::string strategy = "isexplore";
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

void add_selection_flags(CLI::App& cmd, SelectionFlags& f, bool with_strategy) {
  cmd.add_option("--segment-len", f.segment_len_s, "Segment length in seconds")->capture_default_str();
  cmd.add_option("--stride", f.stride_s, "Candidate stride in seconds")->capture_default_str();
  cmd.add_option("--top-m", f.top_m, "Candidates kept after the diversity sort")->capture_default_str();
  cmd.add_option("--hf-threshold", f.hf_threshold, "High-frequency cutoff as a fraction of Nyquist")
      ->capture_default_str();
  cmd.add_option("--w-lip", f.w_lip, "Lip weight in motion complexity")->capture_default_str();
  cmd.add_option("--w-pose", f.w_pose, "Pose weight in motion complexity")->capture_default_str();
  cmd.add_option("--metric", f.metric, "pairwise-euclidean | pca-top1 | pca-cumulative | semantic-entropy")
      ->capture_default_str();
  cmd.add_option("--metric-k", f.metric_k, "Components (pca-cumulative) or clusters (semantic-entropy)")
      ->capture_default_str();
  if (with_strategy) {
    cmd.add_option("--strategy", f.strategy, "isexplore | random | audio | lip | camera | lip-camera")
        ->capture_default_str();
    cmd.add_option("--seed", f.seed, "Seed for the random strategy")->capture_default_str();
  }
  cmd.add_option("--threads", f.threads, "Worker threads (0 = auto)");
}

SelectionConfig to_config(const SelectionFlags& f, bool with_strategy) {
  SelectionConfig cfg;
  cfg.segment_len_s = f.segment_len_s;
  cfg.stride_s = f.stride_s;
  cfg.top_m = f.top_m;
  cfg.spectral.hf_threshold = f.hf_threshold;
  cfg.w_lip = f.w_lip;
  cfg.w_pose = f.w_pose;
  cfg.diversity_metric.kind = parse_diversity_kind(f.metric);
  cfg.diversity_metric.k = f.metric_k;
  if (with_strategy) {
    cfg.strategy = parse_strategy(f.strategy);
    cfg.seed = f.seed;
  }
  cfg.validate();
  return cfg;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
  out << text;
  out.close();
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
}

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

int exit_code_for(ErrorCode code) {
  if (code == ErrorCode::BadConfig || code == ErrorCode::BadSpec) return kExitBadArguments;
  if (is_track_error(code)) return kExitTrackError;
  return kExitSelectionError;
}

std::optional<std::string> source_media_for(const std::string& audio_path, const std::string& landmark_path) {
  for (const auto& p : {audio_path, landmark_path}) {
    if (auto meta = read_sidecar(p); meta && !meta->source.empty()) return meta->source;
  }
  return std::nullopt;
}

std::vector<StrategyKind> parse_strategy_list(const std::string& list) {
  std::vector<StrategyKind> out;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) throw Error(ErrorCode::BadConfig, "empty strategy name in '" + list + "'");
    out.push_back(parse_strategy(item));
  }
  if (out.empty()) throw Error(ErrorCode::BadConfig, "strategy list is empty");
  return out;
}

Json inspect_json(const std::string& path, const Track& track) {
  const TrackHeader& h = std::visit([](const auto& t) -> const TrackHeader& { return t.header(); }, track);
  const auto data = std::visit([](const auto& t) { return t.data(); }, track);
  const std::size_t cols = h.values_per_frame();
  const auto frames = static_cast<std::size_t>(h.frame_count);
  std::vector<double> lo(cols, std::numeric_limits<double>::infinity());
  std::vector<double> hi(cols, -std::numeric_limits<double>::infinity());
  std::vector<double> sum(cols, 0.0);
  for (std::size_t t = 0; t < frames; ++t) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double v = data[t * cols + c];
      lo[c] = std::min(lo[c], v);
      hi[c] = std::max(hi[c], v);
      sum[c] += v;
    }
  }
  for (double& s : sum) s /= static_cast<double>(frames);

  Json j;
  j["path"] = path;
  j["kind"] = h.kind == TrackKind::AudioFeatures ? "audio_features" : "landmarks_2d";
  j["version"] = h.version;
  j["fps"] = h.fps;
  j["frame_count"] = h.frame_count;
  j["dim"] = h.dim;
  j["duration_s"] = static_cast<double>(h.frame_count) / h.fps;
  j["columns"] = cols;
  j["min"] = lo;
  j["max"] = hi;
  j["mean"] = sum;
  return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Informative segment selection for talking-face reference videos", "isexplore"};
  app.require_subcommand(1);

  SelectionFlags select_flags;
  std::string select_audio, select_landmarks;
  std::string report_path = "./isexplore_report.json";
  std::string manifest_path = "./segment.json";
  bool record_timings = false;
  auto* select = app.add_subcommand("select", "Pick the most informative segment");
  select->add_option("audio", select_audio, "Audio feature track (FTRK)")->required();
  select->add_option("landmarks", select_landmarks, "Landmark track (FTRK)")->required();
  add_selection_flags(*select, select_flags, true);
  select->add_option("--out", report_path, "Report JSON path")->capture_default_str();
  select->add_option("--manifest", manifest_path, "Cut manifest JSON path")->capture_default_str();
  select->add_flag("--timings", record_timings, "Write wall-clock stage timings into the report");

  SelectionFlags ablate_flags;
  std::string ablate_audio, ablate_landmarks, strategies;
  std::size_t seeds = 1;
  std::string csv_path = "./ablation.csv";
  std::optional<double> plant_start;
  auto* ablate = app.add_subcommand("ablate", "Run the ablation strategy family and write CSV");
  ablate->add_option("audio", ablate_audio, "Audio feature track (FTRK)")->required();
  ablate->add_option("landmarks", ablate_landmarks, "Landmark track (FTRK)")->required();
  ablate->add_option("--strategies", strategies, "Comma-separated strategy names")->required();
  ablate->add_option("--seeds", seeds, "Seeds for the random strategy")->capture_default_str();
  ablate->add_option("--plant-start", plant_start, "Known good segment start (s), fills overlap_frac");
  ablate->add_option("--out", csv_path, "CSV path")->capture_default_str();
  add_selection_flags(*ablate, ablate_flags, false);

  std::string spec_path;
  std::string synth_audio = "synth_audio.ftrk";
  std::string synth_landmarks = "synth_landmarks.ftrk";
  auto* synth = app.add_subcommand("synth", "Write a synthetic track pair from a JSON spec");
  synth->add_option("spec", spec_path, "Synthesis spec (JSON)")->required();
  synth->add_option("--audio-out", synth_audio, "Audio track path")->capture_default_str();
  synth->add_option("--landmarks-out", synth_landmarks, "Landmark track path")->capture_default_str();

  std::string inspect_path;
  auto* inspect = app.add_subcommand("inspect", "Print track header and per-column statistics");
  inspect->add_option("track", inspect_path, "Track file (FTRK)")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << one_line(e.what()) << '\n';
    return kExitBadArguments;
  }

  try {
    if (*select) {
      const SelectionConfig cfg = to_config(select_flags, true);
      const AudioFeatureTrack audio = load_audio_track(select_audio);
      const LandmarkTrack landmarks = load_landmark_track(select_landmarks);
      const SelectionReport report = run_strategy(audio, landmarks, cfg, {select_flags.threads});
      write_text(report_path, dump_json(report_to_json(report, record_timings)) + "\n");
      const CutManifest manifest =
          make_manifest(report, audio.fps(), source_media_for(select_audio, select_landmarks), report_path);
      write_text(manifest_path, dump_json(manifest_to_json(manifest)) + "\n");
      const auto& t = report.timings;
      out << "chosen index=" << report.chosen.index << " start_s=" << report.chosen.start_s
          << " end_s=" << report.chosen.end_s << '\n';
      out << "timings candidates_ms=" << t.candidates_ms << " diversity_ms=" << t.diversity_ms
          << " spectral_ms=" << t.spectral_ms << " total_ms=" << t.total_ms << '\n';
    } else if (*ablate) {
      const std::vector<StrategyKind> kinds = parse_strategy_list(strategies);
      const SelectionConfig cfg = to_config(ablate_flags, false);
      const AudioFeatureTrack audio = load_audio_track(ablate_audio);
      const LandmarkTrack landmarks = load_landmark_track(ablate_landmarks);
      const auto rows = run_ablation(audio, landmarks, cfg, kinds, seeds, plant_start, {ablate_flags.threads});
      std::string csv = ablation_csv_header() + "\n";
      for (const auto& row : rows) csv += to_csv_row(row) + "\n";
      write_text(csv_path, csv);
      out << "wrote " << rows.size() << " rows to " << csv_path << '\n';
    } else if (*synth) {
      std::ifstream in(spec_path);
      if (!in) throw Error(ErrorCode::BadSpec, "cannot open " + spec_path);
      const auto j = nlohmann::json::parse(in, nullptr, false);
      if (j.is_discarded()) throw Error(ErrorCode::BadSpec, spec_path + " is not valid JSON");
      const SynthSpec spec = synth_spec_from_json(j);
      const SynthTracks tracks = generate_tracks(spec);
      save_track(tracks.audio, synth_audio);
      save_track(tracks.landmarks, synth_landmarks);
      const TrackMetadata meta{"synthetic:" + spec_path, "isexplore-synth", std::nullopt};
      write_sidecar(synth_audio, meta);
      write_sidecar(synth_landmarks, meta);
      out << "wrote " << synth_audio << " and " << synth_landmarks << " (" << spec.frame_count() << " frames)\n";
    } else if (*inspect) {
      const Track track = load_track(inspect_path);
      out << dump_json(inspect_json(inspect_path, track)) << '\n';
    }
  } catch (const Error& e) {
    err << "error: " << one_line(e.what()) << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << one_line(e.what()) << '\n';
    return kExitSelectionError;
  }
  return kExitOk;
}

}  // namespace isexplore::cli
