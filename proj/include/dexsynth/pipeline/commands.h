#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dexsynth/pipeline/config.h"
#include "dexsynth/pipeline/records.h"

namespace dexsynth::pipeline {

struct SynthesizeSummary {
  int objects = 0;
  int failed_objects = 0;
  int contacts = 0;
  int failed_contacts = 0;
  int records = 0;
  std::filesystem::path records_path;
};

/// Generates contacts and grasps for every configured object and writes
/// records.jsonl, manifest.json, clouds/ and contacts/ into the output
/// directory. Per-object and per-contact failures are logged and skipped.
SynthesizeSummary cmd_synthesize(const std::filesystem::path& config_path, std::optional<int> workers,
                                 std::optional<std::filesystem::path> output_dir, std::ostream& log);

struct HandMetrics {
  std::string hand;
  int total = 0;
  int successes = 0;
  double success_rate = 0.0;
  std::optional<double> diversity;              // rad, over successful grasps
  std::optional<double> translation_diversity;  // m
  double mean_penetration = 0.0;
  double max_penetration = 0.0;
};

/// Re-runs the stability test with the config's evaluation parameters and
/// aggregates per-hand metrics. Throws on an empty record set.
std::vector<HandMetrics> cmd_evaluate(const std::filesystem::path& records_path,
                                      const std::filesystem::path& config_path);

void write_metrics_csv(std::ostream& out, const std::vector<HandMetrics>& metrics);

/// Full consistency check; throws on the first problem. On success returns
/// the effective configuration.
nlohmann::json cmd_validate(const std::filesystem::path& config_path);

enum class ExportKind { kScene, kContactHeatmap };

/// Writes one OBJ per record (scene) or one colored PLY per distinct contact
/// map (contact-heatmap). Returns the written paths.
std::vector<std::filesystem::path> cmd_export(const std::filesystem::path& records_path,
                                              const std::filesystem::path& out_dir, ExportKind kind);

}  // namespace dexsynth::pipeline
