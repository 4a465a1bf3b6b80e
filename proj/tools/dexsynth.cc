// Command-line front end: synthesize, evaluate, export, validate.

#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "dexsynth/common/error.h"
#include "dexsynth/pipeline/commands.h"

namespace fs = std::filesystem;
using namespace dexsynth::pipeline;

int main(int argc, char** argv) {
  CLI::App app{"Grasp synthesis from object-centric contact maps"};
  app.require_subcommand(1);

  std::string config, records, out, what = "scene";
  std::optional<int> workers;
  std::optional<std::string> output_dir;

  auto* synth = app.add_subcommand("synthesize", "generate grasps for every configured object");
  synth->add_option("--config", config, "run configuration (JSON)")->required();
  synth->add_option("--workers", workers, "worker threads (default: config, then $DEXSYNTH_WORKERS, then 1)");
  synth->add_option("--out", output_dir, "override the configured output directory");

  auto* eval = app.add_subcommand("evaluate", "recompute stability and diversity metrics");
  eval->add_option("--records", records, "records.jsonl from synthesize")->required();
  eval->add_option("--config", config, "run configuration (JSON)")->required();
  eval->add_option("--out", out, "metrics CSV path (default: stdout only)");

  auto* exp = app.add_subcommand("export", "write scenes or contact heatmaps for offline viewing");
  exp->add_option("--records", records, "records.jsonl from synthesize")->required();
  exp->add_option("--out", out, "output directory")->required();
  exp->add_option("--what", what, "scene | contact-heatmap")->check(CLI::IsMember({"scene", "contact-heatmap"}));

  auto* val = app.add_subcommand("validate", "check a configuration and print effective settings");
  val->add_option("--config", config, "run configuration (JSON)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) {
      std::optional<fs::path> dir;
      if (output_dir) dir = fs::path(*output_dir);
      const auto s = cmd_synthesize(config, workers, dir, std::cerr);
      std::cout << "objects " << s.objects << " (failed " << s.failed_objects << "), contacts " << s.contacts
                << " (failed " << s.failed_contacts << "), records " << s.records << " -> "
                << s.records_path.string() << '\n';
      return s.records > 0 ? 0 : 1;
    }
    if (eval->parsed()) {
      const auto metrics = cmd_evaluate(records, config);
      write_metrics_csv(std::cout, metrics);
      if (!out.empty()) {
        std::ofstream f(out);
        if (!f) throw dexsynth::Error("cannot open " + out);
        write_metrics_csv(f, metrics);
      }
      return 0;
    }
    if (exp->parsed()) {
      const auto files = cmd_export(records, out, what == "scene" ? ExportKind::kScene : ExportKind::kContactHeatmap);
      std::cout << "wrote " << files.size() << " files to " << out << '\n';
      return 0;
    }
    if (val->parsed()) {
      std::cout << cmd_validate(config).dump(2) << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
