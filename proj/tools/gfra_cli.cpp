// Command-line front end. Talks to the simulator exclusively through the
// C API in gfra.h, the same surface other language bindings would use.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gfra.h"

namespace {

struct ExperimentDeleter {
  void operator()(gfra_experiment* e) const { gfra_experiment_destroy(e); }
};
struct ReportsDeleter {
  void operator()(gfra_reports* r) const { gfra_reports_destroy(r); }
};
using ExperimentPtr = std::unique_ptr<gfra_experiment, ExperimentDeleter>;
using ReportsPtr = std::unique_ptr<gfra_reports, ReportsDeleter>;

int die(const char* context) {
  std::fprintf(stderr, "gfra: %s: %s\n", context, gfra_last_error());
  return 1;
}

ExperimentPtr open_experiment(const std::string& config_path) {
  gfra_experiment* raw = nullptr;
  if (gfra_experiment_create_from_file(config_path.c_str(), &raw) != GFRA_OK)
    return nullptr;
  return ExperimentPtr(raw);
}

int run_and_write(gfra_experiment* exp, const std::string& out_dir) {
  char out_path[4096];
  if (gfra_experiment_output_path(exp, out_path, sizeof(out_path)) != GFRA_OK)
    return die("output path");
  std::string resolved = out_path;
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    resolved = (std::filesystem::path(out_dir) /
                std::filesystem::path(out_path).filename())
                   .string();
  }

  gfra_reports* raw = nullptr;
  if (gfra_experiment_run(exp, &raw) != GFRA_OK) return die("run");
  ReportsPtr reports(raw);

  char protocol[64];
  gfra_experiment_protocol(exp, protocol, sizeof(protocol));
  const size_t n = gfra_reports_count(reports.get());
  for (size_t i = 0; i < n; ++i) {
    gfra_report r;
    if (gfra_reports_get(reports.get(), i, &r) != GFRA_OK) return die("report");
    std::printf(
        "%s G=%.4g S_raf=%.4g S_rapc=%.4g PLR=%.4g delay=%.4g slots "
        "p95=%.4g ms R=%.4g ACR=%.4g (n=%ld)\n",
        protocol, r.load, r.throughput_raf, r.throughput_rapc, r.plr,
        r.mean_delay_slots, r.delay_p95_ms, r.reliability, r.acr, r.realizations);
  }

  if (gfra_reports_write_csv(reports.get(), resolved.c_str()) != GFRA_OK)
    return die("write csv");
  std::printf("wrote %s\n", resolved.c_str());
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo simulator for grant-free random access protocols"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string loads_arg;
  std::uint64_t seed = 0;
  long realizations = 0;
  int workers = 0;
  bool seed_set = false;

  auto add_run_options = [&](CLI::App* cmd) {
    cmd->add_option("config", config_path, "experiment config (JSON)")->required();
    cmd->add_option("--out", out_dir, "directory for the results CSV");
    cmd->add_option("--seed", seed, "override the experiment seed")
        ->each([&](const std::string&) { seed_set = true; });
    cmd->add_option("--realizations", realizations,
                    "override the realization count");
    cmd->add_option("--workers", workers, "worker threads (0 = auto)");
  };

  CLI::App* run_cmd = app.add_subcommand("run", "run the configured load sweep");
  add_run_options(run_cmd);

  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "run with an inline load list override");
  add_run_options(sweep_cmd);
  sweep_cmd->add_option("--loads", loads_arg, "comma-separated load values")
      ->required();

  CLI::App* validate_cmd =
      app.add_subcommand("validate", "parse a config and report problems");
  validate_cmd->add_option("config", config_path, "experiment config (JSON)")
      ->required();

  std::string csv_path;
  std::string plot_kind = "throughput";
  std::string plot_out = ".";
  CLI::App* plot_cmd =
      app.add_subcommand("plot-data", "emit per-protocol (G, metric) series");
  plot_cmd->add_option("csv", csv_path, "results CSV produced by run")->required();
  plot_cmd->add_option("--kind", plot_kind, "throughput | plr | delay | acr");
  plot_cmd->add_option("--out", plot_out, "output directory");

  CLI11_PARSE(app, argc, argv);

  if (validate_cmd->parsed()) {
    ExperimentPtr exp = open_experiment(config_path);
    if (!exp) return die("validate");
    std::printf("OK: %s\n", config_path.c_str());
    return 0;
  }

  if (plot_cmd->parsed()) {
    if (gfra_plot_data_from_csv(csv_path.c_str(), plot_kind.c_str(),
                                plot_out.c_str()) != GFRA_OK)
      return die("plot-data");
    std::printf("wrote %s series under %s\n", plot_kind.c_str(), plot_out.c_str());
    return 0;
  }

  ExperimentPtr exp = open_experiment(config_path);
  if (!exp) return die("config");

  if (seed_set && gfra_experiment_set_seed(exp.get(), seed) != GFRA_OK)
    return die("seed");
  if (realizations > 0 &&
      gfra_experiment_set_realizations(exp.get(), realizations) != GFRA_OK)
    return die("realizations");
  if (workers > 0 && gfra_experiment_set_workers(exp.get(), workers) != GFRA_OK)
    return die("workers");

  if (sweep_cmd->parsed()) {
    std::vector<double> loads;
    std::stringstream ss(loads_arg);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        loads.push_back(std::stod(item));
      } catch (const std::exception&) {
        std::fprintf(stderr, "gfra: bad load value \"%s\"\n", item.c_str());
        return 1;
      }
    }
    if (gfra_experiment_set_loads(exp.get(), loads.data(), loads.size()) != GFRA_OK)
      return die("loads");
  }

  return run_and_write(exp.get(), out_dir);
}
