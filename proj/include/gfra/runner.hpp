#ifndef GFRA_RUNNER_HPP
#define GFRA_RUNNER_HPP

#include <span>
#include <string>
#include <vector>

#include "gfra/config.hpp"
#include "gfra/metrics.hpp"

namespace gfra {

// Runs every load in the sweep, `realizations` seeded realizations each
// (realization r uses seed XOR r), aggregating one report per load.
// Realizations execute on `workers` threads (0 = pick automatically); the
// result is identical for any worker count.
std::vector<MetricsReport> run_experiment(const ExperimentConfig& cfg,
                                          int workers = 0);

// Header plus one row per report, 6 significant digits, newline-terminated.
std::string csv_string(std::span<const MetricsReport> reports);
void write_csv(std::span<const MetricsReport> reports, const std::string& path);

// Reads a CSV produced by write_csv (used by the plot-data command).
std::vector<MetricsReport> read_csv(const std::string& path);

// Two-column (G, metric) series per protocol, one file per series, under
// out_dir. kind is one of throughput / plr / delay / acr; the throughput kind
// also emits the analytic S-ALOHA curve and the asymptotic IRSA curve.
void emit_plot_data(std::span<const MetricsReport> reports, const std::string& kind,
                    const std::string& out_dir);

} // namespace gfra

#endif
