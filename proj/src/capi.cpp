#include "gfra.h"

#include <cstring>
#include <string>
#include <vector>

#include "gfra/config.hpp"
#include "gfra/error.hpp"
#include "gfra/runner.hpp"

struct gfra_experiment {
  gfra::ExperimentConfig config;
  int workers = 0;
};

struct gfra_reports {
  std::vector<gfra::MetricsReport> reports;
};

namespace {

thread_local std::string t_last_error;

gfra_status status_for(const gfra::Error& e) {
  using gfra::ErrorCode;
  switch (e.code()) {
    case ErrorCode::syntax_error:
    case ErrorCode::unknown_key:
    case ErrorCode::missing_section:
      return GFRA_ERR_PARSE;
    case ErrorCode::io_error:
      return GFRA_ERR_IO;
    default:
      return GFRA_ERR_INVALID;
  }
}

gfra_status fail(gfra_status status, const char* message) {
  t_last_error = message;
  return status;
}

template <typename Fn>
gfra_status guarded(Fn&& fn) {
  try {
    fn();
    t_last_error.clear();
    return GFRA_OK;
  } catch (const gfra::Error& e) {
    t_last_error = e.what();
    return status_for(e);
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return GFRA_ERR_INTERNAL;
  }
}

gfra_status copy_string(const std::string& value, char* buf, size_t cap) {
  if (buf == nullptr || cap == 0)
    return fail(GFRA_ERR_INVALID, "null output buffer");
  const size_t n = value.size() < cap - 1 ? value.size() : cap - 1;
  std::memcpy(buf, value.data(), n);
  buf[n] = '\0';
  return GFRA_OK;
}

} // namespace

extern "C" {

const char* gfra_version(void) { return "0.1.0"; }

const char* gfra_last_error(void) { return t_last_error.c_str(); }

gfra_status gfra_experiment_create(const char* config_json, gfra_experiment** out) {
  if (config_json == nullptr || out == nullptr)
    return fail(GFRA_ERR_INVALID, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto exp = new gfra_experiment{gfra::parse_config(config_json), 0};
    *out = exp;
  });
}

gfra_status gfra_experiment_create_from_file(const char* path, gfra_experiment** out) {
  if (path == nullptr || out == nullptr)
    return fail(GFRA_ERR_INVALID, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto exp = new gfra_experiment{gfra::load_config_file(path), 0};
    *out = exp;
  });
}

void gfra_experiment_destroy(gfra_experiment* exp) { delete exp; }

gfra_status gfra_experiment_set_seed(gfra_experiment* exp, uint64_t seed) {
  if (exp == nullptr) return fail(GFRA_ERR_INVALID, "null experiment");
  exp->config.seed = seed;
  return GFRA_OK;
}

gfra_status gfra_experiment_set_realizations(gfra_experiment* exp, long realizations) {
  if (exp == nullptr) return fail(GFRA_ERR_INVALID, "null experiment");
  if (realizations < 1) return fail(GFRA_ERR_INVALID, "realizations must be >= 1");
  exp->config.realizations = realizations;
  return GFRA_OK;
}

gfra_status gfra_experiment_set_workers(gfra_experiment* exp, int workers) {
  if (exp == nullptr) return fail(GFRA_ERR_INVALID, "null experiment");
  if (workers < 0) return fail(GFRA_ERR_INVALID, "workers must be >= 0");
  exp->workers = workers;
  return GFRA_OK;
}

gfra_status gfra_experiment_set_loads(gfra_experiment* exp, const double* loads,
                                      size_t count) {
  if (exp == nullptr || loads == nullptr || count == 0)
    return fail(GFRA_ERR_INVALID, "empty load list");
  for (size_t i = 0; i < count; ++i) {
    if (loads[i] <= 0.0) return fail(GFRA_ERR_INVALID, "loads must be > 0");
  }
  exp->config.load_sweep.assign(loads, loads + count);
  return GFRA_OK;
}

gfra_status gfra_experiment_set_output_path(gfra_experiment* exp, const char* path) {
  if (exp == nullptr || path == nullptr)
    return fail(GFRA_ERR_INVALID, "null argument");
  exp->config.output_path = path;
  return GFRA_OK;
}

gfra_status gfra_experiment_output_path(const gfra_experiment* exp, char* buf,
                                        size_t cap) {
  if (exp == nullptr) return fail(GFRA_ERR_INVALID, "null experiment");
  return copy_string(exp->config.output_path, buf, cap);
}

gfra_status gfra_experiment_protocol(const gfra_experiment* exp, char* buf,
                                     size_t cap) {
  if (exp == nullptr) return fail(GFRA_ERR_INVALID, "null experiment");
  return copy_string(gfra::protocol_name(exp->config.protocol), buf, cap);
}

gfra_status gfra_experiment_run(gfra_experiment* exp, gfra_reports** out) {
  if (exp == nullptr || out == nullptr)
    return fail(GFRA_ERR_INVALID, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto reports = new gfra_reports{gfra::run_experiment(exp->config, exp->workers)};
    *out = reports;
  });
}

void gfra_reports_destroy(gfra_reports* reports) { delete reports; }

size_t gfra_reports_count(const gfra_reports* reports) {
  return reports == nullptr ? 0 : reports->reports.size();
}

gfra_status gfra_reports_get(const gfra_reports* reports, size_t index,
                             gfra_report* out) {
  if (reports == nullptr || out == nullptr)
    return fail(GFRA_ERR_INVALID, "null argument");
  if (index >= reports->reports.size())
    return fail(GFRA_ERR_INVALID, "report index out of range");
  const auto& r = reports->reports[index];
  *out = gfra_report{r.load,
                     r.throughput_raf,
                     r.throughput_rapc,
                     r.pdr,
                     r.plr,
                     r.mean_delay_slots,
                     r.delay_per_active,
                     r.delay_p95_ms,
                     r.reliability,
                     r.acr,
                     r.realizations,
                     r.ci_throughput,
                     r.ci_plr,
                     r.ci_acr};
  return GFRA_OK;
}

gfra_status gfra_reports_write_csv(const gfra_reports* reports, const char* path) {
  if (reports == nullptr || path == nullptr)
    return fail(GFRA_ERR_INVALID, "null argument");
  return guarded([&] { gfra::write_csv(reports->reports, path); });
}

gfra_status gfra_plot_data_from_csv(const char* csv_path, const char* kind,
                                    const char* out_dir) {
  if (csv_path == nullptr || kind == nullptr || out_dir == nullptr)
    return fail(GFRA_ERR_INVALID, "null argument");
  return guarded([&] {
    const auto reports = gfra::read_csv(csv_path);
    gfra::emit_plot_data(reports, kind, out_dir);
  });
}

} // extern "C"
