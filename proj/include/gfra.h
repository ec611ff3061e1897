/*
 * C interface to the grant-free random access simulator. The library core is
 * C++; everything here is plain C so the simulator can be driven from other
 * languages (or dlopen'd) without touching C++ ABI.
 *
 * Conventions:
 *   - every function returns a gfra_status (GFRA_OK on success);
 *   - gfra_last_error() describes the most recent failure on this thread;
 *   - objects are opaque handles released with the matching _destroy call.
 */
#ifndef GFRA_H
#define GFRA_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gfra_status {
  GFRA_OK = 0,
  GFRA_ERR_INVALID = 1, /* bad argument or domain violation */
  GFRA_ERR_PARSE = 2,   /* config rejected (syntax, unknown key, ...) */
  GFRA_ERR_IO = 3,      /* file could not be read or written */
  GFRA_ERR_INTERNAL = 4
} gfra_status;

typedef struct gfra_experiment gfra_experiment;
typedef struct gfra_reports gfra_reports;

/* Aggregated metrics for one load point. */
typedef struct gfra_report {
  double load;
  double throughput_raf;  /* packets per RAF slot */
  double throughput_rapc; /* packets per total frame slot */
  double pdr;
  double plr;
  double mean_delay_slots;
  double delay_per_active;
  double delay_p95_ms;
  double reliability;
  double acr;
  long realizations;
  double ci_throughput; /* 95% half-widths over realizations */
  double ci_plr;
  double ci_acr;
} gfra_report;

const char* gfra_version(void);

/* Message for the last failing call on the current thread ("" if none). */
const char* gfra_last_error(void);

/* Builds an experiment from JSON text / a JSON file. Parsing is strict:
 * unknown keys and out-of-range values are rejected. */
gfra_status gfra_experiment_create(const char* config_json, gfra_experiment** out);
gfra_status gfra_experiment_create_from_file(const char* path, gfra_experiment** out);
void gfra_experiment_destroy(gfra_experiment* exp);

/* Overrides applied on top of the parsed config. */
gfra_status gfra_experiment_set_seed(gfra_experiment* exp, uint64_t seed);
gfra_status gfra_experiment_set_realizations(gfra_experiment* exp, long realizations);
gfra_status gfra_experiment_set_workers(gfra_experiment* exp, int workers);
gfra_status gfra_experiment_set_loads(gfra_experiment* exp, const double* loads,
                                      size_t count);
gfra_status gfra_experiment_set_output_path(gfra_experiment* exp, const char* path);

/* Copies the configured output path into buf (truncating if needed). */
gfra_status gfra_experiment_output_path(const gfra_experiment* exp, char* buf,
                                        size_t cap);
gfra_status gfra_experiment_protocol(const gfra_experiment* exp, char* buf,
                                     size_t cap);

/* Runs the full load sweep; one report per load. Deterministic for a given
 * (config, seed) regardless of worker count. */
gfra_status gfra_experiment_run(gfra_experiment* exp, gfra_reports** out);

void gfra_reports_destroy(gfra_reports* reports);
size_t gfra_reports_count(const gfra_reports* reports);
gfra_status gfra_reports_get(const gfra_reports* reports, size_t index,
                             gfra_report* out);
gfra_status gfra_reports_write_csv(const gfra_reports* reports, const char* path);

/* Emits two-column (G, metric) series files from a results CSV.
 * kind: "throughput", "plr", "delay", or "acr". */
gfra_status gfra_plot_data_from_csv(const char* csv_path, const char* kind,
                                    const char* out_dir);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* GFRA_H */
