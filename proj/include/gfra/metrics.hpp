#ifndef GFRA_METRICS_HPP
#define GFRA_METRICS_HPP

#include <optional>
#include <span>
#include <string>
#include <utility>

#include "gfra/degree_distribution.hpp"
#include "gfra/frame.hpp"

namespace gfra {

// Per-load aggregation across realizations. Throughput is reported both per
// RAF slot and per total frame slot (RAF + forwarding), since the load axis
// normalizes by the RAF alone.
struct MetricsReport {
  std::string protocol;
  double load = 0.0;
  double throughput_raf = 0.0;
  double throughput_rapc = 0.0;
  double pdr = 0.0;
  double plr = 0.0;
  double mean_delay_slots = 0.0;
  double delay_per_active = 0.0;  // slots per average active user per frame
  double delay_p95_ms = 0.0;
  double reliability = 0.0;
  double acr = 0.0;
  long realizations = 0;
  double ci_throughput = 0.0;  // 95% half-widths over realizations
  double ci_plr = 0.0;
  double ci_acr = 0.0;
};

struct LatencyBudget {
  double tau_req_ms = 0.0;   // hard-delay requirement
  double grid_freq_hz = 60.0;
  double delay_factor = 0.0; // tau, in grid cycles

  // Latency expressed as delay cycles of the grid waveform, tau / f.
  double cycle_latency_s() const { return delay_factor / grid_freq_hz; }
};

// S(G) = G * exp(-G); peaks at 1/e near G = 1.
double saloha_theory(double load);

// Delivery latency in ms, or nullopt for anything not decoded. For the
// frame-synchronous protocols this includes the wait to the frame boundary.
std::optional<double> latency_ms(const TransmissionRecord& record,
                                 const FrameParams& frame);

// P_R / P_G; an idle network (P_G = 0) counts as vacuous success.
// Throws Error{count_mismatch} when received exceeds generated.
double pdr(long received, long generated);
double plr(double pdr_value);

// PDR if the observed latency honors the hard-delay budget, else 0.
double reliability(double pdr_value, double tau_ms, const LatencyBudget& budget);

// Mean compliant fraction over slots with at least one active user
// (empty slots are skipped, not averaged as zero).
// Throws Error{negative_count} on negative inputs.
double acr(std::span<const std::pair<long, long>> slot_records);  // (compliant, active)

// bytes * 8 * (1 / tau_req_s) * M.
double bw_req(double packet_size_bytes, double tau_req_s, long devices);

// And-or tree fixed point for IRSA peeling in the infinite-frame limit:
// q_{i+1} = Lambda'(1 - e^{-G Lambda'(1) q_i}) / Lambda'(1) from q_0 = 1.
// Returns the residual user erasure probability Lambda(p) after `iters`
// rounds. Serves as the asymptotic oracle for the finite-frame simulation.
double irsa_density_evolution(const DegreeDistribution& dist, double load, int iters);

// Smallest load whose residual crosses 0.5, by bisection; the decoding
// threshold of the distribution (~0.94 for the default Lambda_8).
double irsa_threshold(const DegreeDistribution& dist, int iters = 200,
                      double lo = 0.1, double hi = 1.5, double tol = 1e-4);

} // namespace gfra

#endif
