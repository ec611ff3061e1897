#include "gfra/metrics.hpp"

#include <cmath>
#include <sstream>

#include "gfra/error.hpp"

namespace gfra {

double saloha_theory(double load) { return load * std::exp(-load); }

std::optional<double> latency_ms(const TransmissionRecord& record,
                                 const FrameParams& frame) {
  if (record.outcome != OutcomeKind::decoded) return std::nullopt;
  return static_cast<double>(record.resolved_slot - record.arrival_slot) *
         frame.slot_ms;
}

double pdr(long received, long generated) {
  if (received > generated) {
    std::ostringstream os;
    os << "received " << received << " exceeds generated " << generated;
    throw Error(ErrorCode::count_mismatch, os.str());
  }
  if (generated == 0) return 1.0;
  return static_cast<double>(received) / static_cast<double>(generated);
}

double plr(double pdr_value) { return 1.0 - pdr_value; }

double reliability(double pdr_value, double tau_ms, const LatencyBudget& budget) {
  return tau_ms <= budget.tau_req_ms ? pdr_value : 0.0;
}

double acr(std::span<const std::pair<long, long>> slot_records) {
  double ratio_sum = 0.0;
  long populated = 0;
  for (const auto& [compliant, active] : slot_records) {
    if (compliant < 0 || active < 0)
      throw Error(ErrorCode::negative_count, "negative user count");
    if (compliant > active)
      throw Error(ErrorCode::count_mismatch, "compliant count exceeds active count");
    if (active == 0) continue;
    ratio_sum += static_cast<double>(compliant) / static_cast<double>(active);
    ++populated;
  }
  return populated == 0 ? 0.0 : ratio_sum / static_cast<double>(populated);
}

double bw_req(double packet_size_bytes, double tau_req_s, long devices) {
  return packet_size_bytes * 8.0 * (1.0 / tau_req_s) * static_cast<double>(devices);
}

double irsa_density_evolution(const DegreeDistribution& dist, double load, int iters) {
  const double mean_deg = dist.mean_degree();
  const double mu = load * mean_deg;
  double q = 1.0;
  double p = 1.0 - std::exp(-mu);
  for (int i = 0; i < iters; ++i) {
    p = 1.0 - std::exp(-mu * q);
    q = dist.eval_derivative(p) / mean_deg;
  }
  return dist.eval(p);
}

double irsa_threshold(const DegreeDistribution& dist, int iters, double lo,
                      double hi, double tol) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (irsa_density_evolution(dist, mid, iters) > 0.5)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

} // namespace gfra
