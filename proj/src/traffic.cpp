#include "gfra/traffic.hpp"

#include <cmath>

namespace gfra {

namespace {

std::vector<int> bin_activations(long devices, double window_s, long n_slots,
                                 double slot_ms, auto&& draw_time) {
  std::vector<int> counts(static_cast<std::size_t>(n_slots), 0);
  const double window_ms = window_s * 1000.0;
  for (long i = 0; i < devices; ++i) {
    const double t_ms = draw_time() * window_ms;
    const long slot = static_cast<long>(t_ms / slot_ms);
    if (slot >= 0 && slot < n_slots) ++counts[static_cast<std::size_t>(slot)];
  }
  return counts;
}

} // namespace

std::vector<int> poisson_arrivals(double load, long n_slots, Rng& rng) {
  std::vector<int> counts(static_cast<std::size_t>(n_slots), 0);
  for (auto& c : counts) c = rng.poisson(load);
  return counts;
}

std::vector<int> beta_arrivals(long devices, double window_s, double alpha,
                               double beta, long n_slots, double slot_ms, Rng& rng) {
  return bin_activations(devices, window_s, n_slots, slot_ms,
                         [&] { return rng.beta(alpha, beta); });
}

std::vector<int> uniform_arrivals(long devices, double window_s, long n_slots,
                                  double slot_ms, Rng& rng) {
  return bin_activations(devices, window_s, n_slots, slot_ms,
                         [&] { return rng.uniform(); });
}

} // namespace gfra
