#ifndef GFRA_TRAFFIC_HPP
#define GFRA_TRAFFIC_HPP

#include <cstdint>
#include <vector>

#include "gfra/rng.hpp"

namespace gfra {

enum class TrafficModel { poisson, beta, uniform };

// Arrival-process settings following the 3GPP TR 37.868 machine-type models:
// model 1 activates devices uniformly over 60 s, model 2 through a
// Beta(3, 4) burst over 10 s; the stationary alternative is a per-slot
// Poisson stream at load G.
struct TrafficConfig {
  TrafficModel model = TrafficModel::poisson;
  long devices = 0;          // M; 0 lets the harness derive it from the load
  double window_s = 0.0;     // T_A; 0 picks the model default (60 s / 10 s)
  double beta_alpha = 3.0;
  double beta_beta = 4.0;
  int packet_size_bytes = 200;
  double load = 0.0;         // G, users per slot (poisson mode)

  double window_or_default() const {
    if (window_s > 0.0) return window_s;
    return model == TrafficModel::beta ? 10.0 : 60.0;
  }
};

// i.i.d. Poisson(G) count per slot.
std::vector<int> poisson_arrivals(double load, long n_slots, Rng& rng);

// Each of the M devices activates at t ~ Beta(alpha, beta) scaled to the
// window; counts are binned per slot. Slots past n_slots truncate the tail.
std::vector<int> beta_arrivals(long devices, double window_s, double alpha,
                               double beta, long n_slots, double slot_ms, Rng& rng);

// Activation times uniform over the window, binned per slot.
std::vector<int> uniform_arrivals(long devices, double window_s, long n_slots,
                                  double slot_ms, Rng& rng);

} // namespace gfra

#endif
