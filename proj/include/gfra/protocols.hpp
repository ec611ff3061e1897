#ifndef GFRA_PROTOCOLS_HPP
#define GFRA_PROTOCOLS_HPP

#include <deque>
#include <map>
#include <span>
#include <vector>

#include "gfra/degree_distribution.hpp"
#include "gfra/frame.hpp"
#include "gfra/sic.hpp"

namespace gfra {

struct RapParams {
  int q = 0;          // number of connecting nodes
  double eta = 0.25;  // fraction of extra forwarding slots relative to the RAF
  double p_vis = 0.5; // per (user, cN) visibility probability
};

struct RapTopology {
  std::map<UserId, std::vector<int>> visibility;  // user -> hearing cN ids
  std::vector<CnAllocation> allocations;

  int total_forward_slots() const {
    int n = 0;
    for (const auto& a : allocations) n += a.forward_budget;
    return n;
  }
};

struct SalohaParams {
  int backoff_limit = 50;        // B_off, in slots
  bool fresh_only = false;       // drop collided users instead of backlogging
  bool priority_backoff = false; // per-user limit from the record's priority
};

struct FrameOutcome {
  long frame_index = 0;
  std::vector<TransmissionRecord> records;  // final outcomes
  long slots_used = 0;
  DecodingResult decode_result;
};

// Priority level to replica cap: clamp(round(d_m * (100 - p) / 100), 1, d_m).
// p = 0 keeps the full cap, p = 100 forces a single attempt.
int priority_degree_cap(int priority, int d_max);

// Priority level to backoff cap: clamp(round(b_off * p / 100), 1, b_off).
// High priority (small p) retries almost immediately.
int priority_backoff_limit(int priority, int b_off);

enum class PriorityPolicy { none, degree_cap };

// Bernoulli visibility per (user, cN); ceil(eta * n_raf) forwarding slots
// split round-robin, the first (n mod q) nodes taking one extra.
RapTopology assign_topology(std::span<const UserId> user_ids, const RapParams& rap,
                            const FrameParams& frame, Rng& rng);

// One IRSA frame: draw a degree and replica slots per user, build the frame
// graph, peel. Decoded records get a global decode slot of
// frame_start + attributed slot. slots_used = n_raf.
FrameOutcome irsa_frame(std::span<const TransmissionRecord> active_users,
                        const DegreeDistribution& dist, const FrameParams& frame,
                        Rng& rng, long frame_start = 0,
                        PriorityPolicy policy = PriorityPolicy::none);

// One RapIRSA frame: replicas exactly as in irsa_frame, each cN sees the
// subgraph of its visible users, decoding runs relay-first then BS.
// slots_used = n_raf + n_q; forwarded packets decode in slots >= n_raf.
FrameOutcome rapirsa_frame(std::span<const TransmissionRecord> active_users,
                           const DegreeDistribution& dist, const FrameParams& frame,
                           const RapParams& rap, const RapTopology& topology,
                           Rng& rng, long frame_start = 0,
                           PriorityPolicy policy = PriorityPolicy::none);

// Slot-level S-ALOHA over windows of n_raf slots. Fresh users transmit in
// their arrival slot; collided users draw a uniform backoff in
// [1, backoff_limit] and retry when it expires, possibly in a later window.
// The backlog persists across windows; flush() fails whatever is still
// pending at the horizon.
class SalohaSim {
public:
  SalohaSim(SalohaParams params, FrameParams frame)
      : params_(params), frame_(frame) {}

  FrameOutcome run_window(long window_index,
                          std::span<const TransmissionRecord> fresh_arrivals,
                          Rng& rng);

  // Marks every still-pending user failed as of `horizon_slot`.
  std::vector<TransmissionRecord> flush(long horizon_slot);

  std::size_t backlog_size() const;

private:
  int user_backoff_limit(const TransmissionRecord& rec) const;

  SalohaParams params_;
  FrameParams frame_;
  std::map<long, std::vector<TransmissionRecord>> due_;  // retry slot -> users
};

} // namespace gfra

#endif
