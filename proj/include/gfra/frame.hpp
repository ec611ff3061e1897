#ifndef GFRA_FRAME_HPP
#define GFRA_FRAME_HPP

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "gfra/rng.hpp"

namespace gfra {

using UserId = std::uint32_t;

struct FrameParams {
  int n_raf = 50;          // RAF length in slots
  double slot_ms = 1.0;    // slot duration
  int max_sic_iters = 20;  // cancellation iteration cap
};

enum class OutcomeKind { pending, decoded, failed };

struct TransmissionRecord {
  UserId user_id = 0;
  long arrival_slot = 0;              // global slot of activation
  std::vector<int> replica_slots;     // distinct, within [0, n_raf)
  int priority = 0;                   // 0 = max, 100 = min
  double latency_budget_ms = 0.0;     // hard-delay requirement
  OutcomeKind outcome = OutcomeKind::pending;
  // Decode slot when decoded; the slot the packet's story ended (frame end,
  // drop, or horizon) when failed. Global, >= arrival_slot.
  long resolved_slot = -1;
};

struct AppProfile {
  std::string name;
  double latency_ms = 0.0;
  int priority = 0;
};

// Latency / priority catalogue for smart-grid application classes
// (0 = highest priority, 100 = lowest).
const std::vector<AppProfile>& sg_app_profiles();

// Subset of the catalogue whose budgets admit frame-synchronous access at the
// default 50 ms frame (budget >= wait + two frame durations).
const std::vector<AppProfile>& sg_app_profiles_relaxed();

// Exactly d distinct slot indices in [0, n_raf), uniform over d-subsets.
// Throws Error{too_many_replicas} when d > n_raf. Consumes d integer draws.
std::vector<int> select_slots(int n_raf, int d, Rng& rng);

// Bipartite user/slot graph of one MAC frame. Both adjacency directions are
// kept so the decoders can peel either side; they stay mutually consistent.
class FrameGraph {
public:
  void add_user(UserId user, std::span<const int> slots);
  void remove_user(UserId user);

  bool has_user(UserId user) const { return user_slots_.count(user) != 0; }
  std::size_t user_count() const { return user_slots_.size(); }
  std::size_t edge_count() const { return edges_; }

  const std::map<UserId, std::vector<int>>& users() const { return user_slots_; }
  const std::map<int, std::vector<UserId>>& slots() const { return slot_users_; }

  int slot_degree(int slot) const {
    auto it = slot_users_.find(slot);
    return it == slot_users_.end() ? 0 : static_cast<int>(it->second.size());
  }

  // Full cross-scan of both edge lists; true iff every edge appears on both
  // sides exactly once.
  bool consistent() const;

private:
  std::map<UserId, std::vector<int>> user_slots_;
  std::map<int, std::vector<UserId>> slot_users_;
  std::size_t edges_ = 0;
};

// Throws Error{duplicate_user_id} on a repeated user id.
FrameGraph build_frame_graph(std::span<const TransmissionRecord> records);

} // namespace gfra

#endif
