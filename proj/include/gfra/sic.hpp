#ifndef GFRA_SIC_HPP
#define GFRA_SIC_HPP

#include <set>
#include <span>
#include <vector>

#include "gfra/frame.hpp"

namespace gfra {

struct DecodedEntry {
  UserId user_id;
  int iteration;  // cancellation round, 1-based; 0 for relay-forwarded packets
  int slot;       // frame-local slot the decode is attributed to
};

struct DecodingResult {
  std::vector<DecodedEntry> decoded;  // in decode order
  int iterations_used = 0;
  std::set<UserId> residual_users;

  bool contains(UserId user) const {
    for (const auto& e : decoded)
      if (e.user_id == user) return true;
    return false;
  }
};

// Forwarding-slot share owned by one connecting node.
struct CnAllocation {
  int cn_id = 0;
  int forward_budget = 0;
};

// Iterative cancellation: each round collects every slot of degree 1, decodes
// the users those slots expose, and removes all their edges. Stops at the
// fixed point or after max_iters rounds. When several singleton slots expose
// the same user in one round, the decode is attributed to the highest slot,
// matching the canonical worked example; rounds are emitted in slot order.
DecodingResult peel(const FrameGraph& graph, int max_iters);

// Local decoding at one connecting node: peel the node's visible subgraph and
// return the first min(budget, decoded) users in peeling order.
std::vector<UserId> cn_local_decode(const FrameGraph& cn_graph, int budget,
                                    int max_iters);

// Relay-assisted decoding: each connecting node is probed in order, its
// forwarded users are removed from the base-station graph and from every
// not-yet-probed node's graph, then the base station peels what is left.
// Forwarded packets are attributed to dedicated forwarding slots laid out
// consecutively from forward_slot_base (node j's slots follow node j-1's).
// Throws Error{unknown_user} if a node sees a user the base station does not.
DecodingResult network_decode(const FrameGraph& bs_graph,
                              std::span<const FrameGraph> cn_graphs,
                              std::span<const CnAllocation> allocations,
                              int max_iters, int forward_slot_base);

} // namespace gfra

#endif
