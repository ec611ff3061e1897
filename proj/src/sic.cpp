#include "gfra/sic.hpp"

#include <map>
#include <sstream>

#include "gfra/error.hpp"

namespace gfra {

DecodingResult peel(const FrameGraph& graph, int max_iters) {
  DecodingResult result;
  FrameGraph work = graph;
  for (const auto& [user, slots] : graph.users()) result.residual_users.insert(user);

  for (int iter = 1; iter <= max_iters; ++iter) {
    // Snapshot this round's singletons before any removal so the round is
    // insensitive to processing order.
    std::map<UserId, int> exposed;  // user -> attributed slot (last singleton wins)
    for (const auto& [slot, users] : work.slots()) {
      if (users.size() == 1) exposed[users.front()] = slot;
    }
    if (exposed.empty()) break;
    result.iterations_used = iter;

    std::map<int, UserId> by_slot;
    for (const auto& [user, slot] : exposed) by_slot[slot] = user;
    for (const auto& [slot, user] : by_slot) {
      result.decoded.push_back({user, iter, slot});
      result.residual_users.erase(user);
      work.remove_user(user);
    }
  }
  return result;
}

std::vector<UserId> cn_local_decode(const FrameGraph& cn_graph, int budget,
                                    int max_iters) {
  std::vector<UserId> forwarded;
  if (budget <= 0) return forwarded;
  const DecodingResult local = peel(cn_graph, max_iters);
  for (const auto& entry : local.decoded) {
    forwarded.push_back(entry.user_id);
    if (static_cast<int>(forwarded.size()) == budget) break;
  }
  return forwarded;
}

DecodingResult network_decode(const FrameGraph& bs_graph,
                              std::span<const FrameGraph> cn_graphs,
                              std::span<const CnAllocation> allocations,
                              int max_iters, int forward_slot_base) {
  if (cn_graphs.size() != allocations.size())
    throw Error(ErrorCode::invalid_argument,
                "one allocation required per connecting-node graph");
  for (const auto& g : cn_graphs) {
    for (const auto& [user, slots] : g.users()) {
      if (!bs_graph.has_user(user)) {
        std::ostringstream os;
        os << "user " << user << " visible to a connecting node but not to the BS";
        throw Error(ErrorCode::unknown_user, os.str());
      }
    }
  }

  DecodingResult result;
  for (const auto& [user, slots] : bs_graph.users()) result.residual_users.insert(user);

  FrameGraph bs = bs_graph;
  std::vector<FrameGraph> locals(cn_graphs.begin(), cn_graphs.end());

  int next_forward_slot = forward_slot_base;
  for (std::size_t j = 0; j < locals.size(); ++j) {
    const std::vector<UserId> forwarded =
        cn_local_decode(locals[j], allocations[j].forward_budget, max_iters);
    for (UserId user : forwarded) {
      result.decoded.push_back({user, 0, next_forward_slot++});
      result.residual_users.erase(user);
      bs.remove_user(user);
      for (std::size_t k = j + 1; k < locals.size(); ++k) locals[k].remove_user(user);
    }
    // Unused budget still occupies its slots in the frame layout.
    next_forward_slot += allocations[j].forward_budget - static_cast<int>(forwarded.size());
  }

  const DecodingResult bs_result = peel(bs, max_iters);
  result.iterations_used = bs_result.iterations_used;
  for (const auto& entry : bs_result.decoded) {
    result.decoded.push_back(entry);
    result.residual_users.erase(entry.user_id);
  }
  return result;
}

} // namespace gfra
