#include "gfra/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gfra/error.hpp"

namespace gfra {

namespace {

void check_priority(int priority) {
  if (priority < 0 || priority > 100) {
    std::ostringstream os;
    os << "priority " << priority << " outside [0, 100]";
    throw Error(ErrorCode::priority_out_of_range, os.str());
  }
}

} // namespace

int priority_degree_cap(int priority, int d_max) {
  check_priority(priority);
  const int cap = static_cast<int>(std::lround(d_max * (100.0 - priority) / 100.0));
  return std::clamp(cap, 1, d_max);
}

int priority_backoff_limit(int priority, int b_off) {
  check_priority(priority);
  const int lim = static_cast<int>(std::lround(b_off * priority / 100.0));
  return std::clamp(lim, 1, b_off);
}

RapTopology assign_topology(std::span<const UserId> user_ids, const RapParams& rap,
                            const FrameParams& frame, Rng& rng) {
  RapTopology topo;
  if (rap.q <= 0) return topo;

  const int n_q = static_cast<int>(std::ceil(rap.eta * frame.n_raf));
  const int base = n_q / rap.q;
  const int extra = n_q % rap.q;
  for (int j = 0; j < rap.q; ++j)
    topo.allocations.push_back({j, base + (j < extra ? 1 : 0)});

  for (UserId user : user_ids) {
    std::vector<int> heard;
    for (int j = 0; j < rap.q; ++j) {
      if (rng.bernoulli(rap.p_vis)) heard.push_back(j);
    }
    if (!heard.empty()) topo.visibility[user] = std::move(heard);
  }
  return topo;
}

namespace {

// Replica placement shared by the IRSA and RapIRSA frames.
std::vector<TransmissionRecord> place_replicas(
    std::span<const TransmissionRecord> active_users, const DegreeDistribution& dist,
    const FrameParams& frame, Rng& rng, PriorityPolicy policy) {
  std::vector<TransmissionRecord> records(active_users.begin(), active_users.end());
  for (auto& rec : records) {
    const int cap = policy == PriorityPolicy::degree_cap
                        ? priority_degree_cap(rec.priority, dist.d_max())
                        : dist.d_max();
    const int d = dist.sample(std::min(cap, frame.n_raf), rng);
    rec.replica_slots = select_slots(frame.n_raf, d, rng);
    rec.outcome = OutcomeKind::pending;
    rec.resolved_slot = -1;
  }
  return records;
}

void apply_decode(std::vector<TransmissionRecord>& records,
                  const DecodingResult& result, long frame_start, long frame_end) {
  std::map<UserId, const DecodedEntry*> decoded;
  for (const auto& entry : result.decoded) decoded[entry.user_id] = &entry;
  for (auto& rec : records) {
    auto it = decoded.find(rec.user_id);
    if (it != decoded.end()) {
      rec.outcome = OutcomeKind::decoded;
      rec.resolved_slot = frame_start + it->second->slot;
    } else {
      rec.outcome = OutcomeKind::failed;
      rec.resolved_slot = frame_end;
    }
  }
}

} // namespace

FrameOutcome irsa_frame(std::span<const TransmissionRecord> active_users,
                        const DegreeDistribution& dist, const FrameParams& frame,
                        Rng& rng, long frame_start, PriorityPolicy policy) {
  FrameOutcome out;
  out.slots_used = frame.n_raf;
  out.records = place_replicas(active_users, dist, frame, rng, policy);
  const FrameGraph graph = build_frame_graph(out.records);
  out.decode_result = peel(graph, frame.max_sic_iters);
  apply_decode(out.records, out.decode_result, frame_start,
               frame_start + frame.n_raf - 1);
  return out;
}

FrameOutcome rapirsa_frame(std::span<const TransmissionRecord> active_users,
                           const DegreeDistribution& dist, const FrameParams& frame,
                           const RapParams&, const RapTopology& topology,
                           Rng& rng, long frame_start, PriorityPolicy policy) {
  FrameOutcome out;
  out.records = place_replicas(active_users, dist, frame, rng, policy);
  const FrameGraph bs_graph = build_frame_graph(out.records);

  std::vector<FrameGraph> cn_graphs(topology.allocations.size());
  for (const auto& rec : out.records) {
    auto it = topology.visibility.find(rec.user_id);
    if (it == topology.visibility.end()) continue;
    for (int j : it->second) cn_graphs[j].add_user(rec.user_id, rec.replica_slots);
  }

  out.decode_result = network_decode(bs_graph, cn_graphs, topology.allocations,
                                     frame.max_sic_iters, frame.n_raf);
  out.slots_used = frame.n_raf + topology.total_forward_slots();
  apply_decode(out.records, out.decode_result, frame_start,
               frame_start + out.slots_used - 1);
  return out;
}

int SalohaSim::user_backoff_limit(const TransmissionRecord& rec) const {
  return params_.priority_backoff
             ? priority_backoff_limit(rec.priority, params_.backoff_limit)
             : params_.backoff_limit;
}

FrameOutcome SalohaSim::run_window(long window_index,
                                   std::span<const TransmissionRecord> fresh_arrivals,
                                   Rng& rng) {
  FrameOutcome out;
  out.frame_index = window_index;
  out.slots_used = frame_.n_raf;

  const long start = window_index * frame_.n_raf;
  const long end = start + frame_.n_raf;

  auto fresh = fresh_arrivals.begin();
  for (long slot = start; slot < end; ++slot) {
    std::vector<TransmissionRecord> transmitters;
    while (fresh != fresh_arrivals.end() && fresh->arrival_slot == slot) {
      transmitters.push_back(*fresh);
      ++fresh;
    }
    if (auto it = due_.find(slot); it != due_.end()) {
      for (auto& rec : it->second) transmitters.push_back(std::move(rec));
      due_.erase(it);
    }
    if (transmitters.empty()) continue;

    if (transmitters.size() == 1) {
      auto& rec = transmitters.front();
      rec.outcome = OutcomeKind::decoded;
      rec.resolved_slot = slot;
      out.decode_result.decoded.push_back(
          {rec.user_id, 1, static_cast<int>(slot - start)});
      out.records.push_back(std::move(rec));
      continue;
    }
    for (auto& rec : transmitters) {
      if (params_.fresh_only) {
        rec.outcome = OutcomeKind::failed;
        rec.resolved_slot = slot;
        out.decode_result.residual_users.insert(rec.user_id);
        out.records.push_back(std::move(rec));
      } else {
        const long retry = slot + rng.range(1, user_backoff_limit(rec));
        due_[retry].push_back(std::move(rec));
      }
    }
  }
  out.decode_result.iterations_used = out.decode_result.decoded.empty() ? 0 : 1;
  return out;
}

std::vector<TransmissionRecord> SalohaSim::flush(long horizon_slot) {
  std::vector<TransmissionRecord> failed;
  for (auto& [slot, users] : due_) {
    for (auto& rec : users) {
      rec.outcome = OutcomeKind::failed;
      rec.resolved_slot = horizon_slot;
      failed.push_back(std::move(rec));
    }
  }
  due_.clear();
  return failed;
}

std::size_t SalohaSim::backlog_size() const {
  std::size_t n = 0;
  for (const auto& [slot, users] : due_) n += users.size();
  return n;
}

} // namespace gfra
