#include "gfra/frame.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "gfra/error.hpp"

namespace gfra {

const std::vector<AppProfile>& sg_app_profiles() {
  static const std::vector<AppProfile> table = {
      {"teleprotection_60hz", 8, 10},
      {"teleprotection_50hz", 10, 10},
      {"scada_core", 10, 20},
      {"teleprotection", 16, 15},
      {"synchrophasors", 20, 12},
      {"scada_medium", 100, 25},
      {"distribution_automation", 100, 26},
      {"dg_ds", 100, 27},
      {"mwf", 100, 30},
      {"business_voice", 200, 60},
      {"dynamic_line_rating", 200, 28},
      {"cctv", 200, 55},
      {"scada_da_dlr", 200, 45},
      {"business_data", 250, 70},
      {"ami", 250, 40},
      {"protection", 500, 80},
      {"many_others", 2000, 100},
  };
  return table;
}

const std::vector<AppProfile>& sg_app_profiles_relaxed() {
  static const std::vector<AppProfile> subset = [] {
    std::vector<AppProfile> out;
    for (const auto& p : sg_app_profiles())
      if (p.latency_ms >= 200.0) out.push_back(p);
    return out;
  }();
  return subset;
}

std::vector<int> select_slots(int n_raf, int d, Rng& rng) {
  if (d > n_raf) {
    std::ostringstream os;
    os << d << " replicas do not fit in " << n_raf << " slots";
    throw Error(ErrorCode::too_many_replicas, os.str());
  }
  std::vector<int> pool(n_raf);
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < d; ++i) {
    const int j = rng.range(i, n_raf - 1);
    std::swap(pool[i], pool[j]);
  }
  std::vector<int> out(pool.begin(), pool.begin() + d);
  std::sort(out.begin(), out.end());
  return out;
}

void FrameGraph::add_user(UserId user, std::span<const int> slots) {
  if (has_user(user)) {
    std::ostringstream os;
    os << "duplicate user id " << user;
    throw Error(ErrorCode::duplicate_user_id, os.str());
  }
  auto& list = user_slots_[user];
  list.assign(slots.begin(), slots.end());
  std::sort(list.begin(), list.end());
  for (int s : list) slot_users_[s].push_back(user);
  edges_ += list.size();
}

void FrameGraph::remove_user(UserId user) {
  auto it = user_slots_.find(user);
  if (it == user_slots_.end()) return;
  for (int s : it->second) {
    auto sit = slot_users_.find(s);
    auto& list = sit->second;
    list.erase(std::remove(list.begin(), list.end(), user), list.end());
    if (list.empty()) slot_users_.erase(sit);
  }
  edges_ -= it->second.size();
  user_slots_.erase(it);
}

bool FrameGraph::consistent() const {
  std::size_t cross = 0;
  for (const auto& [user, slots] : user_slots_) {
    for (int s : slots) {
      auto sit = slot_users_.find(s);
      if (sit == slot_users_.end()) return false;
      if (std::count(sit->second.begin(), sit->second.end(), user) != 1) return false;
      ++cross;
    }
  }
  std::size_t slot_edges = 0;
  for (const auto& [slot, users] : slot_users_) {
    slot_edges += users.size();
    for (UserId u : users) {
      auto uit = user_slots_.find(u);
      if (uit == user_slots_.end()) return false;
      if (std::count(uit->second.begin(), uit->second.end(), slot) != 1) return false;
    }
  }
  return cross == edges_ && slot_edges == edges_;
}

FrameGraph build_frame_graph(std::span<const TransmissionRecord> records) {
  FrameGraph g;
  for (const auto& rec : records) g.add_user(rec.user_id, rec.replica_slots);
  return g;
}

} // namespace gfra
