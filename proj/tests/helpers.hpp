#ifndef GFRA_TEST_HELPERS_HPP
#define GFRA_TEST_HELPERS_HPP

#include <cmath>
#include <set>
#include <vector>

#include "gfra/frame.hpp"
#include "gfra/rng.hpp"
#include "gfra/sic.hpp"

namespace testutil {

// Wilson-Hilferty approximation of the chi-squared quantile, good to a few
// tenths for the dof used here. p = 0.999 gives the p > 0.001 rejection bar.
inline double chi2_quantile(double p, int dof) {
  // inverse normal via Acklam's rational approximation (central region is
  // enough for the quantiles used in the tests)
  auto inv_norm = [](double q) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    if (q < plow) {
      const double u = std::sqrt(-2.0 * std::log(q));
      return (((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
             ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
    }
    if (q > 1.0 - plow) {
      const double u = std::sqrt(-2.0 * std::log(1.0 - q));
      return -(((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
             ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
    }
    const double u = q - 0.5;
    const double t = u * u;
    return (((((a[0] * t + a[1]) * t + a[2]) * t + a[3]) * t + a[4]) * t + a[5]) * u /
           (((((b[0] * t + b[1]) * t + b[2]) * t + b[3]) * t + b[4]) * t + 1.0);
  };
  const double z = inv_norm(p);
  const double k = static_cast<double>(dof);
  const double term = 1.0 - 2.0 / (9.0 * k) + z * std::sqrt(2.0 / (9.0 * k));
  return k * term * term * term;
}

// Goodness-of-fit statistic against expected probabilities.
inline double chi2_statistic(const std::vector<long>& observed,
                             const std::vector<double>& expected_probs,
                             long total) {
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double expected = expected_probs[i] * static_cast<double>(total);
    const double diff = static_cast<double>(observed[i]) - expected;
    stat += diff * diff / expected;
  }
  return stat;
}

inline std::set<gfra::UserId> decoded_set(const gfra::DecodingResult& result) {
  std::set<gfra::UserId> out;
  for (const auto& e : result.decoded) out.insert(e.user_id);
  return out;
}

// Reference peeler: cancels exactly one singleton slot at a time, chosen by
// `pick` from the currently available singleton slots. Any pick policy must
// reach the same decoded set as the library decoder.
template <typename Pick>
std::set<gfra::UserId> one_at_a_time_peel(const gfra::FrameGraph& graph, Pick&& pick) {
  gfra::FrameGraph work = graph;
  std::set<gfra::UserId> decoded;
  for (;;) {
    std::vector<int> singles;
    for (const auto& [slot, users] : work.slots())
      if (users.size() == 1) singles.push_back(slot);
    if (singles.empty()) break;
    const int slot = pick(singles);
    const gfra::UserId user = work.slots().at(slot).front();
    decoded.insert(user);
    work.remove_user(user);
  }
  return decoded;
}

inline std::set<gfra::UserId> naive_peel_first(const gfra::FrameGraph& graph) {
  return one_at_a_time_peel(graph, [](const std::vector<int>& s) { return s.front(); });
}

inline std::set<gfra::UserId> naive_peel_last(const gfra::FrameGraph& graph) {
  return one_at_a_time_peel(graph, [](const std::vector<int>& s) { return s.back(); });
}

inline std::set<gfra::UserId> naive_peel_random(const gfra::FrameGraph& graph,
                                                gfra::Rng& rng) {
  return one_at_a_time_peel(graph, [&](const std::vector<int>& s) {
    return s[rng.below(s.size())];
  });
}

inline gfra::FrameGraph random_graph(gfra::Rng& rng, int max_users, int n_slots,
                                     int max_degree) {
  const int m = rng.range(0, max_users);
  gfra::FrameGraph g;
  for (int i = 0; i < m; ++i) {
    const int d = rng.range(1, std::min(max_degree, n_slots));
    g.add_user(static_cast<gfra::UserId>(i + 1), gfra::select_slots(n_slots, d, rng));
  }
  return g;
}

} // namespace testutil

#endif
