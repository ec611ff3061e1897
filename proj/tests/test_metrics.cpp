#include <doctest.h>

#include <utility>
#include <vector>

#include "gfra/error.hpp"
#include "gfra/metrics.hpp"
#include "gfra/protocols.hpp"
#include "helpers.hpp"

using namespace gfra;

TEST_CASE("saloha_theory curve") {
  CHECK(saloha_theory(1.0) == doctest::Approx(0.3679).epsilon(1e-3));
  CHECK(saloha_theory(0.0) == 0.0);
  CHECK(saloha_theory(2.0) == doctest::Approx(0.2707).epsilon(1e-3));
}

TEST_CASE("latency_ms: straight subtraction, undelivered otherwise") {
  FrameParams frame{};
  TransmissionRecord rec;
  rec.arrival_slot = 0;
  rec.outcome = OutcomeKind::decoded;
  rec.resolved_slot = 49;
  CHECK(latency_ms(rec, frame).value() == doctest::Approx(49.0));

  rec.outcome = OutcomeKind::failed;
  CHECK_FALSE(latency_ms(rec, frame).has_value());

  rec.outcome = OutcomeKind::pending;
  CHECK_FALSE(latency_ms(rec, frame).has_value());
}

TEST_CASE("frame-synchronous delay stays under the wait-plus-two-frames bound") {
  // worst case: activation right after a frame starts, decode at the end of
  // the next frame
  const FrameParams frame{};
  TransmissionRecord rec;
  rec.arrival_slot = 1;
  rec.outcome = OutcomeKind::decoded;
  rec.resolved_slot = 2 * frame.n_raf - 1;
  const double bound_ms = (frame.n_raf + 2 * frame.n_raf) * frame.slot_ms;
  CHECK(latency_ms(rec, frame).value() <= bound_ms);
}

TEST_CASE("pdr and plr") {
  CHECK(pdr(95, 100) == doctest::Approx(0.95));
  CHECK(plr(pdr(95, 100)) == doctest::Approx(0.05));
  CHECK(pdr(7, 7) == 1.0);
  CHECK(plr(pdr(7, 7)) == 0.0);
  CHECK(pdr(0, 0) == 1.0);  // idle network counts as vacuous success
  CHECK_THROWS_AS(pdr(5, 4), Error);
  // exact complement
  for (long r : {0L, 17L, 99L, 100L}) CHECK(pdr(r, 100) + plr(pdr(r, 100)) == 1.0);
}

TEST_CASE("reliability gates the PDR on the hard-delay budget") {
  const LatencyBudget ami{250.0, 60.0, 0.0};
  CHECK(reliability(0.99, 200.0, ami) == doctest::Approx(0.99));
  CHECK(reliability(0.99, 300.0, ami) == 0.0);
  CHECK(reliability(0.0, 10.0, ami) == 0.0);
}

TEST_CASE("latency budget in grid cycles") {
  const LatencyBudget three_cycles{0.0, 60.0, 3.0};
  CHECK(three_cycles.cycle_latency_s() == doctest::Approx(0.05));
}

TEST_CASE("acr averages compliant fractions over populated slots") {
  using Pair = std::pair<long, long>;
  std::vector<Pair> all = {{4, 4}, {2, 2}};
  CHECK(acr(all) == 1.0);

  std::vector<Pair> mixed = {{2, 2}, {1, 2}};
  CHECK(acr(mixed) == doctest::Approx(0.75));

  std::vector<Pair> none = {{0, 3}, {0, 1}};
  CHECK(acr(none) == 0.0);

  // empty slots are skipped, not averaged in
  std::vector<Pair> with_idle = {{2, 2}, {0, 0}, {1, 2}};
  CHECK(acr(with_idle) == doctest::Approx(0.75));

  std::vector<Pair> bad = {{-1, 2}};
  CHECK_THROWS_AS(acr(bad), Error);
}

TEST_CASE("acr grows when one slot gains a compliant user") {
  using Pair = std::pair<long, long>;
  std::vector<Pair> base = {{1, 3}, {2, 4}, {0, 2}};
  const double before = acr(base);
  base[2].first = 1;
  CHECK(acr(base) > before);
}

TEST_CASE("bw_req direct evaluations") {
  CHECK(bw_req(200, 0.25, 1000) == doctest::Approx(6.4e6));
  CHECK(bw_req(200, 0.25, 0) == 0.0);
  CHECK(bw_req(200, 1.0, 1) == doctest::Approx(1600.0));
}

TEST_CASE("density evolution: residual vanishes at low load") {
  const DegreeDistribution dist = DegreeDistribution::lambda8();
  CHECK(irsa_density_evolution(dist, 0.01, 200) < 1e-9);
  CHECK(irsa_density_evolution(dist, 0.5, 200) < 1e-3);
}

TEST_CASE("density evolution: threshold of the default distribution") {
  const DegreeDistribution dist = DegreeDistribution::lambda8();
  const double g_star = irsa_threshold(dist, 200);
  CHECK(g_star > 0.93);
  CHECK(g_star < 0.95);
  // residual is tiny below and macroscopic above
  CHECK(irsa_density_evolution(dist, g_star - 0.05, 200) < 1e-2);
  CHECK(irsa_density_evolution(dist, g_star + 0.05, 200) > 0.5);
}

TEST_CASE("finite-frame PLR sits above the asymptotic residual") {
  // asymptotics are a lower envelope: simulate n_raf = 200 at G = 0.85
  const DegreeDistribution dist = DegreeDistribution::lambda8();
  const double load = 0.85;
  FrameParams frame;
  frame.n_raf = 200;
  Rng rng(91);
  long generated = 0;
  long delivered = 0;
  for (int realization = 0; realization < 60; ++realization) {
    std::vector<TransmissionRecord> users;
    const int m = static_cast<int>(load * frame.n_raf);
    for (int i = 0; i < m; ++i) {
      TransmissionRecord rec;
      rec.user_id = static_cast<UserId>(i + 1);
      users.push_back(rec);
    }
    const FrameOutcome out = irsa_frame(users, dist, frame, rng);
    generated += m;
    delivered += static_cast<long>(out.decode_result.decoded.size());
  }
  const double plr_hat = 1.0 - delivered / double(generated);
  const double residual = irsa_density_evolution(dist, load, 200);
  CHECK(plr_hat >= residual - 0.02);
}
