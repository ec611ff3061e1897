#include <doctest.h>

#include <vector>

#include "gfra/error.hpp"
#include "gfra/sic.hpp"
#include "helpers.hpp"

using namespace gfra;

namespace {

FrameGraph graph_of(std::vector<std::pair<UserId, std::vector<int>>> users) {
  FrameGraph g;
  for (auto& [id, slots] : users) g.add_user(id, slots);
  return g;
}

FrameGraph fig5_graph() {
  return graph_of({{1, {0, 4}}, {2, {2, 4}}, {3, {0, 1, 3}}, {4, {2, 3}}});
}

} // namespace

TEST_CASE("peel resolves the worked pattern in the documented order") {
  const DecodingResult r = peel(fig5_graph(), 20);
  REQUIRE(r.decoded.size() == 4);
  CHECK(r.residual_users.empty());
  CHECK(r.iterations_used == 3);

  // round 1: user 3 exposed by slot 1
  CHECK(r.decoded[0].user_id == 3);
  CHECK(r.decoded[0].iteration == 1);
  CHECK(r.decoded[0].slot == 1);
  // round 2: users 1 (slot 0) and 4 (slot 3)
  CHECK(r.decoded[1].user_id == 1);
  CHECK(r.decoded[1].slot == 0);
  CHECK(r.decoded[2].user_id == 4);
  CHECK(r.decoded[2].slot == 3);
  CHECK(r.decoded[1].iteration == 2);
  CHECK(r.decoded[2].iteration == 2);
  // round 3: user 2, attributed to the last slot that exposed it
  CHECK(r.decoded[3].user_id == 2);
  CHECK(r.decoded[3].iteration == 3);
  CHECK(r.decoded[3].slot == 4);
}

TEST_CASE("peel: symmetric stopping set never resolves") {
  const DecodingResult r = peel(graph_of({{1, {0, 1}}, {2, {0, 1}}}), 20);
  CHECK(r.decoded.empty());
  CHECK(r.residual_users == std::set<UserId>{1, 2});
}

TEST_CASE("peel: lone singleton decodes in the first round") {
  const DecodingResult r = peel(graph_of({{7, {3}}}), 20);
  REQUIRE(r.decoded.size() == 1);
  CHECK(r.decoded[0].user_id == 7);
  CHECK(r.decoded[0].iteration == 1);
  CHECK(r.residual_users.empty());
}

TEST_CASE("peel: empty graph gives an empty result") {
  const DecodingResult r = peel(FrameGraph{}, 20);
  CHECK(r.decoded.empty());
  CHECK(r.residual_users.empty());
  CHECK(r.iterations_used == 0);
}

TEST_CASE("peel honors the iteration cap") {
  // chain that needs three rounds: cap at one round
  const FrameGraph g = graph_of({{1, {0}}, {2, {0, 1}}, {3, {1, 2}}});
  const DecodingResult r = peel(g, 1);
  CHECK(r.iterations_used == 1);
  CHECK(r.decoded.size() == 1);
  CHECK(r.residual_users.size() == 2);
}

TEST_CASE("peeling confluence: processing order cannot change the decoded set") {
  Rng rng(50);
  for (int rep = 0; rep < 1000; ++rep) {
    const FrameGraph g = testutil::random_graph(rng, 25, 30, 6);
    const auto reference = testutil::decoded_set(peel(g, 1000));
    CHECK(testutil::naive_peel_first(g) == reference);
    CHECK(testutil::naive_peel_last(g) == reference);
    CHECK(testutil::naive_peel_random(g, rng) == reference);
  }
}

TEST_CASE("removing a user never shrinks the decoded set of the others") {
  Rng rng(51);
  for (int rep = 0; rep < 300; ++rep) {
    FrameGraph g = testutil::random_graph(rng, 12, 10, 4);
    if (g.user_count() == 0) continue;
    const auto before = testutil::decoded_set(peel(g, 1000));
    auto it = g.users().begin();
    std::advance(it, rng.below(g.user_count()));
    const UserId victim = it->first;
    g.remove_user(victim);
    const auto after = testutil::decoded_set(peel(g, 1000));
    for (UserId u : before) {
      if (u != victim) CHECK(after.count(u) == 1);
    }
  }
}

TEST_CASE("peel agrees with the exhaustive one-at-a-time oracle") {
  // every graph with up to 4 users, 5 slots, and 1..3 replicas per user
  std::vector<std::vector<int>> patterns;
  for (int mask = 1; mask < 32; ++mask) {
    if (__builtin_popcount(mask) > 3) continue;
    std::vector<int> slots;
    for (int s = 0; s < 5; ++s)
      if (mask & (1 << s)) slots.push_back(s);
    patterns.push_back(std::move(slots));
  }
  REQUIRE(patterns.size() == 25);

  long graphs_checked = 0;
  const std::size_t p = patterns.size();
  for (std::size_t users = 0; users <= 4; ++users) {
    std::vector<std::size_t> choice(users, 0);
    for (;;) {
      FrameGraph g;
      for (std::size_t u = 0; u < users; ++u)
        g.add_user(static_cast<UserId>(u + 1), patterns[choice[u]]);
      const auto reference = testutil::decoded_set(peel(g, 1000));
      if (testutil::naive_peel_first(g) != reference ||
          testutil::naive_peel_last(g) != reference) {
        CAPTURE(graphs_checked);
        REQUIRE(false);
      }
      ++graphs_checked;

      std::size_t pos = 0;
      while (pos < users && ++choice[pos] == p) choice[pos++] = 0;
      if (pos == users) break;
    }
  }
  CHECK(graphs_checked == 1 + 25 + 625 + 15625 + 390625);
}

TEST_CASE("cn_local_decode forwards in peeling order, capped by budget") {
  // relay sees users 1 (three replicas) and 5 (two), one clean slot each
  const FrameGraph local = graph_of({{1, {0, 1, 2}}, {5, {2, 4}}});
  CHECK(cn_local_decode(local, 1, 20) == std::vector<UserId>{1});
  CHECK(cn_local_decode(local, 5, 20) == std::vector<UserId>{1, 5});
  CHECK(cn_local_decode(local, 0, 20).empty());
}

TEST_CASE("cn_local_decode: fully overlapping users are a stopping set") {
  const FrameGraph local = graph_of({{1, {0, 1}}, {2, {0, 1}}});
  CHECK(cn_local_decode(local, 3, 20).empty());
}

TEST_CASE("network_decode replays the two-relay example") {
  const FrameGraph bs = graph_of({{1, {0, 1, 2}},
                                  {2, {0, 1, 2}},
                                  {3, {0, 3, 4}},
                                  {4, {1, 3, 4}},
                                  {5, {2, 4}}});
  // relay 1 hears users 1 and 5; relay 2 hears users 2 and 3
  const std::vector<FrameGraph> cn_graphs = {
      graph_of({{1, {0, 1, 2}}, {5, {2, 4}}}),
      graph_of({{2, {0, 1, 2}}, {3, {0, 3, 4}}}),
  };
  const std::vector<CnAllocation> allocations = {{0, 1}, {1, 1}};

  // users 1 and 2 jam every slot they touch: plain peeling gets nowhere
  const auto plain = testutil::decoded_set(peel(bs, 20));
  CHECK(plain.empty());

  const DecodingResult r = network_decode(bs, cn_graphs, allocations, 20, 5);
  CHECK(r.residual_users.empty());
  REQUIRE(r.decoded.size() == 5);
  // forwards first: user 1 on relay slot 5, user 2 on relay slot 6
  CHECK(r.decoded[0].user_id == 1);
  CHECK(r.decoded[0].slot == 5);
  CHECK(r.decoded[0].iteration == 0);
  CHECK(r.decoded[1].user_id == 2);
  CHECK(r.decoded[1].slot == 6);
  // the remaining three peel at the BS in one round
  CHECK(r.decoded[2].iteration == 1);
  CHECK(testutil::decoded_set(r) == std::set<UserId>{1, 2, 3, 4, 5});
}

TEST_CASE("network_decode with no relays reduces to plain peeling") {
  const FrameGraph bs = fig5_graph();
  const DecodingResult direct = peel(bs, 20);
  const DecodingResult via_network = network_decode(bs, {}, {}, 20, 5);
  CHECK(via_network.iterations_used == direct.iterations_used);
  REQUIRE(via_network.decoded.size() == direct.decoded.size());
  for (std::size_t i = 0; i < direct.decoded.size(); ++i) {
    CHECK(via_network.decoded[i].user_id == direct.decoded[i].user_id);
    CHECK(via_network.decoded[i].slot == direct.decoded[i].slot);
    CHECK(via_network.decoded[i].iteration == direct.decoded[i].iteration);
  }
}

TEST_CASE("one relay with enough budget can clear the frame alone") {
  const FrameGraph bs = graph_of({{1, {0}}, {2, {1}}, {3, {2}}});
  const std::vector<FrameGraph> cn_graphs = {bs};
  const std::vector<CnAllocation> allocations = {{0, 8}};
  const DecodingResult r = network_decode(bs, cn_graphs, allocations, 20, 3);
  CHECK(r.residual_users.empty());
  CHECK(r.iterations_used == 0);  // nothing left for the BS loop
  for (const auto& e : r.decoded) {
    CHECK(e.iteration == 0);
    CHECK(e.slot >= 3);
  }
}

TEST_CASE("network_decode rejects relay users unknown to the BS") {
  const FrameGraph bs = graph_of({{1, {0}}});
  const std::vector<FrameGraph> cn_graphs = {graph_of({{9, {0}}})};
  const std::vector<CnAllocation> allocations = {{0, 1}};
  CHECK_THROWS_AS(network_decode(bs, cn_graphs, allocations, 20, 1), Error);
}

TEST_CASE("relay forwarding never hurts: decoded superset of plain peeling") {
  Rng rng(52);
  for (int rep = 0; rep < 300; ++rep) {
    const FrameGraph bs = testutil::random_graph(rng, 20, 25, 5);
    const int q = rng.range(0, 3);
    std::vector<FrameGraph> cn_graphs(q);
    for (const auto& [user, slots] : bs.users()) {
      for (int j = 0; j < q; ++j)
        if (rng.bernoulli(0.5)) cn_graphs[j].add_user(user, slots);
    }
    std::vector<CnAllocation> allocations;
    for (int j = 0; j < q; ++j) allocations.push_back({j, rng.range(0, 4)});

    const auto plain = testutil::decoded_set(peel(bs, 1000));
    const DecodingResult r = network_decode(bs, cn_graphs, allocations, 1000, 25);
    const auto assisted = testutil::decoded_set(r);
    for (UserId u : plain) CHECK(assisted.count(u) == 1);
    // bookkeeping: decoded and residual partition the user set
    CHECK(assisted.size() + r.residual_users.size() == bs.user_count());
  }
}
