#include <doctest.h>

#include "helpers.hpp"

#include <random>
#include <set>

using namespace srds;
using namespace srds::testing;

TEST_CASE("combination network H=4 r=2 matches the reference labeling") {
  auto net = build_combination_network(4, 2);
  CHECK(net.num_users == 6);
  CHECK(net.num_relays == 4);
  CHECK(net.users_of(1) == std::vector<int>{1, 2, 3});
  CHECK(net.users_of(2) == std::vector<int>{1, 4, 5});
  CHECK(net.relays_of(1) == std::vector<int>{1, 2});
  CHECK(net.relays_of(6) == std::vector<int>{3, 4});
}

TEST_CASE("degenerate combination network H=2 r=2") {
  auto net = build_combination_network(2, 2);
  CHECK(net.num_users == 1);
  CHECK(net.users_of(1) == std::vector<int>{1});
  CHECK(net.users_of(2) == std::vector<int>{1});
}

TEST_CASE("combination network H=6 r=3 against direct enumeration") {
  auto net = build_combination_network(6, 3);
  CHECK(net.num_users == 20);

  // independent recount: enumerate all 3-subsets of [1..6] recursively
  std::vector<int> relays{1, 2, 3, 4, 5, 6};
  std::vector<std::vector<int>> expected_users_of(7);
  int user = 0;
  for_subsets(relays, 3, [&](const std::vector<int>& subset) {
    ++user;
    for (int h : subset) expected_users_of[h].push_back(user);
  });
  CHECK(user == 20);
  for (int h = 1; h <= 6; ++h) {
    CHECK(net.users_of(h) == expected_users_of[h]);
    CHECK(net.users_of(h).size() == 10);  // C(5,2)
  }
}

TEST_CASE("combination network rejects bad parameters") {
  CHECK_THROWS_AS(build_combination_network(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_combination_network(4, 5), std::invalid_argument);
  CHECK_THROWS_AS(build_combination_network(4, 0), std::invalid_argument);
}

TEST_CASE("symmetric 5-relay general network") {
  auto net = sym5_network();
  CHECK(net.num_users == 5);
  CHECK(net.relays_of(1) == std::vector<int>{1, 2, 3});
  for (int k = 1; k <= 5; ++k) CHECK(net.relays_of(k).size() == 3);
}

TEST_CASE("asymmetric 5-relay general network degrees") {
  auto net = asym5_network();
  CHECK(net.relays_of(2).size() == 2);
  CHECK(net.relays_of(3).size() == 4);
}

TEST_CASE("single relay shared-link degeneration") {
  auto net = build_general_network({{1, {1, 2, 3, 4}}});
  for (int k = 1; k <= 4; ++k) CHECK(net.relays_of(k) == std::vector<int>{1});
}

TEST_CASE("general network rejects orphans and duplicates") {
  CHECK_THROWS_AS(build_general_network({{1, {1, 3}}}), std::invalid_argument);
  CHECK_THROWS_AS(build_general_network({{1, {1, 1, 2}}}), std::invalid_argument);
  CHECK_THROWS_AS(build_general_network({}), std::invalid_argument);
}

TEST_CASE("transpose round-trip on random networks") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    int relays = 2 + static_cast<int>(rng() % 5);
    int users = 2 + static_cast<int>(rng() % 6);
    std::map<int, std::vector<int>> input;
    for (int k = 1; k <= users; ++k) {
      int h = 1 + static_cast<int>(rng() % relays);
      input[h].push_back(k);  // ensure no orphans
    }
    for (int h = 1; h <= relays; ++h)
      for (int k = 1; k <= users; ++k)
        if (rng() % 3 == 0) input[h].push_back(k);
    for (auto& [h, list] : input) {
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
    }

    auto net = build_general_network(input);
    // rebuild users_of_relay from the transpose
    std::map<int, std::vector<int>> rebuilt;
    for (int k = 1; k <= net.num_users; ++k)
      for (int h : net.relays_of(k)) rebuilt[h].push_back(k);
    for (const auto& [h, list] : input) {
      if (list.empty()) continue;
      CHECK(rebuilt[h] == list);
    }
  }
}

TEST_CASE("combination network structural invariants") {
  for (int H = 2; H <= 7; ++H) {
    for (int r = 1; r <= H; ++r) {
      auto net = build_combination_network(H, r);
      CHECK(Int(net.num_users) == binom(H, r));
      size_t total = 0;
      for (int h = 1; h <= H; ++h) total += net.users_of(h).size();
      CHECK(Int(total) == Int(r) * net.num_users);
      std::set<std::vector<int>> distinct;
      for (int k = 1; k <= net.num_users; ++k) distinct.insert(net.relays_of(k));
      CHECK(static_cast<int>(distinct.size()) == net.num_users);

      auto again = build_combination_network(H, r);
      CHECK(again.users_of_relay == net.users_of_relay);
    }
  }
}

TEST_CASE("topology text parsing") {
  auto comb = parse_topology_text("combination H=4 r=2\n");
  CHECK(comb.kind == RelayNetwork::Kind::combination);
  CHECK(comb.num_users == 6);

  auto gen = parse_topology_text(
      "general\n"
      "relay 1: 1 2 3\n"
      "relay 2: 1 3 4\n"
      "relay 3: 1 4 5\n"
      "relay 4: 2 4 5\n"
      "relay 5: 2 3 5\n");
  CHECK(gen.kind == RelayNetwork::Kind::general);
  CHECK(gen.users_of(4) == std::vector<int>{2, 4, 5});

  CHECK_THROWS(parse_topology_text("combination H=4\n"));
  CHECK_THROWS(parse_topology_text("relay 1: 1 2\n"));
  CHECK_THROWS(parse_topology_text(""));
}
