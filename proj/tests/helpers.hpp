#pragma once

#include "srds/analysis.hpp"
#include "srds/experiment.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <tuple>
#include <vector>

namespace srds::testing {

inline RelayNetwork sym5_network() {
  return build_general_network({{1, {1, 2, 3}},
                                {2, {1, 3, 4}},
                                {3, {1, 4, 5}},
                                {4, {2, 4, 5}},
                                {5, {2, 3, 5}}});
}

inline RelayNetwork asym5_network() {
  return build_general_network({{1, {1, 2, 3}},
                                {2, {1, 3, 4}},
                                {3, {1, 4, 5}},
                                {4, {3, 4, 5}},
                                {5, {2, 3, 5}}});
}

// ---- independent oracles (deliberately avoid the library's code paths) ----

inline void enumerate_subsets_rec(const std::vector<int>& pool, size_t start, int want,
                                  std::vector<int>& cur,
                                  const std::function<void(const std::vector<int>&)>& fn) {
  if (want == 0) {
    fn(cur);
    return;
  }
  for (size_t i = start; i + want <= pool.size() + 0u; ++i) {
    if (pool.size() - i < static_cast<size_t>(want)) break;
    cur.push_back(pool[i]);
    enumerate_subsets_rec(pool, i + 1, want - 1, cur, fn);
    cur.pop_back();
  }
}

inline void for_subsets(const std::vector<int>& pool, int want,
                        const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> cur;
  enumerate_subsets_rec(pool, 0, want, cur, fn);
}

using TsetLenKey = std::tuple<int, int, std::vector<int>>;  // (relay, user, known set)

/// Recounts every T-set length for a uniform-subfile placement by direct
/// case analysis over (user, cache set) pairs.
inline std::map<TsetLenKey, Rat> recount_tset_lengths(const RelayNetwork& net, int t) {
  const int K = net.num_users;
  Rat subfile_len(1, binom(K, t));
  std::map<TsetLenKey, Rat> lengths;

  for (int k = 1; k <= K; ++k) {
    std::vector<int> others;
    for (int u = 1; u <= K; ++u)
      if (u != k) others.push_back(u);
    for_subsets(others, t, [&](const std::vector<int>& w) {
      int best = -1;
      std::vector<std::pair<int, std::vector<int>>> overlaps;
      for (int h : net.relays_of(k)) {
        std::vector<int> common;
        for (int u : net.users_of(h))
          if (std::find(w.begin(), w.end(), u) != w.end()) common.push_back(u);
        overlaps.push_back({h, common});
        best = std::max<int>(best, static_cast<int>(common.size()));
      }
      int winners = 0;
      for (const auto& [h, common] : overlaps)
        if (static_cast<int>(common.size()) == best) ++winners;
      for (const auto& [h, common] : overlaps)
        if (static_cast<int>(common.size()) == best)
          lengths[{h, k, common}] += subfile_len / winners;
    });
  }
  return lengths;
}

inline Rat sum_operand_lengths(const DeliveryPlan& plan, int user) {
  Rat total = 0;
  for (const auto& m : plan.messages) {
    const Operand* op = m.operand_of(user);
    if (op == nullptr) continue;
    for (const auto& ps : *op) total += ps.seg.length();
  }
  return total;
}

/// Every segment in user j's operand must be cached by every other user of
/// the message (checked straight against the placement).
inline bool operands_legal(const DeliveryPlan& plan, const CachePlacement& placement) {
  for (const auto& m : plan.messages)
    for (const auto& [owner, op] : m.operands)
      for (const auto& ps : op)
        for (int other : m.users) {
          if (other == owner) continue;
          if (!placement.user_caches_interval(other, ps.seg.file, ps.seg.lo, ps.seg.hi))
            return false;
        }
  return true;
}

inline Rat total_server_load(const LoadReport& loads) {
  Rat sum = 0;
  for (size_t h = 1; h < loads.server_to_relay.size(); ++h) sum += loads.server_to_relay[h];
  return sum;
}

}  // namespace srds::testing
