#pragma once

#include <map>
#include <string>
#include <vector>

namespace srds {

/// Bipartite server -> relay -> user topology. Relay ids are exactly
/// [1..num_relays], user ids exactly [1..num_users]; index 0 of the
/// adjacency vectors is unused. Immutable after construction.
struct RelayNetwork {
  enum class Kind { combination, general };

  Kind kind = Kind::general;
  int subset_size = 0;  // r, for combination networks
  int num_relays = 0;   // H
  int num_users = 0;    // K
  std::vector<std::vector<int>> users_of_relay;  // U_h, sorted ascending
  std::vector<std::vector<int>> relays_of_user;  // H_k, sorted ascending

  const std::vector<int>& users_of(int relay) const { return users_of_relay.at(relay); }
  const std::vector<int>& relays_of(int user) const { return relays_of_user.at(user); }
  int max_relay_degree() const;
};

/// Combination network with K = C(H,r) users. User k is the k-th r-subset of
/// [1..H] in lexicographic order of sorted subsets, so the numbering is
/// reproducible: for H=4, r=2 the subsets run {1,2},{1,3},{1,4},{2,3},...
RelayNetwork build_combination_network(int num_relays, int subset_size);

/// Arbitrary relay network from per-relay user sets. User ids must cover
/// [1..max id] with no orphans; duplicate users within one relay set are
/// rejected.
RelayNetwork build_general_network(const std::map<int, std::vector<int>>& users_of_relay);

/// Parses the plain-text topology format:
///   combination H=<int> r=<int>
/// or
///   general
///   relay 1: 1 2 3
///   relay 2: 1 3 4
RelayNetwork parse_topology_text(const std::string& text);
RelayNetwork load_topology_file(const std::string& path);

/// Enumerates the size-`count` subsets of `pool` (which must be sorted) in
/// lexicographic order.
std::vector<std::vector<int>> subsets_of_size(const std::vector<int>& pool, int count);

}  // namespace srds
