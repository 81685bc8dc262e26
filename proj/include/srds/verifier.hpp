#pragma once

#include "srds/delivery.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace srds {

struct LoadReport {
  std::vector<Rat> server_to_relay;              // index by relay id; [0] unused
  std::map<std::pair<int, int>, Rat> relay_to_user;
  Rat max_server_to_relay = 0;
  Rat max_relay_to_user = 0;
  Rat max_link_load = 0;
};

/// Exact per-link load accounting. Coded relay-cache transfers count on the
/// relay->user links only; multicast messages count on both hops.
LoadReport compute_loads(const DeliveryPlan& plan, const RelayNetwork& network);

struct UserReport {
  int user = 0;
  bool pass = false;
  std::string missing_atom;  // empty when pass
  Rat decoded_fraction = 0;
};

/// Symbolic decodability proof: refines every referenced interval into
/// minimal atoms, expresses each aligned XOR position-group of every
/// received message as a GF(2) row over the atoms, and checks that every
/// atom of the demanded file lies in the span of cache plus received rows.
/// MDS-coded units are checked by the rank rule (any |F1| distinct units of
/// F1 reconstruct it).
std::vector<UserReport> verify_decodability(const RelayNetwork& network,
                                            const CachePlacement& placement,
                                            const DeliveryPlan& plan, const Demand& demand);

bool all_users_pass(const std::vector<UserReport>& reports);

/// Least common multiple of every denominator a concrete-bit instantiation
/// of this (placement, plan) pair must resolve.
Int plan_denominator_lcm(const DeliveryPlan& plan, const CachePlacement& placement);

struct SimulateOptions {
  // flip one payload bit: (message index, bit position)
  std::optional<std::pair<size_t, long>> corrupt_bit;
};

struct SimulateResult {
  bool pass = false;
  std::vector<char> user_ok;  // index by user id; [0] unused
  std::string note;
};

/// End-to-end bit-exact simulation: instantiates files as seeded random
/// bits, materializes caches and XOR payloads, runs each user's decoder and
/// compares the reconstruction against the original file.
SimulateResult simulate_concrete(const RelayNetwork& network, const CachePlacement& placement,
                                 const DeliveryPlan& plan, const Demand& demand, long b_concrete,
                                 uint64_t seed, const SimulateOptions& options = {});

}  // namespace srds
