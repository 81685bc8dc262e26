#pragma once

#include "srds/placement.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace srds {

struct Demand {
  std::vector<int> files;  // files[k-1] = file requested by user k

  int of(int user) const { return files.at(user - 1); }
  int size() const { return static_cast<int>(files.size()); }
  static Demand worst_case(int num_users);
};

/// Bucket T^h_{k,J}: bits user k must recover via relay h that users J
/// already cache. Concatenation order of the chain is significant.
struct TSetKey {
  int relay = 0;
  int user = 0;
  uint64_t known_mask = 0;

  auto operator<=>(const TSetKey&) const = default;
};

struct TSetMap {
  std::map<TSetKey, SegmentChain> sets;

  SegmentChain& at_or_create(int relay, int user, uint64_t known_mask) {
    return sets[{relay, user, known_mask}];
  }
  const SegmentChain* find(int relay, int user, uint64_t known_mask) const {
    auto it = sets.find({relay, user, known_mask});
    return it == sets.end() ? nullptr : &it->second;
  }
  Rat length_of(int relay, int user, uint64_t known_mask) const {
    const SegmentChain* c = find(relay, user, known_mask);
    return c ? chain_length(*c) : Rat(0);
  }
};

struct BorrowTake {
  uint64_t donor_mask = 0;
  Rat amount = 0;
};

struct BorrowRound {
  int t2 = 0;
  int threshold_a = 0;  // 0 when the round drained every donor
  std::vector<BorrowTake> takes;
};

struct BorrowEvent {
  int relay = 0;
  int user = 0;
  std::vector<int> users_J;
  Rat deficit = 0;
  std::vector<BorrowRound> rounds;
  Rat unmet = 0;
};

struct BorrowLedger {
  std::vector<BorrowEvent> events;

  bool empty() const { return events.empty(); }
  Rat total_borrowed() const;
};

/// One aligned XOR operand: segments placed at explicit offsets inside the
/// message payload. Offsets start at 0 and are gap-free except for the
/// zero-padded tail left by an unmet borrowing deficit.
struct PlacedSegment {
  Rat pos = 0;
  Segment seg;
};
using Operand = std::vector<PlacedSegment>;

Rat operand_extent(const Operand& op);

struct MulticastMessage {
  int relay = 0;
  std::vector<int> users;
  Rat length = 0;
  std::vector<std::pair<int, Operand>> operands;  // ordered by user id
  int group = -1;                                 // t' for decentralized runs

  const Operand* operand_of(int user) const;
};

/// Relay-sourced MDS-coded traffic for the hybrid scheme: [unit_lo,unit_hi)
/// of the coded unit space of `file` sent from `relay` to `user`.
struct CodedTransfer {
  int relay = 0;
  int user = 0;
  int file = 0;
  Rat unit_lo = 0, unit_hi = 0;

  Rat length() const { return unit_hi - unit_lo; }
};

/// Routing record from the subfile-partition step.
struct PieceRoute {
  int user = 0;
  int file = 0;
  uint64_t subfile_mask = 0;
  int relay = 0;
  uint64_t tset_mask = 0;
  Rat piece_lo = 0, piece_hi = 0;
};

struct DeliveryPlan {
  std::vector<MulticastMessage> messages;
  std::vector<CodedTransfer> coded;
  BorrowLedger ledger;
  Demand demand;
  std::vector<long long> pieces_per_file;  // step-1 pieces, indexed by file id
  std::vector<PieceRoute> routes;          // only when provenance was requested
};

struct PartitionResult {
  TSetMap tsets;
  std::vector<long long> pieces_per_file;
  std::vector<PieceRoute> routes;
};

/// Step 1: split every demanded subfile of cache-set size `group_size`
/// across the relays that reach the most users already caching it, and
/// append the pieces to the per-relay T-sets. Iteration order is users
/// ascending, then cache sets lexicographic, then relays ascending.
PartitionResult partition_subfiles(const RelayNetwork& network, const CachePlacement& placement,
                                   const Demand& demand, int group_size,
                                   bool log_provenance = false);

/// Step 3-b: equalize the operand lengths of message (relay, users_J) by
/// borrowing head bits from compatibly-known T-sets of the deficient users.
std::vector<BorrowEvent> borrow_bits(TSetMap& tsets, const RelayNetwork& network, int relay,
                                     const std::vector<int>& users_J);

/// Steps 2+3: runs borrowing in increasing |J| order and forms one message
/// per (relay, J) with a non-empty operand; short operands stay short and
/// are implicitly zero-padded to the recorded message length.
std::vector<MulticastMessage> generate_messages(const RelayNetwork& network, TSetMap& tsets,
                                                BorrowLedger& ledger);

/// Full pipeline for a centralized placement.
DeliveryPlan srds_deliver(const RelayNetwork& network, const CachePlacement& placement,
                          const Demand& demand, bool log_provenance = false);

/// Decentralized wrapper: per group of subfiles known by exactly t' users,
/// run the pipeline with the group's (unequal) subfile lengths; borrowing
/// absorbs the inequality. Messages carry their group tag.
DeliveryPlan decentralized_deliver(const RelayNetwork& network, const CachePlacement& placement,
                                   const Demand& demand);

/// Hybrid wrapper: relays serve coded units of F1 from their caches while
/// the server runs the pipeline on the F2 part with parameter t4.
DeliveryPlan hybrid_deliver(const RelayNetwork& network, const CachePlacement& placement,
                            const Demand& demand);

struct RebalanceMove {
  int from = 0, to = 0;
  std::vector<int> users;
  Rat amount = 0;
};

struct RebalanceResult {
  DeliveryPlan plan;
  std::vector<RebalanceMove> moves;
  bool hit_iteration_cap = false;
};

/// Load rebalancing: repeatedly move a prefix of a message from the most
/// loaded relay to a lighter relay connected to the same user set,
/// min{message length, half the load gap} at a time. Moved fragments become
/// separate plan entries; zero-length moves are skipped.
RebalanceResult rebalance(const DeliveryPlan& plan, const RelayNetwork& network);

}  // namespace srds
