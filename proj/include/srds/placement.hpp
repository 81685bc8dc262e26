#pragma once

#include "srds/segment.hpp"
#include "srds/topology.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace srds {

uint64_t user_mask(const std::vector<int>& users);
std::vector<int> mask_users(uint64_t mask);
/// Lexicographic order on the sorted user sets the masks encode.
bool mask_set_less(uint64_t a, uint64_t b);

enum class PlacementKind { cman, dman, hybrid };

/// One subfile F_{i,W}: the bits of file i cached exactly by the users in W.
/// For cman/hybrid the content is a single interval; for dman it is the
/// scattered runs of the bits that landed in W.
struct Subfile {
  int file = 0;
  uint64_t cache_mask = 0;
  Rat length = 0;
  SegmentChain content;

  std::vector<int> cache_set() const { return mask_users(cache_mask); }
};

struct CachePlacement {
  PlacementKind kind = PlacementKind::cman;
  int num_users = 0;
  int num_files = 0;
  int t = 0;  // cman t; hybrid uses t4 here for the F2 part
  Rat mem_per_user = 0;

  // dman
  Rat dman_M = 0;
  uint64_t seed = 0;
  long b_concrete = 0;

  // hybrid
  Rat f1_len = 0, f2_len = 1;
  int t3 = 0, t4 = 0;
  Rat relay_block_len = 0;  // coded units cached per relay per file
  int relay_count = 0;
  // plain cached cells of F1, [user][file], each cell an interval of F1
  std::vector<std::vector<SegmentChain>> f1_cells;

  std::vector<Subfile> subfiles;

  struct Run {
    Rat lo, hi;
    int subfile_idx;
  };

  const Subfile* find_subfile(int file, uint64_t mask) const;
  /// Sorted runs covering the XOR-delivered part of `file` ([0,1) for
  /// cman/dman, [f1_len,1) for hybrid).
  const std::vector<Run>& runs_of_file(int file) const;
  /// True when [lo,hi) of `file` is contained in user's cache.
  bool user_caches_interval(int user, int file, const Rat& lo, const Rat& hi) const;
  Rat user_cache_usage(int user) const;

  void build_lookup();  // fills run tables and the (file,mask) index

 private:
  std::map<std::pair<int, uint64_t>, int> subfile_index_;
  std::vector<std::vector<Run>> runs_by_file_;
};

/// Centralized placement: each file split into C(K,t) equal subfiles, user k
/// caching those whose set contains k.
CachePlacement cman_place(int num_users, int num_files, int t);

/// Decentralized placement at a concrete file length: every user caches
/// exactly floor(M*B/N) bits of each file, chosen by a seeded uniform draw.
/// With build_chains=false only subfile lengths are tabulated (for large-B
/// statistics); delivery needs the chains.
CachePlacement dman_place(int num_users, int num_files, const Rat& M, uint64_t seed,
                          long b_concrete, bool build_chains = true);

/// Relay-and-user caching: each file is split into F1 (length min{r*M1/N,1})
/// and F2; relays cache |F1|/r MDS-coded units of F1, users cache t3 random
/// cells of F1 plus the t4 centralized placement over F2.
CachePlacement hybrid_place(const RelayNetwork& network, int num_files, const Rat& M1, int t3,
                            int t4, uint64_t seed);

}  // namespace srds
