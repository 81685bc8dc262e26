#include "srds/placement.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace srds {

uint64_t user_mask(const std::vector<int>& users) {
  uint64_t mask = 0;
  for (int u : users) {
    if (u < 1 || u > 62) throw std::invalid_argument("user id out of mask range [1..62]");
    mask |= uint64_t(1) << (u - 1);
  }
  return mask;
}

std::vector<int> mask_users(uint64_t mask) {
  std::vector<int> users;
  for (int u = 1; mask != 0; ++u, mask >>= 1)
    if (mask & 1u) users.push_back(u);
  return users;
}

bool mask_set_less(uint64_t a, uint64_t b) {
  // lexicographic on the sorted element lists; shorter prefix wins
  while (a != 0 && b != 0) {
    int ea = std::countr_zero(a), eb = std::countr_zero(b);
    if (ea != eb) return ea < eb;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0 && b != 0;
}

const Subfile* CachePlacement::find_subfile(int file, uint64_t mask) const {
  auto it = subfile_index_.find({file, mask});
  return it == subfile_index_.end() ? nullptr : &subfiles[it->second];
}

const std::vector<CachePlacement::Run>& CachePlacement::runs_of_file(int file) const {
  return runs_by_file_.at(file);
}

void CachePlacement::build_lookup() {
  subfile_index_.clear();
  runs_by_file_.assign(num_files + 1, {});
  for (int i = 0; i < static_cast<int>(subfiles.size()); ++i) {
    const Subfile& sf = subfiles[i];
    subfile_index_[{sf.file, sf.cache_mask}] = i;
    for (const Segment& seg : sf.content) runs_by_file_[sf.file].push_back({seg.lo, seg.hi, i});
  }
  for (auto& runs : runs_by_file_)
    std::sort(runs.begin(), runs.end(), [](const Run& a, const Run& b) { return a.lo < b.lo; });
}

bool CachePlacement::user_caches_interval(int user, int file, const Rat& lo, const Rat& hi) const {
  if (lo >= hi) return true;
  if (kind == PlacementKind::hybrid && lo < f1_len) {
    if (hi > f1_len) return user_caches_interval(user, file, lo, f1_len) &&
                            user_caches_interval(user, file, f1_len, hi);
    const SegmentChain& cells = f1_cells[user][file];
    Rat pos = lo;
    for (const Segment& cell : cells) {
      if (pos >= hi) return true;
      if (cell.lo <= pos && pos < cell.hi) pos = std::min(cell.hi, hi);
    }
    return pos >= hi;
  }
  const auto& runs = runs_by_file_.at(file);
  uint64_t bit = uint64_t(1) << (user - 1);
  Rat pos = lo;
  // runs are sorted and disjoint; walk those overlapping [lo,hi)
  auto it = std::upper_bound(runs.begin(), runs.end(), pos,
                             [](const Rat& v, const Run& r) { return v < r.hi; });
  for (; it != runs.end() && it->lo < hi; ++it) {
    if (it->lo > pos) return false;  // gap
    if (!(subfiles[it->subfile_idx].cache_mask & bit)) return false;
    pos = it->hi;
    if (pos >= hi) return true;
  }
  return pos >= hi;
}

Rat CachePlacement::user_cache_usage(int user) const {
  Rat total = 0;
  uint64_t bit = uint64_t(1) << (user - 1);
  for (const Subfile& sf : subfiles)
    if (sf.cache_mask & bit) total += sf.length;
  if (kind == PlacementKind::hybrid)
    for (const SegmentChain& cells : f1_cells[user]) total += chain_length(cells);
  return total;
}

CachePlacement cman_place(int num_users, int num_files, int t) {
  if (num_users < 1 || num_users > 62) throw std::invalid_argument("user count must be in [1..62]");
  if (t < 0 || t > num_users) throw std::invalid_argument("t must lie in [0..K]");
  if (num_files < num_users) throw std::invalid_argument("require N >= K");

  CachePlacement p;
  p.kind = PlacementKind::cman;
  p.num_users = num_users;
  p.num_files = num_files;
  p.t = t;
  p.mem_per_user = Rat(Int(num_files) * t, num_users);

  std::vector<int> all_users(num_users);
  std::iota(all_users.begin(), all_users.end(), 1);
  auto sets = subsets_of_size(all_users, t);
  Rat piece(1, Int(sets.size()));
  for (int file = 1; file <= num_files; ++file) {
    Rat lo = 0;
    for (const auto& w : sets) {
      Subfile sf;
      sf.file = file;
      sf.cache_mask = user_mask(w);
      sf.length = piece;
      sf.content = {{file, lo, lo + piece, false}};
      lo += piece;
      p.subfiles.push_back(std::move(sf));
    }
  }
  p.build_lookup();
  return p;
}

namespace {

// Engine-stable uniform draw in [0,n); std::uniform_int_distribution is not
// reproducible across standard libraries.
uint64_t rng_below(std::mt19937_64& rng, uint64_t n) {
  uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % n;
}

}  // namespace

CachePlacement dman_place(int num_users, int num_files, const Rat& M, uint64_t seed,
                          long b_concrete, bool build_chains) {
  if (num_users < 1 || num_users > 62) throw std::invalid_argument("user count must be in [1..62]");
  if (M < 0 || M > num_files) throw std::invalid_argument("M must lie in [0..N]");
  if (b_concrete < 1) throw std::invalid_argument("concrete file length must be positive");

  CachePlacement p;
  p.kind = PlacementKind::dman;
  p.num_users = num_users;
  p.num_files = num_files;
  p.t = -1;
  p.dman_M = M;
  p.seed = seed;
  p.b_concrete = b_concrete;

  const long bits_per_file =
      static_cast<long>(Int(rat_num(M) * b_concrete / (rat_den(M) * num_files)).convert_to<long long>());
  p.mem_per_user = Rat(Int(bits_per_file) * num_files, b_concrete);

  std::mt19937_64 rng(seed);
  std::vector<uint32_t> pool(b_concrete);
  std::vector<uint64_t> mask_of_bit(b_concrete);

  std::vector<uint32_t> order(b_concrete);
  for (int file = 1; file <= num_files; ++file) {
    std::fill(mask_of_bit.begin(), mask_of_bit.end(), 0);
    for (int user = 1; user <= num_users; ++user) {
      std::iota(pool.begin(), pool.end(), 0);
      uint64_t bit = uint64_t(1) << (user - 1);
      for (long i = 0; i < bits_per_file; ++i) {
        long j = i + static_cast<long>(rng_below(rng, b_concrete - i));
        std::swap(pool[i], pool[j]);
        mask_of_bit[pool[i]] |= bit;
      }
    }
    // group bits by cache mask, keeping bit order inside each group
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
      return mask_of_bit[a] < mask_of_bit[b];
    });
    std::vector<std::pair<uint64_t, std::pair<long, long>>> groups;  // mask -> [begin,end)
    for (long i = 0; i < b_concrete;) {
      uint64_t mask = mask_of_bit[order[i]];
      long j = i;
      while (j < b_concrete && mask_of_bit[order[j]] == mask) ++j;
      groups.push_back({mask, {i, j}});
      i = j;
    }
    std::sort(groups.begin(), groups.end(), [](const auto& a, const auto& b) {
      if (std::popcount(a.first) != std::popcount(b.first))
        return std::popcount(a.first) < std::popcount(b.first);
      return mask_set_less(a.first, b.first);
    });
    for (const auto& [mask, range] : groups) {
      Subfile sf;
      sf.file = file;
      sf.cache_mask = mask;
      sf.length = Rat(range.second - range.first, b_concrete);
      if (build_chains) {
        long i = range.first;
        while (i < range.second) {
          long j = i;
          while (j + 1 < range.second && order[j + 1] == order[j] + 1) ++j;
          sf.content.push_back({file, Rat(order[i], b_concrete), Rat(order[j] + 1, b_concrete), false});
          i = j + 1;
        }
        std::sort(sf.content.begin(), sf.content.end(),
                  [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
      }
      p.subfiles.push_back(std::move(sf));
    }
  }
  if (build_chains) p.build_lookup();
  return p;
}

CachePlacement hybrid_place(const RelayNetwork& network, int num_files, const Rat& M1, int t3,
                            int t4, uint64_t seed) {
  if (network.kind != RelayNetwork::Kind::combination)
    throw std::invalid_argument("hybrid placement needs a combination network");
  const int K = network.num_users;
  const int r = network.subset_size;
  if (K > 62) throw std::invalid_argument("user count must be in [1..62]");
  if (M1 < 0 || M1 > num_files) throw std::invalid_argument("M1 must lie in [0..N]");
  if (t3 < 0 || t3 > K || t4 < 0 || t4 > K) throw std::invalid_argument("t3,t4 must lie in [0..K]");
  if (num_files < K) throw std::invalid_argument("require N >= K");

  CachePlacement p;
  p.kind = PlacementKind::hybrid;
  p.num_users = K;
  p.num_files = num_files;
  p.seed = seed;
  p.t3 = t3;
  p.t4 = t4;
  p.t = t4;
  p.relay_count = network.num_relays;

  Rat rm1 = Rat(r) * M1;
  p.f1_len = rm1 / num_files;
  if (p.f1_len > 1) p.f1_len = 1;
  p.f2_len = 1 - p.f1_len;
  p.relay_block_len = p.f1_len / r;

  Rat m2 = Rat(t3) * std::min(rm1, Rat(num_files)) / K + p.f2_len * t4;
  p.mem_per_user = m2;
  if (m2 > num_files) throw std::invalid_argument("per-user cache requirement exceeds N");

  // F1: K equal cells per file, t3 of them cached per user (seeded draw)
  p.f1_cells.assign(K + 1, std::vector<SegmentChain>(num_files + 1));
  if (p.f1_len > 0 && t3 > 0) {
    std::mt19937_64 rng(seed);
    Rat cell = p.f1_len / K;
    std::vector<int> pool(K);
    for (int user = 1; user <= K; ++user) {
      for (int file = 1; file <= num_files; ++file) {
        std::iota(pool.begin(), pool.end(), 0);
        std::vector<int> chosen;
        for (int i = 0; i < t3; ++i) {
          int j = i + static_cast<int>(rng_below(rng, K - i));
          std::swap(pool[i], pool[j]);
          chosen.push_back(pool[i]);
        }
        std::sort(chosen.begin(), chosen.end());
        for (int c : chosen)
          p.f1_cells[user][file].push_back({file, cell * c, cell * (c + 1), false});
      }
    }
  }

  // F2: centralized t4 placement over [f1_len, 1)
  if (p.f2_len > 0) {
    std::vector<int> all_users(K);
    std::iota(all_users.begin(), all_users.end(), 1);
    auto sets = subsets_of_size(all_users, t4);
    Rat piece = p.f2_len / Int(sets.size());
    for (int file = 1; file <= num_files; ++file) {
      Rat lo = p.f1_len;
      for (const auto& w : sets) {
        Subfile sf;
        sf.file = file;
        sf.cache_mask = user_mask(w);
        sf.length = piece;
        sf.content = {{file, lo, lo + piece, false}};
        lo += piece;
        p.subfiles.push_back(std::move(sf));
      }
    }
  }
  p.build_lookup();
  return p;
}

}  // namespace srds
