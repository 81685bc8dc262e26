#include "srds/delivery.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace srds {

Demand Demand::worst_case(int num_users) {
  Demand d;
  d.files.resize(num_users);
  std::iota(d.files.begin(), d.files.end(), 1);
  return d;
}

Rat BorrowLedger::total_borrowed() const {
  Rat total = 0;
  for (const auto& e : events)
    for (const auto& r : e.rounds)
      for (const auto& t : r.takes) total += t.amount;
  return total;
}

Rat operand_extent(const Operand& op) {
  return op.empty() ? Rat(0) : op.back().pos + op.back().seg.length();
}

const Operand* MulticastMessage::operand_of(int user) const {
  for (const auto& [u, op] : operands)
    if (u == user) return &op;
  return nullptr;
}

namespace {

// Lexicographic enumeration of the size-`count` subsets of a sorted pool,
// without materializing the whole list.
template <typename Fn>
void for_each_subset(const std::vector<int>& pool, int count, Fn&& fn) {
  int n = static_cast<int>(pool.size());
  if (count < 0 || count > n) return;
  if (count == 0) {
    fn(std::vector<int>{});
    return;
  }
  std::vector<int> idx(count);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<int> subset(count);
  while (true) {
    for (int i = 0; i < count; ++i) subset[i] = pool[idx[i]];
    fn(subset);
    int i = count - 1;
    while (i >= 0 && idx[i] == n - count + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < count; ++j) idx[j] = idx[j - 1] + 1;
  }
}

void check_demand(const RelayNetwork& network, const CachePlacement& placement,
                  const Demand& demand) {
  if (demand.size() != network.num_users)
    throw std::invalid_argument("demand length does not match the user count");
  for (int f : demand.files)
    if (f < 1 || f > placement.num_files)
      throw std::invalid_argument("demanded file id out of range");
  if (placement.num_users != network.num_users)
    throw std::invalid_argument("placement and network disagree on the user count");
}

}  // namespace

PartitionResult partition_subfiles(const RelayNetwork& network, const CachePlacement& placement,
                                   const Demand& demand, int group_size, bool log_provenance) {
  check_demand(network, placement, demand);
  const int K = network.num_users;

  PartitionResult out;
  out.pieces_per_file.assign(placement.num_files + 1, 0);
  for (const Subfile& sf : placement.subfiles)
    if (std::popcount(sf.cache_mask) == group_size && sf.length > 0) ++out.pieces_per_file[sf.file];

  std::vector<uint64_t> relay_user_mask(network.num_relays + 1, 0);
  for (int h = 1; h <= network.num_relays; ++h)
    relay_user_mask[h] = user_mask(network.users_of(h));

  std::vector<int> pool(K - 1);
  for (int user = 1; user <= K; ++user) {
    int p = 0;
    for (int u = 1; u <= K; ++u)
      if (u != user) pool[p++] = u;
    const int file = demand.of(user);
    const auto& relays = network.relays_of(user);

    for_each_subset(pool, group_size, [&](const std::vector<int>& w) {
      uint64_t w_mask = user_mask(w);
      const Subfile* sf = placement.find_subfile(file, w_mask);
      if (sf == nullptr || sf->length == 0) return;

      int best = -1;
      for (int h : relays)
        best = std::max(best, std::popcount(relay_user_mask[h] & w_mask));
      std::vector<int> chosen;
      for (int h : relays)
        if (std::popcount(relay_user_mask[h] & w_mask) == best) chosen.push_back(h);

      const int parts = static_cast<int>(chosen.size());
      Rat piece = sf->length / parts;
      out.pieces_per_file[file] += parts - 1;
      for (int i = 0; i < parts; ++i) {
        int h = chosen[i];
        Rat from = piece * i, to = piece * (i + 1);
        SegmentChain slice = chain_slice(sf->content, from, to);
        uint64_t tset_mask = w_mask & relay_user_mask[h];
        chain_append(out.tsets.at_or_create(h, user, tset_mask), slice);
        if (log_provenance)
          out.routes.push_back({user, file, w_mask, h, tset_mask, from, to});
      }
    });
  }
  return out;
}

std::vector<BorrowEvent> borrow_bits(TSetMap& tsets, const RelayNetwork& network, int relay,
                                     const std::vector<int>& users_J) {
  std::vector<BorrowEvent> events;
  const uint64_t j_mask = user_mask(users_J);
  const int degree = static_cast<int>(network.users_of(relay).size());
  const uint64_t relay_mask = user_mask(network.users_of(relay));

  Rat m1 = 0;
  for (int k : users_J) m1 = std::max(m1, tsets.length_of(relay, k, j_mask & ~user_mask({k})));

  for (int k : users_J) {
    const uint64_t key_mask = j_mask & ~user_mask({k});
    Rat current = tsets.length_of(relay, k, key_mask);
    if (current == m1) continue;

    BorrowEvent event;
    event.relay = relay;
    event.user = k;
    event.users_J = users_J;
    event.deficit = m1 - current;

    Rat needed = event.deficit;
    int t2 = static_cast<int>(users_J.size());
    SegmentChain& recipient = tsets.at_or_create(relay, k, key_mask);

    while (true) {
      // donor candidates: T^h_{k,W} with J\{k} inside W, |W| = t2, k outside
      std::vector<std::pair<uint64_t, Rat>> donors;
      auto lo = tsets.sets.lower_bound({relay, k, 0});
      for (auto it = lo; it != tsets.sets.end() && it->first.relay == relay && it->first.user == k;
           ++it) {
        uint64_t w = it->first.known_mask;
        if (std::popcount(w) != t2) continue;
        if ((w & key_mask) != key_mask) continue;
        if (w & user_mask({k})) continue;
        if (w & ~relay_mask) continue;
        Rat len = chain_length(it->second);
        if (len == 0) continue;
        donors.push_back({w, len});
      }
      std::sort(donors.begin(), donors.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return mask_set_less(a.first, b.first);
      });

      Rat available = 0;
      for (const auto& [w, len] : donors) available += len;

      if (available > 0) {
        BorrowRound round;
        round.t2 = t2;
        if (needed >= available) {
          round.threshold_a = 0;
          for (const auto& [w, len] : donors) {
            SegmentChain& donor = tsets.at_or_create(relay, k, w);
            chain_append(recipient, donor);
            donor.clear();
            round.takes.push_back({w, len});
          }
          needed -= available;
        } else {
          const int n = static_cast<int>(donors.size());
          std::vector<Rat> prefix(n + 1, Rat(0));
          for (int i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + donors[i].second;
          int a = n + 1;
          for (int i = 2; i <= n; ++i) {
            if (prefix[i - 1] - donors[i - 1].second * (i - 1) >= needed) {
              a = i;
              break;
            }
          }
          Rat residual = (prefix[a - 1] - needed) / (a - 1);
          round.threshold_a = a;
          for (int i = 0; i < a - 1; ++i) {
            Rat take = donors[i].second - residual;
            SegmentChain& donor = tsets.at_or_create(relay, k, donors[i].first);
            chain_append(recipient, chain_take_prefix(donor, take));
            round.takes.push_back({donors[i].first, take});
          }
          needed = 0;
        }
        event.rounds.push_back(std::move(round));
      }

      if (needed > 0 && t2 < degree - 1)
        ++t2;
      else
        break;
    }

    event.unmet = needed;
    events.push_back(std::move(event));
  }
  return events;
}

std::vector<MulticastMessage> generate_messages(const RelayNetwork& network, TSetMap& tsets,
                                                BorrowLedger& ledger) {
  std::vector<MulticastMessage> messages;
  const int max_degree = network.max_relay_degree();

  for (int t1 = 1; t1 <= max_degree; ++t1) {
    for (int h = 1; h <= network.num_relays; ++h) {
      const auto& users = network.users_of(h);
      if (static_cast<int>(users.size()) < t1) continue;
      for_each_subset(users, t1, [&](const std::vector<int>& J) {
        uint64_t j_mask = user_mask(J);
        Rat longest = 0;
        for (int k : J) longest = std::max(longest, tsets.length_of(h, k, j_mask & ~user_mask({k})));
        if (longest == 0) return;

        auto events = borrow_bits(tsets, network, h, J);
        for (auto& e : events) ledger.events.push_back(std::move(e));

        MulticastMessage msg;
        msg.relay = h;
        msg.users = J;
        msg.length = longest;
        for (int k : J) {
          Operand op;
          // operand keys have size t1-1 and can never serve as donors at a
          // later level, so the chain can be moved out of the map
          auto it = tsets.sets.find({h, k, j_mask & ~user_mask({k})});
          if (it != tsets.sets.end()) {
            Rat pos = 0;
            for (Segment& seg : it->second) {
              Rat len = seg.length();
              op.push_back({pos, std::move(seg)});
              pos += len;
            }
            tsets.sets.erase(it);
          }
          msg.operands.push_back({k, std::move(op)});
        }
        messages.push_back(std::move(msg));
      });
    }
  }
  return messages;
}

DeliveryPlan srds_deliver(const RelayNetwork& network, const CachePlacement& placement,
                          const Demand& demand, bool log_provenance) {
  if (placement.kind != PlacementKind::cman)
    throw std::invalid_argument("srds_deliver expects a centralized placement");
  DeliveryPlan plan;
  plan.demand = demand;
  PartitionResult part = partition_subfiles(network, placement, demand, placement.t, log_provenance);
  plan.pieces_per_file = std::move(part.pieces_per_file);
  plan.routes = std::move(part.routes);
  plan.messages = generate_messages(network, part.tsets, plan.ledger);
  return plan;
}

DeliveryPlan decentralized_deliver(const RelayNetwork& network, const CachePlacement& placement,
                                   const Demand& demand) {
  if (placement.kind != PlacementKind::dman)
    throw std::invalid_argument("decentralized_deliver expects a decentralized placement");
  if (placement.b_concrete < 1)
    throw std::invalid_argument("decentralized delivery needs a concrete-bit placement");

  DeliveryPlan plan;
  plan.demand = demand;
  plan.pieces_per_file.assign(placement.num_files + 1, 0);

  std::vector<char> group_nonempty(placement.num_users + 1, 0);
  for (const Subfile& sf : placement.subfiles)
    if (sf.length > 0) group_nonempty[std::popcount(sf.cache_mask)] = 1;

  for (int group = 0; group < placement.num_users; ++group) {
    if (!group_nonempty[group]) continue;
    PartitionResult part = partition_subfiles(network, placement, demand, group);
    BorrowLedger group_ledger;
    auto msgs = generate_messages(network, part.tsets, group_ledger);
    for (auto& m : msgs) {
      m.group = group;
      plan.messages.push_back(std::move(m));
    }
    for (auto& e : group_ledger.events) plan.ledger.events.push_back(std::move(e));
    for (size_t f = 0; f < part.pieces_per_file.size(); ++f)
      plan.pieces_per_file[f] += part.pieces_per_file[f];
  }
  return plan;
}

DeliveryPlan hybrid_deliver(const RelayNetwork& network, const CachePlacement& placement,
                            const Demand& demand) {
  if (placement.kind != PlacementKind::hybrid)
    throw std::invalid_argument("hybrid_deliver expects a hybrid placement");
  if (network.kind != RelayNetwork::Kind::combination)
    throw std::invalid_argument("hybrid delivery runs on combination networks");
  check_demand(network, placement, demand);

  DeliveryPlan plan;
  plan.demand = demand;
  plan.pieces_per_file.assign(placement.num_files + 1, 0);

  if (placement.f2_len > 0) {
    PartitionResult part = partition_subfiles(network, placement, demand, placement.t4);
    plan.pieces_per_file = std::move(part.pieces_per_file);
    plan.messages = generate_messages(network, part.tsets, plan.ledger);
  }

  if (placement.f1_len > 0) {
    const int r = network.subset_size;
    const int K = network.num_users;
    Rat per_link = placement.f1_len * (1 - Rat(placement.t3, K)) / r;
    for (int h = 1; h <= network.num_relays; ++h) {
      Rat base = placement.relay_block_len * (h - 1);
      for (int k : network.users_of(h))
        plan.coded.push_back({h, k, demand.of(k), base, base + per_link});
    }
  }
  return plan;
}

RebalanceResult rebalance(const DeliveryPlan& plan, const RelayNetwork& network) {
  RebalanceResult result;
  result.plan = plan;
  auto& messages = result.plan.messages;

  const int H = network.num_relays;
  std::vector<Rat> load(H + 1, Rat(0));
  for (const auto& m : messages) load[m.relay] += m.length;

  // Move amounts are quantized down to the plan's existing denominator
  // grid. Without this the half-gap rule keeps splitting hairs between
  // near-equal relays and the fragment denominators grow without bound,
  // which would leave the rebalanced plan without a usable concrete-bit
  // grain. Whole-message moves are never affected.
  Int grid = 1;
  for (const auto& m : messages) {
    grid = int_lcm(grid, rat_den(m.length));
    for (const auto& [user, op] : m.operands)
      for (const auto& ps : op) {
        grid = int_lcm(grid, rat_den(ps.pos));
        grid = int_lcm(grid, rat_den(ps.seg.lo));
        grid = int_lcm(grid, rat_den(ps.seg.hi));
      }
  }
  auto quantize_down = [&grid](const Rat& amount) {
    Rat scaled = amount * grid;
    return Rat(rat_num(scaled) / rat_den(scaled), grid);
  };

  std::vector<uint64_t> relay_user_mask(H + 1, 0);
  for (int h = 1; h <= H; ++h) relay_user_mask[h] = user_mask(network.users_of(h));

  const long long cap = static_cast<long long>(H) * std::max<long long>(1, messages.size());
  long long accepted = 0;

  int i = 1;
  while (i < H) {
    std::vector<int> order(H);
    std::iota(order.begin(), order.end(), 1);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (load[a] != load[b]) return load[a] > load[b];
      return a < b;
    });
    const int src = order[i - 1];

    // best candidate: largest movable amount, ties by user set then target
    int best_msg = -1, best_target = -1;
    Rat best_amount = 0;
    for (int mi = 0; mi < static_cast<int>(messages.size()); ++mi) {
      const auto& m = messages[mi];
      if (m.relay != src || m.length == 0) continue;
      uint64_t j_mask = user_mask(m.users);
      int target = -1;
      for (int pos = i; pos < H; ++pos) {
        int cand = order[pos];
        if ((j_mask & ~relay_user_mask[cand]) == 0) {
          target = cand;  // first hit in sorted order = max load among Q
          break;
        }
      }
      if (target < 0) continue;
      Rat half_gap = (load[src] - load[target]) / 2;
      Rat amount = quantize_down(std::min(m.length, half_gap));
      if (amount <= 0) continue;
      bool better = false;
      if (amount > best_amount) {
        better = true;
      } else if (amount == best_amount && best_msg >= 0) {
        uint64_t best_mask = user_mask(messages[best_msg].users);
        if (j_mask != best_mask ? mask_set_less(j_mask, best_mask) : target < best_target)
          better = true;
      }
      if (better) {
        best_msg = mi;
        best_target = target;
        best_amount = amount;
      }
    }

    if (best_msg < 0) {
      ++i;
      continue;
    }

    MulticastMessage& source = messages[best_msg];
    MulticastMessage fragment;
    fragment.relay = best_target;
    fragment.users = source.users;
    fragment.group = source.group;
    fragment.length = best_amount;
    for (auto& [user, op] : source.operands) {
      Operand head, tail;
      for (const PlacedSegment& ps : op) {
        Rat seg_end = ps.pos + ps.seg.length();
        if (seg_end <= best_amount) {
          head.push_back(ps);
        } else if (ps.pos >= best_amount) {
          tail.push_back({ps.pos - best_amount, ps.seg});
        } else {
          Rat cut = ps.seg.lo + (best_amount - ps.pos);
          head.push_back({ps.pos, {ps.seg.file, ps.seg.lo, cut, ps.seg.coded}});
          tail.push_back({Rat(0), {ps.seg.file, cut, ps.seg.hi, ps.seg.coded}});
        }
      }
      fragment.operands.push_back({user, std::move(head)});
      op = std::move(tail);
    }
    source.length -= best_amount;
    load[src] -= best_amount;
    load[best_target] += best_amount;
    result.moves.push_back({src, best_target, fragment.users, best_amount});
    messages.push_back(std::move(fragment));

    if (++accepted >= cap) {
      result.hit_iteration_cap = true;
      break;
    }
  }

  std::erase_if(messages, [](const MulticastMessage& m) { return m.length == 0; });
  return result;
}

}  // namespace srds
