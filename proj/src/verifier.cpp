#include "srds/verifier.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <unordered_map>

namespace srds {

LoadReport compute_loads(const DeliveryPlan& plan, const RelayNetwork& network) {
  LoadReport report;
  report.server_to_relay.assign(network.num_relays + 1, Rat(0));
  for (const auto& m : plan.messages) {
    report.server_to_relay[m.relay] += m.length;
    for (int user : m.users) report.relay_to_user[{m.relay, user}] += m.length;
  }
  for (const auto& c : plan.coded) report.relay_to_user[{c.relay, c.user}] += c.length();

  for (int h = 1; h <= network.num_relays; ++h)
    report.max_server_to_relay = std::max(report.max_server_to_relay, report.server_to_relay[h]);
  for (const auto& [link, load] : report.relay_to_user)
    report.max_relay_to_user = std::max(report.max_relay_to_user, load);
  report.max_link_load = std::max(report.max_server_to_relay, report.max_relay_to_user);
  return report;
}

bool all_users_pass(const std::vector<UserReport>& reports) {
  for (const auto& r : reports)
    if (!r.pass) return false;
  return true;
}

Int plan_denominator_lcm(const DeliveryPlan& plan, const CachePlacement& placement) {
  Int acc = 1;
  auto add = [&acc](const Rat& r) { acc = int_lcm(acc, rat_den(r)); };
  for (int f = 1; f <= placement.num_files; ++f)
    for (const auto& run : placement.runs_of_file(f)) {
      add(run.lo);
      add(run.hi);
    }
  if (placement.kind == PlacementKind::hybrid) {
    add(placement.f1_len);
    add(placement.relay_block_len);
    for (const auto& per_user : placement.f1_cells)
      for (const auto& cells : per_user)
        for (const auto& seg : cells) {
          add(seg.lo);
          add(seg.hi);
        }
  }
  for (const auto& m : plan.messages) {
    add(m.length);
    for (const auto& [user, op] : m.operands)
      for (const auto& ps : op) {
        add(ps.pos);
        add(ps.seg.lo);
        add(ps.seg.hi);
      }
  }
  for (const auto& c : plan.coded) {
    add(c.unit_lo);
    add(c.unit_hi);
  }
  return acc;
}

namespace {

// Everything the symbolic check touches lives on the 1/grain grid, so the
// atom refinement runs on int64 scaled coordinates instead of rationals.
struct ScaledGrid {
  int64_t grain = 1;

  int64_t at(const Rat& r) const {
    Rat scaled = r * grain;
    if (rat_den(scaled) != 1) throw std::runtime_error("value off the plan grid");
    return rat_num(scaled).convert_to<int64_t>();
  }
  Rat back(int64_t v) const { return Rat(v, grain); }
};

struct AtomSpace {
  ScaledGrid grid;
  std::vector<std::vector<int64_t>> endpoints;  // [file], sorted unique
  std::vector<int64_t> offset;                  // [file] -> first global atom id
  int64_t total = 0;

  int64_t atom_count(int file) const {
    return static_cast<int64_t>(endpoints[file].size()) - 1;
  }
  int64_t atom_at(int file, int64_t lo) const {
    const auto& e = endpoints[file];
    auto it = std::lower_bound(e.begin(), e.end(), lo);
    if (it == e.end() || *it != lo) throw std::runtime_error("interval not aligned to atom grid");
    return offset[file] + (it - e.begin());
  }
  std::pair<int64_t, int64_t> atom_range(int file, int64_t lo, int64_t hi) const {
    const auto& e = endpoints[file];
    auto it_lo = std::lower_bound(e.begin(), e.end(), lo);
    auto it_hi = std::lower_bound(e.begin(), e.end(), hi);
    if (it_lo == e.end() || *it_lo != lo || it_hi == e.end() || *it_hi != hi)
      throw std::runtime_error("interval not aligned to atom grid");
    return {offset[file] + (it_lo - e.begin()), offset[file] + (it_hi - e.begin())};
  }
  Rat atom_length(int file, int64_t local_idx) const {
    return grid.back(endpoints[file][local_idx + 1] - endpoints[file][local_idx]);
  }
};

struct ScaledPlaced {
  int file = 0;
  int64_t pos = 0, lo = 0, hi = 0;
};

void sort_unique(std::vector<int64_t>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

AtomSpace build_atoms(const CachePlacement& placement, const DeliveryPlan& plan,
                      const std::vector<std::vector<ScaledPlaced>>& scaled_ops,
                      const std::vector<int64_t>& scaled_len, const ScaledGrid& grid) {
  const int num_files = placement.num_files;
  std::vector<std::vector<int64_t>> pts(num_files + 1);
  int64_t xor_lo = placement.kind == PlacementKind::hybrid ? grid.at(placement.f1_len) : 0;
  for (int f = 1; f <= num_files; ++f) {
    pts[f].push_back(xor_lo);
    pts[f].push_back(grid.grain);
    for (const auto& run : placement.runs_of_file(f)) {
      pts[f].push_back(grid.at(run.lo));
      pts[f].push_back(grid.at(run.hi));
    }
  }
  for (size_t mi = 0; mi < scaled_ops.size(); ++mi) {
    for (const auto& sp : scaled_ops[mi]) {
      if (sp.file < 1 || sp.file > num_files || sp.lo < 0 || sp.hi > grid.grain)
        throw std::runtime_error("message references an unknown segment");
      pts[sp.file].push_back(sp.lo);
      pts[sp.file].push_back(sp.hi);
    }
  }
  for (auto& v : pts) sort_unique(v);

  // closure: cuts induced through one message's aligned positions become
  // endpoints in every operand segment they cross
  for (int round = 0;; ++round) {
    if (round > 64) throw std::runtime_error("atom refinement failed to converge");
    std::vector<std::vector<int64_t>> fresh(num_files + 1);
    std::vector<int64_t> cuts;
    for (size_t mi = 0; mi < scaled_ops.size(); ++mi) {
      cuts.clear();
      cuts.push_back(0);
      cuts.push_back(scaled_len[mi]);
      for (const auto& sp : scaled_ops[mi]) {
        cuts.push_back(sp.pos);
        cuts.push_back(sp.pos + (sp.hi - sp.lo));
        const auto& e = pts[sp.file];
        for (auto it = std::upper_bound(e.begin(), e.end(), sp.lo); it != e.end() && *it < sp.hi;
             ++it)
          cuts.push_back(sp.pos + (*it - sp.lo));
      }
      sort_unique(cuts);
      for (const auto& sp : scaled_ops[mi]) {
        int64_t end = sp.pos + (sp.hi - sp.lo);
        for (auto it = std::upper_bound(cuts.begin(), cuts.end(), sp.pos);
             it != cuts.end() && *it < end; ++it) {
          int64_t induced = sp.lo + (*it - sp.pos);
          const auto& e = pts[sp.file];
          if (!std::binary_search(e.begin(), e.end(), induced)) fresh[sp.file].push_back(induced);
        }
      }
    }
    bool changed = false;
    for (int f = 1; f <= num_files; ++f) {
      if (fresh[f].empty()) continue;
      changed = true;
      pts[f].insert(pts[f].end(), fresh[f].begin(), fresh[f].end());
      sort_unique(pts[f]);
    }
    if (!changed) break;
  }

  AtomSpace atoms;
  atoms.grid = grid;
  atoms.endpoints = std::move(pts);
  atoms.offset.assign(num_files + 1, 0);
  for (int f = 1; f <= num_files; ++f) {
    atoms.offset[f] = atoms.total;
    atoms.total += atoms.atom_count(f);
  }
  return atoms;
}

// Online GF(2) elimination: a dense bitmap holds atoms already known to be
// single-handedly derivable, a sparse map the rare multi-atom residual
// rows (keyed by their smallest atom).
struct Gf2Basis {
  std::vector<uint8_t> unit;
  std::unordered_map<int64_t, std::vector<int64_t>> rows;

  explicit Gf2Basis(int64_t universe) : unit(universe, 0) {}

  static std::vector<int64_t> row_xor(const std::vector<int64_t>& a,
                                      const std::vector<int64_t>& b) {
    std::vector<int64_t> out;
    out.reserve(a.size() + b.size());
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
  }

  void add_unit(int64_t atom) {
    if (unit[atom]) return;
    unit[atom] = 1;
    auto it = rows.find(atom);
    if (it != rows.end()) {
      auto row = std::move(it->second);
      rows.erase(it);
      add_row(std::move(row));
    }
  }

  void add_row(std::vector<int64_t> row) {
    while (true) {
      std::erase_if(row, [&](int64_t a) { return unit[a] != 0; });
      if (row.empty()) return;
      if (row.size() == 1) {
        add_unit(row[0]);
        return;
      }
      auto it = rows.find(row[0]);
      if (it == rows.end()) {
        rows.emplace(row[0], std::move(row));
        return;
      }
      row = row_xor(row, it->second);
    }
  }

  bool in_span(int64_t atom) const {
    if (unit[atom]) return true;
    std::vector<int64_t> row{atom};
    while (true) {
      std::vector<int64_t> stripped;
      for (int64_t a : row)
        if (!unit[a]) stripped.push_back(a);
      if (stripped.empty()) return true;
      auto it = rows.find(stripped[0]);
      if (it == rows.end()) return false;
      row = row_xor(stripped, it->second);
    }
  }
};

std::string atom_name(const AtomSpace& atoms, int file, int64_t local_idx) {
  return "file " + std::to_string(file) + " [" +
         rat_str(atoms.grid.back(atoms.endpoints[file][local_idx])) + ", " +
         rat_str(atoms.grid.back(atoms.endpoints[file][local_idx + 1])) + ")";
}

}  // namespace

std::vector<UserReport> verify_decodability(const RelayNetwork& network,
                                            const CachePlacement& placement,
                                            const DeliveryPlan& plan, const Demand& demand) {
  if (demand.size() != network.num_users)
    throw std::invalid_argument("demand length does not match the user count");
  const int K = network.num_users;

  Int grain_int = plan_denominator_lcm(plan, placement);
  if (grain_int > Int(int64_t(1) << 62))
    throw std::runtime_error("plan grid too fine for the symbolic checker");
  ScaledGrid grid{grain_int.convert_to<int64_t>()};

  // scale all operands once
  std::vector<std::vector<ScaledPlaced>> scaled_ops(plan.messages.size());
  std::vector<int64_t> scaled_len(plan.messages.size());
  for (size_t mi = 0; mi < plan.messages.size(); ++mi) {
    const auto& m = plan.messages[mi];
    scaled_len[mi] = grid.at(m.length);
    for (const auto& [user, op] : m.operands) {
      if (operand_extent(op) > m.length)
        throw std::runtime_error("operand extends past its message length");
      for (const auto& ps : op) {
        if (ps.seg.coded) throw std::runtime_error("coded segment inside a multicast operand");
        scaled_ops[mi].push_back(
            {ps.seg.file, grid.at(ps.pos), grid.at(ps.seg.lo), grid.at(ps.seg.hi)});
      }
    }
  }

  AtomSpace atoms = build_atoms(placement, plan, scaled_ops, scaled_len, grid);

  std::vector<Gf2Basis> basis(K + 1, Gf2Basis(atoms.total));

  for (int f = 1; f <= placement.num_files; ++f) {
    for (const auto& run : placement.runs_of_file(f)) {
      auto [first, last] = atoms.atom_range(f, grid.at(run.lo), grid.at(run.hi));
      uint64_t mask = placement.subfiles[run.subfile_idx].cache_mask;
      for (int k = 1; k <= K; ++k)
        if (mask & (uint64_t(1) << (k - 1)))
          for (int64_t a = first; a < last; ++a) basis[k].add_unit(a);
    }
  }

  // one row per atom-aligned position group of every message
  std::vector<int64_t> cuts;
  for (size_t mi = 0; mi < plan.messages.size(); ++mi) {
    const auto& m = plan.messages[mi];
    cuts.clear();
    cuts.push_back(0);
    cuts.push_back(scaled_len[mi]);
    for (const auto& sp : scaled_ops[mi]) {
      cuts.push_back(sp.pos);
      cuts.push_back(sp.pos + (sp.hi - sp.lo));
      const auto& e = atoms.endpoints[sp.file];
      for (auto it = std::upper_bound(e.begin(), e.end(), sp.lo); it != e.end() && *it < sp.hi;
           ++it)
        cuts.push_back(sp.pos + (*it - sp.lo));
    }
    sort_unique(cuts);

    std::vector<std::vector<int64_t>> rows;
    std::vector<int64_t> row;
    for (size_t c = 0; c + 1 < cuts.size(); ++c) {
      row.clear();
      for (const auto& sp : scaled_ops[mi]) {
        int64_t end = sp.pos + (sp.hi - sp.lo);
        if (sp.pos <= cuts[c] && cuts[c + 1] <= end)
          row.push_back(atoms.atom_at(sp.file, sp.lo + (cuts[c] - sp.pos)));
      }
      if (row.empty()) continue;
      std::sort(row.begin(), row.end());
      std::vector<int64_t> reduced;  // positional XOR: repeated atoms cancel
      for (size_t i = 0; i < row.size();) {
        size_t j = i;
        while (j < row.size() && row[j] == row[i]) ++j;
        if ((j - i) % 2 == 1) reduced.push_back(row[i]);
        i = j;
      }
      if (!reduced.empty()) rows.push_back(std::move(reduced));
    }

    for (int k : m.users) {
      if (k < 1 || k > K) throw std::runtime_error("message addressed to an unknown user");
      const auto& relays = network.relays_of(k);
      if (!std::binary_search(relays.begin(), relays.end(), m.relay)) continue;
      for (const auto& r : rows) basis[k].add_row(r);
    }
  }

  // coded-unit accounting for the hybrid scheme (rank rule)
  std::vector<Rat> coded_received(K + 1, Rat(0));
  for (const auto& c : plan.coded) {
    if (c.unit_lo < 0 || c.unit_hi < c.unit_lo) throw std::runtime_error("bad coded transfer range");
    Rat relay_lo = placement.relay_block_len * (c.relay - 1);
    Rat relay_hi = placement.relay_block_len * c.relay;
    if (c.unit_lo < relay_lo || c.unit_hi > relay_hi)
      throw std::runtime_error("coded transfer outside the relay's cached blocks");
    const auto& relays = network.relays_of(c.user);
    if (!std::binary_search(relays.begin(), relays.end(), c.relay)) continue;
    if (c.file == demand.of(c.user)) coded_received[c.user] += c.length();
  }

  std::vector<UserReport> reports;
  for (int k = 1; k <= K; ++k) {
    UserReport rep;
    rep.user = k;
    rep.pass = true;
    const int want = demand.of(k);
    Rat got = 0;

    if (placement.kind == PlacementKind::hybrid && placement.f1_len > 0) {
      Rat plain = chain_length(placement.f1_cells[k][want]);
      Rat units = plain + coded_received[k];
      if (units >= placement.f1_len) {
        got += placement.f1_len;
      } else {
        got += plain;
        rep.pass = false;
        rep.missing_atom = "coded units of file " + std::to_string(want) + " (have " +
                           rat_str(units) + " of " + rat_str(placement.f1_len) + ")";
      }
    }

    for (int64_t a = 0; a < atoms.atom_count(want); ++a) {
      if (basis[k].in_span(atoms.offset[want] + a)) {
        got += atoms.atom_length(want, a);
      } else if (rep.pass) {
        rep.pass = false;
        rep.missing_atom = atom_name(atoms, want, a);
      }
    }
    rep.decoded_fraction = got;
    reports.push_back(std::move(rep));
  }
  return reports;
}

namespace {

long to_bits(const Rat& x, long b) {
  Rat scaled = x * b;
  if (rat_den(scaled) != 1) throw std::invalid_argument("length does not map to whole bits");
  return static_cast<long>(rat_num(scaled).convert_to<long long>());
}

struct BitMatrix {
  int cols = 0;
  std::vector<std::vector<uint64_t>> rows;
  std::vector<uint8_t> rhs;

  explicit BitMatrix(int columns) : cols(columns) {}

  void add_row(std::vector<uint64_t> bits, bool value) {
    rows.push_back(std::move(bits));
    rhs.push_back(value ? 1 : 0);
  }

  // unique solution or empty on rank deficiency
  std::vector<uint8_t> solve() {
    const int words = (cols + 63) / 64;
    const int n = static_cast<int>(rows.size());
    std::vector<int> pivot_row(cols, -1);
    int rank = 0;
    for (int col = 0; col < cols && rank < n; ++col) {
      int sel = -1;
      for (int r = rank; r < n; ++r) {
        if (rows[r][col / 64] >> (col % 64) & 1u) {
          sel = r;
          break;
        }
      }
      if (sel < 0) continue;
      std::swap(rows[sel], rows[rank]);
      std::swap(rhs[sel], rhs[rank]);
      for (int r = 0; r < n; ++r) {
        if (r != rank && (rows[r][col / 64] >> (col % 64) & 1u)) {
          for (int w = 0; w < words; ++w) rows[r][w] ^= rows[rank][w];
          rhs[r] = rhs[r] ^ rhs[rank];
        }
      }
      pivot_row[col] = rank;
      ++rank;
    }
    if (rank < cols) return {};
    std::vector<uint8_t> solution(cols, 0);
    for (int col = 0; col < cols; ++col) solution[col] = rhs[pivot_row[col]];
    return solution;
  }
};

std::vector<uint64_t> random_row(std::mt19937_64& rng, long cols) {
  std::vector<uint64_t> row((cols + 63) / 64, 0);
  for (auto& w : row) w = rng();
  long tail = cols % 64;
  if (tail) row.back() &= (uint64_t(1) << tail) - 1;
  return row;
}

}  // namespace

SimulateResult simulate_concrete(const RelayNetwork& network, const CachePlacement& placement,
                                 const DeliveryPlan& plan, const Demand& demand, long b_concrete,
                                 uint64_t seed, const SimulateOptions& options) {
  Int grain = plan_denominator_lcm(plan, placement);
  if (b_concrete < 1 || Int(b_concrete) % grain != 0)
    throw std::invalid_argument("concrete length must be a positive multiple of " + grain.str());

  const int K = network.num_users;
  const long B = b_concrete;

  std::vector<std::vector<uint8_t>> files(placement.num_files + 1);
  for (int f = 1; f <= placement.num_files; ++f) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + f);
    files[f].resize(B);
    for (long i = 0; i < B; ++i) files[f][i] = static_cast<uint8_t>(rng() & 1u);
  }

  std::vector<std::vector<uint8_t>> payloads(plan.messages.size());
  for (size_t mi = 0; mi < plan.messages.size(); ++mi) {
    const auto& m = plan.messages[mi];
    payloads[mi].assign(to_bits(m.length, B), 0);
    for (const auto& [user, op] : m.operands) {
      for (const auto& ps : op) {
        long at = to_bits(ps.pos, B);
        long lo = to_bits(ps.seg.lo, B), hi = to_bits(ps.seg.hi, B);
        for (long b = lo; b < hi; ++b) payloads[mi][at + (b - lo)] ^= files[ps.seg.file][b];
      }
    }
  }
  if (options.corrupt_bit) {
    auto [mi, bit] = *options.corrupt_bit;
    payloads.at(mi).at(bit) ^= 1u;
  }

  // MDS-coded relay blocks (hybrid): retry the block draw until every user's
  // linear system is uniquely solvable; random square GF(2) systems are
  // singular with constant probability, so a deterministic retry loop is
  // required.
  const long f1_bits = placement.kind == PlacementKind::hybrid ? to_bits(placement.f1_len, B) : 0;
  const long block_bits =
      placement.kind == PlacementKind::hybrid ? to_bits(placement.relay_block_len, B) : 0;
  std::vector<std::vector<uint8_t>> f1_solutions(K + 1);
  std::string f1_note;
  if (f1_bits > 0) {
    bool solved = false;
    for (uint64_t attempt = 0; attempt < 4096 && !solved; ++attempt) {
      std::map<std::pair<int, int>, std::vector<std::vector<uint64_t>>> blocks;
      auto block_rows = [&](int relay, int file) -> const std::vector<std::vector<uint64_t>>& {
        auto it = blocks.find({relay, file});
        if (it == blocks.end()) {
          std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + attempt * 0x2545f4914f6cdd1dULL +
                              uint64_t(relay) * 131071 + uint64_t(file));
          std::vector<std::vector<uint64_t>> rows;
          rows.reserve(block_bits);
          for (long u = 0; u < block_bits; ++u) rows.push_back(random_row(rng, f1_bits));
          it = blocks.emplace(std::pair(relay, file), std::move(rows)).first;
        }
        return it->second;
      };
      solved = true;
      for (int k = 1; k <= K && solved; ++k) {
        const int want = demand.of(k);
        BitMatrix system(static_cast<int>(f1_bits));
        for (const auto& cell : placement.f1_cells[k][want]) {
          long lo = to_bits(cell.lo, B), hi = to_bits(cell.hi, B);
          for (long b = lo; b < hi; ++b) {
            std::vector<uint64_t> row((f1_bits + 63) / 64, 0);
            row[b / 64] |= uint64_t(1) << (b % 64);
            system.add_row(std::move(row), files[want][b] != 0);
          }
        }
        for (const auto& c : plan.coded) {
          if (c.user != k || c.file != want) continue;
          const auto& rows = block_rows(c.relay, c.file);
          long base = to_bits(c.unit_lo - placement.relay_block_len * (c.relay - 1), B);
          long count = to_bits(c.length(), B);
          for (long u = 0; u < count; ++u) {
            const auto& row = rows[base + u];
            bool value = false;
            for (long b = 0; b < f1_bits; ++b)
              if (row[b / 64] >> (b % 64) & 1u) value ^= (files[want][b] != 0);
            system.add_row(row, value);
          }
        }
        auto sol = system.solve();
        if (sol.empty())
          solved = false;
        else
          f1_solutions[k] = std::move(sol);
      }
    }
    if (!solved) f1_note = "coded-unit systems stayed singular across retries";
  }

  SimulateResult result;
  result.user_ok.assign(K + 1, 1);

  for (int k = 1; k <= K; ++k) {
    const int want = demand.of(k);
    std::vector<uint8_t> value(B, 0), known(B, 0);

    for (const auto& run : placement.runs_of_file(want)) {
      if (!(placement.subfiles[run.subfile_idx].cache_mask & (uint64_t(1) << (k - 1)))) continue;
      long lo = to_bits(run.lo, B), hi = to_bits(run.hi, B);
      for (long b = lo; b < hi; ++b) {
        value[b] = files[want][b];
        known[b] = 1;
      }
    }

    if (placement.kind == PlacementKind::hybrid && f1_bits > 0) {
      if (f1_solutions[k].empty()) {
        result.user_ok[k] = 0;
        continue;
      }
      for (long b = 0; b < f1_bits; ++b) {
        value[b] = f1_solutions[k][b];
        known[b] = 1;
      }
    }

    const auto& relays = network.relays_of(k);
    for (size_t mi = 0; mi < plan.messages.size(); ++mi) {
      const auto& m = plan.messages[mi];
      if (!std::binary_search(relays.begin(), relays.end(), m.relay)) continue;
      if (std::find(m.users.begin(), m.users.end(), k) == m.users.end()) continue;

      std::vector<uint8_t> residual = payloads[mi];
      bool peelable = true;
      for (const auto& [user, op] : m.operands) {
        if (user == k) continue;
        for (const auto& ps : op) {
          if (!placement.user_caches_interval(k, ps.seg.file, ps.seg.lo, ps.seg.hi)) {
            peelable = false;
            break;
          }
          long at = to_bits(ps.pos, B);
          long lo = to_bits(ps.seg.lo, B), hi = to_bits(ps.seg.hi, B);
          for (long b = lo; b < hi; ++b) residual[at + (b - lo)] ^= files[ps.seg.file][b];
        }
        if (!peelable) break;
      }
      if (!peelable) continue;

      const Operand* own = m.operand_of(k);
      if (own == nullptr) continue;
      for (const auto& ps : *own) {
        if (ps.seg.file != want) continue;
        long at = to_bits(ps.pos, B);
        long lo = to_bits(ps.seg.lo, B), hi = to_bits(ps.seg.hi, B);
        for (long b = lo; b < hi; ++b) {
          value[b] = residual[at + (b - lo)];
          known[b] = 1;
        }
      }
    }

    for (long b = 0; b < B; ++b) {
      if (!known[b] || value[b] != files[want][b]) {
        result.user_ok[k] = 0;
        break;
      }
    }
  }

  result.pass = true;
  for (int k = 1; k <= K; ++k)
    if (!result.user_ok[k]) result.pass = false;
  if (!f1_note.empty()) result.note = f1_note;
  return result;
}

}  // namespace srds
