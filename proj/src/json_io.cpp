#include "srds/json_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace srds {

using nlohmann::json;

namespace {

json rat_json(const Rat& r) { return rat_str(r); }

Rat rat_from_json(const json& j) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  return rat_parse(j.get<std::string>());
}

json network_to_json(const RelayNetwork& network) {
  json j;
  if (network.kind == RelayNetwork::Kind::combination) {
    j["kind"] = "combination";
    j["H"] = network.num_relays;
    j["r"] = network.subset_size;
  } else {
    j["kind"] = "general";
    json relays = json::object();
    for (int h = 1; h <= network.num_relays; ++h)
      relays[std::to_string(h)] = network.users_of(h);
    j["users_of_relay"] = relays;
  }
  return j;
}

RelayNetwork network_from_json(const json& j) {
  if (j.at("kind") == "combination")
    return build_combination_network(j.at("H").get<int>(), j.at("r").get<int>());
  std::map<int, std::vector<int>> users;
  for (const auto& [key, value] : j.at("users_of_relay").items())
    users[std::stoi(key)] = value.get<std::vector<int>>();
  return build_general_network(users);
}

}  // namespace

std::string plan_to_json(const DeliveryPlan& plan, const RelayNetwork& network) {
  json j;
  j["format"] = "srds-plan";
  j["network"] = network_to_json(network);
  j["demand"] = plan.demand.files;

  json messages = json::array();
  for (const auto& m : plan.messages) {
    json msg;
    msg["relay"] = m.relay;
    msg["users"] = m.users;
    msg["length_num"] = rat_num(m.length).convert_to<long long>();
    msg["length_den"] = rat_den(m.length).convert_to<long long>();
    if (m.group >= 0) msg["group"] = m.group;
    json operands = json::array();
    for (const auto& [user, op] : m.operands) {
      json jop;
      jop["user"] = user;
      json segments = json::array();
      Rat expect = 0;
      for (const auto& ps : op) {
        // operands are gap-free prefixes; positions stay implicit
        if (ps.pos != expect) throw std::runtime_error("operand with a gap cannot be dumped");
        segments.push_back({ps.seg.file, rat_json(ps.seg.lo), rat_json(ps.seg.hi)});
        expect += ps.seg.length();
      }
      jop["segments"] = segments;
      operands.push_back(jop);
    }
    msg["operands"] = operands;
    messages.push_back(msg);
  }
  j["messages"] = messages;

  if (!plan.coded.empty()) {
    json coded = json::array();
    for (const auto& c : plan.coded)
      coded.push_back({{"relay", c.relay},
                       {"user", c.user},
                       {"file", c.file},
                       {"unit_lo", rat_json(c.unit_lo)},
                       {"unit_hi", rat_json(c.unit_hi)}});
    j["coded"] = coded;
  }
  return j.dump(2);
}

LoadedPlan plan_from_json(const std::string& text) {
  json j = json::parse(text);
  if (j.value("format", "") != "srds-plan") throw std::invalid_argument("not a plan dump");

  LoadedPlan out;
  out.network = network_from_json(j.at("network"));
  out.plan.demand.files = j.at("demand").get<std::vector<int>>();

  for (const auto& msg : j.at("messages")) {
    MulticastMessage m;
    m.relay = msg.at("relay").get<int>();
    m.users = msg.at("users").get<std::vector<int>>();
    m.length = Rat(Int(msg.at("length_num").get<long long>()),
                   Int(msg.at("length_den").get<long long>()));
    m.group = msg.value("group", -1);
    for (const auto& jop : msg.at("operands")) {
      Operand op;
      Rat pos = 0;
      for (const auto& seg : jop.at("segments")) {
        Segment s;
        s.file = seg.at(0).get<int>();
        s.lo = rat_from_json(seg.at(1));
        s.hi = rat_from_json(seg.at(2));
        if (s.hi < s.lo) throw std::invalid_argument("segment with negative length");
        op.push_back({pos, s});
        pos += s.length();
      }
      m.operands.push_back({jop.at("user").get<int>(), std::move(op)});
    }
    out.plan.messages.push_back(std::move(m));
  }
  if (j.contains("coded")) {
    for (const auto& c : j.at("coded"))
      out.plan.coded.push_back({c.at("relay").get<int>(), c.at("user").get<int>(),
                                c.at("file").get<int>(), rat_from_json(c.at("unit_lo")),
                                rat_from_json(c.at("unit_hi"))});
  }
  return out;
}

std::string placement_to_json(const CachePlacement& placement) {
  json j;
  j["format"] = "srds-placement";
  j["kind"] = placement.kind == PlacementKind::cman   ? "cman"
              : placement.kind == PlacementKind::dman ? "dman"
                                                      : "hybrid";
  j["num_users"] = placement.num_users;
  j["num_files"] = placement.num_files;
  j["t"] = placement.t;
  j["seed"] = placement.seed;
  if (placement.kind == PlacementKind::dman) {
    j["M"] = rat_json(placement.dman_M);
    j["b_concrete"] = placement.b_concrete;
  }
  if (placement.kind == PlacementKind::hybrid) {
    j["f1_len"] = rat_json(placement.f1_len);
    j["t3"] = placement.t3;
    j["t4"] = placement.t4;
    j["relay_count"] = placement.relay_count;
    json cells = json::array();
    for (int k = 1; k <= placement.num_users; ++k)
      for (int f = 1; f <= placement.num_files; ++f) {
        if (placement.f1_cells[k][f].empty()) continue;
        json entry;
        entry["user"] = k;
        entry["file"] = f;
        json list = json::array();
        for (const auto& seg : placement.f1_cells[k][f])
          list.push_back({rat_json(seg.lo), rat_json(seg.hi)});
        entry["cells"] = list;
        cells.push_back(entry);
      }
    j["f1_cells"] = cells;
  }

  json subfiles = json::array();
  for (const auto& sf : placement.subfiles) {
    json entry;
    entry["file"] = sf.file;
    entry["W"] = sf.cache_set();
    json segments = json::array();
    for (const auto& seg : sf.content) segments.push_back({rat_json(seg.lo), rat_json(seg.hi)});
    entry["segments"] = segments;
    subfiles.push_back(entry);
  }
  j["subfiles"] = subfiles;

  // the debug view the format is named for: per-user (file, W, lo, hi)
  json users = json::array();
  for (int k = 1; k <= placement.num_users; ++k) {
    json entry;
    entry["user"] = k;
    json cached = json::array();
    uint64_t bit = uint64_t(1) << (k - 1);
    for (const auto& sf : placement.subfiles) {
      if (!(sf.cache_mask & bit)) continue;
      for (const auto& seg : sf.content)
        cached.push_back({sf.file, sf.cache_set(), rat_json(seg.lo), rat_json(seg.hi)});
    }
    entry["cached"] = cached;
    users.push_back(entry);
  }
  j["users"] = users;
  return j.dump(2);
}

CachePlacement placement_from_json(const std::string& text) {
  json j = json::parse(text);
  if (j.value("format", "") != "srds-placement") throw std::invalid_argument("not a placement dump");

  CachePlacement p;
  std::string kind = j.at("kind").get<std::string>();
  p.kind = kind == "cman" ? PlacementKind::cman
           : kind == "dman" ? PlacementKind::dman
                            : PlacementKind::hybrid;
  p.num_users = j.at("num_users").get<int>();
  p.num_files = j.at("num_files").get<int>();
  p.t = j.at("t").get<int>();
  p.seed = j.value("seed", 0ULL);
  if (p.kind == PlacementKind::dman) {
    p.dman_M = rat_from_json(j.at("M"));
    p.b_concrete = j.at("b_concrete").get<long>();
  }
  if (p.kind == PlacementKind::hybrid) {
    p.f1_len = rat_from_json(j.at("f1_len"));
    p.f2_len = 1 - p.f1_len;
    p.t3 = j.at("t3").get<int>();
    p.t4 = j.at("t4").get<int>();
    p.relay_count = j.at("relay_count").get<int>();
    p.relay_block_len = p.relay_count > 0 ? p.f1_len / p.relay_count : Rat(0);
    p.f1_cells.assign(p.num_users + 1, std::vector<SegmentChain>(p.num_files + 1));
    for (const auto& entry : j.at("f1_cells")) {
      int user = entry.at("user").get<int>();
      int file = entry.at("file").get<int>();
      for (const auto& cell : entry.at("cells"))
        p.f1_cells[user][file].push_back(
            {file, rat_from_json(cell.at(0)), rat_from_json(cell.at(1)), false});
    }
  }

  for (const auto& entry : j.at("subfiles")) {
    Subfile sf;
    sf.file = entry.at("file").get<int>();
    sf.cache_mask = user_mask(entry.at("W").get<std::vector<int>>());
    for (const auto& seg : entry.at("segments"))
      sf.content.push_back({sf.file, rat_from_json(seg.at(0)), rat_from_json(seg.at(1)), false});
    sf.length = chain_length(sf.content);
    p.subfiles.push_back(std::move(sf));
  }
  p.build_lookup();
  return p;
}

std::string loads_to_json(const LoadReport& report, const RelayNetwork& network) {
  json j;
  json server = json::array();
  for (int h = 1; h <= network.num_relays; ++h)
    server.push_back({{"relay", h}, {"load", rat_json(report.server_to_relay[h])}});
  j["server_to_relay"] = server;
  json links = json::array();
  for (const auto& [link, load] : report.relay_to_user)
    links.push_back({{"relay", link.first}, {"user", link.second}, {"load", rat_json(load)}});
  j["relay_to_user"] = links;
  j["max_server_to_relay"] = rat_json(report.max_server_to_relay);
  j["max_relay_to_user"] = rat_json(report.max_relay_to_user);
  j["max_link_load"] = rat_json(report.max_link_load);
  return j.dump(2);
}

std::string reports_to_json(const std::vector<UserReport>& reports) {
  json j = json::array();
  for (const auto& r : reports) {
    json entry;
    entry["user"] = r.user;
    entry["pass"] = r.pass;
    if (!r.missing_atom.empty()) entry["missing_atom"] = r.missing_atom;
    entry["decoded_fraction"] = rat_json(r.decoded_fraction);
    j.push_back(entry);
  }
  return j.dump(2);
}

bool verify_plan_dump(const std::string& plan_json, const std::string& placement_json,
                      std::string* detail) {
  LoadedPlan loaded = plan_from_json(plan_json);
  CachePlacement placement = placement_from_json(placement_json);
  auto reports = verify_decodability(loaded.network, placement, loaded.plan, loaded.plan.demand);
  if (detail != nullptr) *detail = reports_to_json(reports);
  return all_users_pass(reports);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

}  // namespace srds
