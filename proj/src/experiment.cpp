#include "srds/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <future>
#include <ostream>
#include <sstream>

namespace srds {

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    size_t a = item.find_first_not_of(" \t");
    size_t b = item.find_last_not_of(" \t");
    if (a == std::string::npos) continue;
    out.push_back(item.substr(a, b - a + 1));
  }
  return out;
}

bool parse_flag(const std::string& value) {
  if (value == "on" || value == "true" || value == "1" || value == "yes") return true;
  if (value == "off" || value == "false" || value == "0" || value == "no") return false;
  throw std::invalid_argument("expected on/off, got '" + value + "'");
}

std::string float_str(const Rat& r) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", rat_double(r));
  return buf;
}

}  // namespace

ExperimentConfig ExperimentConfig::parse_text(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    std::string value;
    std::getline(ls, value);
    size_t a = value.find_first_not_of(" \t");
    value = a == std::string::npos ? "" : value.substr(a);
    size_t b = value.find_last_not_of(" \t\r");
    if (b != std::string::npos) value = value.substr(0, b + 1);

    if (key == "mode") cfg.mode = value;
    else if (key == "topology") {
      if (value.rfind("file=", 0) == 0) cfg.topology_file = value.substr(5);
      else cfg.topology = value;
    }
    else if (key == "N") cfg.num_files = std::stoi(value);
    else if (key == "M") {
      for (const auto& item : split_list(value)) cfg.sweep_M.push_back(rat_parse(item));
    }
    else if (key == "demand") {
      if (value != "worst-case")
        for (const auto& item : split_list(value)) cfg.demand.push_back(std::stoi(item));
    }
    else if (key == "seed") cfg.seed = std::stoull(value);
    else if (key == "B_concrete") cfg.b_concrete = value == "auto" ? -1 : std::stol(value);
    else if (key == "t3") cfg.t3 = std::stoi(value);
    else if (key == "t4") cfg.t4 = std::stoi(value);
    else if (key == "rebalance") cfg.rebalance = parse_flag(value);
    else if (key == "verify") cfg.verify = parse_flag(value);
    else if (key == "compare") cfg.compare = parse_flag(value);
    else if (key == "scenario") cfg.scenario = value;
    else if (key == "out") cfg.out_path = value;
    else if (key == "dump_plan") cfg.dump_plan_path = value;
    else if (key == "dump_placement") cfg.dump_placement_path = value;
    else throw std::invalid_argument("unknown config key '" + key + "'");
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::parse_file(const std::string& path) {
  return parse_text(read_text_file(path));
}

namespace {

struct PointOutcome {
  SweepRow row;
  std::string plan_json;
  std::string placement_json;
  std::string error;
};

PointOutcome run_point(const ExperimentConfig& cfg, const RelayNetwork& network, int num_files,
                       const Demand& demand, const Rat& M, bool want_dumps) {
  PointOutcome out;
  out.row.M = M;
  const int K = network.num_users;

  CachePlacement placement;
  DeliveryPlan plan;

  if (cfg.mode == "centralized" || cfg.mode == "general") {
    Rat t_exact = Rat(K) * M / num_files;
    if (rat_den(t_exact) != 1) {
      out.error = "M=" + rat_str(M) + " gives non-integer t=" + rat_str(t_exact);
      return out;
    }
    int t = rat_num(t_exact).convert_to<int>();
    if (t < 0 || t > K) {
      out.error = "t out of range for M=" + rat_str(M);
      return out;
    }
    out.row.t_or_tprime = t;
    placement = cman_place(K, num_files, t);
    plan = srds_deliver(network, placement, demand);
  } else if (cfg.mode == "decentralized") {
    long grain = cfg.b_concrete > 0 ? cfg.b_concrete : 1000;
    placement = dman_place(K, num_files, M, cfg.seed, grain);
    plan = decentralized_deliver(network, placement, demand);
  } else if (cfg.mode == "hybrid") {
    if (cfg.t3 < 0 || cfg.t4 < 0) {
      out.error = "hybrid mode needs t3 and t4";
      return out;
    }
    out.row.t_or_tprime = cfg.t4;
    placement = hybrid_place(network, num_files, M, cfg.t3, cfg.t4, cfg.seed);
    plan = hybrid_deliver(network, placement, demand);
  } else {
    out.error = "unknown mode '" + cfg.mode + "'";
    return out;
  }

  if (cfg.rebalance) plan = rebalance(plan, network).plan;

  LoadReport loads = compute_loads(plan, network);
  out.row.load_max = loads.max_link_load;
  out.row.load_server_max = loads.max_server_to_relay;
  out.row.load_link_max = loads.max_relay_to_user;

  if (network.kind == RelayNetwork::Kind::combination && network.subset_size == 2 &&
      (cfg.mode == "centralized" || cfg.mode == "general"))
    out.row.closed_form = closed_form_load_r2(network.num_relays, out.row.t_or_tprime);

  if (cfg.verify) {
    auto reports = verify_decodability(network, placement, plan, demand);
    out.row.verified_ok = all_users_pass(reports);
    if (out.row.verified_ok && cfg.b_concrete != 0) {
      Int grain = plan_denominator_lcm(plan, placement);
      long B;
      if (cfg.mode == "decentralized" || cfg.b_concrete == -1) {
        B = grain.convert_to<long>();
      } else {
        B = cfg.b_concrete;
        if (Int(B) % grain != 0) {
          out.error = "B_concrete=" + std::to_string(B) + " is not a multiple of the plan grain " +
                      grain.str();
          return out;
        }
      }
      out.row.verified_ok = simulate_concrete(network, placement, plan, demand, B, cfg.seed).pass;
    }
  }

  if (want_dumps) {
    out.plan_json = plan_to_json(plan, network);
    out.placement_json = placement_to_json(placement);
  }
  return out;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  ExperimentResult result;
  auto fail = [&result](const std::string& message) -> ExperimentResult& {
    result.exit_code = 1;
    result.error = message;
    return result;
  };

  if (cfg.sweep_M.empty()) return fail("no M values configured");
  if (cfg.mode.empty()) return fail("mode missing");

  RelayNetwork network;
  try {
    if (!cfg.topology_file.empty())
      network = load_topology_file(cfg.topology_file);
    else if (!cfg.topology.empty())
      network = parse_topology_text(cfg.topology);
    else
      return fail("topology missing");
  } catch (const std::exception& e) {
    return fail(std::string("topology error: ") + e.what());
  }

  const int K = network.num_users;
  const int num_files = cfg.num_files > 0 ? cfg.num_files : K;
  if (num_files < K) return fail("require N >= K");

  Demand demand;
  if (cfg.demand.empty()) {
    demand = Demand::worst_case(K);
  } else {
    demand.files = cfg.demand;
    if (demand.size() != K) return fail("demand length does not match the user count");
    for (int f : demand.files)
      if (f < 1 || f > num_files) return fail("demanded file id out of range");
  }
  for (const Rat& M : cfg.sweep_M)
    if (M < 0 || M > num_files) return fail("M=" + rat_str(M) + " outside [0,N]");

  const bool want_dumps = !cfg.dump_plan_path.empty() || !cfg.dump_placement_path.empty();
  if (want_dumps && cfg.sweep_M.size() != 1)
    return fail("plan/placement dumps need a single-point sweep");

  std::vector<PointOutcome> outcomes(cfg.sweep_M.size());
  {
    std::vector<std::future<PointOutcome>> futures;
    futures.reserve(cfg.sweep_M.size());
    for (const Rat& M : cfg.sweep_M)
      futures.push_back(std::async(std::launch::async, [&, M] {
        return run_point(cfg, network, num_files, demand, M, want_dumps);
      }));
    for (size_t i = 0; i < futures.size(); ++i) outcomes[i] = futures[i].get();
  }

  for (const auto& o : outcomes)
    if (!o.error.empty()) return fail(o.error);

  std::stable_sort(outcomes.begin(), outcomes.end(),
                   [](const PointOutcome& a, const PointOutcome& b) { return a.row.M < b.row.M; });

  auto refs = cfg.compare ? reference_table(cfg.scenario) : std::vector<ReferenceConstant>{};

  std::ostringstream csv;
  csv << "M,t_or_tprime,R_max,R_h_max,R_hk_max,closed_form_if_r2";
  for (const auto& ref : refs) csv << ",ref_" << ref.scheme;
  csv << ",R_max_float\n";
  for (const auto& o : outcomes) {
    const SweepRow& row = o.row;
    csv << rat_str(row.M) << ',';
    if (row.t_or_tprime >= 0) csv << row.t_or_tprime;
    csv << ',' << rat_str(row.load_max) << ',' << rat_str(row.load_server_max) << ','
        << rat_str(row.load_link_max) << ',';
    if (row.closed_form) csv << rat_str(*row.closed_form);
    for (const auto& ref : refs) csv << ',' << rat_str(ref.value);
    csv << ',' << float_str(row.load_max) << '\n';
    result.rows.push_back(row);
  }
  result.csv = csv.str();

  for (const auto& o : outcomes)
    if (!o.row.verified_ok) result.exit_code = 2;

  if (want_dumps) {
    if (!cfg.dump_plan_path.empty()) write_text_file(cfg.dump_plan_path, outcomes[0].plan_json);
    if (!cfg.dump_placement_path.empty())
      write_text_file(cfg.dump_placement_path, outcomes[0].placement_json);
  }
  return result;
}

int run_experiment_to_files(const ExperimentConfig& cfg, std::ostream& log) {
  ExperimentResult result = run_experiment(cfg);
  if (result.exit_code == 1) {
    log << "config error: " << result.error << "\n";
    return 1;
  }
  if (cfg.out_path.empty()) {
    log << result.csv;
  } else {
    write_text_file(cfg.out_path, result.csv);
    log << "wrote " << cfg.out_path << " (" << result.rows.size() << " rows)\n";
  }
  for (const auto& row : result.rows)
    if (!row.verified_ok) log << "verification FAILED at M=" << rat_str(row.M) << "\n";
  return result.exit_code;
}

}  // namespace srds
