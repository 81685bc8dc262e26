#include <CLI11.hpp>

#include "srds/experiment.hpp"

#include <iostream>

using namespace srds;

namespace {

Demand demand_from_option(const std::string& spec, int num_users) {
  if (spec.empty() || spec == "worst-case") return Demand::worst_case(num_users);
  Demand d;
  std::istringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) d.files.push_back(std::stoi(item));
  return d;
}

void print_loads(const LoadReport& loads, const RelayNetwork& net, std::ostream& out) {
  for (int h = 1; h <= net.num_relays; ++h)
    out << "  relay " << h << ": " << rat_str(loads.server_to_relay[h]) << "\n";
  out << "  max server->relay: " << rat_str(loads.max_server_to_relay) << "\n";
  out << "  max relay->user:   " << rat_str(loads.max_relay_to_user) << "\n";
  out << "  max link-load:     " << rat_str(loads.max_link_load) << "\n";
}

struct CommonOpts {
  uint64_t seed = 0;
  bool do_rebalance = false;
  bool no_verify = false;
  long concrete_b = 0;
  std::string out_path, dump_plan, dump_placement, demand_spec;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--seed", opts.seed, "placement / simulation seed");
  cmd->add_flag("--rebalance", opts.do_rebalance, "apply load rebalancing");
  cmd->add_flag("--no-verify", opts.no_verify, "skip the decodability check");
  cmd->add_option("--concrete-B", opts.concrete_b,
                  "concrete file length in bits for the bit-exact simulation");
  cmd->add_option("--out", opts.out_path, "write the load table as CSV");
  cmd->add_option("--dump-plan", opts.dump_plan, "write the delivery plan as JSON");
  cmd->add_option("--dump-placement", opts.dump_placement, "write the placement as JSON");
  cmd->add_option("--demand", opts.demand_spec, "comma list of file ids, or worst-case");
}

// shared tail: rebalance, loads, verification, dumps; returns exit code
int finish_run(const RelayNetwork& net, const CachePlacement& placement, DeliveryPlan plan,
               const Demand& demand, const CommonOpts& opts) {
  if (opts.do_rebalance) {
    auto before = compute_loads(plan, net);
    std::cout << "loads before rebalancing:\n";
    print_loads(before, net, std::cout);
    auto result = rebalance(plan, net);
    plan = std::move(result.plan);
    std::cout << "moves: " << result.moves.size() << "\n";
    for (const auto& mv : result.moves) {
      std::cout << "  " << rat_str(mv.amount) << " of {";
      for (size_t i = 0; i < mv.users.size(); ++i)
        std::cout << (i ? "," : "") << mv.users[i];
      std::cout << "} relay " << mv.from << " -> relay " << mv.to << "\n";
    }
    std::cout << "loads after rebalancing:\n";
  } else {
    std::cout << "loads:\n";
  }
  auto loads = compute_loads(plan, net);
  print_loads(loads, net, std::cout);

  if (!opts.dump_plan.empty()) write_text_file(opts.dump_plan, plan_to_json(plan, net));
  if (!opts.dump_placement.empty())
    write_text_file(opts.dump_placement, placement_to_json(placement));

  if (!opts.no_verify) {
    auto reports = verify_decodability(net, placement, plan, demand);
    bool ok = all_users_pass(reports);
    if (ok && opts.concrete_b != 0) {
      Int grain = plan_denominator_lcm(plan, placement);
      long B = opts.concrete_b < 0 ? grain.convert_to<long>() : opts.concrete_b;
      ok = simulate_concrete(net, placement, plan, demand, B, opts.seed).pass;
      std::cout << "concrete simulation at B=" << B << ": " << (ok ? "pass" : "FAIL") << "\n";
    }
    if (!ok) {
      std::cout << "verification FAILED\n" << reports_to_json(reports) << "\n";
      return 2;
    }
    std::cout << "verification: all " << net.num_users << " users decode\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"topology-aware coded-caching delivery simulator"};
  app.require_subcommand(1);

  // ---- run (config-driven batch driver) ----
  std::string config_path;
  CommonOpts run_opts;
  auto* run_cmd = app.add_subcommand("run", "run a config-file experiment sweep");
  run_cmd->add_option("--config", config_path, "experiment config file")->required();
  run_cmd->add_option("--seed", run_opts.seed, "override the config seed");
  run_cmd->add_flag("--rebalance", run_opts.do_rebalance, "force rebalancing on");
  run_cmd->add_flag("--no-verify", run_opts.no_verify, "force verification off");
  run_cmd->add_option("--concrete-B", run_opts.concrete_b, "override B_concrete");
  run_cmd->add_option("--out", run_opts.out_path, "override the output path");

  // ---- combination ----
  int comb_H = 0, comb_r = 0, comb_N = 0, comb_t = -1;
  std::string comb_M;
  CommonOpts comb_opts;
  auto* comb_cmd = app.add_subcommand("combination", "centralized run on a combination network");
  comb_cmd->add_option("--H", comb_H, "number of relays")->required();
  comb_cmd->add_option("--r", comb_r, "relay subset size per user")->required();
  comb_cmd->add_option("--N", comb_N, "number of files (default K)");
  comb_cmd->add_option("--t", comb_t, "cache parameter t");
  comb_cmd->add_option("--M", comb_M, "per-user cache size (alternative to --t)");
  add_common(comb_cmd, comb_opts);

  // ---- general ----
  std::string gen_topology;
  int gen_N = 0, gen_t = -1;
  std::string gen_M;
  CommonOpts gen_opts;
  auto* gen_cmd = app.add_subcommand("general", "centralized run on a general relay network");
  gen_cmd->add_option("--topology", gen_topology, "topology file")->required();
  gen_cmd->add_option("--N", gen_N, "number of files (default K)");
  gen_cmd->add_option("--t", gen_t, "cache parameter t");
  gen_cmd->add_option("--M", gen_M, "per-user cache size");
  add_common(gen_cmd, gen_opts);

  // ---- decentralized ----
  int dec_H = 0, dec_r = 0, dec_N = 0;
  std::string dec_M = "0";
  long dec_B = 1000;
  CommonOpts dec_opts;
  auto* dec_cmd = app.add_subcommand("decentralized", "random-placement run");
  dec_cmd->add_option("--H", dec_H, "number of relays")->required();
  dec_cmd->add_option("--r", dec_r, "relay subset size per user")->required();
  dec_cmd->add_option("--N", dec_N, "number of files (default K)");
  dec_cmd->add_option("--M", dec_M, "per-user cache size")->required();
  dec_cmd->add_option("--B", dec_B, "placement instantiation length in bits");
  add_common(dec_cmd, dec_opts);

  // ---- hybrid ----
  int hyb_H = 0, hyb_r = 0, hyb_N = 0, hyb_t3 = 0, hyb_t4 = 0;
  std::string hyb_M1 = "0";
  CommonOpts hyb_opts;
  auto* hyb_cmd = app.add_subcommand("hybrid", "cache-aided relays and users");
  hyb_cmd->add_option("--H", hyb_H, "number of relays")->required();
  hyb_cmd->add_option("--r", hyb_r, "relay subset size per user")->required();
  hyb_cmd->add_option("--N", hyb_N, "number of files (default K)");
  hyb_cmd->add_option("--M1", hyb_M1, "relay cache size")->required();
  hyb_cmd->add_option("--t3", hyb_t3, "plain-bit share of the relay-covered part")->required();
  hyb_cmd->add_option("--t4", hyb_t4, "cache parameter for the remainder")->required();
  add_common(hyb_cmd, hyb_opts);

  // ---- verify-plan ----
  std::string vp_plan, vp_placement;
  long vp_B = 0;
  uint64_t vp_seed = 0;
  auto* vp_cmd = app.add_subcommand("verify-plan", "re-check a dumped plan against a placement");
  vp_cmd->add_option("--plan", vp_plan, "plan JSON")->required();
  vp_cmd->add_option("--placement", vp_placement, "placement JSON")->required();
  vp_cmd->add_option("--concrete-B", vp_B, "also run the bit-exact simulation");
  vp_cmd->add_option("--seed", vp_seed, "simulation seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      auto cfg = ExperimentConfig::parse_file(config_path);
      if (run_cmd->count("--seed")) cfg.seed = run_opts.seed;
      if (run_opts.do_rebalance) cfg.rebalance = true;
      if (run_opts.no_verify) cfg.verify = false;
      if (run_cmd->count("--concrete-B")) cfg.b_concrete = run_opts.concrete_b;
      if (!run_opts.out_path.empty()) cfg.out_path = run_opts.out_path;
      return run_experiment_to_files(cfg, std::cout);
    }

    if (comb_cmd->parsed() || gen_cmd->parsed()) {
      bool comb = comb_cmd->parsed();
      RelayNetwork net = comb ? build_combination_network(comb_H, comb_r)
                              : load_topology_file(gen_topology);
      const CommonOpts& opts = comb ? comb_opts : gen_opts;
      int N = comb ? comb_N : gen_N;
      int t = comb ? comb_t : gen_t;
      const std::string& M = comb ? comb_M : gen_M;
      const int K = net.num_users;
      if (N == 0) N = K;
      if (t < 0) {
        if (M.empty()) throw std::invalid_argument("need --t or --M");
        Rat t_exact = Rat(K) * rat_parse(M) / N;
        if (rat_den(t_exact) != 1)
          throw std::invalid_argument("M=" + M + " gives a non-integer t");
        t = rat_num(t_exact).convert_to<int>();
      }
      auto placement = cman_place(K, N, t);
      auto demand = demand_from_option(opts.demand_spec, K);
      auto plan = srds_deliver(net, placement, demand);
      if (net.kind == RelayNetwork::Kind::combination && net.subset_size == 2)
        std::cout << "closed-form max link-load: "
                  << rat_str(closed_form_load_r2(net.num_relays, t)) << "\n";
      return finish_run(net, placement, std::move(plan), demand, opts);
    }

    if (dec_cmd->parsed()) {
      auto net = build_combination_network(dec_H, dec_r);
      int N = dec_N == 0 ? net.num_users : dec_N;
      auto placement = dman_place(net.num_users, N, rat_parse(dec_M), dec_opts.seed, dec_B);
      auto demand = demand_from_option(dec_opts.demand_spec, net.num_users);
      auto plan = decentralized_deliver(net, placement, demand);
      return finish_run(net, placement, std::move(plan), demand, dec_opts);
    }

    if (hyb_cmd->parsed()) {
      auto net = build_combination_network(hyb_H, hyb_r);
      int N = hyb_N == 0 ? net.num_users : hyb_N;
      auto placement = hybrid_place(net, N, rat_parse(hyb_M1), hyb_t3, hyb_t4, hyb_opts.seed);
      auto demand = demand_from_option(hyb_opts.demand_spec, net.num_users);
      auto plan = hybrid_deliver(net, placement, demand);
      auto loads = compute_loads(plan, net);
      std::cout << "load pair (max server->relay, max relay->user): ("
                << rat_str(loads.max_server_to_relay) << ", " << rat_str(loads.max_relay_to_user)
                << ")\n";
      for (const auto& ref : reference_table("relaycache"))
        if (ref.flagged)
          std::cout << "flagged reference relay->user value: " << rat_str(ref.value)
                    << " (this implementation computes " << rat_str(loads.max_relay_to_user)
                    << ")\n";
      return finish_run(net, placement, std::move(plan), demand, hyb_opts);
    }

    if (vp_cmd->parsed()) {
      std::string detail;
      bool ok = verify_plan_dump(read_text_file(vp_plan), read_text_file(vp_placement), &detail);
      if (ok && vp_B != 0) {
        auto loaded = plan_from_json(read_text_file(vp_plan));
        auto placement = placement_from_json(read_text_file(vp_placement));
        Int grain = plan_denominator_lcm(loaded.plan, placement);
        long B = vp_B < 0 ? grain.convert_to<long>() : vp_B;
        ok = simulate_concrete(loaded.network, placement, loaded.plan, loaded.plan.demand, B,
                               vp_seed)
                 .pass;
      }
      std::cout << detail << "\n" << (ok ? "plan verifies" : "plan FAILS verification") << "\n";
      return ok ? 0 : 2;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
