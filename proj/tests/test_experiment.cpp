#include <doctest.h>

#include "helpers.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace srds;
using namespace srds::testing;

namespace {

std::string worked_example_config() {
  return "mode centralized\n"
         "topology combination H=4 r=2\n"
         "N 6\n"
         "M 2\n"
         "demand worst-case\n"
         "seed 1\n"
         "verify on\n"
         "compare on\n"
         "scenario h4r2_t2\n";
}

std::vector<std::string> csv_lines(const std::string& csv) {
  std::vector<std::string> lines;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> csv_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream in(line);
  std::string field;
  while (std::getline(in, field, ',')) fields.push_back(field);
  return fields;
}

}  // namespace

TEST_CASE("config parsing covers every key") {
  auto cfg = ExperimentConfig::parse_text(
      "mode hybrid\n"
      "topology combination H=4 r=2\n"
      "N 6\n"
      "M 1, 3/2, 2.5\n"
      "demand 1,2,3,4,5,6\n"
      "seed 17\n"
      "B_concrete 180\n"
      "t3 1\n"
      "t4 2\n"
      "rebalance off\n"
      "verify on\n"
      "compare on\n"
      "scenario relaycache\n"
      "out /tmp/x.csv\n"
      "# a comment\n");
  CHECK(cfg.mode == "hybrid");
  CHECK(cfg.num_files == 6);
  REQUIRE(cfg.sweep_M.size() == 3);
  CHECK(cfg.sweep_M[1] == Rat(3, 2));
  CHECK(cfg.sweep_M[2] == Rat(5, 2));
  CHECK(cfg.demand == std::vector<int>{1, 2, 3, 4, 5, 6});
  CHECK(cfg.seed == 17);
  CHECK(cfg.b_concrete == 180);
  CHECK(cfg.t3 == 1);
  CHECK(cfg.t4 == 2);
  CHECK_FALSE(cfg.rebalance);
  CHECK(cfg.compare);
  CHECK(cfg.scenario == "relaycache");
  CHECK(cfg.out_path == "/tmp/x.csv");

  CHECK_THROWS(ExperimentConfig::parse_text("bogus_key 1\n"));
}

TEST_CASE("empty sweep is a config error") {
  auto cfg = ExperimentConfig::parse_text("mode centralized\ntopology combination H=4 r=2\n");
  auto result = run_experiment(cfg);
  CHECK(result.exit_code == 1);
  CHECK_FALSE(result.error.empty());
}

TEST_CASE("worked-example config produces the reference row") {
  auto cfg = ExperimentConfig::parse_text(worked_example_config());
  auto result = run_experiment(cfg);
  REQUIRE(result.exit_code == 0);

  auto lines = csv_lines(result.csv);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] ==
        "M,t_or_tprime,R_max,R_h_max,R_hk_max,closed_form_if_r2,"
        "ref_ies,ref_routing_nc,ref_separation,ref_mds_coded,R_max_float");
  auto fields = csv_fields(lines[1]);
  REQUIRE(fields.size() == 11);
  CHECK(fields[0] == "2");
  CHECK(fields[1] == "2");
  CHECK(fields[2] == "7/15");
  CHECK(fields[3] == "7/15");
  CHECK(fields[4] == "1/3");
  CHECK(fields[5] == "7/15");
  CHECK(fields[6] == "17/30");
  CHECK(fields[9] == "1/2");
}

TEST_CASE("output is byte-stable across runs") {
  auto cfg = ExperimentConfig::parse_text(worked_example_config());
  cfg.sweep_M = {Rat(0), Rat(1), Rat(2), Rat(3), Rat(6)};
  auto a = run_experiment(cfg);
  auto b = run_experiment(cfg);
  CHECK(a.csv == b.csv);
  CHECK(a.exit_code == 0);
}

TEST_CASE("r=2 sweep rows carry the closed form equal to the simulation") {
  auto cfg = ExperimentConfig::parse_text(
      "mode centralized\ntopology combination H=4 r=2\nN 6\nM 0,1,2,3,4,5,6\nverify on\n");
  auto result = run_experiment(cfg);
  REQUIRE(result.exit_code == 0);
  REQUIRE(result.rows.size() == 7);
  for (const auto& row : result.rows) {
    REQUIRE(row.closed_form.has_value());
    CHECK(*row.closed_form == row.load_max);
    CHECK(row.verified_ok);
  }
  // nonincreasing in M
  for (size_t i = 1; i < result.rows.size(); ++i)
    CHECK(result.rows[i].load_max <= result.rows[i - 1].load_max);
}

TEST_CASE("non-integer t is a config error") {
  auto cfg = ExperimentConfig::parse_text(
      "mode centralized\ntopology combination H=4 r=2\nN 6\nM 1/2\n");
  auto result = run_experiment(cfg);
  CHECK(result.exit_code == 1);
}

TEST_CASE("general mode with rebalancing reaches the balanced load") {
  namespace fs = std::filesystem;
  auto dir = fs::temp_directory_path() / "srds_test_general";
  fs::create_directories(dir);
  auto topo_path = (dir / "asym5.topo").string();
  write_text_file(topo_path,
                  "general\nrelay 1: 1 2 3\nrelay 2: 1 3 4\nrelay 3: 1 4 5\n"
                  "relay 4: 3 4 5\nrelay 5: 2 3 5\n");
  auto cfg = ExperimentConfig::parse_text("mode general\ntopology file=" + topo_path +
                                          "\nN 5\nM 2\nrebalance on\nverify on\n");
  auto result = run_experiment(cfg);
  REQUIRE(result.exit_code == 0);
  REQUIRE(result.rows.size() == 1);
  CHECK(result.rows[0].load_max == Rat(3, 10));
}

TEST_CASE("hybrid mode reports the load pair") {
  auto cfg = ExperimentConfig::parse_text(
      "mode hybrid\ntopology combination H=4 r=2\nN 6\nM 1\nt3 1\nt4 2\nseed 5\nverify on\n");
  auto result = run_experiment(cfg);
  REQUIRE(result.exit_code == 0);
  CHECK(result.rows[0].load_server_max == Rat(14, 45));
  CHECK(result.rows[0].load_link_max == Rat(13, 36));
}

TEST_CASE("decentralized mode runs and verifies") {
  auto cfg = ExperimentConfig::parse_text(
      "mode decentralized\ntopology combination H=4 r=2\nN 6\nM 2,4\nseed 9\nB_concrete 120\n");
  auto result = run_experiment(cfg);
  REQUIRE(result.exit_code == 0);
  REQUIRE(result.rows.size() == 2);
  CHECK(result.rows[1].load_max <= result.rows[0].load_max);
}

TEST_CASE("plan dumps round-trip and reject tampering") {
  namespace fs = std::filesystem;
  auto dir = fs::temp_directory_path() / "srds_test_dumps";
  fs::create_directories(dir);
  auto plan_path = (dir / "plan.json").string();
  auto placement_path = (dir / "placement.json").string();

  auto cfg = ExperimentConfig::parse_text(worked_example_config());
  cfg.dump_plan_path = plan_path;
  cfg.dump_placement_path = placement_path;
  auto result = run_experiment(cfg);
  REQUIRE(result.exit_code == 0);

  std::string plan_json = read_text_file(plan_path);
  std::string placement_json = read_text_file(placement_path);
  CHECK(verify_plan_dump(plan_json, placement_json));

  // tamper: retarget one message to a different user set
  auto pos = plan_json.find("\"users\": [\n        1,\n        2\n");
  if (pos == std::string::npos) {
    // compact fallback if the dump format changes

    pos = plan_json.find("1,");
    REQUIRE(pos != std::string::npos);
  }
  std::string tampered = plan_json;
  auto seg_pos = tampered.find("\"segments\"");
  REQUIRE(seg_pos != std::string::npos);
  auto file_pos = tampered.find('[', seg_pos);
  file_pos = tampered.find('[', file_pos + 1);
  REQUIRE(file_pos != std::string::npos);
  // change the file id of the first dumped segment
  auto comma = tampered.find(',', file_pos);
  tampered.replace(file_pos + 1, comma - file_pos - 1, "6");

  bool tamper_detected = false;
  try {
    tamper_detected = !verify_plan_dump(tampered, placement_json);
  } catch (const std::exception&) {
    tamper_detected = true;
  }
  CHECK(tamper_detected);

  // multi-point sweeps cannot dump
  cfg.sweep_M = {Rat(1), Rat(2)};
  CHECK(run_experiment(cfg).exit_code == 1);
}

TEST_CASE("loads and reports serialize to JSON") {
  auto net = build_combination_network(4, 2);
  auto p = cman_place(6, 6, 2);
  auto demand = Demand::worst_case(6);
  auto plan = srds_deliver(net, p, demand);
  auto loads = compute_loads(plan, net);
  auto j = loads_to_json(loads, net);
  CHECK(j.find("\"max_link_load\": \"7/15\"") != std::string::npos);

  auto reports = verify_decodability(net, p, plan, demand);
  auto rj = reports_to_json(reports);
  CHECK(rj.find("\"pass\": true") != std::string::npos);
}
