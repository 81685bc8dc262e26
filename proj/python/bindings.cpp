#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "srds/experiment.hpp"

namespace py = pybind11;
using namespace srds;

namespace pybind11::detail {

// exact rationals cross the boundary as fractions.Fraction
template <>
struct type_caster<Rat> {
  PYBIND11_TYPE_CASTER(Rat, const_name("fractions.Fraction"));

  bool load(handle src, bool) {
    try {
      std::string text = py::str(src);
      value = rat_parse(text);
      return true;
    } catch (const std::exception&) {
      return false;
    }
  }

  static handle cast(const Rat& src, return_value_policy, handle) {
    auto fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(rat_str(src)).release();
  }
};

}  // namespace pybind11::detail

namespace {

py::list loads_as_list(const LoadReport& report, const RelayNetwork& net) {
  py::list out;
  for (int h = 1; h <= net.num_relays; ++h) out.append(report.server_to_relay[h]);
  return out;
}

py::list reports_as_list(const std::vector<UserReport>& reports) {
  py::list out;
  for (const auto& r : reports) {
    py::dict d;
    d["user"] = r.user;
    d["pass"] = r.pass;
    d["decoded_fraction"] = r.decoded_fraction;
    if (!r.missing_atom.empty()) d["missing_atom"] = r.missing_atom;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "topology-aware coded-caching delivery: placements, delivery plans, "
            "verification and closed-form loads";

  py::class_<RelayNetwork>(m, "RelayNetwork")
      .def_readonly("num_relays", &RelayNetwork::num_relays)
      .def_readonly("num_users", &RelayNetwork::num_users)
      .def_readonly("subset_size", &RelayNetwork::subset_size)
      .def_property_readonly(
          "kind",
          [](const RelayNetwork& n) {
            return n.kind == RelayNetwork::Kind::combination ? "combination" : "general";
          })
      .def("users_of", [](const RelayNetwork& n, int relay) { return n.users_of(relay); })
      .def("relays_of", [](const RelayNetwork& n, int user) { return n.relays_of(user); })
      .def("__repr__", [](const RelayNetwork& n) {
        return "<RelayNetwork H=" + std::to_string(n.num_relays) +
               " K=" + std::to_string(n.num_users) + ">";
      });

  py::class_<CachePlacement>(m, "CachePlacement")
      .def_readonly("num_users", &CachePlacement::num_users)
      .def_readonly("num_files", &CachePlacement::num_files)
      .def_readonly("t", &CachePlacement::t)
      .def_readonly("mem_per_user", &CachePlacement::mem_per_user)
      .def_readonly("f1_len", &CachePlacement::f1_len)
      .def_property_readonly("subfile_count",
                             [](const CachePlacement& p) { return p.subfiles.size(); })
      .def("user_cache_usage", &CachePlacement::user_cache_usage)
      .def("to_json", &placement_to_json);

  py::class_<MulticastMessage>(m, "MulticastMessage")
      .def_readonly("relay", &MulticastMessage::relay)
      .def_readonly("users", &MulticastMessage::users)
      .def_readonly("length", &MulticastMessage::length)
      .def_readonly("group", &MulticastMessage::group);

  py::class_<DeliveryPlan>(m, "DeliveryPlan")
      .def_readonly("messages", &DeliveryPlan::messages)
      .def_property_readonly("ledger_empty",
                             [](const DeliveryPlan& p) { return p.ledger.empty(); })
      .def_property_readonly("coded_count", [](const DeliveryPlan& p) { return p.coded.size(); })
      .def("to_json",
           [](const DeliveryPlan& p, const RelayNetwork& n) { return plan_to_json(p, n); });

  py::class_<LoadReport>(m, "LoadReport")
      .def_readonly("max_link_load", &LoadReport::max_link_load)
      .def_readonly("max_server_to_relay", &LoadReport::max_server_to_relay)
      .def_readonly("max_relay_to_user", &LoadReport::max_relay_to_user);

  m.def("build_combination_network", &build_combination_network, py::arg("num_relays"),
        py::arg("subset_size"));
  m.def("build_general_network", &build_general_network, py::arg("users_of_relay"));
  m.def("parse_topology", &parse_topology_text, py::arg("text"));

  m.def("cman_place", &cman_place, py::arg("num_users"), py::arg("num_files"), py::arg("t"));
  m.def("dman_place", &dman_place, py::arg("num_users"), py::arg("num_files"), py::arg("M"),
        py::arg("seed"), py::arg("b_concrete"), py::arg("build_chains") = true);
  m.def("hybrid_place", &hybrid_place, py::arg("network"), py::arg("num_files"), py::arg("M1"),
        py::arg("t3"), py::arg("t4"), py::arg("seed"));

  m.def(
      "srds_deliver",
      [](const RelayNetwork& net, const CachePlacement& p, const std::vector<int>& demand) {
        return srds_deliver(net, p, Demand{demand});
      },
      py::arg("network"), py::arg("placement"), py::arg("demand"));
  m.def(
      "decentralized_deliver",
      [](const RelayNetwork& net, const CachePlacement& p, const std::vector<int>& demand) {
        return decentralized_deliver(net, p, Demand{demand});
      },
      py::arg("network"), py::arg("placement"), py::arg("demand"));
  m.def(
      "hybrid_deliver",
      [](const RelayNetwork& net, const CachePlacement& p, const std::vector<int>& demand) {
        return hybrid_deliver(net, p, Demand{demand});
      },
      py::arg("network"), py::arg("placement"), py::arg("demand"));
  m.def("worst_case_demand",
        [](int num_users) { return Demand::worst_case(num_users).files; });

  m.def(
      "rebalance",
      [](const DeliveryPlan& plan, const RelayNetwork& net) {
        auto result = rebalance(plan, net);
        py::list moves;
        for (const auto& mv : result.moves)
          moves.append(py::make_tuple(mv.from, mv.to, mv.users, mv.amount));
        return py::make_tuple(result.plan, moves);
      },
      py::arg("plan"), py::arg("network"));

  m.def(
      "compute_loads",
      [](const DeliveryPlan& plan, const RelayNetwork& net) { return compute_loads(plan, net); },
      py::arg("plan"), py::arg("network"));
  m.def(
      "server_to_relay_loads",
      [](const DeliveryPlan& plan, const RelayNetwork& net) {
        return loads_as_list(compute_loads(plan, net), net);
      },
      py::arg("plan"), py::arg("network"));

  m.def(
      "verify_decodability",
      [](const RelayNetwork& net, const CachePlacement& p, const DeliveryPlan& plan,
         const std::vector<int>& demand) {
        return reports_as_list(verify_decodability(net, p, plan, Demand{demand}));
      },
      py::arg("network"), py::arg("placement"), py::arg("plan"), py::arg("demand"));
  m.def(
      "simulate_concrete",
      [](const RelayNetwork& net, const CachePlacement& p, const DeliveryPlan& plan,
         const std::vector<int>& demand, long b_concrete, uint64_t seed) {
        return simulate_concrete(net, p, plan, Demand{demand}, b_concrete, seed).pass;
      },
      py::arg("network"), py::arg("placement"), py::arg("plan"), py::arg("demand"),
      py::arg("b_concrete"), py::arg("seed") = 0);
  m.def(
      "plan_grain",
      [](const DeliveryPlan& plan, const CachePlacement& p) {
        return plan_denominator_lcm(plan, p).convert_to<long long>();
      },
      py::arg("plan"), py::arg("placement"));

  m.def("closed_form_load_r2", &closed_form_load_r2, py::arg("num_relays"), py::arg("t"));
  m.def("shared_link_cman_load", &shared_link_cman_load, py::arg("num_users"), py::arg("t"));
  m.def("shared_link_dman_load", &shared_link_dman_load, py::arg("num_users"), py::arg("M"),
        py::arg("num_files"));
  m.def("reference_table", [](const std::string& scenario) {
    py::list out;
    for (const auto& ref : reference_table(scenario)) {
      py::dict d;
      d["scheme"] = ref.scheme;
      d["value"] = ref.value;
      d["citation"] = ref.citation;
      d["flagged"] = ref.flagged;
      out.append(d);
    }
    return out;
  });

  m.def("verify_plan_dump", [](const std::string& plan_json, const std::string& placement_json) {
    return verify_plan_dump(plan_json, placement_json);
  });
}
