#pragma once

#include "srds/delivery.hpp"
#include "srds/verifier.hpp"

#include <string>

namespace srds {

/// Plan dump: {relay, users, length_num, length_den, operands:[{user,
/// segments:[(file, lo, hi)]}]} per message, plus the network, demand and
/// coded transfers so a dump is self-contained for re-verification.
std::string plan_to_json(const DeliveryPlan& plan, const RelayNetwork& network);

/// Placement dump (debug format): per-user lists of (file_id, W, lo, hi)
/// plus the canonical subfile table used to rebuild the placement.
std::string placement_to_json(const CachePlacement& placement);

struct LoadedPlan {
  RelayNetwork network;
  DeliveryPlan plan;
};

LoadedPlan plan_from_json(const std::string& text);
CachePlacement placement_from_json(const std::string& text);

std::string loads_to_json(const LoadReport& report, const RelayNetwork& network);
std::string reports_to_json(const std::vector<UserReport>& reports);

/// Re-checks a dumped plan against a dumped placement. Returns true when
/// every user decodes; tampered inputs surface as exceptions or failures.
bool verify_plan_dump(const std::string& plan_json, const std::string& placement_json,
                      std::string* detail = nullptr);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace srds
