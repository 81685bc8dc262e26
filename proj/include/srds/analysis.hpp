#pragma once

#include "srds/rational.hpp"

#include <string>
#include <vector>

namespace srds {

/// Closed-form max link-load of the delivery scheme on a combination
/// network with r=2, K=C(H,2) and integer cache parameter t.
Rat closed_form_load_r2(int num_relays, int t);

/// Centralized shared-link load C(K,t+1)/C(K,t) = (K-t)/(1+t).
Rat shared_link_cman_load(int num_users, int t);

/// Decentralized shared-link load (N/M - 1)(1 - (1 - M/N)^K); K at M=0.
Rat shared_link_dman_load(int num_users, const Rat& M, int num_files);

/// Published load value of a competing scheme, stored verbatim for
/// comparison tables and never computed here.
struct ReferenceConstant {
  std::string scheme;
  std::string scenario;
  Rat value;
  std::string citation;
  bool flagged = false;  // known inconsistency, reported but never asserted
};

/// Reference constants for one scenario id: h4r2_t2, sym5, asym5,
/// relaycache, h6r3_sweep. Unknown scenarios yield an empty list.
std::vector<ReferenceConstant> reference_table(const std::string& scenario);

}  // namespace srds
