#include "srds/topology.hpp"

#include "srds/rational.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace srds {

int RelayNetwork::max_relay_degree() const {
  size_t best = 0;
  for (int h = 1; h <= num_relays; ++h) best = std::max(best, users_of_relay[h].size());
  return static_cast<int>(best);
}

std::vector<std::vector<int>> subsets_of_size(const std::vector<int>& pool, int count) {
  std::vector<std::vector<int>> out;
  int n = static_cast<int>(pool.size());
  if (count < 0 || count > n) return out;
  std::vector<int> idx(count);
  for (int i = 0; i < count; ++i) idx[i] = i;
  while (true) {
    std::vector<int> subset(count);
    for (int i = 0; i < count; ++i) subset[i] = pool[idx[i]];
    out.push_back(std::move(subset));
    int i = count - 1;
    while (i >= 0 && idx[i] == n - count + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < count; ++j) idx[j] = idx[j - 1] + 1;
  }
  if (count == 0) out = {{}};
  return out;
}

namespace {

void finalize_transpose(RelayNetwork& net) {
  net.relays_of_user.assign(net.num_users + 1, {});
  for (int h = 1; h <= net.num_relays; ++h)
    for (int user : net.users_of_relay[h]) net.relays_of_user[user].push_back(h);
  for (int k = 1; k <= net.num_users; ++k) {
    auto& relays = net.relays_of_user[k];
    std::sort(relays.begin(), relays.end());
    if (relays.empty())
      throw std::invalid_argument("user " + std::to_string(k) + " is connected to no relay");
  }
}

}  // namespace

RelayNetwork build_combination_network(int num_relays, int subset_size) {
  if (num_relays < 2) throw std::invalid_argument("combination network needs at least 2 relays");
  if (subset_size < 1 || subset_size > num_relays)
    throw std::invalid_argument("subset size must lie in [1..H]");

  RelayNetwork net;
  net.kind = RelayNetwork::Kind::combination;
  net.subset_size = subset_size;
  net.num_relays = num_relays;

  std::vector<int> relay_ids(num_relays);
  for (int h = 0; h < num_relays; ++h) relay_ids[h] = h + 1;
  auto subsets = subsets_of_size(relay_ids, subset_size);
  net.num_users = static_cast<int>(subsets.size());

  net.users_of_relay.assign(num_relays + 1, {});
  for (int k = 1; k <= net.num_users; ++k)
    for (int h : subsets[k - 1]) net.users_of_relay[h].push_back(k);
  for (int h = 1; h <= num_relays; ++h)
    std::sort(net.users_of_relay[h].begin(), net.users_of_relay[h].end());

  finalize_transpose(net);
  return net;
}

RelayNetwork build_general_network(const std::map<int, std::vector<int>>& users_of_relay) {
  if (users_of_relay.empty()) throw std::invalid_argument("no relays given");

  int max_relay = 0, max_user = 0;
  for (const auto& [relay, users] : users_of_relay) {
    if (relay < 1) throw std::invalid_argument("relay ids must be positive");
    max_relay = std::max(max_relay, relay);
    for (int user : users) {
      if (user < 1) throw std::invalid_argument("user ids must be positive");
      max_user = std::max(max_user, user);
    }
  }

  RelayNetwork net;
  net.kind = RelayNetwork::Kind::general;
  net.num_relays = max_relay;
  net.num_users = max_user;
  net.users_of_relay.assign(max_relay + 1, {});
  for (const auto& [relay, users] : users_of_relay) {
    std::set<int> seen;
    for (int user : users) {
      if (!seen.insert(user).second)
        throw std::invalid_argument("user " + std::to_string(user) + " listed twice at relay " +
                                    std::to_string(relay));
    }
    net.users_of_relay[relay].assign(seen.begin(), seen.end());
  }

  finalize_transpose(net);  // throws on orphan users
  return net;
}

RelayNetwork parse_topology_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::map<int, std::vector<int>> general;
  bool saw_general = false;

  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;

    if (word == "combination") {
      int H = -1, r = -1;
      std::string kv;
      while (ls >> kv) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("expected key=value, got '" + kv + "'");
        std::string key = kv.substr(0, eq);
        int value = std::stoi(kv.substr(eq + 1));
        if (key == "H") H = value;
        else if (key == "r") r = value;
        else throw std::invalid_argument("unknown combination parameter '" + key + "'");
      }
      if (H < 0 || r < 0) throw std::invalid_argument("combination topology needs H= and r=");
      return build_combination_network(H, r);
    }
    if (word == "general") {
      saw_general = true;
      continue;
    }
    if (word == "relay") {
      if (!saw_general) throw std::invalid_argument("relay lines must follow a 'general' header");
      std::string id_token;
      ls >> id_token;
      if (!id_token.empty() && id_token.back() == ':') id_token.pop_back();
      int relay = std::stoi(id_token);
      std::string rest;
      std::getline(ls, rest);
      std::replace(rest.begin(), rest.end(), ':', ' ');
      std::replace(rest.begin(), rest.end(), ',', ' ');
      std::istringstream us(rest);
      int user;
      auto& list = general[relay];
      while (us >> user) list.push_back(user);
      continue;
    }
    throw std::invalid_argument("unrecognized topology line: '" + line + "'");
  }

  if (!saw_general) throw std::invalid_argument("topology text is empty");
  return build_general_network(general);
}

RelayNetwork load_topology_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open topology file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_topology_text(buf.str());
}

}  // namespace srds
