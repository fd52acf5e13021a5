#pragma once

#include <string>

#include <json.hpp>

#include "tritree/extremal.hpp"
#include "tritree/graph.hpp"
#include "tritree/tree.hpp"

namespace tritree {

using json = nlohmann::json;

// Graph: {"classes":[nA,nB,nC], "edges":[[u,v,"G"|"R"],...]}
json graph_to_json(const TripartiteGraph& g);
TripartiteGraph graph_from_json(const json& j);

// Tree: {"t":N, "edges":[[u,v],...]}
json tree_to_json(const Tree& t);
Tree tree_from_json(const json& j);

// Certificate: {"kind":"odd_matching"|"good_pair", "colour":"G"|"R",
//   "matching":{"kind":"matching",...}, "forks":{"kind":"forks",...},
//   "thresholds":{...}, "achieved":{...}}
json matching_to_json(const Matching& m);
Matching matching_from_json(const json& j);
json fork_system_to_json(const ForkSystem& f);
ForkSystem fork_system_from_json(const json& j);
json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const json& j);

json witness_to_json(const ExtremalWitness& w);
ExtremalWitness witness_from_json(const json& j);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

}  // namespace tritree
