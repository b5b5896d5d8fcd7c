#pragma once

#include <string>

#include <json.hpp>

#include "gca/configuration.hpp"
#include "gca/group.hpp"
#include "gca/linear.hpp"
#include "gca/rule.hpp"

namespace gca {

// Group description:
//   {"kind":"cyclic","order":m}
//   {"kind":"table","elements":[names],"table":[[indices or names]]}
//   {"kind":"permutation","degree":d,"generators":[[one-line images]]}
//   {"kind":"product","factors":[groups]}
// Throws ParseError, NotAGroup, SizeLimit.
FiniteGroup group_from_json(const nlohmann::json& j);
nlohmann::json group_to_json(const FiniteGroup& g);

// An element given as an index, or for product groups as a list of factor
// elements (recursively).
Elem element_from_json(const FiniteGroup& g, const nlohmann::json& j);

// {"group":..., "radius":r, "endomorphisms":{"-1":{...}, ...}} where each entry
// is {"images":[...]}, {"gen_images":{"<generator index>": image}} or
// {"matrix":[[...]],"prime":p}, or the strings "identity" / "trivial".
// Missing offsets are trivial. Alternatively
// {"prime":p,"laurent":[["1","X"],...]} over (Z/pZ)^n.
Gca rule_from_json(const nlohmann::json& j);
nlohmann::json rule_to_json(const Gca& f);

// {"kind":"finite","support":{"0":elem,...}} or
// {"kind":"ep","left":[...],"core":[...],"coreStart":k,"right":[...]}.
Configuration config_from_json(const FiniteGroup& g, const nlohmann::json& j);
// Always written in the "ep" form, or "finite" when the configuration is finite.
nlohmann::json config_to_json(const Configuration& c);

nlohmann::json read_json_file(const std::string& path);

}  // namespace gca
