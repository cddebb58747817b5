#pragma once

#include <flagekr/bounds.hpp>
#include <flagekr/families.hpp>
#include <flagekr/symmetry.hpp>

#include <json.hpp>

namespace flagekr::cli {

using nlohmann::json;

auto big(const BigInt & value) -> json;
auto type_json(const TypeSet & type) -> json;
/// Flags in pair/chain notation, e.g. "({1},{1,2,3})".
auto flags_json(const VertexSet & set, const FlagGraph & g) -> json;
auto profile_json(const NeighborProfile & profile) -> json;

auto to_json(const BoundReport & report) -> json;
auto to_json(const AlphaVerdict & verdict) -> json;
auto to_json(const EquivClassReport & report, const FlagGraph & g) -> json;

/// {params, verdict, provenance, support, version}
auto envelope(json params, json verdict, json provenance, json support, const std::string & config_digest) -> json;

}
