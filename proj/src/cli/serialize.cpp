#include <flagekr/cli/serialize.hpp>
#include <flagekr/version.hpp>

namespace flagekr::cli {

auto big(const BigInt & value) -> json
{
    return to_string(value);
}

auto type_json(const TypeSet & type) -> json
{
    return type.to_string();
}

auto flags_json(const VertexSet & set, const FlagGraph & g) -> json
{
    json out = json::array();
    set.members.for_each([&](std::size_t v) { out.push_back(format_flag(g.flag(v))); });
    return out;
}

auto profile_json(const NeighborProfile & profile) -> json
{
    json out = json::object();
    for (auto [k, count] : profile)
        out[std::to_string(k)] = std::to_string(count);
    return out;
}

auto to_json(const BoundReport & report) -> json
{
    json out = {
        {"name", report.name},
        {"direction", to_string(report.direction)},
        {"applicable", report.applicable},
        {"reason", report.reason},
        {"support", report.support},
    };
    out["value"] = report.value ? big(*report.value) : json(nullptr);
    if (report.real_value)
        out["real_value"] = *report.real_value;
    if (report.alternative_value)
        out["alternative_value"] = big(*report.alternative_value);
    return out;
}

auto to_json(const AlphaVerdict & verdict) -> json
{
    json out = {{"status", to_string(verdict.status)}, {"lo", big(verdict.lo)}, {"hi", big(verdict.hi)}};
    if (verdict.status == VerdictStatus::exact)
        out["value"] = big(verdict.lo);
    return out;
}

auto to_json(const EquivClassReport & report, const FlagGraph & g) -> json
{
    json classes = json::array();
    for (const auto & c : report.classes)
        classes.push_back({
            {"representative", flags_json(c.representative, g)},
            {"orbit_size", std::to_string(c.orbit_size)},
            {"members_seen", std::to_string(c.members_seen)},
            {"neighbor_profile", profile_json(c.profile)},
        });
    return {
        {"mode", to_string(report.mode)},
        {"class_count", std::to_string(report.class_count)},
        {"total", std::to_string(report.total)},
        {"classes", classes},
    };
}

auto envelope(json params, json verdict, json provenance, json support, const std::string & config_digest) -> json
{
    params["config_digest"] = config_digest;
    return {
        {"params", std::move(params)},
        {"verdict", std::move(verdict)},
        {"provenance", std::move(provenance)},
        {"support", std::move(support)},
        {"version", version},
    };
}

}
