#include <flagekr/cli/cache.hpp>
#include <flagekr/cli/config.hpp>
#include <flagekr/errors.hpp>
#include <flagekr/version.hpp>

#include <chrono>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace flagekr::cli {

auto CacheKey::digest() const -> std::string
{
    return hex64(fnv1a64(std::to_string(n) + "|" + type + "|" + kind + "|" + config_digest));
}

auto CacheKey::to_json() const -> nlohmann::json
{
    return {{"n", n}, {"type", type}, {"kind", kind}, {"config", config_digest}};
}

auto dump_record(const nlohmann::json & record) -> std::string
{
    return record.dump(2) + "\n";
}

ResultCache::ResultCache(std::filesystem::path directory) : directory_(std::move(directory))
{
    std::filesystem::create_directories(directory_);
}

auto ResultCache::path_for(const CacheKey & key) const -> std::filesystem::path
{
    return directory_ / (key.digest() + ".json");
}

auto ResultCache::load(const CacheKey & key) const -> std::optional<nlohmann::json>
{
    std::ifstream in(path_for(key));
    if (! in)
        return std::nullopt;
    nlohmann::json record = nlohmann::json::parse(in, nullptr, false);
    if (record.is_discarded() || ! record.contains("key") || record["key"] != key.to_json() || ! record.contains("value"))
        return std::nullopt;
    return record["value"];
}

void ResultCache::store(const CacheKey & key, const nlohmann::json & value) const
{
    auto now = std::chrono::system_clock::now();
    nlohmann::json record = {
        {"key", key.to_json()},
        {"value", value},
        {"created", std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count()},
        {"version", version},
    };
    auto target = path_for(key);
    auto temp = target;
    temp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(temp, std::ios::trunc);
        if (! out)
            throw ResourceError("cannot write cache file " + temp.string());
        out << dump_record(record);
        if (! out.flush())
            throw ResourceError("cannot write cache file " + temp.string());
    }
    std::filesystem::rename(temp, target);
}

}
