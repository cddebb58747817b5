#pragma once

#include <flagekr/core.hpp>

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace flagekr::cli {

struct CacheKey {
    int n = 0;
    std::string type;
    std::string kind;
    std::string config_digest;

    auto digest() const -> std::string;
    auto to_json() const -> nlohmann::json;
};

/// One JSON file per record, named by the key digest. Writes go to a
/// temporary file that is renamed into place.
class ResultCache {
public:
    explicit ResultCache(std::filesystem::path directory);

    auto path_for(const CacheKey & key) const -> std::filesystem::path;
    /// The stored record's "value", if present and its key matches.
    auto load(const CacheKey & key) const -> std::optional<nlohmann::json>;
    void store(const CacheKey & key, const nlohmann::json & value) const;

private:
    std::filesystem::path directory_;
};

auto dump_record(const nlohmann::json & record) -> std::string;

}
