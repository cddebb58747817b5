#pragma once

#include <flagekr/bounds.hpp>
#include <flagekr/symmetry.hpp>

#include <cstdint>
#include <filesystem>
#include <string>

namespace flagekr::cli {

/// Settings that can change results or their cost. Loaded from key=value
/// text; every report embeds digest().
struct Config {
    double budget_seconds = 0;
    std::uint64_t node_budget = 0;
    unsigned workers = 1;
    std::size_t vertex_cap = 100'000;
    int ground_cap = 16;
    std::size_t spectral_vertex_cap = 2000;
    std::size_t bound_graph_cap = 5000;
    double eigen_tolerance = 1e-9;
    std::uint64_t omega_node_budget = 200'000;
    SymmetryMode symmetry_mode = SymmetryMode::generators;

    /// Applies one key=value pair; throws ParameterError for unknown keys or bad values.
    void set(const std::string & key, const std::string & value);

    /// Canonical "key=value" lines in key order.
    auto canonical_text() const -> std::string;
    /// FNV-1a 64 of canonical_text(), as 16 hex digits.
    auto digest() const -> std::string;

    auto solve_options() const -> SolveOptions;
    auto graph_options() const -> GraphOptions;
    auto dispatch_options() const -> DispatchOptions;
};

/// Blank lines and lines starting with '#' are ignored.
auto load_config(const std::filesystem::path & path, Config base = {}) -> Config;
auto parse_config(const std::string & text, Config base = {}) -> Config;

auto fnv1a64(const std::string & data) -> std::uint64_t;
auto hex64(std::uint64_t value) -> std::string;

}
