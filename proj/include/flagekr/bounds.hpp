#pragma once

#include <flagekr/core.hpp>
#include <flagekr/graph.hpp>
#include <flagekr/integer.hpp>
#include <flagekr/solver.hpp>
#include <flagekr/spectral.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace flagekr {

enum class Direction { upper, lower, exact };

auto to_string(Direction d) -> std::string;

/// One named bound on alpha. Inapplicable reports carry a reason and no value.
struct BoundReport {
    std::string name;
    Direction direction = Direction::upper;
    bool applicable = false;
    std::string reason;
    std::optional<BigInt> value;
    /// Spectral bounds: the real number before flooring.
    std::optional<double> real_value;
    /// Spectral bounds: the other floor candidate when the real value sits
    /// within the safety margin of an integer.
    std::optional<BigInt> alternative_value;
    std::map<std::string, std::string> support;
};

auto ekr_value(GroundSize n, const TypeSet & type) -> BoundReport;
auto bipartite_value(GroundSize n, const TypeSet & type) -> BoundReport;
auto half_bound(GroundSize n, const TypeSet & type) -> BoundReport;
/// Also records whether the built graph is bipartite.
auto half_bound(const FlagGraph & g) -> BoundReport;
auto cycle_value(int n, int a, int b) -> BoundReport;
/// Type extra ∪ {a,b} with extra a subset of [a-1] (possibly empty).
auto cycle_corollary_value(int n, int a, int b, const std::vector<int> & extra) -> BoundReport;
auto theorem_1nm2_value(int n) -> BoundReport;
auto projection_lower(GroundSize n, const TypeSet & type, const TypeSet & sub, const BigInt & alpha_sub) -> BoundReport;
auto projection_exact(GroundSize n, const TypeSet & type, const TypeSet & sub, const BigInt & alpha_sub) -> BoundReport;
auto deletion_bound(int n, int a, int b, const BigInt & alpha_smaller) -> BoundReport;
auto hoffman(const FlagGraph & g) -> BoundReport;
auto hoffman(const DenseGraph & g, const Spectrum & spectrum) -> BoundReport;
auto inertia_bound(const FlagGraph & g) -> BoundReport;
auto inertia_bound(const Spectrum & spectrum) -> BoundReport;
auto clique_coclique(const FlagGraph & g, std::size_t omega) -> BoundReport;

/// The inequality n >= term + 3a + 1 with term = recurrence_term(n,a,b).
/// Throws ParameterError unless n >= a+b+1 and a < n/2 < b.
auto induction_condition(int n, int a, int b) -> bool;

enum class VerdictStatus { exact, interval, unknown };

auto to_string(VerdictStatus s) -> std::string;

struct AlphaVerdict {
    VerdictStatus status = VerdictStatus::unknown;
    BigInt lo = 0;
    BigInt hi = 0;
    /// Justification, outermost step first.
    std::vector<std::string> provenance;
    /// Every bound evaluated for this type (not for recursive sub-problems).
    std::vector<BoundReport> reports;
};

struct DispatchOptions {
    /// Run the exact solver when no theorem settles the type.
    bool use_solver = false;
    SolveOptions solve{};
    /// Graph-based bounds are skipped above these sizes.
    std::size_t graph_vertex_cap = 5000;
    std::size_t spectral_vertex_cap = 2000;
    int graph_ground_cap = 16;
    /// Budget for the clique search behind clique_coclique.
    std::uint64_t omega_node_budget = 200'000;
    bool spectral = true;
    double eigen_tolerance = 1e-9;
};

auto alpha_dispatch(GroundSize n, const TypeSet & type, const DispatchOptions & options = {}) -> AlphaVerdict;

}
