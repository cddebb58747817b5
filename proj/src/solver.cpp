#include <flagekr/errors.hpp>
#include <flagekr/solver.hpp>

#include <algorithm>
#include <atomic>
#include <memory>
#include <mutex>
#include <numeric>
#include <thread>

namespace flagekr {

namespace {

using Word = simd::Word;
using Clock = std::chrono::steady_clock;

struct Abort {};

struct Shared {
    std::atomic<std::size_t> best{0};
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> stop{false};
    std::atomic<bool> budget_hit{false};

    std::uint64_t node_budget = 0;
    bool has_deadline = false;
    Clock::time_point deadline;

    bool enumerate = false;
    std::size_t target = 0;
    /// Optimisation only: stop as soon as a set of size target is found.
    bool first_hit = false;

    std::mutex mutex;
    std::vector<int> best_set;
};

inline void reset_bit(std::span<Word> w, std::size_t v) { w[v / 64] &= ~(Word{1} << (v % 64)); }
inline void set_bit(std::span<Word> w, std::size_t v) { w[v / 64] |= Word{1} << (v % 64); }

inline auto first_bit(std::span<const Word> w) -> std::size_t
{
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i])
            return i * 64 + static_cast<std::size_t>(std::countr_zero(w[i]));
    return Bitset::npos;
}

struct Level {
    std::vector<Word> candidates;
    std::vector<int> order;
    std::vector<std::size_t> colour;
};

class Search {
public:
    Search(const DenseGraph & g, Shared & shared)
        : g_(g), shared_(shared), k_(simd::kernels()), words_(g.words_per_row()), levels_(g.size() + 2),
          class_of_(g.size(), -1), removed_by_(g.size(), -1), removed_(g.size(), 0), alive_(words_),
          scratch_u_(words_), scratch_q_(words_)
    {
    }

    /// Colours the root candidate set; returns false when nothing can improve.
    auto prepare_root(std::span<const Word> candidates) -> bool
    {
        Level & root = levels_[0];
        root.candidates.assign(candidates.begin(), candidates.end());
        current_.clear();
        return colour(root);
    }

    auto root() const -> const Level & { return levels_[0]; }

    /// Explores the subtree that includes root.order[idx] and excludes every
    /// root vertex of higher index.
    void run_root_branch(std::span<const Word> root_candidates, std::size_t idx)
    {
        const Level & root = levels_[0];
        if (! worth_branching(0, root.colour[idx]))
            return;
        auto v = static_cast<std::size_t>(root.order[idx]);
        Level & child = levels_[1];
        child.candidates.resize(words_);
        k_.andnot_into(child.candidates, root_candidates, g_.row(v));
        reset_bit(child.candidates, v);
        for (std::size_t j = idx + 1; j < root.order.size(); ++j)
            reset_bit(child.candidates, static_cast<std::size_t>(root.order[j]));
        current_.assign(1, static_cast<int>(v));
        descend(1);
    }

    std::vector<std::vector<int>> found;
    std::uint64_t local_nodes = 0;

private:
    auto worth_branching(std::size_t depth, std::size_t colour) const -> bool
    {
        if (shared_.enumerate)
            return depth + colour >= shared_.target;
        return depth + colour > shared_.best.load(std::memory_order_relaxed);
    }

    void tick()
    {
        if ((++local_nodes & 1023) != 0)
            return;
        std::uint64_t total = shared_.nodes.fetch_add(1024, std::memory_order_relaxed) + 1024;
        if ((shared_.node_budget && total >= shared_.node_budget) || (shared_.has_deadline && Clock::now() >= shared_.deadline)) {
            shared_.budget_hit = true;
            shared_.stop = true;
        }
        if (shared_.stop.load(std::memory_order_relaxed))
            throw Abort{};
    }

    /// current_ holds the chosen set, levels_[depth].candidates its common non-neighbourhood.
    void descend(std::size_t depth)
    {
        const std::size_t chosen = current_.size();
        if (shared_.enumerate && chosen == shared_.target) {
            found.push_back(current_);
            return;
        }
        if (k_.none(levels_[depth].candidates)) {
            if (! shared_.enumerate)
                record(chosen);
            return;
        }
        expand(depth);
    }

    void record(std::size_t size)
    {
        if (size <= shared_.best.load(std::memory_order_relaxed))
            return;
        std::lock_guard lock(shared_.mutex);
        if (size <= shared_.best.load())
            return;
        shared_.best = size;
        shared_.best_set = current_;
        if (shared_.first_hit && size >= shared_.target)
            shared_.stop = true;
    }

    void expand(std::size_t depth)
    {
        tick();
        if (shared_.stop.load(std::memory_order_relaxed))
            throw Abort{};
        Level & level = levels_[depth];
        if (! colour(level))
            return;
        Level & child = levels_[depth + 1];
        child.candidates.resize(words_);
        for (std::size_t idx = level.order.size(); idx-- > 0;) {
            if (! worth_branching(current_.size(), level.colour[idx]))
                return;
            auto v = static_cast<std::size_t>(level.order[idx]);
            k_.andnot_into(child.candidates, level.candidates, g_.row(v));
            reset_bit(child.candidates, v);
            current_.push_back(static_cast<int>(v));
            descend(depth + 1);
            current_.pop_back();
            reset_bit(level.candidates, v);
        }
    }

    /// Greedy partition of the candidates into cliques of g (colour classes
    /// of the complement). Classes below the threshold r are kept as the
    /// propagation base; every later vertex is either refuted by unit
    /// propagation or becomes a branching vertex with an upper bound.
    auto colour(Level & level) -> bool
    {
        const std::size_t chosen = current_.size();
        std::size_t needed_more;
        if (shared_.enumerate)
            needed_more = shared_.target > chosen ? shared_.target - chosen : 0;
        else
            needed_more = shared_.best.load(std::memory_order_relaxed) + 1 > chosen
                ? shared_.best.load(std::memory_order_relaxed) + 1 - chosen
                : 0;
        const std::size_t r = needed_more ? needed_more - 1 : 0;

        class_vertices_.clear();
        class_start_.clear();
        std::copy(level.candidates.begin(), level.candidates.end(), scratch_u_.begin());
        while (! k_.none(scratch_u_)) {
            class_start_.push_back(class_vertices_.size());
            std::copy(scratch_u_.begin(), scratch_u_.end(), scratch_q_.begin());
            for (std::size_t v = first_bit(scratch_q_); v != Bitset::npos; v = first_bit(scratch_q_)) {
                reset_bit(scratch_u_, v);
                reset_bit(scratch_q_, v);
                k_.and_into(scratch_q_, scratch_q_, g_.row(v));
                class_vertices_.push_back(static_cast<int>(v));
            }
        }
        const std::size_t classes = class_start_.size();
        class_start_.push_back(class_vertices_.size());
        level.order.clear();
        level.colour.clear();
        if (classes <= r)
            return false;

        std::fill(alive_.begin(), alive_.end(), 0);
        class_count_.assign(r, 0);
        for (std::size_t c = 0; c < r; ++c) {
            for (std::size_t i = class_start_[c]; i < class_start_[c + 1]; ++i) {
                auto x = class_vertices_[i];
                class_of_[static_cast<std::size_t>(x)] = static_cast<int>(c);
                set_bit(alive_, static_cast<std::size_t>(x));
            }
            class_count_[c] = static_cast<int>(class_start_[c + 1] - class_start_[c]);
        }

        std::size_t kept_classes = 0;
        for (std::size_t c = r; c < classes; ++c) {
            bool counted = false;
            for (std::size_t i = class_start_[c]; i < class_start_[c + 1]; ++i) {
                int v = class_vertices_[i];
                if (r > 0 && refuted(v)) {
                    for (int cc : involved_) {
                        for (std::size_t j = class_start_[cc]; j < class_start_[cc + 1]; ++j)
                            reset_bit(alive_, static_cast<std::size_t>(class_vertices_[j]));
                    }
                    continue;
                }
                if (! counted) {
                    ++kept_classes;
                    counted = true;
                }
                level.order.push_back(v);
                level.colour.push_back(r + kept_classes);
            }
        }
        for (std::size_t i = 0; i < class_start_[r]; ++i)
            class_of_[static_cast<std::size_t>(class_vertices_[i])] = -1;
        return ! level.order.empty();
    }

    /// Unit propagation starting from "v is chosen" over the unused base
    /// classes (each must contribute one vertex). On a conflict, involved_
    /// receives the classes that took part.
    auto refuted(int v) -> bool
    {
        queue_.assign(1, v);
        touched_.clear();
        int conflict = -1;
        for (std::size_t head = 0; head < queue_.size() && conflict < 0; ++head) {
            auto x = static_cast<std::size_t>(queue_[head]);
            auto row = g_.row(x);
            for (std::size_t w = 0; w < words_ && conflict < 0; ++w) {
                for (Word bits = row[w] & alive_[w]; bits; bits &= bits - 1) {
                    std::size_t y = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                    auto c = static_cast<std::size_t>(class_of_[y]);
                    reset_bit(alive_, y);
                    removed_[y] = 1;
                    removed_by_[y] = static_cast<int>(x);
                    touched_.push_back(static_cast<int>(y));
                    if (--class_count_[c] == 0) {
                        conflict = static_cast<int>(c);
                        break;
                    }
                    if (class_count_[c] == 1)
                        for (std::size_t j = class_start_[c]; j < class_start_[c + 1]; ++j)
                            if (! removed_[static_cast<std::size_t>(class_vertices_[j])]) {
                                queue_.push_back(class_vertices_[j]);
                                break;
                            }
                }
            }
        }

        involved_.clear();
        if (conflict >= 0) {
            stack_.assign(1, conflict);
            while (! stack_.empty()) {
                int c = stack_.back();
                stack_.pop_back();
                if (std::find(involved_.begin(), involved_.end(), c) != involved_.end())
                    continue;
                involved_.push_back(c);
                for (std::size_t j = class_start_[c]; j < class_start_[c + 1]; ++j) {
                    auto z = static_cast<std::size_t>(class_vertices_[j]);
                    if (removed_[z] && removed_by_[z] != v)
                        stack_.push_back(class_of_[static_cast<std::size_t>(removed_by_[z])]);
                }
            }
        }
        for (int y : touched_) {
            auto u = static_cast<std::size_t>(y);
            removed_[u] = 0;
            set_bit(alive_, u);
            ++class_count_[static_cast<std::size_t>(class_of_[u])];
        }
        return conflict >= 0;
    }

    const DenseGraph & g_;
    Shared & shared_;
    const simd::KernelSet & k_;
    std::size_t words_;
    std::vector<Level> levels_;
    std::vector<int> current_;

    std::vector<int> class_vertices_;
    std::vector<std::size_t> class_start_;
    std::vector<int> class_of_;
    std::vector<int> class_count_;
    std::vector<int> removed_by_;
    std::vector<char> removed_;
    std::vector<Word> alive_;
    std::vector<int> queue_, touched_, involved_, stack_;
    std::vector<Word> scratch_u_, scratch_q_;
};

/// Vertices by descending degree, ties by index; the returned graph uses the
/// new numbering and `order[new] = old`.
auto renumber(const DenseGraph & g, std::vector<int> & order) -> DenseGraph
{
    order.resize(g.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::size_t> degree(g.size());
    for (std::size_t v = 0; v < g.size(); ++v)
        degree[v] = g.degree(v);
    std::stable_sort(order.begin(), order.end(),
        [&](int a, int b) { return degree[static_cast<std::size_t>(a)] > degree[static_cast<std::size_t>(b)]; });
    return g.induced_subgraph(order);
}

auto greedy_independent_set(const DenseGraph & g) -> std::vector<int>
{
    std::vector<int> order(g.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::size_t> degree(g.size());
    for (std::size_t v = 0; v < g.size(); ++v)
        degree[v] = g.degree(v);
    std::stable_sort(order.begin(), order.end(),
        [&](int a, int b) { return degree[static_cast<std::size_t>(a)] < degree[static_cast<std::size_t>(b)]; });
    Bitset blocked(g.size());
    std::vector<int> chosen;
    for (int v : order) {
        auto u = static_cast<std::size_t>(v);
        if (blocked.test(u))
            continue;
        chosen.push_back(v);
        blocked.set(u);
        auto row = g.row(u);
        for (std::size_t w = 0; w < row.size(); ++w)
            blocked.words()[w] |= row[w];
    }
    return chosen;
}

struct RunOutcome {
    bool completed = true;
    std::size_t upper = 0;
};

/// Distributes the root branches over the workers. Returns whether the
/// search finished and, if not, an upper bound from the unfinished branches.
auto run_search(const DenseGraph & g, Shared & shared, unsigned workers, std::vector<std::vector<int>> * found)
    -> RunOutcome
{
    std::vector<Word> all(g.words_per_row(), 0);
    for (std::size_t v = 0; v < g.size(); ++v)
        set_bit(all, v);

    std::vector<std::unique_ptr<Search>> searches;
    searches.push_back(std::make_unique<Search>(g, shared));
    RunOutcome outcome;
    if (g.size() == 0 || ! searches[0]->prepare_root(all)) {
        outcome.upper = shared.best;
        return outcome;
    }
    const Level & level = searches[0]->root();
    const std::size_t branches = level.order.size();
    std::vector<std::atomic<bool>> finished(branches);
    std::atomic<std::size_t> next{0};

    auto worker = [&](Search & search) {
        try {
            for (std::size_t k = next++; k < branches; k = next++) {
                std::size_t idx = branches - 1 - k;
                search.run_root_branch(all, idx);
                finished[idx] = true;
            }
        }
        catch (const Abort &) {
        }
    };

    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(branches)));
    for (unsigned w = 1; w < workers; ++w) {
        searches.push_back(std::make_unique<Search>(g, shared));
        searches.back()->prepare_root(all);
    }
    if (workers == 1)
        worker(*searches[0]);
    else {
        std::vector<std::jthread> pool;
        for (auto & s : searches)
            pool.emplace_back([&worker, &s] { worker(*s); });
    }

    for (auto & s : searches) {
        shared.nodes += s->local_nodes & 1023;
        if (found)
            for (auto & set : s->found)
                found->push_back(std::move(set));
    }
    outcome.completed = ! shared.budget_hit;
    outcome.upper = shared.best;
    if (! outcome.completed)
        for (std::size_t idx = 0; idx < branches; ++idx)
            if (! finished[idx])
                outcome.upper = std::max(outcome.upper, level.colour[idx]);
    return outcome;
}

void apply_budget(Shared & shared, const SolveOptions & options, Clock::time_point start)
{
    shared.node_budget = options.node_budget;
    if (options.time_budget_seconds > 0) {
        shared.has_deadline = true;
        shared.deadline = start
            + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(options.time_budget_seconds));
    }
}

auto map_back(const std::vector<int> & set, const std::vector<int> & order, std::size_t size) -> Bitset
{
    Bitset result(size);
    for (int v : set)
        result.set(static_cast<std::size_t>(order[static_cast<std::size_t>(v)]));
    return result;
}

}

auto is_independent(const Bitset & set, const DenseGraph & g) -> bool
{
    bool ok = true;
    set.for_each([&](std::size_t v) {
        if (ok && simd::kernels().intersects(g.row(v), set.words()))
            ok = false;
    });
    return ok;
}

auto maximum_independent_set(const DenseGraph & g, std::optional<std::size_t> lower_hint, const SolveOptions & options)
    -> MisResult
{
    const auto start = Clock::now();
    std::vector<int> order;
    DenseGraph h = renumber(g, order);

    std::vector<int> greedy = greedy_independent_set(h);
    MisResult result;
    result.members = map_back(greedy, order, g.size());

    auto attempt = [&](std::size_t initial_best, bool first_hit, unsigned workers) {
        Shared shared;
        apply_budget(shared, options, start);
        shared.best = initial_best;
        shared.first_hit = first_hit;
        shared.target = initial_best + 1;
        RunOutcome outcome = run_search(h, shared, workers, nullptr);
        result.nodes += shared.nodes;
        return std::tuple{outcome, shared.best.load(), shared.best_set};
    };

    std::size_t floor_value = greedy.size();
    bool searched = false;
    if (lower_hint && *lower_hint > floor_value) {
        auto [outcome, best, set] = attempt(*lower_hint - 1, false, options.workers);
        if (! set.empty()) {
            result.size = best;
            result.members = map_back(set, order, g.size());
            searched = true;
            result.exact = outcome.completed;
            result.upper = outcome.completed ? best : outcome.upper;
            lower_hint.reset();
        }
    }
    if (lower_hint || result.size == 0) {
        auto [outcome, best, set] = attempt(floor_value, false, options.workers);
        result.size = best;
        if (! set.empty()) {
            result.members = map_back(set, order, g.size());
            searched = true;
        }
        result.exact = outcome.completed;
        result.upper = outcome.completed ? best : std::max(best, outcome.upper);
    }

    if (options.workers > 1 && searched && result.exact) {
        // The parallel incumbent depends on thread timing. Pruning never cuts
        // a subtree holding a set of the known size, so a sequential first-hit
        // search meets the same set the one-worker search ends with.
        auto [outcome, best, set] = attempt(result.size - 1, true, 1);
        if (best == result.size && ! set.empty())
            result.members = map_back(set, order, g.size());
    }
    result.elapsed = Clock::now() - start;
    return result;
}

auto enumerate_independent_sets(const DenseGraph & g, std::size_t size,
    const std::function<void(const Bitset &)> & sink, const SolveOptions & options) -> std::uint64_t
{
    std::vector<Bitset> sets;
    if (size == 0)
        sets.emplace_back(g.size());
    else {
        std::vector<int> order;
        DenseGraph h = renumber(g, order);
        Shared shared;
        apply_budget(shared, options, Clock::now());
        shared.enumerate = true;
        shared.target = size;
        std::vector<std::vector<int>> found;
        RunOutcome outcome = run_search(h, shared, options.workers, &found);
        if (! outcome.completed)
            throw BudgetExceeded("enumeration budget exhausted after " + std::to_string(found.size()) + " sets",
                found.size());
        sets.reserve(found.size());
        for (auto & set : found)
            sets.push_back(map_back(set, order, g.size()));
    }
    std::sort(sets.begin(), sets.end(), [](const Bitset & a, const Bitset & b) { return lex_less(a, b); });
    for (const auto & set : sets)
        sink(set);
    return sets.size();
}

auto is_independent(const VertexSet & set, const FlagGraph & g) -> bool
{
    check_belongs(set, g);
    return is_independent(set.members, g.dense());
}

auto is_maximal_independent(const VertexSet & set, const FlagGraph & g) -> bool
{
    if (! is_independent(set, g))
        throw ParameterError("set is not independent");
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        if (! set.contains(v) && ! simd::kernels().intersects(g.dense().row(v), set.members.words()))
            return false;
    return true;
}

auto alpha_exact(const FlagGraph & g, std::optional<std::size_t> lower_hint, const SolveOptions & options) -> SolveResult
{
    MisResult mis = maximum_independent_set(g.dense(), lower_hint, options);
    SolveResult result;
    result.alpha = mis.size;
    result.upper = mis.upper;
    result.exact = mis.exact;
    result.witness = VertexSet{g.id(), std::move(mis.members)};
    result.nodes_explored = mis.nodes;
    result.elapsed = mis.elapsed;
    if (! is_independent(result.witness, g) || result.witness.size() != result.alpha)
        throw ConsistencyError("solver witness is not an independent set of the reported size");
    return result;
}

auto enumerate_maximum(const FlagGraph & g, std::size_t alpha, const std::function<void(const VertexSet &)> & sink,
    const SolveOptions & options) -> std::uint64_t
{
    return enumerate_independent_sets(
        g.dense(), alpha, [&](const Bitset & members) { sink(VertexSet{g.id(), members}); }, options);
}

auto enumerate_maximum(const FlagGraph & g, std::size_t alpha, const SolveOptions & options) -> std::vector<VertexSet>
{
    std::vector<VertexSet> result;
    enumerate_maximum(g, alpha, [&](const VertexSet & set) { result.push_back(set); }, options);
    return result;
}

auto clique_number(const DenseGraph & g, const SolveOptions & options) -> MisResult
{
    return maximum_independent_set(g.complement(), std::nullopt, options);
}

auto omega_exact(const FlagGraph & g, const SolveOptions & options) -> SolveResult
{
    MisResult mis = clique_number(g.dense(), options);
    SolveResult result;
    result.alpha = mis.size;
    result.upper = mis.upper;
    result.exact = mis.exact;
    result.witness = VertexSet{g.id(), std::move(mis.members)};
    result.nodes_explored = mis.nodes;
    result.elapsed = mis.elapsed;
    return result;
}

}
