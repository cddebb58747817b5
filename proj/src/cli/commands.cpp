#include <flagekr/cli/cache.hpp>
#include <flagekr/cli/commands.hpp>
#include <flagekr/cli/config.hpp>
#include <flagekr/cli/serialize.hpp>
#include <flagekr/errors.hpp>
#include <flagekr/simd/kernels.hpp>
#include <flagekr/solver.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <random>

namespace flagekr::cli {

namespace {

struct Outcome {
    json document;
    int code = exit_ok;
};

struct Settings {
    std::string format = "json";
    std::string config_path;
    std::string cache_dir;
    Config config;
};

auto scalar_text(const json & value) -> std::string
{
    if (value.is_string())
        return value.get<std::string>();
    return value.dump();
}

/// Generic rendering of an envelope as "key: value" lines.
void write_text(const json & doc, std::ostream & out)
{
    std::function<void(const json &, const std::string &)> walk = [&](const json & node, const std::string & prefix) {
        if (node.is_object()) {
            for (auto it = node.begin(); it != node.end(); ++it)
                walk(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
        }
        else if (node.is_array() && ! node.empty() && (node.front().is_object() || node.front().is_array())) {
            for (std::size_t k = 0; k < node.size(); ++k)
                walk(node[k], prefix + "[" + std::to_string(k) + "]");
        }
        else if (node.is_array()) {
            out << prefix << ":";
            for (const auto & x : node)
                out << ' ' << scalar_text(x);
            out << '\n';
        }
        else
            out << prefix << ": " << scalar_text(node) << '\n';
    };
    walk(doc["params"], "params");
    walk(doc["verdict"], "verdict");
    walk(doc["provenance"], "provenance");
}

auto csv_field(const std::string & s) -> std::string
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char c : s)
        q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

void write_csv(const json & doc, std::ostream & out)
{
    const json & verdict = doc["verdict"];
    if (verdict.contains("rows")) {
        const json & columns = verdict["columns"];
        for (std::size_t k = 0; k < columns.size(); ++k)
            out << (k ? "," : "") << columns[k].get<std::string>();
        out << '\n';
        for (const auto & row : verdict["rows"]) {
            for (std::size_t k = 0; k < columns.size(); ++k)
                out << (k ? "," : "") << csv_field(scalar_text(row[columns[k].get<std::string>()]));
            out << '\n';
        }
        return;
    }
    std::vector<std::pair<std::string, std::string>> cells;
    for (auto it = doc["params"].begin(); it != doc["params"].end(); ++it)
        cells.emplace_back(it.key(), scalar_text(it.value()));
    for (auto it = verdict.begin(); it != verdict.end(); ++it)
        if (! it.value().is_structured())
            cells.emplace_back(it.key(), scalar_text(it.value()));
    for (std::size_t k = 0; k < cells.size(); ++k)
        out << (k ? "," : "") << cells[k].first;
    out << '\n';
    for (std::size_t k = 0; k < cells.size(); ++k)
        out << (k ? "," : "") << csv_field(cells[k].second);
    out << '\n';
}

void emit(const json & doc, const std::string & format, std::ostream & out)
{
    if (format == "json")
        out << doc.dump(2) << '\n';
    else if (format == "csv")
        write_csv(doc, out);
    else
        write_text(doc, out);
}

/// Looks the computation up in the cache when one is configured.
auto cached(const Settings & s, int n, const std::string & type, const std::string & kind,
    const std::function<Outcome()> & compute) -> Outcome
{
    if (s.cache_dir.empty())
        return compute();
    ResultCache cache(s.cache_dir);
    CacheKey key{n, type, kind, s.config.digest()};
    if (auto hit = cache.load(key))
        return Outcome{(*hit)["output"], (*hit)["exit"].get<int>()};
    Outcome result = compute();
    cache.store(key, {{"output", result.document}, {"exit", result.code}});
    return result;
}

auto graph_command(const Settings & s, int n, const TypeSet & type, const std::string & export_path) -> Outcome
{
    FlagGraph g = build_graph(GroundSize(n), type, s.config.graph_options());
    auto parts = components(g);
    bool complementary = false;
    for (int t : type.entries())
        complementary = complementary || type.contains(n - t);
    json verdict = {
        {"vertices", std::to_string(g.vertex_count())},
        {"degree", std::to_string(g.degree())},
        {"edges", std::to_string(g.edge_count())},
        {"bipartite", is_bipartite(g).bipartite},
        {"components", std::to_string(parts.size())},
    };
    if (complementary) {
        bool all = true;
        for (const auto & c : parts)
            all = all && is_complete_bipartite(g.dense(), c);
        verdict["components_complete_bipartite"] = all;
    }
    if (! export_path.empty()) {
        std::ofstream file(export_path);
        if (! file)
            throw ResourceError("cannot write " + export_path);
        write_edge_list(g, file);
    }
    json params = {{"n", n}, {"T", type_json(type)}};
    json support = {{"kernels", std::string(simd::kernels().name)}};
    return {envelope(params, verdict, json::array({"build_graph"}), support, s.config.digest())};
}

auto solver_json(const SolveResult & r, const FlagGraph & g) -> json
{
    return {
        {"alpha", std::to_string(r.alpha)},
        {"upper", std::to_string(r.upper)},
        {"exact", r.exact},
        {"witness", flags_json(r.witness, g)},
    };
}

auto alpha_command(const Settings & s, int n, const TypeSet & type, const std::string & mode) -> Outcome
{
    if (mode != "dispatch" && mode != "solve" && mode != "both")
        throw ParameterError("--mode must be dispatch, solve or both");
    json params = {{"n", n}, {"T", type_json(type)}, {"mode", mode}};
    json provenance = json::array();
    json support = json::object();
    json verdict;
    int code = exit_ok;

    std::optional<AlphaVerdict> dispatched;
    if (mode != "solve") {
        dispatched = alpha_dispatch(GroundSize(n), type, s.config.dispatch_options());
        json reports = json::array();
        for (const auto & r : dispatched->reports)
            reports.push_back(to_json(r));
        support["reports"] = reports;
        for (const auto & p : dispatched->provenance)
            provenance.push_back(p);
        verdict = to_json(*dispatched);
    }
    if (mode != "dispatch") {
        FlagGraph g = build_graph(GroundSize(n), type, s.config.graph_options());
        std::optional<std::size_t> hint;
        if (dispatched)
            hint = static_cast<std::size_t>(to_int64(dispatched->lo));
        SolveResult r = alpha_exact(g, hint, s.config.solve_options());
        support["solver"] = solver_json(r, g);
        provenance.push_back(r.exact ? "solver: alpha_exact" : "solver: budget exhausted");
        AlphaVerdict solved;
        solved.status = r.exact ? VerdictStatus::exact : VerdictStatus::interval;
        solved.lo = r.alpha;
        solved.hi = r.upper;
        if (dispatched) {
            bool clash = solved.hi < dispatched->lo || solved.lo > dispatched->hi
                || (r.exact && dispatched->status == VerdictStatus::exact && dispatched->lo != solved.lo);
            support["agreement"] = ! clash;
            if (clash)
                code = exit_consistency;
            solved.lo = std::max(solved.lo, dispatched->lo);
            solved.hi = std::min(solved.hi, dispatched->hi);
            if (solved.lo == solved.hi)
                solved.status = VerdictStatus::exact;
        }
        verdict = to_json(solved);
        if (solved.status != VerdictStatus::exact && code == exit_ok)
            code = exit_resource;
    }
    return {envelope(params, verdict, provenance, support, s.config.digest()), code};
}

auto family_command(const Settings & s, const FamilySpec & spec) -> Outcome
{
    spec.validate();
    json params = {{"n", spec.n}, {"a", spec.a}, {"b", spec.b}, {"i", spec.i}, {"barred", spec.barred}};
    SizeBreakdown best = optimal_shift(spec.n, spec.a, spec.b);
    SizeBreakdown here = family_breakdown(spec.n, spec.a, spec.b, spec.i);
    BigInt formula = spec.barred ? barred_family_size(spec.n, spec.a, spec.b) : here.total;
    json verdict = {{"formula", big(formula)}};
    if (! spec.barred)
        verdict["formula_alternative"] = big(family_size_alternative(spec.n, spec.a, spec.b, spec.i));
    json support = {
        {"i0", to_string(best.i0)},
        {"i_star", std::to_string(best.i_star)},
        {"two_maxima", best.two_maxima},
        {"f_max", big(best.total)},
        {"term_condition_I", big(here.term_condition_I)},
        {"term_condition_II", big(here.term_condition_II)},
    };
    json provenance = json::array({"family_size"});

    TypeSet type({spec.a, spec.b});
    const GroundSize n(spec.n);
    GraphOptions go = s.config.graph_options();
    if (spec.n <= go.ground_cap && count_flags(n, type) <= go.vertex_cap) {
        FlagGraph g = build_graph(n, type, go);
        VertexSet set = build_family(spec, g);
        verdict["size"] = std::to_string(set.size());
        verdict["independent"] = is_independent(set, g);
        verdict["maximal"] = is_maximal_independent(set, g);
        support["neighbor_profile"] = profile_json(neighbor_profile(set, g));
        if (! spec.barred && spec.i == spec.top_shift()) {
            FamilySpec barred = spec;
            barred.barred = true;
            VertexSet superset = build_family(barred, g);
            verdict["barred_superset_size"] = std::to_string(superset.size());
            verdict["barred_superset_maximal"] = is_maximal_independent(superset, g);
        }
        provenance.push_back("build_family");
        if (BigInt(set.size()) != formula)
            return {envelope(params, verdict, provenance, support, s.config.digest()), exit_consistency};
    }
    else
        support["graph"] = "not built: above the configured caps";
    return {envelope(params, verdict, provenance, support, s.config.digest())};
}

/// Names of the constructed families that are maximum sets of g.
auto family_candidates(const FlagGraph & g, std::size_t alpha) -> std::vector<std::pair<std::string, VertexSet>>
{
    std::vector<std::pair<std::string, VertexSet>> out;
    if (g.type().size() != 2)
        return out;
    const int n = g.n(), a = g.type()[0], b = g.type()[1];
    try {
        check_family_parameters(n, a, b);
    }
    catch (const ParameterError &) {
        return out;
    }
    for (int i = 0; i <= 2 * b - n + 1; ++i)
        for (bool barred : {false, true}) {
            if (barred && i != 2 * b - n + 1)
                continue;
            VertexSet set = build_family(FamilySpec{n, a, b, i, barred}, g);
            if (set.size() == alpha)
                out.emplace_back((barred ? "Fbar_" : "F_") + std::to_string(i), std::move(set));
        }
    return out;
}

auto classify_command(const Settings & s, int n, const TypeSet & type) -> Outcome
{
    FlagGraph g = build_graph(GroundSize(n), type, s.config.graph_options());
    json params = {{"n", n}, {"T", type_json(type)}, {"symmetry", to_string(s.config.symmetry_mode)}};
    SolveResult r = alpha_exact(g, std::nullopt, s.config.solve_options());
    if (! r.exact) {
        json verdict = {{"status", "partial"}, {"alpha_lo", std::to_string(r.alpha)}, {"alpha_hi", std::to_string(r.upper)}};
        return {envelope(params, verdict, json::array({"solver: budget exhausted"}), json::object(), s.config.digest()),
            exit_resource};
    }
    std::vector<VertexSet> sets;
    try {
        sets = enumerate_maximum(g, r.alpha, s.config.solve_options());
    }
    catch (const BudgetExceeded & e) {
        json verdict = {{"status", "partial"}, {"alpha", std::to_string(r.alpha)},
            {"partial_count", std::to_string(e.partial_count())}};
        return {envelope(params, verdict, json::array({"enumerate_maximum: budget exhausted"}), json::object(),
                    s.config.digest()),
            exit_resource};
    }
    auto spec = SymmetryGroupSpec::for_graph(g, s.config.symmetry_mode);
    EquivClassReport report = classify(sets, g, spec);
    json classes = to_json(report, g);
    for (auto & [name, set] : family_candidates(g, r.alpha)) {
        int k = find_class(report, set, g, spec);
        if (k >= 0)
            classes["classes"][static_cast<std::size_t>(k)]["families"].push_back(name);
    }
    json verdict = {
        {"status", "complete"},
        {"alpha", std::to_string(r.alpha)},
        {"sets", std::to_string(sets.size())},
        {"class_count", std::to_string(report.class_count)},
    };
    json provenance = json::array({"alpha_exact", "enumerate_maximum", "classify"});
    return {envelope(params, verdict, provenance, classes, s.config.digest())};
}

auto bounds_command(const Settings & s, int n, const TypeSet & type) -> Outcome
{
    AlphaVerdict v = alpha_dispatch(GroundSize(n), type, s.config.dispatch_options());
    json reports = json::array();
    for (const auto & r : v.reports)
        reports.push_back(to_json(r));
    json support = {{"reports", reports}};
    if (type.size() == 2) {
        int a = type[0], b = type[1];
        try {
            support["induction_condition"] = induction_condition(n, a, b);
        }
        catch (const ParameterError & e) {
            support["induction_condition"] = std::string("not applicable: ") + e.what();
        }
    }
    json params = {{"n", n}, {"T", type_json(type)}};
    return {envelope(params, to_json(v), v.provenance, support, s.config.digest())};
}

auto report_command(const Settings & s, int max_n) -> Outcome
{
    if (max_n < 2 || max_n > s.config.ground_cap)
        throw ParameterError("--max-n must lie in [2," + std::to_string(s.config.ground_cap) + "]");
    json rows = json::array();
    DispatchOptions options = s.config.dispatch_options();
    for (int n = 2; n <= max_n; ++n)
        for (const TypeSet & type : all_types(GroundSize(n))) {
            AlphaVerdict v = alpha_dispatch(GroundSize(n), type, options);
            std::string method;
            for (const auto & p : v.provenance)
                method += (method.empty() ? "" : "; ") + p;
            rows.push_back({
                {"n", n},
                {"type", type.to_string()},
                {"dual", dual_type(type, GroundSize(n)).to_string()},
                {"status", to_string(v.status)},
                {"lo", to_string(v.lo)},
                {"hi", to_string(v.hi)},
                {"method", method},
            });
        }
    json params = {{"max_n", max_n}};
    json columns = json::array({"n", "type", "dual", "status", "lo", "hi", "method"});
    return {envelope(params, {{"columns", columns}, {"rows", rows}}, json::array({"alpha_dispatch"}), json::object(), s.config.digest())};
}

auto selftest_command(const Settings & s) -> Outcome
{
    json checks = json::array();
    bool all = true;
    auto check = [&](const std::string & name, bool ok) {
        checks.push_back({{"check", name}, {"pass", ok}});
        all = all && ok;
    };

    std::mt19937_64 rng(12345);
    std::vector<simd::Word> a(37), b(37), x(37), y(37);
    for (auto & w : a)
        w = rng();
    for (auto & w : b)
        w = rng();
    const auto & ref = simd::scalar_kernels();
    for (const auto * k : simd::available_kernels()) {
        bool ok = k->popcount(a) == ref.popcount(a) && k->and_popcount(a, b) == ref.and_popcount(a, b)
            && k->intersects(a, b) == ref.intersects(a, b);
        k->andnot_into(x, a, b);
        ref.andnot_into(y, a, b);
        check("kernels " + std::string(k->name), ok && x == y);
    }
    auto alpha_of = [&](int n, const char * t) {
        return alpha_exact(build_graph(GroundSize(n), TypeSet::parse(t), s.config.graph_options())).alpha;
    };
    check("alpha Gamma(5,{2}) = 4", alpha_of(5, "2") == 4);
    check("alpha Gamma(5,{1,3}) = 12", alpha_of(5, "1,3") == 12);
    check("alpha Gamma(6,{1,4}) = 22", alpha_of(6, "1,4") == 22);
    check("family_size(8,2,5,1) = 230", family_size(8, 2, 5, 1) == 230);
    check("f_max(36,1,33) = 58947", f_max(36, 1, 33) == 58947);
    check("dispatch (6,{1,4}) exact 22",
        alpha_dispatch(GroundSize(6), TypeSet({1, 4}), s.config.dispatch_options()).lo == 22);

    json verdict = {{"pass", all}, {"checks", checks}};
    return {envelope(json::object(), verdict, json::array({"selftest"}), json::object(), s.config.digest()),
        all ? exit_ok : exit_consistency};
}

}

auto run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int
{
    CLI::App app{"Flag Kneser graphs: independence numbers, bounds, extremal families, symmetry classes", "flagekr"};
    app.require_subcommand(1);
    app.fallthrough();

    Settings s;
    std::optional<double> budget_seconds;
    std::optional<std::uint64_t> node_budget;
    std::optional<unsigned> workers;
    std::optional<std::size_t> vertex_cap;
    std::optional<std::string> symmetry;
    app.add_option("--format", s.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--config", s.config_path, "key=value configuration file");
    app.add_option("--cache-dir", s.cache_dir, "Directory for cached results");
    app.add_option("--budget-seconds", budget_seconds, "Wall-clock budget for the exact solver");
    app.add_option("--node-budget", node_budget, "Node budget for the exact solver");
    app.add_option("--workers", workers, "Worker threads");
    app.add_option("--vertex-cap", vertex_cap, "Largest graph that may be built");
    app.add_option("--symmetry", symmetry, "generators or full-automorphism");

    int n = 0, a = 0, b = 0, i = 0, max_n = 8;
    std::string type_text, mode = "dispatch", export_path;
    bool barred = false;

    auto add_nt = [&](CLI::App * sub) {
        sub->add_option("-n", n, "Ground set size")->required();
        sub->add_option("-T", type_text, "Type, e.g. 2,5")->required();
    };
    auto * graph = app.add_subcommand("graph", "Build Gamma(n,T) and summarize it");
    add_nt(graph);
    graph->add_option("--export", export_path, "Write the edge list (p edge / e u v) to this file");
    auto * alpha = app.add_subcommand("alpha", "Independence number by theorem dispatch and/or exact search");
    add_nt(alpha);
    alpha->add_option("--mode", mode, "dispatch, solve or both")->check(CLI::IsMember({"dispatch", "solve", "both"}));
    auto * family = app.add_subcommand("family", "Build F_i(n,a,b) and check it");
    family->add_option("-n", n)->required();
    family->add_option("-a", a)->required();
    family->add_option("-b", b)->required();
    family->add_option("-i", i)->required();
    family->add_flag("--barred", barred, "The barred family at i = 2b-n+1");
    auto * classify_cmd = app.add_subcommand("classify", "Equivalence classes of maximum independent sets");
    add_nt(classify_cmd);
    auto * bounds = app.add_subcommand("bounds", "Every bound for Gamma(n,T)");
    add_nt(bounds);
    auto * report = app.add_subcommand("report", "Dispatch verdict for every type with n <= max-n");
    report->add_option("--max-n", max_n, "Largest n")->required();
    auto * selftest = app.add_subcommand("selftest", "Quick internal consistency checks");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::ParseError & e) {
        int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (! s.config_path.empty())
            s.config = load_config(s.config_path);
        if (budget_seconds)
            s.config.set("budget_seconds", std::to_string(*budget_seconds));
        if (node_budget)
            s.config.set("node_budget", std::to_string(*node_budget));
        if (workers)
            s.config.set("workers", std::to_string(*workers));
        if (vertex_cap)
            s.config.set("vertex_cap", std::to_string(*vertex_cap));
        if (symmetry)
            s.config.set("symmetry_mode", *symmetry);

        Outcome result;
        if (*graph)
            result = graph_command(s, n, TypeSet::parse(type_text), export_path);
        else if (*alpha) {
            TypeSet type = TypeSet::parse(type_text);
            result = cached(s, n, type.to_string(), "alpha/" + mode, [&] { return alpha_command(s, n, type, mode); });
        }
        else if (*family)
            result = family_command(s, FamilySpec{n, a, b, i, barred});
        else if (*classify_cmd) {
            TypeSet type = TypeSet::parse(type_text);
            result = cached(s, n, type.to_string(), "classify", [&] { return classify_command(s, n, type); });
        }
        else if (*bounds) {
            TypeSet type = TypeSet::parse(type_text);
            result = cached(s, n, type.to_string(), "bounds", [&] { return bounds_command(s, n, type); });
        }
        else if (*report)
            result = cached(s, max_n, "", "report", [&] { return report_command(s, max_n); });
        else if (*selftest)
            result = selftest_command(s);
        emit(result.document, s.format, out);
        return result.code;
    }
    catch (const ParameterError & e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const ResourceError & e) {
        err << "resource limit: " << e.what() << '\n';
        return exit_resource;
    }
    catch (const BudgetExceeded & e) {
        err << "budget exhausted: " << e.what() << '\n';
        return exit_resource;
    }
    catch (const NumericalError & e) {
        err << "numerical failure: " << e.what() << '\n';
        return exit_resource;
    }
    catch (const ConsistencyError & e) {
        err << "consistency failure: " << e.what() << '\n';
        return exit_consistency;
    }
    catch (const std::exception & e) {
        err << "internal error: " << e.what() << '\n';
        return exit_consistency;
    }
}

}
