#include <flagekr/cli/config.hpp>
#include <flagekr/errors.hpp>

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace flagekr::cli {

namespace {

auto trim(std::string s) -> std::string
{
    auto space = [](unsigned char c) { return std::isspace(c); };
    while (! s.empty() && space(static_cast<unsigned char>(s.back())))
        s.pop_back();
    std::size_t k = 0;
    while (k < s.size() && space(static_cast<unsigned char>(s[k])))
        ++k;
    return s.substr(k);
}

template <typename T>
auto parse_number(const std::string & key, const std::string & value) -> T
{
    T result{};
    auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), result);
    if (ec != std::errc{} || end != value.data() + value.size())
        throw ParameterError("config key '" + key + "': cannot parse '" + value + "'");
    return result;
}

auto real_text(double x) -> std::string
{
    std::ostringstream out;
    out << std::setprecision(17) << x;
    return out.str();
}

}

auto fnv1a64(const std::string & data) -> std::uint64_t
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

auto hex64(std::uint64_t value) -> std::string
{
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << value;
    return out.str();
}

void Config::set(const std::string & key, const std::string & value)
{
    if (key == "budget_seconds")
        budget_seconds = parse_number<double>(key, value);
    else if (key == "node_budget")
        node_budget = parse_number<std::uint64_t>(key, value);
    else if (key == "workers")
        workers = parse_number<unsigned>(key, value);
    else if (key == "vertex_cap")
        vertex_cap = parse_number<std::size_t>(key, value);
    else if (key == "ground_cap")
        ground_cap = parse_number<int>(key, value);
    else if (key == "spectral_vertex_cap")
        spectral_vertex_cap = parse_number<std::size_t>(key, value);
    else if (key == "bound_graph_cap")
        bound_graph_cap = parse_number<std::size_t>(key, value);
    else if (key == "eigen_tolerance")
        eigen_tolerance = parse_number<double>(key, value);
    else if (key == "omega_node_budget")
        omega_node_budget = parse_number<std::uint64_t>(key, value);
    else if (key == "symmetry_mode")
        symmetry_mode = parse_symmetry_mode(value);
    else
        throw ParameterError("unknown config key '" + key + "'");
    if (workers == 0)
        throw ParameterError("workers must be at least 1");
    if (ground_cap < 2 || ground_cap > 32)
        throw ParameterError("ground_cap must lie in [2,32]");
}

auto Config::canonical_text() const -> std::string
{
    std::ostringstream out;
    out << "bound_graph_cap=" << bound_graph_cap << '\n'
        << "budget_seconds=" << real_text(budget_seconds) << '\n'
        << "eigen_tolerance=" << real_text(eigen_tolerance) << '\n'
        << "ground_cap=" << ground_cap << '\n'
        << "node_budget=" << node_budget << '\n'
        << "omega_node_budget=" << omega_node_budget << '\n'
        << "spectral_vertex_cap=" << spectral_vertex_cap << '\n'
        << "symmetry_mode=" << to_string(symmetry_mode) << '\n'
        << "vertex_cap=" << vertex_cap << '\n'
        << "workers=" << workers << '\n';
    return out.str();
}

auto Config::digest() const -> std::string
{
    return hex64(fnv1a64(canonical_text()));
}

auto Config::solve_options() const -> SolveOptions
{
    SolveOptions o;
    o.node_budget = node_budget;
    o.time_budget_seconds = budget_seconds;
    o.workers = workers;
    return o;
}

auto Config::graph_options() const -> GraphOptions
{
    GraphOptions o;
    o.vertex_cap = vertex_cap;
    o.ground_cap = ground_cap;
    o.workers = workers;
    return o;
}

auto Config::dispatch_options() const -> DispatchOptions
{
    DispatchOptions o;
    o.solve = solve_options();
    o.graph_vertex_cap = std::min(bound_graph_cap, vertex_cap);
    o.spectral_vertex_cap = spectral_vertex_cap;
    o.graph_ground_cap = ground_cap;
    o.omega_node_budget = omega_node_budget;
    o.eigen_tolerance = eigen_tolerance;
    return o;
}

auto parse_config(const std::string & text, Config base) -> Config
{
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        line = trim(line);
        if (line.empty() || line[0] == '#')
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParameterError("config line " + std::to_string(number) + ": expected key=value");
        base.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return base;
}

auto load_config(const std::filesystem::path & path, Config base) -> Config
{
    std::ifstream in(path);
    if (! in)
        throw ParameterError("cannot read config file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), base);
}

}
