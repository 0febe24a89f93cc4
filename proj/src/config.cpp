#include "qfb/scenarios.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace qfb {

namespace {

const std::set<std::string> known_keys{
    "gamma",          "kappa",           "kappa_over_gamma", "tau",
    "gamma_tau_over_2pi", "feedback_phase_deg", "t_end_over_tau", "steps_per_delay",
    "solvers",        "output_dir",
};

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct Entry {
    std::string value;
    int line;
};

[[noreturn]] void fail(const std::string& source, int line, const std::string& what)
{
    std::ostringstream os;
    os << source;
    if (line > 0)
        os << ":" << line;
    os << ": " << what;
    throw config_error(os.str());
}

double parse_real(const std::string& source, const std::string& key, const Entry& e)
{
    const char* begin = e.value.c_str();
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || errno == ERANGE || !std::isfinite(v))
        fail(source, e.line, "parse error: " + key + " expects a number, got '" + e.value + "'");
    return v;
}

int parse_positive_int(const std::string& source, const std::string& key, const Entry& e)
{
    const char* begin = e.value.c_str();
    char* end = nullptr;
    errno = 0;
    const long v = std::strtol(begin, &end, 10);
    if (end == begin || *end != '\0' || errno == ERANGE || v < 1 || v > 100'000'000)
        fail(source, e.line, "parse error: " + key + " expects a positive integer, got '" + e.value + "'");
    return static_cast<int>(v);
}

cplx phase_from_degrees(double deg)
{
    const double turns = deg / 90.0;
    if (turns == std::round(turns)) {
        // exact values on the axes
        switch (((static_cast<long>(std::round(turns)) % 4) + 4) % 4) {
        case 0:
            return {1.0, 0.0};
        case 1:
            return {0.0, 1.0};
        case 2:
            return {-1.0, 0.0};
        default:
            return {0.0, -1.0};
        }
    }
    return std::polar(1.0, deg * pi / 180.0);
}

}  // namespace

std::string to_string(Solver s)
{
    switch (s) {
    case Solver::continuum:
        return "continuum";
    case Solver::dde:
        return "dde";
    case Solver::dde_nofeedback:
        return "dde-nofeedback";
    case Solver::series:
        return "series";
    case Solver::long_time:
        return "long-time";
    }
    return "?";
}

Solver solver_from_string(const std::string& name)
{
    for (Solver s : {Solver::continuum, Solver::dde, Solver::dde_nofeedback, Solver::series,
                     Solver::long_time})
        if (to_string(s) == name)
            return s;
    throw config_error("unknown solver '" + name +
                       "' (expected continuum, dde, dde-nofeedback, series, long-time)");
}

Scenario named_scenario(const std::string& name)
{
    Scenario s;
    s.name = name;
    if (name == "fig2") {
        s.params = PhysicalParams::from_rates(1.0, 2.0, 2.0 * pi, 1.0);
        s.solvers = {Solver::continuum, Solver::dde};
        s.t_end = 12.0 * s.params.tau();
    } else if (name == "fig3") {
        s.params = PhysicalParams::from_rates(1.0, 2.0, 2.0 * pi, 1.0);
        s.solvers = {Solver::dde, Solver::series};
        s.t_end = 3.0 * s.params.tau();
        s.series_terms = 3;
    } else if (name == "fig4") {
        s.params = PhysicalParams::from_rates(1.0, 2.0, 2.0 * pi, 1.0);
        s.solvers = {Solver::dde, Solver::long_time};
        s.t_end = 12.0 * s.params.tau();
    } else if (name == "fig5") {
        // gamma = 20 kappa, tau = pi / (2 gamma)
        s.params = PhysicalParams::from_rates(1.0, 0.05, pi / 2.0, 1.0);
        s.solvers = {Solver::dde, Solver::dde_nofeedback};
        s.t_end = 20.0 * s.params.tau();
    } else {
        throw config_error("unknown scenario '" + name + "' (expected fig2, fig3, fig4, fig5, custom)");
    }
    s.output_dir = std::filesystem::path("qfb_out") / name;
    return s;
}

Scenario parse_config_text(const std::string& text, const std::string& source)
{
    std::map<std::string, Entry> entries;
    std::vector<std::string> unknown;
    std::istringstream is(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(is, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(source, line_no, "malformed line, expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            fail(source, line_no, "malformed line, expected key=value");
        if (!known_keys.count(key)) {
            unknown.push_back(key + " (line " + std::to_string(line_no) + ")");
            continue;
        }
        if (entries.count(key))
            fail(source, line_no, "duplicate key '" + key + "'");
        entries.emplace(key, Entry{value, line_no});
    }
    if (!unknown.empty()) {
        std::string list;
        for (const auto& u : unknown)
            list += (list.empty() ? "" : ", ") + u;
        fail(source, 0, "unknown keys: " + list);
    }
    if (entries.count("kappa") && entries.count("kappa_over_gamma"))
        fail(source, entries.at("kappa").line, "conflicting keys: kappa and kappa_over_gamma");
    if (entries.count("tau") && entries.count("gamma_tau_over_2pi"))
        fail(source, entries.at("tau").line, "conflicting keys: tau and gamma_tau_over_2pi");

    const auto real_or = [&](const std::string& key, double fallback) {
        const auto it = entries.find(key);
        return it == entries.end() ? fallback : parse_real(source, key, it->second);
    };

    Scenario s;
    s.name = "custom";
    const double gamma = real_or("gamma", 1.0);
    if (!(gamma > 0.0))
        fail(source, entries.count("gamma") ? entries.at("gamma").line : 0, "gamma must be positive");
    const double kappa = entries.count("kappa") ? real_or("kappa", 0.0)
                                                : gamma * real_or("kappa_over_gamma", 2.0);
    const double tau = entries.count("tau") ? real_or("tau", 0.0)
                                            : 2.0 * pi * real_or("gamma_tau_over_2pi", 1.0) / gamma;
    const cplx phase = phase_from_degrees(real_or("feedback_phase_deg", 0.0));
    try {
        s.params = PhysicalParams::from_rates(gamma, kappa, tau, phase);
    } catch (const std::invalid_argument& e) {
        fail(source, 0, e.what());
    }
    const double t_end_over_tau = real_or("t_end_over_tau", 12.0);
    if (!(t_end_over_tau > 0.0))
        fail(source, entries.at("t_end_over_tau").line, "t_end_over_tau must be positive");
    s.t_end = t_end_over_tau * tau;
    if (entries.count("steps_per_delay"))
        s.steps_per_delay = parse_positive_int(source, "steps_per_delay", entries.at("steps_per_delay"));
    if (entries.count("solvers")) {
        s.solvers.clear();
        std::istringstream list(entries.at("solvers").value);
        std::string item;
        while (std::getline(list, item, ',')) {
            item = trim(item);
            if (item.empty())
                continue;
            try {
                s.solvers.push_back(solver_from_string(item));
            } catch (const config_error& e) {
                fail(source, entries.at("solvers").line, e.what());
            }
        }
        if (s.solvers.empty())
            fail(source, entries.at("solvers").line, "solvers list is empty");
    }
    if (entries.count("output_dir"))
        s.output_dir = entries.at("output_dir").value;
    return s;
}

Scenario parse_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw config_error("cannot open config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path.string());
}

}  // namespace qfb
