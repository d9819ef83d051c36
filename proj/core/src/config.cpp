#include "nilbal/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "nilbal/error.hpp"

namespace nilbal {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw DomainError("config: bad number for " + key + ": '" + text + "'");
    }
    if (used != text.size()) throw DomainError("config: bad number for " + key + ": '" + text + "'");
    return v;
}

int to_int(const std::string& key, const std::string& text) {
    int v = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end)
        throw DomainError("config: bad integer for " + key + ": '" + text + "'");
    return v;
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw DomainError("config: empty entry in list '" + text + "'");
        out.push_back(to_double("list", item));
    }
    return out;
}

SolverConfig parse_solver_config(std::istream& in, SolverConfig cfg) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw DomainError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "newton_tol") cfg.newton_tol = to_double(key, value);
        else if (key == "max_newton") cfg.max_newton = to_int(key, value);
        else if (key == "damping") cfg.damping = to_double(key, value);
        else if (key == "radial_intervals") cfg.radial_intervals = to_int(key, value);
        else if (key == "angular_nodes") cfg.angular_nodes = to_int(key, value);
        else if (key == "schedule") cfg.schedule = parse_number_list(value);
        else if (key == "bisection_tol") cfg.bisection_tol = to_double(key, value);
        else if (key == "disk_spacing") cfg.disk_spacing = to_double(key, value);
        else if (key == "compact_radius") cfg.compact_radius = to_double(key, value);
        else throw DomainError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    cfg.validate();
    return cfg;
}

SolverConfig load_solver_config(const std::string& path, SolverConfig base) {
    std::ifstream in(path);
    if (!in) throw DomainError("config: cannot open " + path);
    return parse_solver_config(in, std::move(base));
}

std::map<std::string, std::string> describe(const SolverConfig& cfg) {
    std::string sched;
    for (std::size_t k = 0; k < cfg.schedule.size(); ++k) {
        if (k) sched += ",";
        sched += format_double(cfg.schedule[k]);
    }
    return {
        {"newton_tol", format_double(cfg.newton_tol)},
        {"max_newton", std::to_string(cfg.max_newton)},
        {"damping", format_double(cfg.damping)},
        {"radial_intervals", std::to_string(cfg.radial_intervals)},
        {"angular_nodes", std::to_string(cfg.angular_nodes)},
        {"schedule", sched},
        {"bisection_tol", format_double(cfg.bisection_tol)},
        {"disk_spacing", format_double(cfg.disk_spacing)},
        {"compact_radius", format_double(cfg.compact_radius)},
    };
}

}  // namespace nilbal
