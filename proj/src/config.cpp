#include "dispersive/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "dispersive/errors.hpp"

namespace dispersive {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != v.size() || !std::isfinite(x)) throw ValidationError("malformed value for " + key + ": '" + v + "'");
    return x;
}

long long to_integer(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    long long x = 0;
    try {
        x = std::stoll(v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != v.size()) throw ValidationError("malformed integer for " + key + ": '" + v + "'");
    return x;
}

int to_int(const std::string& key, const std::string& v) {
    const long long x = to_integer(key, v);
    if (x < -1'000'000'000LL || x > 1'000'000'000LL) throw ValidationError(key + " is out of range");
    return static_cast<int>(x);
}

}  // namespace

int RunConfig::effective_max_iter() const {
    if (max_iter) return *max_iter;
    return solver == SolveMethod::picard ? 200 : 50;
}

RunConfig parse_config(const std::string& text) {
    static const std::set<std::string> known{"L", "l", "k", "a", "N", "solver", "tol", "max_iter", "forcing", "seed"};
    std::map<std::string, std::string> values;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ValidationError("line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!known.count(key)) throw ValidationError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        if (value.empty()) throw ValidationError("line " + std::to_string(lineno) + ": empty value for " + key);
        if (!values.emplace(key, value).second) {
            throw ValidationError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        }
    }
    for (const char* key : {"L", "l", "k", "a"}) {
        if (!values.count(key)) throw ValidationError(std::string("missing required key '") + key + "'");
    }

    RunConfig cfg;
    cfg.spec.length = to_double("L", values["L"]);
    cfg.spec.l = to_int("l", values["l"]);
    cfg.spec.k = to_int("k", values["k"]);
    cfg.spec.a = to_double("a", values["a"]);
    cfg.spec.validate();
    if (values.count("N")) cfg.intervals = to_int("N", values["N"]);
    if (values.count("solver")) cfg.solver = parse_solve_method(values["solver"]);
    if (values.count("tol")) {
        cfg.tol = to_double("tol", values["tol"]);
        if (!(cfg.tol > 0.0)) throw ValidationError("tol must be positive");
    }
    if (values.count("max_iter")) {
        cfg.max_iter = to_int("max_iter", values["max_iter"]);
        if (*cfg.max_iter < 1) throw ValidationError("max_iter must be at least 1");
    }
    if (values.count("forcing")) cfg.forcing = parse_forcing(values["forcing"]);
    if (values.count("seed")) {
        const long long s = to_integer("seed", values["seed"]);
        if (s < 0) throw ValidationError("seed must be non-negative");
        cfg.seed = static_cast<std::uint64_t>(s);
    }
    if (cfg.intervals < Grid::kMinIntervals) {
        throw ValidationError("N must be at least " + std::to_string(Grid::kMinIntervals));
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream os;
    os.precision(17);
    os << "L = " << cfg.spec.length << '\n'
       << "l = " << cfg.spec.l << '\n'
       << "k = " << cfg.spec.k << '\n'
       << "a = " << cfg.spec.a << '\n'
       << "N = " << cfg.intervals << '\n'
       << "solver = " << to_string(cfg.solver) << '\n'
       << "tol = " << cfg.tol << '\n';
    if (cfg.max_iter) os << "max_iter = " << *cfg.max_iter << '\n';
    os << "forcing = " << format_forcing(cfg.forcing) << '\n' << "seed = " << cfg.seed << '\n';
    return os.str();
}

}  // namespace dispersive
