#include "eldermodel/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "eldermodel/errors.hpp"

namespace eldermodel {

namespace {

const std::map<std::string, std::set<std::string>>& schema() {
    static const std::map<std::string, std::set<std::string>> s = {
        {"preferences", {"eta", "beta", "delta"}},
        {"economy", {"alpha", "A_m", "A_e", "T", "N_m", "N_e"}},
        {"rights", {"rho"}},
        {"growth", {"n", "a", "alpha", "beta", "delta", "tau_e"}},
        {"simulate", {"k0", "horizon", "damping", "tol", "max_iterations"}},
        {"sweep", {"min", "max", "points"}},
        {"indices", {"input", "spec"}},
    };
    return s;
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

Config Config::parse(std::istream& in, const std::string& source_name) {
    Config cfg;
    cfg.source_ = source_name;
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line);
        if (text.empty() || text[0] == '#' || text[0] == ';') continue;
        const std::string where = source_name + ":" + std::to_string(line_no);

        if (text.front() == '[') {
            if (text.back() != ']')
                throw parameter_error(where + ": unterminated section header");
            section = trim(text.substr(1, text.size() - 2));
            if (!schema().count(section))
                throw parameter_error(where + ": unknown section [" + section + "]");
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos)
            throw parameter_error(where + ": expected key = value");
        if (section.empty())
            throw parameter_error(where + ": key outside any section");
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (key.empty()) throw parameter_error(where + ": empty key");
        if (!schema().at(section).count(key))
            throw parameter_error(where + ": unknown key '" + key + "' in section [" + section +
                                  "]");
        auto& sec = cfg.values_[section];
        if (sec.count(key))
            throw parameter_error(where + ": duplicate key '" + key + "' in section [" + section +
                                  "]");
        sec[key] = value;
    }
    return cfg;
}

Config Config::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open config file '" + path + "'");
    return parse(in, path);
}

const std::string* Config::find(const std::string& section, const std::string& key) const {
    const auto sec = values_.find(section);
    if (sec == values_.end()) return nullptr;
    const auto it = sec->second.find(key);
    return it == sec->second.end() ? nullptr : &it->second;
}

bool Config::has(const std::string& section, const std::string& key) const {
    return find(section, key) != nullptr;
}

double Config::get_double(const std::string& section, const std::string& key) const {
    const std::string* raw = find(section, key);
    if (!raw)
        throw parameter_error(source_ + ": missing required key " + section + "." + key);
    double value = 0.0;
    const char* begin = raw->data();
    const char* end = raw->data() + raw->size();
    if (begin != end && *begin == '+') ++begin;
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc{} || res.ptr != end)
        throw parameter_error(source_ + ": " + section + "." + key + " = '" + *raw +
                              "' is not a number");
    return value;
}

double Config::get_double(const std::string& section, const std::string& key,
                          double fallback) const {
    return has(section, key) ? get_double(section, key) : fallback;
}

long long Config::get_int(const std::string& section, const std::string& key,
                          long long fallback) const {
    const std::string* raw = find(section, key);
    if (!raw) return fallback;
    long long value = 0;
    const char* begin = raw->data();
    const char* end = raw->data() + raw->size();
    if (begin != end && *begin == '+') ++begin;
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc{} || res.ptr != end)
        throw parameter_error(source_ + ": " + section + "." + key + " = '" + *raw +
                              "' is not an integer");
    return value;
}

std::string Config::get_string(const std::string& section, const std::string& key,
                               const std::string& fallback) const {
    const std::string* raw = find(section, key);
    return raw ? *raw : fallback;
}

PreferenceParams preferences_from_config(const Config& cfg) {
    PreferenceParams prefs;
    prefs.eta_level = cfg.get_double("preferences", "eta");
    prefs.beta = cfg.get_double("preferences", "beta");
    prefs.delta = cfg.get_double("preferences", "delta");
    prefs.validate();
    return prefs;
}

LandEconomy economy_from_config(const Config& cfg) {
    LandEconomy econ;
    econ.alpha = cfg.get_double("economy", "alpha");
    econ.A_m = cfg.get_double("economy", "A_m");
    econ.A_e = cfg.get_double("economy", "A_e");
    econ.T = cfg.get_double("economy", "T", 1.0);
    econ.N_m = cfg.get_double("economy", "N_m", 1.0);
    econ.N_e = cfg.get_double("economy", "N_e", 1.0);
    econ.validate();
    return econ;
}

double rights_rho_from_config(const Config& cfg) {
    const double rho = cfg.get_double("rights", "rho", 1.0);
    if (!(rho > 0.0))
        throw parameter_error("rights.rho must be positive, got " + std::to_string(rho));
    return rho;
}

GrowthParams growth_from_config(const Config& cfg) {
    GrowthParams p;
    p.n = cfg.get_double("growth", "n", 0.0);
    p.a = cfg.get_double("growth", "a", 0.0);
    p.alpha = cfg.get_double("growth", "alpha");
    p.beta = cfg.get_double("growth", "beta");
    p.delta = cfg.get_double("growth", "delta");
    p.tau_e = cfg.get_double("growth", "tau_e", 0.0);
    p.validate();
    return p;
}

SimulateOptions simulate_options_from_config(const Config& cfg) {
    SimulateOptions opt;
    opt.k0 = cfg.get_double("simulate", "k0", opt.k0);
    opt.horizon = static_cast<int>(cfg.get_int("simulate", "horizon", opt.horizon));
    opt.damping = cfg.get_double("simulate", "damping", opt.damping);
    opt.tolerance = cfg.get_double("simulate", "tol", opt.tolerance);
    opt.max_iterations =
        static_cast<int>(cfg.get_int("simulate", "max_iterations", opt.max_iterations));
    return opt;
}

SweepRange sweep_range_from_config(const Config& cfg, double default_min, double default_max,
                                   int default_points) {
    SweepRange range;
    range.min = cfg.get_double("sweep", "min", default_min);
    range.max = cfg.get_double("sweep", "max", default_max);
    range.points = static_cast<int>(cfg.get_int("sweep", "points", default_points));
    if (!(range.min < range.max))
        throw parameter_error("sweep.min must be below sweep.max");
    if (range.points < 2)
        throw parameter_error("sweep.points must be >= 2, got " + std::to_string(range.points));
    return range;
}

}  // namespace eldermodel
