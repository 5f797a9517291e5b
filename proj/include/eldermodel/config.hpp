#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "eldermodel/accumulation.hpp"
#include "eldermodel/property_rights.hpp"
#include "eldermodel/static_economy.hpp"

namespace eldermodel {

// INI-style configuration with a fixed schema: unknown sections or keys are
// rejected at parse time so a typo never silently falls back to a default.
class Config {
public:
    static Config parse(std::istream& in, const std::string& source_name);
    static Config load(const std::string& path);

    bool has(const std::string& section, const std::string& key) const;

    // Required lookups throw parameter_error when the key is absent; the
    // fallback overloads return the fallback instead.
    double get_double(const std::string& section, const std::string& key) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    long long get_int(const std::string& section, const std::string& key, long long fallback) const;
    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;

private:
    std::map<std::string, std::map<std::string, std::string>> values_;
    std::string source_ = "<none>";

    const std::string* find(const std::string& section, const std::string& key) const;
};

// Range for the sweep subcommands, [sweep] min/max/points.
struct SweepRange {
    double min = 0.0;
    double max = 1.0;
    int points = 2;
};

// Section-to-struct builders. Each applies the documented defaults and
// leaves domain validation to the parameter structs themselves.
PreferenceParams preferences_from_config(const Config& cfg);
LandEconomy economy_from_config(const Config& cfg);
double rights_rho_from_config(const Config& cfg);
GrowthParams growth_from_config(const Config& cfg);
SimulateOptions simulate_options_from_config(const Config& cfg);
SweepRange sweep_range_from_config(const Config& cfg, double default_min, double default_max,
                                   int default_points);

}  // namespace eldermodel
