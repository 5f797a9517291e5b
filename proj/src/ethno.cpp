#include "eldermodel/ethno.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <string>

#include <boost/math/distributions/students_t.hpp>

#include "eldermodel/errors.hpp"
#include "eldermodel/table.hpp"

namespace eldermodel::ethno {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

int parse_int_field(const std::string& raw, const std::string& context) {
    const std::string s = trim(raw);
    const char* begin = s.data();
    if (!s.empty() && s[0] == '+') ++begin;
    int value = 0;
    const auto res = std::from_chars(begin, s.data() + s.size(), value);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw data_error(context + ": '" + raw + "' is not an integer");
    return value;
}

}  // namespace

std::size_t TraitTable::trait_index(const std::string& name) const {
    const auto it = std::find(traits.begin(), traits.end(), name);
    if (it == traits.end()) throw data_error("unknown trait '" + name + "'");
    return static_cast<std::size_t>(it - traits.begin());
}

TraitTable parse_trait_table(std::istream& in, const std::string& source_name) {
    const auto records = read_csv(in);
    if (records.empty()) throw data_error(source_name + ": empty trait table");
    const auto& header = records[0];
    if (header.size() < 2)
        throw data_error(source_name + ": header needs a society column and at least one trait");

    TraitTable table;
    table.traits.assign(header.begin() + 1, header.end());
    for (std::size_t j = 0; j < table.traits.size(); ++j) {
        table.traits[j] = trim(table.traits[j]);
        if (table.traits[j].empty())
            throw data_error(source_name + ": trait column " + std::to_string(j + 2) +
                             " has an empty name");
        for (std::size_t k = 0; k < j; ++k)
            if (table.traits[k] == table.traits[j])
                throw data_error(source_name + ": duplicate trait column '" + table.traits[j] + "'");
    }

    for (std::size_t i = 1; i < records.size(); ++i) {
        const auto& row = records[i];
        if (row.size() != header.size())
            throw data_error(source_name + ": row " + std::to_string(i + 1) + " has " +
                             std::to_string(row.size()) + " fields, expected " +
                             std::to_string(header.size()));
        const std::string society = trim(row[0]);
        if (society.empty())
            throw data_error(source_name + ": row " + std::to_string(i + 1) +
                             " has an empty society id");
        if (std::find(table.societies.begin(), table.societies.end(), society) !=
            table.societies.end())
            throw data_error(source_name + ": duplicate society '" + society + "'");

        std::vector<std::optional<int>> codes(table.traits.size());
        for (std::size_t j = 0; j < table.traits.size(); ++j) {
            const std::string cell = trim(row[j + 1]);
            if (cell.empty()) continue;  // missing observation
            const int code = parse_int_field(
                cell, source_name + ": society '" + society + "', trait '" + table.traits[j] + "'");
            if (code < 0 || code > 3)
                throw data_error(source_name + ": society '" + society + "', trait '" +
                                 table.traits[j] + "': code " + std::to_string(code) +
                                 " outside 0..3");
            codes[j] = code;
        }
        table.societies.push_back(society);
        table.codes.push_back(std::move(codes));
    }
    if (table.societies.empty()) throw data_error(source_name + ": no societies in trait table");
    return table;
}

TraitTable load_trait_table(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open trait table '" + path + "'");
    return parse_trait_table(in, path);
}

namespace {

std::vector<IndexTerm> signed_terms(std::initializer_list<const char*> positive,
                                    std::initializer_list<const char*> negative = {}) {
    std::vector<IndexTerm> terms;
    for (const char* t : positive) terms.push_back({t, 1});
    for (const char* t : negative) terms.push_back({t, -1});
    return terms;
}

}  // namespace

std::vector<IndexSpec> builtin_index_specs() {
    const auto direct = signed_terms({
        "male_traders", "female_traders",
        "male_infant_services", "female_infant_services",
        "male_education_young", "female_education_young",
        "male_nurses", "female_nurses",
        "male_aid_agriculture", "female_aid_agriculture",
        "male_aid_hunting", "female_aid_hunting",
        "male_aid_herding", "female_aid_herding",
        "male_aid_collecting", "female_aid_collecting",
        "male_aid_household", "female_aid_household",
        "male_toys_tools", "female_toys_tools",
        "male_fees_services", "female_fees_services",
    });
    const auto social = signed_terms({
        "male_rites_initiation", "female_rites_initiation",
        "male_marriage_rites", "female_marriage_rites",
        "male_funereal_rites", "female_funereal_rites",
        "male_priesthood", "female_priesthood",
        "male_shamans", "female_shamans",
        "male_decorators", "female_decorators",
    });
    const auto knowledge = signed_terms({
        "male_expert_advice", "female_expert_advice",
        "male_social_information", "female_social_information",
        "male_lead_festivals", "female_lead_festivals",
    });

    std::vector<IndexTerm> total = direct;
    total.insert(total.end(), social.begin(), social.end());
    total.insert(total.end(), knowledge.begin(), knowledge.end());

    std::vector<IndexSpec> specs;
    specs.push_back({"openness_of_economy",
                     signed_terms({"trade_presence", "money_in_use",
                                   "private_ownership_objects", "private_ownership_land",
                                   "male_property_rights", "female_property_rights"},
                                  {"communal_land_ownership"})});
    specs.push_back({"direct_production", direct});
    specs.push_back({"social_functions", social});
    specs.push_back({"knowledge_provision", knowledge});
    specs.push_back({"titular_duties",
                     signed_terms({"male_chiefs", "female_chiefs", "male_council_elders",
                                   "male_judges", "female_judges"})});
    specs.push_back({"total_production", std::move(total)});
    specs.push_back({"positive_treatment",
                     signed_terms({"male_respected", "female_respected",
                                   "male_community_support", "female_community_support",
                                   "male_family_support", "female_family_support",
                                   "male_son_in_law_support", "female_son_in_law_support",
                                   "male_distinguished", "female_distinguished"})});
    specs.push_back({"positive_inculcation",
                     signed_terms({"male_daimons", "female_daimons", "male_heros",
                                   "female_heros", "male_friends_children",
                                   "female_friends_children"})});
    return specs;
}

std::vector<IndexSpec> parse_index_specs(std::istream& in, const std::string& source_name) {
    const auto records = read_csv(in);
    if (records.empty()) throw data_error(source_name + ": empty index definition file");
    const auto& header = records[0];
    if (header.size() != 3 || trim(header[0]) != "index" || trim(header[1]) != "trait" ||
        trim(header[2]) != "sign")
        throw data_error(source_name + ": expected header index,trait,sign");

    std::vector<IndexSpec> specs;
    for (std::size_t i = 1; i < records.size(); ++i) {
        const auto& row = records[i];
        if (row.size() != 3)
            throw data_error(source_name + ": row " + std::to_string(i + 1) + " has " +
                             std::to_string(row.size()) + " fields, expected 3");
        const std::string name = trim(row[0]);
        const std::string trait = trim(row[1]);
        if (name.empty() || trait.empty())
            throw data_error(source_name + ": row " + std::to_string(i + 1) +
                             " has an empty index or trait name");
        const int sign =
            parse_int_field(row[2], source_name + ": row " + std::to_string(i + 1) + " sign");
        if (sign != 1 && sign != -1)
            throw data_error(source_name + ": row " + std::to_string(i + 1) + ": sign must be 1 or -1");

        auto it = std::find_if(specs.begin(), specs.end(),
                               [&](const IndexSpec& s) { return s.name == name; });
        if (it == specs.end()) {
            specs.push_back({name, {}});
            it = specs.end() - 1;
        }
        for (const auto& term : it->terms)
            if (term.trait == trait)
                throw data_error(source_name + ": duplicate term '" + trait + "' in index '" +
                                 name + "'");
        it->terms.push_back({trait, sign});
    }
    if (specs.empty()) throw data_error(source_name + ": no index definitions");
    return specs;
}

std::vector<IndexSpec> load_index_specs(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open index definitions '" + path + "'");
    return parse_index_specs(in, path);
}

IndexTable build_indices(const TraitTable& table, const std::vector<IndexSpec>& specs) {
    IndexTable out;
    out.societies = table.societies;
    for (const auto& spec : specs) out.index_names.push_back(spec.name);

    // Resolve every trait once up front so a typo fails fast.
    std::vector<std::vector<std::pair<std::size_t, int>>> resolved(specs.size());
    for (std::size_t s = 0; s < specs.size(); ++s)
        for (const auto& term : specs[s].terms)
            resolved[s].push_back({table.trait_index(term.trait), term.sign});

    out.values.resize(table.society_count());
    for (std::size_t i = 0; i < table.society_count(); ++i) {
        out.values[i].resize(specs.size());
        for (std::size_t s = 0; s < specs.size(); ++s) {
            double sum = 0.0;
            for (const auto& [col, sign] : resolved[s])
                sum += sign * table.codes[i][col].value_or(0);
            out.values[i][s] = sum;
        }
    }
    return out;
}

Correlation correlate(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size())
        throw parameter_error("correlate: series lengths differ (" + std::to_string(x.size()) +
                              " vs " + std::to_string(y.size()) + ")");
    const std::size_t n = x.size();
    if (n < 2) throw parameter_error("correlate: need at least 2 observations");

    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_x += x[i];
        mean_y += y[i];
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);

    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mean_x;
        const double dy = y[i] - mean_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0) throw data_error("correlate: first series has zero variance");
    if (syy == 0.0) throw data_error("correlate: second series has zero variance");

    Correlation result;
    result.n = n;
    result.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
    if (n == 2) {
        // No residual degrees of freedom; the test is undefined.
        result.t = std::numeric_limits<double>::quiet_NaN();
        result.significant = false;
        return result;
    }
    const double one_minus_r2 = 1.0 - result.r * result.r;
    if (one_minus_r2 <= 0.0) {
        result.t = std::copysign(std::numeric_limits<double>::infinity(), result.r);
        result.significant = true;
        return result;
    }
    result.t = result.r * std::sqrt(static_cast<double>(n - 2) / one_minus_r2);
    const boost::math::students_t dist(static_cast<double>(n - 2));
    const double p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(result.t)));
    result.significant = p < 0.05;
    return result;
}

std::vector<CorrelationRow> correlate_all(const IndexTable& indices) {
    std::vector<CorrelationRow> rows;
    const std::size_t m = indices.index_names.size();
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
            std::vector<double> xs, ys;
            xs.reserve(indices.societies.size());
            ys.reserve(indices.societies.size());
            for (const auto& v : indices.values) {
                xs.push_back(v[a]);
                ys.push_back(v[b]);
            }
            const Correlation c = correlate(xs, ys);
            rows.push_back({indices.index_names[a], indices.index_names[b], c.r, c.n,
                            c.significant});
        }
    }
    return rows;
}

}  // namespace eldermodel::ethno
