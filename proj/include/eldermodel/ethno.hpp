#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

// Ethnographic trait coding and composite indices of how societies treat
// their elderly, plus the pairwise correlation screen used to compare the
// indices against the openness of the economy.

namespace eldermodel::ethno {

// Coded trait observations for a cross-section of societies. Codes run 0..3;
// a missing observation stays missing here and is scored as 0 when an index
// is built.
struct TraitTable {
    std::vector<std::string> societies;
    std::vector<std::string> traits;
    // codes[i][j] is the code of society i on trait j.
    std::vector<std::vector<std::optional<int>>> codes;

    std::size_t society_count() const { return societies.size(); }
    // Column position of a trait; throws data_error if the trait is unknown.
    std::size_t trait_index(const std::string& name) const;
};

TraitTable parse_trait_table(std::istream& in, const std::string& source_name);
TraitTable load_trait_table(const std::string& path);

// One signed term of an index: the trait's code enters with weight +1 or -1.
struct IndexTerm {
    std::string trait;
    int sign = 1;
};

struct IndexSpec {
    std::string name;
    std::vector<IndexTerm> terms;
};

// The eight built-in indices, in canonical output order.
std::vector<IndexSpec> builtin_index_specs();

// Index definitions from a CSV with columns index,trait,sign. Rows sharing
// an index name accumulate into one spec; first appearance fixes the order.
std::vector<IndexSpec> parse_index_specs(std::istream& in, const std::string& source_name);
std::vector<IndexSpec> load_index_specs(const std::string& path);

struct IndexTable {
    std::vector<std::string> societies;
    std::vector<std::string> index_names;
    // values[i][j] is index j evaluated for society i.
    std::vector<std::vector<double>> values;
};

// Scores every spec for every society, missing codes counting as zero.
// Unknown traits in a spec are an error, not a silent zero.
IndexTable build_indices(const TraitTable& table, const std::vector<IndexSpec>& specs);

struct Correlation {
    double r = 0.0;
    std::size_t n = 0;
    double t = 0.0;           // NaN when n == 2, +/-inf when |r| = 1 with n >= 3
    bool significant = false; // two-tailed test at the 5% level
};

// Pearson correlation with a Student-t significance test. Throws data_error
// when either series has zero variance, parameter_error on size mismatch or
// fewer than two observations.
Correlation correlate(const std::vector<double>& x, const std::vector<double>& y);

struct CorrelationRow {
    std::string index_a;
    std::string index_b;
    double r = 0.0;
    std::size_t n = 0;
    bool significant = false;
};

// All distinct index pairs in canonical order (upper triangle).
std::vector<CorrelationRow> correlate_all(const IndexTable& indices);

}  // namespace eldermodel::ethno
