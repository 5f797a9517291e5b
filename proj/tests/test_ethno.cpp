#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "eldermodel/errors.hpp"
#include "eldermodel/ethno.hpp"

using namespace eldermodel;
using ethno::correlate;

TEST_CASE("pearson correlation on the worked fixture") {
    const auto c = correlate({1, 2, 3, 4, 5}, {2, 1, 4, 3, 5});
    CHECK(c.r == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(c.n == 5);
    CHECK(c.t == doctest::Approx(0.8 * std::sqrt(3.0 / 0.36)).epsilon(1e-12));
    // t = 2.31 on 3 degrees of freedom does not clear the 5% bar.
    CHECK(!c.significant);
}

TEST_CASE("a stronger relationship at the same sample size is significant") {
    const auto c = correlate({1, 2, 3, 4, 5}, {1, 2, 3, 4, 6});
    CHECK(c.r == doctest::Approx(12.0 / std::sqrt(148.0)).epsilon(1e-14));
    CHECK(c.significant);
}

TEST_CASE("perfect correlation is significant whenever it is testable") {
    const auto pos = correlate({1, 2, 3}, {10, 20, 30});
    CHECK(pos.r == doctest::Approx(1.0));
    CHECK(std::isinf(pos.t));
    CHECK(pos.significant);

    const auto neg = correlate({1, 2, 3}, {3, 2, 1});
    CHECK(neg.r == doctest::Approx(-1.0));
    CHECK(neg.t < 0.0);
    CHECK(neg.significant);

    // Two points always line up perfectly; no degrees of freedom remain.
    const auto two = correlate({1, 2}, {5, 9});
    CHECK(two.r == doctest::Approx(1.0));
    CHECK(std::isnan(two.t));
    CHECK(!two.significant);
}

TEST_CASE("correlation is symmetric and affine invariant") {
    const std::vector<double> x{0.3, 1.2, -0.7, 2.4, 0.9, -1.5};
    const std::vector<double> y{1.0, 0.4, 0.8, 2.2, -0.3, 0.6};
    const auto ab = correlate(x, y);
    const auto ba = correlate(y, x);
    CHECK(ab.r == doctest::Approx(ba.r).epsilon(1e-14));
    CHECK(ab.significant == ba.significant);

    std::vector<double> scaled(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) scaled[i] = 3.0 * x[i] + 7.0;
    CHECK(correlate(scaled, y).r == doctest::Approx(ab.r).epsilon(1e-12));
    for (std::size_t i = 0; i < x.size(); ++i) scaled[i] = -2.0 * x[i] + 1.0;
    CHECK(correlate(scaled, y).r == doctest::Approx(-ab.r).epsilon(1e-12));
}

TEST_CASE("degenerate correlation inputs are rejected") {
    CHECK_THROWS_AS((void)correlate({1, 2, 3}, {1, 2}), parameter_error);
    CHECK_THROWS_AS((void)correlate({1}, {2}), parameter_error);
    CHECK_THROWS_AS((void)correlate({2, 2, 2}, {1, 2, 3}), data_error);
    CHECK_THROWS_AS((void)correlate({1, 2, 3}, {4, 4, 4}), data_error);
}

namespace {

ethno::TraitTable table_from(const std::string& csv) {
    std::istringstream in(csv);
    return ethno::parse_trait_table(in, "test");
}

}  // namespace

TEST_CASE("trait table parsing and missing codes") {
    const auto t = table_from(
        "society,trade_presence,money_in_use\n"
        "Aranda,3,\n"
        "Bakairi,,2\n");
    CHECK(t.societies == std::vector<std::string>{"Aranda", "Bakairi"});
    CHECK(t.traits == std::vector<std::string>{"trade_presence", "money_in_use"});
    CHECK(t.codes[0][0] == 3);
    CHECK(!t.codes[0][1].has_value());
    CHECK(!t.codes[1][0].has_value());
    CHECK(t.codes[1][1] == 2);

    // Missing observations score zero in every index.
    const ethno::IndexSpec spec{"demo", {{"trade_presence", 1}, {"money_in_use", 1}}};
    const auto idx = ethno::build_indices(t, {spec});
    CHECK(idx.values[0][0] == 3.0);
    CHECK(idx.values[1][0] == 2.0);
}

TEST_CASE("trait table rejects malformed input") {
    // Code outside the 0..3 scale, with the offending cell named.
    try {
        (void)table_from("society,a\nX,4\n");
        FAIL("expected data_error");
    } catch (const data_error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("'X'") != std::string::npos);
        CHECK(msg.find("'a'") != std::string::npos);
    }
    CHECK_THROWS_AS((void)table_from("society,a\nX,-1\n"), data_error);
    CHECK_THROWS_AS((void)table_from("society,a\nX,1.5\n"), data_error);
    // Duplicate society, ragged row, duplicate trait, empty table.
    CHECK_THROWS_AS((void)table_from("society,a\nX,1\nX,2\n"), data_error);
    CHECK_THROWS_AS((void)table_from("society,a,b\nX,1\n"), data_error);
    CHECK_THROWS_AS((void)table_from("society,a,a\nX,1,2\n"), data_error);
    CHECK_THROWS_AS((void)table_from("society,a\n"), data_error);
    CHECK_THROWS_AS((void)table_from("society\nX\n"), data_error);
}

TEST_CASE("builtin index definitions have the documented shape") {
    const auto specs = ethno::builtin_index_specs();
    REQUIRE(specs.size() == 8);
    const std::vector<std::string> expected_names{
        "openness_of_economy", "direct_production",  "social_functions",
        "knowledge_provision", "titular_duties",     "total_production",
        "positive_treatment",  "positive_inculcation"};
    const std::vector<std::size_t> expected_sizes{7, 22, 12, 6, 5, 40, 10, 6};
    for (std::size_t i = 0; i < specs.size(); ++i) {
        CHECK(specs[i].name == expected_names[i]);
        CHECK(specs[i].terms.size() == expected_sizes[i]);
    }
    // The only negative term anywhere is communal land ownership.
    for (const auto& spec : specs)
        for (const auto& term : spec.terms)
            CHECK(term.sign == (term.trait == "communal_land_ownership" ? -1 : 1));
}

TEST_CASE("openness index spans -3 to 15 on extreme societies") {
    const auto specs = ethno::builtin_index_specs();
    std::string header = "society";
    std::string all3 = "Max";
    std::string comm = "Min";
    for (const auto& term : specs[0].terms) {
        header += "," + term.trait;
        all3 += ",3";
        comm += term.sign > 0 ? ",0" : ",3";
    }
    const auto t = table_from(header + "\n" + all3 + "\n" + comm + "\n");
    const auto idx = ethno::build_indices(t, {specs[0]});
    CHECK(idx.values[0][0] == 15.0);  // 6 positive traits at 3, communal at 3 subtracts
    CHECK(idx.values[1][0] == -3.0);
}

TEST_CASE("an index referencing an unknown trait fails fast") {
    const auto t = table_from("society,a\nX,1\n");
    const ethno::IndexSpec spec{"demo", {{"nonexistent", 1}}};
    CHECK_THROWS_AS((void)ethno::build_indices(t, {spec}), data_error);
}

TEST_CASE("index definitions file round-trips the builtin set") {
    const auto from_file = ethno::load_index_specs(std::string(DATA_DIR) + "/index_definitions.csv");
    const auto builtin = ethno::builtin_index_specs();
    REQUIRE(from_file.size() == builtin.size());
    for (std::size_t i = 0; i < builtin.size(); ++i) {
        CHECK(from_file[i].name == builtin[i].name);
        REQUIRE(from_file[i].terms.size() == builtin[i].terms.size());
        for (std::size_t j = 0; j < builtin[i].terms.size(); ++j) {
            CHECK(from_file[i].terms[j].trait == builtin[i].terms[j].trait);
            CHECK(from_file[i].terms[j].sign == builtin[i].terms[j].sign);
        }
    }
}

TEST_CASE("index definition parsing rejects malformed files") {
    auto parse = [](const std::string& csv) {
        std::istringstream in(csv);
        return ethno::parse_index_specs(in, "test");
    };
    CHECK_THROWS_AS((void)parse("wrong,header,here\na,b,1\n"), data_error);
    CHECK_THROWS_AS((void)parse("index,trait,sign\na,b,2\n"), data_error);
    CHECK_THROWS_AS((void)parse("index,trait,sign\na,b,1\na,b,1\n"), data_error);
    CHECK_THROWS_AS((void)parse("index,trait,sign\na,b\n"), data_error);
    CHECK_THROWS_AS((void)parse("index,trait,sign\n"), data_error);
    const auto ok = parse("index,trait,sign\nfirst,x,1\nsecond,y,-1\nfirst,z,1\n");
    REQUIRE(ok.size() == 2);  // grouped by first appearance
    CHECK(ok[0].name == "first");
    CHECK(ok[0].terms.size() == 2);
    CHECK(ok[1].terms[0].sign == -1);
}

TEST_CASE("the shipped example trait table loads and scores") {
    const auto t = ethno::load_trait_table(std::string(DATA_DIR) + "/example_traits.csv");
    CHECK(t.society_count() == 8);
    CHECK(t.traits.size() == 68);
    const auto idx = ethno::build_indices(t, ethno::builtin_index_specs());
    CHECK(idx.societies.front() == "Abipon");
    CHECK(idx.values[0][0] == 8.0);  // openness of the first society

    const auto rows = ethno::correlate_all(idx);
    CHECK(rows.size() == 28);  // 8 choose 2
    CHECK(rows.front().index_a == "openness_of_economy");
    CHECK(rows.front().index_b == "direct_production");
    for (const auto& row : rows) CHECK(row.n == 8);
}

TEST_CASE("missing data files raise io errors") {
    CHECK_THROWS_AS((void)ethno::load_trait_table("/nonexistent/file.csv"), io_error);
    CHECK_THROWS_AS((void)ethno::load_index_specs("/nonexistent/file.csv"), io_error);
}
