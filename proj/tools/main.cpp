// Command-line front end: steady states, transition paths, property-rights
// and capital-intensity sweeps, ethnographic indices, and self-checks.

#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "eldermodel/accumulation.hpp"
#include "eldermodel/config.hpp"
#include "eldermodel/errors.hpp"
#include "eldermodel/ethno.hpp"
#include "eldermodel/property_rights.hpp"
#include "eldermodel/static_economy.hpp"
#include "eldermodel/table.hpp"

namespace {

using namespace eldermodel;

const char* regime_name(SteadyRegime regime) {
    return regime == SteadyRegime::inculcation ? "inculcation" : "no_inculcation";
}

Config load_required_config(const std::string& path) {
    if (path.empty())
        throw parameter_error("--config is required for this subcommand");
    return Config::load(path);
}

void run_steady_state(const Config& cfg, const std::string& out, Format fmt) {
    const SteadyState ss = steady_state(growth_from_config(cfg));
    Table t;
    t.columns = {"R", "k", "eta", "regime", "consumption_ratio"};
    t.rows.push_back(
        {ss.R, ss.k, ss.eta, std::string(regime_name(ss.regime)), ss.consumption_ratio});
    write_table(t, out, fmt);
}

void run_simulate(const Config& cfg, const std::string& out, Format fmt) {
    const GrowthParams params = growth_from_config(cfg);
    const EconomyPath path = simulate_path(params, simulate_options_from_config(cfg));
    Table t;
    t.columns = {"t", "k", "R", "y_m", "y_e", "s_m", "g_m", "eta", "c_m", "c_e", "psi"};
    for (std::size_t i = 0; i < path.periods(); ++i)
        t.rows.push_back({static_cast<long long>(i), path.k[i], path.R[i], path.y_m[i],
                          path.y_e[i], path.s_m[i], path.g_m[i], path.eta[i], path.c_m[i],
                          path.c_e[i], path.psi[i]});
    write_table(t, out, fmt);
    if (path.iterations > 0)
        std::cerr << "path solver converged in " << path.iterations << " sweeps\n";
    std::cerr << "worst residuals: savings " << format_double(path.worst_savings_residual)
              << ", equilibration " << format_double(path.worst_equilibration_residual)
              << "\n";
}

void run_sweep_phi(const Config& cfg, const std::string& out, Format fmt, int jobs) {
    const LandEconomy econ = economy_from_config(cfg);
    const double rho = rights_rho_from_config(cfg);
    const PreferenceParams prefs = preferences_from_config(cfg);
    const SweepRange range = sweep_range_from_config(cfg, 0.0, 1.0, 101);
    if (!(range.min >= 0.0) || !(range.max <= 1.0))
        throw parameter_error("sweep range for phi must stay inside [0,1]");
    const auto rows =
        phi_sweep(econ, rho, linspace(range.min, range.max, range.points), prefs, jobs);
    Table t;
    t.columns = {"phi", "income_ratio", "consumption_ratio", "inculcation"};
    for (const auto& r : rows)
        t.rows.push_back({r.phi, r.income_ratio, r.consumption_ratio, r.inculcation});
    write_table(t, out, fmt);
}

void run_sweep_capital_intensity(const Config& cfg, const std::string& out, Format fmt,
                                 int jobs) {
    GrowthParams base;
    base.n = cfg.get_double("growth", "n", 0.0);
    base.a = cfg.get_double("growth", "a", 0.0);
    base.alpha = cfg.get_double("growth", "alpha", 0.5);  // replaced by the sweep
    base.beta = cfg.get_double("growth", "beta");
    base.delta = cfg.get_double("growth", "delta");
    base.tau_e = cfg.get_double("growth", "tau_e", 0.0);
    const SweepRange range = sweep_range_from_config(cfg, 0.05, 3.0, 60);
    const auto rows =
        capital_intensity_sweep(base, linspace(range.min, range.max, range.points), jobs);
    Table t;
    t.columns = {"capital_intensity", "alpha", "valid", "R", "eta", "consumption_ratio",
                 "regime"};
    for (const auto& r : rows)
        t.rows.push_back({r.capital_intensity, r.alpha, r.valid, r.R, r.eta,
                          r.consumption_ratio,
                          std::string(r.valid ? regime_name(r.regime) : "")});
    write_table(t, out, fmt);
}

ethno::IndexTable indices_from_config(const Config& cfg) {
    const std::string input = cfg.get_string("indices", "input", "");
    if (input.empty()) throw parameter_error("indices.input is required");
    const std::string spec = cfg.get_string("indices", "spec", "builtin");
    const auto specs =
        spec == "builtin" ? ethno::builtin_index_specs() : ethno::load_index_specs(spec);
    return ethno::build_indices(ethno::load_trait_table(input), specs);
}

void run_indices(const Config& cfg, const std::string& out, Format fmt) {
    const auto idx = indices_from_config(cfg);
    Table t;
    t.columns.push_back("society");
    for (const auto& name : idx.index_names) t.columns.push_back(name);
    for (std::size_t i = 0; i < idx.societies.size(); ++i) {
        std::vector<Cell> row;
        row.emplace_back(idx.societies[i]);
        for (double v : idx.values[i]) row.emplace_back(v);
        t.rows.push_back(std::move(row));
    }
    write_table(t, out, fmt);
}

void run_correlate(const Config& cfg, const std::string& out, Format fmt) {
    const auto rows = ethno::correlate_all(indices_from_config(cfg));
    Table t;
    t.columns = {"index_a", "index_b", "r", "n", "significant", "star"};
    for (const auto& r : rows)
        t.rows.push_back({r.index_a, r.index_b, r.r, static_cast<long long>(r.n),
                          r.significant, std::string(r.significant ? "*" : "")});
    write_table(t, out, fmt);
}

// Built-in self-checks against hand-computed values and exact identities.
int run_verify(std::uint64_t seed) {
    int failures = 0;
    auto check = [&](const std::string& name, const std::function<void()>& body) {
        try {
            body();
            std::cout << "ok: " << name << "\n";
        } catch (const std::exception& e) {
            ++failures;
            std::cout << "FAIL: " << name << " (" << e.what() << ")\n";
        }
    };
    auto expect_near = [](const std::string& what, double got, double want, double tol) {
        if (!(std::abs(got - want) <= tol))
            throw std::runtime_error(what + ": got " + format_double(got) + ", want " +
                                     format_double(want));
    };
    auto expect_true = [](const std::string& what, bool ok) {
        if (!ok) throw std::runtime_error(what);
    };

    const PreferenceParams prefs{0.5, 1.0, 0.2};

    check("static optimal gift", [&] {
        expect_near("continuing gift", optimal_gift_simple(prefs, 0.5, 1.0, false), 0.4, 1e-15);
        expect_near("terminal gift", optimal_gift_simple(prefs, 0.5, 1.0, true), 0.5, 1e-15);
    });
    check("inculcation threshold", [&] {
        expect_near("Y*", inculcation_threshold(prefs, 0.0), 1.6, 1e-12);
        // The utility gain changes sign exactly at the threshold.
        expect_near("gain at Y*", delta_utility(prefs, {1.0, 1.6, 0.0}), 0.0, 1e-12);
        expect_true("gain below Y*", delta_utility(prefs, {1.0, 1.5, 0.0}) > 0.0);
        expect_true("gain above Y*", delta_utility(prefs, {1.0, 1.7, 0.0}) < 0.0);
    });
    check("cultural market", [&] {
        const auto mkt = cultural_market(prefs, {1.0, 1.0, 0.0});
        expect_near("price", mkt.price, 0.4, 1e-15);
        expect_near("demand", mkt.demand, 1.0, 1e-15);
    });
    check("land income ratio endpoints", [&] {
        const LandEconomy econ{0.5, 1.0, 0.025};
        expect_near("ratio at phi=0", income_ratio(econ, {0.0, 1.0}), 1.0, 1e-15);
        expect_near("ratio at phi=1", income_ratio(econ, {1.0, 1.0}), 1.05, 1e-12);
        const auto crit = critical_phi(econ, {0.0, 1.0});
        expect_true("interior minimum exists", crit.has_value());
        expect_near("critical phi", *crit, 0.4875, 1e-12);
    });
    check("steady state without elderly labor", [&] {
        const GrowthParams p{0.0, 0.0, 0.5, 1.0, 0.2, 0.0};
        const SteadyState ss = steady_state(p);
        expect_near("R", ss.R, 2.5, 1e-12);
        expect_near("eta", ss.eta, 0.5, 1e-12);
        expect_near("k", ss.k, 0.04, 1e-12);
        expect_near("consumption ratio", ss.consumption_ratio, 5.0, 1e-12);
        expect_true("residuals", steady_state_residuals(ss, p) < 1e-10);
    });
    check("steady state with elderly labor", [&] {
        const GrowthParams p{0.0, 0.0, 0.5, 1.0, 0.2, 0.5};
        const SteadyState ss = steady_state(p);
        expect_true("regime", ss.regime == SteadyRegime::no_inculcation);
        expect_near("R", ss.R, 3.5, 1e-12);
        expect_near("consumption ratio", ss.consumption_ratio, 3.5, 1e-12);
        expect_true("residuals", steady_state_residuals(ss, p) < 1e-10);
    });
    check("consumption-ratio closed forms agree at the regime boundary", [&] {
        expect_near("no-gift branch", consumption_ratio_tau0_no_gifts(1.0, 0.5, 0.0), 2.0, 1e-12);
        expect_near("gift branch", consumption_ratio_tau0_gifts(1.0, 0.25, 0.5, 0.0), 2.0, 1e-12);
    });
    check("pearson correlation fixture", [&] {
        const auto c = ethno::correlate({1, 2, 3, 4, 5}, {2, 1, 4, 3, 5});
        expect_near("r", c.r, 0.8, 1e-12);
        expect_true("not significant at n=5", !c.significant);
    });

    std::mt19937_64 rng(seed);
    check("land incomes exhaust output (randomized)", [&] {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int i = 0; i < 200; ++i) {
            LandEconomy econ;
            econ.alpha = 0.2 + 0.6 * u(rng);
            econ.A_m = 0.5 + 1.5 * u(rng);
            econ.A_e = econ.A_m * u(rng);
            econ.T = 0.5 + 2.5 * u(rng);
            econ.N_m = 0.5 + 2.5 * u(rng);
            econ.N_e = 0.5 + 2.5 * u(rng);
            const RightsParams rights{u(rng), 0.3 + 2.7 * u(rng)};
            const auto d = decompose_incomes(econ, rights);
            const double total = econ.N_m * d.y_m + econ.N_e * d.y_e;
            expect_near("income sum vs output", total / d.F, 1.0, 1e-12);
        }
    });
    check("market spending equals the gift (randomized)", [&] {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int i = 0; i < 200; ++i) {
            PreferenceParams pp;
            pp.eta_level = 0.05 + 0.9 * u(rng);
            pp.beta = 0.2 + 2.8 * u(rng);
            pp.delta = 0.02 + 0.58 * u(rng);
            StaticIncomes inc{0.2 + 4.8 * u(rng), u(rng), -0.5 + 2.5 * u(rng)};
            const auto mkt = cultural_market(pp, inc);
            const double gift = optimal_gift_simple(pp, pp.eta_level, inc.y_m, false);
            expect_near("p*x vs g", mkt.price * mkt.demand / gift, 1.0, 1e-12);
        }
    });

    if (failures > 0) {
        std::cout << failures << " check(s) failed\n";
        return 1;
    }
    std::cout << "all checks passed\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Overlapping-generations model of how growing economies treat the elderly"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string format_name = "csv";
    std::uint64_t seed = 12345;
    int jobs = 1;
    app.add_option("--config", config_path, "INI configuration file");
    app.add_option("--out", out_path, "Output file (default: stdout)");
    app.add_option("--format", format_name, "Output format: csv or json");
    app.add_option("--seed", seed, "Seed for randomized self-checks");
    app.add_option("--jobs", jobs, "Worker threads for sweeps")->check(CLI::PositiveNumber);

    auto* sc_steady = app.add_subcommand(
        "steady-state", "Balanced-growth return, taste weight, and consumption ratio");
    auto* sc_simulate =
        app.add_subcommand("simulate", "Equilibrium transition path from an initial capital stock");
    auto* sc_sweep_phi = app.add_subcommand(
        "sweep-phi", "Income and consumption ratios across property-rights strength");
    auto* sc_sweep_ci = app.add_subcommand(
        "sweep-capital-intensity", "Steady states across the capital intensity (1-alpha)/alpha");
    auto* sc_indices =
        app.add_subcommand("indices", "Composite elderly-treatment indices from a coded trait table");
    auto* sc_correlate =
        app.add_subcommand("correlate", "Pairwise correlations among the composite indices");
    auto* sc_verify = app.add_subcommand("verify", "Run built-in self-checks");
    for (auto* sc : {sc_steady, sc_simulate, sc_sweep_phi, sc_sweep_ci, sc_indices,
                     sc_correlate, sc_verify})
        sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const Format fmt = parse_format(format_name);
        if (*sc_verify) return run_verify(seed);
        const Config cfg = load_required_config(config_path);
        if (*sc_steady)
            run_steady_state(cfg, out_path, fmt);
        else if (*sc_simulate)
            run_simulate(cfg, out_path, fmt);
        else if (*sc_sweep_phi)
            run_sweep_phi(cfg, out_path, fmt, jobs);
        else if (*sc_sweep_ci)
            run_sweep_capital_intensity(cfg, out_path, fmt, jobs);
        else if (*sc_indices)
            run_indices(cfg, out_path, fmt);
        else if (*sc_correlate)
            run_correlate(cfg, out_path, fmt);
        return 0;
    } catch (const parameter_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const data_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const convergence_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
