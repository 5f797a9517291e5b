#include "eldermodel/static_economy.hpp"

#include <cmath>
#include <string>

#include "eldermodel/errors.hpp"

namespace eldermodel {

void PreferenceParams::validate() const {
    if (!(eta_level > 0.0) || !(eta_level < 1.0))
        throw parameter_error("preferences.eta must lie in (0,1), got " + std::to_string(eta_level));
    if (!(beta > 0.0))
        throw parameter_error("preferences.beta must be positive, got " + std::to_string(beta));
    if (!(delta > 0.0) || !(delta < 1.0))
        throw parameter_error("preferences.delta must lie in (0,1), got " + std::to_string(delta));
}

void StaticIncomes::validate() const {
    if (!(y_m >= 0.0))
        throw parameter_error("incomes.y_m must be >= 0, got " + std::to_string(y_m));
    if (!(y_e_next >= 0.0))
        throw parameter_error("incomes.y_e_next must be >= 0, got " + std::to_string(y_e_next));
    if (!(n > -1.0))
        throw parameter_error("incomes.n must exceed -1, got " + std::to_string(n));
}

double optimal_gift_simple(const PreferenceParams& prefs, double active_eta,
                           double y_m, bool terminal) {
    prefs.validate();
    if (!(y_m >= 0.0))
        throw parameter_error("optimal_gift_simple: y_m must be >= 0, got " + std::to_string(y_m));
    if (active_eta != 0.0 && active_eta != prefs.eta_level)
        throw parameter_error("optimal_gift_simple: active_eta must be 0 or preferences.eta");
    if (active_eta == 0.0) return 0.0;
    // Disposable income is net of the inculcation cost d = delta*y_m unless
    // the giver ends the chain and pays no cost.
    const double disposable = terminal ? y_m : (1.0 - prefs.delta) * y_m;
    return active_eta * disposable;
}

double inculcation_threshold(const PreferenceParams& prefs, double n) {
    prefs.validate();
    if (!(n > -1.0))
        throw parameter_error("inculcation_threshold: n must exceed -1, got " + std::to_string(n));
    const double one_less = 1.0 - prefs.delta;
    return (1.0 + n) * prefs.eta_level * one_less /
           (std::pow(one_less, -1.0 / prefs.beta) - 1.0);
}

double delta_utility(const PreferenceParams& prefs, const StaticIncomes& incomes) {
    prefs.validate();
    incomes.validate();
    if (incomes.y_e_next == 0.0)
        return std::numeric_limits<double>::infinity();
    if (!(incomes.y_m > 0.0))
        throw parameter_error("delta_utility: y_m must be positive, got " + std::to_string(incomes.y_m));
    const double gift_term = (1.0 + incomes.n) * prefs.eta_level * (1.0 - prefs.delta) *
                             incomes.y_m / incomes.y_e_next;
    return std::log(1.0 - prefs.delta) + prefs.beta * std::log1p(gift_term);
}

CulturalMarket cultural_market(const PreferenceParams& prefs, const StaticIncomes& incomes) {
    prefs.validate();
    incomes.validate();
    const double spend = prefs.eta_level * (1.0 - prefs.delta) * incomes.y_m;
    const double price = (1.0 + incomes.n) * spend;
    // Demand comes from the buyer's first-order condition: spend/price. One
    // elderly supplies (1+n) buyers, so this clears at 1/(1+n).
    return {price, spend / price};
}

double relative_consumption_static(const PreferenceParams& prefs,
                                   double income_ratio, double n) {
    prefs.validate();
    if (!(income_ratio >= 0.0))
        throw parameter_error("relative_consumption_static: income_ratio must be >= 0");
    if (!(n > -1.0))
        throw parameter_error("relative_consumption_static: n must exceed -1");
    if (income_ratio > inculcation_threshold(prefs, n))
        return income_ratio;
    const double eta = prefs.eta_level;
    return income_ratio / ((1.0 - eta) * (1.0 - prefs.delta)) + (1.0 + n) * eta / (1.0 - eta);
}

StaticOutcome solve_static(const PreferenceParams& prefs, const StaticIncomes& incomes) {
    prefs.validate();
    incomes.validate();
    StaticOutcome out{};
    out.delta_u = delta_utility(prefs, incomes);
    // Indifference resolves toward instilling, so >= 0 rather than > 0.
    out.inculcate = out.delta_u >= 0.0;
    out.gift = optimal_gift_simple(prefs, prefs.eta_level, incomes.y_m, !out.inculcate);
    const double ratio = incomes.y_m > 0.0
                             ? incomes.y_e_next / incomes.y_m
                             : std::numeric_limits<double>::infinity();
    out.consumption_ratio = relative_consumption_static(prefs, ratio, incomes.n);
    if (out.inculcate) {
        const CulturalMarket market = cultural_market(prefs, incomes);
        out.cultural_price = market.price;
        out.cultural_demand = market.demand;
    } else {
        out.cultural_price = 0.0;
        out.cultural_demand = 0.0;
    }
    return out;
}

}  // namespace eldermodel
