#pragma once

// No-savings gift economy: a middle-aged agent splits income between own
// consumption, a gift to the current elderly, and (optionally) instilling the
// gift-giving taste in the young at cost d = delta*y_m. The module provides
// the optimal gift, the binary instill-or-not decision, the equivalent
// cultural-goods market, and the elderly/middle-aged consumption ratio.

#include <limits>

namespace eldermodel {

// Taste and inculcation-technology parameters.
struct PreferenceParams {
    double eta_level;  // gift-giving weight instilled in the young, in (0,1)
    double beta;       // old-age utility weight, > 0
    double delta;      // inculcation cost as a share of income, in (0,1)

    // Throws parameter_error naming the offending field.
    void validate() const;
};

// Incomes for a stationary no-savings economy: the middle-aged earn y_m every
// period, the elderly earn y_e_next, and cohort size grows at rate n.
struct StaticIncomes {
    double y_m;       // middle-aged income, >= 0
    double y_e_next;  // elderly income next period, >= 0
    double n;         // population growth rate, > -1

    void validate() const;
};

struct StaticOutcome {
    double gift;               // optimal per-giver gift g*
    bool inculcate;            // whether the young are instilled with the taste
    double delta_u;            // utility gain from instilling (+inf when y_e = 0)
    double consumption_ratio;  // c_e / c_m
    double cultural_price;     // price of the equivalent cultural good
    double cultural_demand;    // per-buyer quantity of the cultural good
};

// Optimal gift when the giver's taste weight is active_eta (0 or eta_level).
// A giver who also pays the inculcation cost gives eta*(1-delta)*y_m; one who
// stops the chain ("terminal") keeps the cost and gives eta*y_m.
double optimal_gift_simple(const PreferenceParams& prefs, double active_eta,
                           double y_m, bool terminal);

// Income-ratio threshold Y*: instilling pays off exactly when
// y_e/y_m <= Y* = (1+n)*eta*(1-delta) / ((1-delta)^(-1/beta) - 1).
double inculcation_threshold(const PreferenceParams& prefs, double n);

// Lifetime-utility gain from instilling the taste versus not:
// ln(1-delta) + beta*ln(1 + (1+n)*eta*(1-delta)*y_m/y_e_next).
// Returns +inf when y_e_next == 0 (gifts are then the only old-age income, so
// instilling dominates outright); this is a flagged value, not an error.
double delta_utility(const PreferenceParams& prefs, const StaticIncomes& incomes);

struct CulturalMarket {
    double price;   // p = (1+n)*eta*(y_m - d)
    double demand;  // x_d = eta*(y_m - d)/p, clears at 1/(1+n)
};

// The market formulation equivalent to gift-giving: elderly sell a cultural
// good, each middle-aged buys x_d at price p, and p*x_d equals the gift.
CulturalMarket cultural_market(const PreferenceParams& prefs, const StaticIncomes& incomes);

// c_e/c_m as a function of the income ratio Y = y_e/y_m. Above Y* the ratio
// is just Y; at or below it, gifts and the inculcation cost shift both sides:
// Y/((1-eta)(1-delta)) + (1+n)*eta/(1-eta). Ties at Y* pick the gift regime.
double relative_consumption_static(const PreferenceParams& prefs,
                                   double income_ratio, double n);

// Full decision bundle for one parameter point.
StaticOutcome solve_static(const PreferenceParams& prefs, const StaticIncomes& incomes);

}  // namespace eldermodel
