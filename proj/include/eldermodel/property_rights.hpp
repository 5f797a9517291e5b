#pragma once

// Land economy with a property-rights spectrum. Output F = L^alpha * T^(1-alpha)
// is split by Euler's theorem into labor and land payments; a rights parameter
// phi in [0,1] (with land rights phi_T = phi^rho) determines how much of each
// agent's marginal-product claim is kept versus pooled equally. The module
// computes per-agent incomes, the elderly/middle-aged income ratio, its
// interior minimum phi*, and the phi sweep behind the figure data.

#include <optional>
#include <vector>

#include "eldermodel/static_economy.hpp"

namespace eldermodel {

struct LandEconomy {
    double alpha;  // labor share of output, in (0,1)
    double A_m;    // effective labor per middle-aged agent, > 0
    double A_e;    // effective labor per elderly agent, >= 0
    double T = 1.0;    // land stock, > 0 (ratios are invariant to it)
    double N_m = 1.0;  // middle-aged head count, > 0
    double N_e = 1.0;  // elderly head count, > 0

    void validate() const;
    double total_labor() const { return N_m * A_m + N_e * A_e; }
    // Implied population growth rate between cohorts.
    double n() const { return N_m / N_e - 1.0; }
};

struct RightsParams {
    double phi;        // output-rights definition, in [0,1]
    double rho = 1.0;  // land rights co-evolve as phi^rho, rho > 0

    void validate() const;
};

struct IncomeDecomposition {
    double F;        // aggregate output
    double F_L;      // marginal product of labor
    double F_T;      // marginal product of land
    double q_m;      // middle-aged claim before pooling
    double q_e;      // elderly claim before pooling
    double sigma_m;  // middle-aged per-agent land share
    double sigma_e;  // elderly per-agent land share
    double y_m;      // middle-aged income after pooling
    double y_e;      // elderly income after pooling
};

// Output and marginal products only (the q/sigma/y fields are zero); gives
// F = F_L*L + F_T*T exactly up to rounding.
IncomeDecomposition euler_decompose(const LandEconomy& econ);

// Per-agent land ownership shares: the elderly hold phi^rho of the land by
// first possession, the rest is imputed by labor contribution.
// sigma_e = phi^rho/N_e + (1-phi^rho)*A_e/L, sigma_m = (1-phi^rho)*A_m/L.
void sigma_shares(const LandEconomy& econ, const RightsParams& rights,
                  double& sigma_e, double& sigma_m);

// Full decomposition including pooled incomes
// y_i = phi*q_i + (1-phi)*F/N with q_i = A_i*F_L + sigma_i*F_T*T.
IncomeDecomposition decompose_incomes(const LandEconomy& econ, const RightsParams& rights);

// y_e / y_m from the decomposition. Equals 1 at phi = 0.
double income_ratio(const LandEconomy& econ, const RightsParams& rights);

// Interior minimizer of the income ratio when it exists:
// phi* = ((A_m - A_e)*N_e / (A_m*N*(1-alpha)*(1+rho)))^(1/rho),
// or nullopt when the root falls outside (0,1) (ratio is monotone on [0,1]).
// Requires A_e < A_m; throws parameter_error otherwise.
std::optional<double> critical_phi(const LandEconomy& econ, const RightsParams& rights);

struct PhiSweepRow {
    double phi;
    double income_ratio;
    double consumption_ratio;  // static-economy overlay at this income ratio
    bool inculcation;          // income_ratio <= Y* for the supplied prefs
};

// Income and consumption ratios across a phi grid, with the gift/inculcation
// overlay from the no-savings model (Y* computed from prefs and the economy's
// implied n). jobs > 1 splits the grid across threads; output order is fixed.
std::vector<PhiSweepRow> phi_sweep(const LandEconomy& econ, double rho,
                                   const std::vector<double>& grid,
                                   const PreferenceParams& prefs, int jobs = 1);

// Evenly spaced grid helper: count points covering [lo, hi] inclusive.
std::vector<double> linspace(double lo, double hi, int count);

}  // namespace eldermodel
