#pragma once

// Capital-accumulation economy with endogenous gift tastes. Middle-aged
// agents split income between consumption, gifts, conventional savings, and
// instilling the gift-giving taste eta in the young; capital K_{t+1} comes
// from savings, and returns on savings and on inculcative investment must be
// equal whenever both are used. Production is Y = L^alpha * K^(1-alpha) with
// labor-augmenting progress a and population growth n; elderly supply tau_e
// effective labor units per middle-aged unit.

#include <cstddef>
#include <vector>

namespace eldermodel {

struct GrowthParams {
    double n = 0.0;      // population growth rate, > -1
    double a = 0.0;      // labor-augmenting progress rate, >= 0
    double alpha;        // labor share, in (0,1)
    double beta;         // old-age utility weight, > 0
    double delta;        // inculcation cost share of income, in (0,1)
    double tau_e = 0.0;  // elderly effective labor per middle-aged unit, >= 0

    void validate() const;
    // Elderly share of aggregate effective labor. With N_m = (1+n)N_e and
    // A_e = tau_e*A_m this is tau_e/(tau_e + (1+n)); derived, never stored.
    double gamma_e() const { return tau_e / (tau_e + 1.0 + n); }
};

enum class SteadyRegime { inculcation, no_inculcation };

struct SteadyState {
    double R;                  // gross return on savings
    double k;                  // capital per effective labor unit
    double eta;                // taste weight instilled each period (0 if none)
    SteadyRegime regime;
    double consumption_ratio;  // c_e / c_m on the balanced-growth path
};

// Per-period equilibrium path. All vectors share one length (horizon + 1);
// eta[t] is the taste of the generation deciding at t.
struct EconomyPath {
    std::vector<double> k, R, y_m, y_e, s_m, g_m, eta, c_m, c_e, psi;
    bool converged = true;
    int iterations = 0;
    double worst_savings_residual = 0.0;        // allocation identity, every t
    double worst_equilibration_residual = 0.0;  // return equality, t with eta_t > 0
    std::size_t periods() const { return k.size(); }
};

// Optimal gift with savings available: (eta_t/(1+beta)) * (y_m + y_e_next/R_next).
double gift_with_accumulation(double eta_t, double beta, double y_m,
                              double y_e_next, double R_next);

struct SavingsTotal {
    double total;            // s_m + eta_next * d, d = delta*y_m
    bool no_saving_motive;   // true when discounted future income exceeds beta*y_m
};

// Total allocation to the future (conventional savings plus inculcative
// spending): (beta*y_m - y_e_next/R_next)/(1+beta). The split between the two
// instruments is pinned down by return equilibration, not by this function.
SavingsTotal savings_allocation(double beta, double delta, double y_m,
                                double y_e_next, double R_next);

// Return-equality residual at one date:
// R_t - (1+n)/(1+beta) * (y_m_t + y_e_next/R_next) / d_prev.
// Zero along any equilibrium stretch where inculcation is in use.
double return_equilibration_residual(double beta, double n, double y_m_t,
                                     double y_e_next, double R_t, double R_next,
                                     double d_prev);

// Stationary taste weight when the elderly earn no labor income:
// max(0, beta/((1+beta)*delta) - ((1-alpha)/alpha)*(1+beta)).
// Throws parameter_error when the unclamped value reaches 1.
double eta_star_simple(double beta, double delta, double alpha);

// Balanced-growth equilibrium. Tries the gift regime first (positive root of
// R^2 - Q*R - Q*(1+a)*tau_e with Q = (1+n)(1+a)/((1+beta)delta)); if the
// implied eta is not positive, switches to the no-gift regime and prices
// capital off savings alone. Throws parameter_error when eta would reach 1.
SteadyState steady_state(const GrowthParams& params);

// Worst absolute residual of the equations defining the given steady state
// (return fixed point, taste equation or its corner version, and the k-R
// link). Used by tests and the verification command.
double steady_state_residuals(const SteadyState& ss, const GrowthParams& params);

// c_e/c_m on a balanced-growth path: beta*R/((1-eta)(1+a)).
double bgp_consumption_ratio(double R, double eta, double beta, double a);

// Closed forms for the tau_e = 0 steady-state consumption ratio, one per
// regime. They coincide where the unclamped stationary eta crosses zero.
double consumption_ratio_tau0_no_gifts(double beta, double alpha, double n);
double consumption_ratio_tau0_gifts(double beta, double delta, double alpha, double n);

// Consumption ratio at date t of a path, from the regime closed form (gift
// regime uses relative lifetime incomes; no-gift uses asset plus labor
// income over the middle-aged wage). Needs 1 <= t <= periods()-2 so that both
// neighbors exist.
double consumption_ratio_on_path(const EconomyPath& path, const GrowthParams& params,
                                 std::size_t t);

struct SimulateOptions {
    double k0 = 0.0;           // initial capital per effective labor; 0 = half of steady state
    int horizon = 200;         // last period index
    double damping = 0.5;      // path-solver update weight
    double tolerance = 1e-8;   // path-solver sweep tolerance
    int max_iterations = 10000;
};

// Equilibrium path from k0. tau_e = 0 uses the exact one-step recursion
// (regime fixed by parameters); tau_e > 0 solves the forward-looking system
// by damped sweeps with the steady state as terminal anchor. Throws
// convergence_error with the worst residual when the budget is exhausted.
EconomyPath simulate_path(const GrowthParams& params, const SimulateOptions& options = {});

struct CapitalIntensityRow {
    double capital_intensity;  // (1-alpha)/alpha
    double alpha;
    bool valid;                // false where the point implies eta >= 1
    double R;
    double eta;
    double consumption_ratio;
    SteadyRegime regime;
};

// Steady states across a grid of capital intensities x = (1-alpha)/alpha > 0,
// holding the other parameters of `base` fixed (base.alpha is ignored).
// Points whose parameters are out of the model's domain are flagged invalid
// rather than aborting the sweep. jobs > 1 evaluates grid points in threads.
std::vector<CapitalIntensityRow> capital_intensity_sweep(const GrowthParams& base,
                                                         const std::vector<double>& grid,
                                                         int jobs = 1);

}  // namespace eldermodel
