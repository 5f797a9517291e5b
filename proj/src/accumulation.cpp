#include "eldermodel/accumulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "eldermodel/errors.hpp"

namespace eldermodel {

namespace {

// Coefficient of the return fixed point R^2 - Q*R - Q*(1+a)*tau_e = 0.
double return_coef(const GrowthParams& p) {
    return (1.0 + p.n) * (1.0 + p.a) / ((1.0 + p.beta) * p.delta);
}

// Stationary taste weight implied by a given gross return (gift regime).
double eta_from_return(const GrowthParams& p, double R) {
    const double labor_term = p.tau_e / (1.0 + p.beta) +
                              (1.0 + p.n) / (1.0 - p.gamma_e()) * (1.0 - p.alpha) / p.alpha;
    return p.beta / (p.delta * (1.0 + p.beta)) - (1.0 + p.a) / (p.delta * R) * labor_term;
}

double no_gift_return(const GrowthParams& p) {
    return (1.0 + p.a) / p.beta *
           ((1.0 + p.n) * (1.0 + p.beta) / (1.0 - p.gamma_e()) * (1.0 - p.alpha) / p.alpha +
            p.tau_e);
}

}  // namespace

void GrowthParams::validate() const {
    if (!(n > -1.0))
        throw parameter_error("growth.n must exceed -1, got " + std::to_string(n));
    if (!(a >= 0.0))
        throw parameter_error("growth.a must be >= 0, got " + std::to_string(a));
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw parameter_error("growth.alpha must lie in (0,1), got " + std::to_string(alpha));
    if (!(beta > 0.0))
        throw parameter_error("growth.beta must be positive, got " + std::to_string(beta));
    if (!(delta > 0.0) || !(delta < 1.0))
        throw parameter_error("growth.delta must lie in (0,1), got " + std::to_string(delta));
    if (!(tau_e >= 0.0))
        throw parameter_error("growth.tau_e must be >= 0, got " + std::to_string(tau_e));
}

double gift_with_accumulation(double eta_t, double beta, double y_m,
                              double y_e_next, double R_next) {
    if (!(eta_t >= 0.0))
        throw parameter_error("gift_with_accumulation: eta_t must be >= 0");
    if (!(beta > 0.0))
        throw parameter_error("gift_with_accumulation: beta must be positive");
    if (!(y_m >= 0.0))
        throw parameter_error("gift_with_accumulation: y_m must be >= 0");
    if (y_e_next > 0.0 && !(R_next > 0.0))
        throw parameter_error("gift_with_accumulation: R_next must be positive when y_e_next > 0");
    if (eta_t == 0.0) return 0.0;
    const double lifetime = y_m + (y_e_next > 0.0 ? y_e_next / R_next : 0.0);
    return eta_t / (1.0 + beta) * lifetime;
}

SavingsTotal savings_allocation(double beta, double delta, double y_m,
                                double y_e_next, double R_next) {
    if (!(beta > 0.0))
        throw parameter_error("savings_allocation: beta must be positive");
    if (!(delta > 0.0) || !(delta < 1.0))
        throw parameter_error("savings_allocation: delta must lie in (0,1)");
    if (!(y_m >= 0.0))
        throw parameter_error("savings_allocation: y_m must be >= 0");
    if (y_e_next > 0.0 && !(R_next > 0.0))
        throw parameter_error("savings_allocation: R_next must be positive when y_e_next > 0");
    const double discounted = y_e_next > 0.0 ? y_e_next / R_next : 0.0;
    const double total = (beta * y_m - discounted) / (1.0 + beta);
    return {total, total < 0.0};
}

double return_equilibration_residual(double beta, double n, double y_m_t,
                                     double y_e_next, double R_t, double R_next,
                                     double d_prev) {
    if (!(beta > 0.0))
        throw parameter_error("return_equilibration_residual: beta must be positive");
    if (d_prev == 0.0)
        throw parameter_error("return_equilibration_residual: d_prev must be nonzero");
    if (y_e_next > 0.0 && !(R_next > 0.0))
        throw parameter_error("return_equilibration_residual: R_next must be positive when y_e_next > 0");
    const double discounted = y_e_next > 0.0 ? y_e_next / R_next : 0.0;
    return R_t - (1.0 + n) / (1.0 + beta) * (y_m_t + discounted) / d_prev;
}

double eta_star_simple(double beta, double delta, double alpha) {
    if (!(beta > 0.0))
        throw parameter_error("eta_star_simple: beta must be positive");
    if (!(delta > 0.0) || !(delta < 1.0))
        throw parameter_error("eta_star_simple: delta must lie in (0,1)");
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw parameter_error("eta_star_simple: alpha must lie in (0,1)");
    const double unclamped =
        beta / ((1.0 + beta) * delta) - (1.0 - alpha) / alpha * (1.0 + beta);
    if (unclamped >= 1.0)
        throw parameter_error("utility weights out of range: stationary eta would be " +
                              std::to_string(unclamped) + " >= 1");
    return std::max(0.0, unclamped);
}

SteadyState steady_state(const GrowthParams& p) {
    p.validate();
    const double Q = return_coef(p);
    const double R_gift = 0.5 * (Q + std::sqrt(Q * Q + 4.0 * Q * (1.0 + p.a) * p.tau_e));
    const double eta = eta_from_return(p, R_gift);
    SteadyState ss{};
    if (eta > 0.0) {
        if (eta >= 1.0)
            throw parameter_error("utility weights out of range: steady-state eta would be " +
                                  std::to_string(eta) + " >= 1");
        ss.R = R_gift;
        ss.eta = eta;
        ss.regime = SteadyRegime::inculcation;
    } else {
        ss.R = no_gift_return(p);
        ss.eta = 0.0;
        ss.regime = SteadyRegime::no_inculcation;
    }
    ss.k = std::pow((1.0 - p.alpha) / ss.R, 1.0 / p.alpha);
    ss.consumption_ratio = bgp_consumption_ratio(ss.R, ss.eta, p.beta, p.a);
    return ss;
}

double steady_state_residuals(const SteadyState& ss, const GrowthParams& p) {
    p.validate();
    double worst = std::abs(ss.R - (1.0 - p.alpha) * std::pow(ss.k, -p.alpha));
    if (ss.regime == SteadyRegime::inculcation) {
        const double Q = return_coef(p);
        worst = std::max(worst, std::abs(ss.R - Q * (1.0 + (1.0 + p.a) * p.tau_e / ss.R)));
        worst = std::max(worst, std::abs(ss.eta - eta_from_return(p, ss.R)));
    } else {
        worst = std::max(worst, std::abs(ss.R - no_gift_return(p)));
        worst = std::max(worst, std::abs(ss.eta));
        // Corner certificate: the gift regime must not be strictly preferred.
        worst = std::max(worst, std::max(0.0, eta_from_return(p, ss.R)));
    }
    worst = std::max(worst, std::abs(ss.consumption_ratio -
                                     bgp_consumption_ratio(ss.R, ss.eta, p.beta, p.a)));
    return worst;
}

double bgp_consumption_ratio(double R, double eta, double beta, double a) {
    if (!(eta < 1.0))
        throw parameter_error("bgp_consumption_ratio: eta must be below 1");
    return beta * R / ((1.0 - eta) * (1.0 + a));
}

double consumption_ratio_tau0_no_gifts(double beta, double alpha, double n) {
    if (!(beta > 0.0) || !(alpha > 0.0) || !(alpha < 1.0) || !(n > -1.0))
        throw parameter_error("consumption_ratio_tau0_no_gifts: parameter out of domain");
    return (1.0 - alpha) / alpha * (1.0 + beta) * (1.0 + n);
}

double consumption_ratio_tau0_gifts(double beta, double delta, double alpha, double n) {
    if (!(beta > 0.0) || !(delta > 0.0) || !(delta < 1.0) || !(alpha > 0.0) ||
        !(alpha < 1.0) || !(n > -1.0))
        throw parameter_error("consumption_ratio_tau0_gifts: parameter out of domain");
    const double denom =
        delta * (1.0 + beta) * (1.0 + (1.0 - alpha) / alpha * (1.0 + beta)) - beta;
    if (!(denom > 0.0))
        throw parameter_error("utility weights out of range: stationary eta would reach 1");
    return beta * (1.0 + n) / denom;
}

double consumption_ratio_on_path(const EconomyPath& path, const GrowthParams& p,
                                 std::size_t t) {
    if (t < 1 || t + 1 >= path.periods())
        throw parameter_error("consumption_ratio_on_path: t must have a predecessor and a successor");
    if (path.eta[t] > 0.0) {
        const double lifetime_prev = path.y_m[t - 1] + path.y_e[t] / path.R[t];
        const double lifetime_cur = path.y_m[t] + path.y_e[t + 1] / path.R[t + 1];
        return p.beta * path.R[t] / (1.0 - path.eta[t]) * lifetime_prev / lifetime_cur;
    }
    return (path.y_e[t] + path.R[t] * path.s_m[t - 1]) / path.y_m[t];
}

namespace {

// Root of the date-(t+1) return-equality condition in k_{t+1}, given k_t and
// k_{t+2}: (1-alpha)x^(-alpha) = Q((x/k_t)^(1-alpha) + c*k_next2/k_t^(1-alpha)).
// The left side falls and the right side rises in x, so the root is unique.
double solve_return_equality(double alpha, double Q, double c,
                             double k_t, double k_next2) {
    const double base = std::pow(k_t, 1.0 - alpha);
    const double constant = Q * c * k_next2 / base;
    auto g = [&](double x) {
        return (1.0 - alpha) * std::pow(x, -alpha) - Q * std::pow(x, 1.0 - alpha) / base -
               constant;
    };
    double lo = 1e-12;
    double hi = std::max(k_t, k_next2);
    int guard = 0;
    while (g(hi) > 0.0) {
        hi *= 2.0;
        if (++guard > 200)
            throw convergence_error("return-equality bracketing failed to find an upper bound",
                                    g(hi));
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-15 * hi) break;
    }
    return 0.5 * (lo + hi);
}

// Populate the per-period series from the capital path. `k` has horizon+2
// entries; `eta_next[t]` is the taste chosen at t for generation t+1.
void fill_path(EconomyPath& path, const GrowthParams& p, const std::vector<double>& k,
               const std::vector<double>& eta_next, double eta0) {
    const std::size_t T = eta_next.size() - 1;  // last period index
    const auto size = T + 1;
    path.k.resize(size);
    path.R.resize(size);
    path.y_m.resize(size);
    path.y_e.resize(size);
    path.s_m.resize(size);
    path.g_m.resize(size);
    path.eta.resize(size);
    path.c_m.resize(size);
    path.c_e.resize(size);
    path.psi.resize(size);

    double A = 1.0;  // middle-aged effective labor at t (A_m0 normalized to 1)
    // Savings of the generation before the sample, backed out of K_0.
    double s_prev = k[0] * (1.0 + p.n + p.tau_e);
    for (std::size_t t = 0; t <= T; ++t) {
        const double kt = k[t];
        const double kn = k[t + 1];
        const double R_t = (1.0 - p.alpha) * std::pow(kt, -p.alpha);
        const double y_m = p.alpha * A * std::pow(kt, 1.0 - p.alpha);
        const double y_e = p.tau_e * y_m;
        const double y_m_next = p.alpha * A * (1.0 + p.a) * std::pow(kn, 1.0 - p.alpha);
        const double R_next = (1.0 - p.alpha) * std::pow(kn, -p.alpha);
        const double discounted = p.tau_e > 0.0 ? p.tau_e * y_m_next / R_next : 0.0;
        const double psi = (y_m + discounted) / (1.0 + p.beta);
        const double eta_t = (t == 0) ? eta0 : eta_next[t - 1];
        const double gift = eta_t * psi;
        const double d = p.delta * y_m;
        const double total_future = (p.beta * y_m - discounted) / (1.0 + p.beta);
        const double s_m = total_future - eta_next[t] * d;
        const double c_m = y_m - d * eta_next[t] - s_m - gift;
        const double c_e = R_t * s_prev + y_e + (1.0 + p.n) * gift;

        path.k[t] = kt;
        path.R[t] = R_t;
        path.y_m[t] = y_m;
        path.y_e[t] = y_e;
        path.s_m[t] = s_m;
        path.g_m[t] = gift;
        path.eta[t] = eta_t;
        path.c_m[t] = c_m;
        path.c_e[t] = c_e;
        path.psi[t] = psi;

        s_prev = s_m;
        A *= 1.0 + p.a;
    }
}

// Residuals of the two per-period equilibrium conditions over the whole path.
void compute_path_residuals(EconomyPath& path, const GrowthParams& p,
                            const std::vector<double>& k,
                            const std::vector<double>& eta_next) {
    const std::size_t T = eta_next.size() - 1;
    const double Q = return_coef(p);
    const double c = p.tau_e * (1.0 + p.a) / (1.0 - p.alpha);
    const double B = p.tau_e * (1.0 + p.a) / ((1.0 - p.alpha) * (1.0 + p.beta) * p.delta) +
                     (1.0 + p.n) * (1.0 + p.a) / (p.alpha * p.delta * (1.0 - p.gamma_e()));
    const double eta_cap = p.beta / ((1.0 + p.beta) * p.delta);

    double worst_savings = 0.0;
    double worst_equil = 0.0;
    for (std::size_t t = 0; t <= T; ++t) {
        const double rhs = eta_cap - k[t + 1] / std::pow(k[t], 1.0 - p.alpha) * B;
        worst_savings = std::max(worst_savings,
                                 std::abs(eta_next[t] - std::max(0.0, rhs)));
        if (t >= 1 && path.eta[t] > 0.0) {
            const double base = std::pow(k[t - 1], 1.0 - p.alpha);
            const double implied =
                Q * (std::pow(k[t], 1.0 - p.alpha) / base + c * k[t + 1] / base);
            worst_equil = std::max(worst_equil, std::abs(path.R[t] - implied));
        }
    }
    path.worst_savings_residual = worst_savings;
    path.worst_equilibration_residual = worst_equil;
}

}  // namespace

EconomyPath simulate_path(const GrowthParams& p, const SimulateOptions& opt) {
    p.validate();
    if (opt.horizon < 2)
        throw parameter_error("simulate.horizon must be >= 2, got " + std::to_string(opt.horizon));
    if (!(opt.damping > 0.0) || !(opt.damping <= 1.0))
        throw parameter_error("simulate.damping must lie in (0,1]");
    if (!(opt.tolerance > 0.0))
        throw parameter_error("simulate.tol must be positive");
    if (opt.max_iterations < 1)
        throw parameter_error("simulate.max_iterations must be >= 1");

    const SteadyState ss = steady_state(p);
    double k0 = opt.k0;
    if (k0 == 0.0) k0 = 0.5 * ss.k;
    if (!(k0 > 0.0))
        throw parameter_error("simulate.k0 must be positive, got " + std::to_string(k0));

    const int T = opt.horizon;
    std::vector<double> k(T + 2);
    std::vector<double> eta_next(T + 1);
    k[0] = k0;

    EconomyPath path;
    if (p.tau_e == 0.0) {
        // Exact one-step recursion; the taste weight is a constant of the
        // parameters, so the regime never flips along the path.
        const double coef =
            ss.eta > 0.0
                ? (1.0 + p.beta) * p.delta * (1.0 - p.alpha) / ((1.0 + p.n) * (1.0 + p.a))
                : p.alpha * p.beta / ((1.0 + p.beta) * (1.0 + p.n) * (1.0 + p.a));
        for (int t = 0; t <= T; ++t) k[t + 1] = coef * std::pow(k[t], 1.0 - p.alpha);
        std::fill(eta_next.begin(), eta_next.end(), ss.eta);
        path.converged = true;
        path.iterations = 0;
    } else {
        // Forward-looking system: the date-(t+1) return equality couples
        // k_{t+1} to k_{t+2}, so solve the whole path by damped sweeps with
        // the steady state as terminal anchor.
        const double Q = return_coef(p);
        const double c = p.tau_e * (1.0 + p.a) / (1.0 - p.alpha);
        const double B = p.tau_e * (1.0 + p.a) / ((1.0 - p.alpha) * (1.0 + p.beta) * p.delta) +
                         (1.0 + p.n) * (1.0 + p.a) /
                             (p.alpha * p.delta * (1.0 - p.gamma_e()));
        const double eta_cap = p.beta / ((1.0 + p.beta) * p.delta);

        k[T + 1] = ss.k;
        const double log_k0 = std::log(k0);
        const double log_ks = std::log(ss.k);
        for (int t = 1; t <= T; ++t)
            k[t] = std::exp(std::lerp(log_k0, log_ks, double(t) / double(T + 1)));

        bool converged = false;
        int sweeps = 0;
        double last_delta = std::numeric_limits<double>::infinity();
        while (sweeps < opt.max_iterations && !converged) {
            ++sweeps;
            double max_delta = 0.0;
            for (int t = 0; t < T; ++t) {
                const double kappa = solve_return_equality(p.alpha, Q, c, k[t], k[t + 2]);
                const double eta_int = eta_cap - kappa / std::pow(k[t], 1.0 - p.alpha) * B;
                double k_new;
                if (eta_int > 0.0) {
                    if (eta_int >= 1.0)
                        throw parameter_error(
                            "utility weights out of range: path eta would be " +
                            std::to_string(eta_int) + " >= 1 at t=" + std::to_string(t + 1));
                    k_new = kappa;
                } else {
                    k_new = eta_cap * std::pow(k[t], 1.0 - p.alpha) / B;
                }
                const double updated = (1.0 - opt.damping) * k[t + 1] + opt.damping * k_new;
                max_delta = std::max(max_delta, std::abs(updated - k[t + 1]) /
                                                    std::max(1.0, std::abs(updated)));
                k[t + 1] = updated;
            }
            last_delta = max_delta;
            converged = max_delta < opt.tolerance;
        }
        if (!converged)
            throw convergence_error(
                "path solver did not converge after " + std::to_string(sweeps) +
                    " sweeps; last sweep moved capital by " + std::to_string(last_delta),
                last_delta);
        // Tastes consistent with the converged capital path. Rerunning the
        // interior-versus-corner decision keeps corner-period tastes at an
        // exact zero instead of the epsilon the damped update leaves behind.
        for (int t = 0; t < T; ++t) {
            const double kappa = solve_return_equality(p.alpha, Q, c, k[t], k[t + 2]);
            const double eta_int = eta_cap - kappa / std::pow(k[t], 1.0 - p.alpha) * B;
            eta_next[t] = std::max(0.0, eta_int);
        }
        // The last decision has no successor inside the window; read it off
        // the anchored savings relation directly.
        eta_next[T] =
            std::max(0.0, eta_cap - k[T + 1] / std::pow(k[T], 1.0 - p.alpha) * B);
        path.converged = true;
        path.iterations = sweeps;
    }

    fill_path(path, p, k, eta_next, ss.eta);
    compute_path_residuals(path, p, k, eta_next);
    return path;
}

std::vector<CapitalIntensityRow> capital_intensity_sweep(const GrowthParams& base,
                                                         const std::vector<double>& grid,
                                                         int jobs) {
    GrowthParams probe = base;
    probe.alpha = 0.5;  // swept axis; only the other fields need validating
    probe.validate();
    if (jobs < 1)
        throw parameter_error("capital_intensity_sweep: jobs must be >= 1");
    for (double x : grid)
        if (!(x > 0.0))
            throw parameter_error("capital intensity (1-alpha)/alpha must be positive, got " +
                                  std::to_string(x));

    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<CapitalIntensityRow> rows(grid.size());
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            GrowthParams q = base;
            q.alpha = 1.0 / (1.0 + grid[i]);
            CapitalIntensityRow row{grid[i], q.alpha, false, nan, nan, nan,
                                    SteadyRegime::no_inculcation};
            try {
                const SteadyState ss = steady_state(q);
                row.valid = true;
                row.R = ss.R;
                row.eta = ss.eta;
                row.consumption_ratio = ss.consumption_ratio;
                row.regime = ss.regime;
            } catch (const parameter_error&) {
                // Point outside the model's domain (taste weight would reach
                // 1); reported as an invalid row instead of killing the sweep.
            }
            rows[i] = row;
        }
    };

    const std::size_t threads = std::min<std::size_t>(jobs, grid.empty() ? 1 : grid.size());
    if (threads <= 1) {
        work(0, grid.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (grid.size() + threads - 1) / threads;
        for (std::size_t t = 0; t < threads; ++t) {
            const std::size_t begin = t * chunk;
            const std::size_t end = std::min(grid.size(), begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(work, begin, end);
        }
        for (auto& th : pool) th.join();
    }
    return rows;
}

}  // namespace eldermodel
