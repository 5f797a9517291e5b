#include "eldermodel/property_rights.hpp"

#include <cmath>
#include <string>
#include <thread>

#include "eldermodel/errors.hpp"

namespace eldermodel {

void LandEconomy::validate() const {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw parameter_error("economy.alpha must lie in (0,1), got " + std::to_string(alpha));
    if (!(A_m > 0.0))
        throw parameter_error("economy.A_m must be positive, got " + std::to_string(A_m));
    if (!(A_e >= 0.0))
        throw parameter_error("economy.A_e must be >= 0, got " + std::to_string(A_e));
    if (!(T > 0.0))
        throw parameter_error("economy.T must be positive, got " + std::to_string(T));
    if (!(N_m > 0.0))
        throw parameter_error("economy.N_m must be positive, got " + std::to_string(N_m));
    if (!(N_e > 0.0))
        throw parameter_error("economy.N_e must be positive, got " + std::to_string(N_e));
    if (!(total_labor() > 0.0))
        throw parameter_error("economy has zero total effective labor");
}

void RightsParams::validate() const {
    if (!(phi >= 0.0) || !(phi <= 1.0))
        throw parameter_error("rights.phi must lie in [0,1], got " + std::to_string(phi));
    if (!(rho > 0.0))
        throw parameter_error("rights.rho must be positive, got " + std::to_string(rho));
}

IncomeDecomposition euler_decompose(const LandEconomy& econ) {
    econ.validate();
    const double L = econ.total_labor();
    IncomeDecomposition d{};
    d.F = std::pow(L, econ.alpha) * std::pow(econ.T, 1.0 - econ.alpha);
    d.F_L = econ.alpha * d.F / L;
    d.F_T = (1.0 - econ.alpha) * d.F / econ.T;
    return d;
}

void sigma_shares(const LandEconomy& econ, const RightsParams& rights,
                  double& sigma_e, double& sigma_m) {
    econ.validate();
    rights.validate();
    const double phi_T = std::pow(rights.phi, rights.rho);
    const double L = econ.total_labor();
    sigma_e = phi_T / econ.N_e + (1.0 - phi_T) * econ.A_e / L;
    sigma_m = (1.0 - phi_T) * econ.A_m / L;
}

IncomeDecomposition decompose_incomes(const LandEconomy& econ, const RightsParams& rights) {
    IncomeDecomposition d = euler_decompose(econ);
    sigma_shares(econ, rights, d.sigma_e, d.sigma_m);
    const double land_pay = d.F_T * econ.T;
    d.q_m = econ.A_m * d.F_L + d.sigma_m * land_pay;
    d.q_e = econ.A_e * d.F_L + d.sigma_e * land_pay;
    const double N = econ.N_m + econ.N_e;
    d.y_m = rights.phi * d.q_m + (1.0 - rights.phi) * d.F / N;
    d.y_e = rights.phi * d.q_e + (1.0 - rights.phi) * d.F / N;
    return d;
}

double income_ratio(const LandEconomy& econ, const RightsParams& rights) {
    const IncomeDecomposition d = decompose_incomes(econ, rights);
    if (!(d.y_m > 0.0))
        throw parameter_error("income_ratio: middle-aged income is zero at phi=" +
                              std::to_string(rights.phi));
    return d.y_e / d.y_m;
}

std::optional<double> critical_phi(const LandEconomy& econ, const RightsParams& rights) {
    econ.validate();
    rights.validate();
    if (!(econ.A_e < econ.A_m))
        throw parameter_error("critical_phi requires A_e < A_m (the ratio has no interior minimum otherwise)");
    const double N = econ.N_m + econ.N_e;
    const double base = (econ.A_m - econ.A_e) * econ.N_e /
                        (econ.A_m * N * (1.0 - econ.alpha) * (1.0 + rights.rho));
    const double root = std::pow(base, 1.0 / rights.rho);
    if (root <= 0.0 || root >= 1.0) return std::nullopt;
    return root;
}

std::vector<double> linspace(double lo, double hi, int count) {
    if (count < 2)
        throw parameter_error("linspace: need at least 2 points, got " + std::to_string(count));
    std::vector<double> grid(count);
    const double step = (hi - lo) / (count - 1);
    for (int i = 0; i < count; ++i) grid[i] = lo + step * i;
    grid.back() = hi;  // avoid drifting past the endpoint
    return grid;
}

std::vector<PhiSweepRow> phi_sweep(const LandEconomy& econ, double rho,
                                   const std::vector<double>& grid,
                                   const PreferenceParams& prefs, int jobs) {
    econ.validate();
    prefs.validate();
    if (jobs < 1)
        throw parameter_error("phi_sweep: jobs must be >= 1");
    const double n = econ.n();
    const double threshold = inculcation_threshold(prefs, n);
    std::vector<PhiSweepRow> rows(grid.size());

    auto work = [&](size_t begin, size_t end) {
        for (size_t i = begin; i < end; ++i) {
            RightsParams rights{grid[i], rho};
            PhiSweepRow row{};
            row.phi = grid[i];
            row.income_ratio = income_ratio(econ, rights);
            row.inculcation = row.income_ratio <= threshold;
            row.consumption_ratio = relative_consumption_static(prefs, row.income_ratio, n);
            rows[i] = row;
        }
    };

    const size_t threads = std::min<size_t>(jobs, grid.size() ? grid.size() : 1);
    if (threads <= 1) {
        work(0, grid.size());
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(threads);
        const size_t chunk = (grid.size() + threads - 1) / threads;
        for (size_t t = 0; t < threads; ++t) {
            const size_t begin = t * chunk;
            const size_t end = std::min(grid.size(), begin + chunk);
            if (begin >= end) break;
            pool.emplace_back([&, t, begin, end] {
                try {
                    work(begin, end);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (const auto& err : errors)
            if (err) std::rethrow_exception(err);
    }
    return rows;
}

}  // namespace eldermodel
