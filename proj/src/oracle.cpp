#include "eldermodel/oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "eldermodel/errors.hpp"

namespace eldermodel::oracle {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

GridResult grid_maximize(const Objective& f, const GridSpec& grid) {
    const size_t dim = grid.lo.size();
    if (dim == 0 || grid.hi.size() != dim)
        throw parameter_error("grid_maximize: bounds must be nonempty and of equal length");
    if (grid.resolution < 16)
        throw parameter_error("grid_maximize: resolution must be >= 16");
    for (size_t i = 0; i < dim; ++i)
        if (!(grid.lo[i] <= grid.hi[i]))
            throw parameter_error("grid_maximize: lo > hi on some axis");

    std::vector<double> lo = grid.lo;
    std::vector<double> hi = grid.hi;
    std::vector<double> best_arg(dim, 0.0);
    double best_val = kNegInf;
    const int n = grid.resolution;

    for (int round = 0; round <= grid.refinement_rounds; ++round) {
        // Exhaustive pass over the current box. Index arithmetic instead of
        // recursion keeps this flat for any dimension.
        std::vector<double> step(dim);
        for (size_t i = 0; i < dim; ++i)
            step[i] = (hi[i] - lo[i]) / (n - 1);

        long total = 1;
        for (size_t i = 0; i < dim; ++i) total *= n;

        std::vector<double> x(dim);
        bool found = false;
        std::vector<double> round_arg(dim);
        double round_val = kNegInf;
        for (long cell = 0; cell < total; ++cell) {
            long rem = cell;
            for (size_t i = 0; i < dim; ++i) {
                x[i] = lo[i] + step[i] * (rem % n);
                rem /= n;
            }
            const double v = f(x);
            if (std::isfinite(v) && v > round_val) {
                round_val = v;
                round_arg = x;
                found = true;
            }
        }
        if (!found)
            throw std::runtime_error("grid_maximize: no feasible grid point in search box");
        if (round_val > best_val) {
            best_val = round_val;
            best_arg = round_arg;
        }

        // Zoom: new box is three old cells wide around the incumbent, clipped
        // to the original bounds. Width shrinks by (n-1)/3 >= 5 per round.
        for (size_t i = 0; i < dim; ++i) {
            const double w = 1.5 * step[i];
            lo[i] = std::max(grid.lo[i], best_arg[i] - w);
            hi[i] = std::min(grid.hi[i], best_arg[i] + w);
        }
    }
    return {best_arg, best_val};
}

double bracket_threshold(const std::function<double(double)>& f,
                         double lo, double hi, double tolerance) {
    if (!(lo < hi))
        throw parameter_error("bracket_threshold: lo must be < hi");
    if (!(tolerance > 0))
        throw parameter_error("bracket_threshold: tolerance must be positive");
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0))
        throw std::runtime_error("bracket_threshold: no sign change on interval");
    while (hi - lo > tolerance) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<double> finite_difference_gradient(const Objective& f,
                                               const std::vector<double>& point,
                                               double step) {
    if (!(step > 0))
        throw parameter_error("finite_difference_gradient: step must be positive");
    const size_t dim = point.size();
    std::vector<double> grad(dim);
    for (size_t i = 0; i < dim; ++i) {
        double h = step;
        bool ok = false;
        for (int attempt = 0; attempt < 40 && !ok; ++attempt) {
            std::vector<double> up = point, dn = point;
            up[i] += h;
            dn[i] -= h;
            const double fu = f(up);
            const double fd = f(dn);
            if (std::isfinite(fu) && std::isfinite(fd)) {
                grad[i] = (fu - fd) / (2.0 * h);
                ok = true;
            } else {
                h *= 0.5;  // too close to the feasibility boundary; shrink
            }
        }
        if (!ok)
            throw std::runtime_error("finite_difference_gradient: point too close to infeasible region");
    }
    return grad;
}

}  // namespace eldermodel::oracle
