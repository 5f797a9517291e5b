#pragma once

// Brute-force verification tools: refined grid search over boxed maximization
// problems, bisection bracketing for thresholds, and central finite
// differences. Everything here is deliberately independent of the model's
// closed forms so it can act as a check on them.

#include <functional>
#include <vector>

namespace eldermodel::oracle {

// Search box for up to a handful of decision variables.
struct GridSpec {
    std::vector<double> lo;      // lower bound per axis
    std::vector<double> hi;      // upper bound per axis
    int resolution = 64;         // points per axis, >= 16
    int refinement_rounds = 4;   // each round shrinks the bracket >= 4x
};

struct GridResult {
    std::vector<double> arg;     // maximizer
    double value;                // objective at the maximizer
};

// Objective returning the value at a point; infeasible points are signalled
// by returning -inf (the search skips them, never evaluates logs of garbage).
using Objective = std::function<double(const std::vector<double>&)>;

// Exhaustive search over the box, then repeated zoom around the incumbent.
// Throws parameter_error on malformed specs and std::runtime_error when no
// feasible cell exists.
GridResult grid_maximize(const Objective& f, const GridSpec& grid);

// Bisection root of f on [lo, hi]. Requires a sign change on the interval;
// throws std::runtime_error otherwise. Returns the midpoint of the final
// bracket, whose width is <= tolerance.
double bracket_threshold(const std::function<double(double)>& f,
                         double lo, double hi, double tolerance);

// Central difference gradient, O(step^2). If evaluation at x +- step*e_i is
// infeasible (-inf or non-finite), the step is halved and retried a few
// times before giving up with std::runtime_error.
std::vector<double> finite_difference_gradient(const Objective& f,
                                               const std::vector<double>& point,
                                               double step);

}  // namespace eldermodel::oracle
