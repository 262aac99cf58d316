#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace qaoabench {

// Objective to minimize. Callers that maximize pass the negated function.
using Objective = std::function<double(std::span<const double>)>;

// Per-coordinate box constraints.
struct Bounds {
    std::vector<double> lower;
    std::vector<double> upper;

    // ([0,pi] x [0,2pi])^p in flat order (beta_1..beta_p, gamma_1..gamma_p).
    static Bounds qaoa_box(int depth);

    std::size_t dimension() const noexcept { return lower.size(); }
    bool contains(std::span<const double> x) const noexcept;
    void validate() const;  // lower[i] < upper[i], equal sizes
};

// Which stopping criterion fired.
enum class StopReason {
    ftol,    // change in function value between accepted iterates below ftol
    xtol,    // proposed step norm below xtol
    budget,  // evaluation budget exhausted
};

const char* to_string(StopReason reason) noexcept;

struct LocalOptions {
    double ftol = 1e-3;
    double xtol = 1e-2;
    std::uint64_t max_evals = 0;  // hard cap on objective calls
};

struct LocalResult {
    std::vector<double> best_point;
    double best_value = 0.0;
    std::uint64_t evaluations = 0;
    StopReason stop = StopReason::budget;
    int iterations = 0;  // trust-region cycles (model fit + proposed step)

    bool converged() const noexcept { return stop != StopReason::budget; }
};

// Derivative-free bound-constrained local minimizer in the BOBYQA family:
// maintains 2d+1 interpolation points, fits a diagonal quadratic model,
// proposes bound-clipped trust-region steps and shrinks the radius on
// failure. Stops when an accepted improvement falls below ftol, the
// proposed step norm falls below xtol, or max_evals is reached.
//
// Throws InputError when start lies outside bounds and EvaluationError when
// the objective returns a non-finite value.
LocalResult local_optimize(const Objective& objective, std::span<const double> start,
                           const Bounds& bounds, const LocalOptions& options);

struct StartRecord {
    double value = 0.0;
    StopReason stop = StopReason::budget;
    std::uint64_t evaluations = 0;

    bool converged() const noexcept { return stop != StopReason::budget; }
};

struct OptResult {
    std::vector<double> best_point;
    double best_value = 0.0;
    std::uint64_t evaluations_used = 0;
    int starts_completed = 0;
    std::vector<StartRecord> starts;  // per-start history
};

struct MultistartOptions {
    std::uint64_t total_budget = 0;
    std::uint64_t seed = 0;
    double ftol = 1e-3;
    double xtol = 1e-2;
    // Starting points evaluated before any random start (e.g. the
    // zero-padded optimum of a shallower ansatz). Must lie inside bounds.
    std::vector<std::vector<double>> extra_starts;
};

// Restarted local search: starts are drawn uniformly over bounds from a
// per-start-index stream derived from the seed, so the result is a pure
// function of (seed, budget, objective) and independent of how starts might
// be scheduled. Ties between starts are broken toward the lower index.
OptResult multistart(const Objective& objective, const Bounds& bounds,
                     const MultistartOptions& options);

OptResult multistart(const Objective& objective, const Bounds& bounds,
                     std::uint64_t total_budget, std::uint64_t seed);

}  // namespace qaoabench
