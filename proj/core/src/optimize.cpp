#include "qaoabench/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "qaoabench/errors.hpp"
#include "qaoabench/rng.hpp"

namespace qaoabench {

Bounds Bounds::qaoa_box(int depth) {
    if (depth < 1) throw InputError("Bounds::qaoa_box: depth must be positive");
    Bounds b;
    const auto p = static_cast<std::size_t>(depth);
    b.lower.assign(2 * p, 0.0);
    b.upper.resize(2 * p);
    std::fill(b.upper.begin(), b.upper.begin() + p, std::numbers::pi);
    std::fill(b.upper.begin() + p, b.upper.end(), 2.0 * std::numbers::pi);
    return b;
}

bool Bounds::contains(std::span<const double> x) const noexcept {
    if (x.size() != lower.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] >= lower[i] && x[i] <= upper[i])) return false;
    }
    return true;
}

void Bounds::validate() const {
    if (lower.empty() || lower.size() != upper.size()) {
        throw InputError("bounds: lower and upper must be non-empty and equally long");
    }
    for (std::size_t i = 0; i < lower.size(); ++i) {
        if (!(lower[i] < upper[i])) {
            throw InputError("bounds: lower[" + std::to_string(i) + "] must be below upper[" +
                             std::to_string(i) + "]");
        }
    }
}

const char* to_string(StopReason reason) noexcept {
    switch (reason) {
        case StopReason::ftol: return "ftol";
        case StopReason::xtol: return "xtol";
        case StopReason::budget: return "budget";
    }
    return "unknown";
}

namespace {

// Objective wrapper enforcing the evaluation cap and the finite-value
// contract.
class CountedObjective {
public:
    CountedObjective(const Objective& fn, std::uint64_t max_evals)
        : fn_(&fn), max_evals_(max_evals) {}

    // nullopt once the budget is exhausted.
    std::optional<double> evaluate(std::span<const double> x) {
        if (used_ >= max_evals_) return std::nullopt;
        ++used_;
        const double f = (*fn_)(x);
        if (!std::isfinite(f)) {
            throw EvaluationError("objective returned a non-finite value",
                                  std::vector<double>(x.begin(), x.end()));
        }
        return f;
    }

    std::uint64_t used() const noexcept { return used_; }

private:
    const Objective* fn_;
    std::uint64_t max_evals_;
    std::uint64_t used_ = 0;
};

struct Sample {
    std::vector<double> x;
    double f = 0.0;
};

// Diagonal quadratic m(s) = c + g.s + 1/2 sum_i h_i s_i^2 around a center.
struct Model {
    std::vector<double> gradient;
    std::vector<double> curvature;
};

// Gaussian elimination with partial pivoting; false on a near-singular
// system. Sizes here are at most 2d+1 with d = 2p <= 16.
bool solve_dense(std::vector<std::vector<double>>& a, std::vector<double>& rhs) {
    const std::size_t m = rhs.size();
    double scale = 0.0;
    for (const auto& row : a) {
        for (double entry : row) scale = std::max(scale, std::abs(entry));
    }
    const double pivot_floor = std::max(1e-13 * scale, 1e-300);
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < m; ++row) {
            if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
        }
        if (std::abs(a[pivot][col]) < pivot_floor) return false;
        std::swap(a[pivot], a[col]);
        std::swap(rhs[pivot], rhs[col]);
        for (std::size_t row = col + 1; row < m; ++row) {
            const double factor = a[row][col] / a[col][col];
            if (factor == 0.0) continue;
            for (std::size_t k = col; k < m; ++k) a[row][k] -= factor * a[col][k];
            rhs[row] -= factor * rhs[col];
        }
    }
    for (std::size_t row = m; row-- > 0;) {
        double acc = rhs[row];
        for (std::size_t k = row + 1; k < m; ++k) acc -= a[row][k] * rhs[k];
        rhs[row] = acc / a[row][row];
    }
    return true;
}

double norm2(std::span<const double> v) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(acc);
}

class TrustRegionSolver {
public:
    TrustRegionSolver(CountedObjective& objective, std::span<const double> start,
                      const Bounds& bounds, const LocalOptions& options)
        : objective_(objective),
          bounds_(bounds),
          options_(options),
          dim_(bounds.dimension()),
          center_(start.begin(), start.end()) {
        double min_width = std::numeric_limits<double>::infinity();
        double max_width = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) {
            min_width = std::min(min_width, bounds.upper[i] - bounds.lower[i]);
            max_width = std::max(max_width, bounds.upper[i] - bounds.lower[i]);
        }
        radius_ = 0.1 * min_width;
        sample_radius_ = radius_;
        initial_radius_ = radius_;
        max_radius_ = max_width;
    }

    LocalResult run() {
        if (auto f = objective_.evaluate(center_)) {
            center_value_ = *f;
            record_best(center_, *f);
        } else {
            return finish(StopReason::budget);
        }

        if (!rebuild_geometry()) return finish(StopReason::budget);

        while (true) {
            ++cycles_;
            Model model;
            if (!fit_model(&model)) {
                // Degenerate interpolation set; restore poisedness.
                if (!rebuild_geometry()) return finish(StopReason::budget);
                if (!fit_model(&model)) return finish(StopReason::xtol);
            }

            std::vector<double> step(dim_, 0.0);
            const double predicted = solve_subproblem(model, &step);
            const double step_norm = norm2(step);

            if (step_norm < options_.xtol) {
                // The model puts the optimum at the center. Done once the
                // sampling resolution is below xtol; otherwise zoom in and
                // re-verify with a fresh, finer interpolation set.
                if (sample_radius_ <= options_.xtol) return finish(StopReason::xtol);
                sample_radius_ = std::max(sample_radius_ * 0.1, 0.5 * options_.xtol);
                if (!rebuild_geometry()) return finish(StopReason::budget);
                continue;
            }

            std::vector<double> candidate(dim_);
            for (std::size_t i = 0; i < dim_; ++i) candidate[i] = center_[i] + step[i];
            clamp_to_bounds(&candidate);

            const auto f = objective_.evaluate(candidate);
            if (!f) return finish(StopReason::budget);
            record_best(candidate, *f);

            if (*f < center_value_) {
                const double improvement = center_value_ - *f;
                const double ratio = improvement / std::max(predicted, 1e-300);
                center_ = candidate;
                center_value_ = *f;
                if (improvement < options_.ftol) return finish(StopReason::ftol);
                if (ratio > 0.7 && step_norm > 0.9 * radius_) {
                    radius_ = std::min(radius_ * 2.0, max_radius_);
                } else if (ratio < 0.1) {
                    radius_ *= 0.5;
                }
                // Keep the interpolation set centered on the iterate; a
                // stale set lets curvature from elsewhere contaminate the
                // local gradient.
                sample_radius_ =
                    std::min(initial_radius_, std::max(radius_, 0.5 * options_.xtol));
                if (!rebuild_geometry()) return finish(StopReason::budget);
            } else {
                replace_farthest(candidate, *f, center_);
                radius_ *= 0.5;
                if (radius_ < 0.25 * options_.xtol) return finish(StopReason::xtol);
            }
        }
    }

private:
    LocalResult finish(StopReason stop) const {
        LocalResult result;
        result.best_point = best_point_;
        result.best_value = best_value_;
        result.evaluations = objective_.used();
        result.stop = stop;
        result.iterations = cycles_;
        return result;
    }

    void record_best(const std::vector<double>& x, double f) {
        if (f < best_value_) {
            best_value_ = f;
            best_point_ = x;
        }
    }

    void clamp_to_bounds(std::vector<double>* x) const {
        for (std::size_t i = 0; i < dim_; ++i) {
            (*x)[i] = std::clamp((*x)[i], bounds_.lower[i], bounds_.upper[i]);
        }
    }

    // Fresh 2d interpolation points: two displacements per axis around the
    // center, clipped to the box, one-sided when the center sits on a bound.
    // False when the budget dies mid-build.
    bool rebuild_geometry() {
        samples_.clear();
        for (std::size_t i = 0; i < dim_; ++i) {
            const double room_up = bounds_.upper[i] - center_[i];
            const double room_down = center_[i] - bounds_.lower[i];
            const double up = std::min(sample_radius_, room_up);
            const double down = std::min(sample_radius_, room_down);
            double first;
            double second;
            if (up > 1e-12 && down > 1e-12) {
                first = up;
                second = -down;
            } else if (up > 1e-12) {
                first = up;
                second = up * 0.5;
            } else {
                first = -down;
                second = -down * 0.5;
            }
            for (double displacement : {first, second}) {
                std::vector<double> x = center_;
                x[i] += displacement;
                const auto f = objective_.evaluate(x);
                if (!f) return false;
                record_best(x, *f);
                samples_.push_back({std::move(x), *f});
            }
        }
        return true;
    }

    // Interpolate c + g.s + 1/2 sum h_i s_i^2 through the center value and
    // the 2d stored samples (displacements s relative to the center).
    bool fit_model(Model* model) const {
        const std::size_t m = 2 * dim_ + 1;
        if (samples_.size() != 2 * dim_) return false;
        std::vector<std::vector<double>> a(m, std::vector<double>(m, 0.0));
        std::vector<double> rhs(m, 0.0);
        a[0][0] = 1.0;
        rhs[0] = center_value_;
        for (std::size_t row = 1; row < m; ++row) {
            const Sample& sample = samples_[row - 1];
            a[row][0] = 1.0;
            for (std::size_t i = 0; i < dim_; ++i) {
                const double s = sample.x[i] - center_[i];
                a[row][1 + i] = s;
                a[row][1 + dim_ + i] = 0.5 * s * s;
            }
            rhs[row] = sample.f;
        }
        if (!solve_dense(a, rhs)) return false;
        model->gradient.assign(rhs.begin() + 1, rhs.begin() + 1 + dim_);
        model->curvature.assign(rhs.begin() + 1 + dim_, rhs.end());
        return true;
    }

    // Exact minimizer of the separable model over box-intersected-with-
    // infinity-norm trust region. Returns the predicted decrease.
    double solve_subproblem(const Model& model, std::vector<double>* step) const {
        double predicted = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) {
            const double lo = std::max(bounds_.lower[i] - center_[i], -radius_);
            const double hi = std::min(bounds_.upper[i] - center_[i], radius_);
            const double g = model.gradient[i];
            const double h = model.curvature[i];
            auto value = [&](double s) { return g * s + 0.5 * h * s * s; };
            double best_s = 0.0;
            double best_q = 0.0;
            for (double s : {lo, hi}) {
                if (value(s) < best_q) {
                    best_q = value(s);
                    best_s = s;
                }
            }
            if (h > 0.0) {
                const double interior = std::clamp(-g / h, lo, hi);
                if (value(interior) < best_q) {
                    best_q = value(interior);
                    best_s = interior;
                }
            }
            (*step)[i] = best_s;
            predicted -= best_q;
        }
        return predicted;
    }

    // The incoming point replaces the stored sample farthest from the
    // reference point, keeping the set size at 2d+1 (center included).
    void replace_farthest(const std::vector<double>& x, double f,
                          const std::vector<double>& reference) {
        std::size_t farthest = 0;
        double farthest_distance = -1.0;
        for (std::size_t k = 0; k < samples_.size(); ++k) {
            double distance = 0.0;
            for (std::size_t i = 0; i < dim_; ++i) {
                const double delta = samples_[k].x[i] - reference[i];
                distance += delta * delta;
            }
            if (distance > farthest_distance) {
                farthest_distance = distance;
                farthest = k;
            }
        }
        samples_[farthest] = {x, f};
    }

    CountedObjective& objective_;
    const Bounds& bounds_;
    LocalOptions options_;
    std::size_t dim_;

    std::vector<double> center_;
    double center_value_ = std::numeric_limits<double>::infinity();
    std::vector<Sample> samples_;

    double radius_ = 0.0;
    double sample_radius_ = 0.0;
    double initial_radius_ = 0.0;
    double max_radius_ = 0.0;

    std::vector<double> best_point_;
    double best_value_ = std::numeric_limits<double>::infinity();
    int cycles_ = 0;
};

}  // namespace

LocalResult local_optimize(const Objective& objective, std::span<const double> start,
                           const Bounds& bounds, const LocalOptions& options) {
    bounds.validate();
    if (start.size() != bounds.dimension()) {
        throw InputError("local_optimize: start dimension does not match bounds");
    }
    if (!bounds.contains(start)) {
        throw InputError("local_optimize: start lies outside bounds");
    }
    if (!(options.ftol > 0.0) || !(options.xtol > 0.0)) {
        throw InputError("local_optimize: ftol and xtol must be positive");
    }
    if (options.max_evals == 0) {
        throw InputError("local_optimize: max_evals must be at least 1");
    }
    CountedObjective counted(objective, options.max_evals);
    TrustRegionSolver solver(counted, start, bounds, options);
    return solver.run();
}

OptResult multistart(const Objective& objective, const Bounds& bounds,
                     const MultistartOptions& options) {
    bounds.validate();
    if (options.total_budget < 1) {
        throw InputError("multistart: total_budget must be at least 1");
    }

    OptResult result;
    result.best_value = std::numeric_limits<double>::infinity();
    std::uint64_t remaining = options.total_budget;
    std::size_t start_index = 0;

    while (remaining > 0) {
        std::vector<double> start;
        if (start_index < options.extra_starts.size()) {
            start = options.extra_starts[start_index];
            if (!bounds.contains(start)) {
                throw InputError("multistart: extra start " + std::to_string(start_index) +
                                 " lies outside bounds");
            }
        } else {
            // Per-start-index stream: results do not depend on how starts
            // are ordered or scheduled.
            Xoshiro256pp rng(derive_seed(options.seed, static_cast<std::uint64_t>(start_index)));
            start.resize(bounds.dimension());
            for (std::size_t i = 0; i < start.size(); ++i) {
                start[i] = rng.uniform(bounds.lower[i], bounds.upper[i]);
            }
        }

        const LocalOptions local{options.ftol, options.xtol, remaining};
        LocalResult local_result = local_optimize(objective, start, bounds, local);

        remaining -= local_result.evaluations;
        result.evaluations_used += local_result.evaluations;
        result.starts.push_back(
            {local_result.best_value, local_result.stop, local_result.evaluations});
        if (local_result.best_value < result.best_value) {
            result.best_value = local_result.best_value;
            result.best_point = std::move(local_result.best_point);
        }
        ++start_index;
    }

    result.starts_completed = static_cast<int>(result.starts.size());
    return result;
}

OptResult multistart(const Objective& objective, const Bounds& bounds, std::uint64_t total_budget,
                     std::uint64_t seed) {
    MultistartOptions options;
    options.total_budget = total_budget;
    options.seed = seed;
    return multistart(objective, bounds, options);
}

}  // namespace qaoabench
