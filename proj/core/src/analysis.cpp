#include "qaoabench/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "qaoabench/errors.hpp"
#include "qaoabench/ged.hpp"

namespace qaoabench {

namespace {

void warn_if(const WarnFn& warn, const std::string& message) {
    if (warn) warn(message);
}

// Linear interpolation between order statistics on sorted data.
double quantile_sorted(const std::vector<double>& sorted, double q) {
    if (sorted.size() == 1) return sorted.front();
    const double position = q * static_cast<double>(sorted.size() - 1);
    const auto below = static_cast<std::size_t>(std::floor(position));
    const auto above = std::min(below + 1, sorted.size() - 1);
    const double fraction = position - static_cast<double>(below);
    return sorted[below] + fraction * (sorted[above] - sorted[below]);
}

std::string format_group_key(double key) {
    std::ostringstream out;
    out << key;
    return out.str();
}

}  // namespace

std::vector<RatioSummary> ratio_stats(const std::vector<ExperimentRecord>& records,
                                      GroupBy group_by, const std::vector<Graph>& manifest,
                                      const WarnFn& warn) {
    if (records.empty()) throw InputError("ratio_stats: no records");

    std::map<std::string, double> class_of_graph;
    if (group_by == GroupBy::edge_probability) {
        for (const auto& g : manifest) {
            if (g.edge_probability) class_of_graph[g.id] = *g.edge_probability;
        }
    }

    std::map<double, std::vector<double>> groups;
    for (const auto& record : records) {
        double key = 0.0;
        if (group_by == GroupBy::depth) {
            key = record.p;
        } else {
            auto it = class_of_graph.find(record.graph_id);
            if (it == class_of_graph.end()) {
                warn_if(warn, "ratio_stats: no e_p class for graph '" + record.graph_id +
                                  "'; record omitted");
                continue;
            }
            key = it->second;
        }
        groups[key].push_back(record.ratio);
    }

    if (group_by == GroupBy::edge_probability) {
        std::set<double> classes;
        for (const auto& [id, e_p] : class_of_graph) classes.insert(e_p);
        for (double e_p : classes) {
            if (!groups.contains(e_p)) {
                warn_if(warn, "ratio_stats: class e_p=" + format_group_key(e_p) +
                                  " has no records; omitted");
            }
        }
    }

    std::vector<RatioSummary> summaries;
    summaries.reserve(groups.size());
    for (auto& [key, ratios] : groups) {
        std::sort(ratios.begin(), ratios.end());
        RatioSummary s;
        s.group = format_group_key(key);
        s.key = key;
        s.count = static_cast<int>(ratios.size());
        s.min = ratios.front();
        s.q1 = quantile_sorted(ratios, 0.25);
        s.median = quantile_sorted(ratios, 0.5);
        s.q3 = quantile_sorted(ratios, 0.75);
        s.max = ratios.back();
        summaries.push_back(std::move(s));
    }
    return summaries;
}

std::vector<DistancePair> pairwise_ratio_diff(const std::vector<ExperimentRecord>& records,
                                              const std::vector<Graph>& graphs,
                                              int ged_max_vertices, const WarnFn& warn) {
    // r_G = max over available depths.
    std::map<std::string, double> best_ratio;
    for (const auto& record : records) {
        auto [it, inserted] = best_ratio.try_emplace(record.graph_id, record.ratio);
        if (!inserted) it->second = std::max(it->second, record.ratio);
    }

    std::vector<const Graph*> with_records;
    for (const auto& g : graphs) {
        if (best_ratio.contains(g.id)) {
            with_records.push_back(&g);
        } else {
            warn_if(warn, "pairwise_ratio_diff: graph '" + g.id + "' has no records; skipped");
        }
    }

    std::vector<DistancePair> pairs;
    pairs.reserve(with_records.size() * (with_records.size() + 1) / 2);
    for (std::size_t i = 0; i < with_records.size(); ++i) {
        for (std::size_t j = i + 1; j < with_records.size(); ++j) {
            DistancePair pair;
            pair.g1 = with_records[i]->id;
            pair.g2 = with_records[j]->id;
            pair.ged = graph_edit_distance(*with_records[i], *with_records[j], ged_max_vertices);
            pair.d = std::abs(best_ratio.at(pair.g1) - best_ratio.at(pair.g2));
            pairs.push_back(std::move(pair));
        }
    }
    return pairs;
}

LinearFit least_squares_fit(std::span<const std::pair<double, double>> points) {
    if (points.size() < 2) throw InputError("least_squares_fit: need at least 2 points");

    double mean_x = 0.0;
    double mean_y = 0.0;
    for (const auto& [x, y] : points) {
        mean_x += x;
        mean_y += y;
    }
    mean_x /= static_cast<double>(points.size());
    mean_y /= static_cast<double>(points.size());

    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (const auto& [x, y] : points) {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
        syy += (y - mean_y) * (y - mean_y);
    }
    if (sxx == 0.0) throw InputError("least_squares_fit: all x values identical");

    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = mean_y - fit.slope * mean_x;

    double residual = 0.0;
    for (const auto& [x, y] : points) {
        const double e = y - (fit.slope * x + fit.intercept);
        residual += e * e;
    }
    // Flat y with zero residual is a perfect fit.
    fit.r_squared = (syy > 0.0) ? 1.0 - residual / syy : 1.0;
    return fit;
}

double circular_stddev(std::span<const double> angles, double period) {
    if (!(period > 0.0)) throw InputError("circular_stddev: period must be positive");
    if (angles.size() < 2) return 0.0;
    const double scale = 2.0 * std::numbers::pi / period;
    double sum_cos = 0.0;
    double sum_sin = 0.0;
    for (double a : angles) {
        sum_cos += std::cos(a * scale);
        sum_sin += std::sin(a * scale);
    }
    const double n = static_cast<double>(angles.size());
    const double resultant = std::hypot(sum_cos / n, sum_sin / n);
    if (resultant >= 1.0) return 0.0;  // all points coincide (mod period)
    if (resultant <= 0.0) return std::numeric_limits<double>::infinity();
    return std::sqrt(-2.0 * std::log(resultant)) / scale;
}

ConcentrationCloud concentration(const std::vector<ExperimentRecord>& records, int depth,
                                 int step, double threshold, const WarnFn& warn) {
    if (step < 1 || step > depth) {
        throw InputError("concentration: step must lie in [1, depth]");
    }
    ConcentrationCloud cloud;
    cloud.depth = depth;
    cloud.step = step;

    const std::size_t k = static_cast<std::size_t>(step) - 1;
    for (const auto& record : records) {
        if (record.p != depth) continue;
        const double cutoff = (1.0 - threshold) * record.best_f;
        for (const auto& entry : record.near_optimal) {
            if (entry.f < cutoff) continue;
            cloud.points.push_back({record.graph_id, entry.betas[k], entry.gammas[k]});
        }
    }

    if (cloud.points.empty()) {
        warn_if(warn, "concentration: empty cloud for depth " + std::to_string(depth) +
                          ", step " + std::to_string(step));
        return cloud;
    }

    std::vector<double> betas;
    std::vector<double> gammas;
    betas.reserve(cloud.points.size());
    gammas.reserve(cloud.points.size());
    for (const auto& point : cloud.points) {
        betas.push_back(point.beta);
        gammas.push_back(point.gamma);
    }
    cloud.beta_dispersion = circular_stddev(betas, std::numbers::pi);
    cloud.gamma_dispersion = circular_stddev(gammas, 2.0 * std::numbers::pi);
    return cloud;
}

std::vector<ConcentrationCloud> concentration_by_depth(
    const std::vector<ExperimentRecord>& records, int preferred_step, double threshold,
    const WarnFn& warn) {
    std::set<int> depths;
    for (const auto& record : records) depths.insert(record.p);

    std::vector<ConcentrationCloud> clouds;
    clouds.reserve(depths.size());
    for (int depth : depths) {
        const int step = std::min(depth, std::max(1, preferred_step));
        clouds.push_back(concentration(records, depth, step, threshold, warn));
    }
    return clouds;
}

}  // namespace qaoabench
