#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qaoabench/experiment.hpp"
#include "qaoabench/graph.hpp"

namespace qaoabench {

using WarnFn = std::function<void(const std::string&)>;

// Five-number summary of approximation ratios for one group.
struct RatioSummary {
    std::string group;  // formatted key, e.g. "2" or "0.3"
    double key = 0.0;   // numeric key, for ordering
    int count = 0;
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
};

enum class GroupBy {
    depth,             // group records by p
    edge_probability,  // group by the e_p class of the record's graph
};

// Summaries ordered by ascending key. Quartiles use linear interpolation
// between order statistics. Grouping by e_p joins records to the manifest;
// records whose graph is missing, and manifest classes with no records, are
// reported through warn and omitted.
std::vector<RatioSummary> ratio_stats(const std::vector<ExperimentRecord>& records,
                                      GroupBy group_by, const std::vector<Graph>& manifest = {},
                                      const WarnFn& warn = {});

// One unordered graph pair: exact edit distance against the absolute
// difference of best ratios r_G = max over available depths of r_{G,p}.
struct DistancePair {
    std::string g1;
    std::string g2;
    int ged = 0;
    double d = 0.0;
};

// All unordered pairs of manifest graphs that have records; GED computed
// once per pair. Graphs with no records are skipped with a warning.
std::vector<DistancePair> pairwise_ratio_diff(const std::vector<ExperimentRecord>& records,
                                              const std::vector<Graph>& graphs,
                                              int ged_max_vertices = 12, const WarnFn& warn = {});

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

// Closed-form ordinary least squares. Needs >= 2 points with non-identical
// x; throws InputError otherwise. r_squared is 1 when the residual is zero
// (including a degenerate flat y).
LinearFit least_squares_fit(std::span<const std::pair<double, double>> points);

// Circular standard deviation of angles with the given period, invariant
// under shifting any input by a multiple of the period. Zero for a single
// point or an empty set.
double circular_stddev(std::span<const double> angles, double period);

struct ConcentrationPoint {
    std::string graph_id;
    double beta = 0.0;
    double gamma = 0.0;
};

// Near-optimal (beta_k, gamma_k) pairs for one QAOA step across instances,
// plus period-aware dispersion statistics.
struct ConcentrationCloud {
    int depth = 0;  // records with p == depth
    int step = 0;   // 1-based step k
    std::vector<ConcentrationPoint> points;
    double beta_dispersion = 0.0;   // circular stddev, period pi
    double gamma_dispersion = 0.0;  // circular stddev, period 2pi
};

// Cloud for one (depth, step). Entries are re-filtered against threshold
// (f >= (1 - threshold) * best_f), so an analysis threshold tighter than
// the collection threshold narrows the cloud.
ConcentrationCloud concentration(const std::vector<ExperimentRecord>& records, int depth,
                                 int step, double threshold = 0.01, const WarnFn& warn = {});

// One cloud per depth present in the records, each at step
// min(depth, preferred_step).
std::vector<ConcentrationCloud> concentration_by_depth(
    const std::vector<ExperimentRecord>& records, int preferred_step, double threshold = 0.01,
    const WarnFn& warn = {});

}  // namespace qaoabench
