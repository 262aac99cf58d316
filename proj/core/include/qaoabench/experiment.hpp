#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qaoabench/graph.hpp"
#include "qaoabench/optimize.hpp"
#include "qaoabench/simulator.hpp"

namespace qaoabench {

// best_f / ground_truth. Throws DegenerateInstanceError when ground_truth
// is zero.
double approximation_ratio(double best_f, int ground_truth);

// A parameter vector whose objective value came within the collection
// threshold of the best observed for its (graph, p) search.
struct NearOptimalEntry {
    std::vector<double> betas;
    std::vector<double> gammas;
    double f = 0.0;
};

// One (graph, p) optimization outcome.
struct ExperimentRecord {
    std::string graph_id;
    int p = 0;
    std::vector<double> best_betas;
    std::vector<double> best_gammas;
    double best_f = 0.0;
    int ground_truth = 0;
    double ratio = 0.0;
    std::uint64_t evaluations_used = 0;
    int starts_completed = 0;
    std::uint64_t seed = 0;
    std::vector<NearOptimalEntry> near_optimal;
};

std::string record_to_json(const ExperimentRecord& record);
ExperimentRecord record_from_json(const std::string& text);

// Deterministic benchmark construction: per_class graphs for each e_p
// value, with per-graph seeds derived from master_seed. Instances without
// edges (max-cut 0, undefined ratio) are rejected and regenerated with the
// next derived seed.
std::vector<Graph> build_benchmark(int n, std::span<const double> e_p_values,
                                   int per_class, std::uint64_t master_seed);

// Desk-scale default evaluation budget per depth. The full-scale protocol
// (1M for p <= 2, 3M above) is one config edit away.
std::uint64_t default_budget(int p);

struct RunSettings {
    std::vector<int> depths{1, 2, 4, 6, 8};
    std::map<int, std::uint64_t> budgets;  // per depth; default_budget(p) if absent
    double ftol = 1e-3;
    double xtol = 1e-2;
    std::uint64_t seed = 1;
    bool padded_starts = true;  // seed each depth with the zero-padded best of the previous one
    double near_optimal_threshold = 0.01;
    int workers = 1;

    std::uint64_t budget_for(int p) const;
    // Seed for one (graph, p) task; independent of scheduling order.
    std::uint64_t task_seed(const std::string& graph_id, int p) const;
};

// Runs one (graph, p) optimization: cut table, exact ground truth,
// multistart on -f, near-optimal trace collection. padded_start, when
// given, is evaluated before any random start.
ExperimentRecord run_single(const Graph& graph, int p, const RunSettings& settings,
                            const std::optional<QaoaParams>& padded_start = std::nullopt);

// Append-only JSON-lines journal. Each record is one line, written with a
// single write() and fsync()ed before append() returns, so a crash loses at
// most a partial final line. Safe to call from multiple threads.
class JournalWriter {
public:
    explicit JournalWriter(const std::string& path);
    ~JournalWriter();

    JournalWriter(const JournalWriter&) = delete;
    JournalWriter& operator=(const JournalWriter&) = delete;

    void append(const ExperimentRecord& record);
    const std::string& path() const noexcept { return path_; }

private:
    struct Impl;
    Impl* impl_;
    std::string path_;
};

// Reads all complete records. A truncated final line (interrupted write) is
// dropped silently; an unparseable line earlier in the file throws
// JournalError reporting the salvageable prefix. A missing file yields an
// empty vector.
std::vector<ExperimentRecord> read_journal(const std::string& path);

struct TaskKey {
    std::string graph_id;
    int p = 0;

    friend bool operator==(const TaskKey&, const TaskKey&) = default;
    friend auto operator<=>(const TaskKey&, const TaskKey&) = default;
};

// Remaining (graph, p) pairs given what the journal already holds.
std::vector<TaskKey> resume_work_set(const std::vector<Graph>& manifest,
                                     const std::vector<int>& depths,
                                     const std::vector<ExperimentRecord>& completed);

using ProgressFn =
    std::function<void(const ExperimentRecord& record, std::size_t done, std::size_t total)>;
using TaskErrorFn = std::function<void(const TaskKey& task, const std::string& message)>;

// Orchestrates the sweep: resumes from the journal, schedules per-graph
// depth chains on a worker pool (depths ascend within a graph so padded
// starts see the previous depth), and appends each record as it completes.
// Per-task failures are reported through on_error and skipped.
void run_experiment(const std::vector<Graph>& manifest, const RunSettings& settings,
                    const std::string& journal_path, const ProgressFn& progress = {},
                    const TaskErrorFn& on_error = {});

}  // namespace qaoabench
