#include "qaoabench/experiment.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "qaoabench/errors.hpp"
#include "qaoabench/rng.hpp"
#include "qaoabench/simulator.hpp"

namespace qaoabench {

double approximation_ratio(double best_f, int ground_truth) {
    if (ground_truth < 1) {
        throw DegenerateInstanceError(
            "approximation ratio undefined for ground truth " + std::to_string(ground_truth));
    }
    return best_f / static_cast<double>(ground_truth);
}

std::uint64_t default_budget(int p) { return p <= 2 ? 100'000ull : 300'000ull; }

std::uint64_t RunSettings::budget_for(int p) const {
    auto it = budgets.find(p);
    return it != budgets.end() ? it->second : default_budget(p);
}

std::uint64_t RunSettings::task_seed(const std::string& graph_id, int p) const {
    return derive_seed(seed, fnv1a64(graph_id), static_cast<std::uint64_t>(p));
}

std::vector<Graph> build_benchmark(int n, std::span<const double> e_p_values, int per_class,
                                   std::uint64_t master_seed) {
    if (per_class < 1) throw InputError("build_benchmark: per_class must be positive");
    std::vector<Graph> graphs;
    graphs.reserve(e_p_values.size() * static_cast<std::size_t>(per_class));
    for (std::size_t class_index = 0; class_index < e_p_values.size(); ++class_index) {
        const double e_p = e_p_values[class_index];
        for (int instance = 0; instance < per_class; ++instance) {
            // Edgeless instances have max-cut 0 and no defined ratio; retry
            // with the next derived seed.
            Graph g;
            for (std::uint64_t attempt = 0;; ++attempt) {
                const std::uint64_t seed =
                    derive_seed(master_seed, static_cast<std::uint64_t>(class_index),
                                static_cast<std::uint64_t>(instance), attempt);
                g = generate_er(n, e_p, seed);
                if (!g.edges.empty()) break;
                if (attempt >= 1'000'000ull) {
                    throw InputError("build_benchmark: cannot generate a non-degenerate graph "
                                     "for e_p " + std::to_string(e_p));
                }
            }
            std::ostringstream id;
            id << "er_n" << n << "_ep" << e_p << "_" << (instance < 10 ? "0" : "") << instance;
            g.id = id.str();
            graphs.push_back(std::move(g));
        }
    }
    return graphs;
}

namespace {

// Keeps every evaluated point whose objective came within `threshold` of the
// best seen so far; the final filter and xtol-deduplication happen once the
// search has finished.
class NearOptimalCollector {
public:
    NearOptimalCollector(double threshold, double dedup_tol)
        : threshold_(threshold), dedup_tol_(dedup_tol) {}

    void offer(std::span<const double> x, double f) {
        if (f > best_) best_ = f;
        if (f >= (1.0 - threshold_) * best_) {
            entries_.push_back({std::vector<double>(x.begin(), x.end()), f});
        }
        if (entries_.size() > 4096 && entries_.size() > 2 * last_prune_size_) prune();
    }

    std::vector<NearOptimalEntry> finalize(double final_best) {
        const double cutoff = (1.0 - threshold_) * final_best;
        std::erase_if(entries_, [&](const Entry& e) { return e.f < cutoff; });

        // Highest objective first; ties broken on the parameters so the
        // result is a pure function of the evaluation trace.
        std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
            if (a.f != b.f) return a.f > b.f;
            return a.x < b.x;
        });

        std::vector<NearOptimalEntry> kept;
        for (const Entry& entry : entries_) {
            bool duplicate = false;
            for (const NearOptimalEntry& existing : kept) {
                if (within_tol(entry.x, existing)) {
                    duplicate = true;
                    break;
                }
            }
            if (duplicate) continue;
            const std::size_t p = entry.x.size() / 2;
            NearOptimalEntry out;
            out.betas.assign(entry.x.begin(), entry.x.begin() + p);
            out.gammas.assign(entry.x.begin() + p, entry.x.end());
            out.f = entry.f;
            kept.push_back(std::move(out));
        }
        return kept;
    }

private:
    struct Entry {
        std::vector<double> x;
        double f;
    };

    bool within_tol(const std::vector<double>& x, const NearOptimalEntry& e) const {
        const std::size_t p = e.betas.size();
        for (std::size_t i = 0; i < p; ++i) {
            if (std::abs(x[i] - e.betas[i]) >= dedup_tol_) return false;
            if (std::abs(x[p + i] - e.gammas[i]) >= dedup_tol_) return false;
        }
        return true;
    }

    void prune() {
        const double cutoff = (1.0 - threshold_) * best_;
        std::erase_if(entries_, [&](const Entry& e) { return e.f < cutoff; });
        last_prune_size_ = entries_.size();
    }

    double threshold_;
    double dedup_tol_;
    double best_ = -std::numeric_limits<double>::infinity();
    std::vector<Entry> entries_;
    std::size_t last_prune_size_ = 0;
};

nlohmann::ordered_json record_to_ordered_json(const ExperimentRecord& r) {
    nlohmann::ordered_json j;
    j["graph_id"] = r.graph_id;
    j["p"] = r.p;
    j["best_betas"] = r.best_betas;
    j["best_gammas"] = r.best_gammas;
    j["best_f"] = r.best_f;
    j["ground_truth"] = r.ground_truth;
    j["ratio"] = r.ratio;
    j["evaluations_used"] = r.evaluations_used;
    j["starts_completed"] = r.starts_completed;
    j["seed"] = r.seed;
    auto near = nlohmann::ordered_json::array();
    for (const auto& entry : r.near_optimal) {
        nlohmann::ordered_json e;
        e["betas"] = entry.betas;
        e["gammas"] = entry.gammas;
        e["f"] = entry.f;
        near.push_back(std::move(e));
    }
    j["near_optimal_params"] = std::move(near);
    return j;
}

ExperimentRecord record_from_parsed(const nlohmann::json& j) {
    ExperimentRecord r;
    r.graph_id = j.at("graph_id").get<std::string>();
    r.p = j.at("p").get<int>();
    r.best_betas = j.at("best_betas").get<std::vector<double>>();
    r.best_gammas = j.at("best_gammas").get<std::vector<double>>();
    r.best_f = j.at("best_f").get<double>();
    r.ground_truth = j.at("ground_truth").get<int>();
    r.ratio = j.at("ratio").get<double>();
    r.evaluations_used = j.at("evaluations_used").get<std::uint64_t>();
    r.starts_completed = j.at("starts_completed").get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    const auto depth = static_cast<std::size_t>(r.p);
    if (r.p < 1 || r.best_betas.size() != depth || r.best_gammas.size() != depth) {
        throw InputError("record JSON: angle vectors do not match depth");
    }
    for (const auto& e : j.at("near_optimal_params")) {
        NearOptimalEntry entry;
        entry.betas = e.at("betas").get<std::vector<double>>();
        entry.gammas = e.at("gammas").get<std::vector<double>>();
        entry.f = e.at("f").get<double>();
        if (entry.betas.size() != depth || entry.gammas.size() != depth) {
            throw InputError("record JSON: near-optimal entry does not match depth");
        }
        r.near_optimal.push_back(std::move(entry));
    }
    return r;
}

}  // namespace

std::string record_to_json(const ExperimentRecord& record) {
    return record_to_ordered_json(record).dump();
}

ExperimentRecord record_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) throw InputError("record JSON: parse failure");
    try {
        return record_from_parsed(j);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("record JSON: ") + e.what());
    }
}

ExperimentRecord run_single(const Graph& graph, int p, const RunSettings& settings,
                            const std::optional<QaoaParams>& padded_start) {
    const CutTable table = build_cut_table(graph);
    const CutResult ground = maxcut_bruteforce(graph);
    if (ground.max_value == 0) {
        throw DegenerateInstanceError("graph '" + graph.id +
                                      "' has max-cut 0; approximation ratio undefined");
    }

    Evaluator evaluator(table);
    NearOptimalCollector collector(settings.near_optimal_threshold, settings.xtol);
    const Objective objective = [&](std::span<const double> x) {
        const double f = evaluator.evaluate_flat(x);
        collector.offer(x, f);
        return -f;
    };

    MultistartOptions options;
    options.total_budget = settings.budget_for(p);
    options.seed = settings.task_seed(graph.id, p);
    options.ftol = settings.ftol;
    options.xtol = settings.xtol;
    if (padded_start) {
        if (padded_start->depth() != p) {
            throw InputError("run_single: padded start depth does not match p");
        }
        options.extra_starts.push_back(padded_start->to_flat());
    }

    const OptResult opt = multistart(objective, Bounds::qaoa_box(p), options);

    ExperimentRecord record;
    record.graph_id = graph.id;
    record.p = p;
    record.best_betas.assign(opt.best_point.begin(), opt.best_point.begin() + p);
    record.best_gammas.assign(opt.best_point.begin() + p, opt.best_point.end());
    record.best_f = -opt.best_value;
    record.ground_truth = ground.max_value;
    record.ratio = approximation_ratio(record.best_f, record.ground_truth);
    record.evaluations_used = opt.evaluations_used;
    record.starts_completed = opt.starts_completed;
    record.seed = options.seed;
    record.near_optimal = collector.finalize(record.best_f);
    return record;
}

struct JournalWriter::Impl {
    int fd = -1;
    std::mutex mutex;
};

JournalWriter::JournalWriter(const std::string& path) : impl_(new Impl), path_(path) {
    impl_->fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
    if (impl_->fd < 0) {
        const std::string message = std::strerror(errno);
        delete impl_;
        impl_ = nullptr;
        throw IoError("cannot open journal for append: " + path + ": " + message);
    }
}

JournalWriter::~JournalWriter() {
    if (impl_ != nullptr) {
        if (impl_->fd >= 0) ::close(impl_->fd);
        delete impl_;
    }
}

void JournalWriter::append(const ExperimentRecord& record) {
    const std::string line = record_to_json(record) + "\n";
    std::lock_guard<std::mutex> lock(impl_->mutex);
    const char* data = line.data();
    std::size_t left = line.size();
    while (left > 0) {
        const ssize_t written = ::write(impl_->fd, data, left);
        if (written < 0) {
            if (errno == EINTR) continue;
            throw IoError("failed writing journal record: " + path_ + ": " +
                          std::strerror(errno));
        }
        data += written;
        left -= static_cast<std::size_t>(written);
    }
    if (::fsync(impl_->fd) != 0) {
        throw IoError("failed syncing journal: " + path_ + ": " + std::strerror(errno));
    }
}

namespace {

// Parses the journal and reports the byte length of the valid prefix (the
// end of the last record that parsed, newline included). A torn or
// malformed final line is dropped; corruption with records after it throws.
std::vector<ExperimentRecord> parse_journal(const std::string& path, std::size_t* valid_bytes) {
    if (valid_bytes) *valid_bytes = 0;
    std::ifstream in(path, std::ios::binary);
    if (!in) return {};  // no journal yet: nothing completed

    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string content = buffer.str();

    std::vector<ExperimentRecord> records;
    std::size_t position = 0;
    std::size_t line_number = 0;
    while (position < content.size()) {
        ++line_number;
        const std::size_t newline = content.find('\n', position);
        if (newline == std::string::npos) break;  // torn final line, no newline
        const std::string line = content.substr(position, newline - position);
        const std::size_t next = newline + 1;
        bool ok = false;
        if (!line.empty()) {
            try {
                records.push_back(record_from_json(line));
                ok = true;
            } catch (const InputError&) {
            }
        }
        if (!ok) {
            // Tolerated only as the final line of the file.
            if (next >= content.size()) break;
            throw JournalError("journal " + path + " is corrupt at line " +
                                   std::to_string(line_number) + "; first " +
                                   std::to_string(records.size()) + " records are salvageable",
                               records.size());
        }
        if (valid_bytes) *valid_bytes = next;
        position = next;
    }
    return records;
}

}  // namespace

std::vector<ExperimentRecord> read_journal(const std::string& path) {
    return parse_journal(path, nullptr);
}

std::vector<TaskKey> resume_work_set(const std::vector<Graph>& manifest,
                                     const std::vector<int>& depths,
                                     const std::vector<ExperimentRecord>& completed) {
    std::set<std::pair<std::string, int>> done;
    for (const auto& record : completed) done.insert({record.graph_id, record.p});

    std::vector<int> sorted_depths = depths;
    std::sort(sorted_depths.begin(), sorted_depths.end());

    std::vector<TaskKey> work;
    for (const auto& graph : manifest) {
        for (int p : sorted_depths) {
            if (!done.contains({graph.id, p})) work.push_back({graph.id, p});
        }
    }
    return work;
}

namespace {

// Zero-pad the best parameters of the deepest completed shallower depth; a
// (gamma, beta) = (0, 0) step is the identity, so the padded start evaluates
// to exactly the shallower optimum.
std::optional<QaoaParams> padded_start_for(const std::map<int, ExperimentRecord>& by_depth, int p) {
    const ExperimentRecord* source = nullptr;
    for (const auto& [depth, record] : by_depth) {
        if (depth < p) source = &record;
    }
    if (source == nullptr) return std::nullopt;
    std::vector<double> betas = source->best_betas;
    std::vector<double> gammas = source->best_gammas;
    betas.resize(static_cast<std::size_t>(p), 0.0);
    gammas.resize(static_cast<std::size_t>(p), 0.0);
    return QaoaParams(std::move(betas), std::move(gammas));
}

}  // namespace

void run_experiment(const std::vector<Graph>& manifest, const RunSettings& settings,
                    const std::string& journal_path, const ProgressFn& progress,
                    const TaskErrorFn& on_error) {
    std::size_t valid_bytes = 0;
    const std::vector<ExperimentRecord> completed = parse_journal(journal_path, &valid_bytes);

    // Drop any torn final line before appending, so the first new record
    // does not land on the same line as the fragment.
    std::error_code size_ec;
    const auto journal_size = std::filesystem::file_size(journal_path, size_ec);
    if (!size_ec && journal_size > valid_bytes) {
        if (::truncate(journal_path.c_str(), static_cast<off_t>(valid_bytes)) != 0) {
            throw IoError("cannot truncate torn journal line: " + journal_path + ": " +
                          std::strerror(errno));
        }
    }

    std::vector<int> depths = settings.depths;
    std::sort(depths.begin(), depths.end());

    std::set<std::pair<std::string, int>> done_keys;
    for (const auto& record : completed) done_keys.insert({record.graph_id, record.p});

    // Per-graph chains: depths ascend within a graph so padded starts can
    // see the previous depth; distinct graphs are independent tasks.
    struct Chain {
        const Graph* graph;
        std::map<int, ExperimentRecord> by_depth;  // completed so far
        std::vector<int> pending;
    };
    std::vector<Chain> chains;
    std::size_t total = 0;
    std::size_t already_done = 0;
    for (const auto& graph : manifest) {
        Chain chain;
        chain.graph = &graph;
        for (const auto& record : completed) {
            if (record.graph_id == graph.id) chain.by_depth[record.p] = record;
        }
        for (int p : depths) {
            ++total;
            if (done_keys.contains({graph.id, p})) {
                ++already_done;
            } else {
                chain.pending.push_back(p);
            }
        }
        if (!chain.pending.empty()) chains.push_back(std::move(chain));
    }

    JournalWriter writer(journal_path);

    std::atomic<std::size_t> next_chain{0};
    std::atomic<std::size_t> done{already_done};
    std::mutex report_mutex;
    std::exception_ptr fatal;
    std::mutex fatal_mutex;

    auto worker = [&] {
        while (true) {
            {
                std::lock_guard<std::mutex> lock(fatal_mutex);
                if (fatal) return;
            }
            const std::size_t index = next_chain.fetch_add(1);
            if (index >= chains.size()) return;
            Chain& chain = chains[index];
            for (int p : chain.pending) {
                const TaskKey key{chain.graph->id, p};
                try {
                    std::optional<QaoaParams> padded;
                    if (settings.padded_starts) padded = padded_start_for(chain.by_depth, p);
                    ExperimentRecord record = run_single(*chain.graph, p, settings, padded);
                    writer.append(record);
                    const std::size_t now_done = done.fetch_add(1) + 1;
                    if (progress) {
                        std::lock_guard<std::mutex> lock(report_mutex);
                        progress(record, now_done, total);
                    }
                    chain.by_depth[p] = std::move(record);
                } catch (const IoError&) {
                    std::lock_guard<std::mutex> lock(fatal_mutex);
                    if (!fatal) fatal = std::current_exception();
                    return;
                } catch (const std::exception& e) {
                    if (on_error) {
                        std::lock_guard<std::mutex> lock(report_mutex);
                        on_error(key, e.what());
                    }
                }
            }
        }
    };

    const int worker_count = std::max(1, settings.workers);
    if (worker_count == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(worker_count));
        for (int i = 0; i < worker_count; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    if (fatal) std::rethrow_exception(fatal);
}

}  // namespace qaoabench
