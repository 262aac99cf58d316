#include "qaoabench/ged.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <vector>

#include "qaoabench/errors.hpp"

namespace qaoabench {

namespace {

// Bitmask adjacency, padded with isolated vertices up to n.
struct DenseGraph {
    int n = 0;
    int edge_total = 0;
    std::vector<std::uint64_t> adj;

    explicit DenseGraph(const Graph& g, int padded_n) : n(padded_n), adj(padded_n, 0) {
        for (auto [u, v] : g.edges) {
            adj[u] |= 1ull << v;
            adj[v] |= 1ull << u;
        }
        edge_total = g.edge_count();
    }
};

class EditSearch {
public:
    EditSearch(const DenseGraph& a, const DenseGraph& b) : a_(a), b_(b), n_(a.n) {
        mapping_.assign(n_, -1);
        // Branch on high-degree vertices first; their placement constrains
        // the most edges.
        order_.resize(n_);
        std::iota(order_.begin(), order_.end(), 0);
        std::stable_sort(order_.begin(), order_.end(), [&](int u, int v) {
            return std::popcount(a_.adj[u]) > std::popcount(a_.adj[v]);
        });
        best_ = a_.edge_total + b_.edge_total + 1;
    }

    int run() {
        descend(0, 0);
        return best_;
    }

private:
    // Admissible lower bound on the edit cost of completing a partial
    // assignment. Unmatched pairs split into cross edges (one endpoint
    // assigned) and future edges (neither assigned):
    //   - each unassigned u must map its c1(u) edges into the assigned
    //     region onto some unused t with c2(t) such edges, costing at least
    //     |c1(u) - c2(t)|; matching sorted sequences minimizes that sum;
    //   - edges fully inside the unassigned regions mismatch by at least
    //     the difference of their counts.
    int lower_bound() const {
        const std::uint64_t unassigned1 = ~assigned1_ & full_mask();
        const std::uint64_t unused2 = ~used2_ & full_mask();

        int m1 = 0;
        int m2 = 0;
        c1_.clear();
        c2_.clear();
        for (int u = 0; u < n_; ++u) {
            if ((unassigned1 >> u) & 1ull) {
                c1_.push_back(std::popcount(a_.adj[u] & assigned1_));
                m1 += std::popcount(a_.adj[u] & unassigned1);
            }
            if ((unused2 >> u) & 1ull) {
                c2_.push_back(std::popcount(b_.adj[u] & used2_));
                m2 += std::popcount(b_.adj[u] & unused2);
            }
        }
        std::sort(c1_.begin(), c1_.end());
        std::sort(c2_.begin(), c2_.end());
        int cross = 0;
        for (std::size_t i = 0; i < c1_.size(); ++i) cross += std::abs(c1_[i] - c2_[i]);
        return cross + std::abs(m1 / 2 - m2 / 2);
    }

    void descend(int level, int cost) {
        if (cost >= best_) return;
        if (level == n_) {
            best_ = cost;
            return;
        }
        if (cost + lower_bound() >= best_) return;

        const int u = order_[level];

        // Images of u's already-assigned neighbors, as a G2 bitmask.
        std::uint64_t mapped_neighbors = 0;
        std::uint64_t na = a_.adj[u] & assigned1_;
        while (na) {
            const int j = std::countr_zero(na);
            na &= na - 1;
            mapped_neighbors |= 1ull << mapping_[j];
        }

        // Candidate targets ordered by immediate mismatch, ties by index,
        // so the first descent doubles as a greedy incumbent.
        std::vector<std::pair<int, int>> candidates;
        candidates.reserve(static_cast<std::size_t>(n_ - level));
        for (int t = 0; t < n_; ++t) {
            if ((used2_ >> t) & 1ull) continue;
            const int delta = std::popcount(mapped_neighbors ^ (b_.adj[t] & used2_));
            candidates.emplace_back(delta, t);
        }
        std::sort(candidates.begin(), candidates.end());

        for (auto [delta, t] : candidates) {
            mapping_[u] = t;
            assigned1_ |= 1ull << u;
            used2_ |= 1ull << t;
            descend(level + 1, cost + delta);
            assigned1_ &= ~(1ull << u);
            used2_ &= ~(1ull << t);
            mapping_[u] = -1;
        }
    }

    std::uint64_t full_mask() const { return (n_ == 64) ? ~0ull : ((1ull << n_) - 1); }

    const DenseGraph& a_;
    const DenseGraph& b_;
    int n_;
    std::vector<int> order_;
    std::vector<int> mapping_;
    std::uint64_t assigned1_ = 0;
    std::uint64_t used2_ = 0;
    int best_;
    mutable std::vector<int> c1_, c2_;
};

}  // namespace

int graph_edit_distance(const Graph& g1, const Graph& g2, int max_vertices) {
    // Adjacency is held in 64-bit masks; 64 is a hard cap on top of the
    // caller's (much smaller) exact-search bound.
    const int bound = std::min(max_vertices, 64);
    if (g1.n > bound || g2.n > bound) {
        throw CapacityError("graph_edit_distance: exact search is bounded at " +
                            std::to_string(bound) + " vertices (got " + std::to_string(g1.n) +
                            " and " + std::to_string(g2.n) + ")");
    }
    const int padded = std::max(g1.n, g2.n);
    const int node_cost = std::abs(g1.n - g2.n);

    DenseGraph a(g1, padded);
    DenseGraph b(g2, padded);
    // Branch from the denser side; the search is exact either way.
    if (a.edge_total < b.edge_total) std::swap(a, b);

    EditSearch search(a, b);
    return node_cost + search.run();
}

}  // namespace qaoabench
