#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qaoabench {

// Undirected simple graph with generation metadata. The edge list is kept
// canonical (each pair with u < v, list sorted ascending) so equal graphs
// serialize identically.
struct Graph {
    std::string id;
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    std::optional<double> edge_probability;  // e_p used at generation time
    std::optional<std::uint64_t> seed;       // RNG seed used at generation time

    int edge_count() const noexcept { return static_cast<int>(edges.size()); }
};

// Canonicalizes and validates: orders each pair, sorts the list, rejects
// self-loops, duplicates and out-of-range endpoints.
Graph make_graph(std::string id, int n, std::vector<std::pair<int, int>> edges,
                 std::optional<double> edge_probability = std::nullopt,
                 std::optional<std::uint64_t> seed = std::nullopt);

// Seeded Erdos-Renyi G(n, e_p). Pairs (u, v) with u < v are visited in
// lexicographic order and each is included independently when a xoshiro256++
// draw in [0,1) falls below e_p, so the same (n, e_p, seed) always yields
// the same graph.
Graph generate_er(int n, double e_p, std::uint64_t seed);

// Returns a copy of g with vertex u renamed to permutation[u].
Graph relabel(const Graph& g, std::span<const int> permutation, std::string new_id);

// Partition assignments come in two equivalent forms: a bitmask, where
// vertex i is bit i (little-endian), and a string, where the character at
// position i belongs to vertex i. "100" on 3 vertices is the mask 0b001.
std::uint64_t mask_from_bitstring(std::string_view s);
std::string bitstring_from_mask(std::uint64_t mask, int n);

// Number of edges whose endpoints fall on opposite sides of the partition.
int cut_value(const Graph& g, std::uint64_t assignment);
int cut_value(const Graph& g, std::string_view assignment);

struct CutResult {
    int max_value = 0;
    // Every optimal assignment, as bitstrings, ordered by ascending mask.
    // Closed under global bit-flip.
    std::vector<std::string> maximizers;
};

// Exhaustive max-cut. Scans half the assignment space (global bit-flip
// symmetry) with Gray-code incremental cut updates. Throws CapacityError
// when g.n exceeds max_vertices.
CutResult maxcut_bruteforce(const Graph& g, int max_vertices = 26);

// JSON serialization. A graph is {"id", "n", "edges": [[u,v],...], "e_p",
// "seed"} with canonical edge ordering; optional metadata is omitted when
// absent. A manifest is a JSON array of such objects.
std::string graph_to_json(const Graph& g);
Graph graph_from_json(const std::string& text);
std::string manifest_to_json(const std::vector<Graph>& graphs);
std::vector<Graph> manifest_from_json(const std::string& text);

void write_manifest(const std::vector<Graph>& graphs, const std::string& path);
std::vector<Graph> read_manifest(const std::string& path);

}  // namespace qaoabench
