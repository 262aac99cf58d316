#include "qaoabench/graph.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "qaoabench/errors.hpp"
#include "qaoabench/rng.hpp"

namespace qaoabench {

namespace {

void check_vertex(int v, int n, const std::string& id) {
    if (v < 0 || v >= n) {
        throw InputError("graph '" + id + "': vertex " + std::to_string(v) +
                         " out of range [0, " + std::to_string(n) + ")");
    }
}

}  // namespace

Graph make_graph(std::string id, int n, std::vector<std::pair<int, int>> edges,
                 std::optional<double> edge_probability, std::optional<std::uint64_t> seed) {
    if (n < 1) throw InputError("graph '" + id + "': vertex count must be positive");
    for (auto& [u, v] : edges) {
        check_vertex(u, n, id);
        check_vertex(v, n, id);
        if (u == v) {
            throw InputError("graph '" + id + "': self-loop at vertex " + std::to_string(u));
        }
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
        throw InputError("graph '" + id + "': duplicate edge");
    }
    Graph g;
    g.id = std::move(id);
    g.n = n;
    g.edges = std::move(edges);
    g.edge_probability = edge_probability;
    g.seed = seed;
    return g;
}

Graph generate_er(int n, double e_p, std::uint64_t seed) {
    if (n < 1) throw InputError("generate_er: vertex count must be positive");
    if (!(e_p >= 0.0 && e_p <= 1.0)) {
        throw InputError("generate_er: e_p must lie in [0, 1]");
    }
    Xoshiro256pp rng(seed);
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n - 1; ++u) {
        for (int v = u + 1; v < n; ++v) {
            // uniform() < 1.0 always and >= 0.0 always, so e_p = 0 and
            // e_p = 1 give the empty and complete graph.
            if (rng.uniform() < e_p) edges.emplace_back(u, v);
        }
    }
    std::ostringstream id;
    id << "er_n" << n << "_s" << seed;
    Graph g = make_graph(id.str(), n, std::move(edges), e_p, seed);
    return g;
}

Graph relabel(const Graph& g, std::span<const int> permutation, std::string new_id) {
    if (static_cast<int>(permutation.size()) != g.n) {
        throw InputError("relabel: permutation size does not match vertex count");
    }
    std::vector<bool> seen(g.n, false);
    for (int v : permutation) {
        check_vertex(v, g.n, new_id);
        if (seen[v]) throw InputError("relabel: permutation repeats vertex " + std::to_string(v));
        seen[v] = true;
    }
    std::vector<std::pair<int, int>> edges;
    edges.reserve(g.edges.size());
    for (auto [u, v] : g.edges) edges.emplace_back(permutation[u], permutation[v]);
    return make_graph(std::move(new_id), g.n, std::move(edges), g.edge_probability, g.seed);
}

std::uint64_t mask_from_bitstring(std::string_view s) {
    if (s.size() > 64) throw InputError("bitstring longer than 64 characters");
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1') {
            mask |= (1ull << i);
        } else if (s[i] != '0') {
            throw InputError("bitstring may contain only '0' and '1'");
        }
    }
    return mask;
}

std::string bitstring_from_mask(std::uint64_t mask, int n) {
    if (n < 0 || n > 64) throw InputError("bitstring_from_mask: n must lie in [0, 64]");
    std::string s(static_cast<std::size_t>(n), '0');
    for (int i = 0; i < n; ++i) {
        if ((mask >> i) & 1ull) s[static_cast<std::size_t>(i)] = '1';
    }
    return s;
}

int cut_value(const Graph& g, std::uint64_t assignment) {
    if (g.n > 64) throw CapacityError("cut_value: masks cover at most 64 vertices");
    int cut = 0;
    for (auto [u, v] : g.edges) {
        cut += static_cast<int>(((assignment >> u) ^ (assignment >> v)) & 1ull);
    }
    return cut;
}

int cut_value(const Graph& g, std::string_view assignment) {
    if (static_cast<int>(assignment.size()) != g.n) {
        throw InputError("cut_value: assignment length " + std::to_string(assignment.size()) +
                         " does not match vertex count " + std::to_string(g.n));
    }
    return cut_value(g, mask_from_bitstring(assignment));
}

CutResult maxcut_bruteforce(const Graph& g, int max_vertices) {
    // 32 is a hard cap for the 64-bit mask enumeration regardless of the
    // caller's bound; beyond it the scan is hopeless anyway.
    if (g.n > std::min(max_vertices, 32)) {
        throw CapacityError("maxcut_bruteforce: " + std::to_string(g.n) +
                            " vertices exceeds the enumeration bound of " +
                            std::to_string(std::min(max_vertices, 32)));
    }

    std::vector<std::vector<int>> adjacency(g.n);
    for (auto [u, v] : g.edges) {
        adjacency[u].push_back(v);
        adjacency[v].push_back(u);
    }

    // Walk assignments with vertex n-1 fixed to side 0 (the complement of a
    // cut is the same cut) in Gray-code order; flipping one vertex changes
    // the cut by +1 per neighbor on the same side, -1 per neighbor opposite.
    const int half_bits = g.n - 1;
    const std::uint64_t half_count = 1ull << half_bits;
    std::uint64_t sides = 0;  // current assignment (bit i = side of vertex i)
    int cut = 0;
    int best = 0;
    std::vector<std::uint64_t> best_masks{0};

    for (std::uint64_t counter = 1; counter < half_count; ++counter) {
        const int flip = std::countr_zero(counter);  // Gray-code bit to toggle
        int delta = 0;
        const std::uint64_t flip_side = (sides >> flip) & 1ull;
        for (int neighbor : adjacency[flip]) {
            delta += (((sides >> neighbor) & 1ull) == flip_side) ? 1 : -1;
        }
        sides ^= (1ull << flip);
        cut += delta;
        if (cut > best) {
            best = cut;
            best_masks.clear();
            best_masks.push_back(sides);
        } else if (cut == best) {
            best_masks.push_back(sides);
        }
    }

    const std::uint64_t full = (g.n == 64) ? ~0ull : ((1ull << g.n) - 1);
    std::vector<std::uint64_t> all_masks;
    all_masks.reserve(best_masks.size() * 2);
    for (std::uint64_t m : best_masks) {
        all_masks.push_back(m);
        all_masks.push_back(m ^ full);
    }
    std::sort(all_masks.begin(), all_masks.end());

    CutResult result;
    result.max_value = best;
    result.maximizers.reserve(all_masks.size());
    for (std::uint64_t m : all_masks) result.maximizers.push_back(bitstring_from_mask(m, g.n));
    return result;
}

namespace {

nlohmann::ordered_json graph_to_ordered_json(const Graph& g) {
    nlohmann::ordered_json j;
    j["id"] = g.id;
    j["n"] = g.n;
    auto edges = nlohmann::ordered_json::array();
    for (auto [u, v] : g.edges) edges.push_back({u, v});
    j["edges"] = std::move(edges);
    if (g.edge_probability) j["e_p"] = *g.edge_probability;
    if (g.seed) j["seed"] = *g.seed;
    return j;
}

Graph graph_from_parsed(const nlohmann::json& j) {
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw InputError("graph JSON: malformed edge entry");
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    std::optional<double> e_p;
    if (j.contains("e_p") && !j["e_p"].is_null()) e_p = j["e_p"].get<double>();
    std::optional<std::uint64_t> seed;
    if (j.contains("seed") && !j["seed"].is_null()) seed = j["seed"].get<std::uint64_t>();
    return make_graph(j.at("id").get<std::string>(), j.at("n").get<int>(), std::move(edges), e_p,
                      seed);
}

}  // namespace

std::string graph_to_json(const Graph& g) { return graph_to_ordered_json(g).dump(); }

Graph graph_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) throw InputError("graph JSON: parse failure");
    try {
        return graph_from_parsed(j);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("graph JSON: ") + e.what());
    }
}

std::string manifest_to_json(const std::vector<Graph>& graphs) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& g : graphs) j.push_back(graph_to_ordered_json(g));
    return j.dump(2) + "\n";
}

std::vector<Graph> manifest_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_array()) throw InputError("manifest JSON: expected an array");
    std::vector<Graph> graphs;
    graphs.reserve(j.size());
    try {
        for (const auto& item : j) graphs.push_back(graph_from_parsed(item));
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("manifest JSON: ") + e.what());
    }
    return graphs;
}

void write_manifest(const std::vector<Graph>& graphs, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open manifest for writing: " + path);
    out << manifest_to_json(graphs);
    if (!out.good()) throw IoError("failed writing manifest: " + path);
}

std::vector<Graph> read_manifest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open manifest: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return manifest_from_json(buffer.str());
}

}  // namespace qaoabench
