// Independent reference implementations used only to check the production
// code. Nothing here may call into the fast simulator kernels or the
// branch-and-bound edit distance.
#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qaoabench/graph.hpp"
#include "qaoabench/simulator.hpp"

namespace oracle {

// Plain per-edge loop over an explicit assignment.
int naive_cut(const qaoabench::Graph& g, std::uint64_t mask);

// Full scan of all 2^n assignments via naive_cut.
int naive_maxcut(const qaoabench::Graph& g);

// Exact edit distance by enumerating every vertex bijection (smaller graph
// padded with isolated vertices). Feasible to about 8 padded vertices.
int ged_bruteforce(const qaoabench::Graph& g1, const qaoabench::Graph& g2);

// Dense-matrix QAOA simulator. Operators are explicit 2^n x 2^n matrices:
// the phase operator is diagonal in the computational basis, the mixer
// exponential is assembled from its spectral decomposition in the Hadamard
// basis (eigenvalue n - 2 popcount(z)).
std::vector<std::complex<double>> dense_qaoa_state(const qaoabench::Graph& g,
                                                   const std::vector<double>& betas,
                                                   const std::vector<double>& gammas);

double dense_expectation(const qaoabench::Graph& g, const std::vector<double>& betas,
                         const std::vector<double>& gammas);

struct GridResult {
    double best_f = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
};

// Exhaustive p=1 grid over [0,pi] x [0,2pi] with nb x ng inclusive points.
GridResult grid_search_p1(const qaoabench::CutTable& table, int nb, int ng);

}  // namespace oracle
