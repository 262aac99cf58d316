#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qaoabench/graph.hpp"

namespace qaoabench {

// Diagonal of the cut-count observable: values[z] is the cut value of the
// assignment z, with qubit i <-> bit i of z (little-endian, matching the
// bitstring convention in graph.hpp).
struct CutTable {
    int n = 0;
    std::vector<std::uint16_t> values;  // 2^n entries
    int max_value = 0;                  // max(values), the exact max-cut
};

// Builds the table with one branch-free pass per edge. Throws CapacityError
// when g.n exceeds max_qubits.
CutTable build_cut_table(const Graph& g, int max_qubits = 24);

// 2^n complex amplitudes, unit norm after every ansatz operation.
struct Statevector {
    int n = 0;
    std::vector<std::complex<double>> amplitudes;
};

double norm_squared(const Statevector& state);

// Uniform superposition: every amplitude 2^(-n/2), real.
Statevector prepare_plus_state(int n);

// In-place diagonal multiply: amplitude[z] *= exp(-i * gamma * values[z]).
void apply_phase(Statevector& state, const CutTable& table, double gamma);

// In-place exp(-i * beta * X) on every qubit: each amplitude pair differing
// in one bit is rotated by [cos b, -i sin b; -i sin b, cos b], swept qubit
// by qubit with stride-2^i pair indexing.
void apply_mixer(Statevector& state, double beta);

// Depth-p angle vectors, betas in [0, pi], gammas in [0, 2pi]; angles are
// wrapped into the box on construction (f is pi-periodic in each beta and
// 2pi-periodic in each gamma for integer-valued cut tables).
class QaoaParams {
public:
    QaoaParams(std::vector<double> betas, std::vector<double> gammas);

    // Splits a flat (beta_1..beta_p, gamma_1..gamma_p) vector.
    static QaoaParams from_flat(std::span<const double> x);

    int depth() const noexcept { return static_cast<int>(betas_.size()); }
    const std::vector<double>& betas() const noexcept { return betas_; }
    const std::vector<double>& gammas() const noexcept { return gammas_; }
    std::vector<double> to_flat() const;

private:
    std::vector<double> betas_;
    std::vector<double> gammas_;
};

// Ansatz state: plus state, then alternately apply_phase(gamma_k) and
// apply_mixer(beta_k) for k = 1..p. The span overloads use the angles
// exactly as given (no wrapping).
Statevector qaoa_state(const CutTable& table, std::span<const double> betas,
                       std::span<const double> gammas);
Statevector qaoa_state(const CutTable& table, const QaoaParams& params);

// Objective f(beta, gamma) = sum_z |amplitude[z]|^2 * values[z], a real in
// [0, max_value].
double expectation(const CutTable& table, std::span<const double> betas,
                   std::span<const double> gammas);
double expectation(const CutTable& table, const QaoaParams& params);

// Reusable evaluator owning scratch buffers so repeated evaluations do not
// allocate. The CutTable is shared and immutable; use one Evaluator per
// worker. This is the throughput-critical path, sized for millions of calls.
class Evaluator {
public:
    explicit Evaluator(const CutTable& table);

    double evaluate(std::span<const double> betas, std::span<const double> gammas);

    // Flat layout (beta_1..beta_p, gamma_1..gamma_p); x.size() must be even.
    double evaluate_flat(std::span<const double> x);

private:
    const CutTable* table_;
    Statevector state_;
    std::vector<std::complex<double>> phase_;  // per-cut-count factors
};

}  // namespace qaoabench
