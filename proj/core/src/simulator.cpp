#include "qaoabench/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qaoabench/errors.hpp"

namespace qaoabench {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double x, double period) {
    double w = x - period * std::floor(x / period);
    if (w >= period) w = 0.0;  // x a hair below a period multiple
    return w;
}

void check_dimensions(const Statevector& state, const CutTable& table) {
    if (state.n != table.n) {
        throw InputError("statevector has " + std::to_string(state.n) + " qubits but cut table " +
                         std::to_string(table.n));
    }
}

}  // namespace

CutTable build_cut_table(const Graph& g, int max_qubits) {
    // Above 30 qubits the table alone exceeds 2 GB; refuse regardless of
    // the caller's capacity setting.
    if (g.n > std::min(max_qubits, 30)) {
        throw CapacityError("build_cut_table: " + std::to_string(g.n) +
                            " qubits exceeds the simulator capacity of " +
                            std::to_string(std::min(max_qubits, 30)));
    }
    CutTable table;
    table.n = g.n;
    const std::size_t dim = 1ull << g.n;
    table.values.assign(dim, 0);
    // One branch-free pass per edge; bit u differs from bit v exactly on the
    // assignments that cut (u, v).
    for (auto [u, v] : g.edges) {
        const auto su = static_cast<unsigned>(u);
        const auto sv = static_cast<unsigned>(v);
        std::uint16_t* values = table.values.data();
        for (std::size_t z = 0; z < dim; ++z) {
            values[z] = static_cast<std::uint16_t>(values[z] + (((z >> su) ^ (z >> sv)) & 1ull));
        }
    }
    table.max_value = table.values.empty()
                          ? 0
                          : *std::max_element(table.values.begin(), table.values.end());
    return table;
}

double norm_squared(const Statevector& state) {
    double total = 0.0;
    for (const auto& amp : state.amplitudes) total += std::norm(amp);
    return total;
}

Statevector prepare_plus_state(int n) {
    if (n < 1) throw InputError("prepare_plus_state: qubit count must be positive");
    Statevector state;
    state.n = n;
    const std::size_t dim = 1ull << n;
    state.amplitudes.assign(dim, std::complex<double>(std::pow(2.0, -0.5 * n), 0.0));
    return state;
}

void apply_phase(Statevector& state, const CutTable& table, double gamma) {
    check_dimensions(state, table);
    // Cut values are small integers; precompute one phase factor per value
    // so the sweep is a table lookup and a complex multiply.
    const int count = table.max_value + 1;
    std::vector<std::complex<double>> phase(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        phase[static_cast<std::size_t>(k)] = {std::cos(gamma * k), -std::sin(gamma * k)};
    }
    const std::size_t dim = state.amplitudes.size();
    for (std::size_t z = 0; z < dim; ++z) {
        state.amplitudes[z] *= phase[table.values[z]];
    }
}

void apply_mixer(Statevector& state, double beta) {
    const double c = std::cos(beta);
    const double s = std::sin(beta);
    const std::size_t dim = state.amplitudes.size();
    std::complex<double>* amp = state.amplitudes.data();
    for (int q = 0; q < state.n; ++q) {
        const std::size_t stride = 1ull << q;
        for (std::size_t base = 0; base < dim; base += 2 * stride) {
            for (std::size_t offset = 0; offset < stride; ++offset) {
                std::complex<double>& a = amp[base + offset];
                std::complex<double>& b = amp[base + offset + stride];
                const double ar = a.real(), ai = a.imag();
                const double br = b.real(), bi = b.imag();
                // (a, b) <- ([c, -is; -is, c]) (a, b)
                a = {c * ar + s * bi, c * ai - s * br};
                b = {s * ai + c * br, c * bi - s * ar};
            }
        }
    }
}

QaoaParams::QaoaParams(std::vector<double> betas, std::vector<double> gammas)
    : betas_(std::move(betas)), gammas_(std::move(gammas)) {
    if (betas_.empty() || betas_.size() != gammas_.size()) {
        throw InputError("QaoaParams: betas and gammas must be non-empty and equally long");
    }
    for (double& b : betas_) b = wrap_angle(b, kPi);
    for (double& g : gammas_) g = wrap_angle(g, 2.0 * kPi);
}

QaoaParams QaoaParams::from_flat(std::span<const double> x) {
    if (x.empty() || x.size() % 2 != 0) {
        throw InputError("QaoaParams::from_flat: expected an even, positive length");
    }
    const std::size_t p = x.size() / 2;
    return QaoaParams(std::vector<double>(x.begin(), x.begin() + p),
                      std::vector<double>(x.begin() + p, x.end()));
}

std::vector<double> QaoaParams::to_flat() const {
    std::vector<double> flat;
    flat.reserve(betas_.size() * 2);
    flat.insert(flat.end(), betas_.begin(), betas_.end());
    flat.insert(flat.end(), gammas_.begin(), gammas_.end());
    return flat;
}

Statevector qaoa_state(const CutTable& table, std::span<const double> betas,
                       std::span<const double> gammas) {
    if (betas.size() != gammas.size() || betas.empty()) {
        throw InputError("qaoa_state: betas and gammas must be non-empty and equally long");
    }
    Statevector state = prepare_plus_state(table.n);
    for (std::size_t k = 0; k < betas.size(); ++k) {
        apply_phase(state, table, gammas[k]);
        apply_mixer(state, betas[k]);
    }
    return state;
}

Statevector qaoa_state(const CutTable& table, const QaoaParams& params) {
    return qaoa_state(table, params.betas(), params.gammas());
}

double expectation(const CutTable& table, std::span<const double> betas,
                   std::span<const double> gammas) {
    Evaluator evaluator(table);
    return evaluator.evaluate(betas, gammas);
}

double expectation(const CutTable& table, const QaoaParams& params) {
    return expectation(table, params.betas(), params.gammas());
}

Evaluator::Evaluator(const CutTable& table) : table_(&table) {
    state_.n = table.n;
    state_.amplitudes.resize(1ull << table.n);
    phase_.resize(static_cast<std::size_t>(table.max_value) + 1);
}

double Evaluator::evaluate(std::span<const double> betas, std::span<const double> gammas) {
    if (betas.size() != gammas.size() || betas.empty()) {
        throw InputError("Evaluator: betas and gammas must be non-empty and equally long");
    }
    const std::size_t dim = state_.amplitudes.size();
    std::complex<double>* amp = state_.amplitudes.data();
    const std::uint16_t* values = table_->values.data();

    const double init = std::pow(2.0, -0.5 * table_->n);
    for (std::size_t z = 0; z < dim; ++z) amp[z] = {init, 0.0};

    for (std::size_t k = 0; k < betas.size(); ++k) {
        const double gamma = gammas[k];
        for (std::size_t v = 0; v < phase_.size(); ++v) {
            const double angle = gamma * static_cast<double>(v);
            phase_[v] = {std::cos(angle), -std::sin(angle)};
        }
        for (std::size_t z = 0; z < dim; ++z) amp[z] *= phase_[values[z]];
        apply_mixer(state_, betas[k]);
    }

    double energy = 0.0;
    for (std::size_t z = 0; z < dim; ++z) {
        energy += std::norm(amp[z]) * static_cast<double>(values[z]);
    }
    return energy;
}

double Evaluator::evaluate_flat(std::span<const double> x) {
    if (x.empty() || x.size() % 2 != 0) {
        throw InputError("Evaluator: flat parameter vector must have even, positive length");
    }
    const std::size_t p = x.size() / 2;
    return evaluate(x.first(p), x.subspan(p));
}

}  // namespace qaoabench
