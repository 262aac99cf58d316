#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"

#include "oracles.hpp"
#include "qaoabench/errors.hpp"
#include "qaoabench/graph.hpp"
#include "qaoabench/rng.hpp"
#include "qaoabench/simulator.hpp"

using namespace qaoabench;

namespace {

constexpr double kPi = std::numbers::pi;

Graph single_edge() { return make_graph("k2", 2, {{0, 1}}); }

Graph triangle() { return make_graph("k3", 3, {{0, 1}, {1, 2}, {0, 2}}); }

Graph cycle5() { return make_graph("c5", 5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}); }

std::vector<double> random_angles(Xoshiro256pp& rng, int count, double period) {
    std::vector<double> angles(count);
    for (double& a : angles) a = rng.uniform(0.0, period);
    return angles;
}

double max_amplitude_error(const Statevector& state, const std::vector<std::complex<double>>& ref) {
    double worst = 0.0;
    for (std::size_t z = 0; z < ref.size(); ++z) {
        worst = std::max(worst, std::abs(state.amplitudes[z] - ref[z]));
    }
    return worst;
}

}  // namespace

TEST_SUITE_BEGIN("simulator");

TEST_CASE("cut table for hand-checked graphs") {
    const CutTable k2 = build_cut_table(single_edge());
    CHECK(k2.values == std::vector<std::uint16_t>{0, 1, 1, 0});
    CHECK(k2.max_value == 1);

    const CutTable k3 = build_cut_table(triangle());
    CHECK(k3.values == std::vector<std::uint16_t>{0, 2, 2, 2, 2, 2, 2, 0});

    const CutTable c5 = build_cut_table(cycle5());
    CHECK(c5.max_value == 4);
    CHECK(c5.max_value == maxcut_bruteforce(cycle5()).max_value);
}

TEST_CASE("cut table matches per-bitstring evaluation") {
    Xoshiro256pp rng(555);
    for (int trial = 0; trial < 8; ++trial) {
        const Graph g = generate_er(8, 0.5, rng.next());
        const CutTable table = build_cut_table(g);
        REQUIRE(table.values.size() == (1ull << g.n));
        const std::uint64_t full = (1ull << g.n) - 1;
        for (std::uint64_t z = 0; z < table.values.size(); ++z) {
            REQUIRE(table.values[z] == oracle::naive_cut(g, z));
            REQUIRE(table.values[z] == table.values[z ^ full]);
        }
        CHECK(table.max_value == maxcut_bruteforce(g).max_value);
    }
}

TEST_CASE("cut table capacity bound") {
    CHECK_THROWS_AS(build_cut_table(generate_er(7, 0.5, 1), 6), CapacityError);
}

TEST_CASE("plus state") {
    const Statevector one = prepare_plus_state(1);
    CHECK(one.amplitudes[0].real() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(one.amplitudes[1].real() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));

    const Statevector two = prepare_plus_state(2);
    for (const auto& amp : two.amplitudes) {
        CHECK(amp.real() == 0.5);
        CHECK(amp.imag() == 0.0);
    }

    for (int n = 1; n <= 10; ++n) {
        CHECK(std::abs(norm_squared(prepare_plus_state(n)) - 1.0) < 1e-12);
    }
    CHECK_THROWS_AS(prepare_plus_state(0), InputError);
}

TEST_CASE("phase operator special angles") {
    const CutTable table = build_cut_table(single_edge());

    Statevector state = prepare_plus_state(2);
    apply_phase(state, table, 0.0);
    for (const auto& amp : state.amplitudes) CHECK(amp == std::complex<double>(0.5, 0.0));

    // Integer cut values make the phase 2pi-periodic.
    apply_phase(state, table, 2.0 * kPi);
    for (const auto& amp : state.amplitudes) {
        CHECK(std::abs(amp - std::complex<double>(0.5, 0.0)) < 1e-12);
    }
}

TEST_CASE("phase operator on the single edge at gamma = pi/2") {
    // Multiplying the [0,1,1,0] table phases by hand gives
    // (0.5, -0.5i, -0.5i, 0.5).
    const CutTable table = build_cut_table(single_edge());
    Statevector state = prepare_plus_state(2);
    apply_phase(state, table, kPi / 2.0);
    CHECK(std::abs(state.amplitudes[0] - std::complex<double>(0.5, 0.0)) < 1e-12);
    CHECK(std::abs(state.amplitudes[1] - std::complex<double>(0.0, -0.5)) < 1e-12);
    CHECK(std::abs(state.amplitudes[2] - std::complex<double>(0.0, -0.5)) < 1e-12);
    CHECK(std::abs(state.amplitudes[3] - std::complex<double>(0.5, 0.0)) < 1e-12);
}

TEST_CASE("phase operator rejects dimension mismatch") {
    const CutTable table = build_cut_table(single_edge());
    Statevector state = prepare_plus_state(3);
    CHECK_THROWS_AS(apply_phase(state, table, 1.0), InputError);
}

TEST_CASE("mixer special angles") {
    Statevector state = prepare_plus_state(3);
    apply_phase(state, build_cut_table(triangle()), 0.7);
    const Statevector before = state;

    apply_mixer(state, 0.0);
    CHECK(max_amplitude_error(state, before.amplitudes) == 0.0);

    // beta = pi is -identity per qubit: a (-1)^n global phase.
    apply_mixer(state, kPi);
    const double sign = (state.n % 2 == 0) ? 1.0 : -1.0;
    for (std::size_t z = 0; z < state.amplitudes.size(); ++z) {
        CHECK(std::abs(state.amplitudes[z] - sign * before.amplitudes[z]) < 1e-12);
        CHECK(std::abs(std::abs(state.amplitudes[z]) - std::abs(before.amplitudes[z])) < 1e-12);
    }
}

TEST_CASE("mixer rotates a single qubit") {
    Statevector state;
    state.n = 1;
    state.amplitudes = {{1.0, 0.0}, {0.0, 0.0}};
    apply_mixer(state, kPi / 4.0);
    const double r = std::sqrt(0.5);
    CHECK(std::abs(state.amplitudes[0] - std::complex<double>(r, 0.0)) < 1e-12);
    CHECK(std::abs(state.amplitudes[1] - std::complex<double>(0.0, -r)) < 1e-12);
}

TEST_CASE("qaoa_state at zero angles is the uniform superposition") {
    const CutTable table = build_cut_table(triangle());
    const std::vector<double> zeros{0.0};
    const Statevector state = qaoa_state(table, zeros, zeros);
    const Statevector plus = prepare_plus_state(3);
    CHECK(max_amplitude_error(state, plus.amplitudes) < 1e-15);
}

TEST_CASE("negating all angles conjugates the state") {
    Xoshiro256pp rng(808);
    const Graph g = generate_er(5, 0.6, 17);
    const CutTable table = build_cut_table(g);
    for (int p : {1, 2, 3}) {
        const std::vector<double> betas = random_angles(rng, p, kPi);
        const std::vector<double> gammas = random_angles(rng, p, 2.0 * kPi);
        std::vector<double> neg_betas(betas);
        std::vector<double> neg_gammas(gammas);
        for (double& b : neg_betas) b = -b;
        for (double& g2 : neg_gammas) g2 = -g2;

        const Statevector forward = qaoa_state(table, betas, gammas);
        const Statevector backward = qaoa_state(table, neg_betas, neg_gammas);
        for (std::size_t z = 0; z < forward.amplitudes.size(); ++z) {
            CHECK(std::abs(backward.amplitudes[z] - std::conj(forward.amplitudes[z])) < 1e-12);
        }
    }
}

TEST_CASE("single-edge ansatz concentrates on the maximizers") {
    const CutTable table = build_cut_table(single_edge());
    const std::vector<double> betas{kPi / 8.0};
    const std::vector<double> gammas{kPi / 2.0};
    const Statevector state = qaoa_state(table, betas, gammas);
    const double p01 = std::norm(state.amplitudes[1]);
    const double p10 = std::norm(state.amplitudes[2]);
    CHECK(p01 + p10 == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("expectation at zero angles is half the edge count") {
    Xoshiro256pp rng(99);
    for (int trial = 0; trial < 6; ++trial) {
        const Graph g = generate_er(2 + static_cast<int>(rng.next() % 9), 0.5, rng.next());
        const CutTable table = build_cut_table(g);
        for (int p : {1, 2, 4}) {
            const std::vector<double> zeros(p, 0.0);
            CHECK(std::abs(expectation(table, zeros, zeros) - g.edge_count() / 2.0) < 1e-12);
        }
    }
}

TEST_CASE("single-edge optimum and analytic landscape") {
    const CutTable table = build_cut_table(single_edge());

    // Grid maximum agrees with the analytic optimum f = 1 at (pi/8, pi/2).
    const oracle::GridResult grid = oracle::grid_search_p1(table, 201, 401);
    CHECK(grid.best_f == doctest::Approx(1.0).epsilon(1e-9));

    const std::vector<double> betas{kPi / 8.0};
    const std::vector<double> gammas{kPi / 2.0};
    CHECK(expectation(table, betas, gammas) == doctest::Approx(1.0).epsilon(1e-9));

    // f(beta, gamma) = 1/2 + 1/2 sin(4 beta) sin(gamma) across the box.
    Xoshiro256pp rng(3);
    for (int i = 0; i < 50; ++i) {
        const double beta = rng.uniform(0.0, kPi);
        const double gamma = rng.uniform(0.0, 2.0 * kPi);
        const double expected = 0.5 + 0.5 * std::sin(4.0 * beta) * std::sin(gamma);
        const std::vector<double> b{beta};
        const std::vector<double> g{gamma};
        CHECK(expectation(table, b, g) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("norm is preserved by random operator sequences") {
    Xoshiro256pp rng(1234);
    const Graph g = generate_er(7, 0.5, 21);
    const CutTable table = build_cut_table(g);
    Statevector state = prepare_plus_state(7);
    for (int step = 0; step < 40; ++step) {
        if (rng.next() % 2 == 0) {
            apply_phase(state, table, rng.uniform(-10.0, 10.0));
        } else {
            apply_mixer(state, rng.uniform(-10.0, 10.0));
        }
        REQUIRE(std::abs(norm_squared(state) - 1.0) < 1e-12);
    }
}

TEST_CASE("objective is periodic per step") {
    Xoshiro256pp rng(777);
    for (int p : {1, 2, 4}) {
        for (int trial = 0; trial < 5; ++trial) {
            const Graph g = generate_er(6, 0.5, rng.next());
            const CutTable table = build_cut_table(g);
            const std::vector<double> betas = random_angles(rng, p, kPi);
            const std::vector<double> gammas = random_angles(rng, p, 2.0 * kPi);
            const double base = expectation(table, betas, gammas);
            for (int k = 0; k < p; ++k) {
                std::vector<double> shifted_betas(betas);
                shifted_betas[k] += kPi;
                CHECK(std::abs(expectation(table, shifted_betas, gammas) - base) < 1e-10);

                std::vector<double> shifted_gammas(gammas);
                shifted_gammas[k] += 2.0 * kPi;
                CHECK(std::abs(expectation(table, betas, shifted_gammas) - base) < 1e-10);
            }
        }
    }
}

TEST_CASE("objective is conjugation symmetric") {
    Xoshiro256pp rng(31337);
    for (int p : {1, 2, 4}) {
        for (int trial = 0; trial < 5; ++trial) {
            const Graph g = generate_er(6, 0.5, rng.next());
            const CutTable table = build_cut_table(g);
            const std::vector<double> betas = random_angles(rng, p, kPi);
            const std::vector<double> gammas = random_angles(rng, p, 2.0 * kPi);
            std::vector<double> neg_betas(betas);
            std::vector<double> neg_gammas(gammas);
            for (double& b : neg_betas) b = -b;
            for (double& g2 : neg_gammas) g2 = -g2;
            CHECK(std::abs(expectation(table, betas, gammas) -
                           expectation(table, neg_betas, neg_gammas)) < 1e-10);
        }
    }
}

TEST_CASE("objective is isomorphism invariant") {
    Xoshiro256pp rng(4096);
    const Graph g = generate_er(7, 0.5, 1000);
    std::vector<int> perm{3, 0, 6, 2, 5, 1, 4};
    const Graph h = relabel(g, perm, "h");
    const CutTable table_g = build_cut_table(g);
    const CutTable table_h = build_cut_table(h);
    for (int trial = 0; trial < 10; ++trial) {
        const std::vector<double> betas = random_angles(rng, 2, kPi);
        const std::vector<double> gammas = random_angles(rng, 2, 2.0 * kPi);
        CHECK(std::abs(expectation(table_g, betas, gammas) -
                       expectation(table_h, betas, gammas)) < 1e-12);
    }
}

TEST_CASE("objective stays within [0, maxcut]") {
    Xoshiro256pp rng(2);
    for (int trial = 0; trial < 10; ++trial) {
        const Graph g = generate_er(8, 0.5, rng.next());
        const CutTable table = build_cut_table(g);
        for (int p : {1, 2, 4}) {
            const std::vector<double> betas = random_angles(rng, p, kPi);
            const std::vector<double> gammas = random_angles(rng, p, 2.0 * kPi);
            const double f = expectation(table, betas, gammas);
            CHECK(f >= 0.0);
            CHECK(f <= table.max_value + 1e-12);
        }
    }
}

TEST_CASE("fast simulator matches the dense spectral oracle") {
    Xoshiro256pp rng(616);
    for (int n = 2; n <= 4; ++n) {
        for (int trial = 0; trial < 4; ++trial) {
            const Graph g = generate_er(n, 0.6, rng.next());
            const CutTable table = build_cut_table(g);
            for (int p : {1, 2, 3}) {
                const std::vector<double> betas = random_angles(rng, p, kPi);
                const std::vector<double> gammas = random_angles(rng, p, 2.0 * kPi);

                const auto dense = oracle::dense_qaoa_state(g, betas, gammas);
                const Statevector fast = qaoa_state(table, betas, gammas);
                CHECK(max_amplitude_error(fast, dense) < 1e-9);

                const double f_fast = expectation(table, betas, gammas);
                const double f_dense = oracle::dense_expectation(g, betas, gammas);
                CHECK(std::abs(f_fast - f_dense) < 1e-9);
            }
        }
    }
}

TEST_CASE("evaluator agrees with the free functions") {
    const Graph g = generate_er(6, 0.5, 5);
    const CutTable table = build_cut_table(g);
    Evaluator evaluator(table);
    Xoshiro256pp rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        const std::vector<double> betas = random_angles(rng, 2, kPi);
        const std::vector<double> gammas = random_angles(rng, 2, 2.0 * kPi);
        const double reference = expectation(table, betas, gammas);
        CHECK(evaluator.evaluate(betas, gammas) == reference);

        std::vector<double> flat(betas);
        flat.insert(flat.end(), gammas.begin(), gammas.end());
        CHECK(evaluator.evaluate_flat(flat) == reference);
    }
    const std::vector<double> odd{1.0, 2.0, 3.0};
    CHECK_THROWS_AS(evaluator.evaluate_flat(odd), InputError);
}

TEST_CASE("QaoaParams wraps angles into the box") {
    const QaoaParams params({-0.1, kPi + 0.2}, {2.0 * kPi + 0.3, -0.4});
    CHECK(params.betas()[0] == doctest::Approx(kPi - 0.1).epsilon(1e-12));
    CHECK(params.betas()[1] == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(params.gammas()[0] == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(params.gammas()[1] == doctest::Approx(2.0 * kPi - 0.4).epsilon(1e-12));

    // Wrapping leaves the objective unchanged.
    const Graph g = generate_er(5, 0.5, 77);
    const CutTable table = build_cut_table(g);
    const std::vector<double> raw_betas{-0.1, kPi + 0.2};
    const std::vector<double> raw_gammas{2.0 * kPi + 0.3, -0.4};
    CHECK(std::abs(expectation(table, raw_betas, raw_gammas) - expectation(table, params)) <
          1e-10);

    CHECK_THROWS_AS(QaoaParams({}, {}), InputError);
    CHECK_THROWS_AS(QaoaParams({0.1}, {0.1, 0.2}), InputError);

    const QaoaParams from_flat = QaoaParams::from_flat(std::vector<double>{0.1, 0.2, 0.3, 0.4});
    CHECK(from_flat.betas() == std::vector<double>{0.1, 0.2});
    CHECK(from_flat.gammas() == std::vector<double>{0.3, 0.4});
    CHECK(from_flat.to_flat() == std::vector<double>{0.1, 0.2, 0.3, 0.4});
}

TEST_SUITE_END();
