// Copyright 2026 The chordsim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <random>

#include "chordsim/oracle.hpp"
#include "test_helpers.hpp"

using namespace chordsim;
using oracle::PauliString;
using oracle::majorana_string;

namespace {

// Majorana c_v^slot for a 4-vertex word with ranks a=0, d=1, b=2, c=3.
PauliString cm(int rank, int slot) {
    return majorana_string(4, 4 * rank + slot - 1);
}

PauliString scale_i(PauliString p, unsigned i_power) {
    p.phase_pow = (p.phase_pow + i_power) & 3u;
    return p;
}

// -i c1 c2 style two-Majorana operator.
PauliString pair_op(const PauliString& c1, const PauliString& c2) {
    return scale_i(c1 * c2, 3);
}

}  // namespace

TEST_CASE("graph state vectors") {
    const Eigen::VectorXcd plus = oracle::graph_state_vector(SimpleGraph({"a"}));
    CHECK(plus(0).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(plus(1).real() == doctest::Approx(1.0 / std::sqrt(2.0)));

    SimpleGraph edge({"a", "b"});
    edge.add_edge("a", "b");
    const Eigen::VectorXcd bell = oracle::graph_state_vector(edge);
    CHECK(bell(0).real() == doctest::Approx(0.5));
    CHECK(bell(1).real() == doctest::Approx(0.5));
    CHECK(bell(2).real() == doctest::Approx(0.5));
    CHECK(bell(3).real() == doctest::Approx(-0.5));

    const auto c4 = alternance_graph(DoubleOccurrenceWord::parse("adbacbdc"));
    const Eigen::VectorXcd v = oracle::graph_state_vector(c4);
    int positive = 0, negative = 0;
    for (int i = 0; i < 16; ++i) {
        (v(i).real() > 0 ? positive : negative)++;
    }
    CHECK(positive == 12);
    CHECK(negative == 4);
}

TEST_CASE("majorana matrices anticommute and square to identity") {
    for (int n : {1, 2}) {
        const auto cs = oracle::majorana_matrices(n);
        CHECK(cs.size() == static_cast<size_t>(4 * n));
        const Eigen::MatrixXcd id =
            Eigen::MatrixXcd::Identity(cs[0].rows(), cs[0].cols());
        for (size_t j = 0; j < cs.size(); ++j) {
            CHECK((cs[j] - cs[j].adjoint()).cwiseAbs().maxCoeff() == 0.0);
            for (size_t k = 0; k < cs.size(); ++k) {
                const Eigen::MatrixXcd anti = cs[j] * cs[k] + cs[k] * cs[j];
                if (j == k) {
                    CHECK((anti - 2.0 * id).cwiseAbs().maxCoeff() == 0.0);
                } else {
                    CHECK(anti.cwiseAbs().maxCoeff() == 0.0);
                }
            }
        }
    }
    CHECK(oracle::majorana_matrices(1)[0].rows() == 4);
    CHECK_THROWS_AS(oracle::majorana_matrices(5), TooLarge);
}

TEST_CASE("dense matching state is a rank-1 projector matching the covariance") {
    for (const char* text : {"vwvw", "abcabc", "adbacbdc"}) {
        const auto word = DoubleOccurrenceWord::parse(text);
        const auto tour = tour_from_word(word);
        const int n = word.vertex_count();
        const Eigen::MatrixXcd rho = oracle::build_matching_state_dense(tour);

        CHECK(std::abs(rho.trace() - std::complex<double>(1.0, 0.0)) < 1e-12);
        CHECK((rho * rho - rho).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((rho - rho.adjoint()).cwiseAbs().maxCoeff() < 1e-12);

        const Eigen::MatrixXd cov = oracle::covariance_of_dense(rho, n);
        CHECK((cov - matching_covariance(tour).gamma()).cwiseAbs().maxCoeff() < 1e-12);

        // Global parity expectation +1.
        PauliString parity = oracle::gauge_string(n, 0);
        for (int r = 1; r < n; ++r) {
            parity = parity * oracle::gauge_string(n, r);
        }
        CHECK(std::abs(parity.trace_with(rho) - std::complex<double>(1.0, 0.0)) < 1e-12);
    }
}

TEST_CASE("statevector and dense constructions agree") {
    std::mt19937_64 rng(0x1234);
    for (int trial = 0; trial < 6; ++trial) {
        const auto word = testing::random_loop_free_word(2 + static_cast<int>(rng() % 2), rng);
        const auto tour = tour_from_word(word);
        const Eigen::VectorXcd psi = oracle::matching_state_vector(tour);
        const Eigen::MatrixXcd rho = oracle::build_matching_state_dense(tour);
        CHECK((rho - psi * psi.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("multiplication table of encoded single-vertex products") {
    const auto report = oracle::verify_multiplication_table();
    CHECK(report.checks.size() == 16);
    CHECK(report.all_pass());
}

TEST_CASE("cycle operators of the worked 4-cycle example") {
    const auto word = DoubleOccurrenceWord::parse("adbacbdc");
    const auto tour = tour_from_word(word);
    // ranks: a=0, d=1, b=2, c=3

    // Edge operators along each split cycle, in cycle order.
    auto cycle_op = [&](const Vertex& v) {
        const auto split = split_at(tour, v);
        std::map<std::pair<int, int>, int> edge_of;
        for (int e = 0; e < static_cast<int>(tour.directed_edges().size()); ++e) {
            const auto& de = tour.directed_edges()[e];
            edge_of[{tour.majorana_index(de.from), tour.majorana_index(de.to)}] = e;
        }
        PauliString p = PauliString::identity(8);
        for (const auto& de : cycle_directed_edges(split.cycle2)) {
            p = p * oracle::edge_operator(
                        tour, edge_of.at({tour.majorana_index(de.from),
                                          tour.majorana_index(de.to)}));
        }
        return p;
    };

    auto gauge = [&](int rank) { return oracle::gauge_string(4, rank); };

    // X_a Z_b Z_d D_c with the pair realizations of the worked example.
    const PauliString expected_a =
        pair_op(cm(0, 2), cm(0, 3)) * pair_op(cm(2, 3), cm(2, 4)) *
        pair_op(cm(1, 3), cm(1, 4)) * gauge(3);
    // X_b Z_a Z_c
    const PauliString expected_b =
        pair_op(cm(2, 2), cm(2, 3)) * pair_op(cm(0, 1), cm(0, 2)) *
        pair_op(cm(3, 1), cm(3, 2));
    // X_c Z_b Z_d
    const PauliString expected_c =
        pair_op(cm(3, 2), cm(3, 3)) * pair_op(cm(2, 3), cm(2, 4)) *
        pair_op(cm(1, 3), cm(1, 4));
    // X_d D_b Z_a Z_c
    const PauliString expected_d =
        pair_op(cm(1, 2), cm(1, 3)) * gauge(2) * pair_op(cm(0, 1), cm(0, 2)) *
        pair_op(cm(3, 1), cm(3, 2));

    CHECK(cycle_op("a") == expected_a);
    CHECK(cycle_op("b") == expected_b);
    CHECK(cycle_op("c") == expected_c);
    CHECK(cycle_op("d") == expected_d);

    // And as dense matrices.
    CHECK((cycle_op("a").dense() - expected_a.dense()).cwiseAbs().maxCoeff() < 1e-10);

    const auto report = oracle::verify_cycle_stabilizers(tour);
    CHECK(report.all_pass());
}

TEST_CASE("cycle stabilizers and embedding for every word up to 3 vertices") {
    for (int n = 2; n <= 3; ++n) {
        for (const auto& word : oracle::enumerate_loop_free_words(n)) {
            const auto tour = tour_from_word(word);
            CHECK(oracle::verify_cycle_stabilizers(tour).all_pass());
            CHECK(oracle::verify_embedding(tour).all_pass());
            CHECK(oracle::verify_wick(tour).all_pass());
        }
    }
}

TEST_CASE("embedding sector weights of the two worked examples") {
    const auto small = oracle::verify_embedding(tour_from_word(DoubleOccurrenceWord::parse("vwvw")));
    CHECK(small.all_pass());

    const auto big = oracle::verify_embedding(
        tour_from_word(DoubleOccurrenceWord::parse("adbacbdc")));
    CHECK(big.all_pass());
}

TEST_CASE("brute-force marginals") {
    const auto c4 = alternance_graph(DoubleOccurrenceWord::parse("adbacbdc"));
    std::vector<Measurement> m{{"a", {0, 0, 1}, +1}};
    CHECK(oracle::brute_marginal(c4, m) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(oracle::brute_marginal(c4, std::vector<Measurement>{}) == doctest::Approx(1.0));

    std::mt19937_64 rng(0x2468);
    std::vector<BlochVector> dirs;
    for (int j = 0; j < 4; ++j) {
        dirs.push_back(testing::random_unit_bloch(rng));
    }
    double total = 0.0;
    for (int mask = 0; mask < 16; ++mask) {
        std::vector<Measurement> full;
        for (int j = 0; j < 4; ++j) {
            full.push_back({c4.vertices()[j], dirs[j], (mask >> j) & 1 ? +1 : -1});
        }
        total += oracle::brute_marginal(c4, full);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("matching invariants report") {
    std::mt19937_64 rng(0x1357);
    for (int trial = 0; trial < 10; ++trial) {
        const auto word = testing::random_loop_free_word(2 + static_cast<int>(rng() % 6), rng);
        CHECK(oracle::verify_matching_invariants(word).all_pass());
    }
}

TEST_CASE("probability formulas against the statevector oracle") {
    for (const char* text : {"vwvw", "abcabc", "adbacbdc", "abcdabcd"}) {
        CHECK(oracle::verify_probability_formulas(DoubleOccurrenceWord::parse(text)).all_pass());
    }
}

TEST_CASE("composite word verification") {
    CHECK(oracle::verify_word(DoubleOccurrenceWord::parse("adbacbdc")).all_pass());
}

TEST_CASE("mixed-state overlap formula against dense traces") {
    std::mt19937_64 rng(0x8642);
    for (int trial = 0; trial < 12; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3);  // up to 4
        const auto word = testing::random_loop_free_word(n, rng);
        const auto tour = tour_from_word(word);
        const int t = 1 + static_cast<int>(rng() % (n - 1));

        std::vector<Measurement> measured;
        for (int j = 0; j < t; ++j) {
            measured.push_back(
                {word.vertex_order()[j], testing::random_unit_bloch(rng), (rng() & 1) ? 1 : -1});
        }

        const Eigen::MatrixXcd rho = oracle::measured_product_density(word, measured);
        const Eigen::MatrixXcd psi = oracle::build_matching_state_dense(tour);
        const double dense_trace = (rho * psi).trace().real();

        // The covariance-only route of the mixed-overlap formula.
        const Eigen::MatrixXd rho_cov = oracle::measured_product_covariance(word, measured);
        const auto mc = matching_covariance(tour);
        CHECK(mixed_overlap(rho_cov, mc.gamma()) ==
              doctest::Approx(dense_trace).epsilon(1e-10));

        // The dense covariance of rho matches the lift blocks.
        CHECK((oracle::covariance_of_dense(rho, n) - rho_cov).cwiseAbs().maxCoeff() < 1e-12);

        // 2^{2n-t} tr(rho Psi) is the plain submatrix Pfaffian; that value
        // equals the graph-state marginal only up to gauge-sector cross
        // terms, so compare it against the submatrix value, and the library
        // marginal against the statevector oracle.
        std::vector<int> indices;
        for (const auto& m : measured) {
            const int r = word.rank_of(m.vertex);
            for (int s = 0; s < 4; ++s) {
                indices.push_back(4 * r + s);
            }
        }
        std::sort(indices.begin(), indices.end());
        const double naive =
            std::ldexp(pfaffian_of_submatrix(rho_cov + mc.gamma(), indices), -t);
        CHECK(naive == doctest::Approx(std::ldexp(dense_trace, 2 * n - t)).epsilon(1e-10));
        CHECK(marginal_prob(mc, measured) ==
              doctest::Approx(oracle::brute_marginal(alternance_graph(word), measured))
                  .epsilon(1e-10));
    }
}

TEST_CASE("gauge-sector correction identity on the doubled 4-cycle word") {
    // The word abcdabcd realizes the complete graph on four vertices; its
    // multigraph doubles every edge of the 4-cycle. Measuring the opposite
    // pair {a, c} leaves {b, d} unmeasured, and the edge subset consisting
    // of both a-b and both b-c edges has degree 4 at b, 0 at d, and even
    // degree elsewhere. That makes 2^t tr(phi Psi) deviate from the true
    // marginal by exactly 2^{2n-t} tr(rho0 D_b Psi), which the dense oracle
    // evaluates directly.
    const auto word = DoubleOccurrenceWord::parse("abcdabcd");
    const auto tour = tour_from_word(word);
    const auto g = alternance_graph(word);
    const auto mc = matching_covariance(tour);
    const int n = 4, t = 2;

    std::mt19937_64 rng(0xD15C);
    for (int rep = 0; rep < 4; ++rep) {
        std::vector<Measurement> measured{
            {"a", testing::random_unit_bloch(rng), (rng() & 1) ? 1 : -1},
            {"c", testing::random_unit_bloch(rng), (rng() & 1) ? 1 : -1},
        };

        const Eigen::MatrixXcd rho0 = oracle::measured_product_density(word, measured);
        const Eigen::MatrixXcd psi = oracle::build_matching_state_dense(tour);
        const Eigen::MatrixXcd d_b = oracle::gauge_string(n, word.rank_of("b")).dense();
        const Eigen::MatrixXcd d_d = oracle::gauge_string(n, word.rank_of("d")).dense();

        const double p_naive = std::ldexp((rho0 * psi).trace().real(), 2 * n - t);
        const double correction = std::ldexp((rho0 * d_b * psi).trace().real(), 2 * n - t);
        const double p_true = oracle::brute_marginal(g, measured);

        // Complement pairing: D_b and D_d insertions contribute equally.
        CHECK((rho0 * d_d * psi).trace().real() ==
              doctest::Approx((rho0 * d_b * psi).trace().real()).epsilon(1e-10));

        CHECK(std::abs(correction) > 1e-3);  // the cross term is real, not noise
        CHECK(p_naive + correction == doctest::Approx(p_true).epsilon(1e-10));
        CHECK(marginal_prob(mc, measured) == doctest::Approx(p_true).epsilon(1e-10));
    }
}

TEST_CASE("local unitaries on the state match rotated measurement directions") {
    std::mt19937_64 rng(0xACE1);
    std::normal_distribution<double> normal;
    auto random_unitary = [&]() {
        Eigen::Matrix2cd a;
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                a(i, j) = std::complex<double>(normal(rng), normal(rng));
            }
        }
        return Eigen::Matrix2cd(Eigen::HouseholderQR<Eigen::Matrix2cd>(a).householderQ());
    };

    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);
        const auto word = testing::random_loop_free_word(n, rng);
        const auto g = alternance_graph(word);
        const auto mc = matching_covariance(tour_from_word(word));

        Eigen::VectorXcd rotated = oracle::graph_state_vector(g);
        std::vector<Eigen::Matrix2cd> us;
        for (int q = 0; q < n; ++q) {
            us.push_back(random_unitary());
            rotated = oracle::apply_single_qubit(rotated, q, us[q]);
        }

        const int t = 1 + static_cast<int>(rng() % n);
        std::vector<std::pair<int, Eigen::Vector2cd>> by_index;
        std::vector<Measurement> lib_measured;
        for (int j = 0; j < t; ++j) {
            const BlochVector a = testing::random_unit_bloch(rng);
            const int q = (rng() & 1) ? 1 : -1;
            by_index.emplace_back(j, bloch_to_spinor(a.scaled(q)));
            // Library side: rotate the direction back through the frame.
            const Eigen::Matrix3d r = bloch_rotation(us[j]);
            Eigen::Vector3d eff = r.transpose() * Eigen::Vector3d(a.x, a.y, a.z);
            lib_measured.push_back({word.vertex_order()[j], {eff(0), eff(1), eff(2)}, q});
        }
        const double p_oracle = oracle::statevector_marginal(rotated, by_index);
        CHECK(marginal_prob(mc, lib_measured) == doctest::Approx(p_oracle).epsilon(1e-9));
    }
}

TEST_CASE("word enumeration") {
    CHECK(oracle::enumerate_loop_free_words(1).empty());
    CHECK(oracle::enumerate_loop_free_words(2).size() == 1);
    CHECK(oracle::enumerate_loop_free_words(3).size() == 2);
    CHECK(oracle::enumerate_loop_free_words(4).size() == 7);
    // With loops allowed, the single-letter word "aa" exists.
    CHECK(oracle::enumerate_all_words(1).size() == 1);
    for (const auto& word : oracle::enumerate_all_words(3)) {
        CHECK(word.vertex_count() == 3);
    }
    // Every loop-free word yields a valid tour.
    for (const auto& word : oracle::enumerate_loop_free_words(4)) {
        CHECK_NOTHROW(tour_from_word(word));
    }
}
