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

#include "chordsim/oracle.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <set>
#include <unordered_map>
#include <unsupported/Eigen/KroneckerProduct>

namespace chordsim::oracle {

using std::complex;
using cd = complex<double>;

PauliString PauliString::operator*(const PauliString& o) const {
    PauliString r;
    r.qubits = qubits;
    // Z^{z} X^{x'} = (-1)^{|z & x'|} X^{x'} Z^{z}
    r.phase_pow = (phase_pow + o.phase_pow + 2u * (std::popcount(z & o.x) & 1u)) & 3u;
    r.x = x ^ o.x;
    r.z = z ^ o.z;
    return r;
}

cd PauliString::phase() const {
    static const cd table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[phase_pow & 3u];
}

namespace {

inline double z_sign(std::uint32_t z, std::uint32_t b) {
    return (std::popcount(z & b) & 1) ? -1.0 : 1.0;
}

}  // namespace

Eigen::VectorXcd PauliString::apply(const Eigen::VectorXcd& v) const {
    const std::uint32_t dim = std::uint32_t{1} << qubits;
    Eigen::VectorXcd out(dim);
    const cd ph = phase();
    for (std::uint32_t b = 0; b < dim; ++b) {
        out(b ^ x) = ph * z_sign(z, b) * v(b);
    }
    return out;
}

Eigen::MatrixXcd PauliString::dense() const {
    const std::uint32_t dim = std::uint32_t{1} << qubits;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    const cd ph = phase();
    for (std::uint32_t b = 0; b < dim; ++b) {
        m(b ^ x, b) = ph * z_sign(z, b);
    }
    return m;
}

cd PauliString::expectation(const Eigen::VectorXcd& psi) const {
    const std::uint32_t dim = std::uint32_t{1} << qubits;
    const cd ph = phase();
    cd sum = 0.0;
    for (std::uint32_t b = 0; b < dim; ++b) {
        sum += std::conj(psi(b ^ x)) * ph * z_sign(z, b) * psi(b);
    }
    return sum;
}

cd PauliString::trace_with(const Eigen::MatrixXcd& rho) const {
    const std::uint32_t dim = std::uint32_t{1} << qubits;
    const cd ph = phase();
    cd sum = 0.0;
    for (std::uint32_t b = 0; b < dim; ++b) {
        sum += ph * z_sign(z, b) * rho(b, b ^ x);
    }
    return sum;
}

PauliString majorana_string(int n_vertices, int majorana_index) {
    if (majorana_index < 0 || majorana_index >= 4 * n_vertices) {
        throw BadInput("Majorana index out of range");
    }
    const int mode = majorana_index / 2;
    PauliString p;
    p.qubits = 2 * n_vertices;
    p.x = std::uint32_t{1} << mode;
    if (majorana_index % 2 == 0) {
        p.z = (std::uint32_t{1} << mode) - 1;
        p.phase_pow = 0;
    } else {
        p.z = (std::uint32_t{2} << mode) - 1;
        p.phase_pow = 1;
    }
    return p;
}

PauliString gauge_string(int n_vertices, int vertex_rank) {
    PauliString p = majorana_string(n_vertices, 4 * vertex_rank);
    for (int s = 1; s < 4; ++s) {
        p = p * majorana_string(n_vertices, 4 * vertex_rank + s);
    }
    p.phase_pow = (p.phase_pow + 2u) & 3u;  // leading minus sign
    return p;
}

PauliString edge_operator(const EulerTour& tour, int edge_index) {
    const int n = tour.vertex_count();
    const auto& e = tour.directed_edges().at(edge_index);
    PauliString p =
        majorana_string(n, tour.majorana_index(e.from)) * majorana_string(n, tour.majorana_index(e.to));
    // -i c_from c_to, except the flipped first edge which is +i c_from c_to.
    p.phase_pow = (p.phase_pow + (edge_index == 0 ? 1u : 3u)) & 3u;
    return p;
}

Eigen::VectorXcd graph_state_vector(const SimpleGraph& g) {
    const int n = g.vertex_count();
    if (n > 14) {
        throw TooLarge("graph statevector supports at most 14 qubits");
    }
    std::vector<std::uint64_t> rows(n);
    for (int i = 0; i < n; ++i) {
        rows[i] = g.row_bits(i);
    }
    const std::uint64_t dim = std::uint64_t{1} << n;
    const double amp = std::pow(2.0, -0.5 * n);
    Eigen::VectorXcd v(dim);
    for (std::uint64_t xbits = 0; xbits < dim; ++xbits) {
        int parity = 0;
        for (int i = 0; i < n; ++i) {
            if (xbits & (std::uint64_t{1} << i)) {
                parity ^= std::popcount(xbits & rows[i] & ~((std::uint64_t{2} << i) - 1)) & 1;
            }
        }
        v(xbits) = parity ? -amp : amp;
    }
    return v;
}

std::vector<Eigen::MatrixXcd> majorana_matrices(int n) {
    if (n > 4) {
        throw TooLarge("dense Majorana matrices support at most 4 vertices");
    }
    std::vector<Eigen::MatrixXcd> out;
    out.reserve(4 * n);
    for (int m = 0; m < 4 * n; ++m) {
        out.push_back(majorana_string(n, m).dense());
    }
    return out;
}

namespace {

// rho -> (rho + P rho) / 2, using that P permutes basis states with phases.
void project_in_place(const PauliString& p, Eigen::MatrixXcd& rho) {
    const std::uint32_t dim = std::uint32_t{1} << p.qubits;
    const cd ph = p.phase();
    Eigen::MatrixXcd prho(dim, dim);
    for (std::uint32_t b = 0; b < dim; ++b) {
        prho.row(b ^ p.x) = ph * z_sign(p.z, b) * rho.row(b);
    }
    rho = 0.5 * (rho + prho);
}

}  // namespace

Eigen::MatrixXcd build_matching_state_dense(const EulerTour& tour) {
    const int n = tour.vertex_count();
    if (n > 4) {
        throw TooLarge("dense matching state supports at most 4 vertices");
    }
    const std::uint32_t dim = std::uint32_t{1} << (2 * n);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(dim, dim);
    for (int e = 0; e < static_cast<int>(tour.directed_edges().size()); ++e) {
        project_in_place(edge_operator(tour, e), rho);
    }
    return rho;
}

Eigen::VectorXcd matching_state_vector(const EulerTour& tour) {
    const int n = tour.vertex_count();
    if (n > 7) {
        throw TooLarge("matching statevector supports at most 7 vertices");
    }
    const std::uint32_t dim = std::uint32_t{1} << (2 * n);
    std::vector<PauliString> stabilizers;
    for (int e = 0; e < static_cast<int>(tour.directed_edges().size()); ++e) {
        stabilizers.push_back(edge_operator(tour, e));
    }
    std::mt19937_64 rng(0x5eedULL);
    std::normal_distribution<double> normal;
    for (int attempt = 0; attempt < 16; ++attempt) {
        Eigen::VectorXcd v(dim);
        for (std::uint32_t b = 0; b < dim; ++b) {
            v(b) = cd(normal(rng), normal(rng));
        }
        for (const auto& p : stabilizers) {
            v = 0.5 * (v + p.apply(v));
        }
        const double nrm = v.norm();
        if (nrm > 1e-6) {
            v /= nrm;
            // Deterministic global phase: largest amplitude real positive.
            Eigen::Index imax;
            v.cwiseAbs().maxCoeff(&imax);
            v *= std::abs(v(imax)) / v(imax);
            return v;
        }
    }
    throw SimError("failed to project a seed onto the matching state");
}

Eigen::MatrixXd covariance_of_state(const Eigen::VectorXcd& psi, int n) {
    Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(4 * n, 4 * n);
    for (int j = 0; j < 4 * n; ++j) {
        for (int k = j + 1; k < 4 * n; ++k) {
            const cd val = (majorana_string(n, j) * majorana_string(n, k)).expectation(psi);
            const double entry = (cd(0, -1) * val).real();
            gamma(j, k) = entry;
            gamma(k, j) = -entry;
        }
    }
    return gamma;
}

Eigen::MatrixXd covariance_of_dense(const Eigen::MatrixXcd& rho, int n) {
    Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(4 * n, 4 * n);
    for (int j = 0; j < 4 * n; ++j) {
        for (int k = j + 1; k < 4 * n; ++k) {
            const cd val = (majorana_string(n, j) * majorana_string(n, k)).trace_with(rho);
            const double entry = (cd(0, -1) * val).real();
            gamma(j, k) = entry;
            gamma(k, j) = -entry;
        }
    }
    return gamma;
}

void Report::add(std::string name, double deviation, double tol) {
    checks.push_back({std::move(name), deviation <= tol, deviation});
}

bool Report::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

double Report::max_deviation() const {
    double m = 0.0;
    for (const auto& c : checks) {
        m = std::max(m, c.deviation);
    }
    return m;
}

void Report::merge(const Report& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

namespace {

// Index of the encoded computational basis state |x x ... x>: pair bits
// (2r, 2r+1) both equal to bit r of x.
std::uint32_t encoded_index(std::uint32_t x, int n) {
    std::uint32_t b = 0;
    for (int r = 0; r < n; ++r) {
        if (x & (std::uint32_t{1} << r)) {
            b |= std::uint32_t{3} << (2 * r);
        }
    }
    return b;
}

// Matrix elements of a fermionic Pauli string between encoded basis states;
// this is the operator projected to the all-plus gauge sector, written in the
// encoded qubit basis.
Eigen::MatrixXcd encoded_action(const PauliString& p, int n) {
    const std::uint32_t qdim = std::uint32_t{1} << n;
    Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(qdim, qdim);
    for (std::uint32_t y = 0; y < qdim; ++y) {
        const std::uint32_t in = encoded_index(y, n);
        const std::uint32_t out = in ^ p.x;
        // Detect whether `out` is itself encoded.
        std::uint32_t decoded = 0;
        bool ok = true;
        for (int r = 0; r < n; ++r) {
            const std::uint32_t pair = (out >> (2 * r)) & 3u;
            if (pair == 3u) {
                decoded |= std::uint32_t{1} << r;
            } else if (pair != 0u) {
                ok = false;
                break;
            }
        }
        if (ok) {
            e(decoded, y) = p.phase() * z_sign(p.z, in);
        }
    }
    return e;
}

struct PairProductEntry {
    int row, col;
    cd factor;      // coefficient of the Pauli
    char pauli;     // 'I', 'X', 'Y', 'Z'
};

Eigen::Matrix2cd pauli_matrix(char which) {
    using namespace std::complex_literals;
    Eigen::Matrix2cd m;
    switch (which) {
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, -1i, 1i, 0; break;
        case 'Z': m << 1, 0, 0, -1; break;
        default: m = Eigen::Matrix2cd::Identity(); break;
    }
    return m;
}

}  // namespace

Report verify_multiplication_table() {
    using namespace std::complex_literals;
    // Row-major list of products c^row c^col projected to D = +1.
    const std::vector<PairProductEntry> entries = {
        {1, 1, 1.0, 'I'},  {1, 2, 1i, 'Z'},   {1, 3, -1i, 'Y'}, {1, 4, 1i, 'X'},
        {2, 1, -1i, 'Z'},  {2, 2, 1.0, 'I'},  {2, 3, 1i, 'X'},  {2, 4, 1i, 'Y'},
        {3, 1, 1i, 'Y'},   {3, 2, -1i, 'X'},  {3, 3, 1.0, 'I'}, {3, 4, 1i, 'Z'},
        {4, 1, -1i, 'X'},  {4, 2, -1i, 'Y'},  {4, 3, -1i, 'Z'}, {4, 4, 1.0, 'I'},
    };
    Report report;
    for (const auto& entry : entries) {
        const PauliString prod =
            majorana_string(1, entry.row - 1) * majorana_string(1, entry.col - 1);
        const Eigen::Matrix2cd expected = entry.factor * pauli_matrix(entry.pauli);
        const double dev = (encoded_action(prod, 1) - expected).cwiseAbs().maxCoeff();
        report.add("pair_product[c" + std::to_string(entry.row) + "c" + std::to_string(entry.col) + "]",
                   dev, 1e-12);
    }
    return report;
}

namespace {

PauliString global_parity_string(int n) {
    PauliString p = gauge_string(n, 0);
    for (int r = 1; r < n; ++r) {
        p = p * gauge_string(n, r);
    }
    return p;
}

// Gauge sector of a fermionic basis state: bit r set iff D_r eigenvalue -1
// (the two mode bits of vertex r differ).
std::uint32_t sector_of(std::uint32_t b, int n) {
    std::uint32_t s = 0;
    for (int r = 0; r < n; ++r) {
        const std::uint32_t pair = (b >> (2 * r)) & 3u;
        if (pair == 1u || pair == 2u) {
            s |= std::uint32_t{1} << r;
        }
    }
    return s;
}

}  // namespace

Report verify_cycle_stabilizers(const EulerTour& tour) {
    const int n = tour.vertex_count();
    if (n > 4) {
        throw TooLarge("cycle-stabilizer verification supports at most 4 vertices");
    }
    Report report;
    const auto& word = tour.word();
    const SimpleGraph g = alternance_graph(word);

    // Directed edge -> operator, keyed by the Majorana index pair.
    std::unordered_map<std::uint64_t, int> edge_index;
    for (int e = 0; e < static_cast<int>(tour.directed_edges().size()); ++e) {
        const auto& de = tour.directed_edges()[e];
        const std::uint64_t key =
            (std::uint64_t(tour.majorana_index(de.from)) << 32) | std::uint32_t(tour.majorana_index(de.to));
        edge_index[key] = e;
    }
    auto cycle_operator = [&](const std::vector<HalfEdge>& cycle) {
        PauliString p = PauliString::identity(2 * n);
        for (const auto& de : cycle_directed_edges(cycle)) {
            const std::uint64_t key =
                (std::uint64_t(tour.majorana_index(de.from)) << 32) | std::uint32_t(tour.majorana_index(de.to));
            p = p * edge_operator(tour, edge_index.at(key));
        }
        return p;
    };

    {
        PauliString all = PauliString::identity(2 * n);
        for (int e = 0; e < static_cast<int>(tour.directed_edges().size()); ++e) {
            all = all * edge_operator(tour, e);
        }
        report.add("edge_ops_product_is_global_parity",
                   all == global_parity_string(n) ? 0.0 : 1.0, 0.0);
    }

    const std::uint32_t dim = std::uint32_t{1} << (2 * n);
    for (int r = 0; r < n; ++r) {
        const Vertex& v = word.vertex_order()[r];
        const CycleSplit split = split_at(tour, v);
        const PauliString s1 = cycle_operator(split.cycle1);
        const PauliString s2 = cycle_operator(split.cycle2);

        report.add("cycle_pair_product_is_global_parity[" + v + "]",
                   (s1 * s2) == global_parity_string(n) ? 0.0 : 1.0, 0.0);

        // Gauge-projected stabilizer: X_v prod_{w in N(v)} Z_w on the
        // encoded qubits.
        PauliString target{n, 0, 0, 0};
        target.x = std::uint32_t{1} << r;
        for (const auto& w : g.neighbors(v)) {
            target.z |= std::uint32_t{1} << g.index_of(w);
        }
        const double dev = (encoded_action(s2, n) - target.dense()).cwiseAbs().maxCoeff();
        report.add("gauge_projected_stabilizer[" + v + "]", dev, 1e-10);

        // S1 and S2 agree up to a sign on every gauge sector.
        double sector_dev = 0.0;
        if (s1.x != s2.x) {
            sector_dev = 1.0;
        } else {
            std::vector<int> sign(std::size_t{1} << n, 0);
            for (std::uint32_t b = 0; b < dim; ++b) {
                const cd f1 = s1.phase() * z_sign(s1.z, b);
                const cd f2 = s2.phase() * z_sign(s2.z, b);
                const std::uint32_t s = sector_of(b, n);
                const double plus = std::abs(f1 - f2);
                const double minus = std::abs(f1 + f2);
                const int this_sign = plus <= minus ? +1 : -1;
                if (sign[s] == 0) {
                    sign[s] = this_sign;
                }
                sector_dev = std::max(sector_dev, sign[s] > 0 ? plus : minus);
            }
        }
        report.add("cycle_ops_match_per_sector[" + v + "]", sector_dev, 1e-12);
    }
    return report;
}

Report verify_embedding(const EulerTour& tour) {
    const int n = tour.vertex_count();
    if (n > 4) {
        throw TooLarge("embedding verification supports at most 4 vertices");
    }
    Report report;
    const Eigen::VectorXcd psi = matching_state_vector(tour);
    const std::uint32_t dim = std::uint32_t{1} << (2 * n);

    std::vector<double> weight(std::size_t{1} << n, 0.0);
    for (std::uint32_t b = 0; b < dim; ++b) {
        weight[sector_of(b, n)] += std::norm(psi(b));
    }
    const double expected = std::ldexp(1.0, -(n - 1));
    double even_dev = 0.0, odd_dev = 0.0;
    for (std::uint32_t s = 0; s < (std::uint32_t{1} << n); ++s) {
        if (std::popcount(s) % 2 == 0) {
            even_dev = std::max(even_dev, std::abs(weight[s] - expected));
        } else {
            odd_dev = std::max(odd_dev, weight[s]);
        }
    }
    report.add("even_sector_weights", even_dev, 1e-10);
    report.add("odd_sector_weights", odd_dev, 1e-12);

    // The all-plus sector decodes to the circle graph state (global phase free).
    const std::uint32_t qdim = std::uint32_t{1} << n;
    Eigen::VectorXcd decoded(qdim);
    for (std::uint32_t x = 0; x < qdim; ++x) {
        decoded(x) = psi(encoded_index(x, n));
    }
    const double norm = decoded.norm();
    report.add("all_plus_sector_weight", std::abs(norm * norm - expected), 1e-10);
    const Eigen::VectorXcd gvec = graph_state_vector(alternance_graph(tour.word()));
    const double fidelity = std::abs(gvec.dot(decoded)) / norm;
    report.add("all_plus_sector_is_graph_state", std::abs(1.0 - fidelity), 1e-10);
    return report;
}

Report verify_wick(const EulerTour& tour) {
    const int n = tour.vertex_count();
    if (n > 3) {
        throw TooLarge("exhaustive Wick verification supports at most 3 vertices");
    }
    Report report;
    const Eigen::VectorXcd psi = matching_state_vector(tour);
    const Eigen::MatrixXd gamma = matching_covariance(tour).gamma();
    const int modes = 4 * n;
    double dev = 0.0;
    for (std::uint32_t q = 0; q < (std::uint32_t{1} << modes); ++q) {
        if (std::popcount(q) % 2 != 0) {
            continue;
        }
        PauliString c_q = PauliString::identity(2 * n);
        std::vector<int> indices;
        for (int m = 0; m < modes; ++m) {
            if (q & (std::uint32_t{1} << m)) {
                c_q = c_q * majorana_string(n, m);
                indices.push_back(m);
            }
        }
        const cd lhs = c_q.expectation(psi);
        const cd rhs = wick_expectation(gamma, indices);
        dev = std::max(dev, std::abs(lhs - rhs));
    }
    report.add("wick_all_even_subsets", dev, 1e-10);
    return report;
}

Report verify_matching_invariants(const DoubleOccurrenceWord& word) {
    Report report;
    const EulerTour tour = tour_from_word(word);
    const MatchingCovariance mc = matching_covariance(tour);
    const Eigen::MatrixXd& gamma = mc.gamma();
    const int dim = mc.dimension();

    report.add("covariance_skew", (gamma + gamma.transpose()).cwiseAbs().maxCoeff(), 0.0);

    double monomial_dev = 0.0;
    for (int i = 0; i < dim; ++i) {
        int nonzero = 0;
        for (int j = 0; j < dim; ++j) {
            if (gamma(i, j) != 0.0) {
                ++nonzero;
                monomial_dev = std::max(monomial_dev, std::abs(std::abs(gamma(i, j)) - 1.0));
            }
        }
        if (nonzero != 1) {
            monomial_dev = std::max(monomial_dev, 1.0);
        }
    }
    report.add("covariance_rows_are_signed_monomials", monomial_dev, 0.0);
    report.add("covariance_orthogonal",
               (gamma * gamma.transpose() - Eigen::MatrixXd::Identity(dim, dim))
                   .cwiseAbs()
                   .maxCoeff(),
               0.0);
    report.add("covariance_pfaffian_plus_one", std::abs(pfaffian(gamma) - 1.0), 0.0);

    const SimpleGraph g = alternance_graph(word);
    double split_dev = 0.0;
    for (const auto& v : word.vertex_order()) {
        const CycleSplit split = split_at(tour, v);

        // The two cycles partition the tour's directed edges.
        std::set<std::pair<int, int>> seen;
        size_t total = 0;
        for (const auto* cycle : {&split.cycle1, &split.cycle2}) {
            for (const auto& e : cycle_directed_edges(*cycle)) {
                seen.insert({tour.majorana_index(e.from), tour.majorana_index(e.to)});
                ++total;
            }
        }
        std::set<std::pair<int, int>> tour_edges;
        for (const auto& e : tour.directed_edges()) {
            tour_edges.insert({tour.majorana_index(e.from), tour.majorana_index(e.to)});
        }
        if (seen != tour_edges || total != tour_edges.size()) {
            split_dev = 1.0;
        }

        // Visit counts: adjacent (or pivot) vertices once per cycle,
        // others twice in one cycle and absent from the other.
        const auto count1 = cycle_visit_counts(word, split.cycle1);
        const auto count2 = cycle_visit_counts(word, split.cycle2);
        for (int r = 0; r < word.vertex_count(); ++r) {
            const Vertex& w = word.vertex_order()[r];
            if (w == v || g.adjacent(v, w)) {
                if (count1[r] != 1 || count2[r] != 1) {
                    split_dev = 1.0;
                }
            } else {
                const bool ok = (count1[r] == 2 && count2[r] == 0) ||
                                (count1[r] == 0 && count2[r] == 2);
                if (!ok) {
                    split_dev = 1.0;
                }
            }
        }

        // Non-pivot transitions stay 1->2 / 3->4; pivot endpoints are fixed
        // by construction (cycle1 from slot 4 to 1, cycle2 from 2 to 3).
        for (const auto* cycle : {&split.cycle1, &split.cycle2}) {
            const auto& seq = *cycle;
            for (size_t k = 1; k + 1 < seq.size(); k += 2) {
                if (seq[k].vertex != seq[k + 1].vertex) {
                    split_dev = 1.0;
                } else {
                    const std::pair<int, int> slots =
                        std::minmax(seq[k].slot, seq[k + 1].slot);
                    if (!(slots == std::pair{1, 2} || slots == std::pair{3, 4})) {
                        split_dev = 1.0;
                    }
                }
            }
        }
        if (split.cycle1.front() != HalfEdge{v, 4} || split.cycle1.back() != HalfEdge{v, 1} ||
            split.cycle2.front() != HalfEdge{v, 2} || split.cycle2.back() != HalfEdge{v, 3}) {
            split_dev = 1.0;
        }
    }
    report.add("split_structure", split_dev, 0.0);
    return report;
}

Report verify_probability_formulas(const DoubleOccurrenceWord& word) {
    const int n = word.vertex_count();
    if (n > 8) {
        throw TooLarge("statevector probability checks support at most 8 vertices");
    }
    Report report;
    const EulerTour tour = tour_from_word(word);
    const MatchingCovariance mc = matching_covariance(tour);
    const SimpleGraph g = alternance_graph(word);

    std::mt19937_64 rng(0x9a7c0deULL + static_cast<std::uint64_t>(n));
    std::normal_distribution<double> normal;
    auto random_unit = [&]() {
        BlochVector b;
        do {
            b = {normal(rng), normal(rng), normal(rng)};
        } while (b.norm() < 1e-3);
        const double s = 1.0 / b.norm();
        return b.scaled(s);
    };

    double overlap_dev = 0.0, marginal_dev = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<BlochVector> blochs;
        for (int j = 0; j < n; ++j) {
            blochs.push_back(random_unit());
        }
        overlap_dev = std::max(
            overlap_dev, std::abs(overlap_full(product_covariance(blochs), mc) -
                                  brute_overlap(g, blochs)));
        std::vector<Measurement> measured;
        for (int t = 1; t < n; ++t) {
            measured.push_back({word.vertex_order()[t - 1], blochs[t - 1],
                                (rng() & 1) ? +1 : -1});
            marginal_dev = std::max(marginal_dev, std::abs(marginal_prob(mc, measured) -
                                                           brute_marginal(g, measured)));
        }
    }
    report.add("overlap_vs_statevector", overlap_dev, 1e-9);
    if (n >= 2) {
        report.add("marginals_vs_statevector", marginal_dev, 1e-9);
    }
    return report;
}

Report verify_word(const DoubleOccurrenceWord& word) {
    Report report = verify_matching_invariants(word);
    const int n = word.vertex_count();
    const EulerTour tour = tour_from_word(word);
    if (n <= 4) {
        const Eigen::VectorXcd psi = matching_state_vector(tour);
        const Eigen::MatrixXd dense_cov = covariance_of_state(psi, n);
        report.add("dense_covariance_match",
                   (dense_cov - matching_covariance(tour).gamma()).cwiseAbs().maxCoeff(), 1e-12);
        report.add("global_parity_expectation",
                   std::abs(global_parity_string(n).expectation(psi) - cd(1.0, 0.0)), 1e-12);
        report.merge(verify_cycle_stabilizers(tour));
        report.merge(verify_embedding(tour));
    }
    if (n <= 3) {
        report.merge(verify_wick(tour));
    }
    if (n <= 8) {
        report.merge(verify_probability_formulas(word));
    }
    return report;
}

double statevector_marginal(const Eigen::VectorXcd& psi,
                            std::span<const std::pair<int, Eigen::Vector2cd>> measured) {
    std::vector<std::pair<int, Eigen::Vector2cd>> by_rank(measured.begin(), measured.end());
    std::sort(by_rank.begin(), by_rank.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    Eigen::VectorXcd state = psi;
    for (const auto& [r, s] : by_rank) {
        const std::uint64_t low = std::uint64_t{1} << r;
        Eigen::VectorXcd next(state.size() / 2);
        for (std::uint64_t hi = 0; hi < static_cast<std::uint64_t>(state.size()) / (2 * low); ++hi) {
            for (std::uint64_t lo = 0; lo < low; ++lo) {
                const std::uint64_t base = (hi << (r + 1)) | lo;
                next((hi << r) | lo) =
                    std::conj(s(0)) * state(base) + std::conj(s(1)) * state(base | low);
            }
        }
        state = std::move(next);
    }
    return state.squaredNorm();
}

double brute_marginal(const SimpleGraph& g, std::span<const Measurement> measured) {
    const int n = g.vertex_count();
    if (n > 10) {
        throw TooLarge("brute-force marginal supports at most 10 qubits");
    }
    std::vector<std::pair<int, Eigen::Vector2cd>> by_index;
    std::set<int> seen;
    for (const auto& m : measured) {
        const int r = g.index_of(m.vertex);
        if (!seen.insert(r).second) {
            throw DuplicateVertex("vertex '" + m.vertex + "' measured twice");
        }
        if (m.outcome != 1 && m.outcome != -1) {
            throw BadInput("outcomes must be +1 or -1");
        }
        by_index.emplace_back(r, bloch_to_spinor(m.direction.scaled(m.outcome)));
    }
    return statevector_marginal(graph_state_vector(g), by_index);
}

double brute_overlap(const SimpleGraph& g, const std::vector<BlochVector>& blochs) {
    const int n = g.vertex_count();
    if (static_cast<int>(blochs.size()) != n) {
        throw DimensionMismatch("need one Bloch vector per vertex");
    }
    std::vector<Measurement> measured;
    for (int r = 0; r < n; ++r) {
        measured.push_back({g.vertices()[r], blochs[r], +1});
    }
    return brute_marginal(g, measured);
}

Eigen::VectorXcd apply_single_qubit(const Eigen::VectorXcd& psi, int qubit,
                                    const Eigen::Matrix2cd& u) {
    Eigen::VectorXcd out(psi.size());
    const std::uint64_t low = std::uint64_t{1} << qubit;
    for (std::uint64_t base = 0; base < static_cast<std::uint64_t>(psi.size()); ++base) {
        if (base & low) {
            continue;
        }
        const cd a = psi(base), b = psi(base | low);
        out(base) = u(0, 0) * a + u(0, 1) * b;
        out(base | low) = u(1, 0) * a + u(1, 1) * b;
    }
    return out;
}

Eigen::MatrixXcd measured_product_density(const DoubleOccurrenceWord& word,
                                          std::span<const Measurement> measured) {
    const int n = word.vertex_count();
    if (n > 4) {
        throw TooLarge("dense product density supports at most 4 vertices");
    }
    std::vector<Eigen::Matrix4cd> blocks(n, Eigen::Matrix4cd::Identity() / 4.0);
    for (const auto& m : measured) {
        const Eigen::Vector2cd s = bloch_to_spinor(m.direction.scaled(m.outcome));
        Eigen::Vector4cd enc = Eigen::Vector4cd::Zero();
        enc(0) = s(0);
        enc(3) = s(1);
        blocks[word.rank_of(m.vertex)] = enc * enc.adjoint();
    }
    Eigen::MatrixXcd rho = blocks[n - 1];
    for (int r = n - 2; r >= 0; --r) {
        rho = Eigen::kroneckerProduct(rho, blocks[r]).eval();
    }
    return rho;
}

Eigen::MatrixXd measured_product_covariance(const DoubleOccurrenceWord& word,
                                            std::span<const Measurement> measured) {
    const int n = word.vertex_count();
    Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(4 * n, 4 * n);
    for (const auto& m : measured) {
        const int r = word.rank_of(m.vertex);
        gamma.block<4, 4>(4 * r, 4 * r) = bloch_lift(m.direction.scaled(m.outcome));
    }
    return gamma;
}

namespace {

std::vector<int> relabel_by_first_appearance(const std::vector<int>& seq) {
    std::vector<int> label(seq.size(), -1);
    std::vector<int> out;
    out.reserve(seq.size());
    int next = 0;
    for (int v : seq) {
        if (label[v] < 0) {
            label[v] = next++;
        }
        out.push_back(label[v]);
    }
    return out;
}

std::vector<int> canonical_form(const std::vector<int>& seq) {
    const int m = static_cast<int>(seq.size());
    std::vector<int> best;
    for (int dir = 0; dir < 2; ++dir) {
        std::vector<int> base = seq;
        if (dir == 1) {
            std::reverse(base.begin(), base.end());
        }
        for (int rot = 0; rot < m; ++rot) {
            std::vector<int> cand(m);
            for (int i = 0; i < m; ++i) {
                cand[i] = base[(i + rot) % m];
            }
            cand = relabel_by_first_appearance(cand);
            if (best.empty() || cand < best) {
                best = cand;
            }
        }
    }
    return best;
}

void enumerate_rec(int n, bool loop_free, std::vector<int>& seq, std::vector<int>& open_pos,
                   std::vector<bool>& closed, int placed_letters,
                   std::vector<DoubleOccurrenceWord>& out) {
    const int pos = static_cast<int>(seq.size());
    if (pos == 2 * n) {
        if (canonical_form(seq) == seq) {
            std::vector<Vertex> letters;
            for (int v : seq) {
                letters.emplace_back(1, static_cast<char>('a' + v));
            }
            out.emplace_back(std::move(letters));
        }
        return;
    }
    // Close an open letter.
    for (int v = 0; v < placed_letters; ++v) {
        if (closed[v] || open_pos[v] < 0) {
            continue;
        }
        if (loop_free && seq[pos - 1] == v) {
            continue;
        }
        if (loop_free && pos == 2 * n - 1 && v == seq[0]) {
            continue;  // cyclic wraparound
        }
        seq.push_back(v);
        closed[v] = true;
        enumerate_rec(n, loop_free, seq, open_pos, closed, placed_letters, out);
        closed[v] = false;
        seq.pop_back();
    }
    // Open the next fresh letter (first-appearance normalization).
    if (placed_letters < n && pos < 2 * n - 1) {
        const int v = placed_letters;
        seq.push_back(v);
        open_pos[v] = pos;
        enumerate_rec(n, loop_free, seq, open_pos, closed, placed_letters + 1, out);
        open_pos[v] = -1;
        seq.pop_back();
    }
}

std::vector<DoubleOccurrenceWord> enumerate_words(int n, bool loop_free) {
    std::vector<DoubleOccurrenceWord> out;
    if (n < 1) {
        return out;
    }
    std::vector<int> seq;
    std::vector<int> open_pos(n, -1);
    std::vector<bool> closed(n, false);
    seq.push_back(0);
    open_pos[0] = 0;
    enumerate_rec(n, loop_free, seq, open_pos, closed, 1, out);
    return out;
}

}  // namespace

std::vector<DoubleOccurrenceWord> enumerate_loop_free_words(int n) {
    return enumerate_words(n, true);
}

std::vector<DoubleOccurrenceWord> enumerate_all_words(int n) {
    return enumerate_words(n, false);
}

}  // namespace chordsim::oracle
