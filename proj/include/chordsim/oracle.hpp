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

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "chordsim/circle_graph.hpp"
#include "chordsim/gaussian.hpp"
#include "chordsim/multigraph.hpp"

// Dense brute-force reference implementations. Nothing here consumes the
// covariance-matrix code paths except inside explicit comparison checks; the
// two routes stay independent by policy.
namespace chordsim::oracle {

/// Pauli string i^phase * X^x Z^z over `qubits` qubits (bit j of an index is
/// qubit j). Majorana monomials and matching-state stabilizers are products
/// of these, so operator algebra stays exact and cheap.
struct PauliString {
    int qubits = 0;
    unsigned phase_pow = 0;  // power of i, mod 4
    std::uint32_t x = 0;
    std::uint32_t z = 0;

    static PauliString identity(int qubits) { return {qubits, 0, 0, 0}; }

    PauliString operator*(const PauliString& o) const;
    std::complex<double> phase() const;
    bool operator==(const PauliString&) const = default;

    Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;
    Eigen::MatrixXcd dense() const;
    std::complex<double> expectation(const Eigen::VectorXcd& psi) const;
    std::complex<double> trace_with(const Eigen::MatrixXcd& rho) const;
};

/// Majorana operator c_m (0-based m in [0, 4n)) over 2n fermionic modes via
/// the sequential pairing: c_{2k} = Z_0..Z_{k-1} X_k, c_{2k+1} = Z_0..Z_{k-1} Y_k.
/// Index (vertex, slot) maps to m = 4*rank + slot - 1.
PauliString majorana_string(int n_vertices, int majorana_index);

/// Local gauge operator D_v = -c^1 c^2 c^3 c^4 of a vertex.
PauliString gauge_string(int n_vertices, int vertex_rank);

/// Stabilizer of one directed tour edge: -i c_from c_to, except the first
/// tour edge which carries +i.
PauliString edge_operator(const EulerTour& tour, int edge_index);

/// Graph state amplitudes (+-2^{-n/2}); bit r of the index is vertex rank r.
Eigen::VectorXcd graph_state_vector(const SimpleGraph& g);  // n <= 14

/// 4n mutually anticommuting Hermitian involutions, dimension 4^n.
std::vector<Eigen::MatrixXcd> majorana_matrices(int n);  // n <= 4

/// Matching state as a dense rank-1 projector via the product of edge
/// projectors.
Eigen::MatrixXcd build_matching_state_dense(const EulerTour& tour);  // n <= 4

/// Matching state as a state vector (global phase unspecified).
Eigen::VectorXcd matching_state_vector(const EulerTour& tour);  // n <= 7

/// Covariance from a pure fermionic state: -i <psi| c_j c_k |psi>.
Eigen::MatrixXd covariance_of_state(const Eigen::VectorXcd& psi, int n);

/// Covariance of a dense density operator, entrywise -(i/2) tr([c_j,c_k] rho).
Eigen::MatrixXd covariance_of_dense(const Eigen::MatrixXcd& rho, int n);

struct CheckResult {
    std::string name;
    bool pass = false;
    double deviation = 0.0;
};

struct Report {
    std::vector<CheckResult> checks;

    void add(std::string name, double deviation, double tol);
    bool all_pass() const;
    double max_deviation() const;
    void merge(const Report& other);
};

/// All 16 single-vertex two-Majorana products against the encoded-qubit
/// multiplication table (projection to the D = +1 eigenspace).
Report verify_multiplication_table();

/// Cycle operators of every split: product over both cycles equals the
/// global parity, the 3->2 cycle operator acts as X_v prod Z_w on the
/// all-plus gauge sector, and the two cycle operators agree up to sign on
/// every gauge sector.
Report verify_cycle_stabilizers(const EulerTour& tour);  // n <= 4

/// Sector weights 2^{-(n-1)} on even gauge sectors, 0 on odd ones, and the
/// all-plus sector decodes to the circle graph state.
Report verify_embedding(const EulerTour& tour);  // n <= 4

/// Wick's theorem on the matching state: tr(c_Q Psi) = i^{|Q|/2} pf(Gamma[Q])
/// over every even subset Q.
Report verify_wick(const EulerTour& tour);  // n <= 3

/// Covariance-matrix invariants plus split structure; any n (kept modest).
Report verify_matching_invariants(const DoubleOccurrenceWord& word);

/// Pfaffian formulas against statevector probabilities on deterministic
/// pseudo-random product states.
Report verify_probability_formulas(const DoubleOccurrenceWord& word);  // n <= 8

/// Composite used by the CLI: runs everything applicable at the word's size.
Report verify_word(const DoubleOccurrenceWord& word);

/// Exact projective-measurement marginal from the graph statevector.
double brute_marginal(const SimpleGraph& g, std::span<const Measurement> measured);  // n <= 10

/// Marginal of an arbitrary statevector: squared norm after contracting each
/// measured qubit (by index) with its outcome spinor.
double statevector_marginal(const Eigen::VectorXcd& psi,
                            std::span<const std::pair<int, Eigen::Vector2cd>> measured);

/// |<Phi|G>|^2 from the statevector.
double brute_overlap(const SimpleGraph& g, const std::vector<BlochVector>& blochs);

/// Statevector with a single-qubit unitary applied to one qubit.
Eigen::VectorXcd apply_single_qubit(const Eigen::VectorXcd& psi, int qubit,
                                    const Eigen::Matrix2cd& u);

/// Normalized density operator of measured-qubit encoded projectors tensored
/// with maximally mixed unmeasured vertices (dimension 4^n).
Eigen::MatrixXcd measured_product_density(const DoubleOccurrenceWord& word,
                                          std::span<const Measurement> measured);  // n <= 4

/// Covariance of measured_product_density: lift blocks on measured vertices,
/// zero blocks elsewhere.
Eigen::MatrixXd measured_product_covariance(const DoubleOccurrenceWord& word,
                                            std::span<const Measurement> measured);

/// All loop-free connected double-occurrence words with n letters, one
/// canonical representative per rotation/reversal/relabeling class. Letters
/// are "a", "b", ... in first-appearance order.
std::vector<DoubleOccurrenceWord> enumerate_loop_free_words(int n);

/// Like enumerate_loop_free_words but keeping words with cyclically adjacent
/// repeats; their alternance graphs cover every circle graph on n vertices.
std::vector<DoubleOccurrenceWord> enumerate_all_words(int n);

}  // namespace chordsim::oracle
