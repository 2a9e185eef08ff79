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
#include <vector>

#include "chordsim/multigraph.hpp"

namespace chordsim {

struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const;
    bool is_unit(double tol = 1e-9) const;
    BlochVector scaled(double factor) const { return {factor * x, factor * y, factor * z}; }
    bool operator==(const BlochVector&) const = default;
};

/// Pfaffian of a real skew-symmetric matrix by skew tridiagonalization with
/// partial pivoting, tracking the pivot permutation sign. Odd dimension
/// returns 0. Skewness is checked to 1e-12 relative; throws NotSkew.
double pfaffian(const Eigen::MatrixXd& skew);

/// Pfaffian of the principal submatrix on `indices` (0-based, strictly
/// increasing).
double pfaffian_of_submatrix(const Eigen::MatrixXd& skew, const std::vector<int>& indices);

/// 4x4 covariance block of the fermionic lift of a single-qubit state with
/// Bloch vector (x, y, z):
///   [[ 0,  z, -y,  x],
///    [-z,  0,  x,  y],
///    [ y, -x,  0,  z],
///    [-x, -y, -z,  0]].
/// Non-unit vectors are allowed and describe mixed single-qubit states.
Eigen::Matrix4d bloch_lift(const BlochVector& b);

/// Covariance matrix of the matching state of a tour: the skew-adjacency
/// matrix of the directed perfect matching, with the first tour edge carrying
/// -1 and every other directed edge +1. Rows/columns are indexed by
/// 4*rank(vertex) + slot - 1.
class MatchingCovariance {
  public:
    const Eigen::MatrixXd& gamma() const { return gamma_; }
    const EulerTour& tour() const { return tour_; }
    int vertex_count() const { return tour_.vertex_count(); }
    int dimension() const { return static_cast<int>(gamma_.rows()); }
    int index_of(const HalfEdge& h) const { return tour_.majorana_index(h); }

  private:
    friend MatchingCovariance matching_covariance(const EulerTour& tour);
    MatchingCovariance(Eigen::MatrixXd gamma, EulerTour tour)
        : gamma_(std::move(gamma)), tour_(std::move(tour)) {}

    Eigen::MatrixXd gamma_;
    EulerTour tour_;
};

MatchingCovariance matching_covariance(const EulerTour& tour);

/// Block-diagonal covariance of an n-qubit product state lift.
class ProductCovariance {
  public:
    ProductCovariance(Eigen::MatrixXd gamma, std::vector<BlochVector> blochs)
        : gamma_(std::move(gamma)), blochs_(std::move(blochs)) {}

    const Eigen::MatrixXd& gamma() const { return gamma_; }
    const std::vector<BlochVector>& blochs() const { return blochs_; }
    int dimension() const { return static_cast<int>(gamma_.rows()); }

  private:
    Eigen::MatrixXd gamma_;
    std::vector<BlochVector> blochs_;
};

ProductCovariance product_covariance(const std::vector<BlochVector>& blochs);

/// Wick expectation i^{|Q|/2} pf(S[Q]) for an even index subset Q (0-based,
/// strictly increasing). Throws OddSupport for odd |Q|.
std::complex<double> wick_expectation(const Eigen::MatrixXd& skew, const std::vector<int>& q);

/// SO(4) representation of the matchgate lift of a single-qubit unitary:
/// the orthogonal O with M^dag c_j M = sum_k O_{jk} c_k. Satisfies
/// O * bloch_lift((0,0,1)) * O^T = bloch_lift(Bloch vector of U|0>).
Eigen::Matrix4d matchgate_orthogonal(const Eigen::Matrix2cd& u);

/// |<Phi|G>|^2 = 2^{-(n+1)} pf(Gamma_Phi + Gamma_Psi) for a pure product
/// state against the circle graph state embedded in the matching state.
/// Values in [-1e-9, 0) clamp to 0; below that throws NegativeProbability.
/// The distance moved by clamping is written to *clamp_distance if non-null.
double overlap_full(const ProductCovariance& phi, const MatchingCovariance& psi,
                    double* clamp_distance = nullptr);

/// A single measured qubit: direction must be a unit Bloch vector, outcome
/// is +1 or -1 (the effective lifted vector is outcome * direction).
struct Measurement {
    Vertex vertex;
    BlochVector direction;
    int outcome = +1;
};

/// Marginal probability of observing the given outcomes. For t = n-1 this is
///   2^{-t} pf((Gamma_Phi + Gamma_Psi)[measured blocks])
/// with blocks selected per measured vertex (ascending matrix order; block
/// permutations of both summands are even, so the order does not matter).
/// Measuring all n qubits dispatches to overlap_full; an empty list gives 1.
///
/// For t < n-1 the submatrix Pfaffian alone is NOT always the marginal: it
/// computes 2^t tr(phi_1..phi_t Psi), which acquires gauge-sector cross
/// terms whenever the multigraph has an even-degree edge subset covering an
/// unmeasured vertex entirely while avoiding another (this already happens
/// for some four-letter words, and for nearly every word at six letters).
/// The implementation therefore sums the t = n-1 formula over Z outcomes of
/// all but one unmeasured qubit, which is exact for every word at cost
/// O(2^{n-1-t}) Pfaffians.
double marginal_prob(const MatchingCovariance& psi, std::span<const Measurement> measured,
                     double* clamp_distance = nullptr);

/// tr(rho1 rho2) for Gaussian states from covariance matrices:
///   2^{-N} pf(G') pf(-G'^{-1} + (O Gamma2 O^T)[2r])
/// where Gamma1 = O^T diag(G', 0) O with invertible G' of rank 2r.
double mixed_overlap(const Eigen::MatrixXd& gamma1, const Eigen::MatrixXd& gamma2);

/// Spinor of the +1 eigenstate of b . sigma for unit b.
Eigen::Vector2cd bloch_to_spinor(const BlochVector& b);
BlochVector bloch_of_spinor(const Eigen::Vector2cd& s);

/// Rotation R with U (b.sigma) U^dag = (R b).sigma (column convention).
Eigen::Matrix3d bloch_rotation(const Eigen::Matrix2cd& u);

}  // namespace chordsim
