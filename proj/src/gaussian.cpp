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

#include "chordsim/gaussian.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <unsupported/Eigen/KroneckerProduct>

namespace chordsim {

double BlochVector::norm() const {
    return std::sqrt(x * x + y * y + z * z);
}

bool BlochVector::is_unit(double tol) const {
    return std::abs(norm() - 1.0) <= tol;
}

namespace {

void check_skew(const Eigen::MatrixXd& s) {
    if (s.rows() != s.cols()) {
        throw NotSkew("matrix is not square");
    }
    if (s.rows() == 0) {
        return;
    }
    const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
    const double dev = (s + s.transpose()).cwiseAbs().maxCoeff();
    if (dev > 1e-12 * scale) {
        throw NotSkew("matrix deviates from skew-symmetry by " + std::to_string(dev));
    }
}

double pfaffian_unchecked(Eigen::MatrixXd a) {
    const Eigen::Index dim = a.rows();
    if (dim % 2 == 1) {
        return 0.0;
    }
    if (dim == 0) {
        return 1.0;
    }
    double pf = 1.0;
    for (Eigen::Index k = 0; k + 1 < dim; k += 2) {
        // Largest |a(j, k)| below the diagonal as pivot.
        Eigen::Index rel = 0;
        a.col(k).segment(k + 1, dim - k - 1).cwiseAbs().maxCoeff(&rel);
        const Eigen::Index piv = k + 1 + rel;
        if (piv != k + 1) {
            a.row(k + 1).swap(a.row(piv));
            a.col(k + 1).swap(a.col(piv));
            pf = -pf;
        }
        const double pivot = a(k, k + 1);
        if (pivot == 0.0) {
            return 0.0;
        }
        pf *= pivot;
        const Eigen::Index rest = dim - k - 2;
        if (rest > 0) {
            Eigen::VectorXd tau = a.row(k).segment(k + 2, rest).transpose() / pivot;
            Eigen::VectorXd col = a.col(k + 1).segment(k + 2, rest);
            a.block(k + 2, k + 2, rest, rest).noalias() += tau * col.transpose();
            a.block(k + 2, k + 2, rest, rest).noalias() -= col * tau.transpose();
        }
    }
    return pf;
}

}  // namespace

double pfaffian(const Eigen::MatrixXd& skew) {
    check_skew(skew);
    return pfaffian_unchecked(skew);
}

double pfaffian_of_submatrix(const Eigen::MatrixXd& skew, const std::vector<int>& indices) {
    const int k = static_cast<int>(indices.size());
    Eigen::MatrixXd sub(k, k);
    for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
            sub(a, b) = skew(indices[a], indices[b]);
        }
    }
    return pfaffian(sub);
}

Eigen::Matrix4d bloch_lift(const BlochVector& b) {
    Eigen::Matrix4d m;
    // clang-format off
    m <<  0.0,  b.z, -b.y,  b.x,
         -b.z,  0.0,  b.x,  b.y,
          b.y, -b.x,  0.0,  b.z,
         -b.x, -b.y, -b.z,  0.0;
    // clang-format on
    return m;
}

MatchingCovariance matching_covariance(const EulerTour& tour) {
    const int dim = 4 * tour.vertex_count();
    Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(dim, dim);
    const auto& edges = tour.directed_edges();
    for (size_t e = 0; e < edges.size(); ++e) {
        const int i = tour.majorana_index(edges[e].from);
        const int j = tour.majorana_index(edges[e].to);
        const double val = (e == 0) ? -1.0 : 1.0;
        gamma(i, j) = val;
        gamma(j, i) = -val;
    }
    return MatchingCovariance(std::move(gamma), tour);
}

ProductCovariance product_covariance(const std::vector<BlochVector>& blochs) {
    const int n = static_cast<int>(blochs.size());
    Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(4 * n, 4 * n);
    for (int j = 0; j < n; ++j) {
        gamma.block<4, 4>(4 * j, 4 * j) = bloch_lift(blochs[j]);
    }
    return ProductCovariance(std::move(gamma), blochs);
}

std::complex<double> wick_expectation(const Eigen::MatrixXd& skew, const std::vector<int>& q) {
    if (q.size() % 2 != 0) {
        throw OddSupport("Wick expectation needs an even index subset");
    }
    for (size_t i = 0; i < q.size(); ++i) {
        if (q[i] < 0 || q[i] >= skew.rows() || (i > 0 && q[i] <= q[i - 1])) {
            throw BadInput("indices must be strictly increasing and in range");
        }
    }
    static const std::complex<double> i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return i_pow[(q.size() / 2) % 4] * pfaffian_of_submatrix(skew, q);
}

namespace {

// Pauli matrices and the four Majorana operators of a single vertex, in the
// occupation basis of its two fermionic modes (qubit 0 = low bit).
struct LocalMajoranas {
    Eigen::Matrix4cd c[4];
    LocalMajoranas() {
        using namespace std::complex_literals;
        Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
        Eigen::Matrix2cd x, y, z;
        x << 0, 1, 1, 0;
        y << 0, -1i, 1i, 0;
        z << 1, 0, 0, -1;
        c[0] = Eigen::kroneckerProduct(id, x);  // X on mode 0
        c[1] = Eigen::kroneckerProduct(id, y);  // Y on mode 0
        c[2] = Eigen::kroneckerProduct(x, z);   // Z_0 X_1
        c[3] = Eigen::kroneckerProduct(y, z);   // Z_0 Y_1
    }
};

}  // namespace

Eigen::Matrix4d matchgate_orthogonal(const Eigen::Matrix2cd& u) {
    const double unit_dev =
        (u * u.adjoint() - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
    if (unit_dev > 1e-12) {
        throw NotUnitary("input deviates from unitarity by " + std::to_string(unit_dev));
    }
    // Matchgate on the vertex's two modes: the even-parity block {|00>,|11>}
    // and the odd block {|01>,|10>} both carry U.
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 0) = u(0, 0);
    m(0, 3) = u(0, 1);
    m(3, 0) = u(1, 0);
    m(3, 3) = u(1, 1);
    m(1, 1) = u(0, 0);
    m(1, 2) = u(0, 1);
    m(2, 1) = u(1, 0);
    m(2, 2) = u(1, 1);

    static const LocalMajoranas mj;
    Eigen::Matrix4d o;
    for (int j = 0; j < 4; ++j) {
        const Eigen::Matrix4cd conj = m.adjoint() * mj.c[j] * m;
        for (int k = 0; k < 4; ++k) {
            const std::complex<double> coeff = (conj * mj.c[k]).trace() / 4.0;
            if (std::abs(coeff.imag()) > 1e-10) {
                throw NotUnitary("matchgate conjugation left the Majorana span");
            }
            o(j, k) = coeff.real();
        }
    }
    return o;
}

namespace {

double clamp_probability(double raw, double* clamp_distance) {
    if (raw < -1e-9) {
        throw NegativeProbability("probability " + std::to_string(raw) +
                                  " below tolerance; construction bug");
    }
    const double clamped = std::clamp(raw, 0.0, 1.0);
    if (clamp_distance != nullptr) {
        *clamp_distance = std::abs(clamped - raw);
    }
    return clamped;
}

}  // namespace

double overlap_full(const ProductCovariance& phi, const MatchingCovariance& psi,
                    double* clamp_distance) {
    if (phi.dimension() != psi.dimension()) {
        throw DimensionMismatch("product state has " + std::to_string(phi.dimension() / 4) +
                                " qubits, matching state has " +
                                std::to_string(psi.dimension() / 4));
    }
    for (const auto& b : phi.blochs()) {
        if (!b.is_unit()) {
            throw NotUnit("product-state Bloch vectors must be unit length");
        }
    }
    const int n = psi.vertex_count();
    const double pf = pfaffian(phi.gamma() + psi.gamma());
    return clamp_probability(std::ldexp(pf, -(n + 1)), clamp_distance);
}

namespace {

// 2^{-t} pf((Gamma_Phi + Gamma_Psi)[measured blocks]) on sorted ranks. Valid
// as the marginal for t >= n-1 (see marginal_prob); used as a building block
// below that threshold.
double block_pfaffian_marginal(const MatchingCovariance& psi, const std::vector<int>& ranks,
                               const std::vector<BlochVector>& effective) {
    const int t = static_cast<int>(ranks.size());
    std::vector<int> indices;
    indices.reserve(4 * t);
    for (int r : ranks) {
        for (int s = 0; s < 4; ++s) {
            indices.push_back(4 * r + s);
        }
    }
    Eigen::MatrixXd sum(4 * t, 4 * t);
    for (int a = 0; a < 4 * t; ++a) {
        for (int b = 0; b < 4 * t; ++b) {
            sum(a, b) = psi.gamma()(indices[a], indices[b]);
        }
    }
    for (int k = 0; k < t; ++k) {
        sum.block<4, 4>(4 * k, 4 * k) += bloch_lift(effective[ranks[k]]);
    }
    return std::ldexp(pfaffian(sum), -t);
}

}  // namespace

double marginal_prob(const MatchingCovariance& psi, std::span<const Measurement> measured,
                     double* clamp_distance) {
    const int n = psi.vertex_count();
    const int t = static_cast<int>(measured.size());
    if (t == 0) {
        if (clamp_distance != nullptr) {
            *clamp_distance = 0.0;
        }
        return 1.0;
    }

    const auto& word = psi.tour().word();
    std::vector<int> ranks;
    std::vector<BlochVector> effective(n);
    std::vector<bool> seen(n, false);
    for (const auto& m : measured) {
        const int r = word.rank_of(m.vertex);
        if (seen[r]) {
            throw DuplicateVertex("vertex '" + m.vertex + "' measured twice");
        }
        seen[r] = true;
        if (!m.direction.is_unit()) {
            throw NotUnit("measurement directions must be unit Bloch vectors");
        }
        if (m.outcome != 1 && m.outcome != -1) {
            throw BadInput("outcomes must be +1 or -1");
        }
        ranks.push_back(r);
        effective[r] = m.direction.scaled(static_cast<double>(m.outcome));
    }

    if (t == n) {
        // All qubits measured: the 2^{-(n+1)} full-overlap normalization
        // applies instead of 2^{-t}.
        std::vector<BlochVector> blochs(effective.begin(), effective.end());
        return overlap_full(product_covariance(blochs), psi, clamp_distance);
    }

    std::sort(ranks.begin(), ranks.end());
    if (t == n - 1) {
        return clamp_probability(block_pfaffian_marginal(psi, ranks, effective),
                                 clamp_distance);
    }

    // With two or more unmeasured qubits the plain submatrix Pfaffian can
    // pick up gauge-sector cross terms: any even-degree edge subset of the
    // multigraph that covers some unmeasured vertex with all four half-edges
    // while avoiding another contributes to 2^t tr(phi Psi) but not to the
    // graph-state marginal. Marginalizing explicitly over all but one of the
    // unmeasured qubits stays within the always-valid t = n-1 case.
    std::vector<int> aux;
    for (int r = 0; r < n; ++r) {
        if (!seen[r]) {
            aux.push_back(r);
        }
    }
    aux.pop_back();  // leave one qubit traced out
    std::vector<int> full_ranks = ranks;
    full_ranks.insert(full_ranks.end(), aux.begin(), aux.end());
    std::sort(full_ranks.begin(), full_ranks.end());

    double total = 0.0;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << aux.size()); ++mask) {
        for (size_t k = 0; k < aux.size(); ++k) {
            const double sign = (mask >> k) & 1u ? -1.0 : 1.0;
            effective[aux[k]] = BlochVector{0.0, 0.0, sign};
        }
        total += block_pfaffian_marginal(psi, full_ranks, effective);
    }
    return clamp_probability(total, clamp_distance);
}

double mixed_overlap(const Eigen::MatrixXd& gamma1, const Eigen::MatrixXd& gamma2) {
    check_skew(gamma1);
    check_skew(gamma2);
    if (gamma1.rows() != gamma2.rows()) {
        throw DimensionMismatch("covariance matrices differ in dimension");
    }
    const int dim = static_cast<int>(gamma1.rows());
    if (dim % 2 != 0) {
        throw DimensionMismatch("covariance dimension must be even");
    }
    const int n_modes = dim / 2;

    // Real Schur form of a skew matrix is block diagonal with 2x2 blocks
    // [[0, l], [-l, 0]] and explicit zeros.
    Eigen::RealSchur<Eigen::MatrixXd> schur(gamma1);
    const Eigen::MatrixXd& t = schur.matrixT();
    const Eigen::MatrixXd& q = schur.matrixU();

    std::vector<std::pair<int, double>> blocks;  // (first index, lambda)
    std::vector<int> zeros;
    for (int i = 0; i < dim;) {
        if (i + 1 < dim && std::abs(t(i, i + 1)) > 1e-10) {
            blocks.emplace_back(i, t(i, i + 1));
            i += 2;
        } else {
            zeros.push_back(i);
            i += 1;
        }
    }
    const int rank = 2 * static_cast<int>(blocks.size());

    // Permutation bringing nonzero blocks to the front: O = P Q^T.
    std::vector<int> order;
    for (const auto& [i, l] : blocks) {
        order.push_back(i);
        order.push_back(i + 1);
    }
    for (int i : zeros) {
        order.push_back(i);
    }
    Eigen::MatrixXd o(dim, dim);
    for (int row = 0; row < dim; ++row) {
        o.row(row) = q.col(order[row]).transpose();
    }

    double pf_core = 1.0;
    Eigen::MatrixXd neg_inverse = Eigen::MatrixXd::Zero(rank, rank);
    for (size_t k = 0; k < blocks.size(); ++k) {
        const double lambda = blocks[k].second;
        pf_core *= lambda;
        neg_inverse(2 * k, 2 * k + 1) = 1.0 / lambda;
        neg_inverse(2 * k + 1, 2 * k) = -1.0 / lambda;
    }

    Eigen::MatrixXd rotated = o * gamma2 * o.transpose();
    const double pf_tail = pfaffian(neg_inverse + rotated.topLeftCorner(rank, rank));
    return std::ldexp(pf_core * pf_tail, -n_modes);
}

Eigen::Vector2cd bloch_to_spinor(const BlochVector& b) {
    if (!b.is_unit(1e-6)) {
        throw NotUnit("spinor requires a unit Bloch vector");
    }
    const double z = std::clamp(b.z, -1.0, 1.0);
    const double theta = std::acos(z);
    const double phi = std::atan2(b.y, b.x);
    Eigen::Vector2cd s;
    s(0) = std::cos(theta / 2.0);
    s(1) = std::polar(std::sin(theta / 2.0), phi);
    return s;
}

BlochVector bloch_of_spinor(const Eigen::Vector2cd& s) {
    const std::complex<double> cross = std::conj(s(0)) * s(1);
    return {2.0 * cross.real(), 2.0 * cross.imag(), std::norm(s(0)) - std::norm(s(1))};
}

Eigen::Matrix3d bloch_rotation(const Eigen::Matrix2cd& u) {
    using namespace std::complex_literals;
    Eigen::Matrix2cd sigma[3];
    sigma[0] << 0, 1, 1, 0;
    sigma[1] << 0, -1i, 1i, 0;
    sigma[2] << 1, 0, 0, -1;
    Eigen::Matrix3d r;
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
            r(j, k) = 0.5 * (sigma[j] * u * sigma[k] * u.adjoint()).trace().real();
        }
    }
    return r;
}

}  // namespace chordsim
