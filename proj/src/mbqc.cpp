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

#include "chordsim/mbqc.hpp"

#include <random>
#include <set>

namespace chordsim {

BasisResolver BasisResolver::fixed(const BlochVector& direction) {
    BasisResolver r;
    r.kind_ = Kind::Static;
    r.static_dir_ = direction;
    return r;
}

BasisResolver BasisResolver::table(std::map<std::string, BlochVector> entries) {
    BasisResolver r;
    r.kind_ = Kind::Table;
    r.table_ = std::move(entries);
    return r;
}

BasisResolver BasisResolver::callback(std::function<BlochVector(const std::string&)> fn) {
    BasisResolver r;
    r.kind_ = Kind::Callback;
    r.callback_ = std::move(fn);
    return r;
}

BlochVector BasisResolver::resolve(const std::string& prefix) const {
    switch (kind_) {
        case Kind::Static:
            return static_dir_;
        case Kind::Table: {
            auto it = table_.find(prefix);
            if (it == table_.end()) {
                throw UnreachablePrefix("adaptive table has no entry for prefix \"" + prefix +
                                        "\"");
            }
            return it->second;
        }
        case Kind::Callback:
            return callback_(prefix);
    }
    throw SimError("unreachable");
}

const BlochVector& BasisResolver::static_direction() const {
    if (kind_ != Kind::Static) {
        throw BadInput("basis resolver is not static");
    }
    return static_dir_;
}

void MeasurementPlan::validate(const DoubleOccurrenceWord& word) const {
    std::set<Vertex> seen;
    for (const auto& step : steps) {
        if (!word.has_vertex(step.qubit)) {
            throw UnknownVertex("qubit '" + step.qubit + "' is not a letter of the word");
        }
        if (!seen.insert(step.qubit).second) {
            throw DuplicateVertex("qubit '" + step.qubit + "' appears twice in the plan");
        }
    }
}

bool MeasurementPlan::all_static() const {
    for (const auto& step : steps) {
        if (!step.basis.is_static()) {
            return false;
        }
    }
    return true;
}

void LocalFrame::validate() const {
    for (const auto& [v, u] : unitaries) {
        const double dev = (u * u.adjoint() - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
        if (dev > 1e-12) {
            throw NotUnitary("frame unitary on '" + v + "' deviates from unitarity by " +
                             std::to_string(dev));
        }
    }
}

std::uint64_t splitmix64_at(std::uint64_t state, std::uint64_t index) {
    std::uint64_t z = state + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t shot_seed(std::uint64_t master_seed, std::uint64_t shot) {
    return splitmix64_at(master_seed, shot);
}

namespace {

double uniform53(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Direction actually fed to the Gaussian formulas once the frame applies:
// measuring U|G> along a is measuring |G> along R(U)^T a.
BlochVector effective_direction(const std::optional<LocalFrame>& frame, const Vertex& qubit,
                                const BlochVector& a) {
    if (!frame || !frame->unitaries.count(qubit)) {
        return a;
    }
    const Eigen::Matrix3d r = bloch_rotation(frame->unitaries.at(qubit));
    Eigen::Vector3d v;
    v << a.x, a.y, a.z;
    const Eigen::Vector3d rotated = r.transpose() * v;
    return {rotated(0), rotated(1), rotated(2)};
}

std::pair<double, double> conditional_impl(const MatchingCovariance& cov,
                                           std::vector<Measurement>& measured,
                                           const Vertex& qubit, const BlochVector& direction) {
    const double p_prefix =
        measured.empty() ? 1.0 : marginal_prob(cov, measured);
    if (p_prefix <= 0.0) {
        throw ZeroPrefixProbability("conditional requested on a zero-probability prefix");
    }
    measured.push_back({qubit, direction, +1});
    const double p_plus = marginal_prob(cov, measured) / p_prefix;
    measured.back().outcome = -1;
    const double p_minus = marginal_prob(cov, measured) / p_prefix;
    measured.pop_back();
    return {p_plus, p_minus};
}

}  // namespace

Transcript sample_run(const DoubleOccurrenceWord& word, const MeasurementPlan& plan,
                      const std::optional<LocalFrame>& frame, std::uint64_t seed) {
    plan.validate(word);
    if (frame) {
        frame->validate();
    }
    const MatchingCovariance cov = matching_covariance(tour_from_word(word));

    Transcript transcript;
    transcript.seed = seed;
    std::mt19937_64 rng(seed);
    std::string prefix;
    std::vector<Measurement> measured;
    for (const auto& step : plan.steps) {
        const BlochVector direction =
            effective_direction(frame, step.qubit, step.basis.resolve(prefix));
        if (!direction.is_unit()) {
            throw NotUnit("resolved direction for '" + step.qubit + "' is not a unit vector");
        }
        auto [p_plus, p_minus] = conditional_impl(cov, measured, step.qubit, direction);
        const int outcome = uniform53(rng) < p_plus ? +1 : -1;
        const double cond = outcome > 0 ? p_plus : p_minus;
        measured.push_back({step.qubit, direction, outcome});
        transcript.steps.push_back({step.qubit, direction, outcome, cond});
        transcript.joint_probability *= cond;
        prefix.push_back(outcome > 0 ? '+' : '-');
    }
    return transcript;
}

namespace {

void distribution_rec(const MatchingCovariance& cov, const MeasurementPlan& plan,
                      const std::optional<LocalFrame>& frame, std::vector<Measurement>& measured,
                      std::string& prefix, size_t depth, bool prune_zero,
                      std::map<std::string, double>& out) {
    if (depth == plan.steps.size()) {
        out[prefix] = measured.empty() ? 1.0 : marginal_prob(cov, measured);
        return;
    }
    const auto& step = plan.steps[depth];
    const BlochVector direction =
        effective_direction(frame, step.qubit, step.basis.resolve(prefix));
    if (!direction.is_unit()) {
        throw NotUnit("resolved direction for '" + step.qubit + "' is not a unit vector");
    }
    for (int outcome : {+1, -1}) {
        measured.push_back({step.qubit, direction, outcome});
        prefix.push_back(outcome > 0 ? '+' : '-');
        const double p = marginal_prob(cov, measured);
        if (p > 0.0 || !prune_zero) {
            distribution_rec(cov, plan, frame, measured, prefix, depth + 1, prune_zero, out);
        }
        prefix.pop_back();
        measured.pop_back();
    }
}

}  // namespace

std::map<std::string, double> exact_distribution(const DoubleOccurrenceWord& word,
                                                 const MeasurementPlan& plan,
                                                 const std::optional<LocalFrame>& frame) {
    plan.validate(word);
    if (frame) {
        frame->validate();
    }
    if (plan.steps.size() > 20) {
        throw TooLarge("exact distribution supports at most 20 measured qubits");
    }
    const MatchingCovariance cov = matching_covariance(tour_from_word(word));
    std::map<std::string, double> out;
    std::vector<Measurement> measured;
    std::string prefix;
    // Zero-probability prefixes are unreachable, so adaptive tables may omit
    // them; only fully static plans can enumerate below a zero branch.
    const bool prune_zero = !plan.all_static();
    distribution_rec(cov, plan, frame, measured, prefix, 0, prune_zero, out);
    return out;
}

std::pair<double, double> conditional(const DoubleOccurrenceWord& word,
                                      std::span<const Measurement> prefix,
                                      const Vertex& next_qubit,
                                      const BlochVector& next_direction) {
    const MatchingCovariance cov = matching_covariance(tour_from_word(word));
    std::vector<Measurement> measured(prefix.begin(), prefix.end());
    return conditional_impl(cov, measured, next_qubit, next_direction);
}

}  // namespace chordsim
