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

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chordsim/gaussian.hpp"

namespace chordsim {

/// How a step's measurement direction is chosen. Prefix keys are strings
/// over {+,-}, one character per earlier step in plan order.
class BasisResolver {
  public:
    static BasisResolver fixed(const BlochVector& direction);
    static BasisResolver table(std::map<std::string, BlochVector> entries);
    /// Callback resolvers must be pure functions of the prefix.
    static BasisResolver callback(std::function<BlochVector(const std::string&)> fn);

    BlochVector resolve(const std::string& prefix) const;
    bool is_static() const { return kind_ == Kind::Static; }
    bool is_table() const { return kind_ == Kind::Table; }
    const BlochVector& static_direction() const;
    const std::map<std::string, BlochVector>& table_entries() const { return table_; }

  private:
    enum class Kind { Static, Table, Callback };
    Kind kind_ = Kind::Static;
    BlochVector static_dir_;
    std::map<std::string, BlochVector> table_;
    std::function<BlochVector(const std::string&)> callback_;
};

struct PlanStep {
    Vertex qubit;
    BasisResolver basis;
};

/// Ordered measurement schedule; each qubit appears at most once.
struct MeasurementPlan {
    std::vector<PlanStep> steps;

    void validate(const DoubleOccurrenceWord& word) const;
    bool all_static() const;
};

/// Per-qubit local unitaries applied to the resource state. Measurement
/// directions are pre-rotated by the inverse Bloch rotation, so sampling
/// U|G> in direction a equals sampling |G> in direction R(U)^T a.
struct LocalFrame {
    std::map<Vertex, Eigen::Matrix2cd> unitaries;

    void validate() const;  // NotUnitary beyond 1e-12
};

struct TranscriptStep {
    Vertex qubit;
    BlochVector direction;  // effective (frame-rotated) direction used
    int outcome = 0;        // +1 or -1
    double conditional = 0.0;
};

struct Transcript {
    std::vector<TranscriptStep> steps;
    double joint_probability = 1.0;
    std::uint64_t seed = 0;
};

/// One output of the splitmix64 stream, used both for mixing seeds into the
/// engine and for deriving per-shot seeds.
std::uint64_t splitmix64_at(std::uint64_t state, std::uint64_t index);

/// Seed for shot k of a master seed: the (k+1)-th splitmix64 output.
std::uint64_t shot_seed(std::uint64_t master_seed, std::uint64_t shot);

/// Exact sequential chain-rule sampling. At each step the two-outcome
/// conditional comes from the Pfaffian marginal formulas; the outcome is
/// drawn from a mt19937_64 seeded with `seed` via 53-bit uniforms
/// ((engine() >> 11) * 2^-53), so transcripts are reproducible bit for bit.
Transcript sample_run(const DoubleOccurrenceWord& word, const MeasurementPlan& plan,
                      const std::optional<LocalFrame>& frame, std::uint64_t seed);

/// Full joint outcome distribution of a plan, keyed by outcome strings over
/// {+,-} in step order. Zero-probability branches are pruned when directions
/// below them are adaptive (such prefixes are unreachable); fully static
/// plans enumerate every outcome string. Requires at most 20 steps.
std::map<std::string, double> exact_distribution(const DoubleOccurrenceWord& word,
                                                 const MeasurementPlan& plan,
                                                 const std::optional<LocalFrame>& frame = {});

/// Two-outcome conditional (p_plus, p_minus) for measuring `next_qubit`
/// along `next_direction` given measured prefix outcomes.
std::pair<double, double> conditional(const DoubleOccurrenceWord& word,
                                      std::span<const Measurement> prefix,
                                      const Vertex& next_qubit,
                                      const BlochVector& next_direction);

}  // namespace chordsim
