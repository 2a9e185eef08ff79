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

#include <array>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "chordsim/errors.hpp"

namespace chordsim {

using Vertex = std::string;

/// A word in which every distinct letter occurs exactly twice. Encodes a
/// chord diagram: the cyclic order of letters is the order of chord endpoints
/// around the circle.
class DoubleOccurrenceWord {
  public:
    /// Validates the double-occurrence property (each letter exactly twice,
    /// length 2n); throws NotDoubleOccurrence otherwise.
    explicit DoubleOccurrenceWord(std::vector<Vertex> letters);

    /// One letter per character, e.g. "adbacbdc".
    static DoubleOccurrenceWord parse(std::string_view compact);

    const std::vector<Vertex>& letters() const { return letters_; }

    // Distinct letters ordered by first appearance. This ordering fixes the
    // Majorana index of (v, slot) as 4*rank(v) + slot - 1 everywhere
    // downstream; words are never canonicalized by rotation.
    const std::vector<Vertex>& vertex_order() const { return order_; }

    int vertex_count() const { return static_cast<int>(order_.size()); }
    int length() const { return static_cast<int>(letters_.size()); }
    bool has_vertex(const Vertex& v) const { return rank_.count(v) > 0; }

    /// 0-based rank by first appearance; throws UnknownVertex.
    int rank_of(const Vertex& v) const;

    /// The two positions (ascending) at which v occurs.
    std::array<int, 2> positions_of(const Vertex& v) const;

  private:
    std::vector<Vertex> letters_;
    std::vector<Vertex> order_;
    std::unordered_map<Vertex, int> rank_;
    std::vector<std::array<int, 2>> positions_;  // indexed by rank
};

/// One incidence of an edge on a vertex of a 4-regular multigraph.
struct HalfEdge {
    Vertex vertex;
    int slot = 0;  // 1..4
    bool operator==(const HalfEdge&) const = default;
};

struct DirectedEdge {
    HalfEdge from;
    HalfEdge to;
    bool operator==(const DirectedEdge&) const = default;
};

/// Eulerian tour of the 4-regular multigraph induced by a double-occurrence
/// word, with the fixed slot-labeling convention:
///
///   - start vertex: first departure is slot 4, first-return arrival slot 1,
///     following departure slot 2, final arrival slot 3;
///   - every other vertex: lowest unused slots in tour order, so the first
///     visit is (in 1, out 2) and the second (in 3, out 4).
///
/// Consequently every intra-vertex transition of the tour, read cyclically,
/// is 1->2 or 3->4.
class EulerTour {
  public:
    const DoubleOccurrenceWord& word() const { return word_; }
    const Vertex& start_vertex() const { return word_.letters().front(); }
    int vertex_count() const { return word_.vertex_count(); }

    /// The 4n half-edges in traversal order, beginning with the start
    /// vertex's slot-4 departure and ending with its slot-3 arrival.
    const std::vector<HalfEdge>& half_edge_sequence() const { return half_edges_; }

    /// The 2n directed edges in traversal order; directed_edges()[0] is the
    /// sign-flipped edge of the matching-state construction.
    const std::vector<DirectedEdge>& directed_edges() const { return directed_edges_; }

    /// Majorana/matrix index of a half-edge: 4*rank(vertex) + slot - 1.
    int majorana_index(const HalfEdge& h) const;

    /// Vertex sequence read off the tour; equals the generating word.
    std::vector<Vertex> vertex_sequence() const;

  private:
    friend EulerTour tour_from_word(const DoubleOccurrenceWord& word);
    explicit EulerTour(DoubleOccurrenceWord word) : word_(std::move(word)) {}

    DoubleOccurrenceWord word_;
    std::vector<HalfEdge> half_edges_;
    std::vector<DirectedEdge> directed_edges_;
};

/// The two edge-disjoint cycles obtained by rerouting the tour at a pivot
/// vertex. cycle1 takes the pivot transition 1->4 (so it runs from h_v^4 to
/// h_v^1); cycle2 takes 3->2 (runs from h_v^2 to h_v^3). Their directed
/// edges partition the tour's directed edges.
struct CycleSplit {
    std::vector<HalfEdge> cycle1;
    std::vector<HalfEdge> cycle2;
    Vertex pivot;
};

/// Builds the tour for a word. Requires the induced multigraph to be
/// loop-free (no cyclically adjacent equal letters) and connected.
EulerTour tour_from_word(const DoubleOccurrenceWord& word);

CycleSplit split_at(const EulerTour& tour, const Vertex& v);

/// Directed edges traversed by one cycle of a split, in order.
std::vector<DirectedEdge> cycle_directed_edges(const std::vector<HalfEdge>& cycle);

/// Number of times each vertex is visited by a cycle (by vertex rank).
std::vector<int> cycle_visit_counts(const DoubleOccurrenceWord& word,
                                    const std::vector<HalfEdge>& cycle);

}  // namespace chordsim
