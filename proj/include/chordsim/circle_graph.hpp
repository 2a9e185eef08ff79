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
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "chordsim/multigraph.hpp"

namespace chordsim {

/// Undirected simple graph with named vertices. Adjacency is symmetric with
/// an all-zero diagonal; self-edges are rejected.
class SimpleGraph {
  public:
    SimpleGraph() = default;
    explicit SimpleGraph(std::vector<Vertex> vertices);
    SimpleGraph(std::vector<Vertex> vertices,
                const std::vector<std::pair<Vertex, Vertex>>& edges);

    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    const std::vector<Vertex>& vertices() const { return vertices_; }
    bool has_vertex(const Vertex& v) const;
    int index_of(const Vertex& v) const;  // throws UnknownVertex

    void add_edge(const Vertex& v, const Vertex& w);
    bool adjacent(const Vertex& v, const Vertex& w) const;
    bool adjacent_by_index(int i, int j) const { return adj_[i][j] != 0; }

    /// Edges with endpoints ordered by vertex index, sorted.
    std::vector<std::pair<Vertex, Vertex>> edges() const;
    int edge_count() const;
    std::vector<Vertex> neighbors(const Vertex& v) const;

    /// Adjacency row packed into a word (requires vertex_count() <= 64).
    std::uint64_t row_bits(int i) const;

    /// Labeled equality: identical vertex sets and edge sets, independent of
    /// vertex ordering.
    bool operator==(const SimpleGraph& other) const;

  private:
    std::vector<Vertex> vertices_;
    std::map<Vertex, int> index_;
    std::vector<std::vector<std::uint8_t>> adj_;
};

/// Alternance graph of a double-occurrence word: edge {v,w} iff the
/// occurrences interleave as v..w..v..w cyclically. Vertices keep the word's
/// first-appearance order.
SimpleGraph alternance_graph(const DoubleOccurrenceWord& word);

/// Complements the subgraph induced by the neighborhood of v.
SimpleGraph local_complement(const SimpleGraph& g, const Vertex& v);

SimpleGraph delete_vertex(const SimpleGraph& g, const Vertex& v);

struct VertexMinorOptions {
    /// When false (default) the target must match as a labeled graph; when
    /// true any isomorphic copy counts.
    bool up_to_isomorphism = false;
    /// Maximum number of distinct (vertex set, adjacency) states explored.
    std::size_t budget = 1000000;
};

/// Exhaustive BFS over local complementations and vertex deletions.
bool is_vertex_minor(const SimpleGraph& h, const SimpleGraph& g,
                     const VertexMinorOptions& options = {});

/// GF(2) rank of the biadjacency matrix between `side` and its complement.
int cut_rank(const SimpleGraph& g, const std::vector<Vertex>& side);

/// Subcubic tree with leaves bijectively labeled by graph vertices. Node ids
/// 0..n-1 are leaves (in graph vertex order); higher ids are internal.
struct RankDecomposition {
    std::vector<std::pair<int, int>> tree_edges;
    std::map<Vertex, int> leaf_of;
    int width = 0;
};

/// Minimum over all rank decompositions of the maximum edge cut rank,
/// with a witness decomposition. Exhaustive; requires n <= 9.
std::pair<int, RankDecomposition> rank_width_exact(const SimpleGraph& g);

/// Checks log2(#nonzero Schmidt coefficients of |G>) == cut rank for every
/// bipartition. Requires n <= 8.
bool entanglement_width_check(const SimpleGraph& g);

/// n^2 vertices "i,j" (1-based); edges between coordinate-wise comparable
/// distinct pairs.
SimpleGraph comparability_grid(int n);

/// Exhaustive search for a word whose alternance graph equals g (labeled
/// equality), or nullopt if none exists. Requires n <= 6.
std::optional<DoubleOccurrenceWord> find_word_bruteforce(const SimpleGraph& g);

/// True iff the graphs are isomorphic (backtracking; intended for n <= 8).
bool graphs_isomorphic(const SimpleGraph& a, const SimpleGraph& b);

}  // namespace chordsim
