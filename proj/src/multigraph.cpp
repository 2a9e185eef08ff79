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

#include "chordsim/multigraph.hpp"

#include <algorithm>
#include <queue>

namespace chordsim {

DoubleOccurrenceWord::DoubleOccurrenceWord(std::vector<Vertex> letters)
    : letters_(std::move(letters)) {
    std::unordered_map<Vertex, int> count;
    for (const auto& v : letters_) {
        count[v]++;
        if (rank_.find(v) == rank_.end()) {
            rank_[v] = static_cast<int>(order_.size());
            order_.push_back(v);
        }
    }
    for (const auto& [v, c] : count) {
        if (c != 2) {
            throw NotDoubleOccurrence("letter '" + v + "' occurs " + std::to_string(c) +
                                      " times, expected exactly 2");
        }
    }
    if (letters_.empty()) {
        throw NotDoubleOccurrence("empty word");
    }
    positions_.assign(order_.size(), {-1, -1});
    for (int i = 0; i < static_cast<int>(letters_.size()); ++i) {
        auto& p = positions_[rank_[letters_[i]]];
        (p[0] < 0 ? p[0] : p[1]) = i;
    }
}

DoubleOccurrenceWord DoubleOccurrenceWord::parse(std::string_view compact) {
    std::vector<Vertex> letters;
    letters.reserve(compact.size());
    for (char c : compact) {
        letters.emplace_back(1, c);
    }
    return DoubleOccurrenceWord(std::move(letters));
}

int DoubleOccurrenceWord::rank_of(const Vertex& v) const {
    auto it = rank_.find(v);
    if (it == rank_.end()) {
        throw UnknownVertex("vertex '" + v + "' does not occur in the word");
    }
    return it->second;
}

std::array<int, 2> DoubleOccurrenceWord::positions_of(const Vertex& v) const {
    return positions_[rank_of(v)];
}

int EulerTour::majorana_index(const HalfEdge& h) const {
    if (h.slot < 1 || h.slot > 4) {
        throw BadInput("half-edge slot must be in 1..4");
    }
    return 4 * word_.rank_of(h.vertex) + h.slot - 1;
}

std::vector<Vertex> EulerTour::vertex_sequence() const {
    std::vector<Vertex> vs;
    vs.reserve(directed_edges_.size());
    for (const auto& e : directed_edges_) {
        vs.push_back(e.from.vertex);
    }
    return vs;
}

EulerTour tour_from_word(const DoubleOccurrenceWord& word) {
    const auto& w = word.letters();
    const int m = word.length();  // 2n
    const int n = word.vertex_count();

    for (int i = 0; i < m; ++i) {
        if (w[i] == w[(i + 1) % m]) {
            throw SelfLoop("adjacent repeated letter '" + w[i] + "' induces a self-loop");
        }
    }

    // Connectivity of the induced multigraph. A single closed word always
    // yields one component, but the contract is checked explicitly.
    {
        std::vector<std::vector<int>> adj(n);
        for (int i = 0; i < m; ++i) {
            int a = word.rank_of(w[i]);
            int b = word.rank_of(w[(i + 1) % m]);
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        std::vector<bool> seen(n, false);
        std::queue<int> q;
        q.push(0);
        seen[0] = true;
        int reached = 1;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : adj[u]) {
                if (!seen[v]) {
                    seen[v] = true;
                    reached++;
                    q.push(v);
                }
            }
        }
        if (reached != n) {
            throw Disconnected("word decomposes into letter-disjoint factors");
        }
    }

    EulerTour tour(word);
    const int start = 0;  // rank of w[0]

    // Arrival/departure slots per word position. Position 0 has a departure
    // only; the final arrival back at the start closes the tour.
    std::vector<int> in_slot(m, 0), out_slot(m, 0);
    std::vector<int> next_slot(n, 1);
    int final_in = 0;
    for (int i = 0; i < m; ++i) {
        int r = word.rank_of(w[i]);
        if (i == 0) {
            out_slot[0] = 4;
            final_in = 3;
        } else if (r == start) {
            in_slot[i] = 1;
            out_slot[i] = 2;
        } else {
            in_slot[i] = next_slot[r];
            out_slot[i] = next_slot[r] + 1;
            next_slot[r] += 2;
        }
    }

    auto& hs = tour.half_edges_;
    hs.reserve(2 * m);
    hs.push_back({w[0], out_slot[0]});
    for (int i = 1; i < m; ++i) {
        hs.push_back({w[i], in_slot[i]});
        hs.push_back({w[i], out_slot[i]});
    }
    hs.push_back({w[0], final_in});

    auto& edges = tour.directed_edges_;
    edges.reserve(m);
    for (int k = 0; k < m; ++k) {
        edges.push_back({hs[2 * k], hs[2 * k + 1]});
    }
    return tour;
}

namespace {

// Walk the tour from an out half-edge until arriving at `stop`, recording
// every half-edge passed. Intra-vertex transitions follow the cyclic
// half-edge sequence.
std::vector<HalfEdge> walk_cycle(const EulerTour& tour, const HalfEdge& begin,
                                 const HalfEdge& stop) {
    const auto& hs = tour.half_edge_sequence();
    const int total = static_cast<int>(hs.size());

    // Position of each half-edge in the sequence, by Majorana index.
    std::vector<int> pos(total, -1);
    for (int i = 0; i < total; ++i) {
        pos[tour.majorana_index(hs[i])] = i;
    }

    std::vector<HalfEdge> seq;
    seq.push_back(begin);
    HalfEdge cur = begin;
    while (true) {
        int p = pos[tour.majorana_index(cur)];
        // cur is a departure (even position); the edge leads to hs[p+1].
        const HalfEdge& target = hs[p + 1];
        seq.push_back(target);
        if (target == stop) {
            break;
        }
        int tp = pos[tour.majorana_index(target)];
        cur = hs[(tp + 1) % total];
        seq.push_back(cur);
    }
    return seq;
}

}  // namespace

CycleSplit split_at(const EulerTour& tour, const Vertex& v) {
    if (!tour.word().has_vertex(v)) {
        throw UnknownVertex("vertex '" + v + "' is not part of the tour");
    }
    CycleSplit split;
    split.pivot = v;
    split.cycle1 = walk_cycle(tour, {v, 4}, {v, 1});
    split.cycle2 = walk_cycle(tour, {v, 2}, {v, 3});
    return split;
}

std::vector<DirectedEdge> cycle_directed_edges(const std::vector<HalfEdge>& cycle) {
    std::vector<DirectedEdge> edges;
    edges.reserve(cycle.size() / 2);
    for (size_t k = 0; k + 1 < cycle.size(); k += 2) {
        edges.push_back({cycle[k], cycle[k + 1]});
    }
    return edges;
}

std::vector<int> cycle_visit_counts(const DoubleOccurrenceWord& word,
                                    const std::vector<HalfEdge>& cycle) {
    std::vector<int> half_edge_count(word.vertex_count(), 0);
    for (const auto& h : cycle) {
        half_edge_count[word.rank_of(h.vertex)]++;
    }
    // Two half-edges per visit (one arrival, one departure; the pivot's
    // endpoints likewise pair up).
    for (auto& c : half_edge_count) {
        c /= 2;
    }
    return half_edge_count;
}

}  // namespace chordsim
