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

#include "chordsim/circle_graph.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>
#include <unordered_set>

namespace chordsim {

SimpleGraph::SimpleGraph(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
    for (int i = 0; i < static_cast<int>(vertices_.size()); ++i) {
        if (!index_.emplace(vertices_[i], i).second) {
            throw DuplicateVertex("vertex '" + vertices_[i] + "' listed twice");
        }
    }
    adj_.assign(vertices_.size(), std::vector<std::uint8_t>(vertices_.size(), 0));
}

SimpleGraph::SimpleGraph(std::vector<Vertex> vertices,
                         const std::vector<std::pair<Vertex, Vertex>>& edges)
    : SimpleGraph(std::move(vertices)) {
    for (const auto& [v, w] : edges) {
        add_edge(v, w);
    }
}

bool SimpleGraph::has_vertex(const Vertex& v) const {
    return index_.count(v) > 0;
}

int SimpleGraph::index_of(const Vertex& v) const {
    auto it = index_.find(v);
    if (it == index_.end()) {
        throw UnknownVertex("vertex '" + v + "' is not in the graph");
    }
    return it->second;
}

void SimpleGraph::add_edge(const Vertex& v, const Vertex& w) {
    int i = index_of(v), j = index_of(w);
    if (i == j) {
        throw BadInput("self-edge on '" + v + "' not allowed in a simple graph");
    }
    adj_[i][j] = adj_[j][i] = 1;
}

bool SimpleGraph::adjacent(const Vertex& v, const Vertex& w) const {
    return adj_[index_of(v)][index_of(w)] != 0;
}

std::vector<std::pair<Vertex, Vertex>> SimpleGraph::edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (int i = 0; i < vertex_count(); ++i) {
        for (int j = i + 1; j < vertex_count(); ++j) {
            if (adj_[i][j]) {
                out.emplace_back(vertices_[i], vertices_[j]);
            }
        }
    }
    return out;
}

int SimpleGraph::edge_count() const {
    int c = 0;
    for (int i = 0; i < vertex_count(); ++i) {
        for (int j = i + 1; j < vertex_count(); ++j) {
            c += adj_[i][j];
        }
    }
    return c;
}

std::vector<Vertex> SimpleGraph::neighbors(const Vertex& v) const {
    int i = index_of(v);
    std::vector<Vertex> out;
    for (int j = 0; j < vertex_count(); ++j) {
        if (adj_[i][j]) {
            out.push_back(vertices_[j]);
        }
    }
    return out;
}

std::uint64_t SimpleGraph::row_bits(int i) const {
    if (vertex_count() > 64) {
        throw TooLarge("row_bits requires at most 64 vertices");
    }
    std::uint64_t row = 0;
    for (int j = 0; j < vertex_count(); ++j) {
        if (adj_[i][j]) {
            row |= std::uint64_t{1} << j;
        }
    }
    return row;
}

bool SimpleGraph::operator==(const SimpleGraph& other) const {
    if (vertex_count() != other.vertex_count()) {
        return false;
    }
    for (const auto& [v, i] : index_) {
        if (!other.has_vertex(v)) {
            return false;
        }
    }
    for (const auto& [v, i] : index_) {
        for (const auto& [w, j] : index_) {
            if (i < j && adj_[i][j] != (other.adjacent(v, w) ? 1 : 0)) {
                return false;
            }
        }
    }
    return true;
}

SimpleGraph alternance_graph(const DoubleOccurrenceWord& word) {
    SimpleGraph g(word.vertex_order());
    const int n = word.vertex_count();
    for (int a = 0; a < n; ++a) {
        auto [p0, p1] = word.positions_of(word.vertex_order()[a]);
        for (int b = a + 1; b < n; ++b) {
            auto [q0, q1] = word.positions_of(word.vertex_order()[b]);
            bool in0 = p0 < q0 && q0 < p1;
            bool in1 = p0 < q1 && q1 < p1;
            if (in0 != in1) {
                g.add_edge(word.vertex_order()[a], word.vertex_order()[b]);
            }
        }
    }
    return g;
}

SimpleGraph local_complement(const SimpleGraph& g, const Vertex& v) {
    int iv = g.index_of(v);
    SimpleGraph out(g.vertices());
    const int n = g.vertex_count();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            bool e = g.adjacent_by_index(i, j);
            if (g.adjacent_by_index(iv, i) && g.adjacent_by_index(iv, j)) {
                e = !e;
            }
            if (e) {
                out.add_edge(g.vertices()[i], g.vertices()[j]);
            }
        }
    }
    return out;
}

SimpleGraph delete_vertex(const SimpleGraph& g, const Vertex& v) {
    int iv = g.index_of(v);
    std::vector<Vertex> keep;
    for (int i = 0; i < g.vertex_count(); ++i) {
        if (i != iv) {
            keep.push_back(g.vertices()[i]);
        }
    }
    SimpleGraph out(keep);
    for (size_t a = 0; a < keep.size(); ++a) {
        for (size_t b = a + 1; b < keep.size(); ++b) {
            if (g.adjacent(keep[a], keep[b])) {
                out.add_edge(keep[a], keep[b]);
            }
        }
    }
    return out;
}

namespace {

std::string labeled_key(const SimpleGraph& g) {
    std::vector<Vertex> names = g.vertices();
    std::sort(names.begin(), names.end());
    std::ostringstream os;
    for (const auto& v : names) {
        os << v << ';';
    }
    os << '|';
    for (size_t a = 0; a < names.size(); ++a) {
        for (size_t b = a + 1; b < names.size(); ++b) {
            os << (g.adjacent(names[a], names[b]) ? '1' : '0');
        }
    }
    return os.str();
}

bool iso_backtrack(const SimpleGraph& a, const SimpleGraph& b, std::vector<int>& map_ab,
                   std::vector<bool>& used, int next) {
    const int n = a.vertex_count();
    if (next == n) {
        return true;
    }
    for (int cand = 0; cand < n; ++cand) {
        if (used[cand]) {
            continue;
        }
        bool ok = true;
        for (int prev = 0; prev < next; ++prev) {
            if (a.adjacent_by_index(next, prev) != b.adjacent_by_index(cand, map_ab[prev])) {
                ok = false;
                break;
            }
        }
        if (!ok) {
            continue;
        }
        map_ab[next] = cand;
        used[cand] = true;
        if (iso_backtrack(a, b, map_ab, used, next + 1)) {
            return true;
        }
        used[cand] = false;
    }
    return false;
}

}  // namespace

bool graphs_isomorphic(const SimpleGraph& a, const SimpleGraph& b) {
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) {
        return false;
    }
    auto degrees = [](const SimpleGraph& g) {
        std::vector<int> d;
        for (const auto& v : g.vertices()) {
            d.push_back(static_cast<int>(g.neighbors(v).size()));
        }
        std::sort(d.begin(), d.end());
        return d;
    };
    if (degrees(a) != degrees(b)) {
        return false;
    }
    std::vector<int> map_ab(a.vertex_count(), -1);
    std::vector<bool> used(a.vertex_count(), false);
    return iso_backtrack(a, b, map_ab, used, 0);
}

bool is_vertex_minor(const SimpleGraph& h, const SimpleGraph& g,
                     const VertexMinorOptions& options) {
    if (h.vertex_count() > g.vertex_count()) {
        return false;
    }
    if (!options.up_to_isomorphism) {
        for (const auto& v : h.vertices()) {
            if (!g.has_vertex(v)) {
                return false;
            }
        }
    }
    const std::string target_key = labeled_key(h);
    auto matches = [&](const SimpleGraph& cand) {
        if (cand.vertex_count() != h.vertex_count()) {
            return false;
        }
        if (options.up_to_isomorphism) {
            return graphs_isomorphic(cand, h);
        }
        return labeled_key(cand) == target_key;
    };

    std::deque<SimpleGraph> queue;
    std::unordered_set<std::string> seen;
    queue.push_back(g);
    seen.insert(labeled_key(g));
    while (!queue.empty()) {
        SimpleGraph cur = std::move(queue.front());
        queue.pop_front();
        if (matches(cur)) {
            return true;
        }
        std::vector<SimpleGraph> next;
        for (const auto& v : cur.vertices()) {
            next.push_back(local_complement(cur, v));
        }
        if (cur.vertex_count() > h.vertex_count()) {
            for (const auto& v : cur.vertices()) {
                if (!options.up_to_isomorphism && h.has_vertex(v)) {
                    continue;
                }
                next.push_back(delete_vertex(cur, v));
            }
        }
        for (auto& cand : next) {
            std::string key = labeled_key(cand);
            if (seen.insert(std::move(key)).second) {
                if (seen.size() > options.budget) {
                    throw BudgetExceeded("vertex-minor search exceeded state budget");
                }
                queue.push_back(std::move(cand));
            }
        }
    }
    return false;
}

namespace {

// Rank over GF(2); rows are packed bit vectors of `cols` columns.
int gf2_rank(std::vector<std::vector<std::uint64_t>> rows, int cols) {
    const int words = (cols + 63) / 64;
    int rank = 0;
    for (int col = 0; col < cols; ++col) {
        const int w = col / 64;
        const std::uint64_t bit = std::uint64_t{1} << (col % 64);
        int pivot = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
            if (rows[r][w] & bit) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) {
            continue;
        }
        std::swap(rows[rank], rows[pivot]);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r != rank && (rows[r][w] & bit)) {
                for (int k = 0; k < words; ++k) {
                    rows[r][k] ^= rows[rank][k];
                }
            }
        }
        ++rank;
    }
    return rank;
}

}  // namespace

int cut_rank(const SimpleGraph& g, const std::vector<Vertex>& side) {
    std::set<int> side_idx;
    for (const auto& v : side) {
        if (!side_idx.insert(g.index_of(v)).second) {
            throw DuplicateVertex("vertex '" + v + "' listed twice in the cut side");
        }
    }
    std::vector<int> other;
    for (int j = 0; j < g.vertex_count(); ++j) {
        if (!side_idx.count(j)) {
            other.push_back(j);
        }
    }
    const int cols = static_cast<int>(other.size());
    const int words = (cols + 63) / 64;
    std::vector<std::vector<std::uint64_t>> rows;
    for (int i : side_idx) {
        std::vector<std::uint64_t> row(words, 0);
        for (int c = 0; c < cols; ++c) {
            if (g.adjacent_by_index(i, other[c])) {
                row[c / 64] |= std::uint64_t{1} << (c % 64);
            }
        }
        rows.push_back(std::move(row));
    }
    return gf2_rank(std::move(rows), cols);
}

namespace {

struct TreeSearch {
    const SimpleGraph& g;
    int n;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> cut_cache;
    int best_width;
    std::vector<std::pair<int, int>> best_edges;

    explicit TreeSearch(const SimpleGraph& graph)
        : g(graph), n(graph.vertex_count()), cut_cache(std::size_t{1} << n, -1),
          best_width(n + 1) {}

    int cutrk_mask(std::uint32_t mask) {
        const std::uint32_t full = (std::uint32_t{1} << n) - 1;
        std::uint32_t canon = std::min(mask, full & ~mask);
        if (cut_cache[canon] >= 0) {
            return cut_cache[canon];
        }
        std::vector<Vertex> side;
        for (int i = 0; i < n; ++i) {
            if (canon & (std::uint32_t{1} << i)) {
                side.push_back(g.vertices()[i]);
            }
        }
        int r = cut_rank(g, side);
        cut_cache[canon] = r;
        return r;
    }

    // Leaves that end up on the `a` side when edge (a, b) is removed.
    std::uint32_t leaves_beyond(int a, int b) const {
        std::uint32_t mask = 0;
        std::vector<int> stack{a};
        std::vector<bool> seen(n + std::max(0, n - 2), false);
        seen[a] = true;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            if (u < n) {
                mask |= std::uint32_t{1} << u;
            }
            for (const auto& [x, y] : edges) {
                int other = (x == u) ? y : (y == u ? x : -1);
                if (other < 0 || (u == a && other == b)) {
                    continue;
                }
                if (!seen[other]) {
                    seen[other] = true;
                    stack.push_back(other);
                }
            }
        }
        return mask;
    }

    void evaluate() {
        int width = 0;
        for (const auto& [a, b] : edges) {
            std::uint32_t mask = leaves_beyond(a, b);
            width = std::max(width, cutrk_mask(mask));
            if (width >= best_width) {
                return;
            }
        }
        if (width < best_width) {
            best_width = width;
            best_edges = edges;
        }
    }

    void insert_leaf(int leaf) {
        if (leaf == n) {
            evaluate();
            return;
        }
        const int internal = n + (leaf - 2);
        const size_t count = edges.size();
        for (size_t e = 0; e < count; ++e) {
            auto [u, v] = edges[e];
            edges[e] = {u, internal};
            edges.push_back({internal, v});
            edges.push_back({internal, leaf});
            insert_leaf(leaf + 1);
            edges.pop_back();
            edges.pop_back();
            edges[e] = {u, v};
        }
    }
};

}  // namespace

std::pair<int, RankDecomposition> rank_width_exact(const SimpleGraph& g) {
    const int n = g.vertex_count();
    if (n > 9) {
        throw TooLarge("exhaustive rank-width search supports at most 9 vertices");
    }
    RankDecomposition dec;
    for (int i = 0; i < n; ++i) {
        dec.leaf_of[g.vertices()[i]] = i;
    }
    if (n <= 1) {
        dec.width = 0;
        return {0, dec};
    }
    TreeSearch search(g);
    if (n == 2) {
        search.edges = {{0, 1}};
        search.evaluate();
    } else {
        search.edges = {{0, n}, {1, n}, {2, n}};
        search.insert_leaf(3);
    }
    dec.tree_edges = search.best_edges;
    dec.width = search.best_width;
    return {search.best_width, dec};
}

namespace {

// Graph-state amplitude signs: (-1)^{#edges inside the support of x}.
std::vector<int> graph_state_signs(const SimpleGraph& g) {
    const int n = g.vertex_count();
    std::vector<std::uint64_t> rows(n);
    for (int i = 0; i < n; ++i) {
        rows[i] = g.row_bits(i);
    }
    std::vector<int> signs(std::size_t{1} << n);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
        int parity = 0;
        for (int i = 0; i < n; ++i) {
            if (x & (std::uint64_t{1} << i)) {
                std::uint64_t higher = x & rows[i] & ~((std::uint64_t{2} << i) - 1);
                parity ^= std::popcount(higher) & 1;
            }
        }
        signs[x] = parity ? -1 : 1;
    }
    return signs;
}

}  // namespace

bool entanglement_width_check(const SimpleGraph& g) {
    const int n = g.vertex_count();
    if (n > 8) {
        throw TooLarge("entanglement-width check supports at most 8 vertices");
    }
    if (n < 2) {
        return true;
    }
    const auto signs = graph_state_signs(g);
    const double amp = std::pow(2.0, -0.5 * n);
    for (std::uint32_t mask = 1; mask + 1 < (std::uint32_t{1} << n); ++mask) {
        if (!(mask & 1u)) {
            continue;  // each bipartition once: keep vertex 0 on the A side
        }
        std::vector<int> a_bits, b_bits;
        for (int i = 0; i < n; ++i) {
            ((mask >> i) & 1u ? a_bits : b_bits).push_back(i);
        }
        Eigen::MatrixXd m(std::size_t{1} << a_bits.size(), std::size_t{1} << b_bits.size());
        for (std::uint32_t x = 0; x < (std::uint32_t{1} << n); ++x) {
            std::uint32_t row = 0, col = 0;
            for (size_t k = 0; k < a_bits.size(); ++k) {
                row |= ((x >> a_bits[k]) & 1u) << k;
            }
            for (size_t k = 0; k < b_bits.size(); ++k) {
                col |= ((x >> b_bits[k]) & 1u) << k;
            }
            m(row, col) = signs[x] * amp;
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
        const auto& sv = svd.singularValues();
        const double cutoff = 1e-9 * sv(0);
        int count = 0;
        for (Eigen::Index k = 0; k < sv.size(); ++k) {
            if (sv(k) > cutoff) {
                ++count;
            }
        }
        std::vector<Vertex> side;
        for (int i : a_bits) {
            side.push_back(g.vertices()[i]);
        }
        if (count != (1 << cut_rank(g, side))) {
            return false;
        }
    }
    return true;
}

SimpleGraph comparability_grid(int n) {
    if (n < 1) {
        throw BadInput("grid size must be at least 1");
    }
    std::vector<Vertex> names;
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            names.push_back(std::to_string(i) + "," + std::to_string(j));
        }
    }
    SimpleGraph g(names);
    auto coord = [n](int idx) { return std::pair{idx / n + 1, idx % n + 1}; };
    for (int a = 0; a < n * n; ++a) {
        auto [i, j] = coord(a);
        for (int b = a + 1; b < n * n; ++b) {
            auto [ip, jp] = coord(b);
            if ((i <= ip && j <= jp) || (i >= ip && j >= jp)) {
                g.add_edge(names[a], names[b]);
            }
        }
    }
    return g;
}

namespace {

struct WordSearch {
    const SimpleGraph& g;
    int n;
    std::vector<int> word;        // vertex index per position
    std::vector<int> first_pos;   // -1 while unplaced
    std::vector<bool> closed;

    explicit WordSearch(const SimpleGraph& graph)
        : g(graph), n(graph.vertex_count()), first_pos(n, -1), closed(n, false) {}

    // Once v closes, its crossings with every other letter are decided: a
    // letter not yet placed stays entirely outside v's interval, and an open
    // letter has exactly its first occurrence available to fall inside.
    bool close_is_consistent(int v, int pos) const {
        for (int w = 0; w < n; ++w) {
            if (w == v) {
                continue;
            }
            bool crossing;
            if (first_pos[w] < 0) {
                crossing = false;
            } else if (!closed[w]) {
                crossing = first_pos[v] < first_pos[w];
            } else {
                int inside = 0;
                for (int p : {first_pos[w], second_pos(w)}) {
                    if (first_pos[v] < p && p < pos) {
                        ++inside;
                    }
                }
                crossing = (inside == 1);
            }
            if (crossing != g.adjacent_by_index(v, w)) {
                return false;
            }
        }
        return true;
    }

    int second_pos(int w) const {
        for (int p = static_cast<int>(word.size()) - 1; p >= 0; --p) {
            if (word[p] == w && p != first_pos[w]) {
                return p;
            }
        }
        return -1;
    }

    bool search() {
        const int pos = static_cast<int>(word.size());
        if (pos == 2 * n) {
            return true;
        }
        for (int v = 0; v < n; ++v) {
            if (closed[v]) {
                continue;
            }
            if (first_pos[v] < 0) {
                if (pos == 0 && v != 0) {
                    continue;  // rotation symmetry: position 0 is vertex 0
                }
                if (pos == 2 * n - 1) {
                    continue;  // nothing left to close it
                }
                first_pos[v] = pos;
                word.push_back(v);
                if (search()) {
                    return true;
                }
                word.pop_back();
                first_pos[v] = -1;
            } else {
                if (!close_is_consistent(v, pos)) {
                    continue;
                }
                closed[v] = true;
                word.push_back(v);
                if (search()) {
                    return true;
                }
                word.pop_back();
                closed[v] = false;
            }
        }
        return false;
    }
};

}  // namespace

std::optional<DoubleOccurrenceWord> find_word_bruteforce(const SimpleGraph& g) {
    const int n = g.vertex_count();
    if (n > 6) {
        throw TooLarge("word search supports at most 6 vertices");
    }
    if (n == 0) {
        return std::nullopt;
    }
    WordSearch search(g);
    if (!search.search()) {
        return std::nullopt;
    }
    std::vector<Vertex> letters;
    for (int v : search.word) {
        letters.push_back(g.vertices()[v]);
    }
    return DoubleOccurrenceWord(std::move(letters));
}

}  // namespace chordsim
