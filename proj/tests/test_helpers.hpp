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

#include <algorithm>
#include <bit>
#include <map>
#include <random>
#include <vector>

#include "chordsim/circle_graph.hpp"
#include "chordsim/gaussian.hpp"
#include "chordsim/multigraph.hpp"

namespace chordsim::testing {

inline DoubleOccurrenceWord random_loop_free_word(int n, std::mt19937_64& rng) {
    std::vector<Vertex> letters;
    for (int i = 0; i < n; ++i) {
        letters.emplace_back(1, static_cast<char>('a' + i));
        letters.emplace_back(1, static_cast<char>('a' + i));
    }
    while (true) {
        std::shuffle(letters.begin(), letters.end(), rng);
        bool loop = false;
        for (size_t i = 0; i < letters.size(); ++i) {
            if (letters[i] == letters[(i + 1) % letters.size()]) {
                loop = true;
                break;
            }
        }
        if (!loop) {
            return DoubleOccurrenceWord(letters);
        }
    }
}

inline BlochVector random_unit_bloch(std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    while (true) {
        BlochVector b{normal(rng), normal(rng), normal(rng)};
        const double n = b.norm();
        if (n > 1e-3) {
            return b.scaled(1.0 / n);
        }
    }
}

inline SimpleGraph random_graph(int n, double p, std::mt19937_64& rng) {
    std::vector<Vertex> names;
    for (int i = 0; i < n; ++i) {
        names.emplace_back(1, static_cast<char>('a' + i));
    }
    SimpleGraph g(names);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (u(rng) < p) {
                g.add_edge(names[i], names[j]);
            }
        }
    }
    return g;
}

// Independent alternance test: scan every rotation of the word (and its
// reversal) for the literal pattern v..w..v..w.
inline bool alternance_by_rotation(const DoubleOccurrenceWord& word, const Vertex& v,
                                   const Vertex& w) {
    const auto& base = word.letters();
    const int m = static_cast<int>(base.size());
    for (int dir = 0; dir < 2; ++dir) {
        std::vector<Vertex> seq = base;
        if (dir == 1) {
            std::reverse(seq.begin(), seq.end());
        }
        for (int rot = 0; rot < m; ++rot) {
            std::vector<int> hits;
            for (int i = 0; i < m; ++i) {
                const Vertex& letter = seq[(i + rot) % m];
                if (letter == v) {
                    hits.push_back(0);
                } else if (letter == w) {
                    hits.push_back(1);
                }
            }
            if (hits == std::vector<int>{0, 1, 0, 1}) {
                return true;
            }
        }
    }
    return false;
}

// Independent rank-width computation: recursive bipartitions with
// memoization instead of explicit tree enumeration.
class RankWidthByPartitions {
  public:
    explicit RankWidthByPartitions(const SimpleGraph& g) : g_(g), n_(g.vertex_count()) {}

    int width() {
        if (n_ <= 1) {
            return 0;
        }
        const std::uint32_t full = (std::uint32_t{1} << n_) - 1;
        int best = n_ + 1;
        for (std::uint32_t a = 1; a < full; ++a) {
            if (!(a & 1u)) {
                continue;
            }
            best = std::min(best, std::max({cutrk(a), inner(a), inner(full & ~a)}));
        }
        return best;
    }

  private:
    int cutrk(std::uint32_t mask) {
        auto it = cut_.find(mask);
        if (it != cut_.end()) {
            return it->second;
        }
        std::vector<Vertex> side;
        for (int i = 0; i < n_; ++i) {
            if (mask & (std::uint32_t{1} << i)) {
                side.push_back(g_.vertices()[i]);
            }
        }
        return cut_[mask] = cut_rank(g_, side);
    }

    // Max cut rank over the inner edges of the best rooted tree on `mask`.
    int inner(std::uint32_t mask) {
        if (std::popcount(mask) <= 1) {
            return 0;
        }
        auto it = memo_.find(mask);
        if (it != memo_.end()) {
            return it->second;
        }
        int best = n_ + 1;
        const std::uint32_t lowest = mask & (~mask + 1);
        for (std::uint32_t sub = (mask - 1) & mask; sub > 0; sub = (sub - 1) & mask) {
            if (!(sub & lowest)) {
                continue;  // unordered split: keep the lowest bit on one side
            }
            if (sub == mask) {
                continue;
            }
            const std::uint32_t rest = mask & ~sub;
            best = std::min(best, std::max({cutrk(sub), cutrk(rest), inner(sub), inner(rest)}));
        }
        return memo_[mask] = best;
    }

    const SimpleGraph& g_;
    int n_;
    std::map<std::uint32_t, int> cut_;
    std::map<std::uint32_t, int> memo_;
};

}  // namespace chordsim::testing
