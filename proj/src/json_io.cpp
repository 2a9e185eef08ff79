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

#include "chordsim/json_io.hpp"

#include <fstream>

namespace chordsim::io {

namespace {

BlochVector bloch_from_json(const json& j) {
    if (!j.is_array() || j.size() != 3) {
        throw BadInput("a Bloch vector must be an array [x, y, z]");
    }
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json bloch_to_json(const BlochVector& b) {
    return json::array({b.x, b.y, b.z});
}

}  // namespace

json word_to_json(const DoubleOccurrenceWord& word) {
    return json{{"letters", word.letters()}};
}

DoubleOccurrenceWord word_from_json(const json& j) {
    if (!j.contains("letters") || !j["letters"].is_array()) {
        throw BadInput("word JSON needs a \"letters\" array");
    }
    return DoubleOccurrenceWord(j["letters"].get<std::vector<Vertex>>());
}

json tour_to_json(const EulerTour& tour) {
    json half_edges = json::array();
    for (const auto& h : tour.half_edge_sequence()) {
        half_edges.push_back({{"v", h.vertex}, {"slot", h.slot}});
    }
    json edges = json::array();
    for (const auto& e : tour.directed_edges()) {
        edges.push_back(json::array({json{{"v", e.from.vertex}, {"slot", e.from.slot}},
                                     json{{"v", e.to.vertex}, {"slot", e.to.slot}}}));
    }
    return json{{"half_edges", std::move(half_edges)}, {"edges", std::move(edges)}};
}

json graph_to_json(const SimpleGraph& g) {
    json edges = json::array();
    for (const auto& [v, w] : g.edges()) {
        edges.push_back(json::array({v, w}));
    }
    return json{{"vertices", g.vertices()}, {"edges", std::move(edges)}};
}

SimpleGraph graph_from_json(const json& j) {
    if (!j.contains("vertices") || !j["vertices"].is_array()) {
        throw BadInput("graph JSON needs a \"vertices\" array");
    }
    SimpleGraph g(j["vertices"].get<std::vector<Vertex>>());
    for (const auto& e : j.value("edges", json::array())) {
        if (!e.is_array() || e.size() != 2) {
            throw BadInput("graph edges must be [v, w] pairs");
        }
        g.add_edge(e[0].get<Vertex>(), e[1].get<Vertex>());
    }
    return g;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
    json upper = json::array();
    for (Eigen::Index j = 0; j < m.rows(); ++j) {
        for (Eigen::Index k = j + 1; k < m.cols(); ++k) {
            if (m(j, k) != 0.0) {
                upper.push_back(json::array({j, k, m(j, k)}));
            }
        }
    }
    return json{{"dim", m.rows()}, {"upper", std::move(upper)}};
}

Eigen::MatrixXd matrix_from_json(const json& j) {
    if (!j.contains("dim")) {
        throw BadInput("matrix JSON needs \"dim\"");
    }
    const Eigen::Index dim = j["dim"].get<Eigen::Index>();
    if (dim < 0) {
        throw BadInput("matrix dimension must be nonnegative");
    }
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    for (const auto& entry : j.value("upper", json::array())) {
        if (!entry.is_array() || entry.size() != 3) {
            throw BadInput("matrix entries must be [row, col, value] triples");
        }
        const Eigen::Index r = entry[0].get<Eigen::Index>();
        const Eigen::Index c = entry[1].get<Eigen::Index>();
        if (r < 0 || c < 0 || r >= dim || c >= dim || r >= c) {
            throw BadInput("matrix entries must satisfy 0 <= row < col < dim");
        }
        const double value = entry[2].get<double>();
        m(r, c) = value;
        m(c, r) = -value;
    }
    return m;
}

std::vector<BlochVector> blochs_from_json(const json& j) {
    if (!j.is_array()) {
        throw BadInput("expected an array of Bloch vectors");
    }
    std::vector<BlochVector> out;
    for (const auto& b : j) {
        out.push_back(bloch_from_json(b));
    }
    return out;
}

std::vector<Measurement> measurements_from_json(const json& j) {
    if (!j.is_array()) {
        throw BadInput("expected an array of [vertex, [x,y,z], outcome] triples");
    }
    std::vector<Measurement> out;
    for (const auto& entry : j) {
        if (!entry.is_array() || entry.size() != 3) {
            throw BadInput("each measurement must be [vertex, [x,y,z], outcome]");
        }
        out.push_back({entry[0].get<Vertex>(), bloch_from_json(entry[1]),
                       entry[2].get<int>()});
    }
    return out;
}

json plan_to_json(const MeasurementPlan& plan) {
    json steps = json::array();
    for (const auto& step : plan.steps) {
        json basis;
        if (step.basis.is_static()) {
            basis["static"] = bloch_to_json(step.basis.static_direction());
        } else if (step.basis.is_table()) {
            json table = json::object();
            for (const auto& [prefix, dir] : step.basis.table_entries()) {
                table[prefix] = bloch_to_json(dir);
            }
            basis["adaptive"] = std::move(table);
        } else {
            throw BadInput("callback resolvers have no JSON form");
        }
        steps.push_back({{"qubit", step.qubit}, {"basis", std::move(basis)}});
    }
    return json{{"steps", std::move(steps)}};
}

MeasurementPlan plan_from_json(const json& j) {
    if (!j.contains("steps") || !j["steps"].is_array()) {
        throw BadInput("plan JSON needs a \"steps\" array");
    }
    MeasurementPlan plan;
    for (const auto& step : j["steps"]) {
        if (!step.contains("qubit") || !step.contains("basis")) {
            throw BadInput("each plan step needs \"qubit\" and \"basis\"");
        }
        const auto& basis = step["basis"];
        if (basis.contains("static")) {
            plan.steps.push_back({step["qubit"].get<Vertex>(),
                                  BasisResolver::fixed(bloch_from_json(basis["static"]))});
        } else if (basis.contains("adaptive")) {
            std::map<std::string, BlochVector> table;
            for (const auto& [prefix, dir] : basis["adaptive"].items()) {
                table[prefix] = bloch_from_json(dir);
            }
            plan.steps.push_back(
                {step["qubit"].get<Vertex>(), BasisResolver::table(std::move(table))});
        } else {
            throw BadInput("basis must contain \"static\" or \"adaptive\"");
        }
    }
    return plan;
}

json transcript_to_json(const Transcript& t) {
    json steps = json::array();
    for (const auto& step : t.steps) {
        steps.push_back({{"qubit", step.qubit},
                         {"direction", bloch_to_json(step.direction)},
                         {"outcome", step.outcome},
                         {"conditional", step.conditional}});
    }
    return json{{"seed", t.seed},
                {"joint_probability", t.joint_probability},
                {"steps", std::move(steps)}};
}

json decomposition_to_json(const RankDecomposition& d) {
    json edges = json::array();
    for (const auto& [u, v] : d.tree_edges) {
        edges.push_back(json::array({u, v}));
    }
    json leaves = json::object();
    for (const auto& [vertex, leaf] : d.leaf_of) {
        leaves[vertex] = leaf;
    }
    return json{{"width", d.width}, {"tree_edges", std::move(edges)}, {"leaf_of", std::move(leaves)}};
}

json report_to_json(const oracle::Report& r) {
    json checks = json::array();
    for (const auto& c : r.checks) {
        checks.push_back({{"name", c.name}, {"pass", c.pass}, {"max_deviation", c.deviation}});
    }
    return json{{"all_pass", r.all_pass()}, {"checks", std::move(checks)}};
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw BadInput("cannot open '" + path + "'");
    }
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw BadInput("malformed JSON in '" + path + "': " + e.what());
    }
    return j;
}

}  // namespace chordsim::io
