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

#include <json.hpp>

#include "chordsim/circle_graph.hpp"
#include "chordsim/gaussian.hpp"
#include "chordsim/mbqc.hpp"
#include "chordsim/oracle.hpp"

// JSON schemas for every file format the CLI reads or writes:
//   word        {"letters": ["a","d","b","a","c","b","d","c"]}
//   tour        {"half_edges": [{"v": "a", "slot": 4}, ...],
//                "edges": [[{"v": "a", "slot": 4}, {"v": "d", "slot": 1}], ...]}
//   graph       {"vertices": ["a","b"], "edges": [["a","b"], ...]}
//   matrix      {"dim": 2N, "upper": [[j, k, value], ...]}   (0-based, j < k)
//   blochs      [[x, y, z], ...]
//   measured    [["a", [0, 0, 1], 1], ...]
//   plan        {"steps": [{"qubit": "a", "basis": {"static": [0,0,1]}},
//                          {"qubit": "b", "basis": {"adaptive": {"+": [1,0,0],
//                                                                "-": [0,1,0]}}}]}
//   transcript  {"seed": 7, "joint_probability": p,
//                "steps": [{"qubit": "a", "direction": [x,y,z],
//                           "outcome": 1, "conditional": p}, ...]}
//   decomposition {"width": w, "tree_edges": [[u,v], ...], "leaf_of": {"a": 0, ...}}
//   report      {"all_pass": true, "checks": [{"name": n, "pass": true,
//                                              "max_deviation": d}, ...]}
namespace chordsim::io {

using nlohmann::json;

json word_to_json(const DoubleOccurrenceWord& word);
DoubleOccurrenceWord word_from_json(const json& j);

json tour_to_json(const EulerTour& tour);

json graph_to_json(const SimpleGraph& g);
SimpleGraph graph_from_json(const json& j);

json matrix_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const json& j);

std::vector<BlochVector> blochs_from_json(const json& j);
std::vector<Measurement> measurements_from_json(const json& j);

json plan_to_json(const MeasurementPlan& plan);
MeasurementPlan plan_from_json(const json& j);

json transcript_to_json(const Transcript& t);

json decomposition_to_json(const RankDecomposition& d);

json report_to_json(const oracle::Report& r);

json load_json_file(const std::string& path);

}  // namespace chordsim::io
