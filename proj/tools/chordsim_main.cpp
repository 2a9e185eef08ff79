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

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "chordsim/json_io.hpp"

namespace {

using namespace chordsim;
using nlohmann::json;

std::string format_probability(double p) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", p);
    return buf;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) {
            throw BadInput("cannot write '" + out_path + "'");
        }
        out << text << "\n";
    }
}

json parse_inline(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw BadInput(std::string("malformed ") + what + ": " + e.what());
    }
}

int run(int argc, char** argv) {
    CLI::App app{"Exact simulator of single-qubit measurements on circle graph states,\n"
                 "via Pfaffian formulas for the fermionic matching state of a\n"
                 "double-occurrence word."};
    app.require_subcommand(1);
    app.footer(
        "File schemas:\n"
        "  word        {\"letters\": [\"a\",\"d\",\"b\",\"a\",\"c\",\"b\",\"d\",\"c\"]}\n"
        "  graph       {\"vertices\": [\"a\",\"b\"], \"edges\": [[\"a\",\"b\"]]}\n"
        "  matrix      {\"dim\": 2N, \"upper\": [[j, k, value], ...]}  (0-based, j < k)\n"
        "  plan        {\"steps\": [{\"qubit\": \"a\", \"basis\": {\"static\": [0,0,1]}},\n"
        "                           {\"qubit\": \"b\", \"basis\": {\"adaptive\":\n"
        "                             {\"+\": [1,0,0], \"-\": [0,1,0]}}}]}\n"
        "  measured    [[\"a\", [0,0,1], 1], ...]   (vertex, direction, outcome)\n"
        "Probabilities print with 12 significant digits. Exit codes: 0 success,\n"
        "1 domain error, 2 usage error.");

    std::string word_path, graph_path, matrix_path, plan_path, out_path;
    std::string measure_json, blochs_json, subset_json, vertex, emit_kind = "gamma";
    std::uint64_t seed = 0;
    int shots = 1, grid_n = 1, exhaustive_n = 0;

    auto* build = app.add_subcommand(
        "build", "Covariance matrix of a word's matching state (matrix JSON)");
    build->add_option("--word", word_path, "word JSON file")->required();
    build->add_option("--emit", emit_kind, "gamma (default) or tour")
        ->check(CLI::IsMember({"gamma", "tour"}));
    build->add_option("--out", out_path, "output file (default stdout)");

    auto* overlap = app.add_subcommand(
        "overlap", "|<Phi|G>|^2 for a product state given per-qubit Bloch vectors");
    overlap->add_option("--word", word_path, "word JSON file")->required();
    overlap->add_option("--blochs", blochs_json, "inline JSON [[x,y,z], ...] in vertex order")
        ->required();

    auto* marginal = app.add_subcommand(
        "marginal", "Marginal probability of measured outcomes");
    marginal->add_option("--word", word_path, "word JSON file")->required();
    marginal->add_option("--measure", measure_json, "inline JSON [[vertex, [x,y,z], outcome], ...]")
        ->required();

    auto* sample = app.add_subcommand(
        "sample", "Seeded measurement runs; shot k uses the (k+1)-th splitmix64 output of --seed");
    sample->add_option("--word", word_path, "word JSON file")->required();
    sample->add_option("--plan", plan_path, "plan JSON file")->required();
    sample->add_option("--seed", seed, "master seed (default 0)");
    sample->add_option("--shots", shots, "number of runs (default 1)")
        ->check(CLI::PositiveNumber);
    sample->add_option("--out", out_path, "output file (default stdout)");

    auto* dist = app.add_subcommand(
        "dist", "Exact joint outcome distribution of a plan");
    dist->add_option("--word", word_path, "word JSON file")->required();
    dist->add_option("--plan", plan_path, "plan JSON file")->required();
    dist->add_option("--out", out_path, "output file (default stdout)");

    auto* verify = app.add_subcommand(
        "verify", "Brute-force verification reports (streamed JSON, one line per word)");
    verify->add_option("--word", word_path, "word JSON file");
    verify->add_option("--exhaustive-n", exhaustive_n,
                       "verify all loop-free connected words up to this letter count")
        ->check(CLI::Range(1, 4));

    auto* grid = app.add_subcommand("grid", "Comparability grid as graph JSON");
    grid->add_option("--n", grid_n, "grid side length")->required()->check(CLI::PositiveNumber);
    grid->add_option("--out", out_path, "output file (default stdout)");

    auto* rankwidth = app.add_subcommand(
        "rankwidth", "Exact rank width with a witness decomposition");
    rankwidth->add_option("--graph", graph_path, "graph JSON file")->required();
    rankwidth->add_option("--out", out_path, "output file (default stdout)");

    auto* cutrank = app.add_subcommand("cutrank", "GF(2) cut rank of a vertex subset");
    cutrank->add_option("--graph", graph_path, "graph JSON file")->required();
    cutrank->add_option("--subset", subset_json, "inline JSON array of vertex names")->required();

    auto* lc = app.add_subcommand("lc", "Local complementation at a vertex");
    lc->add_option("--graph", graph_path, "graph JSON file")->required();
    lc->add_option("--vertex", vertex, "pivot vertex")->required();
    lc->add_option("--out", out_path, "output file (default stdout)");

    auto* word_search = app.add_subcommand(
        "word-search", "Find a double-occurrence word realizing a graph, or report 'not circle'");
    word_search->add_option("--graph", graph_path, "graph JSON file")->required();

    auto* pf = app.add_subcommand("pf", "Pfaffian of a skew-symmetric matrix");
    pf->add_option("--matrix", matrix_path, "matrix JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    if (build->parsed()) {
        const auto word = io::word_from_json(io::load_json_file(word_path));
        const EulerTour tour = tour_from_word(word);
        if (emit_kind == "tour") {
            emit(io::tour_to_json(tour).dump(), out_path);
        } else {
            emit(io::matrix_to_json(matching_covariance(tour).gamma()).dump(), out_path);
        }
    } else if (overlap->parsed()) {
        const auto word = io::word_from_json(io::load_json_file(word_path));
        const auto blochs = io::blochs_from_json(parse_inline(blochs_json, "--blochs"));
        if (static_cast<int>(blochs.size()) != word.vertex_count()) {
            throw DimensionMismatch("need one Bloch vector per vertex, in vertex order");
        }
        const auto mc = matching_covariance(tour_from_word(word));
        std::cout << format_probability(overlap_full(product_covariance(blochs), mc)) << "\n";
    } else if (marginal->parsed()) {
        const auto word = io::word_from_json(io::load_json_file(word_path));
        const auto measured = io::measurements_from_json(parse_inline(measure_json, "--measure"));
        const auto mc = matching_covariance(tour_from_word(word));
        std::cout << format_probability(marginal_prob(mc, measured)) << "\n";
    } else if (sample->parsed()) {
        const auto word = io::word_from_json(io::load_json_file(word_path));
        const auto plan = io::plan_from_json(io::load_json_file(plan_path));
        json transcripts = json::array();
        for (int shot = 0; shot < shots; ++shot) {
            transcripts.push_back(io::transcript_to_json(
                sample_run(word, plan, std::nullopt, shot_seed(seed, shot))));
        }
        emit(transcripts.dump(), out_path);
    } else if (dist->parsed()) {
        const auto word = io::word_from_json(io::load_json_file(word_path));
        const auto plan = io::plan_from_json(io::load_json_file(plan_path));
        json out = json::object();
        for (const auto& [outcomes, p] : exact_distribution(word, plan)) {
            out[outcomes] = p;
        }
        emit(out.dump(), out_path);
    } else if (verify->parsed()) {
        if ((word_path.empty()) == (exhaustive_n == 0)) {
            std::cerr << "usage error: verify needs exactly one of --word or --exhaustive-n\n";
            return 2;
        }
        bool all_ok = true;
        if (!word_path.empty()) {
            const auto word = io::word_from_json(io::load_json_file(word_path));
            const auto report = oracle::verify_word(word);
            json line = io::report_to_json(report);
            std::string compact;
            for (const auto& v : word.letters()) {
                compact += v;
            }
            line["word"] = compact;
            std::cout << line.dump() << "\n";
            all_ok = report.all_pass();
        } else {
            {
                const auto table = oracle::verify_multiplication_table();
                json line = io::report_to_json(table);
                line["word"] = nullptr;
                std::cout << line.dump() << "\n";
                all_ok = table.all_pass();
            }
            for (int n = 2; n <= exhaustive_n; ++n) {
                for (const auto& word : oracle::enumerate_loop_free_words(n)) {
                    const auto report = oracle::verify_word(word);
                    json line = io::report_to_json(report);
                    std::string compact;
                    for (const auto& v : word.letters()) {
                        compact += v;
                    }
                    line["word"] = compact;
                    std::cout << line.dump() << "\n";
                    all_ok = all_ok && report.all_pass();
                }
            }
        }
        return all_ok ? 0 : 1;
    } else if (grid->parsed()) {
        emit(io::graph_to_json(comparability_grid(grid_n)).dump(), out_path);
    } else if (rankwidth->parsed()) {
        const auto g = io::graph_from_json(io::load_json_file(graph_path));
        const auto [width, dec] = rank_width_exact(g);
        emit(io::decomposition_to_json(dec).dump(), out_path);
    } else if (cutrank->parsed()) {
        const auto g = io::graph_from_json(io::load_json_file(graph_path));
        const auto side = parse_inline(subset_json, "--subset").get<std::vector<Vertex>>();
        std::cout << cut_rank(g, side) << "\n";
    } else if (lc->parsed()) {
        const auto g = io::graph_from_json(io::load_json_file(graph_path));
        emit(io::graph_to_json(local_complement(g, vertex)).dump(), out_path);
    } else if (word_search->parsed()) {
        const auto g = io::graph_from_json(io::load_json_file(graph_path));
        const auto found = find_word_bruteforce(g);
        if (found) {
            std::cout << io::word_to_json(*found).dump() << "\n";
        } else {
            std::cout << "not circle\n";
        }
    } else if (pf->parsed()) {
        const auto m = io::matrix_from_json(io::load_json_file(matrix_path));
        std::cout << format_probability(pfaffian(m)) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const chordsim::SimError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
