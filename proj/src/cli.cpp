// Copyright 2026 The qrecsim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "qrecsim/cli.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qrecsim/analytic.hpp"
#include "qrecsim/circuit.hpp"
#include "qrecsim/database.hpp"
#include "qrecsim/errors.hpp"
#include "qrecsim/pipeline.hpp"
#include "qrecsim/report.hpp"

namespace qrecsim {

namespace {

namespace fs = std::filesystem;

struct PlanFlags {
    std::vector<std::string> marked;
    std::size_t top_k = 0;
    std::string iterations;

    void add_to(CLI::App *cmd) {
        cmd->add_option("--marked", marked, "Marked feature pattern(s), comma separated")->delimiter(',');
        cmd->add_option("--top-k", top_k, "Mark the k most probable distinct k-NN features");
        cmd->add_option("--iterations", iterations, "Grover iterations: <t>, auto or peak");
    }

    [[nodiscard]] std::optional<AmplificationPlan> plan() const {
        if (marked.empty() && top_k == 0 && iterations.empty()) {
            return std::nullopt;
        }
        AmplificationPlan p;
        for (const auto &m : marked) {
            p.marked.emplace_back(m);
        }
        p.top_k = top_k;
        if (iterations.empty() || iterations == "auto") {
            p.policy = IterationPolicy::Auto;
        } else if (iterations == "peak") {
            p.policy = IterationPolicy::Peak;
        } else {
            std::size_t used = 0;
            int t = -1;
            try {
                t = std::stoi(iterations, &used);
            } catch (const std::exception &) {
                used = 0;
            }
            if (used != iterations.size() || t < 0) {
                throw ConfigError("--iterations expects a non-negative integer, 'auto' or 'peak'");
            }
            p.policy = IterationPolicy::Fixed;
            p.iterations = t;
        }
        return p;
    }
};

void write_file(const fs::path &path, const std::string &content) {
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw ConfigError("cannot write '" + path.string() + "'");
    }
    f << content;
}

template <typename Fn>
std::string render(Fn &&fn) {
    std::ostringstream os;
    fn(os);
    return os.str();
}

UserQuery read_query(const DatabaseTable &table, const std::string &bits) {
    UserQuery q{BitString(bits)};
    check_query(table, q);
    return q;
}

double initial_marked(const std::vector<StageReport> &stages, const std::vector<std::size_t> &marked) {
    double p = 0.0;
    for (const auto &s : stages) {
        if (s.name == "post_knn") {
            for (auto i : marked) {
                p += s.distribution[i].p;
            }
        }
    }
    return p;
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Quantum k-NN + Grover recommendation simulator", "qrecsim"};
    app.require_subcommand(1);

    std::string db_path;
    std::string feature;

    auto *validate = app.add_subcommand("validate", "Check a database CSV and print its dimensions");
    validate->add_option("--db", db_path, "Database CSV")->required();

    auto *predict_cmd = app.add_subcommand("predict", "Closed-form distributions (no simulation)");
    predict_cmd->add_option("--db", db_path, "Database CSV")->required();
    predict_cmd->add_option("--feature", feature, "User feature bits")->required();
    PlanFlags predict_plan;
    predict_plan.add_to(predict_cmd);

    auto *recommend = app.add_subcommand("recommend", "Simulate the full recommendation pipeline");
    recommend->add_option("--db", db_path, "Database CSV")->required();
    recommend->add_option("--feature", feature, "User feature bits")->required();
    RunConfig config;
    recommend->add_option("--shots", config.shots, "Number of shots")->check(CLI::PositiveNumber);
    recommend->add_option("--seed", config.seed, "64-bit seed")->envname("QRECSIM_SEED");
    recommend->add_option("--max-attempts", config.max_attempts, "c0 attempts per shot")
        ->check(CLI::PositiveNumber);
    recommend->add_flag("--exact", config.exact, "Exact distributions instead of sampled shots");
    recommend->add_flag("--simulate-each-shot", config.simulate_each_shot,
                        "Run every shot on its own statevector copy");
    bool allow_large = false;
    recommend->add_flag("--allow-large", allow_large, "Lift the 26-qubit soft cap");
    std::string dump_dir;
    recommend->add_option("--stage-dumps", dump_dir, "Directory for per-stage CSV files");
    PlanFlags recommend_plan;
    recommend_plan.add_to(recommend);

    auto *reproduce = app.add_subcommand("reproduce", "Regenerate the 16-record experiment data");
    std::string which;
    std::string out_dir;
    reproduce->add_option("--case", which, "one or two")->required()->check(CLI::IsMember({"one", "two"}));
    reproduce->add_option("--out", out_dir, "Output directory")->required();

    auto *gatecount = app.add_subcommand("gatecount", "Gate-count estimates O1, O2, O3");
    std::uint64_t gl = 0;
    std::uint64_t gn = 0;
    std::optional<std::uint64_t> gc;
    gatecount->add_option("--l", gl, "Feature width")->required();
    gatecount->add_option("--n", gn, "Record count")->required();
    gatecount->add_option("--c", gc, "Gates per decomposed multi-controlled negation");

    auto *export_cmd = app.add_subcommand("export-circuit", "Write a stage as a text gate list");
    export_cmd->add_option("--db", db_path, "Database CSV")->required();
    export_cmd->add_option("--feature", feature, "User feature bits")->required();
    std::string stage;
    export_cmd->add_option("--stage", stage, "init, knn or grover")
        ->required()
        ->check(CLI::IsMember({"init", "knn", "grover"}));
    std::string out_file;
    export_cmd->add_option("--out", out_file, "Output file")->required();
    std::vector<std::string> export_marked;
    export_cmd->add_option("--marked", export_marked, "Oracle patterns (default: the user feature)")
        ->delimiter(',');

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }

    try {
        if (validate->parsed()) {
            const auto table = load_table(db_path);
            Json j;
            j["records"] = table.size();
            j["q"] = table.id_width();
            j["l"] = table.feature_width();
            j["qubits"] = table.id_width() + 2 * table.feature_width() + 1;
            std::set<BitString> distinct;
            for (const auto &r : table.records()) {
                distinct.insert(r.feature);
            }
            j["distinct_features"] = distinct.size();
            j["table_digest"] = table.digest();
            out << j.dump(2) << '\n';
        } else if (predict_cmd->parsed()) {
            const auto table = load_table(db_path);
            const auto query = read_query(table, feature);
            const auto plan = predict_plan.plan();
            out << analytic_report(table, query, plan, predict(table, query, plan)).dump(2) << '\n';
        } else if (recommend->parsed()) {
            const auto table = load_table(db_path);
            const auto query = read_query(table, feature);
            config.amplification = recommend_plan.plan();
            config.emit_stage_dumps = !dump_dir.empty();
            config.size_policy = allow_large ? SizePolicy::Uncapped : SizePolicy::Capped;
            const auto outcome = run(table, query, config);
            const auto report = pipeline_report(table, query, config, outcome).dump(2);
            if (!dump_dir.empty()) {
                const fs::path dir(dump_dir);
                for (const auto &s : outcome.stage_reports) {
                    write_file(dir / (s.name + ".csv"),
                               render([&](std::ostream &os) { write_distribution_csv(os, s.distribution); }));
                    write_file(dir / (s.name + "_state.csv"),
                               render([&](std::ostream &os) { write_state_csv(os, *s.state); }));
                }
                if (config.amplification) {
                    const auto p0 = initial_marked(outcome.stage_reports, outcome.analytic.marked);
                    write_file(dir / "trajectory.csv", render([&](std::ostream &os) {
                                   write_trajectory_csv(os, p0, outcome.trajectory);
                               }));
                }
            }
            out << report << '\n';
        } else if (reproduce->parsed()) {
            const auto r = reproduce_experiment(which == "one" ? ExperimentCase::OneElement
                                                                     : ExperimentCase::TwoElement);
            const auto table = bundled_table();
            const fs::path dir(out_dir);
            const auto &stages = r.outcome.stage_reports;
            const auto p0 = initial_marked(stages, r.outcome.analytic.marked);
            write_file(dir / "table.csv", std::string(bundled_table_csv()));
            write_file(dir / "post_knn.csv",
                       render([&](std::ostream &os) { write_distribution_csv(os, stages.at(1).distribution); }));
            write_file(dir / "post_grover_t1.csv",
                       render([&](std::ostream &os) { write_distribution_csv(os, r.after_first_iteration); }));
            write_file(dir / "post_grover_final.csv",
                       render([&](std::ostream &os) { write_distribution_csv(os, stages.at(2).distribution); }));
            write_file(dir / "trajectory.csv",
                       render([&](std::ostream &os) { write_trajectory_csv(os, p0, r.trajectory); }));
            const auto report = pipeline_report(table, r.query, r.config, r.outcome).dump(2);
            write_file(dir / "report.json", report + "\n");
            out << report << '\n';
        } else if (gatecount->parsed()) {
            const auto counts = estimate_gate_counts(gl, gn, gc.value_or(default_decomposition_constant(gl)));
            out << gatecount_report(counts).dump() << '\n';
        } else if (export_cmd->parsed()) {
            const auto table = load_table(db_path);
            const auto query = read_query(table, feature);
            const auto layout = layout_for(table);
            CircuitProgram program;
            if (stage == "init") {
                program = build_init_stage(table, query, layout);
            } else if (stage == "knn") {
                program = build_hamming_stage(layout);
            } else {
                std::vector<BitString> marked;
                for (const auto &m : export_marked) {
                    marked.emplace_back(m);
                }
                if (marked.empty()) {
                    marked.push_back(query.feature);
                }
                program = build_grover_iteration(table, layout, marked);
            }
            write_file(out_file, to_text(program));
        }
    } catch (const RetryExhaustedError &e) {
        err << "error: " << e.what() << '\n';
        return kExitRetryExhausted;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitOk;
}

} // namespace qrecsim
