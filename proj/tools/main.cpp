// Command-line front end: session logs in, trees / curves / metrics /
// comparison tables / gaze aggregates out.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sessiontree/analysis.hpp"
#include "sessiontree/dot.hpp"
#include "sessiontree/errors.hpp"
#include "sessiontree/gaze.hpp"
#include "sessiontree/json_io.hpp"
#include "sessiontree/merge.hpp"
#include "sessiontree/session.hpp"
#include "sessiontree/stats.hpp"
#include "sessiontree/weights.hpp"

namespace st = sessiontree;

namespace {

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw st::DataError("cannot open " + path);
    return in;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw st::DataError("cannot open " + path + " for writing");
    out << content;
    if (!out) throw st::DataError("failed writing " + path);
}

struct WeightFlags {
    std::string mode = "stabilized";
    double log_base = 2.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--mode", mode, "Subtree weight mode")
            ->check(CLI::IsMember({"literal", "stabilized"}))
            ->capture_default_str();
        cmd->add_option("--log-base", log_base, "Logarithm base for subtree weights")
            ->check(CLI::Range(std::nextafter(1.0, 2.0), 1e9))
            ->capture_default_str();
    }

    st::WeightConfig config() const {
        return {st::weight_mode_from_string(mode), log_base};
    }
};

std::vector<st::SessionRecord> load_log(const std::string& path) {
    std::ifstream in = open_input(path);
    return st::parse_session_log(in);
}

int run_parse(const std::string& log_path, const std::string& out_dir) {
    const std::vector<st::SessionRecord> records = load_log(log_path);
    std::map<std::string, bool> seen;
    for (const st::SessionRecord& r : records) {
        if (r.session_id.find('/') != std::string::npos ||
            r.session_id.find('\\') != std::string::npos) {
            throw st::DataError("session id '" + r.session_id + "' is not a valid file name");
        }
        if (seen[r.session_id]) {
            throw st::DataError("duplicate session id '" + r.session_id + "'");
        }
        seen[r.session_id] = true;
        const st::TreeNode tree = st::build_session_tree(r);
        st::save_tree_file(out_dir + "/" + r.session_id + ".json", tree);
    }
    std::cerr << "wrote " << records.size() << " session tree(s) to " << out_dir << "\n";
    return 0;
}

int run_merge(const std::string& log_path, const std::string& out_path,
              const WeightFlags& weights, std::uint64_t budget, bool greedy_fallback) {
    const std::vector<st::SessionRecord> records = load_log(log_path);
    std::vector<st::TreeNode> trees;
    trees.reserve(records.size());
    for (const st::SessionRecord& r : records) trees.push_back(st::build_session_tree(r));

    st::MergeOptions options;
    options.weights = weights.config();
    options.budget = budget;
    options.greedy_fallback = greedy_fallback;
    const st::Tree combined = st::merge_all(trees, options);
    if (!combined) throw st::DataError("no sessions in " + log_path);

    st::TreeFileMeta meta;
    meta.weight_mode = weights.mode;
    meta.log_base = weights.log_base;
    meta.sessions = trees.size();
    meta.root_subtree_weight = st::subtree_weight(*combined, options.weights);

    std::ostringstream out;
    st::save_tree(out, *combined, meta);
    write_output(out_path, out.str());
    std::cerr << "merged " << trees.size() << " session(s): " << st::node_count(*combined)
              << " nodes, root subtree weight " << *meta.root_subtree_weight << "\n";
    return 0;
}

int run_prune(const std::string& tree_path, const std::string& out_path,
              std::int64_t threshold, double fraction) {
    st::LoadedTree loaded = st::load_tree_file(tree_path);
    for (const std::string& w : loaded.warnings) std::cerr << "warning: " << w << "\n";

    if (fraction > 0.0) {
        if (!loaded.meta.sessions) {
            throw st::DataError(
                "--fraction needs a session count; the input tree carries no meta.sessions");
        }
        threshold = st::fraction_threshold(fraction, *loaded.meta.sessions);
        std::cerr << "fraction " << fraction << " of " << *loaded.meta.sessions
                  << " sessions -> threshold " << threshold << "\n";
    }

    const st::TreeNode pruned = st::prune_threshold(loaded.tree, threshold);
    std::ostringstream out;
    st::save_tree(out, pruned, loaded.meta);
    write_output(out_path, out.str());
    return 0;
}

int run_curve(const std::string& tree_path, const std::string& out_path) {
    st::LoadedTree loaded = st::load_tree_file(tree_path);
    for (const std::string& w : loaded.warnings) std::cerr << "warning: " << w << "\n";
    const st::ThresholdCurve curve = st::threshold_curve(loaded.tree);
    std::string csv = "threshold,nodes\n";
    for (const auto& p : curve.points) {
        csv += std::to_string(p.threshold) + "," + std::to_string(p.nodes_remaining) + "\n";
    }
    write_output(out_path, csv);
    return 0;
}

int run_metrics(const std::string& tree_path, const std::string& out_path,
                const WeightFlags& weights) {
    st::LoadedTree loaded = st::load_tree_file(tree_path);
    for (const std::string& w : loaded.warnings) std::cerr << "warning: " << w << "\n";
    const st::TreeMetrics m = st::tree_metrics(loaded.tree, weights.config());

    nlohmann::json j;
    j["node_count"] = m.node_count;
    j["root_degree"] = m.root_degree;
    j["depth"] = m.depth;
    j["diameter"] = m.diameter;
    j["per_level_breadth"] = m.per_level_breadth;
    j["leaf_count"] = m.leaf_count;
    j["subtree_weight"] = m.root_subtree_weight;
    j["weight_mode"] = st::to_string(m.weight_config.mode);
    j["log_base"] = m.weight_config.log_base;
    write_output(out_path, j.dump(2) + "\n");
    return 0;
}

int run_compare(const std::string& csv_path, const std::string& out_path,
                const std::string& method_name, double alpha) {
    st::TestMethod method = st::TestMethod::automatic;
    if (method_name == "exact") method = st::TestMethod::exact;
    if (method_name == "normal") method = st::TestMethod::normal;

    std::ifstream in = open_input(csv_path);
    const std::vector<st::GroupRow> rows = st::read_long_csv(in);
    const std::vector<st::GroupComparison> results = st::compare_groups(rows, method, alpha);

    std::ostringstream out;
    st::write_comparison_csv(out, results);
    write_output(out_path, out.str());
    for (const st::GroupComparison& c : results) {
        if (c.skipped) std::cerr << "skipped '" << c.feature << "': one group has no values\n";
    }
    return 0;
}

int run_gaze(const std::string& fixations_path, const std::string& aois_path,
             const std::string& windows_path, const std::string& out_path,
             std::int64_t min_duration, bool no_stable_eye) {
    std::ifstream fin = open_input(fixations_path);
    std::vector<st::Fixation> fixations = st::read_fixation_csv(fin);
    std::ifstream ain = open_input(aois_path);
    const std::vector<st::Aoi> aois = st::read_aoi_json(ain);

    fixations = st::filter_fixations(fixations, min_duration);

    if (!no_stable_eye) {
        std::map<std::string, std::vector<st::Fixation>> by_participant;
        for (st::Fixation& f : fixations) {
            by_participant[f.participant_id].push_back(std::move(f));
        }
        fixations.clear();
        for (auto& [participant, samples] : by_participant) {
            const st::Eye stable = st::select_stable_eye(samples);
            for (st::Fixation& f : samples) {
                if (f.eye == stable) fixations.push_back(std::move(f));
            }
        }
    }

    if (!windows_path.empty()) {
        std::ifstream win = open_input(windows_path);
        const std::vector<st::StimulusWindow> windows = st::read_window_csv(win);
        std::map<std::pair<std::string, std::string>, st::StimulusWindow> by_key;
        for (const st::StimulusWindow& w : windows) {
            if (!by_key.emplace(std::make_pair(w.participant_id, w.stimulus_id), w).second) {
                throw st::DataError("duplicate window for participant " + w.participant_id +
                                    ", stimulus " + w.stimulus_id);
            }
        }
        std::map<std::pair<std::string, std::string>, std::vector<st::Fixation>> grouped;
        for (st::Fixation& f : fixations) {
            grouped[{f.participant_id, f.stimulus_id}].push_back(std::move(f));
        }
        fixations.clear();
        for (auto& [key, samples] : grouped) {
            if (auto it = by_key.find(key); it != by_key.end()) {
                for (st::Fixation& f : st::clip_to_window(samples, it->second)) {
                    fixations.push_back(std::move(f));
                }
            } else {
                for (st::Fixation& f : samples) fixations.push_back(std::move(f));
            }
        }
    }

    const st::AoiReport report = st::aoi_stats(fixations, aois);
    if (report.multi_hit_fixations > 0) {
        std::cerr << "warning: " << report.multi_hit_fixations
                  << " fixation(s) hit multiple AOIs and were counted in each\n";
    }

    std::ostringstream out;
    out << "# min_duration_ms=" << min_duration << "\n";
    out << "# stable_eye="
        << (no_stable_eye ? "disabled" : "per-participant (midpoint-centroid divergence)")
        << "\n";
    out << "# clip=" << (windows_path.empty() ? "none" : "stimulus windows") << "\n";
    st::write_aoi_stats_csv(out, report);
    write_output(out_path, out.str());
    return 0;
}

int run_dot(const std::string& tree_path, const std::string& out_path,
            const st::DotOptions& options) {
    st::LoadedTree loaded = st::load_tree_file(tree_path);
    for (const std::string& w : loaded.warnings) std::cerr << "warning: " << w << "\n";
    write_output(out_path, st::export_dot(loaded.tree, options));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Session tree toolkit: encode search sessions as trees, merge them into "
                 "weighted combined trees, and analyze the result"};
    app.require_subcommand(1);

    // parse
    auto* parse_cmd = app.add_subcommand("parse", "Build one tree JSON per session in a log");
    std::string parse_log;
    std::string parse_out_dir = ".";
    parse_cmd->add_option("log", parse_log, "Session log file")->required();
    parse_cmd->add_option("--out-dir", parse_out_dir, "Directory for <session_id>.json files")
        ->capture_default_str();

    // merge
    auto* merge_cmd = app.add_subcommand("merge", "Merge all sessions of a log into one tree");
    std::string merge_log;
    std::string merge_out;
    WeightFlags merge_weights;
    std::uint64_t merge_budget = st::MergeOptions{}.budget;
    bool merge_greedy = false;
    merge_cmd->add_option("log", merge_log, "Session log file")->required();
    merge_cmd->add_option("-o,--output", merge_out, "Output tree JSON (default stdout)");
    merge_weights.attach(merge_cmd);
    merge_cmd->add_option("--budget", merge_budget, "Max evaluated matchings per pair merge")
        ->capture_default_str();
    merge_cmd->add_flag("--greedy-fallback", merge_greedy,
                        "Fall back to size-ordered pairing when the budget runs out");

    // prune
    auto* prune_cmd = app.add_subcommand("prune", "Drop edges below a weight threshold");
    std::string prune_tree;
    std::string prune_out;
    std::int64_t prune_threshold_flag = 0;
    double prune_fraction = 0.0;
    prune_cmd->add_option("tree", prune_tree, "Combined tree JSON")->required();
    prune_cmd->add_option("-o,--output", prune_out, "Output tree JSON (default stdout)");
    auto* topt = prune_cmd->add_option("-t,--threshold", prune_threshold_flag,
                                       "Minimum surviving edge weight")
                     ->check(CLI::PositiveNumber);
    prune_cmd
        ->add_option("--fraction", prune_fraction,
                     "Session fraction; threshold = ceil(fraction * sessions)")
        ->check(CLI::Range(std::nextafter(0.0, 1.0), 1.0))
        ->excludes(topt);

    // curve
    auto* curve_cmd = app.add_subcommand("curve", "Nodes remaining per weight threshold (CSV)");
    std::string curve_tree;
    std::string curve_out;
    curve_cmd->add_option("tree", curve_tree, "Combined tree JSON")->required();
    curve_cmd->add_option("-o,--output", curve_out, "Output CSV (default stdout)");

    // metrics
    auto* metrics_cmd = app.add_subcommand("metrics", "Structural metrics of a tree (JSON)");
    std::string metrics_tree;
    std::string metrics_out;
    WeightFlags metrics_weights;
    metrics_cmd->add_option("tree", metrics_tree, "Tree JSON")->required();
    metrics_cmd->add_option("-o,--output", metrics_out, "Output JSON (default stdout)");
    metrics_weights.attach(metrics_cmd);

    // compare
    auto* compare_cmd =
        app.add_subcommand("compare", "Mann-Whitney comparison of two groups per feature");
    std::string compare_csv;
    std::string compare_out;
    std::string compare_method = "auto";
    double compare_alpha = 0.05;
    compare_cmd->add_option("csv", compare_csv, "Long-format CSV: feature,group,value")
        ->required();
    compare_cmd->add_option("-o,--output", compare_out, "Output CSV (default stdout)");
    compare_cmd->add_option("--method", compare_method, "p-value method")
        ->check(CLI::IsMember({"auto", "exact", "normal"}))
        ->capture_default_str();
    compare_cmd->add_option("--alpha", compare_alpha, "Significance level")
        ->check(CLI::Range(std::nextafter(0.0, 1.0), 1.0))
        ->capture_default_str();

    // gaze
    auto* gaze_cmd = app.add_subcommand("gaze", "AOI dwell time and fixation aggregation");
    std::string gaze_fixations;
    std::string gaze_aois;
    std::string gaze_windows;
    std::string gaze_out;
    std::int64_t gaze_min_duration = st::kDefaultFixationThresholdMs;
    bool gaze_no_stable_eye = false;
    gaze_cmd->add_option("--fixations", gaze_fixations, "Fixation CSV")->required();
    gaze_cmd->add_option("--aois", gaze_aois, "AOI JSON")->required();
    gaze_cmd->add_option("--windows", gaze_windows, "Stimulus window CSV (optional)");
    gaze_cmd->add_option("-o,--output", gaze_out, "Output CSV (default stdout)");
    gaze_cmd->add_option("--min-duration", gaze_min_duration, "Fixation threshold in ms")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    gaze_cmd->add_flag("--no-stable-eye", gaze_no_stable_eye,
                       "Skip per-participant stable-eye selection");

    // dot
    auto* dot_cmd = app.add_subcommand("dot", "Export a tree as a Graphviz digraph");
    std::string dot_tree;
    std::string dot_out;
    st::DotOptions dot_options;
    dot_cmd->add_option("tree", dot_tree, "Tree JSON")->required();
    dot_cmd->add_option("-o,--output", dot_out, "Output DOT file (default stdout)");
    dot_cmd->add_option("--min-penwidth", dot_options.min_penwidth, "Penwidth of weight-1 edges")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    dot_cmd->add_option("--max-penwidth", dot_options.max_penwidth, "Penwidth of heaviest edges")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    dot_cmd->add_flag("--show-labels", dot_options.show_labels, "Emit node labels");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // help/version exit 0, usage errors exit 1
    }

    try {
        if (parse_cmd->parsed()) return run_parse(parse_log, parse_out_dir);
        if (merge_cmd->parsed()) {
            return run_merge(merge_log, merge_out, merge_weights, merge_budget, merge_greedy);
        }
        if (prune_cmd->parsed()) {
            if (prune_threshold_flag == 0 && prune_fraction == 0.0) {
                std::cerr << "prune: give --threshold or --fraction\n";
                return 1;
            }
            return run_prune(prune_tree, prune_out, prune_threshold_flag, prune_fraction);
        }
        if (curve_cmd->parsed()) return run_curve(curve_tree, curve_out);
        if (metrics_cmd->parsed()) return run_metrics(metrics_tree, metrics_out, metrics_weights);
        if (compare_cmd->parsed()) {
            return run_compare(compare_csv, compare_out, compare_method, compare_alpha);
        }
        if (gaze_cmd->parsed()) {
            return run_gaze(gaze_fixations, gaze_aois, gaze_windows, gaze_out, gaze_min_duration,
                            gaze_no_stable_eye);
        }
        if (dot_cmd->parsed()) {
            if (dot_options.min_penwidth > dot_options.max_penwidth) {
                std::cerr << "dot: --min-penwidth must not exceed --max-penwidth\n";
                return 1;
            }
            return run_dot(dot_tree, dot_out, dot_options);
        }
    } catch (const st::BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const st::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
