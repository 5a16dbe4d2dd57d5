#include "cli.hpp"

#include "kgrank/csv.hpp"
#include "kgrank/error.hpp"
#include "kgrank/generators.hpp"
#include "kgrank/graph.hpp"
#include "kgrank/ie.hpp"
#include "kgrank/io.hpp"
#include "kgrank/keyvalue.hpp"
#include "kgrank/kg.hpp"
#include "kgrank/perturb.hpp"
#include "kgrank/topk.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fmt/format.h>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>

namespace kgrank::cli {
namespace {

namespace fs = std::filesystem;

struct UsageError : Error {
    explicit UsageError(const std::string& message) : Error("usage", message) {}
};

std::string quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
            out += c;
        } else if (c == '\n') {
            out += "\\n";
        } else {
            out += c;
        }
    }
    return out + "\"";
}

void require_output_dir(const std::string& path) {
    const auto parent = fs::path(path).parent_path();
    if (!parent.empty() && !fs::is_directory(parent)) {
        throw UsageError("output directory '" + parent.string() + "' does not exist");
    }
}

void require_input(const std::string& path) {
    if (!fs::is_regular_file(path)) {
        throw UsageError("input file '" + path + "' does not exist");
    }
}

std::string key_values(const std::map<std::string, std::string>& kv, const std::vector<std::string>& warnings = {}) {
    std::string out;
    for (const auto& [k, v] : kv) {
        out += k + "=" + v + "\n";
    }
    for (const auto& w : warnings) {
        out += "warning=" + w + "\n";
    }
    return out;
}

// --- sweep config -----------------------------------------------------------

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        auto end = s.find(',', pos);
        if (end == std::string::npos) {
            end = s.size();
        }
        auto item = trim(std::string_view(s).substr(pos, end - pos));
        if (!item.empty()) {
            out.push_back(std::move(item));
        }
        pos = end + 1;
    }
    return out;
}

Marker parse_marker(const std::string& value, std::size_t line) {
    // "<name> <precision> <recall>"; the name may contain spaces.
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < value.size()) {
        const auto start = value.find_first_not_of(" \t", i);
        if (start == std::string::npos) {
            break;
        }
        const auto end = std::min(value.find_first_of(" \t", start), value.size());
        tokens.push_back(value.substr(start, end - start));
        i = end;
    }
    if (tokens.size() < 3) {
        throw ParseError("marker must be '<name> <precision> <recall>'", line);
    }
    Marker m;
    for (std::size_t t = 0; t + 2 < tokens.size(); ++t) {
        m.name += (t == 0 ? "" : " ") + tokens[t];
    }
    try {
        m.precision = std::stod(tokens[tokens.size() - 2]);
        m.recall = std::stod(tokens.back());
    } catch (const std::exception&) {
        throw ParseError("marker must be '<name> <precision> <recall>'", line);
    }
    return m;
}

} // namespace

SweepPlan parse_sweep_config(std::string_view text, const std::string& base_dir) {
    const auto doc = KeyValueDoc::parse(text);
    static const std::set<std::string> known = {
        "topology", "edges", "name", "nodes", "avg_degree", "m_attach", "ring", "beta", "lfr_tau1", "lfr_tau2",
        "lfr_mu", "lfr_max_degree", "lfr_min_community", "lfr_max_community", "graph_seed", "metric", "k",
        "precision", "recall", "trials", "seed", "marker", "workers"};
    for (const auto& e : doc.entries()) {
        if (!known.contains(e.key)) {
            throw ParseError("unknown key '" + e.key + "'", e.line);
        }
    }

    SweepPlan plan;
    auto& cfg = plan.base;
    cfg.k = doc.get_uint("k", 20);
    cfg.trials = doc.get_uint("trials", 10);
    plan.seed_given = doc.has("seed");
    cfg.master_seed = doc.get_uint("seed", 0);
    cfg.workers = doc.get_uint("workers", 1);
    cfg.precisions = doc.has("precision") ? parse_grid(*doc.get("precision")) : default_grid();
    cfg.recalls = doc.has("recall") ? parse_grid(*doc.get("recall")) : default_grid();
    for (const auto& e : doc.entries()) {
        if (e.key == "marker") {
            cfg.markers.push_back(parse_marker(e.value, e.line));
        }
    }

    GenSpec gen;
    gen.n = doc.get_uint("nodes", 500);
    gen.target_avg_degree = doc.get_double("avg_degree", 12.0);
    gen.m_attach = doc.get_uint("m_attach", 6);
    gen.k_ring = doc.get_uint("ring", 12);
    gen.beta = doc.get_double("beta", 0.1);
    gen.lfr.tau1 = doc.get_double("lfr_tau1", gen.lfr.tau1);
    gen.lfr.tau2 = doc.get_double("lfr_tau2", gen.lfr.tau2);
    gen.lfr.mu = doc.get_double("lfr_mu", gen.lfr.mu);
    gen.lfr.max_degree = doc.get_uint("lfr_max_degree", gen.lfr.max_degree);
    gen.lfr.min_community = doc.get_uint("lfr_min_community", gen.lfr.min_community);
    gen.lfr.max_community = doc.get_uint("lfr_max_community", gen.lfr.max_community);
    plan.graph_seed_given = doc.has("graph_seed");
    gen.seed = doc.get_uint("graph_seed", cfg.master_seed);

    std::vector<Metric> metrics;
    for (const auto& m : split_list(doc.get_or("metric", "betweenness"))) {
        metrics.push_back(parse_metric(m));
    }
    if (doc.has("topology") == doc.has("edges")) {
        throw ParseError("set exactly one of 'topology' or 'edges'", 1);
    }
    std::vector<SweepConfig> sources;
    if (doc.has("topology")) {
        for (const auto& t : split_list(*doc.get("topology"))) {
            SweepConfig s = cfg;
            s.generator = gen;
            s.generator->topology = parse_topology(t);
            s.source_name = to_string(s.generator->topology);
            sources.push_back(std::move(s));
        }
    } else {
        for (const auto& p : split_list(*doc.get("edges"))) {
            SweepConfig s = cfg;
            const fs::path path(p);
            s.edge_list_path = path.is_absolute() ? path.string() : (fs::path(base_dir) / path).string();
            s.source_name = path.stem().string();
            sources.push_back(std::move(s));
        }
        if (doc.has("name") && sources.size() == 1) {
            sources.front().source_name = *doc.get("name");
        }
    }
    for (const auto& s : sources) {
        for (Metric m : metrics) {
            SweepConfig run = s;
            run.metric = m;
            plan.runs.push_back(std::move(run));
        }
    }
    return plan;
}

namespace {

int dispatch(CLI::App& app, const std::map<std::string, std::function<void()>>& handlers) {
    for (const auto* sub : app.get_subcommands()) {
        handlers.at(sub->get_name())();
        return 0;
    }
    throw UsageError("no subcommand given");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"kgrank: knowledge-graph centrality under relation-extraction error"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    // gen
    std::string topology = "er";
    GenSpec gen;
    std::optional<std::uint64_t> seed;
    std::string in_path;
    std::string out_path;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic ground-truth graph");
    gen_cmd->add_option("--topology", topology, "er, ba, ws or lfr")->required();
    gen_cmd->add_option("--nodes", gen.n, "Node count")->capture_default_str();
    gen_cmd->add_option("--avg-degree", gen.target_avg_degree, "Target average degree (ER, LFR)")->capture_default_str();
    gen_cmd->add_option("--m-attach", gen.m_attach, "Edges per arriving node (BA)")->capture_default_str();
    gen_cmd->add_option("--ring", gen.k_ring, "Ring-lattice neighbours (WS)")->capture_default_str();
    gen_cmd->add_option("--beta", gen.beta, "Rewiring probability (WS)")->capture_default_str();
    gen_cmd->add_option("--tau1", gen.lfr.tau1, "Degree exponent (LFR)")->capture_default_str();
    gen_cmd->add_option("--tau2", gen.lfr.tau2, "Community-size exponent (LFR)")->capture_default_str();
    gen_cmd->add_option("--mu", gen.lfr.mu, "Mixing parameter (LFR)")->capture_default_str();
    gen_cmd->add_option("--max-degree", gen.lfr.max_degree, "Maximum degree (LFR)")->capture_default_str();
    gen_cmd->add_option("--min-community", gen.lfr.min_community, "Smallest community (LFR)")->capture_default_str();
    gen_cmd->add_option("--max-community", gen.lfr.max_community, "Largest community (LFR)")->capture_default_str();
    gen_cmd->add_option("--seed", seed, "Random seed")->required();
    gen_cmd->add_option("--out", out_path, "Output edge list; metadata goes to <out>.meta")->required();

    // perturb
    ErrorModel model;
    auto* perturb_cmd = app.add_subcommand("perturb", "Simulate the graph learned by an imperfect relation extractor");
    perturb_cmd->add_option("--in", in_path, "Ground-truth edge list")->required();
    perturb_cmd->add_option("--precision", model.precision, "Relation-extraction precision in (0, 1]")->required();
    perturb_cmd->add_option("--recall", model.recall, "Relation-extraction recall in [0, 1]")->required();
    perturb_cmd->add_option("--seed", seed, "Random seed")->required();
    perturb_cmd->add_option("--out", out_path, "Output edge list; metadata goes to <out>.meta")->required();

    // centrality / top-k
    std::string metric_name = "betweenness";
    std::size_t k = 20;
    std::string compare_path;
    auto* cent_cmd = app.add_subcommand("centrality", "Score every node of an edge list");
    cent_cmd->add_option("--in", in_path, "Edge list")->required();
    cent_cmd->add_option("--metric", metric_name, "degree, closeness, betweenness or eigenvector")->required();
    cent_cmd->add_option("--out", out_path, "CSV node_label,score")->required();

    auto* topk_cmd = app.add_subcommand("top-k", "Top-k nodes, optionally overlapped with a second graph");
    topk_cmd->add_option("--in", in_path, "Edge list")->required();
    topk_cmd->add_option("--metric", metric_name, "Centrality metric")->required();
    topk_cmd->add_option("--k", k, "Set size")->capture_default_str();
    topk_cmd->add_option("--compare", compare_path, "Second edge list; prints overlap=<n> on stdout");
    topk_cmd->add_option("--out", out_path, "CSV rank,label,score")->required();

    // sweep
    std::string config_path;
    std::string plot_dir;
    std::optional<std::size_t> workers;
    auto* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo top-k overlap over a precision/recall grid");
    sweep_cmd->add_option("--config", config_path, "key = value config file")->required();
    sweep_cmd->add_option("--out", out_path, "CSV for a single source and metric");
    sweep_cmd->add_option("--plot-dir", plot_dir, "Directory for one matrix CSV per source and metric");
    sweep_cmd->add_option("--workers", workers, "Worker threads (output does not depend on it)");
    sweep_cmd->add_option("--seed", seed, "Master seed (overrides the config)");

    // calibrate / classify / eval
    ie::CalibrationFilters filters;
    std::string grid_text;
    std::string report_path;
    auto* cal_cmd = app.add_subcommand("calibrate", "Select synonyms and thresholds from a labeled score table");
    cal_cmd->add_option("--in", in_path, "Labeled score table CSV")->required();
    cal_cmd->add_option("--out", out_path, "Classifier config")->required();
    cal_cmd->add_option("--max-fpr", filters.max_fpr, "Drop synonyms with a higher false-positive rate")->capture_default_str();
    cal_cmd->add_option("--min-recall", filters.min_recall, "Drop synonyms with lower recall")->capture_default_str();
    cal_cmd->add_option("--grid", grid_text, "Threshold grid, list or start:stop:step (default 0.1:0.6:0.05)");
    cal_cmd->add_option("--report", report_path, "Per-synonym statistics CSV");

    std::string config_in;
    auto* cls_cmd = app.add_subcommand("classify", "Apply a classifier config to a score table");
    cls_cmd->add_option("--in", in_path, "Score table CSV")->required();
    cls_cmd->add_option("--config", config_in, "Classifier config")->required();
    cls_cmd->add_option("--out", out_path, "Entity CSV")->required();

    std::string gold_path;
    auto* eval_cmd = app.add_subcommand("eval", "Precision/recall/F1 of entity predictions");
    eval_cmd->add_option("--pred", in_path, "Entity CSV")->required();
    eval_cmd->add_option("--gold", gold_path, "Labeled score table CSV")->required();
    eval_cmd->add_option("--out", out_path, "Report CSV (stdout when omitted)");

    // extract-rel / subsample
    double threshold = ie::kRelationThreshold;
    auto* rel_cmd = app.add_subcommand("extract-rel", "Keep relation rows at or above a probability threshold");
    rel_cmd->add_option("--in", in_path, "Relation table CSV")->required();
    rel_cmd->add_option("--threshold", threshold, "Probability threshold")->capture_default_str();
    rel_cmd->add_option("--out", out_path, "Triple CSV")->required();

    double ratio = 0.04;
    auto* sub_cmd = app.add_subcommand("subsample", "Subsample a corpus to an entity-token ratio");
    sub_cmd->add_option("--in", in_path, "Corpus CSV")->required();
    sub_cmd->add_option("--ratio", ratio, "Target entity-token ratio")->capture_default_str();
    sub_cmd->add_option("--seed", seed, "Random seed")->required();
    sub_cmd->add_option("--out", out_path, "Corpus CSV subset")->required();

    // build-kg / rank
    std::string entities_path;
    std::string triples_path;
    std::string attrs_path;
    auto* kg_cmd = app.add_subcommand("build-kg", "Assemble a knowledge graph from entities and triples");
    kg_cmd->add_option("--entities", entities_path, "Entity CSV")->required();
    kg_cmd->add_option("--triples", triples_path, "Triple CSV")->required();
    kg_cmd->add_option("--out", out_path, "Edge list")->required();
    kg_cmd->add_option("--attributes", attrs_path, "Edge attribute CSV (default <out>.attrs.csv)");

    auto* rank_cmd = app.add_subcommand("rank", "Rank entities of a knowledge graph");
    rank_cmd->add_option("--in", in_path, "Knowledge-graph edge list")->required();
    rank_cmd->add_option("--metric", metric_name, "Centrality metric")->required();
    rank_cmd->add_option("--k", k, "Number of entities")->capture_default_str();
    rank_cmd->add_option("--out", out_path, "CSV rank,label,score")->required();

    std::vector<const char*> argv;
    argv.push_back("kgrank");
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }

    try {
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::CallForHelp&) {
            out << app.help();
            return 0;
        } catch (const CLI::CallForAllHelp&) {
            out << app.help("", CLI::AppFormatMode::All);
            return 0;
        } catch (const CLI::ParseError& e) {
            throw UsageError(e.what());
        }

        auto load_graph = [](const std::string& path) {
            require_input(path);
            return from_edge_list(read_file(path));
        };

        const std::map<std::string, std::function<void()>> handlers = {
            {"gen",
             [&] {
                 require_output_dir(out_path);
                 gen.topology = parse_topology(topology);
                 gen.seed = *seed;
                 const auto g = generate(gen);
                 write_file_atomic(out_path, to_edge_list(g.graph));
                 write_file_atomic(out_path + ".meta", key_values(g.metadata));
             }},
            {"perturb",
             [&] {
                 const auto truth = load_graph(in_path);
                 require_output_dir(out_path);
                 model.seed = *seed;
                 const auto r = perturb(truth, model);
                 write_file_atomic(out_path, to_edge_list(r.graph));
                 write_file_atomic(out_path + ".meta",
                                   key_values({{"precision", fmt::format("{}", model.precision)},
                                               {"recall", fmt::format("{}", model.recall)},
                                               {"seed", std::to_string(model.seed)},
                                               {"kept", std::to_string(r.kept)},
                                               {"added", std::to_string(r.added)},
                                               {"false_edge_probability", fmt::format("{:.10g}", r.probability)},
                                               {"clamped", r.clamped ? "1" : "0"},
                                               {"realized_precision", fmt::format("{:.6f}", r.realized_precision())},
                                               {"realized_recall",
                                                fmt::format("{:.6f}", r.realized_recall(truth.edge_count()))}},
                                              r.warnings));
                 for (const auto& w : r.warnings) {
                     err << "warning: " << w << "\n";
                 }
             }},
            {"centrality",
             [&] {
                 const auto g = load_graph(in_path);
                 require_output_dir(out_path);
                 const auto s = ranking_scores(g, parse_metric(metric_name));
                 std::vector<NodeId> order(g.node_count());
                 std::iota(order.begin(), order.end(), NodeId{0});
                 std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
                     return s.scores[a] != s.scores[b] ? s.scores[a] > s.scores[b] : g.label(a) < g.label(b);
                 });
                 std::string csv_text = "node_label,score\n";
                 for (NodeId v : order) {
                     csv_text += fmt::format("{},{:.12g}\n", csv::escape(g.label(v)), s.scores[v]);
                 }
                 write_file_atomic(out_path, csv_text);
             }},
            {"top-k",
             [&] {
                 const auto g = load_graph(in_path);
                 const Metric metric = parse_metric(metric_name);
                 std::optional<Graph> other;
                 if (!compare_path.empty()) {
                     other = load_graph(compare_path);
                 }
                 require_output_dir(out_path);
                 KnowledgeGraph kg;
                 kg.graph = g;
                 const auto ranked = rank_entities(kg, metric, k);
                 write_file_atomic(out_path, ranking_csv(ranked));
                 if (other) {
                     KnowledgeGraph kg2;
                     kg2.graph = *other;
                     const auto ranked2 = rank_entities(kg2, metric, k);
                     std::set<std::string> a;
                     for (const auto& r : ranked) {
                         a.insert(r.label);
                     }
                     std::size_t common = 0;
                     for (const auto& r : ranked2) {
                         common += a.contains(r.label) ? 1 : 0;
                     }
                     out << "overlap=" << common << "\n";
                 }
             }},
            {"sweep",
             [&] {
                 require_input(config_path);
                 auto plan = parse_sweep_config(read_file(config_path),
                                                fs::path(config_path).parent_path().string().empty()
                                                    ? "."
                                                    : fs::path(config_path).parent_path().string());
                 if (!seed && !plan.seed_given) {
                     throw UsageError("sweep needs a seed (config key 'seed' or --seed)");
                 }
                 if (out_path.empty() == plot_dir.empty()) {
                     throw UsageError("sweep needs exactly one of --out or --plot-dir");
                 }
                 for (auto& r : plan.runs) {
                     if (seed) {
                         r.master_seed = *seed;
                         if (r.generator && !plan.graph_seed_given) {
                             r.generator->seed = *seed;
                         }
                     }
                     if (workers) {
                         r.workers = *workers;
                     }
                     if (!r.edge_list_path.empty()) {
                         require_input(r.edge_list_path);
                     }
                 }
                 if (!out_path.empty()) {
                     if (plan.runs.size() != 1) {
                         throw UsageError("--out needs a single source and metric; use --plot-dir for several");
                     }
                     require_output_dir(out_path);
                     write_file_atomic(out_path, sweep(plan.runs.front()).to_csv());
                     return;
                 }
                 std::error_code ec;
                 fs::create_directories(plot_dir, ec);
                 if (ec || !fs::is_directory(plot_dir)) {
                     throw IoError("cannot create plot directory '" + plot_dir + "'");
                 }
                 for (const auto& r : plan.runs) {
                     const auto table = sweep(r);
                     const auto stem = fs::path(plot_dir) / (r.source_name + "_" + to_string(r.metric));
                     write_file_atomic(stem.string() + ".csv", table.to_plot_csv());
                     write_file_atomic(stem.string() + "_rows.csv", table.to_csv());
                 }
             }},
            {"calibrate",
             [&] {
                 require_input(in_path);
                 require_output_dir(out_path);
                 const auto rows = ie::parse_score_table(read_file(in_path));
                 const auto grid = grid_text.empty() ? ie::default_threshold_grid() : parse_grid(grid_text);
                 const auto cal = ie::calibrate(rows, grid, filters);
                 write_file_atomic(out_path, cal.config.serialize());
                 if (!report_path.empty()) {
                     std::string rep = "fine_type,synonym,threshold,tp,fp,fn,tn,precision,recall,f1,fpr,selected\n";
                     for (const auto& s : cal.synonyms) {
                         rep += fmt::format("{},{},{},{},{},{},{},{:.6f},{:.6f},{:.6f},{:.6f},{}\n",
                                            csv::escape(s.fine_type), csv::escape(s.synonym), s.threshold,
                                            s.counts.tp, s.counts.fp, s.counts.fn, s.counts.tn, s.precision, s.recall,
                                            s.f1, s.fpr, s.selected ? 1 : 0);
                     }
                     write_file_atomic(report_path, rep);
                 }
                 for (const auto& w : cal.warnings) {
                     err << "warning: " << w << "\n";
                 }
             }},
            {"classify",
             [&] {
                 require_input(in_path);
                 require_input(config_in);
                 require_output_dir(out_path);
                 const auto rows = ie::parse_score_table(read_file(in_path));
                 const auto cfg = ie::ClassifierConfig::parse(read_file(config_in));
                 write_file_atomic(out_path, ie::write_entities(ie::classify(rows, cfg)));
             }},
            {"eval",
             [&] {
                 require_input(in_path);
                 require_input(gold_path);
                 const auto predicted = ie::parse_entities(read_file(in_path));
                 const auto gold_rows = ie::parse_score_table(read_file(gold_path));
                 std::set<ie::Label> pred;
                 for (const auto& e : predicted) {
                     pred.emplace(e.mention_id, e.fine_type);
                 }
                 const auto report = ie::evaluate(pred, ie::gold_labels(gold_rows)).report();
                 if (out_path.empty()) {
                     out << report;
                 } else {
                     require_output_dir(out_path);
                     write_file_atomic(out_path, report);
                 }
             }},
            {"extract-rel",
             [&] {
                 require_input(in_path);
                 require_output_dir(out_path);
                 const auto rows = ie::parse_relation_table(read_file(in_path));
                 write_file_atomic(out_path, ie::write_relation_table(ie::extract_relations(rows, threshold)));
             }},
            {"subsample",
             [&] {
                 require_input(in_path);
                 require_output_dir(out_path);
                 const auto corpus = ie::parse_corpus(read_file(in_path));
                 const auto s = ie::subsample_corpus(corpus, ratio, *seed);
                 write_file_atomic(out_path, ie::write_corpus(s.kept));
                 for (const auto& w : s.warnings) {
                     err << "warning: " << w << "\n";
                 }
             }},
            {"build-kg",
             [&] {
                 require_input(entities_path);
                 require_input(triples_path);
                 require_output_dir(out_path);
                 if (attrs_path.empty()) {
                     attrs_path = out_path + ".attrs.csv";
                 }
                 require_output_dir(attrs_path);
                 const auto entities = ie::parse_entities(read_file(entities_path));
                 const auto triples = ie::parse_relation_table(read_file(triples_path));
                 const auto kg = build_graph(entities, triples);
                 write_file_atomic(out_path, to_edge_list(kg.graph));
                 write_file_atomic(attrs_path, kg.attributes_csv());
                 for (const auto& w : kg.warnings) {
                     err << "warning: " << w << "\n";
                 }
             }},
            {"rank",
             [&] {
                 KnowledgeGraph kg;
                 kg.graph = load_graph(in_path);
                 require_output_dir(out_path);
                 write_file_atomic(out_path, ranking_csv(rank_entities(kg, parse_metric(metric_name), k)));
             }},
        };
        return dispatch(app, handlers);
    } catch (const UsageError& e) {
        err << "error kind=usage message=" << quote(e.what()) << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error kind=" << e.kind() << " message=" << quote(e.what()) << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error kind=internal message=" << quote(e.what()) << "\n";
        return 1;
    }
}

} // namespace kgrank::cli
