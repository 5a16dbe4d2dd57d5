#include "kgrank/sweep.hpp"

#include "kgrank/error.hpp"
#include "kgrank/io.hpp"
#include "kgrank/perturb.hpp"
#include "kgrank/seed.hpp"
#include "kgrank/topk.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fmt/format.h>
#include <thread>

namespace kgrank {
namespace {

double tidy(double x) { return std::round(x * 1e10) / 1e10; }

void check_unit_interval(const std::vector<double>& grid, const char* what) {
    if (grid.empty()) {
        throw ParameterError(std::string(what) + " grid is empty");
    }
    for (double v : grid) {
        if (!(v > 0.0 && v <= 1.0)) {
            throw ParameterError(fmt::format("{} grid value {} outside (0, 1]", what, v));
        }
    }
}

struct Cell {
    double precision;
    double recall;
    std::string marker;
};

void check_run(const SweepConfig& cfg) {
    if (cfg.k == 0) {
        throw ParameterError("k must be at least 1");
    }
    if (cfg.trials == 0) {
        throw ParameterError("trials must be at least 1");
    }
    check_unit_interval(cfg.precisions, "precision");
    check_unit_interval(cfg.recalls, "recall");
    for (const auto& m : cfg.markers) {
        if (!(m.precision > 0.0 && m.precision <= 1.0) || !(m.recall > 0.0 && m.recall <= 1.0)) {
            throw ParameterError("marker '" + m.name + "' lies outside (0, 1]");
        }
    }
}

} // namespace

void SweepConfig::validate() const {
    if (generator.has_value() == !edge_list_path.empty()) {
        throw ParameterError("sweep needs exactly one ground-truth source (generator or edge list)");
    }
    if (generator) {
        generator->validate();
    }
    check_run(*this);
}

std::vector<double> default_grid() { return parse_grid("0.30:1.00:0.05"); }

std::vector<double> parse_grid(const std::string& text) {
    auto number = [&](const std::string& s) {
        try {
            std::size_t used = 0;
            const double v = std::stod(s, &used);
            if (s.find_first_not_of(" \t", used) != std::string::npos) {
                throw std::invalid_argument(s);
            }
            return v;
        } catch (const std::exception&) {
            throw ParameterError("bad grid value '" + s + "'");
        }
    };

    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        const auto a = text.find(':');
        const auto b = text.find(':', a + 1);
        if (b == std::string::npos) {
            throw ParameterError("grid range must be start:stop:step");
        }
        const double start = number(text.substr(0, a));
        const double stop = number(text.substr(a + 1, b - a - 1));
        const double step = number(text.substr(b + 1));
        if (!(step > 0.0) || stop < start) {
            throw ParameterError("grid range needs step > 0 and stop >= start");
        }
        const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
        for (std::size_t i = 0; i < count; ++i) {
            out.push_back(tidy(start + static_cast<double>(i) * step));
        }
        return out;
    }
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find(',', pos);
        if (end == std::string::npos) {
            end = text.size();
        }
        out.push_back(number(text.substr(pos, end - pos)));
        pos = end + 1;
    }
    return out;
}

Graph load_ground_truth(const SweepConfig& cfg) {
    if (cfg.generator) {
        return generate(*cfg.generator).graph;
    }
    return largest_connected_component(from_edge_list(read_file(cfg.edge_list_path)));
}

ScoreVector ranking_scores(const Graph& g, Metric metric) {
    if (metric == Metric::Eigenvector && g.edge_count() == 0) {
        return {metric, std::vector<double>(g.node_count(), 0.0)};
    }
    return compute_centrality(g, metric);
}

SweepTable sweep(const Graph& truth, const SweepConfig& cfg) {
    check_run(cfg);

    std::vector<Cell> cells;
    for (double p : cfg.precisions) {
        for (double r : cfg.recalls) {
            cells.push_back({p, r, {}});
        }
    }
    std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
        return a.precision != b.precision ? a.precision < b.precision : a.recall < b.recall;
    });
    for (const auto& m : cfg.markers) {
        cells.push_back({m.precision, m.recall, m.name});
    }

    // The ground-truth ranking is shared by every trial.
    const TopKSet reference = top_k(ranking_scores(truth, cfg.metric), cfg.k);

    const std::size_t jobs = cells.size() * cfg.trials;
    std::vector<std::size_t> overlaps(jobs, 0);
    std::vector<std::exception_ptr> failures(jobs);
    std::atomic<std::size_t> next{0};

    auto work = [&] {
        for (std::size_t job = next++; job < jobs; job = next++) {
            const std::size_t cell = job / cfg.trials;
            const std::size_t trial = job % cfg.trials;
            try {
                ErrorModel model{cells[cell].precision, cells[cell].recall,
                                 derive_seed({cfg.master_seed, cell, trial})};
                const auto learned = perturb(truth, model);
                overlaps[job] = overlap(reference, top_k(ranking_scores(learned.graph, cfg.metric), cfg.k));
            } catch (...) {
                failures[job] = std::current_exception();
            }
        }
    };

    const std::size_t workers = std::max<std::size_t>(1, std::min(cfg.workers, jobs));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < workers; ++i) {
            pool.emplace_back(work);
        }
    }

    for (std::size_t job = 0; job < jobs; ++job) {
        if (failures[job]) {
            const auto& c = cells[job / cfg.trials];
            try {
                std::rethrow_exception(failures[job]);
            } catch (const Error& e) {
                throw Error(e.kind(), fmt::format("cell (precision={}, recall={}) trial {}: {}", c.precision,
                                                  c.recall, job % cfg.trials, e.what()));
            }
        }
    }

    SweepTable table;
    table.metric = cfg.metric;
    table.k = cfg.k;
    table.precisions = cfg.precisions;
    table.recalls = cfg.recalls;
    std::sort(table.precisions.begin(), table.precisions.end());
    std::sort(table.recalls.begin(), table.recalls.end());
    for (std::size_t cell = 0; cell < cells.size(); ++cell) {
        const auto begin = overlaps.begin() + static_cast<std::ptrdiff_t>(cell * cfg.trials);
        double sum = 0.0;
        for (auto it = begin; it != begin + static_cast<std::ptrdiff_t>(cfg.trials); ++it) {
            sum += static_cast<double>(*it);
        }
        const double mean = sum / static_cast<double>(cfg.trials);
        double ss = 0.0;
        for (auto it = begin; it != begin + static_cast<std::ptrdiff_t>(cfg.trials); ++it) {
            ss += (static_cast<double>(*it) - mean) * (static_cast<double>(*it) - mean);
        }
        const double sd = cfg.trials > 1 ? std::sqrt(ss / static_cast<double>(cfg.trials - 1)) : 0.0;
        table.rows.push_back({cells[cell].precision, cells[cell].recall, mean, sd, cfg.trials, cells[cell].marker});
    }
    return table;
}

SweepTable sweep(const SweepConfig& cfg) {
    cfg.validate();
    Graph truth;
    try {
        truth = load_ground_truth(cfg);
    } catch (const Error& e) {
        throw Error(e.kind(), std::string("loading ground truth: ") + e.what());
    }
    return sweep(truth, cfg);
}

std::string SweepTable::to_csv() const {
    std::string out = "precision,recall,mean_overlap,std_overlap,trials,marker_name\n";
    for (const auto& r : rows) {
        out += fmt::format("{},{},{:.4f},{:.4f},{},{}\n", r.precision, r.recall, r.mean_overlap, r.std_overlap,
                           r.trials, r.marker_name);
    }
    return out;
}

std::string SweepTable::to_plot_csv() const {
    std::string out = "recall";
    for (double p : precisions) {
        out += fmt::format(",{}", p);
    }
    out += '\n';
    for (double r : recalls) {
        out += fmt::format("{}", r);
        for (double p : precisions) {
            const auto it = std::find_if(rows.begin(), rows.end(), [&](const SweepRow& row) {
                return row.marker_name.empty() && row.precision == p && row.recall == r;
            });
            out += fmt::format(",{:.4f}", it->mean_overlap);
        }
        out += '\n';
    }
    return out;
}

} // namespace kgrank
