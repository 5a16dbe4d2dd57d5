#pragma once

#include "kgrank/centrality.hpp"
#include "kgrank/generators.hpp"
#include "kgrank/graph.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kgrank {

/// A named (precision, recall) operating point of some extraction method.
struct Marker {
    std::string name;
    double precision = 1.0;
    double recall = 1.0;
};

struct SweepConfig {
    // Ground truth: a generator spec, or an edge-list file (reduced to its
    // largest connected component). Exactly one must be set.
    std::optional<GenSpec> generator;
    std::string edge_list_path;
    std::string source_name;  // label used for plot-data file names

    Metric metric = Metric::Betweenness;
    std::size_t k = 20;
    std::vector<double> precisions;
    std::vector<double> recalls;
    std::size_t trials = 10;
    std::uint64_t master_seed = 0;
    std::vector<Marker> markers;
    std::size_t workers = 1;

    void validate() const;
};

struct SweepRow {
    double precision = 0.0;
    double recall = 0.0;
    double mean_overlap = 0.0;
    double std_overlap = 0.0;  // sample standard deviation, 0 for one trial
    std::size_t trials = 0;
    std::string marker_name;   // empty for grid rows
};

struct SweepTable {
    Metric metric = Metric::Betweenness;
    std::size_t k = 0;
    std::vector<double> precisions;
    std::vector<double> recalls;
    std::vector<SweepRow> rows;  // grid rows by (precision, recall), then markers in config order

    /// `precision,recall,mean_overlap,std_overlap,trials,marker_name`
    std::string to_csv() const;
    /// Matrix of grid means, one row per recall and one column per precision.
    std::string to_plot_csv() const;
};

/// 0.30, 0.35, ..., 1.00.
std::vector<double> default_grid();

/// Parses "a,b,c" or an inclusive range "start:stop:step".
std::vector<double> parse_grid(const std::string& text);

Graph load_ground_truth(const SweepConfig& cfg);

/// Centrality used for ranking. Same as compute_centrality except that an
/// edgeless graph ranks all nodes equal under the eigenvector metric.
ScoreVector ranking_scores(const Graph& g, Metric metric);

/// Monte Carlo top-k overlap between `truth` and its perturbations on every
/// grid cell and marker. Trial seeds derive from (master seed, cell, trial),
/// so the table is identical for any worker count. The source fields of `cfg`
/// are ignored.
SweepTable sweep(const Graph& truth, const SweepConfig& cfg);

/// Loads or generates the ground truth, then sweeps.
SweepTable sweep(const SweepConfig& cfg);

} // namespace kgrank
