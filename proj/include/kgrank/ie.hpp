#pragma once

// Post-processing for low-resource information extraction over precomputed
// entailment probabilities: per-synonym threshold calibration for fine-grained
// entity typing, the apply-time decision rule, relation thresholding, P/R/F1
// evaluation and corpus subsampling.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kgrank::ie {

/// Entailment probability that mention `mention_text` "is a/an <synonym>",
/// where the synonym stands for `fine_type`.
struct ScoreRow {
    std::string mention_id;
    std::string sentence_id;
    std::string mention_text;
    std::string coarse_type;
    std::string fine_type;
    std::string synonym;
    double prob = 0.0;
    std::optional<bool> gold;
};

/// CSV with header mention_id,sentence_id,mention_text,coarse_type,fine_type,synonym,prob,gold.
/// gold is blank, 0/1 or false/true. Throws ParseError on bad probabilities
/// or a repeated (mention_id, fine_type, synonym).
std::vector<ScoreRow> parse_score_table(std::string_view text);
std::string write_score_table(std::span<const ScoreRow> rows);

struct SynonymThreshold {
    std::string synonym;
    double threshold = 0.0;
};

struct CalibrationFilters {
    double max_fpr = 0.3;
    double min_recall = 0.2;
};

inline constexpr std::size_t kMaxSynonymsPerType = 3;
inline constexpr double kMinThreshold = 0.1;
inline constexpr double kMaxThreshold = 0.6;

/// Selected synonyms and thresholds per fine-grained type. A type with an
/// empty list is never predicted.
struct ClassifierConfig {
    std::map<std::string, std::vector<SynonymThreshold>> types;
    CalibrationFilters filters;

    /// Throws ParameterError on more than three synonyms for a type or a
    /// threshold outside [0.1, 0.6].
    void validate() const;

    std::string serialize() const;
    static ClassifierConfig parse(std::string_view text);
};

/// 0.10, 0.15, ..., 0.60.
std::vector<double> default_threshold_grid();

/// Counts for the rule prob > threshold.
struct Confusion {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    std::size_t tn = 0;
};

struct SynonymStats {
    std::string fine_type;
    std::string synonym;
    double threshold = 0.0;
    Confusion counts;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double fpr = 0.0;
    bool selected = false;
};

struct Calibration {
    ClassifierConfig config;
    std::vector<SynonymStats> synonyms;  // by (fine_type, synonym)
    std::vector<std::string> warnings;
};

/// For each synonym, the grid threshold with the highest F1 (ties go to the
/// larger threshold). Per type, synonyms whose false-positive rate exceeds
/// max_fpr or whose recall is below min_recall are dropped, and the best three
/// by F1 survive (ties by synonym name).
///
/// Every row must carry a gold label; throws ParameterError otherwise.
Calibration calibrate(std::span<const ScoreRow> rows, std::span<const double> grid, CalibrationFilters filters = {});
Calibration calibrate(std::span<const ScoreRow> rows, CalibrationFilters filters = {});

/// Entity tuple ⟨mention, fine type⟩.
struct EntityTuple {
    std::string mention_id;
    std::string sentence_id;
    std::string mention_text;
    std::string fine_type;
};

/// Per mention, among selected (type, synonym) pairs whose probability
/// strictly exceeds their threshold, the one with the largest probability
/// wins (ties by (type, synonym) name). Mentions without such a pair produce
/// nothing. Rows for unselected synonyms are ignored. Output follows the
/// first appearance of each mention.
std::vector<EntityTuple> classify(std::span<const ScoreRow> rows, const ClassifierConfig& cfg);

/// CSV `mention_id,sentence_id,mention_text,fine_type`.
std::string write_entities(std::span<const EntityTuple> entities);
std::vector<EntityTuple> parse_entities(std::string_view text);

struct PRF1 {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;

    static PRF1 from_counts(std::size_t tp, std::size_t fp, std::size_t fn);
};

/// (mention_id, fine_type)
using Label = std::pair<std::string, std::string>;

struct Evaluation {
    std::map<std::string, PRF1> per_type;
    PRF1 macro;  // counts summed; rates are unweighted means over types

    /// `fine_type,tp,fp,fn,precision,recall,f1` with rates in percent to one
    /// decimal, ending with a `macro` row.
    std::string report() const;
};

Evaluation evaluate(const std::set<Label>& predictions, const std::set<Label>& gold);

/// Gold (mention, type) pairs of a labeled score table.
std::set<Label> gold_labels(std::span<const ScoreRow> rows);

struct RelationRow {
    std::string a;
    std::string b;
    std::string relation;
    std::string sentence_id;
    double prob = 0.0;
};

/// ⟨a, relation, b⟩ with provenance.
using RelationTriple = RelationRow;

inline constexpr double kRelationThreshold = 0.8;

/// CSV with header a,b,relation,sentence_id,prob.
std::vector<RelationRow> parse_relation_table(std::string_view text);
std::string write_relation_table(std::span<const RelationRow> rows);

/// Every row with prob >= threshold, in input order. All qualifying relation
/// types of a pair are kept.
std::vector<RelationTriple> extract_relations(std::span<const RelationRow> rows, double threshold = kRelationThreshold);

struct Sentence {
    std::string sentence_id;
    std::size_t token_count = 0;
    std::size_t entity_token_count = 0;
    bool has_target_entity = false;
};

struct Subsample {
    std::vector<Sentence> kept;  // in corpus order
    std::size_t fillers_added = 0;
    double entity_ratio = 0.0;
    std::vector<std::string> warnings;
};

/// Keeps every sentence with the target entity, then adds the other sentences
/// in seeded random order while the entity-token ratio stays at or above
/// `target_ratio`; stops at the first filler that would push it below.
Subsample subsample_corpus(std::span<const Sentence> corpus, double target_ratio, std::uint64_t seed);

/// CSV with header sentence_id,token_count,entity_token_count,has_target_entity.
std::vector<Sentence> parse_corpus(std::string_view text);
std::string write_corpus(std::span<const Sentence> corpus);

} // namespace kgrank::ie
