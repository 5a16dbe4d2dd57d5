#include "kgrank/ie.hpp"

#include "kgrank/csv.hpp"
#include "kgrank/error.hpp"
#include "kgrank/keyvalue.hpp"
#include "kgrank/seed.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fmt/format.h>
#include <numeric>
#include <tuple>
#include <unordered_map>

namespace kgrank::ie {
namespace {

double parse_prob(const std::string& s, std::size_t line) {
    double v = 0.0;
    try {
        std::size_t used = 0;
        v = std::stod(s, &used);
        if (used != s.size()) {
            throw std::invalid_argument(s);
        }
    } catch (const std::exception&) {
        throw ParseError("bad probability '" + s + "'", line);
    }
    if (!(v >= 0.0 && v <= 1.0)) {
        throw ParseError("probability " + s + " outside [0, 1]", line);
    }
    return v;
}

std::size_t parse_count(const std::string& s, std::size_t line) {
    std::size_t used = 0;
    try {
        if (!s.empty() && s.front() != '-') {
            const auto v = std::stoull(s, &used);
            if (used == s.size()) {
                return static_cast<std::size_t>(v);
            }
        }
    } catch (const std::exception&) {
    }
    throw ParseError("bad count '" + s + "'", line);
}

std::optional<bool> parse_flag(const std::string& s, std::size_t line, bool allow_blank) {
    if (s.empty() && allow_blank) return std::nullopt;
    if (s == "1" || s == "true" || s == "True" || s == "TRUE") return true;
    if (s == "0" || s == "false" || s == "False" || s == "FALSE") return false;
    throw ParseError("bad boolean '" + s + "'", line);
}

/// F1 as the exact fraction 2tp / (2tp + fp + fn), so equal counts compare equal.
struct F1Ratio {
    std::size_t num;
    std::size_t den;

    explicit F1Ratio(const Confusion& c) : num(2 * c.tp), den(2 * c.tp + c.fp + c.fn) {
        if (den == 0) {
            den = 1;
        }
    }
    // Cross products stay far below 2^64 for any realistic table.
    friend bool operator<(const F1Ratio& a, const F1Ratio& b) { return a.num * b.den < b.num * a.den; }
    friend bool operator==(const F1Ratio& a, const F1Ratio& b) { return a.num * b.den == b.num * a.den; }
};

Confusion count_at(std::span<const ScoreRow* const> rows, double threshold) {
    Confusion c;
    for (const auto* r : rows) {
        const bool predicted = r->prob > threshold;
        if (*r->gold) {
            (predicted ? c.tp : c.fn) += 1;
        } else {
            (predicted ? c.fp : c.tn) += 1;
        }
    }
    return c;
}

} // namespace

std::vector<ScoreRow> parse_score_table(std::string_view text) {
    const auto t = csv::parse(text);
    csv::require_header(t, {"mention_id", "sentence_id", "mention_text", "coarse_type", "fine_type", "synonym", "prob",
                            "gold"});
    std::vector<ScoreRow> rows;
    rows.reserve(t.rows.size());
    std::set<std::tuple<std::string, std::string, std::string>> seen;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const auto& f = t.rows[i];
        const auto line = t.line_numbers[i];
        ScoreRow r{f[0], f[1], f[2], f[3], f[4], f[5], parse_prob(f[6], line), parse_flag(f[7], line, true)};
        if (!seen.emplace(r.mention_id, r.fine_type, r.synonym).second) {
            throw ParseError("repeated (mention_id, fine_type, synonym) = (" + r.mention_id + ", " + r.fine_type +
                                 ", " + r.synonym + ")",
                             line);
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string write_score_table(std::span<const ScoreRow> rows) {
    std::string out = "mention_id,sentence_id,mention_text,coarse_type,fine_type,synonym,prob,gold\n";
    for (const auto& r : rows) {
        out += csv::join_row({r.mention_id, r.sentence_id, r.mention_text, r.coarse_type, r.fine_type, r.synonym,
                              fmt::format("{}", r.prob), r.gold ? (*r.gold ? "1" : "0") : ""});
    }
    return out;
}

void ClassifierConfig::validate() const {
    for (const auto& [type, list] : types) {
        if (list.size() > kMaxSynonymsPerType) {
            throw ParameterError("type '" + type + "' has more than " + std::to_string(kMaxSynonymsPerType) +
                                 " synonyms");
        }
        for (const auto& s : list) {
            if (!(s.threshold >= kMinThreshold && s.threshold <= kMaxThreshold)) {
                throw ParameterError(fmt::format("threshold {} for '{}' / '{}' outside [{}, {}]", s.threshold, type,
                                                 s.synonym, kMinThreshold, kMaxThreshold));
            }
        }
    }
}

std::string ClassifierConfig::serialize() const {
    std::string out = "# fine-type classifier: synonym = threshold, predict when prob > threshold\n";
    out += fmt::format("max_fpr = {}\nmin_recall = {}\n", filters.max_fpr, filters.min_recall);
    for (const auto& [type, list] : types) {
        out += fmt::format("\n[{}]\n", type);
        if (list.empty()) {
            out += "# no synonym passed the filters\n";
        }
        for (const auto& s : list) {
            out += fmt::format("{} = {}\n", s.synonym, s.threshold);
        }
    }
    return out;
}

ClassifierConfig ClassifierConfig::parse(std::string_view text) {
    ClassifierConfig cfg;
    std::string current;
    bool in_section = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        const std::string line = trim(text.substr(pos, end - pos));
        pos = end + 1;
        ++line_no;
        if (line.empty() || line.front() == '#') {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                throw ParseError("malformed section header", line_no);
            }
            current = trim(std::string_view(line).substr(1, line.size() - 2));
            if (cfg.types.contains(current)) {
                throw ParseError("type '" + current + "' appears twice", line_no);
            }
            cfg.types[current];
            in_section = true;
            continue;
        }
        const auto eq = line.rfind('=');
        if (eq == std::string::npos) {
            throw ParseError("expected 'name = value'", line_no);
        }
        const auto key = trim(std::string_view(line).substr(0, eq));
        const auto value = trim(std::string_view(line).substr(eq + 1));
        double number = 0.0;
        try {
            std::size_t used = 0;
            number = std::stod(value, &used);
            if (used != value.size()) {
                throw std::invalid_argument(value);
            }
        } catch (const std::exception&) {
            throw ParseError("expected a number after '='", line_no);
        }
        if (!in_section) {
            if (key == "max_fpr") {
                cfg.filters.max_fpr = number;
            } else if (key == "min_recall") {
                cfg.filters.min_recall = number;
            } else {
                throw ParseError("unknown setting '" + key + "'", line_no);
            }
        } else {
            cfg.types[current].push_back({key, number});
        }
    }
    cfg.validate();
    return cfg;
}

std::vector<double> default_threshold_grid() {
    std::vector<double> grid;
    for (int pct = 10; pct <= 60; pct += 5) {
        grid.push_back(pct / 100.0);
    }
    return grid;
}

Calibration calibrate(std::span<const ScoreRow> rows, std::span<const double> grid, CalibrationFilters filters) {
    if (grid.empty()) {
        throw ParameterError("threshold grid is empty");
    }
    for (double t : grid) {
        if (!(t >= kMinThreshold && t <= kMaxThreshold)) {
            throw ParameterError(fmt::format("grid threshold {} outside [{}, {}]", t, kMinThreshold, kMaxThreshold));
        }
    }
    std::vector<double> thresholds(grid.begin(), grid.end());
    std::sort(thresholds.begin(), thresholds.end());

    std::map<std::pair<std::string, std::string>, std::vector<const ScoreRow*>> by_synonym;
    for (const auto& r : rows) {
        if (!r.gold) {
            throw ParameterError("calibration row for mention '" + r.mention_id + "' has no gold label");
        }
        by_synonym[{r.fine_type, r.synonym}].push_back(&r);
    }

    Calibration out;
    out.config.filters = filters;
    for (const auto& [key, members] : by_synonym) {
        SynonymStats best;
        best.fine_type = key.first;
        best.synonym = key.second;
        std::optional<F1Ratio> best_f1;
        for (double t : thresholds) {
            const auto c = count_at(members, t);
            const F1Ratio f1(c);
            // Ascending scan with <= keeps the largest threshold among ties.
            if (!best_f1 || *best_f1 < f1 || *best_f1 == f1) {
                best_f1 = f1;
                best.threshold = t;
                best.counts = c;
            }
        }
        const auto& c = best.counts;
        const auto prf = PRF1::from_counts(c.tp, c.fp, c.fn);
        best.precision = prf.precision;
        best.recall = prf.recall;
        best.f1 = prf.f1;
        best.fpr = (c.fp + c.tn) == 0 ? 0.0 : static_cast<double>(c.fp) / static_cast<double>(c.fp + c.tn);
        out.synonyms.push_back(std::move(best));
    }

    // Group by type; out.synonyms is already ordered by (type, synonym).
    std::size_t i = 0;
    while (i < out.synonyms.size()) {
        std::size_t j = i;
        while (j < out.synonyms.size() && out.synonyms[j].fine_type == out.synonyms[i].fine_type) {
            ++j;
        }
        std::vector<std::size_t> passing;
        for (std::size_t s = i; s < j; ++s) {
            const auto& st = out.synonyms[s];
            if (st.fpr <= filters.max_fpr && st.recall >= filters.min_recall) {
                passing.push_back(s);
            }
        }
        std::stable_sort(passing.begin(), passing.end(), [&](std::size_t a, std::size_t b) {
            const F1Ratio fa(out.synonyms[a].counts);
            const F1Ratio fb(out.synonyms[b].counts);
            // Stable over name order, so equal F1 keeps lexicographic order.
            return fb < fa;
        });
        if (passing.size() > kMaxSynonymsPerType) {
            passing.resize(kMaxSynonymsPerType);
        }
        const auto& type = out.synonyms[i].fine_type;
        auto& list = out.config.types[type];
        for (std::size_t s : passing) {
            out.synonyms[s].selected = true;
            list.push_back({out.synonyms[s].synonym, out.synonyms[s].threshold});
        }
        if (list.empty()) {
            out.warnings.push_back("type '" + type + "' has no synonym passing the filters and will never be predicted");
        }
        i = j;
    }
    return out;
}

Calibration calibrate(std::span<const ScoreRow> rows, CalibrationFilters filters) {
    const auto grid = default_threshold_grid();
    return calibrate(rows, grid, filters);
}

std::vector<EntityTuple> classify(std::span<const ScoreRow> rows, const ClassifierConfig& cfg) {
    std::map<std::pair<std::string, std::string>, double> threshold;
    for (const auto& [type, list] : cfg.types) {
        for (const auto& s : list) {
            threshold[{type, s.synonym}] = s.threshold;
        }
    }

    std::vector<std::string> order;
    std::unordered_map<std::string, const ScoreRow*> winner;
    std::unordered_map<std::string, bool> seen;
    for (const auto& r : rows) {
        if (seen.emplace(r.mention_id, true).second) {
            order.push_back(r.mention_id);
        }
        const auto it = threshold.find({r.fine_type, r.synonym});
        if (it == threshold.end() || !(r.prob > it->second)) {
            continue;
        }
        auto& w = winner[r.mention_id];
        if (w == nullptr || r.prob > w->prob ||
            (r.prob == w->prob && std::tie(r.fine_type, r.synonym) < std::tie(w->fine_type, w->synonym))) {
            w = &r;
        }
    }

    std::vector<EntityTuple> out;
    for (const auto& id : order) {
        const auto it = winner.find(id);
        if (it != winner.end()) {
            const auto* r = it->second;
            out.push_back({r->mention_id, r->sentence_id, r->mention_text, r->fine_type});
        }
    }
    return out;
}

std::string write_entities(std::span<const EntityTuple> entities) {
    std::string out = "mention_id,sentence_id,mention_text,fine_type\n";
    for (const auto& e : entities) {
        out += csv::join_row({e.mention_id, e.sentence_id, e.mention_text, e.fine_type});
    }
    return out;
}

std::vector<EntityTuple> parse_entities(std::string_view text) {
    const auto t = csv::parse(text);
    csv::require_header(t, {"mention_id", "sentence_id", "mention_text", "fine_type"});
    std::vector<EntityTuple> out;
    for (const auto& f : t.rows) {
        out.push_back({f[0], f[1], f[2], f[3]});
    }
    return out;
}

PRF1 PRF1::from_counts(std::size_t tp, std::size_t fp, std::size_t fn) {
    PRF1 m{tp, fp, fn, 0.0, 0.0, 0.0};
    m.precision = (tp + fp) == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
    m.recall = (tp + fn) == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
    m.f1 = (m.precision + m.recall) == 0.0 ? 0.0 : 2.0 * m.precision * m.recall / (m.precision + m.recall);
    return m;
}

Evaluation evaluate(const std::set<Label>& predictions, const std::set<Label>& gold) {
    std::map<std::string, std::array<std::size_t, 3>> counts;  // tp, fp, fn
    for (const auto& p : predictions) {
        auto& c = counts[p.second];
        (gold.contains(p) ? c[0] : c[1]) += 1;
    }
    for (const auto& g : gold) {
        auto& c = counts[g.second];
        if (!predictions.contains(g)) {
            c[2] += 1;
        }
    }

    Evaluation ev;
    double p = 0.0;
    double r = 0.0;
    double f = 0.0;
    for (const auto& [type, c] : counts) {
        const auto m = PRF1::from_counts(c[0], c[1], c[2]);
        ev.macro.tp += m.tp;
        ev.macro.fp += m.fp;
        ev.macro.fn += m.fn;
        p += m.precision;
        r += m.recall;
        f += m.f1;
        ev.per_type.emplace(type, m);
    }
    if (!counts.empty()) {
        const auto k = static_cast<double>(counts.size());
        ev.macro.precision = p / k;
        ev.macro.recall = r / k;
        ev.macro.f1 = f / k;
    }
    return ev;
}

std::string Evaluation::report() const {
    std::string out = "fine_type,tp,fp,fn,precision,recall,f1\n";
    auto row = [&](const std::string& name, const PRF1& m) {
        out += fmt::format("{},{},{},{},{:.1f},{:.1f},{:.1f}\n", csv::escape(name), m.tp, m.fp, m.fn,
                           100.0 * m.precision, 100.0 * m.recall, 100.0 * m.f1);
    };
    for (const auto& [type, m] : per_type) {
        row(type, m);
    }
    row("macro", macro);
    return out;
}

std::set<Label> gold_labels(std::span<const ScoreRow> rows) {
    std::set<Label> out;
    for (const auto& r : rows) {
        if (r.gold.value_or(false)) {
            out.emplace(r.mention_id, r.fine_type);
        }
    }
    return out;
}

std::vector<RelationRow> parse_relation_table(std::string_view text) {
    const auto t = csv::parse(text);
    csv::require_header(t, {"a", "b", "relation", "sentence_id", "prob"});
    std::vector<RelationRow> out;
    out.reserve(t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const auto& f = t.rows[i];
        out.push_back({f[0], f[1], f[2], f[3], parse_prob(f[4], t.line_numbers[i])});
    }
    return out;
}

std::string write_relation_table(std::span<const RelationRow> rows) {
    std::string out = "a,b,relation,sentence_id,prob\n";
    for (const auto& r : rows) {
        out += csv::join_row({r.a, r.b, r.relation, r.sentence_id, fmt::format("{}", r.prob)});
    }
    return out;
}

std::vector<RelationTriple> extract_relations(std::span<const RelationRow> rows, double threshold) {
    std::vector<RelationTriple> out;
    std::copy_if(rows.begin(), rows.end(), std::back_inserter(out),
                 [threshold](const RelationRow& r) { return r.prob >= threshold; });
    return out;
}

Subsample subsample_corpus(std::span<const Sentence> corpus, double target_ratio, std::uint64_t seed) {
    if (!(target_ratio > 0.0 && target_ratio <= 1.0)) {
        throw ParameterError(fmt::format("target ratio must lie in (0, 1], got {}", target_ratio));
    }
    Subsample out;
    std::size_t entity_tokens = 0;
    std::size_t total_tokens = 0;
    std::vector<bool> keep(corpus.size(), false);
    std::vector<std::size_t> fillers;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        if (corpus[i].has_target_entity) {
            keep[i] = true;
            entity_tokens += corpus[i].entity_token_count;
            total_tokens += corpus[i].token_count;
        } else {
            fillers.push_back(i);
        }
    }
    // Comparisons carry a small slack so exact ratios such as 40/1000 vs 0.04
    // are not lost to rounding.
    constexpr double slack = 1e-12;
    auto ratio_of = [](std::size_t e, std::size_t t) {
        return t == 0 ? 0.0 : static_cast<double>(e) / static_cast<double>(t);
    };
    if (ratio_of(entity_tokens, total_tokens) < target_ratio - slack) {
        out.warnings.push_back(fmt::format("entity-token ratio {:.4f} of the target sentences is already below {}",
                                           ratio_of(entity_tokens, total_tokens), target_ratio));
    } else {
        Rng rng(seed);
        std::shuffle(fillers.begin(), fillers.end(), rng);
        for (std::size_t i : fillers) {
            const std::size_t e = entity_tokens + corpus[i].entity_token_count;
            const std::size_t t = total_tokens + corpus[i].token_count;
            if (ratio_of(e, t) < target_ratio - slack) {
                break;
            }
            entity_tokens = e;
            total_tokens = t;
            keep[i] = true;
            ++out.fillers_added;
        }
    }
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        if (keep[i]) {
            out.kept.push_back(corpus[i]);
        }
    }
    out.entity_ratio = ratio_of(entity_tokens, total_tokens);
    return out;
}

std::vector<Sentence> parse_corpus(std::string_view text) {
    const auto t = csv::parse(text);
    csv::require_header(t, {"sentence_id", "token_count", "entity_token_count", "has_target_entity"});
    std::vector<Sentence> out;
    out.reserve(t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const auto& f = t.rows[i];
        const auto line = t.line_numbers[i];
        Sentence s{f[0], parse_count(f[1], line), parse_count(f[2], line), *parse_flag(f[3], line, false)};
        if (s.entity_token_count > s.token_count) {
            throw ParseError("entity_token_count exceeds token_count", line);
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::string write_corpus(std::span<const Sentence> corpus) {
    std::string out = "sentence_id,token_count,entity_token_count,has_target_entity\n";
    for (const auto& s : corpus) {
        out += csv::join_row({s.sentence_id, std::to_string(s.token_count), std::to_string(s.entity_token_count),
                              s.has_target_entity ? "1" : "0"});
    }
    return out;
}

} // namespace kgrank::ie
