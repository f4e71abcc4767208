// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 biblio contributors

#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "biblio/corpus.hpp"
#include "biblio/error.hpp"
#include "biblio/graph.hpp"
#include "biblio/index.hpp"
#include "biblio/informetrics.hpp"
#include "biblio/names.hpp"
#include "biblio/search.hpp"
#include "biblio/text.hpp"
#include "biblio/topics.hpp"

namespace biblio {

/// An author named by the researcher behind a topic, with their 1..10
/// relevance rating and whether they were named spontaneously.
struct GoldAuthor {
    std::string raw;
    NormalizedName name;
    std::optional<int> rating;
    bool named_explicitly = false;

    bool operator==(const GoldAuthor&) const = default;
};

/// Who counts as an important author. Default: rating >= 5, or named
/// explicitly.
struct ImportanceRule {
    int min_rating = 5;
    bool explicit_counts = true;

    [[nodiscard]] bool important(const GoldAuthor& g) const
    {
        return (g.rating && *g.rating >= min_rating) || (explicit_counts && g.named_explicitly);
    }
};

struct GoldSet {
    std::string topic_id;
    std::vector<GoldAuthor> authors;

    bool operator==(const GoldSet&) const = default;
};

/// Gold file: JSONL with topic_id, author (raw string), rating (1..10,
/// optional) and explicit (bool, default false). Returns one GoldSet per
/// topic in order of first appearance.
inline std::vector<GoldSet> load_gold(std::istream& in, const std::string& source = "gold")
{
    std::vector<GoldSet> sets;
    std::map<std::string, std::size_t> slot;
    std::string line;
    std::size_t line_no = 0;
    auto fail = [&](const std::string& why) {
        throw data_error(source + ":" + std::to_string(line_no) + ": " + why);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (text::trim(line).empty()) {
            continue;
        }
        auto j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            fail("not a JSON object");
        }
        auto topic = j.find("topic_id");
        auto author = j.find("author");
        if (topic == j.end() || !topic->is_string()) {
            fail("missing topic_id");
        }
        if (author == j.end() || !author->is_string()) {
            fail("missing author");
        }
        GoldAuthor g;
        g.raw = author->get<std::string>();
        try {
            g.name = normalize_author_name(g.raw);
        } catch (const invalid_name_error& e) {
            fail(e.what());
        }
        if (auto r = j.find("rating"); r != j.end() && !r->is_null()) {
            if (!r->is_number_integer()) {
                fail("rating is not an integer");
            }
            int v = r->get<int>();
            if (v < 1 || v > 10) {
                fail("rating " + std::to_string(v) + " outside 1..10");
            }
            g.rating = v;
        }
        if (auto e = j.find("explicit"); e != j.end() && !e->is_null()) {
            if (!e->is_boolean()) {
                fail("explicit is not a boolean");
            }
            g.named_explicitly = e->get<bool>();
        }

        const auto& id = topic->get_ref<const std::string&>();
        auto [it, fresh] = slot.try_emplace(id, sets.size());
        if (fresh) {
            sets.push_back({id, {}});
        }
        auto& set = sets[it->second];
        for (const auto& prev : set.authors) {
            if (prev.name == g.name) {
                fail("duplicate gold author " + g.name.render() + " in topic " + id);
            }
        }
        set.authors.push_back(std::move(g));
    }
    return sets;
}

inline std::vector<GoldSet> load_gold(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw data_error("cannot open gold file: " + path.string());
    }
    return load_gold(in, path.string());
}

inline std::string to_jsonl(const std::string& topic_id, const GoldAuthor& g)
{
    nlohmann::ordered_json j;
    j["topic_id"] = topic_id;
    j["author"] = g.raw;
    if (g.rating) {
        j["rating"] = *g.rating;
    }
    j["explicit"] = g.named_explicitly;
    return j.dump();
}

/// Initials are compatible when either side is empty or one is a prefix of
/// the other ("h" ~ "hd", "hd" ~ "h", "" ~ anything).
inline bool initials_compatible(std::string_view a, std::string_view b)
{
    if (a.empty() || b.empty()) {
        return true;
    }
    return a.size() <= b.size() ? b.starts_with(a) : a.starts_with(b);
}

/// Corpus author keys that may denote `gold`: same surname, compatible
/// initials. Sorted.
inline std::vector<NormalizedName> match_author(const NormalizedName& gold, const CitationGraph& graph)
{
    std::vector<NormalizedName> out;
    const auto& authors = graph.author_docs();
    for (auto it = authors.lower_bound(NormalizedName{gold.surname, {}});
         it != authors.end() && it->first.surname == gold.surname; ++it) {
        if (initials_compatible(gold.initials, it->first.initials)) {
            out.push_back(it->first);
        }
    }
    return out;
}

inline std::vector<NormalizedName> match_author(const GoldAuthor& gold, const CitationGraph& graph)
{
    return match_author(gold.name, graph);
}

enum class Ranker { tfidf, bradford, coupling, cocitation };

inline std::string_view to_string(Ranker r)
{
    switch (r) {
    case Ranker::tfidf: return "tfidf";
    case Ranker::bradford: return "bradford";
    case Ranker::coupling: return "coupling";
    case Ranker::cocitation: return "cocitation";
    }
    return "tfidf";
}

inline std::optional<Ranker> parse_ranker(std::string_view s)
{
    if (s == "tfidf") return Ranker::tfidf;
    if (s == "bradford") return Ranker::bradford;
    if (s == "coupling") return Ranker::coupling;
    if (s == "cocitation") return Ranker::cocitation;
    return std::nullopt;
}

/// Per-gold-author trace behind a CoverageRow.
struct GoldAudit {
    std::string raw;
    NormalizedName name;
    bool important = false;
    std::size_t candidates = 0;  // corpus keys matched; > 1 means ambiguous
    bool in_corpus = false;
    bool in_subset = false;
    bool in_topk = false;

    bool operator==(const GoldAudit&) const = default;
};

/// One row of the coverage table: important authors (IA) and their
/// documents (IAD) across three nested pools: the whole corpus, the topic
/// subset, and the top k of the subset.
struct CoverageRow {
    std::string topic_id;
    std::size_t ia_named = 0;
    std::size_t ia_in_corpus = 0;
    std::size_t ia_in_subset = 0;
    std::size_t ia_in_topk = 0;
    std::size_t subset_size = 0;
    std::size_t iad_in_corpus = 0;
    std::size_t iad_in_subset = 0;
    std::size_t iad_in_topk = 0;
    std::size_t k = 50;
    std::vector<GoldAudit> audit;

    static constexpr std::size_t column_count = 8;

    /// Numeric columns in table order.
    [[nodiscard]] std::array<std::size_t, column_count> columns() const
    {
        return {ia_named, ia_in_corpus, ia_in_subset, ia_in_topk,
                subset_size, iad_in_corpus, iad_in_subset, iad_in_topk};
    }

    /// Equality of topic, k and the eight counts, ignoring the audit trail.
    [[nodiscard]] bool same_counts(const CoverageRow& o) const
    {
        return topic_id == o.topic_id && k == o.k && columns() == o.columns();
    }

    [[nodiscard]] bool satisfies_nesting() const
    {
        return ia_in_topk <= ia_in_subset && ia_in_subset <= ia_in_corpus && ia_in_corpus <= ia_named &&
               iad_in_topk <= iad_in_subset && iad_in_subset <= iad_in_corpus && iad_in_topk <= k &&
               iad_in_subset <= subset_size;
    }
};

inline CoverageRow make_row(std::string topic_id, std::array<std::size_t, CoverageRow::column_count> c, std::size_t k)
{
    CoverageRow r;
    r.topic_id = std::move(topic_id);
    r.ia_named = c[0];
    r.ia_in_corpus = c[1];
    r.ia_in_subset = c[2];
    r.ia_in_topk = c[3];
    r.subset_size = c[4];
    r.iad_in_corpus = c[5];
    r.iad_in_subset = c[6];
    r.iad_in_topk = c[7];
    r.k = k;
    return r;
}

/// Ranks a topic subset with `ranker` and keeps the top k. `subset_ranking`
/// must be the uncapped TF-IDF ranking of the subset.
inline Ranking rank_top_k(const Corpus& corpus, const CitationGraph& graph, const TopicSpec& topic,
                          const Ranking& subset_ranking, Ranker ranker, std::size_t k)
{
    Ranking ranked;
    switch (ranker) {
    case Ranker::tfidf:
        ranked = subset_ranking;
        break;
    case Ranker::bradford:
        ranked = bradfordize_rerank(corpus, subset_ranking);
        break;
    case Ranker::coupling:
    case Ranker::cocitation: {
        if (topic.seeds.empty()) {
            throw data_error("topic " + topic.topic_id + " has no seeds; ranker " + std::string(to_string(ranker)) +
                             " needs them");
        }
        std::vector<NormalizedName> seeds;
        for (const auto& raw : topic.seeds) {
            seeds.push_back(normalize_author_name(raw));
        }
        std::sort(seeds.begin(), seeds.end());
        seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
        auto mode = ranker == Ranker::coupling ? SimilarityMode::coupling : SimilarityMode::cocitation;
        ranked = informetric_rerank(graph, subset_ranking, seeds, mode);
        break;
    }
    }
    if (ranked.size() > k) {
        ranked.resize(k);
    }
    return ranked;
}

inline CoverageRow coverage_row(const Corpus& corpus, const Index& index, const CitationGraph& graph,
                                const TopicSpec& topic, const GoldSet& gold, std::size_t k, Ranker ranker,
                                const ImportanceRule& rule = {})
{
    if (k < 1) {
        throw invalid_argument_error("k must be >= 1");
    }
    if (topic.topic_id != gold.topic_id) {
        throw data_error("topic/gold mismatch: " + topic.topic_id + " vs " + gold.topic_id);
    }
    const auto full = search(index, parse_query(topic.query));
    std::vector<std::string> subset;
    subset.reserve(full.size());
    for (const auto& d : full) {
        subset.push_back(d.doc_id);
    }
    std::sort(subset.begin(), subset.end());
    std::vector<std::string> topk;
    for (const auto& d : rank_top_k(corpus, graph, topic, full, ranker, k)) {
        topk.push_back(d.doc_id);
    }
    std::sort(topk.begin(), topk.end());

    CoverageRow row;
    row.topic_id = topic.topic_id;
    row.k = k;
    row.subset_size = subset.size();

    auto hits = [](const std::vector<std::string>& pool, const std::string& id) {
        return std::binary_search(pool.begin(), pool.end(), id);
    };
    std::set<std::string> iad;
    for (const auto& g : gold.authors) {
        GoldAudit a{g.raw, g.name, rule.important(g)};
        auto keys = match_author(g, graph);
        a.candidates = keys.size();
        for (const auto& key : keys) {
            for (const auto& doc : graph.docs_of(key)) {
                a.in_corpus = true;
                a.in_subset = a.in_subset || hits(subset, doc);
                a.in_topk = a.in_topk || hits(topk, doc);
                if (a.important) {
                    iad.insert(doc);
                }
            }
        }
        if (a.important) {
            ++row.ia_named;
            row.ia_in_corpus += a.in_corpus ? 1 : 0;
            row.ia_in_subset += a.in_subset ? 1 : 0;
            row.ia_in_topk += a.in_topk ? 1 : 0;
        }
        row.audit.push_back(std::move(a));
    }
    for (const auto& doc : iad) {
        ++row.iad_in_corpus;
        row.iad_in_subset += hits(subset, doc) ? 1 : 0;
        row.iad_in_topk += hits(topk, doc) ? 1 : 0;
    }
    return row;
}

/// A percentage held in exact tenths, e.g. 693 for "69.3%".
struct Percent {
    std::uint64_t tenths = 0;

    [[nodiscard]] double value() const { return static_cast<double>(tenths) / 10.0; }
    [[nodiscard]] std::string str() const { return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10) + "%"; }
    bool operator==(const Percent&) const = default;
};

/// round_half_up(10 * numerator / denominator), exact in integers.
inline std::uint64_t tenths_half_up(std::uint64_t numerator, std::uint64_t denominator)
{
    return (20 * numerator + denominator) / (2 * denominator);
}

inline std::string format_tenths(std::uint64_t tenths)
{
    return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10);
}

/// 100 * matched / named, half-up to one decimal.
inline Percent coverage_percent(std::uint64_t matched, std::uint64_t named)
{
    if (named == 0) {
        throw invalid_argument_error("coverage_percent: nothing named");
    }
    if (matched > named) {
        throw invalid_argument_error("coverage_percent: matched exceeds named");
    }
    return {tenths_half_up(100 * matched, named)};
}

struct UniqueAuthorSummary {
    std::size_t named = 0;      // distinct important authors over all topics
    std::size_t in_corpus = 0;  // of those, found in the corpus
    std::optional<Percent> percent;
};

struct CoverageReport {
    std::vector<CoverageRow> rows;
    std::size_t k = 50;
    std::array<std::uint64_t, CoverageRow::column_count> sums{};
    UniqueAuthorSummary unique;

    [[nodiscard]] double mean(std::size_t column) const
    {
        return static_cast<double>(sums[column]) / static_cast<double>(rows.size());
    }

    /// Column mean rounded half-up to one decimal, in tenths.
    [[nodiscard]] std::uint64_t mean_tenths(std::size_t column) const { return tenths_half_up(sums[column], rows.size()); }

    [[nodiscard]] std::array<std::string, CoverageRow::column_count> rendered_averages() const
    {
        std::array<std::string, CoverageRow::column_count> out;
        for (std::size_t c = 0; c < out.size(); ++c) {
            out[c] = format_tenths(mean_tenths(c));
        }
        return out;
    }
};

/// Averages the rows and summarizes unique important authors (deduplicated
/// by normalized name across topics, using the rows' audit trails).
inline CoverageReport coverage_report(std::vector<CoverageRow> rows)
{
    if (rows.empty()) {
        throw invalid_argument_error("coverage_report: no rows");
    }
    CoverageReport rep;
    rep.k = rows.front().k;
    std::set<NormalizedName> named;
    std::set<NormalizedName> found;
    for (const auto& r : rows) {
        if (r.k != rep.k) {
            throw invalid_argument_error("coverage_report: rows mix k=" + std::to_string(rep.k) + " and k=" +
                                         std::to_string(r.k));
        }
        auto cols = r.columns();
        for (std::size_t c = 0; c < cols.size(); ++c) {
            rep.sums[c] += cols[c];
        }
        for (const auto& a : r.audit) {
            if (a.important) {
                named.insert(a.name);
                if (a.in_corpus) {
                    found.insert(a.name);
                }
            }
        }
    }
    rep.unique.named = named.size();
    rep.unique.in_corpus = found.size();
    if (!named.empty()) {
        rep.unique.percent = coverage_percent(found.size(), named.size());
    }
    rep.rows = std::move(rows);
    return rep;
}

inline void write_report_tsv(std::ostream& out, const CoverageReport& rep)
{
    const auto k = std::to_string(rep.k);
    out << "topic\tIA named\tIA in corpus\tIA in subset\tIA in top " << k
        << "\tsubset size\tIAD in corpus\tIAD in subset\tIAD in top " << k << '\n';
    for (const auto& r : rep.rows) {
        out << text::tsv_cell(r.topic_id);
        for (auto v : r.columns()) {
            out << '\t' << v;
        }
        out << '\n';
    }
    out << "avg.";
    for (const auto& v : rep.rendered_averages()) {
        out << '\t' << v;
    }
    out << '\n';
}

inline nlohmann::ordered_json row_json(const CoverageRow& r)
{
    nlohmann::ordered_json j;
    j["topic"] = r.topic_id;
    j["ia_named"] = r.ia_named;
    j["ia_in_corpus"] = r.ia_in_corpus;
    j["ia_in_subset"] = r.ia_in_subset;
    j["ia_in_topk"] = r.ia_in_topk;
    j["subset_size"] = r.subset_size;
    j["iad_in_corpus"] = r.iad_in_corpus;
    j["iad_in_subset"] = r.iad_in_subset;
    j["iad_in_topk"] = r.iad_in_topk;
    j["k"] = r.k;
    auto audit = nlohmann::ordered_json::array();
    for (const auto& a : r.audit) {
        audit.push_back({{"author", a.raw},
                         {"normalized", a.name.render()},
                         {"important", a.important},
                         {"match_candidates", a.candidates},
                         {"in_corpus", a.in_corpus},
                         {"in_subset", a.in_subset},
                         {"in_topk", a.in_topk}});
    }
    j["gold_audit"] = std::move(audit);
    return j;
}

inline nlohmann::ordered_json report_json(const CoverageReport& rep)
{
    static constexpr std::array<const char*, CoverageRow::column_count> names = {
        "ia_named", "ia_in_corpus", "ia_in_subset", "ia_in_topk",
        "subset_size", "iad_in_corpus", "iad_in_subset", "iad_in_topk",
    };
    nlohmann::ordered_json j;
    j["k"] = rep.k;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& r : rep.rows) {
        rows.push_back(row_json(r));
    }
    j["rows"] = std::move(rows);
    nlohmann::ordered_json avg;
    auto rendered = rep.rendered_averages();
    for (std::size_t c = 0; c < names.size(); ++c) {
        avg[names[c]] = rendered[c];
    }
    j["averages"] = std::move(avg);
    nlohmann::ordered_json unique;
    unique["named"] = rep.unique.named;
    unique["in_corpus"] = rep.unique.in_corpus;
    unique["percent"] = rep.unique.percent ? nlohmann::ordered_json(rep.unique.percent->str()) : nlohmann::ordered_json();
    j["unique_important_authors"] = std::move(unique);
    return j;
}

/// Computes one row per topic (in topic order) on up to `threads` workers.
/// Every topic needs a gold set and every gold set a topic.
inline std::vector<CoverageRow> evaluate_topics(const Corpus& corpus, const Index& index, const CitationGraph& graph,
                                                const std::vector<TopicSpec>& topics,
                                                const std::vector<GoldSet>& gold, std::size_t k, Ranker ranker,
                                                const ImportanceRule& rule = {}, unsigned threads = 1)
{
    std::map<std::string, const GoldSet*> by_topic;
    for (const auto& g : gold) {
        by_topic[g.topic_id] = &g;
    }
    for (const auto& g : gold) {
        if (std::none_of(topics.begin(), topics.end(), [&](const TopicSpec& t) { return t.topic_id == g.topic_id; })) {
            throw data_error("gold set for unknown topic " + g.topic_id);
        }
    }
    std::vector<const GoldSet*> pairs;
    for (const auto& t : topics) {
        auto it = by_topic.find(t.topic_id);
        if (it == by_topic.end()) {
            throw data_error("no gold set for topic " + t.topic_id);
        }
        pairs.push_back(it->second);
    }

    std::vector<CoverageRow> rows(topics.size());
    std::vector<std::exception_ptr> errors(topics.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < topics.size(); i = next++) {
            try {
                rows[i] = coverage_row(corpus, index, graph, topics[i], *pairs[i], k, ranker, rule);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (threads == 0) {
        threads = std::max(1U, std::thread::hardware_concurrency());
    }
    const std::size_t workers = std::min<std::size_t>(threads, std::max<std::size_t>(1, topics.size()));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return rows;
}

}  // namespace biblio
