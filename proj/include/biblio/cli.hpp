// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 biblio contributors

#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "biblio/corpus.hpp"
#include "biblio/error.hpp"
#include "biblio/evaluation.hpp"
#include "biblio/facets.hpp"
#include "biblio/graph.hpp"
#include "biblio/index.hpp"
#include "biblio/informetrics.hpp"
#include "biblio/names.hpp"
#include "biblio/search.hpp"
#include "biblio/synthgen.hpp"
#include "biblio/text.hpp"
#include "biblio/topics.hpp"

namespace biblio::cli {

enum class Format { tsv, json };

/// Scores are printed with six decimals in both formats.
inline std::string format_score(double score)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", score);
    return buf;
}

namespace detail {

struct Common {
    std::string out;
    std::string format_name = "tsv";
    Format format = Format::tsv;
    unsigned threads = 1;
};

struct CorpusInput {
    std::string corpus;
    bool strict = false;
};

struct BoostInput {
    double title = 3.0;
    double abstract_text = 2.0;
    double fulltext = 1.0;

    [[nodiscard]] FieldBoosts boosts() const
    {
        FieldBoosts b;
        b.title = title;
        b.abstract_text = abstract_text;
        b.fulltext = fulltext;
        b.validate();
        return b;
    }
};

inline void add_common(CLI::App* app, Common& c)
{
    app->add_option("--out", c.out, "Output file (stdout when empty)");
    app->add_option("--format", c.format_name, "Output format")->check(CLI::IsMember({"tsv", "json"}));
    app->add_option("--threads", c.threads, "Worker threads (0 = hardware concurrency)");
}

inline void add_corpus(CLI::App* app, CorpusInput& c, bool required)
{
    auto* opt = app->add_option("--corpus", c.corpus, "Corpus JSONL file");
    if (required) {
        opt->required();
    }
    app->add_flag("--strict", c.strict, "Reject records with any ingestion warning");
}

inline void add_boosts(CLI::App* app, BoostInput& b)
{
    app->add_option("--boost-title", b.title, "Title field boost");
    app->add_option("--boost-abstract", b.abstract_text, "Abstract field boost");
    app->add_option("--boost-fulltext", b.fulltext, "Full-text field boost");
}

inline Corpus load_corpus(const CorpusInput& in)
{
    return ingest_file(in.corpus, in.strict).corpus;
}

/// Prebuilt index when given (it must cover exactly the corpus documents),
/// otherwise a fresh one.
inline Index obtain_index(const Corpus& corpus, const std::string& index_path, const BoostInput& boosts,
                          unsigned threads)
{
    if (index_path.empty()) {
        return build_index(corpus, boosts.boosts(), threads);
    }
    Index index = Index::load(std::filesystem::path(index_path));
    std::vector<std::string> ids;
    for (const auto& doc : corpus.documents()) {
        ids.push_back(doc.doc_id);
    }
    std::sort(ids.begin(), ids.end());
    if (ids != index.doc_ids()) {
        throw data_error("index " + index_path + " does not match the corpus documents");
    }
    return index;
}

inline void emit(const Common& c, const std::string& body, std::ostream& out)
{
    if (c.out.empty()) {
        out << body;
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) {
        throw data_error("cannot write output file: " + c.out);
    }
    f << body;
    if (!f) {
        throw data_error("write failed: " + c.out);
    }
}

inline std::string ranking_tsv(const Ranking& r)
{
    std::string s = "rank\tdoc_id\tscore\n";
    for (const auto& d : r) {
        s += std::to_string(d.rank) + '\t' + text::tsv_cell(d.doc_id) + '\t' + format_score(d.score) + '\n';
    }
    return s;
}

inline std::string ranking_json(const Ranking& r)
{
    auto arr = nlohmann::ordered_json::array();
    for (const auto& d : r) {
        arr.push_back({{"rank", d.rank}, {"doc_id", d.doc_id}, {"score", format_score(d.score)}});
    }
    return arr.dump(2) + "\n";
}

inline std::string facets_json(const std::vector<FacetCount<std::string>>& f)
{
    auto arr = nlohmann::ordered_json::array();
    for (const auto& e : f) {
        arr.push_back({{"entity", e.entity}, {"count", e.count}});
    }
    return arr.dump(2) + "\n";
}

}  // namespace detail

/// Runs one command line (without the program name) and returns the exit
/// code: 0 success, 1 usage error, 2 data error.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    using namespace detail;
    CLI::App app{"Bibliometric retrieval toolkit: ingest, index, search, facets, informetric re-ranking and "
                 "coverage evaluation",
                 "biblio"};
    app.option_defaults()->always_capture_default();
    app.set_config("--config", "", "TOML or INI file with the same keys as the flags (flags win)");
    app.require_subcommand(1);

    Common common;
    CorpusInput corpus_in;
    BoostInput boost_in;
    std::string index_path;
    std::string query;
    std::optional<std::size_t> k_opt;
    std::size_t k = 50;

    // ingest
    auto* ingest = app.add_subcommand("ingest", "Validate a corpus JSONL file and report statistics and warnings");
    add_common(ingest, common);
    add_corpus(ingest, corpus_in, true);
    std::string emit_path;
    ingest->add_option("--emit", emit_path, "Write the accepted records as canonical JSONL");

    // index
    auto* index_cmd = app.add_subcommand("index", "Build the inverted index and save it (binary, needs --out)");
    add_common(index_cmd, common);
    add_corpus(index_cmd, corpus_in, true);
    add_boosts(index_cmd, boost_in);

    // search
    auto* search_cmd = app.add_subcommand("search", "Run a query; TSV columns rank, doc_id, score");
    add_common(search_cmd, common);
    add_corpus(search_cmd, corpus_in, false);
    add_boosts(search_cmd, boost_in);
    search_cmd->add_option("--index", index_path, "Prebuilt index file");
    search_cmd->add_option("--query", query, "Query string")->required();
    search_cmd->add_option("--k", k_opt, "Keep only the top k results")->check(CLI::PositiveNumber);

    // facets
    auto* facets_cmd = app.add_subcommand("facets", "Author or journal facets of a query's result set");
    add_common(facets_cmd, common);
    add_corpus(facets_cmd, corpus_in, true);
    add_boosts(facets_cmd, boost_in);
    facets_cmd->add_option("--index", index_path, "Prebuilt index file");
    facets_cmd->add_option("--query", query, "Query string (whole corpus when empty)");
    facets_cmd->add_option("--k", k_opt, "Facet only the top k results")->check(CLI::PositiveNumber);
    std::string dimension_name = "author";
    facets_cmd->add_option("--dimension", dimension_name, "Facet dimension")
        ->check(CLI::IsMember({"author", "journal"}));
    std::size_t zones = 0;
    facets_cmd->add_option("--zones", zones, "Bradford zone table over journal counts (0 = plain facets)");

    // rank
    auto* rank_cmd = app.add_subcommand(
        "rank", "Re-rank a result list (bradford, coupling, cocitation) or list similar authors "
                "(author-coupling, author-cocitation)");
    add_common(rank_cmd, common);
    add_corpus(rank_cmd, corpus_in, true);
    add_boosts(rank_cmd, boost_in);
    rank_cmd->add_option("--index", index_path, "Prebuilt index file");
    std::string mode;
    rank_cmd->add_option("--mode", mode, "Re-ranker or similarity mode")
        ->required()
        ->check(CLI::IsMember({"bradford", "coupling", "cocitation", "author-coupling", "author-cocitation"}));
    rank_cmd->add_option("--query", query, "Query string (document modes)");
    rank_cmd->add_option("--k", k_opt, "Keep only the top k after re-ranking")->check(CLI::PositiveNumber);
    std::vector<std::string> seeds;
    rank_cmd->add_option("--seed-author", seeds, "Seed author (coupling and cocitation; repeatable)");
    std::string target;
    rank_cmd->add_option("--author", target, "Target author (author modes)");
    std::size_t limit = 20;
    rank_cmd->add_option("--limit", limit, "Maximum number of similar authors")->check(CLI::PositiveNumber);

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "Coverage of important authors per topic (table with avg. row)");
    add_common(eval_cmd, common);
    add_corpus(eval_cmd, corpus_in, true);
    add_boosts(eval_cmd, boost_in);
    eval_cmd->add_option("--index", index_path, "Prebuilt index file");
    std::string topics_path;
    std::string gold_path;
    eval_cmd->add_option("--topics", topics_path, "Topics JSONL")->required();
    eval_cmd->add_option("--gold", gold_path, "Gold set JSONL")->required();
    eval_cmd->add_option("--k", k, "Cut-off of the top-k pool")->check(CLI::PositiveNumber);
    std::string ranker_name = "tfidf";
    eval_cmd->add_option("--ranker", ranker_name, "Ranker for the top-k pool")
        ->check(CLI::IsMember({"tfidf", "bradford", "coupling", "cocitation"}));
    ImportanceRule rule;
    eval_cmd->add_option("--min-rating", rule.min_rating, "Lowest rating that makes an author important")
        ->check(CLI::Range(1, 10));

    // synth
    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic corpus with topics, gold sets and truth.json");
    std::string synth_dir;
    synth_cmd->add_option("--out", synth_dir, "Output directory")->required();
    synth_cmd->add_option("--threads", common.threads, "Accepted for symmetry; generation is sequential");
    std::string profile = "default";
    synth_cmd->add_option("--profile", profile, "Parameter profile")
        ->check(CLI::IsMember({"small", "default", "medium", "large"}));
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> n_docs, n_authors, n_journals, m, z, vocabulary, planted, synth_k;
    std::optional<double> alpha, refs, per_doc;
    synth_cmd->add_option("--seed", seed, "RNG seed (profile default 42)");
    synth_cmd->add_option("--n-docs", n_docs, "Number of documents");
    synth_cmd->add_option("--n-authors", n_authors, "Target number of authors");
    synth_cmd->add_option("--lotka-alpha", alpha, "Lotka exponent (> 1)");
    synth_cmd->add_option("--n-journals", n_journals, "Number of journals");
    synth_cmd->add_option("--bradford-m", m, "Bradford multiplier (>= 2)");
    synth_cmd->add_option("--zones", z, "Bradford zones");
    synth_cmd->add_option("--refs-per-doc", refs, "Mean references per document");
    synth_cmd->add_option("--vocabulary", vocabulary, "Background term pool size");
    synth_cmd->add_option("--planted-topics", planted, "Number of planted topics");
    synth_cmd->add_option("--authors-per-doc", per_doc, "Target mean authors per document");
    synth_cmd->add_option("--k", synth_k, "Cut-off used for the truth rows");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 1;
    }

    common.format = common.format_name == "json" ? Format::json : Format::tsv;
    const auto dimension = dimension_name == "journal" ? FacetDimension::journal : FacetDimension::author;
    const auto ranker = *parse_ranker(ranker_name);

    try {
        std::ostringstream body;
        if (ingest->parsed()) {
            auto result = ingest_file(corpus_in.corpus, corpus_in.strict);
            const auto stats = corpus_stats(result.corpus);
            const auto& rep = result.report;
            if (!emit_path.empty()) {
                std::ofstream f(emit_path, std::ios::binary);
                if (!f) {
                    throw data_error("cannot write " + emit_path);
                }
                for (const auto& doc : result.corpus.documents()) {
                    f << to_jsonl(doc) << '\n';
                }
            }
            if (common.format == Format::json) {
                nlohmann::ordered_json j;
                j["records_accepted"] = rep.records_accepted;
                j["records_rejected"] = rep.records_rejected;
                j["unknown_keys"] = rep.unknown_keys;
                j["monographs"] = stats.monographs;
                j["fulltext_articles"] = stats.fulltext_articles;
                j["abstract_only"] = stats.abstract_only;
                j["authors"] = stats.authors;
                j["internal_edges"] = stats.internal_edges;
                j["external_edges"] = stats.external_edges;
                auto w = nlohmann::ordered_json::array();
                for (const auto& x : rep.warnings) {
                    w.push_back({{"line", x.line}, {"code", to_string(x.code)}, {"detail", x.detail}});
                }
                j["warnings"] = std::move(w);
                body << j.dump(2) << '\n';
            } else {
                body << "key\tvalue\n"
                     << "records_accepted\t" << rep.records_accepted << '\n'
                     << "records_rejected\t" << rep.records_rejected << '\n'
                     << "warnings\t" << rep.warnings.size() << '\n'
                     << "unknown_keys\t" << rep.unknown_keys << '\n'
                     << "monographs\t" << stats.monographs << '\n'
                     << "fulltext_articles\t" << stats.fulltext_articles << '\n'
                     << "abstract_only\t" << stats.abstract_only << '\n'
                     << "authors\t" << stats.authors << '\n'
                     << "internal_edges\t" << stats.internal_edges << '\n'
                     << "external_edges\t" << stats.external_edges << '\n';
                if (!rep.warnings.empty()) {
                    body << "\nline\tcode\tdetail\n";
                    for (const auto& x : rep.warnings) {
                        body << x.line << '\t' << to_string(x.code) << '\t' << text::tsv_cell(x.detail) << '\n';
                    }
                }
            }
            emit(common, body.str(), out);
        } else if (index_cmd->parsed()) {
            if (common.out.empty()) {
                throw usage_error("index: --out is required (the index is binary)");
            }
            const auto corpus = load_corpus(corpus_in);
            const auto index = build_index(corpus, boost_in.boosts(), common.threads);
            index.save(std::filesystem::path(common.out));
        } else if (search_cmd->parsed()) {
            if (corpus_in.corpus.empty() && index_path.empty()) {
                throw usage_error("search: give --corpus or --index");
            }
            std::optional<Index> index;
            if (corpus_in.corpus.empty()) {
                index = Index::load(std::filesystem::path(index_path));
            } else {
                index = obtain_index(load_corpus(corpus_in), index_path, boost_in, common.threads);
            }
            const auto ranking = search(*index, query, k_opt);
            emit(common, common.format == Format::json ? ranking_json(ranking) : ranking_tsv(ranking), out);
        } else if (facets_cmd->parsed()) {
            const auto corpus = load_corpus(corpus_in);
            std::vector<std::string> ids;
            if (query.empty()) {
                for (const auto& doc : corpus.documents()) {
                    ids.push_back(doc.doc_id);
                }
                if (k_opt && ids.size() > *k_opt) {
                    throw usage_error("facets: --k needs --query");
                }
            } else {
                const auto index = obtain_index(corpus, index_path, boost_in, common.threads);
                for (const auto& d : search(index, query, k_opt)) {
                    ids.push_back(d.doc_id);
                }
            }
            if (zones > 0) {
                const auto counts = journal_facets(corpus, ids);
                if (counts.empty()) {
                    throw data_error("facets: no journal in the result set");
                }
                const auto table = bradford_zones(counts, zones);
                if (common.format == Format::json) {
                    auto arr = nlohmann::ordered_json::array();
                    for (const auto& e : table.entries) {
                        arr.push_back({{"journal", e.journal}, {"articles", e.articles}, {"zone", e.zone}});
                    }
                    body << arr.dump(2) << '\n';
                } else {
                    body << "journal\tarticles\tzone\n";
                    for (const auto& e : table.entries) {
                        body << text::tsv_cell(e.journal) << '\t' << e.articles << '\t' << e.zone << '\n';
                    }
                }
            } else {
                const auto facets = facet_counts(corpus, ids, dimension);
                if (common.format == Format::json) {
                    body << facets_json(facets);
                } else {
                    write_facets_tsv(body, facets);
                }
            }
            emit(common, body.str(), out);
        } else if (rank_cmd->parsed()) {
            const auto corpus = load_corpus(corpus_in);
            const auto graph = build_citation_graph(corpus);
            if (mode.starts_with("author-")) {
                if (target.empty()) {
                    throw usage_error("rank --mode " + mode + " needs --author");
                }
                const auto sim_mode = mode == "author-coupling" ? SimilarityMode::coupling : SimilarityMode::cocitation;
                const auto list = rank_similar_authors(graph, normalize_author_name(target), sim_mode, limit);
                if (common.format == Format::json) {
                    auto arr = nlohmann::ordered_json::array();
                    for (const auto& a : list) {
                        arr.push_back({{"author", a.author.render()}, {"strength", a.strength}});
                    }
                    body << arr.dump(2) << '\n';
                } else {
                    body << "author\tstrength\n";
                    for (const auto& a : list) {
                        body << text::tsv_cell(a.author.render()) << '\t' << a.strength << '\n';
                    }
                }
            } else {
                if (query.empty()) {
                    throw usage_error("rank --mode " + mode + " needs --query");
                }
                const auto index = obtain_index(corpus, index_path, boost_in, common.threads);
                const auto base = search(index, query);
                Ranking ranked;
                if (mode == "bradford") {
                    ranked = bradfordize_rerank(corpus, base);
                } else {
                    if (seeds.empty()) {
                        throw usage_error("rank --mode " + mode + " needs at least one --seed-author");
                    }
                    std::vector<NormalizedName> seed_names;
                    for (const auto& s : seeds) {
                        seed_names.push_back(normalize_author_name(s));
                    }
                    std::sort(seed_names.begin(), seed_names.end());
                    seed_names.erase(std::unique(seed_names.begin(), seed_names.end()), seed_names.end());
                    ranked = informetric_rerank(graph, base, seed_names,
                                                mode == "coupling" ? SimilarityMode::coupling
                                                                   : SimilarityMode::cocitation);
                }
                if (k_opt && ranked.size() > *k_opt) {
                    ranked.resize(*k_opt);
                }
                std::map<std::string, std::size_t> original;
                for (const auto& d : base) {
                    original[d.doc_id] = d.rank;
                }
                if (common.format == Format::json) {
                    auto arr = nlohmann::ordered_json::array();
                    for (const auto& d : ranked) {
                        arr.push_back({{"rank", d.rank},
                                       {"doc_id", d.doc_id},
                                       {"score", format_score(d.score)},
                                       {"original_rank", original.at(d.doc_id)}});
                    }
                    body << arr.dump(2) << '\n';
                } else {
                    body << "rank\tdoc_id\tscore\toriginal_rank\n";
                    for (const auto& d : ranked) {
                        body << d.rank << '\t' << text::tsv_cell(d.doc_id) << '\t' << format_score(d.score) << '\t'
                             << original.at(d.doc_id) << '\n';
                    }
                }
            }
            emit(common, body.str(), out);
        } else if (eval_cmd->parsed()) {
            const auto corpus = load_corpus(corpus_in);
            const auto index = obtain_index(corpus, index_path, boost_in, common.threads);
            const auto graph = build_citation_graph(corpus);
            const auto topics = load_topics(std::filesystem::path(topics_path));
            const auto gold = load_gold(std::filesystem::path(gold_path));
            auto rows = evaluate_topics(corpus, index, graph, topics, gold, k, ranker, rule, common.threads);
            const auto report = coverage_report(std::move(rows));
            if (common.format == Format::json) {
                body << report_json(report).dump(2) << '\n';
            } else {
                write_report_tsv(body, report);
            }
            emit(common, body.str(), out);
        } else if (synth_cmd->parsed()) {
            auto params = synth::SynthParams::profile(profile);
            if (seed) params.seed = *seed;
            if (n_docs) params.n_docs = *n_docs;
            if (n_authors) params.n_authors = *n_authors;
            if (alpha) params.lotka_alpha = *alpha;
            if (n_journals) params.n_journals = *n_journals;
            if (m) params.bradford_m = *m;
            if (z) params.zones = *z;
            if (refs) params.refs_per_doc = *refs;
            if (vocabulary) params.vocabulary = *vocabulary;
            if (planted) params.planted_topics = *planted;
            if (per_doc) params.authors_per_doc = *per_doc;
            if (synth_k) params.k = *synth_k;
            const auto output = synth::generate_corpus(params);
            synth::write_output(synth_dir, output);
            out << "file\tbytes\n"
                << "corpus.jsonl\t" << output.corpus_jsonl.size() << '\n'
                << "topics.jsonl\t" << output.topics_jsonl.size() << '\n'
                << "gold.jsonl\t" << output.gold_jsonl.size() << '\n'
                << "truth.json\t" << output.truth_json.size() << '\n';
        }
    } catch (const usage_error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return run(args, out, err);
}

}  // namespace biblio::cli
