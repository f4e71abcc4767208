// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 biblio contributors

#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>
#include <string>

#include "biblio/facets.hpp"
#include "biblio/graph.hpp"
#include "biblio/informetrics.hpp"
#include "oracles/bruteforce.hpp"
#include "support.hpp"

using namespace biblio;
using biblio::testing::corpus_of;
using biblio::testing::doc;

namespace {

Ranking ranking_of(std::vector<std::string> ids)
{
    Ranking r;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        r.push_back({ids[i], static_cast<double>(ids.size() - i), i + 1});
    }
    return r;
}

std::vector<std::string> ids_of(const Ranking& r)
{
    std::vector<std::string> out;
    for (const auto& d : r) {
        out.push_back(d.doc_id);
    }
    return out;
}

std::vector<FacetCount<std::string>> counts(std::initializer_list<std::pair<const char*, std::size_t>> list)
{
    std::vector<FacetCount<std::string>> out;
    for (auto [name, n] : list) {
        out.push_back({name, n});
    }
    return out;
}

}  // namespace

TEST_CASE("facets over an empty result are empty", "[facets]")
{
    auto c = corpus_of({doc("D1", {"Kim, A."})});
    CHECK(facet_counts(c, std::vector<std::string>{}, FacetDimension::author).empty());
}

TEST_CASE("author facets count documents per normalized author", "[facets]")
{
    auto c = corpus_of({doc("D1", {"Kim, A.", "B. Lee"}), doc("D2", {"A. Kim", "Kim, A."})});
    auto f = facet_counts(c, std::vector<std::string>{"D1", "D2"}, FacetDimension::author);
    REQUIRE(f.size() == 2);
    CHECK(f[0] == FacetCount<std::string>{"kim, a.", 2});
    CHECK(f[1] == FacetCount<std::string>{"lee, b.", 1});
}

TEST_CASE("facet ties are ordered by name", "[facets]")
{
    auto c = corpus_of({doc("D1", {"Zed, A."}, "Z Journal"), doc("D2", {"Abe, B."}, "A Journal"), doc("D3")});
    auto authors = facet_counts(c, std::vector<std::string>{"D1", "D2", "D3"}, FacetDimension::author);
    REQUIRE(authors.size() == 2);
    CHECK(authors[0].entity == "abe, b.");
    auto journals = facet_counts(c, std::vector<std::string>{"D1", "D2", "D3"}, FacetDimension::journal);
    REQUIRE(journals.size() == 2);
    CHECK(journals[0].entity == "A Journal");
}

TEST_CASE("facets name an unknown doc_id", "[facets]")
{
    auto c = corpus_of({doc("D1")});
    CHECK_THROWS_WITH(facet_counts(c, std::vector<std::string>{"D1", "D7"}, FacetDimension::journal),
                      Catch::Matchers::ContainsSubstring("D7"));
}

TEST_CASE("facet sums and disjoint unions add up", "[facets][property]")
{
    auto docs = biblio::testing::random_docs(17, 90);
    auto c = corpus_of(docs);
    std::vector<std::string> left;
    std::vector<std::string> right;
    std::size_t distinct_authors = 0;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        (i % 3 == 0 ? left : right).push_back(docs[i].doc_id);
        std::set<NormalizedName> names;
        for (const auto& a : docs[i].authors) {
            names.insert(normalize_author_name(a));
        }
        distinct_authors += names.size();
    }
    std::vector<std::string> all = left;
    all.insert(all.end(), right.begin(), right.end());
    for (auto dim : {FacetDimension::author, FacetDimension::journal}) {
        std::map<std::string, std::size_t> summed;
        for (const auto* part : {&left, &right}) {
            for (const auto& f : facet_counts(c, *part, dim)) {
                summed[f.entity] += f.count;
            }
        }
        std::map<std::string, std::size_t> whole;
        std::size_t total = 0;
        for (const auto& f : facet_counts(c, all, dim)) {
            whole[f.entity] = f.count;
            total += f.count;
            CHECK(f.count >= 1);
        }
        CHECK(whole == summed);
        if (dim == FacetDimension::author) {
            CHECK(total == distinct_authors);
        }
    }
}

TEST_CASE("coupling and co-citation on a hand-built graph", "[informetrics]")
{
    // D1 and D2 share X and D3; D4 cites works of both Kim and Lee.
    auto c = corpus_of({doc("D1", {"Kim, A."}, {}, {"X", "D3", "Y"}), doc("D2", {"Lee, B."}, {}, {"X", "D3"}),
                        doc("D3", {"Ode, C."}), doc("D4", {"Ode, C."}, {}, {"D1", "D2"}),
                        doc("D5", {}, {}, {"D1", "D2", "D3"})});
    auto g = build_citation_graph(c);
    const NormalizedName kim{"kim", "a"};
    const NormalizedName lee{"lee", "b"};
    const NormalizedName ode{"ode", "c"};
    CHECK(coupling_docs(g, "D1", "D2") == 2);
    CHECK(coupling_docs(g, "D1", "D4") == 0);
    CHECK(coupling_authors(g, kim, lee) == 2);
    CHECK(cocitation_authors(g, kim, lee) == 2);
    CHECK(cocitation_authors(g, kim, ode) == 1);
    CHECK_THROWS_AS(coupling_docs(g, "D1", "D1"), invalid_argument_error);
    CHECK_THROWS_AS(coupling_docs(g, "D1", "D9"), unknown_id_error);
    CHECK_THROWS_AS(coupling_authors(g, kim, kim), invalid_argument_error);
    CHECK_THROWS_AS(cocitation_authors(g, kim, NormalizedName{"nobody", ""}), unknown_id_error);

    auto similar = rank_similar_authors(g, kim, SimilarityMode::coupling, 10);
    REQUIRE(similar.size() == 1);
    CHECK(similar[0] == AuthorSimilarity{lee, 2, SimilarityMode::coupling});
    auto cocited = rank_similar_authors(g, kim, SimilarityMode::cocitation, 10);
    REQUIRE(cocited.size() == 2);
    CHECK(cocited[0].author == lee);
    CHECK(cocited[0].strength == 2);
    CHECK(cocited[1].author == ode);
    CHECK(rank_similar_authors(g, kim, SimilarityMode::cocitation, 1).size() == 1);
}

TEST_CASE("similarities are symmetric, bounded and match brute force", "[informetrics][oracle][property]")
{
    const auto jsonl = biblio::testing::jsonl_of(biblio::testing::random_docs(41, 120));
    oracle::Brute brute(oracle::parse_raw(jsonl));
    auto c = ingest_records(std::string_view(jsonl), false).corpus;
    auto g = build_citation_graph(c);
    std::vector<NormalizedName> authors;
    for (const auto& [name, _] : g.author_docs()) {
        authors.push_back(name);
    }
    std::size_t citing_docs = 0;
    for (const auto& id : g.doc_ids()) {
        citing_docs += g.references(id).empty() ? 0 : 1;
    }
    for (std::size_t i = 0; i < authors.size(); ++i) {
        for (std::size_t j = i + 1; j < authors.size(); ++j) {
            const auto& a = authors[i];
            const auto& b = authors[j];
            const auto cp = coupling_authors(g, a, b);
            const auto cc = cocitation_authors(g, a, b);
            CHECK(cp == coupling_authors(g, b, a));
            CHECK(cc == cocitation_authors(g, b, a));
            CHECK(cp <= std::min(author_references(g, a).size(), author_references(g, b).size()));
            CHECK(cc <= citing_docs);
            CHECK(cp == brute.coupling_authors(a.render(), b.render()));
            CHECK(cc == brute.cocitation_authors(a.render(), b.render()));
        }
        for (const auto mode : {SimilarityMode::coupling, SimilarityMode::cocitation}) {
            for (const auto& s : rank_similar_authors(g, authors[i], mode, authors.size())) {
                CHECK(s.strength >= 1);
                CHECK(s.strength == (mode == SimilarityMode::coupling ? coupling_authors(g, authors[i], s.author)
                                                                       : cocitation_authors(g, authors[i], s.author)));
            }
        }
    }
    const auto& ids = g.doc_ids();
    for (std::size_t i = 0; i < ids.size(); ++i) {
        for (std::size_t j = i + 1; j < ids.size(); ++j) {
            const auto n = coupling_docs(g, ids[i], ids[j]);
            CHECK(n == coupling_docs(g, ids[j], ids[i]));
            CHECK(n <= std::min(g.references(ids[i]).size(), g.references(ids[j]).size()));
            CHECK(n == brute.coupling_docs(ids[i], ids[j]));
        }
    }
}

TEST_CASE("bradford zones on small fixtures", "[bradford]")
{
    auto z = bradford_zones(counts({{"A", 2}, {"B", 2}, {"C", 2}}), 3);
    CHECK(z.journals_per_zone() == std::vector<std::size_t>{1, 1, 1});
    auto one = bradford_zones(counts({{"A", 5}, {"B", 1}}), 1);
    CHECK(one.journals_per_zone() == std::vector<std::size_t>{2});
    auto classic = bradford_zones(counts({{"Core", 9}, {"M1", 3}, {"M2", 3}, {"M3", 3}, {"T1", 1}, {"T2", 1},
                                          {"T3", 1}, {"T4", 1}, {"T5", 1}, {"T6", 1}, {"T7", 1}, {"T8", 1},
                                          {"T9", 1}}),
                                  3);
    CHECK(classic.journals_per_zone() == std::vector<std::size_t>{1, 3, 9});
    CHECK(classic.articles_per_zone() == std::vector<std::size_t>{9, 9, 9});
    CHECK_THROWS_AS(bradford_zones(counts({{"A", 1}}), 0), invalid_argument_error);
    CHECK_THROWS_AS(bradford_zones(counts({}), 2), invalid_argument_error);
}

TEST_CASE("a dominant journal can close several zones at once", "[bradford]")
{
    auto z = bradford_zones(counts({{"A", 6}, {"B", 6}, {"C", 5}, {"D", 2}}), 3);
    CHECK(z.articles_per_zone() == std::vector<std::size_t>{12, 5, 2});
    auto big = bradford_zones(counts({{"A", 10}, {"B", 1}}), 3);
    CHECK(big.journals_per_zone() == std::vector<std::size_t>{1, 0, 1});
}

TEST_CASE("bradford zones partition the sorted journal list", "[bradford][property]")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<FacetCount<std::string>> input;
        const std::size_t n = 1 + rng() % 30;
        std::size_t largest = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t count = 1 + rng() % 40;
            largest = std::max(largest, count);
            input.push_back({"J" + std::to_string(i), count});
        }
        const std::size_t zones = 1 + rng() % 5;
        const auto z = bradford_zones(input, zones);
        REQUIRE(z.entries.size() == n);
        for (std::size_t i = 1; i < n; ++i) {
            const auto& prev = z.entries[i - 1];
            const auto& cur = z.entries[i];
            CHECK((prev.articles > cur.articles || (prev.articles == cur.articles && prev.journal < cur.journal)));
            CHECK(prev.zone <= cur.zone);
        }
        // Greedy closing bounds the imbalance by twice the largest journal.
        const auto totals = z.articles_per_zone();
        const auto [lo, hi] = std::minmax_element(totals.begin(), totals.end());
        if (n >= zones) {
            CHECK(*hi - *lo < 2 * largest);
        }
    }
}

TEST_CASE("bradfordizing puts core journals of the result first", "[rerank]")
{
    auto c = corpus_of({doc("D1", {}, "J2"), doc("D2", {}, "J1"), doc("D3", {}), doc("D4", {}, "J1")});
    auto out = bradfordize_rerank(c, ranking_of({"D3", "D1", "D2", "D4"}));
    CHECK(ids_of(out) == std::vector<std::string>{"D2", "D4", "D1", "D3"});
    CHECK(out[0].score == 2.0);
    CHECK(out[3].score == 0.0);
    CHECK(bradfordize_rerank(c, {}).empty());

    auto same = corpus_of({doc("A", {}, "J"), doc("B", {}, "J"), doc("C", {}, "J")});
    auto in = ranking_of({"C", "A", "B"});
    CHECK(ids_of(bradfordize_rerank(same, in)) == ids_of(in));
    CHECK_THROWS_AS(bradfordize_rerank(same, ranking_of({"Z"})), unknown_id_error);
}

TEST_CASE("informetric rerank lifts documents sharing references with seeds", "[rerank]")
{
    auto c = corpus_of({doc("S1", {"Seed, S."}, {}, {"X1", "X2", "X3"}), doc("A", {"Other, O."}, {}, {"Z"}),
                        doc("B", {"Other, O."}, {}, {"X1", "X2"}), doc("C", {"Third, T."}, {}, {"X3"}),
                        doc("E", {"Third, T."}, {}, {"B", "S1"})});
    auto g = build_citation_graph(c);
    const std::vector<NormalizedName> seeds{{"seed", "s"}};
    auto in = ranking_of({"A", "C", "B"});
    auto out = informetric_rerank(g, in, seeds, SimilarityMode::coupling);
    CHECK(ids_of(out) == std::vector<std::string>{"B", "C", "A"});
    CHECK(out[0].score == 2.0);

    auto cocited = informetric_rerank(g, in, seeds, SimilarityMode::cocitation);
    CHECK(ids_of(cocited) == std::vector<std::string>{"B", "A", "C"});

    const std::vector<NormalizedName> lonely{{"other", "o"}};
    auto none = informetric_rerank(g, ranking_of({"C"}), lonely, SimilarityMode::coupling);
    CHECK(ids_of(none) == std::vector<std::string>{"C"});
    CHECK_THROWS_AS(informetric_rerank(g, in, {}, SimilarityMode::coupling), invalid_argument_error);
    const std::vector<NormalizedName> ghost{{"ghost", ""}};
    CHECK_THROWS_AS(informetric_rerank(g, in, ghost, SimilarityMode::coupling), unknown_id_error);
}

TEST_CASE("rerankers permute their input and match brute-force signals", "[rerank][oracle][property]")
{
    const auto jsonl = biblio::testing::jsonl_of(biblio::testing::random_docs(77, 100));
    oracle::Brute brute(oracle::parse_raw(jsonl));
    auto c = ingest_records(std::string_view(jsonl), false).corpus;
    auto g = build_citation_graph(c);
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<std::string> pick;
        for (const auto& d : c.documents()) {
            if (rng() % 3 == 0) {
                pick.push_back(d.doc_id);
            }
        }
        const auto in = ranking_of(pick);
        auto sorted_in = pick;
        std::sort(sorted_in.begin(), sorted_in.end());

        auto seed_name = std::next(g.author_docs().begin(), static_cast<long>(rng() % g.author_docs().size()))->first;
        const std::vector<NormalizedName> seeds{seed_name};
        for (auto mode : {SimilarityMode::coupling, SimilarityMode::cocitation}) {
            auto out = informetric_rerank(g, in, seeds, mode);
            auto got = ids_of(out);
            std::sort(got.begin(), got.end());
            CHECK(got == sorted_in);
            for (const auto& d : out) {
                const auto expected = mode == SimilarityMode::coupling
                                          ? brute.coupling_signal(d.doc_id, {seed_name.render()})
                                          : brute.cocitation_signal(d.doc_id, {seed_name.render()});
                CHECK(d.score == static_cast<double>(expected));
            }
        }
        auto b = ids_of(bradfordize_rerank(c, in));
        std::sort(b.begin(), b.end());
        CHECK(b == sorted_in);
    }
}
