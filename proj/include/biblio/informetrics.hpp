// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 biblio contributors

#pragma once

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "biblio/corpus.hpp"
#include "biblio/error.hpp"
#include "biblio/facets.hpp"
#include "biblio/graph.hpp"
#include "biblio/names.hpp"
#include "biblio/search.hpp"

namespace biblio {

enum class SimilarityMode { coupling, cocitation };

inline std::string_view to_string(SimilarityMode m)
{
    return m == SimilarityMode::coupling ? "coupling" : "cocitation";
}

struct AuthorSimilarity {
    NormalizedName author;
    std::size_t strength = 0;
    SimilarityMode mode = SimilarityMode::coupling;

    bool operator==(const AuthorSimilarity&) const = default;
};

namespace detail {

inline std::size_t intersection_size(std::span<const std::string> a, std::span<const std::string> b)
{
    std::size_t n = 0;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) {
            ++i;
        } else if (*j < *i) {
            ++j;
        } else {
            ++n;
            ++i;
            ++j;
        }
    }
    return n;
}

inline std::vector<std::string> sorted_union(std::vector<std::string> items)
{
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    return items;
}

inline void require_author(const CitationGraph& g, const NormalizedName& a)
{
    if (!g.has_author(a)) {
        throw unknown_id_error("unknown author: " + a.render());
    }
}

}  // namespace detail

/// R(a): every citation key referenced by any document of `author`, sorted.
inline std::vector<std::string> author_references(const CitationGraph& g, const NormalizedName& author)
{
    std::vector<std::string> keys;
    for (const auto& doc : g.docs_of(author)) {
        auto refs = g.references(doc);
        keys.insert(keys.end(), refs.begin(), refs.end());
    }
    return detail::sorted_union(std::move(keys));
}

/// Documents citing at least one work of `author`, sorted.
inline std::vector<std::string> author_citers(const CitationGraph& g, const NormalizedName& author)
{
    std::vector<std::string> citers;
    for (const auto& doc : g.docs_of(author)) {
        auto c = g.citing(doc);
        citers.insert(citers.end(), c.begin(), c.end());
    }
    return detail::sorted_union(std::move(citers));
}

/// Number of citation keys (internal or external) both documents reference.
inline std::size_t coupling_docs(const CitationGraph& g, std::string_view d1, std::string_view d2)
{
    if (d1 == d2) {
        throw invalid_argument_error("coupling of a document with itself is undefined: " + std::string(d1));
    }
    return detail::intersection_size(g.references(d1), g.references(d2));
}

/// |R(a1) ∩ R(a2)|
inline std::size_t coupling_authors(const CitationGraph& g, const NormalizedName& a1, const NormalizedName& a2)
{
    detail::require_author(g, a1);
    detail::require_author(g, a2);
    if (a1 == a2) {
        throw invalid_argument_error("coupling of an author with itself is undefined: " + a1.render());
    }
    return detail::intersection_size(author_references(g, a1), author_references(g, a2));
}

/// Number of corpus documents citing at least one work of each author.
/// External keys never count: a citing document has to be in the corpus.
inline std::size_t cocitation_authors(const CitationGraph& g, const NormalizedName& a1, const NormalizedName& a2)
{
    detail::require_author(g, a1);
    detail::require_author(g, a2);
    if (a1 == a2) {
        throw invalid_argument_error("co-citation of an author with itself is undefined: " + a1.render());
    }
    return detail::intersection_size(author_citers(g, a1), author_citers(g, a2));
}

/// Every other author with non-zero strength against `target`, ordered by
/// (strength desc, rendered name asc) and cut to `limit`.
inline std::vector<AuthorSimilarity> rank_similar_authors(const CitationGraph& g, const NormalizedName& target,
                                                          SimilarityMode mode, std::size_t limit)
{
    detail::require_author(g, target);
    std::map<NormalizedName, std::size_t> strength;
    std::vector<NormalizedName> owners;
    auto credit_owners = [&] {
        std::sort(owners.begin(), owners.end());
        owners.erase(std::unique(owners.begin(), owners.end()), owners.end());
        for (const auto& a : owners) {
            if (a != target) {
                ++strength[a];
            }
        }
        owners.clear();
    };

    if (mode == SimilarityMode::coupling) {
        // Each shared key counts once per author that cites it.
        for (const auto& key : author_references(g, target)) {
            for (const auto& citing_doc : g.citing(key)) {
                auto authors = g.authors_of(citing_doc);
                owners.insert(owners.end(), authors.begin(), authors.end());
            }
            credit_owners();
        }
    } else {
        // Each citer of the target counts once per author it also cites.
        for (const auto& citer : author_citers(g, target)) {
            for (const auto& key : g.references(citer)) {
                if (!g.is_internal(key)) {
                    continue;
                }
                auto authors = g.authors_of(key);
                owners.insert(owners.end(), authors.begin(), authors.end());
            }
            credit_owners();
        }
    }

    std::vector<AuthorSimilarity> out;
    for (const auto& [name, n] : strength) {
        out.push_back({name, n, mode});
    }
    std::sort(out.begin(), out.end(), [](const AuthorSimilarity& a, const AuthorSimilarity& b) {
        if (a.strength != b.strength) {
            return a.strength > b.strength;
        }
        return rendered_less(a.author, b.author);
    });
    if (out.size() > limit) {
        out.resize(limit);
    }
    return out;
}

/// Journals ranked by yield and split into zones of roughly equal article
/// totals; zone 1 is the core.
struct BradfordZones {
    struct Entry {
        std::string journal;
        std::size_t articles = 0;
        std::size_t zone = 1;

        bool operator==(const Entry&) const = default;
    };

    std::vector<Entry> entries;
    std::size_t zones = 1;

    /// Number of journals per zone, index 0 = zone 1.
    [[nodiscard]] std::vector<std::size_t> journals_per_zone() const
    {
        std::vector<std::size_t> out(zones, 0);
        for (const auto& e : entries) {
            ++out[e.zone - 1];
        }
        return out;
    }

    /// Article total per zone, index 0 = zone 1.
    [[nodiscard]] std::vector<std::size_t> articles_per_zone() const
    {
        std::vector<std::size_t> out(zones, 0);
        for (const auto& e : entries) {
            out[e.zone - 1] += e.articles;
        }
        return out;
    }
};

/// Greedy cumulative split: walking journals in (count desc, name asc)
/// order, zone z closes as soon as the running total reaches z/zones of the
/// grand total. One large journal can close several zones at once, leaving
/// the skipped zones empty.
inline BradfordZones bradford_zones(std::span<const FacetCount<std::string>> counts, std::size_t zones)
{
    if (zones < 1) {
        throw invalid_argument_error("bradford_zones: zones must be >= 1");
    }
    if (counts.empty()) {
        throw invalid_argument_error("bradford_zones: no journal counts");
    }
    std::vector<FacetCount<std::string>> sorted(counts.begin(), counts.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        if (a.count != b.count) {
            return a.count > b.count;
        }
        return a.entity < b.entity;
    });
    std::size_t total = 0;
    for (const auto& c : sorted) {
        total += c.count;
    }

    BradfordZones out;
    out.zones = zones;
    std::size_t zone = 1;
    std::size_t cumulative = 0;
    for (const auto& c : sorted) {
        out.entries.push_back({c.entity, c.count, zone});
        cumulative += c.count;
        // cumulative >= zone * total / zones, kept in integers
        while (zone < zones && cumulative * zones >= zone * total) {
            ++zone;
        }
    }
    return out;
}

/// Re-ranks a result list so that documents from the journals most
/// productive *within the result* come first. Ties keep (original score
/// desc, doc_id asc); journal-less documents go last. The new score is the
/// journal's article count in the result (0 without a journal).
inline Ranking bradfordize_rerank(const Corpus& corpus, const Ranking& result)
{
    std::map<std::string, std::size_t> yield;
    {
        std::vector<std::string> ids;
        for (const auto& d : result) {
            ids.push_back(d.doc_id);
        }
        for (const auto& f : journal_facets(corpus, ids)) {
            yield[f.entity] = f.count;
        }
    }

    struct Keyed {
        const ScoredDoc* doc;
        std::size_t yield;
    };
    std::vector<Keyed> keyed;
    keyed.reserve(result.size());
    for (const auto& d : result) {
        const auto& rec = corpus.at(d.doc_id);
        keyed.push_back({&d, rec.journal ? yield.at(*rec.journal) : 0});
    }
    std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
        if (a.yield != b.yield) {
            return a.yield > b.yield;
        }
        if (a.doc->score != b.doc->score) {
            return a.doc->score > b.doc->score;
        }
        return a.doc->doc_id < b.doc->doc_id;
    });

    Ranking out;
    out.reserve(keyed.size());
    for (const auto& k : keyed) {
        out.push_back({k.doc->doc_id, static_cast<double>(k.yield), out.size() + 1});
    }
    return out;
}

/// Re-ranks a result list by citation affinity with a seed author set.
///
/// coupling:   score' = |references(d) ∩ R(seeds)|
/// cocitation: score' = number of corpus documents citing both d and at
///             least one document of a seed author
///
/// Ties keep the original rank, so with no signal the input order survives.
inline Ranking informetric_rerank(const CitationGraph& g, const Ranking& result, std::span<const NormalizedName> seeds,
                                  SimilarityMode mode)
{
    if (seeds.empty()) {
        throw invalid_argument_error("informetric_rerank: empty seed set");
    }
    for (const auto& s : seeds) {
        detail::require_author(g, s);
    }

    std::vector<std::string> seed_keys;
    for (const auto& s : seeds) {
        auto part = mode == SimilarityMode::coupling ? author_references(g, s) : author_citers(g, s);
        seed_keys.insert(seed_keys.end(), part.begin(), part.end());
    }
    seed_keys = detail::sorted_union(std::move(seed_keys));

    struct Keyed {
        const ScoredDoc* doc;
        std::size_t position;
        std::size_t signal;
    };
    std::vector<Keyed> keyed;
    keyed.reserve(result.size());
    for (std::size_t i = 0; i < result.size(); ++i) {
        const auto& d = result[i];
        if (!g.has_doc(d.doc_id)) {
            throw unknown_id_error("unknown doc_id: " + d.doc_id);
        }
        // seed_keys holds R(seeds) for coupling and the seed citers for
        // co-citation; either way the signal is an intersection size.
        auto own = mode == SimilarityMode::coupling ? g.references(d.doc_id) : g.citing(d.doc_id);
        keyed.push_back({&d, i, detail::intersection_size(own, seed_keys)});
    }
    std::stable_sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
        if (a.signal != b.signal) {
            return a.signal > b.signal;
        }
        if (a.doc->rank != b.doc->rank) {
            return a.doc->rank < b.doc->rank;
        }
        return a.position < b.position;
    });

    Ranking out;
    out.reserve(keyed.size());
    for (const auto& k : keyed) {
        out.push_back({k.doc->doc_id, static_cast<double>(k.signal), out.size() + 1});
    }
    return out;
}

}  // namespace biblio
