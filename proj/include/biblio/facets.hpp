// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 biblio contributors

#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "biblio/corpus.hpp"
#include "biblio/error.hpp"
#include "biblio/names.hpp"
#include "biblio/search.hpp"
#include "biblio/text.hpp"

namespace biblio {

enum class FacetDimension { author, journal };

/// An entity and the number of distinct result documents it occurs in.
template <typename Entity>
struct FacetCount {
    Entity entity;
    std::size_t count = 0;

    bool operator==(const FacetCount&) const = default;
};

namespace detail {

inline std::string facet_key(const std::string& s) { return s; }
inline std::string facet_key(const NormalizedName& n) { return n.render(); }

inline std::vector<std::string> distinct_ids(std::span<const std::string> ids)
{
    std::vector<std::string> out(ids.begin(), ids.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline std::vector<std::string> ids_of(const Ranking& ranking)
{
    std::vector<std::string> out;
    out.reserve(ranking.size());
    for (const auto& d : ranking) {
        out.push_back(d.doc_id);
    }
    return out;
}

template <typename Entity>
std::vector<FacetCount<Entity>> sorted_facets(std::map<Entity, std::size_t> counts)
{
    std::vector<FacetCount<Entity>> out;
    out.reserve(counts.size());
    for (auto& [entity, n] : counts) {
        out.push_back({entity, n});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.count != b.count) {
            return a.count > b.count;
        }
        return facet_key(a.entity) < facet_key(b.entity);
    });
    return out;
}

}  // namespace detail

/// Author facet: each result document counts once per distinct normalized
/// author. Ordered by (count desc, rendered name asc).
inline std::vector<FacetCount<NormalizedName>> author_facets(const Corpus& corpus, std::span<const std::string> result)
{
    std::map<NormalizedName, std::size_t> counts;
    for (const auto& id : detail::distinct_ids(result)) {
        const auto& doc = corpus.at(id);
        std::vector<NormalizedName> seen;
        for (const auto& raw : doc.authors) {
            auto name = normalize_author_name(raw);
            if (std::find(seen.begin(), seen.end(), name) == seen.end()) {
                seen.push_back(name);
                ++counts[name];
            }
        }
    }
    return detail::sorted_facets(std::move(counts));
}

/// Journal facet over the exact journal strings. Documents without a
/// journal contribute nothing.
inline std::vector<FacetCount<std::string>> journal_facets(const Corpus& corpus, std::span<const std::string> result)
{
    std::map<std::string, std::size_t> counts;
    for (const auto& id : detail::distinct_ids(result)) {
        const auto& doc = corpus.at(id);
        if (doc.journal) {
            ++counts[*doc.journal];
        }
    }
    return detail::sorted_facets(std::move(counts));
}

/// Either dimension with entities rendered as strings (authors as
/// "surname, i. n.").
inline std::vector<FacetCount<std::string>> facet_counts(const Corpus& corpus, std::span<const std::string> result,
                                                         FacetDimension dimension)
{
    if (dimension == FacetDimension::journal) {
        return journal_facets(corpus, result);
    }
    std::vector<FacetCount<std::string>> out;
    for (auto& f : author_facets(corpus, result)) {
        out.push_back({f.entity.render(), f.count});
    }
    return out;
}

inline std::vector<FacetCount<std::string>> facet_counts(const Corpus& corpus, const Ranking& result,
                                                         FacetDimension dimension)
{
    auto ids = detail::ids_of(result);
    return facet_counts(corpus, ids, dimension);
}

template <typename Entity>
void write_facets_tsv(std::ostream& out, const std::vector<FacetCount<Entity>>& facets)
{
    out << "entity\tcount\n";
    for (const auto& f : facets) {
        out << text::tsv_cell(detail::facet_key(f.entity)) << '\t' << f.count << '\n';
    }
}

}  // namespace biblio
