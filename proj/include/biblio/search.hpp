// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 biblio contributors

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "biblio/index.hpp"
#include "biblio/query.hpp"
#include "biblio/topics.hpp"

namespace biblio {

struct ScoredDoc {
    std::string doc_id;
    double score = 0.0;
    std::size_t rank = 0;  // 1-based

    bool operator==(const ScoredDoc&) const = default;
};

using Ranking = std::vector<ScoredDoc>;

/// Sorts by (score desc, doc_id asc) and renumbers ranks from 1.
inline void sort_and_rank(Ranking& docs)
{
    std::sort(docs.begin(), docs.end(), [](const ScoredDoc& a, const ScoredDoc& b) {
        if (a.score != b.score) {
            return a.score > b.score;
        }
        return a.doc_id < b.doc_id;
    });
    for (std::size_t i = 0; i < docs.size(); ++i) {
        docs[i].rank = i + 1;
    }
}

/// ln(1 + N/df)
inline double idf(std::size_t n_docs, std::size_t df)
{
    return std::log1p(static_cast<double>(n_docs) / static_cast<double>(df));
}

/// 1 + ln(tf)
inline double tf_weight(std::uint32_t tf)
{
    return 1.0 + std::log(static_cast<double>(tf));
}

namespace detail {

struct FieldHit {
    std::uint32_t doc;
    std::uint32_t tf;
};

/// Where one atom occurs: per field (doc, tf) sorted by doc, plus the union
/// of matching docs.
struct AtomHits {
    std::array<std::vector<FieldHit>, 3> fields;
    std::vector<std::uint32_t> docs;
};

inline std::vector<FieldHit> phrase_hits(const Index& index, Field f, const std::vector<std::string>& tokens)
{
    std::vector<const PostingList*> lists;
    for (const auto& tok : tokens) {
        const auto* list = index.postings(f, tok);
        if (list == nullptr) {
            return {};
        }
        lists.push_back(list);
    }
    std::vector<FieldHit> out;
    std::vector<std::size_t> cursor(lists.size(), 0);
    for (const auto& head : *lists[0]) {
        std::vector<const Posting*> parts{&head};
        for (std::size_t i = 1; i < lists.size(); ++i) {
            auto& c = cursor[i];
            const auto& list = *lists[i];
            while (c < list.size() && list[c].doc < head.doc) {
                ++c;
            }
            if (c == list.size() || list[c].doc != head.doc) {
                break;
            }
            parts.push_back(&list[c]);
        }
        if (parts.size() != lists.size()) {
            continue;
        }
        std::uint32_t count = 0;
        for (auto start : head.positions) {
            bool all = true;
            for (std::size_t i = 1; i < parts.size() && all; ++i) {
                const auto& pos = parts[i]->positions;
                all = std::binary_search(pos.begin(), pos.end(), start + static_cast<std::uint32_t>(i));
            }
            if (all) {
                ++count;
            }
        }
        if (count > 0) {
            out.push_back({head.doc, count});
        }
    }
    return out;
}

inline AtomHits atom_hits(const Index& index, const Atom& atom)
{
    AtomHits hits;
    for (Field f : all_fields) {
        auto& dst = hits.fields[static_cast<std::size_t>(f)];
        if (atom.is_phrase()) {
            dst = phrase_hits(index, f, atom.tokens);
        } else if (const auto* list = index.postings(f, atom.tokens.front())) {
            dst.reserve(list->size());
            for (const auto& p : *list) {
                dst.push_back({p.doc, p.tf()});
            }
        }
        for (const auto& h : dst) {
            hits.docs.push_back(h.doc);
        }
    }
    std::sort(hits.docs.begin(), hits.docs.end());
    hits.docs.erase(std::unique(hits.docs.begin(), hits.docs.end()), hits.docs.end());
    return hits;
}

inline std::optional<std::uint32_t> tf_in(const std::vector<FieldHit>& hits, std::uint32_t doc)
{
    auto it = std::lower_bound(hits.begin(), hits.end(), doc, [](const FieldHit& h, std::uint32_t d) { return h.doc < d; });
    if (it == hits.end() || it->doc != doc) {
        return std::nullopt;
    }
    return it->tf;
}

struct Evaluated {
    std::vector<Atom> atoms;                        // distinct atoms, first-seen order
    std::vector<AtomHits> hits;                     // parallel to atoms
    std::vector<std::vector<std::size_t>> groups;   // atom indices per group
    std::vector<std::uint32_t> matches;             // sorted doc numbers
};

inline Evaluated evaluate(const Index& index, const Query& query)
{
    Evaluated ev;
    for (const auto& group : query.groups) {
        if (group.atoms.empty() || std::any_of(group.atoms.begin(), group.atoms.end(),
                                               [](const Atom& a) { return a.tokens.empty(); })) {
            throw empty_query_error("query group without searchable atoms");
        }
        std::vector<std::size_t> members;
        for (const auto& atom : group.atoms) {
            auto it = std::find(ev.atoms.begin(), ev.atoms.end(), atom);
            if (it == ev.atoms.end()) {
                ev.atoms.push_back(atom);
                ev.hits.push_back(atom_hits(index, atom));
                members.push_back(ev.atoms.size() - 1);
            } else {
                members.push_back(static_cast<std::size_t>(it - ev.atoms.begin()));
            }
        }
        ev.groups.push_back(std::move(members));
    }
    for (const auto& members : ev.groups) {
        std::vector<std::uint32_t> conj = ev.hits[members.front()].docs;
        for (std::size_t i = 1; i < members.size() && !conj.empty(); ++i) {
            const auto& other = ev.hits[members[i]].docs;
            std::vector<std::uint32_t> next;
            std::set_intersection(conj.begin(), conj.end(), other.begin(), other.end(), std::back_inserter(next));
            conj = std::move(next);
        }
        std::vector<std::uint32_t> merged;
        std::set_union(ev.matches.begin(), ev.matches.end(), conj.begin(), conj.end(), std::back_inserter(merged));
        ev.matches = std::move(merged);
    }
    return ev;
}

}  // namespace detail

/// Extended-Boolean retrieval.
///
/// A document matches when at least one group has all of its atoms (phrase
/// tokens adjacent within one field). Its score sums, over the distinct
/// atoms of its satisfied groups and over each field f holding the atom,
///
///     boost(f) * (1 + ln tf) * ln(1 + N / df(atom, f))
///
/// Results are ordered by (score desc, doc_id asc) and cut to `k` if given.
inline Ranking search(const Index& index, const Query& query, std::optional<std::size_t> k = std::nullopt)
{
    if (query.groups.empty()) {
        throw empty_query_error("query has no groups");
    }
    const auto ev = detail::evaluate(index, query);
    const std::size_t n = index.doc_count();

    Ranking out;
    out.reserve(ev.matches.size());
    std::vector<char> use(ev.atoms.size());
    for (auto doc : ev.matches) {
        std::fill(use.begin(), use.end(), 0);
        for (const auto& members : ev.groups) {
            bool satisfied = std::all_of(members.begin(), members.end(), [&](std::size_t a) {
                return std::binary_search(ev.hits[a].docs.begin(), ev.hits[a].docs.end(), doc);
            });
            if (satisfied) {
                for (auto a : members) {
                    use[a] = 1;
                }
            }
        }
        double score = 0.0;
        for (std::size_t a = 0; a < ev.atoms.size(); ++a) {
            if (!use[a]) {
                continue;
            }
            for (Field f : all_fields) {
                const auto& field_hits = ev.hits[a].fields[static_cast<std::size_t>(f)];
                if (auto tf = detail::tf_in(field_hits, doc)) {
                    score += index.boosts()[f] * tf_weight(*tf) * idf(n, field_hits.size());
                }
            }
        }
        out.push_back({index.doc_id(doc), score, 0});
    }
    sort_and_rank(out);
    if (k && out.size() > *k) {
        out.resize(*k);
    }
    return out;
}

inline Ranking search(const Index& index, std::string_view query, std::optional<std::size_t> k = std::nullopt)
{
    return search(index, parse_query(query), k);
}

/// Unranked match set (ascending doc_id) of a query.
inline std::vector<std::string> match_set(const Index& index, const Query& query)
{
    const auto ev = detail::evaluate(index, query);
    std::vector<std::string> out;
    out.reserve(ev.matches.size());
    for (auto doc : ev.matches) {
        out.push_back(index.doc_id(doc));
    }
    return out;
}

/// The topical pool of a research interest: every document matching its
/// query, without a cap.
inline std::vector<std::string> topic_subset(const Index& index, const TopicSpec& topic)
{
    return match_set(index, parse_query(topic.query));
}

}  // namespace biblio
