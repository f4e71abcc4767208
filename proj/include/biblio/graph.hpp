// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 biblio contributors

#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "biblio/corpus.hpp"
#include "biblio/error.hpp"
#include "biblio/names.hpp"

namespace biblio {

class CitationGraph;
inline CitationGraph build_citation_graph(const Corpus& corpus);

/// Citing-document -> citation-key relation plus author ownership.
///
/// Every edge is stored on both sides: `references(citing)` lists the cited
/// keys and `citing(key)` lists the citing documents, both sorted. A cited
/// key is internal when it names a document of the corpus, external
/// otherwise. Immutable after build_citation_graph.
class CitationGraph {
public:
    [[nodiscard]] bool has_doc(std::string_view doc_id) const { return refs_.contains(std::string(doc_id)); }

    [[nodiscard]] bool has_author(const NormalizedName& name) const { return author_docs_.contains(name); }

    /// Sorted distinct citation keys of a document.
    [[nodiscard]] std::span<const std::string> references(std::string_view doc_id) const
    {
        auto it = refs_.find(std::string(doc_id));
        if (it == refs_.end()) {
            throw unknown_id_error("unknown doc_id: " + std::string(doc_id));
        }
        return it->second;
    }

    /// Sorted ids of the documents citing `key`; empty for uncited keys.
    [[nodiscard]] std::span<const std::string> citing(std::string_view key) const
    {
        auto it = cited_by_.find(std::string(key));
        return it == cited_by_.end() ? std::span<const std::string>{} : std::span<const std::string>(it->second);
    }

    [[nodiscard]] bool is_internal(std::string_view key) const { return refs_.contains(std::string(key)); }

    /// Sorted doc ids authored by `name`.
    [[nodiscard]] std::span<const std::string> docs_of(const NormalizedName& name) const
    {
        auto it = author_docs_.find(name);
        if (it == author_docs_.end()) {
            throw unknown_id_error("unknown author: " + name.render());
        }
        return it->second;
    }

    /// Distinct normalized authors of a document, in byline order.
    [[nodiscard]] std::span<const NormalizedName> authors_of(std::string_view doc_id) const
    {
        auto it = doc_authors_.find(std::string(doc_id));
        if (it == doc_authors_.end()) {
            throw unknown_id_error("unknown doc_id: " + std::string(doc_id));
        }
        return it->second;
    }

    [[nodiscard]] const std::map<NormalizedName, std::vector<std::string>>& author_docs() const { return author_docs_; }

    /// Citing documents in ascending id order.
    [[nodiscard]] const std::vector<std::string>& doc_ids() const { return doc_ids_; }

    [[nodiscard]] std::size_t edge_count() const { return edge_count_; }
    [[nodiscard]] std::size_t internal_edge_count() const { return internal_edge_count_; }

    /// Keys cited at least once, sorted; includes external keys.
    [[nodiscard]] std::vector<std::string> cited_keys() const
    {
        std::vector<std::string> out;
        out.reserve(cited_by_.size());
        for (const auto& [key, _] : cited_by_) {
            out.push_back(key);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    friend CitationGraph build_citation_graph(const Corpus& corpus);

    std::vector<std::string> doc_ids_;
    std::unordered_map<std::string, std::vector<std::string>> refs_;
    std::unordered_map<std::string, std::vector<std::string>> cited_by_;
    std::map<NormalizedName, std::vector<std::string>> author_docs_;
    std::unordered_map<std::string, std::vector<NormalizedName>> doc_authors_;
    std::size_t edge_count_ = 0;
    std::size_t internal_edge_count_ = 0;
};

inline CitationGraph build_citation_graph(const Corpus& corpus)
{
    CitationGraph g;
    g.doc_ids_.reserve(corpus.size());
    for (const auto& doc : corpus.documents()) {
        g.doc_ids_.push_back(doc.doc_id);
        auto& refs = g.refs_[doc.doc_id];
        refs = doc.references;
        std::sort(refs.begin(), refs.end());
        refs.erase(std::unique(refs.begin(), refs.end()), refs.end());

        auto& authors = g.doc_authors_[doc.doc_id];
        for (const auto& raw : doc.authors) {
            auto name = normalize_author_name(raw);
            if (std::find(authors.begin(), authors.end(), name) == authors.end()) {
                authors.push_back(name);
                g.author_docs_[name].push_back(doc.doc_id);
            }
        }
    }
    std::sort(g.doc_ids_.begin(), g.doc_ids_.end());

    for (const auto& id : g.doc_ids_) {
        for (const auto& key : g.refs_.at(id)) {
            g.cited_by_[key].push_back(id);  // ids visited in order, so stays sorted
            ++g.edge_count_;
            if (g.refs_.contains(key)) {
                ++g.internal_edge_count_;
            }
        }
    }
    for (auto& [_, docs] : g.author_docs_) {
        std::sort(docs.begin(), docs.end());
    }
    return g;
}

struct CorpusStats {
    std::size_t monographs = 0;
    std::size_t fulltext_articles = 0;
    std::size_t abstract_only = 0;
    std::size_t authors = 0;  // distinct normalized names
    std::size_t internal_edges = 0;
    std::size_t external_edges = 0;

    bool operator==(const CorpusStats&) const = default;
};

inline CorpusStats corpus_stats(const Corpus& corpus, const CitationGraph& graph)
{
    CorpusStats s;
    for (const auto& doc : corpus.documents()) {
        switch (doc.kind) {
        case DocKind::monograph: ++s.monographs; break;
        case DocKind::fulltext_article: ++s.fulltext_articles; break;
        case DocKind::abstract_only: ++s.abstract_only; break;
        }
    }
    s.authors = graph.author_docs().size();
    s.internal_edges = graph.internal_edge_count();
    s.external_edges = graph.edge_count() - graph.internal_edge_count();
    return s;
}

inline CorpusStats corpus_stats(const Corpus& corpus)
{
    return corpus_stats(corpus, build_citation_graph(corpus));
}

}  // namespace biblio
