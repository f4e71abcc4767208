// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 biblio contributors

// Slow reference computations straight from raw JSONL lines. Nothing here
// touches Corpus, CitationGraph or Index; only the name normalizer and the
// tokenizer are shared with the library.

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "biblio/names.hpp"
#include "biblio/tokenizer.hpp"

namespace biblio::oracle {

struct RawDoc {
    std::string id;
    std::vector<std::string> authors;  // rendered normalized names
    std::set<std::string> refs;
    std::string journal;
    std::vector<std::string> title;  // tokens
    std::vector<std::string> abstract_text;
    std::vector<std::string> fulltext;
};

inline std::vector<RawDoc> parse_raw(const std::string& jsonl)
{
    std::vector<RawDoc> out;
    std::istringstream in(jsonl);
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        auto j = nlohmann::json::parse(line);
        RawDoc d;
        d.id = j.at("doc_id").get<std::string>();
        for (const auto& a : j.value("authors", nlohmann::json::array())) {
            try {
                auto name = normalize_author_name(a.get<std::string>()).render();
                if (std::find(d.authors.begin(), d.authors.end(), name) == d.authors.end()) {
                    d.authors.push_back(name);
                }
            } catch (const std::exception&) {
            }
        }
        for (const auto& r : j.value("references", nlohmann::json::array())) {
            d.refs.insert(r.get<std::string>());
        }
        if (j.contains("journal") && j["journal"].is_string()) {
            d.journal = j["journal"].get<std::string>();
        }
        d.title = tokenize(j.value("title", ""));
        d.abstract_text = tokenize(j.value("abstract", ""));
        if (j.contains("fulltext") && j["fulltext"].is_string()) {
            d.fulltext = tokenize(j["fulltext"].get<std::string>());
        }
        out.push_back(std::move(d));
    }
    return out;
}

class Brute {
public:
    explicit Brute(std::vector<RawDoc> docs) : docs_(std::move(docs))
    {
        for (std::size_t i = 0; i < docs_.size(); ++i) {
            by_id_.emplace(docs_[i].id, i);
        }
    }

    [[nodiscard]] const std::vector<RawDoc>& docs() const { return docs_; }

    [[nodiscard]] const RawDoc* find(const std::string& id) const
    {
        const auto it = by_id_.find(id);
        return it == by_id_.end() ? nullptr : &docs_[it->second];
    }

    [[nodiscard]] std::set<std::string> authors() const
    {
        std::set<std::string> out;
        for (const auto& d : docs_) {
            out.insert(d.authors.begin(), d.authors.end());
        }
        return out;
    }

    [[nodiscard]] bool writes(const RawDoc& d, const std::string& author) const
    {
        return std::find(d.authors.begin(), d.authors.end(), author) != d.authors.end();
    }

    [[nodiscard]] std::size_t coupling_docs(const std::string& a, const std::string& b) const
    {
        const auto& ra = find(a)->refs;
        const auto& rb = find(b)->refs;
        std::size_t n = 0;
        for (const auto& r : ra) {
            n += rb.count(r);
        }
        return n;
    }

    [[nodiscard]] std::set<std::string> author_refs(const std::string& author) const
    {
        std::set<std::string> out;
        for (const auto& d : docs_) {
            if (writes(d, author)) {
                out.insert(d.refs.begin(), d.refs.end());
            }
        }
        return out;
    }

    [[nodiscard]] std::size_t coupling_authors(const std::string& a, const std::string& b) const
    {
        auto ra = author_refs(a);
        auto rb = author_refs(b);
        std::size_t n = 0;
        for (const auto& r : ra) {
            n += rb.count(r);
        }
        return n;
    }

    /// Documents c whose references hit a document of `a` and one of `b`.
    [[nodiscard]] std::size_t cocitation_authors(const std::string& a, const std::string& b) const
    {
        std::size_t n = 0;
        for (const auto& c : docs_) {
            bool hit_a = false;
            bool hit_b = false;
            for (const auto& r : c.refs) {
                if (const auto* cited = find(r)) {
                    hit_a = hit_a || writes(*cited, a);
                    hit_b = hit_b || writes(*cited, b);
                }
            }
            n += (hit_a && hit_b) ? 1 : 0;
        }
        return n;
    }

    /// Coupling signal of a document against seed authors.
    [[nodiscard]] std::size_t coupling_signal(const std::string& doc, const std::vector<std::string>& seeds) const
    {
        std::set<std::string> keys;
        for (const auto& s : seeds) {
            auto r = author_refs(s);
            keys.insert(r.begin(), r.end());
        }
        std::size_t n = 0;
        for (const auto& r : find(doc)->refs) {
            n += keys.count(r);
        }
        return n;
    }

    /// Co-citation signal: documents citing `doc` and some seed document.
    [[nodiscard]] std::size_t cocitation_signal(const std::string& doc, const std::vector<std::string>& seeds) const
    {
        std::size_t n = 0;
        for (const auto& c : docs_) {
            if (!c.refs.count(doc)) {
                continue;
            }
            bool hits_seed = false;
            for (const auto& r : c.refs) {
                if (const auto* cited = find(r)) {
                    for (const auto& s : seeds) {
                        hits_seed = hits_seed || writes(*cited, s);
                    }
                }
            }
            n += hits_seed ? 1 : 0;
        }
        return n;
    }

    /// Single-term score by the weighting formula with boosts 3/2/1.
    [[nodiscard]] double term_score(const RawDoc& d, const std::string& term) const
    {
        const std::vector<std::string> RawDoc::*fields[] = {&RawDoc::title, &RawDoc::abstract_text, &RawDoc::fulltext};
        const double boosts[] = {3.0, 2.0, 1.0};
        double score = 0.0;
        for (int f = 0; f < 3; ++f) {
            auto tf = std::count(((d).*fields[f]).begin(), ((d).*fields[f]).end(), term);
            if (tf == 0) {
                continue;
            }
            std::size_t df = 0;
            for (const auto& o : docs_) {
                const auto& toks = o.*fields[f];
                df += std::find(toks.begin(), toks.end(), term) != toks.end() ? 1 : 0;
            }
            score += boosts[f] * (1.0 + std::log(static_cast<double>(tf))) *
                     std::log(1.0 + static_cast<double>(docs_.size()) / static_cast<double>(df));
        }
        return score;
    }

    [[nodiscard]] bool has_term(const RawDoc& d, const std::string& term) const
    {
        for (const auto* toks : {&d.title, &d.abstract_text, &d.fulltext}) {
            if (std::find(toks->begin(), toks->end(), term) != toks->end()) {
                return true;
            }
        }
        return false;
    }

private:
    std::vector<RawDoc> docs_;
    std::map<std::string, std::size_t> by_id_;
};

}  // namespace biblio::oracle
