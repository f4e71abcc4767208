// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 biblio contributors

#pragma once

#include <filesystem>
#include <initializer_list>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "biblio/corpus.hpp"

namespace biblio::testing {

inline DocumentRecord doc(std::string id, std::vector<std::string> authors = {}, std::optional<std::string> journal = {},
                          std::vector<std::string> refs = {}, std::string title = "", std::string abstract_text = "")
{
    DocumentRecord d;
    d.doc_id = std::move(id);
    d.kind = DocKind::abstract_only;
    d.authors = std::move(authors);
    d.journal = std::move(journal);
    d.references = std::move(refs);
    d.title = std::move(title);
    d.abstract_text = std::move(abstract_text);
    return d;
}

inline Corpus corpus_of(std::vector<DocumentRecord> docs)
{
    Corpus c;
    for (auto& d : docs) {
        c.add(std::move(d));
    }
    return c;
}

inline std::string jsonl_of(const std::vector<DocumentRecord>& docs)
{
    std::string s;
    for (const auto& d : docs) {
        s += to_jsonl(d) + "\n";
    }
    return s;
}

/// Small random corpus: ids D01.., authors from a fixed pool, references to
/// earlier docs and a few external keys, text from a small vocabulary.
inline std::vector<DocumentRecord> random_docs(std::uint64_t seed, std::size_t n)
{
    std::mt19937_64 rng(seed);
    auto below = [&](std::size_t k) { return static_cast<std::size_t>(rng() % k); };
    static const std::vector<std::string> people = {"White, H. D.", "Kim, A.", "Okafor, N.", "Lindqvist, E.",
                                                    "Moreau, C. J.", "Tanaka, S. K.", "Novak, J.", "Reyes, M.",
                                                    "Haddad, R.", "Petrov, I."};
    static const std::vector<std::string> words = {"carbon", "nanotube", "polymer", "spin", "laser", "graphene",
                                                   "quantum", "plasma", "crystal", "magnet", "optics", "boson"};
    static const std::vector<std::string> journals = {"Phys. Rev. B", "Nature", "JASIST", "Scientometrics"};
    std::vector<DocumentRecord> docs;
    for (std::size_t i = 0; i < n; ++i) {
        char id[32];
        std::snprintf(id, sizeof id, "D%02zu", i + 1);
        std::vector<std::string> authors;
        for (std::size_t a = 0, na = 1 + below(3); a < na; ++a) {
            const auto& p = people[below(people.size())];
            if (std::find(authors.begin(), authors.end(), p) == authors.end()) {
                authors.push_back(p);
            }
        }
        std::vector<std::string> refs;
        for (std::size_t r = 0, nr = below(5); r < nr; ++r) {
            std::string key;
            if (i > 0 && below(3) != 0) {
                char ref[32];
                std::snprintf(ref, sizeof ref, "D%02zu", below(i) + 1);
                key = ref;
            } else {
                key = "EXT" + std::to_string(below(6));
            }
            if (std::find(refs.begin(), refs.end(), key) == refs.end()) {
                refs.push_back(key);
            }
        }
        std::string title;
        std::string abstract_text;
        for (std::size_t w = 0, nw = 1 + below(4); w < nw; ++w) {
            title += words[below(words.size())] + " ";
        }
        for (std::size_t w = 0, nw = below(8); w < nw; ++w) {
            abstract_text += words[below(words.size())] + " ";
        }
        std::optional<std::string> journal;
        if (below(5) != 0) {
            journal = journals[below(journals.size())];
        }
        auto d = doc(id, authors, journal, refs, title, abstract_text);
        if (below(4) == 0) {
            d.kind = DocKind::fulltext_article;
            d.fulltext = words[below(words.size())] + " " + words[below(words.size())];
        }
        docs.push_back(std::move(d));
    }
    return docs;
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / ("biblio_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace biblio::testing
