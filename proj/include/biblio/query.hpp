// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 biblio contributors

#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "biblio/error.hpp"
#include "biblio/text.hpp"
#include "biblio/tokenizer.hpp"

namespace biblio {

/// A single stemmed token, or a phrase of adjacent tokens.
struct Atom {
    std::vector<std::string> tokens;

    [[nodiscard]] bool is_phrase() const { return tokens.size() > 1; }
    bool operator==(const Atom&) const = default;
};

/// Conjunction of atoms.
struct Group {
    std::vector<Atom> atoms;
    bool operator==(const Group&) const = default;
};

/// Disjunction of groups: a document matches when some group has all of
/// its atoms.
struct Query {
    std::vector<Group> groups;
    bool operator==(const Query&) const = default;
};

/// Parses `"carbon nanotubes" spintronics OR "raman spectroscopy"`.
///
/// Groups are separated by the bare keyword OR (uppercase). Within a group,
/// bare words and double-quoted phrases are ANDed. Every atom goes through
/// tokenize(); atoms that vanish (stop words) are dropped, and a bare word
/// that splits into several tokens ("x-ray") becomes a phrase. Groups left
/// empty by tokenization are dropped.
///
/// Throws query_error on syntax problems (unterminated quote, dangling OR)
/// and empty_query_error when nothing survives tokenization.
inline Query parse_query(std::string_view input)
{
    std::vector<std::vector<std::string>> raw_groups(1);
    bool saw_or = false;
    std::size_t i = 0;
    while (i < input.size()) {
        char c = input[i];
        if (text::is_space(c)) {
            ++i;
            continue;
        }
        if (c == '"') {
            auto close = input.find('"', i + 1);
            if (close == std::string_view::npos) {
                throw query_error("unterminated quote in query: " + std::string(input));
            }
            // Keep quotes so the atom is read as a phrase below.
            raw_groups.back().emplace_back(input.substr(i, close - i + 1));
            i = close + 1;
            continue;
        }
        std::size_t start = i;
        while (i < input.size() && !text::is_space(input[i]) && input[i] != '"') {
            ++i;
        }
        auto word = input.substr(start, i - start);
        if (word == "OR") {
            if (raw_groups.back().empty()) {
                throw query_error("OR without a left operand in query: " + std::string(input));
            }
            raw_groups.emplace_back();
            saw_or = true;
        } else {
            raw_groups.back().emplace_back(word);
        }
    }
    if (saw_or && raw_groups.back().empty()) {
        throw query_error("OR without a right operand in query: " + std::string(input));
    }

    Query q;
    for (const auto& raw : raw_groups) {
        Group g;
        for (const auto& piece : raw) {
            std::string_view body = piece;
            if (body.size() >= 2 && body.front() == '"') {
                body = body.substr(1, body.size() - 2);
            }
            Atom atom{tokenize(body)};
            if (atom.tokens.empty()) {
                continue;
            }
            if (std::find(g.atoms.begin(), g.atoms.end(), atom) == g.atoms.end()) {
                g.atoms.push_back(std::move(atom));
            }
        }
        if (!g.atoms.empty()) {
            q.groups.push_back(std::move(g));
        }
    }
    if (q.groups.empty()) {
        throw empty_query_error("query has no searchable terms: '" + std::string(input) + "'");
    }
    return q;
}

}  // namespace biblio
