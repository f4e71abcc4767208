// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 biblio contributors

#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "biblio/error.hpp"
#include "biblio/text.hpp"

namespace biblio {

/// Author identity key: folded lowercase surname plus ordered initials.
///
/// Two raw spellings that differ only in name order, punctuation, case or
/// diacritics map to the same key, e.g. "White, H.D.", "H. D. White" and
/// "h d white" all become (white, "hd").
struct NormalizedName {
    std::string surname;
    std::string initials;  // one character per initial

    auto operator<=>(const NormalizedName&) const = default;

    /// Canonical display form, "surname, i. n.". Feeding it back through
    /// normalize_author_name yields the same key.
    [[nodiscard]] std::string render() const
    {
        std::string out = surname;
        if (initials.empty()) {
            // A bare multi-word surname would be re-read as "given surname".
            if (out.find(' ') != std::string::npos) {
                out += ',';
            }
            return out;
        }
        out += ',';
        for (char c : initials) {
            out += ' ';
            out += c;
            out += '.';
        }
        return out;
    }
};

struct NormalizedNameHash {
    std::size_t operator()(const NormalizedName& n) const noexcept
    {
        std::size_t h = std::hash<std::string>{}(n.surname);
        return h ^ (std::hash<std::string>{}(n.initials) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    }
};

/// Orders by rendered form; used wherever output ties are broken "by name".
inline bool rendered_less(const NormalizedName& a, const NormalizedName& b)
{
    return a.render() < b.render();
}

namespace detail {

inline constexpr std::array<std::string_view, 15> surname_particles = {
    "van", "von", "der", "den", "de", "del", "della", "di", "da", "du", "la", "le", "ter", "ten", "dos",
};

inline constexpr std::array<std::string_view, 5> name_suffixes = {"jr", "sr", "ii", "iii", "iv"};

inline bool contains(auto const& list, std::string_view s)
{
    return std::find(list.begin(), list.end(), s) != list.end();
}

inline std::vector<std::string_view> split_on(std::string_view s, std::string_view seps)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || seps.find(s[i]) != std::string_view::npos) {
            if (i > start) {
                out.push_back(s.substr(start, i - start));
            }
            start = i + 1;
        }
    }
    return out;
}

inline bool surname_char(char c)
{
    return text::is_alnum(c) || c == '-' || c == '\'';
}

/// Keeps [a-z0-9'-], turns everything else into single spaces and trims
/// stray hyphens/apostrophes off each word.
inline std::string clean_surname(std::string_view raw)
{
    std::string spaced;
    for (char c : raw) {
        spaced += surname_char(c) ? c : ' ';
    }
    std::string out;
    for (auto word : split_on(spaced, " ")) {
        while (!word.empty() && (word.front() == '-' || word.front() == '\'')) {
            word.remove_prefix(1);
        }
        while (!word.empty() && (word.back() == '-' || word.back() == '\'')) {
            word.remove_suffix(1);
        }
        if (word.empty()) {
            continue;
        }
        if (!out.empty()) {
            out += ' ';
        }
        out += word;
    }
    return out;
}

/// First alphanumeric character of every given-name piece; suffixes skipped.
inline std::string initials_of(std::string_view given)
{
    std::string out;
    for (auto piece : split_on(given, " \t.-,")) {
        std::string word;
        for (char c : piece) {
            if (text::is_alnum(c)) {
                word += c;
            }
        }
        if (word.empty() || contains(name_suffixes, word)) {
            continue;
        }
        out += word.front();
    }
    return out;
}

/// "H.", "H.D.", "H.-D.": dotted tokens made only of single letters.
inline bool initials_token(std::string_view token)
{
    if (token.find('.') == std::string_view::npos) {
        return false;
    }
    auto pieces = split_on(token, ".-");
    return !pieces.empty() && std::all_of(pieces.begin(), pieces.end(), [](std::string_view p) {
        return p.size() == 1 && text::is_alnum(p[0]);
    });
}

inline std::string_view strip_dots(std::string_view s)
{
    while (!s.empty() && s.back() == '.') {
        s.remove_suffix(1);
    }
    return s;
}

}  // namespace detail

/// Maps a raw author string to its NormalizedName.
///
/// Comma form ("Surname, Given") takes everything before the first comma as
/// the surname. Otherwise the last word is the surname, extended leftwards
/// over particles such as "van" or "de"; trailing dotted initials
/// ("White H.D.") flip the order. Throws invalid_name_error when nothing
/// usable remains.
inline NormalizedName normalize_author_name(std::string_view raw)
{
    const std::string folded = text::fold_lower(raw, '\0');
    const std::string_view s = text::trim(folded);
    if (s.empty()) {
        throw invalid_name_error("invalid author name: empty");
    }

    NormalizedName out;
    if (auto comma = s.find(','); comma != std::string_view::npos) {
        out.surname = detail::clean_surname(s.substr(0, comma));
        out.initials = detail::initials_of(s.substr(comma + 1));
    } else {
        auto tokens = detail::split_on(s, " \t\r\n");
        std::erase_if(tokens, [](std::string_view t) { return std::none_of(t.begin(), t.end(), text::is_alnum); });
        if (tokens.empty()) {
            throw invalid_name_error("invalid author name: '" + std::string(raw) + "' has no letters");
        }
        while (tokens.size() > 1 && detail::contains(detail::name_suffixes, detail::strip_dots(tokens.back()))) {
            tokens.pop_back();
        }
        std::size_t split = tokens.size() - 1;
        std::size_t trailing = tokens.size();
        while (trailing > 1 && detail::initials_token(tokens[trailing - 1])) {
            --trailing;
        }
        if (trailing < tokens.size()) {
            // "Surname I.N." layout
            std::string surname;
            for (std::size_t i = 0; i < trailing; ++i) {
                surname += tokens[i];
                surname += ' ';
            }
            std::string given;
            for (std::size_t i = trailing; i < tokens.size(); ++i) {
                given += tokens[i];
                given += ' ';
            }
            out.surname = detail::clean_surname(surname);
            out.initials = detail::initials_of(given);
        } else {
            while (split > 0 && detail::contains(detail::surname_particles, tokens[split - 1])) {
                --split;
            }
            std::string surname;
            for (std::size_t i = split; i < tokens.size(); ++i) {
                surname += tokens[i];
                surname += ' ';
            }
            std::string given;
            for (std::size_t i = 0; i < split; ++i) {
                given += tokens[i];
                given += ' ';
            }
            out.surname = detail::clean_surname(surname);
            out.initials = detail::initials_of(given);
        }
    }
    if (out.surname.empty()) {
        throw invalid_name_error("invalid author name: '" + std::string(raw) + "' has no surname");
    }
    return out;
}

}  // namespace biblio
