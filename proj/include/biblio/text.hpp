// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 biblio contributors

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace biblio::text {

namespace detail {

// Lowercase ASCII base letters for U+0100..U+017F (Latin Extended-A), two
// entries per upper/lower pair. Multi-letter folds are handled separately.
inline constexpr std::string_view latin_ext_a =
    "aaaaaacccccccc"      // 0100-010D
    "dddd"                // 010E-0111
    "eeeeeeeeee"          // 0112-011B
    "gggggggg"            // 011C-0123
    "hhhh"                // 0124-0127
    "iiiiiiiiii"          // 0128-0131
    "??"                  // 0132-0133 (ij)
    "jj"                  // 0134-0135
    "kkk"                 // 0136-0138
    "llllllllll"          // 0139-0142
    "nnnnnnn"             // 0143-0149
    "nn"                  // 014A-014B
    "oooooo"              // 014C-0151
    "??"                  // 0152-0153 (oe)
    "rrrrrr"              // 0154-0159
    "ssssssss"            // 015A-0161
    "tttttt"              // 0162-0167
    "uuuuuuuuuuuu"        // 0168-0173
    "ww"                  // 0174-0175
    "yyy"                 // 0176-0178
    "zzzzzz"              // 0179-017E
    "s";                  // 017F
static_assert(latin_ext_a.size() == 0x80);

// U+00C0..U+00FF. '?' marks multi-letter folds, '\0' marks non-letters.
inline constexpr std::array<char, 0x40> latin1 = {
    'a', 'a', 'a', 'a', 'a', 'a', '?', 'c', 'e', 'e', 'e', 'e', 'i', 'i', 'i', 'i',
    'd', 'n', 'o', 'o', 'o', 'o', 'o', '\0', 'o', 'u', 'u', 'u', 'u', 'y', '?', '?',
    'a', 'a', 'a', 'a', 'a', 'a', '?', 'c', 'e', 'e', 'e', 'e', 'i', 'i', 'i', 'i',
    'd', 'n', 'o', 'o', 'o', 'o', 'o', '\0', 'o', 'u', 'u', 'u', 'u', 'y', '?', 'y',
};

inline std::string_view fold_codepoint(char32_t cp)
{
    switch (cp) {
    case 0xC6: case 0xE6: return "ae";
    case 0xDE: case 0xFE: return "th";
    case 0xDF: return "ss";
    case 0x132: case 0x133: return "ij";
    case 0x152: case 0x153: return "oe";
    default: break;
    }
    if (cp >= 0xC0 && cp <= 0xFF) {
        const char& c = latin1[cp - 0xC0];
        return c == '\0' ? std::string_view{} : std::string_view(&c, 1);
    }
    if (cp >= 0x100 && cp <= 0x17F) {
        return latin_ext_a.substr(cp - 0x100, 1);
    }
    return {};
}

/// Decodes one UTF-8 sequence starting at s[i]; advances i. Returns
/// U+FFFD for malformed input (and consumes one byte).
inline char32_t next_codepoint(std::string_view s, std::size_t& i)
{
    auto b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    int len = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        ++i;
        return 0xFFFD;
    }
    if (i + len > s.size()) {
        ++i;
        return 0xFFFD;
    }
    for (int k = 1; k < len; ++k) {
        auto b = static_cast<unsigned char>(s[i + k]);
        if ((b & 0xC0) != 0x80) {
            ++i;
            return 0xFFFD;
        }
        cp = (cp << 6) | (b & 0x3F);
    }
    i += len;
    return cp;
}

}  // namespace detail

/// Lowercases ASCII and folds Latin-1 / Latin Extended-A letters to their
/// ASCII base. Any other code point becomes `replacement`, or is dropped
/// when `replacement` is '\0'.
inline std::string fold_lower(std::string_view in, char replacement = ' ')
{
    std::string out;
    out.reserve(in.size());
    std::size_t i = 0;
    while (i < in.size()) {
        char32_t cp = detail::next_codepoint(in, i);
        if (cp < 0x80) {
            auto c = static_cast<char>(cp);
            out.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
            continue;
        }
        auto folded = detail::fold_codepoint(cp);
        if (!folded.empty()) {
            out.append(folded);
        } else if (replacement != '\0') {
            out.push_back(replacement);
        }
    }
    return out;
}

inline bool is_alnum(char c)
{
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

inline bool is_space(char c)
{
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && is_space(s.front())) {
        s.remove_prefix(1);
    }
    while (!s.empty() && is_space(s.back())) {
        s.remove_suffix(1);
    }
    return s;
}

/// Tabs and line breaks become spaces so a value stays one TSV cell.
inline std::string tsv_cell(std::string_view s)
{
    std::string out(s);
    for (char& c : out) {
        if (c == '\t' || c == '\n' || c == '\r') {
            c = ' ';
        }
    }
    return out;
}

}  // namespace biblio::text
