// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 biblio contributors

#pragma once

#include <algorithm>
#include <array>
#include <string_view>

namespace biblio {

/// Frozen English stop-word list (lowercase). Changing it changes
/// every index and every score; bump the index format version if you do.
inline constexpr std::array<std::string_view, 172> english_stop_words = {
    "a", "about", "above", "after", "again", "against", "all", "also", "am", "an",
    "and", "any", "are", "aren", "as", "at", "be", "because", "been", "before",
    "being", "below", "between", "both", "but", "by", "can", "cannot", "could", "couldn",
    "d", "did", "didn", "do", "does", "doesn", "doing", "don", "down", "during",
    "each", "either", "else", "etc", "few", "for", "from", "further", "had", "hadn",
    "has", "hasn", "have", "haven", "having", "he", "her", "here", "hers", "herself",
    "him", "himself", "his", "how", "however", "i", "if", "in", "into", "is",
    "isn", "it", "its", "itself", "just", "ll", "m", "may", "me", "might",
    "more", "most", "must", "my", "myself", "neither", "no", "nor", "not", "now",
    "o", "of", "off", "on", "once", "only", "or", "other", "ought", "our",
    "ours", "ourselves", "out", "over", "own", "re", "s", "same", "shall", "she",
    "should", "shouldn", "so", "some", "such", "t", "than", "that", "the", "their",
    "theirs", "them", "themselves", "then", "there", "these", "they", "this", "those", "through",
    "thus", "to", "too", "under", "until", "up", "upon", "us", "ve", "very",
    "was", "wasn", "we", "were", "weren", "what", "when", "where", "whether", "which",
    "while", "who", "whom", "whose", "why", "will", "with", "within", "without", "won",
    "would", "wouldn", "yet", "you", "your", "yours", "yourself", "yourselves", "via", "whereas",
    "thereby", "hence",
};

namespace detail {

inline constexpr auto sorted_stop_words = [] {
    auto copy = english_stop_words;
    std::sort(copy.begin(), copy.end());
    return copy;
}();

}  // namespace detail

inline bool is_stop_word(std::string_view token)
{
    return std::binary_search(detail::sorted_stop_words.begin(), detail::sorted_stop_words.end(), token);
}

}  // namespace biblio
