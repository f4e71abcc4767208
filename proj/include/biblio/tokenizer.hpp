// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 biblio contributors

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "biblio/porter.hpp"
#include "biblio/stopwords.hpp"
#include "biblio/text.hpp"

namespace biblio {

/// Lowercase, split on anything that is not [a-z0-9], drop stop words,
/// Porter-stem the survivors. Order is preserved, so a token's index in the
/// result is its position for phrase matching (removed stop words leave no
/// gap).
inline std::vector<std::string> tokenize(std::string_view input)
{
    static const porter_stemmer stemmer;
    const std::string folded = text::fold_lower(input, ' ');
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < folded.size()) {
        while (i < folded.size() && !text::is_alnum(folded[i])) {
            ++i;
        }
        std::size_t start = i;
        while (i < folded.size() && text::is_alnum(folded[i])) {
            ++i;
        }
        if (i == start) {
            break;
        }
        std::string_view word(folded.data() + start, i - start);
        if (is_stop_word(word)) {
            continue;
        }
        out.push_back(stemmer.stem(word));
    }
    return out;
}

}  // namespace biblio
