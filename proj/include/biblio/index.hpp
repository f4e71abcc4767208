// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 biblio contributors

#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "biblio/corpus.hpp"
#include "biblio/error.hpp"
#include "biblio/tokenizer.hpp"

namespace biblio {

enum class Field : std::uint8_t { title = 0, abstract_text = 1, fulltext = 2 };

inline constexpr std::array<Field, 3> all_fields = {Field::title, Field::abstract_text, Field::fulltext};

inline std::string_view to_string(Field f)
{
    switch (f) {
    case Field::title: return "title";
    case Field::abstract_text: return "abstract";
    case Field::fulltext: return "fulltext";
    }
    return "fulltext";
}

/// Per-field score multipliers. Curated metadata outweighs noisy full text.
struct FieldBoosts {
    double title = 3.0;
    double abstract_text = 2.0;
    double fulltext = 1.0;

    [[nodiscard]] double operator[](Field f) const
    {
        switch (f) {
        case Field::title: return title;
        case Field::abstract_text: return abstract_text;
        case Field::fulltext: return fulltext;
        }
        return fulltext;
    }

    void validate() const
    {
        for (double b : {title, abstract_text, fulltext}) {
            if (!(b > 0.0) || !std::isfinite(b)) {
                throw invalid_argument_error("field boosts must be positive and finite");
            }
        }
    }

    bool operator==(const FieldBoosts&) const = default;
};

struct Posting {
    std::uint32_t doc = 0;                // document number, see Index::doc_id
    std::vector<std::uint32_t> positions;  // token offsets within the field

    [[nodiscard]] std::uint32_t tf() const { return static_cast<std::uint32_t>(positions.size()); }
    bool operator==(const Posting&) const = default;
};

using PostingList = std::vector<Posting>;

class Index;
inline Index build_index(const Corpus& corpus, FieldBoosts boosts = {}, unsigned threads = 1);

/// Per-field inverted index over title, abstract and full text.
///
/// Documents are numbered in ascending doc_id order, so every posting list
/// is sorted by doc_id. Immutable after build_index / load.
///
/// Serialized layout (all integers little-endian, version 1):
///
///     magic "BIBLIDX\0" | u32 version
///     f64 boost[title] | f64 boost[abstract] | f64 boost[fulltext]
///     u32 N | N x (u32 len, bytes doc_id)
///     3 x field:
///         u32 terms | terms x (u32 len, bytes term,
///                              u32 postings | postings x (u32 doc, u32 tf, tf x u32 position))
///
/// Terms are written in byte order. No compatibility promise across versions.
class Index {
public:
    static constexpr std::uint32_t format_version = 1;
    static constexpr std::array<char, 8> magic = {'B', 'I', 'B', 'L', 'I', 'D', 'X', '\0'};

    [[nodiscard]] std::size_t doc_count() const { return doc_ids_.size(); }
    [[nodiscard]] const std::string& doc_id(std::uint32_t doc) const { return doc_ids_.at(doc); }
    [[nodiscard]] const std::vector<std::string>& doc_ids() const { return doc_ids_; }
    [[nodiscard]] const FieldBoosts& boosts() const { return boosts_; }

    [[nodiscard]] std::optional<std::uint32_t> doc_number(std::string_view doc_id) const
    {
        auto it = std::lower_bound(doc_ids_.begin(), doc_ids_.end(), doc_id);
        if (it == doc_ids_.end() || *it != doc_id) {
            return std::nullopt;
        }
        return static_cast<std::uint32_t>(it - doc_ids_.begin());
    }

    [[nodiscard]] const PostingList* postings(Field f, std::string_view term) const
    {
        const auto& field = fields_[static_cast<std::size_t>(f)];
        auto it = field.find(term);
        return it == field.end() ? nullptr : &it->second;
    }

    [[nodiscard]] std::size_t df(Field f, std::string_view term) const
    {
        const auto* list = postings(f, term);
        return list ? list->size() : 0;
    }

    [[nodiscard]] const std::map<std::string, PostingList, std::less<>>& field_postings(Field f) const
    {
        return fields_[static_cast<std::size_t>(f)];
    }

    void save(std::ostream& out) const
    {
        out.write(magic.data(), magic.size());
        put_u32(out, format_version);
        for (Field f : all_fields) {
            put_u64(out, std::bit_cast<std::uint64_t>(boosts_[f]));
        }
        put_u32(out, static_cast<std::uint32_t>(doc_ids_.size()));
        for (const auto& id : doc_ids_) {
            put_string(out, id);
        }
        for (const auto& field : fields_) {
            put_u32(out, static_cast<std::uint32_t>(field.size()));
            for (const auto& [term, list] : field) {
                put_string(out, term);
                put_u32(out, static_cast<std::uint32_t>(list.size()));
                for (const auto& p : list) {
                    put_u32(out, p.doc);
                    put_u32(out, p.tf());
                    for (auto pos : p.positions) {
                        put_u32(out, pos);
                    }
                }
            }
        }
        if (!out) {
            throw data_error("failed writing index");
        }
    }

    static Index load(std::istream& in)
    {
        std::array<char, 8> head{};
        in.read(head.data(), head.size());
        if (!in || head != magic) {
            throw data_error("not an index file (bad magic)");
        }
        if (auto version = get_u32(in); version != format_version) {
            throw data_error("unsupported index version " + std::to_string(version));
        }
        Index idx;
        idx.boosts_.title = std::bit_cast<double>(get_u64(in));
        idx.boosts_.abstract_text = std::bit_cast<double>(get_u64(in));
        idx.boosts_.fulltext = std::bit_cast<double>(get_u64(in));
        auto n = get_u32(in);
        idx.doc_ids_.reserve(n);
        for (std::uint32_t i = 0; i < n; ++i) {
            idx.doc_ids_.push_back(get_string(in));
        }
        for (auto& field : idx.fields_) {
            auto terms = get_u32(in);
            for (std::uint32_t t = 0; t < terms; ++t) {
                auto term = get_string(in);
                auto count = get_u32(in);
                PostingList list;
                list.reserve(count);
                for (std::uint32_t k = 0; k < count; ++k) {
                    Posting p;
                    p.doc = get_u32(in);
                    if (p.doc >= n) {
                        throw data_error("corrupt index: posting for document " + std::to_string(p.doc));
                    }
                    auto tf = get_u32(in);
                    p.positions.resize(tf);
                    for (auto& pos : p.positions) {
                        pos = get_u32(in);
                    }
                    list.push_back(std::move(p));
                }
                field.emplace(std::move(term), std::move(list));
            }
        }
        return idx;
    }

    void save(const std::filesystem::path& path) const
    {
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw data_error("cannot write index file: " + path.string());
        }
        save(out);
    }

    static Index load(const std::filesystem::path& path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            throw data_error("cannot open index file: " + path.string());
        }
        return load(in);
    }

    bool operator==(const Index&) const = default;

private:
    friend Index build_index(const Corpus& corpus, FieldBoosts boosts, unsigned threads);

    static void put_u32(std::ostream& out, std::uint32_t v)
    {
        std::array<char, 4> b{};
        for (int i = 0; i < 4; ++i) {
            b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
        }
        out.write(b.data(), b.size());
    }

    static void put_u64(std::ostream& out, std::uint64_t v)
    {
        put_u32(out, static_cast<std::uint32_t>(v & 0xFFFFFFFFULL));
        put_u32(out, static_cast<std::uint32_t>(v >> 32));
    }

    static void put_string(std::ostream& out, std::string_view s)
    {
        put_u32(out, static_cast<std::uint32_t>(s.size()));
        out.write(s.data(), static_cast<std::streamsize>(s.size()));
    }

    static std::uint32_t get_u32(std::istream& in)
    {
        std::array<unsigned char, 4> b{};
        in.read(reinterpret_cast<char*>(b.data()), b.size());
        if (!in) {
            throw data_error("corrupt index: truncated");
        }
        return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
               (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
    }

    static std::uint64_t get_u64(std::istream& in)
    {
        std::uint64_t lo = get_u32(in);
        std::uint64_t hi = get_u32(in);
        return lo | (hi << 32);
    }

    static std::string get_string(std::istream& in)
    {
        auto len = get_u32(in);
        std::string s(len, '\0');
        in.read(s.data(), len);
        if (!in) {
            throw data_error("corrupt index: truncated string");
        }
        return s;
    }

    std::vector<std::string> doc_ids_;
    std::array<std::map<std::string, PostingList, std::less<>>, 3> fields_;
    FieldBoosts boosts_;
};

namespace detail {

inline std::string_view field_text(const DocumentRecord& doc, Field f)
{
    switch (f) {
    case Field::title: return doc.title;
    case Field::abstract_text: return doc.abstract_text;
    case Field::fulltext: return doc.fulltext ? std::string_view(*doc.fulltext) : std::string_view{};
    }
    return {};
}

using FieldMaps = std::array<std::map<std::string, PostingList, std::less<>>, 3>;

/// Indexes documents [begin, end) of `ordered` (numbered by position).
inline FieldMaps index_range(const std::vector<const DocumentRecord*>& ordered, std::size_t begin, std::size_t end)
{
    FieldMaps maps;
    for (std::size_t d = begin; d < end; ++d) {
        for (Field f : all_fields) {
            auto tokens = tokenize(field_text(*ordered[d], f));
            auto& map = maps[static_cast<std::size_t>(f)];
            for (std::size_t pos = 0; pos < tokens.size(); ++pos) {
                auto& list = map[tokens[pos]];
                if (list.empty() || list.back().doc != d) {
                    list.push_back(Posting{static_cast<std::uint32_t>(d), {}});
                }
                list.back().positions.push_back(static_cast<std::uint32_t>(pos));
            }
        }
    }
    return maps;
}

}  // namespace detail

/// Builds the index with up to `threads` workers (0 = hardware concurrency).
/// Workers take contiguous doc ranges and are merged in range order, so the
/// result does not depend on the thread count.
inline Index build_index(const Corpus& corpus, FieldBoosts boosts, unsigned threads)
{
    boosts.validate();
    Index idx;
    idx.boosts_ = boosts;

    std::vector<const DocumentRecord*> ordered;
    ordered.reserve(corpus.size());
    for (const auto& doc : corpus.documents()) {
        ordered.push_back(&doc);
    }
    std::sort(ordered.begin(), ordered.end(), [](auto* a, auto* b) { return a->doc_id < b->doc_id; });
    for (const auto* doc : ordered) {
        idx.doc_ids_.push_back(doc->doc_id);
    }

    if (threads == 0) {
        threads = std::max(1U, std::thread::hardware_concurrency());
    }
    const std::size_t n = ordered.size();
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, n));
    std::vector<detail::FieldMaps> parts(workers);
    if (workers == 1) {
        parts[0] = detail::index_range(ordered, 0, n);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            std::size_t begin = n * w / workers;
            std::size_t end = n * (w + 1) / workers;
            pool.emplace_back([&parts, &ordered, w, begin, end] { parts[w] = detail::index_range(ordered, begin, end); });
        }
        for (auto& t : pool) {
            t.join();
        }
    }

    for (auto& part : parts) {
        for (std::size_t f = 0; f < part.size(); ++f) {
            for (auto& [term, list] : part[f]) {
                auto& dst = idx.fields_[f][term];
                dst.insert(dst.end(), std::make_move_iterator(list.begin()), std::make_move_iterator(list.end()));
            }
        }
    }
    return idx;
}

}  // namespace biblio
