// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 biblio contributors

#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "biblio/error.hpp"
#include "biblio/names.hpp"
#include "biblio/text.hpp"

namespace biblio {

enum class DocKind { monograph, fulltext_article, abstract_only };

inline std::string_view to_string(DocKind kind)
{
    switch (kind) {
    case DocKind::monograph: return "monograph";
    case DocKind::fulltext_article: return "fulltext_article";
    case DocKind::abstract_only: return "abstract_only";
    }
    return "abstract_only";
}

inline std::optional<DocKind> parse_doc_kind(std::string_view s)
{
    if (s == "monograph") return DocKind::monograph;
    if (s == "fulltext_article") return DocKind::fulltext_article;
    if (s == "abstract_only") return DocKind::abstract_only;
    return std::nullopt;
}

/// One scholarly item. `references` holds citation keys: ids of other
/// records in the same corpus, or opaque external keys.
struct DocumentRecord {
    std::string doc_id;
    DocKind kind = DocKind::abstract_only;
    std::string title;
    std::string abstract_text;
    std::optional<std::string> fulltext;
    std::vector<std::string> authors;
    std::optional<std::string> journal;
    std::optional<int> year;
    std::vector<std::string> references;
};

enum class IngestCode {
    missing_authors,
    missing_journal,
    duplicate_reference,
    unparseable_year,
    invalid_author,
    malformed_line,
    duplicate_doc_id,
    invalid_record,
};

inline std::string_view to_string(IngestCode code)
{
    switch (code) {
    case IngestCode::missing_authors: return "missing_authors";
    case IngestCode::missing_journal: return "missing_journal";
    case IngestCode::duplicate_reference: return "duplicate_reference";
    case IngestCode::unparseable_year: return "unparseable_year";
    case IngestCode::invalid_author: return "invalid_author";
    case IngestCode::malformed_line: return "malformed_line";
    case IngestCode::duplicate_doc_id: return "duplicate_doc_id";
    case IngestCode::invalid_record: return "invalid_record";
    }
    return "invalid_record";
}

struct IngestWarning {
    std::size_t line = 0;  // 1-based physical line
    IngestCode code = IngestCode::malformed_line;
    std::string detail;

    bool operator==(const IngestWarning&) const = default;
};

struct IngestReport {
    std::size_t records_accepted = 0;
    std::size_t records_rejected = 0;
    std::vector<IngestWarning> warnings;
    std::size_t unknown_keys = 0;

    [[nodiscard]] std::size_t count(IngestCode code) const
    {
        return static_cast<std::size_t>(
            std::count_if(warnings.begin(), warnings.end(), [code](const auto& w) { return w.code == code; }));
    }
};

/// Immutable once ingested. Documents keep input order.
class Corpus {
public:
    [[nodiscard]] const DocumentRecord* find(std::string_view doc_id) const
    {
        auto it = by_id_.find(std::string(doc_id));
        return it == by_id_.end() ? nullptr : &docs_[it->second];
    }

    [[nodiscard]] const DocumentRecord& at(std::string_view doc_id) const
    {
        if (const auto* doc = find(doc_id)) {
            return *doc;
        }
        throw unknown_id_error("unknown doc_id: " + std::string(doc_id));
    }

    [[nodiscard]] bool contains(std::string_view doc_id) const { return find(doc_id) != nullptr; }
    [[nodiscard]] const std::vector<DocumentRecord>& documents() const { return docs_; }
    [[nodiscard]] std::size_t size() const { return docs_.size(); }
    [[nodiscard]] bool empty() const { return docs_.empty(); }

    /// Returns false (and leaves the corpus untouched) on a duplicate id.
    bool add(DocumentRecord doc)
    {
        auto [it, inserted] = by_id_.try_emplace(doc.doc_id, docs_.size());
        if (!inserted) {
            return false;
        }
        docs_.push_back(std::move(doc));
        return true;
    }

private:
    std::vector<DocumentRecord> docs_;
    std::unordered_map<std::string, std::size_t> by_id_;
};

struct IngestResult {
    Corpus corpus;
    IngestReport report;
};

namespace detail {

struct malformed {
    std::string why;
};

inline const std::unordered_set<std::string>& known_record_keys()
{
    static const std::unordered_set<std::string> keys = {
        "doc_id", "kind", "title", "abstract", "fulltext", "authors", "journal", "year", "references",
    };
    return keys;
}

inline std::optional<std::string> optional_string(const nlohmann::json& obj, const char* key)
{
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) {
        return std::nullopt;
    }
    if (!it->is_string()) {
        throw malformed{std::string("field '") + key + "' is not a string"};
    }
    return it->get<std::string>();
}

inline std::vector<std::string> string_array(const nlohmann::json& obj, const char* key)
{
    std::vector<std::string> out;
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) {
        return out;
    }
    if (!it->is_array()) {
        throw malformed{std::string("field '") + key + "' is not an array"};
    }
    for (const auto& v : *it) {
        if (!v.is_string()) {
            throw malformed{std::string("field '") + key + "' holds a non-string entry"};
        }
        out.push_back(v.get<std::string>());
    }
    return out;
}

/// Parses one record. Soft problems go to `warnings`; structural ones throw
/// `malformed`.
inline DocumentRecord parse_record(const nlohmann::json& obj, std::size_t line, std::vector<IngestWarning>& warnings,
                                   std::size_t& unknown_keys)
{
    if (!obj.is_object()) {
        throw malformed{"line is not a JSON object"};
    }
    DocumentRecord doc;
    auto id = optional_string(obj, "doc_id");
    if (!id || text::trim(*id).empty()) {
        throw malformed{"missing doc_id"};
    }
    doc.doc_id = std::move(*id);

    if (auto kind = optional_string(obj, "kind")) {
        auto parsed = parse_doc_kind(*kind);
        if (!parsed) {
            throw malformed{"unknown kind '" + *kind + "'"};
        }
        doc.kind = *parsed;
    }
    doc.title = optional_string(obj, "title").value_or("");
    doc.abstract_text = optional_string(obj, "abstract").value_or("");
    doc.fulltext = optional_string(obj, "fulltext");
    if (doc.fulltext && doc.fulltext->empty()) {
        doc.fulltext.reset();
    }

    for (auto& raw : string_array(obj, "authors")) {
        try {
            (void)normalize_author_name(raw);
            doc.authors.push_back(std::move(raw));
        } catch (const invalid_name_error&) {
            warnings.push_back({line, IngestCode::invalid_author, "'" + raw + "'"});
        }
    }
    if (doc.authors.empty()) {
        warnings.push_back({line, IngestCode::missing_authors, {}});
    }

    doc.journal = optional_string(obj, "journal");
    if (doc.journal && text::trim(*doc.journal).empty()) {
        doc.journal.reset();
    }
    if (!doc.journal) {
        warnings.push_back({line, IngestCode::missing_journal, {}});
    }

    if (auto it = obj.find("year"); it != obj.end() && !it->is_null()) {
        if (it->is_number_integer()) {
            doc.year = it->get<int>();
        } else if (it->is_string()) {
            const auto& s = it->get_ref<const std::string&>();
            int value = 0;
            auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
            if (ec == std::errc{} && ptr == s.data() + s.size() && !s.empty()) {
                doc.year = value;
            } else {
                warnings.push_back({line, IngestCode::unparseable_year, s});
            }
        } else {
            warnings.push_back({line, IngestCode::unparseable_year, it->dump()});
        }
    }

    std::unordered_set<std::string> seen;
    for (auto& ref : string_array(obj, "references")) {
        if (text::trim(ref).empty()) {
            throw malformed{"empty reference key"};
        }
        if (!seen.insert(ref).second) {
            warnings.push_back({line, IngestCode::duplicate_reference, ref});
            continue;
        }
        doc.references.push_back(std::move(ref));
    }

    for (const auto& item : obj.items()) {
        if (!known_record_keys().contains(item.key())) {
            ++unknown_keys;
        }
    }
    return doc;
}

}  // namespace detail

/// Reads a JSONL record stream.
///
/// Non-strict: records with soft problems (missing authors or journal,
/// duplicate references, bad year) are kept and the problems reported;
/// malformed lines are rejected with a warning. Strict: any warning rejects
/// the record and a malformed line throws data_error. A repeated doc_id
/// always rejects the later record. Blank lines are skipped and not counted.
inline IngestResult ingest_records(std::istream& in, bool strict)
{
    IngestResult result;
    auto& report = result.report;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (text::trim(line).empty()) {
            continue;
        }
        std::vector<IngestWarning> warnings;
        std::size_t unknown = 0;
        std::optional<DocumentRecord> doc;
        try {
            auto json = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
            if (json.is_discarded()) {
                throw detail::malformed{"not valid JSON"};
            }
            doc = detail::parse_record(json, line_no, warnings, unknown);
        } catch (const detail::malformed& m) {
            if (strict) {
                throw data_error("line " + std::to_string(line_no) + ": malformed record: " + m.why);
            }
            report.warnings.push_back({line_no, IngestCode::malformed_line, m.why});
            ++report.records_rejected;
            continue;
        }
        report.unknown_keys += unknown;

        bool reject = strict && !warnings.empty();
        if (doc->kind == DocKind::fulltext_article && !doc->fulltext) {
            warnings.push_back({line_no, IngestCode::invalid_record, "fulltext_article without fulltext"});
            reject = true;
        }
        if (!reject && result.corpus.contains(doc->doc_id)) {
            warnings.push_back({line_no, IngestCode::duplicate_doc_id, doc->doc_id});
            reject = true;
        }
        report.warnings.insert(report.warnings.end(), warnings.begin(), warnings.end());
        if (reject) {
            ++report.records_rejected;
        } else {
            result.corpus.add(std::move(*doc));
            ++report.records_accepted;
        }
    }
    return result;
}

inline IngestResult ingest_records(std::string_view jsonl, bool strict)
{
    std::istringstream in{std::string(jsonl)};
    return ingest_records(in, strict);
}

inline IngestResult ingest_file(const std::filesystem::path& path, bool strict)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw data_error("cannot open corpus file: " + path.string());
    }
    return ingest_records(in, strict);
}

/// Canonical JSONL line for a record; ingest_records reads it back verbatim.
inline std::string to_jsonl(const DocumentRecord& doc)
{
    nlohmann::ordered_json j;
    j["doc_id"] = doc.doc_id;
    j["kind"] = to_string(doc.kind);
    j["title"] = doc.title;
    j["abstract"] = doc.abstract_text;
    if (doc.fulltext) {
        j["fulltext"] = *doc.fulltext;
    }
    j["authors"] = doc.authors;
    if (doc.journal) {
        j["journal"] = *doc.journal;
    }
    if (doc.year) {
        j["year"] = *doc.year;
    }
    j["references"] = doc.references;
    return j.dump();
}

}  // namespace biblio
