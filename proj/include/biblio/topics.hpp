// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 biblio contributors

#pragma once

#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "biblio/error.hpp"
#include "biblio/text.hpp"

namespace biblio {

/// A research-interest description and the query rendering it.
/// `seeds` are raw names of the researcher(s) behind the topic; the
/// citation-based re-rankers start from their documents.
struct TopicSpec {
    std::string topic_id;
    std::string description;
    std::string query;
    std::vector<std::string> seeds;

    bool operator==(const TopicSpec&) const = default;
};

/// Topics file: JSONL with topic_id, description, query and optional seeds
/// (array of author strings). Unknown keys are ignored.
inline std::vector<TopicSpec> load_topics(std::istream& in, const std::string& source = "topics")
{
    std::vector<TopicSpec> out;
    std::string line;
    std::size_t line_no = 0;
    auto fail = [&](const std::string& why) {
        throw data_error(source + ":" + std::to_string(line_no) + ": " + why);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (text::trim(line).empty()) {
            continue;
        }
        auto j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            fail("not a JSON object");
        }
        TopicSpec t;
        auto str = [&](const char* key, bool required) -> std::string {
            auto it = j.find(key);
            if (it == j.end() || it->is_null()) {
                if (required) {
                    fail(std::string("missing ") + key);
                }
                return {};
            }
            if (!it->is_string()) {
                fail(std::string(key) + " is not a string");
            }
            return it->get<std::string>();
        };
        t.topic_id = str("topic_id", true);
        t.description = str("description", false);
        t.query = str("query", true);
        if (auto it = j.find("seeds"); it != j.end() && !it->is_null()) {
            if (!it->is_array()) {
                fail("seeds is not an array");
            }
            for (const auto& s : *it) {
                if (!s.is_string()) {
                    fail("seeds holds a non-string entry");
                }
                t.seeds.push_back(s.get<std::string>());
            }
        }
        for (const auto& prev : out) {
            if (prev.topic_id == t.topic_id) {
                fail("duplicate topic_id " + t.topic_id);
            }
        }
        out.push_back(std::move(t));
    }
    return out;
}

inline std::vector<TopicSpec> load_topics(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw data_error("cannot open topics file: " + path.string());
    }
    return load_topics(in, path.string());
}

inline std::string to_jsonl(const TopicSpec& t)
{
    nlohmann::ordered_json j;
    j["topic_id"] = t.topic_id;
    j["description"] = t.description;
    j["query"] = t.query;
    if (!t.seeds.empty()) {
        j["seeds"] = t.seeds;
    }
    return j.dump();
}

}  // namespace biblio
