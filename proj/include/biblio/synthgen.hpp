// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 biblio contributors

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "biblio/corpus.hpp"
#include "biblio/error.hpp"
#include "biblio/evaluation.hpp"
#include "biblio/names.hpp"
#include "biblio/tokenizer.hpp"
#include "biblio/topics.hpp"

namespace biblio::synth {

/// Identifier written into truth.json. Bump whenever any sampling step
/// below changes, since fixtures depend on the exact byte stream.
inline constexpr std::string_view rng_algorithm = "mt19937_64/splitmix64-streams/biblio-synth-v1";

inline constexpr std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// std::mt19937_64 (bit-exact by the standard) with hand-written sampling,
/// since <random> distributions differ between standard libraries. Each
/// generation stage draws from its own stream:
/// engine seed = splitmix64(seed ^ splitmix64(stream)).
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream) : engine_(splitmix64(seed ^ splitmix64(stream))) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform in [0, n); n > 0.
    std::size_t below(std::size_t n)
    {
        const auto bound = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t x = next();
        while (x >= limit) {
            x = next();
        }
        return static_cast<std::size_t>(x % bound);
    }

    /// Uniform in [lo, hi].
    std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }

    bool chance(double p) { return uniform() < p; }

    /// Knuth's product method; fine for the small means used here.
    std::size_t poisson(double mean)
    {
        const double limit = std::exp(-mean);
        std::size_t k = 0;
        double p = uniform();
        while (p > limit) {
            ++k;
            p *= uniform();
        }
        return k;
    }

    template <typename T>
    void shuffle(std::vector<T>& v)
    {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[below(i)]);
        }
    }

    template <typename T>
    const T& pick(const std::vector<T>& v)
    {
        return v[below(v.size())];
    }

private:
    std::mt19937_64 engine_;
};

/// Lotka's law table: number of authors with n papers is
/// round_half_up(c1 * n^-alpha), listed from n = 1 until it rounds to 0.
inline std::vector<std::pair<std::size_t, std::size_t>> lotka_counts(double alpha, std::size_t c1)
{
    if (!(alpha > 1.0) || !std::isfinite(alpha)) {
        throw invalid_argument_error("lotka_counts: alpha must be > 1");
    }
    if (c1 < 1) {
        throw invalid_argument_error("lotka_counts: c1 must be >= 1");
    }
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t n = 1;; ++n) {
        const double expected = static_cast<double>(c1) * std::pow(static_cast<double>(n), -alpha);
        const auto count = static_cast<std::size_t>(std::floor(expected + 0.5));
        if (count == 0) {
            break;
        }
        out.emplace_back(n, count);
    }
    return out;
}

/// Journal layout following Bradford's law: zone z holds about m^(z-1)
/// journals and each zone is meant to yield the same number of documents.
struct BradfordPlan {
    std::vector<std::size_t> zone_sizes;  // journals per non-empty zone
    std::vector<std::size_t> zone_of;     // 1-based zone per journal
    std::vector<double> weight;           // document probability per journal, sums to 1
};

/// With exactly 1 + m + ... + m^(zones-1) journals the zone sizes are the
/// geometric series. Fewer journals fill zones in order and the tail zones
/// collapse; more journals scale the series (largest remainder, every zone
/// at least one journal).
inline BradfordPlan bradford_assign(std::size_t n_journals, std::size_t m, std::size_t zones)
{
    if (n_journals < 1 || m < 2 || zones < 1) {
        throw invalid_argument_error("bradford_assign: need n_journals >= 1, m >= 2, zones >= 1");
    }
    std::vector<double> ideal;
    double total = 0.0;
    for (std::size_t z = 0; z < zones; ++z) {
        ideal.push_back(std::pow(static_cast<double>(m), static_cast<double>(z)));
        total += ideal.back();
    }

    std::vector<std::size_t> sizes(zones, 0);
    if (static_cast<double>(n_journals) <= total) {
        std::size_t remaining = n_journals;
        for (std::size_t z = 0; z < zones && remaining > 0; ++z) {
            sizes[z] = std::min(remaining, static_cast<std::size_t>(ideal[z]));
            remaining -= sizes[z];
        }
    } else {
        std::vector<std::pair<double, std::size_t>> remainders;
        std::size_t assigned = 0;
        for (std::size_t z = 0; z < zones; ++z) {
            const double exact = static_cast<double>(n_journals) * ideal[z] / total;
            sizes[z] = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(exact)));
            assigned += sizes[z];
            remainders.emplace_back(exact - std::floor(exact), z);
        }
        std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) {
                return a.first > b.first;
            }
            return a.second > b.second;
        });
        for (std::size_t i = 0; assigned < n_journals; i = (i + 1) % remainders.size()) {
            ++sizes[remainders[i].second];
            ++assigned;
        }
        for (std::size_t z = zones; z-- > 0 && assigned > n_journals;) {
            while (sizes[z] > 1 && assigned > n_journals) {
                --sizes[z];
                --assigned;
            }
        }
    }
    std::erase(sizes, std::size_t{0});

    BradfordPlan plan;
    plan.zone_sizes = sizes;
    const double share = 1.0 / static_cast<double>(sizes.size());
    for (std::size_t z = 0; z < sizes.size(); ++z) {
        for (std::size_t j = 0; j < sizes[z]; ++j) {
            plan.zone_of.push_back(z + 1);
            plan.weight.push_back(share / static_cast<double>(sizes[z]));
        }
    }
    return plan;
}

struct SynthParams {
    std::uint64_t seed = 42;
    std::size_t n_docs = 500;
    std::size_t n_authors = 120;
    double lotka_alpha = 2.0;
    std::size_t n_journals = 13;
    std::size_t bradford_m = 3;
    std::size_t zones = 3;
    double refs_per_doc = 8.0;
    std::size_t vocabulary = 400;
    std::size_t planted_topics = 4;
    double authors_per_doc = 2.0;
    std::size_t k = 50;  // cut-off used for the truth rows

    void validate() const
    {
        if (n_docs < 1 || n_authors < 1 || n_journals < 1 || vocabulary < 1 || zones < 1 || k < 1) {
            throw invalid_argument_error("synth: counts must be positive");
        }
        if (!(lotka_alpha > 1.0) || !std::isfinite(lotka_alpha)) {
            throw invalid_argument_error("synth: lotka_alpha must be > 1");
        }
        if (bradford_m < 2) {
            throw invalid_argument_error("synth: bradford_m must be >= 2");
        }
        if (!(refs_per_doc >= 0.0) || refs_per_doc > 200.0) {
            throw invalid_argument_error("synth: refs_per_doc must be in [0, 200]");
        }
        if (!(authors_per_doc >= 1.0) || authors_per_doc > 20.0) {
            throw invalid_argument_error("synth: authors_per_doc must be in [1, 20]");
        }
    }

    /// small (= default): 500 docs, ~120 authors. medium: 5,000 docs.
    /// large: 10,000 docs and 10,000 authors.
    static SynthParams profile(std::string_view name)
    {
        SynthParams p;
        if (name == "small" || name == "default") {
            return p;
        }
        if (name == "medium") {
            p.n_docs = 5000;
            p.n_authors = 1500;
            p.n_journals = 40;
            p.vocabulary = 1500;
            p.planted_topics = 6;
            return p;
        }
        if (name == "large") {
            p.n_docs = 10000;
            p.n_authors = 10000;
            p.vocabulary = 3000;
            p.planted_topics = 10;
            return p;
        }
        throw usage_error("unknown synth profile '" + std::string(name) + "' (small, default, medium, large)");
    }

    [[nodiscard]] nlohmann::ordered_json to_json() const
    {
        return {{"seed", seed},
                {"n_docs", n_docs},
                {"n_authors", n_authors},
                {"lotka_alpha", lotka_alpha},
                {"n_journals", n_journals},
                {"bradford_m", bradford_m},
                {"zones", zones},
                {"refs_per_doc", refs_per_doc},
                {"vocabulary", vocabulary},
                {"planted_topics", planted_topics},
                {"authors_per_doc", authors_per_doc},
                {"k", k}};
    }
};

enum class Placement { subset, corpus_only, absent };

inline std::string_view to_string(Placement p)
{
    switch (p) {
    case Placement::subset: return "subset";
    case Placement::corpus_only: return "corpus_only";
    case Placement::absent: return "absent";
    }
    return "absent";
}

struct GoldPlacement {
    std::string raw;
    Placement placement = Placement::absent;
    bool important = false;
    std::vector<std::string> docs;  // every corpus document of the author, sorted
};

struct PlantedTopic {
    TopicSpec topic;
    GoldSet gold;
    std::vector<std::string> subset;  // sorted
    std::vector<std::string> topk;    // TF-IDF order
    std::vector<GoldPlacement> placements;
    CoverageRow expected;             // TF-IDF ranker, k = params.k
};

struct SynthTruth {
    std::string rng;
    SynthParams params;
    std::vector<PlantedTopic> topics;
    std::size_t authors = 0;           // distinct corpus authors
    std::vector<std::size_t> journal_zone;  // planned zone per journal index
};

struct SynthOutput {
    std::string corpus_jsonl;
    std::string topics_jsonl;
    std::string gold_jsonl;
    std::string truth_json;
    SynthTruth truth;
};

namespace detail {

enum Stream : std::uint64_t {
    words = 1,
    names = 2,
    authorship = 3,
    journals = 4,
    membership = 5,
    text = 6,
    citations = 7,
    gold = 8,
    kinds = 9,
};

/// Pronounceable lowercase pseudo-words that survive tokenize() unchanged
/// (no stop words, already Porter stems), all distinct.
class WordSource {
public:
    WordSource(std::uint64_t seed, std::uint64_t stream) : rng_(seed, stream) {}

    std::string next()
    {
        static constexpr std::string_view onset = "bdfgklmnprstvz";
        static constexpr std::string_view vowel = "aeiou";
        static constexpr std::string_view coda = "kpxz";
        while (true) {
            std::string w;
            const std::size_t syllables = rng_.between(2, 3);
            for (std::size_t s = 0; s < syllables; ++s) {
                w += onset[rng_.below(onset.size())];
                w += vowel[rng_.below(vowel.size())];
            }
            w += coda[rng_.below(coda.size())];
            if (used_.contains(w)) {
                continue;
            }
            auto toks = tokenize(w);
            if (toks.size() != 1 || toks.front() != w) {
                continue;
            }
            used_.insert(w);
            return w;
        }
    }

private:
    Rng rng_;
    std::unordered_set<std::string> used_;
};

struct Person {
    std::string surname;  // capitalized
    std::string initials;  // uppercase letters

    [[nodiscard]] NormalizedName key() const { return normalize_author_name(comma_form()); }

    [[nodiscard]] std::string comma_form() const
    {
        std::string s = surname + ",";
        for (char c : initials) {
            s += ' ';
            s += c;
            s += '.';
        }
        return s;
    }

    /// One of several spellings that normalize to the same key, or, when
    /// `abbreviate`, to a key whose initials are a prefix of it.
    [[nodiscard]] std::string spelling(std::size_t variant, bool abbreviate = false) const
    {
        const std::string ini = abbreviate ? initials.substr(0, 1) : initials;
        std::string dotted;
        std::string spaced;
        for (char c : ini) {
            dotted += c;
            dotted += '.';
            spaced += c;
            spaced += ' ';
        }
        switch (variant % 4) {
        case 0: {
            std::string s = surname + ",";
            for (char c : ini) {
                s += ' ';
                s += c;
                s += '.';
            }
            return s;
        }
        case 1: {
            std::string s;
            for (char c : ini) {
                s += c;
                s += ". ";
            }
            return s + surname;
        }
        case 2: return spaced + surname;
        default: return surname + " " + dotted;
        }
    }
};

inline std::string capitalize(std::string w)
{
    if (!w.empty()) {
        w[0] = static_cast<char>(w[0] - 'a' + 'A');
    }
    return w;
}

inline std::size_t lotka_total(double alpha, std::size_t c1)
{
    std::size_t total = 0;
    for (auto [n, count] : lotka_counts(alpha, c1)) {
        total += count;
    }
    return total;
}

/// c1 whose Lotka table has the author total closest to `target`.
inline std::size_t fit_lotka_c1(double alpha, std::size_t target)
{
    std::size_t lo = 1;
    std::size_t hi = std::max<std::size_t>(1, target);
    while (lo < hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        if (lotka_total(alpha, mid) >= target) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    if (lo > 1) {
        auto above = lotka_total(alpha, lo);
        auto below = lotka_total(alpha, lo - 1);
        if (target - below < above - target) {
            return lo - 1;
        }
    }
    return lo;
}

struct DocDraft {
    std::vector<std::size_t> authors;  // person indices
    std::size_t journal = 0;
    DocKind kind = DocKind::abstract_only;
    std::vector<std::string> refs;
    std::vector<std::size_t> topic_level;  // 0 = not in topic subset
    std::vector<int> decoy;                // per topic: 0 none, 1 first term, 2 second term
};

struct TopicDraft {
    std::string term_a;
    std::string term_b;
    std::vector<std::string> pool;
    std::vector<std::string> core_refs;
    std::size_t seed_author = 0;
    std::vector<std::size_t> related;      // gold authors placed in the subset
    std::vector<std::size_t> corpus_only;  // gold authors kept out of the subset
};

inline void append_words(std::string& out, const std::vector<std::string>& words)
{
    for (const auto& w : words) {
        if (!out.empty()) {
            out += ' ';
        }
        out += w;
    }
}

}  // namespace detail

/// Builds a seeded synthetic corpus with planted topics and their ground
/// truth.
///
/// - Author productivity realizes a Lotka table exactly (scaled by a common
///   factor so the corpus has about `authors_per_doc` bylines per document).
/// - Journals are drawn from a Bradford plan.
/// - References go to earlier documents with preferential attachment, plus
///   an external key pool with the same rich-get-richer rule.
/// - Each planted topic owns two query terms. Subset documents carry both
///   (title tf = a random level 1..4, abstract tf = 1); other documents carry
///   at most one. Hence the subset is exactly the query's match set and the
///   TF-IDF order inside it is (level desc, doc_id asc).
/// - A seed author (the researcher) has all documents in the subset and
///   cites the topic's core references; related gold authors do too, so
///   coupling with the seed surfaces them.
inline SynthOutput generate_corpus(const SynthParams& params)
{
    params.validate();
    using namespace detail;
    const std::uint64_t seed = params.seed;
    const std::size_t n_docs = params.n_docs;

    // Vocabulary and topic terms.
    WordSource words(seed, Stream::words);
    std::vector<std::string> background;
    for (std::size_t i = 0; i < params.vocabulary; ++i) {
        background.push_back(words.next());
    }
    std::vector<TopicDraft> topics(params.planted_topics);
    for (auto& t : topics) {
        t.term_a = words.next();
        t.term_b = words.next();
        for (int i = 0; i < 12; ++i) {
            t.pool.push_back(words.next());
        }
    }

    // People: corpus authors first, then absent gold authors on demand.
    WordSource surnames(seed, Stream::names);
    Rng name_rng(seed, Stream::names);
    auto make_person = [&] {
        Person p;
        p.surname = capitalize(surnames.next());
        const std::size_t n_initials = name_rng.between(1, 2);
        for (std::size_t i = 0; i < n_initials; ++i) {
            p.initials += static_cast<char>('A' + name_rng.below(26));
        }
        return p;
    };

    const std::size_t c1 = fit_lotka_c1(params.lotka_alpha, params.n_authors);
    std::vector<std::size_t> productivity;
    for (auto [n, count] : lotka_counts(params.lotka_alpha, c1)) {
        productivity.insert(productivity.end(), count, n);
    }
    std::vector<Person> people;
    for (std::size_t i = 0; i < productivity.size(); ++i) {
        people.push_back(make_person());
    }
    const std::size_t n_corpus_people = people.size();

    std::size_t base_slots = 0;
    std::size_t max_prod = 1;
    for (auto p : productivity) {
        base_slots += p;
        max_prod = std::max(max_prod, p);
    }
    std::size_t scale = static_cast<std::size_t>(
        std::llround(static_cast<double>(n_docs) * params.authors_per_doc / static_cast<double>(base_slots)));
    scale = std::max<std::size_t>({scale, 1, (n_docs + base_slots - 1) / base_slots});
    scale = std::max<std::size_t>(1, std::min(scale, n_docs / max_prod));

    // Authorship: every author gets exactly scale * productivity documents.
    std::vector<DocDraft> docs(n_docs);
    {
        Rng rng(seed, Stream::authorship);
        std::vector<std::size_t> slots;
        for (std::size_t a = 0; a < productivity.size(); ++a) {
            slots.insert(slots.end(), std::min(scale * productivity[a], n_docs), a);
        }
        rng.shuffle(slots);
        std::size_t next_slot = 0;
        for (std::size_t d = 0; d < n_docs && next_slot < slots.size(); ++d, ++next_slot) {
            docs[d].authors.push_back(slots[next_slot]);
        }
        for (; next_slot < slots.size(); ++next_slot) {
            const std::size_t a = slots[next_slot];
            std::size_t d = rng.below(n_docs);
            while (std::find(docs[d].authors.begin(), docs[d].authors.end(), a) != docs[d].authors.end()) {
                d = (d + 1) % n_docs;
            }
            docs[d].authors.push_back(a);
        }
        for (auto& doc : docs) {
            if (doc.authors.empty()) {
                doc.authors.push_back(rng.below(n_corpus_people));
            }
        }
    }
    std::vector<std::vector<std::size_t>> docs_of(n_corpus_people);
    for (std::size_t d = 0; d < n_docs; ++d) {
        for (auto a : docs[d].authors) {
            docs_of[a].push_back(d);
        }
    }

    // Journals and kinds.
    const auto plan = bradford_assign(params.n_journals, params.bradford_m, params.zones);
    {
        Rng rng(seed, Stream::journals);
        std::vector<double> cumulative;
        double acc = 0.0;
        for (double w : plan.weight) {
            acc += w;
            cumulative.push_back(acc);
        }
        for (auto& doc : docs) {
            const double u = rng.uniform() * acc;
            auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
            doc.journal = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), plan.weight.size() - 1);
        }
        Rng kinds(seed, Stream::kinds);
        for (auto& doc : docs) {
            const double u = kinds.uniform();
            doc.kind = u < 0.1 ? DocKind::monograph : (u < 0.4 ? DocKind::fulltext_article : DocKind::abstract_only);
        }
    }

    // Topic membership, seeds and gold authors.
    Rng member_rng(seed, Stream::membership);
    Rng gold_rng(seed, Stream::gold);
    for (auto& doc : docs) {
        doc.topic_level.assign(topics.size(), 0);
        doc.decoy.assign(topics.size(), 0);
    }
    std::vector<std::vector<char>> in_subset(topics.size(), std::vector<char>(n_docs, 0));
    for (std::size_t t = 0; t < topics.size(); ++t) {
        auto& topic = topics[t];
        auto& member = in_subset[t];
        const double fraction = 0.15 + 0.10 * member_rng.uniform();
        for (std::size_t d = 0; d < n_docs; ++d) {
            member[d] = member_rng.chance(fraction) ? 1 : 0;
        }
        std::vector<char> forced_in(n_docs, 0);

        std::vector<std::size_t> order(n_corpus_people);
        for (std::size_t a = 0; a < order.size(); ++a) {
            order[a] = a;
        }
        gold_rng.shuffle(order);
        std::vector<char> taken(n_corpus_people, 0);

        // Seed: prefer a productive author.
        std::size_t seed_author = order.front();
        for (auto a : order) {
            if (docs_of[a].size() >= 2 * scale && docs_of[a].size() <= n_docs / 4) {
                seed_author = a;
                break;
            }
        }
        topic.seed_author = seed_author;
        taken[seed_author] = 1;
        for (auto d : docs_of[seed_author]) {
            member[d] = 1;
            forced_in[d] = 1;
        }

        for (auto a : order) {
            if (topic.related.size() >= 5) {
                break;
            }
            if (taken[a]) {
                continue;
            }
            taken[a] = 1;
            topic.related.push_back(a);
            const auto& own = docs_of[a];
            const std::size_t want = std::min<std::size_t>(own.size(), gold_rng.between(1, 2));
            for (std::size_t i = 0; i < want; ++i) {
                const auto d = own[gold_rng.below(own.size())];
                member[d] = 1;
                forced_in[d] = 1;
            }
        }
        for (auto a : order) {
            if (topic.corpus_only.size() >= 2) {
                break;
            }
            if (taken[a]) {
                continue;
            }
            const auto& own = docs_of[a];
            if (std::any_of(own.begin(), own.end(), [&](std::size_t d) { return forced_in[d] != 0; })) {
                continue;
            }
            taken[a] = 1;
            topic.corpus_only.push_back(a);
            for (auto d : own) {
                member[d] = 0;
            }
        }
        for (std::size_t d = 0; d < n_docs; ++d) {
            if (member[d]) {
                docs[d].topic_level[t] = member_rng.between(1, 4);
            } else if (member_rng.chance(0.2)) {
                docs[d].decoy[t] = member_rng.chance(0.5) ? 1 : 2;
            }
        }
        for (int j = 0; j < 6; ++j) {
            topic.core_refs.push_back("XT" + std::to_string(t + 1) + "-" + std::to_string(j + 1));
        }
    }

    // Citations: preferential attachment to earlier docs and to external keys.
    const int id_width = std::max(6, static_cast<int>(std::to_string(n_docs).size()));
    auto doc_id = [&](std::size_t d) {
        std::string digits = std::to_string(d + 1);
        return "D" + std::string(static_cast<std::size_t>(id_width) - digits.size(), '0') + digits;
    };
    {
        Rng rng(seed, Stream::citations);
        std::vector<std::size_t> internal_urn;
        std::vector<std::size_t> external_urn;
        std::size_t external_keys = 0;
        auto external_id = [](std::size_t x) {
            std::string digits = std::to_string(x + 1);
            return "X" + std::string(digits.size() < 6 ? 6 - digits.size() : 0, '0') + digits;
        };
        for (std::size_t d = 0; d < n_docs; ++d) {
            auto& doc = docs[d];
            std::set<std::string> chosen;
            std::vector<std::size_t> cited_internal;
            std::vector<std::size_t> cited_external;
            const std::size_t want = rng.poisson(params.refs_per_doc);
            for (std::size_t r = 0, attempts = 0; r < want && attempts < 4 * want + 8; ++attempts) {
                std::string key;
                if (d == 0 || rng.chance(0.3)) {
                    std::size_t x = 0;
                    if (external_urn.empty() || rng.chance(0.3)) {
                        x = external_keys++;
                    } else {
                        x = rng.pick(external_urn);
                    }
                    key = external_id(x);
                    if (chosen.insert(key).second) {
                        cited_external.push_back(x);
                        ++r;
                    }
                } else {
                    std::size_t target = 0;
                    if (internal_urn.empty() || rng.chance(0.25)) {
                        target = rng.below(d);
                    } else {
                        target = rng.pick(internal_urn);
                    }
                    key = doc_id(target);
                    if (chosen.insert(key).second) {
                        cited_internal.push_back(target);
                        ++r;
                    }
                }
            }
            internal_urn.insert(internal_urn.end(), cited_internal.begin(), cited_internal.end());
            external_urn.insert(external_urn.end(), cited_external.begin(), cited_external.end());

            // Planted shared references for seeds and related gold authors.
            for (std::size_t t = 0; t < topics.size(); ++t) {
                if (!docs[d].topic_level[t]) {
                    continue;
                }
                const auto& topic = topics[t];
                auto writes = [&](std::size_t a) {
                    return std::find(doc.authors.begin(), doc.authors.end(), a) != doc.authors.end();
                };
                bool planted = writes(topic.seed_author) ||
                               std::any_of(topic.related.begin(), topic.related.end(), writes);
                if (!planted) {
                    continue;
                }
                std::vector<std::string> core = topic.core_refs;
                rng.shuffle(core);
                const std::size_t take = writes(topic.seed_author) ? 4 : rng.between(2, 3);
                for (std::size_t i = 0; i < take && i < core.size(); ++i) {
                    chosen.insert(core[i]);
                }
            }
            doc.refs.assign(chosen.begin(), chosen.end());
            rng.shuffle(doc.refs);
        }
    }

    // Text.
    std::vector<DocumentRecord> records(n_docs);
    {
        Rng rng(seed, Stream::text);
        auto sample = [&](std::vector<std::string>& out, const std::vector<std::string>& from, std::size_t n) {
            for (std::size_t i = 0; i < n; ++i) {
                out.push_back(rng.pick(from));
            }
        };
        for (std::size_t d = 0; d < n_docs; ++d) {
            const auto& draft = docs[d];
            auto& rec = records[d];
            rec.doc_id = doc_id(d);
            rec.kind = draft.kind;
            std::vector<std::string> title;
            std::vector<std::string> abstract;
            std::vector<std::string> full;
            sample(title, background, rng.between(3, 6));
            sample(abstract, background, rng.between(12, 25));
            if (draft.kind == DocKind::fulltext_article) {
                sample(full, background, rng.between(40, 80));
            }
            for (std::size_t t = 0; t < topics.size(); ++t) {
                const auto& topic = topics[t];
                if (const auto level = draft.topic_level[t]) {
                    title.insert(title.end(), level, topic.term_a);
                    title.insert(title.end(), level, topic.term_b);
                    sample(title, topic.pool, 2);
                    abstract.push_back(topic.term_a);
                    abstract.push_back(topic.term_b);
                    sample(abstract, topic.pool, 5);
                    if (!full.empty()) {
                        sample(full, topic.pool, 6);
                    }
                } else if (draft.decoy[t] != 0) {
                    const auto& term = draft.decoy[t] == 1 ? topic.term_a : topic.term_b;
                    switch (rng.below(3)) {
                    case 0: title.push_back(term); break;
                    case 1: abstract.push_back(term); break;
                    default: (full.empty() ? abstract : full).push_back(term); break;
                    }
                }
            }
            append_words(rec.title, title);
            rec.title[0] = static_cast<char>(rec.title[0] - 'a' + 'A');
            append_words(rec.abstract_text, abstract);
            if (!full.empty()) {
                std::string body;
                append_words(body, full);
                rec.fulltext = std::move(body);
            }
            for (auto a : draft.authors) {
                rec.authors.push_back(people[a].spelling(rng.below(4)));
            }
            rec.journal = "Synthetic Journal " + std::string(draft.journal + 1 < 10 ? "0" : "") +
                          std::to_string(draft.journal + 1);
            rec.year = 1990 + static_cast<int>(20 * d / n_docs);
            rec.references = draft.refs;
        }
    }

    // Truth and gold files.
    SynthTruth truth;
    truth.rng = std::string(rng_algorithm);
    truth.params = params;
    truth.authors = n_corpus_people;
    truth.journal_zone = plan.zone_of;
    std::string topics_jsonl;
    std::string gold_jsonl;
    for (std::size_t t = 0; t < topics.size(); ++t) {
        const auto& draft = topics[t];
        PlantedTopic planted;
        char id[32];
        std::snprintf(id, sizeof id, "syn%03zu", t + 1);
        planted.topic.topic_id = id;
        planted.topic.description = "Synthetic planted topic " + std::to_string(t + 1) + " (pool: " +
                                    draft.pool[0] + ", " + draft.pool[1] + ", " + draft.pool[2] + ")";
        planted.topic.query = draft.term_a + " " + draft.term_b;
        planted.topic.seeds.push_back(people[draft.seed_author].comma_form());
        planted.gold.topic_id = planted.topic.topic_id;

        std::vector<std::pair<std::size_t, std::size_t>> ranked;  // (level, doc)
        for (std::size_t d = 0; d < n_docs; ++d) {
            if (docs[d].topic_level[t]) {
                planted.subset.push_back(records[d].doc_id);
                ranked.emplace_back(docs[d].topic_level[t], d);
            }
        }
        std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) {
                return a.first > b.first;
            }
            return a.second < b.second;
        });
        for (std::size_t i = 0; i < ranked.size() && i < params.k; ++i) {
            planted.topk.push_back(records[ranked[i].second].doc_id);
        }

        // Related: four important (one explicit without rating), one not.
        // Corpus-only: important. Absent: one explicit, one unimportant.
        auto add_gold = [&](const Person& person, Placement placement, const std::vector<std::size_t>& own,
                            std::optional<int> rating, bool named_explicitly, bool abbreviate) {
            GoldAuthor g;
            g.raw = person.spelling(gold_rng.below(4), abbreviate);
            g.name = normalize_author_name(g.raw);
            g.rating = rating;
            g.named_explicitly = named_explicitly;
            GoldPlacement p;
            p.raw = g.raw;
            p.placement = placement;
            p.important = ImportanceRule{}.important(g);
            for (auto d : own) {
                p.docs.push_back(records[d].doc_id);
            }
            std::sort(p.docs.begin(), p.docs.end());
            planted.gold.authors.push_back(std::move(g));
            planted.placements.push_back(std::move(p));
        };
        for (std::size_t i = 0; i < draft.related.size(); ++i) {
            const auto a = draft.related[i];
            const bool abbreviate = people[a].initials.size() > 1 && gold_rng.chance(0.3);
            if (i == draft.related.size() - 1 && draft.related.size() > 1) {
                add_gold(people[a], Placement::subset, docs_of[a], static_cast<int>(gold_rng.between(1, 4)), false,
                         abbreviate);
            } else if (i == 0) {
                add_gold(people[a], Placement::subset, docs_of[a], std::nullopt, true, abbreviate);
            } else {
                add_gold(people[a], Placement::subset, docs_of[a], static_cast<int>(gold_rng.between(5, 10)),
                         gold_rng.chance(0.3), abbreviate);
            }
        }
        for (auto a : draft.corpus_only) {
            add_gold(people[a], Placement::corpus_only, docs_of[a], static_cast<int>(gold_rng.between(5, 10)), false,
                     false);
        }
        {
            Person novice = make_person();
            people.push_back(novice);
            add_gold(novice, Placement::absent, {}, static_cast<int>(gold_rng.between(5, 10)), true, false);
            Person other = make_person();
            people.push_back(other);
            add_gold(other, Placement::absent, {}, static_cast<int>(gold_rng.between(1, 4)), false, false);
        }

        // Expected row, straight from the construction.
        auto& row = planted.expected;
        row.topic_id = planted.topic.topic_id;
        row.k = params.k;
        row.subset_size = planted.subset.size();
        std::set<std::string> iad;
        auto contains = [](const std::vector<std::string>& pool, const std::string& id) {
            return std::find(pool.begin(), pool.end(), id) != pool.end();
        };
        for (const auto& p : planted.placements) {
            if (!p.important) {
                continue;
            }
            ++row.ia_named;
            bool corpus = !p.docs.empty();
            bool subset = false;
            bool topk = false;
            for (const auto& doc : p.docs) {
                subset = subset || contains(planted.subset, doc);
                topk = topk || contains(planted.topk, doc);
                iad.insert(doc);
            }
            row.ia_in_corpus += corpus ? 1 : 0;
            row.ia_in_subset += subset ? 1 : 0;
            row.ia_in_topk += topk ? 1 : 0;
        }
        for (const auto& doc : iad) {
            ++row.iad_in_corpus;
            row.iad_in_subset += contains(planted.subset, doc) ? 1 : 0;
            row.iad_in_topk += contains(planted.topk, doc) ? 1 : 0;
        }

        topics_jsonl += to_jsonl(planted.topic) + "\n";
        for (const auto& g : planted.gold.authors) {
            gold_jsonl += to_jsonl(planted.gold.topic_id, g) + "\n";
        }
        truth.topics.push_back(std::move(planted));
    }

    SynthOutput out;
    for (const auto& rec : records) {
        out.corpus_jsonl += to_jsonl(rec);
        out.corpus_jsonl += '\n';
    }
    out.topics_jsonl = std::move(topics_jsonl);
    out.gold_jsonl = std::move(gold_jsonl);

    nlohmann::ordered_json tj;
    tj["rng"] = truth.rng;
    tj["params"] = params.to_json();
    tj["authors"] = truth.authors;
    tj["journal_zones"] = truth.journal_zone;
    auto tarr = nlohmann::ordered_json::array();
    for (const auto& p : truth.topics) {
        nlohmann::ordered_json t;
        t["topic_id"] = p.topic.topic_id;
        t["query"] = p.topic.query;
        t["seeds"] = p.topic.seeds;
        t["subset"] = p.subset;
        t["topk"] = p.topk;
        auto gold = nlohmann::ordered_json::array();
        for (const auto& g : p.placements) {
            gold.push_back({{"author", g.raw},
                            {"placement", to_string(g.placement)},
                            {"important", g.important},
                            {"docs", g.docs}});
        }
        t["gold"] = std::move(gold);
        t["expected_row"] = row_json(p.expected);
        t["expected_row"].erase("gold_audit");
        tarr.push_back(std::move(t));
    }
    tj["topics"] = std::move(tarr);
    out.truth_json = tj.dump(2) + "\n";
    out.truth = std::move(truth);
    return out;
}

/// Writes corpus.jsonl, topics.jsonl, gold.jsonl and truth.json into `dir`.
inline void write_output(const std::filesystem::path& dir, const SynthOutput& out)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw data_error("cannot create output directory " + dir.string() + ": " + ec.message());
    }
    auto write = [&](const char* name, const std::string& body) {
        std::ofstream f(dir / name, std::ios::binary);
        if (!f) {
            throw data_error("cannot write " + (dir / name).string());
        }
        f << body;
    };
    write("corpus.jsonl", out.corpus_jsonl);
    write("topics.jsonl", out.topics_jsonl);
    write("gold.jsonl", out.gold_jsonl);
    write("truth.json", out.truth_json);
}

}  // namespace biblio::synth
