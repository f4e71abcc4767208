// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 biblio contributors

#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "biblio/cli.hpp"
#include "support.hpp"

using namespace biblio;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Synthetic fixture shared by the cases below.
const std::filesystem::path& synth_dir()
{
    static const auto dir = [] {
        auto d = biblio::testing::scratch_dir("cli_synth");
        std::ostringstream sink;
        const auto r = cli::run(std::vector<std::string>{"synth", "--out", d.string(), "--seed", "11"}, sink, sink);
        REQUIRE(r == 0);
        return d;
    }();
    return dir;
}

}  // namespace

TEST_CASE("usage errors exit 1 and data errors exit 2", "[cli]")
{
    CHECK(call({}).code == 1);
    CHECK(call({"frobnicate"}).code == 1);
    CHECK(call({"rank", "--mode", "bradford"}).code == 1);
    CHECK(call({"search", "--corpus", "x.jsonl"}).code == 1);
    CHECK(call({"rank", "--mode", "sideways", "--corpus", "x"}).code == 1);

    const auto missing = call({"ingest", "--corpus", "/nonexistent/corpus.jsonl"});
    CHECK(missing.code == 2);
    CHECK(missing.err.find("/nonexistent/corpus.jsonl") != std::string::npos);

    const auto corpus = (synth_dir() / "corpus.jsonl").string();
    CHECK(call({"rank", "--corpus", corpus, "--mode", "coupling", "--query", "zz"}).code == 1);
    CHECK(call({"search", "--corpus", corpus, "--query", "\"open"}).code == 2);
}

TEST_CASE("help lists flags with their defaults", "[cli]")
{
    const auto r = call({"eval", "--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("--min-rating") != std::string::npos);
    CHECK(r.out.find("--k") != std::string::npos);
    CHECK(r.out.find("50") != std::string::npos);
    CHECK(r.out.find("tfidf") != std::string::npos);
    CHECK(call({"--help"}).out.find("synth") != std::string::npos);
}

TEST_CASE("ingest reports counts and warnings", "[cli]")
{
    const auto dir = biblio::testing::scratch_dir("cli_ingest");
    std::ofstream(dir / "c.jsonl") << R"({"doc_id":"D1","title":"t","authors":["Kim, A."],"journal":"J"})"
                                   << "\n"
                                   << R"({"doc_id":"D2","title":"t","journal":"J"})"
                                   << "\n";
    const auto r = call({"ingest", "--corpus", (dir / "c.jsonl").string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("records_accepted\t2") != std::string::npos);
    CHECK(r.out.find("missing_authors") != std::string::npos);
    const auto j = call({"ingest", "--corpus", (dir / "c.jsonl").string(), "--format", "json"});
    CHECK(nlohmann::json::parse(j.out)["records_accepted"] == 2);
}

TEST_CASE("eval output equals the library report", "[cli]")
{
    const auto d = synth_dir();
    const auto r = call({"eval", "--corpus", (d / "corpus.jsonl").string(), "--topics", (d / "topics.jsonl").string(),
                         "--gold", (d / "gold.jsonl").string()});
    REQUIRE(r.code == 0);

    const auto corpus = ingest_file(d / "corpus.jsonl", false).corpus;
    const auto rows = evaluate_topics(corpus, build_index(corpus), build_citation_graph(corpus),
                                      load_topics(d / "topics.jsonl"), load_gold(d / "gold.jsonl"), 50, Ranker::tfidf);
    std::ostringstream expected;
    write_report_tsv(expected, coverage_report(rows));
    CHECK(r.out == expected.str());
}

TEST_CASE("--out writes the file instead of stdout", "[cli]")
{
    const auto d = synth_dir();
    const auto target = biblio::testing::scratch_dir("cli_out") / "search.tsv";
    const auto topics = load_topics(d / "topics.jsonl");
    const auto r = call({"search", "--corpus", (d / "corpus.jsonl").string(), "--query", topics.front().query, "--k",
                         "5", "--out", target.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    const auto body = slurp(target);
    CHECK(body.rfind("rank\tdoc_id\tscore\n", 0) == 0);
    CHECK(std::count(body.begin(), body.end(), '\n') == 6);
}

TEST_CASE("a saved index gives the same search output", "[cli]")
{
    const auto d = synth_dir();
    const auto idx = (biblio::testing::scratch_dir("cli_index") / "corpus.idx").string();
    const auto corpus = (d / "corpus.jsonl").string();
    REQUIRE(call({"index", "--corpus", corpus, "--out", idx}).code == 0);
    const auto query = load_topics(d / "topics.jsonl").front().query;
    const auto direct = call({"search", "--corpus", corpus, "--query", query});
    const auto loaded = call({"search", "--index", idx, "--query", query});
    CHECK(direct.code == 0);
    CHECK(direct.out == loaded.out);
    CHECK(call({"index", "--corpus", corpus}).code == 1);
}

TEST_CASE("facets, zones and re-rankers run end to end", "[cli]")
{
    const auto d = synth_dir();
    const auto corpus = (d / "corpus.jsonl").string();
    const auto topic = load_topics(d / "topics.jsonl").front();

    const auto f = call({"facets", "--corpus", corpus, "--dimension", "journal"});
    CHECK(f.code == 0);
    CHECK(f.out.rfind("entity\tcount\n", 0) == 0);
    const auto z = call({"facets", "--corpus", corpus, "--dimension", "journal", "--zones", "3"});
    CHECK(z.code == 0);
    CHECK(z.out.rfind("journal\tarticles\tzone\n", 0) == 0);

    const auto b = call({"rank", "--corpus", corpus, "--mode", "bradford", "--query", topic.query});
    CHECK(b.code == 0);
    CHECK(b.out.rfind("rank\tdoc_id\tscore\toriginal_rank\n", 0) == 0);
    const auto c = call({"rank", "--corpus", corpus, "--mode", "coupling", "--query", topic.query, "--seed-author",
                         topic.seeds.front()});
    CHECK(c.code == 0);
    const auto a = call({"rank", "--corpus", corpus, "--mode", "author-coupling", "--author", topic.seeds.front(),
                         "--limit", "3"});
    CHECK(a.code == 0);
    CHECK(a.out.rfind("author\tstrength\n", 0) == 0);
    CHECK(std::count(a.out.begin(), a.out.end(), '\n') <= 4);
}

TEST_CASE("thread count does not change any output", "[cli][determinism]")
{
    const auto d = synth_dir();
    const auto corpus = (d / "corpus.jsonl").string();
    const auto query = load_topics(d / "topics.jsonl").front().query;
    for (const auto& base : std::vector<std::vector<std::string>>{
             {"search", "--corpus", corpus, "--query", query},
             {"facets", "--corpus", corpus, "--query", query},
             {"eval", "--corpus", corpus, "--topics", (d / "topics.jsonl").string(), "--gold",
              (d / "gold.jsonl").string(), "--format", "json"}}) {
        auto one = base;
        one.insert(one.end(), {"--threads", "1"});
        auto four = base;
        four.insert(four.end(), {"--threads", "4"});
        CHECK(call(one).out == call(four).out);
    }
}

TEST_CASE("a config file supplies subcommand options", "[cli]")
{
    const auto d = synth_dir();
    const auto query = load_topics(d / "topics.jsonl").front().query;
    const auto conf = biblio::testing::scratch_dir("cli_config") / "run.toml";
    std::ofstream(conf) << "[search]\ncorpus = \"" << (d / "corpus.jsonl").string() << "\"\nquery = \"" << query
                        << "\"\nk = 9\n";
    const auto direct = call({"search", "--corpus", (d / "corpus.jsonl").string(), "--query", query, "--k", "3"});
    const auto configured = call({"--config", conf.string(), "search", "--k", "3"});
    CHECK(configured.code == 0);
    CHECK(configured.out == direct.out);
}
