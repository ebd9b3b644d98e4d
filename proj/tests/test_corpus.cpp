#include "bcp/corpus.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <fstream>
#include <set>

using namespace bcp;
using testutil::TempDir;

namespace {

void write(const std::string& path, const std::string& content) {
    std::ofstream f(path);
    f << content;
}

} // namespace

TEST_SUITE("corpus") {

    TEST_CASE("three citation rows and two records read back directly") {
        TempDir dir("corpus_basic");
        write(dir.file("c.csv"), "citing_doi,cited_doi\n"
                                 "10.x/a,10.x/r1\n"
                                 "10.x/a,10.x/r2\n"
                                 "10.x/b,10.x/r1\n");
        write(dir.file("m.jsonl"),
              R"({"doi":"10.x/a","title":"A","date":"1991-02-01","journal":"PRA","authors":["X"]})"
              "\n"
              R"({"doi":"10.x/b","title":"B","date":"1991-03-01","journal":"PRB","authors":["Y"],"pacs":["05.45"],"type":"research"})"
              "\n");
        auto load = load_corpus(dir.file("c.csv"), dir.file("m.jsonl"));
        CHECK(load.corpus.citations().size() == 3);
        CHECK(load.corpus.records().size() == 2);
        CHECK(load.report.malformed_citations == 0);
        CHECK(load.report.malformed_metadata == 0);
        CHECK(load.corpus.references_of("10.x/a") == std::vector<std::string>{"10.x/r1", "10.x/r2"});
        REQUIRE(load.corpus.citers_of("10.x/r1").size() == 2);
        // citing dates resolve only for papers with metadata
        CHECK(load.corpus.citers_of("10.x/r1")[0].date == Date{1991, 2, 1});
    }

    TEST_CASE("malformed lines are counted with line numbers, not dropped silently") {
        TempDir dir("corpus_malformed");
        write(dir.file("c.csv"), "citing_doi,cited_doi\n"
                                 "10.x/a,10.x/r1\n"
                                 "only_one_field\n"
                                 "10.x/b,10.x/r1,extra\n");
        write(dir.file("m.jsonl"), R"({"doi":"10.x/a","title":"A","date":"1991-02-01","journal":"J","authors":[]})"
                                   "\n"
                                   "not json at all\n"
                                   R"({"doi":"10.x/c","title":"C","date":"not-a-date","journal":"J","authors":[]})"
                                   "\n");
        auto load = load_corpus(dir.file("c.csv"), dir.file("m.jsonl"));
        CHECK(load.corpus.citations().size() == 1);
        CHECK(load.report.malformed_citations == 2);
        CHECK(load.report.malformed_citation_lines == std::vector<std::uint64_t>{3, 4});
        CHECK(load.report.malformed_metadata == 2);
        CHECK(load.report.malformed_metadata_lines == std::vector<std::uint64_t>{2, 3});
        CHECK(load.corpus.records().size() == 1);
    }

    TEST_CASE("self-citations and duplicate edges are dropped, dois compare case-insensitively") {
        TempDir dir("corpus_dedup");
        write(dir.file("c.csv"), "citing_doi,cited_doi\n"
                                 "10.x/A,10.x/r1\n"
                                 "10.x/a,10.X/R1\n"
                                 "10.x/a,10.x/A\n");
        write(dir.file("m.jsonl"), "");
        auto load = load_corpus(dir.file("c.csv"), dir.file("m.jsonl"));
        CHECK(load.corpus.citations().size() == 1);
        CHECK(load.report.duplicate_edges_dropped == 1);
        CHECK(load.report.self_citations_dropped == 1);
        CHECK(load.corpus.citations()[0].citing == "10.x/a");
    }

    TEST_CASE("hard errors: missing file, bad header, duplicate metadata doi") {
        TempDir dir("corpus_errors");
        write(dir.file("c.csv"), "citing_doi,cited_doi\n");
        write(dir.file("bad_header.csv"), "from,to\n");
        write(dir.file("m.jsonl"), "");
        write(dir.file("dup.jsonl"),
              R"({"doi":"10.x/a","title":"A","date":"1991","journal":"J","authors":[]})"
              "\n"
              R"({"doi":"10.X/A","title":"A2","date":"1992","journal":"J","authors":[]})"
              "\n");
        CHECK_THROWS(load_corpus(dir.file("nope.csv"), dir.file("m.jsonl")));
        CHECK_THROWS(load_corpus(dir.file("c.csv"), dir.file("nope.jsonl")));
        CHECK_THROWS(load_corpus(dir.file("bad_header.csv"), dir.file("m.jsonl")));
        CHECK_THROWS(load_corpus(dir.file("c.csv"), dir.file("dup.jsonl")));
    }

    TEST_CASE("year_slice keeps research records only and sorts") {
        std::vector<CorpusRecord> records;
        records.push_back(testutil::record("10.x/b", 1991, ArticleType::research));
        records.push_back(testutil::record("10.x/a", 1991, ArticleType::research));
        records.push_back(testutil::record("10.x/e", 1991, ArticleType::editorial));
        records.push_back(testutil::record("10.x/r", 1991, ArticleType::erratum));
        records.push_back(testutil::record("10.x/o", 1991, ArticleType::other));
        records.push_back(testutil::record("10.x/c", 1992, ArticleType::research));
        Corpus corpus(std::move(records), {});
        CHECK(year_slice(corpus, 1991) == std::vector<std::string>{"10.x/a", "10.x/b"});
        CHECK(year_slice(corpus, 1992) == std::vector<std::string>{"10.x/c"});
        CHECK_THROWS(year_slice(corpus, 1892));
        CHECK_THROWS(year_slice(corpus, 1993));
    }

    TEST_CASE("missing type field counts as research") {
        TempDir dir("corpus_notype");
        write(dir.file("c.csv"), "citing_doi,cited_doi\n");
        write(dir.file("m.jsonl"),
              R"({"doi":"10.x/a","title":"A","date":"1991-05-01","journal":"J","authors":[]})"
              "\n");
        auto load = load_corpus(dir.file("c.csv"), dir.file("m.jsonl"));
        CHECK(year_slice(load.corpus, 1991) == std::vector<std::string>{"10.x/a"});
    }

    TEST_CASE("slice sizes over all years sum to the research record count") {
        Rng rng(7);
        std::vector<CorpusRecord> records;
        int research = 0;
        for (int i = 0; i < 200; ++i) {
            auto type = static_cast<ArticleType>(rng.next_index(4));
            research += type == ArticleType::research;
            records.push_back(
                testutil::record("10.x/p" + std::to_string(i),
                                 1980 + static_cast<int>(rng.next_index(10)), type));
        }
        Corpus corpus(std::move(records), {});
        size_t total = 0;
        for (int y = 1980; y <= corpus.max_year(); ++y)
            total += year_slice(corpus, y).size();
        CHECK(total == static_cast<size_t>(research));
    }

    TEST_CASE("citer_index is the exact transpose of the citation edges") {
        Rng rng(11);
        std::vector<CorpusRecord> records;
        for (int i = 0; i < 20; ++i)
            records.push_back(testutil::record("10.x/p" + std::to_string(i), 1990,
                                               ArticleType::research));
        std::vector<CitationEdge> edges;
        for (int i = 0; i < 60; ++i) {
            auto a = rng.next_index(20), b = rng.next_index(20);
            if (a != b)
                edges.push_back({"10.x/p" + std::to_string(a), "10.x/p" + std::to_string(b)});
        }
        Corpus corpus(std::move(records), std::move(edges));
        for (const auto& r : corpus.records()) {
            std::set<std::string> expected;
            for (const auto& e : corpus.citations())
                if (e.cited == r.doi)
                    expected.insert(e.citing);
            std::set<std::string> got;
            for (const auto& c : corpus.citers_of(r.doi))
                got.insert(c.doi);
            CHECK(got == expected);
        }
    }

    TEST_CASE("file-format write-back and cache both round-trip the corpus") {
        TempDir dir("corpus_roundtrip");
        std::vector<CorpusRecord> records;
        records.push_back(testutil::record("10.x/a", 1991, ArticleType::research,
                                           {"05.45", "74.20.-z"}, {"A, B.", "C d"}));
        records.push_back(testutil::record("10.x/b,c\"q", 1992, ArticleType::editorial));
        std::vector<CitationEdge> edges{{"10.x/a", "10.x/zzz"}, {"10.x/b,c\"q", "10.x/a"}};
        Corpus corpus(std::move(records), std::move(edges));

        write_citations_csv(corpus, dir.file("c.csv"));
        write_metadata_jsonl(corpus, dir.file("m.jsonl"));
        auto reload = load_corpus(dir.file("c.csv"), dir.file("m.jsonl"));
        CHECK(reload.corpus == corpus);

        save_corpus_cache(corpus, dir.file("cache.bin"));
        Corpus cached = load_corpus_cache(dir.file("cache.bin"));
        CHECK(cached == corpus);
    }

    TEST_CASE("cache rejects foreign files") {
        TempDir dir("corpus_cache_bad");
        write(dir.file("x.bin"), "not a cache");
        CHECK_THROWS(load_corpus_cache(dir.file("x.bin")));
    }
}
