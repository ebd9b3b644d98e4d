#pragma once

#include "bcp/util.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace bcp {

enum class ArticleType : std::uint8_t { research, editorial, erratum, other };

const char* article_type_name(ArticleType t);
// unrecognized strings map to `other`; missing field means research
ArticleType article_type_from(std::string_view s);

struct CorpusRecord {
    std::string doi; // normalized (trimmed, lowercase)
    std::string title;
    Date date;
    std::string journal;
    std::vector<std::string> authors;
    std::vector<std::string> pacs;
    ArticleType type = ArticleType::research;

    bool operator==(const CorpusRecord&) const = default;
};

struct CitationEdge {
    std::string citing;
    std::string cited;

    bool operator==(const CitationEdge&) const = default;
};

struct Citer {
    std::string doi;
    std::optional<Date> date; // present only when the citing paper has a metadata record
};

// Immutable once loaded; safe to share across threads.
class Corpus {
  public:
    Corpus() = default;
    Corpus(std::vector<CorpusRecord> records, std::vector<CitationEdge> edges);

    const std::vector<CorpusRecord>& records() const { return records_; }
    // edges are deduplicated and sorted by (citing, cited)
    const std::vector<CitationEdge>& citations() const { return edges_; }

    const CorpusRecord* find(std::string_view doi) const;

    // deduplicated cited dois of `citing`, sorted; empty when none recorded
    const std::vector<std::string>& references_of(std::string_view citing) const;

    // citing papers of `cited`, with dates where metadata exists
    const std::vector<Citer>& citers_of(std::string_view cited) const;

    int max_year() const { return max_year_; }

    bool operator==(const Corpus& o) const {
        return records_ == o.records_ && edges_ == o.edges_;
    }

  private:
    std::vector<CorpusRecord> records_;
    std::vector<CitationEdge> edges_;
    std::unordered_map<std::string, std::uint32_t> by_doi_;
    std::unordered_map<std::string, std::vector<std::string>> reference_index_;
    std::unordered_map<std::string, std::vector<Citer>> citer_index_;
    int max_year_ = 0;
};

struct LoadReport {
    std::uint64_t citation_lines = 0;      // data lines seen in the citations file
    std::uint64_t edges_loaded = 0;        // after dedup / self-citation drop
    std::uint64_t malformed_citations = 0;
    std::uint64_t self_citations_dropped = 0;
    std::uint64_t duplicate_edges_dropped = 0;
    std::uint64_t metadata_lines = 0;
    std::uint64_t records_loaded = 0;
    std::uint64_t malformed_metadata = 0;
    // first few offending line numbers, for diagnostics
    std::vector<std::uint64_t> malformed_citation_lines;
    std::vector<std::uint64_t> malformed_metadata_lines;

    std::string summary() const;
};

struct CorpusLoad {
    Corpus corpus;
    LoadReport report;
};

// citations: CSV with header "citing_doi,cited_doi".
// metadata: JSON-lines with keys doi,title,date,journal,authors[,pacs][,type].
// Malformed lines are skipped but counted; duplicate metadata dois throw.
CorpusLoad load_corpus(const std::string& citations_path, const std::string& metadata_path);

// dois of research-type records published in `year`, sorted.
// Records without an article type count as research.
std::vector<std::string> year_slice(const Corpus& corpus, int year);

// Write-back in the ingest file formats (round-trips through load_corpus).
void write_citations_csv(const Corpus& corpus, const std::string& path);
void write_metadata_jsonl(const Corpus& corpus, const std::string& path);

// Versioned binary corpus cache.
void save_corpus_cache(const Corpus& corpus, const std::string& path);
Corpus load_corpus_cache(const std::string& path);

} // namespace bcp
