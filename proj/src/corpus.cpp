#include "bcp/corpus.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace bcp {

using nlohmann::json;
using nlohmann::ordered_json;

const char* article_type_name(ArticleType t) {
    switch (t) {
    case ArticleType::research:
        return "research";
    case ArticleType::editorial:
        return "editorial";
    case ArticleType::erratum:
        return "erratum";
    default:
        return "other";
    }
}

ArticleType article_type_from(std::string_view s) {
    if (s == "research")
        return ArticleType::research;
    if (s == "editorial")
        return ArticleType::editorial;
    if (s == "erratum")
        return ArticleType::erratum;
    return ArticleType::other;
}

Corpus::Corpus(std::vector<CorpusRecord> records, std::vector<CitationEdge> edges)
    : records_(std::move(records)), edges_(std::move(edges)) {
    by_doi_.reserve(records_.size() * 2);
    for (std::uint32_t i = 0; i < records_.size(); ++i) {
        auto [it, fresh] = by_doi_.emplace(records_[i].doi, i);
        if (!fresh)
            throw std::runtime_error("duplicate doi in corpus: " + records_[i].doi);
        max_year_ = std::max(max_year_, records_[i].date.year);
    }
    std::sort(edges_.begin(), edges_.end(), [](const CitationEdge& a, const CitationEdge& b) {
        return std::tie(a.citing, a.cited) < std::tie(b.citing, b.cited);
    });
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    for (const auto& e : edges_) {
        reference_index_[e.citing].push_back(e.cited);
        Citer c{e.citing, std::nullopt};
        if (auto it = by_doi_.find(e.citing); it != by_doi_.end())
            c.date = records_[it->second].date;
        citer_index_[e.cited].push_back(std::move(c));
    }
    // edges_ is sorted, so reference lists are already sorted/deduplicated
}

const CorpusRecord* Corpus::find(std::string_view doi) const {
    auto it = by_doi_.find(std::string(doi));
    return it == by_doi_.end() ? nullptr : &records_[it->second];
}

const std::vector<std::string>& Corpus::references_of(std::string_view citing) const {
    static const std::vector<std::string> empty;
    auto it = reference_index_.find(std::string(citing));
    return it == reference_index_.end() ? empty : it->second;
}

const std::vector<Citer>& Corpus::citers_of(std::string_view cited) const {
    static const std::vector<Citer> empty;
    auto it = citer_index_.find(std::string(cited));
    return it == citer_index_.end() ? empty : it->second;
}

std::string LoadReport::summary() const {
    std::ostringstream ss;
    ss << "citations: " << edges_loaded << " edges from " << citation_lines << " lines ("
       << malformed_citations << " malformed, " << self_citations_dropped << " self-citations, "
       << duplicate_edges_dropped << " duplicates dropped)\n"
       << "metadata: " << records_loaded << " records from " << metadata_lines << " lines ("
       << malformed_metadata << " malformed)";
    auto lines = [&](const std::vector<std::uint64_t>& v) {
        std::string s;
        for (size_t i = 0; i < v.size(); ++i)
            s += (i ? "," : "") + std::to_string(v[i]);
        return s;
    };
    if (!malformed_citation_lines.empty())
        ss << "\nfirst malformed citation lines: " << lines(malformed_citation_lines);
    if (!malformed_metadata_lines.empty())
        ss << "\nfirst malformed metadata lines: " << lines(malformed_metadata_lines);
    return ss.str();
}

static constexpr size_t kMaxReportedLines = 10;

CorpusLoad load_corpus(const std::string& citations_path, const std::string& metadata_path) {
    LoadReport rep;

    std::ifstream cf(citations_path);
    if (!cf)
        throw std::runtime_error("citations file not found: " + citations_path);
    std::string line;
    if (!std::getline(cf, line))
        throw std::runtime_error("citations file is empty: " + citations_path);
    {
        // tolerate BOM and CRLF in the header only
        std::string h = line;
        if (h.size() >= 3 && h.compare(0, 3, "\xEF\xBB\xBF") == 0)
            h = h.substr(3);
        if (!h.empty() && h.back() == '\r')
            h.pop_back();
        if (h != "citing_doi,cited_doi")
            throw std::runtime_error(citations_path + ":1: bad header, expected citing_doi,cited_doi");
    }

    std::vector<CitationEdge> edges;
    std::uint64_t lineno = 1;
    std::set<std::pair<std::string, std::string>> seen;
    while (std::getline(cf, line)) {
        ++lineno;
        ++rep.citation_lines;
        if (trim(line).empty()) {
            --rep.citation_lines;
            continue;
        }
        auto fields = csv_parse_line(line);
        if (fields.size() != 2) {
            ++rep.malformed_citations;
            if (rep.malformed_citation_lines.size() < kMaxReportedLines)
                rep.malformed_citation_lines.push_back(lineno);
            continue;
        }
        std::string citing = normalize_doi(fields[0]);
        std::string cited = normalize_doi(fields[1]);
        if (citing.empty() || cited.empty()) {
            ++rep.malformed_citations;
            if (rep.malformed_citation_lines.size() < kMaxReportedLines)
                rep.malformed_citation_lines.push_back(lineno);
            continue;
        }
        if (citing == cited) {
            ++rep.self_citations_dropped;
            continue;
        }
        if (!seen.emplace(citing, cited).second) {
            ++rep.duplicate_edges_dropped;
            continue;
        }
        edges.push_back({std::move(citing), std::move(cited)});
    }

    std::ifstream mf(metadata_path);
    if (!mf)
        throw std::runtime_error("metadata file not found: " + metadata_path);
    std::vector<CorpusRecord> records;
    std::set<std::string> dois;
    lineno = 0;
    while (std::getline(mf, line)) {
        ++lineno;
        if (trim(line).empty())
            continue;
        ++rep.metadata_lines;
        auto malformed = [&]() {
            ++rep.malformed_metadata;
            if (rep.malformed_metadata_lines.size() < kMaxReportedLines)
                rep.malformed_metadata_lines.push_back(lineno);
        };
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            malformed();
            continue;
        }
        if (!j.contains("doi") || !j["doi"].is_string() || !j.contains("title") ||
            !j.contains("date") || !j["date"].is_string() || !j.contains("journal") ||
            !j.contains("authors") || !j["authors"].is_array()) {
            malformed();
            continue;
        }
        CorpusRecord r;
        r.doi = normalize_doi(j["doi"].get<std::string>());
        if (r.doi.empty()) {
            malformed();
            continue;
        }
        auto date = parse_date(j["date"].get<std::string>());
        if (!date) {
            malformed();
            continue;
        }
        r.date = *date;
        r.title = j["title"].is_string() ? j["title"].get<std::string>() : "";
        r.journal = j["journal"].is_string() ? j["journal"].get<std::string>() : "";
        bool ok = true;
        for (const auto& a : j["authors"]) {
            if (!a.is_string()) {
                ok = false;
                break;
            }
            r.authors.push_back(a.get<std::string>());
        }
        if (j.contains("pacs")) {
            if (!j["pacs"].is_array())
                ok = false;
            else
                for (const auto& p : j["pacs"]) {
                    if (!p.is_string()) {
                        ok = false;
                        break;
                    }
                    r.pacs.push_back(p.get<std::string>());
                }
        }
        if (!ok) {
            malformed();
            continue;
        }
        r.type = j.contains("type") && j["type"].is_string()
                     ? article_type_from(j["type"].get<std::string>())
                     : ArticleType::research;
        if (!dois.insert(r.doi).second)
            throw std::runtime_error(metadata_path + ":" + std::to_string(lineno) +
                                     ": duplicate doi " + r.doi);
        records.push_back(std::move(r));
    }

    rep.edges_loaded = edges.size();
    rep.records_loaded = records.size();
    return {Corpus(std::move(records), std::move(edges)), std::move(rep)};
}

std::vector<std::string> year_slice(const Corpus& corpus, int year) {
    if (year < 1893 || year > corpus.max_year())
        throw std::out_of_range("year_slice: year " + std::to_string(year) +
                                " outside corpus range [1893, " +
                                std::to_string(corpus.max_year()) + "]");
    std::vector<std::string> out;
    for (const auto& r : corpus.records())
        if (r.type == ArticleType::research && r.date.year == year)
            out.push_back(r.doi);
    std::sort(out.begin(), out.end());
    return out;
}

void write_citations_csv(const Corpus& corpus, const std::string& path) {
    std::string out = "citing_doi,cited_doi\n";
    for (const auto& e : corpus.citations()) {
        out += csv_escape(e.citing);
        out += ',';
        out += csv_escape(e.cited);
        out += '\n';
    }
    write_file_atomic(path, out);
}

void write_metadata_jsonl(const Corpus& corpus, const std::string& path) {
    std::string out;
    for (const auto& r : corpus.records()) {
        ordered_json j;
        j["doi"] = r.doi;
        j["title"] = r.title;
        j["date"] = format_date(r.date);
        j["journal"] = r.journal;
        j["authors"] = r.authors;
        if (!r.pacs.empty())
            j["pacs"] = r.pacs;
        j["type"] = article_type_name(r.type);
        out += j.dump();
        out += '\n';
    }
    write_file_atomic(path, out);
}

// ---- binary cache ----------------------------------------------------------
//
// layout (little-endian):
//   magic "BCPC", u32 version
//   u64 n_records, then per record:
//     str doi, str title, u16 year, u8 month, u8 day, str journal,
//     u32 n_authors + strs, u32 n_pacs + strs, u8 type
//   u64 n_edges, then per edge: str citing, str cited
// where str = u32 length + bytes.

namespace {

constexpr std::uint32_t kCacheVersion = 1;

void put_u32(std::string& b, std::uint32_t v) {
    for (int i = 0; i < 4; ++i)
        b.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put_u64(std::string& b, std::uint64_t v) {
    for (int i = 0; i < 8; ++i)
        b.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put_str(std::string& b, const std::string& s) {
    put_u32(b, static_cast<std::uint32_t>(s.size()));
    b += s;
}

struct Reader {
    const std::string& b;
    size_t pos = 0;
    void need(size_t n) const {
        if (pos + n > b.size())
            throw std::runtime_error("corpus cache truncated");
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v |= static_cast<std::uint32_t>(static_cast<unsigned char>(b[pos + i])) << (8 * i);
        pos += 4;
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
            v |= static_cast<std::uint64_t>(static_cast<unsigned char>(b[pos + i])) << (8 * i);
        pos += 8;
        return v;
    }
    std::uint8_t u8() {
        need(1);
        return static_cast<std::uint8_t>(b[pos++]);
    }
    std::string str() {
        std::uint32_t n = u32();
        need(n);
        std::string s = b.substr(pos, n);
        pos += n;
        return s;
    }
};

} // namespace

void save_corpus_cache(const Corpus& corpus, const std::string& path) {
    std::string b = "BCPC";
    put_u32(b, kCacheVersion);
    put_u64(b, corpus.records().size());
    for (const auto& r : corpus.records()) {
        put_str(b, r.doi);
        put_str(b, r.title);
        b.push_back(static_cast<char>(r.date.year & 0xff));
        b.push_back(static_cast<char>((r.date.year >> 8) & 0xff));
        b.push_back(static_cast<char>(r.date.month));
        b.push_back(static_cast<char>(r.date.day));
        put_u32(b, static_cast<std::uint32_t>(r.journal.size()));
        b += r.journal;
        put_u32(b, static_cast<std::uint32_t>(r.authors.size()));
        for (const auto& a : r.authors)
            put_str(b, a);
        put_u32(b, static_cast<std::uint32_t>(r.pacs.size()));
        for (const auto& p : r.pacs)
            put_str(b, p);
        b.push_back(static_cast<char>(r.type));
    }
    put_u64(b, corpus.citations().size());
    for (const auto& e : corpus.citations()) {
        put_str(b, e.citing);
        put_str(b, e.cited);
    }
    write_file_atomic(path, b);
}

Corpus load_corpus_cache(const std::string& path) {
    std::string b = read_file(path);
    Reader r{b};
    r.need(4);
    if (b.compare(0, 4, "BCPC") != 0)
        throw std::runtime_error("not a corpus cache: " + path);
    r.pos = 4;
    std::uint32_t version = r.u32();
    if (version != kCacheVersion)
        throw std::runtime_error("unsupported corpus cache version " + std::to_string(version));
    std::uint64_t nrec = r.u64();
    std::vector<CorpusRecord> records;
    records.reserve(nrec);
    for (std::uint64_t i = 0; i < nrec; ++i) {
        CorpusRecord rec;
        rec.doi = r.str();
        rec.title = r.str();
        int y = r.u8();
        y |= r.u8() << 8;
        rec.date.year = y;
        rec.date.month = r.u8();
        rec.date.day = r.u8();
        rec.journal = r.str();
        std::uint32_t na = r.u32();
        for (std::uint32_t a = 0; a < na; ++a)
            rec.authors.push_back(r.str());
        std::uint32_t np = r.u32();
        for (std::uint32_t p = 0; p < np; ++p)
            rec.pacs.push_back(r.str());
        rec.type = static_cast<ArticleType>(r.u8());
        records.push_back(std::move(rec));
    }
    std::uint64_t nedge = r.u64();
    std::vector<CitationEdge> edges;
    edges.reserve(nedge);
    for (std::uint64_t i = 0; i < nedge; ++i) {
        CitationEdge e;
        e.citing = r.str();
        e.cited = r.str();
        edges.push_back(std::move(e));
    }
    return Corpus(std::move(records), std::move(edges));
}

} // namespace bcp
