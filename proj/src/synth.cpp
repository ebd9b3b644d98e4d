#include "bcp/synth.hpp"

#include "bcp/metrics.hpp"
#include "bcp/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>

namespace bcp {

using nlohmann::json;
using nlohmann::ordered_json;

void SynthConfig::validate() const {
    auto range_ok = [](const std::array<int, 2>& r) { return r[0] >= 0 && r[0] <= r[1]; };
    if (n_blocks < 1)
        throw std::invalid_argument("synth: n_blocks must be >= 1");
    if (papers_per_block < 1)
        throw std::invalid_argument("synth: papers_per_block must be >= 1");
    if (!range_ok(shared_refs_within) || shared_refs_within[0] < 1)
        throw std::invalid_argument("synth: bad shared_refs_within range");
    if (!range_ok(shared_refs_between))
        throw std::invalid_argument("synth: bad shared_refs_between range");
    if (shared_refs_within[1] > block_pool_size())
        throw std::invalid_argument("synth: within range exceeds block pool");
    if (n_bridges < 0 || n_bridges > n_blocks * papers_per_block)
        throw std::invalid_argument("synth: n_bridges exceeds number of papers");
    if (n_bridges > 0 && n_blocks < 2)
        throw std::invalid_argument("synth: bridges need at least two blocks");
    if (n_peripherals < 0)
        throw std::invalid_argument("synth: n_peripherals must be >= 0");
    if (block_pool_factor < 1)
        throw std::invalid_argument("synth: block_pool_factor must be >= 1");
    if (citation_boost_bridge < 0 || citation_boost_core < 0)
        throw std::invalid_argument("synth: citation boosts must be >= 0");
    if (years[0] >= years[1])
        throw std::invalid_argument("synth: years range must span at least two years");
    if (pacs_codes_per_block < 1)
        throw std::invalid_argument("synth: pacs_codes_per_block must be >= 1");
}

namespace {

std::string doi_of(const char* kind, int a, int b = -1) {
    char buf[64];
    if (b >= 0)
        std::snprintf(buf, sizeof buf, "10.synth/%s-b%02d-%04d", kind, a, b);
    else
        std::snprintf(buf, sizeof buf, "10.synth/%s-%06d", kind, a);
    return buf;
}

std::string pacs_code(int block, int i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%02d.%02d", 10 + block, 10 + i);
    return buf;
}

// P(no shared draw) for two independent without-replacement samples of
// sizes n1, n2 from a pool of size P: prod_t (P - n1 - t) / (P - t)
double prob_disjoint(int pool, int n1, int n2) {
    if (n1 + n2 > pool)
        return 0.0;
    double p = 1.0;
    for (int t = 0; t < n2; ++t)
        p *= static_cast<double>(pool - n1 - t) / static_cast<double>(pool - t);
    return p;
}

struct Paper {
    std::string doi;
    std::string role; // core|peripheral|bridge
    std::vector<int> blocks;
    Date date;
    std::vector<std::string> refs;
    std::vector<std::string> authors;
    std::string journal;
};

} // namespace

SynthManifest generate_synth_corpus(const SynthConfig& config, const std::string& out_dir) {
    config.validate();
    std::filesystem::create_directories(out_dir);
    Rng rng(config.seed);

    const int slice_year = config.years[0];
    const int max_offset = config.years[1] - slice_year;
    const int pool = config.block_pool_size();
    const int gpool = config.global_pool_size();

    SynthManifest man;
    man.config = config;
    man.slice_year = slice_year;

    std::vector<CorpusRecord> records;
    std::vector<CitationEdge> edges;

    auto add_record = [&](CorpusRecord r, const std::string& role, std::vector<int> blocks) {
        man.roles[r.doi] = role;
        if (!blocks.empty())
            man.blocks[r.doi] = std::move(blocks);
        if (r.type == ArticleType::research)
            ++man.per_year_research[r.date.year];
        records.push_back(std::move(r));
    };

    // 1. reference pools: block pools then the global pool, each ref gets a
    //    pre-window date and block-specific PACS codes
    std::vector<std::vector<std::string>> block_pool(config.n_blocks);
    for (int b = 0; b < config.n_blocks; ++b) {
        for (int i = 0; i < pool; ++i) {
            CorpusRecord r;
            r.doi = doi_of("ref", b, i);
            r.title = "reference " + std::to_string(b) + "/" + std::to_string(i);
            r.date = Date{slice_year - 5 + static_cast<int>(rng.next_index(4)),
                          static_cast<int>(rng.next_index(12)) + 1,
                          static_cast<int>(rng.next_index(28)) + 1};
            r.journal = "REF";
            r.authors = {"pool author b" + std::to_string(b)};
            int ncodes = 1 + static_cast<int>(rng.next_index(2));
            auto picked = rng.sample_without_replacement(
                static_cast<std::uint32_t>(config.pacs_codes_per_block),
                static_cast<std::uint32_t>(std::min(ncodes, config.pacs_codes_per_block)));
            for (auto c : picked)
                r.pacs.push_back(pacs_code(b, static_cast<int>(c)));
            r.type = ArticleType::research;
            block_pool[b].push_back(r.doi);
            add_record(std::move(r), "reference", {b});
        }
    }
    std::vector<std::string> global_pool;
    for (int i = 0; i < gpool; ++i) {
        CorpusRecord r;
        r.doi = doi_of("gref", i);
        r.title = "shared reference " + std::to_string(i);
        r.date = Date{slice_year - 5 + static_cast<int>(rng.next_index(4)),
                      static_cast<int>(rng.next_index(12)) + 1,
                      static_cast<int>(rng.next_index(28)) + 1};
        r.journal = "REF";
        r.authors = {"pool author g"};
        r.pacs = {"00.00"};
        r.type = ArticleType::research;
        global_pool.push_back(r.doi);
        add_record(std::move(r), "reference", {});
    }

    // author pools per block
    const int authors_per_block = std::max(2, config.papers_per_block / 3);
    auto block_author = [&](int b, int i) {
        return "Author B" + std::to_string(b) + " N" + std::to_string(i);
    };

    // 2. slice papers; draw order is cores by block, peripherals, bridges
    std::vector<Paper> papers;
    auto slice_date = [&] {
        return Date{slice_year, static_cast<int>(rng.next_index(12)) + 1,
                    static_cast<int>(rng.next_index(28)) + 1};
    };
    auto draw_refs = [&](std::vector<std::string>& out, const std::vector<std::string>& from,
                         int count) {
        auto idx = rng.sample_without_replacement(static_cast<std::uint32_t>(from.size()),
                                                  static_cast<std::uint32_t>(count));
        for (auto i : idx)
            out.push_back(from[i]);
    };
    auto draw_between = [&](std::vector<std::string>& out) {
        int nx = static_cast<int>(
            rng.next_int(config.shared_refs_between[0], config.shared_refs_between[1]));
        if (nx > 0)
            draw_refs(out, global_pool, std::min(nx, gpool));
    };
    auto draw_authors = [&](Paper& p, int b) {
        int na = 1 + static_cast<int>(rng.next_index(3));
        auto picked = rng.sample_without_replacement(
            static_cast<std::uint32_t>(authors_per_block),
            static_cast<std::uint32_t>(std::min(na, authors_per_block)));
        for (auto i : picked)
            p.authors.push_back(block_author(b, static_cast<int>(i)));
    };

    for (int b = 0; b < config.n_blocks; ++b)
        for (int i = 0; i < config.papers_per_block; ++i) {
            Paper p;
            p.doi = doi_of("core", b, i);
            p.role = "core";
            p.blocks = {b};
            p.date = slice_date();
            p.journal = "J" + std::to_string(b);
            int nw = static_cast<int>(
                rng.next_int(config.shared_refs_within[0], config.shared_refs_within[1]));
            draw_refs(p.refs, block_pool[b], nw);
            draw_between(p.refs);
            draw_authors(p, b);
            papers.push_back(std::move(p));
        }
    for (int i = 0; i < config.n_peripherals; ++i) {
        int b = i % config.n_blocks;
        Paper p;
        p.doi = doi_of("peri", i);
        p.role = "peripheral";
        p.blocks = {b};
        p.date = slice_date();
        p.journal = "J" + std::to_string(b);
        draw_refs(p.refs, block_pool[b], std::min(config.peripheral_refs(), pool));
        draw_between(p.refs);
        draw_authors(p, b);
        papers.push_back(std::move(p));
    }
    for (int i = 0; i < config.n_bridges; ++i) {
        int b1 = i % config.n_blocks;
        int b2 = (b1 + 1) % config.n_blocks;
        Paper p;
        p.doi = doi_of("bridge", i);
        p.role = "bridge";
        p.blocks = {std::min(b1, b2), std::max(b1, b2)};
        p.date = slice_date();
        p.journal = "JX";
        // fixed maximal draw: equally strong bridges split the cross-block
        // path flow evenly, keeping each one's betweenness high
        int nw = config.shared_refs_within[1];
        draw_refs(p.refs, block_pool[b1], (nw + 1) / 2);
        draw_refs(p.refs, block_pool[b2], nw / 2);
        p.authors.push_back(block_author(b1, static_cast<int>(rng.next_index(authors_per_block))));
        p.authors.push_back(block_author(b2, static_cast<int>(rng.next_index(authors_per_block))));
        papers.push_back(std::move(p));
    }

    for (const auto& p : papers) {
        CorpusRecord r;
        r.doi = p.doi;
        r.title = p.role + " paper " + p.doi.substr(p.doi.find('/') + 1);
        r.date = p.date;
        r.journal = p.journal;
        r.authors = p.authors;
        r.type = ArticleType::research;
        add_record(std::move(r), p.role, p.blocks);
        for (const auto& ref : p.refs)
            edges.push_back({p.doi, ref});
    }

    // 3. citation schedules: a small uniform base for everybody, an early
    //    extra for cores, a late extra for bridges, half of it for
    //    peripherals; every event becomes one dated citing stub
    int n_citers = 0;
    const int citer_authors = 50;
    auto schedule = [&](const Paper& target, int count, int off_lo, int off_hi) {
        off_hi = std::min(off_hi, max_offset);
        if (off_lo > off_hi)
            return;
        for (int e = 0; e < count; ++e) {
            int off = static_cast<int>(rng.next_int(off_lo, off_hi));
            Date d{slice_year + off, static_cast<int>(rng.next_index(12)) + 1,
                   static_cast<int>(rng.next_index(28)) + 1};
            CorpusRecord r;
            r.doi = doi_of("cit", n_citers++);
            r.title = "citing " + target.doi;
            r.date = d;
            r.journal = "CIT";
            r.authors = {"citer n" +
                         std::to_string(static_cast<int>(rng.next_index(citer_authors)))};
            r.type = ArticleType::research;
            edges.push_back({r.doi, target.doi});
            // horizon counts use the calendar rule: date <= pub + h years
            auto& hc = man.horizon_counts[target.doi];
            const int horizons[3] = {2, 10, 20};
            for (int hi = 0; hi < 3; ++hi)
                if (d <= add_years(target.date, horizons[hi]))
                    ++hc[hi];
            add_record(std::move(r), "citer", {});
        }
    };
    for (const auto& p : papers) {
        man.horizon_counts[p.doi] = {0, 0, 0};
        schedule(p, rng.next_poisson(2.0), 1, max_offset);
        if (p.role == "core")
            schedule(p, rng.next_poisson(config.citation_boost_core), 1, 2);
        else if (p.role == "bridge")
            schedule(p, rng.next_poisson(config.citation_boost_bridge), 3, max_offset);
        else if (p.role == "peripheral")
            schedule(p, rng.next_poisson(config.citation_boost_bridge / 2.0), 3, max_offset);
    }

    // expected binarized densities for core-core pairs, averaged over the
    // uniform draw-count grids
    {
        const int wlo = config.shared_refs_within[0], whi = config.shared_refs_within[1];
        double within = 0.0;
        int cells = 0;
        for (int n1 = wlo; n1 <= whi; ++n1)
            for (int n2 = wlo; n2 <= whi; ++n2) {
                within += 1.0 - prob_disjoint(pool, n1, n2);
                ++cells;
            }
        man.expected_within_density = within / cells;
        // cross-block pairs can only collide in the global pool
        const int blo = config.shared_refs_between[0], bhi = config.shared_refs_between[1];
        double between = 0.0;
        cells = 0;
        for (int x1 = blo; x1 <= bhi; ++x1)
            for (int x2 = blo; x2 <= bhi; ++x2) {
                between += 1.0 - prob_disjoint(gpool, x1, x2);
                ++cells;
            }
        man.expected_between_density = between / cells;
    }

    Corpus corpus(std::move(records), std::move(edges));
    man.n_records = corpus.records().size();
    man.n_edges = corpus.citations().size();

    write_citations_csv(corpus, out_dir + "/citations.csv");
    write_metadata_jsonl(corpus, out_dir + "/metadata.jsonl");

    ordered_json j;
    j["format"] = "bcp-synth-manifest";
    j["version"] = 1;
    ordered_json cfg;
    cfg["seed"] = config.seed;
    cfg["n_blocks"] = config.n_blocks;
    cfg["papers_per_block"] = config.papers_per_block;
    cfg["shared_refs_within"] = config.shared_refs_within;
    cfg["shared_refs_between"] = config.shared_refs_between;
    cfg["n_bridges"] = config.n_bridges;
    cfg["n_peripherals"] = config.n_peripherals;
    cfg["citation_boost_bridge"] = config.citation_boost_bridge;
    cfg["citation_boost_core"] = config.citation_boost_core;
    cfg["years"] = config.years;
    cfg["pacs_codes_per_block"] = config.pacs_codes_per_block;
    cfg["block_pool_factor"] = config.block_pool_factor;
    j["config"] = cfg;
    j["slice_year"] = man.slice_year;
    j["n_records"] = man.n_records;
    j["n_edges"] = man.n_edges;
    ordered_json py = ordered_json::object();
    for (const auto& [y, c] : man.per_year_research)
        py[std::to_string(y)] = c;
    j["per_year_research"] = py;
    ordered_json roles = ordered_json::object();
    for (const auto& [doi, role] : man.roles)
        roles[doi] = role;
    j["roles"] = roles;
    ordered_json blocks = ordered_json::object();
    for (const auto& [doi, bs] : man.blocks)
        blocks[doi] = bs;
    j["blocks"] = blocks;
    ordered_json hc = ordered_json::object();
    for (const auto& [doi, c] : man.horizon_counts)
        hc[doi] = {c[0], c[1], c[2]};
    j["horizon_counts"] = hc;
    j["expected_within_density"] = man.expected_within_density;
    j["expected_between_density"] = man.expected_between_density;
    write_file_atomic(out_dir + "/manifest.json", j.dump(2) + "\n");
    return man;
}

SynthConfig load_synth_config(const std::string& path) {
    json j = json::parse(read_file(path));
    SynthConfig c;
    if (j.contains("seed"))
        c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("n_blocks"))
        c.n_blocks = j["n_blocks"].get<int>();
    if (j.contains("papers_per_block"))
        c.papers_per_block = j["papers_per_block"].get<int>();
    if (j.contains("shared_refs_within"))
        c.shared_refs_within = j["shared_refs_within"].get<std::array<int, 2>>();
    if (j.contains("shared_refs_between"))
        c.shared_refs_between = j["shared_refs_between"].get<std::array<int, 2>>();
    if (j.contains("n_bridges"))
        c.n_bridges = j["n_bridges"].get<int>();
    if (j.contains("n_peripherals"))
        c.n_peripherals = j["n_peripherals"].get<int>();
    if (j.contains("citation_boost_bridge"))
        c.citation_boost_bridge = j["citation_boost_bridge"].get<double>();
    if (j.contains("citation_boost_core"))
        c.citation_boost_core = j["citation_boost_core"].get<double>();
    if (j.contains("years"))
        c.years = j["years"].get<std::array<int, 2>>();
    if (j.contains("pacs_codes_per_block"))
        c.pacs_codes_per_block = j["pacs_codes_per_block"].get<int>();
    if (j.contains("block_pool_factor"))
        c.block_pool_factor = j["block_pool_factor"].get<int>();
    c.validate();
    return c;
}

void save_synth_config(const SynthConfig& c, const std::string& path) {
    ordered_json j;
    j["seed"] = c.seed;
    j["n_blocks"] = c.n_blocks;
    j["papers_per_block"] = c.papers_per_block;
    j["shared_refs_within"] = c.shared_refs_within;
    j["shared_refs_between"] = c.shared_refs_between;
    j["n_bridges"] = c.n_bridges;
    j["n_peripherals"] = c.n_peripherals;
    j["citation_boost_bridge"] = c.citation_boost_bridge;
    j["citation_boost_core"] = c.citation_boost_core;
    j["years"] = c.years;
    j["pacs_codes_per_block"] = c.pacs_codes_per_block;
    j["block_pool_factor"] = c.block_pool_factor;
    write_file_atomic(path, j.dump(2) + "\n");
}

SynthManifest load_synth_manifest(const std::string& path) {
    json j = json::parse(read_file(path));
    if (!j.contains("format") || j["format"] != "bcp-synth-manifest")
        throw std::runtime_error("not a synth manifest: " + path);
    SynthManifest m;
    const auto& cfg = j["config"];
    m.config.seed = cfg["seed"].get<std::uint64_t>();
    m.config.n_blocks = cfg["n_blocks"].get<int>();
    m.config.papers_per_block = cfg["papers_per_block"].get<int>();
    m.config.shared_refs_within = cfg["shared_refs_within"].get<std::array<int, 2>>();
    m.config.shared_refs_between = cfg["shared_refs_between"].get<std::array<int, 2>>();
    m.config.n_bridges = cfg["n_bridges"].get<int>();
    m.config.n_peripherals = cfg["n_peripherals"].get<int>();
    m.config.citation_boost_bridge = cfg["citation_boost_bridge"].get<double>();
    m.config.citation_boost_core = cfg["citation_boost_core"].get<double>();
    m.config.years = cfg["years"].get<std::array<int, 2>>();
    m.config.pacs_codes_per_block = cfg["pacs_codes_per_block"].get<int>();
    if (cfg.contains("block_pool_factor"))
        m.config.block_pool_factor = cfg["block_pool_factor"].get<int>();
    m.slice_year = j["slice_year"].get<int>();
    m.n_records = j["n_records"].get<std::uint64_t>();
    m.n_edges = j["n_edges"].get<std::uint64_t>();
    for (const auto& [k, v] : j["per_year_research"].items())
        m.per_year_research[std::stoi(k)] = v.get<std::uint64_t>();
    for (const auto& [k, v] : j["roles"].items())
        m.roles[k] = v.get<std::string>();
    for (const auto& [k, v] : j["blocks"].items())
        m.blocks[k] = v.get<std::vector<int>>();
    for (const auto& [k, v] : j["horizon_counts"].items()) {
        auto arr = v.get<std::vector<std::uint64_t>>();
        m.horizon_counts[k] = {arr[0], arr[1], arr[2]};
    }
    m.expected_within_density = j["expected_within_density"].get<double>();
    m.expected_between_density = j["expected_between_density"].get<double>();
    return m;
}

} // namespace bcp
