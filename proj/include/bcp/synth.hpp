#pragma once

#include "bcp/corpus.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace bcp {

// Planted-structure corpus generator. Blocks share per-block reference
// pools (high within-block coupling), bridges draw from two pools,
// peripherals draw thin overlaps, and a small global pool supplies weak
// between-block links. PACS codes are block-specific, so bridges mix two
// code sets. Citation schedules are role-dependent: cores early, bridges
// (and, at half strength, peripherals) late. Built for testability, not as
// a model of how science evolves.
struct SynthConfig {
    std::uint64_t seed = 42;
    int n_blocks = 2;
    int papers_per_block = 150;
    std::array<int, 2> shared_refs_within = {40, 56}; // per-paper draws from the block pool
    std::array<int, 2> shared_refs_between = {0, 1};  // per-paper draws from the global pool
    int n_bridges = 6;
    int n_peripherals = 20;
    double citation_boost_bridge = 20.0; // mean extra late citations per bridge
    double citation_boost_core = 6.0;    // mean extra citations per core in years 1-2
    std::array<int, 2> years = {1991, 2013}; // slice year (lo) .. last citing year (hi)
    int pacs_codes_per_block = 8;
    // Pool size per block = factor * shared_refs_within.hi. Small factors
    // give near-complete blocks with heavy link weights; large factors give
    // sparse coupling like a real slice-scale network.
    int block_pool_factor = 4;

    // derived pool sizes
    int block_pool_size() const { return block_pool_factor * shared_refs_within[1]; }
    int global_pool_size() const { return 8 * shared_refs_between[1] + 4; }
    int peripheral_refs() const { return std::max(3, shared_refs_within[0] / 5); }

    void validate() const; // throws on inconsistencies
};

SynthConfig load_synth_config(const std::string& path);
void save_synth_config(const SynthConfig& c, const std::string& path);

struct SynthManifest {
    SynthConfig config;
    int slice_year = 0;
    std::uint64_t n_records = 0;
    std::uint64_t n_edges = 0;
    std::map<int, std::uint64_t> per_year_research;
    std::map<std::string, std::string> roles; // core|peripheral|bridge|reference|citer
    std::map<std::string, std::vector<int>> blocks;
    // scheduled citation counts at the 2/10/20-year horizons, computed with
    // the same calendar rule the pipeline uses
    std::map<std::string, std::array<std::uint64_t, 3>> horizon_counts;
    double expected_within_density = 0.0;  // core-core same block
    double expected_between_density = 0.0; // core-core across blocks
};

// Writes citations.csv, metadata.jsonl and manifest.json into out_dir.
// Byte-identical output for a fixed config.
SynthManifest generate_synth_corpus(const SynthConfig& config, const std::string& out_dir);

SynthManifest load_synth_manifest(const std::string& path);

} // namespace bcp
