#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "eegtda/eegtda.h"

namespace cli {

using Json = nlohmann::json;

inline constexpr const char* kOutputDirEnv = "EEGTDA_OUTPUT_DIR";

struct InputSpec {
    std::string path;
    std::string format;  // "edf" or "csv"
    double rate = 128.0;  // CSV only
    std::string source_id;
    std::string labels;  // empty: tiling
};

struct SynthConfig {
    int positive = 550;
    int negative = 550;
    std::uint64_t seed = 0;
    eegtda_corpus_options corpus{};
    std::string format;
};

struct PipelineConfig {
    std::vector<InputSpec> inputs;  // empty: the synthetic corpus
    std::optional<std::string> montage;
    double window_seconds = 1.0;
    eegtda_reduce_options reduce{};
    eegtda_homology_options homology{};
    int landscape_levels = 2;
    int feature_schema = 1;
    std::vector<eegtda_grid_cell> grid;
    eegtda_train_config train{};
    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::filesystem::path output_dir;
    SynthConfig synth;
    std::string corpus_source_id;
    Json resolved;  // the fully resolved JSON this was parsed from
};

// Every key with its default. The file and --set overrides may only use keys
// that appear here.
Json default_config();

// Defaults, then the config file, then EEGTDA_OUTPUT_DIR, then overrides of
// the form "dotted.key=value" (value parsed as JSON, else taken as a string).
Json resolve_config(const std::optional<std::filesystem::path>& file, const std::vector<std::string>& overrides);

PipelineConfig parse_config(const Json& resolved);

// 16 hex digits of FNV-1a 64 over the bytes.
std::string fnv1a_hex(const std::string& bytes);
std::string file_hash(const std::filesystem::path& path);

// Chained per-stage hashes: each covers the config sections that influence
// the stage and the hash of the stage before it. Output directory and worker
// count are excluded, so stores built elsewhere compare equal.
struct StageHashes {
    std::string synth;
    std::string ingest;
    std::string reduce;
    std::string topo;
    std::string features;
    std::string train;
};

StageHashes stage_hashes(const PipelineConfig& config);

}  // namespace cli
