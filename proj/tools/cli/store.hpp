#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"

namespace cli {

namespace fs = std::filesystem;

// Metadata written as "# key: value" lines at the top of every artifact.
using Meta = std::map<std::string, std::string>;

// Keeps the strings alive for the duration of a C call.
class MetaView {
public:
    explicit MetaView(const Meta& meta);
    const eegtda_meta* data() const { return entries_.data(); }
    std::size_t size() const { return entries_.size(); }

private:
    std::vector<eegtda_meta> entries_;
};

// Leading "# key: value" lines of a text artifact.
Meta read_meta(const fs::path& path);

// Fails with HASH_MISMATCH unless the artifact carries `expected`.
void require_hash(const fs::path& path, const std::string& expected);

std::string format_number(double x);
std::string segment_name(std::size_t id);

struct SegmentEntry {
    std::size_t id = 0;
    std::string source_id;
    std::size_t start_sample = 0;
    int label = EEGTDA_LABEL_UNLABELED;
    double rate = 0.0;
};

const char* label_name(int label);

// Layout of an output directory; every stage reads and writes through this.
class Store {
public:
    explicit Store(fs::path root);

    const fs::path& root() const { return root_; }
    fs::path corpus_recording() const { return root_ / "corpus" / "corpus.csv"; }
    fs::path corpus_labels() const { return root_ / "corpus" / "corpus_labels.csv"; }
    fs::path segments_dir() const { return root_ / "segments"; }
    fs::path segment_index() const { return segments_dir() / "index.csv"; }
    fs::path segment(std::size_t id) const { return segments_dir() / (segment_name(id) + ".csv"); }
    fs::path trajectory(std::size_t id) const { return root_ / "trajectories" / (segment_name(id) + ".csv"); }
    fs::path spectra() const { return root_ / "spectra.csv"; }
    fs::path diagram(std::size_t id) const { return root_ / "diagrams" / (segment_name(id) + ".csv"); }
    fs::path landscape(std::size_t id, int dimension) const;
    fs::path features() const { return root_ / "features.csv"; }
    fs::path model() const { return root_ / "model.txt"; }
    fs::path report() const { return root_ / "report.json"; }
    fs::path evaluation() const { return root_ / "eval.json"; }
    fs::path plot_dir() const { return root_ / "plot"; }
    fs::path config_echo() const { return root_ / "config.json"; }

    // Files and directories a stage owns; removed before the stage reruns.
    std::vector<fs::path> outputs(const std::string& stage) const;

    std::optional<Json> stamp(const std::string& stage) const;
    void write_stamp(const std::string& stage, const std::string& hash, const Json& details) const;

    void write_segment_index(const std::vector<SegmentEntry>& entries, const std::string& hash) const;
    std::vector<SegmentEntry> read_segment_index(const std::string& expected_hash) const;

private:
    fs::path stamp_path(const std::string& stage) const { return root_ / "stages" / (stage + ".json"); }
    fs::path root_;
};

// Stage bookkeeping shared by every command.
//  - The prerequisite stage must have been built with `prereq_hash`.
//  - A stamp matching `hash` means the stage is up to date: returns false.
//  - A different stamp is refused unless `force`, which rebuilds.
// Returns true when the caller should (re)build; stale outputs are removed.
bool begin_stage(const Store& store, const std::string& stage, const std::string& hash,
                 const std::string& prereq_stage, const std::string& prereq_hash, bool force);

void write_text(const fs::path& path, const std::string& contents);
std::string read_text(const fs::path& path);

}  // namespace cli
