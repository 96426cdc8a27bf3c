#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace eegtda {

/// Multichannel time series. `samples` is channels x time, amplitudes are
/// passed through in whatever unit the source used.
class Recording {
public:
    Recording(std::vector<std::string> channels, Eigen::MatrixXd samples, double rate);

    const std::vector<std::string>& channels() const noexcept { return channels_; }
    const Eigen::MatrixXd& samples() const noexcept { return samples_; }
    double rate() const noexcept { return rate_; }
    Eigen::Index channel_count() const noexcept { return samples_.rows(); }
    Eigen::Index sample_count() const noexcept { return samples_.cols(); }

    std::optional<Eigen::Index> channel_index(const std::string& label) const;

private:
    std::vector<std::string> channels_;
    Eigen::MatrixXd samples_;
    double rate_;
};

struct MontageTerm {
    std::size_t output;  // row in the output
    std::size_t input;   // index into Montage::in_labels
    double weight;
};

/// Linear re-referencing map, stored sparsely and keyed by input label so it
/// can be applied to any recording that carries those labels.
class Montage {
public:
    Montage(std::string name, std::vector<std::string> out_labels,
            std::vector<std::string> in_labels, std::vector<MontageTerm> terms);

    const std::string& name() const noexcept { return name_; }
    const std::vector<std::string>& out_labels() const noexcept { return out_labels_; }
    const std::vector<std::string>& in_labels() const noexcept { return in_labels_; }
    const std::vector<MontageTerm>& terms() const noexcept { return terms_; }

    static Montage average(const std::vector<std::string>& electrodes, std::string name = "average");
    static Montage reference(const std::vector<std::string>& electrodes, const std::string& ref,
                             bool keep_ref = false, std::string name = "reference");
    static Montage bipolar(const std::vector<std::pair<std::string, std::string>>& pairs,
                           std::string name = "bipolar");

private:
    std::string name_;
    std::vector<std::string> out_labels_;
    std::vector<std::string> in_labels_;
    std::vector<MontageTerm> terms_;
};

enum class SegmentLabel { kIed, kBackground, kUnlabeled };

const char* to_string(SegmentLabel label) noexcept;
SegmentLabel parse_segment_label(const std::string& text);

struct Segment {
    std::string source_id;
    std::size_t start_sample = 0;
    std::vector<std::string> channels;
    Eigen::MatrixXd data;  // channels x window
    double rate = 0.0;
    SegmentLabel label = SegmentLabel::kUnlabeled;
};

struct LabelEntry {
    std::string source_id;
    std::size_t start_sample = 0;
    SegmentLabel label = SegmentLabel::kUnlabeled;
};

// EDF (not EDF+). Annotation signals are skipped on read.
Recording read_edf(const std::filesystem::path& path);
void write_edf(const std::filesystem::path& path, const Recording& rec);

// CSV: header row of labels, then one row per sample instant. Lines starting
// with '#' are comments.
Recording read_csv(const std::filesystem::path& path, double rate);
void write_csv(const std::filesystem::path& path, const Recording& rec,
               const std::string& comment = {});

Recording apply_montage(const Recording& rec, const Montage& mon);

// Long-format montage file: header "output,input,weight", optional
// "# name: <name>" comment.
Montage read_montage(const std::filesystem::path& path);
void write_montage(const std::filesystem::path& path, const Montage& mon);

std::vector<LabelEntry> read_labels(const std::filesystem::path& path);
void write_labels(const std::filesystem::path& path, const std::vector<LabelEntry>& labels);

std::size_t window_length(double rate, double window_seconds);

/// One segment per label entry.
std::vector<Segment> segment(const Recording& rec, const std::string& source_id,
                             double window_seconds, const std::vector<LabelEntry>& labels);

/// Non-overlapping tiling into floor(T / W) unlabeled windows.
std::vector<Segment> segment_tiling(const Recording& rec, const std::string& source_id,
                                    double window_seconds);

// The electrode set the shipped montages are defined over, and the montages
// themselves (28 bipolar pairs, 27-channel average and Cz reference).
const std::vector<std::string>& standard_electrodes();
Montage standard_bipolar();
Montage standard_average();
Montage standard_cz_reference();

}  // namespace eegtda
