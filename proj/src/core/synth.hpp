#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "recording.hpp"

namespace eegtda {

enum class SynthSystem { kHarmonic, kRossler, kNoise };

const char* to_string(SynthSystem system) noexcept;
SynthSystem parse_synth_system(const std::string& text);

struct RosslerParams {
    double a = 0.2;
    double b = 0.2;
    double c = 5.7;
};

struct SynthSpec {
    SynthSystem system = SynthSystem::kRossler;
    RosslerParams rossler;
    double omega = 1.0;       // harmonic angular frequency (rad per model time)
    double time_scale = 1.0;  // model time units per second
    double duration = 1.0;    // seconds
    double rate = 128.0;      // Hz
    int channels = 27;
    std::uint64_t seed = 0;
    std::optional<double> snr_db;
    double noise_sigma = 1.0;  // kNoise only
    bool identity_mixing = false;
    std::optional<Eigen::VectorXd> initial_state;
    double burn_in = 0.0;  // model time integrated and discarded
    std::vector<std::string> labels;  // default ch1..chM
};

struct SynthOutput {
    Recording recording;
    Eigen::MatrixXd truth;   // T x d source trajectory (empty for kNoise)
    Eigen::MatrixXd mixing;  // M x d
};

int system_dimension(SynthSystem system) noexcept;

/// Fixed-step RK4 at 8x the sampling rate, decimated by striding, mixed into
/// `channels` by a seeded Gaussian full-rank map, plus optional white noise
/// at the requested SNR.
SynthOutput generate(const SynthSpec& spec);

struct CorpusOptions {
    double rate = 128.0;
    double window_seconds = 1.0;
    int channels = 27;
    double time_scale = 9.0;       // ~1.5 Rossler cycles per second
    double positive_snr_db = 10.0;
    double noise_smoothing = 0.9;  // AR(1) coefficient of the background noise
    std::string source_id = "corpus";
};

/// Temporally correlated Gaussian background: AR(1) per channel, unit
/// stationary variance.
Eigen::MatrixXd filtered_noise(int channels, Eigen::Index samples, double smoothing, std::uint64_t seed);

/// `n_pos` Rossler-driven segments labeled IED followed by `n_neg`
/// filtered-noise segments labeled BACKGROUND. Segment i has start_sample
/// i * W so the corpus can be laid end to end as one recording.
std::vector<Segment> make_corpus(int n_pos, int n_neg, std::uint64_t seed, const CorpusOptions& options = {});

/// Lays segments end to end as one recording plus the matching label list.
std::pair<Recording, std::vector<LabelEntry>> concatenate(const std::vector<Segment>& segments);

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

}  // namespace eegtda
