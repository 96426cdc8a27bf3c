#include "synth.hpp"

#include <cmath>
#include <random>

#include "error.hpp"
#include "text.hpp"

namespace eegtda {

const char* to_string(SynthSystem system) noexcept {
    switch (system) {
        case SynthSystem::kHarmonic: return "harmonic";
        case SynthSystem::kRossler: return "rossler";
        case SynthSystem::kNoise: return "noise";
    }
    return "noise";
}

SynthSystem parse_synth_system(const std::string& text) {
    if (text == "harmonic") return SynthSystem::kHarmonic;
    if (text == "rossler") return SynthSystem::kRossler;
    if (text == "noise") return SynthSystem::kNoise;
    fail(ErrorCode::kConfig, "unknown synthetic system '" + text + "' (harmonic, rossler, noise)");
}

int system_dimension(SynthSystem system) noexcept {
    switch (system) {
        case SynthSystem::kHarmonic: return 2;
        case SynthSystem::kRossler: return 3;
        case SynthSystem::kNoise: return 0;
    }
    return 0;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
    // splitmix64 finalizer over master + index * golden ratio
    std::uint64_t z = master + (index + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

Eigen::VectorXd vector_field(const SynthSpec& spec, const Eigen::VectorXd& s) {
    Eigen::VectorXd d(s.size());
    if (spec.system == SynthSystem::kHarmonic) {
        d(0) = spec.omega * s(1);
        d(1) = -spec.omega * s(0);
    } else {
        const auto& p = spec.rossler;
        d(0) = -s(1) - s(2);
        d(1) = s(0) + p.a * s(1);
        d(2) = p.b + s(2) * (s(0) - p.c);
    }
    return d * spec.time_scale;
}

Eigen::VectorXd rk4_step(const SynthSpec& spec, const Eigen::VectorXd& s, double h) {
    const Eigen::VectorXd k1 = vector_field(spec, s);
    const Eigen::VectorXd k2 = vector_field(spec, s + 0.5 * h * k1);
    const Eigen::VectorXd k3 = vector_field(spec, s + 0.5 * h * k2);
    const Eigen::VectorXd k4 = vector_field(spec, s + h * k3);
    return s + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Eigen::MatrixXd gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
    }
    return m;
}

std::vector<std::string> default_labels(int channels) {
    std::vector<std::string> out;
    for (int c = 1; c <= channels; ++c) out.push_back("ch" + std::to_string(c));
    return out;
}

constexpr int kOversampling = 8;

}  // namespace

SynthOutput generate(const SynthSpec& spec) {
    if (!(spec.rate > 0.0) || !(spec.duration > 0.0)) {
        fail(ErrorCode::kConfig, "synthetic rate and duration must be positive");
    }
    const int dim = system_dimension(spec.system);
    if (spec.channels < std::max(dim, 1)) {
        fail(ErrorCode::kConfig, "synthetic channel count " + std::to_string(spec.channels) +
                                     " is below the system dimension " + std::to_string(dim));
    }
    if (spec.snr_db && !std::isfinite(*spec.snr_db)) fail(ErrorCode::kConfig, "SNR must be finite");
    const auto samples = static_cast<Eigen::Index>(std::llround(spec.duration * spec.rate));
    std::vector<std::string> labels = spec.labels.empty() ? default_labels(spec.channels) : spec.labels;
    if (static_cast<int>(labels.size()) != spec.channels) {
        fail(ErrorCode::kConfig, "synthetic label count does not match channel count");
    }
    std::mt19937_64 rng(spec.seed);

    if (spec.system == SynthSystem::kNoise) {
        Eigen::MatrixXd data = spec.noise_sigma * gaussian(spec.channels, samples, rng);
        return {Recording(std::move(labels), std::move(data), spec.rate), Eigen::MatrixXd(samples, 0),
                Eigen::MatrixXd(spec.channels, 0)};
    }

    Eigen::VectorXd state;
    if (spec.initial_state) {
        state = *spec.initial_state;
        if (state.size() != dim) fail(ErrorCode::kConfig, "initial state has the wrong dimension");
    } else if (spec.system == SynthSystem::kHarmonic) {
        state = Eigen::Vector2d(0.0, 1.0);
    } else {
        state = Eigen::Vector3d(1.0, 1.0, 0.0);
    }
    const double h = 1.0 / (spec.rate * kOversampling);
    std::size_t step = 0;
    auto advance = [&]() {
        state = rk4_step(spec, state, h);
        ++step;
        if (!state.allFinite()) {
            fail(ErrorCode::kGeneration, "integration diverged at step " + std::to_string(step));
        }
    };
    const auto burn_steps = static_cast<std::size_t>(std::llround(spec.burn_in / spec.time_scale / h));
    for (std::size_t i = 0; i < burn_steps; ++i) advance();

    Eigen::MatrixXd truth(samples, dim);
    for (Eigen::Index t = 0; t < samples; ++t) {
        truth.row(t) = state.transpose();
        if (t + 1 < samples) {
            for (int k = 0; k < kOversampling; ++k) advance();
        }
    }

    Eigen::MatrixXd mixing;
    if (spec.identity_mixing) {
        mixing = Eigen::MatrixXd::Identity(spec.channels, dim);
    } else {
        while (true) {
            mixing = gaussian(spec.channels, dim, rng) / std::sqrt(static_cast<double>(dim));
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(mixing);
            const Eigen::VectorXd sv = svd.singularValues();
            if (sv(sv.size() - 1) > 1e-6 * sv(0)) break;
        }
    }
    Eigen::MatrixXd data = mixing * truth.transpose();
    if (spec.snr_db) {
        const Eigen::MatrixXd centered = data.colwise() - data.rowwise().mean();
        const double signal_power = centered.squaredNorm() / static_cast<double>(centered.size());
        const double sigma = std::sqrt(signal_power / std::pow(10.0, *spec.snr_db / 10.0));
        data += sigma * gaussian(data.rows(), data.cols(), rng);
    }
    return {Recording(std::move(labels), std::move(data), spec.rate), std::move(truth), std::move(mixing)};
}

Eigen::MatrixXd filtered_noise(int channels, Eigen::Index samples, double smoothing, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const Eigen::MatrixXd white = gaussian(channels, samples, rng);
    const double gain = std::sqrt(1.0 - smoothing * smoothing);
    Eigen::MatrixXd out(channels, samples);
    out.col(0) = white.col(0);
    for (Eigen::Index t = 1; t < samples; ++t) out.col(t) = smoothing * out.col(t - 1) + gain * white.col(t);
    return out;
}

std::vector<Segment> make_corpus(int n_pos, int n_neg, std::uint64_t seed, const CorpusOptions& options) {
    if (n_pos < 1 || n_neg < 1) fail(ErrorCode::kConfig, "corpus needs at least one segment per class");
    const std::size_t width = window_length(options.rate, options.window_seconds);
    std::vector<std::string> labels;
    for (const auto& e : standard_electrodes()) {
        if (e != "Cz") labels.push_back(e);
    }
    if (options.channels != static_cast<int>(labels.size())) {
        labels.resize(0);
        for (int c = 1; c <= options.channels; ++c) labels.push_back("ch" + std::to_string(c));
    }

    std::vector<Segment> corpus;
    const auto total = static_cast<std::size_t>(n_pos + n_neg);
    corpus.reserve(total);
    for (std::size_t i = 0; i < total; ++i) {
        const std::uint64_t s = derive_seed(seed, i);
        const bool positive = i < static_cast<std::size_t>(n_pos);
        std::mt19937_64 rng(s);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const auto samples = static_cast<Eigen::Index>(width);
        Eigen::MatrixXd background =
            filtered_noise(options.channels, samples, options.noise_smoothing, derive_seed(s, 1));

        Eigen::MatrixXd data;
        if (positive) {
            SynthSpec spec;
            spec.system = SynthSystem::kRossler;
            spec.time_scale = options.time_scale;
            spec.rate = options.rate;
            spec.duration = static_cast<double>(width) / options.rate;
            spec.channels = options.channels;
            spec.seed = derive_seed(s, 2);
            spec.initial_state = Eigen::Vector3d(1.0 + unit(rng), 1.0 + unit(rng), unit(rng));
            spec.burn_in = 50.0 + 50.0 * unit(rng);
            spec.labels = labels;
            const SynthOutput out = generate(spec);
            data = out.recording.samples();
            const Eigen::MatrixXd centered = data.colwise() - data.rowwise().mean();
            const double power = centered.squaredNorm() / static_cast<double>(centered.size());
            data += std::sqrt(power / std::pow(10.0, options.positive_snr_db / 10.0)) * background;
        } else {
            data = std::move(background);
        }
        Segment seg;
        seg.source_id = options.source_id;
        seg.start_sample = i * width;
        seg.channels = labels;
        seg.data = std::move(data);
        seg.rate = options.rate;
        seg.label = positive ? SegmentLabel::kIed : SegmentLabel::kBackground;
        corpus.push_back(std::move(seg));
    }
    return corpus;
}

std::pair<Recording, std::vector<LabelEntry>> concatenate(const std::vector<Segment>& segments) {
    if (segments.empty()) fail(ErrorCode::kInsufficientData, "no segments to concatenate");
    Eigen::Index total = 0;
    for (const auto& s : segments) total += s.data.cols();
    Eigen::MatrixXd data(segments.front().data.rows(), total);
    std::vector<LabelEntry> labels;
    Eigen::Index offset = 0;
    for (const auto& s : segments) {
        if (s.data.rows() != data.rows() || s.channels != segments.front().channels) {
            fail(ErrorCode::kData, "segments do not share a channel layout");
        }
        data.middleCols(offset, s.data.cols()) = s.data;
        labels.push_back({s.source_id, static_cast<std::size_t>(offset), s.label});
        offset += s.data.cols();
    }
    return {Recording(segments.front().channels, std::move(data), segments.front().rate), std::move(labels)};
}

}  // namespace eegtda
