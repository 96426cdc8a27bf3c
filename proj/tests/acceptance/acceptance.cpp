// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "artifacts.hpp"
#include "dimred.hpp"
#include "homology.hpp"
#include "json.hpp"
#include "landscape.hpp"
#include "oracles.hpp"
#include "pipeline.hpp"
#include "protocol.hpp"
#include "stats.hpp"
#include "synth.hpp"

using namespace eegtda;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), format, a, b, c);
    return buf;
}

Eigen::MatrixXd to_matrix(const oracle::Points& pts) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(pts.size()), 3);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (Eigen::Index k = 0; k < 3; ++k) m(static_cast<Eigen::Index>(i), k) = pts[i][static_cast<std::size_t>(k)];
    }
    return m;
}

bool same_pairs(const PersistenceDiagram& got, const std::vector<oracle::Pair>& want) {
    if (got.pairs.size() != want.size()) return false;
    for (std::size_t i = 0; i < want.size(); ++i) {
        const auto& p = got.pairs[i];
        if (p.dimension != want[i].dim || std::abs(p.birth - want[i].birth) > 1e-9) return false;
        if (std::isinf(want[i].death) != p.essential()) return false;
        if (!p.essential() && std::abs(p.death - want[i].death) > 1e-9) return false;
    }
    return true;
}

Outcome a1_homology() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<int> size(1, 12);
    int matched = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto pts = oracle::random_cloud(rng, static_cast<std::size_t>(size(rng)));
        const auto want = oracle::rips_persistence(pts);
        const RipsFiltration f = build_filtration(to_matrix(pts));
        if (same_pairs(persistence(f, ReductionScheme::kCohomology), want) &&
            same_pairs(persistence(f, ReductionScheme::kBoundary), want)) {
            ++matched;
        }
    }
    const double t = seconds_since(start);
    return {matched == 100 && t < 10.0, fmt("%.0f/100 clouds match the oracle in %.2f s", matched, t)};
}

DycaResult harmonic_dyca(std::optional<double> snr, std::uint64_t seed) {
    SynthSpec spec;
    spec.system = SynthSystem::kHarmonic;
    spec.time_scale = 2.0 * M_PI * 8.0;
    spec.channels = 10;
    spec.seed = seed;
    spec.snr_db = snr;
    DycaOptions o;
    o.n = 2;
    o.m = 2;
    return dyca(generate(spec).recording.samples(), spec.rate, o);
}

Outcome a2_dyca() {
    const auto start = std::chrono::steady_clock::now();
    int clean_ok = 0, noisy_ok = 0;
    double worst_signal = 1.0, worst_noise = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const DycaResult clean = harmonic_dyca(std::nullopt, 1000 + seed);
        if (clean.eigenvalues(0) >= 0.99 && clean.eigenvalues(1) >= 0.99) ++clean_ok;
        const DycaResult noisy = harmonic_dyca(20.0, 2000 + seed);
        worst_signal = std::min(worst_signal, noisy.eigenvalues(1));
        worst_noise = std::max(worst_noise, noisy.eigenvalues(2));
        if (noisy.eigenvalues(1) >= 0.9 && noisy.eigenvalues(2) < 0.5) ++noisy_ok;
    }
    const double t = seconds_since(start);
    return {clean_ok == 20 && noisy_ok == 20 && t < 5.0,
            fmt("noiseless %.0f/20, 20 dB min signal eigenvalue %.3f, max noise eigenvalue %.3f", clean_ok,
                worst_signal, worst_noise) +
                fmt(", %.2f s", t)};
}

int run_cli(const std::string& args, const fs::path& log) {
    const std::string cmd = "'" EEGTDA_CLI_PATH "' " + args + " > '" + log.string() + "' 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct FullRuns {
    fs::path first, second;
    int first_code = -1, second_code = -1;
    double first_seconds = 0.0;
};

FullRuns full_runs(const fs::path& root) {
    FullRuns r;
    r.first = root / "run1";
    r.second = root / "run2";
    const auto start = std::chrono::steady_clock::now();
    r.first_code = run_cli("run-all --seed 42 -o '" + r.first.string() + "'", root / "run1.log");
    r.first_seconds = seconds_since(start);
    r.second_code = run_cli("run-all --seed 42 -o '" + r.second.string() + "'", root / "run2.log");
    return r;
}

Outcome a3_classification(const FullRuns& runs) {
    if (runs.first_code != 0) return {false, "run-all exited with status " + std::to_string(runs.first_code)};
    const auto report = nlohmann::json::parse(read_file(runs.first / "report.json"));
    const double acc = report["test"]["accuracy"].get<double>();
    const auto total = report["test"]["total"].get<double>();
    const auto segments = report["train"]["total"].get<double>() + total;
    return {acc >= 0.90 && segments == 1100 && runs.first_seconds < 600.0,
            fmt("held-out accuracy %.4f on %.0f of 1100 segments", acc, total) +
                fmt(", run-all took %.1f s", runs.first_seconds)};
}

Outcome a4_landscapes() {
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<int> count(0, 20);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    std::uniform_int_distribution<int> coarse(0, 8);
    double worst = 0.0;
    int violations = 0;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::pair<double, double>> pairs;
        std::vector<PersistencePair> diagram;
        const int n = count(rng);
        const bool grid = trial % 3 == 0;  // coincident endpoints
        for (int i = 0; i < n; ++i) {
            double b = grid ? coarse(rng) : u(rng);
            double d = grid ? coarse(rng) : u(rng);
            if (b > d) std::swap(b, d);
            if (b == d) d += 1.0;
            pairs.emplace_back(b, d);
            diagram.push_back({1, b, d});
        }
        const PersistenceLandscape ls = build_landscape(diagram, n + 1);
        for (int g = 0; g <= 10000; ++g) {
            const double t = -0.5 + 11.0 * g / 10000.0;
            for (std::size_t k = 1; k <= pairs.size() + 1; ++k) {
                const double got = ls.evaluate(k, t);
                worst = std::max(worst, std::abs(got - oracle::landscape_at(pairs, k, t)));
                if (ls.evaluate(k + 1, t) > got + 1e-12) ++violations;
            }
        }
        for (const auto& level : ls.levels) {
            for (std::size_t i = 1; i < level.size(); ++i) {
                const double rise = std::abs(level[i].value - level[i - 1].value);
                const double run = level[i].t - level[i - 1].t;
                if (run < 0.0 || (rise > 1e-12 && std::abs(rise - run) > 1e-12)) ++violations;
            }
        }
    }
    return {worst <= 1e-9 && violations == 0,
            fmt("max deviation from the grid oracle %.2e, %.0f invariant violations", worst, violations)};
}

Outcome a5_montages(const FullRuns& runs) {
    // A positive segment over the full electrode set, Cz included, so every
    // shipped montage applies to it.
    SynthSpec spec;
    spec.system = SynthSystem::kRossler;
    spec.time_scale = 9.0;
    spec.channels = static_cast<int>(standard_electrodes().size());
    spec.labels = standard_electrodes();
    spec.seed = 77;
    spec.burn_in = 60.0;
    spec.snr_db = 10.0;
    const Recording rec = generate(spec).recording;
    std::vector<Eigen::MatrixXd> traj;
    for (const Montage& m : {standard_bipolar(), standard_average(), standard_cz_reference()}) {
        traj.push_back(dyca(apply_montage(rec, m).samples(), rec.rate(), {}).trajectory.points);
    }
    double worst_cc = 1.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        for (std::size_t j = i + 1; j < traj.size(); ++j) {
            worst_cc = std::min(worst_cc, test::canonical_correlations(traj[i], traj[j]).minCoeff());
        }
    }

    if (runs.first_code != 0) return {false, "run-all failed, no corpus features"};
    const auto rows = read_features_csv(runs.first / "features.csv");
    const auto& names = feature_names();
    const auto col = static_cast<std::size_t>(std::find(names.begin(), names.end(), "h1_lifetime_max") - names.begin());
    std::vector<double> pos, neg;
    for (const auto& r : rows) {
        if (r.label == SegmentLabel::kIed) pos.push_back(r.values[col]);
        if (r.label == SegmentLabel::kBackground) neg.push_back(r.values[col]);
    }
    std::sort(neg.begin(), neg.end());
    double wins = 0.0;
    for (double p : pos) wins += static_cast<double>(std::lower_bound(neg.begin(), neg.end(), p) - neg.begin());
    const double fraction = wins / (static_cast<double>(pos.size()) * static_cast<double>(neg.size()));
    return {worst_cc >= 0.9 && fraction >= 0.9,
            fmt("min pairwise canonical correlation %.4f, positive H1 max lifetime exceeds negative in %.1f%% of %.0f pairs",
                worst_cc, 100.0 * fraction, static_cast<double>(pos.size() * neg.size()))};
}

Outcome a6_determinism(const FullRuns& runs) {
    if (runs.first_code != 0 || runs.second_code != 0) return {false, "a run-all execution failed"};
    bool same = true;
    std::string detail;
    for (const char* name : {"features.csv", "model.txt"}) {
        const std::string a = read_file(runs.first / name), b = read_file(runs.second / name);
        const bool eq = !a.empty() && a == b;
        same = same && eq;
        detail += std::string(detail.empty() ? "" : ", ") + name + (eq ? " identical" : " differs");
    }
    return {same, detail};
}

Outcome a7_scale() {
    const auto corpus = make_corpus(40, 40, 7);
    std::vector<FeatureVector> rows;
    Labels y;
    for (const auto& seg : corpus) {
        FeatureVector fv;
        fv.values = analyze_segment(seg.data, seg.rate, {}).features;
        rows.push_back(fv);
        y.push_back(seg.label == SegmentLabel::kIed ? 1 : -1);
    }
    ProtocolConfig pc;
    pc.test_fraction = 0.0;
    pc.seed = 7;
    const SvmModel model = run_protocol(feature_matrix(rows), y, pc).model;

    double traj_diff = 0.0, feat_diff = 0.0;
    int prediction_changes = 0;
    for (std::size_t i = 0; i < corpus.size(); i += 4) {
        const auto& seg = corpus[i];
        const SegmentAnalysis a = analyze_segment(seg.data, seg.rate, {});
        const SegmentAnalysis b = analyze_segment(10.0 * seg.data, seg.rate, {});
        traj_diff = std::max(traj_diff, (a.trajectory.points - b.trajectory.points).cwiseAbs().maxCoeff());
        for (std::size_t k = 0; k < a.features.size(); ++k) {
            feat_diff = std::max(feat_diff, std::abs(a.features[k] - b.features[k]) / std::max(1.0, std::abs(a.features[k])));
        }
        const Eigen::Map<const Eigen::VectorXd> fa(a.features.data(), static_cast<Eigen::Index>(a.features.size()));
        const Eigen::Map<const Eigen::VectorXd> fb(b.features.data(), static_cast<Eigen::Index>(b.features.size()));
        if (model.predict(fa) != model.predict(fb)) ++prediction_changes;
    }
    return {traj_diff <= 1e-9 && feat_diff <= 1e-9 && prediction_changes == 0,
            fmt("max trajectory difference %.2e, max feature difference %.2e, %.0f prediction changes", traj_diff,
                feat_diff, prediction_changes)};
}

}  // namespace

int main() {
    const fs::path root = fs::temp_directory_path() / ("eegtda-acceptance-" + std::to_string(std::random_device{}()));
    fs::create_directories(root);
    int failures = 0;
    auto report = [&](const char* id, const char* what, const std::function<Outcome()>& check) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s %s %s: %s\n", o.pass ? "PASS" : "FAIL", id, what, o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failures;
    };

    report("A1", "homology oracle", a1_homology);
    report("A2", "DyCA recovery", a2_dyca);
    const FullRuns runs = full_runs(root);
    report("A3", "end-to-end classification", [&] { return a3_classification(runs); });
    report("A4", "landscape correctness", a4_landscapes);
    report("A5", "montage contrast", [&] { return a5_montages(runs); });
    report("A6", "determinism", [&] { return a6_determinism(runs); });
    report("A7", "scale invariance", a7_scale);

    std::error_code ec;
    fs::remove_all(root, ec);
    return failures == 0 ? 0 : 1;
}
