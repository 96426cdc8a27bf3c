#include <cmath>
#include <cstring>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "eegtda/eegtda.h"

namespace fs = std::filesystem;

namespace {

struct Dir {
    fs::path path;
    Dir() {
        std::random_device rd;
        path = fs::temp_directory_path() / ("eegtda-capi-" + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~Dir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const char* name) const { return (path / name).string(); }
};

eegtda_recording* harmonic_recording(int channels, uint64_t seed) {
    eegtda_synth_spec spec;
    eegtda_synth_spec_default(&spec);
    spec.system = EEGTDA_SYNTH_HARMONIC;
    spec.channels = channels;
    spec.time_scale = 2.0 * M_PI * 8.0;
    spec.seed = seed;
    spec.has_snr = 1;
    spec.snr_db = 20.0;
    eegtda_recording* rec = nullptr;
    REQUIRE(eegtda_synth_generate(&spec, nullptr, &rec) == EEGTDA_OK);
    return rec;
}

}  // namespace

TEST_CASE("status categories and version") {
    CHECK(std::strcmp(eegtda_status_category(EEGTDA_OK), "ok") == 0);
    CHECK(std::strcmp(eegtda_status_category(EEGTDA_ERR_PARSE), "parse") == 0);
    CHECK(std::strcmp(eegtda_status_category(EEGTDA_ERR_CONFIG), "config") == 0);
    CHECK(std::strlen(eegtda_version()) > 0);
}

TEST_CASE("recordings: create, copy, invalid arguments") {
    const char* labels[] = {"a", "b"};
    const double samples[] = {1, 2, 3, 4, 5, 6};
    eegtda_recording* rec = nullptr;
    REQUIRE(eegtda_recording_create(labels, 2, samples, 3, 100.0, &rec) == EEGTDA_OK);
    CHECK(eegtda_recording_channels(rec) == 2);
    CHECK(eegtda_recording_samples(rec) == 3);
    CHECK(eegtda_recording_rate(rec) == 100.0);
    CHECK(std::string(eegtda_recording_label(rec, 1)) == "b");
    double out[6] = {};
    CHECK(eegtda_recording_copy_data(rec, out, 6) == EEGTDA_OK);
    CHECK(out[4] == 5);
    CHECK(eegtda_recording_copy_data(rec, out, 5) == EEGTDA_ERR_INVALID_ARGUMENT);
    eegtda_recording_free(rec);

    eegtda_recording* untouched = nullptr;
    CHECK(eegtda_recording_create(nullptr, 2, samples, 3, 100.0, &untouched) == EEGTDA_ERR_INVALID_ARGUMENT);
    CHECK(untouched == nullptr);
    CHECK(std::strlen(eegtda_last_error()) > 0);
    CHECK(eegtda_recording_read_csv("/nonexistent/file.csv", 128.0, &untouched) == EEGTDA_ERR_IO);
    CHECK(untouched == nullptr);
    eegtda_recording_free(nullptr);
}

TEST_CASE("file round-trips and montages") {
    Dir dir;
    eegtda_recording* rec = nullptr;
    eegtda_corpus_options co;
    eegtda_corpus_options_default(&co);
    eegtda_segments* segs = nullptr;
    REQUIRE(eegtda_corpus(2, 2, 1, &co, &segs) == EEGTDA_OK);
    CHECK(eegtda_segments_count(segs) == 4);
    CHECK(eegtda_segment_label(segs, 0) == EEGTDA_LABEL_IED);
    CHECK(eegtda_segment_label(segs, 3) == EEGTDA_LABEL_BACKGROUND);
    REQUIRE(eegtda_segments_concatenate(segs, dir.file("labels.csv").c_str(), &rec) == EEGTDA_OK);
    CHECK(eegtda_recording_samples(rec) == 4 * 128);

    const eegtda_meta meta[] = {{"origin", "test"}};
    REQUIRE(eegtda_recording_write_csv(rec, dir.file("r.csv").c_str(), meta, 1) == EEGTDA_OK);
    eegtda_recording* back = nullptr;
    REQUIRE(eegtda_recording_read_csv(dir.file("r.csv").c_str(), 128.0, &back) == EEGTDA_OK);
    std::vector<double> a(27 * 512), b(27 * 512);
    eegtda_recording_copy_data(rec, a.data(), a.size());
    eegtda_recording_copy_data(back, b.data(), b.size());
    CHECK(a == b);

    eegtda_segments* labeled = nullptr;
    REQUIRE(eegtda_segments_labeled(back, "corpus", 1.0, dir.file("labels.csv").c_str(), &labeled) == EEGTDA_OK);
    REQUIRE(eegtda_segments_count(labeled) == 4);
    CHECK(eegtda_segment_start(labeled, 2) == 256);
    CHECK(eegtda_segment_label(labeled, 1) == EEGTDA_LABEL_IED);

    REQUIRE(eegtda_recording_write_edf(rec, dir.file("r.edf").c_str()) == EEGTDA_OK);
    eegtda_recording* edf = nullptr;
    REQUIRE(eegtda_recording_read_edf(dir.file("r.edf").c_str(), &edf) == EEGTDA_OK);
    CHECK(eegtda_recording_channels(edf) == 27);
    CHECK(eegtda_recording_rate(edf) == 128.0);

    eegtda_montage* mon = nullptr;
    REQUIRE(eegtda_montage_standard("average", &mon) == EEGTDA_OK);
    CHECK(eegtda_montage_outputs(mon) == 27);
    eegtda_recording* avg = nullptr;
    REQUIRE(eegtda_montage_apply(mon, rec, &avg) == EEGTDA_OK);
    CHECK(eegtda_recording_channels(avg) == 27);
    eegtda_recording_free(avg);
    eegtda_montage_free(mon);

    // The corpus carries no Cz channel, so the Cz reference cannot be applied.
    REQUIRE(eegtda_montage_standard("cz_reference", &mon) == EEGTDA_OK);
    eegtda_recording* cz = nullptr;
    CHECK(eegtda_montage_apply(mon, rec, &cz) == EEGTDA_ERR_CONFIG);
    CHECK(cz == nullptr);
    CHECK(std::string(eegtda_last_error()).find("Cz") != std::string::npos);
    eegtda_montage* none = nullptr;
    CHECK(eegtda_montage_standard("nonsense", &none) == EEGTDA_ERR_NOT_FOUND);
    CHECK(none == nullptr);

    eegtda_segments* tiles = nullptr;
    REQUIRE(eegtda_segments_tile(rec, "x", 1.0, &tiles) == EEGTDA_OK);
    CHECK(eegtda_segments_count(tiles) == 4);
    CHECK(std::string(eegtda_segment_source_id(tiles, 0)) == "x");

    eegtda_montage_free(mon);
    eegtda_segments_free(tiles);
    eegtda_segments_free(labeled);
    eegtda_segments_free(segs);
    eegtda_recording_free(edf);
    eegtda_recording_free(back);
    eegtda_recording_free(rec);
}

TEST_CASE("reduction, persistence, landscapes and features") {
    eegtda_recording* rec = harmonic_recording(10, 3);
    eegtda_reduce_options ro;
    eegtda_reduce_options_default(&ro);
    ro.n = 2;
    ro.m = 2;
    eegtda_trajectory* traj = nullptr;
    REQUIRE(eegtda_reduce(rec, &ro, &traj) == EEGTDA_OK);
    CHECK(eegtda_trajectory_rows(traj) == 128);
    CHECK(eegtda_trajectory_cols(traj) == 2);
    CHECK(eegtda_trajectory_eigenvalue_count(traj) == 10);
    CHECK(eegtda_trajectory_eigenvalue(traj, 1) > 0.9);

    ro.n = 3;
    ro.m = 1;
    eegtda_trajectory* bad = nullptr;
    CHECK(eegtda_reduce(rec, &ro, &bad) == EEGTDA_ERR_CONFIG);

    eegtda_homology_options ho;
    eegtda_homology_options_default(&ho);
    eegtda_diagram* diag = nullptr;
    REQUIRE(eegtda_diagram_compute(traj, &ho, &diag) == EEGTDA_OK);
    double longest = 0.0;
    for (size_t i = 0; i < eegtda_diagram_size(diag); ++i) {
        int dim = 0;
        double birth = 0.0, death = 0.0;
        REQUIRE(eegtda_diagram_pair(diag, i, &dim, &birth, &death) == EEGTDA_OK);
        if (dim == 1) longest = std::max(longest, death - birth);
    }
    CHECK(longest > 1.0);  // the oscillator traces one dominant loop
    int dim = 0;
    double birth = 0.0, death = 0.0;
    CHECK(eegtda_diagram_pair(diag, eegtda_diagram_size(diag), &dim, &birth, &death) == EEGTDA_ERR_NOT_FOUND);

    eegtda_landscape* ls = nullptr;
    REQUIRE(eegtda_landscape_build(diag, 1, 2, &ls) == EEGTDA_OK);
    eegtda_norms norms;
    REQUIRE(eegtda_landscape_norms(ls, 1, &norms) == EEGTDA_OK);
    CHECK(norms.sup == doctest::Approx(longest / 2.0));
    CHECK(eegtda_landscape_evaluate(ls, 1, norms.argmax) == doctest::Approx(norms.sup));

    std::vector<double> features(eegtda_feature_count());
    REQUIRE(eegtda_features_extract(diag, features.data()) == EEGTDA_OK);
    CHECK(features.size() == 40);
    CHECK(std::string(eegtda_feature_name(0)) == "h0_count");
    CHECK(std::string(eegtda_feature_name(39)) == "h1_pl2_sup");
    CHECK(eegtda_feature_schema_version() == 1);
    CHECK(features[20 + 16] == doctest::Approx(norms.sup));

    eegtda_landscape_free(ls);
    eegtda_diagram_free(diag);
    eegtda_trajectory_free(traj);
    eegtda_recording_free(rec);
}

TEST_CASE("training, persistence and evaluation through tables") {
    Dir dir;
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    eegtda_table* table = nullptr;
    REQUIRE(eegtda_table_create(&table) == EEGTDA_OK);
    std::vector<double> row(eegtda_feature_count());
    for (int i = 0; i < 60; ++i) {
        const int label = i % 2 ? EEGTDA_LABEL_IED : EEGTDA_LABEL_BACKGROUND;
        for (double& v : row) v = g(rng);
        row[0] += 3.0 * label;
        REQUIRE(eegtda_table_append(table, "s", static_cast<size_t>(i) * 128, label, row.data()) == EEGTDA_OK);
    }
    CHECK(eegtda_table_append(table, "s", 0, 7, row.data()) == EEGTDA_ERR_INVALID_ARGUMENT);
    const eegtda_meta meta[] = {{"config_hash", "abc"}};
    REQUIRE(eegtda_table_write_csv(table, dir.file("f.csv").c_str(), meta, 1) == EEGTDA_OK);
    eegtda_table* back = nullptr;
    REQUIRE(eegtda_table_read_csv(dir.file("f.csv").c_str(), &back) == EEGTDA_OK);
    CHECK(eegtda_table_rows(back) == 60);
    CHECK(std::string(eegtda_table_meta(back, "config_hash")) == "abc");
    CHECK(eegtda_table_meta(back, "absent") == nullptr);

    eegtda_train_config config;
    eegtda_train_config_default(&config);
    config.seed = 9;
    eegtda_training* tr = nullptr;
    REQUIRE(eegtda_train(back, &config, &tr) == EEGTDA_OK);
    CHECK(eegtda_training_cell_count(tr) == 16);
    eegtda_report test_report;
    eegtda_training_report(tr, 1, &test_report);
    CHECK(test_report.total == eegtda_training_part_size(tr, 1));
    CHECK(test_report.accuracy >= 0.8);

    eegtda_model* model = nullptr;
    REQUIRE(eegtda_training_model(tr, &model) == EEGTDA_OK);
    eegtda_model* tagged = nullptr;
    REQUIRE(eegtda_model_with_meta(model, "features_hash", "xyz", &tagged) == EEGTDA_OK);
    REQUIRE(eegtda_model_save(tagged, dir.file("m.txt").c_str()) == EEGTDA_OK);
    eegtda_model* loaded = nullptr;
    REQUIRE(eegtda_model_load(dir.file("m.txt").c_str(), &loaded) == EEGTDA_OK);
    CHECK(std::string(eegtda_model_meta(loaded, "features_hash")) == "xyz");
    double d1 = 0.0, d2 = 0.0;
    REQUIRE(eegtda_model_decision(model, row.data(), &d1) == EEGTDA_OK);
    REQUIRE(eegtda_model_decision(loaded, row.data(), &d2) == EEGTDA_OK);
    CHECK(d1 == d2);
    eegtda_report all;
    REQUIRE(eegtda_model_evaluate(loaded, back, nullptr, 0, &all) == EEGTDA_OK);
    CHECK(all.total == 60);

    eegtda_table* unlabeled = nullptr;
    REQUIRE(eegtda_table_create(&unlabeled) == EEGTDA_OK);
    eegtda_table_append(unlabeled, "u", 0, EEGTDA_LABEL_UNLABELED, row.data());
    eegtda_training* none = nullptr;
    CHECK(eegtda_train(unlabeled, &config, &none) != EEGTDA_OK);
    CHECK(none == nullptr);

    eegtda_table_free(unlabeled);
    eegtda_model_free(loaded);
    eegtda_model_free(tagged);
    eegtda_model_free(model);
    eegtda_training_free(tr);
    eegtda_table_free(back);
    eegtda_table_free(table);
}
