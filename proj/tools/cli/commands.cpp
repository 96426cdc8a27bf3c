#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>

#include "handles.hpp"
#include "pool.hpp"

namespace cli {

namespace {

const std::vector<std::string> kStandardMontages = {"bipolar", "average", "cz_reference"};

void echo_config(const Context& ctx) { write_text(ctx.store.config_echo(), ctx.config.resolved.dump(2) + "\n"); }

fs::path corpus_path(const Context& ctx) {
    fs::path p = ctx.store.corpus_recording();
    if (ctx.config.synth.format == "edf") p.replace_extension(".edf");
    return p;
}

Montage load_montage(const std::string& ref) {
    if (fs::exists(ref)) return make<Montage>("montage " + ref, eegtda_montage_read, ref.c_str());
    for (const auto& name : kStandardMontages) {
        if (ref == name) return make<Montage>("montage", eegtda_montage_standard, ref.c_str());
    }
    fail(EEGTDA_ERR_NOT_FOUND, "montage '" + ref + "' is neither a file nor one of bipolar, average, cz_reference");
}

Recording read_recording(const InputSpec& in) {
    if (in.format == "edf") return make<Recording>(in.path, eegtda_recording_read_edf, in.path.c_str());
    return make<Recording>(in.path, eegtda_recording_read_csv, in.path.c_str(), in.rate);
}

std::vector<InputSpec> ingest_inputs(const Context& ctx) {
    if (!ctx.config.inputs.empty()) return ctx.config.inputs;
    InputSpec corpus;
    corpus.path = corpus_path(ctx).string();
    corpus.format = ctx.config.synth.format;
    corpus.rate = ctx.config.synth.corpus.rate;
    corpus.source_id = ctx.config.corpus_source_id;
    corpus.labels = ctx.store.corpus_labels().string();
    require_hash(corpus.format == "edf" ? corpus.path + ".meta" : corpus.path, ctx.hashes.synth);
    require_hash(corpus.labels, ctx.hashes.synth);
    return {corpus};
}

Json report_json(const eegtda_report& r) {
    return {{"accuracy", r.accuracy},
            {"total", r.total},
            {"confusion", {{"true_background", {{"predicted_background", r.confusion[0][0]}, {"predicted_ied", r.confusion[0][1]}}},
                           {"true_ied", {{"predicted_background", r.confusion[1][0]}, {"predicted_ied", r.confusion[1][1]}}}}}};
}

Json cell_json(const eegtda_grid_cell& cell) {
    Json j = {{"kernel", cell.kernel == EEGTDA_KERNEL_LINEAR ? "linear" : "rbf"}, {"c", cell.c}};
    if (cell.kernel == EEGTDA_KERNEL_RBF) j["gamma"] = cell.gamma;
    return j;
}

std::string describe(const eegtda_grid_cell& cell) {
    std::string s = cell.kernel == EEGTDA_KERNEL_LINEAR ? "linear" : "rbf(gamma=" + format_number(cell.gamma) + ")";
    return s + ", C=" + format_number(cell.c);
}

void print_report(const eegtda_report& r, const std::string& what) {
    char acc[32];
    std::snprintf(acc, sizeof(acc), "%.4f", r.accuracy);
    std::printf("evaluated %zu segments (%s)\n", r.total, what.c_str());
    std::printf("accuracy: %s\n", acc);
    std::printf("confusion matrix (rows: true, columns: predicted)\n");
    std::printf("%12s %11s %6s\n", "", "BACKGROUND", "IED");
    std::printf("  %-10s %11zu %6zu\n", "BACKGROUND", r.confusion[0][0], r.confusion[0][1]);
    std::printf("  %-10s %11zu %6zu\n", "IED", r.confusion[1][0], r.confusion[1][1]);
    std::fflush(stdout);
}

std::optional<std::size_t> parse_index(const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
    try {
        return std::stoull(s);
    } catch (const std::out_of_range&) {
        return std::nullopt;
    }
}

}  // namespace

Context make_context(const Json& resolved, bool force) {
    PipelineConfig config = parse_config(resolved);
    StageHashes hashes = stage_hashes(config);
    Store store(config.output_dir);
    return Context{std::move(config), std::move(hashes), std::move(store), force};
}

void cmd_synth_corpus(const Context& ctx) {
    const auto& h = ctx.hashes;
    if (!begin_stage(ctx.store, "synth", h.synth, "", "", ctx.force)) return;
    echo_config(ctx);
    const SynthConfig& s = ctx.config.synth;
    eegtda_corpus_options opts = s.corpus;
    opts.source_id = ctx.config.corpus_source_id.c_str();
    Segments segs = make<Segments>("corpus", eegtda_corpus, s.positive, s.negative, s.seed, &opts);

    const fs::path rec_path = corpus_path(ctx);
    const fs::path labels_path = ctx.store.corpus_labels();
    fs::create_directories(rec_path.parent_path());
    Recording rec = make<Recording>("corpus", eegtda_segments_concatenate, segs.get(), labels_path.string().c_str());
    const Meta meta = {{"config_hash", h.synth}, {"source_id", ctx.config.corpus_source_id}};
    if (s.format == "edf") {
        check(eegtda_recording_write_edf(rec.get(), rec_path.string().c_str()), rec_path.string());
        // EDF has no comment lines, so the hash travels in a sidecar.
        write_text(rec_path.string() + ".meta", "# config_hash: " + h.synth + "\n");
    } else {
        const MetaView mv(meta);
        check(eegtda_recording_write_csv(rec.get(), rec_path.string().c_str(), mv.data(), mv.size()), rec_path.string());
    }
    write_text(labels_path, "# config_hash: " + h.synth + "\n" + read_text(labels_path));

    const std::size_t n = eegtda_segments_count(segs.get());
    ctx.store.write_stamp("synth", h.synth, {{"segments", n}, {"positive", s.positive}, {"negative", s.negative}});
    std::cout << "synth: " << n << " segments (" << s.positive << " IED, " << s.negative << " background) -> "
              << rec_path.string() << "\n";
}

void cmd_ingest(const Context& ctx) {
    const auto& h = ctx.hashes;
    const bool corpus = ctx.config.inputs.empty();
    if (!begin_stage(ctx.store, "ingest", h.ingest, corpus ? "synth" : "", corpus ? h.synth : "", ctx.force)) return;
    echo_config(ctx);
    std::optional<Montage> montage;
    if (ctx.config.montage) montage = load_montage(*ctx.config.montage);

    std::vector<Segments> groups;
    for (const auto& in : ingest_inputs(ctx)) {
        Recording rec = read_recording(in);
        if (montage) {
            rec = make<Recording>(in.path + ": montage " + eegtda_montage_name(montage->get()), eegtda_montage_apply,
                                  montage->get(), rec.get());
        }
        Segments segs = in.labels.empty()
                            ? make<Segments>(in.path, eegtda_segments_tile, rec.get(), in.source_id.c_str(),
                                             ctx.config.window_seconds)
                            : make<Segments>(in.path, eegtda_segments_labeled, rec.get(), in.source_id.c_str(),
                                             ctx.config.window_seconds, in.labels.c_str());
        std::cout << in.source_id << ": " << eegtda_segments_count(segs.get()) << " segments\n";
        groups.push_back(std::move(segs));
    }

    struct Ref {
        const eegtda_segments* group;
        std::size_t index;
    };
    std::vector<Ref> refs;
    std::vector<SegmentEntry> entries;
    for (const auto& g : groups) {
        for (std::size_t i = 0; i < eegtda_segments_count(g.get()); ++i) {
            SegmentEntry e;
            e.id = entries.size();
            e.source_id = eegtda_segment_source_id(g.get(), i);
            e.start_sample = eegtda_segment_start(g.get(), i);
            e.label = eegtda_segment_label(g.get(), i);
            refs.push_back({g.get(), i});
            entries.push_back(std::move(e));
        }
    }
    if (entries.empty()) fail(EEGTDA_ERR_INSUFFICIENT_DATA, "ingest produced no segments");

    fs::create_directories(ctx.store.segments_dir());
    std::vector<double> rates(entries.size());
    parallel_for(entries.size(), ctx.config.workers, [&](std::size_t i) {
        const SegmentEntry& e = entries[i];
        Recording seg = make<Recording>("segment " + segment_name(i), eegtda_segment_recording, refs[i].group,
                                        refs[i].index);
        rates[i] = eegtda_recording_rate(seg.get());
        const Meta meta = {{"config_hash", h.ingest},
                           {"source_id", e.source_id},
                           {"start_sample", std::to_string(e.start_sample)},
                           {"label", label_name(e.label)}};
        const MetaView mv(meta);
        const fs::path path = ctx.store.segment(i);
        check(eegtda_recording_write_csv(seg.get(), path.string().c_str(), mv.data(), mv.size()), path.string());
    });
    for (std::size_t i = 0; i < entries.size(); ++i) entries[i].rate = rates[i];
    ctx.store.write_segment_index(entries, h.ingest);
    ctx.store.write_stamp("ingest", h.ingest, {{"segments", entries.size()}});
    std::cout << "ingest: " << entries.size() << " segments -> " << ctx.store.segments_dir().string() << "\n";
}

void cmd_reduce(const Context& ctx) {
    const auto& h = ctx.hashes;
    if (!begin_stage(ctx.store, "reduce", h.reduce, "ingest", h.ingest, ctx.force)) return;
    echo_config(ctx);
    const auto entries = ctx.store.read_segment_index(h.ingest);
    std::vector<std::vector<double>> spectra(entries.size());
    fs::create_directories(ctx.store.trajectory(0).parent_path());
    parallel_for(entries.size(), ctx.config.workers, [&](std::size_t i) {
        const fs::path in = ctx.store.segment(i);
        require_hash(in, h.ingest);
        Recording rec = make<Recording>(in.string(), eegtda_recording_read_csv, in.string().c_str(), entries[i].rate);
        Trajectory traj = make<Trajectory>(in.string(), eegtda_reduce, rec.get(), &ctx.config.reduce);
        for (std::size_t k = 0; k < eegtda_trajectory_eigenvalue_count(traj.get()); ++k) {
            spectra[i].push_back(eegtda_trajectory_eigenvalue(traj.get(), k));
        }
        const Meta meta = {{"config_hash", h.reduce}, {"segment", segment_name(i)}};
        const MetaView mv(meta);
        const fs::path out = ctx.store.trajectory(i);
        check(eegtda_trajectory_write_csv(traj.get(), out.string().c_str(), mv.data(), mv.size()), out.string());
    });

    std::size_t width = 0;
    for (const auto& s : spectra) width = std::max(width, s.size());
    std::string text = "# config_hash: " + h.reduce + "\nsegment";
    for (std::size_t k = 1; k <= width; ++k) text += ",lambda" + std::to_string(k);
    text += "\n";
    for (std::size_t i = 0; i < spectra.size(); ++i) {
        text += segment_name(i);
        for (std::size_t k = 0; k < width; ++k) text += "," + (k < spectra[i].size() ? format_number(spectra[i][k]) : "");
        text += "\n";
    }
    write_text(ctx.store.spectra(), text);
    ctx.store.write_stamp("reduce", h.reduce, {{"trajectories", entries.size()}});
    std::cout << "reduce: " << entries.size() << " trajectories, eigenvalue spectra -> "
              << ctx.store.spectra().string() << "\n";
}

void cmd_topo(const Context& ctx) {
    const auto& h = ctx.hashes;
    if (!begin_stage(ctx.store, "topo", h.topo, "reduce", h.reduce, ctx.force)) return;
    echo_config(ctx);
    const auto entries = ctx.store.read_segment_index(h.ingest);
    fs::create_directories(ctx.store.diagram(0).parent_path());
    fs::create_directories(ctx.store.landscape(0, 0).parent_path());
    std::vector<std::size_t> pairs(entries.size());
    parallel_for(entries.size(), ctx.config.workers, [&](std::size_t i) {
        const fs::path in = ctx.store.trajectory(i);
        require_hash(in, h.reduce);
        Trajectory traj = make<Trajectory>(in.string(), eegtda_trajectory_read_csv, in.string().c_str());
        Diagram diag = make<Diagram>(in.string(), eegtda_diagram_compute, traj.get(), &ctx.config.homology);
        pairs[i] = eegtda_diagram_size(diag.get());
        const Meta meta = {{"config_hash", h.topo}, {"segment", segment_name(i)}};
        const MetaView mv(meta);
        const fs::path out = ctx.store.diagram(i);
        check(eegtda_diagram_write_csv(diag.get(), out.string().c_str(), mv.data(), mv.size()), out.string());
        for (int dim = 0; dim <= 1; ++dim) {
            Landscape ls = make<Landscape>(out.string(), eegtda_landscape_build, diag.get(), dim,
                                           ctx.config.landscape_levels);
            const fs::path lp = ctx.store.landscape(i, dim);
            check(eegtda_landscape_write_csv(ls.get(), lp.string().c_str(), mv.data(), mv.size()), lp.string());
        }
    });
    std::size_t total = 0;
    for (auto p : pairs) total += p;
    ctx.store.write_stamp("topo", h.topo, {{"diagrams", entries.size()}, {"pairs", total}});
    std::cout << "topo: " << entries.size() << " diagrams (" << total << " pairs) with H0/H1 landscapes\n";
}

void cmd_features(const Context& ctx) {
    const auto& h = ctx.hashes;
    if (!begin_stage(ctx.store, "features", h.features, "topo", h.topo, ctx.force)) return;
    echo_config(ctx);
    const auto entries = ctx.store.read_segment_index(h.ingest);
    const std::size_t width = eegtda_feature_count();
    std::vector<double> values(entries.size() * width);
    parallel_for(entries.size(), ctx.config.workers, [&](std::size_t i) {
        const fs::path in = ctx.store.diagram(i);
        require_hash(in, h.topo);
        Diagram diag = make<Diagram>(in.string(), eegtda_diagram_read_csv, in.string().c_str());
        check(eegtda_features_extract(diag.get(), values.data() + i * width), in.string());
    });
    Table table = make<Table>("feature table", eegtda_table_create);
    for (const auto& e : entries) {
        check(eegtda_table_append(table.get(), e.source_id.c_str(), e.start_sample, e.label,
                                  values.data() + e.id * width),
              "feature table");
    }
    const Meta meta = {{"config_hash", h.features}};
    const MetaView mv(meta);
    const fs::path out = ctx.store.features();
    check(eegtda_table_write_csv(table.get(), out.string().c_str(), mv.data(), mv.size()), out.string());
    ctx.store.write_stamp("features", h.features, {{"rows", entries.size()}, {"columns", width}});
    std::cout << "features: " << entries.size() << " rows x " << width << " features -> " << out.string() << "\n";
}

void cmd_train(const Context& ctx) {
    const auto& h = ctx.hashes;
    if (!begin_stage(ctx.store, "train", h.train, "features", h.features, ctx.force)) return;
    echo_config(ctx);
    const fs::path features = ctx.store.features();
    require_hash(features, h.features);
    Table table = make<Table>(features.string(), eegtda_table_read_csv, features.string().c_str());

    eegtda_train_config tc = ctx.config.train;
    tc.grid = ctx.config.grid.data();
    tc.grid_size = ctx.config.grid.size();
    eegtda_training* raw = nullptr;
    const eegtda_status st = eegtda_train(table.get(), &tc, &raw);
    if (st != EEGTDA_WARN_NOT_CONVERGED) check(st, "train");
    Training training(raw);
    if (st == EEGTDA_WARN_NOT_CONVERGED) {
        std::cerr << "warning[" << eegtda_status_category(st) << "]: " << eegtda_last_error() << "\n";
    }

    Model fitted = make<Model>("train", eegtda_training_model, training.get());
    const char* schema = eegtda_table_meta(table.get(), "feature_schema");
    Model m1 = make<Model>("model", eegtda_model_with_meta, fitted.get(), "config_hash", h.train.c_str());
    Model m2 = make<Model>("model", eegtda_model_with_meta, m1.get(), "features_hash", h.features.c_str());
    Model model = make<Model>("model", eegtda_model_with_meta, m2.get(), "feature_schema",
                              schema ? schema : std::to_string(eegtda_feature_schema_version()).c_str());
    const fs::path model_path = ctx.store.model();
    check(eegtda_model_save(model.get(), model_path.string().c_str()), model_path.string());

    Json cells = Json::array();
    std::vector<double> folds(static_cast<std::size_t>(std::max(1, tc.folds)));
    for (std::size_t i = 0; i < eegtda_training_cell_count(training.get()); ++i) {
        eegtda_grid_cell cell{};
        double mean = 0.0;
        check(eegtda_training_cell(training.get(), i, &cell, &mean, folds.data(), folds.size()), "train");
        Json c = cell_json(cell);
        c["mean_accuracy"] = mean;
        c["fold_accuracy"] = folds;
        cells.push_back(c);
    }
    eegtda_grid_cell best{};
    eegtda_training_best(training.get(), &best);
    eegtda_report train_report{}, test_report{};
    eegtda_training_report(training.get(), 0, &train_report);
    eegtda_training_report(training.get(), 1, &test_report);
    Json split = {{"train", Json::array()}, {"test", Json::array()}};
    for (int part = 0; part <= 1; ++part) {
        Json& dst = split[part == 0 ? "train" : "test"];
        for (std::size_t k = 0; k < eegtda_training_part_size(training.get(), part); ++k) {
            dst.push_back(eegtda_training_part_index(training.get(), part, k));
        }
    }
    eegtda_grid_cell params{};
    int converged = 0;
    std::size_t support = 0;
    eegtda_model_params(model.get(), &params, &converged, &support);
    const Json report = {{"config_hash", h.train},
                         {"folds", tc.folds},
                         {"seed", tc.seed},
                         {"cells", cells},
                         {"best", cell_json(best)},
                         {"model", {{"converged", converged != 0}, {"support_vectors", support}}},
                         {"train", report_json(train_report)},
                         {"test", report_json(test_report)},
                         {"split", split}};
    write_text(ctx.store.report(), report.dump(2) + "\n");
    ctx.store.write_stamp("train", h.train, {{"best", cell_json(best)}});

    std::printf("train: best cell %s\n", describe(best).c_str());
    std::printf("train: training accuracy %.4f on %zu segments\n", train_report.accuracy, train_report.total);
    if (test_report.total > 0) {
        std::printf("train: held-out accuracy %.4f on %zu segments\n", test_report.accuracy, test_report.total);
    }
    std::printf("train: model -> %s\n", model_path.string().c_str());
    std::fflush(stdout);
}

void cmd_eval(const Context& ctx, const EvalOptions& options) {
    const auto& h = ctx.hashes;
    const bool store_model = !options.model;
    const fs::path model_path = options.model ? fs::path(*options.model) : ctx.store.model();
    const fs::path features_path = options.features ? fs::path(*options.features) : ctx.store.features();
    Model model = make<Model>(model_path.string(), eegtda_model_load, model_path.string().c_str());
    Table table = make<Table>(features_path.string(), eegtda_table_read_csv, features_path.string().c_str());

    const char* model_schema = eegtda_model_meta(model.get(), "feature_schema");
    const char* table_schema = eegtda_table_meta(table.get(), "feature_schema");
    if (!model_schema || !table_schema || std::string(model_schema) != table_schema) {
        fail(EEGTDA_ERR_CONFIG, "feature schema version " + std::string(table_schema ? table_schema : "(none)") + " of " +
                                    features_path.string() + " does not match version " +
                                    (model_schema ? model_schema : "(none)") + " of " + model_path.string());
    }
    if (!ctx.force) {
        if (store_model && !options.features) {
            const char* stamp = eegtda_model_meta(model.get(), "config_hash");
            if (!stamp || stamp != h.train) {
                fail(EEGTDA_ERR_HASH_MISMATCH, model_path.string() + " was trained with config hash " +
                                                   (stamp ? stamp : "(none)") + ", the current config gives " +
                                                   h.train + "; rerun 'train --force' or pass --force");
            }
        }
        const char* used = eegtda_model_meta(model.get(), "features_hash");
        const char* have = eegtda_table_meta(table.get(), "config_hash");
        if (used && have && std::string(used) != have) {
            fail(EEGTDA_ERR_HASH_MISMATCH, "the model was trained on features with config hash " + std::string(used) +
                                               " but " + features_path.string() + " has " + have +
                                               "; pass --force to evaluate anyway");
        }
    }

    std::vector<std::size_t> rows;
    std::string what = "all labeled rows";
    if (!options.all_rows && store_model && !options.features && fs::exists(ctx.store.report())) {
        const Json report = Json::parse(read_text(ctx.store.report()));
        for (const auto& i : report["split"]["test"]) rows.push_back(i.get<std::size_t>());
        if (!rows.empty()) what = "held-out part";
    }
    eegtda_report r{};
    check(eegtda_model_evaluate(model.get(), table.get(), rows.empty() ? nullptr : rows.data(), rows.size(), &r),
          "eval");
    print_report(r, what);
    if (store_model && !options.features) {
        Json j = report_json(r);
        j["rows"] = what;
        j["config_hash"] = h.train;
        write_text(ctx.store.evaluation(), j.dump(2) + "\n");
    }
}

void cmd_plot_data(const Context& ctx, const PlotOptions& options) {
    const auto& h = ctx.hashes;
    if (options.dimension != 0 && options.dimension != 1) fail(EEGTDA_ERR_CONFIG, "--dimension must be 0 or 1");
    for (const auto& [stage, hash] : {std::pair{"reduce", h.reduce}, std::pair{"topo", h.topo}}) {
        const auto stamp = ctx.store.stamp(stage);
        if (!stamp) fail(EEGTDA_ERR_NOT_FOUND, std::string("plot-data needs the ") + stage + " stage; run it first");
        if (stamp->value("config_hash", "") != hash && !ctx.force) {
            fail(EEGTDA_ERR_HASH_MISMATCH, std::string("the ") + stage +
                                               " outputs do not match the current config; rerun it or pass --force");
        }
    }
    const auto entries = ctx.store.read_segment_index(h.ingest);
    std::optional<std::size_t> id;
    if (const auto colon = options.segment.rfind(':'); colon != std::string::npos) {
        const std::string source = options.segment.substr(0, colon);
        const auto start = parse_index(options.segment.substr(colon + 1));
        for (const auto& e : entries) {
            if (start && e.source_id == source && e.start_sample == *start) id = e.id;
        }
    } else if (const auto n = parse_index(options.segment); n && *n < entries.size()) {
        id = *n;
    }
    if (!id) {
        fail(EEGTDA_ERR_NOT_FOUND, "no segment '" + options.segment + "' in " + ctx.store.root().string() +
                                       " (use an id below " + std::to_string(entries.size()) +
                                       " or source_id:start_sample)");
    }
    const SegmentEntry& e = entries[*id];
    const fs::path traj_in = ctx.store.trajectory(*id);
    const fs::path diag_in = ctx.store.diagram(*id);
    const std::string hash = ctx.force ? read_meta(diag_in)["config_hash"] : h.topo;
    if (!ctx.force) {
        require_hash(traj_in, h.reduce);
        require_hash(diag_in, h.topo);
    }
    Trajectory traj = make<Trajectory>(traj_in.string(), eegtda_trajectory_read_csv, traj_in.string().c_str());
    Diagram diag = make<Diagram>(diag_in.string(), eegtda_diagram_read_csv, diag_in.string().c_str());
    Landscape ls = make<Landscape>(diag_in.string(), eegtda_landscape_build, diag.get(), options.dimension,
                                   ctx.config.landscape_levels);

    const Meta meta = {{"config_hash", hash},
                       {"segment", segment_name(*id)},
                       {"source_id", e.source_id},
                       {"start_sample", std::to_string(e.start_sample)},
                       {"label", label_name(e.label)},
                       {"dimension", std::to_string(options.dimension)}};
    const MetaView mv(meta);
    fs::create_directories(ctx.store.plot_dir());
    const fs::path traj_out = ctx.store.plot_dir() / (segment_name(*id) + "_trajectory.csv");
    const fs::path ls_out = ctx.store.plot_dir() / (segment_name(*id) + "_landscape.csv");
    check(eegtda_trajectory_write_csv(traj.get(), traj_out.string().c_str(), mv.data(), mv.size()), traj_out.string());
    check(eegtda_landscape_write_csv(ls.get(), ls_out.string().c_str(), mv.data(), mv.size()), ls_out.string());
    std::cout << "plot-data: trajectory (" << eegtda_trajectory_rows(traj.get()) << " rows) -> " << traj_out.string()
              << "\n";
    std::cout << "plot-data: H" << options.dimension << " landscape (" << eegtda_landscape_levels(ls.get())
              << " levels) -> " << ls_out.string() << "\n";
}

void cmd_synth_system(const Context& ctx, const SystemOptions& options) {
    eegtda_synth_spec spec;
    eegtda_synth_spec_default(&spec);
    if (options.system == "harmonic") spec.system = EEGTDA_SYNTH_HARMONIC;
    else if (options.system == "rossler") spec.system = EEGTDA_SYNTH_ROSSLER;
    else if (options.system == "noise") spec.system = EEGTDA_SYNTH_NOISE;
    else fail(EEGTDA_ERR_CONFIG, "--system must be harmonic, rossler or noise, got '" + options.system + "'");
    spec.duration = options.duration;
    spec.rate = options.rate;
    spec.channels = options.channels;
    spec.seed = ctx.config.synth.seed;
    if (options.snr_db) {
        spec.has_snr = 1;
        spec.snr_db = *options.snr_db;
    }
    Recording rec = make<Recording>("synth", eegtda_synth_generate, &spec, nullptr);
    const fs::path out(options.out);
    if (out.has_parent_path()) fs::create_directories(out.parent_path());
    std::string ext = out.extension().string();
    for (auto& ch : ext) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (ext == ".edf") {
        check(eegtda_recording_write_edf(rec.get(), options.out.c_str()), options.out);
    } else if (ext == ".csv") {
        const Meta meta = {{"system", options.system}, {"seed", std::to_string(spec.seed)}};
        const MetaView mv(meta);
        check(eegtda_recording_write_csv(rec.get(), options.out.c_str(), mv.data(), mv.size()), options.out);
    } else {
        fail(EEGTDA_ERR_UNSUPPORTED_FORMAT, "output '" + options.out + "' must end in .csv or .edf");
    }
    std::cout << "synth: " << options.system << ", " << eegtda_recording_channels(rec.get()) << " channels x "
              << eegtda_recording_samples(rec.get()) << " samples -> " << options.out << "\n";
}

void cmd_run_all(const Context& ctx) {
    if (ctx.config.inputs.empty()) cmd_synth_corpus(ctx);
    cmd_ingest(ctx);
    cmd_reduce(ctx);
    cmd_topo(ctx);
    cmd_features(ctx);
    cmd_train(ctx);
    cmd_eval(ctx, EvalOptions{});
}

}  // namespace cli
