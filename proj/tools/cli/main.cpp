#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "handles.hpp"

namespace {

struct Global {
    std::string config_file;
    std::vector<std::string> sets;
    std::string output_dir;
    std::optional<unsigned> workers;
    std::optional<std::uint64_t> seed;
    bool force = false;
};

cli::Json resolved_config(const Global& g) {
    std::vector<std::string> overrides = g.sets;
    if (g.seed) overrides.push_back("seed=" + std::to_string(*g.seed));
    if (g.workers) overrides.push_back("workers=" + std::to_string(*g.workers));
    if (!g.output_dir.empty()) overrides.push_back("output_dir=" + cli::Json(g.output_dir).dump());
    std::optional<std::filesystem::path> file;
    if (!g.config_file.empty()) file = g.config_file;
    return cli::resolve_config(file, overrides);
}

int report_failure(eegtda_status status, const std::string& message) {
    std::cerr << "error[" << eegtda_status_category(status) << "]: " << message << "\n";
    return static_cast<int>(status);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"EEG topological analysis pipeline: ingest, reduce, topo, features, train, eval"};
    app.set_version_flag("--version", std::string(eegtda_version()));
    app.require_subcommand(1, 1);
    app.fallthrough();

    Global g;
    app.add_option("-c,--config", g.config_file, "JSON config file")->check(CLI::ExistingFile);
    app.add_option("--set", g.sets, "Override a config key, e.g. --set svm.folds=3 (repeatable)");
    app.add_option("-o,--output-dir", g.output_dir, "Store directory (overrides the config and $EEGTDA_OUTPUT_DIR)");
    app.add_option("-j,--workers", g.workers, "Worker threads (0: one per logical CPU)");
    app.add_option("--seed", g.seed, "Master seed");
    app.add_flag("-f,--force", g.force, "Rebuild stages whose outputs were made with a different config");

    auto* synth = app.add_subcommand("synth", "Generate the labeled synthetic corpus, or one recording with --system");
    cli::SystemOptions sys;
    std::optional<double> snr;
    synth->add_option("--system", sys.system, "harmonic, rossler or noise: write a single recording instead");
    synth->add_option("--out", sys.out, "Output file for --system (.csv or .edf)");
    synth->add_option("--duration", sys.duration, "Seconds (--system)")->capture_default_str();
    synth->add_option("--rate", sys.rate, "Hz (--system)")->capture_default_str();
    synth->add_option("--channels", sys.channels, "Channel count (--system)")->capture_default_str();
    synth->add_option("--snr-db", snr, "Signal-to-noise ratio in dB (--system)");

    auto* ingest = app.add_subcommand("ingest", "Read inputs, apply the montage and cut segments");
    auto* reduce = app.add_subcommand("reduce", "Reduce each segment to a trajectory (DyCA or PCA)");
    auto* topo = app.add_subcommand("topo", "Persistence diagrams and landscapes per trajectory");
    auto* features = app.add_subcommand("features", "Assemble the feature matrix");
    auto* train = app.add_subcommand("train", "Split, grid-search, fit and save the model");

    auto* eval = app.add_subcommand("eval", "Print accuracy and the confusion matrix of a model");
    cli::EvalOptions eval_opts;
    std::string eval_model, eval_features;
    eval->add_option("--model", eval_model, "Model file (default: the store's)");
    eval->add_option("--features", eval_features, "Feature matrix (default: the store's)");
    eval->add_flag("--all", eval_opts.all_rows, "Use every labeled row, not just the held-out part");

    auto* plot = app.add_subcommand("plot-data", "Write trajectory and landscape CSVs for one segment");
    cli::PlotOptions plot_opts;
    plot->add_option("segment", plot_opts.segment, "Segment id or source_id:start_sample")->required();
    plot->add_option("--dimension", plot_opts.dimension, "Homology dimension of the landscape")->capture_default_str();

    auto* run_all = app.add_subcommand("run-all", "Run every stage in order");
    auto* config = app.add_subcommand("config", "Print the fully resolved config");
    bool show_hashes = false;
    config->add_flag("--hashes", show_hashes, "Print the per-stage config hashes instead");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report_failure(EEGTDA_ERR_CONFIG, e.what());
    }

    try {
        const cli::Json resolved = resolved_config(g);
        if (config->parsed() && !show_hashes) {
            std::cout << resolved.dump(2) << "\n";
            return 0;
        }
        const cli::Context ctx = cli::make_context(resolved, g.force);
        if (config->parsed()) {
            const auto& h = ctx.hashes;
            std::cout << "synth " << h.synth << "\ningest " << h.ingest << "\nreduce " << h.reduce << "\ntopo "
                      << h.topo << "\nfeatures " << h.features << "\ntrain " << h.train << "\n";
        } else if (synth->parsed()) {
            if (sys.system.empty()) {
                if (!sys.out.empty()) return report_failure(EEGTDA_ERR_CONFIG, "--out needs --system");
                cli::cmd_synth_corpus(ctx);
            } else {
                if (sys.out.empty()) return report_failure(EEGTDA_ERR_CONFIG, "--system needs --out");
                sys.snr_db = snr;
                cli::cmd_synth_system(ctx, sys);
            }
        } else if (ingest->parsed()) {
            cli::cmd_ingest(ctx);
        } else if (reduce->parsed()) {
            cli::cmd_reduce(ctx);
        } else if (topo->parsed()) {
            cli::cmd_topo(ctx);
        } else if (features->parsed()) {
            cli::cmd_features(ctx);
        } else if (train->parsed()) {
            cli::cmd_train(ctx);
        } else if (eval->parsed()) {
            if (!eval_model.empty()) eval_opts.model = eval_model;
            if (!eval_features.empty()) eval_opts.features = eval_features;
            cli::cmd_eval(ctx, eval_opts);
        } else if (plot->parsed()) {
            cli::cmd_plot_data(ctx, plot_opts);
        } else if (run_all->parsed()) {
            cli::cmd_run_all(ctx);
        }
    } catch (const cli::Failure& e) {
        return report_failure(e.status(), e.what());
    } catch (const std::filesystem::filesystem_error& e) {
        return report_failure(EEGTDA_ERR_IO, e.what());
    } catch (const std::exception& e) {
        return report_failure(EEGTDA_ERR_INTERNAL, e.what());
    }
    return 0;
}
