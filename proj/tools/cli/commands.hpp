#pragma once

#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "store.hpp"

namespace cli {

struct Context {
    PipelineConfig config;
    StageHashes hashes;
    Store store;
    bool force = false;
};

Context make_context(const Json& resolved, bool force);

void cmd_synth_corpus(const Context& ctx);
void cmd_ingest(const Context& ctx);
void cmd_reduce(const Context& ctx);
void cmd_topo(const Context& ctx);
void cmd_features(const Context& ctx);
void cmd_train(const Context& ctx);

struct EvalOptions {
    std::optional<std::string> model;     // default: the store's model
    std::optional<std::string> features;  // default: the store's feature matrix
    bool all_rows = false;                // ignore the held-out split
};
void cmd_eval(const Context& ctx, const EvalOptions& options);

struct PlotOptions {
    std::string segment;  // id, zero-padded name or source_id:start_sample
    int dimension = 1;
};
void cmd_plot_data(const Context& ctx, const PlotOptions& options);

struct SystemOptions {
    std::string system;  // harmonic, rossler or noise
    std::string out;
    double duration = 10.0;
    double rate = 128.0;
    int channels = 27;
    std::optional<double> snr_db;
};
void cmd_synth_system(const Context& ctx, const SystemOptions& options);

void cmd_run_all(const Context& ctx);

}  // namespace cli
