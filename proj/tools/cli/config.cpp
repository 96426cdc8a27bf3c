#include "config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "handles.hpp"

namespace cli {

namespace {

[[noreturn]] void config_error(const std::string& message) { fail(EEGTDA_ERR_CONFIG, message); }

// Arrays and scalars replace; objects merge key by key and may only name keys
// the base already has.
void merge_into(Json& base, const Json& overlay, const std::string& where) {
    if (!base.is_object() || !overlay.is_object()) {
        base = overlay;
        return;
    }
    for (const auto& [key, value] : overlay.items()) {
        const std::string path = where.empty() ? key : where + "." + key;
        if (!base.contains(key)) config_error("unknown config key '" + path + "'");
        merge_into(base[key], value, path);
    }
}

const Json& lookup(const Json& j, const std::string& dotted) {
    const Json* node = &j;
    std::size_t start = 0;
    while (start <= dotted.size()) {
        const auto dot = dotted.find('.', start);
        const std::string key = dotted.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (!node->is_object() || !node->contains(key)) config_error("missing config key '" + dotted + "'");
        node = &(*node)[key];
        if (dot == std::string::npos) break;
        start = dot + 1;
    }
    return *node;
}

double number(const Json& j, const std::string& key) {
    const Json& v = lookup(j, key);
    if (!v.is_number()) config_error("config key '" + key + "' must be a number");
    return v.get<double>();
}

std::optional<double> optional_number(const Json& j, const std::string& key) {
    const Json& v = lookup(j, key);
    if (v.is_null()) return std::nullopt;
    if (!v.is_number()) config_error("config key '" + key + "' must be a number or null");
    return v.get<double>();
}

long long integer(const Json& j, const std::string& key) {
    const Json& v = lookup(j, key);
    if (!v.is_number_integer()) config_error("config key '" + key + "' must be an integer");
    return v.get<long long>();
}

std::uint64_t unsigned_integer(const Json& j, const std::string& key) {
    const Json& v = lookup(j, key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
        config_error("config key '" + key + "' must be a nonnegative integer");
    }
    return v.get<std::uint64_t>();
}

std::string string(const Json& j, const std::string& key) {
    const Json& v = lookup(j, key);
    if (!v.is_string()) config_error("config key '" + key + "' must be a string");
    return v.get<std::string>();
}

std::string format_for(const std::string& path, const std::string& format) {
    if (format == "edf" || format == "csv") return format;
    if (format != "auto") config_error("input format must be auto, edf or csv, got '" + format + "'");
    std::string ext = std::filesystem::path(path).extension().string();
    for (auto& ch : ext) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (ext == ".edf") return "edf";
    if (ext == ".csv") return "csv";
    fail(EEGTDA_ERR_UNSUPPORTED_FORMAT, "cannot tell the format of '" + path + "' (use .edf or .csv, or set format)");
}

InputSpec parse_input(Json item, std::size_t index) {
    const std::string where = "inputs[" + std::to_string(index) + "]";
    if (item.is_string()) item = Json{{"path", item}};
    if (!item.is_object()) config_error(where + " must be a path or an object");
    static const Json allowed = {{"path", nullptr}, {"format", "auto"}, {"rate", 128.0}, {"source_id", nullptr},
                                 {"labels", nullptr}};
    Json full = allowed;
    merge_into(full, item, where);
    InputSpec in;
    if (!full["path"].is_string()) config_error(where + ".path must be a string");
    in.path = full["path"].get<std::string>();
    if (!full["format"].is_string()) config_error(where + ".format must be a string");
    in.format = format_for(in.path, full["format"].get<std::string>());
    if (!full["rate"].is_number() || !(full["rate"].get<double>() > 0.0)) {
        config_error(where + ".rate must be a positive number");
    }
    in.rate = full["rate"].get<double>();
    if (full["source_id"].is_string()) in.source_id = full["source_id"].get<std::string>();
    else if (full["source_id"].is_null()) in.source_id = std::filesystem::path(in.path).stem().string();
    else config_error(where + ".source_id must be a string");
    if (full["labels"].is_string()) in.labels = full["labels"].get<std::string>();
    else if (!full["labels"].is_null()) config_error(where + ".labels must be a path or null");
    return in;
}

std::vector<eegtda_grid_cell> parse_grid(const Json& j) {
    const Json& cs = lookup(j, "svm.c");
    const Json& kernels = lookup(j, "svm.kernels");
    const Json& gammas = lookup(j, "svm.gamma");
    if (!cs.is_array() || cs.empty()) config_error("svm.c must be a nonempty list of numbers");
    if (!kernels.is_array() || kernels.empty()) config_error("svm.kernels must be a nonempty list");
    if (!gammas.is_array()) config_error("svm.gamma must be a list");
    std::vector<eegtda_grid_cell> grid;
    for (const auto& c : cs) {
        if (!c.is_number() || !(c.get<double>() > 0.0)) config_error("svm.c entries must be positive numbers");
        for (const auto& k : kernels) {
            if (k == "linear") {
                grid.push_back({EEGTDA_KERNEL_LINEAR, 0.0, c.get<double>()});
            } else if (k == "rbf") {
                if (gammas.empty()) config_error("svm.gamma must not be empty when the rbf kernel is used");
                for (const auto& g : gammas) {
                    if (g == "auto") grid.push_back({EEGTDA_KERNEL_RBF, 0.0, c.get<double>()});
                    else if (g.is_number() && g.get<double>() > 0.0) grid.push_back({EEGTDA_KERNEL_RBF, g.get<double>(), c.get<double>()});
                    else config_error("svm.gamma entries must be positive numbers or \"auto\"");
                }
            } else {
                config_error("svm.kernels entries must be \"linear\" or \"rbf\"");
            }
        }
    }
    return grid;
}

std::string hash_json(const Json& j) { return fnv1a_hex(j.dump()); }

}  // namespace

Json default_config() {
    return Json::parse(R"({
        "inputs": [],
        "montage": null,
        "window_seconds": 1.0,
        "reduction": {"method": "dyca", "n": 3, "m": 2, "eig_threshold": null},
        "homology": {"max_length": null, "scheme": "cohomology"},
        "landscape": {"levels": 2},
        "features": {"schema_version": 1},
        "svm": {
            "c": [0.1, 1, 10, 100],
            "kernels": ["linear", "rbf"],
            "gamma": ["auto", 0.01, 0.1],
            "folds": 5,
            "test_fraction": 0.15,
            "tol": 0.001,
            "max_passes": 200
        },
        "seed": 42,
        "workers": 0,
        "output_dir": "eegtda-out",
        "synth": {
            "positive": 550,
            "negative": 550,
            "seed": null,
            "rate": 128,
            "channels": 27,
            "window_seconds": 1.0,
            "time_scale": 9.0,
            "snr_db": 10.0,
            "noise_smoothing": 0.9,
            "format": "csv",
            "source_id": "corpus"
        }
    })");
}

Json resolve_config(const std::optional<std::filesystem::path>& file, const std::vector<std::string>& overrides) {
    Json config = default_config();
    if (file) {
        std::ifstream in(*file);
        if (!in) fail(EEGTDA_ERR_IO, "cannot open config file " + file->string());
        Json loaded;
        try {
            loaded = Json::parse(in);
        } catch (const Json::parse_error& e) {
            fail(EEGTDA_ERR_PARSE, file->string() + ": " + e.what());
        }
        if (!loaded.is_object()) config_error(file->string() + ": config must be a JSON object");
        merge_into(config, loaded, "");
    }
    if (const char* env = std::getenv(kOutputDirEnv); env && *env) config["output_dir"] = env;
    for (const auto& item : overrides) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) config_error("override '" + item + "' must look like key=value");
        const std::string key = item.substr(0, eq);
        const std::string raw = item.substr(eq + 1);
        Json value;
        try {
            value = Json::parse(raw);
        } catch (const Json::parse_error&) {
            value = raw;
        }
        Json patch = value;
        std::string rest = key;
        while (true) {
            const auto dot = rest.rfind('.');
            patch = Json{{rest.substr(dot == std::string::npos ? 0 : dot + 1), patch}};
            if (dot == std::string::npos) break;
            rest = rest.substr(0, dot);
        }
        merge_into(config, patch, "");
    }
    if (config["synth"]["seed"].is_null()) config["synth"]["seed"] = config["seed"];
    if (config["workers"] == 0) config["workers"] = std::max(1u, std::thread::hardware_concurrency());
    return config;
}

PipelineConfig parse_config(const Json& j) {
    PipelineConfig c;
    c.resolved = j;
    const Json& inputs = lookup(j, "inputs");
    if (!inputs.is_array()) config_error("config key 'inputs' must be a list");
    for (std::size_t i = 0; i < inputs.size(); ++i) c.inputs.push_back(parse_input(inputs[i], i));

    const Json& montage = lookup(j, "montage");
    if (montage.is_string()) c.montage = montage.get<std::string>();
    else if (!montage.is_null()) config_error("config key 'montage' must be a name, a path or null");
    c.window_seconds = number(j, "window_seconds");
    if (!(c.window_seconds > 0.0)) config_error("window_seconds must be positive");

    eegtda_reduce_options_default(&c.reduce);
    const std::string method = string(j, "reduction.method");
    if (method == "dyca") c.reduce.method = EEGTDA_REDUCE_DYCA;
    else if (method == "pca") c.reduce.method = EEGTDA_REDUCE_PCA;
    else config_error("reduction.method must be \"dyca\" or \"pca\", got '" + method + "'");
    c.reduce.n = static_cast<int>(integer(j, "reduction.n"));
    c.reduce.m = static_cast<int>(integer(j, "reduction.m"));
    if (const auto t = optional_number(j, "reduction.eig_threshold")) {
        c.reduce.use_threshold = 1;
        c.reduce.eig_threshold = *t;
    }

    eegtda_homology_options_default(&c.homology);
    if (const auto len = optional_number(j, "homology.max_length")) {
        c.homology.has_max_length = 1;
        c.homology.max_length = *len;
    }
    const std::string scheme = string(j, "homology.scheme");
    if (scheme == "cohomology") c.homology.scheme = EEGTDA_SCHEME_COHOMOLOGY;
    else if (scheme == "boundary") c.homology.scheme = EEGTDA_SCHEME_BOUNDARY;
    else config_error("homology.scheme must be \"cohomology\" or \"boundary\", got '" + scheme + "'");

    c.landscape_levels = static_cast<int>(integer(j, "landscape.levels"));
    if (c.landscape_levels < 1) config_error("landscape.levels must be at least 1");
    c.feature_schema = static_cast<int>(integer(j, "features.schema_version"));
    if (c.feature_schema != eegtda_feature_schema_version()) {
        config_error("features.schema_version " + std::to_string(c.feature_schema) + " is not supported (this build writes version " +
                     std::to_string(eegtda_feature_schema_version()) + ")");
    }

    c.grid = parse_grid(j);
    eegtda_train_config_default(&c.train);
    c.train.folds = static_cast<int>(integer(j, "svm.folds"));
    c.train.test_fraction = number(j, "svm.test_fraction");
    c.train.tol = number(j, "svm.tol");
    c.train.max_passes = static_cast<int>(integer(j, "svm.max_passes"));
    if (c.train.test_fraction < 0.0 || c.train.test_fraction >= 1.0) config_error("svm.test_fraction must lie in [0, 1)");
    if (!(c.train.tol > 0.0)) config_error("svm.tol must be positive");
    if (c.train.max_passes < 1) config_error("svm.max_passes must be at least 1");
    c.seed = unsigned_integer(j, "seed");
    c.train.seed = c.seed;

    const long long workers = integer(j, "workers");
    if (workers < 1) config_error("workers must be at least 1");
    c.workers = static_cast<unsigned>(workers);
    c.output_dir = string(j, "output_dir");

    c.synth.positive = static_cast<int>(integer(j, "synth.positive"));
    c.synth.negative = static_cast<int>(integer(j, "synth.negative"));
    c.synth.seed = unsigned_integer(j, "synth.seed");
    eegtda_corpus_options_default(&c.synth.corpus);
    c.synth.corpus.rate = number(j, "synth.rate");
    c.synth.corpus.channels = static_cast<int>(integer(j, "synth.channels"));
    c.synth.corpus.window_seconds = number(j, "synth.window_seconds");
    c.synth.corpus.time_scale = number(j, "synth.time_scale");
    c.synth.corpus.positive_snr_db = number(j, "synth.snr_db");
    c.synth.corpus.noise_smoothing = number(j, "synth.noise_smoothing");
    c.synth.format = string(j, "synth.format");
    if (c.synth.format != "csv" && c.synth.format != "edf") config_error("synth.format must be \"csv\" or \"edf\"");
    c.corpus_source_id = string(j, "synth.source_id");
    if (c.corpus_source_id.empty()) config_error("synth.source_id must not be empty");
    c.synth.corpus.source_id = nullptr;  // set from corpus_source_id at use
    return c;
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string file_hash(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(EEGTDA_ERR_IO, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return fnv1a_hex(ss.str());
}

StageHashes stage_hashes(const PipelineConfig& config) {
    const Json& j = config.resolved;
    StageHashes h;
    h.synth = hash_json({{"stage", "synth"}, {"synth", j["synth"]}});

    Json ingest = {{"stage", "ingest"}, {"montage", j["montage"]}, {"window_seconds", j["window_seconds"]}};
    if (config.inputs.empty()) {
        ingest["corpus"] = h.synth;
    } else {
        Json inputs = Json::array();
        for (const auto& in : config.inputs) {
            inputs.push_back({{"content", file_hash(in.path)},
                              {"format", in.format},
                              {"rate", in.rate},
                              {"source_id", in.source_id},
                              {"labels", in.labels.empty() ? Json(nullptr) : Json(file_hash(in.labels))}});
        }
        ingest["inputs"] = inputs;
    }
    if (config.montage && std::filesystem::exists(*config.montage)) {
        ingest["montage_content"] = file_hash(*config.montage);
    }
    h.ingest = hash_json(ingest);
    h.reduce = hash_json({{"stage", "reduce"}, {"prev", h.ingest}, {"reduction", j["reduction"]}});
    h.topo = hash_json({{"stage", "topo"}, {"prev", h.reduce}, {"homology", j["homology"]}, {"landscape", j["landscape"]}});
    h.features = hash_json({{"stage", "features"}, {"prev", h.topo}, {"features", j["features"]}});
    h.train = hash_json({{"stage", "train"}, {"prev", h.features}, {"svm", j["svm"]}, {"seed", j["seed"]}});
    return h;
}

}  // namespace cli
