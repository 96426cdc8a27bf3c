#include "eegtda/eegtda.h"

#include <cmath>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "artifacts.hpp"
#include "error.hpp"
#include "pipeline.hpp"
#include "protocol.hpp"
#include "recording.hpp"
#include "svm.hpp"
#include "synth.hpp"

struct eegtda_recording {
    eegtda::Recording rec;
};

struct eegtda_montage {
    eegtda::Montage mon;
};

struct eegtda_segments {
    std::vector<eegtda::Segment> items;
};

struct eegtda_trajectory {
    eegtda::Trajectory traj;
    Eigen::VectorXd eigenvalues;
};

struct eegtda_diagram {
    eegtda::PersistenceDiagram diag;
};

struct eegtda_landscape {
    eegtda::PersistenceLandscape ls;
};

struct eegtda_table {
    std::vector<eegtda::FeatureVector> rows;
    eegtda::Metadata meta;
};

struct eegtda_model {
    eegtda::SvmModel model;
};

struct eegtda_training {
    eegtda::ProtocolResult result;
};

namespace {

using eegtda::ErrorCode;

thread_local std::string last_error;

struct InvalidArgument {
    const char* what;
};

template <class F>
eegtda_status guard(F&& body) {
    try {
        body();
        return EEGTDA_OK;
    } catch (const eegtda::Error& e) {
        last_error = e.what();
        return static_cast<eegtda_status>(e.code());
    } catch (const InvalidArgument& e) {
        last_error = e.what;
        return EEGTDA_ERR_INVALID_ARGUMENT;
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return EEGTDA_ERR_INTERNAL;
    } catch (const std::exception& e) {
        last_error = std::string("internal error: ") + e.what();
        return EEGTDA_ERR_INTERNAL;
    } catch (...) {
        last_error = "internal error";
        return EEGTDA_ERR_INTERNAL;
    }
}

template <class T>
void require(const T* p, const char* what) {
    if (p == nullptr) throw InvalidArgument{what};
}

eegtda::Metadata to_metadata(const eegtda_meta* meta, std::size_t count) {
    eegtda::Metadata out;
    if (count > 0) require(meta, "metadata array is NULL");
    for (std::size_t i = 0; i < count; ++i) {
        require(meta[i].key, "metadata key is NULL");
        require(meta[i].value, "metadata value is NULL");
        out[meta[i].key] = meta[i].value;
    }
    return out;
}

std::string metadata_comment(const eegtda::Metadata& meta) {
    // write_csv takes a single comment; further entries continue it as
    // separate "# key: value" lines.
    std::string out;
    for (const auto& [key, value] : meta) {
        if (!out.empty()) out += "\n# ";
        out += key + ": " + value;
    }
    return out;
}

int label_code(std::optional<eegtda::SegmentLabel> label) {
    if (!label || *label == eegtda::SegmentLabel::kUnlabeled) return EEGTDA_LABEL_UNLABELED;
    return *label == eegtda::SegmentLabel::kIed ? EEGTDA_LABEL_IED : EEGTDA_LABEL_BACKGROUND;
}

eegtda::SegmentLabel label_from_code(int code) {
    switch (code) {
        case EEGTDA_LABEL_IED: return eegtda::SegmentLabel::kIed;
        case EEGTDA_LABEL_BACKGROUND: return eegtda::SegmentLabel::kBackground;
        case EEGTDA_LABEL_UNLABELED: return eegtda::SegmentLabel::kUnlabeled;
        default: throw InvalidArgument{"unknown label code"};
    }
}

// Labeled rows of a table as a matrix plus +1/-1 labels.
struct LabeledData {
    Eigen::MatrixXd x;
    eegtda::Labels y;
};

LabeledData labeled_data(const eegtda_table& table) {
    std::vector<eegtda::FeatureVector> rows;
    LabeledData out;
    for (const auto& fv : table.rows) {
        const int code = label_code(fv.label);
        if (code == EEGTDA_LABEL_UNLABELED) continue;
        rows.push_back(fv);
        out.y.push_back(code);
    }
    out.x = eegtda::feature_matrix(rows);
    return out;
}

eegtda_grid_cell to_c(const eegtda::GridCell& cell) {
    return {cell.kernel.type == eegtda::KernelType::kLinear ? EEGTDA_KERNEL_LINEAR : EEGTDA_KERNEL_RBF,
            cell.kernel.gamma, cell.c};
}

void to_c(const eegtda::EvalReport& report, eegtda_report* out) {
    out->accuracy = report.accuracy;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) out->confusion[i][j] = report.confusion[i][j];
    }
    out->total = report.total();
}

const std::vector<std::size_t>& part_indices(const eegtda_training* tr, int part) {
    return part == 0 ? tr->result.split.train : tr->result.split.test;
}

}  // namespace

extern "C" {

const char* eegtda_status_category(eegtda_status status) {
    switch (status) {
        case EEGTDA_OK: return "ok";
        case EEGTDA_WARN_NOT_CONVERGED: return "not-converged";
        case EEGTDA_ERR_INVALID_ARGUMENT: return "invalid-argument";
        case EEGTDA_ERR_INTERNAL: return "internal";
        default: break;
    }
    if (status >= EEGTDA_ERR_PARSE && status <= EEGTDA_ERR_GENERATION) {
        return eegtda::error_category(static_cast<ErrorCode>(status));
    }
    return "unknown";
}

const char* eegtda_last_error(void) { return last_error.c_str(); }

const char* eegtda_version(void) { return "0.1.0"; }

// recording

eegtda_status eegtda_recording_create(const char* const* labels, size_t channels, const double* samples,
                                      size_t sample_count, double rate, eegtda_recording** out) {
    return guard([&] {
        require(out, "out is NULL");
        if (channels > 0) {
            require(labels, "labels is NULL");
            require(samples, "samples is NULL");
        }
        std::vector<std::string> names;
        for (std::size_t c = 0; c < channels; ++c) {
            require(labels[c], "channel label is NULL");
            names.emplace_back(labels[c]);
        }
        Eigen::MatrixXd data(static_cast<Eigen::Index>(channels), static_cast<Eigen::Index>(sample_count));
        for (std::size_t c = 0; c < channels; ++c) {
            for (std::size_t t = 0; t < sample_count; ++t) {
                data(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(t)) = samples[c * sample_count + t];
            }
        }
        *out = new eegtda_recording{eegtda::Recording(std::move(names), std::move(data), rate)};
    });
}

eegtda_status eegtda_recording_read_edf(const char* path, eegtda_recording** out) {
    return guard([&] {
        require(path, "path is NULL");
        require(out, "out is NULL");
        *out = new eegtda_recording{eegtda::read_edf(path)};
    });
}

eegtda_status eegtda_recording_read_csv(const char* path, double rate, eegtda_recording** out) {
    return guard([&] {
        require(path, "path is NULL");
        require(out, "out is NULL");
        *out = new eegtda_recording{eegtda::read_csv(path, rate)};
    });
}

eegtda_status eegtda_recording_write_edf(const eegtda_recording* rec, const char* path) {
    return guard([&] {
        require(rec, "recording is NULL");
        require(path, "path is NULL");
        eegtda::write_edf(path, rec->rec);
    });
}

eegtda_status eegtda_recording_write_csv(const eegtda_recording* rec, const char* path, const eegtda_meta* meta,
                                         size_t meta_count) {
    return guard([&] {
        require(rec, "recording is NULL");
        require(path, "path is NULL");
        eegtda::write_csv(path, rec->rec, metadata_comment(to_metadata(meta, meta_count)));
    });
}

size_t eegtda_recording_channels(const eegtda_recording* rec) {
    return rec ? static_cast<size_t>(rec->rec.channel_count()) : 0;
}

size_t eegtda_recording_samples(const eegtda_recording* rec) {
    return rec ? static_cast<size_t>(rec->rec.sample_count()) : 0;
}

double eegtda_recording_rate(const eegtda_recording* rec) { return rec ? rec->rec.rate() : 0.0; }

const char* eegtda_recording_label(const eegtda_recording* rec, size_t channel) {
    if (!rec || channel >= rec->rec.channels().size()) return nullptr;
    return rec->rec.channels()[channel].c_str();
}

eegtda_status eegtda_recording_copy_data(const eegtda_recording* rec, double* out, size_t capacity) {
    return guard([&] {
        require(rec, "recording is NULL");
        require(out, "out is NULL");
        const auto& s = rec->rec.samples();
        if (capacity < static_cast<std::size_t>(s.size())) throw InvalidArgument{"output buffer too small"};
        for (Eigen::Index c = 0; c < s.rows(); ++c) {
            for (Eigen::Index t = 0; t < s.cols(); ++t) out[c * s.cols() + t] = s(c, t);
        }
    });
}

void eegtda_recording_free(eegtda_recording* rec) { delete rec; }

// montage

eegtda_status eegtda_montage_read(const char* path, eegtda_montage** out) {
    return guard([&] {
        require(path, "path is NULL");
        require(out, "out is NULL");
        *out = new eegtda_montage{eegtda::read_montage(path)};
    });
}

eegtda_status eegtda_montage_standard(const char* name, eegtda_montage** out) {
    return guard([&] {
        require(name, "name is NULL");
        require(out, "out is NULL");
        const std::string n(name);
        if (n == "bipolar") *out = new eegtda_montage{eegtda::standard_bipolar()};
        else if (n == "average") *out = new eegtda_montage{eegtda::standard_average()};
        else if (n == "cz_reference") *out = new eegtda_montage{eegtda::standard_cz_reference()};
        else eegtda::fail(ErrorCode::kNotFound, "no standard montage named '" + n + "' (bipolar, average, cz_reference)");
    });
}

eegtda_status eegtda_montage_write(const eegtda_montage* mon, const char* path) {
    return guard([&] {
        require(mon, "montage is NULL");
        require(path, "path is NULL");
        eegtda::write_montage(path, mon->mon);
    });
}

const char* eegtda_montage_name(const eegtda_montage* mon) { return mon ? mon->mon.name().c_str() : nullptr; }

size_t eegtda_montage_outputs(const eegtda_montage* mon) { return mon ? mon->mon.out_labels().size() : 0; }

eegtda_status eegtda_montage_apply(const eegtda_montage* mon, const eegtda_recording* rec, eegtda_recording** out) {
    return guard([&] {
        require(mon, "montage is NULL");
        require(rec, "recording is NULL");
        require(out, "out is NULL");
        *out = new eegtda_recording{eegtda::apply_montage(rec->rec, mon->mon)};
    });
}

void eegtda_montage_free(eegtda_montage* mon) { delete mon; }

// segments

eegtda_status eegtda_segments_tile(const eegtda_recording* rec, const char* source_id, double window_seconds,
                                   eegtda_segments** out) {
    return guard([&] {
        require(rec, "recording is NULL");
        require(source_id, "source_id is NULL");
        require(out, "out is NULL");
        *out = new eegtda_segments{eegtda::segment_tiling(rec->rec, source_id, window_seconds)};
    });
}

eegtda_status eegtda_segments_labeled(const eegtda_recording* rec, const char* source_id, double window_seconds,
                                      const char* labels_path, eegtda_segments** out) {
    return guard([&] {
        require(rec, "recording is NULL");
        require(source_id, "source_id is NULL");
        require(labels_path, "labels_path is NULL");
        require(out, "out is NULL");
        std::vector<eegtda::LabelEntry> mine;
        for (auto& e : eegtda::read_labels(labels_path)) {
            if (e.source_id == source_id) mine.push_back(std::move(e));
        }
        if (mine.empty()) {
            eegtda::fail(ErrorCode::kNotFound, std::string(labels_path) + " has no rows for source '" + source_id + "'");
        }
        *out = new eegtda_segments{eegtda::segment(rec->rec, source_id, window_seconds, mine)};
    });
}

size_t eegtda_segments_count(const eegtda_segments* segs) { return segs ? segs->items.size() : 0; }

const char* eegtda_segment_source_id(const eegtda_segments* segs, size_t index) {
    if (!segs || index >= segs->items.size()) return nullptr;
    return segs->items[index].source_id.c_str();
}

size_t eegtda_segment_start(const eegtda_segments* segs, size_t index) {
    if (!segs || index >= segs->items.size()) return 0;
    return segs->items[index].start_sample;
}

int eegtda_segment_label(const eegtda_segments* segs, size_t index) {
    if (!segs || index >= segs->items.size()) return EEGTDA_LABEL_UNLABELED;
    return label_code(segs->items[index].label);
}

eegtda_status eegtda_segment_recording(const eegtda_segments* segs, size_t index, eegtda_recording** out) {
    return guard([&] {
        require(segs, "segments is NULL");
        require(out, "out is NULL");
        if (index >= segs->items.size()) eegtda::fail(ErrorCode::kNotFound, "segment index out of range");
        const auto& s = segs->items[index];
        *out = new eegtda_recording{eegtda::Recording(s.channels, s.data, s.rate)};
    });
}

eegtda_status eegtda_segments_concatenate(const eegtda_segments* segs, const char* labels_path,
                                          eegtda_recording** out) {
    return guard([&] {
        require(segs, "segments is NULL");
        require(out, "out is NULL");
        auto [rec, labels] = eegtda::concatenate(segs->items);
        if (labels_path) eegtda::write_labels(labels_path, labels);
        *out = new eegtda_recording{std::move(rec)};
    });
}

void eegtda_segments_free(eegtda_segments* segs) { delete segs; }

// reduction

void eegtda_reduce_options_default(eegtda_reduce_options* opts) {
    if (!opts) return;
    opts->method = EEGTDA_REDUCE_DYCA;
    opts->n = 3;
    opts->m = 2;
    opts->use_threshold = 0;
    opts->eig_threshold = eegtda::kDefaultEigThreshold;
}

eegtda_status eegtda_reduce(const eegtda_recording* rec, const eegtda_reduce_options* opts,
                            eegtda_trajectory** out) {
    return guard([&] {
        require(rec, "recording is NULL");
        require(out, "out is NULL");
        eegtda_reduce_options o;
        eegtda_reduce_options_default(&o);
        if (opts) o = *opts;
        const auto& data = rec->rec.samples();
        if (o.method == EEGTDA_REDUCE_PCA) {
            eegtda::PcaResult r = eegtda::pca(data, o.n, rec->rec.rate());
            *out = new eegtda_trajectory{std::move(r.trajectory), std::move(r.eigenvalues)};
        } else if (o.method == EEGTDA_REDUCE_DYCA) {
            eegtda::DycaOptions d;
            d.n = o.n;
            d.m = o.m;
            if (o.use_threshold) d.eig_threshold = o.eig_threshold;
            eegtda::DycaResult r = eegtda::dyca(data, rec->rec.rate(), d);
            *out = new eegtda_trajectory{std::move(r.trajectory), std::move(r.eigenvalues)};
        } else {
            throw InvalidArgument{"unknown reduction method"};
        }
    });
}

eegtda_status eegtda_trajectory_create(const double* points, size_t rows, size_t cols, double rate,
                                       eegtda_trajectory** out) {
    return guard([&] {
        require(out, "out is NULL");
        if (rows * cols > 0) require(points, "points is NULL");
        if (!(rate > 0.0)) eegtda::fail(ErrorCode::kConfig, "trajectory rate must be positive");
        eegtda::Trajectory traj;
        traj.points = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
            points, static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
        traj.rate = rate;
        *out = new eegtda_trajectory{std::move(traj), Eigen::VectorXd()};
    });
}

size_t eegtda_trajectory_rows(const eegtda_trajectory* traj) {
    return traj ? static_cast<size_t>(traj->traj.points.rows()) : 0;
}

size_t eegtda_trajectory_cols(const eegtda_trajectory* traj) {
    return traj ? static_cast<size_t>(traj->traj.points.cols()) : 0;
}

eegtda_status eegtda_trajectory_copy_points(const eegtda_trajectory* traj, double* out, size_t capacity) {
    return guard([&] {
        require(traj, "trajectory is NULL");
        require(out, "out is NULL");
        const auto& p = traj->traj.points;
        if (capacity < static_cast<std::size_t>(p.size())) throw InvalidArgument{"output buffer too small"};
        for (Eigen::Index i = 0; i < p.rows(); ++i) {
            for (Eigen::Index j = 0; j < p.cols(); ++j) out[i * p.cols() + j] = p(i, j);
        }
    });
}

size_t eegtda_trajectory_eigenvalue_count(const eegtda_trajectory* traj) {
    return traj ? static_cast<size_t>(traj->eigenvalues.size()) : 0;
}

double eegtda_trajectory_eigenvalue(const eegtda_trajectory* traj, size_t index) {
    if (!traj || index >= static_cast<size_t>(traj->eigenvalues.size())) return std::nan("");
    return traj->eigenvalues(static_cast<Eigen::Index>(index));
}

eegtda_status eegtda_trajectory_write_csv(const eegtda_trajectory* traj, const char* path, const eegtda_meta* meta,
                                          size_t meta_count) {
    return guard([&] {
        require(traj, "trajectory is NULL");
        require(path, "path is NULL");
        eegtda::write_trajectory_csv(path, traj->traj, to_metadata(meta, meta_count));
    });
}

eegtda_status eegtda_trajectory_read_csv(const char* path, eegtda_trajectory** out) {
    return guard([&] {
        require(path, "path is NULL");
        require(out, "out is NULL");
        *out = new eegtda_trajectory{eegtda::read_trajectory_csv(path), Eigen::VectorXd()};
    });
}

void eegtda_trajectory_free(eegtda_trajectory* traj) { delete traj; }

// homology

void eegtda_homology_options_default(eegtda_homology_options* opts) {
    if (!opts) return;
    opts->has_max_length = 0;
    opts->max_length = 0.0;
    opts->scheme = EEGTDA_SCHEME_COHOMOLOGY;
}

eegtda_status eegtda_diagram_compute(const eegtda_trajectory* traj, const eegtda_homology_options* opts,
                                     eegtda_diagram** out) {
    return guard([&] {
        require(traj, "trajectory is NULL");
        require(out, "out is NULL");
        eegtda_homology_options o;
        eegtda_homology_options_default(&o);
        if (opts) o = *opts;
        if (o.scheme != EEGTDA_SCHEME_COHOMOLOGY && o.scheme != EEGTDA_SCHEME_BOUNDARY) {
            throw InvalidArgument{"unknown reduction scheme"};
        }
        std::optional<double> max_length;
        if (o.has_max_length) max_length = o.max_length;
        const auto filt = eegtda::build_filtration(traj->traj.points, max_length);
        const auto scheme = o.scheme == EEGTDA_SCHEME_BOUNDARY ? eegtda::ReductionScheme::kBoundary
                                                               : eegtda::ReductionScheme::kCohomology;
        *out = new eegtda_diagram{eegtda::persistence(filt, scheme)};
    });
}

size_t eegtda_diagram_size(const eegtda_diagram* diag) { return diag ? diag->diag.pairs.size() : 0; }

eegtda_status eegtda_diagram_pair(const eegtda_diagram* diag, size_t index, int* dimension, double* birth,
                                  double* death) {
    return guard([&] {
        require(diag, "diagram is NULL");
        if (index >= diag->diag.pairs.size()) eegtda::fail(ErrorCode::kNotFound, "pair index out of range");
        const auto& p = diag->diag.pairs[index];
        if (dimension) *dimension = p.dimension;
        if (birth) *birth = p.birth;
        if (death) *death = p.death;
    });
}

eegtda_status eegtda_diagram_write_csv(const eegtda_diagram* diag, const char* path, const eegtda_meta* meta,
                                       size_t meta_count) {
    return guard([&] {
        require(diag, "diagram is NULL");
        require(path, "path is NULL");
        eegtda::write_diagram_csv(path, diag->diag, to_metadata(meta, meta_count));
    });
}

eegtda_status eegtda_diagram_read_csv(const char* path, eegtda_diagram** out) {
    return guard([&] {
        require(path, "path is NULL");
        require(out, "out is NULL");
        *out = new eegtda_diagram{eegtda::read_diagram_csv(path)};
    });
}

void eegtda_diagram_free(eegtda_diagram* diag) { delete diag; }

// landscape

eegtda_status eegtda_landscape_build(const eegtda_diagram* diag, int dimension, int max_levels,
                                     eegtda_landscape** out) {
    return guard([&] {
        require(diag, "diagram is NULL");
        require(out, "out is NULL");
        if (dimension != 0 && dimension != 1) eegtda::fail(ErrorCode::kConfig, "landscape dimension must be 0 or 1");
        if (max_levels < 1) eegtda::fail(ErrorCode::kConfig, "landscape needs at least one level");
        *out = new eegtda_landscape{eegtda::build_landscape(diag->diag, dimension, max_levels)};
    });
}

size_t eegtda_landscape_levels(const eegtda_landscape* ls) { return ls ? ls->ls.levels.size() : 0; }

size_t eegtda_landscape_level_size(const eegtda_landscape* ls, size_t level) {
    if (!ls || level == 0 || level > ls->ls.levels.size()) return 0;
    return ls->ls.levels[level - 1].size();
}

eegtda_status eegtda_landscape_vertex(const eegtda_landscape* ls, size_t level, size_t index, double* t,
                                      double* value) {
    return guard([&] {
        require(ls, "landscape is NULL");
        if (level == 0 || level > ls->ls.levels.size() || index >= ls->ls.levels[level - 1].size()) {
            eegtda::fail(ErrorCode::kNotFound, "landscape vertex out of range");
        }
        const auto& v = ls->ls.levels[level - 1][index];
        if (t) *t = v.t;
        if (value) *value = v.value;
    });
}

double eegtda_landscape_evaluate(const eegtda_landscape* ls, size_t level, double t) {
    return ls ? ls->ls.evaluate(level, t) : 0.0;
}

eegtda_status eegtda_landscape_norms(const eegtda_landscape* ls, int level, eegtda_norms* out) {
    return guard([&] {
        require(ls, "landscape is NULL");
        require(out, "out is NULL");
        if (level < 1) eegtda::fail(ErrorCode::kConfig, "landscape levels count from 1");
        const auto n = eegtda::landscape_norms(ls->ls, level);
        *out = {n.l1, n.l2, n.sup, n.argmax};
    });
}

eegtda_status eegtda_landscape_write_csv(const eegtda_landscape* ls, const char* path, const eegtda_meta* meta,
                                         size_t meta_count) {
    return guard([&] {
        require(ls, "landscape is NULL");
        require(path, "path is NULL");
        eegtda::write_landscape_csv(path, ls->ls, to_metadata(meta, meta_count));
    });
}

void eegtda_landscape_free(eegtda_landscape* ls) { delete ls; }

// features

size_t eegtda_feature_count(void) { return eegtda::kFeatureCount; }

int eegtda_feature_schema_version(void) { return eegtda::kFeatureSchemaVersion; }

const char* eegtda_feature_name(size_t index) {
    if (index >= eegtda::kFeatureCount) return nullptr;
    return eegtda::feature_names()[index].c_str();
}

eegtda_status eegtda_features_extract(const eegtda_diagram* diag, double* out) {
    return guard([&] {
        require(diag, "diagram is NULL");
        require(out, "out is NULL");
        const auto values = eegtda::extract_features(diag->diag);
        std::copy(values.begin(), values.end(), out);
    });
}

eegtda_status eegtda_table_create(eegtda_table** out) {
    return guard([&] {
        require(out, "out is NULL");
        *out = new eegtda_table{};
    });
}

eegtda_status eegtda_table_append(eegtda_table* table, const char* source_id, size_t start_sample, int label,
                                  const double* values) {
    return guard([&] {
        require(table, "table is NULL");
        require(source_id, "source_id is NULL");
        require(values, "values is NULL");
        eegtda::FeatureVector fv;
        std::copy(values, values + eegtda::kFeatureCount, fv.values.begin());
        for (double v : fv.values) {
            if (!std::isfinite(v)) eegtda::fail(ErrorCode::kData, "feature values must be finite");
        }
        fv.source_id = source_id;
        fv.start_sample = start_sample;
        const auto l = label_from_code(label);
        if (l != eegtda::SegmentLabel::kUnlabeled) fv.label = l;
        table->rows.push_back(std::move(fv));
    });
}

eegtda_status eegtda_table_read_csv(const char* path, eegtda_table** out) {
    return guard([&] {
        require(path, "path is NULL");
        require(out, "out is NULL");
        auto table = std::make_unique<eegtda_table>();
        table->rows = eegtda::read_features_csv(path, &table->meta);
        *out = table.release();
    });
}

eegtda_status eegtda_table_write_csv(const eegtda_table* table, const char* path, const eegtda_meta* meta,
                                     size_t meta_count) {
    return guard([&] {
        require(table, "table is NULL");
        require(path, "path is NULL");
        eegtda::write_features_csv(path, table->rows, to_metadata(meta, meta_count));
    });
}

size_t eegtda_table_rows(const eegtda_table* table) { return table ? table->rows.size() : 0; }

eegtda_status eegtda_table_row(const eegtda_table* table, size_t index, const char** source_id,
                               size_t* start_sample, int* label, double* values) {
    return guard([&] {
        require(table, "table is NULL");
        if (index >= table->rows.size()) eegtda::fail(ErrorCode::kNotFound, "table row out of range");
        const auto& fv = table->rows[index];
        if (source_id) *source_id = fv.source_id.c_str();
        if (start_sample) *start_sample = fv.start_sample;
        if (label) *label = label_code(fv.label);
        if (values) std::copy(fv.values.begin(), fv.values.end(), values);
    });
}

const char* eegtda_table_meta(const eegtda_table* table, const char* key) {
    if (!table || !key) return nullptr;
    const auto it = table->meta.find(key);
    return it == table->meta.end() ? nullptr : it->second.c_str();
}

void eegtda_table_free(eegtda_table* table) { delete table; }

// svm

void eegtda_train_config_default(eegtda_train_config* config) {
    if (!config) return;
    const eegtda::ProtocolConfig d;
    config->grid = nullptr;
    config->grid_size = 0;
    config->folds = d.folds;
    config->test_fraction = d.test_fraction;
    config->seed = d.seed;
    config->tol = d.train.tol;
    config->max_passes = d.train.max_passes;
}

eegtda_status eegtda_train(const eegtda_table* table, const eegtda_train_config* config, eegtda_training** out) {
    bool converged = true;
    const eegtda_status status = guard([&] {
        require(table, "table is NULL");
        require(out, "out is NULL");
        eegtda_train_config c;
        eegtda_train_config_default(&c);
        if (config) c = *config;
        eegtda::ProtocolConfig pc;
        if (c.grid_size > 0) require(c.grid, "grid is NULL");
        for (std::size_t i = 0; i < c.grid_size; ++i) {
            eegtda::GridCell cell;
            if (c.grid[i].kernel == EEGTDA_KERNEL_LINEAR) cell.kernel.type = eegtda::KernelType::kLinear;
            else if (c.grid[i].kernel == EEGTDA_KERNEL_RBF) cell.kernel.type = eegtda::KernelType::kRbf;
            else throw InvalidArgument{"unknown kernel"};
            cell.kernel.gamma = c.grid[i].gamma;
            cell.c = c.grid[i].c;
            pc.grid.push_back(cell);
        }
        pc.folds = c.folds;
        pc.test_fraction = c.test_fraction;
        pc.seed = c.seed;
        pc.train.tol = c.tol;
        pc.train.max_passes = c.max_passes;
        const LabeledData data = labeled_data(*table);
        if (data.y.empty()) eegtda::fail(ErrorCode::kConfig, "feature table has no labeled rows");
        auto tr = std::make_unique<eegtda_training>();
        tr->result = eegtda::run_protocol(data.x, data.y, pc);
        converged = tr->result.model.converged;
        *out = tr.release();
    });
    if (status == EEGTDA_OK && !converged) {
        last_error = "final model did not converge within the iteration budget";
        return EEGTDA_WARN_NOT_CONVERGED;
    }
    return status;
}

eegtda_status eegtda_training_model(const eegtda_training* tr, eegtda_model** out) {
    return guard([&] {
        require(tr, "training is NULL");
        require(out, "out is NULL");
        *out = new eegtda_model{tr->result.model};
    });
}

void eegtda_training_best(const eegtda_training* tr, eegtda_grid_cell* out) {
    if (tr && out) *out = to_c(tr->result.cv.best);
}

size_t eegtda_training_cell_count(const eegtda_training* tr) { return tr ? tr->result.cv.cells.size() : 0; }

eegtda_status eegtda_training_cell(const eegtda_training* tr, size_t index, eegtda_grid_cell* cell,
                                   double* mean_accuracy, double* folds, size_t fold_capacity) {
    return guard([&] {
        require(tr, "training is NULL");
        if (index >= tr->result.cv.cells.size()) eegtda::fail(ErrorCode::kNotFound, "grid cell out of range");
        const auto& score = tr->result.cv.cells[index];
        if (cell) *cell = to_c(score.cell);
        if (mean_accuracy) *mean_accuracy = score.mean_accuracy;
        if (folds) {
            for (std::size_t k = 0; k < std::min(fold_capacity, score.fold_accuracies.size()); ++k) {
                folds[k] = score.fold_accuracies[k];
            }
        }
    });
}

void eegtda_training_report(const eegtda_training* tr, int part, eegtda_report* out) {
    if (!tr || !out) return;
    to_c(part == 0 ? tr->result.train_report : tr->result.test_report, out);
}

size_t eegtda_training_part_size(const eegtda_training* tr, int part) {
    return tr ? part_indices(tr, part).size() : 0;
}

size_t eegtda_training_part_index(const eegtda_training* tr, int part, size_t index) {
    if (!tr || index >= part_indices(tr, part).size()) return 0;
    return part_indices(tr, part)[index];
}

void eegtda_training_free(eegtda_training* tr) { delete tr; }

eegtda_status eegtda_model_save(const eegtda_model* model, const char* path) {
    return guard([&] {
        require(model, "model is NULL");
        require(path, "path is NULL");
        eegtda::save_model(path, model->model);
    });
}

eegtda_status eegtda_model_load(const char* path, eegtda_model** out) {
    return guard([&] {
        require(path, "path is NULL");
        require(out, "out is NULL");
        *out = new eegtda_model{eegtda::load_model(path, eegtda::kFeatureCount)};
    });
}

eegtda_status eegtda_model_with_meta(const eegtda_model* model, const char* key, const char* value,
                                     eegtda_model** out) {
    return guard([&] {
        require(model, "model is NULL");
        require(key, "key is NULL");
        require(value, "value is NULL");
        require(out, "out is NULL");
        const std::string k(key), v(value);
        if (k.empty() || k.find_first_of(" \t\n") != std::string::npos || v.find('\n') != std::string::npos) {
            throw InvalidArgument{"metadata keys must be single words and values single lines"};
        }
        auto copy = std::make_unique<eegtda_model>(*model);
        copy->model.metadata[k] = v;
        *out = copy.release();
    });
}

const char* eegtda_model_meta(const eegtda_model* model, const char* key) {
    if (!model || !key) return nullptr;
    const auto it = model->model.metadata.find(key);
    return it == model->model.metadata.end() ? nullptr : it->second.c_str();
}

void eegtda_model_params(const eegtda_model* model, eegtda_grid_cell* cell, int* converged,
                         size_t* support_vectors) {
    if (!model) return;
    if (cell) *cell = to_c({model->model.kernel, model->model.c});
    if (converged) *converged = model->model.converged ? 1 : 0;
    if (support_vectors) *support_vectors = static_cast<size_t>(model->model.support_vectors.rows());
}

eegtda_status eegtda_model_decision(const eegtda_model* model, const double* features, double* out) {
    return guard([&] {
        require(model, "model is NULL");
        require(features, "features is NULL");
        require(out, "out is NULL");
        const Eigen::Map<const Eigen::VectorXd> x(features, static_cast<Eigen::Index>(model->model.feature_count()));
        *out = model->model.decision(x);
    });
}

eegtda_status eegtda_model_evaluate(const eegtda_model* model, const eegtda_table* table, const size_t* rows,
                                    size_t row_count, eegtda_report* out) {
    return guard([&] {
        require(model, "model is NULL");
        require(table, "table is NULL");
        require(out, "out is NULL");
        const LabeledData data = labeled_data(*table);
        eegtda::EvalReport report;
        if (rows) {
            std::vector<std::size_t> chosen(rows, rows + row_count);
            for (std::size_t r : chosen) {
                if (r >= data.y.size()) eegtda::fail(ErrorCode::kRange, "row index beyond the labeled rows");
            }
            report = eegtda::evaluate(model->model, eegtda::select_rows(data.x, chosen), eegtda::select(data.y, chosen));
        } else {
            report = eegtda::evaluate(model->model, data.x, data.y);
        }
        to_c(report, out);
    });
}

void eegtda_model_free(eegtda_model* model) { delete model; }

// synth

void eegtda_synth_spec_default(eegtda_synth_spec* spec) {
    if (!spec) return;
    const eegtda::SynthSpec d;
    spec->system = EEGTDA_SYNTH_ROSSLER;
    spec->rossler_a = d.rossler.a;
    spec->rossler_b = d.rossler.b;
    spec->rossler_c = d.rossler.c;
    spec->omega = d.omega;
    spec->time_scale = d.time_scale;
    spec->duration = d.duration;
    spec->rate = d.rate;
    spec->channels = d.channels;
    spec->seed = d.seed;
    spec->has_snr = 0;
    spec->snr_db = 0.0;
    spec->noise_sigma = d.noise_sigma;
    spec->identity_mixing = 0;
    spec->burn_in = d.burn_in;
}

eegtda_status eegtda_synth_generate(const eegtda_synth_spec* spec, const char* const* labels,
                                    eegtda_recording** out) {
    return guard([&] {
        require(spec, "spec is NULL");
        require(out, "out is NULL");
        eegtda::SynthSpec s;
        switch (spec->system) {
            case EEGTDA_SYNTH_HARMONIC: s.system = eegtda::SynthSystem::kHarmonic; break;
            case EEGTDA_SYNTH_ROSSLER: s.system = eegtda::SynthSystem::kRossler; break;
            case EEGTDA_SYNTH_NOISE: s.system = eegtda::SynthSystem::kNoise; break;
            default: throw InvalidArgument{"unknown synthetic system"};
        }
        s.rossler = {spec->rossler_a, spec->rossler_b, spec->rossler_c};
        s.omega = spec->omega;
        s.time_scale = spec->time_scale;
        s.duration = spec->duration;
        s.rate = spec->rate;
        s.channels = spec->channels;
        s.seed = spec->seed;
        if (spec->has_snr) s.snr_db = spec->snr_db;
        s.noise_sigma = spec->noise_sigma;
        s.identity_mixing = spec->identity_mixing != 0;
        s.burn_in = spec->burn_in;
        if (labels) {
            for (int c = 0; c < spec->channels; ++c) {
                require(labels[c], "channel label is NULL");
                s.labels.emplace_back(labels[c]);
            }
        }
        *out = new eegtda_recording{eegtda::generate(s).recording};
    });
}

void eegtda_corpus_options_default(eegtda_corpus_options* opts) {
    if (!opts) return;
    static const eegtda::CorpusOptions d;
    opts->rate = d.rate;
    opts->window_seconds = d.window_seconds;
    opts->channels = d.channels;
    opts->time_scale = d.time_scale;
    opts->positive_snr_db = d.positive_snr_db;
    opts->noise_smoothing = d.noise_smoothing;
    opts->source_id = d.source_id.c_str();
}

eegtda_status eegtda_corpus(int n_pos, int n_neg, uint64_t seed, const eegtda_corpus_options* opts,
                            eegtda_segments** out) {
    return guard([&] {
        require(out, "out is NULL");
        eegtda::CorpusOptions o;
        if (opts) {
            o.rate = opts->rate;
            o.window_seconds = opts->window_seconds;
            o.channels = opts->channels;
            o.time_scale = opts->time_scale;
            o.positive_snr_db = opts->positive_snr_db;
            o.noise_smoothing = opts->noise_smoothing;
            if (opts->source_id) o.source_id = opts->source_id;
        }
        *out = new eegtda_segments{eegtda::make_corpus(n_pos, n_neg, seed, o)};
    });
}

}  // extern "C"
