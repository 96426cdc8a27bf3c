#include "artifacts.hpp"

#include <cmath>
#include <fstream>

#include "error.hpp"
#include "text.hpp"

namespace eegtda {

namespace {

bool parse_meta_line(const std::string& line, std::string& key, std::string& value) {
    if (line.size() < 2 || line[0] != '#') return false;
    const std::string body = trim(std::string_view(line).substr(1));
    const auto colon = body.find(':');
    if (colon == std::string::npos) return false;
    key = trim(std::string_view(body).substr(0, colon));
    value = trim(std::string_view(body).substr(colon + 1));
    return !key.empty();
}

double cell_number(const CsvDocument& doc, const std::filesystem::path& path, std::size_t row, std::size_t col) {
    double v = 0.0;
    if (!parse_double(doc.rows[row][col], v)) {
        fail(ErrorCode::kParse, path.string() + ": data row " + std::to_string(row + 1) + " column " +
                                    std::to_string(col + 1) + " is not numeric: '" + doc.rows[row][col] + "'");
    }
    return v;
}

void expect_header(const CsvDocument& doc, const std::filesystem::path& path,
                   const std::vector<std::string>& expected) {
    if (doc.header != expected) {
        fail(ErrorCode::kParse, path.string() + ": expected header '" + join(expected, ",") + "', got '" +
                                    join(doc.header, ",") + "'");
    }
}

std::size_t parse_index(const std::string& text, const std::filesystem::path& path, const char* what) {
    double v = 0.0;
    if (!parse_double(text, v) || v < 0.0 || v != std::floor(v)) {
        fail(ErrorCode::kParse, path.string() + ": bad " + std::string(what) + " '" + text + "'");
    }
    return static_cast<std::size_t>(v);
}

}  // namespace

CsvDocument read_csv_document(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::kIo, "cannot open " + path.string());
    CsvDocument doc;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::string key, value;
            if (parse_meta_line(line, key, value)) doc.meta[key] = value;
            continue;
        }
        std::vector<std::string> cells = split(line, ',');
        for (auto& c : cells) c = trim(c);
        if (!have_header) {
            doc.header = std::move(cells);
            have_header = true;
            continue;
        }
        if (cells.size() != doc.header.size()) {
            fail(ErrorCode::kParse, path.string() + ": row " + std::to_string(line_no) + " has " +
                                        std::to_string(cells.size()) + " cells, expected " +
                                        std::to_string(doc.header.size()));
        }
        doc.rows.push_back(std::move(cells));
    }
    if (!have_header) fail(ErrorCode::kParse, path.string() + ": missing header row");
    return doc;
}

void write_csv_document(const std::filesystem::path& path, const CsvDocument& doc) {
    std::string out;
    for (const auto& [key, value] : doc.meta) out += "# " + key + ": " + value + "\n";
    out += join(doc.header, ",") + "\n";
    for (const auto& row : doc.rows) out += join(row, ",") + "\n";
    write_text_file(path, out);
}

Metadata read_csv_metadata(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::kIo, "cannot open " + path.string());
    Metadata meta;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] != '#') break;
        std::string key, value;
        if (parse_meta_line(line, key, value)) meta[key] = value;
    }
    return meta;
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj, const Metadata& meta) {
    CsvDocument doc;
    doc.meta = meta;
    doc.meta["method"] = to_string(traj.method);
    doc.meta["rate"] = format_double(traj.rate);
    doc.header.push_back("t");
    for (Eigen::Index j = 0; j < traj.points.cols(); ++j) doc.header.push_back("x" + std::to_string(j + 1));
    for (Eigen::Index i = 0; i < traj.points.rows(); ++i) {
        std::vector<std::string> row{format_double(static_cast<double>(i) / traj.rate)};
        for (Eigen::Index j = 0; j < traj.points.cols(); ++j) row.push_back(format_double(traj.points(i, j)));
        doc.rows.push_back(std::move(row));
    }
    write_csv_document(path, doc);
}

Trajectory read_trajectory_csv(const std::filesystem::path& path) {
    const CsvDocument doc = read_csv_document(path);
    if (doc.header.size() < 2 || doc.header[0] != "t") {
        fail(ErrorCode::kParse, path.string() + ": trajectory header must be t,x1..xn");
    }
    Trajectory traj;
    const auto method = doc.meta.find("method");
    traj.method = method != doc.meta.end() && method->second == "pca" ? Reduction::kPca : Reduction::kDyca;
    const auto rate = doc.meta.find("rate");
    if (rate == doc.meta.end() || !parse_double(rate->second, traj.rate) || !(traj.rate > 0.0)) {
        fail(ErrorCode::kParse, path.string() + ": missing or invalid '# rate:' line");
    }
    const auto w = static_cast<Eigen::Index>(doc.rows.size());
    const auto n = static_cast<Eigen::Index>(doc.header.size() - 1);
    traj.points.resize(w, n);
    for (Eigen::Index i = 0; i < w; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            traj.points(i, j) = cell_number(doc, path, static_cast<std::size_t>(i), static_cast<std::size_t>(j + 1));
        }
    }
    return traj;
}

void write_diagram_csv(const std::filesystem::path& path, const PersistenceDiagram& diagram, const Metadata& meta) {
    CsvDocument doc;
    doc.meta = meta;
    doc.header = {"dim", "birth", "death"};
    for (const auto& p : diagram.pairs) {
        doc.rows.push_back({std::to_string(p.dimension), format_double(p.birth), format_double(p.death)});
    }
    write_csv_document(path, doc);
}

PersistenceDiagram read_diagram_csv(const std::filesystem::path& path) {
    const CsvDocument doc = read_csv_document(path);
    expect_header(doc, path, {"dim", "birth", "death"});
    PersistenceDiagram diagram;
    for (std::size_t r = 0; r < doc.rows.size(); ++r) {
        const double dim = cell_number(doc, path, r, 0);
        if (dim != 0.0 && dim != 1.0) fail(ErrorCode::kParse, path.string() + ": dimension must be 0 or 1");
        diagram.pairs.push_back({static_cast<int>(dim), cell_number(doc, path, r, 1), cell_number(doc, path, r, 2)});
    }
    return diagram;
}

void write_landscape_csv(const std::filesystem::path& path, const PersistenceLandscape& landscape,
                         const Metadata& meta) {
    CsvDocument doc;
    doc.meta = meta;
    doc.header = {"level", "t", "value"};
    for (std::size_t k = 0; k < landscape.levels.size(); ++k) {
        for (const auto& v : landscape.levels[k]) {
            doc.rows.push_back({std::to_string(k + 1), format_double(v.t), format_double(v.value)});
        }
    }
    write_csv_document(path, doc);
}

PersistenceLandscape read_landscape_csv(const std::filesystem::path& path) {
    const CsvDocument doc = read_csv_document(path);
    expect_header(doc, path, {"level", "t", "value"});
    PersistenceLandscape landscape;
    for (std::size_t r = 0; r < doc.rows.size(); ++r) {
        const std::size_t level = parse_index(doc.rows[r][0], path, "level");
        if (level == 0 || level > landscape.levels.size() + 1 || level < landscape.levels.size()) {
            fail(ErrorCode::kParse, path.string() + ": levels must be listed in order starting at 1");
        }
        if (level > landscape.levels.size()) landscape.levels.emplace_back();
        landscape.levels.back().push_back({cell_number(doc, path, r, 1), cell_number(doc, path, r, 2)});
    }
    return landscape;
}

void write_features_csv(const std::filesystem::path& path, const std::vector<FeatureVector>& rows,
                        const Metadata& meta) {
    CsvDocument doc;
    doc.meta = meta;
    doc.meta["feature_schema"] = std::to_string(kFeatureSchemaVersion);
    doc.header = {"source_id", "start_sample", "label"};
    for (const auto& name : feature_names()) doc.header.push_back(name);
    for (const auto& fv : rows) {
        if (fv.source_id.find_first_of(",\n#") != std::string::npos || fv.source_id.empty()) {
            fail(ErrorCode::kConfig, "source id '" + fv.source_id + "' cannot be written to CSV");
        }
        std::vector<std::string> row{fv.source_id, std::to_string(fv.start_sample),
                                     to_string(fv.label.value_or(SegmentLabel::kUnlabeled))};
        for (double v : fv.values) row.push_back(format_double(v));
        doc.rows.push_back(std::move(row));
    }
    write_csv_document(path, doc);
}

std::vector<FeatureVector> read_features_csv(const std::filesystem::path& path, Metadata* meta) {
    const CsvDocument doc = read_csv_document(path);
    const auto schema = doc.meta.find("feature_schema");
    if (schema == doc.meta.end()) fail(ErrorCode::kParse, path.string() + ": missing '# feature_schema:' line");
    if (schema->second != std::to_string(kFeatureSchemaVersion)) {
        fail(ErrorCode::kConfig, path.string() + ": feature schema version " + schema->second +
                                     " does not match supported version " + std::to_string(kFeatureSchemaVersion));
    }
    std::vector<std::string> expected{"source_id", "start_sample", "label"};
    for (const auto& name : feature_names()) expected.push_back(name);
    expect_header(doc, path, expected);
    std::vector<FeatureVector> rows;
    for (std::size_t r = 0; r < doc.rows.size(); ++r) {
        FeatureVector fv;
        fv.source_id = doc.rows[r][0];
        fv.start_sample = parse_index(doc.rows[r][1], path, "start_sample");
        const SegmentLabel label = parse_segment_label(doc.rows[r][2]);
        if (label != SegmentLabel::kUnlabeled) fv.label = label;
        for (std::size_t k = 0; k < kFeatureCount; ++k) fv.values[k] = cell_number(doc, path, r, k + 3);
        rows.push_back(std::move(fv));
    }
    if (meta) *meta = doc.meta;
    return rows;
}

Eigen::MatrixXd feature_matrix(const std::vector<FeatureVector>& rows) {
    Eigen::MatrixXd x(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(kFeatureCount));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t k = 0; k < kFeatureCount; ++k) {
            x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = rows[r].values[k];
        }
    }
    return x;
}

}  // namespace eegtda
