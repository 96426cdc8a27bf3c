#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dimred.hpp"
#include "features.hpp"
#include "homology.hpp"
#include "landscape.hpp"

namespace eegtda {

// Comment lines of the form "# key: value" at the top of a CSV artifact.
using Metadata = std::map<std::string, std::string>;

struct CsvDocument {
    Metadata meta;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

CsvDocument read_csv_document(const std::filesystem::path& path);
void write_csv_document(const std::filesystem::path& path, const CsvDocument& doc);

// Reads only the leading metadata lines.
Metadata read_csv_metadata(const std::filesystem::path& path);

// Columns t, x1..xn with t = row / rate.
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj, const Metadata& meta = {});
Trajectory read_trajectory_csv(const std::filesystem::path& path);

// Columns dim, birth, death; essential deaths are written as "inf".
void write_diagram_csv(const std::filesystem::path& path, const PersistenceDiagram& diagram,
                       const Metadata& meta = {});
PersistenceDiagram read_diagram_csv(const std::filesystem::path& path);

// Columns level, t, value with level counted from 1.
void write_landscape_csv(const std::filesystem::path& path, const PersistenceLandscape& landscape,
                         const Metadata& meta = {});
PersistenceLandscape read_landscape_csv(const std::filesystem::path& path);

// Columns source_id, start_sample, label, then the 40 feature names.
// "feature_schema" metadata is always written and checked on read.
void write_features_csv(const std::filesystem::path& path, const std::vector<FeatureVector>& rows,
                        const Metadata& meta = {});
std::vector<FeatureVector> read_features_csv(const std::filesystem::path& path, Metadata* meta = nullptr);

Eigen::MatrixXd feature_matrix(const std::vector<FeatureVector>& rows);

}  // namespace eegtda
