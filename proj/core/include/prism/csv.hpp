#pragma once

#include <string>
#include <vector>

#include "prism/features.hpp"
#include "prism/ml/dataset.hpp"

namespace prism::io {

/// Shortest round-trip decimal form of a double ("%.17g" trimmed).
std::string format_double(double v);

/// Write text to path via a temp file + rename so readers never see a
/// partial file. Throws std::runtime_error on I/O failure.
void atomic_write_text(const std::string& path, const std::string& content);

std::string read_text(const std::string& path);

/// FNV-1a 64-bit over raw bytes, hex encoded. Used as the content hash for
/// feature tables embedded in reports.
std::string fnv1a_hex(const std::string& bytes);

/// Header: schema names, then "label", then "image_id". Doubles serialized
/// with format_double so identical tables are byte-identical files.
std::string feature_csv_string(const ml::FeatureTable& table, const feat::FeatureSchema& schema);
void write_feature_csv(const std::string& path, const ml::FeatureTable& table,
                       const feat::FeatureSchema& schema);

/// Parses a feature CSV and checks the header against the schema.
ml::FeatureTable read_feature_csv(const std::string& path,
                                  const feat::FeatureSchema& schema);

/// Schema sidecar: JSON with schema_id and the ordered name/domain/family list.
void write_schema_json(const std::string& path, const feat::FeatureSchema& schema);

struct ManifestEntry {
    std::string image_id;
    std::string path;
    int label = 0;
};

/// Manifest CSV: image_id,path,label.
void write_manifest(const std::string& path, const std::vector<ManifestEntry>& entries);
std::vector<ManifestEntry> read_manifest(const std::string& path);

}  // namespace prism::io
