#include "prism/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace prism::io {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(std::move(cur));
    return out;
}

void check_plain_field(const std::string& s, const char* what) {
    if (s.find(',') != std::string::npos || s.find('\n') != std::string::npos)
        throw std::invalid_argument(std::string(what) + " may not contain commas or newlines");
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    // shortest form that round-trips
    for (int prec : {15, 16, 17}) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    return buf;
}

void atomic_write_text(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string fnv1a_hex(const std::string& bytes) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string feature_csv_string(const ml::FeatureTable& table,
                               const feat::FeatureSchema& schema) {
    table.validate();
    if (table.schema_id != schema.schema_id)
        throw std::invalid_argument("feature_csv_string: schema_id mismatch");
    if (table.p() != schema.size() && table.n() > 0)
        throw std::invalid_argument("feature_csv_string: row width does not match schema");
    if (table.ids.size() != table.n())
        throw std::invalid_argument("feature_csv_string: every row needs an image_id");

    std::string out;
    for (const auto& d : schema.defs) {
        out += d.name;
        out += ',';
    }
    out += "label,image_id\n";
    for (size_t i = 0; i < table.n(); ++i) {
        for (double v : table.rows[i]) {
            out += format_double(v);
            out += ',';
        }
        out += std::to_string(table.labels[i]);
        out += ',';
        check_plain_field(table.ids[i], "image_id");
        out += table.ids[i];
        out += '\n';
    }
    return out;
}

void write_feature_csv(const std::string& path, const ml::FeatureTable& table,
                       const feat::FeatureSchema& schema) {
    atomic_write_text(path, feature_csv_string(table, schema));
}

ml::FeatureTable read_feature_csv(const std::string& path,
                                  const feat::FeatureSchema& schema) {
    std::istringstream in(read_text(path));
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty feature CSV: " + path);
    const auto header = split_line(line);
    if (header.size() != schema.size() + 2)
        throw std::runtime_error("feature CSV header width mismatch: " + path);
    for (size_t i = 0; i < schema.size(); ++i)
        if (header[i] != schema.defs[i].name)
            throw std::runtime_error("feature CSV header does not match schema at column " +
                                     std::to_string(i));
    if (header[schema.size()] != "label" || header[schema.size() + 1] != "image_id")
        throw std::runtime_error("feature CSV trailing columns must be label,image_id");

    ml::FeatureTable table;
    table.schema_id = schema.schema_id;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_line(line);
        if (fields.size() != schema.size() + 2)
            throw std::runtime_error("feature CSV row width mismatch: " + path);
        std::vector<double> row(schema.size());
        for (size_t i = 0; i < schema.size(); ++i) {
            char* end = nullptr;
            row[i] = std::strtod(fields[i].c_str(), &end);
            if (end == fields[i].c_str())
                throw std::runtime_error("feature CSV: non-numeric value '" + fields[i] + "'");
        }
        table.rows.push_back(std::move(row));
        table.labels.push_back(std::stoi(fields[schema.size()]));
        table.ids.push_back(fields[schema.size() + 1]);
    }
    table.validate();
    return table;
}

void write_schema_json(const std::string& path, const feat::FeatureSchema& schema) {
    nlohmann::json defs = nlohmann::json::array();
    for (const auto& d : schema.defs)
        defs.push_back({{"name", d.name},
                        {"domain", feat::to_string(d.domain)},
                        {"family", feat::to_string(d.family)}});
    const nlohmann::json j = {
        {"format", "prism-schema-v1"}, {"schema_id", schema.schema_id}, {"features", defs}};
    atomic_write_text(path, j.dump(2) + "\n");
}

void write_manifest(const std::string& path, const std::vector<ManifestEntry>& entries) {
    std::string out = "image_id,path,label\n";
    for (const auto& e : entries) {
        check_plain_field(e.image_id, "image_id");
        check_plain_field(e.path, "path");
        if (e.label != 0 && e.label != 1)
            throw std::invalid_argument("manifest label must be 0 or 1");
        out += e.image_id + ',' + e.path + ',' + std::to_string(e.label) + '\n';
    }
    atomic_write_text(path, out);
}

std::vector<ManifestEntry> read_manifest(const std::string& path) {
    std::istringstream in(read_text(path));
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty manifest: " + path);
    if (split_line(line) != std::vector<std::string>{"image_id", "path", "label"})
        throw std::runtime_error("manifest header must be image_id,path,label");
    std::vector<ManifestEntry> entries;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_line(line);
        if (f.size() != 3) throw std::runtime_error("malformed manifest row: " + line);
        ManifestEntry e;
        e.image_id = f[0];
        e.path = f[1];
        e.label = std::stoi(f[2]);
        if (e.label != 0 && e.label != 1)
            throw std::runtime_error("manifest label must be 0 or 1: " + line);
        entries.push_back(std::move(e));
    }
    return entries;
}

}  // namespace prism::io
