#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace prism::ml {

using Matrix = std::vector<std::vector<double>>;

/// Rows + binary labels (+ ids) with a schema identity.
struct FeatureTable {
    Matrix rows;
    std::vector<int> labels;  // 0 healthy, 1 lymphoblast
    std::vector<std::string> ids;
    std::string schema_id;

    size_t n() const { return rows.size(); }
    size_t p() const { return rows.empty() ? 0 : rows.front().size(); }

    void validate() const {
        if (rows.size() != labels.size())
            throw std::invalid_argument("FeatureTable: rows/labels size mismatch");
        if (!ids.empty() && ids.size() != rows.size())
            throw std::invalid_argument("FeatureTable: ids size mismatch");
        const size_t width = p();
        for (const auto& r : rows) {
            if (r.size() != width)
                throw std::invalid_argument("FeatureTable: ragged rows");
            for (double v : r)
                if (!std::isfinite(v))
                    throw std::invalid_argument("FeatureTable: non-finite value");
        }
        for (int l : labels)
            if (l != 0 && l != 1) throw std::invalid_argument("FeatureTable: labels must be 0/1");
    }

    FeatureTable subset(const std::vector<int>& indices) const {
        FeatureTable t;
        t.schema_id = schema_id;
        t.rows.reserve(indices.size());
        t.labels.reserve(indices.size());
        for (int i : indices) {
            t.rows.push_back(rows[i]);
            t.labels.push_back(labels[i]);
            if (!ids.empty()) t.ids.push_back(ids[i]);
        }
        return t;
    }
};

}  // namespace prism::ml
