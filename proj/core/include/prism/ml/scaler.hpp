#pragma once

#include <vector>

#include "prism/ml/dataset.hpp"

namespace prism::ml {

/// Z-score normalization fitted on training rows only.
/// Zero-variance columns pass through unscaled.
struct Scaler {
    std::vector<double> mean;
    std::vector<double> stdev;  // 1.0 where the column had zero variance

    std::vector<double> apply(const std::vector<double>& row) const;
    Matrix apply(const Matrix& rows) const;
};

Scaler fit_scaler(const Matrix& train_rows);

}  // namespace prism::ml
