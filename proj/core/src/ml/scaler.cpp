#include "prism/ml/scaler.hpp"

#include <cmath>
#include <stdexcept>

namespace prism::ml {

Scaler fit_scaler(const Matrix& train_rows) {
    if (train_rows.empty()) throw std::invalid_argument("fit_scaler: no rows");
    const size_t p = train_rows.front().size();
    Scaler s;
    s.mean.assign(p, 0.0);
    s.stdev.assign(p, 1.0);
    const double n = static_cast<double>(train_rows.size());
    for (const auto& r : train_rows)
        for (size_t j = 0; j < p; ++j) s.mean[j] += r[j];
    for (size_t j = 0; j < p; ++j) s.mean[j] /= n;
    std::vector<double> var(p, 0.0);
    for (const auto& r : train_rows)
        for (size_t j = 0; j < p; ++j) {
            const double d = r[j] - s.mean[j];
            var[j] += d * d;
        }
    for (size_t j = 0; j < p; ++j) {
        var[j] /= n;
        if (var[j] > 0.0) {
            s.stdev[j] = std::sqrt(var[j]);
        } else {
            s.mean[j] = 0.0;  // constant column passes through unchanged
            s.stdev[j] = 1.0;
        }
    }
    return s;
}

std::vector<double> Scaler::apply(const std::vector<double>& row) const {
    std::vector<double> out(row.size());
    for (size_t j = 0; j < row.size(); ++j) out[j] = (row[j] - mean[j]) / stdev[j];
    return out;
}

Matrix Scaler::apply(const Matrix& rows) const {
    Matrix out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(apply(r));
    return out;
}

}  // namespace prism::ml
