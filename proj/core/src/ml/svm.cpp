#include <algorithm>
#include <cmath>
#include <vector>

#include "models_impl.hpp"

namespace prism::ml::detail {

namespace {

// Platt-style SMO over the cached RBF kernel matrix. Deterministic: the
// second-choice heuristic scans in fixed index order.
class SmoSolver {
public:
    SmoSolver(const Matrix& X, const std::vector<int>& y01, double C, double gamma, double tol)
        : X_(X), C_(C), gamma_(gamma), tol_(tol), n_(static_cast<int>(X.size())) {
        y_.resize(n_);
        for (int i = 0; i < n_; ++i) y_[i] = (y01[i] == 1) ? 1.0 : -1.0;
        alpha_.assign(n_, 0.0);
        error_.assign(n_, 0.0);
        for (int i = 0; i < n_; ++i) error_[i] = -y_[i];  // f=0 initially

        sqnorm_.resize(n_);
        for (int i = 0; i < n_; ++i) {
            double s = 0.0;
            for (double v : X[i]) s += v * v;
            sqnorm_[i] = s;
        }
        K_.assign(static_cast<size_t>(n_) * n_, 0.0);
        for (int i = 0; i < n_; ++i) {
            K_[static_cast<size_t>(i) * n_ + i] = 1.0;
            for (int j = i + 1; j < n_; ++j) {
                double dot = 0.0;
                const auto& a = X[i];
                const auto& b = X[j];
                for (size_t d = 0; d < a.size(); ++d) dot += a[d] * b[d];
                const double k = std::exp(-gamma_ * (sqnorm_[i] + sqnorm_[j] - 2.0 * dot));
                K_[static_cast<size_t>(i) * n_ + j] = k;
                K_[static_cast<size_t>(j) * n_ + i] = k;
            }
        }
    }

    void solve() {
        // Alternate full passes with non-bound passes; stop only when a full
        // pass makes no progress, so bound alphas get rechecked at the end.
        bool examine_all = true;
        int epochs = 0;
        while (epochs++ < 1000) {
            int num_changed = 0;
            for (int i = 0; i < n_; ++i) {
                if (!examine_all) {
                    const double a = alpha_[i];
                    if (a <= 0.0 || a >= C_) continue;
                }
                num_changed += examine(i);
            }
            if (examine_all) {
                if (num_changed == 0) break;
                examine_all = false;
            } else if (num_changed == 0) {
                examine_all = true;
            }
        }
    }

    const std::vector<double>& alpha() const { return alpha_; }
    double bias() const { return b_; }
    double label(int i) const { return y_[i]; }

private:
    double kern(int i, int j) const { return K_[static_cast<size_t>(i) * n_ + j]; }

    int examine(int i2) {
        const double y2 = y_[i2], a2 = alpha_[i2], e2 = error_[i2];
        const double r2 = e2 * y2;
        if ((r2 < -tol_ && a2 < C_) || (r2 > tol_ && a2 > 0.0)) {
            // heuristic 1: maximize |E1 - E2| over non-bound points
            int best = -1;
            double best_gap = 0.0;
            for (int i = 0; i < n_; ++i) {
                if (alpha_[i] <= 0.0 || alpha_[i] >= C_) continue;
                const double gap = std::abs(error_[i] - e2);
                if (gap > best_gap) {
                    best_gap = gap;
                    best = i;
                }
            }
            if (best >= 0 && take_step(best, i2)) return 1;
            for (int i = 0; i < n_; ++i) {
                if (alpha_[i] <= 0.0 || alpha_[i] >= C_) continue;
                if (take_step(i, i2)) return 1;
            }
            for (int i = 0; i < n_; ++i)
                if (take_step(i, i2)) return 1;
        }
        return 0;
    }

    bool take_step(int i1, int i2) {
        if (i1 == i2) return false;
        const double a1 = alpha_[i1], a2 = alpha_[i2];
        const double y1 = y_[i1], y2 = y_[i2];
        const double e1 = error_[i1], e2 = error_[i2];
        const double s = y1 * y2;
        double lo, hi;
        if (s < 0.0) {
            lo = std::max(0.0, a2 - a1);
            hi = std::min(C_, C_ + a2 - a1);
        } else {
            lo = std::max(0.0, a1 + a2 - C_);
            hi = std::min(C_, a1 + a2);
        }
        if (lo >= hi) return false;
        const double k11 = kern(i1, i1), k12 = kern(i1, i2), k22 = kern(i2, i2);
        const double eta = k11 + k22 - 2.0 * k12;
        double a2_new;
        if (eta > 1e-12) {
            a2_new = std::clamp(a2 + y2 * (e1 - e2) / eta, lo, hi);
        } else {
            // objective at the segment ends
            const double f1 = y1 * e1 - a1 * k11 - s * a2 * k12;
            const double f2 = y2 * e2 - a2 * k22 - s * a1 * k12;
            const double l1 = a1 + s * (a2 - lo);
            const double h1 = a1 + s * (a2 - hi);
            const double obj_lo = l1 * f1 + lo * f2 + 0.5 * l1 * l1 * k11 + 0.5 * lo * lo * k22 +
                                  s * lo * l1 * k12;
            const double obj_hi = h1 * f1 + hi * f2 + 0.5 * h1 * h1 * k11 + 0.5 * hi * hi * k22 +
                                  s * hi * h1 * k12;
            if (obj_lo < obj_hi - 1e-12)
                a2_new = lo;
            else if (obj_lo > obj_hi + 1e-12)
                a2_new = hi;
            else
                a2_new = a2;
        }
        if (std::abs(a2_new - a2) < 1e-12 * (a2_new + a2 + 1e-12)) return false;
        const double a1_new = a1 + s * (a2 - a2_new);

        const double d1 = y1 * (a1_new - a1), d2 = y2 * (a2_new - a2);
        const double b1 = b_ - e1 - d1 * k11 - d2 * k12;
        const double b2 = b_ - e2 - d1 * k12 - d2 * k22;
        double b_new;
        if (a1_new > 0.0 && a1_new < C_)
            b_new = b1;
        else if (a2_new > 0.0 && a2_new < C_)
            b_new = b2;
        else
            b_new = (b1 + b2) / 2.0;
        const double db = b_new - b_;
        b_ = b_new;
        alpha_[i1] = a1_new;
        alpha_[i2] = a2_new;
        for (int i = 0; i < n_; ++i)
            error_[i] += d1 * kern(i1, i) + d2 * kern(i2, i) + db;
        return true;
    }

    const Matrix& X_;
    double C_, gamma_, tol_;
    int n_;
    std::vector<double> y_, alpha_, error_, sqnorm_, K_;
    double b_ = 0.0;
};

}  // namespace

double SvmModel::score(std::span<const double> row) const {
    double s = bias;
    for (size_t i = 0; i < support_vectors.size(); ++i) {
        double d2 = 0.0;
        const auto& sv = support_vectors[i];
        for (size_t j = 0; j < sv.size(); ++j) {
            const double d = sv[j] - row[j];
            d2 += d * d;
        }
        s += dual_coef[i] * std::exp(-gamma * d2);
    }
    return s;
}

std::unique_ptr<SvmModel> train_svm(const Matrix& X, const std::vector<int>& y, double C,
                                    double gamma, double tol) {
    SmoSolver solver(X, y, C, gamma, tol);
    solver.solve();
    auto m = std::make_unique<SvmModel>();
    m->gamma = gamma;
    m->bias = solver.bias();
    for (size_t i = 0; i < X.size(); ++i) {
        if (solver.alpha()[i] <= 1e-12) continue;
        m->support_vectors.push_back(X[i]);
        m->dual_coef.push_back(solver.alpha()[i] * solver.label(static_cast<int>(i)));
    }
    return m;
}

nlohmann::json SvmModel::to_json() const {
    return {{"kind", "svm"},
            {"gamma", gamma},
            {"bias", bias},
            {"dual_coef", dual_coef},
            {"support_vectors", support_vectors}};
}

std::unique_ptr<SvmModel> SvmModel::from_json(const nlohmann::json& j) {
    auto m = std::make_unique<SvmModel>();
    m->gamma = j.at("gamma");
    m->bias = j.at("bias");
    m->dual_coef = j.at("dual_coef").get<std::vector<double>>();
    m->support_vectors = j.at("support_vectors").get<Matrix>();
    return m;
}

}  // namespace prism::ml::detail
