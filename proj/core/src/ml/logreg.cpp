#include <algorithm>
#include <cmath>

#include "models_impl.hpp"

namespace prism::ml {

double logreg_loss_and_grad(const Matrix& X, const std::vector<int>& y, double lambda,
                            std::span<const double> w, double b,
                            std::vector<double>& grad_w, double& grad_b) {
    const size_t n = X.size();
    const size_t p = w.size();
    grad_w.assign(p, 0.0);
    grad_b = 0.0;
    double loss = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double z = b;
        for (size_t j = 0; j < p; ++j) z += w[j] * X[i][j];
        const double yi = (y[i] == 1) ? 1.0 : -1.0;
        const double m = yi * z;
        // log(1+exp(-m)) evaluated stably
        loss += (m > 0) ? std::log1p(std::exp(-m)) : -m + std::log1p(std::exp(m));
        const double sig = 1.0 / (1.0 + std::exp(m));  // = 1 - sigma(m)
        const double coeff = -yi * sig;
        for (size_t j = 0; j < p; ++j) grad_w[j] += coeff * X[i][j];
        grad_b += coeff;
    }
    for (size_t j = 0; j < p; ++j) {
        loss += 0.5 * lambda * w[j] * w[j];
        grad_w[j] += lambda * w[j];
    }
    return loss;
}

namespace detail {

std::unique_ptr<LogRegModel> train_logreg(const Matrix& X, const std::vector<int>& y,
                                          double lambda, double grad_tol, int max_iters) {
    const size_t p = X.front().size();
    std::vector<double> w(p, 0.0), grad_w;
    double b = 0.0, grad_b = 0.0;

    double step = 1.0;
    double loss = logreg_loss_and_grad(X, y, lambda, w, b, grad_w, grad_b);
    for (int it = 0; it < max_iters; ++it) {
        double gnorm2 = grad_b * grad_b;
        for (double g : grad_w) gnorm2 += g * g;
        if (std::sqrt(gnorm2) < grad_tol) break;

        // backtracking line search on the full-batch objective
        std::vector<double> w_try(p);
        std::vector<double> grad_try;
        double b_try, gb_try, loss_try;
        while (true) {
            for (size_t j = 0; j < p; ++j) w_try[j] = w[j] - step * grad_w[j];
            b_try = b - step * grad_b;
            loss_try = logreg_loss_and_grad(X, y, lambda, w_try, b_try, grad_try, gb_try);
            if (loss_try <= loss - 0.5 * step * gnorm2 || step < 1e-12) break;
            step *= 0.5;
        }
        w = std::move(w_try);
        b = b_try;
        loss = loss_try;
        grad_w = std::move(grad_try);
        grad_b = gb_try;
        step = std::min(step * 2.0, 1e6);  // let it grow back
    }

    auto m = std::make_unique<LogRegModel>();
    m->weights = std::move(w);
    m->bias = b;
    return m;
}

nlohmann::json LogRegModel::to_json() const {
    return {{"kind", "logreg"}, {"weights", weights}, {"bias", bias}};
}

std::unique_ptr<LogRegModel> LogRegModel::from_json(const nlohmann::json& j) {
    auto m = std::make_unique<LogRegModel>();
    m->weights = j.at("weights").get<std::vector<double>>();
    m->bias = j.at("bias");
    return m;
}

}  // namespace detail

}  // namespace prism::ml
