#include "arena/linear_models.hpp"

#include <cmath>
#include <stdexcept>

namespace arena {

namespace {

void check_quantile(double q) {
    if (!(q > 0.0 && q < 1.0)) {
        throw std::invalid_argument("quantile must lie in (0, 1)");
    }
}

}  // namespace

double pinball_loss(double actual, double predicted, double q) {
    check_quantile(q);
    return actual >= predicted ? q * (actual - predicted) : (1.0 - q) * (predicted - actual);
}

Eigen::VectorXd solve_ridge(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const Eigen::VectorXd& penalty) {
    if (X.rows() != y.size() || X.cols() != penalty.size()) {
        throw std::invalid_argument("solve_ridge: dimension mismatch");
    }
    Eigen::MatrixXd gram = X.transpose() * X;
    gram.diagonal() += penalty;
    const Eigen::LLT<Eigen::MatrixXd> llt(gram);
    if (llt.info() != Eigen::Success || llt.rcond() < 1e-13) {
        throw std::runtime_error("degenerate design matrix (normal equations not positive definite)");
    }
    return llt.solve(X.transpose() * y);
}

double pinball_objective(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const Eigen::VectorXd& w, double q,
                         double lambda) {
    check_quantile(q);
    const Eigen::VectorXd residual = y - X * w;
    double total = 0.0;
    for (Eigen::Index i = 0; i < residual.size(); ++i) {
        const double r = residual[i];
        total += r >= 0.0 ? q * r : (q - 1.0) * r;
    }
    return total / static_cast<double>(y.size()) + lambda * w.squaredNorm();
}

Eigen::VectorXd pinball_subgradient(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const Eigen::VectorXd& w,
                                    double q, double lambda) {
    check_quantile(q);
    const Eigen::VectorXd residual = y - X * w;
    Eigen::VectorXd psi(residual.size());
    for (Eigen::Index i = 0; i < residual.size(); ++i) {
        const double r = residual[i];
        psi[i] = r > 0.0 ? q : (r < 0.0 ? q - 1.0 : 0.0);
    }
    return -(X.transpose() * psi) / static_cast<double>(y.size()) + 2.0 * lambda * w;
}

Eigen::VectorXd fit_pinball(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double q, double lambda,
                            const Eigen::VectorXd& init, const PinballSchedule& schedule) {
    check_quantile(q);
    if (y.size() == 0) {
        throw std::invalid_argument("fit_pinball: no rows");
    }
    Eigen::VectorXd w = init;
    Eigen::VectorXd best = w;
    double best_objective = pinball_objective(X, y, w, q, lambda);
    for (int epoch = 1; epoch <= schedule.epochs; ++epoch) {
        const Eigen::VectorXd update = (schedule.step / std::sqrt(static_cast<double>(epoch))) *
                                       pinball_subgradient(X, y, w, q, lambda);
        w -= update;
        const double objective = pinball_objective(X, y, w, q, lambda);
        if (objective < best_objective) {
            best_objective = objective;
            best = w;
        }
        if (update.norm() < schedule.tolerance) {
            break;
        }
    }
    return best;
}

}  // namespace arena
