#pragma once

#include <Eigen/Dense>

namespace arena {

/// Asymmetric absolute loss: q*(a-p) when a >= p, (1-q)*(p-a) otherwise. Requires 0 < q < 1.
double pinball_loss(double actual, double predicted, double q);

/// Solves min_w ||y - X w||^2 + sum_j penalty_j * w_j^2 through the normal equations with a
/// Cholesky factorization. Throws std::runtime_error when the regularized Gram matrix is not
/// numerically positive definite.
Eigen::VectorXd solve_ridge(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const Eigen::VectorXd& penalty);

/// Mean pinball loss over the rows plus lambda * ||w||^2.
double pinball_objective(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const Eigen::VectorXd& w, double q,
                         double lambda);

/// Subgradient of pinball_objective. Exact gradient wherever no residual is zero.
Eigen::VectorXd pinball_subgradient(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const Eigen::VectorXd& w,
                                    double q, double lambda);

struct PinballSchedule {
    int epochs = 500;
    double step = 0.1;        // step at epoch k is step / sqrt(k)
    double tolerance = 1e-8;  // stop once an update moves w by less than this
};

/// Full-batch subgradient descent on pinball_objective from `init`; returns the best iterate seen.
Eigen::VectorXd fit_pinball(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double q, double lambda,
                            const Eigen::VectorXd& init, const PinballSchedule& schedule = {});

}  // namespace arena
