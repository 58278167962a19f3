#include "arena/linear_models.hpp"
#include "synthetic.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace arena;

TEST_CASE("pinball loss values") {
    CHECK(pinball_loss(3.0, 3.0, 0.3) == 0.0);
    CHECK(pinball_loss(10, 8, 0.5) == doctest::Approx(1.0));
    CHECK(pinball_loss(8, 10, 0.9) == doctest::Approx(0.2));
    CHECK_THROWS_AS(pinball_loss(1, 1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(pinball_loss(1, 1, 1.0), std::invalid_argument);
}

TEST_CASE("ridge solve matches the closed form") {
    testing::Rng rng(9);
    Eigen::MatrixXd X(40, 4);
    Eigen::VectorXd y(40);
    for (int i = 0; i < 40; ++i) {
        for (int j = 0; j < 4; ++j) X(i, j) = rng.normal();
        y(i) = rng.normal();
    }
    Eigen::VectorXd pen(4);
    pen << 0.0, 0.5, 2.0, 0.0;
    const Eigen::VectorXd w = solve_ridge(X, y, pen);
    // stationarity: X'(Xw - y) + diag(pen) w = 0
    const Eigen::VectorXd grad = X.transpose() * (X * w - y) + pen.asDiagonal() * w;
    CHECK(grad.cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("ridge solve rejects a singular design") {
    Eigen::MatrixXd X(5, 2);
    X.col(0).setOnes();
    X.col(1).setOnes();
    CHECK_THROWS_AS(solve_ridge(X, Eigen::VectorXd::Ones(5), Eigen::VectorXd::Zero(2)), std::runtime_error);
    CHECK_NOTHROW(solve_ridge(X, Eigen::VectorXd::Ones(5), Eigen::VectorXd::Constant(2, 1.0)));
}

TEST_CASE("pinball subgradient matches central differences") {
    testing::Rng rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 30, p = 5;
        Eigen::MatrixXd X(n, p);
        Eigen::VectorXd y(n), w(p);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < p; ++j) X(i, j) = rng.normal();
            y(i) = rng.normal();
        }
        for (int j = 0; j < p; ++j) w(j) = rng.normal();
        const double q = rng.uniform(0.1, 0.9);
        const double lambda = 1e-3;
        const double min_residual = (y - X * w).cwiseAbs().minCoeff();
        const double h = std::min(1e-6, min_residual / (4.0 * X.cwiseAbs().maxCoeff()));
        const Eigen::VectorXd g = pinball_subgradient(X, y, w, q, lambda);
        for (int j = 0; j < p; ++j) {
            Eigen::VectorXd up = w, down = w;
            up(j) += h;
            down(j) -= h;
            const double fd = (pinball_objective(X, y, up, q, lambda) - pinball_objective(X, y, down, q, lambda)) / (2 * h);
            CHECK(std::abs(fd - g(j)) <= 1e-5 * std::max(1.0, std::abs(g(j))));
        }
    }
}

TEST_CASE("pinball fit on a constant with symmetric noise finds the median") {
    testing::Rng rng(4);
    const int n = 401;
    Eigen::MatrixXd X = Eigen::MatrixXd::Ones(n, 1);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) y(i) = 5.0 + (rng.chance(0.5) ? 1.0 : -1.0) * rng.uniform(0.0, 1.0);
    std::vector<double> sorted(y.data(), y.data() + n);
    std::sort(sorted.begin(), sorted.end());
    const double median = sorted[n / 2];
    const Eigen::VectorXd w = fit_pinball(X, y, 0.5, 0.0, solve_ridge(X, y, Eigen::VectorXd::Zero(1)));
    CHECK(std::abs(w(0) - median) < 0.05);
}

TEST_CASE("pinball fit moves from the mean to the median on skewed noise") {
    testing::Rng rng(15);
    const int n = 601;
    Eigen::MatrixXd X = Eigen::MatrixXd::Ones(n, 1);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) y(i) = 2.0 - std::log(1.0 - rng.uniform());  // exponential noise
    std::vector<double> sorted(y.data(), y.data() + n);
    std::sort(sorted.begin(), sorted.end());
    const double median = sorted[n / 2];
    const Eigen::VectorXd init = solve_ridge(X, y, Eigen::VectorXd::Zero(1));
    REQUIRE(std::abs(init(0) - median) > 0.2);
    const Eigen::VectorXd w = fit_pinball(X, y, 0.5, 0.0, init);
    CHECK(std::abs(w(0) - median) < 0.05);
}

TEST_CASE("pinball fit never returns something worse than its start") {
    testing::Rng rng(8);
    Eigen::MatrixXd X(50, 3);
    Eigen::VectorXd y(50);
    for (int i = 0; i < 50; ++i) {
        for (int j = 0; j < 3; ++j) X(i, j) = rng.normal();
        y(i) = rng.normal() * 3;
    }
    const Eigen::VectorXd init = solve_ridge(X, y, Eigen::VectorXd::Zero(3));
    const Eigen::VectorXd w = fit_pinball(X, y, 0.8, 1e-4, init);
    CHECK(pinball_objective(X, y, w, 0.8, 1e-4) <= pinball_objective(X, y, init, 0.8, 1e-4));
    CHECK(w == fit_pinball(X, y, 0.8, 1e-4, init));
}
