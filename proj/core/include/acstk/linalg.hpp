#pragma once

#include <Eigen/Dense>

namespace acstk {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Relative/absolute thresholds for numerical rank.
struct RankTolerance {
    double rel = 1e-8;
    double abs = 1e-12;
};

/// Singular values in decreasing order.
Vector singular_values(const Matrix& a);
Vector singular_values(const CMatrix& a);

/// Number of singular values strictly above max(tol.rel * sigma_1, tol.abs).
int numerical_rank(const Vector& sigma, RankTolerance tol);

double spectral_norm(const Matrix& a);
double smallest_singular_value(const Matrix& a);

/// Largest absolute entry.
double max_abs(const Matrix& a);
double max_abs(const CMatrix& a);

}  // namespace acstk
