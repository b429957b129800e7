#include "acstk/linalg.hpp"

#include <algorithm>

namespace acstk {

Vector singular_values(const Matrix& a) {
    if (a.size() == 0) return Vector(0);
    return Eigen::JacobiSVD<Matrix>(a).singularValues();
}

Vector singular_values(const CMatrix& a) {
    if (a.size() == 0) return Vector(0);
    return Eigen::JacobiSVD<CMatrix>(a).singularValues();
}

int numerical_rank(const Vector& sigma, RankTolerance tol) {
    if (sigma.size() == 0) return 0;
    const double cut = std::max(tol.rel * sigma(0), tol.abs);
    int r = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i)
        if (sigma(i) > cut) ++r;
    return r;
}

double spectral_norm(const Matrix& a) {
    const Vector s = singular_values(a);
    return s.size() ? s(0) : 0.0;
}

double smallest_singular_value(const Matrix& a) {
    const Vector s = singular_values(a);
    return s.size() ? s(s.size() - 1) : 0.0;
}

double max_abs(const Matrix& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }
double max_abs(const CMatrix& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace acstk
