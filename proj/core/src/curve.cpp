#include "acstk/curve.hpp"

#include <cmath>
#include <sstream>

#include "acstk/error.hpp"

namespace acstk {

namespace {
constexpr double kBasePointTolerance = 1e-12;
}

std::string to_string(CurveBasis basis) {
    return basis == CurveBasis::monomial ? "monomial" : "bernstein";
}

CurveBasis curve_basis_from_string(const std::string& name) {
    if (name == "monomial") return CurveBasis::monomial;
    if (name == "bernstein") return CurveBasis::bernstein;
    throw ValidationError("unknown curve basis '" + name + "'");
}

CurveL::CurveL(Acs base, std::vector<Matrix> coeffs, Interval domain, CurveBasis basis)
    : base_(std::move(base)), coeffs_(std::move(coeffs)), domain_(domain), basis_(basis) {
    if (!(std::isfinite(domain_.lo) && std::isfinite(domain_.hi) && domain_.lo < domain_.hi))
        throw ValidationError("curve domain must be a finite interval with lo < hi");
    if (coeffs_.empty())
        throw ValidationError("curve needs at least one coefficient");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        try {
            AntiCommEndo check(coeffs_[i], base_);
        } catch (const ValidationError& e) {
            throw ValidationError("curve coefficient " + std::to_string(i) + ": " + e.what());
        }
    }
    if (basis_ == CurveBasis::bernstein) {
        const double at0 = max_abs(eval(0.0));
        if (!(at0 <= kBasePointTolerance)) {
            std::ostringstream os;
            os << "curve must pass through its base structure: ||L(0)||_max = " << at0;
            throw ValidationError(os.str());
        }
    }
}

int CurveL::degree() const {
    return basis_ == CurveBasis::monomial ? static_cast<int>(coeffs_.size())
                                          : static_cast<int>(coeffs_.size()) - 1;
}

Matrix CurveL::eval(double t) const {
    if (basis_ == CurveBasis::monomial) {
        // Horner on t (L_1 + t (L_2 + ...)).
        Matrix acc = coeffs_.back();
        for (auto it = coeffs_.rbegin() + 1; it != coeffs_.rend(); ++it) acc = *it + t * acc;
        return t * acc;
    }
    const double s = (t - domain_.lo) / domain_.width();
    std::vector<Matrix> work = coeffs_;
    for (std::size_t r = 1; r < work.size(); ++r)
        for (std::size_t k = 0; k + r < work.size(); ++k)
            work[k] = (1.0 - s) * work[k] + s * work[k + 1];
    return work.front();
}

CurveL CurveL::to_monomial() const {
    if (basis_ == CurveBasis::monomial) return *this;
    using Real = long double;
    const int n = degree();
    const int dim = base_.dim();
    // Power-basis coefficients in s: a_j = C(n, j) * (j-th forward difference of P at 0).
    std::vector<Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>> diff;
    for (const auto& p : coeffs_) diff.push_back(p.cast<Real>());
    std::vector<Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>> in_s;
    Real binom = 1;
    for (int j = 0; j <= n; ++j) {
        in_s.push_back(binom * diff[0]);
        for (int k = 0; k + 1 < static_cast<int>(diff.size()); ++k) diff[k] = diff[k + 1] - diff[k];
        diff.pop_back();
        binom = binom * (n - j) / (j + 1);
    }
    // Substitute s = (t - lo) / w and expand in t.
    const Real lo = domain_.lo;
    const Real w = domain_.width();
    std::vector<Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>> in_t(
        n + 1, Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>::Zero(dim, dim));
    for (int j = 0; j <= n; ++j) {
        // ((t - lo)/w)^j = w^{-j} sum_i C(j, i) t^i (-lo)^{j-i}
        Real c = 1;
        for (int i = 0; i <= j; ++i) {
            in_t[i] += in_s[j] * (c * std::pow(-lo, static_cast<Real>(j - i)) /
                                  std::pow(w, static_cast<Real>(j)));
            c = c * (j - i) / (i + 1);
        }
    }
    std::vector<Matrix> out;
    for (int i = 1; i <= n; ++i) out.push_back(in_t[i].cast<double>());
    return CurveL(base_, std::move(out), domain_, CurveBasis::monomial);
}

}  // namespace acstk
