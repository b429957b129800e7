#pragma once

#include <string>
#include <vector>

#include "acstk/acs.hpp"
#include "acstk/interval.hpp"

namespace acstk {

enum class CurveBasis {
    /// L(t) = sum_{j=1..d} L_j t^j; coefficients are L_1..L_d.
    monomial,
    /// L(t) = sum_{k=0..n} P_k b_{k,n}(s), s = (t - lo)/(hi - lo); coefficients
    /// are the control points P_0..P_n.
    bernstein,
};

std::string to_string(CurveBasis basis);
CurveBasis curve_basis_from_string(const std::string& name);

/// Polynomial family L(t) of endomorphisms anti-commuting with a base
/// structure J0, with L(0) = 0. Every such family is a real analytic curve
/// of almost complex structures t -> (I + L(t)) J0 (I + L(t))^{-1}.
class CurveL {
public:
    CurveL(Acs base, std::vector<Matrix> coeffs, Interval domain,
           CurveBasis basis = CurveBasis::monomial);

    const Acs& base() const { return base_; }
    const std::vector<Matrix>& coeffs() const { return coeffs_; }
    const Interval& domain() const { return domain_; }
    CurveBasis basis() const { return basis_; }
    int dim() const { return base_.dim(); }

    /// Polynomial degree in t.
    int degree() const;

    /// L(t); polynomial evaluation is valid for any real t.
    Matrix eval(double t) const;

    /// Same curve in the monomial basis (conversion in extended precision;
    /// ill-conditioned for high-degree Bernstein curves).
    CurveL to_monomial() const;

private:
    Acs base_;
    std::vector<Matrix> coeffs_;
    Interval domain_;
    CurveBasis basis_;
};

}  // namespace acstk
