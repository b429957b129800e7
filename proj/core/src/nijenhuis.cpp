#include "acstk/nijenhuis.hpp"

#include <algorithm>
#include <cmath>

#include "acstk/error.hpp"

namespace acstk {

double NijTensor::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

NijTensor nijenhuis_invariant(const LieAlgebra& g, const Acs& acs) {
    if (g.dim() != acs.dim())
        throw ValidationError("algebra dimension " + std::to_string(g.dim()) +
                              " does not match structure dimension " + std::to_string(acs.dim()));
    const int n = g.dim();
    const Matrix& j = acs.matrix();
    NijTensor out(n);
    if (g.is_abelian()) return out;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            const Vector x = Vector::Unit(n, a);
            const Vector y = Vector::Unit(n, b);
            const Vector jx = j.col(a);
            const Vector jy = j.col(b);
            const Vector val = g.bracket(jx, jy) - j * g.bracket(jx, y) - j * g.bracket(x, jy) -
                               g.bracket(x, y);
            for (int k = 0; k < n; ++k) {
                out(k, a, b) = val(k);
                out(k, b, a) = -val(k);
            }
        }
    return out;
}

MuBarMatrix mu_bar_matrix(const LieAlgebra& g, const Acs& acs) {
    if (g.dim() != acs.dim())
        throw ValidationError("algebra dimension does not match structure dimension");
    MuBarMatrix out{CMatrix::Zero(acs.half_dim(), pair_count(acs.half_dim())), adapted_frame(acs)};
    const int m = acs.half_dim();
    if (g.is_abelian()) return out;
    const CMatrix vbar = out.frame.v.conjugate();
    int p = 0;
    for (int k = 0; k < m; ++k)
        for (int l = k + 1; l < m; ++l, ++p) {
            const CVector br = g.bracket<std::complex<double>>(vbar.col(k), vbar.col(l));
            out.g.col(p) = -(out.frame.omega * br);
        }
    return out;
}

CMatrix nijenhuis_frame_matrix(const NijTensor& n, const AdaptedFrame& frame) {
    const int m = static_cast<int>(frame.v.cols());
    CMatrix out(m, pair_count(m));
    const CMatrix vbar = frame.v.conjugate();
    int p = 0;
    for (int k = 0; k < m; ++k)
        for (int l = k + 1; l < m; ++l, ++p)
            out.col(p) = frame.omega * n.apply<std::complex<double>>(vbar.col(k), vbar.col(l));
    return out;
}

RankResult complex_rank_detail(const LieAlgebra& g, const Acs& j, RankTolerance tol) {
    const MuBarMatrix mu = mu_bar_matrix(g, j);
    RankResult r;
    r.singular_values = singular_values(mu.g);
    r.rank = numerical_rank(r.singular_values, tol);
    return r;
}

int complex_rank(const LieAlgebra& g, const Acs& j, RankTolerance tol) {
    return complex_rank_detail(g, j, tol).rank;
}

int max_complex_rank(int dim) {
    const int m = dim / 2;
    if (m < 2) return 0;
    if (m == 2) return 1;
    return m;
}

}  // namespace acstk
