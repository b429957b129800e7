#include "acstk/invariants.hpp"

#include <stdexcept>

#include "acstk/error.hpp"
#include "acstk/nijenhuis.hpp"

namespace acstk {

namespace {

template <class M>
int kernel_dim(const M& a) {
    const Vector s = singular_values(a);
    return static_cast<int>(a.cols()) - numerical_rank(s, {kKernelTolerance, 1e-12});
}

// Action of a real endomorphism A on 2-form coefficients by
// b -> b(A X, A Y); rows/cols indexed by strict pairs.
Matrix two_form_pullback(const Matrix& a) {
    const int n = static_cast<int>(a.rows());
    Matrix out = Matrix::Zero(pair_count(n), pair_count(n));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const int row = pair_index(n, i, j);
            // (A^* e^p ∧ e^q)(e_i, e_j) = A(p,i) A(q,j) - A(q,i) A(p,j)
            for (int p = 0; p < n; ++p)
                for (int q = p + 1; q < n; ++q)
                    out(row, pair_index(n, p, q)) = a(p, i) * a(q, j) - a(q, i) * a(p, j);
        }
    return out;
}

}  // namespace

Matrix dc_matrix(const LieAlgebra& g, const Acs& j) {
    if (g.dim() != j.dim()) throw ValidationError("algebra and structure dimensions differ");
    const Matrix jinv = j.inverse();
    // (J a)_i = a(J^{-1} e_i) = sum_k a_k J^{-1}(k, i)  ->  J on 1-forms is (J^{-1})^T.
    const Matrix j_on_1 = jinv.transpose();
    // J^{-1} on 2-forms is the pullback along J.
    const Matrix jinv_on_2 = two_form_pullback(j.matrix());
    return jinv_on_2 * ce_d_matrix(g) * j_on_1;
}

int b1(const LieAlgebra& g) { return kernel_dim(ce_d_matrix(g)); }

InvariantReport h1_ddc(const LieAlgebra& g, const Acs& j, RankTolerance rank_tol) {
    if (g.dim() != j.dim()) throw ValidationError("algebra and structure dimensions differ");
    const int n = g.dim();
    const Matrix d = ce_d_matrix(g);

    InvariantReport r;
    const AdaptedFrame frame = adapted_frame(j);
    // Columns: d(omega^j) as 2-form coefficients.
    const CMatrix d_on_10 = d.cast<std::complex<double>>() * frame.omega.transpose();
    r.method_a = 2 * kernel_dim(d_on_10);

    Matrix stacked(2 * pair_count(n), n);
    stacked << d, dc_matrix(g, j);
    r.method_b = kernel_dim(stacked);  // real matrix: complex kernel dim = real kernel dim

    r.b1 = kernel_dim(d);
    r.rank = complex_rank(g, j, rank_tol);
    if (r.method_a != r.method_b)
        throw std::logic_error("h1_ddc methods disagree: method A = " + std::to_string(r.method_a) +
                               ", method B = " + std::to_string(r.method_b));
    r.h1_ddc = r.method_a;
    return r;
}

}  // namespace acstk
