#pragma once

#include "acstk/acs.hpp"
#include "acstk/algebra.hpp"
#include "acstk/linalg.hpp"

namespace acstk {

/// Invariant-level h^1_{d+d^c} computed two ways, with b1 and the complex
/// rank of the structure.
struct InvariantReport {
    int h1_ddc = 0;
    int b1 = 0;
    int method_a = 0;  // 2 dim_C(ker d on span of the (1,0)-coframe)
    int method_b = 0;  // dim_C(ker d ∩ ker d^c) on all complex 1-forms
    int rank = 0;
};

/// Kernel-dimension tolerance (relative to the largest singular value).
inline constexpr double kKernelTolerance = 1e-9;

/// d^c = J^{-1} d J on 1-forms, with J acting on forms by pullback along
/// J^{-1}: (J a)(X) = a(J^{-1} X), (J b)(X, Y) = b(J^{-1} X, J^{-1} Y).
/// Returns the matrix sending 1-form coefficients to 2-form coefficients.
Matrix dc_matrix(const LieAlgebra& g, const Acs& j);

/// Throws std::logic_error when the two methods disagree.
InvariantReport h1_ddc(const LieAlgebra& g, const Acs& j, RankTolerance rank_tol = {});

/// dim ker d on invariant real 1-forms.
int b1(const LieAlgebra& g);

}  // namespace acstk
