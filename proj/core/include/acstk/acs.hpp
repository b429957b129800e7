#pragma once

#include <cstdint>

#include "acstk/linalg.hpp"

namespace acstk {

/// Almost complex structure on R^{2m}: a real matrix with J^2 = -I.
class Acs {
public:
    static constexpr double kTolerance = 1e-10;

    /// Throws ValidationError if the matrix is not square of even side or
    /// if ||J^2 + I||_max exceeds kTolerance.
    explicit Acs(Matrix j);

    const Matrix& matrix() const { return j_; }
    int dim() const { return static_cast<int>(j_.rows()); }
    int half_dim() const { return dim() / 2; }

    /// -J, the inverse of J.
    Matrix inverse() const { return -j_; }

    /// Block-diagonal [[0,-1],[1,0]] blocks: J e_{2a-1} = e_{2a}.
    static Acs standard(int dim);

private:
    Matrix j_;
};

/// Endomorphism L anti-commuting with a base structure: L J0 + J0 L = 0.
class AntiCommEndo {
public:
    static constexpr double kTolerance = 1e-10;

    /// Bound applied to ||L J0 + J0 L||_max: kTolerance on unit-scale data,
    /// growing with ||L||_max * ||J0||_max once the product leaves that scale.
    static double tolerance_for(const Matrix& l, const Matrix& j0);

    AntiCommEndo(Matrix l, Acs base);

    const Matrix& matrix() const { return l_; }
    const Acs& base() const { return base_; }

    /// Projects any square matrix onto the anti-commuting subspace:
    /// L -> (L + J0 L J0) / 2.
    static AntiCommEndo project(const Matrix& l, const Acs& base);

private:
    Matrix l_;
    Acs base_;
};

/// Seeded random structure A J_base A^{-1}, A uniform in [-1, 1]^{n x n}
/// with condition number <= 1e6. flip_orientation swaps the first block of
/// J_base to [[0,1],[-1,0]].
Acs random_acs(int dim, std::uint64_t seed, bool flip_orientation = false);

/// Adapted complex frame of J: real legs u_j, v_j = u_j - i J u_j spanning
/// the +i eigenspace, and the dual (1,0)-coframe omega (rows).
struct AdaptedFrame {
    Matrix u;       // dim x m, columns u_j
    CMatrix v;      // dim x m, columns v_j
    CMatrix omega;  // m x dim, rows omega^j with omega^j(v_k) = delta, omega^j(conj v_k) = 0
    std::vector<int> legs;  // standard-basis indices (0-based) chosen as u_j
};

AdaptedFrame adapted_frame(const Acs& j);

/// Psi = (L - i J0 L) / 2 on the complexification.
CMatrix psi_from_L(const AntiCommEndo& l);

/// Operator (spectral) norm of J0 - J1.
double c0_distance(const Acs& j0, const Acs& j1);

}  // namespace acstk
