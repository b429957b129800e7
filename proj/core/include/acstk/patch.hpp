#pragma once

#include <span>
#include <vector>

#include "acstk/expr.hpp"
#include "acstk/interval.hpp"
#include "acstk/linalg.hpp"
#include "acstk/nijenhuis.hpp"

namespace acstk {

/// Almost complex structure on a coordinate box in R^{2m}, entries given as
/// expressions in x1..x_{2m}. Construction checks J(x)^2 = -I on a uniform
/// validation grid.
class PatchAcs {
public:
    static constexpr double kTolerance = 1e-8;

    PatchAcs(int dim, std::vector<std::vector<Expr>> entries, std::vector<Interval> box,
             int validation_per_axis = 3);

    int dim() const { return dim_; }
    const std::vector<std::vector<Expr>>& entries() const { return entries_; }
    const std::vector<Interval>& box() const { return box_; }

    bool contains(std::span<const double> x) const;

    Matrix matrix_at(std::span<const double> x) const;

    /// Partial derivatives dJ/dx_l at x, one matrix per coordinate l.
    std::vector<Matrix> derivatives_at(std::span<const double> x) const;

    /// Symbolic dJ(r, c)/dx_l.
    const Expr& derivative(int l, int r, int c) const {
        return d_entries_[(static_cast<std::size_t>(l) * dim_ + r) * dim_ + c];
    }

private:
    int dim_;
    std::vector<std::vector<Expr>> entries_;
    std::vector<Interval> box_;
    std::vector<Expr> d_entries_;
};

/// N^k_{ij} at x from the coordinate expansion
///   J^l_i d_l J^k_j - J^l_j d_l J^k_i + J^k_l d_j J^l_i - J^k_l d_i J^l_j
/// with exact symbolic derivatives.
NijTensor nijenhuis_patch(const PatchAcs& p, std::span<const double> x);

/// A vector field as expressions for its components.
using VectorField = std::vector<Expr>;

/// Symbolic Lie bracket [V, W]^k = V^l d_l W^k - W^l d_l V^k.
VectorField field_bracket(const VectorField& v, const VectorField& w);

/// Symbolic J V.
VectorField apply_structure(const PatchAcs& p, const VectorField& v);

/// Symbolic N(X, Y) for arbitrary vector fields.
VectorField nijenhuis_fields(const PatchAcs& p, const VectorField& x, const VectorField& y);

/// Complex rank at x: the mu-bar matrix is N evaluated on the conjugate
/// adapted frame, divided by 4.
RankResult patch_rank_at(const PatchAcs& p, std::span<const double> x, RankTolerance tol = {});

struct GridRank {
    int k_min = 0;
    std::vector<double> argmin;
    std::size_t points = 0;
    std::vector<std::size_t> histogram;  // histogram[r] = number of points with rank r
};

/// Minimum complex rank over a uniform per_axis^{2m} grid of the box; ties
/// resolve to the lexicographically smallest grid index.
GridRank min_rank_on_grid(const PatchAcs& p, int per_axis, RankTolerance tol = {},
                          unsigned threads = 0);

}  // namespace acstk
