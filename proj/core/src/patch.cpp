#include "acstk/patch.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "acstk/acs.hpp"
#include "acstk/parallel.hpp"

namespace acstk {

namespace {

// Grid point with multi-index `flat` (first coordinate most significant).
std::vector<double> grid_point(const std::vector<Interval>& box, int per_axis, std::size_t flat) {
    const std::size_t n = box.size();
    std::vector<double> x(n);
    for (std::size_t a = n; a-- > 0;) {
        const std::size_t idx = flat % static_cast<std::size_t>(per_axis);
        flat /= static_cast<std::size_t>(per_axis);
        x[a] = idx + 1 == static_cast<std::size_t>(per_axis)
                   ? box[a].hi
                   : box[a].lo + box[a].width() * static_cast<double>(idx) / (per_axis - 1);
    }
    return x;
}

std::size_t grid_size(std::size_t axes, int per_axis) {
    std::size_t total = 1;
    for (std::size_t a = 0; a < axes; ++a) {
        if (total > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(per_axis))
            throw ValidationError("grid too large");
        total *= static_cast<std::size_t>(per_axis);
    }
    return total;
}

}  // namespace

PatchAcs::PatchAcs(int dim, std::vector<std::vector<Expr>> entries, std::vector<Interval> box,
                   int validation_per_axis)
    : dim_(dim), entries_(std::move(entries)), box_(std::move(box)) {
    if (dim < 2 || dim % 2 != 0)
        throw ValidationError("patch dimension must be even and >= 2, got " + std::to_string(dim));
    if (static_cast<int>(entries_.size()) != dim)
        throw ValidationError("patch needs " + std::to_string(dim) + " rows of entries");
    for (const auto& row : entries_)
        if (static_cast<int>(row.size()) != dim)
            throw ValidationError("patch entry rows must have " + std::to_string(dim) + " expressions");
    if (static_cast<int>(box_.size()) != dim)
        throw ValidationError("patch box needs one interval per coordinate");
    for (const auto& iv : box_)
        if (!(iv.lo <= iv.hi)) throw ValidationError("patch box intervals need lo <= hi");
    for (const auto& row : entries_)
        for (const auto& e : row)
            if (e.arity() > dim)
                throw ValidationError("expression uses a variable beyond x" + std::to_string(dim));
    if (validation_per_axis < 2) throw ValidationError("validation grid needs >= 2 points per axis");

    d_entries_.reserve(static_cast<std::size_t>(dim) * dim * dim);
    for (int l = 0; l < dim; ++l)
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c) d_entries_.push_back(diff_expr(entries_[r][c], l));

    const std::size_t total = grid_size(box_.size(), validation_per_axis);
    for (std::size_t flat = 0; flat < total; ++flat) {
        const auto x = grid_point(box_, validation_per_axis, flat);
        const Matrix j = matrix_at(x);
        const double defect = max_abs(Matrix(j * j + Matrix::Identity(dim, dim)));
        if (!(defect <= kTolerance)) {
            std::ostringstream os;
            os << "J(x)^2 + I is not zero at x = (";
            for (std::size_t a = 0; a < x.size(); ++a) os << (a ? ", " : "") << x[a];
            os << "): ||J^2 + I||_max = " << defect;
            throw ValidationError(os.str());
        }
    }
}

bool PatchAcs::contains(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dim_) return false;
    for (int a = 0; a < dim_; ++a)
        if (!box_[a].contains(x[a])) return false;
    return true;
}

Matrix PatchAcs::matrix_at(std::span<const double> x) const {
    Matrix j(dim_, dim_);
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) j(r, c) = entries_[r][c].eval(x);
    return j;
}

std::vector<Matrix> PatchAcs::derivatives_at(std::span<const double> x) const {
    std::vector<Matrix> out(dim_, Matrix(dim_, dim_));
    for (int l = 0; l < dim_; ++l)
        for (int r = 0; r < dim_; ++r)
            for (int c = 0; c < dim_; ++c) out[l](r, c) = derivative(l, r, c).eval(x);
    return out;
}

NijTensor nijenhuis_patch(const PatchAcs& p, std::span<const double> x) {
    if (!p.contains(x)) throw ValidationError("point lies outside the patch box");
    const int n = p.dim();
    const Matrix j = p.matrix_at(x);
    const auto dj = p.derivatives_at(x);
    // (J^l_i d_l J)(k, j) summed over l: D_i = sum_l J(l, i) dJ_l.
    std::vector<Matrix> along(n, Matrix::Zero(n, n));
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) along[i] += j(l, i) * dj[l];
    NijTensor out(n);
    for (int i = 0; i < n; ++i)
        for (int jj = i + 1; jj < n; ++jj) {
            const Vector v = along[i].col(jj) - along[jj].col(i) + j * dj[jj].col(i) - j * dj[i].col(jj);
            for (int k = 0; k < n; ++k) {
                out(k, i, jj) = v(k);
                out(k, jj, i) = -v(k);
            }
        }
    return out;
}

VectorField field_bracket(const VectorField& v, const VectorField& w) {
    const std::size_t n = v.size();
    VectorField out(n, Expr::number(0.0));
    for (std::size_t k = 0; k < n; ++k) {
        Expr acc = Expr::number(0.0);
        for (std::size_t l = 0; l < n; ++l) {
            acc = Expr::add(acc, Expr::mul(v[l], diff_expr(w[k], static_cast<int>(l))));
            acc = Expr::sub(acc, Expr::mul(w[l], diff_expr(v[k], static_cast<int>(l))));
        }
        out[k] = simplify(acc);
    }
    return out;
}

VectorField apply_structure(const PatchAcs& p, const VectorField& v) {
    const int n = p.dim();
    VectorField out(n);
    for (int r = 0; r < n; ++r) {
        Expr acc = Expr::number(0.0);
        for (int c = 0; c < n; ++c) acc = Expr::add(acc, Expr::mul(p.entries()[r][c], v[c]));
        out[r] = simplify(acc);
    }
    return out;
}

VectorField nijenhuis_fields(const PatchAcs& p, const VectorField& x, const VectorField& y) {
    if (static_cast<int>(x.size()) != p.dim() || static_cast<int>(y.size()) != p.dim())
        throw ValidationError("vector field length does not match patch dimension");
    const VectorField jx = apply_structure(p, x);
    const VectorField jy = apply_structure(p, y);
    const VectorField a = field_bracket(jx, jy);
    const VectorField b = apply_structure(p, field_bracket(jx, y));
    const VectorField c = apply_structure(p, field_bracket(x, jy));
    const VectorField d = field_bracket(x, y);
    VectorField out(x.size());
    for (std::size_t k = 0; k < x.size(); ++k)
        out[k] = simplify(Expr::sub(Expr::sub(Expr::sub(a[k], b[k]), c[k]), d[k]));
    return out;
}

RankResult patch_rank_at(const PatchAcs& p, std::span<const double> x, RankTolerance tol) {
    const NijTensor n = nijenhuis_patch(p, x);
    const Acs j(p.matrix_at(x));
    const AdaptedFrame frame = adapted_frame(j);
    const CMatrix g = 0.25 * nijenhuis_frame_matrix(n, frame);
    RankResult r;
    r.singular_values = singular_values(g);
    r.rank = numerical_rank(r.singular_values, tol);
    return r;
}

GridRank min_rank_on_grid(const PatchAcs& p, int per_axis, RankTolerance tol, unsigned threads) {
    if (per_axis < 2) throw ValidationError("min_rank_on_grid needs per_axis >= 2");
    const std::size_t total = grid_size(p.box().size(), per_axis);
    std::vector<int> ranks(total);
    parallel_for(total,
                 [&](std::size_t flat) {
                     const auto x = grid_point(p.box(), per_axis, flat);
                     try {
                         ranks[flat] = patch_rank_at(p, x, tol).rank;
                     } catch (const ValidationError& e) {
                         std::ostringstream os;
                         os << "at grid point " << flat << ": " << e.what();
                         throw ValidationError(os.str());
                     }
                 },
                 threads);
    GridRank out;
    out.points = total;
    out.histogram.assign(static_cast<std::size_t>(p.dim() / 2 + 1), 0);
    std::size_t best = 0;
    for (std::size_t flat = 0; flat < total; ++flat) {
        ++out.histogram[static_cast<std::size_t>(ranks[flat])];
        if (ranks[flat] < ranks[best]) best = flat;
    }
    out.k_min = ranks[best];
    out.argmin = grid_point(p.box(), per_axis, best);
    return out;
}

}  // namespace acstk
