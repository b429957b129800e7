#include "fixtures.hpp"

#include <cmath>
#include <set>

namespace fixtures {

acstk::Acs j_a() { return acstk::Acs::standard(6); }

acstk::Acs j_b() {
    Matrix j = Matrix::Zero(6, 6);
    j(2, 0) = 1;   // e1 -> e3
    j(0, 2) = -1;  // e3 -> -e1
    j(3, 1) = 1;   // e2 -> e4
    j(1, 3) = -1;  // e4 -> -e2
    j(5, 4) = 1;   // e5 -> e6
    j(4, 5) = -1;  // e6 -> -e5
    return acstk::Acs(j);
}

Matrix e_matrix() {
    Matrix e = Matrix::Zero(6, 6);
    e(2, 0) = 1;   // e1 -> e3
    e(0, 2) = 1;   // e3 -> e1
    e(3, 1) = -1;  // e2 -> -e4
    e(1, 3) = -1;  // e4 -> -e2
    return e;
}

acstk::CurveL te_curve(acstk::Interval domain) {
    return acstk::CurveL(j_a(), {e_matrix()}, domain);
}

double te_closed_form(double t) {
    const double d = 1.0 - t * t;
    return 4.0 * t * t / (d * d);
}

Matrix random_matrix(int rows, int cols, std::mt19937_64& rng, double scale) {
    std::uniform_real_distribution<double> u(-scale, scale);
    Matrix m(rows, cols);
    for (int c = 0; c < cols; ++c)
        for (int r = 0; r < rows; ++r) m(r, c) = u(rng);
    return m;
}

acstk::AntiCommEndo random_anticomm(const acstk::Acs& j0, double norm, std::mt19937_64& rng) {
    const Matrix raw = random_matrix(j0.dim(), j0.dim(), rng);
    const Matrix l = 0.5 * (raw + j0.matrix() * raw * j0.matrix());
    return acstk::AntiCommEndo(l * (norm / acstk::spectral_norm(l)), j0);
}

acstk::LieAlgebra random_two_step(int dim, int gens, std::uint64_t seed, double density) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::bernoulli_distribution keep(density);
    std::vector<acstk::BracketEntry> entries;
    for (int i = 0; i < gens; ++i)
        for (int j = i + 1; j < gens; ++j)
            for (int k = gens; k < dim; ++k)
                if (keep(rng)) entries.push_back({i, j, k, u(rng)});
    return acstk::LieAlgebra("two_step_" + std::to_string(dim), dim, std::move(entries));
}

Vector jacobi_vector(const acstk::LieAlgebra& g, int i, int j, int k) {
    const int n = g.dim();
    const Vector ei = Vector::Unit(n, i), ej = Vector::Unit(n, j), ek = Vector::Unit(n, k);
    return g.bracket(Vector(g.bracket(ei, ej)), ek) + g.bracket(Vector(g.bracket(ej, ek)), ei) +
           g.bracket(Vector(g.bracket(ek, ei)), ej);
}

Matrix fd_jacobian(const Field& f, const Vector& x, double h) {
    const int n = static_cast<int>(x.size());
    Matrix jac(f(x).size(), n);
    for (int l = 0; l < n; ++l) {
        Vector xp = x, xm = x;
        xp(l) += h;
        xm(l) -= h;
        jac.col(l) = (f(xp) - f(xm)) / (2 * h);
    }
    return jac;
}

Vector fd_bracket(const Field& v, const Field& w, const Vector& x, double h) {
    return fd_jacobian(w, x, h) * v(x) - fd_jacobian(v, x, h) * w(x);
}

Vector fd_nijenhuis(const acstk::PatchAcs& p, const Field& x, const Field& y, const Vector& at,
                    double h) {
    auto jmat = [&p](const Vector& pt) {
        return p.matrix_at(std::span<const double>(pt.data(), static_cast<std::size_t>(pt.size())));
    };
    const Field jx = [&](const Vector& pt) -> Vector { return jmat(pt) * x(pt); };
    const Field jy = [&](const Vector& pt) -> Vector { return jmat(pt) * y(pt); };
    const Matrix j = jmat(at);
    return fd_bracket(jx, jy, at, h) - j * fd_bracket(jx, y, at, h) - j * fd_bracket(x, jy, at, h) -
           fd_bracket(x, y, at, h);
}

Field coordinate_field(int dim, int i) {
    return [dim, i](const Vector&) -> Vector { return Vector::Unit(dim, i); };
}

}  // namespace fixtures

namespace fixtures {

acstk::CurveL random_curve(const acstk::Acs& j0, int degree, std::mt19937_64& rng, double total_norm) {
    std::vector<Matrix> coeffs;
    for (int d = 0; d < degree; ++d)
        coeffs.push_back(random_anticomm(j0, total_norm / degree, rng).matrix());
    return acstk::CurveL(j0, std::move(coeffs), {0.0, 1.0});
}

}  // namespace fixtures

namespace fixtures {

using acstk::Expr;

ExprMatrix constant_entries(const Matrix& m) {
    ExprMatrix out(m.rows(), std::vector<Expr>(m.cols()));
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) out[r][c] = Expr::number(m(r, c));
    return out;
}

ExprMatrix multiply(const ExprMatrix& a, const ExprMatrix& b) {
    const std::size_t n = a.size();
    ExprMatrix out(n, std::vector<Expr>(n));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            Expr sum = Expr::number(0.0);
            for (std::size_t l = 0; l < n; ++l) sum = Expr::add(sum, Expr::mul(a[r][l], b[l][c]));
            out[r][c] = acstk::simplify(sum);
        }
    return out;
}

std::vector<acstk::Interval> cube(int n, double lo, double hi) {
    return std::vector<acstk::Interval>(static_cast<std::size_t>(n), acstk::Interval{lo, hi});
}

namespace {

ExprMatrix unipotent(int n, int r, int c, const Expr& f) {
    ExprMatrix u = constant_entries(Matrix::Identity(n, n));
    u[r][c] = f;
    return u;
}

}  // namespace

acstk::PatchAcs twisted_patch(std::uint64_t seed) {
    const int n = 4;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> amp(0.1, 0.4);
    const Expr f = Expr::mul(Expr::number(amp(rng)), Expr::sin(Expr::variable(1)));
    const Expr g = Expr::mul(Expr::number(amp(rng)), Expr::mul(Expr::variable(0), Expr::variable(2)));
    const Expr h = Expr::mul(Expr::number(amp(rng)), Expr::exp(Expr::variable(3)));
    const ExprMatrix a = multiply(multiply(unipotent(n, 0, 2, f), unipotent(n, 1, 3, g)), unipotent(n, 1, 0, h));
    const ExprMatrix a_inv = multiply(multiply(unipotent(n, 1, 0, Expr::neg(h)), unipotent(n, 1, 3, Expr::neg(g))),
                                      unipotent(n, 0, 2, Expr::neg(f)));
    return acstk::PatchAcs(n, multiply(multiply(a, constant_entries(acstk::Acs::standard(n).matrix())), a_inv),
                           cube(n), 4);
}

Expr random_expr(std::mt19937_64& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 10);
    std::uniform_real_distribution<double> mant(0.0, 10.0);
    std::uniform_int_distribution<int> expo(-8, 8);
    std::uniform_int_distribution<int> var(0, 3);
    std::uniform_int_distribution<int> power(-3, 4);
    switch (pick(rng)) {
        case 0: return Expr::number(mant(rng) * std::pow(10.0, expo(rng)));
        case 1: return Expr::variable(var(rng));
        case 2: return Expr::neg(random_expr(rng, depth - 1));
        case 3: return Expr::add(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
        case 4: return Expr::sub(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
        case 5: return Expr::mul(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
        case 6: return Expr::div(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
        case 7: return Expr::pow(random_expr(rng, depth - 1), power(rng));
        case 8: return Expr::sin(random_expr(rng, depth - 1));
        case 9: return Expr::cos(random_expr(rng, depth - 1));
        default: return Expr::exp(random_expr(rng, depth - 1));
    }
}

}  // namespace fixtures
