#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>

#include "acstk/acs.hpp"
#include "acstk/algebra.hpp"
#include "acstk/curve.hpp"
#include "acstk/patch.hpp"

namespace fixtures {

using acstk::Matrix;
using acstk::Vector;

/// Je1=e2, Je3=e4, Je5=e6 (the standard structure in dim 6).
acstk::Acs j_a();
/// Je1=e3, Je2=e4, Je5=e6.
acstk::Acs j_b();
/// e1<->e3, e2->-e4, e4->-e2; anti-commutes with j_a.
Matrix e_matrix();
/// L(t) = tE through j_a on the given domain.
acstk::CurveL te_curve(acstk::Interval domain = {-0.9, 0.9});
/// Closed form of the e3-coefficient of N_t(e1, e2) on the tE curve.
double te_closed_form(double t);

Matrix random_matrix(int rows, int cols, std::mt19937_64& rng, double scale = 1.0);

/// Random anti-commuting L with spectral norm exactly `norm`.
acstk::AntiCommEndo random_anticomm(const acstk::Acs& j0, double norm, std::mt19937_64& rng);

/// Two-step nilpotent algebra: generators e_1..e_gens, brackets of
/// generators land in the remaining (central) directions with random
/// constants. Jacobi holds identically.
acstk::LieAlgebra random_two_step(int dim, int gens, std::uint64_t seed, double density = 0.5);

/// Jacobi vector [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j] from
/// brackets of basis vectors (independent of the constructor's check).
Vector jacobi_vector(const acstk::LieAlgebra& g, int i, int j, int k);

/// Central finite-difference Jacobian of a vector field.
using Field = std::function<Vector(const Vector&)>;
Matrix fd_jacobian(const Field& f, const Vector& x, double h);

/// [V, W](x) = DW V - DV W with finite-difference derivatives.
Vector fd_bracket(const Field& v, const Field& w, const Vector& x, double h);

/// N(X, Y)(x) for vector fields on a patch, evaluated entirely with finite
/// differences of the numeric fields (no symbolic derivative, no coordinate
/// expansion).
Vector fd_nijenhuis(const acstk::PatchAcs& p, const Field& x, const Field& y, const Vector& at,
                    double h);

/// Constant coordinate field d/dx_i.
Field coordinate_field(int dim, int i);

}  // namespace fixtures

namespace fixtures {

/// Random monomial curve of the given degree on [0, 1] with
/// sum_j ||L_j||_2 = total_norm < 1, so I + L(t) stays invertible.
acstk::CurveL random_curve(const acstk::Acs& j0, int degree, std::mt19937_64& rng,
                           double total_norm = 0.9);

}  // namespace fixtures

namespace fixtures {

using ExprMatrix = std::vector<std::vector<acstk::Expr>>;

ExprMatrix constant_entries(const Matrix& m);
ExprMatrix multiply(const ExprMatrix& a, const ExprMatrix& b);

/// Box [lo, hi]^n.
std::vector<acstk::Interval> cube(int n, double lo = -1.0, double hi = 1.0);

/// Nonconstant dim-4 patch J(x) = A(x) J_std A(x)^{-1}, A a product of three
/// unipotent factors I + f E_rc whose amplitudes are drawn from the seed.
/// J^2 = -I holds identically.
acstk::PatchAcs twisted_patch(std::uint64_t seed);

/// Random expression tree over the full grammar (literals across several
/// decades, variables x1..x4, every operator and function).
acstk::Expr random_expr(std::mt19937_64& rng, int depth);

}  // namespace fixtures
