#include <functional>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"

#include "acstk/curve.hpp"
#include "acstk/deform.hpp"
#include "acstk/error.hpp"

using namespace acstk;

namespace {

std::vector<CurveSample> sampled(int count, const std::function<Matrix(double)>& f) {
    std::vector<CurveSample> out;
    for (int i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / (count - 1);
        out.push_back({t, f(t)});
    }
    return out;
}

}  // namespace

TEST_CASE("basis names") {
    CHECK(to_string(CurveBasis::monomial) == "monomial");
    CHECK(to_string(CurveBasis::bernstein) == "bernstein");
    CHECK(curve_basis_from_string("bernstein") == CurveBasis::bernstein);
    CHECK_THROWS_AS(curve_basis_from_string("chebyshev"), ValidationError);
}

TEST_CASE("monomial evaluation") {
    const Matrix e = fixtures::e_matrix();
    const CurveL c(fixtures::j_a(), {e, 2.0 * e}, {-1.0, 1.0});
    CHECK(c.degree() == 2);
    CHECK(c.eval(0.0).isZero(0.0));
    CHECK((c.eval(0.5) - (0.5 + 2.0 * 0.25) * e).norm() < 1e-15);
    CHECK((c.eval(-2.0) - (-2.0 + 8.0) * e).norm() < 1e-14);
}

TEST_CASE("Bernstein evaluation and conversion agree at low degree") {
    std::mt19937_64 rng(3);
    const Acs j0 = random_acs(4, 6);
    for (int degree = 1; degree <= 6; ++degree) {
        std::vector<Matrix> ctrl{Matrix::Zero(4, 4)};
        for (int k = 1; k <= degree; ++k) ctrl.push_back(fixtures::random_anticomm(j0, 0.2, rng).matrix());
        const CurveL b(j0, ctrl, {0.0, 1.0}, CurveBasis::bernstein);
        CHECK(b.degree() == degree);
        const CurveL m = b.to_monomial();
        CHECK(m.basis() == CurveBasis::monomial);
        CHECK(b.eval(0.0) == ctrl.front());
        CHECK(b.eval(1.0) == ctrl.back());
        for (int i = 0; i <= 20; ++i) {
            const double t = i / 20.0;
            CHECK((b.eval(t) - m.eval(t)).norm() <= 1e-12);
        }
    }
}

TEST_CASE("Bernstein curves on a shifted domain") {
    const Matrix e = fixtures::e_matrix();
    // Control points -e, e on [-2, 2] give L(t) = t/2 * e, so L(0) = 0.
    const CurveL b(fixtures::j_a(), {Matrix(-e), e}, {-2.0, 2.0}, CurveBasis::bernstein);
    CHECK((b.eval(1.0) - 0.5 * e).norm() < 1e-15);
    CHECK((b.to_monomial().coeffs().front() - 0.5 * e).norm() < 1e-15);
}

TEST_CASE("curve validation") {
    const Acs ja = fixtures::j_a();
    const Matrix e = fixtures::e_matrix();
    CHECK_THROWS_AS(CurveL(ja, {}, {0.0, 1.0}), ValidationError);
    CHECK_THROWS_AS(CurveL(ja, {e}, {1.0, 0.0}), ValidationError);
    CHECK_THROWS_AS(CurveL(ja, {e}, {0.0, std::numeric_limits<double>::infinity()}), ValidationError);
    CHECK_THROWS_AS(CurveL(ja, {Matrix::Identity(6, 6)}, {0.0, 1.0}), ValidationError);
    CHECK_THROWS_AS(CurveL(ja, {Matrix::Zero(4, 4)}, {0.0, 1.0}), ValidationError);
    // Bernstein curves must start at L = 0.
    CHECK_THROWS_AS(CurveL(ja, {e, e}, {0.0, 1.0}, CurveBasis::bernstein), ValidationError);
}

TEST_CASE("bernstein_curve reproduces zero samples") {
    const Acs j0 = random_acs(6, 2);
    const auto samples = sampled(11, [](double) { return Matrix::Zero(6, 6); });
    for (int degree : {1, 3, 10}) {
        const BernsteinResult r = bernstein_curve(j0, samples, degree);
        CHECK(r.sup_error == 0.0);
        for (double t : {0.0, 0.37, 1.0}) CHECK(r.curve.eval(t).isZero(0.0));
    }
}

TEST_CASE("bernstein_curve reproduces linear samples") {
    std::mt19937_64 rng(12);
    const Acs j0 = random_acs(6, 4);
    const Matrix l1 = fixtures::random_anticomm(j0, 0.5, rng).matrix();
    const auto samples = sampled(21, [&](double t) { return Matrix(t * l1); });
    for (int degree : {1, 2, 5, 17}) {
        const BernsteinResult r = bernstein_curve(j0, samples, degree);
        CHECK(r.sup_error <= 1e-14);
        CHECK(r.c0_error <= 1e-12);
        CHECK(r.curve.eval(0.0).isZero(0.0));
        CHECK(r.curve.eval(1.0) == samples.back().l);
        for (int i = 0; i <= 50; ++i) {
            const double t = i / 50.0;
            CHECK((r.curve.eval(t) - t * l1).norm() <= 1e-14);
        }
    }
}

TEST_CASE("bernstein_curve converges on a corner curve") {
    std::mt19937_64 rng(9);
    const Acs j0 = random_acs(6, 10);
    const Matrix l1 = fixtures::random_anticomm(j0, 0.5, rng).matrix();
    const auto samples = sampled(101, [&](double t) { return Matrix(std::min(t, 1.0 - t) * l1); });
    const BernsteinResult low = bernstein_curve(j0, samples, 10);
    const BernsteinResult high = bernstein_curve(j0, samples, 40);
    CHECK(high.sup_error < low.sup_error);
    CHECK(high.c0_error < low.c0_error);
    // Oracle: direct evaluation of the returned curve at the samples.
    double direct = 0.0;
    for (const auto& s : samples)
        direct = std::max(direct, spectral_norm(Matrix(high.curve.eval(s.t) - s.l)));
    CHECK(direct == doctest::Approx(high.sup_error).epsilon(1e-12));
    CHECK(high.curve.eval(1.0) == samples.back().l);
}

TEST_CASE("bernstein_curve rejects malformed sample sets") {
    const Acs j0 = fixtures::j_a();
    const Matrix e = fixtures::e_matrix();
    auto ok = sampled(5, [&](double t) { return Matrix(0.5 * t * e); });

    auto missing = ok;
    missing.pop_back();
    missing.back().t = 0.8;  // still uniform, but t = 1 absent
    CHECK_THROWS_AS(bernstein_curve(j0, missing, 3), ValidationError);

    auto nonuniform = ok;
    nonuniform[1].t = 0.3;
    CHECK_THROWS_AS(bernstein_curve(j0, nonuniform, 3), ValidationError);

    auto nonzero = ok;
    nonzero[0].l = 0.1 * e;
    CHECK_THROWS_AS(bernstein_curve(j0, nonzero, 3), ValidationError);

    auto singular = sampled(5, [&](double t) { return Matrix(t * e); });  // I + E singular
    CHECK_THROWS_AS(bernstein_curve(j0, singular, 3), NumericalError);

    CHECK_THROWS_AS(bernstein_curve(j0, ok, 0), ValidationError);
}
