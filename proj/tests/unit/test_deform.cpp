#include <random>

#include "doctest.h"
#include "fixtures.hpp"

#include "acstk/deform.hpp"
#include "acstk/error.hpp"
#include "acstk/nijenhuis.hpp"

using namespace acstk;

namespace {
Matrix m2(double a, double b, double c, double d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}
}  // namespace

TEST_CASE("deform examples") {
    const Acs j0 = Acs::standard(2);
    CHECK(deform(j0, AntiCommEndo(Matrix::Zero(2, 2), j0)).matrix() == j0.matrix());

    // (I+L) J0 (I+L)^{-1} with I+L = diag(4/3, 2/3).
    const Acs j1 = deform(j0, AntiCommEndo(m2(1.0 / 3, 0, 0, -1.0 / 3), j0));
    CHECK((j1.matrix() - m2(0, -2, 0.5, 0)).cwiseAbs().maxCoeff() < 1e-15);

    // I + diag(-1, 1) = diag(0, 2).
    CHECK_THROWS_WITH_AS(deform(j0, AntiCommEndo(m2(-1, 0, 0, 1), j0)),
                         doctest::Contains("smallest singular value"), NumericalError);

    // A datum built for a different base must anti-commute with J0.
    // [[0,4],[1,0]] anti-commutes with [[0,-2],[1/2,0]] but not with J0.
    const Acs other(m2(0, -2, 0.5, 0));
    CHECK_THROWS_AS(deform(j0, AntiCommEndo(m2(0, 4, 1, 0), other)), ValidationError);
}

TEST_CASE("recover_L examples") {
    const Acs j = random_acs(6, 8);
    CHECK(recover_L(j, j).matrix().cwiseAbs().maxCoeff() < 1e-12);

    // J0 J1 = diag(-1/2, -2): (I - J0J1)^{-1}(I + J0J1) = diag(1/3, -1/3).
    const Acs j0 = Acs::standard(2);
    const AntiCommEndo l = recover_L(j0, Acs(m2(0, -2, 0.5, 0)));
    CHECK((l.matrix() - m2(1.0 / 3, 0, 0, -1.0 / 3)).cwiseAbs().maxCoeff() < 1e-15);

    // J_a J_b (e1 + e4) = J_a (e3 - e2) = e4 + e1.
    const Matrix prod = fixtures::j_a().matrix() * fixtures::j_b().matrix();
    const Vector w = Vector::Unit(6, 0) + Vector::Unit(6, 3);
    CHECK((prod * w - w).norm() == 0.0);
    CHECK_THROWS_WITH_AS(recover_L(fixtures::j_a(), fixtures::j_b()), doctest::Contains("outside the chart"),
                         NumericalError);
}

TEST_CASE("recover_L and deform invert each other") {
    std::mt19937_64 rng(2024);
    for (int s = 0; s < 200; ++s) {
        const int dim = 4 + 2 * (s % 3);
        const Acs j0 = random_acs(dim, static_cast<std::uint64_t>(s));
        std::uniform_real_distribution<double> radius(0.01, 0.3);
        const AntiCommEndo l = fixtures::random_anticomm(j0, radius(rng), rng);
        const Acs j1 = deform(j0, l);
        const Matrix back = recover_L(j0, j1).matrix();
        CHECK((back - l.matrix()).norm() <= 1e-9 * l.matrix().norm());

        const Acs near = deform(j0, fixtures::random_anticomm(j0, radius(rng), rng));
        const Acs again = deform(j0, recover_L(j0, near));
        CHECK((again.matrix() - near.matrix()).norm() <= 1e-9 * near.matrix().norm());
    }
}

TEST_CASE("projection onto the anti-commuting subspace") {
    std::mt19937_64 rng(5);
    for (int s = 0; s < 100; ++s) {
        const Acs j0 = random_acs(6, static_cast<std::uint64_t>(s));
        const Matrix raw = fixtures::random_matrix(6, 6, rng);
        const Matrix p = 0.5 * (raw + j0.matrix() * raw * j0.matrix());
        const double scale = std::max(1.0, j0.matrix().squaredNorm());
        CHECK((p * j0.matrix() + j0.matrix() * p).cwiseAbs().maxCoeff() <= 1e-12 * scale);
        CHECK_NOTHROW(AntiCommEndo::project(raw, j0));
    }
}

TEST_CASE("curve_eval along tE") {
    const CurveL c = fixtures::te_curve();
    CHECK(curve_eval(c, 0.0).matrix() == fixtures::j_a().matrix());
    // E anti-commutes with J_a, and (I + tE) is singular only at t = +-1.
    const Matrix e = fixtures::e_matrix();
    CHECK((e * fixtures::j_a().matrix() + fixtures::j_a().matrix() * e).isZero(0.0));
    for (double t : {-0.99, -0.5, 0.3, 0.99}) CHECK_NOTHROW(curve_eval(c, t));
    CHECK_THROWS_AS(curve_eval(c, 1.0), NumericalError);
    CHECK_THROWS_AS(curve_eval(c, -1.0), NumericalError);
}

TEST_CASE("rank_profile on an abelian algebra is identically zero") {
    std::mt19937_64 rng(1);
    const CurveL c = fixtures::random_curve(random_acs(6, 3), 2, rng);
    const RankProfile p = rank_profile(catalog("abelian6"), c, 101);
    CHECK(p.generic_rank == 0);
    CHECK(p.exceptional.empty());
    for (int r : p.ranks) CHECK(r == 0);
}

TEST_CASE("rank_profile of the tE curve drops only at t = 0") {
    const LieAlgebra heis = catalog("heis3xR3");
    const CurveL c = fixtures::te_curve();
    const RankProfile p = rank_profile(heis, c, 1001);
    CHECK(p.grid.size() == 1001);
    CHECK(p.generic_rank == 1);
    REQUIRE(p.exceptional.size() == 1);
    CHECK(p.exceptional[0].lo == 0.0);
    CHECK(p.exceptional[0].hi == 0.0);
    CHECK(p.flagged_count() == 1);
    CHECK(p.ranks[500] == 0);
    CHECK(p.semicontinuity_holds);
    CHECK(p.endpoint_bound == 1);
    CHECK(p.skipped.empty());

    // N_t(e1,e2) = (a^2 - 1) e3 with J_t = a J + b E J, a = (1+t^2)/(1-t^2).
    for (double t : p.grid) {
        const NijTensor n = nijenhuis_invariant(heis, curve_eval(c, t));
        CHECK(std::abs(n(2, 0, 1) - fixtures::te_closed_form(t)) <= 1e-9);
    }
}

TEST_CASE("constant-rank curve t diag(1,-1,0,0,0,0)") {
    Matrix d = Matrix::Zero(6, 6);
    d(0, 0) = 1;
    d(1, 1) = -1;
    const CurveL c(fixtures::j_a(), {d}, {-0.9, 0.9});
    const LieAlgebra heis = catalog("heis3xR3");
    const RankProfile p = rank_profile(heis, c, 201);
    CHECK(p.generic_rank == 0);
    CHECK(p.exceptional.empty());
    for (double t : {-0.5, 0.25, 0.8}) CHECK(nijenhuis_invariant(heis, curve_eval(c, t)).max_abs() < 1e-12);
}

TEST_CASE("rank_profile records singular grid points and rejects tiny grids") {
    const CurveL c = fixtures::te_curve({-1.0, 1.0});
    const RankProfile p = rank_profile(catalog("heis3xR3"), c, 11);
    CHECK(p.skipped == std::vector<double>{-1.0, 1.0});
    CHECK(p.ranks.front() == -1);
    CHECK(p.generic_rank == 1);
    CHECK_THROWS_AS(rank_profile(catalog("heis3xR3"), c, 1), ValidationError);
}

TEST_CASE("rank_profile is independent of the thread count") {
    std::mt19937_64 rng(77);
    const CurveL c = fixtures::random_curve(random_acs(6, 12), 3, rng);
    const RankProfile a = rank_profile(catalog("free2step3gen"), c, 301, {}, 1);
    const RankProfile b = rank_profile(catalog("free2step3gen"), c, 301, {}, 4);
    CHECK(a.ranks == b.ranks);
    CHECK(a.sigma_k == b.sigma_k);
}

TEST_CASE("refine_exceptional localizes the tE dip at t = 0") {
    const CurveL c = fixtures::te_curve();
    const RefineResult r = refine_exceptional(catalog("heis3xR3"), c, 1, {-0.9, 0.9}, 40);
    CHECK_FALSE(r.identically_below);
    REQUIRE(r.dips.size() == 1);
    CHECK(r.dips[0].bracket.lo <= 0.0);
    CHECK(r.dips[0].bracket.hi >= 0.0);
    CHECK(r.dips[0].bracket.width() <= 1.8 * std::ldexp(1.0, -40));
    CHECK(std::abs(r.dips[0].t_min) <= 1e-10);
}

TEST_CASE("refine_exceptional on an abelian algebra reports identically-below") {
    std::mt19937_64 rng(4);
    const CurveL c = fixtures::random_curve(random_acs(6, 1), 1, rng);
    const RefineResult r = refine_exceptional(catalog("abelian6"), c, 1, {0.0, 1.0}, 30);
    CHECK(r.dips.empty());
    CHECK(r.identically_below);
}

TEST_CASE("refine_exceptional finds nothing on a constant-rank-1 curve") {
    std::mt19937_64 rng(31);
    const LieAlgebra heis = catalog("heis3xR3");
    const CurveL c(fixtures::j_b(), {fixtures::random_anticomm(fixtures::j_b(), 0.2, rng).matrix()}, {0.0, 1.0});
    const RefineResult r = refine_exceptional(heis, c, 1, {0.0, 1.0}, 40);
    CHECK(r.dips.empty());
    CHECK_FALSE(r.identically_below);

    // Oracle: a dense scan never sees sigma_1 at or below the threshold.
    const int n = 100000;
    double smallest = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / (n - 1);
        const Vector s = singular_values(mu_bar_matrix(heis, curve_eval(c, t)).g);
        smallest = std::min(smallest, s(0));
    }
    CHECK(smallest > 1e-3);
}

TEST_CASE("refine_exceptional argument checks") {
    const CurveL c = fixtures::te_curve();
    CHECK_THROWS_AS(refine_exceptional(catalog("heis3xR3"), c, 0, {-0.9, 0.9}, 10), ValidationError);
    CHECK_THROWS_AS(refine_exceptional(catalog("heis3xR3"), c, 1, {0.5, 0.5}, 10), ValidationError);
}

TEST_CASE("perturb_to_rank on an abelian algebra always fails") {
    const PerturbResult r = perturb_to_rank(catalog("abelian6"), random_acs(6, 2), 1, 1e-2, 20, 7);
    CHECK_FALSE(r.success);
    CHECK(r.trials_run == 20);
    CHECK(r.best_rank_seen == 0);
    CHECK_FALSE(r.structure.has_value());
}

TEST_CASE("perturb_to_rank finds a rank-1 structure next to J_a") {
    const LieAlgebra heis = catalog("heis3xR3");
    const PerturbResult r = perturb_to_rank(heis, fixtures::j_a(), 1, 1e-3, 10, 42);
    REQUIRE(r.success);
    CHECK(r.distance <= 1e-3);
    CHECK(r.rank >= 1);
    CHECK(complex_rank(heis, *r.structure) >= 1);
    CHECK(c0_distance(fixtures::j_a(), *r.structure) == doctest::Approx(r.distance));
    const Matrix& j = r.structure->matrix();
    CHECK(max_abs(Matrix(j * j + Matrix::Identity(6, 6))) <= 1e-10);
}

TEST_CASE("perturb_to_rank is independent of the thread count") {
    const LieAlgebra f = catalog("free2step3gen");
    const Acs j0 = random_acs(6, 5);
    const PerturbResult a = perturb_to_rank(f, j0, 3, 1e-2, 12, 9, {.threads = 1});
    const PerturbResult b = perturb_to_rank(f, j0, 3, 1e-2, 12, 9, {.threads = 5});
    CHECK(a.success == b.success);
    CHECK(a.trial == b.trial);
    if (a.success) CHECK(a.structure->matrix() == b.structure->matrix());
    CHECK_THROWS_AS(perturb_to_rank(f, j0, 1, 0.0, 1, 0), ValidationError);
    CHECK_THROWS_AS(perturb_to_rank(f, j0, 1, 1e-3, 0, 0), ValidationError);
}

TEST_CASE("rank is lower semicontinuous along random curves on free2step3gen") {
    std::mt19937_64 rng(8);
    const LieAlgebra f = catalog("free2step3gen");
    for (int s = 0; s < 10; ++s) {
        const CurveL c = fixtures::random_curve(random_acs(6, 100 + s), 1 + s % 3, rng);
        const RankProfile p = rank_profile(f, c, 201);
        CHECK(p.semicontinuity_holds);
        CHECK(p.flagged_fraction() <= 0.01);
    }
}
