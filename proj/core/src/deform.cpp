#include "acstk/deform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "acstk/error.hpp"
#include "acstk/nijenhuis.hpp"
#include "acstk/parallel.hpp"

namespace acstk {

namespace {

using LMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

void check_anticommutes(const Acs& j0, const Matrix& l) {
    if (l.rows() != j0.dim() || l.cols() != j0.dim())
        throw ValidationError("deformation datum size does not match the base structure");
    const double norm = max_abs(Matrix(l * j0.matrix() + j0.matrix() * l));
    if (!(norm <= AntiCommEndo::tolerance_for(l, j0.matrix()))) {
        std::ostringstream os;
        os << "L does not anti-commute with J0: ||L J0 + J0 L||_max = " << norm;
        throw ValidationError(os.str());
    }
}

// Wraps a conjugated structure; rounding from an ill-conditioned conjugator
// is removed by sign-function Newton steps before giving up.
Acs conjugated_structure(Matrix j) {
    for (int step = 0; step < 3; ++step) {
        try {
            return Acs(j);
        } catch (const ValidationError& e) {
            if (step == 2) throw NumericalError(std::string("deformed structure lost J^2 = -I: ") + e.what());
            j = 0.5 * (j - Eigen::PartialPivLU<Matrix>(j).inverse());
        }
    }
    throw NumericalError("unreachable");
}

}  // namespace

Acs deform(const Acs& j0, const AntiCommEndo& l) {
    check_anticommutes(j0, l.matrix());
    const int n = j0.dim();
    const Matrix ipl = Matrix::Identity(n, n) + l.matrix();
    const double smin = smallest_singular_value(ipl);
    if (!(smin > kChartTolerance)) {
        std::ostringstream os;
        os << "I + L is near-singular: smallest singular value " << smin;
        throw NumericalError(os.str());
    }
    // J = (I+L) J0 (I+L)^{-1}  <=>  (I+L)^T J^T = ((I+L) J0)^T, solved in extended precision.
    const LMatrix iplx = ipl.cast<long double>();
    const LMatrix lhs = iplx * j0.matrix().cast<long double>();
    const LMatrix j = Eigen::PartialPivLU<LMatrix>(iplx.transpose()).solve(lhs.transpose()).transpose();
    return conjugated_structure(j.cast<double>());
}

AntiCommEndo recover_L(const Acs& j0, const Acs& j1) {
    if (j0.dim() != j1.dim()) throw ValidationError("recover_L: dimension mismatch");
    const int n = j0.dim();
    const LMatrix j0x = j0.matrix().cast<long double>();
    const LMatrix prod = j0x * j1.matrix().cast<long double>();
    const LMatrix minus = LMatrix::Identity(n, n) - prod;
    const double smin = smallest_singular_value(Matrix(minus.cast<double>()));
    if (!(smin > kChartTolerance)) {
        std::ostringstream os;
        os << "I - J0 J1 is singular (smallest singular value " << smin
           << "): J1 lies outside the chart around J0";
        throw NumericalError(os.str());
    }
    LMatrix l = Eigen::PartialPivLU<LMatrix>(minus).solve(LMatrix(LMatrix::Identity(n, n) + prod));
    // Exact in exact arithmetic; remove the rounding component that commutes with J0.
    l = 0.5L * (l + j0x * l * j0x);
    return AntiCommEndo(l.cast<double>(), j0);
}

Acs curve_eval(const CurveL& curve, double t) {
    if (t == 0.0) return curve.base();
    return deform(curve.base(), AntiCommEndo(curve.eval(t), curve.base()));
}

std::size_t RankProfile::flagged_count() const {
    std::size_t c = 0;
    for (int r : ranks)
        if (r >= 0 && r < generic_rank) ++c;
    return c;
}

double RankProfile::flagged_fraction() const {
    return grid.empty() ? 0.0 : static_cast<double>(flagged_count()) / static_cast<double>(grid.size());
}

namespace {

std::vector<double> uniform_grid(Interval iv, int n) {
    std::vector<double> t(n);
    for (int i = 0; i < n; ++i)
        t[i] = (i == n - 1) ? iv.hi : iv.lo + iv.width() * static_cast<double>(i) / (n - 1);
    return t;
}

// Singular values of G at t, or nullopt if the curve leaves the chart.
std::optional<Vector> sigma_at(const LieAlgebra& g, const CurveL& curve, double t) {
    try {
        const Acs jt = curve_eval(curve, t);
        return singular_values(mu_bar_matrix(g, jt).g);
    } catch (const NumericalError&) {
        return std::nullopt;
    }
}

double kth(const Vector& s, int k) { return k <= s.size() ? s(k - 1) : 0.0; }

bool below_threshold(const Vector& s, int k, RankTolerance tol) {
    return numerical_rank(s, tol) < k;
}

}  // namespace

RankProfile rank_profile(const LieAlgebra& g, const CurveL& curve, int grid_n, RankTolerance tol,
                         unsigned threads) {
    if (grid_n < 2) throw ValidationError("rank_profile needs grid_n >= 2");
    if (g.dim() != curve.dim()) throw ValidationError("algebra and curve dimensions differ");

    RankProfile p;
    p.grid = uniform_grid(curve.domain(), grid_n);
    std::vector<std::optional<Vector>> sigma(grid_n);
    parallel_for(static_cast<std::size_t>(grid_n),
                 [&](std::size_t i) { sigma[i] = sigma_at(g, curve, p.grid[i]); }, threads);

    p.ranks.resize(grid_n);
    for (int i = 0; i < grid_n; ++i) {
        if (!sigma[i]) {
            p.ranks[i] = -1;
            p.skipped.push_back(p.grid[i]);
            continue;
        }
        p.ranks[i] = numerical_rank(*sigma[i], tol);
        p.generic_rank = std::max(p.generic_rank, p.ranks[i]);
    }
    p.sigma_index = std::max(p.generic_rank, 1);
    p.sigma_k.resize(grid_n);
    for (int i = 0; i < grid_n; ++i)
        p.sigma_k[i] = sigma[i] ? kth(*sigma[i], p.sigma_index) : std::numeric_limits<double>::quiet_NaN();

    for (int i = 0; i < grid_n;) {
        if (p.ranks[i] < 0 || p.ranks[i] >= p.generic_rank) {
            ++i;
            continue;
        }
        int j = i;
        while (j + 1 < grid_n && p.ranks[j + 1] >= 0 && p.ranks[j + 1] < p.generic_rank) ++j;
        p.exceptional.push_back({p.grid[i], p.grid[j]});
        i = j + 1;
    }

    const int r_lo = std::max(p.ranks.front(), 0);
    const int r_hi = std::max(p.ranks.back(), 0);
    p.endpoint_bound = std::max(r_lo, r_hi);
    for (int r : p.ranks)
        if (r >= 0 && r >= p.generic_rank && r < p.endpoint_bound) p.semicontinuity_holds = false;
    return p;
}

RefineResult refine_exceptional(const LieAlgebra& g, const CurveL& curve, int k, Interval interval,
                                int max_iter, RefineOptions opts) {
    if (k < 1) throw ValidationError("refine_exceptional needs k >= 1");
    if (max_iter < 0) throw ValidationError("refine_exceptional needs max_iter >= 0");
    if (!(interval.lo < interval.hi)) throw ValidationError("refine interval must satisfy lo < hi");
    if (opts.scan_n < 3) throw ValidationError("refine scan needs at least 3 points");

    const auto grid = uniform_grid(interval, opts.scan_n);
    std::vector<std::optional<Vector>> sigma(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) { sigma[i] = sigma_at(g, curve, grid[i]); },
                 opts.threads);

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> f(grid.size(), inf);
    std::vector<bool> below(grid.size(), false);
    bool all_below = true;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!sigma[i]) {
            all_below = false;
            continue;
        }
        f[i] = kth(*sigma[i], k);
        below[i] = below_threshold(*sigma[i], k, opts.tol);
        all_below = all_below && below[i];
    }
    RefineResult result;
    if (all_below) {
        result.identically_below = true;
        return result;
    }

    // Candidate minima: grid local minima of sigma_k; within a flat run keep
    // the first index.
    std::vector<std::size_t> candidates;
    const std::size_t n = grid.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(f[i])) continue;
        const double left = i > 0 ? f[i - 1] : inf;
        const double right = i + 1 < n ? f[i + 1] : inf;
        if (f[i] < left && f[i] <= right) candidates.push_back(i);
    }

    const double target = interval.width() * std::ldexp(1.0, -max_iter);
    std::vector<std::optional<LocalizedDip>> found(candidates.size());
    parallel_for(
        candidates.size(),
        [&](std::size_t c) {
            const std::size_t i = candidates[c];
            double a = grid[i > 0 ? i - 1 : i];
            double b = grid[i + 1 < n ? i + 1 : i];
            auto eval = [&](double t) {
                const auto s = sigma_at(g, curve, t);
                return s ? kth(*s, k) : inf;
            };
            // Golden-section search; the bracket shrinks by 0.618 per step.
            constexpr double inv_phi = 0.6180339887498949;
            double x1 = b - inv_phi * (b - a);
            double x2 = a + inv_phi * (b - a);
            double f1 = eval(x1);
            double f2 = eval(x2);
            double best_t = grid[i];
            double best_f = f[i];
            while (b - a > target) {
                if (f1 <= f2) {
                    b = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = b - inv_phi * (b - a);
                    f1 = eval(x1);
                } else {
                    a = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = a + inv_phi * (b - a);
                    f2 = eval(x2);
                }
                if (x1 == x2 || !(a < b)) break;
            }
            for (auto [t, v] : {std::pair{x1, f1}, std::pair{x2, f2}})
                if (v < best_f) {
                    best_f = v;
                    best_t = t;
                }
            if (!(b - a <= target)) {
                // Floating-point resolution reached; collapse onto the best point.
                a = b = best_t;
            }
            const auto s = sigma_at(g, curve, best_t);
            if (s && below_threshold(*s, k, opts.tol))
                found[c] = LocalizedDip{{a, b}, best_t, best_f};
        },
        opts.threads);

    for (auto& d : found)
        if (d) result.dips.push_back(*d);
    return result;
}

BernsteinResult bernstein_curve(const Acs& j0, const std::vector<CurveSample>& samples, int degree) {
    if (degree < 1) throw ValidationError("Bernstein degree must be >= 1");
    if (samples.size() < 2) throw ValidationError("need samples at t = 0 and t = 1");
    const std::size_t ns = samples.size();
    if (samples.front().t != 0.0 || samples.back().t != 1.0)
        throw ValidationError("samples must include the endpoints t = 0 and t = 1");
    for (std::size_t i = 0; i < ns; ++i) {
        const double expected = static_cast<double>(i) / static_cast<double>(ns - 1);
        if (std::abs(samples[i].t - expected) > 1e-12)
            throw ValidationError("sample times must be uniform in [0, 1]");
        check_anticommutes(j0, samples[i].l);
        const double smin =
            smallest_singular_value(Matrix(Matrix::Identity(j0.dim(), j0.dim()) + samples[i].l));
        if (!(smin > kChartTolerance)) {
            std::ostringstream os;
            os << "I + L is singular at sample t = " << samples[i].t << " (smallest singular value "
               << smin << ")";
            throw NumericalError(os.str());
        }
    }
    if (max_abs(samples.front().l) > 1e-12)
        throw ValidationError("sample at t = 0 must be L = 0");

    // Piecewise-linear interpolant at the Bernstein nodes k / degree.
    auto interpolant = [&](double t) -> Matrix {
        const double pos = t * static_cast<double>(ns - 1);
        const std::size_t seg = std::min(static_cast<std::size_t>(pos), ns - 2);
        const double w = pos - static_cast<double>(seg);
        return (1.0 - w) * samples[seg].l + w * samples[seg + 1].l;
    };
    std::vector<Matrix> control;
    control.reserve(degree + 1);
    for (int k = 0; k <= degree; ++k) {
        if (k == 0) control.push_back(samples.front().l);
        else if (k == degree) control.push_back(samples.back().l);
        else control.push_back(interpolant(static_cast<double>(k) / degree));
    }
    CurveL curve(j0, std::move(control), {0.0, 1.0}, CurveBasis::bernstein);

    double sup = 0.0;
    double c0 = 0.0;
    for (const auto& s : samples) {
        sup = std::max(sup, spectral_norm(curve.eval(s.t) - s.l));
        c0 = std::max(c0, c0_distance(curve_eval(curve, s.t),
                                      deform(j0, AntiCommEndo(s.l, j0))));
    }
    return {std::move(curve), sup, c0};
}

AntiCommEndo random_direction(const Acs& j0, std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    const int n = j0.dim();
    for (;;) {
        Matrix raw(n, n);
        for (int c = 0; c < n; ++c)
            for (int r = 0; r < n; ++r) raw(r, c) = unif(rng);
        const AntiCommEndo proj = AntiCommEndo::project(raw, j0);
        const double norm = spectral_norm(proj.matrix());
        if (norm > 1e-8) return AntiCommEndo(proj.matrix() / norm, j0);
    }
}

PerturbResult perturb_to_rank(const LieAlgebra& g, const Acs& j0, int k, double eps, int trials,
                              std::uint64_t seed, PerturbOptions opts) {
    if (!(eps > 0.0)) throw ValidationError("perturb needs eps > 0");
    if (trials < 1) throw ValidationError("perturb needs trials >= 1");
    if (g.dim() != j0.dim()) throw ValidationError("algebra and structure dimensions differ");

    struct TrialOutcome {
        std::optional<Acs> structure;
        double distance = 0.0;
        double step = 0.0;
        int rank = 0;
        int best_rank = 0;
    };
    auto run_trial = [&](int trial) {
        TrialOutcome out;
        const AntiCommEndo dir = random_direction(j0, seed, static_cast<std::uint64_t>(trial));
        for (int p = 0; p < opts.ladder_steps; ++p) {
            const double t = std::ldexp(eps, -p);
            try {
                Acs jt = deform(j0, AntiCommEndo(t * dir.matrix(), j0));
                const double dist = c0_distance(j0, jt);
                if (dist > eps) continue;
                const int r = complex_rank(g, jt, opts.tol);
                out.best_rank = std::max(out.best_rank, r);
                if (r >= k) {
                    out.structure = std::move(jt);
                    out.distance = dist;
                    out.step = t;
                    out.rank = r;
                    return out;
                }
            } catch (const NumericalError&) {
                continue;
            }
        }
        return out;
    };

    // Blocks of trials run concurrently; the lowest successful index wins so
    // the result matches a sequential scan.
    const unsigned workers = opts.threads ? opts.threads : thread_count();
    PerturbResult result;
    for (int start = 0; start < trials; start += static_cast<int>(workers)) {
        const int count = std::min(static_cast<int>(workers), trials - start);
        std::vector<TrialOutcome> block(count);
        parallel_for(static_cast<std::size_t>(count),
                     [&](std::size_t i) { block[i] = run_trial(start + static_cast<int>(i)); },
                     workers);
        for (int i = 0; i < count; ++i) {
            result.trials_run = start + i + 1;
            result.best_rank_seen = std::max(result.best_rank_seen, block[i].best_rank);
            if (block[i].structure) {
                result.success = true;
                result.structure = std::move(block[i].structure);
                result.distance = block[i].distance;
                result.step = block[i].step;
                result.rank = block[i].rank;
                result.trial = start + i;
                return result;
            }
        }
    }
    return result;
}

}  // namespace acstk
