#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "acstk/acs.hpp"
#include "acstk/algebra.hpp"
#include "acstk/curve.hpp"
#include "acstk/linalg.hpp"

namespace acstk {

/// Smallest admissible singular value of I + L (deform) and I - J0 J1
/// (recover_L).
inline constexpr double kChartTolerance = 1e-10;

/// (I + L) J0 (I + L)^{-1}.
Acs deform(const Acs& j0, const AntiCommEndo& l);

/// (I - J0 J1)^{-1} (I + J0 J1): the datum with deform(J0, L) = J1.
/// Throws NumericalError when J0 J1 has eigenvalue 1 (J1 is outside the
/// chart around J0).
AntiCommEndo recover_L(const Acs& j0, const Acs& j1);

/// deform(J0, L(t)); exactly J0 at t = 0.
Acs curve_eval(const CurveL& curve, double t);

/// Complex rank along a uniform grid of the curve's domain.
struct RankProfile {
    std::vector<double> grid;
    std::vector<int> ranks;        // -1 where the point was skipped
    std::vector<double> sigma_k;   // k-th singular value of G, k = max(generic_rank, 1)
    int sigma_index = 1;           // the k used for sigma_k (1-based)
    int generic_rank = 0;
    std::vector<Interval> exceptional;  // maximal runs of grid points with rank < generic_rank
    std::vector<double> skipped;        // grid points where I + L(t) was singular
    int endpoint_bound = 0;             // max(rank(t_lo), rank(t_hi))
    bool semicontinuity_holds = true;   // rank >= endpoint_bound off the flagged points

    std::size_t flagged_count() const;
    double flagged_fraction() const;
};

RankProfile rank_profile(const LieAlgebra& g, const CurveL& curve, int grid_n,
                         RankTolerance tol = {}, unsigned threads = 0);

/// A localized dip of sigma_k.
struct LocalizedDip {
    Interval bracket;
    double t_min;
    double sigma_min;
};

struct RefineResult {
    std::vector<LocalizedDip> dips;
    /// sigma_k is at or below the rank threshold at every scan point.
    bool identically_below = false;
};

struct RefineOptions {
    int scan_n = 1001;
    RankTolerance tol{};
    unsigned threads = 0;
};

/// Localizes the parameters in `interval` where sigma_k(t) drops below the
/// rank threshold: scan, then golden-section minimization of sigma_k around
/// each grid local minimum until the bracket is at most
/// interval.width() * 2^{-max_iter}. Minima that stay above the threshold
/// are discarded.
RefineResult refine_exceptional(const LieAlgebra& g, const CurveL& curve, int k,
                                Interval interval, int max_iter, RefineOptions opts = {});

struct CurveSample {
    double t;
    Matrix l;
};

struct BernsteinResult {
    CurveL curve;
    double sup_error;  // max_i ||B(t_i) - L_i||_2
    double c0_error;   // max_i c0_distance(curve_eval(B, t_i), deform(J0, L_i))
};

/// Bernstein polynomial of the piecewise-linear interpolant of samples
/// taken at uniform t_i in [0, 1] (t_0 = 0, t_last = 1, L(0) = 0).
BernsteinResult bernstein_curve(const Acs& j0, const std::vector<CurveSample>& samples,
                                int degree);

struct PerturbOptions {
    RankTolerance tol{};
    unsigned threads = 0;
    int ladder_steps = 11;  // t = eps * 2^{-p}, p = 0..ladder_steps-1
};

struct PerturbResult {
    bool success = false;
    std::optional<Acs> structure;
    double distance = 0.0;
    double step = 0.0;
    int rank = 0;
    int trial = -1;       // 0-based index of the winning trial
    int trials_run = 0;
    int best_rank_seen = 0;
};

/// Random search for a structure of complex rank >= k within C0 distance
/// eps of J0 along directions t L, L random anti-commuting of unit norm.
/// Deterministic in seed and independent of the thread count.
PerturbResult perturb_to_rank(const LieAlgebra& g, const Acs& j0, int k, double eps, int trials,
                              std::uint64_t seed, PerturbOptions opts = {});

/// Unit-spectral-norm random endomorphism anti-commuting with j0, seeded by
/// (seed, stream).
AntiCommEndo random_direction(const Acs& j0, std::uint64_t seed, std::uint64_t stream);

}  // namespace acstk
