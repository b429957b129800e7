#include "acstk/acs.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "acstk/error.hpp"

namespace acstk {

namespace {

constexpr double kFrameIndependence = 1e-8;

void check_square_even(const Matrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() < 2 || m.rows() % 2 != 0) {
        std::ostringstream os;
        os << what << " must be square with even side >= 2, got " << m.rows() << "x" << m.cols();
        throw ValidationError(os.str());
    }
}

}  // namespace

Acs::Acs(Matrix j) : j_(std::move(j)) {
    check_square_even(j_, "almost complex structure");
    const Matrix defect = j_ * j_ + Matrix::Identity(j_.rows(), j_.cols());
    const double norm = max_abs(defect);
    if (!(norm <= kTolerance)) {
        std::ostringstream os;
        os << "J^2 + I is not zero: ||J^2 + I||_max = " << norm;
        throw ValidationError(os.str());
    }
}

Acs Acs::standard(int dim) {
    if (dim < 2 || dim % 2 != 0)
        throw ValidationError("dimension must be even and >= 2, got " + std::to_string(dim));
    Matrix j = Matrix::Zero(dim, dim);
    for (int a = 0; a < dim; a += 2) {
        j(a + 1, a) = 1.0;
        j(a, a + 1) = -1.0;
    }
    return Acs(std::move(j));
}

AntiCommEndo::AntiCommEndo(Matrix l, Acs base) : l_(std::move(l)), base_(std::move(base)) {
    if (l_.rows() != base_.dim() || l_.cols() != base_.dim())
        throw ValidationError("endomorphism size does not match its base structure");
    const Matrix& j0 = base_.matrix();
    const double norm = max_abs(Matrix(l_ * j0 + j0 * l_));
    if (!(norm <= tolerance_for(l_, j0))) {
        std::ostringstream os;
        os << "L does not anti-commute with J0: ||L J0 + J0 L||_max = " << norm;
        throw ValidationError(os.str());
    }
}

double AntiCommEndo::tolerance_for(const Matrix& l, const Matrix& j0) {
    return kTolerance * std::max(1.0, max_abs(l) * max_abs(j0));
}

AntiCommEndo AntiCommEndo::project(const Matrix& l, const Acs& base) {
    using LMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    const LMatrix j0 = base.matrix().cast<long double>();
    const LMatrix ll = l.cast<long double>();
    const LMatrix p = 0.5L * (ll + j0 * ll * j0);
    return AntiCommEndo(p.cast<double>(), base);
}

Acs random_acs(int dim, std::uint64_t seed, bool flip_orientation) {
    Matrix base = Acs::standard(dim).matrix();
    if (flip_orientation) {
        base(1, 0) = -1.0;
        base(0, 1) = 1.0;
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int attempt = 0; attempt < 100; ++attempt) {
        Matrix a(dim, dim);
        for (int c = 0; c < dim; ++c)
            for (int r = 0; r < dim; ++r) a(r, c) = unif(rng);
        const Vector s = singular_values(a);
        if (s(dim - 1) <= 0.0 || s(0) / s(dim - 1) > 1e6) continue;
        Matrix j = a * base * Eigen::PartialPivLU<Matrix>(a).inverse();
        // Newton step for the matrix sign function (eigenvalues +-i): pulls
        // J^2 back to -I after the rounding of an ill-conditioned conjugation.
        for (int step = 0; step < 2; ++step)
            j = 0.5 * (j - Eigen::PartialPivLU<Matrix>(j).inverse());
        // Large ||J|| leaves a rounding floor in J^2 + I above the tolerance;
        // such draws are resampled.
        if (max_abs(Matrix(j * j + Matrix::Identity(dim, dim))) > Acs::kTolerance) continue;
        return Acs(std::move(j));
    }
    throw NumericalError("degenerate sampler: no well-conditioned conjugator in 100 attempts");
}

AdaptedFrame adapted_frame(const Acs& acs) {
    const int n = acs.dim();
    const int m = acs.half_dim();
    const Matrix& j = acs.matrix();

    AdaptedFrame f;
    f.u.resize(n, m);
    Matrix basis(n, 0);
    for (int i = 0; i < n && static_cast<int>(f.legs.size()) < m; ++i) {
        Matrix trial(n, basis.cols() + 2);
        trial << basis, Vector::Unit(n, i), j.col(i);
        if (smallest_singular_value(trial) > kFrameIndependence) {
            f.u.col(static_cast<Eigen::Index>(f.legs.size())) = Vector::Unit(n, i);
            f.legs.push_back(i);
            basis = std::move(trial);
        }
    }
    if (static_cast<int>(f.legs.size()) != m)
        throw NumericalError("adapted frame incomplete: found " + std::to_string(f.legs.size()) +
                             " of " + std::to_string(m) + " legs");

    const std::complex<double> I(0.0, 1.0);
    f.v = f.u.cast<std::complex<double>>() - I * (j * f.u).cast<std::complex<double>>();
    CMatrix full(n, n);
    full << f.v, f.v.conjugate();
    Eigen::PartialPivLU<CMatrix> lu(full);
    f.omega = lu.inverse().topRows(m);
    return f;
}

CMatrix psi_from_L(const AntiCommEndo& l) {
    const std::complex<double> I(0.0, 1.0);
    const CMatrix lc = l.matrix().cast<std::complex<double>>();
    const CMatrix jl = (l.base().matrix() * l.matrix()).cast<std::complex<double>>();
    return 0.5 * (lc - I * jl);
}

double c0_distance(const Acs& j0, const Acs& j1) {
    if (j0.dim() != j1.dim())
        throw ValidationError("c0_distance: dimension mismatch " + std::to_string(j0.dim()) +
                              " vs " + std::to_string(j1.dim()));
    return spectral_norm(j0.matrix() - j1.matrix());
}

}  // namespace acstk
