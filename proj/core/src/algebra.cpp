#include "acstk/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

#include "acstk/error.hpp"

namespace acstk {

LieAlgebra::LieAlgebra(std::string name, int dim, std::vector<BracketEntry> entries)
    : name_(std::move(name)), dim_(dim) {
    if (dim < 2 || dim % 2 != 0)
        throw ValidationError("algebra dimension must be even and >= 2, got " +
                              std::to_string(dim));
    dense_.assign(static_cast<std::size_t>(dim) * dim * dim, 0.0);
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
    });
    for (const auto& e : entries) {
        auto bad = [&](const std::string& why) {
            std::ostringstream os;
            os << "bracket entry (i=" << e.i + 1 << ", j=" << e.j + 1 << ", k=" << e.k + 1
               << "): " << why;
            throw ValidationError(os.str());
        };
        if (e.i < 0 || e.j < 0 || e.k < 0 || e.i >= dim || e.j >= dim || e.k >= dim)
            bad("index out of range 1.." + std::to_string(dim));
        if (e.i >= e.j) bad("requires i < j");
        if (!std::isfinite(e.c)) bad("non-finite constant");
        auto& slot = dense_[(static_cast<std::size_t>(e.k) * dim + e.i) * dim + e.j];
        if (slot != 0.0) bad("duplicate entry");
        if (e.c == 0.0) continue;
        slot = e.c;
        dense_[(static_cast<std::size_t>(e.k) * dim + e.j) * dim + e.i] = -e.c;
        entries_.push_back(e);
    }

    const auto report = jacobi_defect();
    if (report.worst > kJacobiTolerance) {
        std::ostringstream os;
        os << "Jacobi identity violated: |J(e" << report.i + 1 << ", e" << report.j + 1 << ", e"
           << report.k + 1 << ")^" << report.s + 1 << "| = " << report.worst;
        throw ValidationError(os.str());
    }
}

double LieAlgebra::constant(int i, int j, int k) const {
    return dense_[(static_cast<std::size_t>(k) * dim_ + i) * dim_ + j];
}

void LieAlgebra::check_length(Eigen::Index n) const {
    if (n != dim_)
        throw ValidationError("vector length " + std::to_string(n) +
                              " does not match algebra dimension " + std::to_string(dim_));
}

LieAlgebra::JacobiReport LieAlgebra::jacobi_defect() const {
    // The Jacobi sum is alternating in (i, j, k); strict triples suffice.
    JacobiReport r;
    const int n = dim_;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                for (int s = 0; s < n; ++s) {
                    double sum = 0.0;
                    for (int l = 0; l < n; ++l)
                        sum += constant(i, j, l) * constant(l, k, s) +
                               constant(j, k, l) * constant(l, i, s) +
                               constant(k, i, l) * constant(l, j, s);
                    if (std::abs(sum) > r.worst) r = {std::abs(sum), i, j, k, s};
                }
    return r;
}

int pair_index(int n, int i, int j) {
    // Pairs (0,1..n-1), (1,2..n-1), ...
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

InvariantForm ce_d(const LieAlgebra& g, const InvariantForm& alpha) {
    if (alpha.degree != 1)
        throw ValidationError("ce_d is defined here on 1-forms only, got degree " +
                              std::to_string(alpha.degree));
    if (alpha.coefficients.size() != g.dim())
        throw ValidationError("1-form length does not match algebra dimension");
    const int n = g.dim();
    CVector out = CVector::Zero(pair_count(n));
    for (const auto& e : g.entries()) out(pair_index(n, e.i, e.j)) -= e.c * alpha.coefficients(e.k);
    return {2, std::move(out)};
}

Matrix ce_d_matrix(const LieAlgebra& g) {
    const int n = g.dim();
    Matrix d = Matrix::Zero(pair_count(n), n);
    for (const auto& e : g.entries()) d(pair_index(n, e.i, e.j), e.k) -= e.c;
    return d;
}

namespace {

std::vector<BracketEntry> one_based(std::initializer_list<std::tuple<int, int, int, double>> list) {
    std::vector<BracketEntry> out;
    for (auto [i, j, k, c] : list) out.push_back({i - 1, j - 1, k - 1, c});
    return out;
}

}  // namespace

LieAlgebra catalog(const std::string& name) {
    if (name.rfind("abelian", 0) == 0 && name.size() > 7) {
        const std::string digits = name.substr(7);
        if (std::all_of(digits.begin(), digits.end(), [](char ch) { return ch >= '0' && ch <= '9'; }) &&
            digits.size() <= 4) {
            const int dim = std::stoi(digits);
            if (dim >= 2 && dim % 2 == 0) return LieAlgebra(name, dim, {});
        }
    }
    if (name == "heis3xR3") return LieAlgebra(name, 6, one_based({{1, 2, 3, 1.0}}));
    if (name == "free2step3gen")
        return LieAlgebra(name, 6, one_based({{1, 2, 4, 1.0}, {1, 3, 5, 1.0}, {2, 3, 6, 1.0}}));
    throw ValidationError("unknown catalog algebra '" + name + "' (known: abelian<2m>, heis3xR3, free2step3gen)");
}

std::vector<std::string> catalog_names() { return {"abelian2m", "heis3xR3", "free2step3gen"}; }

bool is_catalog_name(const std::string& name) {
    try {
        catalog(name);
        return true;
    } catch (const ValidationError&) {
        return false;
    }
}

}  // namespace acstk
