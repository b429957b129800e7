#pragma once

#include <span>
#include <string>
#include <vector>

#include "acstk/linalg.hpp"

namespace acstk {

/// A nonzero structure constant [e_i, e_j] += c e_k with i < j (0-based).
struct BracketEntry {
    int i;
    int j;
    int k;
    double c;
};

/// Even-dimensional real Lie algebra given by structure constants
/// [e_i, e_j] = sum_k c^k_{ij} e_k. Construction validates antisymmetry
/// (by construction from i<j entries), evenness and the Jacobi identity.
class LieAlgebra {
public:
    static constexpr double kJacobiTolerance = 1e-12;

    /// Entries must have i < j, all indices in [0, dim). Repeated (i, j, k)
    /// entries are rejected.
    LieAlgebra(std::string name, int dim, std::vector<BracketEntry> entries);

    const std::string& name() const { return name_; }
    int dim() const { return dim_; }
    int half_dim() const { return dim_ / 2; }

    /// c^k_{ij}, 0-based, antisymmetric in (i, j).
    double constant(int i, int j, int k) const;

    /// Sparse upper-triangle entries (i < j), sorted by (i, j, k).
    const std::vector<BracketEntry>& entries() const { return entries_; }

    bool is_abelian() const { return entries_.empty(); }

    /// sum_{ij} c^k_{ij} X^i Y^j e_k for real or complex coefficient vectors.
    template <class Scalar>
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> bracket(
        const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& x,
        const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& y) const {
        check_length(x.size());
        check_length(y.size());
        Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out =
            Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(dim_);
        for (const auto& e : entries_)
            out(e.k) += e.c * (x(e.i) * y(e.j) - x(e.j) * y(e.i));
        return out;
    }

    /// Largest |Jacobi sum| over all (i, j, k, s), with the worst quadruple.
    struct JacobiReport {
        double worst = 0.0;
        int i = 0, j = 0, k = 0, s = 0;
    };
    JacobiReport jacobi_defect() const;

private:
    void check_length(Eigen::Index n) const;

    std::string name_;
    int dim_;
    std::vector<BracketEntry> entries_;
    std::vector<double> dense_;  // dense_[(k * dim + i) * dim + j]
};

/// Number of strict pairs i < j for a dimension n.
inline int pair_count(int n) { return n * (n - 1) / 2; }

/// Lexicographic position of the pair (i, j), i < j, among strict pairs.
int pair_index(int n, int i, int j);

/// Invariant complex form of degree 1 (coefficients on e^i) or degree 2
/// (coefficients on e^i ∧ e^j for i < j, lexicographic).
struct InvariantForm {
    int degree;
    CVector coefficients;
};

/// Chevalley–Eilenberg differential on 1-forms: (dα)_{ij} = −α([e_i, e_j]).
InvariantForm ce_d(const LieAlgebra& g, const InvariantForm& alpha);

/// Matrix of ce_d on 1-forms: column i is d(e^i), rows are pairs i<j.
Matrix ce_d_matrix(const LieAlgebra& g);

/// Catalog: "abelian<2m>" (e.g. abelian6), "heis3xR3", "free2step3gen".
LieAlgebra catalog(const std::string& name);
std::vector<std::string> catalog_names();
bool is_catalog_name(const std::string& name);

}  // namespace acstk
