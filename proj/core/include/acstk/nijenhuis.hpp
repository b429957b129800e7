#pragma once

#include <vector>

#include "acstk/acs.hpp"
#include "acstk/algebra.hpp"
#include "acstk/linalg.hpp"

namespace acstk {

/// Components N^k_{ij} = (N(e_i, e_j))^k of a Nijenhuis tensor at a point.
class NijTensor {
public:
    explicit NijTensor(int dim) : dim_(dim), data_(static_cast<std::size_t>(dim) * dim * dim, 0.0) {}

    int dim() const { return dim_; }
    double& operator()(int k, int i, int j) { return data_[index(k, i, j)]; }
    double operator()(int k, int i, int j) const { return data_[index(k, i, j)]; }

    /// N(X, Y) by bilinear extension (real or complex arguments).
    template <class Scalar>
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> apply(
        const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& x,
        const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& y) const {
        Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out =
            Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(dim_);
        for (int i = 0; i < dim_; ++i)
            for (int j = i + 1; j < dim_; ++j) {
                const Scalar w = x(i) * y(j) - x(j) * y(i);
                for (int k = 0; k < dim_; ++k) out(k) += (*this)(k, i, j) * w;
            }
        return out;
    }

    double max_abs() const;

private:
    std::size_t index(int k, int i, int j) const {
        return (static_cast<std::size_t>(k) * dim_ + i) * dim_ + j;
    }
    int dim_;
    std::vector<double> data_;
};

/// N(X,Y) = [JX,JY] - J[JX,Y] - J[X,JY] - [X,Y] on all basis pairs.
NijTensor nijenhuis_invariant(const LieAlgebra& g, const Acs& j);

/// Matrix of mu-bar in the adapted coframe: rows j = 1..m, columns the
/// strict pairs k < l in lexicographic order.
struct MuBarMatrix {
    CMatrix g;
    AdaptedFrame frame;
};

/// G^j_{kl} = -omega^j([conj v_k, conj v_l]).
MuBarMatrix mu_bar_matrix(const LieAlgebra& g, const Acs& j);

/// M^j_{kl} = omega^j(N(conj v_k, conj v_l)); equals 4 G for the same frame.
CMatrix nijenhuis_frame_matrix(const NijTensor& n, const AdaptedFrame& frame);

struct RankResult {
    int rank = 0;
    Vector singular_values;
};

RankResult complex_rank_detail(const LieAlgebra& g, const Acs& j, RankTolerance tol = {});

/// Numerical rank of the mu-bar matrix G.
int complex_rank(const LieAlgebra& g, const Acs& j, RankTolerance tol = {});

/// Largest possible complex rank in real dimension 2m: 1 if 2m = 4, else m
/// (0 for 2m = 2).
int max_complex_rank(int dim);

}  // namespace acstk
