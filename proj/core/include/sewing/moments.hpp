#pragma once

#include <array>
#include <optional>
#include <utility>

#include <Eigen/Dense>

#include "sewing/types.hpp"

namespace sewing {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Truncation of an infinite matrix indexed by k,l >= 1. Entry (k,l) carries the
// sewing parameter to the power (k+l)/2.
class MomentMatrix {
public:
    MomentMatrix() = default;
    explicit MomentMatrix(Matrix m) : m_(std::move(m)) {
        if (m_.rows() != m_.cols()) throw InvalidArgument("MomentMatrix must be square");
    }

    int order() const { return static_cast<int>(m_.rows()); }
    const Matrix& entries() const { return m_; }
    // 1-based access
    Complex operator()(int k, int l) const { return m_(k - 1, l - 1); }

    // Period outputs built from this truncation are exact through this parameter
    // power; a dropped interior node k > N costs at least power k + 1.
    int complete_param_order() const { return order(); }

private:
    Matrix m_;
};

// 2x2 arrangement of N x N blocks indexed by a,b in {1,2}.
class BlockMomentMatrix {
public:
    BlockMomentMatrix() = default;
    BlockMomentMatrix(Matrix b11, Matrix b12, Matrix b21, Matrix b22);

    int order() const { return static_cast<int>(blocks_[0].rows()); }
    const Matrix& block(int a, int b) const { return blocks_[(a - 1) * 2 + (b - 1)]; }
    // 1-based (a,b) block, (k,l) entry
    Complex operator()(int a, int b, int k, int l) const { return block(a, b)(k - 1, l - 1); }

    // 2N x 2N matrix with flat index (a-1)*N + (k-1).
    Matrix flatten() const;

private:
    std::array<Matrix, 4> blocks_;
};

// Pair of length-N vectors indexed by a in {1,2}.
class MomentVector {
public:
    MomentVector() = default;
    MomentVector(Vector v1, Vector v2);

    int order() const { return static_cast<int>(v_[0].size()); }
    const Vector& block(int a) const { return v_[a - 1]; }
    Complex operator()(int a, int k) const { return v_[a - 1](k - 1); }

    Vector flatten() const;
    // The same vector with the a index swapped.
    MomentVector swapped() const { return MomentVector(v_[1], v_[0]); }

private:
    std::array<Vector, 2> v_;
};

struct DetResult {
    Complex det;
    Complex log_det;
    int truncation_order = 0;
    // Trace-log value when that series converged and was used for reconciliation.
    std::optional<Complex> trace_log;
};

struct XBlocks {
    Matrix x11, x12, x21, x22;
};

// A(k,l) = eps^{(k+l)/2}/sqrt(kl) C(k,l,tau)
MomentMatrix a_matrix(const Tau& tau, Complex eps, int N, const SeriesTolerance& tol = {});

struct RhoMoments {
    BlockMomentMatrix r;
    MomentVector beta;
};

// R and beta of the self-sewn torus, sharing one evaluation of P_k(tau, w).
RhoMoments rho_moments(const Tau& tau, Complex w, Complex rho, int N, const SeriesTolerance& tol = {});
BlockMomentMatrix r_matrix(const Tau& tau, Complex w, Complex rho, int N, const SeriesTolerance& tol = {});
MomentVector beta_vector(const Tau& tau, Complex w, Complex rho, int N, const SeriesTolerance& tol = {});

// Genus-zero self-sewing data for chi = -rho/w^2.
std::pair<BlockMomentMatrix, MomentVector> sphere_moments(Complex chi, int N);

// Q = [[0, -A1], [-A2, 0]]
BlockMomentMatrix q_matrix(const MomentMatrix& a1, const MomentMatrix& a2);

XBlocks x_blocks(const MomentMatrix& a1, const MomentMatrix& a2);

// (I - M)^{-1} rhs by a dense LU solve.
Matrix solve_id_minus(const Matrix& m, const Matrix& rhs);
Vector solve_id_minus(const Matrix& m, const Vector& rhs);

// det(I - M) with a reconciled logarithm.
DetResult det_id_minus_matrix(const Matrix& m);

// det(I - A1 A2). Without n_eps the full product of the given truncations is
// used; with n_eps the index-dependent truncation
//   T(k,l) = sum_{m <= n_eps - (k+l)/2} A1(k,m) A2(m,l)
// is built, which needs matrices of order >= 2 n_eps - 3.
DetResult det_id_minus_product(const MomentMatrix& a1, const MomentMatrix& a2, std::optional<int> n_eps = {});

DetResult det_id_minus(const BlockMomentMatrix& r);

// Contractions entering the self-sewing period formulas.
struct SelfSewingContractions {
    Complex sigma11;     // sum of the (k,l)=(1,1) block of (I-R)^{-1}
    Complex sigma_beta;  // sum over a of [beta (I-R)^{-1}]_{(a,1)}
    Complex beta_beta;   // beta (I-R)^{-1} beta_bar^T
};
SelfSewingContractions contract_self_sewing(const BlockMomentMatrix& r, const MomentVector& beta);

}  // namespace sewing
