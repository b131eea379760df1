#include "sewing/moments.hpp"

#include <cmath>

#include "sewing/special_functions.hpp"

namespace sewing {
namespace {

void check_order(int n) {
    if (n < 1) throw InvalidArgument("truncation order must be >= 1");
    if (2 * n > max_coefficient_index) throw RangeError("truncation order exceeds supported range");
}

double smallest_singular_value(const Matrix& a) {
    Eigen::JacobiSVD<Matrix> svd(a);
    const auto& s = svd.singularValues();
    return s.size() ? s(s.size() - 1) : 0.0;
}

Eigen::PartialPivLU<Matrix> factor_checked(const Matrix& a) {
    Eigen::PartialPivLU<Matrix> lu(a);
    if (!(lu.rcond() > 1e-13)) throw NearDegenerateSewing("I - M is numerically singular", smallest_singular_value(a));
    return lu;
}

template <class Rhs>
Rhs solve_refined(const Matrix& a, const Rhs& rhs) {
    const auto lu = factor_checked(a);
    Rhs x = lu.solve(rhs);
    Rhs res = rhs - a * x;
    const double scale = std::max(rhs.norm(), 1e-300);
    if (res.norm() > 1e-15 * scale) {
        x += lu.solve(res);
        res = rhs - a * x;
    }
    if (res.norm() > 1e-12 * scale)
        throw NearDegenerateSewing("solve residual too large", smallest_singular_value(a));
    return x;
}

// Principal integer power of the principal square root: s^n with s = sqrt(x).
std::vector<Complex> half_powers(Complex x, int nmax) {
    const Complex s = std::sqrt(x);
    std::vector<Complex> p(nmax + 1);
    p[0] = 1.0;
    for (int n = 1; n <= nmax; ++n) p[n] = p[n - 1] * s;
    return p;
}

}  // namespace

BlockMomentMatrix::BlockMomentMatrix(Matrix b11, Matrix b12, Matrix b21, Matrix b22)
    : blocks_{std::move(b11), std::move(b12), std::move(b21), std::move(b22)} {
    const auto n = blocks_[0].rows();
    for (const auto& b : blocks_)
        if (b.rows() != n || b.cols() != n) throw InvalidArgument("BlockMomentMatrix blocks must be N x N");
}

Matrix BlockMomentMatrix::flatten() const {
    const int n = order();
    Matrix m(2 * n, 2 * n);
    m.topLeftCorner(n, n) = blocks_[0];
    m.topRightCorner(n, n) = blocks_[1];
    m.bottomLeftCorner(n, n) = blocks_[2];
    m.bottomRightCorner(n, n) = blocks_[3];
    return m;
}

MomentVector::MomentVector(Vector v1, Vector v2) : v_{std::move(v1), std::move(v2)} {
    if (v_[0].size() != v_[1].size()) throw InvalidArgument("MomentVector blocks must have equal length");
}

Vector MomentVector::flatten() const {
    const int n = order();
    Vector v(2 * n);
    v.head(n) = v_[0];
    v.tail(n) = v_[1];
    return v;
}

MomentMatrix a_matrix(const Tau& tau, Complex eps, int N, const SeriesTolerance& tol) {
    check_order(N);
    const auto e = eisenstein_table(2 * N, tau, tol);
    const auto sp = half_powers(eps, 2 * N);
    Matrix a = Matrix::Zero(N, N);
    for (int k = 1; k <= N; ++k)
        for (int l = k; l <= N; l += 2) {
            const double sign = (k % 2 == 1) ? 1.0 : -1.0;
            const Complex c = sign * factorial_ratio(k, l) * e[k + l];
            a(k - 1, l - 1) = sp[k + l] * c / std::sqrt(static_cast<double>(k) * l);
            a(l - 1, k - 1) = a(k - 1, l - 1);
        }
    return MomentMatrix(std::move(a));
}

RhoMoments rho_moments(const Tau& tau, Complex w, Complex rho, int N, const SeriesTolerance& tol) {
    check_order(N);
    const auto e = eisenstein_table(2 * N, tau, tol);
    const auto p = weierstrass_p_all(2 * N, tau, w, tol);
    const auto sp = half_powers(rho, 2 * N);
    Matrix r11(N, N), r12(N, N), r21(N, N), r22(N, N);
    for (int k = 1; k <= N; ++k)
        for (int l = 1; l <= N; ++l) {
            const double fr = factorial_ratio(k, l);
            const double sk = (k % 2 == 1) ? 1.0 : -1.0;
            const double sl = (l % 2 == 1) ? 1.0 : -1.0;
            const Complex pre = -sp[k + l] / std::sqrt(static_cast<double>(k) * l);
            const Complex c = sk * fr * e[k + l];
            r11(k - 1, l - 1) = pre * sk * fr * p[k + l];  // D(k,l,w)
            r22(k - 1, l - 1) = pre * sl * fr * p[k + l];  // D(l,k,w)
            r12(k - 1, l - 1) = pre * c;
            r21(k - 1, l - 1) = pre * c;
        }
    Vector b1(N), b2(N);
    for (int k = 1; k <= N; ++k) {
        const Complex v = sp[k] / std::sqrt(static_cast<double>(k)) * (p[k] - e[k]);
        b1(k - 1) = -v;
        b2(k - 1) = (k % 2 == 0) ? v : -v;
    }
    return {BlockMomentMatrix(r11, r12, r21, r22), MomentVector(b1, b2)};
}

BlockMomentMatrix r_matrix(const Tau& tau, Complex w, Complex rho, int N, const SeriesTolerance& tol) {
    return rho_moments(tau, w, rho, N, tol).r;
}

MomentVector beta_vector(const Tau& tau, Complex w, Complex rho, int N, const SeriesTolerance& tol) {
    return rho_moments(tau, w, rho, N, tol).beta;
}

std::pair<BlockMomentMatrix, MomentVector> sphere_moments(Complex chi, int N) {
    check_order(N);
    if (!(std::abs(chi) < 0.25) || chi == 0.0) throw DomainError("sphere_moments: need 0 < |chi| < 1/4");
    const auto sp = half_powers(-chi, 2 * N);
    Matrix b(N, N);
    for (int k = 1; k <= N; ++k)
        for (int l = 1; l <= N; ++l) {
            const double sk = (k % 2 == 1) ? 1.0 : -1.0;
            b(k - 1, l - 1) = sp[k + l] / std::sqrt(static_cast<double>(k) * l) * sk * factorial_ratio(k, l);
        }
    Vector b1(N), b2(N);
    for (int k = 1; k <= N; ++k) {
        const Complex v = sp[k] / std::sqrt(static_cast<double>(k));
        b1(k - 1) = -v;
        b2(k - 1) = (k % 2 == 0) ? v : -v;
    }
    const Matrix zero = Matrix::Zero(N, N);
    return {BlockMomentMatrix(-b, zero, zero, Matrix(-b.transpose())), MomentVector(b1, b2)};
}

BlockMomentMatrix q_matrix(const MomentMatrix& a1, const MomentMatrix& a2) {
    if (a1.order() != a2.order()) throw InvalidArgument("q_matrix: orders differ");
    const Matrix zero = Matrix::Zero(a1.order(), a1.order());
    return BlockMomentMatrix(zero, -a1.entries(), -a2.entries(), zero);
}

Matrix solve_id_minus(const Matrix& m, const Matrix& rhs) {
    if (m.rows() != m.cols() || rhs.rows() != m.rows()) throw InvalidArgument("solve_id_minus: shape mismatch");
    const Matrix a = Matrix::Identity(m.rows(), m.cols()) - m;
    return solve_refined(a, rhs);
}

Vector solve_id_minus(const Matrix& m, const Vector& rhs) {
    if (m.rows() != m.cols() || rhs.size() != m.rows()) throw InvalidArgument("solve_id_minus: shape mismatch");
    const Matrix a = Matrix::Identity(m.rows(), m.cols()) - m;
    return solve_refined(a, rhs);
}

XBlocks x_blocks(const MomentMatrix& a1, const MomentMatrix& a2) {
    if (a1.order() != a2.order()) throw InvalidArgument("x_blocks: orders differ");
    const Matrix& m1 = a1.entries();
    const Matrix& m2 = a2.entries();
    const Matrix id = Matrix::Identity(m1.rows(), m1.cols());
    const Matrix inv12 = solve_id_minus(Matrix(m1 * m2), id);  // (I - A1 A2)^{-1}
    const Matrix inv21 = solve_id_minus(Matrix(m2 * m1), id);  // (I - A2 A1)^{-1}
    return {m1 * inv21, id - inv12, id - inv21, m2 * inv12};
}

DetResult det_id_minus_matrix(const Matrix& m) {
    if (m.rows() != m.cols()) throw InvalidArgument("det_id_minus: matrix must be square");
    const auto n = m.rows();
    DetResult out;
    out.truncation_order = static_cast<int>(n);
    if (n == 0) {
        out.det = 1.0;
        out.log_det = 0.0;
        out.trace_log = Complex(0.0);
        return out;
    }
    const Matrix a = Matrix::Identity(n, n) - m;
    Eigen::PartialPivLU<Matrix> lu(a);
    const Matrix& f = lu.matrixLU();
    // Sum of logs of the pivots; the imaginary part accumulates arguments
    // without reduction so the winding is kept.
    Complex log_sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) log_sum += std::log(f(i, i));
    if (lu.permutationP().determinant() < 0) log_sum += Complex(0.0, pi);
    out.det = lu.determinant();

    // Trace-log series -sum_n Tr(M^n)/n, used when it converges.
    Matrix pw = m;
    Complex tl = 0.0;
    bool converged = false;
    const double mnorm = m.norm();
    if (mnorm == 0.0) {
        converged = true;
    } else {
        double prev = pw.norm();
        for (int k = 1; k <= 4000; ++k) {
            tl -= pw.trace() / static_cast<double>(k);
            const double nk = pw.norm();
            if (nk / k < 1e-17 * std::max(1.0, std::abs(tl))) {
                converged = true;
                break;
            }
            if (k > 50 && nk > prev * 1.5) break;  // diverging
            prev = nk;
            pw = pw * m;
        }
    }
    if (converged) {
        out.trace_log = tl;
        const double turns = std::round(((tl - log_sum) / two_pi_i).real());
        out.log_det = log_sum + two_pi_i * turns;
        if (std::abs(out.log_det - tl) > 1e-8 * std::max(1.0, std::abs(tl)))
            throw TruncationTooCoarse("log det and trace-log series disagree");
    } else {
        out.log_det = log_sum;
    }
    return out;
}

DetResult det_id_minus_product(const MomentMatrix& a1, const MomentMatrix& a2, std::optional<int> n_eps) {
    if (a1.order() != a2.order()) throw InvalidArgument("det_id_minus_product: orders differ");
    if (!n_eps) {
        auto r = det_id_minus_matrix(a1.entries() * a2.entries());
        r.truncation_order = a1.order();
        return r;
    }
    const int ne = *n_eps;
    if (ne < 2) throw InvalidArgument("det_id_minus_product: series order must be >= 2");
    const int size = 2 * ne - 3;
    if (a1.order() < size) throw InvalidArgument("det_id_minus_product: matrices too small for requested order");
    Matrix t = Matrix::Zero(size, size);
    for (int k = 1; k <= size; ++k)
        for (int l = 1; l <= size; ++l) {
            // m <= N - (k+l)/2, with (k+l)/2 taken as a half-integer bound
            const int mmax = static_cast<int>(std::floor(ne - (k + l) / 2.0));
            Complex s = 0.0;
            for (int m = 1; m <= mmax; ++m) s += a1(k, m) * a2(m, l);
            t(k - 1, l - 1) = s;
        }
    auto r = det_id_minus_matrix(t);
    r.truncation_order = ne;
    return r;
}

DetResult det_id_minus(const BlockMomentMatrix& r) {
    auto d = det_id_minus_matrix(r.flatten());
    d.truncation_order = r.order();
    return d;
}

SelfSewingContractions contract_self_sewing(const BlockMomentMatrix& r, const MomentVector& beta) {
    const int n = r.order();
    if (beta.order() != n) throw InvalidArgument("contract_self_sewing: orders differ");
    const Matrix m = r.flatten();
    Matrix rhs = Matrix::Zero(2 * n, 2);
    rhs(0, 0) = 1.0;
    rhs(n, 1) = 1.0;
    const Matrix x = solve_id_minus(m, rhs);
    const Vector b = beta.flatten();
    // y^T = beta^T (I - R)^{-1}  <=>  (I - R^T) y = beta
    const Vector y = solve_id_minus(Matrix(m.transpose()), b);
    const Vector bbar = beta.swapped().flatten();
    SelfSewingContractions c;
    c.sigma11 = x(0, 0) + x(n, 0) + x(0, 1) + x(n, 1);
    c.sigma_beta = y(0) + y(n);
    c.beta_beta = y.cwiseProduct(bbar).sum();
    return c;
}

}  // namespace sewing
