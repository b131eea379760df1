#include "sewing/sphere_models.hpp"

#include <algorithm>
#include <cmath>

#include "sewing/lattice.hpp"
#include "sewing/moments.hpp"
#include "sewing/special_functions.hpp"

namespace sewing {
namespace {

void check_chi(Complex chi, const char* where) {
    if (!(std::abs(chi) < 0.25)) throw DomainError(std::string(where) + ": need |chi| < 1/4");
}

void check_order(int N) {
    if (N < 1) throw InvalidArgument("truncation order must be >= 1");
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

double VerificationReport::max_residual() const {
    double m = 0.0;
    for (const auto& [name, r] : residuals) m = std::max(m, r);
    return m;
}

Complex catalan_f(Complex chi) {
    check_chi(chi, "catalan_f");
    // (1 - s)/(1 + s) with s = sqrt(1 - 4 chi), written without cancellation
    const Complex s = std::sqrt(1.0 - 4.0 * chi);
    return 4.0 * chi / ((1.0 + s) * (1.0 + s));
}

Complex log_catalan_f(Complex chi) {
    if (chi == 0.0) throw DomainError("log_catalan_f: chi = 0");
    return std::log(chi) + 2.0 * std::log(1.0 + catalan_f(chi));
}

std::vector<long long> catalan_coefficients(int nmax) {
    if (nmax < 0 || nmax > 30) throw RangeError("catalan_coefficients: nmax outside [0, 30]");
    std::vector<long long> c(nmax + 1, 0);
    // C_n = binom(2n, n)/(n+1); the coefficient of chi^n is C_n
    long long cn = 1;
    for (int n = 1; n <= nmax; ++n) {
        cn = cn * 2 * (2 * n - 1) / (n + 1);
        c[n] = cn;
    }
    return c;
}

Complex catalan_continued_fraction(Complex chi, int depth) {
    if (depth < 1) throw InvalidArgument("continued fraction depth must be >= 1");
    Complex F = 1.0;
    for (int i = 1; i < depth; ++i) F = 1.0 / (1.0 - chi * F);
    return F;
}

int s_nk_default_truncation(Complex chi) {
    const double r = 4.0 * std::abs(chi);
    if (r <= 1e-3) return 40;
    const int m = static_cast<int>(std::ceil(std::log(1e-18) / std::log(r))) + 50;
    return std::clamp(m, 40, 4000);
}

std::vector<Complex> s_nk_partial_sums(int nmax, int k, Complex chi, int M) {
    if (nmax < 1 || k < 1) throw InvalidArgument("s_nk: n and k must be >= 1");
    check_chi(chi, "s_nk");
    if (M == 0) M = s_nk_default_truncation(chi);
    M = std::max(M, k);
    std::vector<Complex> out;
    out.reserve(nmax);
    out.push_back(1.0);
    if (nmax == 1) return out;
    if (chi == 0.0) {
        out.resize(nmax, 1.0);
        return out;
    }
    // kernel(a, b) = chi^b binom(a+b-1, b), evaluated in log space
    const Complex log_chi = std::log(chi);
    Matrix kernel(M, M);
    for (int a = 1; a <= M; ++a)
        for (int b = 1; b <= M; ++b) {
            const double lb = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b + 1.0);
            kernel(a - 1, b - 1) = std::exp(lb + static_cast<double>(b) * log_chi);
        }
    Vector u = Vector::Ones(M);
    Complex partial = 1.0;
    for (int n = 2; n <= nmax; ++n) {
        u = kernel * u;
        partial += u(k - 1);
        out.push_back(partial);
    }
    return out;
}

Complex s_nk(int n, int k, Complex chi, int M) {
    if (n == 1) {
        if (k < 1) throw InvalidArgument("s_nk: k must be >= 1");
        return 1.0;
    }
    const auto sums = s_nk_partial_sums(n, k, chi, M);
    return sums[n - 1] - sums[n - 2];
}

VerificationReport torus_modulus_simple(Complex q, int N) {
    check_order(N);
    if (!(std::abs(q) < 1.0)) throw DomainError("torus_modulus_simple: need |q| < 1");
    // Both diagonal blocks of R are diag(q^k) and the off-diagonal blocks vanish.
    Matrix b = Matrix::Zero(N, N);
    Complex qk = 1.0;
    Complex product = 1.0;
    for (int k = 1; k <= N; ++k) {
        qk *= q;
        b(k - 1, k - 1) = qk;
        product *= (1.0 - qk) * (1.0 - qk);
    }
    const Matrix zero = Matrix::Zero(N, N);
    const BlockMomentMatrix r(b, zero, zero, b);
    const Matrix flat = r.flatten();
    Matrix expected = Matrix::Zero(2 * N, 2 * N);
    qk = 1.0;
    for (int k = 1; k <= N; ++k) {
        qk *= q;
        expected(k - 1, k - 1) = 1.0 - qk;
        expected(N + k - 1, N + k - 1) = 1.0 - qk;
    }
    const DetResult det = det_id_minus(r);

    VerificationReport rep;
    rep.order = N;
    rep.margin = std::abs(q);
    rep.residuals["id_minus_r_diagonal"] = max_abs(Matrix(Matrix::Identity(2 * N, 2 * N) - flat - expected));
    rep.residuals["det_vs_product"] = std::abs(det.det - product);
    if (det.trace_log) rep.residuals["log_det_vs_trace_log"] = std::abs(det.log_det - *det.trace_log);
    if (q != 0.0) {
        const Tau tau(std::log(q) / two_pi_i);
        const Complex eta = dedekind_eta(tau);
        const Complex eta_form = std::exp(-two_pi_i * tau.value() / 12.0) * eta * eta;
        rep.residuals["det_vs_eta"] = std::abs(det.det - eta_form);
    } else {
        rep.residuals["det_vs_one"] = std::abs(det.det - 1.0);
    }
    return rep;
}

Complex torus_log_modulus_catalan(Complex chi, int N) {
    check_order(N);
    if (chi == 0.0) throw DomainError("torus_modulus_catalan: need chi != 0");
    const auto [r, beta] = sphere_moments(chi, N);
    // K(w,0) = w and unit coordinate derivatives reduce the log term to log chi.
    return std::log(chi) - contract_self_sewing(r, beta).beta_beta;
}

Complex torus_modulus_catalan(Complex chi, int N) { return std::exp(torus_log_modulus_catalan(chi, N)); }

Complex e2_from_catalan(Complex chi, int N) {
    check_order(N);
    const auto [r, beta] = sphere_moments(chi, N);
    // R = [[-B, 0], [0, -B^T]], so (I + B)^{-1}(1,1) comes from the first block.
    const Vector x = solve_id_minus(r.block(1, 1), Vector(Vector::Unit(N, 0)));
    return -1.0 / 12.0 + 2.0 * chi / (1.0 - 4.0 * chi) * x(0);
}

VerificationReport catalan_report(Complex chi, int N) {
    check_order(N);
    const Complex f = catalan_f(chi);
    VerificationReport rep;
    rep.order = N;
    rep.margin = 4.0 * std::abs(chi);
    rep.residuals["functional_equation"] = std::abs(chi - f / ((1.0 + f) * (1.0 + f)));
    rep.residuals["continued_fraction"] = std::abs(catalan_continued_fraction(chi, 4 * N) - (1.0 + f));
    for (int k = 1; k <= 4; ++k) {
        const auto sums = s_nk_partial_sums(40, k, chi);
        rep.residuals["snk_sum_k" + std::to_string(k)] = std::abs(sums.back() - std::pow(1.0 + f, k));
    }
    rep.residuals["torus_modulus"] = std::abs(torus_modulus_catalan(chi, N) - f);
    rep.residuals["e2_identity"] = std::abs(e2_from_catalan(chi, N) - eisenstein_from_nome(2, f));
    return rep;
}

VerificationReport sphere_attach_check(const Tau& tau, Complex eps, int N) {
    check_order(N);
    const MomentMatrix a1 = a_matrix(tau, eps, N);
    const MomentMatrix a2(Matrix::Zero(N, N));
    const XBlocks x = x_blocks(a1, a2);
    VerificationReport rep;
    rep.order = N;
    // torus annulus radius below D/2, unit radius on the sphere
    rep.margin = std::abs(eps) / (0.5 * lattice_min(tau));
    rep.residuals["x11_minus_a1"] = max_abs(Matrix(x.x11 - a1.entries()));
    rep.residuals["x12"] = max_abs(x.x12);
    rep.residuals["x21"] = max_abs(x.x21);
    rep.residuals["x22"] = max_abs(x.x22);
    return rep;
}

}  // namespace sewing
