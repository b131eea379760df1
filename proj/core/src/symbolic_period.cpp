#include <string>
#include <vector>

#include "sewing/formal_series.hpp"

namespace sewing::formal {
namespace {

using PolyVec = std::vector<GradedPoly>;
using PolyMat = std::vector<PolyVec>;

// (k+l-1)!/((k-1)!(l-1)!) as an exact integer
Rational factorial_ratio_exact(int k, int l) {
    boost::multiprecision::cpp_int r = 1;
    for (int i = l; i <= k + l - 1; ++i) r *= i;
    for (int i = 2; i <= k - 1; ++i) r /= i;
    return Rational(r);
}

Rational sign_k(int k) { return (k % 2 == 1) ? Rational(1) : Rational(-1); }

Monomial single(const Generator& g) { return Monomial{{{g, 1}}}; }

PolyVec mat_vec(const PolyMat& m, const PolyVec& v, int max_half) {
    PolyVec out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (m[i][j].empty() || v[j].empty()) continue;
            out[i] += m[i][j].mul_truncated(v[j], max_half);
        }
    return out;
}

// (I - M)^{-1} rhs by fixed-point iteration on truncated series; each
// application of M raises the parameter power by at least min_gain halves.
PolyVec neumann_solve(const PolyMat& m, const PolyVec& rhs, int max_half, int min_gain) {
    PolyVec x = rhs;
    const int rounds = max_half / min_gain + 2;
    for (int r = 0; r < rounds; ++r) {
        PolyVec next = mat_vec(m, x, max_half);
        for (std::size_t i = 0; i < next.size(); ++i) next[i] += rhs[i].truncated(max_half);
        if (next == x) return x;
        x = std::move(next);
    }
    return x;
}

void require_integral(const GradedPoly& p, const char* what) {
    if (!p.integral_powers()) throw Error(std::string(what) + ": half-integer parameter power survived");
}

}  // namespace

SymbolicPeriod symbolic_period_eps(int max_order) {
    if (max_order < 1 || max_order > max_symbolic_eps_order)
        throw RangeError("symbolic_period_eps: order must lie in [1, " + std::to_string(max_symbolic_eps_order) + "]");
    // After conjugating by diag(sqrt k), A_a becomes M_a(k,l) = eps^{(k+l)/2} C(k,l)/l,
    // and the (1,1) entries used below are unchanged.
    const int K = std::max(1, max_order - 1);
    const int H = 2 * (max_order - 1);  // the outer eps supplies the rest
    auto build = [&](Family fam) {
        PolyMat m(K, PolyVec(K));
        for (int k = 1; k <= K; ++k)
            for (int l = 1; l <= K; ++l) {
                if ((k + l) % 2 != 0 || k + l > H) continue;
                const Rational c = sign_k(k) * factorial_ratio_exact(k, l) / l;
                m[k - 1][l - 1] = GradedPoly::term(c, k + l, single(Generator{fam, k + l}));
            }
        return m;
    };
    const PolyMat m1 = build(Family::E);
    const PolyMat m2 = build(Family::F);
    auto product = [&](const PolyMat& a, const PolyMat& b) {
        PolyMat out(K, PolyVec(K));
        for (int i = 0; i < K; ++i)
            for (int j = 0; j < K; ++j)
                for (int l = 0; l < K; ++l)
                    if (!a[i][l].empty() && !b[l][j].empty()) out[i][j] += a[i][l].mul_truncated(b[l][j], H);
        return out;
    };
    PolyVec e1(K);
    e1[0] = GradedPoly::constant(1);
    const PolyVec x = neumann_solve(product(m1, m2), e1, H, 4);  // (I - M1 M2)^{-1} e1
    const PolyVec y = neumann_solve(product(m2, m1), e1, H, 4);  // (I - M2 M1)^{-1} e1
    const GradedPoly m2x = mat_vec(m2, x, H)[0];
    const GradedPoly m1y = mat_vec(m1, y, H)[0];

    SymbolicPeriod out;
    out.order = max_order;
    out.omega11 = GradedPoly::generator(Generator::T(1)) + m2x.shifted(2);
    out.omega22 = GradedPoly::generator(Generator::T(2)) + m1y.shifted(2);
    out.omega12 = -(x[0].shifted(2));
    for (auto* p : {&out.omega11, &out.omega12, &out.omega22}) {
        *p = p->truncated(2 * max_order);
        require_integral(*p, "symbolic_period_eps");
    }
    return out;
}

SymbolicPeriod symbolic_period_rho(int max_order) {
    if (max_order < 1 || max_order > max_symbolic_rho_order)
        throw RangeError("symbolic_period_rho: order must lie in [1, " + std::to_string(max_symbolic_rho_order) + "]");
    const int K = max_order + 1;
    const int H = 2 * max_order;
    const int n = 2 * K;  // flat index (a-1) K + (k-1)
    // N(ak, bl) = R(ak, bl) / l with the sqrt(kl) factors removed:
    //   R11 = -rho^{(k+l)/2} D(k,l), R22 = -rho^{(k+l)/2} D(l,k), R12 = R21 = -rho^{(k+l)/2} C(k,l)
    PolyMat nmat(n, PolyVec(n));
    for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 2; ++b)
            for (int k = 1; k <= K; ++k)
                for (int l = 1; l <= K; ++l) {
                    if (k + l > H) continue;
                    const Rational fr = factorial_ratio_exact(k, l);
                    Rational c;
                    Generator g;
                    if (a == b) {
                        c = -(a == 1 ? sign_k(k) : sign_k(l)) * fr / l;
                        g = Generator::P(k + l);
                    } else {
                        if ((k + l) % 2 != 0) continue;
                        c = -sign_k(k) * fr / l;
                        g = Generator::E(k + l);
                    }
                    nmat[(a - 1) * K + k - 1][(b - 1) * K + l - 1] = GradedPoly::term(c, k + l, single(g));
                }
    // beta(a,k) sqrt(k) = rho^{k/2} (P_k - E_k) s_a(k), s_1 = -1, s_2 = (-1)^k; E_1 = 0
    auto beta_check = [&](int a, int k) {
        const Rational s = (a == 1) ? Rational(-1) : ((k % 2 == 0) ? Rational(1) : Rational(-1));
        GradedPoly v = GradedPoly::term(s, k, single(Generator::P(k)));
        if (k % 2 == 0) v -= GradedPoly::term(s, k, single(Generator::E(k)));
        return v;
    };
    PolyVec beta(n), bbar(n), beta_over_k(n);
    for (int a = 1; a <= 2; ++a)
        for (int k = 1; k <= K; ++k) {
            beta[(a - 1) * K + k - 1] = beta_check(a, k);
            bbar[(a - 1) * K + k - 1] = beta_check(3 - a, k);
            beta_over_k[(a - 1) * K + k - 1] = beta_check(a, k).scaled(Rational(1, k));
        }
    auto dot = [&](const PolyVec& u, const PolyVec& v) {
        GradedPoly s;
        for (int i = 0; i < n; ++i)
            if (!u[i].empty() && !v[i].empty()) s += u[i].mul_truncated(v[i], H);
        return s;
    };

    GradedPoly sigma11, sigma_beta;
    for (int b = 1; b <= 2; ++b) {
        PolyVec e(n);
        e[(b - 1) * K] = GradedPoly::constant(1);
        const PolyVec x = neumann_solve(nmat, e, H, 2);
        sigma11 += x[0] + x[K];
        sigma_beta += dot(beta_over_k, x);
    }
    const PolyVec z = neumann_solve(nmat, bbar, H, 2);
    const GradedPoly beta_beta = dot(beta_over_k, z);

    SymbolicPeriod out;
    out.order = max_order;
    out.omega11 = GradedPoly::generator(Generator::T()) - sigma11.shifted(2);
    out.omega12 = GradedPoly::generator(Generator::W()) - sigma_beta.shifted(1);
    out.omega22 = GradedPoly::generator(Generator::L()) - beta_beta;
    for (auto* p : {&out.omega11, &out.omega12, &out.omega22}) {
        *p = p->truncated(H);
        require_integral(*p, "symbolic_period_rho");
    }
    return out;
}

}  // namespace sewing::formal
