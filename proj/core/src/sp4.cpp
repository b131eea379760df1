#include <cmath>

#include "sewing/siegel.hpp"

namespace sewing {

bool PeriodMatrix::in_siegel_space() const {
    const double a = omega11.imag();
    const double b = omega12.imag();
    const double d = omega22.imag();
    return a > 0.0 && a * d - b * b > 0.0;
}

double max_entry_diff(const PeriodMatrix& a, const PeriodMatrix& b) {
    return std::max({std::abs(a.omega11 - b.omega11), std::abs(a.omega12 - b.omega12),
                     std::abs(a.omega22 - b.omega22)});
}

SL2 operator*(const SL2& x, const SL2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

Sp4 Sp4::identity() {
    Sp4 g;
    for (int i = 0; i < 4; ++i) g.m[i][i] = 1;
    return g;
}

Sp4 operator*(const Sp4& x, const Sp4& y) {
    Sp4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            long long s = 0;
            for (int k = 0; k < 4; ++k) s += x.m[i][k] * y.m[k][j];
            r.m[i][j] = s;
        }
    return r;
}

bool Sp4::is_symplectic() const {
    // g^T J g == J with J = [[0, I], [-I, 0]]
    const long long j[4][4] = {{0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 0, 0, 0}, {0, -1, 0, 0}};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            long long s = 0;
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) s += m[k][r] * j[k][l] * m[l][c];
            if (s != j[r][c]) return false;
        }
    return true;
}

Sp4 embed_gamma1(const SL2& g) {
    Sp4 s = Sp4::identity();
    s.m[0][0] = g.a;
    s.m[0][2] = g.b;
    s.m[2][0] = g.c;
    s.m[2][2] = g.d;
    return s;
}

Sp4 embed_gamma2(const SL2& g) {
    Sp4 s = Sp4::identity();
    s.m[1][1] = g.a;
    s.m[1][3] = g.b;
    s.m[3][1] = g.c;
    s.m[3][3] = g.d;
    return s;
}

Sp4 beta_swap_matrix() {
    Sp4 s;
    s.m[0][1] = s.m[1][0] = s.m[2][3] = s.m[3][2] = 1;
    return s;
}

Sp4 mu_matrix(long long a, long long b, long long c) {
    Sp4 s = Sp4::identity();
    s.m[0][3] = b;
    s.m[1][0] = a;
    s.m[1][2] = b;
    s.m[1][3] = c;
    s.m[2][3] = -a;
    return s;
}

PeriodMatrix sp4_act(const Sp4& g, const PeriodMatrix& omega) {
    using M2 = std::array<std::array<Complex, 2>, 2>;
    const M2 om = {{{omega.omega11, omega.omega12}, {omega.omega12, omega.omega22}}};
    auto blk = [&](int r0, int c0) {
        M2 x;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) x[i][j] = static_cast<double>(g.m[r0 + i][c0 + j]);
        return x;
    };
    auto mul = [](const M2& x, const M2& y) {
        M2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        return r;
    };
    auto add = [](const M2& x, const M2& y) {
        M2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r[i][j] = x[i][j] + y[i][j];
        return r;
    };
    const M2 num = add(mul(blk(0, 0), om), blk(0, 2));
    const M2 den = add(mul(blk(2, 0), om), blk(2, 2));
    const Complex det = den[0][0] * den[1][1] - den[0][1] * den[1][0];
    const double scale = std::abs(den[0][0]) + std::abs(den[0][1]) + std::abs(den[1][0]) + std::abs(den[1][1]);
    if (std::abs(det) <= 1e-14 * scale * scale) throw ActionSingular("sp4_act: C Omega + D is singular");
    const M2 inv = {{{den[1][1] / det, -den[0][1] / det}, {-den[1][0] / det, den[0][0] / det}}};
    const M2 r = mul(num, inv);
    // The image is symmetric; average the off-diagonal pair against rounding.
    return {r[0][0], 0.5 * (r[0][1] + r[1][0]), r[1][1]};
}

}  // namespace sewing
