#include <algorithm>
#include <cmath>
#include <limits>

#include "sewing/special_functions.hpp"

namespace sewing {
namespace {

constexpr double ln2 = 0.69314718055994530942;

Complex ipow(Complex x, int n) {
    Complex r = 1.0;
    while (n > 0) {
        if (n & 1) r *= x;
        x *= x;
        n >>= 1;
    }
    return r;
}

// log sum_{n>=a} (a/n)^s, i.e. log(a^s * sum_{n>=a} n^{-s}), for s >= 2.
double log_scaled_zeta_tail(int s, long long a) {
    const double ad = static_cast<double>(a);
    double sum = 0.0;
    if (s > 2 * a + 10) {
        for (long long n = a;; ++n) {
            const double t = std::pow(ad / static_cast<double>(n), s);
            sum += t;
            if (t * static_cast<double>(n) / (s - 1) < 1e-18 * sum) break;
        }
        return std::log(sum);
    }
    // Explicit head, then Euler-Maclaurin from b > s.
    const long long b = a + s + 20;
    for (long long n = a; n < b; ++n) sum += std::pow(ad / static_cast<double>(n), s);
    static const double bern[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730,
                                  7.0 / 6, -3617.0 / 510, 43867.0 / 798, -174611.0 / 330};
    const double bd = static_cast<double>(b);
    double corr = bd / (s - 1) + 0.5;
    double rising = s;       // (s)_{2i-1}
    double fact = 2.0;       // (2i)!
    double bpow = 1.0 / bd;  // b^{1-2i}
    for (int i = 1; i <= 10; ++i) {
        corr += bern[i - 1] / fact * rising * bpow;
        rising *= (s + 2 * i - 1) * (s + 2.0 * i);
        fact *= (2.0 * i + 1) * (2.0 * i + 2);
        bpow /= bd * bd;
    }
    sum += std::pow(ad / bd, s) * corr;
    return std::log(sum);
}

// S_k(u) = sum_n (u - 2 pi i n)^{-k}, k >= 3, by explicit terms |n| <= n0 plus a
// Taylor expansion of the remaining terms in u with Hurwitz-zeta coefficients.
Complex strip_partial_fractions(int k, Complex u, double thresh) {
    const double au = std::abs(u);
    const long long n0 = std::max<long long>(2, static_cast<long long>(std::ceil(au / pi)));
    Complex head = 0.0;
    for (long long n = -n0; n <= n0; ++n) head += ipow(1.0 / (u - two_pi_i * static_cast<double>(n)), k);

    const long long a = n0 + 1;
    const double ln_2pia = std::log(2.0 * pi * static_cast<double>(a));
    const Complex phase_u = (au > 0.0) ? u / au : Complex(1.0);
    const double ln_au = (au > 0.0) ? std::log(au) : -std::numeric_limits<double>::infinity();
    Complex rem = 0.0;
    double ln_binom = 0.0;  // log binom(k+j-1, j)
    Complex phase = 1.0;    // (u/|u|)^j
    const double ln_head = std::log(std::max(std::abs(head), 1e-300));
    for (int j = 0; j < 4 * max_weight; ++j) {
        const int s = k + j;
        // magnitude of term without the zeta tail factor: binom |u|^j 2 (2 pi a)^{-s}
        const double ln_mag0 = ln_binom + (j > 0 ? j * ln_au : 0.0) + ln2 - s * ln_2pia;
        if (s % 2 == 0) {
            const double ln_mag = ln_mag0 + log_scaled_zeta_tail(s, a);
            const double sgn = ((s / 2) % 2 == 0) ? 1.0 : -1.0;
            rem += sgn * std::exp(ln_mag) * phase;
        }
        const double ratio = (k + j) / (j + 1.0) * au / (2.0 * pi * static_cast<double>(a));
        const double ln_bound = ln_mag0 + std::log(4.0 * static_cast<double>(a));
        if (ratio < 0.9 && (ln_bound < ln_head - 41.0 || ln_bound < std::log(thresh))) break;
        ln_binom += std::log((k + j) / (j + 1.0));
        phase *= phase_u;
    }
    if (k % 2 != 0) rem = -rem;
    return head + rem;
}

// S_k(u) by the exponential series; requires Re u != 0.
Complex strip_exponential(int k, Complex u, double thresh) {
    const double a = std::abs(u.real());
    const double lg = std::lgamma(static_cast<double>(k));
    const Complex v = (u.real() > 0.0) ? -u : u;
    Complex sum = 0.0;
    const double peak = (k - 1) / a;
    for (int j = 1; j < 1000000; ++j) {
        const double lj = std::log(static_cast<double>(j));
        const Complex t = std::exp((k - 1) * lj - lg + static_cast<double>(j) * v);
        sum += t;
        if (j > peak) {
            const double r = std::pow((j + 2.0) / (j + 1.0), k - 1) * std::exp(-a);
            if (r < 1.0 && std::abs(t) * r / (1.0 - r) < thresh) break;
        }
    }
    if (u.real() < 0.0 && k % 2 != 0) sum = -sum;
    return sum;
}

Complex strip_term(int k, Complex u, double thresh) {
    if (std::abs(u.real()) >= std::max(1.0, pi * std::sqrt(static_cast<double>(k))))
        return strip_exponential(k, u, thresh);
    return strip_partial_fractions(k, u, thresh);
}

// 1/2 coth(u/2)
Complex half_coth(Complex u) {
    if (u.real() >= 0.0) {
        const Complex e = std::exp(-u);
        return 0.5 * (1.0 + e) / (1.0 - e);
    }
    const Complex e = std::exp(u);
    return -0.5 * (1.0 + e) / (1.0 - e);
}

// 1 / (4 sinh^2(u/2))
Complex quarter_csch2(Complex u) {
    const Complex e = (u.real() >= 0.0) ? std::exp(-u) : std::exp(u);
    return e / ((1.0 - e) * (1.0 - e));
}

void check_args(int kmax, const SeriesTolerance& tol) {
    tol.validate();
    if (kmax < 1) throw InvalidArgument("weierstrass_p: k must be >= 1");
    if (kmax > max_weight) throw RangeError("weierstrass_p: k exceeds supported range");
}

}  // namespace

std::vector<Complex> detail::weierstrass_laurent(int kmax, const Tau& tau, Complex z, const SeriesTolerance& tol) {
    check_args(kmax, tol);
    const double dmin = lattice_min(tau);
    const double r = std::abs(z) / dmin;
    if (z == 0.0) throw PoleError("weierstrass_p: z is a lattice point");
    if (!(r < 1.0)) throw InvalidArgument("weierstrass_laurent: need |z| < D(Lambda_tau)");

    // Truncation J from the majorant binom(j-1, kmax-1) r^j.
    int jmax = kmax + 2;
    double ln_binom = 0.0;  // log binom(j-1, kmax-1)
    for (int j = kmax;; ++j) {
        if (j + 1 > max_weight) throw ToleranceNotMet("weierstrass_p: Laurent series too long", r);
        const double ratio = j / static_cast<double>(j - kmax + 1) * r;
        if (j > kmax && ratio < 0.9 && ln_binom + j * std::log(r) < std::log(1e-20)) {
            jmax = j;
            break;
        }
        ln_binom += std::log(j / static_cast<double>(j - kmax + 1));
    }
    const auto e = eisenstein_table(jmax, tau, tol);

    std::vector<Complex> zp(jmax + 1);
    zp[0] = 1.0;
    for (int j = 1; j <= jmax; ++j) zp[j] = zp[j - 1] * z;

    std::vector<Complex> p(kmax + 1, 0.0);
    {
        Complex s = 0.0;
        for (int j = jmax; j >= 2; --j) s += e[j] * zp[j - 1];
        p[1] = 1.0 / z - s;
    }
    for (int k = 2; k <= kmax; ++k) {
        // binom(j-1, k-1) for j = k..jmax
        std::vector<double> binom(jmax + 1, 0.0);
        binom[k] = 1.0;
        for (int j = k + 1; j <= jmax; ++j) binom[j] = binom[j - 1] * (j - 1) / (j - k);
        Complex s = 0.0;
        for (int j = jmax; j >= k; --j) s += binom[j] * e[j] * zp[j - k];
        const Complex lead = 1.0 / zp[k];
        p[k] = (k % 2 == 0) ? lead + s : lead - s;
    }
    return p;
}

std::vector<Complex> detail::weierstrass_strip(int kmax, const Tau& tau, Complex z, const SeriesTolerance& tol) {
    check_args(kmax, tol);
    const Complex t = tau.value();
    const Complex zz = z / two_pi_i;
    const double x = zz.imag() / t.imag();
    const double y = zz.real() - x * t.real();
    const double m = std::round(x);
    const double n = std::round(y);
    const Complex u0 = z - two_pi_i * (m * t + n);
    const double dist = lattice_distance(tau, u0);
    if (dist == 0.0) throw PoleError("weierstrass_p: z is a lattice point");

    const Complex period = two_pi_i * t;
    const double absq = std::exp(-2.0 * pi * t.imag());
    std::vector<Complex> p(kmax + 1, 0.0);

    // k = 1, 2: closed forms in each strip
    {
        Complex s1 = half_coth(u0);
        Complex s2 = quarter_csch2(u0);
        const double thresh = tol.abs_tol * 1e-3 * std::max(1.0, 1.0 / (dist * dist));
        for (int j = 1;; ++j) {
            if (j > tol.max_terms) throw ToleranceNotMet("weierstrass_p: strip sum did not settle", 0.0);
            const Complex up = u0 - static_cast<double>(j) * period;  // Re > 0
            const Complex um = u0 + static_cast<double>(j) * period;  // Re < 0
            const Complex ep = std::exp(-up);
            const Complex em = std::exp(um);
            const Complex t1 = ep / (1.0 - ep) - em / (1.0 - em);
            const Complex t2 = ep / ((1.0 - ep) * (1.0 - ep)) + em / ((1.0 - em) * (1.0 - em));
            s1 += t1;
            s2 += t2;
            const double tail = (std::abs(ep) + std::abs(em)) * absq / (1.0 - absq) * 4.0;
            if (tail < thresh) break;
        }
        p[1] = s1 - m;
        if (kmax >= 2) p[2] = s2;
    }
    for (int k = 3; k <= kmax; ++k) {
        const double scale = std::pow(dist, -k);
        const double thresh = 1e-18 * scale;
        Complex s = strip_term(k, u0, thresh);
        for (int j = 1;; ++j) {
            if (j > tol.max_terms) throw ToleranceNotMet("weierstrass_p: strip sum did not settle", 0.0);
            const Complex up = u0 - static_cast<double>(j) * period;
            const Complex um = u0 + static_cast<double>(j) * period;
            const Complex tp = strip_term(k, up, thresh);
            const Complex tm = strip_term(k, um, thresh);
            s += tp + tm;
            const double re = std::min(std::abs(up.real()), std::abs(um.real()));
            if (re > k && std::abs(tp) + std::abs(tm) < thresh) break;
        }
        p[k] = s;
    }
    return p;
}

std::vector<Complex> weierstrass_p_all(int kmax, const Tau& tau, Complex z, const SeriesTolerance& tol) {
    check_args(kmax, tol);
    const LatticeVector lam = nearest_lattice_point(tau, z);
    const Complex z0 = z - lam.value;
    const double dmin = lattice_min(tau);
    if (std::abs(z0) <= 1e-13 * dmin) throw PoleError("weierstrass_p: z is a lattice point");
    if (std::abs(z0) < 0.5 * dmin) {
        auto p = detail::weierstrass_laurent(kmax, tau, z0, tol);
        p[1] -= static_cast<double>(lam.m);
        return p;
    }
    return detail::weierstrass_strip(kmax, tau, z, tol);
}

Complex weierstrass_p(int k, const Tau& tau, Complex z, const SeriesTolerance& tol) {
    return weierstrass_p_all(k, tau, z, tol)[k];
}

}  // namespace sewing
