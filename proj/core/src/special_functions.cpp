#include "sewing/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sewing {
namespace {

constexpr double ln2 = 0.69314718055994530942;
const double ln_two_pi = std::log(2.0 * pi);

// Largest k for which -B_k/k! is taken from the exact rational value.
constexpr int exact_bernoulli_limit = 60;

std::vector<Rational> bernoulli_numbers(int kmax) {
    using boost::multiprecision::cpp_int;
    std::vector<Rational> b(kmax + 1);
    b[0] = 1;
    for (int m = 1; m <= kmax; ++m) {
        Rational acc = 0;
        cpp_int binom = 1;  // binom(m+1, j)
        for (int j = 0; j < m; ++j) {
            acc += Rational(binom) * b[j];
            binom = binom * (m + 1 - j) / (j + 1);
        }
        b[m] = -acc / (m + 1);
    }
    return b;
}

std::vector<double> build_constant_table() {
    std::vector<double> t(max_weight + 1, 0.0);
    const auto b = bernoulli_numbers(exact_bernoulli_limit);
    Rational fact = 1;
    for (int k = 1; k <= exact_bernoulli_limit; ++k) {
        fact *= k;
        if (k % 2 == 0) t[k] = static_cast<double>(Rational(-b[k] / fact));
    }
    for (int k = exact_bernoulli_limit + 2; k <= max_weight; k += 2) {
        double zeta = 0.0;
        for (int n = 1; n <= 8; ++n) zeta += std::pow(static_cast<double>(n), -k);
        const double mag = std::exp(ln2 - k * ln_two_pi) * zeta;
        t[k] = ((k / 2) % 2 == 0) ? mag : -mag;
    }
    return t;
}

// log of the magnitude of -B_k/k!, usable where the value underflows.
double log_constant_magnitude(int k) {
    const double c = detail::eisenstein_constant(k);
    if (c != 0.0) return std::log(std::abs(c));
    return ln2 - k * ln_two_pi;
}

// log(q^d / (1 - q^d)) for d = 1, 2, ... grown on demand.
class LambertLogs {
public:
    explicit LambertLogs(Complex log_q) : lq_(log_q) {}
    Complex operator()(int d) {
        while (static_cast<int>(v_.size()) < d) {
            const int e = static_cast<int>(v_.size()) + 1;
            const Complex x = static_cast<double>(e) * lq_;
            v_.push_back(x - std::log(1.0 - std::exp(x)));
        }
        return v_[d - 1];
    }

private:
    Complex lq_;
    std::vector<Complex> v_;
};

Complex eisenstein_series(int k, Complex log_q, LambertLogs& logs, const SeriesTolerance& tol) {
    const double ln_absq = log_q.real();
    const double absq = std::exp(ln_absq);
    const double lg = std::lgamma(static_cast<double>(k));  // log (k-1)!
    const double ln_tol = std::log(tol.abs_tol);
    const double ln_const = log_constant_magnitude(k);
    double ln_maxterm = -std::numeric_limits<double>::infinity();
    Complex sum = 0.0;
    double bound = std::numeric_limits<double>::infinity();
    for (int d = 1;; ++d) {
        if (d > tol.max_terms) throw ToleranceNotMet("eisenstein: max_terms reached", bound);
        const Complex lt = ln2 + (k - 1) * std::log(static_cast<double>(d)) - lg + logs(d);
        sum += std::exp(lt);
        ln_maxterm = std::max(ln_maxterm, lt.real());
        // Majorant 2 d^{k-1} |q|^d / ((k-1)! (1-|q|)); its step ratio decreases in d.
        const double r = std::pow((d + 2.0) / (d + 1.0), k - 1) * absq;
        if (r < 1.0) {
            const double ln_next = ln2 + (k - 1) * std::log(d + 1.0) - lg + (d + 1) * ln_absq - std::log1p(-absq);
            const double ln_tail = ln_next - std::log1p(-r);
            bound = std::exp(ln_tail);
            if (ln_tail < ln_tol + std::max(ln_const, ln_maxterm)) break;
        }
    }
    return detail::eisenstein_constant(k) + sum;
}

void check_weight(int k) {
    if (k < 1) throw InvalidArgument("weight must be >= 1");
    if (k > max_weight) throw RangeError("weight exceeds supported range");
}

}  // namespace

Rational bernoulli(int k) {
    if (k < 2 || k % 2 != 0) throw InvalidArgument("bernoulli: k must be even and >= 2");
    return bernoulli_numbers(k)[k];
}

double detail::eisenstein_constant(int k) {
    static const std::vector<double> table = build_constant_table();
    if (k < 0 || k > max_weight) throw RangeError("eisenstein_constant: weight out of range");
    return table[k];
}

std::vector<Complex> detail::eisenstein_table_logq(int kmax, Complex log_q, const SeriesTolerance& tol) {
    tol.validate();
    if (kmax > max_weight) throw RangeError("eisenstein_table: weight out of range");
    if (!(log_q.real() < 0.0)) throw InvalidArgument("eisenstein: |q| must be < 1");
    std::vector<Complex> out(std::max(kmax, 0) + 1, 0.0);
    LambertLogs logs(log_q);
    for (int k = 2; k <= kmax; k += 2) out[k] = eisenstein_series(k, log_q, logs, tol);
    return out;
}

Complex eisenstein(int k, const Tau& tau, const SeriesTolerance& tol) {
    check_weight(k);
    tol.validate();
    if (k % 2 != 0) return 0.0;
    const Complex lq = two_pi_i * tau.value();
    LambertLogs logs(lq);
    return eisenstein_series(k, lq, logs, tol);
}

Complex eisenstein_from_nome(int k, Complex q, const SeriesTolerance& tol) {
    check_weight(k);
    tol.validate();
    if (!(std::abs(q) < 1.0)) throw InvalidArgument("eisenstein: |q| must be < 1");
    if (k % 2 != 0) return 0.0;
    if (q == 0.0) return detail::eisenstein_constant(k);
    const Complex lq = std::log(q);
    LambertLogs logs(lq);
    return eisenstein_series(k, lq, logs, tol);
}

std::vector<Complex> eisenstein_table(int kmax, const Tau& tau, const SeriesTolerance& tol) {
    return detail::eisenstein_table_logq(kmax, two_pi_i * tau.value(), tol);
}

Complex dedekind_eta(const Tau& tau, const SeriesTolerance& tol) {
    tol.validate();
    const Complex lq = two_pi_i * tau.value();
    const double absq = std::exp(lq.real());
    Complex log_prod = lq / 24.0;
    double bound = std::numeric_limits<double>::infinity();
    for (int n = 1;; ++n) {
        if (n > tol.max_terms) throw ToleranceNotMet("dedekind_eta: max_terms reached", bound);
        log_prod += std::log(1.0 - std::exp(static_cast<double>(n) * lq));
        // |sum_{m>n} log(1-q^m)| <= |q|^{n+1} / ((1-|q|)(1-|q|^{n+1}))
        const double qn1 = std::pow(absq, n + 1);
        bound = qn1 / ((1.0 - absq) * (1.0 - qn1));
        if (bound < tol.abs_tol) break;
    }
    return std::exp(log_prod);
}

Complex jacobi_theta1(const Tau& tau, Complex z, const SeriesTolerance& tol) {
    tol.validate();
    const Complex t = tau.value();
    const Complex shift = z + Complex(0.0, pi);
    auto exponent = [&](long long n) {
        const double nu = static_cast<double>(n) + 0.5;
        return Complex(0.0, pi) * t * (nu * nu) + nu * shift;
    };
    // Terms are Gaussian in n; start at the peak and walk outwards.
    const double peak_nu = z.real() / (2.0 * pi * t.imag());
    const long long nc = std::llround(peak_nu - 0.5);
    Complex sum = std::exp(exponent(nc));
    double peak = exponent(nc).real();
    const double ln_cut = std::log(tol.abs_tol) - 6.0 * ln2;
    for (int side : {-1, 1}) {
        for (long long j = 1;; ++j) {
            if (j > tol.max_terms) throw ToleranceNotMet("jacobi_theta1: max_terms reached", 0.0);
            const long long n = nc + side * j;
            const Complex e = exponent(n);
            sum += std::exp(e);
            peak = std::max(peak, e.real());
            const double nu = static_cast<double>(n) + 0.5;
            const bool receding = side * (nu - peak_nu) > 0.0;
            if (receding && e.real() - peak < ln_cut) break;
        }
    }
    return sum;
}

Complex prime_form_theta(const Tau& tau, Complex z, const SeriesTolerance& tol) {
    const Complex eta = dedekind_eta(tau, tol);
    return Complex(0.0, -1.0) * jacobi_theta1(tau, z, tol) / (eta * eta * eta);
}

Complex prime_form_series(const Tau& tau, Complex z, const SeriesTolerance& tol) {
    if (z == 0.0) return 0.0;
    const double d = lattice_min(tau);
    const double r = std::abs(z) / d;
    if (!(r < 1.0)) throw InvalidArgument("prime_form_series: need |z| < D(Lambda_tau)");
    int jmax = std::max(4, static_cast<int>(std::ceil(std::log(1e-18) / std::log(r))) + 4);
    jmax = std::min(jmax + (jmax % 2), max_weight);
    const auto e = eisenstein_table(jmax, tau, tol);
    Complex s = 0.0;
    Complex zp = z * z;
    for (int k = 2; k <= jmax; k += 2) {
        s += e[k] * zp / static_cast<double>(k);
        zp *= z * z;
    }
    return z * std::exp(-s);
}

Complex prime_form(const Tau& tau, Complex z, const SeriesTolerance& tol) {
    if (z == 0.0) return 0.0;
    if (std::abs(z) < 0.5 * lattice_min(tau)) return prime_form_series(tau, z, tol);
    return prime_form_theta(tau, z, tol);
}

double factorial_ratio(int k, int l) {
    if (k < 1 || l < 1) throw InvalidArgument("factorial_ratio: indices must be >= 1");
    if (k > max_coefficient_index || l > max_coefficient_index)
        throw RangeError("factorial_ratio: index exceeds supported range");
    // (k+l-1) * binom(k+l-2, min(k,l)-1)
    const int lo = std::min(k, l) - 1;
    const int hi = std::max(k, l) - 1;
    double b = 1.0;
    for (int i = 1; i <= lo; ++i) b = b * (hi + i) / i;
    return (k + l - 1) * b;
}

Complex c_coeff(int k, int l, const Tau& tau, const SeriesTolerance& tol) {
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    return sign * factorial_ratio(k, l) * eisenstein(k + l, tau, tol);
}

Complex d_coeff(int k, int l, const Tau& tau, Complex z, const SeriesTolerance& tol) {
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    return sign * factorial_ratio(k, l) * weierstrass_p(k + l, tau, z, tol);
}

}  // namespace sewing
