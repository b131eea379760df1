#include "sewing/lattice.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace sewing {
namespace {

LatticeVector make_vector(const Tau& tau, long long m, long long n) {
    return {m, n, two_pi_i * (static_cast<double>(m) * tau.value() + static_cast<double>(n))};
}

LatticeVector combine(const Tau& tau, const LatticeVector& a, long long ca, const LatticeVector& b, long long cb) {
    return make_vector(tau, ca * a.m + cb * b.m, ca * a.n + cb * b.n);
}

}  // namespace

ReducedBasis reduce_lattice(const Tau& tau) {
    LatticeVector b1 = make_vector(tau, 0, 1);
    LatticeVector b2 = make_vector(tau, 1, 0);
    if (std::norm(b1.value) > std::norm(b2.value)) std::swap(b1, b2);
    // Lagrange-Gauss reduction; each pass strictly shortens b2 until it stops.
    for (int pass = 0; pass < 200; ++pass) {
        const double mu = std::round(std::real(b2.value * std::conj(b1.value)) / std::norm(b1.value));
        if (mu != 0.0) b2 = combine(tau, b2, 1, b1, -static_cast<long long>(mu));
        if (std::norm(b2.value) >= std::norm(b1.value)) break;
        std::swap(b1, b2);
    }
    return {b1, b2};
}

double lattice_min(const Tau& tau) {
    const ReducedBasis rb = reduce_lattice(tau);
    double best = std::numeric_limits<double>::infinity();
    for (long long i = -2; i <= 2; ++i)
        for (long long j = -2; j <= 2; ++j) {
            if (i == 0 && j == 0) continue;
            best = std::min(best, std::abs(combine(tau, rb.b1, i, rb.b2, j).value));
        }
    return best;
}

LatticeVector nearest_lattice_point(const Tau& tau, Complex z) {
    const ReducedBasis rb = reduce_lattice(tau);
    // Real coordinates of z in the reduced basis.
    const Complex u = rb.b1.value;
    const Complex v = rb.b2.value;
    const double det = u.real() * v.imag() - u.imag() * v.real();
    const double s = (z.real() * v.imag() - z.imag() * v.real()) / det;
    const double t = (u.real() * z.imag() - u.imag() * z.real()) / det;
    const long long s0 = static_cast<long long>(std::floor(s));
    const long long t0 = static_cast<long long>(std::floor(t));
    LatticeVector best;
    double best_d = std::numeric_limits<double>::infinity();
    for (long long i = -1; i <= 2; ++i)
        for (long long j = -1; j <= 2; ++j) {
            const LatticeVector c = combine(tau, rb.b1, s0 + i, rb.b2, t0 + j);
            const double d = std::abs(z - c.value);
            if (d < best_d) {
                best_d = d;
                best = c;
            }
        }
    return best;
}

double lattice_distance(const Tau& tau, Complex z) { return std::abs(z - nearest_lattice_point(tau, z).value); }

}  // namespace sewing
