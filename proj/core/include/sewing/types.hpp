#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "sewing/errors.hpp"

namespace sewing {

using Complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr Complex two_pi_i{0.0, 2.0 * std::numbers::pi};

// Truncation control for q-series and other adaptive sums.
struct SeriesTolerance {
    double abs_tol = 1e-14;
    int max_terms = 10000;

    void validate() const {
        if (!(abs_tol > 0.0)) throw InvalidArgument("SeriesTolerance: abs_tol must be positive");
        if (max_terms < 1) throw InvalidArgument("SeriesTolerance: max_terms must be >= 1");
    }
};

// A point of the upper half-plane.
class Tau {
public:
    Tau(Complex v) : v_(v) {  // NOLINT: implicit on purpose, call sites read like math
        if (!(v.imag() > 0.0) || !std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw InvalidArgument("tau must have strictly positive imaginary part");
    }
    Tau(double re, double im) : Tau(Complex{re, im}) {}

    Complex value() const { return v_; }
    // q = exp(2 pi i tau)
    Complex nome() const { return std::exp(two_pi_i * v_); }

private:
    Complex v_;
};

}  // namespace sewing
