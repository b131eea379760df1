#pragma once

#include <array>

#include "sewing/types.hpp"

namespace sewing {

// Symmetric 2x2 complex matrix; only three entries are stored.
struct PeriodMatrix {
    Complex omega11;
    Complex omega12;
    Complex omega22;

    // Im Omega positive definite.
    bool in_siegel_space() const;
};

double max_entry_diff(const PeriodMatrix& a, const PeriodMatrix& b);

// Element of SL(2, Z).
struct SL2 {
    long long a = 1, b = 0, c = 0, d = 1;

    static SL2 identity() { return {}; }
    static SL2 S() { return {0, -1, 1, 0}; }
    static SL2 T() { return {1, 1, 0, 1}; }

    bool valid() const { return a * d - b * c == 1; }
    // c tau + d
    Complex cocycle(Complex tau) const { return static_cast<double>(c) * tau + static_cast<double>(d); }
    Complex act(Complex tau) const {
        return (static_cast<double>(a) * tau + static_cast<double>(b)) / cocycle(tau);
    }
    Tau act(const Tau& tau) const { return Tau(act(tau.value())); }
};

SL2 operator*(const SL2& x, const SL2& y);

// Integer 4x4 matrix [[A, B], [C, D]] in Sp(4, Z).
struct Sp4 {
    std::array<std::array<long long, 4>, 4> m{};

    static Sp4 identity();
    bool is_symplectic() const;
};

Sp4 operator*(const Sp4& x, const Sp4& y);

Sp4 embed_gamma1(const SL2& g);
Sp4 embed_gamma2(const SL2& g);
Sp4 beta_swap_matrix();
// mu(a,b,c) = [[1,0,0,b],[a,1,b,c],[0,0,1,-a],[0,0,0,1]]
Sp4 mu_matrix(long long a, long long b, long long c);

// (A Omega + B)(C Omega + D)^{-1}
PeriodMatrix sp4_act(const Sp4& g, const PeriodMatrix& omega);

}  // namespace sewing
