#pragma once

#include "sewing/types.hpp"

namespace sewing {

// Lattice Lambda_tau = 2 pi i (Z tau + Z). A vector is stored with its integer
// coordinates so that value = 2 pi i (m tau + n).
struct LatticeVector {
    long long m = 0;
    long long n = 0;
    Complex value{};
};

// Gauss-reduced basis: |b1| <= |b2|, |Re <b1,b2>| <= |b1|^2 / 2.
struct ReducedBasis {
    LatticeVector b1;
    LatticeVector b2;
};

ReducedBasis reduce_lattice(const Tau& tau);

// D(Lambda_tau): length of the shortest nonzero lattice vector.
double lattice_min(const Tau& tau);

// Lattice point nearest to z.
LatticeVector nearest_lattice_point(const Tau& tau, Complex z);

// Distance from z to the lattice.
double lattice_distance(const Tau& tau, Complex z);

}  // namespace sewing
