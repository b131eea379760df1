#pragma once

#include <map>
#include <string>
#include <vector>

#include "sewing/types.hpp"

namespace sewing {

struct VerificationReport {
    std::map<std::string, double> residuals;
    double margin = 0.0;
    int order = 0;

    double max_residual() const;
};

// Solution of chi = f/(1+f)^2 with f(0) = 0, for |chi| < 1/4.
Complex catalan_f(Complex chi);
// log chi + 2 log(1 + f): the logarithm of f continued along chi.
Complex log_catalan_f(Complex chi);

// Catalan numbers 1, 2, 5, 14, ...: coefficient of chi^n in f.
std::vector<long long> catalan_coefficients(int nmax);

// N-th convergent of the continued fraction F = 1/(1 - chi F).
Complex catalan_continued_fraction(Complex chi, int depth);

// S_{n,k}(chi); M bounds each summation index (0 picks it from |chi|).
Complex s_nk(int n, int k, Complex chi, int M = 0);
// sum_{n <= nmax} S_{n,k}(chi), element n-1 holding the n-th partial sum.
std::vector<Complex> s_nk_partial_sums(int nmax, int k, Complex chi, int M = 0);
int s_nk_default_truncation(Complex chi);

// Sphere sewn to itself by z = q z'.
VerificationReport torus_modulus_simple(Complex q, int N);

// 2 pi i tau of the sphere self-sewing z (z' - w) = rho at chi = -rho/w^2.
Complex torus_log_modulus_catalan(Complex chi, int N);
// exp(2 pi i tau); equals catalan_f(chi).
Complex torus_modulus_catalan(Complex chi, int N);

// -1/12 + 2 chi/(1 - 4 chi) (I + B)^{-1}(1,1); equals E2 at q = f(chi).
Complex e2_from_catalan(Complex chi, int N);
VerificationReport catalan_report(Complex chi, int N);

// X blocks for a torus sewn to a sphere (A2 = 0).
VerificationReport sphere_attach_check(const Tau& tau, Complex eps, int N);

}  // namespace sewing
