#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sewing/lattice.hpp"
#include "sewing/types.hpp"

namespace sewing {

using Rational = boost::multiprecision::cpp_rational;

// Largest k, l accepted by the C/D coefficient functions. The factorial ratio
// (k+l-1)!/((k-1)!(l-1)!) stays below DBL_MAX up to this bound.
inline constexpr int max_coefficient_index = 500;

// Largest weight accepted by the Eisenstein and P_k evaluators.
inline constexpr int max_weight = 1200;

// B_k from t/(e^t-1) - 1 + t/2 = sum_{k>=2} B_k t^k / k!.
Rational bernoulli(int k);

// E_k(tau) = -B_k/k! + 2/(k-1)! sum sigma_{k-1}(n) q^n; zero for odd k.
Complex eisenstein(int k, const Tau& tau, const SeriesTolerance& tol = {});

// Same series evaluated from the nome q directly (|q| < 1).
Complex eisenstein_from_nome(int k, Complex q, const SeriesTolerance& tol = {});

// E_0..E_kmax in one pass (E_0 and odd entries are zero).
std::vector<Complex> eisenstein_table(int kmax, const Tau& tau, const SeriesTolerance& tol = {});

// P_k(tau, z) for k >= 1.
Complex weierstrass_p(int k, const Tau& tau, Complex z, const SeriesTolerance& tol = {});

// P_1..P_kmax at one point; entry 0 is unused.
std::vector<Complex> weierstrass_p_all(int kmax, const Tau& tau, Complex z, const SeriesTolerance& tol = {});

// K(tau, z); exactly 0 at z = 0.
Complex prime_form(const Tau& tau, Complex z, const SeriesTolerance& tol = {});
// exp(-P_0) with P_0 = -Log z + sum E_k z^k / k; needs 0 < |z| < D(Lambda_tau).
Complex prime_form_series(const Tau& tau, Complex z, const SeriesTolerance& tol = {});
// -i theta_1(tau, z) / eta(tau)^3; valid for any z.
Complex prime_form_theta(const Tau& tau, Complex z, const SeriesTolerance& tol = {});

Complex jacobi_theta1(const Tau& tau, Complex z, const SeriesTolerance& tol = {});
Complex dedekind_eta(const Tau& tau, const SeriesTolerance& tol = {});

// (k+l-1)! / ((k-1)! (l-1)!)
double factorial_ratio(int k, int l);

// C(k,l,tau) = (-1)^{k+1} (k+l-1)!/((k-1)!(l-1)!) E_{k+l}(tau)
Complex c_coeff(int k, int l, const Tau& tau, const SeriesTolerance& tol = {});
// D(k,l,tau,z) = (-1)^{k+1} (k+l-1)!/((k-1)!(l-1)!) P_{k+l}(tau,z)
Complex d_coeff(int k, int l, const Tau& tau, Complex z, const SeriesTolerance& tol = {});

namespace detail {

// -B_k/k! in double precision, k even.
double eisenstein_constant(int k);

// Eisenstein table from log q.
std::vector<Complex> eisenstein_table_logq(int kmax, Complex log_q, const SeriesTolerance& tol);

// The two evaluation routes for P_k, exposed for cross-checks. Both return P_1..P_kmax.
std::vector<Complex> weierstrass_laurent(int kmax, const Tau& tau, Complex z, const SeriesTolerance& tol);
std::vector<Complex> weierstrass_strip(int kmax, const Tau& tau, Complex z, const SeriesTolerance& tol);

}  // namespace detail

}  // namespace sewing
