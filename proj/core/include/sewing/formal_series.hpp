#pragma once

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sewing/types.hpp"

namespace sewing::formal {

using Rational = boost::multiprecision::cpp_rational;

// Families in symbol-index order. T stands for 2 pi i tau (index 0 for the single
// torus, 1 and 2 for the pair), W for the puncture separation w and L for
// log(-rho/K(tau,w)^2).
enum class Family { T, W, L, E, F, P };

struct Generator {
    Family family = Family::E;
    int index = 0;

    int weight() const;
    std::string name() const;
    auto operator<=>(const Generator&) const = default;

    static Generator E(int k) { return {Family::E, k}; }
    static Generator F(int k) { return {Family::F, k}; }
    static Generator P(int k) { return {Family::P, k}; }
    static Generator T(int a = 0) { return {Family::T, a}; }
    static Generator W() { return {Family::W, 0}; }
    static Generator L() { return {Family::L, 0}; }
};

// Sorted (generator, exponent) pairs with positive exponents.
struct Monomial {
    std::vector<std::pair<Generator, int>> factors;

    int weight() const;
    std::string to_string() const;
    bool operator==(const Monomial&) const = default;
};

Monomial operator*(const Monomial& a, const Monomial& b);

// Term key: half_power counts powers of param^{1/2}. Ordered by half power, then
// total weight, then factors lexicographically.
struct TermKey {
    int half_power = 0;
    Monomial mono;

    bool operator<(const TermKey& o) const;
    bool operator==(const TermKey& o) const = default;
};

class GradedPoly {
public:
    GradedPoly() = default;

    static GradedPoly constant(const Rational& c);
    static GradedPoly generator(const Generator& g);
    // c * param^{half_power/2} * g
    static GradedPoly term(const Rational& c, int half_power, const Monomial& m = {});

    const std::map<TermKey, Rational>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    bool operator==(const GradedPoly& o) const { return terms_ == o.terms_; }

    GradedPoly& operator+=(const GradedPoly& o);
    GradedPoly& operator-=(const GradedPoly& o);
    GradedPoly operator-() const;
    GradedPoly scaled(const Rational& c) const;

    // Drop terms with half power above max_half_power.
    GradedPoly truncated(int max_half_power) const;
    // Product keeping half powers <= max_half_power.
    GradedPoly mul_truncated(const GradedPoly& o, int max_half_power) const;

    // Coefficient of param^{half_power/2}, as a parameter-free polynomial.
    GradedPoly coefficient(int half_power) const;
    // Multiply by param^{shift/2}.
    GradedPoly shifted(int half_shift) const;
    // Exchange generator families (E <-> F, T1 <-> T2) for the swap symmetry.
    GradedPoly swap_tori() const;

    bool integral_powers() const;
    int max_half_power() const;

    std::string to_string(const std::string& param) const;

private:
    void add_term(const TermKey& k, const Rational& c);
    std::map<TermKey, Rational> terms_;
};

GradedPoly operator+(GradedPoly a, const GradedPoly& b);
GradedPoly operator-(GradedPoly a, const GradedPoly& b);
GradedPoly operator*(const GradedPoly& a, const GradedPoly& b);

std::string rational_to_string(const Rational& r);

using Assignment = std::map<Generator, Complex>;

// Horner evaluation in param^{1/2} (principal root); throws UnassignedGenerator.
Complex evaluate_series(const GradedPoly& s, const Assignment& values, Complex param);

// Generator values for the two-tori series: T1, T2, E_k(tau1), F_k = E_k(tau2).
Assignment eps_assignment(const Tau& tau1, const Tau& tau2, int max_weight, const SeriesTolerance& tol = {});
// Generator values for the self-sewn torus: T, W, L (principal, plus 2 pi i branch),
// E_k(tau), P_k(tau, w).
Assignment rho_assignment(const Tau& tau, Complex w, Complex rho, long long branch, int max_weight,
                          const SeriesTolerance& tol = {});

// Series for (2 pi i Omega11, 2 pi i Omega12, 2 pi i Omega22).
struct SymbolicPeriod {
    GradedPoly omega11;
    GradedPoly omega12;
    GradedPoly omega22;
    int order = 0;
};

inline constexpr int max_symbolic_eps_order = 10;
inline constexpr int max_symbolic_rho_order = 5;

SymbolicPeriod symbolic_period_eps(int max_order);
SymbolicPeriod symbolic_period_rho(int max_order);

}  // namespace sewing::formal
