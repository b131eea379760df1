#pragma once

#include <array>
#include <optional>

#include "sewing/epsilon_sewing.hpp"
#include "sewing/moments.hpp"
#include "sewing/newton.hpp"
#include "sewing/siegel.hpp"
#include "sewing/types.hpp"

namespace sewing {

// A torus self-sewn at punctures separated by w. The integer branch selects the
// value of log(-rho/K^2) entering Omega22: principal Log plus 2 pi i branch.
struct RhoPoint {
    Tau tau;
    Complex w;
    Complex rho;
    long long branch = 0;
};

// chi = -rho/w^2
struct ChiPoint {
    Tau tau;
    Complex w;
    Complex chi;
};

// |w - lambda| > 2 |rho|^{1/2} > 0 for every lattice point; margin = 2|rho|^{1/2}/dist.
DomainCheck in_domain_rho(const RhoPoint& p);

struct RhoEvaluation {
    PeriodMatrix omega;
    double margin = 0.0;
    int order = 0;
    // Log(-rho/K^2) + 2 pi i branch
    Complex log_term;
    SelfSewingContractions contractions;
};

RhoEvaluation evaluate_rho(const RhoPoint& p, int N = 16, const SeriesTolerance& tol = {});
PeriodMatrix period_matrix_rho(const RhoPoint& p, int N = 16, const SeriesTolerance& tol = {});

// Weighted path sums over nodes (k,a), truncated by total rho exponent.
struct RhoNecklaceSums {
    Complex omega11;
    Complex omega_beta1;
    Complex omega_1betabar;
    Complex omega_betabetabar;
    long long count = 0;
};

RhoNecklaceSums necklace_sums_rho(const RhoPoint& p, int max_rho_order, const SeriesTolerance& tol = {});
PeriodMatrix necklace_period_rho(const RhoPoint& p, int max_rho_order, const SeriesTolerance& tol = {});

struct LElement {
    enum class Kind { mu, gamma1 };
    Kind kind = Kind::mu;
    long long a = 0, b = 0, c = 0;
    SL2 g{};

    static LElement heisenberg(long long a, long long b, long long c) { return {Kind::mu, a, b, c, {}}; }
    static LElement gamma(const SL2& g) { return {Kind::gamma1, 0, 0, 0, g}; }

    Sp4 matrix() const;
};

// Transports the branch so that the lifted logarithm follows the group law.
RhoPoint l_action_rho(const LElement& g, const RhoPoint& p, const SeriesTolerance& tol = {});
PeriodMatrix sp4_action(const LElement& g, const PeriodMatrix& omega);
double equivariance_residual_rho(const LElement& g, const RhoPoint& p, int N = 16, const SeriesTolerance& tol = {});

// Leading terms in w at fixed chi.
PeriodMatrix degeneration_period(const ChiPoint& c, const SeriesTolerance& tol = {});

DomainCheck in_domain_chi(const ChiPoint& c);

// Omega(tau, w, -w^2 chi) with log(-rho/K^2) continued as log chi + 2 log(w/K);
// continuous through w = 0.
PeriodMatrix period_matrix_chi(const ChiPoint& c, int N = 16, const SeriesTolerance& tol = {});

// The branch used by period_matrix_chi at w != 0.
RhoPoint rho_point_from_chi(const ChiPoint& c, const SeriesTolerance& tol = {});

ChiPoint seed_chi(const PeriodMatrix& target);

struct ChiInversion {
    ChiPoint point;
    double residual = 0.0;
    int iterations = 0;
};

ChiInversion invert_chi_report(const PeriodMatrix& target, std::optional<ChiPoint> seed = {},
                               double newton_tol = 1e-12, int N = 16, const SeriesTolerance& tol = {});
ChiPoint invert_chi(const PeriodMatrix& target, std::optional<ChiPoint> seed = {}, double newton_tol = 1e-12,
                    int N = 16, const SeriesTolerance& tol = {});

// d(Omega11, Omega22, Omega12) / d(tau, w, chi)
std::array<Vec3, 3> jacobian_chi(const ChiPoint& c, int N = 16, const SeriesTolerance& tol = {});

// (F^eps)^{-1} applied to F^chi(c).
EpsPoint eps_from_rho(const ChiPoint& c, int N = 16, double newton_tol = 1e-12, const SeriesTolerance& tol = {});

}  // namespace sewing
