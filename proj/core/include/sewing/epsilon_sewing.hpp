#pragma once

#include <array>
#include <optional>
#include <vector>

#include "sewing/moments.hpp"
#include "sewing/newton.hpp"
#include "sewing/siegel.hpp"
#include "sewing/types.hpp"

namespace sewing {

// Two tori sewn with parameter eps.
struct EpsPoint {
    Tau tau1;
    Tau tau2;
    Complex eps;
};

struct DomainCheck {
    bool inside = false;
    // |param| relative to the domain bound; < 1 inside
    double margin = 0.0;
};

// |eps| < D(tau1) D(tau2) / 4 with D the shortest lattice vector length.
DomainCheck in_domain_eps(const EpsPoint& p);

struct EpsEvaluation {
    PeriodMatrix omega;
    // Omega12 through (I - A2 A1)^{-1}; equals omega.omega12 up to rounding
    Complex omega12_dual;
    double margin = 0.0;
    int order = 0;
};

EpsEvaluation evaluate_eps(const EpsPoint& p, int N = 16, const SeriesTolerance& tol = {});
PeriodMatrix period_matrix_eps(const EpsPoint& p, int N = 16, const SeriesTolerance& tol = {});

// Path graph with node labels k_0 = 1, k_1, ..., k_n = 1 and alternating edge types.
struct Necklace {
    std::vector<int> node_labels;
    int first_edge_type = 1;

    int edges() const { return static_cast<int>(node_labels.size()) - 1; }
    int edge_type(int i) const { return (i % 2 == 0) ? first_edge_type : 3 - first_edge_type; }
    // power of eps carried by the contribution to 2 pi i Omega (includes the outer eps)
    int eps_exponent() const;
};

// Necklaces of type (a,b): first edge of type a, last edge of type b.
// The type-12 set includes the edgeless necklace.
std::vector<Necklace> enumerate_necklaces_eps(int first_type, int last_type, int max_eps_order);

inline constexpr long long necklace_budget = 2'000'000;

PeriodMatrix necklace_period_eps(const EpsPoint& p, int max_eps_order, const SeriesTolerance& tol = {});

// Density f(x,y) of the genus-two bilinear form, x on torus a, y on torus b.
Complex bilinear_form_eps(const EpsPoint& p, Complex x, Complex y, int a, int b, int N = 16,
                          const SeriesTolerance& tol = {});

struct GElement {
    enum class Kind { gamma1, gamma2, beta_swap };
    Kind kind = Kind::gamma1;
    SL2 g{};

    static GElement gamma1(const SL2& g) { return {Kind::gamma1, g}; }
    static GElement gamma2(const SL2& g) { return {Kind::gamma2, g}; }
    static GElement beta() { return {Kind::beta_swap, {}}; }

    Sp4 matrix() const;
};

EpsPoint g_action_eps(const GElement& g, const EpsPoint& p);
PeriodMatrix sp4_action(const GElement& g, const PeriodMatrix& omega);
double equivariance_residual_eps(const GElement& g, const EpsPoint& p, int N = 16, const SeriesTolerance& tol = {});

// Leading-order inverse of F^eps near a degeneration point.
EpsPoint seed_eps(const PeriodMatrix& target, const SeriesTolerance& tol = {});

struct EpsInversion {
    EpsPoint point;
    double residual = 0.0;
    int iterations = 0;
};

EpsInversion invert_eps_report(const PeriodMatrix& target, std::optional<EpsPoint> seed = {},
                               double newton_tol = 1e-12, int N = 16, const SeriesTolerance& tol = {});
EpsPoint invert_eps(const PeriodMatrix& target, std::optional<EpsPoint> seed = {}, double newton_tol = 1e-12,
                    int N = 16, const SeriesTolerance& tol = {});

// d(Omega11, Omega22, Omega12) / d(tau1, tau2, eps)
std::array<Vec3, 3> jacobian_eps(const EpsPoint& p, int N = 16, const SeriesTolerance& tol = {});

Complex det3(const std::array<Vec3, 3>& m);

}  // namespace sewing
