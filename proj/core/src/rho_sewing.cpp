#include "sewing/rho_sewing.hpp"

#include <cmath>
#include <functional>
#include <vector>

#include "sewing/lattice.hpp"
#include "sewing/special_functions.hpp"
#include "sewing/sphere_models.hpp"

namespace sewing {
namespace {

void check_order(int N) {
    if (N < 1) throw InvalidArgument("truncation order must be >= 1");
}

void require_domain(const RhoPoint& p, const char* where) {
    const DomainCheck d = in_domain_rho(p);
    if (!d.inside)
        throw DomainError(std::string(where) + ": point outside the rho sewing domain (margin " +
                          std::to_string(d.margin) + ")");
}

Complex principal_log_term(const Tau& tau, Complex w, Complex rho, const SeriesTolerance& tol) {
    const Complex k = prime_form(tau, w, tol);
    return std::log(-rho / (k * k));
}

long long nearest_integer_checked(Complex x, const char* where) {
    const double r = std::round(x.real());
    if (std::abs(x.real() - r) > 1e-6 || std::abs(x.imag()) > 1e-6)
        throw Error(std::string(where) + ": logarithm shift is not an integer multiple of 2 pi i");
    return static_cast<long long>(r);
}

}  // namespace

DomainCheck in_domain_rho(const RhoPoint& p) {
    if (p.rho == 0.0 || !std::isfinite(std::abs(p.rho)) || !std::isfinite(std::abs(p.w))) return {false, INFINITY};
    const double dist = lattice_distance(p.tau, p.w);
    const double margin = 2.0 * std::sqrt(std::abs(p.rho)) / dist;
    return {std::isfinite(margin) && margin < 1.0, margin};
}

RhoEvaluation evaluate_rho(const RhoPoint& p, int N, const SeriesTolerance& tol) {
    check_order(N);
    tol.validate();
    require_domain(p, "period_matrix_rho");
    const RhoMoments m = rho_moments(p.tau, p.w, p.rho, N, tol);
    RhoEvaluation out;
    out.margin = in_domain_rho(p).margin;
    out.order = N;
    out.contractions = contract_self_sewing(m.r, m.beta);
    out.log_term = principal_log_term(p.tau, p.w, p.rho, tol) + two_pi_i * static_cast<double>(p.branch);
    const auto& c = out.contractions;
    out.omega.omega11 = p.tau.value() - p.rho * c.sigma11 / two_pi_i;
    out.omega.omega12 = (p.w - std::sqrt(p.rho) * c.sigma_beta) / two_pi_i;
    out.omega.omega22 = (out.log_term - c.beta_beta) / two_pi_i;
    return out;
}

PeriodMatrix period_matrix_rho(const RhoPoint& p, int N, const SeriesTolerance& tol) {
    return evaluate_rho(p, N, tol).omega;
}

namespace {

// Paths of nodes (k,a). Exponents are counted in half powers of rho.
class RhoPathSum {
public:
    RhoPathSum(const RhoMoments& m, int budget) : m_(m), budget_(budget) {}

    // Sum over paths start -> end of start_w * prod R * end_w, with start/end
    // weight functions returning the weight and its half-power cost.
    template <class StartW, class EndW>
    Complex sum(int prefactor, StartW start_w, EndW end_w) {
        total_ = 0.0;
        const int kmax = m_.r.order();
        for (int a = 1; a <= 2; ++a)
            for (int k = 1; k <= kmax; ++k) {
                const auto [w0, h0] = start_w(k, a);
                if (w0 == 0.0 || prefactor + h0 > budget_) continue;
                walk(k, a, w0, prefactor + h0, end_w);
            }
        return total_;
    }

    long long count() const { return count_; }

private:
    template <class EndW>
    void walk(int k, int a, Complex weight, int h, EndW& end_w) {
        const auto [we, he] = end_w(k, a);
        if (we != 0.0 && h + he <= budget_) {
            total_ += weight * we;
            if (++count_ > necklace_budget) throw BudgetExceeded("rho necklace enumeration exceeded its budget");
        }
        const int kmax = m_.r.order();
        for (int b = 1; b <= 2; ++b)
            for (int l = 1; l <= kmax; ++l) {
                const int hn = h + k + l;
                if (hn > budget_) break;
                const Complex r = m_.r(a, b, k, l);
                if (r == 0.0) continue;
                walk(l, b, weight * r, hn, end_w);
            }
    }

    const RhoMoments& m_;
    int budget_;
    Complex total_ = 0.0;
    long long count_ = 0;
};

}  // namespace

RhoNecklaceSums necklace_sums_rho(const RhoPoint& p, int max_rho_order, const SeriesTolerance& tol) {
    require_domain(p, "necklace_period_rho");
    if (max_rho_order < 0) throw InvalidArgument("max_rho_order must be >= 0");
    if (max_rho_order > 12) throw BudgetExceeded("rho necklace order above 12 is not supported");
    const int budget = 2 * max_rho_order;
    const int kmax = std::max(1, budget);
    const RhoMoments m = rho_moments(p.tau, p.w, p.rho, kmax, tol);
    const MomentVector bbar = m.beta.swapped();
    using WH = std::pair<Complex, int>;
    auto unit_at_one = [](int k, int) -> WH { return {k == 1 ? 1.0 : 0.0, 0}; };
    auto beta_w = [&](int k, int a) -> WH { return {m.beta(a, k), k}; };
    auto bbar_w = [&](int k, int a) -> WH { return {bbar(a, k), k}; };

    RhoNecklaceSums out;
    RhoPathSum walker(m, budget);
    // 2 pi i Omega11: rho * paths (1,a) -> (1,b)
    out.omega11 = walker.sum(2, unit_at_one, unit_at_one);
    // 2 pi i Omega12: rho^{1/2} * beta paths
    out.omega_beta1 = walker.sum(1, beta_w, unit_at_one);
    out.omega_1betabar = walker.sum(1, unit_at_one, bbar_w);
    out.omega_betabetabar = walker.sum(0, beta_w, bbar_w);
    out.count = walker.count();
    return out;
}

PeriodMatrix necklace_period_rho(const RhoPoint& p, int max_rho_order, const SeriesTolerance& tol) {
    const RhoNecklaceSums s = necklace_sums_rho(p, max_rho_order, tol);
    const Complex log_term = principal_log_term(p.tau, p.w, p.rho, tol) + two_pi_i * static_cast<double>(p.branch);
    return {p.tau.value() - p.rho * s.omega11 / two_pi_i, (p.w - std::sqrt(p.rho) * s.omega_beta1) / two_pi_i,
            (log_term - s.omega_betabetabar) / two_pi_i};
}

Sp4 LElement::matrix() const {
    if (kind == Kind::mu) return mu_matrix(a, b, c);
    if (!g.valid()) throw InvalidArgument("LElement: determinant must be 1");
    return embed_gamma1(g);
}

RhoPoint l_action_rho(const LElement& g, const RhoPoint& p, const SeriesTolerance& tol) {
    require_domain(p, "l_action_rho");
    const Complex tau = p.tau.value();
    const Complex old_log = principal_log_term(p.tau, p.w, p.rho, tol);
    RhoPoint out = p;
    Complex shift;  // lifted log(new) - lifted log(old)
    if (g.kind == LElement::Kind::mu) {
        const double a = static_cast<double>(g.a), b = static_cast<double>(g.b);
        out.w = p.w + two_pi_i * (a * tau + b);
        shift = two_pi_i * a * a * tau + 2.0 * a * p.w + two_pi_i * static_cast<double>(g.a * g.b + g.c);
    } else {
        if (!g.g.valid()) throw InvalidArgument("LElement: determinant must be 1");
        const Complex j = g.g.cocycle(tau);
        out.tau = g.g.act(p.tau);
        out.w = p.w / j;
        out.rho = p.rho / (j * j);
        shift = -static_cast<double>(g.g.c) * p.w * p.w / (two_pi_i * j);
    }
    const Complex new_log = principal_log_term(out.tau, out.w, out.rho, tol);
    out.branch = p.branch + nearest_integer_checked((old_log + shift - new_log) / two_pi_i, "l_action_rho");
    return out;
}

PeriodMatrix sp4_action(const LElement& g, const PeriodMatrix& omega) { return sp4_act(g.matrix(), omega); }

double equivariance_residual_rho(const LElement& g, const RhoPoint& p, int N, const SeriesTolerance& tol) {
    const PeriodMatrix lhs = period_matrix_rho(l_action_rho(g, p, tol), N, tol);
    const PeriodMatrix rhs = sp4_action(g, period_matrix_rho(p, N, tol));
    return max_entry_diff(lhs, rhs);
}

DomainCheck in_domain_chi(const ChiPoint& c) {
    const double achi = std::abs(c.chi);
    if (!(achi > 0.0) || !(achi < 0.25)) return {false, INFINITY};
    const double chi_margin = 2.0 * std::sqrt(achi);
    if (c.w == 0.0) return {true, chi_margin};
    const DomainCheck d = in_domain_rho(RhoPoint{c.tau, c.w, -c.w * c.w * c.chi, 0});
    return {d.inside, std::max(d.margin, chi_margin)};
}

PeriodMatrix degeneration_period(const ChiPoint& c, const SeriesTolerance& tol) {
    const double achi = std::abs(c.chi);
    if (!(achi > 0.0) || !(achi < 0.25)) throw DomainError("degeneration_period: need 0 < |chi| < 1/4");
    const Complex f = catalan_f(c.chi);
    const Complex logf = log_catalan_f(c.chi);
    const Complex s = std::sqrt(1.0 - 4.0 * c.chi);
    const Complex g = 1.0 / 12.0 + eisenstein_from_nome(2, f, tol);
    const Complex e2 = eisenstein(2, c.tau, tol);
    const Complex u = c.w * c.w * (1.0 - 4.0 * c.chi);
    return {c.tau.value() + u * g / two_pi_i, c.w * s * (1.0 + u * e2 * g) / two_pi_i, (logf + u * e2) / two_pi_i};
}

RhoPoint rho_point_from_chi(const ChiPoint& c, const SeriesTolerance& tol) {
    if (c.w == 0.0) throw DomainError("rho chart excludes w = 0");
    const Complex rho = -c.w * c.w * c.chi;
    const Complex k = prime_form(c.tau, c.w, tol);
    const Complex lifted = std::log(c.chi) + 2.0 * std::log(c.w / k);
    const Complex principal = std::log(-rho / (k * k));
    const long long branch = nearest_integer_checked((lifted - principal) / two_pi_i, "rho_point_from_chi");
    return {c.tau, c.w, rho, branch};
}

PeriodMatrix period_matrix_chi(const ChiPoint& c, int N, const SeriesTolerance& tol) {
    const DomainCheck d = in_domain_chi(c);
    if (!d.inside) throw DomainError("period_matrix_chi: point outside the chi domain");
    // Below this size the O(w^4) remainder of the leading formulas is beneath
    // double precision, and P_k(w) would overflow for large k.
    if (std::abs(c.w) < 1e-6) return degeneration_period(c, tol);
    return period_matrix_rho(rho_point_from_chi(c, tol), N, tol);
}

ChiPoint seed_chi(const PeriodMatrix& target) {
    const Complex f = std::exp(two_pi_i * target.omega22);
    const Complex chi = f / ((1.0 + f) * (1.0 + f));
    const Complex w = two_pi_i * target.omega12 / std::sqrt(1.0 - 4.0 * chi);
    return {Tau(target.omega11), w, chi};
}

ChiInversion invert_chi_report(const PeriodMatrix& target, std::optional<ChiPoint> seed, double newton_tol, int N,
                               const SeriesTolerance& tol) {
    check_order(N);
    if (!(newton_tol > 0.0)) throw InvalidArgument("newton_tol must be positive");
    if (!(target.omega11.imag() > 0.0)) throw DomainError("invert_chi: Omega11 must lie in the upper half-plane");
    const ChiPoint s = seed ? *seed : seed_chi(target);
    auto to_point = [](const Vec3& x) { return ChiPoint{Tau(x[0]), x[1], x[2]}; };
    auto f = [&](const Vec3& x) {
        const PeriodMatrix o = period_matrix_chi(to_point(x), N, tol);
        return Vec3{o.omega11, o.omega12, o.omega22};
    };
    auto inside = [](const Vec3& x) {
        if (!(x[0].imag() > 0.0)) return false;
        return in_domain_chi(ChiPoint{Tau(x[0]), x[1], x[2]}).inside;
    };
    NewtonOptions opt;
    opt.tol = newton_tol;
    const NewtonResult r = newton_solve3(f, {target.omega11, target.omega12, target.omega22},
                                         {s.tau.value(), s.w, s.chi}, inside, opt);
    return {to_point(r.x), r.residual, r.iterations};
}

ChiPoint invert_chi(const PeriodMatrix& target, std::optional<ChiPoint> seed, double newton_tol, int N,
                    const SeriesTolerance& tol) {
    return invert_chi_report(target, seed, newton_tol, N, tol).point;
}

std::array<Vec3, 3> jacobian_chi(const ChiPoint& c, int N, const SeriesTolerance& tol) {
    auto f = [&](const Vec3& x) {
        const PeriodMatrix o = period_matrix_chi(ChiPoint{Tau(x[0]), x[1], x[2]}, N, tol);
        return Vec3{o.omega11, o.omega22, o.omega12};
    };
    return holomorphic_jacobian(f, {c.tau.value(), c.w, c.chi});
}

EpsPoint eps_from_rho(const ChiPoint& c, int N, double newton_tol, const SeriesTolerance& tol) {
    const PeriodMatrix omega = period_matrix_chi(c, N, tol);
    const Complex u = c.w * c.w * (1.0 - 4.0 * c.chi);
    const EpsPoint seed{Tau(c.tau.value() + u / (12.0 * two_pi_i)), Tau(log_catalan_f(c.chi) / two_pi_i),
                        -c.w * std::sqrt(1.0 - 4.0 * c.chi)};
    return invert_eps(omega, seed, newton_tol, N, tol);
}

}  // namespace sewing
