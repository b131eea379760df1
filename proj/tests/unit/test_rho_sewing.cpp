#include <doctest.h>

#include <vector>

#include "oracles.hpp"
#include "sewing/errors.hpp"
#include "sewing/rho_sewing.hpp"
#include "sewing/special_functions.hpp"
#include "sewing/sphere_models.hpp"

using namespace sewing;

namespace {

const Complex I(0.0, 1.0);

std::vector<RhoPoint> sample_points() {
    return {{Tau(0.1, 1.0), Complex(0.5, 0.3), Complex(0.01, 0.0)},
            {Tau(-0.3, 1.2), Complex(-0.4, 1.1), Complex(0.004, 0.003)},
            {Tau(0.0, 1.0), Complex(1.0, 0.8), Complex(-0.008, 0.002)}};
}

bool same(const Sp4& a, const Sp4& b) { return a.m == b.m; }

}  // namespace

TEST_SUITE("rho_sewing") {

TEST_CASE("domain membership") {
    CHECK(in_domain_rho({Tau(0.0, 1.0), pi * I, 0.01}).inside);
    CHECK_FALSE(in_domain_rho({Tau(0.0, 1.0), pi * I, 3.0}).inside);
    CHECK_FALSE(in_domain_rho({Tau(0.0, 1.0), pi * I, 0.0}).inside);
    CHECK_FALSE(in_domain_rho({Tau(0.0, 1.0), two_pi_i + 0.05, 0.01}).inside);
    CHECK_THROWS_AS(period_matrix_rho({Tau(0.0, 1.0), pi * I, 3.0}), DomainError);
}

TEST_CASE("leading terms") {
    const Tau tau(0.1, 1.0);
    const Complex w(0.5, 0.3);
    const Complex E2 = eisenstein(2, tau);
    const auto P = weierstrass_p_all(2, tau, w);
    const Complex K = prime_form(tau, w);
    auto residuals = [&](Complex rho) {
        const PeriodMatrix om = period_matrix_rho({tau, w, rho});
        return std::array<double, 3>{
            std::abs(two_pi_i * om.omega11 - two_pi_i * tau.value() + 2.0 * rho - 2.0 * (P[2] + E2) * rho * rho),
            std::abs(two_pi_i * om.omega12 - w - 2.0 * P[1] * rho),
            std::abs(two_pi_i * om.omega22 - std::log(-rho / (K * K)) + 2.0 * P[1] * P[1] * rho)};
    };
    const auto a = residuals(0.004);
    const auto b = residuals(0.002);
    CHECK(a[0] / b[0] > 6.0);  // O(rho^3)
    CHECK(a[1] / b[1] > 3.0);  // O(rho^2)
    CHECK(a[1] / b[1] < 5.0);
    CHECK(a[2] / b[2] > 3.0);
    CHECK(a[0] < 1e-5);
    CHECK(a[1] < 1e-3);
}

TEST_CASE("necklace sums") {
    for (const RhoPoint& p : sample_points()) {
        const RhoNecklaceSums s = necklace_sums_rho(p, 4);
        CHECK(std::abs(s.omega_beta1 - s.omega_1betabar) < 1e-14);
        CHECK(s.count > 0);
    }
    const RhoPoint p = sample_points()[0];
    const PeriodMatrix one = necklace_period_rho(p, 1);
    CHECK(std::abs(two_pi_i * (one.omega11 - p.tau.value()) + 2.0 * p.rho) < 5.0 * std::norm(p.rho));

    const PeriodMatrix exact = period_matrix_rho(p, 20);
    double previous = 1.0;
    for (int order = 2; order <= 4; ++order) {
        const double d = max_entry_diff(necklace_period_rho(p, order), exact);
        CHECK(d < previous / 10.0);
        previous = d;
    }
    // order-4 truncation drops rho^5
    RhoPoint half = p;
    half.rho = p.rho / 2.0;
    const double ratio = previous / max_entry_diff(necklace_period_rho(half, 4), period_matrix_rho(half, 20));
    CHECK(ratio > 24.0);
    CHECK(ratio < 40.0);
}

TEST_CASE("L action on points") {
    const RhoPoint p{Tau(0.0, 1.0), 1.0, 0.001};
    const RhoPoint b = l_action_rho(LElement::heisenberg(0, 1, 0), p);
    CHECK(b.tau.value() == I);
    CHECK(std::abs(b.w - (1.0 + two_pi_i)) < 1e-15);
    CHECK(b.rho == Complex(0.001));

    const RhoPoint t = l_action_rho(LElement::gamma(SL2::T()), p);
    CHECK(t.tau.value() == 1.0 + I);
    CHECK(t.w == p.w);
    CHECK(t.rho == p.rho);

    const RhoPoint s = l_action_rho(LElement::gamma(SL2::S()), p);
    CHECK(std::abs(s.tau.value() - I) < 1e-15);
    CHECK(std::abs(s.w - 1.0 / I) < 1e-15);
    CHECK(std::abs(s.rho + 0.001) < 1e-18);
}

TEST_CASE("equivariance") {
    const std::vector<LElement> gens{LElement::heisenberg(1, 0, 0), LElement::heisenberg(0, 1, 0),
                                     LElement::heisenberg(0, 0, 1), LElement::gamma(SL2::T()),
                                     LElement::gamma(SL2::S())};
    for (const RhoPoint& p : sample_points()) {
        for (const LElement& g : gens) CHECK(equivariance_residual_rho(g, p, 20) < 1e-8);
        CHECK(equivariance_residual_rho(LElement::heisenberg(0, 0, 1), p, 20) < 1e-12);
        const PeriodMatrix a = period_matrix_rho(p, 20);
        const PeriodMatrix c = period_matrix_rho(l_action_rho(LElement::heisenberg(0, 0, 1), p), 20);
        CHECK(std::abs(c.omega22 - a.omega22 - 1.0) < 1e-12);
    }
}

TEST_CASE("branch bookkeeping") {
    for (RhoPoint p : sample_points()) {
        const PeriodMatrix a = period_matrix_rho(p);
        p.branch += 1;
        const PeriodMatrix b = period_matrix_rho(p);
        CHECK(std::abs(b.omega22 - a.omega22 - 1.0) < 1e-14);
        CHECK(std::abs(std::exp(two_pi_i * b.omega22) - std::exp(two_pi_i * a.omega22)) <
              1e-10 * std::abs(std::exp(two_pi_i * a.omega22)));
        CHECK(b.omega11 == a.omega11);
        CHECK(b.omega12 == a.omega12);
    }
}

TEST_CASE("Heisenberg relation") {
    const Sp4 A = mu_matrix(1, 0, 0);
    const Sp4 B = mu_matrix(0, 1, 0);
    const Sp4 C = mu_matrix(0, 0, 1);
    CHECK((same(A * B, B * A * C * C) || same(B * A, A * B * C * C)));

    const RhoPoint p = sample_points()[1];
    const LElement a = LElement::heisenberg(1, 0, 0);
    const LElement b = LElement::heisenberg(0, 1, 0);
    const RhoPoint ab = l_action_rho(a, l_action_rho(b, p));
    const RhoPoint ba = l_action_rho(b, l_action_rho(a, p));
    CHECK(std::abs(ab.w - ba.w) < 1e-14);
    CHECK(std::llabs(ab.branch - ba.branch) == 2);
    const double shift = (period_matrix_rho(ab).omega22 - period_matrix_rho(ba).omega22).real();
    CHECK(std::abs(std::abs(shift) - 2.0) < 1e-12);
}

TEST_CASE("Siegel membership") {
    for (const RhoPoint& p : sample_points()) {
        const PeriodMatrix om = period_matrix_rho(p);
        CHECK(om.in_siegel_space());
        RhoPoint smaller = p;
        smaller.rho = p.rho / 100.0;
        const double gain = period_matrix_rho(smaller).omega22.imag() - om.omega22.imag();
        CHECK(std::abs(gain - std::log(100.0) / (2.0 * pi)) < 0.05);
    }
}

TEST_CASE("degeneration") {
    const Tau tau(0.0, 1.0);
    const Complex chi = 0.05;
    const PeriodMatrix at0 = period_matrix_chi({tau, 0.0, chi});
    CHECK(at0.omega11 == tau.value());
    CHECK(at0.omega12 == Complex(0.0));
    CHECK(std::abs(at0.omega22 - std::log(catalan_f(chi)) / two_pi_i) < 1e-15);

    const PeriodMatrix small = degeneration_period({tau, 0.1, 1e-9});
    CHECK(std::abs(two_pi_i * (small.omega11 - tau.value())) < 1e-9);

    auto err = [&](double w) { return max_entry_diff(period_matrix_chi({tau, w, chi}), degeneration_period({tau, w, chi})); };
    const double ratio = err(0.2) / err(0.1);
    CHECK(ratio > 12.0);
    CHECK(ratio < 20.0);
    CHECK_THROWS_AS(degeneration_period({tau, 0.1, 0.3}), DomainError);
}

TEST_CASE("chi inversion") {
    const Tau tau(0.1, 1.1);
    const Complex chi0 = 0.05;
    const PeriodMatrix diag{tau.value(), 0.0, std::log(catalan_f(chi0)) / two_pi_i};
    const ChiPoint fixed = invert_chi(diag);
    CHECK(std::abs(fixed.w) < 1e-12);
    CHECK(std::abs(fixed.chi - chi0) < 1e-12);

    const ChiPoint c{Tau(0.0, 1.0), 0.3, 0.05};
    const ChiInversion inv = invert_chi_report(period_matrix_chi(c));
    CHECK(std::abs(inv.point.tau.value() - c.tau.value()) < 1e-9);
    CHECK(std::abs(inv.point.w - c.w) < 1e-9);
    CHECK(std::abs(inv.point.chi - c.chi) < 1e-9);

    const Complex det = det3(jacobian_chi({Tau(0.0, 1.0), 0.0, 0.05}));
    CHECK(std::abs(det - 1.0 / (4.0 * pi * pi * 0.05)) < 1e-5);
}

TEST_CASE("eps chart from rho chart") {
    const Tau tau(0.0, 1.0);
    const Complex chi = 0.05;
    const EpsPoint at0 = eps_from_rho({tau, 0.0, chi});
    CHECK(std::abs(at0.eps) < 1e-12);
    CHECK(std::abs(at0.tau2.value() - std::log(catalan_f(chi)) / two_pi_i) < 1e-12);

    const double w = 0.05;
    const EpsPoint e = eps_from_rho({tau, w, chi});
    const Complex ratio = e.eps / (-w * std::sqrt(1.0 - 4.0 * chi));
    CHECK(std::abs(ratio - 1.0) < 1e-3);
    const Complex t1_lead = tau.value() + w * w * (1.0 - 4.0 * chi) / (12.0 * two_pi_i);
    CHECK(std::abs(e.tau1.value() - t1_lead) < 1e-3 * std::abs(t1_lead));

    const EpsPoint shifted = eps_from_rho({Tau(tau.value() + 1.0), w, chi});
    CHECK(std::abs(shifted.eps - e.eps) < 1e-7);
    CHECK(std::abs(shifted.tau2.value() - e.tau2.value()) < 1e-7);
    CHECK(std::abs(shifted.tau1.value() - e.tau1.value() - 1.0) < 1e-7);
}

}
