#include <doctest.h>

#include <random>
#include <vector>

#include "oracles.hpp"
#include "sewing/epsilon_sewing.hpp"
#include "sewing/errors.hpp"
#include "sewing/lattice.hpp"
#include "sewing/special_functions.hpp"

using namespace sewing;

namespace {

const Complex I(0.0, 1.0);

EpsPoint point(Complex t1, Complex t2, Complex eps) { return {Tau(t1), Tau(t2), eps}; }

// Interior points with margin at most max_margin.
std::vector<EpsPoint> random_points(unsigned seed, int count, double max_margin) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<EpsPoint> out;
    while (static_cast<int>(out.size()) < count) {
        const Complex t1(u(gen) - 0.5, 0.85 + 0.6 * u(gen));
        const Complex t2(u(gen) - 0.5, 0.85 + 0.6 * u(gen));
        const double bound = lattice_min(Tau(t1)) * lattice_min(Tau(t2)) / 4.0;
        const Complex eps = std::polar(max_margin * bound * (0.2 + 0.8 * u(gen)), 6.283 * u(gen));
        out.push_back(point(t1, t2, eps));
    }
    return out;
}

Vec3 as_vec(const PeriodMatrix& m) { return {m.omega11, m.omega12, m.omega22}; }

}  // namespace

TEST_SUITE("epsilon_sewing") {

TEST_CASE("domain membership") {
    const DomainCheck a = in_domain_eps(point(I, I, 0.1));
    CHECK(a.inside);
    CHECK(std::abs(a.margin - 0.1 / (pi * pi)) < 1e-12);
    CHECK_FALSE(in_domain_eps(point(I, I, 10.0)).inside);
    CHECK_THROWS_AS(period_matrix_eps(point(I, I, 10.0)), DomainError);

    const EpsPoint p = point(Complex(0.3, 0.9), Complex(-0.2, 1.1), Complex(2.0, 1.0));
    REQUIRE(in_domain_eps(p).inside);
    for (const GElement& g : {GElement::gamma1(SL2::S()), GElement::gamma1(SL2::T()), GElement::gamma2(SL2::S()),
                              GElement::gamma2(SL2::T()), GElement::beta()}) {
        const DomainCheck c = in_domain_eps(g_action_eps(g, p));
        CHECK(c.inside);
        CHECK(std::abs(c.margin - in_domain_eps(p).margin) < 1e-12);
    }
}

TEST_CASE("degeneration") {
    const EpsPoint p = point(Complex(0.3, 0.9), Complex(-0.2, 1.1), 0.0);
    const PeriodMatrix om = period_matrix_eps(p);
    CHECK(om.omega11 == p.tau1.value());
    CHECK(om.omega22 == p.tau2.value());
    CHECK(om.omega12 == Complex(0.0));
}

TEST_CASE("leading terms") {
    const Tau t1(0.1, 1.0);
    const Tau t2(-0.2, 1.3);
    const Complex E2 = eisenstein(2, t1);
    const Complex F2 = eisenstein(2, t2);
    for (Complex eps : {Complex(0.02, 0.0), Complex(0.01, 0.01)}) {
        const PeriodMatrix om = period_matrix_eps({t1, t2, eps});
        const Complex e2 = eps * eps;
        const Complex r11 = two_pi_i * (om.omega11 - t1.value()) - e2 * F2 - e2 * e2 * E2 * F2 * F2;
        const Complex r22 = two_pi_i * (om.omega22 - t2.value()) - e2 * E2 - e2 * e2 * F2 * E2 * E2;
        const Complex r12 = two_pi_i * om.omega12 + eps * (1.0 + e2 * E2 * F2);
        CHECK(std::abs(r11) < std::pow(std::abs(eps), 6));
        CHECK(std::abs(r22) < std::pow(std::abs(eps), 6));
        CHECK(std::abs(r12) < std::pow(std::abs(eps), 5));
    }
}

TEST_CASE("off-diagonal duality") {
    for (const EpsPoint& p : random_points(21, 5, 0.4)) {
        const EpsEvaluation ev = evaluate_eps(p);
        CHECK(std::abs(ev.omega.omega12 - ev.omega12_dual) < 1e-12);
        CHECK(ev.order == 16);
    }
}

TEST_CASE("necklace enumeration structure") {
    // the edgeless necklace already carries the outer eps
    CHECK(enumerate_necklaces_eps(1, 2, 0).empty());
    const auto n12 = enumerate_necklaces_eps(1, 2, 1);
    REQUIRE(n12.size() == 1);
    CHECK(n12[0].edges() == 0);
    CHECK(enumerate_necklaces_eps(1, 1, 1).empty());
    CHECK(enumerate_necklaces_eps(2, 2, 1).empty());
    const auto n22 = enumerate_necklaces_eps(2, 2, 2);
    REQUIRE(n22.size() == 1);
    CHECK(n22[0].node_labels == std::vector<int>{1, 1});
    for (const Necklace& n : enumerate_necklaces_eps(1, 2, 9)) {
        CHECK(n.node_labels.front() == 1);
        CHECK(n.node_labels.back() == 1);
        CHECK(n.eps_exponent() <= 9);
        for (int i = 0; i + 1 < n.edges(); ++i) CHECK(n.edge_type(i) != n.edge_type(i + 1));
    }
    CHECK_THROWS_AS(enumerate_necklaces_eps(1, 2, 200), BudgetExceeded);
}

TEST_CASE("necklace sums against the matrix formula") {
    const EpsPoint p = point(I, 2.0 * I, 0.2);
    const PeriodMatrix none = necklace_period_eps(p, 0);
    CHECK(none.omega11 == p.tau1.value());
    CHECK(none.omega12 == Complex(0.0));
    const PeriodMatrix low = necklace_period_eps(p, 1);
    CHECK(std::abs(low.omega12 + 0.2 / two_pi_i) < 1e-16);

    const PeriodMatrix two = necklace_period_eps(p, 2);
    CHECK(std::abs(two_pi_i * (two.omega11 - p.tau1.value()) - 0.04 * eisenstein(2, p.tau2)) < 1e-15);

    CHECK(max_entry_diff(necklace_period_eps(p, 8), period_matrix_eps(p)) < 1e-10);

    for (const EpsPoint& q : random_points(5, 5, 0.05)) {
        const double e = std::abs(q.eps);
        const double d4 = max_entry_diff(necklace_period_eps(q, 4), period_matrix_eps(q));
        const double d8 = max_entry_diff(necklace_period_eps(q, 8), period_matrix_eps(q));
        CHECK(d4 < 10.0 * std::pow(e, 5));
        CHECK(d8 < 10.0 * std::pow(e, 9) + 1e-15);
    }
}

TEST_CASE("bilinear form") {
    const Tau t1(0.1, 1.0);
    const Tau t2(-0.2, 1.3);
    const Complex x(0.6, 0.4);
    const Complex y(-0.3, 0.7);
    const EpsPoint tiny{t1, t2, 1e-9};
    CHECK(std::abs(bilinear_form_eps(tiny, x, y, 1, 1) - weierstrass_p(2, t1, x - y)) < 1e-8);

    const EpsPoint p{t1, t2, Complex(0.3, 0.2)};
    for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 2; ++b)
            CHECK(std::abs(bilinear_form_eps(p, x, y, a, b) - bilinear_form_eps(p, y, x, b, a)) < 1e-10);

    // mixed-torus density starts at -eps P2(x) P2(y); the remainder is O(eps^2)
    auto rest = [&](double eps) {
        const Complex lead = -eps * weierstrass_p(2, t1, x) * weierstrass_p(2, t2, y);
        return std::abs(bilinear_form_eps({t1, t2, eps}, x, y, 1, 2) - lead) / std::abs(lead);
    };
    CHECK(rest(1e-3) < 1e-2);
    const double ratio = rest(1e-3) / rest(2.5e-4);
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
}

TEST_CASE("G action on points") {
    const EpsPoint b = g_action_eps(GElement::beta(), point(I, 2.0 * I, 0.1));
    CHECK(b.tau1.value() == 2.0 * I);
    CHECK(b.tau2.value() == I);
    CHECK(b.eps == Complex(0.1));

    const EpsPoint t = g_action_eps(GElement::gamma1(SL2::T()), point(I, I, 0.1));
    CHECK(t.tau1.value() == 1.0 + I);
    CHECK(t.tau2.value() == I);
    CHECK(t.eps == Complex(0.1));

    const EpsPoint s = g_action_eps(GElement::gamma1(SL2::S()), point(I, I, 0.1));
    CHECK(std::abs(s.tau1.value() - I) < 1e-15);
    CHECK(std::abs(s.eps - 0.1 / I) < 1e-15);
}

TEST_CASE("Sp4 action on period matrices") {
    const PeriodMatrix om{Complex(0.1, 1.0), Complex(0.02, 0.01), Complex(-0.2, 1.3)};
    const PeriodMatrix b = sp4_action(GElement::beta(), om);
    CHECK(b.omega11 == om.omega22);
    CHECK(b.omega22 == om.omega11);
    CHECK(b.omega12 == om.omega12);
    CHECK(max_entry_diff(sp4_action(GElement::gamma1(SL2::identity()), om), om) < 1e-15);
    const PeriodMatrix t = sp4_action(GElement::gamma1(SL2::T()), om);
    CHECK(std::abs(t.omega11 - om.omega11 - 1.0) < 1e-15);
    CHECK(std::abs(t.omega12 - om.omega12) < 1e-15);
    CHECK(std::abs(t.omega22 - om.omega22) < 1e-15);
    CHECK(GElement::gamma2(SL2::S()).matrix().is_symplectic());
    CHECK(GElement::beta().matrix().is_symplectic());
}

TEST_CASE("equivariance") {
    CHECK(equivariance_residual_eps(GElement::gamma1(SL2::identity()), point(I, 2.0 * I, 0.2)) < 1e-15);
    CHECK(equivariance_residual_eps(GElement::beta(), point(I, 2.0 * I, 0.3)) < 1e-9);
    CHECK(equivariance_residual_eps(GElement::gamma1(SL2::S()), point(I, 2.0 * I, 0.2)) < 1e-8);
    const std::vector<GElement> gens{GElement::gamma1(SL2::S()), GElement::gamma1(SL2::T()),
                                     GElement::gamma2(SL2::S()), GElement::gamma2(SL2::T()), GElement::beta()};
    for (const EpsPoint& p : random_points(9, 3, 0.3))
        for (const GElement& g : gens) CHECK(equivariance_residual_eps(g, p) < 1e-8);
}

TEST_CASE("holomorphy in eps") {
    const Tau t1(0.1, 1.0);
    const Tau t2(-0.2, 1.3);
    const Complex e0(0.5, 0.3);
    auto entry = [&](int which) {
        return [&, which](Complex e) { return as_vec(period_matrix_eps({t1, t2, e}))[which]; };
    };
    const Vec3 centre = as_vec(period_matrix_eps({t1, t2, e0}));
    for (int which = 0; which < 3; ++which)
        CHECK(std::abs(oracle::circle_mean(entry(which), e0, 0.1) - centre[which]) < 1e-8);
}

TEST_CASE("truncation order scaling") {
    const Tau t1(0.1, 1.0);
    const Tau t2(-0.2, 1.3);
    const int N = 6;
    auto gap = [&](Complex e) {
        const EpsPoint p{t1, t2, e};
        return max_entry_diff(period_matrix_eps(p, N), period_matrix_eps(p, N + 2));
    };
    const double g1 = gap(0.8);
    const double g2 = gap(0.4);
    CHECK(g1 / g2 > 0.8 * std::pow(2.0, N + 1));
}

TEST_CASE("Siegel membership") {
    for (const EpsPoint& p : random_points(13, 8, 0.5)) CHECK(period_matrix_eps(p).in_siegel_space());
}

TEST_CASE("inversion") {
    const PeriodMatrix diag{Complex(0.1, 1.0), 0.0, Complex(-0.2, 1.3)};
    const EpsPoint fixed = invert_eps(diag);
    CHECK(std::abs(fixed.eps) < 1e-13);
    CHECK(std::abs(fixed.tau1.value() - diag.omega11) < 1e-13);

    const EpsPoint p = point(I, 2.0 * I, 0.1);
    const EpsInversion inv = invert_eps_report(period_matrix_eps(p));
    CHECK(inv.residual < 1e-12);
    CHECK(std::abs(inv.point.tau1.value() - p.tau1.value()) < 1e-9);
    CHECK(std::abs(inv.point.tau2.value() - p.tau2.value()) < 1e-9);
    CHECK(std::abs(inv.point.eps - p.eps) < 1e-9);

    const EpsPoint seed = seed_eps(period_matrix_eps(p));
    CHECK(std::abs(seed.eps - p.eps) < 1e-2);

    // d(Omega12)/d(eps) = -1/(2 pi i) at eps = 0
    const Complex det = det3(jacobian_eps(point(Complex(0.1, 1.0), Complex(-0.2, 1.3), 0.0)));
    CHECK(std::abs(det + 1.0 / two_pi_i) < 1e-8);
}

}
