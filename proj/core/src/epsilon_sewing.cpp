#include "sewing/epsilon_sewing.hpp"

#include <cmath>
#include <functional>

#include "sewing/lattice.hpp"
#include "sewing/special_functions.hpp"

namespace sewing {
namespace {

void check_order(int N) {
    if (N < 1) throw InvalidArgument("truncation order must be >= 1");
}

void require_domain(const EpsPoint& p, const char* where) {
    const DomainCheck d = in_domain_eps(p);
    if (!d.inside)
        throw DomainError(std::string(where) + ": point outside the eps sewing domain (margin " +
                          std::to_string(d.margin) + ")");
}

}  // namespace

DomainCheck in_domain_eps(const EpsPoint& p) {
    const double bound = 0.25 * lattice_min(p.tau1) * lattice_min(p.tau2);
    const double margin = std::abs(p.eps) / bound;
    return {std::isfinite(margin) && margin < 1.0, margin};
}

EpsEvaluation evaluate_eps(const EpsPoint& p, int N, const SeriesTolerance& tol) {
    check_order(N);
    tol.validate();
    require_domain(p, "period_matrix_eps");
    EpsEvaluation out;
    out.margin = in_domain_eps(p).margin;
    out.order = N;
    if (p.eps == 0.0) {
        out.omega = {p.tau1.value(), 0.0, p.tau2.value()};
        out.omega12_dual = 0.0;
        return out;
    }
    const Matrix a1 = a_matrix(p.tau1, p.eps, N, tol).entries();
    const Matrix a2 = a_matrix(p.tau2, p.eps, N, tol).entries();
    const Vector e1 = Vector::Unit(N, 0);
    const Vector x = solve_id_minus(Matrix(a1 * a2), e1);  // (I - A1 A2)^{-1} e1
    const Vector y = solve_id_minus(Matrix(a2 * a1), e1);  // (I - A2 A1)^{-1} e1
    const Complex eps = p.eps;
    out.omega.omega11 = p.tau1.value() + eps * (a2.row(0) * x)(0) / two_pi_i;
    out.omega.omega22 = p.tau2.value() + eps * (a1.row(0) * y)(0) / two_pi_i;
    out.omega.omega12 = -eps * x(0) / two_pi_i;
    out.omega12_dual = -eps * y(0) / two_pi_i;
    return out;
}

PeriodMatrix period_matrix_eps(const EpsPoint& p, int N, const SeriesTolerance& tol) {
    return evaluate_eps(p, N, tol).omega;
}

int Necklace::eps_exponent() const {
    if (edges() == 0) return 1;
    int s = 2;
    for (std::size_t i = 1; i + 1 < node_labels.size(); ++i) s += node_labels[i];
    return s;
}

namespace {

// Depth-first generation. Only odd labels occur: an edge (k,l) with k+l odd has
// zero weight.
void grow(std::vector<int>& labels, int next_type, int last_type, int exponent, int max_order,
          std::vector<Necklace>& out, int first_type) {
    if (next_type == last_type) {
        Necklace n;
        n.node_labels = labels;
        n.node_labels.push_back(1);
        n.first_edge_type = first_type;
        out.push_back(std::move(n));
        if (static_cast<long long>(out.size()) > necklace_budget)
            throw BudgetExceeded("necklace enumeration exceeded its budget");
    }
    for (int k = 1; exponent + k <= max_order; k += 2) {
        labels.push_back(k);
        grow(labels, 3 - next_type, last_type, exponent + k, max_order, out, first_type);
        labels.pop_back();
    }
}

}  // namespace

std::vector<Necklace> enumerate_necklaces_eps(int first_type, int last_type, int max_eps_order) {
    if ((first_type != 1 && first_type != 2) || (last_type != 1 && last_type != 2))
        throw InvalidArgument("necklace edge types are 1 or 2");
    if (max_eps_order < 0) throw InvalidArgument("max_eps_order must be >= 0");
    std::vector<Necklace> out;
    if (first_type != last_type && max_eps_order >= 1) {
        // edgeless necklace N0, counted with type 12 and 21
        out.push_back(Necklace{{1}, first_type});
    }
    if (max_eps_order < 2) return out;
    std::vector<int> labels{1};
    grow(labels, first_type, last_type, 2, max_eps_order, out, first_type);
    return out;
}

PeriodMatrix necklace_period_eps(const EpsPoint& p, int max_eps_order, const SeriesTolerance& tol) {
    require_domain(p, "necklace_period_eps");
    tol.validate();
    const auto n11 = enumerate_necklaces_eps(2, 2, max_eps_order);
    const auto n22 = enumerate_necklaces_eps(1, 1, max_eps_order);
    const auto n12 = enumerate_necklaces_eps(1, 2, max_eps_order);
    int kmax = 1;
    for (const auto* set : {&n11, &n22, &n12})
        for (const auto& n : *set)
            for (int k : n.node_labels) kmax = std::max(kmax, k);
    const MomentMatrix a1 = a_matrix(p.tau1, p.eps, kmax, tol);
    const MomentMatrix a2 = a_matrix(p.tau2, p.eps, kmax, tol);
    auto omega = [&](const std::vector<Necklace>& set) {
        Complex sum = 0.0;
        for (const auto& n : set) {
            Complex w = 1.0;
            for (int i = 0; i < n.edges(); ++i) {
                const MomentMatrix& a = n.edge_type(i) == 1 ? a1 : a2;
                w *= a(n.node_labels[i], n.node_labels[i + 1]);
            }
            sum += w;
        }
        return sum;
    };
    const Complex eps = p.eps;
    return {p.tau1.value() + eps * omega(n11) / two_pi_i, -eps * omega(n12) / two_pi_i,
            p.tau2.value() + eps * omega(n22) / two_pi_i};
}

Complex bilinear_form_eps(const EpsPoint& p, Complex x, Complex y, int a, int b, int N,
                          const SeriesTolerance& tol) {
    check_order(N);
    if ((a != 1 && a != 2) || (b != 1 && b != 2)) throw InvalidArgument("surface labels are 1 or 2");
    require_domain(p, "bilinear_form_eps");
    const Tau& ta = a == 1 ? p.tau1 : p.tau2;
    const Tau& tb = b == 1 ? p.tau1 : p.tau2;
    const MomentMatrix a1 = a_matrix(p.tau1, p.eps, N, tol);
    const MomentMatrix a2 = a_matrix(p.tau2, p.eps, N, tol);
    const Complex s = std::sqrt(p.eps);
    auto moments = [&](const Tau& t, Complex z) {
        const auto pk = weierstrass_p_all(N + 1, t, z, tol);
        Vector v(N);
        Complex sp = 1.0;
        for (int k = 1; k <= N; ++k) {
            sp *= s;
            v(k - 1) = std::sqrt(static_cast<double>(k)) * sp * pk[k + 1];
        }
        return v;
    };
    const Vector ax = moments(ta, x);
    const Vector ay = moments(tb, y);
    const XBlocks X = x_blocks(a1, a2);
    if (a == b) {
        const Matrix& xbb = a == 1 ? X.x22 : X.x11;
        return weierstrass_p(2, ta, x - y, tol) + (ax.transpose() * xbb * ay)(0);
    }
    // x on torus a, y on the other one
    const Matrix& xba = a == 1 ? X.x21 : X.x12;
    const Matrix m = xba - Matrix::Identity(N, N);
    return (ax.transpose() * m * ay)(0);
}

Sp4 GElement::matrix() const {
    if (!g.valid() && kind != Kind::beta_swap) throw InvalidArgument("GElement: determinant must be 1");
    switch (kind) {
        case Kind::gamma1: return embed_gamma1(g);
        case Kind::gamma2: return embed_gamma2(g);
        case Kind::beta_swap: return beta_swap_matrix();
    }
    return Sp4::identity();
}

EpsPoint g_action_eps(const GElement& g, const EpsPoint& p) {
    if (g.kind != GElement::Kind::beta_swap && !g.g.valid())
        throw InvalidArgument("GElement: determinant must be 1");
    switch (g.kind) {
        case GElement::Kind::gamma1:
            return {g.g.act(p.tau1), p.tau2, p.eps / g.g.cocycle(p.tau1.value())};
        case GElement::Kind::gamma2:
            return {p.tau1, g.g.act(p.tau2), p.eps / g.g.cocycle(p.tau2.value())};
        case GElement::Kind::beta_swap:
            return {p.tau2, p.tau1, p.eps};
    }
    return p;
}

PeriodMatrix sp4_action(const GElement& g, const PeriodMatrix& omega) { return sp4_act(g.matrix(), omega); }

double equivariance_residual_eps(const GElement& g, const EpsPoint& p, int N, const SeriesTolerance& tol) {
    const PeriodMatrix lhs = period_matrix_eps(g_action_eps(g, p), N, tol);
    const PeriodMatrix rhs = sp4_action(g, period_matrix_eps(p, N, tol));
    return max_entry_diff(lhs, rhs);
}

EpsPoint seed_eps(const PeriodMatrix& target, const SeriesTolerance& tol) {
    const Complex o12 = target.omega12;
    const Complex e2a = eisenstein(2, Tau(target.omega11), tol);
    const Complex e2b = eisenstein(2, Tau(target.omega22), tol);
    const Complex t1 = target.omega11 - two_pi_i * o12 * o12 * e2b;
    const Complex t2 = target.omega22 - two_pi_i * o12 * o12 * e2a;
    const Complex eps = -two_pi_i * o12 * (1.0 - two_pi_i * two_pi_i * o12 * o12 * e2a * e2b);
    auto valid_tau = [](Complex t, Complex fallback) { return t.imag() > 0.0 ? t : fallback; };
    return {Tau(valid_tau(t1, target.omega11)), Tau(valid_tau(t2, target.omega22)), eps};
}

EpsInversion invert_eps_report(const PeriodMatrix& target, std::optional<EpsPoint> seed, double newton_tol, int N,
                               const SeriesTolerance& tol) {
    check_order(N);
    if (!(newton_tol > 0.0)) throw InvalidArgument("newton_tol must be positive");
    if (!(target.omega11.imag() > 0.0) || !(target.omega22.imag() > 0.0))
        throw DomainError("invert_eps: diagonal entries must lie in the upper half-plane");
    const EpsPoint s = seed ? *seed : seed_eps(target, tol);
    auto to_point = [](const Vec3& x) { return EpsPoint{Tau(x[0]), Tau(x[1]), x[2]}; };
    auto f = [&](const Vec3& x) {
        const PeriodMatrix o = period_matrix_eps(to_point(x), N, tol);
        return Vec3{o.omega11, o.omega12, o.omega22};
    };
    auto inside = [](const Vec3& x) {
        if (!(x[0].imag() > 0.0) || !(x[1].imag() > 0.0)) return false;
        return in_domain_eps(EpsPoint{Tau(x[0]), Tau(x[1]), x[2]}).inside;
    };
    NewtonOptions opt;
    opt.tol = newton_tol;
    const NewtonResult r = newton_solve3(f, {target.omega11, target.omega12, target.omega22},
                                         {s.tau1.value(), s.tau2.value(), s.eps}, inside, opt);
    return {to_point(r.x), r.residual, r.iterations};
}

EpsPoint invert_eps(const PeriodMatrix& target, std::optional<EpsPoint> seed, double newton_tol, int N,
                    const SeriesTolerance& tol) {
    return invert_eps_report(target, seed, newton_tol, N, tol).point;
}

std::array<Vec3, 3> jacobian_eps(const EpsPoint& p, int N, const SeriesTolerance& tol) {
    auto f = [&](const Vec3& x) {
        const PeriodMatrix o = period_matrix_eps(EpsPoint{Tau(x[0]), Tau(x[1]), x[2]}, N, tol);
        return Vec3{o.omega11, o.omega22, o.omega12};
    };
    return holomorphic_jacobian(f, {p.tau1.value(), p.tau2.value(), p.eps});
}

Complex det3(const std::array<Vec3, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace sewing
