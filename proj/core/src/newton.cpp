#include "sewing/newton.hpp"

#include <cmath>
#include <optional>

#include <Eigen/Dense>

namespace sewing {
namespace {

double max_abs(const Vec3& v) { return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])}); }

Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

}  // namespace

NewtonResult newton_solve3(const std::function<Vec3(const Vec3&)>& f, const Vec3& target, const Vec3& seed,
                           const std::function<bool(const Vec3&)>& in_domain, const NewtonOptions& opt) {
    // Evaluation that reports rejection instead of throwing.
    auto eval = [&](const Vec3& x) -> std::optional<Vec3> {
        if (!in_domain(x)) return std::nullopt;
        try {
            return sub(f(x), target);
        } catch (const DomainError&) {
            return std::nullopt;
        } catch (const PoleError&) {
            return std::nullopt;
        }
    };

    Vec3 x = seed;
    auto r0 = eval(x);
    if (!r0) throw DomainExit("newton: seed outside the sewing domain");
    Vec3 r = *r0;
    double res = max_abs(r);

    for (int it = 0; it <= opt.max_iter; ++it) {
        if (res < opt.tol) return {x, res, it};
        if (it == opt.max_iter) break;

        Eigen::Matrix<double, 6, 6> jac;
        for (int j = 0; j < 3; ++j)
            for (int part = 0; part < 2; ++part) {
                const double h = opt.rel_step * std::max(1.0, std::abs(x[j]));
                const Complex dir = part == 0 ? Complex(h, 0.0) : Complex(0.0, h);
                Vec3 xp = x, xm = x;
                xp[j] += dir;
                xm[j] -= dir;
                auto fp = eval(xp);
                auto fm = eval(xm);
                Vec3 d;
                if (fp && fm) {
                    for (int i = 0; i < 3; ++i) d[i] = (fp->at(i) - fm->at(i)) / (2.0 * h);
                } else if (fp) {
                    for (int i = 0; i < 3; ++i) d[i] = (fp->at(i) - r[i]) / h;
                } else if (fm) {
                    for (int i = 0; i < 3; ++i) d[i] = (r[i] - fm->at(i)) / h;
                } else {
                    throw DomainExit("newton: Jacobian stencil outside the sewing domain");
                }
                for (int i = 0; i < 3; ++i) {
                    jac(2 * i, 2 * j + part) = d[i].real();
                    jac(2 * i + 1, 2 * j + part) = d[i].imag();
                }
            }
        Eigen::Matrix<double, 6, 1> rhs;
        for (int i = 0; i < 3; ++i) {
            rhs(2 * i) = -r[i].real();
            rhs(2 * i + 1) = -r[i].imag();
        }
        const Eigen::Matrix<double, 6, 1> step = jac.fullPivLu().solve(rhs);
        if (!step.allFinite()) throw ConvergenceFailure("newton: singular Jacobian", res);

        double lambda = 1.0;
        bool accepted = false;
        bool domain_rejected = false;
        for (int halving = 0; halving < 30; ++halving, lambda *= 0.5) {
            Vec3 xn;
            for (int j = 0; j < 3; ++j) xn[j] = x[j] + lambda * Complex(step(2 * j), step(2 * j + 1));
            auto rn = eval(xn);
            if (!rn) {
                domain_rejected = true;
                continue;
            }
            const double resn = max_abs(*rn);
            if (resn < res) {
                x = xn;
                r = *rn;
                res = resn;
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            if (res < opt.tol) return {x, res, it};
            if (domain_rejected) throw DomainExit("newton: iterate left the sewing domain");
            throw ConvergenceFailure("newton: no residual decrease along the Newton direction", res);
        }
    }
    throw ConvergenceFailure("newton: maximum iterations reached", res);
}

std::array<Vec3, 3> holomorphic_jacobian(const std::function<Vec3(const Vec3&)>& f, const Vec3& x, double h) {
    std::array<Vec3, 3> jac{};
    for (int j = 0; j < 3; ++j) {
        Vec3 xp = x, xm = x;
        xp[j] += h;
        xm[j] -= h;
        const Vec3 fp = f(xp);
        const Vec3 fm = f(xm);
        for (int i = 0; i < 3; ++i) jac[i][j] = (fp[i] - fm[i]) / (2.0 * h);
    }
    return jac;
}

}  // namespace sewing
