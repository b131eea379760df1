#pragma once

#include <array>
#include <functional>

#include "sewing/types.hpp"

namespace sewing {

using Vec3 = std::array<Complex, 3>;

struct NewtonOptions {
    double tol = 1e-12;      // max-entry residual at convergence
    int max_iter = 50;
    double rel_step = 1e-6;  // central-difference step relative to max(1, |x_i|)
};

struct NewtonResult {
    Vec3 x;
    double residual = 0.0;
    int iterations = 0;
};

// Solves f(x) = target for three complex unknowns. The Jacobian is a 6x6 real
// central-difference matrix; steps are halved while the residual does not
// decrease or the trial point is rejected by in_domain (or f throws DomainError).
// Throws DomainExit or ConvergenceFailure.
NewtonResult newton_solve3(const std::function<Vec3(const Vec3&)>& f, const Vec3& target, const Vec3& seed,
                           const std::function<bool(const Vec3&)>& in_domain, const NewtonOptions& opt = {});

// Complex 3x3 Jacobian of a holomorphic map by central differences along the
// real direction: J[i][j] = d f_i / d x_j.
std::array<Vec3, 3> holomorphic_jacobian(const std::function<Vec3(const Vec3&)>& f, const Vec3& x, double h = 1e-5);

}  // namespace sewing
