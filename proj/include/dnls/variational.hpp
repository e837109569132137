#pragma once

#include "dnls/functionals.hpp"
#include "dnls/params.hpp"
#include "dnls/spectral.hpp"

namespace dnls {

// Scaling of a field onto the Nehari constraint K(lambda phi) = 0.
struct NehariProjection {
    double lambda = 0.0;
    CArray field;
};

// Positive root of A + B l^2 - C l^4 = 0 with A the X-space quadratic form,
// B = (c/2)||phi||_4^4, C = (3 gamma/16)||phi||_6^6. Needs gamma > 0, A > 0
// and a nonzero field.
NehariProjection nehari_project(const SpectralGrid& g, const CArray& phi,
                                double omega, double c, const ModelParams& p);

struct NehariResult {
    CArray minimizer;
    double value = 0.0;    // S at the final iterate, approximates mu(omega,c)
    int iterations = 0;
    double residual = 0.0; // L2 norm of the preconditioned tangential gradient
    bool converged = false;
};

// Minimize S_{omega,c} on the Nehari manifold K = 0: H^1-preconditioned
// descent of the tangentially projected gradient, re-projected onto the
// constraint each accepted step, with a monotone backtracking line search.
NehariResult nehari_minimize(const SpectralGrid& g, double omega, double c,
                             const ModelParams& p, const CArray& init,
                             int max_iters = 20000, double tol = 1e-8);
// Default start: centered Gaussian times the traveling phase e^{i c x / 2}.
NehariResult nehari_minimize(const SpectralGrid& g, double omega, double c,
                             const ModelParams& p, int max_iters = 20000,
                             double tol = 1e-8);

struct MassConstrainedResult {
    CArray minimizer;
    double value = 0.0;      // E_c at the minimizer, approximates -nu(c,m)
    double multiplier = 0.0; // lambda in -psi'' + lambda psi + ... = 0
    double omega_tilde = 0.0; // lambda + c^2/4
    int iterations = 0;
    double residual = 0.0;   // L2 norm of the preconditioned E-L residual
    bool converged = false;
};

// Minimize E_c over the sphere ||psi||^2 = m: preconditioned gradient steps
// renormalized to the constraint, monotone in E_c. Defined for c < 0 with
// gamma <= 0, or gamma > 0 when m < 2 pi / sqrt(gamma). The multiplier is
// recovered as lambda = -(E_c'(psi), psi)/m, the coefficient of psi in the
// Euler-Lagrange equation.
MassConstrainedResult mass_constrained_minimize(const SpectralGrid& g, double c,
                                                double m, const ModelParams& p,
                                                const CArray& init,
                                                int max_iters = 20000,
                                                double tol = 1e-8);
// Default start: centered Gaussian normalized to mass m.
MassConstrainedResult mass_constrained_minimize(const SpectralGrid& g, double c,
                                                double m, const ModelParams& p,
                                                int max_iters = 20000,
                                                double tol = 1e-8);

// Empirical Gagliardo-Nirenberg constants: C1 = sup ||f||_4 /
// (||f'||^{1/4} ||f||^{3/4}) over stretched Gaussians and sech profiles,
// C2 = C1^4 / 16 from the completing-the-square step with weight 1/4.
struct GnConstants {
    double C1 = 0.0;
    double C2 = 0.0;
};
GnConstants gn_constants(const SpectralGrid& g);

} // namespace dnls
