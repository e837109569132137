#pragma once

#include "dnls/params.hpp"
#include "dnls/spectral.hpp"

#include <Eigen/Dense>
#include <vector>

namespace dnls {

// Pointwise closed-form evaluation of the squared profile Phi_{omega,c}^2:
// cosh branch in the interior, 4c/((cx)^2 + gamma) on the algebraic boundary.
// Written in terms of exp(-k|x|) so large arguments cannot overflow.
double phi_squared(double omega, double c, const ModelParams& p, double x);
double phi_value(double omega, double c, const ModelParams& p, double x);
double phi_derivative(double omega, double c, const ModelParams& p, double x);

// alpha = c (c^2 + gamma(4 omega - c^2))^{-1/2}
double alpha_of(double omega, double c, const ModelParams& p);

// Closed forms for the conserved quantities of the gauge-form soliton
// varphi_{omega,c} and the action value d(omega,c).
double mass_closed(double omega, double c, const ModelParams& p);
double dmass_domega_closed(double omega, double c, const ModelParams& p);
double momentum_closed(double omega, double c, const ModelParams& p);
double energy_closed(double omega, double c, const ModelParams& p);
double action_d(double omega, double c, const ModelParams& p);

struct ClosedFormInvariants {
    double mass;
    double momentum;
    double energy;
    double action_d;
    double alpha;
};
ClosedFormInvariants closed_invariants(double omega, double c, const ModelParams& p);

// sup-norm formula: ||Phi_{1,2s}||_inf^2 = (4/gamma)(sqrt(s^2+gamma(1-s^2)) + s),
// defined for gamma > 0, s in (-1, 1].
double sup_norm_sq(double s, const ModelParams& p);

// Profiles sampled on a grid. Phi is the real even profile, varphi carries
// the traveling phase e^{i c x/2}, dnls additionally carries the gauge phase
// -(1/4) cumulative integral of Phi^2 (tail-corrected on the algebraic
// boundary, where the left tail contributes (4/sqrt(g))(pi/2 - atan(cL/sqrt(g)))).
struct SolitonProfile {
    double omega = 1.0;
    double c = 0.0;
    ModelParams params;
    ParamRegion region = ParamRegion::Inadmissible;
    SpectralGrid grid;
    Array Phi;
    CArray varphi;
    CArray dnls;
};

SolitonProfile sample_profile(double omega, double c, const ModelParams& p,
                              const SpectralGrid& g);

// Central-second-difference Hessian of d(omega, c) with closed-form
// determinant cross value. Default step h = 1e-4 max(1, omega).
struct HessianResult {
    Eigen::Matrix2d matrix; // rows/cols ordered (omega, c)
    double fd_det = 0.0;
    double closed_det = 0.0;
};
HessianResult hessian_d(double omega, double c, const ModelParams& p, double h = 0.0);

// H^m distances between the sampled dnls-gauge profiles at velocities 2s and
// the algebraic profile at s = 1 (gamma > 0 only).
std::vector<double> converge_to_algebraic(const std::vector<double>& s_list, int m,
                                          const ModelParams& p, const SpectralGrid& g);

} // namespace dnls
