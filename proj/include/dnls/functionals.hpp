#pragma once

#include "dnls/params.hpp"
#include "dnls/soliton.hpp"
#include "dnls/spectral.hpp"

#include <limits>

namespace dnls {

// Conserved quantities of one equation form. The trailing entries are only
// meaningful for the gauged equation at a given (omega, c) and stay NaN
// unless requested.
struct InvariantRecord {
    double energy = 0.0;
    double mass = 0.0;
    double momentum = 0.0;
    double action = std::numeric_limits<double>::quiet_NaN();
    double nehari = std::numeric_limits<double>::quiet_NaN();
    double jc = std::numeric_limits<double>::quiet_NaN();
};

// E, M, P of the derivative equation.
InvariantRecord invariants_u(const SpectralGrid& g, const CArray& u,
                             const ModelParams& p);

// Gauged energy/mass/momentum; the _full variant also evaluates the action,
// the Nehari functional and J_c at (omega, c).
InvariantRecord invariants_v(const SpectralGrid& g, const CArray& v,
                             const ModelParams& p);
InvariantRecord invariants_v_full(const SpectralGrid& g, const CArray& v,
                                  double omega, double c, const ModelParams& p);

// Gauge map v = u exp((i/4) int_{-L}^x |u|^2) and its inverse. The two use
// the same cumulative array, so they compose to the identity exactly.
CArray gauge_G(const SpectralGrid& g, const CArray& u);
CArray gauge_G_inverse(const SpectralGrid& g, const CArray& v);

// Actions S (derivative form) and Scal (gauged form).
double action_S(const SpectralGrid& g, const CArray& u, double omega, double c,
                const ModelParams& p);
double action_Scal(const SpectralGrid& g, const CArray& v, double omega,
                   double c, const ModelParams& p);

// Quadratic form ||dv - (ic/2)v||^2 + (omega - c^2/4)||v||^2. Well defined
// down to the algebraic boundary, where the mass weight vanishes.
double x_quadratic(const SpectralGrid& g, const CArray& v, double omega,
                   double c);
// X-space size: sqrt(quadratic part) + L^4 norm.
double x_norm(const SpectralGrid& g, const CArray& v, double omega, double c);

// Nehari functional K and the well splitting J_c, plus the constrained
// energy E_c of the real reduction.
double nehari_K(const SpectralGrid& g, const CArray& v, double omega, double c,
                const ModelParams& p);
double jc(const SpectralGrid& g, const CArray& v, double c,
          const ModelParams& p);
double ec(const SpectralGrid& g, const CArray& psi, double c,
          const ModelParams& p);

// L^2 gradients, real pairing (f,g) = Re int f conj(g).
CArray action_Scal_gradient(const SpectralGrid& g, const CArray& v,
                            double omega, double c, const ModelParams& p);
CArray nehari_K_gradient(const SpectralGrid& g, const CArray& v, double omega,
                         double c, const ModelParams& p);
CArray ec_gradient(const SpectralGrid& g, const CArray& psi, double c,
                   const ModelParams& p);

// Stationary equations a profile can be checked against: the derivative
// equation's profile ODE, the real reduced ODE, and the gauged ODE.
enum class EllipticForm { DerivativeOde, ReducedOde, GaugedOde };
double elliptic_residual(const SolitonProfile& prof, EllipticForm which);

enum class WellTag { APlus, AMinus, BPlus, BMinus, Outside };

struct WellMembership {
    WellTag a_tag = WellTag::Outside; // sign-of-K splitting
    WellTag b_tag = WellTag::Outside; // J_c-vs-d splitting
    double s_margin = 0.0;            // S - d
    double k_value = 0.0;             // K
    double j_margin = 0.0;            // J_c - d
};

WellMembership well_membership(const SpectralGrid& g, const CArray& v,
                               double omega, double c, const ModelParams& p);

} // namespace dnls
