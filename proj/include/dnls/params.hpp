#pragma once

#include <stdexcept>

namespace dnls {

// Model coefficient pair: b multiplies the quintic term of the derivative
// NLS equation, gamma = 1 + 16 b / 3 is the coefficient that appears in the
// gauge-transformed equation and in every closed form.
struct ModelParams {
    double b = 0.0;
    double gamma = 1.0;

    static ModelParams from_b(double b);
    static ModelParams from_gamma(double gamma);

    // s_* = sqrt(-gamma / (1 - gamma)), the right endpoint of the velocity
    // region for gamma <= 0. Only defined there.
    double s_star_boundary() const;
};

// Frequency/velocity pair with the normalized velocity s = c / (2 sqrt(omega)).
struct WaveParams {
    double omega = 1.0;
    double c = 0.0;

    double s() const;
};

enum class ParamRegion {
    ExponentialInterior,
    AlgebraicBoundary,
    Inadmissible,
};

double gamma_of_b(double b);

// Existence region of the soliton family:
//   gamma > 0 :  -2 sqrt(omega) < c <= 2 sqrt(omega), boundary = algebraic
//   gamma <= 0:  -2 sqrt(omega) < c < -2 s_* sqrt(omega)
// c counts as the boundary when |c - 2 sqrt(omega)| <= 1e-12 max(1, 2 sqrt(omega)).
ParamRegion classify(double omega, double c, const ModelParams& p);
bool admissible(double omega, double c, const ModelParams& p);

// Unique zero of s -> P(varphi_{1,2s}) in (0,1); exists only for b > 0.
double s_star(double b);

// Mass threshold M*(b): mass at s_star(b) for b > 0, 4 pi / gamma^{3/2} for
// -3/16 < b <= 0. Undefined (throws) for b <= -3/16.
double mass_threshold(double b);

} // namespace dnls
