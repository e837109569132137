#include "dnls/params.hpp"

#include "dnls/errors.hpp"

#include <cmath>

namespace dnls {

ModelParams ModelParams::from_b(double b) {
    return {b, gamma_of_b(b)};
}

ModelParams ModelParams::from_gamma(double gamma) {
    return {(gamma - 1.0) * 3.0 / 16.0, gamma};
}

double ModelParams::s_star_boundary() const {
    if (gamma > 0.0)
        throw ValidationError("s_star_boundary: requires gamma <= 0");
    return std::sqrt(-gamma / (1.0 - gamma));
}

double WaveParams::s() const {
    if (omega <= 0.0)
        throw ValidationError("WaveParams::s: omega must be positive");
    return c / (2.0 * std::sqrt(omega));
}

double gamma_of_b(double b) {
    return 1.0 + 16.0 * b / 3.0;
}

ParamRegion classify(double omega, double c, const ModelParams& p) {
    if (!(omega > 0.0) || !std::isfinite(omega) || !std::isfinite(c))
        return ParamRegion::Inadmissible;
    const double cb = 2.0 * std::sqrt(omega);
    if (std::abs(c - cb) <= 1e-12 * std::max(1.0, cb))
        return p.gamma > 0.0 ? ParamRegion::AlgebraicBoundary
                             : ParamRegion::Inadmissible;
    if (p.gamma > 0.0)
        return (-cb < c && c < cb) ? ParamRegion::ExponentialInterior
                                   : ParamRegion::Inadmissible;
    const double hi = -p.s_star_boundary() * cb; // -2 s_* sqrt(omega)
    return (-cb < c && c < hi) ? ParamRegion::ExponentialInterior
                               : ParamRegion::Inadmissible;
}

bool admissible(double omega, double c, const ModelParams& p) {
    return classify(omega, c, p) != ParamRegion::Inadmissible;
}

namespace {

// Momentum closed form at omega = 1, velocity 2s; local copy to keep this
// module self-contained. The soliton module re-exposes the general version.
double momentum_1_2s(double s, const ModelParams& p) {
    const double c = 2.0 * s;
    const double g = p.gamma;
    const double k2 = 4.0 - c * c;
    double mass;
    if (g > 0.0) {
        if (s >= 1.0) {
            mass = 4.0 * M_PI / std::sqrt(g);
        } else {
            const double al = c / std::sqrt(c * c + g * k2);
            mass = 8.0 / std::sqrt(g) * std::atan(std::sqrt((1.0 + al) / (1.0 - al)));
        }
        if (s >= 1.0)
            return c / 2.0 * (-1.0 + 1.0 / g) * mass;
        return c / 2.0 * (-1.0 + 1.0 / g) * mass + 2.0 / g * std::sqrt(k2);
    }
    throw ValidationError("momentum_1_2s: needs gamma > 0 here");
}

} // namespace

double s_star(double b) {
    if (!(b > 0.0))
        throw ValidationError("s_star: defined only for b > 0");
    const ModelParams p = ModelParams::from_b(b);
    double lo = 1e-6, hi = 1.0 - 1e-6;
    double plo = momentum_1_2s(lo, p);
    double mid = 0.5 * (lo + hi);
    for (int i = 0; i < 200; ++i) {
        mid = 0.5 * (lo + hi);
        const double pm = momentum_1_2s(mid, p);
        if (std::abs(pm) < 1e-12)
            return mid;
        if ((plo > 0.0) == (pm > 0.0)) {
            lo = mid;
            plo = pm;
        } else {
            hi = mid;
        }
    }
    return mid;
}

double mass_threshold(double b) {
    if (!(b > -3.0 / 16.0))
        throw ValidationError("mass_threshold: defined only for b > -3/16");
    const ModelParams p = ModelParams::from_b(b);
    if (b > 0.0) {
        const double s = s_star(b);
        const double c = 2.0 * s;
        const double al = c / std::sqrt(c * c + p.gamma * (4.0 - c * c));
        return 8.0 / std::sqrt(p.gamma) * std::atan(std::sqrt((1.0 + al) / (1.0 - al)));
    }
    return 4.0 * M_PI / std::pow(p.gamma, 1.5);
}

} // namespace dnls
