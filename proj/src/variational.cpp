#include "dnls/variational.hpp"

#include "dnls/errors.hpp"

#include <algorithm>
#include <cmath>

namespace dnls {

namespace {

// (1 - d^2/dx^2)^{-1}, the H^1 preconditioner for the mass-constrained flow.
CArray precondition(const SpectralGrid& g, const CArray& f) {
    CArray spec = fft(f);
    for (int m = 0; m < g.N(); ++m)
        spec[m] /= 1.0 + g.k()[m] * g.k()[m];
    return ifft(spec);
}

// Inverse of 1 + the X_{omega,c} quadratic symbol. On the algebraic boundary
// the H^1 weight would freeze the modes near the carrier k = c/2 whose
// quadratic cost vanishes; dividing by the actual symbol keeps them mobile.
CArray precondition_x(const SpectralGrid& g, const CArray& f, double omega,
                      double c) {
    const double m0 = std::max(omega - 0.25 * c * c, 0.0);
    CArray spec = fft(f);
    for (int m = 0; m < g.N(); ++m) {
        const double d = g.k()[m] - 0.5 * c;
        spec[m] /= 1.0 + d * d + m0;
    }
    return ifft(spec);
}

CArray gaussian_seed(const SpectralGrid& g, double c) {
    CArray out(g.N());
    for (int j = 0; j < g.N(); ++j) {
        const double x = g.x()[j];
        out[j] = std::exp(-x * x) * std::exp(Complex(0.0, 0.5 * c * x));
    }
    return out;
}

} // namespace

NehariProjection nehari_project(const SpectralGrid& g, const CArray& phi,
                                double omega, double c, const ModelParams& p) {
    if (!(p.gamma > 0.0))
        throw ValidationError("nehari_project: needs gamma > 0");
    const double A = x_quadratic(g, phi, omega, c);
    const double p4 = std::pow(lp_norm(g, phi, 4), 4);
    const double p6 = std::pow(lp_norm(g, phi, 6), 6);
    const double B = 0.5 * c * p4;
    const double C = 3.0 / 16.0 * p.gamma * p6;
    if (!(C > 0.0))
        throw ValidationError("nehari_project: zero field has no projection");
    if (!(A > 0.0))
        throw ValidationError("nehari_project: X-space quadratic form must be "
                              "positive");
    const double lam_sq = (B + std::sqrt(B * B + 4.0 * A * C)) / (2.0 * C);
    NehariProjection out;
    out.lambda = std::sqrt(lam_sq);
    out.field = out.lambda * phi;
    return out;
}

NehariResult nehari_minimize(const SpectralGrid& g, double omega, double c,
                             const ModelParams& p, const CArray& init,
                             int max_iters, double tol) {
    if (!admissible(omega, c, p))
        throw ValidationError("nehari_minimize: (omega, c) outside the "
                              "existence region");
    NehariResult res;
    res.minimizer = nehari_project(g, init, omega, c, p).field;
    double S = action_Scal(g, res.minimizer, omega, c, p);
    double eta = 0.5;
    for (int it = 0; it < max_iters; ++it) {
        res.iterations = it;
        const CArray grad = action_Scal_gradient(g, res.minimizer, omega, c, p);
        const CArray nrm = nehari_K_gradient(g, res.minimizer, omega, c, p);
        const CArray tang =
            grad - (inner(g, grad, nrm) / inner(g, nrm, nrm)) * nrm;
        const CArray pre = precondition_x(g, tang, omega, c);
        res.residual = l2_norm(g, pre);
        if (res.residual < tol) {
            res.converged = true;
            break;
        }
        bool accepted = false;
        while (eta > 1e-13) {
            const CArray trial =
                nehari_project(g, res.minimizer - eta * pre, omega, c, p).field;
            const double St = action_Scal(g, trial, omega, c, p);
            if (St <= S * (1.0 + 1e-14) + 1e-15) {
                res.minimizer = trial;
                S = St;
                accepted = true;
                eta = std::min(eta * 1.3, 2.0);
                break;
            }
            eta *= 0.5;
        }
        if (!accepted)
            break; // stalled at roundoff; report the last iterate
    }
    res.value = S;
    return res;
}

NehariResult nehari_minimize(const SpectralGrid& g, double omega, double c,
                             const ModelParams& p, int max_iters, double tol) {
    return nehari_minimize(g, omega, c, p, gaussian_seed(g, c), max_iters, tol);
}

MassConstrainedResult mass_constrained_minimize(const SpectralGrid& g, double c,
                                                double m, const ModelParams& p,
                                                const CArray& init,
                                                int max_iters, double tol) {
    if (!(c < 0.0))
        throw ValidationError("mass_constrained_minimize: needs c < 0");
    if (!(m > 0.0))
        throw ValidationError("mass_constrained_minimize: needs m > 0");
    if (p.gamma > 0.0 && !(m < 2.0 * M_PI / std::sqrt(p.gamma)))
        throw ValidationError("mass_constrained_minimize: for gamma > 0 the "
                              "mass must stay below 2 pi / sqrt(gamma)");

    MassConstrainedResult res;
    res.minimizer = init;
    {
        const double n0 = l2_norm(g, res.minimizer);
        if (!(n0 > 0.0))
            throw ValidationError("mass_constrained_minimize: zero start");
        res.minimizer *= std::sqrt(m) / n0;
    }
    double E = ec(g, res.minimizer, c, p);
    double eta = 0.5;
    for (int it = 0; it < max_iters; ++it) {
        res.iterations = it;
        const CArray grad = ec_gradient(g, res.minimizer, c, p);
        const double lambda = -inner(g, grad, res.minimizer) / m;
        const CArray resid = grad + lambda * res.minimizer;
        const CArray pre = precondition(g, resid);
        res.residual = l2_norm(g, pre);
        if (res.residual < tol) {
            res.converged = true;
            break;
        }
        bool accepted = false;
        while (eta > 1e-13) {
            CArray trial = res.minimizer - eta * pre;
            trial *= std::sqrt(m) / l2_norm(g, trial);
            const double Et = ec(g, trial, c, p);
            if (Et <= E + 1e-15) {
                res.minimizer = trial;
                E = Et;
                accepted = true;
                eta = std::min(eta * 1.3, 2.0);
                break;
            }
            eta *= 0.5;
        }
        if (!accepted)
            break;
    }
    res.value = E;
    res.multiplier =
        -inner(g, ec_gradient(g, res.minimizer, c, p), res.minimizer) / m;
    res.omega_tilde = res.multiplier + 0.25 * c * c;
    return res;
}

MassConstrainedResult mass_constrained_minimize(const SpectralGrid& g, double c,
                                                double m, const ModelParams& p,
                                                int max_iters, double tol) {
    CArray seed(g.N());
    for (int j = 0; j < g.N(); ++j)
        seed[j] = std::exp(-0.5 * g.x()[j] * g.x()[j]);
    return mass_constrained_minimize(g, c, m, p, seed, max_iters, tol);
}

GnConstants gn_constants(const SpectralGrid& g) {
    auto ratio = [&](const CArray& f) {
        const double l4 = lp_norm(g, f, 4);
        const double grad = l2_norm(g, derivative(g, f, 1));
        const double l2 = l2_norm(g, f);
        return l4 / (std::pow(grad, 0.25) * std::pow(l2, 0.75));
    };
    GnConstants out;
    for (int i = 0; i < 24; ++i) {
        const double w = 0.25 * std::pow(1.35, i); // widths 0.25 up to L/8
        if (w > g.L() / 8.0)
            break;
        CArray gauss(g.N()), sech(g.N());
        for (int j = 0; j < g.N(); ++j) {
            const double x = g.x()[j] / w;
            gauss[j] = std::exp(-x * x);
            sech[j] = 1.0 / std::cosh(x);
        }
        out.C1 = std::max({out.C1, ratio(gauss), ratio(sech)});
    }
    out.C2 = std::pow(out.C1, 4) / 16.0;
    return out;
}

} // namespace dnls
