#include "dnls/soliton.hpp"
#include "dnls/errors.hpp"

#include <cmath>

namespace dnls {

namespace {

void require_admissible(double omega, double c, const ModelParams& p,
                        const char* who) {
    if (classify(omega, c, p) == ParamRegion::Inadmissible)
        throw ValidationError(std::string(who) +
                              ": (omega, c) outside the existence region");
}

} // namespace

double phi_squared(double omega, double c, const ModelParams& p, double x) {
    const ParamRegion r = classify(omega, c, p);
    if (r == ParamRegion::Inadmissible)
        throw ValidationError("phi_squared: (omega, c) outside the existence region");
    if (r == ParamRegion::AlgebraicBoundary)
        return 4.0 * c / ((c * x) * (c * x) + p.gamma);
    const double K = 4.0 * omega - c * c;
    const double k = std::sqrt(K);
    const double A = std::sqrt(c * c + p.gamma * K);
    const double E = std::exp(-k * std::abs(x));
    // 2K / (A cosh(kx) - c), written overflow-free
    return 4.0 * K * E / (A * (1.0 + E * E) - 2.0 * c * E);
}

double phi_value(double omega, double c, const ModelParams& p, double x) {
    return std::sqrt(phi_squared(omega, c, p, x));
}

double phi_derivative(double omega, double c, const ModelParams& p, double x) {
    const ParamRegion r = classify(omega, c, p);
    if (r == ParamRegion::Inadmissible)
        throw ValidationError("phi_derivative: (omega, c) outside the existence region");
    if (r == ParamRegion::AlgebraicBoundary) {
        const double D = (c * x) * (c * x) + p.gamma;
        const double fp = -8.0 * c * c * c * x / (D * D);
        return fp / (2.0 * std::sqrt(4.0 * c / D));
    }
    const double K = 4.0 * omega - c * c;
    const double k = std::sqrt(K);
    const double A = std::sqrt(c * c + p.gamma * K);
    const double sgn = (x > 0.0) - (x < 0.0);
    const double E = std::exp(-k * std::abs(x));
    const double D = A * (1.0 + E * E) - 2.0 * c * E;
    const double f = 4.0 * K * E / D;
    const double fp = -4.0 * K * k * sgn * A * E * (1.0 - E * E) / (D * D);
    return (f > 0.0) ? fp / (2.0 * std::sqrt(f)) : 0.0;
}

double alpha_of(double omega, double c, const ModelParams& p) {
    return c / std::sqrt(c * c + p.gamma * (4.0 * omega - c * c));
}

double mass_closed(double omega, double c, const ModelParams& p) {
    const ParamRegion r = classify(omega, c, p);
    if (r == ParamRegion::Inadmissible)
        throw ValidationError("mass_closed: (omega, c) outside the existence region");
    const double g = p.gamma;
    if (r == ParamRegion::AlgebraicBoundary)
        return 4.0 * M_PI / std::sqrt(g); // alpha -> 1 limit, atan(inf) = pi/2
    const double al = alpha_of(omega, c, p);
    if (g > 0.0)
        return 8.0 / std::sqrt(g) * std::atan(std::sqrt((1.0 + al) / (1.0 - al)));
    if (g == 0.0)
        return 4.0 * std::sqrt(4.0 * omega - c * c) / (-c);
    return 4.0 / std::sqrt(-g) * std::log(-al + std::sqrt(al * al - 1.0));
}

double dmass_domega_closed(double omega, double c, const ModelParams& p) {
    if (classify(omega, c, p) != ParamRegion::ExponentialInterior)
        throw ValidationError("dmass_domega_closed: needs omega > c^2/4 strictly");
    const double K = 4.0 * omega - c * c;
    return -8.0 * c / (std::sqrt(K) * (c * c + p.gamma * K));
}

double momentum_closed(double omega, double c, const ModelParams& p) {
    require_admissible(omega, c, p, "momentum_closed");
    const double g = p.gamma;
    const double M = mass_closed(omega, c, p);
    if (g == 0.0)
        return -(2.0 * omega + c * c) / (3.0 * c) * M;
    const double K = 4.0 * omega - c * c;
    const double root = (classify(omega, c, p) == ParamRegion::AlgebraicBoundary)
                            ? 0.0
                            : std::sqrt(K);
    return 0.5 * c * (-1.0 + 1.0 / g) * M + 2.0 / g * root;
}

double energy_closed(double omega, double c, const ModelParams& p) {
    require_admissible(omega, c, p, "energy_closed");
    const double s = c / (2.0 * std::sqrt(omega));
    return -omega * 0.5 * s * momentum_closed(1.0, 2.0 * s, p);
}

double action_d(double omega, double c, const ModelParams& p) {
    require_admissible(omega, c, p, "action_d");
    const double s = c / (2.0 * std::sqrt(omega));
    return omega * 0.5 *
           (mass_closed(1.0, 2.0 * s, p) + s * momentum_closed(1.0, 2.0 * s, p));
}

ClosedFormInvariants closed_invariants(double omega, double c, const ModelParams& p) {
    return {mass_closed(omega, c, p), momentum_closed(omega, c, p),
            energy_closed(omega, c, p), action_d(omega, c, p),
            alpha_of(omega, c, p)};
}

double sup_norm_sq(double s, const ModelParams& p) {
    if (!(p.gamma > 0.0))
        throw ValidationError("sup_norm_sq: formula requires gamma > 0");
    if (!(s > -1.0 && s <= 1.0))
        throw ValidationError("sup_norm_sq: s must lie in (-1, 1]");
    return 4.0 / p.gamma * (std::sqrt(s * s + p.gamma * (1.0 - s * s)) + s);
}

SolitonProfile sample_profile(double omega, double c, const ModelParams& p,
                              const SpectralGrid& g) {
    SolitonProfile out;
    out.omega = omega;
    out.c = c;
    out.params = p;
    out.region = classify(omega, c, p);
    if (out.region == ParamRegion::Inadmissible)
        throw ValidationError("sample_profile: (omega, c) outside the existence region");
    out.grid = g;

    const int N = g.N();
    out.Phi.resize(N);
    CArray phi_sq(N);
    for (int j = 0; j < N; ++j) {
        const double f = phi_squared(omega, c, p, g.x()[j]);
        out.Phi[j] = std::sqrt(f);
        phi_sq[j] = f;
    }

    CArray cum = antiderivative_from_left(g, phi_sq);
    if (out.region == ParamRegion::AlgebraicBoundary) {
        // mass in the untracked left tail (-inf, -L):
        // integral of 4c/((cx)^2+g) = (4/sqrt(g)) atan(cx/sqrt(g))
        const double sg = std::sqrt(p.gamma);
        cum += 4.0 / sg * (M_PI / 2.0 - std::atan(c * g.L() / sg));
    }

    out.varphi.resize(N);
    out.dnls.resize(N);
    for (int j = 0; j < N; ++j) {
        const double xj = g.x()[j];
        const Complex carrier = std::exp(Complex(0.0, 0.5 * c * xj));
        out.varphi[j] = carrier * out.Phi[j];
        out.dnls[j] =
            out.varphi[j] * std::exp(Complex(0.0, -0.25 * cum[j].real()));
    }
    return out;
}

HessianResult hessian_d(double omega, double c, const ModelParams& p, double h) {
    if (classify(omega, c, p) != ParamRegion::ExponentialInterior)
        throw ValidationError("hessian_d: needs omega > c^2/4 strictly");
    if (h <= 0.0)
        h = 1e-4 * std::max(1.0, omega);
    const double pts[4][2] = {{omega + h, c}, {omega - h, c},
                              {omega, c + h}, {omega, c - h}};
    for (auto& q : pts)
        if (!admissible(q[0], q[1], p))
            throw ValidationError("hessian_d: finite-difference stencil leaves "
                                  "the admissible region; reduce h");
    for (double so : {1.0, -1.0})
        for (double sc : {1.0, -1.0})
            if (!admissible(omega + so * h, c + sc * h, p))
                throw ValidationError("hessian_d: finite-difference stencil leaves "
                                      "the admissible region; reduce h");

    auto d = [&](double w, double cc) { return action_d(w, cc, p); };
    const double d0 = d(omega, c);
    HessianResult r;
    const double dww = (d(omega + h, c) - 2.0 * d0 + d(omega - h, c)) / (h * h);
    const double dcc = (d(omega, c + h) - 2.0 * d0 + d(omega, c - h)) / (h * h);
    const double dwc = (d(omega + h, c + h) - d(omega + h, c - h) -
                        d(omega - h, c + h) + d(omega - h, c - h)) /
                       (4.0 * h * h);
    r.matrix << dww, dwc, dwc, dcc;
    r.fd_det = dww * dcc - dwc * dwc;
    const double K = 4.0 * omega - c * c;
    r.closed_det = -2.0 * momentum_closed(omega, c, p) /
                   (std::sqrt(K) * (c * c + p.gamma * K));
    return r;
}

std::vector<double> converge_to_algebraic(const std::vector<double>& s_list, int m,
                                          const ModelParams& p,
                                          const SpectralGrid& g) {
    if (!(p.gamma > 0.0))
        throw ValidationError("converge_to_algebraic: requires gamma > 0");
    if (m < 0 || m > 2)
        throw ValidationError("converge_to_algebraic: m must be in {0,1,2}");
    const SolitonProfile limit = sample_profile(1.0, 2.0, p, g);
    if (edge_ratio(g, limit.dnls) >= kEdgeTolAlgebraic)
        throw GuardError("converge_to_algebraic: grid too short for the "
                         "algebraic tail");
    std::vector<double> out;
    out.reserve(s_list.size());
    for (double s : s_list) {
        if (!(s > -1.0 && s <= 1.0))
            throw ValidationError("converge_to_algebraic: s outside (-1, 1]");
        const SolitonProfile ps = sample_profile(1.0, 2.0 * s, p, g);
        out.push_back(hm_norm(g, ps.dnls - limit.dnls, m));
    }
    return out;
}

} // namespace dnls
