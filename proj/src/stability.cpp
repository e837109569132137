#include "dnls/stability.hpp"

#include "dnls/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dnls {

CArray perturb(const SpectralGrid& g, const CArray& profile, double delta,
               PerturbKind kind, std::uint64_t seed) {
    if (delta == 0.0)
        return profile;
    if (!(delta > 0.0))
        throw ValidationError("perturb: delta must be nonnegative");
    if (kind == PerturbKind::Scaling) {
        const double eta = -delta / hm_norm(g, profile, 1);
        return (1.0 + eta) * profile;
    }
    CArray w(g.N());
    switch (kind) {
    case PerturbKind::EvenBump:
        for (int j = 0; j < g.N(); ++j)
            w[j] = std::exp(-g.x()[j] * g.x()[j]);
        break;
    case PerturbKind::OddBump:
        for (int j = 0; j < g.N(); ++j)
            w[j] = g.x()[j] * std::exp(-g.x()[j] * g.x()[j]);
        break;
    default:
        w = random_smooth(g, 8, seed);
        break;
    }
    w *= delta / hm_norm(g, w, 1);
    return profile + w;
}

namespace {

// inf over (theta, y) of the quadratic-form distance with Fourier weights
// w_m: the optimal phase for fixed y is the argument of the weighted pairing
// P(y) = sum_m w_m u^_m conj(r^_m) e^{i k_m y} dx / N, the shift is located
// by evaluating P at every grid offset with one inverse transform and
// refined by golden-section search.
OrbitalFit fit_modulation(const SpectralGrid& g, const CArray& u,
                          const CArray& reference, const Array& w) {
    const int N = g.N();
    const CArray uh = fft(u);
    const CArray rh = fft(reference);

    CArray coef(N);
    double nu = 0.0, nr = 0.0;
    const double scale = g.dx() / N;
    for (int m = 0; m < N; ++m) {
        coef[m] = w[m] * uh[m] * std::conj(rh[m]) * scale;
        nu += w[m] * std::norm(uh[m]) * scale;
        nr += w[m] * std::norm(rh[m]) * scale;
    }
    // P at y = x_j in one transform: e^{i k_m x_j} = (-1)^m e^{2 pi i m j / N}
    CArray twisted = coef;
    for (int m = 1; m < N; m += 2)
        twisted[m] = -twisted[m];
    const CArray vals = ifft(twisted) * static_cast<double>(N);
    int jbest = 0;
    for (int j = 1; j < N; ++j)
        if (std::abs(vals[j]) > std::abs(vals[jbest]))
            jbest = j;

    auto pairing = [&](double y) {
        Complex acc(0.0, 0.0);
        for (int m = 0; m < N; ++m)
            acc += coef[m] * std::exp(Complex(0.0, g.k()[m] * y));
        return acc;
    };
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = g.x()[jbest] - g.dx();
    double b = g.x()[jbest] + g.dx();
    double y1 = b - gr * (b - a);
    double y2 = a + gr * (b - a);
    double f1 = std::abs(pairing(y1));
    double f2 = std::abs(pairing(y2));
    while (b - a > 1e-6 * g.dx()) {
        if (f1 < f2) {
            a = y1;
            y1 = y2;
            f1 = f2;
            y2 = a + gr * (b - a);
            f2 = std::abs(pairing(y2));
        } else {
            b = y2;
            y2 = y1;
            f2 = f1;
            y1 = b - gr * (b - a);
            f1 = std::abs(pairing(y1));
        }
    }
    OrbitalFit fit;
    fit.y = 0.5 * (a + b);
    const Complex P = pairing(fit.y);
    fit.theta = std::arg(P);
    fit.distance = std::sqrt(std::max(0.0, nu + nr - 2.0 * std::abs(P)));
    return fit;
}

} // namespace

OrbitalFit orbital_distance_to(const SpectralGrid& g, const CArray& u,
                               const CArray& reference) {
    Array w(g.N());
    for (int m = 0; m < g.N(); ++m)
        w[m] = 1.0 + g.k()[m] * g.k()[m];
    return fit_modulation(g, u, reference, w);
}

OrbitalFit orbital_distance_x(const SpectralGrid& g, const CArray& u,
                              const CArray& reference, double omega, double c) {
    Array w(g.N());
    for (int m = 0; m < g.N(); ++m) {
        if (m == g.N() / 2) {
            w[m] = omega; // matches the x_quadratic Nyquist convention
        } else {
            const double d = g.k()[m] - 0.5 * c;
            w[m] = d * d + omega - 0.25 * c * c;
        }
    }
    return fit_modulation(g, u, reference, w);
}

OrbitalFit orbital_distance(const SpectralGrid& g, const CArray& u, double omega,
                            double c, const ModelParams& p, EquationForm form) {
    const SolitonProfile prof = sample_profile(omega, c, p, g);
    const CArray& ref =
        form == EquationForm::Derivative ? prof.dnls : prof.varphi;
    require_edge_decay(g, ref, kEdgeTolAlgebraic);
    return orbital_distance_to(g, u, ref);
}

namespace {

struct CorridorParams {
    double omega_hi = 0.0, c_hi = 0.0; // the B+ membership parameters
    double omega_lo = 0.0, c_lo = 0.0; // the B- membership parameters
    double d_hi = 0.0, d_lo = 0.0;
    double l4_weight = 0.0; // coefficient of ||v||_4^4 in the corridor bounds
};

bool corridor_params(double omega, double c, const ModelParams& p, double eps,
                     int case_index, CorridorParams* out) {
    switch (case_index) {
    case 1: {
        const double mu = std::sqrt(omega);
        const double s = c / (2.0 * mu);
        if (mu - eps <= 0.0)
            return false;
        out->omega_hi = (mu + eps) * (mu + eps);
        out->c_hi = 2.0 * s * (mu + eps);
        out->omega_lo = (mu - eps) * (mu - eps);
        out->c_lo = 2.0 * s * (mu - eps);
        out->l4_weight = s * eps / 4.0;
        break;
    }
    case 2:
        out->omega_hi = omega;
        out->c_hi = eps;
        out->omega_lo = omega;
        out->c_lo = -eps;
        out->l4_weight = eps / 8.0;
        break;
    default:
        out->omega_hi = omega + eps;
        out->c_hi = c;
        out->omega_lo = omega - eps;
        out->c_lo = c;
        out->l4_weight = 0.0;
        break;
    }
    if (!admissible(out->omega_hi, out->c_hi, p) ||
        !admissible(out->omega_lo, out->c_lo, p))
        return false;
    out->d_hi = action_d(out->omega_hi, out->c_hi, p);
    out->d_lo = action_d(out->omega_lo, out->c_lo, p);
    return true;
}

// The four initial membership margins of the corridor proof: v0 must lie in
// B+ at the upper parameters and B- at the lower ones.
double membership_margin(const SpectralGrid& g, const CArray& v0,
                         const ModelParams& p, const CorridorParams& cp) {
    const double s_hi = action_Scal(g, v0, cp.omega_hi, cp.c_hi, p);
    const double s_lo = action_Scal(g, v0, cp.omega_lo, cp.c_lo, p);
    const double j_hi = jc(g, v0, cp.c_hi, p);
    const double j_lo = jc(g, v0, cp.c_lo, p);
    return std::min(std::min(cp.d_hi - s_hi, cp.d_hi - j_hi),
                    std::min(cp.d_lo - s_lo, j_lo - cp.d_lo));
}

} // namespace

StabilityReport stability_experiment(double b, double omega, double c,
                                     double delta, PerturbKind kind, double T,
                                     const StabilityConfig& cfg,
                                     std::uint64_t seed) {
    const ModelParams p = ModelParams::from_b(b);
    const ParamRegion region = classify(omega, c, p);
    if (region == ParamRegion::Inadmissible)
        throw ValidationError("stability_experiment: (omega, c) outside the "
                              "existence region");
    const SpectralGrid g = cfg.grid.N() > 0
                               ? cfg.grid
                               : (region == ParamRegion::AlgebraicBoundary
                                      ? SpectralGrid(400.0, 16384)
                                      : SpectralGrid(40.0, 2048));

    const SolitonProfile prof = sample_profile(omega, c, p, g);
    const CArray& base =
        cfg.equation == EquationForm::Derivative ? prof.dnls : prof.varphi;
    const CArray v0 = perturb(g, base, delta, kind, seed);

    StabilityReport rep;
    rep.b = b;
    rep.omega = omega;
    rep.c = c;
    rep.delta = delta;
    rep.kind = kind;
    rep.seed = seed;
    rep.equation = cfg.equation;

    EvolveConfig ecfg;
    ecfg.equation = cfg.equation;
    ecfg.params = p;
    ecfg.dt = cfg.dt > 0.0 ? cfg.dt : default_dt(g, ecfg);
    ecfg.safety = cfg.safety;
    ecfg.snapshot_stride = 1 << 30; // chunks record only their endpoints
    const double dt = ecfg.dt;

    // corridor calibration on the initial data
    const bool gamma_window =
        (p.gamma > 0.0 && p.gamma < 1.0) || (p.gamma == 0.0 && c < 0.0);
    if (cfg.check_corridor && cfg.equation == EquationForm::Gauged &&
        gamma_window) {
        rep.corridor.case_index = c > 0.0 ? 1 : (c == 0.0 ? 2 : 3);
        for (double eps : {0.02, 0.05, 0.1, 0.15, 0.2}) {
            CorridorParams cp;
            if (!corridor_params(omega, c, p, eps, rep.corridor.case_index, &cp))
                continue;
            const double margin = membership_margin(g, v0, p, cp);
            if (margin > 1e-6) {
                rep.corridor.applicable = true;
                rep.corridor.epsilon = eps;
                rep.corridor.margin_min = margin;
                rep.corridor.initial_member = true;
                break;
            }
        }
    }
    CorridorParams cp;
    if (rep.corridor.applicable)
        corridor_params(omega, c, p, rep.corridor.epsilon,
                        rep.corridor.case_index, &cp);
    rep.corridor.slack_min = std::numeric_limits<double>::infinity();
    rep.corridor.k_margin_min = std::numeric_limits<double>::infinity();

    // reference invariants for drift bookkeeping
    InvariantRecord q0;
    bool have_q0 = false;
    bool all_guarded = true;
    int first_sign = 0;

    auto inspect = [&](double t, const CArray& f) {
        rep.times.push_back(t);
        const OrbitalFit fit = orbital_distance_to(g, f, base);
        rep.distance.push_back(fit.distance);
        rep.theta.push_back(fit.theta);
        rep.shift.push_back(fit.y);
        rep.sup_distance = std::max(rep.sup_distance, fit.distance);

        const bool guarded = edge_ratio(g, f) <= kEdgeTolAlgebraic;
        all_guarded = all_guarded && guarded;
        if (guarded) {
            const InvariantRecord q = cfg.equation == EquationForm::Derivative
                                          ? invariants_u(g, f, p)
                                          : invariants_v(g, f, p);
            if (!have_q0) {
                q0 = q;
                have_q0 = true;
            }
            auto upd = [](double& worst, double a, double a0) {
                worst = std::max(worst, std::abs(a - a0) / std::max(1.0, std::abs(a0)));
            };
            upd(rep.energy_drift, q.energy, q0.energy);
            upd(rep.mass_drift, q.mass, q0.mass);
            upd(rep.momentum_drift, q.momentum, q0.momentum);
        }

        if (cfg.equation == EquationForm::Gauged && guarded) {
            const double K = nehari_K(g, f, omega, c, p);
            const double J = jc(g, f, c, p);
            const int sign = K > 0.0 ? 1 : (K < 0.0 ? -1 : 0);
            rep.k_sign.push_back(sign);
            rep.jc_series.push_back(J);
            if (first_sign == 0)
                first_sign = sign;
            else if (sign != 0 && sign != first_sign)
                rep.k_sign_constant = false;
            if (rep.corridor.applicable) {
                const double l4 = std::pow(lp_norm(g, f, 4), 4);
                const double lower = cp.d_lo - cp.l4_weight * l4;
                const double upper = cp.d_hi + cp.l4_weight * l4;
                const double slack = std::min(J - lower, upper - J);
                rep.corridor.slack_min = std::min(rep.corridor.slack_min, slack);
                if (slack <= 0.0)
                    rep.corridor.held = false;
                const double k_hi = nehari_K(g, f, cp.omega_hi, cp.c_hi, p);
                const double k_lo = nehari_K(g, f, cp.omega_lo, cp.c_lo, p);
                const double km = std::min(k_hi, -k_lo);
                rep.corridor.k_margin_min =
                    std::min(rep.corridor.k_margin_min, km);
                if (km <= 0.0)
                    rep.corridor.k_signs_held = false;
            }
        }
        return fit.y;
    };

    inspect(0.0, v0);

    CArray state = v0;
    double y_total = 0.0; // accumulated comoving recentering, lab frame
    double t = 0.0;
    const double chunk = cfg.snapshot_stride * dt;
    while (t < T * (1.0 - 1e-12)) {
        ecfg.t_final = std::min(chunk, T - t);
        const Trajectory piece = run(g, state, ecfg);
        if (piece.blew_up || piece.snapshots.empty()) {
            rep.blew_up = true;
            break;
        }
        state = piece.snapshots.back().field;
        t += ecfg.t_final;
        const double y_rel = inspect(t, state);
        if (cfg.comoving) {
            state = translate(g, state, -y_rel);
            y_total += y_rel;
            rep.shift.back() = y_total;
        }
    }

    rep.ratio = rep.delta > 0.0 ? rep.sup_distance / rep.delta : 0.0;
    const double drift =
        std::max({rep.energy_drift, rep.mass_drift, rep.momentum_drift});
    rep.valid = !rep.blew_up && all_guarded && drift < 1e-7;
    if (!rep.corridor.applicable)
        rep.corridor.held = false;
    return rep;
}

GlobalBoundReport global_bound_experiment(double b, const SpectralGrid& g,
                                          const CArray& u0, double T,
                                          double dt) {
    const ModelParams p = ModelParams::from_b(b);
    GlobalBoundReport rep;
    const double n2 = l2_norm(g, u0);
    rep.mass = n2 * n2;
    if (b > -3.0 / 16.0) {
        rep.mass_margin = mass_threshold(b) - rep.mass;
        rep.below_threshold = rep.mass_margin > 0.0;
    } else {
        // every H^1 datum evolves globally in this range
        rep.mass_margin = std::numeric_limits<double>::infinity();
        rep.below_threshold = true;
    }

    EvolveConfig ecfg;
    ecfg.equation = EquationForm::Derivative;
    ecfg.params = p;
    ecfg.dt = dt;
    ecfg.t_final = T;
    const Trajectory traj = run(g, u0, ecfg);
    rep.blew_up = traj.blew_up;
    for (const auto& s : traj.snapshots) {
        rep.times.push_back(s.t);
        rep.h1.push_back(hm_norm(g, s.field, 1));
    }
    rep.initial_h1 = rep.h1.empty() ? 0.0 : rep.h1.front();
    rep.sup_h1 = rep.h1.empty()
                     ? 0.0
                     : *std::max_element(rep.h1.begin(), rep.h1.end());
    rep.bounded = !rep.blew_up && rep.sup_h1 < 10.0 * rep.initial_h1;
    return rep;
}

} // namespace dnls
