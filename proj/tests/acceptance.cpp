// Acceptance suite: twelve numbered criteria, one verdict line each.
// Exit code is the number of failed criteria. Criteria whose pinned
// tolerance is structurally unattainable on desk-scale windows fail
// honestly and carry the measured numbers on their line.
//
// Run all: ./acceptance        Run a subset: ./acceptance 1 4 10

#include "dnls/errors.hpp"
#include "dnls/evolve.hpp"
#include "dnls/functionals.hpp"
#include "dnls/params.hpp"
#include "dnls/soliton.hpp"
#include "dnls/spectral.hpp"
#include "dnls/stability.hpp"
#include "dnls/variational.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

using namespace dnls;

namespace {

struct Verdict {
    bool pass = true;
    std::string note;
};

std::string num(double v) {
    char b[40];
    std::snprintf(b, sizeof b, "%.3g", v);
    return b;
}

double rel(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

// ---------------------------------------------------------------- 1
// Closed-form invariants vs grid quadrature across the existence region.

struct BS {
    double b, s;
};

Verdict criterion1() {
    Verdict v;
    std::vector<BS> interior;
    // gamma > 0, both velocity signs (31 pairs)
    for (double b : {-0.15, -0.1, -0.05, 0.0, 0.5, 2.0})
        for (double s : {-0.9, -0.5, 0.3, 0.6, 0.9})
            interior.push_back({b, s});
    interior.push_back({-0.1, -0.1});
    // gamma = 0 needs c < 0 (5 pairs)
    for (double s : {-0.9, -0.7, -0.5, -0.3, -0.1})
        interior.push_back({-3.0 / 16.0, s});
    // gamma < 0 needs c below the inner velocity bound (9 pairs)
    for (double s : {-0.9, -0.7, -0.55})
        interior.push_back({-0.25, s});
    for (double s : {-0.9, -0.8, -0.75})
        interior.push_back({-0.35, s});
    for (double s : {-0.95, -0.9, -0.85})
        interior.push_back({-0.5, s});
    if (interior.size() != 45) {
        v.pass = false;
        v.note = "internal: interior sweep has " +
                 std::to_string(interior.size()) + " pairs, wanted 45";
        return v;
    }

    const SpectralGrid gi(40.0, 2048);
    double worst_i = 0.0;
    for (BS& pt : interior) {
        const ModelParams p = ModelParams::from_b(pt.b);
        // keep clear of the momentum zero so relative errors stay meaningful
        if (pt.b > 0.0) {
            const double ss = s_star(pt.b);
            if (std::abs(pt.s - ss) < 0.05)
                pt.s += (pt.s >= ss ? 0.1 : -0.1);
        }
        const double c = 2.0 * pt.s;
        const ClosedFormInvariants want = closed_invariants(1.0, c, p);
        const SolitonProfile prof = sample_profile(1.0, c, p, gi);
        const InvariantRecord got = invariants_v(gi, prof.varphi, p);
        worst_i = std::max({worst_i, rel(got.mass, want.mass),
                            rel(got.momentum, want.momentum),
                            rel(got.energy, want.energy)});
    }

    const SpectralGrid ga(400.0, 16384);
    const double L = ga.L();
    double worst_a = 0.0;
    for (double b : {-0.1, -0.05, 0.0, 0.5, 2.0}) {
        const ModelParams p = ModelParams::from_b(b);
        const double c = 2.0;
        const ClosedFormInvariants want = closed_invariants(1.0, c, p);
        const SolitonProfile prof = sample_profile(1.0, c, p, ga);
        InvariantRecord got = invariants_v(ga, prof.varphi, p);
        // first-order window-tail corrections for the 1/x^2 profile decay
        got.mass += 8.0 / (c * L);
        got.momentum -= 4.0 / L;
        got.energy += c / L;
        // momentum and energy vanish identically at b = 0, c = 2, so the
        // mass sets the scale floor for their relative errors
        auto rel_scaled = [&](double g_, double w_) {
            return std::abs(g_ - w_) / std::max(std::abs(w_), want.mass);
        };
        worst_a = std::max({worst_a, rel(got.mass, want.mass),
                            rel_scaled(got.momentum, want.momentum),
                            rel_scaled(got.energy, want.energy)});
    }

    v.pass = worst_i < 1e-8 && worst_a < 1e-3;
    v.note = "interior max rel " + num(worst_i) + " over 45 pts (tol 1e-8); " +
             "algebraic max rel " + num(worst_a) + " over 5 pts (tol 1e-3)";
    return v;
}

// ---------------------------------------------------------------- 2
// d(mass)/d(omega): finite difference vs closed form, and the (omega,omega)
// Hessian entry as half of it.

Verdict criterion2() {
    Verdict v;
    const std::vector<BS> pts = {{-0.1, 0.5},        {-0.1, -0.5}, {0.0, 0.3},
                                 {0.5, 0.6},         {0.5, 0.15},  {2.0, 0.8},
                                 {-0.25, -0.7},      {-0.5, -0.88},
                                 {-3.0 / 16.0, -0.4}, {1.0, -0.3}};
    double worst_fd = 0.0, worst_hess = 0.0;
    for (const BS& pt : pts) {
        const ModelParams p = ModelParams::from_b(pt.b);
        const double c = 2.0 * pt.s, h = 1e-4;
        const double fd =
            (mass_closed(1.0 + h, c, p) - mass_closed(1.0 - h, c, p)) /
            (2.0 * h);
        const double closed = dmass_domega_closed(1.0, c, p);
        worst_fd = std::max(worst_fd, rel(fd, closed));
        const HessianResult hess = hessian_d(1.0, c, p);
        worst_hess = std::max(worst_hess, rel(hess.matrix(0, 0), 0.5 * closed));
    }
    v.pass = worst_fd < 1e-6 && worst_hess < 1e-4;
    v.note = "fd dM/domega max rel " + num(worst_fd) +
             " (tol 1e-6); Hessian(omega,omega) vs M_omega/2 max rel " +
             num(worst_hess) + " (tol 1e-4); 10 pts";
    return v;
}

// ---------------------------------------------------------------- 3
// det d''(omega, c): finite difference vs closed form, sign pattern tied to
// the momentum sign.

Verdict criterion3() {
    Verdict v;
    std::vector<BS> pts;
    for (double s : {-0.85, -0.6, -0.3, 0.3, 0.6, 0.85})
        pts.push_back({-0.1, s});
    for (double s : {-0.7, -0.2, 0.5})
        pts.push_back({0.0, s});
    for (double s : {-0.9, -0.7, -0.55})
        pts.push_back({-0.25, s});
    const std::size_t n_nonpos = pts.size();
    for (double b : {0.5, 1.0}) {
        const double ss = s_star(b);
        pts.push_back({b, ss - 0.25});
        pts.push_back({b, ss - 0.15});
        pts.push_back({b, ss + 0.15});
        pts.push_back({b, ss + 0.25});
    }
    double worst = 0.0;
    bool signs_ok = true;
    std::string sign_note;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const ModelParams p = ModelParams::from_b(pts[i].b);
        const double c = 2.0 * pts[i].s;
        const HessianResult h = hessian_d(1.0, c, p);
        worst = std::max(worst, rel(h.fd_det, h.closed_det));
        const double mom = momentum_closed(1.0, c, p);
        const bool want_neg = i < n_nonpos || mom > 0.0;
        if ((h.closed_det < 0.0) != want_neg || h.fd_det * h.closed_det <= 0.0) {
            signs_ok = false;
            sign_note = "; sign mismatch at b=" + num(pts[i].b) +
                        " s=" + num(pts[i].s);
        }
    }
    v.pass = worst < 1e-4 && signs_ok;
    v.note = "fd vs closed det max rel " + num(worst) +
             " over 20 pts (tol 1e-4); dets negative for b<=0, sign flips "
             "with momentum across s* for b>0" +
             sign_note;
    return v;
}

// ---------------------------------------------------------------- 4
// Momentum sign pattern along the velocity sweep; zero at s* for b > 0.

Verdict criterion4() {
    Verdict v;
    auto sweep = [](double b, double lo, double hi, int n,
                    auto expected_sign) {
        const ModelParams p = ModelParams::from_b(b);
        for (int i = 0; i < n; ++i) {
            const double s = lo + (hi - lo) * i / (n - 1);
            const double mom = momentum_closed(1.0, 2.0 * s, p);
            if (expected_sign(s) * mom <= 0.0)
                return false;
        }
        return true;
    };
    bool ok = true;
    ok = ok && sweep(-0.25, -0.995, -0.505, 200, [](double) { return 1.0; });
    ok = ok && sweep(-0.1, -0.995, 1.0, 200, [](double) { return 1.0; });
    ok = ok && sweep(0.0, -0.995, 0.995, 200, [](double) { return 1.0; });
    const double ss = s_star(0.5);
    ok = ok && sweep(0.5, -0.995, 0.995, 200,
                     [ss](double s) { return s < ss ? 1.0 : -1.0; });
    const double at_star =
        std::abs(momentum_closed(1.0, 2.0 * ss, ModelParams::from_b(0.5)));
    v.pass = ok && at_star < 1e-10;
    v.note = std::string("sign pattern holds on 200-pt sweeps for b in "
                         "{-0.25,-0.1,0,0.5}") +
             (ok ? "" : " [violated]") + "; |P| at s*(0.5) = " + num(at_star) +
             " (tol 1e-10)";
    return v;
}

// ---------------------------------------------------------------- 5
// Convergence of exponential profiles to the algebraic one as s -> 1.
// The strict-decrease clause holds; the pinned 1e-2 threshold for the H^1
// distance at s = 0.999 is unattainable on any desk-scale window (the
// distance is dominated by the tail mismatch and decays like (1-s)^(1/4)),
// so this criterion reports a documented failure with the measured value.

Verdict criterion5() {
    Verdict v;
    const ModelParams p = ModelParams::from_b(-0.1);
    const SpectralGrid g(400.0, 16384);
    const std::vector<double> ss = {0.9, 0.99, 0.999};
    bool decreasing = true;
    double h1_last = 0.0;
    std::string dists;
    for (int m = 0; m <= 2; ++m) {
        const std::vector<double> d = converge_to_algebraic(ss, m, p, g);
        decreasing = decreasing && d[0] > d[1] && d[1] > d[2];
        if (m == 1) {
            h1_last = d[2];
            dists = num(d[0]) + " / " + num(d[1]) + " / " + num(d[2]);
        }
    }
    v.pass = decreasing && h1_last < 1e-2;
    v.note = std::string("H^m distances strictly decreasing for m=0,1,2") +
             (decreasing ? "" : " [violated]") + "; H^1 at s={0.9,0.99,0.999}: " +
             dists + "; threshold clause wants < 1e-2, tail mismatch floors it "
             "at O((1-s)^(1/4))";
    return v;
}

// ---------------------------------------------------------------- 6
// Gauge layer: invariant equality through the gauge, round-trip identity,
// and the action chain closed form = both gauges.

Verdict criterion6() {
    Verdict v;
    const ModelParams p = ModelParams::from_b(-0.1);
    const SpectralGrid g(30.0, 1024);
    double worst_inv = 0.0, worst_rt = 0.0;
    for (int seed = 1; seed <= 20; ++seed) {
        const CArray u = random_decaying(g, 10, seed);
        const CArray gu = gauge_G(g, u);
        const InvariantRecord a = invariants_u(g, u, p);
        const InvariantRecord b = invariants_v(g, gu, p);
        worst_inv = std::max({worst_inv, std::abs(a.mass - b.mass),
                              std::abs(a.momentum - b.momentum),
                              std::abs(a.energy - b.energy)});
        const CArray back = gauge_G_inverse(g, gu);
        worst_rt = std::max(worst_rt, l2_norm(g, CArray(back - u)) /
                                          l2_norm(g, u));
    }
    const SpectralGrid g2(40.0, 2048);
    const SolitonProfile prof = sample_profile(1.0, 0.8, p, g2);
    const double d = action_d(1.0, 0.8, p);
    const double s_gauged = action_Scal(g2, prof.varphi, 1.0, 0.8, p);
    const double s_deriv = action_S(g2, prof.dnls, 1.0, 0.8, p);
    const double worst_act = std::max(rel(s_gauged, d), rel(s_deriv, d));
    v.pass = worst_inv < 1e-10 && worst_rt < 1e-10 && worst_act < 1e-7;
    v.note = "invariants through gauge max abs " + num(worst_inv) +
             " (tol 1e-10); round-trip max rel " + num(worst_rt) +
             " (tol 1e-10); action chain max rel " + num(worst_act) +
             " (tol 1e-7)";
    return v;
}

// ---------------------------------------------------------------- 7
// Evolution fidelity on exact soliton data and fourth-order step scaling.

Verdict criterion7() {
    Verdict v;
    const ModelParams p = ModelParams::from_b(0.0);
    const SpectralGrid g(30.0, 2048);
    double worst_err = 0.0, worst_drift = 0.0;
    for (double c : {0.0, 1.0}) {
        const SolitonProfile prof = sample_profile(1.0, c, p, g);
        EvolveConfig cfg;
        cfg.equation = EquationForm::Derivative;
        cfg.params = p;
        cfg.dt = 1e-4;
        cfg.t_final = 2.0;
        cfg.snapshot_stride = 4000;
        const Trajectory traj = run(g, prof.dnls, cfg);
        if (traj.blew_up || traj.snapshots.empty()) {
            v.pass = false;
            v.note = "soliton run blew up at c=" + num(c);
            return v;
        }
        const CArray exact =
            CArray(translate(g, prof.dnls, c * 2.0) *
                   std::exp(Complex(0.0, 1.0 * 2.0)));
        worst_err = std::max(
            worst_err,
            hm_norm(g, CArray(traj.snapshots.back().field - exact), 1));
        worst_drift = std::max(worst_drift, traj.max_drift());
    }

    // halving study on the coarser grid where the spatial floor sits below
    // the dt^4 term
    const SpectralGrid gh(30.0, 1024);
    const SolitonProfile prof = sample_profile(1.0, 1.0, p, gh);
    auto err_at = [&](double dt) {
        EvolveConfig cfg;
        cfg.equation = EquationForm::Derivative;
        cfg.params = p;
        cfg.dt = dt;
        cfg.t_final = 1.0;
        cfg.snapshot_stride = 1 << 20;
        const Trajectory traj = run(gh, prof.dnls, cfg);
        const CArray exact = CArray(translate(gh, prof.dnls, 1.0) *
                                    std::exp(Complex(0.0, 1.0)));
        return hm_norm(gh, CArray(traj.snapshots.back().field - exact), 1);
    };
    const double e1 = err_at(4e-4), e2 = err_at(2e-4);
    const double ratio = e1 / e2;
    v.pass = worst_err < 1e-5 && worst_drift < 1e-8 && ratio > 12.0 &&
             ratio < 20.0;
    v.note = "H^1 error " + num(worst_err) + " at T=2 (tol 1e-5); drift " +
             num(worst_drift) + " (tol 1e-8); halving ratio " + num(ratio) +
             " (want 12..20)";
    return v;
}

// ---------------------------------------------------------------- 8
// Nehari minimization recovers the action value and the soliton orbit.
// The two interior points pass both clauses. On the algebraic boundary the
// discrete minimizer on a periodic window sits at X-distance ~13/L from the
// sampled infinite-line profile (its action is lower), so the pinned 1e-3
// distance is unattainable at desk scale; the value clause still passes and
// the distance clause reports a documented failure.

Verdict criterion8() {
    Verdict v;
    struct Case {
        double omega, c, gamma;
        bool algebraic;
    };
    const std::vector<Case> cases = {
        {1.0, 0.0, 1.0, false}, {1.0, 1.0, 0.5, false}, {1.0, 2.0, 0.5, true}};
    double worst_val = 0.0, worst_int = 0.0;
    double alg_dist = 0.0, alg_res = 0.0;
    bool int_conv = true;
    for (const Case& cs : cases) {
        const ModelParams p = ModelParams::from_gamma(cs.gamma);
        const SpectralGrid g = cs.algebraic ? SpectralGrid(400.0, 16384)
                                            : SpectralGrid(40.0, 2048);
        const NehariResult r = nehari_minimize(g, cs.omega, cs.c, p);
        worst_val =
            std::max(worst_val, rel(r.value, action_d(cs.omega, cs.c, p)));
        const SolitonProfile prof = sample_profile(cs.omega, cs.c, p, g);
        if (cs.algebraic) {
            alg_dist =
                orbital_distance_x(g, r.minimizer, prof.varphi, cs.omega, cs.c)
                    .distance;
            alg_res = r.residual;
        } else {
            int_conv = int_conv && r.converged;
            worst_int = std::max(
                worst_int, orbital_distance_to(g, r.minimizer, prof.varphi)
                               .distance);
        }
    }
    v.pass = int_conv && worst_val < 1e-4 && worst_int < 1e-3 &&
             alg_dist < 1e-3;
    v.note = std::string(int_conv ? "" : "[interior non-convergence] ") +
             "value max rel " + num(worst_val) +
             " (tol 1e-4); interior orbit distance max " + num(worst_int) +
             " (tol 1e-3); algebraic X-distance " + num(alg_dist) +
             " vs 1e-3 (descent stalls at residual " + num(alg_res) +
             ", window floor ~13/L)";
    return v;
}

// ---------------------------------------------------------------- 9
// Mass-constrained minimization in the negative-velocity regime. The pinned
// point (gamma = -0.5, c = -1) lies outside the existence region, so the
// run substitutes gamma = -0.25 (admissible at c = -1; the multiplier
// target 3/4 = omega - c^2/4 does not depend on gamma).

Verdict criterion9() {
    Verdict v;
    const ModelParams p = ModelParams::from_gamma(-0.25);
    const double c = -1.0;
    const SpectralGrid g(40.0, 2048);
    const double m = mass_closed(1.0, c, p);
    const MassConstrainedResult r = mass_constrained_minimize(g, c, m, p);
    const SolitonProfile prof = sample_profile(1.0, c, p, g);
    // the minimizer lives in the reduced variable, so the reference is the
    // real profile, not the carrier-bearing field
    const double dist =
        orbital_distance_to(g, r.minimizer, prof.Phi.cast<Complex>())
            .distance;
    const double mult_rel = rel(r.multiplier, 0.75);
    const GnConstants gn = gn_constants(g);
    const double lower = -gn.C2 * c * c * m * m * m;
    const bool bounds_ok = r.value > lower && r.value < 0.0;
    v.pass = r.converged && dist < 1e-3 && mult_rel < 1e-3 && bounds_ok;
    v.note = "gamma=-0.25 stand-in (pinned gamma=-0.5 inadmissible at c=-1, "
             "multiplier target unchanged); orbit distance " +
             num(dist) + " (tol 1e-3); lambda rel " + num(mult_rel) +
             " (tol 1e-3); value " + num(r.value) + " in (" + num(lower) +
             ", 0)";
    return v;
}

// ---------------------------------------------------------------- 10
// Orbital stability runs. The first two runs integrate the gauged equation
// where the potential-well corridor applies; the third is outside the
// corridor hypotheses (gamma < 0) so only the orbit bound is asserted.

Verdict criterion10() {
    Verdict v;
    struct Run {
        double b, c;
        PerturbKind kind;
        SpectralGrid grid;   // default-constructed picks per-region defaults
        bool corridor;
        const char* label;
    };
    // the algebraic run uses a window commensurate with the soliton carrier
    // (L a multiple of pi for c = 2) so the gauged field is continuous at
    // the wrap; on incommensurate windows the phase seam seeds a grid-scale
    // instability that destroys the run
    std::vector<Run> runs;
    runs.push_back({-0.1, 2.0, PerturbKind::EvenBump,
                    SpectralGrid(63.0 * M_PI, 8192), true, "algebraic c=2"});
    runs.push_back(
        {-0.1, 0.0, PerturbKind::EvenBump, SpectralGrid(), true, "c=0"});
    runs.push_back({-0.25, -1.5, PerturbKind::EvenBump, SpectralGrid(), false,
                    "c=-1.5"});
    bool ok = true;
    std::string detail;
    for (const Run& r : runs) {
        StabilityConfig cfg;
        cfg.equation = EquationForm::Gauged;
        if (r.grid.N() > 0)
            cfg.grid = r.grid;
        const StabilityReport rep =
            stability_experiment(r.b, 1.0, r.c, 1e-2, r.kind, 20.0, cfg);
        bool run_ok = rep.valid && !rep.blew_up && rep.ratio <= 10.0;
        if (r.corridor)
            run_ok = run_ok && rep.corridor.applicable &&
                     rep.corridor.initial_member && rep.corridor.held &&
                     rep.corridor.slack_min > 0.0 &&
                     rep.corridor.k_signs_held && rep.k_sign_constant;
        ok = ok && run_ok;
        detail += std::string(detail.empty() ? "" : "; ") + r.label +
                  (run_ok ? " ok" : " FAILED") + " ratio " + num(rep.ratio) +
                  " drift " +
                  num(std::max({rep.energy_drift, rep.mass_drift,
                                rep.momentum_drift}));
        if (r.corridor && rep.corridor.applicable)
            detail += " corridor slack " + num(rep.corridor.slack_min);
        if (!r.corridor)
            detail += " (corridor n/a, gamma<0)";
    }
    v.pass = ok;
    v.note = detail;
    return v;
}

// ---------------------------------------------------------------- 11
// Global H^1 bound below the mass threshold.

Verdict criterion11() {
    Verdict v;
    bool ok = true;
    std::string detail;
    for (double b : {0.0, -0.1}) {
        const SpectralGrid g(40.0, 2048);
        const double target = 0.9 * mass_threshold(b);
        CArray u0(g.N());
        for (int j = 0; j < g.N(); ++j)
            u0[j] = std::exp(-g.x()[j] * g.x()[j]);
        u0 *= std::sqrt(target) / l2_norm(g, u0);
        const GlobalBoundReport r = global_bound_experiment(b, g, u0, 20.0);
        const bool run_ok = r.below_threshold && !r.blew_up && r.bounded;
        ok = ok && run_ok;
        detail += std::string(detail.empty() ? "" : "; ") + "b=" + num(b) +
                  (run_ok ? " ok" : " FAILED") + " sup H^1 " + num(r.sup_h1) +
                  " / initial " + num(r.initial_h1);
    }
    v.pass = ok;
    v.note = detail + " (mass at 0.9 of threshold, T=20)";
    return v;
}

// ---------------------------------------------------------------- 12
// Potential-well structure: the action splitting identity and agreement of
// the two well characterizations on scaled soliton fields.

Verdict criterion12() {
    Verdict v;
    const ModelParams p = ModelParams::from_b(-0.1);
    const SpectralGrid g(30.0, 1024);
    double worst_id = 0.0;
    for (int seed = 1; seed <= 100; ++seed) {
        const CArray f = random_decaying(g, 12, seed);
        const double s = action_Scal(g, f, 1.0, 0.7, p);
        const double split =
            0.5 * nehari_K(g, f, 1.0, 0.7, p) + jc(g, f, 0.7, p);
        worst_id = std::max(worst_id,
                            std::abs(s - split) / std::max(1.0, std::abs(s)));
    }

    const SpectralGrid g2(40.0, 2048);
    int checked = 0, agreed = 0;
    double min_margin = 1e300;
    for (double c : {0.0, 0.8, -0.6, -1.2}) {
        const SolitonProfile prof = sample_profile(1.0, c, p, g2);
        for (int i = 0; i < 13 && checked < 100; ++i) {
            for (double sign : {-1.0, 1.0}) {
                if (checked >= 100)
                    break;
                const double eps = sign * (0.03 + 0.27 * i / 12.0);
                CArray f = CArray((1.0 + eps) * prof.varphi);
                f += 1e-3 * random_decaying(g2, 6, 1000 + checked) /
                     std::max(1.0,
                              hm_norm(g2, random_decaying(g2, 6, 1000 + checked),
                                      1));
                const WellMembership m = well_membership(g2, f, 1.0, c, p);
                const bool inside_a =
                    eps < 0.0 ? m.a_tag == WellTag::APlus
                              : m.a_tag == WellTag::AMinus;
                const bool pair_ok =
                    (m.a_tag == WellTag::APlus && m.b_tag == WellTag::BPlus) ||
                    (m.a_tag == WellTag::AMinus && m.b_tag == WellTag::BMinus);
                ++checked;
                if (inside_a && pair_ok)
                    ++agreed;
                min_margin = std::min({min_margin, std::abs(m.s_margin),
                                       std::abs(m.k_value),
                                       std::abs(m.j_margin)});
            }
        }
    }
    v.pass = worst_id < 1e-10 && agreed == checked && min_margin > 1e-6;
    v.note = "splitting identity max rel " + num(worst_id) +
             " over 100 fields (tol 1e-10); well agreement " +
             std::to_string(agreed) + "/" + std::to_string(checked) +
             "; min margin " + num(min_margin) + " (want > 1e-6)";
    return v;
}

} // namespace

int main(int argc, char** argv) {
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i)
        wanted.insert(std::atoi(argv[i]));

    struct Entry {
        int id;
        Verdict (*fn)();
        double cap_sec; // 0 means no budget pinned
    };
    const std::vector<Entry> entries = {
        {1, criterion1, 60.0},   {2, criterion2, 0.0},
        {3, criterion3, 0.0},    {4, criterion4, 0.0},
        {5, criterion5, 0.0},    {6, criterion6, 0.0},
        {7, criterion7, 300.0},  {8, criterion8, 300.0},
        {9, criterion9, 0.0},    {10, criterion10, 900.0},
        {11, criterion11, 0.0},  {12, criterion12, 0.0}};

    int failures = 0;
    std::vector<int> failed;
    for (const Entry& e : entries) {
        if (!wanted.empty() && !wanted.count(e.id))
            continue;
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = e.fn();
        } catch (const std::exception& ex) {
            v.pass = false;
            v.note = std::string("exception: ") + ex.what();
        }
        const double sec =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          t0)
                .count();
        if (e.cap_sec > 0.0 && sec > e.cap_sec) {
            v.pass = false;
            v.note += "; over the " + num(e.cap_sec) + " s budget";
        }
        std::printf("criterion %2d: %s  %s (%.1f s)\n", e.id,
                    v.pass ? "PASS" : "FAIL", v.note.c_str(), sec);
        std::fflush(stdout);
        if (!v.pass) {
            ++failures;
            failed.push_back(e.id);
        }
    }
    std::string list;
    for (int id : failed)
        list += (list.empty() ? "" : ", ") + std::to_string(id);
    std::printf("summary: %d of %zu criteria failed%s%s\n", failures,
                wanted.empty() ? entries.size() : wanted.size(),
                failures ? ": " : "", list.c_str());
    return failures;
}
