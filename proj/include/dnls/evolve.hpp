#pragma once

#include "dnls/functionals.hpp"
#include "dnls/params.hpp"
#include "dnls/spectral.hpp"

#include <limits>
#include <vector>

namespace dnls {

// Which evolution equation a trajectory integrates: the derivative NLS
// u_t = i u_xx - |u|^2 u_x + i b |u|^4 u, or its gauge-transformed twin
// v_t = i v_xx - (1/2)|v|^2 v_x + (1/2) v^2 conj(v_x) + i (3 gamma/16)|v|^4 v.
enum class EquationForm { Derivative, Gauged };

struct EvolveConfig {
    EquationForm equation = EquationForm::Derivative;
    ModelParams params;
    double dt = 0.0;       // <= 0 selects the default min(safety dx^2, 1e-3)
    double t_final = 1.0;
    int snapshot_stride = 100;
    double safety = 0.2;   // explicit-substep ceiling: dt <= safety dx^2
    bool linear_only = false;
};

// Ceiling and default step for a grid under this config.
double dt_ceiling(const SpectralGrid& g, const EvolveConfig& cfg);
double default_dt(const SpectralGrid& g, const EvolveConfig& cfg);

struct Snapshot {
    double t = 0.0;
    CArray field;
    // Conserved quantities of the integrated form; only recorded when the
    // field passes the edge-decay guard at this time (guarded flag).
    InvariantRecord invariants;
    bool guarded = false;
};

struct Trajectory {
    std::vector<Snapshot> snapshots;
    // max over guarded snapshots of |Q(t) - Q(0)| / max(1, |Q(0)|)
    double energy_drift = 0.0;
    double mass_drift = 0.0;
    double momentum_drift = 0.0;
    bool blew_up = false;
    double blow_up_time = std::numeric_limits<double>::quiet_NaN();

    double max_drift() const;
};

// One integrating-factor RK4 step of length cfg.dt (or the default when
// cfg.dt <= 0): the linear propagator exp(i k^2 dt) is applied exactly in
// Fourier space, the nonlinearity is stepped by classical RK4 on the
// transformed variable, and all products are dealiased on the 3N grid.
CArray step(const SpectralGrid& g, const CArray& state, const EvolveConfig& cfg);

// Integrate to t_final, landing on it exactly with one shorter final step
// when t_final is not a multiple of dt. Snapshots are recorded every
// snapshot_stride steps plus the initial and final states. Blow-up
// (non-finite spectrum or sup-norm > 1e6) stops the run and flags the
// trajectory, keeping the last finite snapshot.
Trajectory run(const SpectralGrid& g, const CArray& u0, const EvolveConfig& cfg);

} // namespace dnls
