#include "dnls/evolve.hpp"

#include "dnls/errors.hpp"

#include <algorithm>
#include <cmath>

namespace dnls {

double dt_ceiling(const SpectralGrid& g, const EvolveConfig& cfg) {
    return cfg.safety * g.dx() * g.dx();
}

double default_dt(const SpectralGrid& g, const EvolveConfig& cfg) {
    return std::min(dt_ceiling(g, cfg), 1e-3);
}

namespace {

// RK4 on the integrating-factor transform of the nonlinearity. The state
// lives in Fourier space; each nonlinearity evaluation costs three 3N
// transforms (field, derivative, product).
class Stepper {
  public:
    Stepper(const SpectralGrid& g, const EvolveConfig& cfg, double dt)
        : g_(g), cfg_(cfg), dt_(dt) {
        const int N = g.N();
        Eh_.resize(N);
        Ef_.resize(N);
        ik_.resize(N);
        for (int m = 0; m < N; ++m) {
            const double k = g.k()[m];
            Eh_[m] = std::exp(Complex(0.0, -k * k * dt / 2.0));
            Ef_[m] = Eh_[m] * Eh_[m];
            ik_[m] = Complex(0.0, k);
        }
        ik_[N / 2] = 0.0; // first derivative drops the Nyquist mode
    }

    CArray nonlinearity(const CArray& spec) const {
        if (cfg_.linear_only)
            return CArray::Zero(spec.size());
        const CArray uf = to_fine(g_, spec);
        const CArray uxf = to_fine(g_, spec * ik_);
        const Eigen::ArrayXd a2 = uf.abs2();
        CArray out(uf.size());
        if (cfg_.equation == EquationForm::Derivative) {
            const double b = cfg_.params.b;
            out = -a2 * uxf + Complex(0.0, b) * (a2 * a2 * uf);
        } else {
            const double q = 3.0 * cfg_.params.gamma / 16.0;
            out = -0.5 * a2 * uxf + 0.5 * uf * uf * uxf.conjugate() +
                  Complex(0.0, q) * (a2 * a2 * uf);
        }
        return from_fine(g_, out);
    }

    void advance(CArray& spec) const {
        const CArray k1 = dt_ * nonlinearity(spec);
        const CArray k2 = dt_ * nonlinearity(Eh_ * (spec + 0.5 * k1));
        const CArray k3 = dt_ * nonlinearity(Eh_ * spec + 0.5 * k2);
        const CArray k4 = dt_ * nonlinearity(Ef_ * spec + Eh_ * k3);
        spec = Ef_ * spec + (Ef_ * k1 + 2.0 * (Eh_ * (k2 + k3)) + k4) / 6.0;
    }

  private:
    const SpectralGrid& g_;
    const EvolveConfig& cfg_;
    double dt_;
    CArray Eh_, Ef_, ik_;
};

double resolve_dt(const SpectralGrid& g, const EvolveConfig& cfg) {
    const double ceiling = dt_ceiling(g, cfg);
    double dt = cfg.dt > 0.0 ? cfg.dt : default_dt(g, cfg);
    if (dt > ceiling * (1.0 + 1e-12))
        throw ValidationError("evolve: dt exceeds the explicit-substep ceiling "
                              "safety*dx^2; raise safety deliberately or lower dt");
    return dt;
}

InvariantRecord snapshot_invariants(const SpectralGrid& g, const CArray& f,
                                    const EvolveConfig& cfg, bool* guarded) {
    *guarded = edge_ratio(g, f) <= kEdgeTolAlgebraic;
    if (!*guarded)
        return InvariantRecord{};
    return cfg.equation == EquationForm::Derivative
               ? invariants_u(g, f, cfg.params)
               : invariants_v(g, f, cfg.params);
}

double drift_of(const std::vector<Snapshot>& snaps, double InvariantRecord::*q) {
    const Snapshot* first = nullptr;
    for (const auto& s : snaps)
        if (s.guarded) {
            first = &s;
            break;
        }
    if (!first)
        return std::numeric_limits<double>::quiet_NaN();
    const double q0 = first->invariants.*q;
    double worst = 0.0;
    for (const auto& s : snaps)
        if (s.guarded)
            worst = std::max(worst,
                             std::abs(s.invariants.*q - q0) / std::max(1.0, std::abs(q0)));
    return worst;
}

} // namespace

double Trajectory::max_drift() const {
    return std::max({energy_drift, mass_drift, momentum_drift});
}

CArray step(const SpectralGrid& g, const CArray& state, const EvolveConfig& cfg) {
    if (state.size() != g.N())
        throw ValidationError("step: field size does not match the grid");
    const double dt = resolve_dt(g, cfg);
    CArray spec = fft(state);
    Stepper(g, cfg, dt).advance(spec);
    return ifft(spec);
}

Trajectory run(const SpectralGrid& g, const CArray& u0, const EvolveConfig& cfg) {
    if (u0.size() != g.N())
        throw ValidationError("run: field size does not match the grid");
    if (!(cfg.t_final > 0.0))
        throw ValidationError("run: t_final must be positive");
    if (cfg.snapshot_stride < 1)
        throw ValidationError("run: snapshot_stride must be >= 1");
    const double dt = resolve_dt(g, cfg);

    const long long nfull = static_cast<long long>(std::floor(cfg.t_final / dt * (1.0 + 1e-12)));
    const double rem = cfg.t_final - nfull * dt;
    const bool partial = rem > 1e-12 * cfg.t_final;

    Trajectory traj;
    CArray spec = fft(u0);

    auto record = [&](double t, const CArray& s) {
        Snapshot snap;
        snap.t = t;
        snap.field = ifft(s);
        snap.invariants = snapshot_invariants(g, snap.field, cfg, &snap.guarded);
        const double sup = snap.field.abs().maxCoeff();
        traj.snapshots.push_back(std::move(snap));
        return sup <= 1e6;
    };

    if (!record(0.0, spec))
        throw ValidationError("run: initial data already exceeds the blow-up threshold");

    const Stepper stepper(g, cfg, dt);
    bool alive = true;
    for (long long n = 0; n < nfull && alive; ++n) {
        stepper.advance(spec);
        const double t = (n + 1) * dt;
        if (!all_finite(spec)) {
            traj.blew_up = true;
            traj.blow_up_time = t;
            break;
        }
        const bool last = (n + 1 == nfull) && !partial;
        if ((n + 1) % cfg.snapshot_stride == 0 || last)
            if (!record(t, spec)) {
                traj.blew_up = true;
                traj.blow_up_time = t;
                alive = false;
            }
    }
    if (partial && alive && !traj.blew_up) {
        Stepper(g, cfg, rem).advance(spec);
        if (!all_finite(spec)) {
            traj.blew_up = true;
            traj.blow_up_time = cfg.t_final;
        } else if (!record(cfg.t_final, spec)) {
            traj.blew_up = true;
            traj.blow_up_time = cfg.t_final;
        }
    }

    traj.energy_drift = drift_of(traj.snapshots, &InvariantRecord::energy);
    traj.mass_drift = drift_of(traj.snapshots, &InvariantRecord::mass);
    traj.momentum_drift = drift_of(traj.snapshots, &InvariantRecord::momentum);
    return traj;
}

} // namespace dnls
