#include "dnls/functionals.hpp"
#include "dnls/errors.hpp"

#include <cmath>

namespace dnls {

namespace {

// First-derivative quadratic sums, skipping the Nyquist mode to match the
// convention of derivative(). w is the Parseval weight dx/N.
struct QuadraticSums {
    double grad_sq = 0.0;  // ||dv||^2
    double imom = 0.0;     // (i dv, v)
    double mass = 0.0;     // ||v||^2
};

QuadraticSums quadratic_sums(const SpectralGrid& g, const CArray& v) {
    const CArray F = fft(v);
    const Array& k = g.k();
    const double w = g.dx() / g.N();
    QuadraticSums s;
    for (int m = 0; m < g.N(); ++m) {
        const double a2 = std::norm(F[m]);
        s.mass += a2;
        if (m == g.N() / 2)
            continue;
        s.grad_sq += k[m] * k[m] * a2;
        s.imom -= k[m] * a2;
    }
    s.grad_sq *= w;
    s.imom *= w;
    s.mass *= w;
    return s;
}

double power_integral(const SpectralGrid& g, const CArray& v, int p) {
    const Array a2 = v.abs2();
    double acc = 0.0;
    switch (p) {
        case 2: acc = a2.sum(); break;
        case 4: acc = (a2 * a2).sum(); break;
        case 6: acc = (a2 * a2 * a2).sum(); break;
    }
    return acc * g.dx();
}

} // namespace

InvariantRecord invariants_u(const SpectralGrid& g, const CArray& u,
                             const ModelParams& p) {
    require_edge_decay(g, u, kEdgeTolAlgebraic);
    const QuadraticSums q = quadratic_sums(g, u);
    const CArray du = derivative(g, u, 1);
    const Array a2 = u.abs2();
    // (i |u|^2 du, u)
    double twist = 0.0;
    for (int j = 0; j < g.N(); ++j)
        twist += a2[j] * (Complex(0.0, 1.0) * du[j] * std::conj(u[j])).real();
    twist *= g.dx();
    InvariantRecord r;
    r.mass = q.mass;
    r.momentum = q.imom;
    r.energy = 0.5 * q.grad_sq - 0.25 * twist -
               p.b / 6.0 * power_integral(g, u, 6);
    return r;
}

InvariantRecord invariants_v(const SpectralGrid& g, const CArray& v,
                             const ModelParams& p) {
    require_edge_decay(g, v, kEdgeTolAlgebraic);
    const QuadraticSums q = quadratic_sums(g, v);
    const double p4 = power_integral(g, v, 4);
    const double p6 = power_integral(g, v, 6);
    InvariantRecord r;
    r.mass = q.mass;
    r.momentum = q.imom + 0.25 * p4;
    r.energy = 0.5 * q.grad_sq - p.gamma / 32.0 * p6;
    return r;
}

InvariantRecord invariants_v_full(const SpectralGrid& g, const CArray& v,
                                  double omega, double c,
                                  const ModelParams& p) {
    InvariantRecord r = invariants_v(g, v, p);
    r.action = r.energy + 0.5 * omega * r.mass + 0.5 * c * r.momentum;
    r.nehari = nehari_K(g, v, omega, c, p);
    r.jc = jc(g, v, c, p);
    return r;
}

CArray gauge_G(const SpectralGrid& g, const CArray& u) {
    require_edge_decay(g, u, kEdgeTolAlgebraic);
    const CArray cum =
        antiderivative_from_left(g, u.abs2().cast<Complex>());
    CArray v(g.N());
    for (int j = 0; j < g.N(); ++j)
        v[j] = u[j] * std::exp(Complex(0.0, 0.25 * cum[j].real()));
    return v;
}

CArray gauge_G_inverse(const SpectralGrid& g, const CArray& v) {
    require_edge_decay(g, v, kEdgeTolAlgebraic);
    const CArray cum =
        antiderivative_from_left(g, v.abs2().cast<Complex>());
    CArray u(g.N());
    for (int j = 0; j < g.N(); ++j)
        u[j] = v[j] * std::exp(Complex(0.0, -0.25 * cum[j].real()));
    return u;
}

double action_S(const SpectralGrid& g, const CArray& u, double omega, double c,
                const ModelParams& p) {
    const InvariantRecord r = invariants_u(g, u, p);
    return r.energy + 0.5 * omega * r.mass + 0.5 * c * r.momentum;
}

double action_Scal(const SpectralGrid& g, const CArray& v, double omega,
                   double c, const ModelParams& p) {
    const InvariantRecord r = invariants_v(g, v, p);
    return r.energy + 0.5 * omega * r.mass + 0.5 * c * r.momentum;
}

double x_quadratic(const SpectralGrid& g, const CArray& v, double omega,
                   double c) {
    const CArray F = fft(v);
    const Array& k = g.k();
    const double w = g.dx() / g.N();
    double acc = 0.0;
    for (int m = 0; m < g.N(); ++m) {
        const double a2 = std::norm(F[m]);
        if (m == g.N() / 2) {
            acc += omega * a2; // Nyquist carries no first derivative
        } else {
            const double d = k[m] - 0.5 * c;
            acc += (d * d + omega - 0.25 * c * c) * a2;
        }
    }
    return acc * w;
}

double x_norm(const SpectralGrid& g, const CArray& v, double omega, double c) {
    return std::sqrt(std::max(x_quadratic(g, v, omega, c), 0.0)) +
           lp_norm(g, v, 4);
}

double nehari_K(const SpectralGrid& g, const CArray& v, double omega, double c,
                const ModelParams& p) {
    require_edge_decay(g, v, kEdgeTolAlgebraic);
    return x_quadratic(g, v, omega, c) + 0.5 * c * power_integral(g, v, 4) -
           3.0 / 16.0 * p.gamma * power_integral(g, v, 6);
}

double jc(const SpectralGrid& g, const CArray& v, double c,
          const ModelParams& p) {
    return -c / 8.0 * power_integral(g, v, 4) +
           p.gamma / 16.0 * power_integral(g, v, 6);
}

double ec(const SpectralGrid& g, const CArray& psi, double c,
          const ModelParams& p) {
    const QuadraticSums q = quadratic_sums(g, psi);
    return 0.5 * q.grad_sq + c / 8.0 * power_integral(g, psi, 4) -
           p.gamma / 32.0 * power_integral(g, psi, 6);
}

CArray action_Scal_gradient(const SpectralGrid& g, const CArray& v,
                            double omega, double c, const ModelParams& p) {
    const CArray dv = derivative(g, v, 1);
    const CArray d2v = derivative(g, v, 2);
    const Array a2 = v.abs2();
    CArray out(g.N());
    for (int j = 0; j < g.N(); ++j)
        out[j] = -d2v[j] + omega * v[j] + Complex(0.0, c) * dv[j] +
                 (0.5 * c * a2[j] - 3.0 / 16.0 * p.gamma * a2[j] * a2[j]) * v[j];
    return out;
}

CArray nehari_K_gradient(const SpectralGrid& g, const CArray& v, double omega,
                         double c, const ModelParams& p) {
    const CArray dv = derivative(g, v, 1);
    const CArray d2v = derivative(g, v, 2);
    const Array a2 = v.abs2();
    CArray out(g.N());
    for (int j = 0; j < g.N(); ++j)
        out[j] = 2.0 * (-d2v[j] + omega * v[j] + Complex(0.0, c) * dv[j]) +
                 (2.0 * c * a2[j] - 9.0 / 8.0 * p.gamma * a2[j] * a2[j]) * v[j];
    return out;
}

CArray ec_gradient(const SpectralGrid& g, const CArray& psi, double c,
                   const ModelParams& p) {
    const CArray d2 = derivative(g, psi, 2);
    const Array a2 = psi.abs2();
    CArray out(g.N());
    for (int j = 0; j < g.N(); ++j)
        out[j] = -d2[j] +
                 (0.5 * c * a2[j] - 3.0 / 16.0 * p.gamma * a2[j] * a2[j]) *
                     psi[j];
    return out;
}

double elliptic_residual(const SolitonProfile& prof, EllipticForm which) {
    const SpectralGrid& g = prof.grid;
    const ModelParams& p = prof.params;
    const double omega = prof.omega;
    const double c = prof.c;
    switch (which) {
        case EllipticForm::DerivativeOde: {
            const CArray& u = prof.dnls;
            const CArray du = derivative(g, u, 1);
            const CArray d2u = derivative(g, u, 2);
            const Array a2 = u.abs2();
            double sup = 0.0;
            for (int j = 0; j < g.N(); ++j) {
                const Complex r = -d2u[j] + omega * u[j] +
                                  Complex(0.0, c) * du[j] -
                                  Complex(0.0, a2[j]) * du[j] -
                                  p.b * a2[j] * a2[j] * u[j];
                sup = std::max(sup, std::abs(r));
            }
            return sup;
        }
        case EllipticForm::ReducedOde: {
            const CArray Phi = prof.Phi.cast<Complex>();
            const CArray d2 = derivative(g, Phi, 2);
            double sup = 0.0;
            for (int j = 0; j < g.N(); ++j) {
                const double f = prof.Phi[j];
                const double r = -d2[j].real() +
                                 (omega - 0.25 * c * c) * f +
                                 0.5 * c * f * f * f -
                                 3.0 / 16.0 * p.gamma * f * f * f * f * f;
                sup = std::max(sup, std::abs(r));
            }
            return sup;
        }
        case EllipticForm::GaugedOde: {
            const CArray r = action_Scal_gradient(g, prof.varphi, omega, c, p);
            return r.abs().maxCoeff();
        }
    }
    return 0.0;
}

WellMembership well_membership(const SpectralGrid& g, const CArray& v,
                               double omega, double c, const ModelParams& p) {
    const double d = action_d(omega, c, p);
    WellMembership m;
    m.s_margin = action_Scal(g, v, omega, c, p) - d;
    m.k_value = nehari_K(g, v, omega, c, p);
    m.j_margin = jc(g, v, c, p) - d;
    if (m.s_margin < 0.0 && m.k_value > 0.0)
        m.a_tag = WellTag::APlus;
    else if (m.s_margin < 0.0 && m.k_value < 0.0)
        m.a_tag = WellTag::AMinus;
    if (m.s_margin < 0.0 && m.j_margin < 0.0)
        m.b_tag = WellTag::BPlus;
    else if (m.s_margin < 0.0 && m.j_margin > 0.0)
        m.b_tag = WellTag::BMinus;
    return m;
}

} // namespace dnls
