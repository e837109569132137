#include "dnls/spectral.hpp"
#include "dnls/errors.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <random>
#include <unordered_map>

namespace dnls {

SpectralGrid::SpectralGrid(double half_length, int n_points) {
    if (!(half_length > 0.0))
        throw ValidationError("SpectralGrid: half length must be positive");
    if (n_points < 4 || (n_points & (n_points - 1)) != 0)
        throw ValidationError("SpectralGrid: N must be a power of two >= 4");
    L_ = half_length;
    N_ = n_points;
    dx_ = 2.0 * L_ / N_;
    auto st = std::make_shared<Storage>();
    st->x.resize(N_);
    st->k.resize(N_);
    for (int j = 0; j < N_; ++j)
        st->x[j] = -L_ + j * dx_;
    for (int m = 0; m < N_; ++m) {
        const int mm = (m < N_ / 2) ? m : m - N_;
        st->k[m] = M_PI * mm / L_;
    }
    s_ = std::move(st);
}

bool all_finite(const CArray& f) {
    for (Eigen::Index i = 0; i < f.size(); ++i)
        if (!std::isfinite(f[i].real()) || !std::isfinite(f[i].imag()))
            return false;
    return true;
}

namespace {

// FFTW planning mutates global state; executions are safe concurrently.
// Plans are cached per thread so execution never takes a lock.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

PlanPair& plans_for(int n) {
    thread_local std::unordered_map<int, PlanPair> cache;
    auto it = cache.find(n);
    if (it != cache.end())
        return it->second;
    std::lock_guard<std::mutex> lock(planner_mutex());
    CArray a(n), b(n);
    a.setZero();
    PlanPair p;
    p.fwd = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(a.data()),
                             reinterpret_cast<fftw_complex*>(b.data()),
                             FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.bwd = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(a.data()),
                             reinterpret_cast<fftw_complex*>(b.data()),
                             FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    return cache.emplace(n, p).first->second;
}

} // namespace

CArray fft(const CArray& f) {
    const int n = static_cast<int>(f.size());
    CArray out(n);
    auto& p = plans_for(n);
    fftw_execute_dft(p.fwd,
                     reinterpret_cast<fftw_complex*>(const_cast<Complex*>(f.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

CArray ifft(const CArray& F) {
    const int n = static_cast<int>(F.size());
    CArray out(n);
    auto& p = plans_for(n);
    fftw_execute_dft(p.bwd,
                     reinterpret_cast<fftw_complex*>(const_cast<Complex*>(F.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
    out /= static_cast<double>(n);
    return out;
}

CArray derivative(const SpectralGrid& g, const CArray& f, int order) {
    if (order < 1)
        throw ValidationError("derivative: order must be >= 1");
    CArray F = fft(f);
    const Array& k = g.k();
    const int N = g.N();
    for (int m = 0; m < N; ++m) {
        double km = k[m];
        if (m == N / 2 && (order % 2) != 0)
            km = 0.0; // Nyquist has no well-defined odd derivative
        Complex mult(1.0, 0.0);
        const Complex ik(0.0, km);
        for (int o = 0; o < order; ++o)
            mult *= ik;
        F[m] *= mult;
    }
    return ifft(F);
}

double hm_norm(const SpectralGrid& g, const CArray& f, int m) {
    if (m < 0 || m > 3)
        throw ValidationError("hm_norm: m must be in {0,1,2,3}");
    const CArray F = fft(f);
    const Array& k = g.k();
    double acc = 0.0;
    for (int j = 0; j < g.N(); ++j)
        acc += std::pow(1.0 + k[j] * k[j], m) * std::norm(F[j]);
    return std::sqrt(acc * g.dx() / g.N());
}

double l2_norm(const SpectralGrid& g, const CArray& f) {
    return std::sqrt(f.abs2().sum() * g.dx());
}

double lp_norm(const SpectralGrid& g, const CArray& f, int p) {
    if (p != 2 && p != 4 && p != 6)
        throw ValidationError("lp_norm: p must be in {2,4,6}");
    const Array a2 = f.abs2();
    double acc = 0.0;
    switch (p) {
        case 2: acc = a2.sum(); break;
        case 4: acc = (a2 * a2).sum(); break;
        case 6: acc = (a2 * a2 * a2).sum(); break;
    }
    return std::pow(acc * g.dx(), 1.0 / p);
}

double inner(const SpectralGrid& g, const CArray& f, const CArray& h) {
    return (f * h.conjugate()).real().sum() * g.dx();
}

CArray translate(const SpectralGrid& g, const CArray& f, double y) {
    CArray F = fft(f);
    const Array& k = g.k();
    const int N = g.N();
    for (int m = 0; m < N; ++m) {
        if (m == N / 2) {
            F[m] *= std::cos(k[m] * y); // symmetrized Nyquist shift
        } else {
            F[m] *= std::exp(Complex(0.0, -k[m] * y));
        }
    }
    return ifft(F);
}

CArray antiderivative_from_left(const SpectralGrid& g, const CArray& f) {
    const int N = g.N();
    const CArray spec = fft(f);
    const Complex mean = spec[0] / static_cast<double>(N);
    CArray per_spec = CArray::Zero(N);
    const Array& k = g.k();
    for (int m = 1; m < N; ++m)
        per_spec[m] = spec[m] / Complex(0.0, k[m]);
    const CArray per = ifft(per_spec);
    CArray out(N);
    for (int j = 0; j < N; ++j)
        out[j] = mean * (g.x()[j] + g.L()) + per[j] - per[0];
    return out;
}

// The 3N rule keeps modes |m| < N/2 of a quintic product exact; the Nyquist
// mode is the one alias casualty, so the pipeline treats it as zero.
CArray to_fine(const SpectralGrid& g, const CArray& spectrum) {
    const int N = g.N();
    const int M = 3 * N;
    CArray pad = CArray::Zero(M);
    for (int m = 0; m < N; ++m) {
        if (m == N / 2)
            continue;
        const int mm = (m < N / 2) ? m : m - N;
        pad[(mm + M) % M] = spectrum[m];
    }
    return 3.0 * ifft(pad);
}

CArray from_fine(const SpectralGrid& g, const CArray& fine) {
    const int N = g.N();
    const int M = static_cast<int>(fine.size());
    const CArray F = fft(fine);
    CArray out = CArray::Zero(N);
    for (int m = 0; m < N; ++m) {
        if (m == N / 2)
            continue;
        const int mm = (m < N / 2) ? m : m - N;
        out[m] = F[(mm + M) % M] / 3.0;
    }
    return out;
}

CArray dealiased_quintic(const SpectralGrid& g, const CArray& u) {
    const CArray uf = to_fine(g, fft(u));
    const CArray prod = uf.abs2().square() * uf;
    return ifft(from_fine(g, prod));
}

double edge_ratio(const SpectralGrid& g, const CArray& f) {
    const double mx = f.abs().maxCoeff();
    if (mx == 0.0)
        return 0.0;
    (void)g;
    const double e = std::max(std::abs(f[0]), std::abs(f[f.size() - 1]));
    return e / mx;
}

void require_edge_decay(const SpectralGrid& g, const CArray& f, double tol) {
    const double r = edge_ratio(g, f);
    if (r >= tol)
        throw GuardError("edge-decay guard: boundary magnitude ratio " +
                         std::to_string(r) + " exceeds " + std::to_string(tol));
}

CArray random_smooth(const SpectralGrid& g, int max_mode, std::uint64_t seed) {
    const int N = g.N();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    CArray F = CArray::Zero(N);
    for (int mm = -max_mode; mm <= max_mode; ++mm) {
        const int m = (mm + N) % N;
        F[m] = Complex(gauss(rng), gauss(rng));
    }
    // physical RMS ~ 1
    return ifft(F) * (N / std::sqrt(2.0 * (2 * max_mode + 1)));
}

CArray random_decaying(const SpectralGrid& g, int max_mode, std::uint64_t seed) {
    const CArray noise = random_smooth(g, max_mode, seed);
    const double sigma = g.L() / 6.0;
    CArray out(g.N());
    for (int j = 0; j < g.N(); ++j) {
        const double r = g.x()[j] / sigma;
        out[j] = noise[j] * std::exp(-r * r);
    }
    return out;
}

Complex h1_pairing(const SpectralGrid& g, const CArray& a, const CArray& b) {
    const CArray A = fft(a);
    const CArray B = fft(b);
    const Array& k = g.k();
    Complex acc(0.0, 0.0);
    for (int m = 0; m < g.N(); ++m)
        acc += (1.0 + k[m] * k[m]) * A[m] * std::conj(B[m]);
    return acc * (g.dx() / g.N());
}

} // namespace dnls
