#pragma once

#include <Eigen/Core>
#include <complex>
#include <cstdint>
#include <memory>

namespace dnls {

using Array = Eigen::ArrayXd;
using CArray = Eigen::ArrayXcd;
using Complex = std::complex<double>;

// Periodic uniform grid on [-L, L): nodes x_j = -L + j dx, wavenumbers
// k_m = pi m / L stored in FFT order (m = 0..N/2-1, -N/2..-1).
// Cheap to copy: node/wavenumber arrays are shared.
class SpectralGrid {
  public:
    SpectralGrid() = default;
    SpectralGrid(double half_length, int n_points);

    double L() const { return L_; }
    int N() const { return N_; }
    double dx() const { return dx_; }
    const Array& x() const { return s_->x; }
    const Array& k() const { return s_->k; }

    bool same_as(const SpectralGrid& o) const {
        return L_ == o.L_ && N_ == o.N_;
    }

  private:
    struct Storage {
        Array x, k;
    };
    double L_ = 0.0;
    double dx_ = 0.0;
    int N_ = 0;
    std::shared_ptr<const Storage> s_;
};

// Complex grid function together with its grid.
struct Field {
    SpectralGrid grid;
    CArray v;

    int size() const { return static_cast<int>(v.size()); }
};

bool all_finite(const CArray& f);

// Unnormalized forward DFT / normalized (1/N) inverse, FFTW convention.
CArray fft(const CArray& f);
CArray ifft(const CArray& F);

// Spectral derivative (i k)^order; odd orders zero the Nyquist mode.
CArray derivative(const SpectralGrid& g, const CArray& f, int order = 1);

// Sobolev and Lebesgue norms, real inner product (f,g) = Re int f conj(g).
double hm_norm(const SpectralGrid& g, const CArray& f, int m);
double l2_norm(const SpectralGrid& g, const CArray& f);
double lp_norm(const SpectralGrid& g, const CArray& f, int p);
double inner(const SpectralGrid& g, const CArray& f, const CArray& h);

// f(x - y) via Fourier phase shift; exact for band-limited fields.
CArray translate(const SpectralGrid& g, const CArray& f, double y);

// Antiderivative vanishing at the left edge x_0 = -L: the mean integrates
// to a linear ramp, the oscillatory modes divide by ik. Exact at the nodes
// for band-limited f.
CArray antiderivative_from_left(const SpectralGrid& g, const CArray& f);

// Zero-padded 3N sampling for alias-free products of degree <= 5:
// upsample to the 3N collocation grid and truncate back.
CArray to_fine(const SpectralGrid& g, const CArray& spectrum);   // 3N physical samples
CArray from_fine(const SpectralGrid& g, const CArray& fine);     // N-mode spectrum

// |u|^4 u evaluated without aliasing (returns N physical samples).
CArray dealiased_quintic(const SpectralGrid& g, const CArray& u);

// max(|f| at the two edges) / max|f|; 0 for the zero field.
double edge_ratio(const SpectralGrid& g, const CArray& f);

inline constexpr double kEdgeTolExponential = 1e-8;
inline constexpr double kEdgeTolAlgebraic = 1e-2;

// Throws GuardError when the field does not decay at the window edges.
void require_edge_decay(const SpectralGrid& g, const CArray& f, double tol);

// Band-limited complex noise: modes |m| <= max_mode, seeded, unit-scale
// Gaussian coefficients. Deterministic for equal arguments.
CArray random_smooth(const SpectralGrid& g, int max_mode, std::uint64_t seed);

// random_smooth under a Gaussian envelope of width L/6, so the sample
// decays below 1e-15 of its peak at the window edges.
CArray random_decaying(const SpectralGrid& g, int max_mode, std::uint64_t seed);

// Complex H^1 pairing sum (1+k^2) a_k conj(b_k) dx/N.
Complex h1_pairing(const SpectralGrid& g, const CArray& a, const CArray& b);

} // namespace dnls
