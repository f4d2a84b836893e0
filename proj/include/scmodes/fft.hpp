#pragma once

#include <algorithm>
#include <cassert>
#include <vector>

#include "scmodes/common.hpp"

namespace scmodes {

// In-place radix-2 complex FFT, sign = -1 forward / +1 inverse (no 1/N).
inline void fft_radix2(std::vector<cplx>& a, int sign) {
    const std::size_t n = a.size();
    assert(is_pow2(static_cast<int>(n)));
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * pi / static_cast<double>(len);
        const cplx wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                cplx u = a[i + k];
                cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// Centered fractional DFT (chirp-z): F_j = sum_k a_k exp(i*alpha*(j-N/2)*(k-N/2))
// for arbitrary real alpha, via Bluestein's identity mn = (m^2+n^2-(m-n)^2)/2.
inline std::vector<cplx> fractional_dft(const std::vector<cplx>& a, double alpha) {
    const std::size_t n = a.size();
    const std::size_t p = next_pow2(2 * n - 1);
    const double half = 0.5 * alpha;
    std::vector<cplx> u(p, cplx(0.0)), c(p, cplx(0.0));
    auto chirp = [half](double r) {
        // exp(i*alpha*r^2/2), argument reduced before evaluating
        double phase = std::fmod(half * r * r, 2.0 * pi);
        return cplx(std::cos(phase), std::sin(phase));
    };
    const double off = 0.5 * static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        double m = static_cast<double>(k) - off;
        u[k] = a[k] * chirp(m);
    }
    for (std::size_t r = 0; r < n; ++r) {
        cplx cc = std::conj(chirp(static_cast<double>(r)));
        c[r] = cc;
        if (r > 0) c[p - r] = cc;
    }
    fft_radix2(u, -1);
    fft_radix2(c, -1);
    for (std::size_t i = 0; i < p; ++i) u[i] *= c[i];
    fft_radix2(u, +1);
    const double invp = 1.0 / static_cast<double>(p);
    std::vector<cplx> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        double m = static_cast<double>(j) - off;
        out[j] = u[j] * invp * chirp(m);
    }
    return out;
}

} // namespace scmodes
