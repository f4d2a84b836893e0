#pragma once

#include <cmath>
#include <map>

#include "scmodes/common.hpp"
#include "scmodes/grid.hpp"

namespace scmodes {

// Two-index Hermite-Gaussian label |m,n>: m is the x-order, n the y-order.
struct ModeIndex {
    int m = 0;
    int n = 0;
    friend auto operator<=>(const ModeIndex&, const ModeIndex&) = default;
};

// Finite coefficient maps over the mode basis. Sparse by construction: the
// generators are banded, so images of finite vectors stay finite.
using ModeVector = std::map<ModeIndex, cplx>;
using ModeVector1D = std::map<int, cplx>;

// beta_m^n = (1/2) sqrt(m+1) (1-m-n), the tridiagonal coupling of T4.
inline double beta(int m, int n) {
    if (m < 0 || n < 0) throw validation_error("beta: mode indices must be nonnegative");
    return 0.5 * std::sqrt(static_cast<double>(m) + 1.0) * (1.0 - m - n);
}

namespace detail {
inline void add_coeff(ModeVector& v, ModeIndex k, cplx c) {
    if (c == cplx(0.0)) return;
    auto [it, inserted] = v.try_emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second == cplx(0.0)) v.erase(it);
    }
}
inline void add_coeff(ModeVector1D& v, int k, cplx c) {
    if (c == cplx(0.0)) return;
    auto [it, inserted] = v.try_emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second == cplx(0.0)) v.erase(it);
    }
}
} // namespace detail

// T4 |m,n> = beta_m^n |m+1,n> + beta_{m-1}^n |m-1,n>.
inline ModeVector apply_t4(const ModeVector& v) {
    ModeVector out;
    for (const auto& [k, c] : v) {
        detail::add_coeff(out, {k.m + 1, k.n}, c * beta(k.m, k.n));
        if (k.m >= 1) detail::add_coeff(out, {k.m - 1, k.n}, c * beta(k.m - 1, k.n));
    }
    return out;
}

// T0 acting on functions of x only: couplings beta_m = beta(m, 0).
inline ModeVector1D apply_t0_1d(const ModeVector1D& v) {
    ModeVector1D out;
    for (const auto& [m, c] : v) {
        detail::add_coeff(out, m + 1, c * beta(m, 0));
        if (m >= 1) detail::add_coeff(out, m - 1, c * beta(m - 1, 0));
    }
    return out;
}

// P_n: keep exactly the coefficients with y-order n.
inline ModeVector project_n(const ModeVector& v, int n) {
    ModeVector out;
    for (const auto& [k, c] : v)
        if (k.n == n) out.emplace(k, c);
    return out;
}

inline cplx inner(const ModeVector& a, const ModeVector& b) {
    cplx s = 0.0;
    const ModeVector& small = a.size() <= b.size() ? a : b;
    const ModeVector& big = a.size() <= b.size() ? b : a;
    for (const auto& [k, c] : small) {
        auto it = big.find(k);
        if (it != big.end())
            s += (&small == &a) ? std::conj(c) * it->second : std::conj(it->second) * c;
    }
    return s;
}

inline cplx inner(const ModeVector1D& a, const ModeVector1D& b) {
    cplx s = 0.0;
    for (const auto& [k, c] : a) {
        auto it = b.find(k);
        if (it != b.end()) s += std::conj(c) * it->second;
    }
    return s;
}

template <class MV>
double mode_norm(const MV& v) {
    double s = 0.0;
    for (const auto& [k, c] : v) s += std::norm(c);
    return std::sqrt(s);
}

// Samples of the normalized semiclassical Hermite function psi_m at h, built
// by the three-term recurrence in u = x/sqrt(h):
//   phi_{m+1} = sqrt(2/(m+1)) u phi_m - sqrt(m/(m+1)) phi_{m-1},
// which is the grid form of |m> = (m!)^{-1/2} (a_x^dag)^m |0>.
inline std::vector<double> hermite_samples(int m, double h, const std::vector<double>& xs) {
    const double hq = std::pow(h, -0.25);
    std::vector<double> p0(xs.size()), p1(xs.size());
    const double c0 = std::pow(pi, -0.25);
    for (std::size_t j = 0; j < xs.size(); ++j) {
        double u = xs[j] / std::sqrt(h);
        p0[j] = hq * c0 * std::exp(-0.5 * u * u);
    }
    if (m == 0) return p0;
    for (std::size_t j = 0; j < xs.size(); ++j)
        p1[j] = std::sqrt(2.0) * (xs[j] / std::sqrt(h)) * p0[j];
    for (int k = 1; k < m; ++k) {
        const double a = std::sqrt(2.0 / (k + 1.0));
        const double b = std::sqrt(static_cast<double>(k) / (k + 1.0));
        for (std::size_t j = 0; j < xs.size(); ++j) {
            double next = a * (xs[j] / std::sqrt(h)) * p1[j] - b * p0[j];
            p0[j] = p1[j];
            p1[j] = next;
        }
    }
    return p1;
}

inline void check_mode_grid(double spacing, double extent, double h, int order, warning_list* warnings) {
    if (spacing > 0.25 * std::sqrt(h))
        warn(warnings, "mode grid under-resolved: spacing exceeds sqrt(h)/4");
    if (extent < std::sqrt(h) * std::sqrt(order + 1.0) * 4.0)
        warn(warnings, "mode grid extent may clip the mode envelope");
}

inline Wavefunction1D mode_eval_1d(int m, double h, const Grid1D& grid, warning_list* warnings = nullptr) {
    if (m < 0) throw validation_error("mode index must be nonnegative");
    if (h <= 0.0) throw validation_error("h must be positive");
    check_mode_grid(grid.spacing(), grid.extent, h, m, warnings);
    std::vector<double> xs(grid.n);
    for (int j = 0; j < grid.n; ++j) xs[j] = grid.x(j);
    auto vals = hermite_samples(m, h, xs);
    Wavefunction1D f{grid, {}};
    f.values.assign(vals.begin(), vals.end());
    return f;
}

// |m,n>(x,y) = psi_m(x) psi_n(y).
inline Wavefunction2D mode_eval(ModeIndex idx, double h, const Grid2D& grid, warning_list* warnings = nullptr) {
    if (idx.m < 0 || idx.n < 0) throw validation_error("mode indices must be nonnegative");
    if (h <= 0.0) throw validation_error("h must be positive");
    check_mode_grid(grid.spacing(), grid.extent, h, idx.m + idx.n, warnings);
    std::vector<double> xs(grid.n);
    for (int j = 0; j < grid.n; ++j) xs[j] = grid.x(j);
    auto fx = hermite_samples(idx.m, h, xs);
    auto fy = hermite_samples(idx.n, h, xs);
    Wavefunction2D F = zero_wavefunction(grid);
    for (int i = 0; i < grid.n; ++i)
        for (int j = 0; j < grid.n; ++j) F.at(i, j) = fx[i] * fy[j];
    return F;
}

// Sampled superposition of a finite mode vector.
inline Wavefunction2D synthesize(const ModeVector& v, double h, const Grid2D& grid) {
    Wavefunction2D F = zero_wavefunction(grid);
    for (const auto& [k, c] : v) {
        Wavefunction2D mode = mode_eval(k, h, grid);
        for (std::size_t j = 0; j < F.values.size(); ++j) F.values[j] += c * mode.values[j];
    }
    return F;
}

inline Wavefunction1D synthesize_1d(const ModeVector1D& v, double h, const Grid1D& grid) {
    Wavefunction1D f = zero_wavefunction(grid);
    for (const auto& [m, c] : v) {
        Wavefunction1D mode = mode_eval_1d(m, h, grid);
        for (int j = 0; j < grid.n; ++j) f.values[j] += c * mode.values[j];
    }
    return f;
}

} // namespace scmodes
