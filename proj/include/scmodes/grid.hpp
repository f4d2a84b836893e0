#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "scmodes/common.hpp"

namespace scmodes {

// Uniform symmetric 1D grid: x_j = -extent + j*spacing, j = 0..n-1, so x_{n/2} = 0.
struct Grid1D {
    int n = 0;
    double extent = 0.0; // half-width L, domain [-L, L)
    double h = 1.0;      // semiclassical parameter carried with the samples

    double spacing() const { return 2.0 * extent / n; }
    double x(int j) const { return -extent + j * spacing(); }
};

inline Grid1D make_grid1d(int n, double extent, double h) {
    if (!is_pow2(n)) throw validation_error("grid size must be a power of two");
    if (extent <= 0.0 || h <= 0.0) throw validation_error("grid extent and h must be positive");
    return Grid1D{n, extent, h};
}

struct Grid2D {
    int n = 0;           // points per axis (square grid)
    double extent = 0.0; // half-width per axis
    double h = 1.0;

    double spacing() const { return 2.0 * extent / n; }
    double x(int j) const { return -extent + j * spacing(); }
    double y(int j) const { return -extent + j * spacing(); }
};

inline Grid2D make_grid2d(int n, double extent, double h) {
    if (!is_pow2(n)) throw validation_error("grid size must be a power of two");
    if (extent <= 0.0 || h <= 0.0) throw validation_error("grid extent and h must be positive");
    return Grid2D{n, extent, h};
}

struct Wavefunction1D {
    Grid1D grid;
    std::vector<cplx> values; // values[j] = f(x_j)

    double norm2() const {
        double s = 0.0;
        for (const cplx& v : values) s += std::norm(v);
        return s * grid.spacing();
    }
    double norm() const { return std::sqrt(norm2()); }
};

// Row-major: values[i*n + j] = F(x_i, y_j).
struct Wavefunction2D {
    Grid2D grid;
    std::vector<cplx> values;

    cplx& at(int i, int j) { return values[static_cast<std::size_t>(i) * grid.n + j]; }
    const cplx& at(int i, int j) const { return values[static_cast<std::size_t>(i) * grid.n + j]; }

    double norm2() const {
        double s = 0.0;
        for (const cplx& v : values) s += std::norm(v);
        return s * grid.spacing() * grid.spacing();
    }
    double norm() const { return std::sqrt(norm2()); }
};

inline Wavefunction1D zero_wavefunction(const Grid1D& g) {
    return Wavefunction1D{g, std::vector<cplx>(static_cast<std::size_t>(g.n))};
}

inline Wavefunction2D zero_wavefunction(const Grid2D& g) {
    return Wavefunction2D{g, std::vector<cplx>(static_cast<std::size_t>(g.n) * g.n)};
}

inline cplx inner(const Wavefunction1D& f, const Wavefunction1D& g) {
    cplx s = 0.0;
    for (int j = 0; j < f.grid.n; ++j) s += std::conj(f.values[j]) * g.values[j];
    return s * f.grid.spacing();
}

inline cplx inner(const Wavefunction2D& f, const Wavefunction2D& g) {
    cplx s = 0.0;
    const std::size_t nn = f.values.size();
    for (std::size_t j = 0; j < nn; ++j) s += std::conj(f.values[j]) * g.values[j];
    return s * f.grid.spacing() * f.grid.spacing();
}

inline double l2_distance(const Wavefunction1D& f, const Wavefunction1D& g) {
    double s = 0.0;
    for (std::size_t j = 0; j < f.values.size(); ++j) s += std::norm(f.values[j] - g.values[j]);
    return std::sqrt(s * f.grid.spacing());
}

inline double l2_distance(const Wavefunction2D& f, const Wavefunction2D& g) {
    double s = 0.0;
    for (std::size_t j = 0; j < f.values.size(); ++j) s += std::norm(f.values[j] - g.values[j]);
    return std::sqrt(s) * f.grid.spacing();
}

// Cubic (Catmull-Rom) interpolation of grid samples; zero outside the grid.
inline cplx interp_cubic(const Wavefunction1D& f, double x) {
    const Grid1D& g = f.grid;
    double s = (x + g.extent) / g.spacing();
    int j1 = static_cast<int>(std::floor(s));
    double u = s - j1;
    if (j1 < 1 || j1 + 2 >= g.n) {
        if (j1 < -1 || j1 > g.n - 1) return cplx(0.0);
        // linear fallback at the boundary cells
        int a = std::clamp(j1, 0, g.n - 1), b = std::clamp(j1 + 1, 0, g.n - 1);
        return f.values[a] * (1.0 - u) + f.values[b] * u;
    }
    const cplx p0 = f.values[j1 - 1], p1 = f.values[j1], p2 = f.values[j1 + 1], p3 = f.values[j1 + 2];
    return p1 + 0.5 * u * (p2 - p0 + u * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 + u * (3.0 * (p1 - p2) + p3 - p0)));
}

inline cplx interp_cubic2d(const Wavefunction2D& F, double x, double y) {
    const Grid2D& g = F.grid;
    double sy = (y + g.extent) / g.spacing();
    int j1 = static_cast<int>(std::floor(sy));
    double u = sy - j1;
    if (j1 < 1 || j1 + 2 >= g.n) return cplx(0.0);
    cplx rows[4];
    for (int r = 0; r < 4; ++r) {
        // 1D cubic along x at y-row j1-1+r
        double sx = (x + g.extent) / g.spacing();
        int i1 = static_cast<int>(std::floor(sx));
        double v = sx - i1;
        if (i1 < 1 || i1 + 2 >= g.n) return cplx(0.0);
        int jj = j1 - 1 + r;
        const cplx p0 = F.at(i1 - 1, jj), p1 = F.at(i1, jj), p2 = F.at(i1 + 1, jj), p3 = F.at(i1 + 2, jj);
        rows[r] = p1 + 0.5 * v * (p2 - p0 + v * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 + v * (3.0 * (p1 - p2) + p3 - p0)));
    }
    const cplx q0 = rows[0], q1 = rows[1], q2 = rows[2], q3 = rows[3];
    return q1 + 0.5 * u * (q2 - q0 + u * (2.0 * q0 - 5.0 * q1 + 4.0 * q2 - q3 + u * (3.0 * (q1 - q2) + q3 - q0)));
}

} // namespace scmodes
