#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <vector>

#include "scmodes/common.hpp"

namespace scmodes {

namespace detail {

struct GaussLegendre {
    std::vector<double> nodes, weights; // on [-1, 1]
};

inline const GaussLegendre& gauss_legendre(int n) {
    static std::map<int, GaussLegendre> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    GaussLegendre gl;
    gl.nodes.resize(n);
    gl.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        gl.nodes[i] = -x;
        gl.nodes[n - 1 - i] = x;
        gl.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        gl.weights[n - 1 - i] = gl.weights[i];
    }
    return cache.emplace(n, std::move(gl)).first->second;
}

template <class F>
double gl_panels(F&& f, double a, double b, int panels, int nodes) {
    const GaussLegendre& gl = gauss_legendre(nodes);
    double total = 0.0;
    const double w = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        double mid = a + (p + 0.5) * w, hw = 0.5 * w;
        double s = 0.0;
        for (int i = 0; i < nodes; ++i) s += gl.weights[i] * f(mid + hw * gl.nodes[i]);
        total += hw * s;
    }
    return total;
}

} // namespace detail

// Invariants of the p0 flow: g2 = (3/4) h^2, g3 = (1/4) C0^2 - (1/8) h^3.
inline std::pair<double, double> invariants_p0(double h, double c0) {
    return {0.75 * h * h, 0.25 * c0 * c0 - 0.125 * h * h * h};
}

// Invariants of the p4 flow: g2 = (1/12)(C1^2-5h)^2, g3 = (1/216)(C1^2-5h)^3 + (1/4) C0^2.
inline std::pair<double, double> invariants_p4(double h, double c0, double c1sq) {
    if (c1sq < 0.0) throw validation_error("invariants_p4: C1^2 must be nonnegative");
    const double w = c1sq - 5.0 * h;
    return {w * w / 12.0, w * w * w / 216.0 + 0.25 * c0 * c0};
}

enum class RootCase { ALL_REAL_DISTINCT, DEGENERATE, COMPLEX_PAIR };

struct Classification {
    double delta;
    RootCase root_case;
};

inline Classification classify(double g2, double g3) {
    const double delta = g2 * g2 * g2 - 27.0 * g3 * g3;
    const double scale = std::max(std::abs(g2 * g2 * g2), 27.0 * g3 * g3);
    RootCase c;
    if (std::abs(delta) <= 64.0 * std::numeric_limits<double>::epsilon() * scale)
        c = RootCase::DEGENERATE;
    else
        c = delta > 0.0 ? RootCase::ALL_REAL_DISTINCT : RootCase::COMPLEX_PAIR;
    return {delta, c};
}

struct CubicRoots {
    double e1, e3, e2; // ordered e1 < e3 < e2
};

// Real roots of 4x^3 - g2 x - g3 by the trigonometric method plus one Newton
// polish per root; requires delta > 0.
inline CubicRoots cubic_roots(double g2, double g3) {
    auto cls = classify(g2, g3);
    if (cls.root_case != RootCase::ALL_REAL_DISTINCT)
        throw numerical_error("cubic_roots: requires delta > 0 (three distinct real roots)");
    const double p = -0.25 * g2, q = -0.25 * g3; // x^3 + p x + q
    const double mth = 2.0 * std::sqrt(-p / 3.0);
    double arg = 1.5 * q / p * std::sqrt(-3.0 / p);
    arg = std::clamp(arg, -1.0, 1.0);
    const double th = std::acos(arg);
    std::array<double, 3> r;
    for (int k = 0; k < 3; ++k) r[k] = mth * std::cos((th - 2.0 * pi * k) / 3.0);
    std::sort(r.begin(), r.end());
    for (double& e : r) {
        for (int it = 0; it < 3; ++it) {
            double f = 4.0 * e * e * e - g2 * e - g3;
            double fp = 12.0 * e * e - g2;
            if (fp != 0.0) e -= f / fp;
        }
    }
    return {r[0], r[1], r[2]};
}

struct EllipticData {
    double g2 = 0.0, g3 = 0.0;
    double delta = 0.0;
    double e1 = 0.0, e3 = 0.0, e2 = 0.0;
    double omega2 = 0.0;      // real period
    double omega1_imag = 0.0; // omega1 = i * omega1_imag, purely imaginary period
};

// Half-period integrals with the endpoint singularity removed by t = e +/- s^2
// and the tail by t = +/- 1/s^2; convergence certified by node doubling.
inline std::pair<cplx, double> periods(double g2, double g3, warning_list* warnings = nullptr) {
    CubicRoots r = cubic_roots(g2, g3);
    const double e1 = r.e1, e3 = r.e3, e2 = r.e2;
    auto compute = [&](int panels, int nodes) -> std::pair<double, double> {
        const double T0 = e2 + std::max(1.0, e2 - e1);
        auto f1 = [&](double s) { return 1.0 / std::sqrt((s * s + e2 - e1) * (s * s + e2 - e3)); };
        auto f2 = [&](double s) {
            double s2 = s * s;
            return 2.0 / std::sqrt(4.0 - g2 * s2 * s2 - g3 * s2 * s2 * s2);
        };
        double half2 = detail::gl_panels(f1, 0.0, std::sqrt(T0 - e2), panels, nodes) +
                       detail::gl_panels(f2, 0.0, 1.0 / std::sqrt(T0), panels, nodes);
        const double T1 = e1 - std::max(1.0, e2 - e1);
        auto g1f = [&](double s) { return 1.0 / std::sqrt((s * s + e2 - e1) * (s * s + e3 - e1)); };
        auto g2f = [&](double s) {
            double s2 = s * s;
            return 2.0 / std::sqrt(4.0 - g2 * s2 * s2 + g3 * s2 * s2 * s2);
        };
        double half1 = detail::gl_panels(g1f, 0.0, std::sqrt(e1 - T1), panels, nodes) +
                       detail::gl_panels(g2f, 0.0, 1.0 / std::sqrt(-T1), panels, nodes);
        return {half1, half2};
    };
    auto [a1, a2] = compute(8, 32);
    auto [b1, b2] = compute(16, 48);
    if (std::abs(a1 - b1) > 1e-10 * std::max(1.0, std::abs(b1)) ||
        std::abs(a2 - b2) > 1e-10 * std::max(1.0, std::abs(b2))) {
        warn(warnings, "periods: node doubling changed result above 1e-10");
        throw convergence_error("periods: quadrature not converged");
    }
    return {cplx(0.0, 2.0 * b1), 2.0 * b2}; // (omega1, omega2)
}

inline EllipticData elliptic_data(double g2, double g3, warning_list* warnings = nullptr) {
    EllipticData d;
    d.g2 = g2;
    d.g3 = g3;
    d.delta = classify(g2, g3).delta;
    CubicRoots r = cubic_roots(g2, g3);
    d.e1 = r.e1;
    d.e3 = r.e3;
    d.e2 = r.e2;
    auto [om1, om2] = periods(g2, g3, warnings);
    d.omega1_imag = om1.imag();
    d.omega2 = om2;
    return d;
}

struct WpValue {
    cplx p;  // wp(z)
    cplx dp; // wp'(z)
};

namespace detail {

// Laurent coefficients: wp(z) = z^-2 + sum_{k>=2} c_k z^{2k-2}.
inline std::vector<double> wp_laurent_coeffs(double g2, double g3, int terms) {
    std::vector<double> c(static_cast<std::size_t>(terms) + 1, 0.0);
    if (terms >= 2) c[2] = g2 / 20.0;
    if (terms >= 3) c[3] = g3 / 28.0;
    for (int k = 4; k <= terms; ++k) {
        double s = 0.0;
        for (int m = 2; m <= k - 2; ++m) s += c[m] * c[k - m];
        c[k] = 3.0 * s / ((2.0 * k + 1.0) * (k - 3.0));
    }
    return c;
}

inline WpValue wp_core(cplx z, const std::vector<double>& c) {
    const cplx z2 = z * z;
    cplx p = 1.0 / z2;
    cplx dp = -2.0 / (z2 * z);
    cplx zpow = z2; // z^{2k-2} starting at k=2
    for (std::size_t k = 2; k < c.size(); ++k) {
        p += c[k] * zpow;
        dp += (2.0 * k - 2.0) * c[k] * zpow / z;
        zpow *= z2;
    }
    return {p, dp};
}

} // namespace detail

// wp and wp' by lattice reduction to the fundamental rectangle, a truncated
// Laurent core inside 0.45*min(|omega1|, omega2), and repeated duplication.
inline WpValue wp(const EllipticData& d, cplx z) {
    double x = z.real() - d.omega2 * std::round(z.real() / d.omega2);
    double y = z.imag() - d.omega1_imag * std::round(z.imag() / d.omega1_imag);
    cplx zr(x, y);
    const double dist = std::abs(zr);
    if (dist < 1e-6 * d.omega2)
        throw pole_proximity_error("wp: z too close to a lattice point", dist);
    const double r0 = 0.45 * std::min(d.omega2, d.omega1_imag);
    int k = 0;
    while (std::abs(zr) / (1 << k) > r0) ++k;
    static thread_local std::vector<double> coeffs;
    static thread_local double cg2 = std::numeric_limits<double>::quiet_NaN(), cg3 = cg2;
    if (cg2 != d.g2 || cg3 != d.g3) {
        coeffs = detail::wp_laurent_coeffs(d.g2, d.g3, 14);
        cg2 = d.g2;
        cg3 = d.g3;
    }
    WpValue w = detail::wp_core(zr / static_cast<double>(1 << k), coeffs);
    for (int i = 0; i < k; ++i) {
        const cplx p = w.p, dp = w.dp;
        const cplx ppp = 6.0 * p * p - 0.5 * d.g2; // wp''
        const cplx ratio = ppp / dp;
        const cplx pnew = 0.25 * ratio * ratio - 2.0 * p;
        const cplx dpnew = (ppp * (12.0 * p * dp * dp - ppp * ppp)) / (4.0 * dp * dp * dp) - dp;
        w = {pnew, dpnew};
    }
    return w;
}

inline WpValue wp(cplx z, double g2, double g3) { return wp(elliptic_data(g2, g3), z); }

enum class RealBranch { REAL, SHIFTED };

// wp restricted to the real line (unbounded locus, wp >= e2) or the line
// shifted by omega1/2 (bounded locus, wp in [e1, e3]); both are real-valued.
inline std::pair<double, double> wp_real_line(double t, RealBranch branch, const EllipticData& d) {
    cplx z(t, branch == RealBranch::SHIFTED ? 0.5 * d.omega1_imag : 0.0);
    WpValue w = wp(d, z);
    if (std::abs(w.p.imag()) > 1e-9 * std::max(1.0, std::abs(w.p.real())) ||
        std::abs(w.dp.imag()) > 1e-9 * std::max(1.0, std::abs(w.dp.real())))
        throw numerical_error("wp_real_line: imaginary residue above tolerance");
    return {w.p.real(), w.dp.real()};
}

} // namespace scmodes
