#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <vector>

#include "scmodes/common.hpp"
#include "scmodes/modes.hpp"

namespace scmodes {

// T4 restricted to fixed y-order n is a Jacobi matrix with zero diagonal and
// off-diagonals beta(m, n). The bands n = 0 and n = 1 are degenerate: n = 0
// splits into a 2x2 block {0,1} plus a Jacobi tail from index 2 (beta_1 = 0),
// and n = 1 has a zero leading row (beta_0 = 0), so the tail starts at 1.
inline int band_start(int n) {
    if (n == 0) return 2;
    if (n == 1) return 1;
    return 0;
}

inline std::vector<double> jacobi_band(int n, int M) {
    std::vector<double> a(static_cast<std::size_t>(M));
    for (int m = 0; m < M; ++m) a[m] = beta(m, n);
    return a;
}

// P_m(z) from beta_{m-1} P_{m-1} + beta_m P_{m+1} = z P_m with the
// degenerate-band initial conditions (unit value at band_start(n)).
inline std::vector<cplx> polynomial_solution(int n, cplx z, int M) {
    if (M < 2) throw validation_error("polynomial_solution: need M >= 2");
    std::vector<cplx> P(static_cast<std::size_t>(M) + 1, cplx(0.0));
    const int s = band_start(n);
    P[s] = 1.0;
    for (int m = s; m < M; ++m) {
        double bm = beta(m, n);
        if (bm == 0.0) throw numerical_error("polynomial_solution: zero coupling outside the degenerate pattern");
        cplx prev = (m >= 1) ? P[m - 1] * beta(m - 1, n) : cplx(0.0);
        P[m + 1] = (z * P[m] - prev) / bm;
    }
    return P;
}

// Partial sums S_k = sum_{m<=k} |P_m(z)|^2; the paper's deficiency criterion
// is S_k staying bounded for Im z != 0.
inline std::vector<double> deficiency_tail(int n, cplx z, int M) {
    if (M == 0) return {1.0};
    if (z.imag() == 0.0) throw validation_error("deficiency_tail: need Im z != 0");
    auto P = polynomial_solution(n, z, M);
    std::vector<double> sums(P.size());
    double acc = 0.0;
    for (std::size_t m = 0; m < P.size(); ++m) {
        acc += std::norm(P[m]);
        if (!std::isfinite(acc)) throw numerical_error("deficiency_tail: partial sum overflow");
        sums[m] = acc;
    }
    return sums;
}

struct BerezanskiiReport {
    bool bounded_diag = true;  // diagonal is identically zero
    int log_concave_from = -1; // first index with a_{j-1} a_{j+1} <= a_j^2 onward
    double inv_sum_partial = 0.0;
    double pseries_bound = 0.0; // term-wise majorant sum 2/max(1, j-1)^{3/2}
};

// Checks Berezanskii's non-self-adjointness hypotheses for a_j = -beta_j^n on
// the nondegenerate sub-band (where a_j > 0).
inline BerezanskiiReport berezanskii_check(int n, int M) {
    if (n < 0 || M < 3) throw validation_error("berezanskii_check: need n >= 0, M >= 3");
    const int s = band_start(n); // a_j > 0 exactly from here on
    std::vector<double> a;
    for (int j = s; j <= M; ++j) a.push_back(-beta(j, n));
    BerezanskiiReport rep;
    rep.log_concave_from = s + 1;
    for (std::size_t j = 1; j + 1 < a.size(); ++j)
        if (a[j - 1] * a[j + 1] > a[j] * a[j])
            rep.log_concave_from = s + static_cast<int>(j) + 1;
    for (std::size_t j = 0; j < a.size(); ++j) {
        rep.inv_sum_partial += 1.0 / a[j];
        double base = std::max<int>(1, s + static_cast<int>(j) - 1);
        rep.pseries_bound += 2.0 / (base * std::sqrt(base));
    }
    return rep;
}

// (t4 g)_m = beta_{m-1} g_{m-1} + beta_m g_{m+1}, g_{-1} := 0.
inline std::vector<cplx> seq_t4(const std::vector<cplx>& g, int n) {
    std::vector<cplx> out(g.size(), cplx(0.0));
    const int L = static_cast<int>(g.size());
    for (int m = 0; m < L; ++m) {
        cplx v = 0.0;
        if (m >= 1) v += beta(m - 1, n) * g[m - 1];
        if (m + 1 < L) v += beta(m, n) * g[m + 1];
        out[m] = v;
    }
    return out;
}

// [g,f]_M = beta_M (g_M conj(f_{M+1}) - g_{M+1} conj(f_M)).
inline cplx bracket(const std::vector<cplx>& g, const std::vector<cplx>& f, int n, int M) {
    if (static_cast<int>(g.size()) < M + 2 || static_cast<int>(f.size()) < M + 2)
        throw validation_error("bracket: sequences must have length >= M+2");
    return beta(M, n) * (g[M] * std::conj(f[M + 1]) - g[M + 1] * std::conj(f[M]));
}

// Null solutions of beta_{m-1} y_{m-1} + beta_m y_{m+1} = 0 with
// u_s = 1, u_{s+1} = 0, v_s = 0, v_{s+1} = 1/beta_s at s = band_start(n);
// entries below s vanish. For n >= 2 this is the textbook u_0=1, u_1=0,
// v_0=0, v_1=1/beta_0 pair; the shifted start is the degenerate-band
// modification mirroring the P_m initial conditions.
inline std::pair<std::vector<double>, std::vector<double>> boundary_uv(int n, int M) {
    std::vector<double> u(static_cast<std::size_t>(M) + 2, 0.0), v(u.size(), 0.0);
    const int s = band_start(n);
    u[s] = 1.0;
    v[s + 1] = 1.0 / beta(s, n);
    for (int m = s + 1; m + 1 < static_cast<int>(u.size()); ++m) {
        u[m + 1] = -beta(m - 1, n) * u[m - 1] / beta(m, n);
        v[m + 1] = -beta(m - 1, n) * v[m - 1] / beta(m, n);
    }
    return {u, v};
}

struct BoundaryValues {
    cplx gamma1; // [f,v]_M at M = M_max
    cplx gamma2; // [f,u]_M at M = M_max
    double spread1 = 0.0; // max deviation over the trailing 10% of M
    double spread2 = 0.0;
    bool converged = true;
};

inline BoundaryValues gamma_boundary(const std::vector<cplx>& f, int n, int M_max,
                                     double tol = 1e-3, warning_list* warnings = nullptr) {
    if (static_cast<int>(f.size()) < M_max + 2)
        throw validation_error("gamma_boundary: f must have length >= M_max+2");
    auto [u, v] = boundary_uv(n, M_max);
    std::vector<cplx> uc(u.begin(), u.end()), vc(v.begin(), v.end());
    // square-summability diagnostics over the range used
    auto t4f = seq_t4(f, n);
    double nf = 0.0, ntf = 0.0;
    for (const cplx& c : f) nf += std::norm(c);
    for (const cplx& c : t4f) ntf += std::norm(c);
    if (!std::isfinite(nf) || !std::isfinite(ntf))
        throw numerical_error("gamma_boundary: sequence not square-summable over range");
    BoundaryValues out;
    out.gamma1 = bracket(f, vc, n, M_max);
    out.gamma2 = bracket(f, uc, n, M_max);
    const int w0 = std::max(0, M_max - std::max(1, M_max / 10));
    for (int M = w0; M <= M_max; ++M) {
        out.spread1 = std::max(out.spread1, std::abs(bracket(f, vc, n, M) - out.gamma1));
        out.spread2 = std::max(out.spread2, std::abs(bracket(f, uc, n, M) - out.gamma2));
    }
    if (out.spread1 > tol || out.spread2 > tol) {
        out.converged = false;
        warn(warnings, "gamma_boundary: trailing spread above tolerance, limit not yet resolved");
    }
    return out;
}

// Residual of the self-adjoint-extension boundary condition
// [f,v]_M - h_n [f,u]_M; h_n = +infinity selects the [f,u]_M = 0 condition.
inline cplx extension_residual(const std::vector<cplx>& f, int n, double h_n, int M) {
    auto [u, v] = boundary_uv(n, M);
    std::vector<cplx> uc(u.begin(), u.end()), vc(v.begin(), v.end());
    if (std::isinf(h_n)) return bracket(f, uc, n, M);
    return bracket(f, vc, n, M) - h_n * bracket(f, uc, n, M);
}

enum class Generator { T4, T5, T0, T38 };

namespace detail {

// exp(i*(t/h)*scale*J) c on one band via symmetric tridiagonal eigendecomposition.
inline Eigen::VectorXcd band_exp(const std::vector<double>& offdiag, double theta,
                                 const Eigen::VectorXcd& c) {
    const int N = static_cast<int>(c.size());
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(N);
    Eigen::VectorXd sub(N - 1);
    for (int i = 0; i + 1 < N; ++i) sub[i] = offdiag[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub);
    const Eigen::MatrixXd& V = es.eigenvectors();
    Eigen::VectorXcd y = V.transpose() * c;
    for (int i = 0; i < N; ++i) y[i] *= std::exp(cplx(0.0, theta * es.eigenvalues()[i]));
    return V * y;
}

inline double generator_scale(Generator gen, double h) {
    switch (gen) {
        case Generator::T0: return -std::pow(2.0, -0.5) * std::pow(h, 1.5);
        default: return -std::sqrt(2.0) * std::pow(h, 1.5);
    }
}

inline ModeVector evolve_once(Generator gen, double t, double h, int N, const ModeVector& v) {
    const double theta_fac = t / h * generator_scale(gen, h);
    // group coefficients by band n
    std::map<int, Eigen::VectorXcd> bands;
    for (const auto& [k, c] : v) {
        if (k.m >= N - 1)
            throw validation_error("truncated_propagator: input supported beyond N-2");
        auto [it, fresh] = bands.try_emplace(k.n, Eigen::VectorXcd::Zero(N));
        it->second[k.m] = c;
    }
    ModeVector out;
    for (auto& [n, c] : bands) {
        Eigen::VectorXcd r;
        if (gen == Generator::T38) {
            r = c;
            for (int m = 0; m < N; ++m)
                r[m] *= std::exp(cplx(0.0, theta_fac * (m + 0.5 * n - 0.5)));
        } else {
            Eigen::VectorXcd cc = c;
            if (gen == Generator::T5) {
                // T5 = F T4 F^{-1}; the unitary semiclassical Fourier transform is
                // diagonal on modes with eigenvalue (-i)^{m+n}
                static const cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
                for (int m = 0; m < N; ++m) cc[m] *= ipow[(m + n) % 4];
            }
            r = band_exp(jacobi_band(n, N - 1), theta_fac, cc);
            if (gen == Generator::T5) {
                static const cplx mipow[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
                for (int m = 0; m < N; ++m) r[m] *= mipow[(m + n) % 4];
            }
        }
        for (int m = 0; m < N; ++m)
            if (std::abs(r[m]) > 0.0) out[{m, n}] = r[m];
    }
    return out;
}

} // namespace detail

// exp(i t G/h) v on the truncated basis, G the scaled generator
// (T4/T5/T38: -sqrt(2) h^{3/2} times the ladder form; T0: -2^{-1/2} h^{3/2}).
// N doubles automatically until truncation leakage is below tol.
inline ModeVector truncated_propagator(Generator gen, double t, double h, int N, const ModeVector& v,
                                       double leak_tol = 1e-10, int max_N = 4096) {
    if (h <= 0.0) throw validation_error("truncated_propagator: h must be positive");
    for (const auto& [k, c] : v)
        while (k.m >= N - 1) N *= 2;
    ModeVector out = detail::evolve_once(gen, t, h, N, v);
    while (true) {
        if (2 * N > max_N)
            throw numerical_error("truncated_propagator: truncation leakage above tolerance at max N");
        ModeVector out2 = detail::evolve_once(gen, t, h, 2 * N, v);
        double diff2 = 0.0;
        ModeVector d = out2;
        for (const auto& [k, c] : out) d[k] -= c;
        for (const auto& [k, c] : d) diff2 += std::norm(c);
        if (std::sqrt(diff2) < leak_tol) return out2;
        N *= 2;
        out = std::move(out2);
    }
}

// 1D convenience for T0 acting on x-only mode vectors.
inline ModeVector1D truncated_propagator_t0(double t, double h, int N, const ModeVector1D& v,
                                            double leak_tol = 1e-10, int max_N = 4096) {
    ModeVector mv;
    for (const auto& [m, c] : v) mv[{m, 0}] = c;
    ModeVector r = truncated_propagator(Generator::T0, t, h, N, mv, leak_tol, max_N);
    ModeVector1D out;
    for (const auto& [k, c] : r) out[k.m] = c;
    return out;
}

} // namespace scmodes
