#pragma once

#include <cfenv>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "schurp/airy.hpp"
#include "schurp/rational.hpp"

namespace schurp {

/// Closed-form scaling constants of the edge limit at rate alpha.
struct ScalingConstants {
    double alpha;
    double B, C, D;

    /// Macroscopic position of the first walker: a semicircle entered at the
    /// doubled midpoint, where A(2N) = 2 alpha / (1 - alpha).
    double A(double t, double N) const {
        const double s = t / N;
        if (s < 0.0 || s > 4.0) throw std::invalid_argument("ScalingConstants::A: t outside 0..4N");
        const double a2 = alpha * alpha;
        return 2.0 * a2 / (1.0 - a2) + alpha * std::sqrt(s * (4.0 - s)) / (1.0 - a2);
    }
};

inline ScalingConstants scaling_constants(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("scaling_constants: alpha must lie in (0,1)");
    ScalingConstants k;
    k.alpha = alpha;
    const double a13 = std::cbrt(alpha);
    const double ap1 = 1.0 + alpha;
    k.D = a13 * std::pow(ap1, 4.0 / 3.0) / (1.0 - alpha * alpha);
    k.C = std::pow(ap1, 2.0 / 3.0) / a13;
    k.B = 2.0 * std::pow(alpha, 2.0 / 3.0) / ((1.0 - alpha) * std::cbrt(ap1));
    return k;
}

struct EdgeParams {
    double alpha, omega;
    long N;
    ScalingConstants k;

    EdgeParams(double alpha_, double omega_, long N_)
        : alpha(alpha_), omega(omega_), N(N_), k(scaling_constants(alpha_)) {
        if (N < 1) throw std::invalid_argument("EdgeParams: N must be positive");
    }

    double A(double t) const { return k.A(t, static_cast<double>(N)); }

    /// Endpoint offset m, rounded half to even.
    long m() const {
        const double Nd = static_cast<double>(N);
        const long v = static_cast<long>(
            std::nearbyint(A(2.0 * Nd) * Nd + k.B * std::pow(Nd, 2.0 / 3.0) * omega));
        if (v < 0) throw std::invalid_argument("EdgeParams: scaled m is negative");
        return v;
    }
};

/// One scaled observation point; the integer coordinates are the rounded
/// lattice positions entering the finite-N kernel.
struct ScaledPoint {
    double tau, xi;
    long u, x;
};

inline ScaledPoint scale_point(const EdgeParams& p, double tau, double xi) {
    const double Nd = static_cast<double>(p.N);
    ScaledPoint s;
    s.tau = tau;
    s.xi = xi;
    s.u = static_cast<long>(std::nearbyint(Nd + p.k.C * std::pow(Nd, 2.0 / 3.0) * tau));
    if (s.u < 1 || s.u > 2 * p.N - 1)
        throw std::invalid_argument("scale_point: scaled u outside 1..2N-1 (N too small)");
    s.x = static_cast<long>(std::nearbyint(p.A(2.0 * static_cast<double>(s.u)) * Nd +
                                           p.k.D * std::cbrt(Nd) * xi));
    if (s.x < 1)
        throw std::invalid_argument("scale_point: scaled position fell below 1 (N too small)");
    return s;
}

/// Saddle geometry of the two contour exponents: the double saddle z_c of the
/// position integrand and the simple saddle w_c of the row-ratio integrand.
struct SaddleData {
    double alpha, beta, delta;
    double mu;  // macroscopic rate A(2u1) expressed through beta
    double zc, wc;

    double f(double z) const {
        return (1.0 + beta) * std::log(z - alpha) - (1.0 - beta) * std::log(1.0 - alpha * z) -
               (mu + 1.0 + beta) * std::log(z);
    }
    double f1(double z) const {
        return (1.0 + beta) / (z - alpha) + alpha * (1.0 - beta) / (1.0 - alpha * z) -
               (mu + 1.0 + beta) / z;
    }
    double f2(double z) const {
        return -(1.0 + beta) / ((z - alpha) * (z - alpha)) +
               alpha * alpha * (1.0 - beta) / ((1.0 - alpha * z) * (1.0 - alpha * z)) +
               (mu + 1.0 + beta) / (z * z);
    }
    double f3(double z) const {
        return 2.0 * (1.0 + beta) / std::pow(z - alpha, 3) +
               2.0 * std::pow(alpha, 3) * (1.0 - beta) / std::pow(1.0 - alpha * z, 3) -
               2.0 * (mu + 1.0 + beta) / std::pow(z, 3);
    }
    double g(double z) const {
        return 2.0 * std::log(1.0 - alpha * z) +
               (2.0 * alpha / (1.0 - alpha) + delta) * std::log(z);
    }
    double g1(double z) const {
        return -2.0 * alpha / (1.0 - alpha * z) + (2.0 * alpha / (1.0 - alpha) + delta) / z;
    }
};

inline SaddleData saddle_data(double alpha, double beta, double delta = 0.0) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("saddle_data: bad alpha");
    if (!(beta > -1.0 && beta < 1.0)) throw std::invalid_argument("saddle_data: bad beta");
    SaddleData s;
    s.alpha = alpha;
    s.beta = beta;
    s.delta = delta;
    s.mu = 2.0 * alpha / (1.0 - alpha * alpha) * (alpha + std::sqrt(1.0 - beta * beta));
    const double rp = std::sqrt(1.0 + beta), rm = std::sqrt(1.0 - beta);
    s.zc = (rp + alpha * rm) / (rm + alpha * rp);
    s.wc = (2.0 * alpha + (1.0 - alpha) * delta) / (2.0 * alpha + alpha * (1.0 - alpha) * delta);
    return s;
}

namespace detail {

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double fa, double fm, double fb, double whole, double tol,
                                   int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

/// Composite adaptive Simpson; the outer split into unit panels keeps the
/// oscillatory integrands from being undersampled by the first estimate.
inline double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (b <= a) return 0.0;
    const long panels = std::max<long>(1, static_cast<long>(std::ceil(b - a)));
    const double h = (b - a) / static_cast<double>(panels);
    double total = 0.0;
    for (long i = 0; i < panels; ++i) {
        const double x0 = a + h * static_cast<double>(i);
        const double x1 = x0 + h;
        const double fm = f(0.5 * (x0 + x1));
        const double f0 = f(x0), f1v = f(x1);
        const double whole = h / 6.0 * (f0 + 4.0 * fm + f1v);
        total += adaptive_simpson_rec(f, x0, x1, f0, fm, f1v, whole,
                                      tol / static_cast<double>(panels), 28);
    }
    return total;
}

}  // namespace detail

/// Two-branch extended Airy kernel.
inline double extended_airy_kernel(double tau1, double xi1, double tau2, double xi2) {
    const double dt = tau1 - tau2;
    if (dt >= 0.0) {
        const double top = std::max(8.0, 18.0 - std::min(xi1, xi2));
        auto f = [&](double nu) {
            return std::exp(-nu * dt) * airy(xi1 + nu) * airy(xi2 + nu);
        };
        return detail::integrate(f, 0.0, top, 1e-13);
    }
    const double top = std::min(std::max(20.0, 60.0 / -dt), 400.0);
    auto f = [&](double w) { return std::exp(w * dt) * airy(xi1 - w) * airy(xi2 - w); };
    return -detail::integrate(f, 0.0, top, 1e-13);
}

namespace detail {

/// integral_0^inf e^{eps*l} Ai(xi - l) dl for eps <= 0. The weakly damped
/// regime is routed through the two-sided Laplace transform of Ai, leaving
/// only an absolutely convergent right-tail integral.
inline double airy_left_laplace(double eps, double xi) {
    if (eps <= -0.5) {
        const double top = std::min(40.0 / -eps + 10.0, 400.0);
        auto f = [&](double l) { return std::exp(eps * l) * airy(xi - l); };
        return integrate(f, 0.0, top, 1e-13);
    }
    const double s = -eps;
    const double top = std::max(xi + 2.0, 26.0);
    auto f = [&](double t) { return std::exp(s * t) * airy(t); };
    const double right = integrate(f, xi, top, 1e-13);
    return std::exp(eps * xi) * (std::exp(s * s * s / 3.0) - right);
}

/// integral_0^inf e^{-eps*l} Ai(xi + l) dl for eps >= 0.
inline double airy_right_laplace(double eps, double xi) {
    const double top = std::max(8.0, 20.0 - xi);
    auto f = [&](double l) { return std::exp(-eps * l) * airy(xi + l); };
    return integrate(f, 0.0, top, 1e-13);
}

}  // namespace detail

/// The limiting kernel of the pinned-endpoint process; branches on the sign
/// of tau1 + omega, with the extra exponential term on the positive side.
inline double limit_kernel(double tau1, double xi1, double tau2, double xi2, double omega) {
    const double k2 = extended_airy_kernel(tau1, xi1, tau2, xi2);
    const double eps = tau1 + omega;
    if (eps <= 0.0) return k2 + airy(xi2) * detail::airy_left_laplace(eps, xi1);
    return k2 - airy(xi2) * detail::airy_right_laplace(eps, xi1) +
           airy(xi2) * std::exp(-eps * eps * eps / 3.0 + xi1 * eps);
}

/// Conjugation factor between the finite-N kernel and the limit; cancels in
/// every determinant.
inline double prefactor(double alpha, long N, double tau1, double xi1, double tau2, double xi2) {
    const double Nd = static_cast<double>(N);
    const double p1 = std::pow(1.0 - alpha, 2.0 * std::pow(1.0 + alpha, 2.0 / 3.0) *
                                               std::pow(Nd, 2.0 / 3.0) * (tau1 - tau2) /
                                               std::cbrt(alpha));
    return p1 * std::exp((std::pow(tau1, 3) - std::pow(tau2, 3)) / 3.0 + xi2 * tau2 - xi1 * tau1);
}

/// Exact h_k of an alphabet of `copies` repeats of a single rational value.
inline Rat exact_h_repeated(long k, long copies, const Rat& alpha) {
    if (k < 0) return 0;
    return Rat(binomial(k + copies - 1, k)) * pow_rat(alpha, k);
}

namespace detail {

inline std::complex<double> unit_node(long a, long nodes) {
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(a) /
                               static_cast<double>(nodes));
}

/// log of the single-variable position integrand (1-a/z)^{u}/(1-az)^{2N-u}.
inline std::complex<double> log_psi1_core(double alpha, long twoN, long u,
                                          std::complex<double> z) {
    return static_cast<double>(u) * std::log(1.0 - alpha / z) -
           static_cast<double>(twoN - u) * std::log(1.0 - alpha * z);
}

}  // namespace detail

/// h_{m-j}(alpha^{2N}) / h_m(alpha^{2N}) through the closed binomial form.
inline double h_ratio(double alpha, long N, long m, long j) {
    if (j > m) return 0.0;
    if (j == 0) return 1.0;
    const double lg = std::lgamma(static_cast<double>(m - j + 2 * N)) -
                      std::lgamma(static_cast<double>(m - j + 1)) -
                      std::lgamma(static_cast<double>(m + 2 * N)) +
                      std::lgamma(static_cast<double>(m + 1)) -
                      static_cast<double>(j) * std::log(alpha);
    return std::exp(lg);
}

struct FiniteNFunctions {
    double psi1, psi2, varphi, h_ratio;
};

/// The four single-variable quantities entering the finite-N kernel tail:
/// the two unit-circle coefficient integrals, the reformulated position
/// integral, and the exact binomial row ratio.
inline FiniteNFunctions finite_N_functions(const EdgeParams& p, long u1, long u2, long x1, long x2,
                                           long m, long j, long nodes) {
    if (nodes < 64) throw std::invalid_argument("finite_N_functions: too few nodes");
    const long twoN = 2 * p.N;
    const double alpha = p.alpha;
    std::complex<double> s1 = 0.0, s2 = 0.0, sv = 0.0;
    for (long a = 0; a < nodes; ++a) {
        const std::complex<double> z = detail::unit_node(a, nodes);
        s1 += std::exp(static_cast<double>(j - x1) * std::log(z) +
                       detail::log_psi1_core(alpha, twoN, u1, z));
        s2 += std::exp(static_cast<double>(x2) * std::log(z) -
                       detail::log_psi1_core(alpha, twoN, u2, z));
        sv += std::exp(static_cast<double>(m - x1) * std::log(z) -
                       static_cast<double>(twoN - u1) *
                           (std::log(1.0 - alpha / z) + std::log(1.0 - alpha * z)));
    }
    FiniteNFunctions out;
    out.psi1 = (s1 / static_cast<double>(nodes)).real();
    out.psi2 = (s2 / static_cast<double>(nodes)).real();
    out.varphi = (sv / static_cast<double>(nodes)).real();
    out.h_ratio = h_ratio(alpha, p.N, m, j);
    return out;
}

namespace detail {

/// First two terms of the finite-N kernel: the double-contour part on radii
/// straddling 1 and the single-contour transition part.
inline double edge_first_terms(double alpha, long N, long u1, long x1, long u2, long x2,
                               long nodes) {
    const long twoN = 2 * N;
    const double h = 0.5 / std::cbrt(static_cast<double>(N));
    const double r1 = 1.0 + h, r2 = 1.0 - h;
    std::vector<std::complex<double>> z2s(nodes), f2s(nodes);
    for (long b = 0; b < nodes; ++b) {
        const std::complex<double> z2 =
            std::polar(r2, 2.0 * std::numbers::pi * static_cast<double>(b) /
                               static_cast<double>(nodes));
        z2s[b] = z2;
        f2s[b] = std::exp(static_cast<double>(x2) * std::log(z2) - log_psi1_core(alpha, twoN, u2, z2));
    }
    std::complex<double> acc = 0.0;
    for (long a = 0; a < nodes; ++a) {
        const std::complex<double> z1 =
            std::polar(r1, 2.0 * std::numbers::pi * static_cast<double>(a) /
                               static_cast<double>(nodes));
        const std::complex<double> f1 =
            std::exp(-static_cast<double>(x1) * std::log(z1) + log_psi1_core(alpha, twoN, u1, z1));
        std::complex<double> inner = 0.0;
        for (long b = 0; b < nodes; ++b) inner += f2s[b] * z1 / (z1 - z2s[b]);
        acc += f1 * inner;
    }
    double value = (acc / (static_cast<double>(nodes) * static_cast<double>(nodes))).real();

    if (u1 < u2) {
        std::complex<double> phi = 0.0;
        for (long a = 0; a < nodes; ++a) {
            const std::complex<double> z = unit_node(a, nodes);
            phi += std::exp(static_cast<double>(x1 - x2) * std::log(z) -
                            static_cast<double>(u2 - u1) *
                                (std::log(1.0 - alpha * z) + std::log(1.0 - alpha / z)));
        }
        value -= (phi / static_cast<double>(nodes)).real();
    }
    return value;
}

}  // namespace detail

/// Full finite-N kernel at the scaled points: first terms plus the endpoint
/// sum over the row offsets, accumulated in extended precision.
inline double finite_N_kernel(const EdgeParams& p, long u1, long x1, long u2, long x2, long m,
                              long nodes) {
    double value = detail::edge_first_terms(p.alpha, p.N, u1, x1, u2, x2, nodes);
    const long twoN = 2 * p.N;

    // psi2 once, psi1 for every offset from shared node evaluations
    std::complex<double> s2 = 0.0;
    std::vector<std::complex<double>> base(nodes), zs(nodes);
    for (long a = 0; a < nodes; ++a) {
        const std::complex<double> z = detail::unit_node(a, nodes);
        zs[a] = z;
        base[a] = std::exp(-static_cast<double>(x1) * std::log(z) +
                           detail::log_psi1_core(p.alpha, twoN, u1, z));
        s2 += std::exp(static_cast<double>(x2) * std::log(z) -
                       detail::log_psi1_core(p.alpha, twoN, u2, z));
    }
    const double psi2 = (s2 / static_cast<double>(nodes)).real();

    long double tail = 0.0L;
    std::vector<std::complex<double>> cur = base;
    for (long j = 1; j <= m; ++j) {
        std::complex<double> s1 = 0.0;
        for (long a = 0; a < nodes; ++a) {
            cur[a] *= zs[a];
            s1 += cur[a];
        }
        const double psi1 = (s1 / static_cast<double>(nodes)).real();
        tail += static_cast<long double>(h_ratio(p.alpha, p.N, m, j)) *
                static_cast<long double>(psi1) * static_cast<long double>(psi2);
    }
    return value + static_cast<double>(tail);
}

struct StudyRow {
    long N;
    double tau1, xi1, tau2, xi2, omega;
    double finite_value, limit_value, abs_diff;
};

/// Tabulates the rescaled finite-N kernel against the limit kernel on the
/// diagonal grid (tau, xi) for each N. Scaled coordinates are rounded half
/// to even; the tabulated tau/xi/omega are the effective values of the
/// rounded lattice observable, so the comparison is free of rounding jitter
/// and the remaining gap is the genuine finite-size error.
inline std::vector<StudyRow> convergence_study(double alpha, double omega,
                                               const std::vector<double>& taus,
                                               const std::vector<double>& xis,
                                               const std::vector<long>& N_list,
                                               long nodes = 1024) {
    std::vector<StudyRow> rows;
    for (long N : N_list) {
        EdgeParams p(alpha, omega, N);
        const long m = p.m();
        const double Nd = static_cast<double>(N);
        const double om_eff = (static_cast<double>(m) - p.A(2.0 * Nd) * Nd) /
                              (p.k.B * std::pow(Nd, 2.0 / 3.0));
        for (double tau : taus) {
            for (double xi : xis) {
                ScaledPoint pt = scale_point(p, tau, xi);
                const double tau_eff = (static_cast<double>(pt.u) - Nd) /
                                       (p.k.C * std::pow(Nd, 2.0 / 3.0));
                const double xi_eff =
                    (static_cast<double>(pt.x) - p.A(2.0 * static_cast<double>(pt.u)) * Nd) /
                    (p.k.D * std::cbrt(Nd));
                const double kfin = finite_N_kernel(p, pt.u, pt.x, pt.u, pt.x, m, nodes);
                const double pref = prefactor(alpha, N, tau_eff, xi_eff, tau_eff, xi_eff);
                const double scaled = p.k.D * std::cbrt(Nd) * kfin / pref;
                const double lim = limit_kernel(tau_eff, xi_eff, tau_eff, xi_eff, om_eff);
                rows.push_back({N, tau_eff, xi_eff, tau_eff, xi_eff, om_eff, scaled, lim,
                                std::fabs(scaled - lim)});
            }
        }
    }
    return rows;
}

}  // namespace schurp
