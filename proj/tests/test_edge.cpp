#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "schurp/edge.hpp"
#include "schurp/kernel_contour.hpp"

using namespace schurp;

namespace {

// Oracle: Airy function by quadrature of the rotated-ray integral
// representation, independent of the series/asymptotic split.
double airy_oracle(double x) {
    const std::complex<double> rot = std::polar(1.0, std::numbers::pi / 6.0);
    auto re = [&](double s) {
        const std::complex<double> v =
            rot * std::exp(std::complex<double>(0.0, 1.0) * x * s * rot - s * s * s / 3.0);
        return v.real();
    };
    return detail::integrate(re, 0.0, 8.0, 3e-13) / std::numbers::pi;
}

double central_second(double (*f)(double), double x, double h) {
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

}  // namespace

TEST_CASE("airy values against the series oracle") {
    CHECK(std::fabs(airy(0.0) - 0.3550280538878172) < 1e-13);
    CHECK(std::fabs(airy_prime(0.0) + 0.2588194037928068) < 1e-13);
    // first negative zero
    double lo = -2.4, hi = -2.2;
    for (int i = 0; i < 80; ++i) {
        double mid = 0.5 * (lo + hi);
        if (airy(mid) * airy(lo) <= 0.0)
            hi = mid;
        else
            lo = mid;
    }
    CHECK(std::fabs(0.5 * (lo + hi) + 2.33810741045976704) < 1e-10);
}

TEST_CASE("airy against the rotated-contour oracle") {
    for (double x : {-9.5, -8.0, -7.4, -5.0, -2.0, 0.0, 1.5, 4.0, 7.4, 7.6, 9.0}) {
        CHECK(std::fabs(airy(x) - airy_oracle(x)) < 1e-10);
    }
}

TEST_CASE("airy satisfies its differential equation") {
    for (double x = -5.0; x <= 5.0; x += 0.5) {
        const double lhs = central_second(airy, x, 1e-4);
        CHECK(std::fabs(lhs - x * airy(x)) < 1e-6);
    }
    // derivative consistency
    for (double x : {-6.0, -1.0, 0.5, 3.0, 8.5}) {
        const double fd = (airy(x + 5e-6) - airy(x - 5e-6)) / 1e-5;
        CHECK(std::fabs(fd - airy_prime(x)) < 1e-7);
    }
}

TEST_CASE("scaling constants") {
    auto k = scaling_constants(0.3);
    CHECK(std::fabs(k.A(2.0 * 50.0, 50.0) - 2.0 * 0.3 / 0.7) < 1e-14);
    CHECK(std::fabs(k.A(0.0, 50.0) - 2.0 * 0.09 / 0.91) < 1e-14);
    CHECK(std::fabs(k.D - std::cbrt(0.3) * std::pow(1.3, 4.0 / 3.0) / 0.91) < 1e-14);
    CHECK(std::fabs(k.C - std::pow(1.3, 2.0 / 3.0) / std::cbrt(0.3)) < 1e-14);
    CHECK(std::fabs(k.B - 2.0 * std::pow(0.3, 2.0 / 3.0) / (0.7 * std::cbrt(1.3))) < 1e-14);
    CHECK_THROWS_AS(scaling_constants(1.2), std::invalid_argument);

    EdgeParams p(0.5, 0.0, 1);
    CHECK(p.m() == 2);
}

TEST_CASE("saddle point geometry") {
    for (double alpha : {0.2, 0.3, 0.5}) {
        const double D = scaling_constants(alpha).D;
        for (double beta = -0.3; beta <= 0.31; beta += 0.1) {
            auto s = saddle_data(alpha, beta);
            CHECK(std::fabs(s.f1(s.zc)) < 1e-12);
            CHECK(std::fabs(s.f2(s.zc)) < 1e-12);
            // the third-derivative display is exact at the edge anchor beta=0
            // and drifts quadratically in beta off it
            const double rel =
                std::fabs(s.f3(s.zc) - 2.0 * D * D * D / std::pow(s.zc, 3)) /
                std::fabs(s.f3(s.zc));
            if (std::fabs(beta) < 1e-12)
                CHECK(rel < 1e-12);
            else
                CHECK(rel < 0.35 * beta * beta);
        }
        for (double delta : {-0.2, 0.0, 0.3}) {
            auto s = saddle_data(alpha, 0.0, delta);
            CHECK(std::fabs(s.g1(s.wc)) < 1e-12);
        }
    }
}

TEST_CASE("saddle derivatives agree with finite differences") {
    auto s = saddle_data(0.3, 0.1);
    const double z = s.zc + 0.07;
    const double h = 1e-5;
    const double d1 = (s.f(z + h) - s.f(z - h)) / (2.0 * h);
    const double d2 = (s.f(z + h) - 2.0 * s.f(z) + s.f(z - h)) / (h * h);
    CHECK(std::fabs(d1 - s.f1(z)) < 1e-8);
    CHECK(std::fabs(d2 - s.f2(z)) < 1e-5);
    const double g1 = (s.g(z + h) - s.g(z - h)) / (2.0 * h);
    CHECK(std::fabs(g1 - s.g1(z)) < 1e-8);
}

TEST_CASE("extended airy kernel diagonal and symmetry") {
    const double ap0 = airy_prime(0.0);
    CHECK(std::fabs(extended_airy_kernel(0.0, 0.0, 0.0, 0.0) - ap0 * ap0) < 1e-10);
    // K(x,x) = Ai'(x)^2 - x Ai(x)^2 at equal times
    for (double x : {-1.0, 0.5, 2.0}) {
        const double expect = airy_prime(x) * airy_prime(x) - x * airy(x) * airy(x);
        CHECK(std::fabs(extended_airy_kernel(0.0, x, 0.0, x) - expect) < 1e-10);
    }
    CHECK(std::fabs(extended_airy_kernel(0.0, 6.0, 0.0, 6.0)) < 1e-6);
    CHECK(std::fabs(extended_airy_kernel(0.3, -0.4, 0.3, 1.1) -
                    extended_airy_kernel(0.3, 1.1, 0.3, -0.4)) < 1e-12);
}

TEST_CASE("equal-time kernel is positive semidefinite on a grid") {
    std::vector<double> xs = {-2.0, -1.0, 0.0, 1.0, 2.0};
    const std::size_t n = xs.size();
    std::vector<std::vector<double>> g(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            g[i][j] = extended_airy_kernel(0.0, xs[i], 0.0, xs[j]);
    // Jacobi sweeps to the spectrum of the small symmetric matrix
    for (int sweep = 0; sweep < 60; ++sweep)
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::fabs(g[p][q]) < 1e-15) continue;
                const double th = 0.5 * std::atan2(2.0 * g[p][q], g[q][q] - g[p][p]);
                const double c = std::cos(th), s = std::sin(th);
                for (std::size_t k = 0; k < n; ++k) {
                    const double a = g[p][k], b = g[q][k];
                    g[p][k] = c * a - s * b;
                    g[q][k] = s * a + c * b;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double a = g[k][p], b = g[k][q];
                    g[k][p] = c * a - s * b;
                    g[k][q] = s * a + c * b;
                }
            }
    for (std::size_t i = 0; i < n; ++i) CHECK(g[i][i] > -1e-8);
}

TEST_CASE("limit kernel branch continuity") {
    for (double xi1 : {-0.7, 0.0, 1.3}) {
        for (double xi2 : {-0.5, 0.8}) {
            const double tau = 0.4;
            const double below = limit_kernel(tau, xi1, tau, xi2, -tau - 1e-6);
            const double above = limit_kernel(tau, xi1, tau, xi2, -tau + 1e-6);
            CHECK(std::fabs(below - above) < 1e-5);
        }
    }
}

TEST_CASE("limit kernel far below the edge reduces to the extended kernel") {
    for (double xi1 : {6.0, 7.0}) {
        for (double xi2 : {0.0, 2.0}) {
            const double lk = limit_kernel(0.0, xi1, 0.0, xi2, -10.0);
            const double k2 = extended_airy_kernel(0.0, xi1, 0.0, xi2);
            CHECK(std::fabs(lk - k2) < 1e-6);
        }
    }
}

TEST_CASE("limit kernel positive branch against the term-by-term oracle") {
    const double tau = 0.25, xi1 = 0.0, xi2 = 0.0, omega = 0.75;  // tau1 + omega = 1
    const double eps = tau + omega;
    auto f = [&](double l) { return std::exp(-eps * l) * airy(xi1 + l); };
    const double oracle = extended_airy_kernel(tau, xi1, tau, xi2) -
                          airy(xi2) * detail::integrate(f, 0.0, 30.0, 1e-13) +
                          airy(xi2) * std::exp(-eps * eps * eps / 3.0 + xi1 * eps);
    CHECK(std::fabs(limit_kernel(tau, xi1, tau, xi2, omega) - oracle) < 1e-10);
}

TEST_CASE("repeated-variable h closed form") {
    CHECK(exact_h_repeated(2, 2, rat(1, 2)) == rat(3, 4));
    for (long copies = 1; copies <= 5; ++copies) {
        Alphabet rep(std::vector<Rat>(static_cast<std::size_t>(copies), rat(1, 3)));
        for (long k = 0; k <= 20; ++k)
            CHECK(exact_h_repeated(k, copies, rat(1, 3)) == complete_homogeneous(k, rep));
    }
}

TEST_CASE("h ratio approaches the exponential regime") {
    const double alpha = 0.3, omega = 0.0;
    const long N = 200;
    EdgeParams p(alpha, omega, N);
    const long m = p.m();
    const double lambda = 0.5;
    const long j = static_cast<long>(std::nearbyint(p.k.D * std::cbrt(static_cast<double>(N)) * lambda));
    const double ratio = h_ratio(alpha, N, m, j);
    CHECK(std::fabs(ratio - std::exp(lambda * omega)) < 0.1 * std::exp(lambda * omega));
}

TEST_CASE("psi contour values match exact coefficient extraction") {
    const long N = 2;
    auto spec = ProcessSpec(N, std::vector<Alphabet>(8, Alphabet({rat(1, 2)})), Partition{});
    EdgeParams p(0.5, 0.0, N);
    const long u1 = 2, u2 = 2, m = 4;
    for (long j : {1L, 2L}) {
        for (long x1 : {2L, 3L}) {
            auto fn = finite_N_functions(p, u1, u2, x1, x1, m, j, 4096);
            Rat exact1 = detail::z1_factor(spec, u1).coeff(x1 - j);
            Rat exact2 = detail::z2_factor(spec, u2).coeff(-x1);
            CHECK(std::fabs(fn.psi1 - to_double(exact1)) < 1e-10);
            CHECK(std::fabs(fn.psi2 - to_double(exact2)) < 1e-10);
            CHECK(std::fabs(fn.h_ratio - to_double(exact_h_repeated(m - j, 2 * N, rat(1, 2)) /
                                                   exact_h_repeated(m, 2 * N, rat(1, 2)))) < 1e-12);
        }
    }
}

TEST_CASE("endpoint sum reproduces the exact kernel at small N") {
    // single-row boundary: the contour formula collapses to the psi tail sum
    const long N = 2, m = 3, u1 = 2, u2 = 3;
    const long x1 = 2, x2 = 1;
    Partition mu{m};
    auto spec = ProcessSpec(N, std::vector<Alphabet>(8, Alphabet({rat(1, 2)})), mu);
    Rat exact = kernel_exact_extract(spec, u1, x1, u2, x2, 64);

    auto g1 = detail::z1_factor(spec, u1);
    auto g2 = detail::z2_factor(spec, u2);
    Rat assembled = detail::cross_sum(g1, g2, x1, x2);
    for (long j = 1; j <= m; ++j) {
        Rat ratio = exact_h_repeated(m - j, 2 * N, rat(1, 2)) / exact_h_repeated(m, 2 * N, rat(1, 2));
        assembled += ratio * g1.coeff(x1 - j) * g2.coeff(-x2);
    }
    assembled -= phi_rs(spec, 2 * u1, 2 * u2, x1, x2, 64);
    CHECK(assembled == exact);
}

TEST_CASE("scaled points validate their ranges") {
    EdgeParams p(0.3, 0.0, 50);
    auto pt = scale_point(p, 0.0, 0.0);
    CHECK(pt.u == 50);
    CHECK(pt.x >= 1);
    CHECK_THROWS_AS(scale_point(EdgeParams(0.3, 0.0, 2), 0.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(scale_point(p, 9.0, 0.0), std::invalid_argument);
}

TEST_CASE("prefactor collapses at equal times") {
    CHECK(std::fabs(prefactor(0.3, 100, 0.5, 1.0, 0.5, 2.0) - std::exp(2.0 * 0.5 - 1.0 * 0.5)) <
          1e-12);
    CHECK(prefactor(0.3, 100, 0.0, 0.0, 0.0, 0.0) == 1.0);
}

TEST_CASE("study table runs and matches the limit column") {
    auto rows = convergence_study(0.3, 0.0, {0.0}, {0.0, 1.0}, {24}, 512);
    REQUIRE(rows.size() == 2);
    for (const auto& r : rows) {
        CHECK(r.N == 24);
        // rows carry the effective coordinates of the rounded lattice point
        CHECK(std::fabs(r.limit_value - limit_kernel(r.tau1, r.xi1, r.tau2, r.xi2, r.omega)) <
              1e-12);
        CHECK(r.abs_diff == std::fabs(r.finite_value - r.limit_value));
        CHECK(r.abs_diff < 0.5);
    }
}

TEST_CASE("finite kernel is stable under node doubling") {
    EdgeParams p(0.3, 0.0, 32);
    auto pt = scale_point(p, 0.0, 0.0);
    const long m = p.m();
    const double a = finite_N_kernel(p, pt.u, pt.x, pt.u, pt.x, m, 512);
    const double b = finite_N_kernel(p, pt.u, pt.x, pt.u, pt.x, m, 1024);
    CHECK(std::fabs(a - b) < 1e-10);
}
