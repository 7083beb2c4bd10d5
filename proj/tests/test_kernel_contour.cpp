#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "schurp/appendixb.hpp"
#include "schurp/kernel_contour.hpp"
#include "schurp/kernel_linalg.hpp"

using namespace schurp;

namespace {

ProcessSpec uniform_spec(long N, const Alphabet& a, Partition mu) {
    return ProcessSpec(N, std::vector<Alphabet>(static_cast<std::size_t>(4 * N), a),
                       std::move(mu));
}

const Alphabet kHalf({rat(1, 2)});

}  // namespace

TEST_CASE("second term vanishes for empty mu") {
    auto spec = uniform_spec(1, kHalf, {});
    // with no mu term the extraction is the plain geometric cross sum
    Rat k = kernel_exact_extract(spec, 1, 1, 1, 1, 64);
    Rat lin = kernel_finite(spec, 2, 1, 2, 1, 20, 64);
    CHECK(k == lin);
}

TEST_CASE("contour extraction equals the structured-inverse kernel exactly") {
    std::vector<ProcessSpec> specs = {
        uniform_spec(1, kHalf, {}),
        uniform_spec(1, kHalf, {1}),
        uniform_spec(1, Alphabet({rat(1, 2), rat(1, 3)}), {2}),
        uniform_spec(2, Alphabet({rat(1, 3), rat(1, 5)}), {2, 1}),
    };
    for (const auto& spec : specs) {
        for (long u1 = 1; u1 <= 2 * spec.N() - 1; ++u1)
            for (long u2 = 1; u2 <= 2 * spec.N() - 1; ++u2)
                for (long x1 : {-2L, 0L, 1L, 3L})
                    for (long x2 : {-1L, 0L, 2L}) {
                        Rat extract = kernel_exact_extract(spec, u1, x1, u2, x2, 64);
                        Rat linalg = kernel_finite(spec, 2 * u1, x1, 2 * u2, x2, 24, 64);
                        REQUIRE(extract == linalg);
                    }
    }
}

TEST_CASE("quadrature matches the exact extraction") {
    auto spec = uniform_spec(1, Alphabet({rat(1, 2), rat(1, 3)}), {2, 1});
    auto contour = default_contour(spec, 512);
    for (long u1 : {1L})
        for (long x1 : {0L, 1L, 2L})
            for (long x2 : {0L, 1L}) {
                Rat exact = kernel_exact_extract(spec, u1, x1, 1, x2, 64);
                auto q = kernel_quadrature(spec, u1, x1, 1, x2, contour);
                CHECK(std::abs(q.value - to_double(exact)) < 1e-9);
                CHECK(q.imag_abs < 1e-10);
            }
}

TEST_CASE("quadrature node doubling self-convergence") {
    auto spec = uniform_spec(1, kHalf, {1});
    auto c256 = default_contour(spec, 256);
    auto c512 = default_contour(spec, 512);
    auto a = kernel_quadrature(spec, 1, 1, 1, 0, c256);
    auto b = kernel_quadrature(spec, 1, 1, 1, 0, c512);
    CHECK(std::abs(a.value - b.value) < 1e-12);
}

TEST_CASE("quadrature radius independence") {
    auto spec = uniform_spec(1, kHalf, {1});
    ContourSpec a{1.30, 0.80, 512};
    ContourSpec b{1.18, 0.88, 512};
    auto va = kernel_quadrature(spec, 1, 0, 1, 1, a);
    auto vb = kernel_quadrature(spec, 1, 0, 1, 1, b);
    CHECK(std::abs(va.value - vb.value) < 1e-10);
}

TEST_CASE("contour validation rejects bad radii and node counts") {
    auto spec = uniform_spec(1, kHalf, {});
    CHECK_THROWS_AS(validate_contour(spec, {0.9, 1.1, 512}), std::invalid_argument);
    CHECK_THROWS_AS(validate_contour(spec, {1.2, 0.4, 512}), std::invalid_argument);  // r2 <= amax
    CHECK_THROWS_AS(validate_contour(spec, {2.5, 0.8, 512}), std::invalid_argument);  // r1 >= 1/amax
    CHECK_THROWS_AS(validate_contour(spec, {1.2, 0.8, 100}), std::invalid_argument);
    CHECK_THROWS_AS(kernel_exact_extract(spec, 1, 9, 1, 0, 8), std::invalid_argument);
    CHECK_THROWS_AS(kernel_exact_extract(spec, 0, 0, 1, 0, 64), std::invalid_argument);
}

TEST_CASE("phi by contour quadrature") {
    auto spec = uniform_spec(1, kHalf, {});
    auto contour = default_contour(spec, 512);
    CHECK(phi_contour(spec, 1, 1, 0, 0, contour) == 0.0);
    // geometric convolution: sum over k of alpha^{2k}
    CHECK(std::abs(phi_contour(spec, 0, 1, 0, 0, contour) - 4.0 / 3.0) < 1e-10);
    auto spec2 = uniform_spec(1, Alphabet({rat(1, 2), rat(1, 3)}), {1});
    for (long x1 : {-1L, 0L, 2L})
        for (long x2 : {0L, 1L}) {
            double q = phi_contour(spec2, 0, 1, x1, x2, contour);
            Rat exact = phi_rs(spec2, 0, 2, x1, x2, 64);
            CHECK(std::abs(q - to_double(exact)) < 1e-10);
        }
}

TEST_CASE("resummation identity holds coefficientwise") {
    for (const ProcessSpec& spec :
         {uniform_spec(1, kHalf, {}), uniform_spec(1, kHalf, {1}),
          uniform_spec(1, Alphabet({rat(1, 2), rat(1, 3)}), {2, 1})}) {
        auto rep = verify_appendixB(spec, 12, 12);
        INFO(rep.first_mismatch);
        CHECK(rep.ok);
    }
}
