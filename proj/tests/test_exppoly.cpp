#include <catch2/catch_amalgamated.hpp>

#include "schurp/exppoly.hpp"

using namespace schurp;

namespace {

Rat bilateral_truncated(long d, const Alphabet& X, const Alphabet& Y, long T) {
    Rat total = 0;
    for (long k = 0; k <= T; ++k)
        total += complete_homogeneous(d + k, X) * complete_homogeneous(k, Y);
    return total;
}

}  // namespace

TEST_CASE("h_exppoly matches direct values") {
    std::vector<Alphabet> cases = {
        Alphabet({rat(1, 2)}),
        Alphabet({rat(1, 2), rat(1, 2)}),
        Alphabet({rat(1, 2), rat(1, 3)}),
        Alphabet({rat(1, 2), rat(1, 2), rat(1, 3), rat(1, 3)}),
        Alphabet({rat(2, 5), rat(2, 5), rat(2, 5)}),
    };
    for (const auto& a : cases) {
        ExpPoly f = h_exppoly(a);
        for (long n = 0; n <= 40; ++n) CHECK(f.eval(n) == complete_homogeneous(n, a));
    }
}

TEST_CASE("tail_sum telescopes") {
    Alphabet a({rat(1, 2), rat(1, 3), rat(1, 3)});
    ExpPoly f = h_exppoly(a);
    for (long s : {0L, 3L, 11L}) {
        Rat partial = 0;
        for (long n = s; n < s + 7; ++n) partial += f.eval(n);
        CHECK(f.tail_sum(s) == partial + f.tail_sum(s + 7));
    }
}

TEST_CASE("tail_sum of product against partial sums") {
    Alphabet a({rat(1, 2), rat(1, 2)});
    Alphabet b({rat(1, 3), rat(2, 5)});
    ExpPoly f = h_exppoly(a) * h_exppoly(b);
    Rat partial = 0;
    for (long n = 0; n < 200; ++n) partial += f.eval(n);
    Rat tail = f.tail_sum(200);
    CHECK(f.tail_sum(0) == partial + tail);
    CHECK(tail > 0);
    CHECK(tail < pow_rat(rat(1, 2) * rat(2, 5), 190));
}

TEST_CASE("shift identity") {
    Alphabet a({rat(1, 2), rat(1, 3)});
    ExpPoly f = h_exppoly(a);
    ExpPoly g = f.shift(5);
    for (long n = 0; n <= 20; ++n) CHECK(g.eval(n) == f.eval(n + 5));
    ExpPoly gm = f.shift(-2);
    for (long n = 2; n <= 20; ++n) CHECK(gm.eval(n) == f.eval(n - 2));
}

TEST_CASE("bilateral geometric example") {
    // sum_k (1/2)^k (1/2)^k = 4/3
    Alphabet half({rat(1, 2)});
    CHECK(bilateral_coeff(0, half, half) == rat(4, 3));
}

TEST_CASE("bilateral coefficient against truncated convolution") {
    Alphabet X({rat(1, 2), rat(1, 3)});
    Alphabet Y({rat(1, 2), rat(2, 5)});
    for (long d : {-5L, -1L, 0L, 1L, 4L}) {
        Rat closed = bilateral_coeff(d, X, Y);
        Rat trunc = bilateral_truncated(d, X, Y, 120);
        Rat gap = closed - trunc;
        if (gap < 0) gap = -gap;
        // remainder of the convolution decays like (max X * max Y)^k
        CHECK(gap < pow_rat(rat(1, 2) * rat(1, 2), 100));
        CHECK(closed >= trunc);
    }
}

TEST_CASE("bilateral swap symmetry") {
    Alphabet X({rat(1, 2), rat(1, 4)});
    Alphabet Y({rat(1, 3)});
    for (long d = -6; d <= 6; ++d)
        CHECK(bilateral_coeff(d, X, Y) == bilateral_coeff(-d, Y, X));
}

TEST_CASE("bilateral with empty side") {
    Alphabet X({rat(1, 2), rat(1, 3)});
    Alphabet none;
    for (long d = -4; d <= 4; ++d) {
        CHECK(bilateral_coeff(d, X, none) == complete_homogeneous(d, X));
        CHECK(bilateral_coeff(d, none, X) == complete_homogeneous(-d, X));
    }
    CHECK(bilateral_coeff(0, none, none) == 1);
    CHECK(bilateral_coeff(2, none, none) == 0);
}

TEST_CASE("bilateral_exppoly agrees with pointwise evaluation") {
    Alphabet A({rat(1, 2), rat(1, 2)});
    Alphabet B({rat(1, 3), rat(1, 3), rat(1, 5)});
    ExpPoly g = bilateral_exppoly(A, B);
    for (long e = 0; e <= 10; ++e) {
        Rat direct = 0;
        for (long k = 0; k <= 300; ++k)
            direct += complete_homogeneous(k, A) * complete_homogeneous(k + e, B);
        Rat gap = g.eval(e) - direct;
        if (gap < 0) gap = -gap;
        CHECK(gap < pow_rat(rat(1, 6), 250));
    }
}
