#pragma once

#include <string>
#include <vector>

#include "schurp/kernel_linalg.hpp"

namespace schurp {

struct IdentityReport {
    bool ok = true;
    long deg1 = 0, deg2 = 0;
    std::string first_mismatch;  // empty when ok
};

/// Coefficient-level check of the resummation identity behind the contour
/// kernel: the double generating function of the structured inverse against
/// its closed geometric-plus-cofactor form, expanded in 1/z1 and z2 in the
/// region r2 < r1. Both sides are finite exact expressions per coefficient.
inline IdentityReport verify_appendixB(const ProcessSpec& spec, long deg1, long deg2) {
    if (deg1 < 0 || deg2 < 0) throw std::invalid_argument("verify_appendixB: negative degree");
    StructuredInverse si(spec);
    const long n = si.n();

    // row index with endpoint label 1 - I, if the label occurs
    auto row_for = [&](long I) -> long {
        for (long i = 1; i <= n; ++i)
            if (spec.x_final(i) == 1 - I) return i;
        return I > n ? I : 0;  // deep labels are 1 - i; gaps between the m's have no row
    };

    auto lhs = [&](long I, long J) -> Rat {
        const long i = row_for(I);
        if (i == 0) return 0;
        Rat v = 0;
        for (long k = 1; k <= n; ++k) v += si.bik(spec, i, k) * si.aprime(spec, k, J);
        if (n > 0) v /= si.b0();
        if (i > n) v += si.aprime(spec, i, J);
        return v;
    };

    auto rhs = [&](long I, long J) -> Rat {
        Rat v = 0;
        for (long k = 1; k <= std::min(I, J); ++k) v += si.d(I - k) * si.dp(J - k);
        for (long j = 1; j <= n; ++j) {
            const long mj = si.m(j);
            for (long lp = 0; lp <= mj - 1; ++lp) {
                const Rat c = si.c(lp);
                for (long b = 1; b <= n; ++b) {
                    Rat cof = si.cofC(b, j);
                    if (cof == 0) continue;
                    v += c * cof * si.d(I + mj - 1 - lp) * si.dp(J - b) / si.b0();
                }
            }
        }
        return v;
    };

    IdentityReport rep;
    rep.deg1 = deg1;
    rep.deg2 = deg2;
    const long I_lo = std::min<long>(0, 1 - (n >= 1 ? si.m(1) : 0)) - 2;
    for (long I = I_lo; I <= deg1 && rep.ok; ++I) {
        for (long J = 1; J <= deg2; ++J) {
            if (lhs(I, J) != rhs(I, J)) {
                rep.ok = false;
                rep.first_mismatch = "coefficient (z1^-" + std::to_string(I) + ", z2^" +
                                     std::to_string(J) + ") differs";
                break;
            }
        }
    }
    return rep;
}

}  // namespace schurp
