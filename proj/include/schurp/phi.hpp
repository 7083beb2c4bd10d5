#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "schurp/exppoly.hpp"
#include "schurp/process.hpp"

namespace schurp {

/// Multi-step transition weight phi_{r,s}(x,y): zero for r >= s, otherwise the
/// exact bilateral convolution of the step weights, evaluated in closed form
/// as the Laurent coefficient of degree y-x of the product of the step
/// generating functions. maxdeg guards the requested coefficient degree.
inline Rat phi_rs(const ProcessSpec& spec, long r, long s, long x, long y, long maxdeg) {
    if (r < 0 || s > spec.steps() || r > spec.steps() || s < 0)
        throw std::invalid_argument("phi_rs: time indices outside 0..4N");
    if (r >= s) return 0;
    if (std::abs(y - x) > maxdeg)
        throw std::invalid_argument("phi_rs: required degree |y-x| = " +
                                    std::to_string(std::abs(y - x)) + " exceeds maxdeg " +
                                    std::to_string(maxdeg));
    return bilateral_coeff(y - x, spec.ascending_union(r, s), spec.descending_union(r, s));
}

/// M x M truncation of the semi-infinite endpoint matrix: rows carry the
/// initial labels 1-i, columns the final labels x_j.
struct TruncatedMatrix {
    long M = 0;
    std::vector<std::vector<Rat>> entries;  // entries[i-1][j-1]

    const Rat& at(long i, long j) const {
        if (i < 1 || i > M || j < 1 || j > M) throw std::out_of_range("TruncatedMatrix::at");
        return entries[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
    }
};

inline TruncatedMatrix build_matrix_A(const ProcessSpec& spec, long M, long maxdeg) {
    if (M < spec.n()) throw std::invalid_argument("build_matrix_A: M must be at least n");
    const Alphabet X = spec.ascending_union(0, spec.steps());
    const Alphabet Y = spec.descending_union(0, spec.steps());
    TruncatedMatrix out;
    out.M = M;
    out.entries.assign(static_cast<std::size_t>(M), std::vector<Rat>(static_cast<std::size_t>(M)));
    // cache by degree: the entry depends only on x_j - 1 + i
    std::map<long, Rat> cache;
    for (long i = 1; i <= M; ++i) {
        for (long j = 1; j <= M; ++j) {
            const long deg = spec.x_final(j) - spec.x_initial(i);
            if (std::abs(deg) > maxdeg)
                throw std::invalid_argument("build_matrix_A: maxdeg too small for M");
            auto it = cache.find(deg);
            if (it == cache.end()) it = cache.emplace(deg, bilateral_coeff(deg, X, Y)).first;
            out.entries[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
                it->second;
        }
    }
    return out;
}

}  // namespace schurp
