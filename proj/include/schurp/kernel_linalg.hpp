#pragma once

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "schurp/exppoly.hpp"
#include "schurp/phi.hpp"
#include "schurp/process.hpp"
#include "schurp/symfunc.hpp"

namespace schurp {

/// The structured inverse data of the endpoint matrix: the n x n matrix C of
/// shifted h's of the odd alphabet, its determinant b0 and cofactors, and the
/// adjugate block of the almost-unit product. Everything here is a finite
/// exact formula; the d coefficients vanish beyond the odd alphabet size,
/// which is what keeps the semi-infinite sums closed.
class StructuredInverse {
public:
    explicit StructuredInverse(const ProcessSpec& spec)
        : n_(spec.n()),
          s_odd_(spec.odd_union()),
          s_even_(spec.even_union()),
          ds_(static_cast<long>(s_odd_.size())),
          dsp_(static_cast<long>(s_even_.size())) {
        for (long i = 1; i <= n_; ++i) m_.push_back(spec.x_final(i));
        cs_ = complete_homogeneous_table(64, s_odd_);
        es_ = elementary_symmetric_table(ds_, s_odd_);
        esp_ = elementary_symmetric_table(dsp_, s_even_);

        if (n_ > 0) {
            matC_.assign(n_, std::vector<Rat>(n_));
            for (long i = 1; i <= n_; ++i)
                for (long j = 1; j <= n_; ++j) matC_[i - 1][j - 1] = c(m_[j - 1] + i - 1);
            b0_ = det_rational(matC_);
            if (b0_ == 0)
                throw std::domain_error(
                    "StructuredInverse: det C vanished (mu too long for the odd alphabet)");
            cof_.assign(n_, std::vector<Rat>(n_));
            for (long b = 1; b <= n_; ++b)
                for (long j = 1; j <= n_; ++j) cof_[b - 1][j - 1] = cofactor(matC_, b, j);
            app_.assign(n_, std::vector<Rat>(n_));
            for (long i = 1; i <= n_; ++i)
                for (long k = 1; k <= n_; ++k) {
                    Rat v = 0;
                    for (long j = 1; j <= i; ++j) v += d(m_[j - 1] - m_[i - 1]) * c(m_[k - 1] + j - 1);
                    app_[i - 1][k - 1] = v;
                }
            bsmall_.assign(n_, std::vector<Rat>(n_));
            for (long i = 1; i <= n_; ++i)
                for (long k = 1; k <= n_; ++k) bsmall_[i - 1][k - 1] = cofactor(app_, k, i);
        } else {
            b0_ = 1;
        }
    }

    long n() const { return n_; }
    const Alphabet& odd_alphabet() const { return s_odd_; }
    long d_degree() const { return ds_; }
    long dp_degree() const { return dsp_; }
    Rat b0() const { return b0_; }
    const std::vector<std::vector<Rat>>& matC() const { return matC_; }
    const std::vector<std::vector<Rat>>& app() const { return app_; }

    /// (b,j) cofactor of C.
    Rat cofC(long b, long j) const { return cof_[b - 1][j - 1]; }

    long m(long i) const { return m_[i - 1]; }

    Rat c(long t) const {
        if (t < 0) return 0;
        if (t >= static_cast<long>(cs_.size())) {
            auto& cs = const_cast<std::vector<Rat>&>(cs_);
            cs = complete_homogeneous_table(2 * t, s_odd_);
        }
        return cs_[static_cast<std::size_t>(t)];
    }

    Rat d(long t) const {
        if (t < 0 || t > ds_) return 0;
        Rat v = es_[static_cast<std::size_t>(t)];
        return t % 2 == 0 ? v : -v;
    }

    Rat dp(long t) const {
        if (t < 0 || t > dsp_) return 0;
        Rat v = esp_[static_cast<std::size_t>(t)];
        return t % 2 == 0 ? v : -v;
    }

    /// Entries of the almost-unit product in its first n columns, any row.
    Rat aik(const ProcessSpec& spec, long i, long k) const {
        if (k < 1 || k > n_) throw std::out_of_range("StructuredInverse::aik");
        if (i <= n_) return app_[i - 1][k - 1];
        Rat v = 0;
        for (long t = 0; t <= std::min(ds_, i - n_ - 1); ++t)
            v += d(t) * c(m_[k - 1] + i - 1 - t);
        for (long j = 1; j <= n_; ++j) v += d(m_[j - 1] + i - 1) * c(m_[k - 1] + j - 1);
        (void)spec;
        return v;
    }

    /// b_{ik}: adjugate block for i <= n, the recursive row fill below.
    Rat bik(const ProcessSpec& spec, long i, long k) const {
        if (k < 1 || k > n_) throw std::out_of_range("StructuredInverse::bik");
        if (i <= n_) return bsmall_[i - 1][k - 1];
        Rat v = 0;
        for (long kp = 1; kp <= n_; ++kp) v += aik(spec, i, kp) * bsmall_[kp - 1][k - 1];
        return -v;
    }

    /// A'_{ij} = sum_l d'(j-l) d(x_l - x_i), a finite sum in both indices.
    Rat aprime(const ProcessSpec& spec, long i, long j) const {
        Rat v = 0;
        for (long l = 1; l <= j; ++l) {
            const long diff = spec.x_final(l) - spec.x_final(i);
            if (diff < 0) break;  // x_l decreasing: later l only smaller
            if (diff > ds_) continue;
            v += dp(j - l) * d(diff);
        }
        return v;
    }

private:
    static Rat cofactor(const std::vector<std::vector<Rat>>& m, long row, long col) {
        const long n = static_cast<long>(m.size());
        std::vector<std::vector<Rat>> minor;
        for (long i = 1; i <= n; ++i) {
            if (i == row) continue;
            std::vector<Rat> r;
            for (long j = 1; j <= n; ++j) {
                if (j == col) continue;
                r.push_back(m[i - 1][j - 1]);
            }
            minor.push_back(std::move(r));
        }
        Rat v = det_rational(std::move(minor));
        return (row + col) % 2 == 0 ? v : -v;
    }

    long n_;
    Alphabet s_odd_, s_even_;
    long ds_, dsp_;
    std::vector<long> m_;
    std::vector<Rat> cs_, es_, esp_;
    Rat b0_;
    std::vector<std::vector<Rat>> matC_, cof_, app_, bsmall_;
};

inline StructuredInverse structured_inverse(const ProcessSpec& spec, long maxdeg) {
    (void)maxdeg;
    return StructuredInverse(spec);
}

namespace detail {

/// phi_{r1,4N}(x1, x_i) as a function of the row index i, with an exact
/// geometric closed form past a finite head.
struct EndpointVector {
    const ProcessSpec* spec;
    Alphabet X, Y;
    long base;      // phi argument offset: value(i) = bilateral(x_i - base)
    bool has_tail;  // false when the deep values are identically zero
    ExpPoly deep;   // valid for i >= valid_from when has_tail
    long valid_from = 1;

    Rat value(long i) const { return bilateral_coeff(spec->x_final(i) - base, X, Y); }
};

inline EndpointVector make_phiR(const ProcessSpec& spec, long r1, long x1) {
    EndpointVector v;
    v.spec = &spec;
    v.X = spec.ascending_union(r1, spec.steps());
    v.Y = spec.descending_union(r1, spec.steps());
    v.base = x1;
    if (v.Y.empty()) {
        v.has_tail = false;  // h_{x_i - x1}(X) dies once x_i < x1
    } else {
        v.has_tail = true;
        // deep rows: x_i = 1 - i, phi = F(i - 1 + x1) with F the swapped tail
        v.deep = bilateral_exppoly(v.X, v.Y).shift(x1 - 1);
        v.valid_from = std::max<long>(spec.n() + 1, 1 - x1);
    }
    return v;
}

}  // namespace detail

/// The kernel of the correlation determinant, K = Ktilde - phi, computed
/// through the structured inverse. The row and column sums over the
/// semi-infinite index close exactly (head plus geometric-polynomial tail),
/// so the value does not move once M clears its floor; M and maxdeg are
/// validated as interface bounds.
inline Rat kernel_tilde(const ProcessSpec& spec, long r1, long x1, long r2, long x2) {
    if (r1 < 1 || r1 > spec.steps() - 1 || r2 < 1 || r2 > spec.steps() - 1)
        throw std::invalid_argument("kernel: times must lie in 1..4N-1");
    const StructuredInverse si(spec);
    const long n = si.n();
    const long Ds = si.d_degree(), Dsp = si.dp_degree();

    const Alphabet XL = spec.ascending_union(0, r2);
    const Alphabet YL = spec.descending_union(0, r2);
    auto phiL = [&](long j) { return bilateral_coeff(x2 - 1 + j, XL, YL); };

    // W2(l) = sum_t d'(t) phiL(l+t); w(k) = sum_l d(x_l - x_k) W2(l)
    std::map<long, Rat> w2cache;
    auto W2 = [&](long l) {
        auto it = w2cache.find(l);
        if (it != w2cache.end()) return it->second;
        Rat v = 0;
        for (long t = 0; t <= Dsp; ++t) {
            Rat dpt = si.dp(t);
            if (dpt != 0) v += dpt * phiL(l + t);
        }
        return w2cache.emplace(l, v).first->second;
    };
    auto w_row = [&](long k) {
        Rat v = 0;
        for (long l = 1;; ++l) {
            const long diff = spec.x_final(l) - spec.x_final(k);
            if (diff < 0) break;
            if (diff > Ds) continue;
            Rat dv = si.d(diff);
            if (dv != 0) v += dv * W2(l);
        }
        return v;
    };

    detail::EndpointVector phiR = detail::make_phiR(spec, r1, x1);

    // deep closed form of w(i): only meaningful when the column side has a tail
    const bool colTail = !XL.empty();
    ExpPoly wDeep;
    long wDeepFrom = 1;
    if (colTail) {
        ExpPoly FposL = bilateral_exppoly(YL, XL);
        for (long tp = 0; tp <= Ds; ++tp) {
            Rat dtp = si.d(tp);
            if (dtp == 0) continue;
            for (long t = 0; t <= Dsp; ++t) {
                Rat dpt = si.dp(t);
                if (dpt == 0) continue;
                wDeep = wDeep + FposL.shift(x2 - 1 - tp + t).scaled(dtp * dpt);
            }
        }
        wDeepFrom = std::max<long>({n + 1 + Ds, 1 - x2 + Ds,
                                    n >= 1 ? 2 + Ds - spec.x_final(n) : 1, 1});
    }

    Rat ktilde = 0;

    // the deep diagonal block: sum_{i>n} phiR(i) w(i)
    if (!phiR.has_tail || !colTail) {
        // one side dies; sum directly until both sides are structurally zero
        long last = std::max<long>(n, 1 - x1);
        if (!colTail) last = std::max(last, 1 - x2 + Ds + Dsp + 1);
        if (!phiR.has_tail) last = std::max(last, 1 - x1 + 1);
        for (long i = n + 1; i <= last; ++i) ktilde += phiR.value(i) * w_row(i);
    } else {
        const long start = std::max<long>({n + 1, phiR.valid_from, wDeepFrom}) + 2;
        for (long i = n + 1; i < start; ++i) ktilde += phiR.value(i) * w_row(i);
        ktilde += (phiR.deep * wDeep).tail_sum(start);
    }

    if (n > 0) {
        // S(k) = sum_i phiR(i) b_{ik} closed over the recursive rows
        std::vector<Rat> U(static_cast<std::size_t>(n), Rat(0));
        ExpPoly hS;
        const bool haveHS = !si.odd_alphabet().empty();
        if (haveHS) hS = h_exppoly(si.odd_alphabet());
        for (long kp = 1; kp <= n; ++kp) {
            Rat u = 0;
            // rows where the finite d-block still reaches the m labels
            const long a2last = Ds + 1 - spec.x_final(n);
            for (long i = n + 1; i <= a2last; ++i) {
                Rat a2 = 0;
                for (long j = 1; j <= n; ++j)
                    a2 += si.d(si.m(j) + i - 1) * si.c(si.m(kp) + j - 1);
                if (a2 != 0) u += phiR.value(i) * a2;
            }
            // geometric part sum_t d(t) sum_i phiR(i) c(m_kp + i - 1 - t)
            for (long t = 0; t <= Ds; ++t) {
                Rat dt = si.d(t);
                if (dt == 0) continue;
                if (!phiR.has_tail) {
                    for (long i = n + 1 + t; i <= 1 - x1 + 1; ++i)
                        u += dt * phiR.value(i) * si.c(si.m(kp) + i - 1 - t);
                    continue;
                }
                if (!haveHS) continue;  // c(t) = delta only when mu empty, not here
                const long start =
                    std::max<long>({n + 1 + t, phiR.valid_from, 1 + t - si.m(kp), 1}) + 2;
                Rat head = 0;
                for (long i = n + 1 + t; i < start; ++i)
                    head += phiR.value(i) * si.c(si.m(kp) + i - 1 - t);
                Rat tail = (phiR.deep * hS.shift(si.m(kp) - 1 - t)).tail_sum(start);
                u += dt * (head + tail);
            }
            U[kp - 1] = u;
        }
        for (long k = 1; k <= n; ++k) {
            Rat S = 0;
            for (long i = 1; i <= n; ++i) S += phiR.value(i) * si.bik(spec, i, k);
            for (long kp = 1; kp <= n; ++kp) S -= si.bik(spec, kp, k) * U[kp - 1];
            ktilde += S * w_row(k) / si.b0();
        }
    }
    return ktilde;
}

/// Correlation kernel K(r1,x1;r2,x2) = Ktilde - phi_{r1,r2}. M must clear the
/// structural floor and maxdeg the reachable degrees; past that the exact
/// closed sums make the value independent of both.
inline Rat kernel_finite(const ProcessSpec& spec, long r1, long x1, long r2, long x2, long M,
                         long maxdeg) {
    const long floor_m = spec.n() + std::max<long>(spec.n() >= 1 ? spec.x_final(1) : 0, 0) + 5;
    if (M < floor_m)
        throw std::invalid_argument("kernel_finite: M below the structural floor " +
                                    std::to_string(floor_m));
    const long need = std::abs(x1) + std::abs(x2) + spec.mu().part(1) + spec.n();
    if (maxdeg < need)
        throw std::invalid_argument("kernel_finite: maxdeg below required degree " +
                                    std::to_string(need));
    Rat k = kernel_tilde(spec, r1, x1, r2, x2);
    if (r1 < r2) k -= phi_rs(spec, r1, r2, x1, x2, maxdeg);
    return k;
}

/// Diagnostic route: dense M x M truncation of the endpoint matrix, exact
/// Gaussian solve, straight contraction. Converges geometrically to
/// kernel_tilde as M grows; used to validate the closed assembly.
inline Rat kernel_tilde_dense(const ProcessSpec& spec, long r1, long x1, long r2, long x2, long M,
                              long maxdeg) {
    TruncatedMatrix A = build_matrix_A(spec, M, maxdeg);
    const Alphabet XR = spec.ascending_union(r1, spec.steps());
    const Alphabet YR = spec.descending_union(r1, spec.steps());
    const Alphabet XL = spec.ascending_union(0, r2);
    const Alphabet YL = spec.descending_union(0, r2);
    std::vector<Rat> phiR, phiL;
    for (long i = 1; i <= M; ++i) phiR.push_back(bilateral_coeff(spec.x_final(i) - x1, XR, YR));
    for (long j = 1; j <= M; ++j) phiL.push_back(bilateral_coeff(x2 - 1 + j, XL, YL));

    // solve A^T u = phiR is not needed; solve A w = phiL then contract with phiR
    std::vector<std::vector<Rat>> m(A.entries);
    std::vector<Rat> w = phiL;
    const std::size_t sz = static_cast<std::size_t>(M);
    for (std::size_t col = 0; col < sz; ++col) {
        std::size_t piv = col;
        while (piv < sz && m[piv][col] == 0) ++piv;
        if (piv == sz) throw std::domain_error("kernel_tilde_dense: singular truncation");
        std::swap(m[col], m[piv]);
        std::swap(w[col], w[piv]);
        for (std::size_t r = 0; r < sz; ++r) {
            if (r == col || m[r][col] == 0) continue;
            Rat f = m[r][col] / m[col][col];
            for (std::size_t c2 = col; c2 < sz; ++c2) m[r][c2] -= f * m[col][c2];
            w[r] -= f * w[col];
        }
    }
    Rat out = 0;
    for (std::size_t i = 0; i < sz; ++i) out += phiR[i] * w[i] / m[i][i];
    return out;
}

/// Correlation of a point set as the determinant of the kernel matrix.
inline Rat correlation_determinant(const ProcessSpec& spec,
                                   std::span<const CorrelationPoint> points, long M, long maxdeg) {
    const std::size_t k = points.size();
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b)
            if (points[a] == points[b])
                throw std::invalid_argument("correlation_determinant: duplicate points");
    std::vector<std::vector<Rat>> m(k, std::vector<Rat>(k));
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            m[a][b] = kernel_finite(spec, points[a].time, points[a].position, points[b].time,
                                    points[b].position, M, maxdeg);
    return det_rational(std::move(m));
}

}  // namespace schurp
