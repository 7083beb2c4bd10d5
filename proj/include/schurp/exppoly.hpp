#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "schurp/alphabet.hpp"
#include "schurp/rational.hpp"
#include "schurp/symfunc.hpp"

namespace schurp {

namespace detail {

using Poly = std::vector<Rat>;  // ascending coefficients in the index variable

inline Rat poly_eval(const Poly& p, const Rat& x) {
    Rat r = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
    return r;
}

inline Poly poly_add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

/// p(n + s) as a polynomial in n.
inline Poly poly_shift(const Poly& p, long s) {
    Poly r(p.size(), Rat(0));
    for (std::size_t j = 0; j < p.size(); ++j) {
        // expand (n + s)^j
        Rat spow = 1;
        for (std::size_t i = 0; i <= j; ++i) {
            r[j - i] += p[j] * Rat(binomial(static_cast<long>(j), static_cast<long>(i))) * spow;
            spow *= s;
        }
    }
    return r;
}

inline bool poly_is_zero(const Poly& p) {
    for (const Rat& c : p)
        if (c != 0) return false;
    return true;
}

/// Stirling numbers of the second kind, rows up to j inclusive.
inline const std::vector<std::vector<Int>>& stirling2(long j) {
    static std::vector<std::vector<Int>> table{{1}};
    while (static_cast<long>(table.size()) <= j) {
        const auto& prev = table.back();
        std::vector<Int> row(table.size() + 1, 0);
        for (std::size_t t = 1; t < row.size(); ++t) {
            Int v = (t < prev.size()) ? Int(t) * prev[t] : Int(0);
            if (t - 1 < prev.size()) v += prev[t - 1];
            row[t] = v;
        }
        table.push_back(std::move(row));
    }
    return table;
}

/// Exact value of sum_{n>=0} n^j q^n for |q| < 1.
inline Rat power_geometric_sum(long j, const Rat& q) {
    if (abs(q) >= 1) throw std::domain_error("power_geometric_sum: |q| >= 1");
    if (j == 0) return Rat(1) / (Rat(1) - q);
    const auto& s2 = stirling2(j)[static_cast<std::size_t>(j)];
    Rat total = 0;
    Rat tfact = 1;
    Rat qp = 1;
    Rat omq = Rat(1) - q;
    Rat omq_pow = omq;  // (1-q)^{t+1}
    for (long t = 0; t <= j; ++t) {
        if (t > 0) {
            tfact *= t;
            qp *= q;
            omq_pow *= omq;
        }
        if (t < static_cast<long>(s2.size()) && s2[static_cast<std::size_t>(t)] != 0)
            total += Rat(s2[static_cast<std::size_t>(t)]) * tfact * qp / omq_pow;
    }
    return total;
}

/// sum_{n>=start} p(n) q^n, start >= 0, |q| < 1.
inline Rat poly_geometric_tail(const Poly& p, const Rat& q, long start) {
    if (start < 0) throw std::invalid_argument("poly_geometric_tail: negative start");
    Poly ps = poly_shift(p, start);
    Rat total = 0;
    for (std::size_t j = 0; j < ps.size(); ++j)
        if (ps[j] != 0) total += ps[j] * power_geometric_sum(static_cast<long>(j), q);
    return pow_rat(q, start) * total;
}

}  // namespace detail

/// Exponential polynomial in an integer index n: sum of p_t(n) * base_t^n.
/// Closed under pointwise sum/product/shift; admits exact geometric tails
/// when every base lies in (-1, 1).
class ExpPoly {
public:
    ExpPoly() = default;

    static ExpPoly constant(const Rat& c) {
        ExpPoly f;
        if (c != 0) f.terms_[Rat(1)] = detail::Poly{c};
        return f;
    }

    void add_term(const Rat& base, detail::Poly poly) {
        if (base == 0) throw std::invalid_argument("ExpPoly: zero base");
        auto it = terms_.find(base);
        if (it == terms_.end())
            terms_.emplace(base, std::move(poly));
        else
            it->second = detail::poly_add(it->second, poly);
    }

    Rat eval(long n) const {
        Rat total = 0;
        for (const auto& [base, poly] : terms_)
            total += detail::poly_eval(poly, Rat(n)) * pow_rat(base, n);
        return total;
    }

    ExpPoly operator+(const ExpPoly& o) const {
        ExpPoly r = *this;
        for (const auto& [b, p] : o.terms_) r.add_term(b, p);
        r.prune();
        return r;
    }

    ExpPoly operator*(const ExpPoly& o) const {
        ExpPoly r;
        for (const auto& [b1, p1] : terms_)
            for (const auto& [b2, p2] : o.terms_) r.add_term(b1 * b2, detail::poly_mul(p1, p2));
        r.prune();
        return r;
    }

    ExpPoly scaled(const Rat& c) const {
        ExpPoly r;
        if (c == 0) return r;
        for (const auto& [b, p] : terms_) {
            detail::Poly q = p;
            for (Rat& v : q) v *= c;
            r.terms_.emplace(b, std::move(q));
        }
        return r;
    }

    /// g(n) = f(n + s).
    ExpPoly shift(long s) const {
        ExpPoly r;
        for (const auto& [b, p] : terms_) {
            detail::Poly q = detail::poly_shift(p, s);
            Rat scale = pow_rat(b, s);
            for (Rat& v : q) v *= scale;
            r.terms_.emplace(b, std::move(q));
        }
        return r;
    }

    /// Exact sum_{n >= start} f(n); every base must satisfy |base| < 1.
    Rat tail_sum(long start) const {
        Rat total = 0;
        for (const auto& [b, p] : terms_) total += detail::poly_geometric_tail(p, b, start);
        return total;
    }

    bool empty() const { return terms_.empty(); }

    const std::map<Rat, detail::Poly>& terms() const { return terms_; }

private:
    void prune() {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (detail::poly_is_zero(it->second))
                it = terms_.erase(it);
            else
                ++it;
        }
    }

    std::map<Rat, detail::Poly> terms_;
};

/// Closed form of n -> h_n(a) valid for every n >= 0, from the partial-fraction
/// decomposition of prod 1/(1 - a_i z). Requires a nonempty alphabet.
inline ExpPoly h_exppoly(const Alphabet& a) {
    if (a.empty()) throw std::invalid_argument("h_exppoly: empty alphabet");
    // distinct values with multiplicities
    std::map<Rat, long> mult;
    for (const Rat& v : a.vars()) ++mult[v];
    const long P = static_cast<long>(a.size());

    // basis g_{b,l}(n) = C(n+l-1, l-1) b^n, l = 1..mult(b)
    struct Basis {
        Rat base;
        long l;
    };
    std::vector<Basis> basis;
    for (const auto& [b, m] : mult)
        for (long l = 1; l <= m; ++l) basis.push_back({b, l});

    // solve for coefficients matching h_0..h_{P-1}
    std::vector<Rat> h = complete_homogeneous_table(P - 1, a);
    std::vector<std::vector<Rat>> m(P, std::vector<Rat>(P + 1));
    for (long n = 0; n < P; ++n) {
        for (long c = 0; c < P; ++c)
            m[n][c] = Rat(binomial(n + basis[c].l - 1, basis[c].l - 1)) * pow_rat(basis[c].base, n);
        m[n][P] = h[static_cast<std::size_t>(n)];
    }
    for (long col = 0; col < P; ++col) {
        long piv = col;
        while (piv < P && m[piv][col] == 0) ++piv;
        if (piv == P) throw std::logic_error("h_exppoly: singular system");
        std::swap(m[col], m[piv]);
        for (long r = 0; r < P; ++r) {
            if (r == col || m[r][col] == 0) continue;
            Rat f = m[r][col] / m[col][col];
            for (long c = col; c <= P; ++c) m[r][c] -= f * m[col][c];
        }
    }

    ExpPoly f;
    for (long c = 0; c < P; ++c) {
        Rat coef = m[c][P] / m[c][c];
        if (coef == 0) continue;
        // C(n+l-1, l-1) = prod_{t=1}^{l-1} (n+t) / (l-1)!
        detail::Poly p{Rat(1)};
        for (long t = 1; t <= basis[c].l - 1; ++t) p = detail::poly_mul(p, {Rat(t), Rat(1)});
        Rat fact = 1;
        for (long t = 2; t <= basis[c].l - 1; ++t) fact *= t;
        for (Rat& v : p) v = v * coef / fact;
        f.add_term(basis[c].base, std::move(p));
    }
    return f;
}

/// g(e) = sum_{k>=0} h_k(A) h_{k+e}(B), valid for e >= 0, as an ExpPoly in e.
/// Requires B nonempty; an empty A contributes only k = 0.
inline ExpPoly bilateral_exppoly(const Alphabet& A, const Alphabet& B) {
    if (B.empty()) throw std::invalid_argument("bilateral_exppoly: empty B");
    ExpPoly hB = h_exppoly(B);
    if (A.empty()) return hB;
    ExpPoly hA = h_exppoly(A);

    ExpPoly g;
    for (const auto& [alpha, pa] : hA.terms()) {
        for (const auto& [beta, pb] : hB.terms()) {
            const Rat q = alpha * beta;
            // sum_k pa(k) pb(k+e) alpha^k beta^{k+e}
            //   = beta^e * sum_j pb_j sum_i C(j,i) e^{j-i} sum_k pa(k) k^i q^k
            detail::Poly pe(pb.size(), Rat(0));
            for (std::size_t j = 0; j < pb.size(); ++j) {
                if (pb[j] == 0) continue;
                for (std::size_t i = 0; i <= j; ++i) {
                    // sum_k pa(k) k^i q^k
                    detail::Poly ki(i + 1, Rat(0));
                    ki[i] = 1;
                    Rat inner = 0;
                    detail::Poly prod = detail::poly_mul(pa, ki);
                    for (std::size_t t = 0; t < prod.size(); ++t)
                        if (prod[t] != 0)
                            inner += prod[t] * detail::power_geometric_sum(static_cast<long>(t), q);
                    pe[j - i] += pb[j] * Rat(binomial(static_cast<long>(j), static_cast<long>(i))) * inner;
                }
            }
            if (!detail::poly_is_zero(pe)) g.add_term(beta, std::move(pe));
        }
    }
    return g;
}

/// Exact Laurent coefficient [z^d] of gamma(z, X) * gamma(1/z, Y), i.e. the
/// bilateral convolution sum_{k} h_{d+k}(X) h_k(Y).
inline Rat bilateral_coeff(long d, const Alphabet& X, const Alphabet& Y) {
    if (X.empty() && Y.empty()) return d == 0 ? Rat(1) : Rat(0);
    if (X.empty()) return complete_homogeneous(-d, Y);
    if (Y.empty()) return complete_homogeneous(d, X);
    if (d >= 0) return bilateral_exppoly(Y, X).eval(d);
    return bilateral_exppoly(X, Y).eval(-d);
}

}  // namespace schurp
