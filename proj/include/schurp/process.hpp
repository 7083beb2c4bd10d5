#pragma once

#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "schurp/alphabet.hpp"
#include "schurp/exppoly.hpp"
#include "schurp/partition.hpp"
#include "schurp/rational.hpp"
#include "schurp/symfunc.hpp"

namespace schurp {

/// Row/length cutoff for the truncated path enumeration: enumerated
/// partitions satisfy part(1) <= L and length <= K.
struct TruncationBound {
    long L = 8;
    long K = 4;
};

struct CorrelationPoint {
    long time;      // 1..4N-1
    long position;  // walker coordinate on Z
    bool operator<(const CorrelationPoint& o) const {
        return time != o.time ? time < o.time : position < o.position;
    }
    bool operator==(const CorrelationPoint& o) const = default;
};

/// The process data: N, the 4N step alphabets a^{(1)}..a^{(4N)}, and the
/// fixed final partition mu^{(4N)}. Time runs 0..4N; the final walker
/// endpoints are m_i = mu_i - i + 1.
class ProcessSpec {
public:
    ProcessSpec(long N, std::vector<Alphabet> alphabets, Partition mu)
        : N_(N), alphabets_(std::move(alphabets)), mu_(std::move(mu)) {
        if (N_ < 1) throw std::invalid_argument("ProcessSpec: N must be >= 1");
        if (static_cast<long>(alphabets_.size()) != 4 * N_)
            throw std::invalid_argument("ProcessSpec: need exactly 4N alphabets, got " +
                                        std::to_string(alphabets_.size()));
    }

    long N() const { return N_; }
    long steps() const { return 4 * N_; }
    const Partition& mu() const { return mu_; }
    long n() const { return static_cast<long>(mu_.length()); }

    /// a^{(i)}, 1-based as in the measure.
    const Alphabet& alphabet(long i) const {
        if (i < 1 || i > steps()) throw std::out_of_range("ProcessSpec::alphabet");
        return alphabets_[static_cast<std::size_t>(i - 1)];
    }

    /// Final endpoint x_j^{(4N)}: m_j for j <= n, 1 - j beyond.
    long x_final(long j) const {
        if (j < 1) throw std::out_of_range("ProcessSpec::x_final");
        return j <= n() ? mu_.part(j) - j + 1 : 1 - j;
    }

    long x_initial(long j) const { return 1 - j; }

    /// Union of the alphabets of ascending steps (even r) with r in [lo, hi).
    Alphabet ascending_union(long lo, long hi) const {
        std::vector<Rat> v;
        for (long r = lo; r < hi; ++r) {
            if (r % 2 != 0) continue;
            const auto& a = alphabet(r + 1).vars();
            v.insert(v.end(), a.begin(), a.end());
        }
        return Alphabet(std::move(v));
    }

    /// Union of the alphabets of descending steps (odd r) with r in [lo, hi).
    Alphabet descending_union(long lo, long hi) const {
        std::vector<Rat> v;
        for (long r = lo; r < hi; ++r) {
            if (r % 2 == 0) continue;
            const auto& a = alphabet(r + 1).vars();
            v.insert(v.end(), a.begin(), a.end());
        }
        return Alphabet(std::move(v));
    }

    Alphabet odd_union() const { return ascending_union(0, steps()); }
    Alphabet even_union() const { return descending_union(0, steps()); }

    Rat max_entry() const {
        Rat m = 0;
        for (const auto& a : alphabets_) m = std::max(m, a.max_entry());
        return m;
    }

private:
    long N_;
    std::vector<Alphabet> alphabets_;
    Partition mu_;
};

/// The intermediate partitions lambda^{(1)}..lambda^{(4N-1)}.
struct PathConfig {
    std::vector<Partition> partitions;
};

/// Single-step transition weight between walker configurations; the doubled
/// time direction alternates between h of forward and backward displacement.
inline Rat transition_weight(const ProcessSpec& spec, long r, long x, long y) {
    if (r < 0 || r >= spec.steps())
        throw std::invalid_argument("transition_weight: step index out of range");
    const Alphabet& a = spec.alphabet(r + 1);
    return r % 2 == 0 ? complete_homogeneous(y - x, a) : complete_homogeneous(x - y, a);
}

/// Weight of one full path configuration under the measure.
inline Rat path_weight(const ProcessSpec& spec, const PathConfig& path) {
    if (static_cast<long>(path.partitions.size()) != spec.steps() - 1)
        throw std::invalid_argument("path_weight: need 4N-1 partitions");
    auto lam = [&](long t) -> const Partition& { return path.partitions[t - 1]; };
    Rat w = schur(lam(1), spec.alphabet(1));
    for (long j = 1; j <= 2 * spec.N() - 1; ++j) {
        w *= skew_schur(lam(2 * j - 1), lam(2 * j), spec.alphabet(2 * j));
        if (w == 0) return 0;
        w *= skew_schur(lam(2 * j + 1), lam(2 * j), spec.alphabet(2 * j + 1));
        if (w == 0) return 0;
    }
    w *= skew_schur(lam(spec.steps() - 1), spec.mu(), spec.alphabet(spec.steps()));
    return w;
}

struct PartitionFunctionResult {
    Rat value;       // truncated partition function Z_box
    Rat tail_bound;  // certified bound on Z - Z_box, meaningful iff certified
    bool certified;  // false when the escape ratio reaches 1 at this cutoff
};

struct CorrelationResult {
    Rat value;        // truncated correlation
    Rat error_bound;  // certified bound on |R - value|, meaningful iff certified
    bool certified;
};

namespace detail {

/// Shared state for the boxed transfer sums: the graded-lex box, containment
/// pairs, and per-alphabet skew Schur tables.
class BoxDP {
public:
    BoxDP(long L, long K) : L_(L), K_(K), box_(partitions_in_box(L, K)) {
        if (L < 0 || K < 0) throw std::invalid_argument("TruncationBound: negative cutoff");
        for (std::size_t i = 0; i < box_.size(); ++i) index_[box_[i]] = i;
        subs_.resize(box_.size());
        for (std::size_t s = 0; s < box_.size(); ++s)
            for (std::size_t t = 0; t < box_.size(); ++t)
                if (box_[s].contains(box_[t])) subs_[s].push_back(t);
    }

    const std::vector<Partition>& box() const { return box_; }
    long L() const { return L_; }
    long K() const { return K_; }

    std::size_t index_of(const Partition& p) const {
        auto it = index_.find(p);
        if (it == index_.end()) throw std::invalid_argument("BoxDP: partition outside cutoff box");
        return it->second;
    }

    const std::vector<std::vector<Rat>>& weights_for(const Alphabet& a) {
        auto it = weights_.find(a.vars());
        if (it != weights_.end()) return it->second;
        std::vector<std::vector<Rat>> w(box_.size());
        for (std::size_t s = 0; s < box_.size(); ++s) {
            w[s].reserve(subs_[s].size());
            for (std::size_t k : subs_[s]) w[s].push_back(skew_schur(box_[s], box_[k], a));
        }
        return weights_.emplace(a.vars(), std::move(w)).first->second;
    }

    std::vector<Rat> step(const std::vector<Rat>& v, const Alphabet& a, bool ascending) {
        const auto& w = weights_for(a);
        std::vector<Rat> out(box_.size(), Rat(0));
        for (std::size_t s = 0; s < box_.size(); ++s) {
            const auto& row = subs_[s];
            for (std::size_t k = 0; k < row.size(); ++k) {
                if (ascending) {
                    if (v[row[k]] != 0 && w[s][k] != 0) out[s] += v[row[k]] * w[s][k];
                } else {
                    if (v[s] != 0 && w[s][k] != 0) out[row[k]] += v[s] * w[s][k];
                }
            }
        }
        return out;
    }

private:
    long L_, K_;
    std::vector<Partition> box_;
    std::map<Partition, std::size_t> index_;
    std::vector<std::vector<std::size_t>> subs_;
    std::map<std::vector<Rat>, std::vector<std::vector<Rat>>> weights_;
};

/// Walker occupancy within the boxed model: only rows 1..K carry walkers.
inline bool occupied_in_box(const Partition& lam, long x, long K) {
    for (long i = 1; i <= K; ++i)
        if (lam.part(static_cast<std::size_t>(i)) - i + 1 == x) return true;
    return false;
}

/// Certified majorant of (Z - Z_box)/Z. A configuration escapes the box only
/// if some peak partition does; the peak marginal factors through Cauchy
/// products, and the escaping mass is bounded row-wise (tail of h-pairs past
/// row L) and column-wise (tail of e-pairs past height K).
inline Rat escape_ratio(const ProcessSpec& spec, BoxDP& dp) {
    const Partition& mu = spec.mu();
    const long L = dp.L(), K = dp.K();
    const auto kappas = subpartitions(mu);
    Rat q = 0;
    for (long j = 1; j <= 2 * spec.N(); ++j) {
        const Alphabet XL = spec.ascending_union(0, 2 * j - 1);
        const Alphabet YR = spec.descending_union(2 * j - 1, spec.steps());
        const Alphabet XR = spec.ascending_union(2 * j - 1, spec.steps());

        Rat num = 0;
        for (const Partition& kappa : kappas) {
            const Rat s_mu_kappa = skew_schur(mu, kappa, XR);
            if (s_mu_kappa == 0) continue;

            Rat row_tail = 0;
            if (!XL.empty() && !YR.empty()) {
                ExpPoly f = h_exppoly(XL) * h_exppoly(YR).shift(-kappa.part(1));
                row_tail = f.tail_sum(std::max(L + 1, kappa.part(1)));
            }
            Rat col_tail = 0;
            const long lk = static_cast<long>(kappa.length());
            for (long H = K + 1; H <= static_cast<long>(XL.size()); ++H)
                col_tail += elementary_symmetric(H, XL) * elementary_symmetric(H - lk, YR);

            num += s_mu_kappa * (row_tail * schur(kappa.drop_first_row(), XL) +
                                 col_tail * schur(kappa.drop_first_column(), XL));
        }

        Rat den = 0;
        for (const Partition& pi : dp.box()) {
            Rat inner = 0;
            for (const Partition& kappa : kappas) {
                if (!pi.contains(kappa)) continue;
                inner += skew_schur(pi, kappa, YR) * skew_schur(mu, kappa, XR);
            }
            if (inner != 0) den += schur(pi, XL) * inner;
        }
        if (den == 0) return 1;  // boxed peak marginal vanished; nothing certifiable
        q += num / den;
    }
    return q;
}

struct ForwardSums {
    Rat z;               // unconstrained boxed sum Z_box
    Rat constrained;     // boxed sum restricted to occupying every point
    Rat escape;          // escape_ratio q
};

inline ForwardSums run_box_sums(const ProcessSpec& spec,
                                std::span<const CorrelationPoint> points,
                                const TruncationBound& bound) {
    if (spec.mu().part(1) > bound.L || static_cast<long>(spec.mu().length()) > bound.K)
        throw std::invalid_argument("TruncationBound: cutoff box does not contain mu");
    std::set<CorrelationPoint> seen;
    std::map<long, std::vector<long>> by_time;
    for (const auto& p : points) {
        if (p.time < 1 || p.time > spec.steps() - 1)
            throw std::invalid_argument("CorrelationPoint: time outside 1..4N-1");
        if (!seen.insert(p).second)
            throw std::invalid_argument("CorrelationPoint: points must be pairwise distinct");
        by_time[p.time].push_back(p.position);
    }

    BoxDP dp(bound.L, bound.K);
    const std::size_t phi = dp.index_of(Partition{});
    const std::size_t muIdx = dp.index_of(spec.mu());

    auto sweep = [&](bool constrained) {
        std::vector<Rat> v(dp.box().size(), Rat(0));
        v[phi] = 1;
        for (long r = 0; r < spec.steps(); ++r) {
            v = dp.step(v, spec.alphabet(r + 1), r % 2 == 0);
            const long t = r + 1;
            if (!constrained || t >= spec.steps()) continue;
            auto it = by_time.find(t);
            if (it == by_time.end()) continue;
            for (std::size_t s = 0; s < dp.box().size(); ++s) {
                if (v[s] == 0) continue;
                for (long x : it->second)
                    if (!occupied_in_box(dp.box()[s], x, bound.K)) {
                        v[s] = 0;
                        break;
                    }
            }
        }
        return v[muIdx];
    };

    ForwardSums out;
    out.z = sweep(false);
    if (out.z == 0) throw std::domain_error("partition_function: truncated sum vanished");
    out.constrained = by_time.empty() ? out.z : sweep(true);
    out.escape = escape_ratio(spec, dp);
    return out;
}

}  // namespace detail

/// Truncated partition function with a certified geometric tail bound:
/// Z_box <= Z <= Z_box + tail_bound whenever the escape ratio is < 1.
inline PartitionFunctionResult partition_function(const ProcessSpec& spec,
                                                  const TruncationBound& bound) {
    auto sums = detail::run_box_sums(spec, {}, bound);
    PartitionFunctionResult out;
    out.value = sums.z;
    out.certified = sums.escape < 1;
    out.tail_bound = out.certified ? sums.z * sums.escape / (Rat(1) - sums.escape) : Rat(0);
    return out;
}

/// Correlation of the queried points by the truncated path sum. The oracle
/// for the determinantal routes: value = (constrained sum)/Z_box, and
/// |R - value| <= error_bound with R the untruncated correlation, provided
/// every queried position lies above the frozen tail (position > -K).
inline CorrelationResult brute_force_correlation(const ProcessSpec& spec,
                                                 std::span<const CorrelationPoint> points,
                                                 const TruncationBound& bound) {
    auto sums = detail::run_box_sums(spec, points, bound);
    CorrelationResult out;
    out.value = sums.constrained / sums.z;
    bool tail_safe = true;
    for (const auto& p : points)
        if (p.position <= -bound.K) tail_safe = false;
    if (!tail_safe) {
        // query touches the frozen tail; only the trivial bound holds
        out.error_bound = 1;
        out.certified = true;
    } else if (sums.escape < 1) {
        out.error_bound = sums.escape / (Rat(1) - sums.escape);
        out.certified = true;
    } else {
        out.error_bound = 0;
        out.certified = false;
    }
    return out;
}

}  // namespace schurp
