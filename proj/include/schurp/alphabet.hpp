#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>
#include <vector>

#include "schurp/rational.hpp"

namespace schurp {

/// Finite list of exact rational variables, each strictly inside (0,1).
/// Every operation consuming an Alphabet is symmetric in the entries.
class Alphabet {
public:
    Alphabet() = default;

    explicit Alphabet(std::vector<Rat> vars) : vars_(std::move(vars)) {
        for (const Rat& v : vars_)
            if (v <= 0 || v >= 1)
                throw std::invalid_argument("Alphabet: entry outside (0,1): " + format_rat(v));
    }

    const std::vector<Rat>& vars() const { return vars_; }
    std::size_t size() const { return vars_.size(); }
    bool empty() const { return vars_.empty(); }

    Rat max_entry() const {
        Rat m = 0;
        for (const Rat& v : vars_) m = std::max(m, v);
        return m;
    }

    Rat sum() const {
        Rat s = 0;
        for (const Rat& v : vars_) s += v;
        return s;
    }

    /// Power sum s_k = (1/k) sum a_i^k, k >= 1. Derived view, not stored.
    Rat power_sum(long k) const {
        if (k < 1) throw std::invalid_argument("power_sum: k must be >= 1");
        Rat s = 0;
        for (const Rat& v : vars_) s += pow_rat(v, k);
        return s / k;
    }

    Alphabet concat(const Alphabet& other) const {
        std::vector<Rat> v = vars_;
        v.insert(v.end(), other.vars_.begin(), other.vars_.end());
        return Alphabet(std::move(v));
    }

    static Alphabet concat_all(std::span<const Alphabet> list) {
        std::vector<Rat> v;
        for (const Alphabet& a : list) v.insert(v.end(), a.vars().begin(), a.vars().end());
        return Alphabet(std::move(v));
    }

    bool operator==(const Alphabet& o) const { return vars_ == o.vars_; }

private:
    std::vector<Rat> vars_;
};

}  // namespace schurp
