#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "schurp/rational.hpp"

namespace schurp {

/// Truncated formal power series with exact rational coefficients,
/// indexed 0..maxdeg. Arithmetic is exact up to the truncation order;
/// products truncate to the smaller of the operands' orders.
class RationalSeries {
public:
    explicit RationalSeries(long maxdeg) : c_(check(maxdeg) + 1, Rat(0)) {}

    explicit RationalSeries(std::vector<Rat> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) throw std::invalid_argument("RationalSeries: empty coefficient list");
    }

    static RationalSeries one(long maxdeg) {
        RationalSeries s(maxdeg);
        s.c_[0] = 1;
        return s;
    }

    long maxdeg() const { return static_cast<long>(c_.size()) - 1; }

    const Rat& coeff(long k) const {
        if (k < 0 || k > maxdeg()) throw std::out_of_range("RationalSeries::coeff");
        return c_[static_cast<std::size_t>(k)];
    }

    Rat& coeff(long k) {
        if (k < 0 || k > maxdeg()) throw std::out_of_range("RationalSeries::coeff");
        return c_[static_cast<std::size_t>(k)];
    }

    const std::vector<Rat>& coeffs() const { return c_; }

    RationalSeries operator+(const RationalSeries& o) const {
        long d = std::min(maxdeg(), o.maxdeg());
        RationalSeries r(d);
        for (long k = 0; k <= d; ++k) r.c_[k] = c_[k] + o.c_[k];
        return r;
    }

    RationalSeries operator-(const RationalSeries& o) const {
        long d = std::min(maxdeg(), o.maxdeg());
        RationalSeries r(d);
        for (long k = 0; k <= d; ++k) r.c_[k] = c_[k] - o.c_[k];
        return r;
    }

    RationalSeries operator*(const RationalSeries& o) const {
        long d = std::min(maxdeg(), o.maxdeg());
        RationalSeries r(d);
        for (long i = 0; i <= d; ++i) {
            if (c_[i] == 0) continue;
            for (long j = 0; i + j <= d && j <= o.maxdeg(); ++j) {
                if (o.c_[j] == 0) continue;
                r.c_[i + j] += c_[i] * o.c_[j];
            }
        }
        return r;
    }

    /// Multiplicative inverse; requires a unit constant term.
    RationalSeries reciprocal() const {
        if (c_[0] == 0) throw std::domain_error("RationalSeries::reciprocal: zero constant term");
        RationalSeries r(maxdeg());
        r.c_[0] = Rat(1) / c_[0];
        for (long k = 1; k <= maxdeg(); ++k) {
            Rat acc = 0;
            for (long j = 1; j <= k; ++j) acc += c_[j] * r.c_[k - j];
            r.c_[k] = -acc / c_[0];
        }
        return r;
    }

    bool operator==(const RationalSeries& o) const { return c_ == o.c_; }

private:
    static long check(long maxdeg) {
        if (maxdeg < 0) throw std::invalid_argument("RationalSeries: negative maxdeg");
        return maxdeg;
    }

    std::vector<Rat> c_;
};

}  // namespace schurp
