#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace schurp {

/// Integer partition: weakly decreasing nonnegative parts, trailing zeros
/// stripped on construction. The empty partition is the empty list.
class Partition {
public:
    Partition() = default;

    Partition(std::initializer_list<long> parts) : parts_(parts) { normalize(); }

    explicit Partition(std::vector<long> parts) : parts_(std::move(parts)) { normalize(); }

    const std::vector<long>& parts() const { return parts_; }

    std::size_t length() const { return parts_.size(); }

    bool empty() const { return parts_.empty(); }

    /// 1-based part access; zero beyond the length.
    long part(std::size_t i) const {
        if (i == 0) throw std::out_of_range("Partition::part is 1-based");
        return i <= parts_.size() ? parts_[i - 1] : 0;
    }

    long weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0L); }

    /// Walker coordinate of the i-th row (1-based): part(i) - i + 1.
    long walker(std::size_t i) const { return part(i) - static_cast<long>(i) + 1; }

    /// True if some walker coordinate part(i) - i + 1 equals x, i over all rows
    /// including the infinite zero tail.
    bool occupies(long x) const {
        const long len = static_cast<long>(parts_.size());
        if (x <= -len) return true;  // zero tail: coordinates 1-i for i > len
        for (long i = 1; i <= len; ++i)
            if (part(i) - i + 1 == x) return true;
        return false;
    }

    bool contains(const Partition& mu) const {
        if (mu.parts_.size() > parts_.size()) return false;
        for (std::size_t i = 0; i < mu.parts_.size(); ++i)
            if (mu.parts_[i] > parts_[i]) return false;
        return true;
    }

    Partition conjugate() const {
        if (parts_.empty()) return {};
        std::vector<long> c(static_cast<std::size_t>(parts_[0]), 0);
        for (long p : parts_)
            for (long j = 0; j < p; ++j) ++c[static_cast<std::size_t>(j)];
        return Partition(std::move(c));
    }

    /// Rows 2.. as a partition.
    Partition drop_first_row() const {
        if (parts_.empty()) return {};
        return Partition(std::vector<long>(parts_.begin() + 1, parts_.end()));
    }

    /// Removes the first column (each part lowered by one).
    Partition drop_first_column() const {
        std::vector<long> p;
        p.reserve(parts_.size());
        for (long v : parts_) p.push_back(v - 1);
        return Partition(std::move(p));
    }

    bool operator==(const Partition& o) const { return parts_ == o.parts_; }
    auto operator<=>(const Partition& o) const = default;

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(parts_[i]);
        }
        return s + ")";
    }

private:
    void normalize() {
        while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] < 0) throw std::invalid_argument("Partition: negative part");
            if (i + 1 < parts_.size() && parts_[i] < parts_[i + 1])
                throw std::invalid_argument("Partition: parts not weakly decreasing");
        }
    }

    std::vector<long> parts_;
};

/// All partitions with part(1) <= L and length <= K, graded-lex order
/// (by weight, then lexicographic on the part lists).
inline std::vector<Partition> partitions_in_box(long L, long K) {
    if (L < 0 || K < 0) throw std::invalid_argument("partitions_in_box: negative bound");
    std::vector<Partition> out;
    std::vector<long> cur;
    auto rec = [&](auto&& self, long maxPart, long rowsLeft) -> void {
        out.emplace_back(std::vector<long>(cur));
        if (rowsLeft == 0) return;
        for (long p = 1; p <= maxPart; ++p) {
            cur.push_back(p);
            self(self, p, rowsLeft - 1);
            cur.pop_back();
        }
    };
    rec(rec, L, K);
    std::sort(out.begin(), out.end(), [](const Partition& a, const Partition& b) {
        if (a.weight() != b.weight()) return a.weight() < b.weight();
        return a.parts() < b.parts();
    });
    return out;
}

/// All kappa with kappa_i <= mu_i (sub-partitions of mu).
inline std::vector<Partition> subpartitions(const Partition& mu) {
    std::vector<Partition> out;
    std::vector<long> cur;
    auto rec = [&](auto&& self, std::size_t row, long cap) -> void {
        if (row == mu.length()) {
            out.emplace_back(std::vector<long>(cur));
            return;
        }
        long hi = std::min(cap, mu.part(row + 1));
        for (long p = 0; p <= hi; ++p) {
            cur.push_back(p);
            self(self, row + 1, p);
            cur.pop_back();
        }
    };
    rec(rec, 0, mu.empty() ? 0 : mu.part(1));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace schurp
