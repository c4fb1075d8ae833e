#pragma once

// Integer partitions and the block grid they induce on n x n matrices.
// Partitions are immutable value objects; parts are kept weakly
// decreasing and strictly positive.

#include <algorithm>
#include <compare>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "quadfix/errors.hpp"

namespace quadfix {

// Cumulative part sums 0, l1, l1+l2, ..., n. Block (i,j) of the
// decomposition covers rows [offsets[i], offsets[i+1]) and columns
// [offsets[j], offsets[j+1]) in 0-based half-open terms.
struct BlockGrid {
    std::vector<int> offsets;

    int blocks() const { return static_cast<int>(offsets.size()) - 1; }
    int begin(int b) const { return offsets[b]; }
    int end(int b) const { return offsets[b + 1]; }
    int size(int b) const { return offsets[b + 1] - offsets[b]; }
};

class Partition {
public:
    /// Normalizes: drops zeros, sorts weakly decreasing. Throws
    /// EmptyPartition when no positive entry remains, and
    /// invalid_argument on negative entries.
    explicit Partition(std::vector<int> raw) {
        for (int p : raw) {
            if (p < 0) throw std::invalid_argument("Partition: negative part");
            if (p > 0) parts_.push_back(p);
        }
        if (parts_.empty()) throw EmptyPartition("Partition: no positive parts");
        std::sort(parts_.begin(), parts_.end(), std::greater<int>());
        n_ = std::accumulate(parts_.begin(), parts_.end(), 0);
    }

    Partition(std::initializer_list<int> raw) : Partition(std::vector<int>(raw)) {}

    /// Accepts "4,2,2,2" as well as exponent notation "2^3,4^1"
    /// (tokens may mix both forms).
    static Partition parse(const std::string& text);

    const std::vector<int>& parts() const { return parts_; }
    int n() const { return n_; }
    int length() const { return static_cast<int>(parts_.size()); }
    int part(int i) const { return parts_[static_cast<std::size_t>(i)]; }
    int largest() const { return parts_.front(); }

    /// mu_i = #{j : lambda_j >= i} for 1 <= i <= lambda_1.
    Partition conjugate() const {
        std::vector<int> mu(static_cast<std::size_t>(parts_[0]), 0);
        for (int p : parts_)
            for (int i = 0; i < p; ++i) mu[static_cast<std::size_t>(i)]++;
        return Partition(std::move(mu));
    }

    /// part value -> multiplicity, ascending by value.
    std::map<int, int> multiplicities() const {
        std::map<int, int> m;
        for (int p : parts_) m[p]++;
        return m;
    }

    /// d(lambda): number of even part values with odd multiplicity.
    int degeneracy() const {
        int d = 0;
        for (const auto& [value, count] : multiplicities())
            if (value % 2 == 0 && count % 2 == 1) ++d;
        return d;
    }

    /// d_i(lambda): degeneracy of the sub-partition of parts <= i.
    /// Requires 1 <= i <= lambda_1.
    int partial_degeneracy(int i) const {
        if (i < 1 || i > parts_[0])
            throw IndexOutOfRange("partial_degeneracy: part value out of range");
        int d = 0;
        for (const auto& [value, count] : multiplicities())
            if (value <= i && value % 2 == 0 && count % 2 == 1) ++d;
        return d;
    }

    /// lambda^(1) = lambda, lambda^(i+1) subtracts 1 from every positive
    /// part and drops zeros; lambda_1 partitions in total.
    std::vector<Partition> derived_sequence() const {
        std::vector<Partition> seq;
        seq.push_back(*this);
        for (int step = 1; step < parts_[0]; ++step) {
            std::vector<int> next;
            for (int p : seq.back().parts_)
                if (p > 1) next.push_back(p - 1);
            seq.push_back(Partition(std::move(next)));
        }
        return seq;
    }

    BlockGrid block_grid() const {
        BlockGrid g;
        g.offsets.push_back(0);
        for (int p : parts_) g.offsets.push_back(g.offsets.back() + p);
        return g;
    }

    /// "(4,2,2,2)"
    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i > 0) s += ",";
            s += std::to_string(parts_[i]);
        }
        return s + ")";
    }

    /// "4,2,2,2" — the CLI input syntax.
    std::string to_plain_string() const {
        std::string s;
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i > 0) s += ",";
            s += std::to_string(parts_[i]);
        }
        return s;
    }

    friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }
    friend auto operator<=>(const Partition& a, const Partition& b) { return a.parts_ <=> b.parts_; }

private:
    std::vector<int> parts_;
    int n_ = 0;
};

inline Partition Partition::parse(const std::string& text) {
    std::vector<int> raw;
    std::size_t pos = 0;
    auto parse_int = [&](const std::string& tok) {
        std::size_t used = 0;
        int value = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument("Partition: bad token '" + tok + "'");
        return value;
    };
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        // trim surrounding whitespace
        std::size_t b = tok.find_first_not_of(" \t");
        std::size_t e = tok.find_last_not_of(" \t");
        if (b == std::string::npos) throw std::invalid_argument("Partition: empty token");
        tok = tok.substr(b, e - b + 1);
        std::size_t caret = tok.find('^');
        try {
            if (caret == std::string::npos) {
                raw.push_back(parse_int(tok));
            } else {
                int value = parse_int(tok.substr(0, caret));
                int count = parse_int(tok.substr(caret + 1));
                if (count < 0) throw std::invalid_argument("Partition: negative exponent");
                for (int i = 0; i < count; ++i) raw.push_back(value);
            }
        } catch (const std::out_of_range&) {
            throw std::invalid_argument("Partition: token out of range '" + tok + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return Partition(std::move(raw));
}

/// All partitions of n, lexicographically decreasing. Throws
/// BoundExceeded past the configured bound (default 12).
inline std::vector<Partition> enumerate_partitions(int n, int bound = 12) {
    if (n < 1) throw std::invalid_argument("enumerate_partitions: n must be positive");
    if (n > bound) throw BoundExceeded("enumerate_partitions: n exceeds bound");
    std::vector<Partition> out;
    std::vector<int> current;
    auto rec = [&](auto&& self, int remaining, int max_part) -> void {
        if (remaining == 0) {
            out.push_back(Partition(current));
            return;
        }
        for (int p = std::min(remaining, max_part); p >= 1; --p) {
            current.push_back(p);
            self(self, remaining - p, p);
            current.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

}  // namespace quadfix
