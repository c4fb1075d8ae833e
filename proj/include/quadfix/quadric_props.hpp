#pragma once

// Properties of the generic fixed matrix M: the corner matrix P and the
// determinant factorization det M = prod det P_i over the conjugate
// partition, the corank (= degeneracy number) with randomized and exact
// routes, constructive null-space witnesses from the column/row
// restrictions M' and M'', and a verified nonzero minor of size
// n - d(lambda) certifying the rank from below.

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "quadfix/errors.hpp"
#include "quadfix/fixed_space.hpp"
#include "quadfix/matrix.hpp"
#include "quadfix/partition.hpp"
#include "quadfix/polynomial.hpp"

namespace quadfix {

/// k x k matrix of the top-right entries of every block of the
/// lambda-decomposition of M.
inline RingMatrix<Polynomial> upper_right_matrix(const GenericFixedMatrix& g) {
    const BlockGrid grid = g.partition.block_grid();
    const int k = g.partition.length();
    RingMatrix<Polynomial> p(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) p.at(i, j) = g.matrix.at(grid.begin(i), grid.end(j) - 1);
    return p;
}

struct DetFactorization {
    RingMatrix<Polynomial> corner;     // P
    std::vector<Polynomial> factors;   // det P_i, i = 1..lambda_1
    Polynomial product;
};

/// det M = prod_{i=1}^{lambda_1} det P_i where P_i is the upper-left
/// mu_i x mu_i corner of P and mu is the conjugate partition.
inline DetFactorization det_by_formula(const GenericFixedMatrix& g) {
    DetFactorization out;
    out.corner = upper_right_matrix(g);
    Partition mu = g.partition.conjugate();
    out.product = Polynomial::constant(1);
    for (int i = 0; i < mu.length(); ++i) {
        std::vector<int> idx;
        for (int t = 0; t < mu.part(i); ++t) idx.push_back(t);
        Polynomial f = det_expansion(submatrix(out.corner, idx, idx));
        out.product = out.product * f;
        out.factors.push_back(std::move(f));
    }
    return out;
}

/// Fraction-free symbolic determinant of the full matrix; bounded
/// because term counts grow quickly with n.
inline Polynomial det_direct(const GenericFixedMatrix& g, int symbolic_bound = 9) {
    if (g.partition.n() > symbolic_bound)
        throw BoundExceeded("det_direct: n exceeds the symbolic bound");
    return det_expansion(g.matrix);
}

/// Whether the factored determinant vanishes, decided factor by factor:
/// a nonzero value at an exact rational point certifies a factor
/// nonzero; only factors that look zero at every trial point are
/// expanded symbolically.
inline bool formula_det_is_zero(const GenericFixedMatrix& g, std::uint64_t seed = 0,
                                int trials = 5) {
    RingMatrix<Polynomial> p = upper_right_matrix(g);
    Partition mu = g.partition.conjugate();
    for (int i = 0; i < mu.length(); ++i) {
        std::vector<int> idx;
        for (int t = 0; t < mu.part(i); ++t) idx.push_back(t);
        RingMatrix<Polynomial> pi = submatrix(p, idx, idx);
        bool certified_nonzero = false;
        for (int t = 0; t < trials && !certified_nonzero; ++t) {
            auto point = random_specialization(*g.catalog, seed + static_cast<std::uint64_t>(t));
            certified_nonzero = !det(specialize(pi, point)).is_zero();
        }
        if (!certified_nonzero && det_expansion(pi).is_zero()) return true;
    }
    return false;
}

struct BoundedDetFactorization {
    std::vector<std::string> factor_strings;
    std::optional<Polynomial> product;  // set when zero or affordable
    bool is_zero = false;
};

/// The factored determinant past the full-symbolic tier: factors of
/// size <= factor_bound are expanded, oversized ones are reported as
/// placeholders, and the product is expanded only while the term-count
/// estimate stays under product_term_cap.
inline BoundedDetFactorization det_by_formula_bounded(const GenericFixedMatrix& g,
                                                      int factor_bound, std::uint64_t seed = 0,
                                                      int trials = 5,
                                                      std::size_t product_term_cap = 1u << 16) {
    RingMatrix<Polynomial> corner = upper_right_matrix(g);
    Partition mu = g.partition.conjugate();
    BoundedDetFactorization out;
    std::vector<Polynomial> expanded;
    bool all_expanded = true;
    for (int i = 0; i < mu.length(); ++i) {
        std::vector<int> idx;
        for (int t = 0; t < mu.part(i); ++t) idx.push_back(t);
        if (mu.part(i) <= factor_bound) {
            Polynomial f = det_expansion(submatrix(corner, idx, idx));
            out.factor_strings.push_back(f.to_string());
            expanded.push_back(std::move(f));
        } else {
            all_expanded = false;
            out.factor_strings.push_back("(unexpanded " + std::to_string(mu.part(i)) + "x" +
                                         std::to_string(mu.part(i)) + ")");
        }
    }
    if (all_expanded) {
        for (const auto& f : expanded) out.is_zero = out.is_zero || f.is_zero();
    } else {
        out.is_zero = formula_det_is_zero(g, seed, trials);
    }
    if (out.is_zero) {
        out.product = Polynomial();
        return out;
    }
    if (all_expanded) {
        std::size_t estimate = 1;
        for (const auto& f : expanded) {
            estimate *= std::max<std::size_t>(1, f.term_count());
            if (estimate > product_term_cap) return out;
        }
        Polynomial p = Polynomial::constant(1);
        for (const auto& f : expanded) p = p * f;
        out.product = std::move(p);
    }
    return out;
}

/// The rank theorem's prediction: corank = d(lambda).
inline int corank_expected(const Partition& lambda) { return lambda.degeneracy(); }

/// Corank from `trials` seeded random specializations. The observed rank
/// never exceeds the generic rank, so the maximum over trials is a lower
/// bound that is exact except with probability <= (n/(2*bound))^trials.
inline int corank_randomized(const GenericFixedMatrix& g, int trials = 5, std::uint64_t seed = 0,
                             long bound = 1'000'000) {
    if (trials < 1) throw std::invalid_argument("corank_randomized: trials must be >= 1");
    const int n = g.partition.n();
    int best = 0;
    for (int t = 0; t < trials; ++t) {
        auto point = random_specialization(*g.catalog, seed + static_cast<std::uint64_t>(t), bound);
        std::vector<int> pivots;
        rref(specialize(g.matrix, point), &pivots);
        best = std::max(best, static_cast<int>(pivots.size()));
    }
    return n - best;
}

/// Exact corank by fraction-free elimination over the polynomial ring
/// (equivalently, rank over the fraction field).
inline int corank_exact(const GenericFixedMatrix& g) {
    return g.partition.n() - exact_rank(g.matrix);
}

/// Randomized corank, cross-checked against the exact elimination for
/// n <= exact_bound. A disagreement would mean every trial point was
/// rank-deficient; that is a logic error at these bounds.
inline int corank_computed(const GenericFixedMatrix& g, int trials = 5, std::uint64_t seed = 0,
                           long bound = 1'000'000, int exact_bound = 8) {
    int randomized = corank_randomized(g, trials, seed, bound);
    if (g.partition.n() <= exact_bound) {
        int exact = corank_exact(g);
        if (exact != randomized)
            throw std::logic_error("corank_computed: randomized and exact ranks disagree");
    }
    return randomized;
}

/// Per-partition probability that all `trials` specializations miss the
/// generic rank (Schwartz-Zippel bound).
inline double corank_false_pass_probability(int n, int trials = 5, long bound = 1'000'000) {
    return std::pow(static_cast<double>(n) / (2.0 * static_cast<double>(bound)), trials);
}

struct RestrictedMatrices {
    RingMatrix<Polynomial> m_prime;         // n x s column selection
    RingMatrix<Polynomial> m_double_prime;  // s x s
    std::vector<int> selected_cols;         // 0-based global indices
    std::vector<int> selected_rows;
};

/// M' keeps, per column block of part value p, the last d_p(lambda)
/// columns; M'' then keeps, per row block, the first d_p(lambda) rows
/// of M'.
inline RestrictedMatrices restricted_matrices(const GenericFixedMatrix& g) {
    const Partition& lambda = g.partition;
    const BlockGrid grid = lambda.block_grid();
    RestrictedMatrices out;
    for (int b = 0; b < lambda.length(); ++b) {
        int d = lambda.partial_degeneracy(lambda.part(b));
        for (int c = grid.end(b) - d; c < grid.end(b); ++c) out.selected_cols.push_back(c);
        for (int r = grid.begin(b); r < grid.begin(b) + d; ++r) out.selected_rows.push_back(r);
    }
    std::vector<int> all_rows;
    for (int r = 0; r < lambda.n(); ++r) all_rows.push_back(r);
    out.m_prime = submatrix(g.matrix, all_rows, out.selected_cols);
    out.m_double_prime = submatrix(g.matrix, out.selected_rows, out.selected_cols);
    return out;
}

/// Divides out the integer content and normalizes the sign of the first
/// nonzero entry's leading coefficient.
inline void normalize_vector_content(std::vector<Polynomial>& v) {
    BigInt g = 0;
    for (const auto& p : v)
        for (const auto& [m, c] : p.terms()) {
            BigInt a = abs(c);
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
        }
    if (sgn(g) == 0) return;
    for (const auto& p : v) {
        if (p.is_zero()) continue;
        if (sgn(p.terms()[0].second) < 0) g = -g;
        break;
    }
    if (g == 1) return;
    Polynomial divisor = Polynomial::constant(g);
    for (auto& p : v) p = exact_div(p, divisor);
}

/// Null-space basis of M'' over the fraction field with denominators
/// cleared, padded with zeros back into length-n vectors; exactly
/// d(lambda) vectors, each annihilating M symbolically.
inline std::vector<std::vector<Polynomial>> null_basis(const GenericFixedMatrix& g) {
    RestrictedMatrices rm = restricted_matrices(g);
    auto small_basis = fraction_free_nullspace(rm.m_double_prime);
    std::vector<std::vector<Polynomial>> out;
    for (auto& v : small_basis) {
        std::vector<Polynomial> full(static_cast<std::size_t>(g.partition.n()));
        for (std::size_t t = 0; t < rm.selected_cols.size(); ++t)
            full[static_cast<std::size_t>(rm.selected_cols[t])] = std::move(v[t]);
        normalize_vector_content(full);
        out.push_back(std::move(full));
    }
    return out;
}

struct RankWitness {
    std::vector<int> rows, cols;          // 0-based, ascending, size n - d(lambda)
    std::optional<Polynomial> minor_det;  // present when computed symbolically
    bool symbolic = false;                // true: minor_det verified nonzero as a polynomial
                                          // false: certified by a nonzero exact evaluation
};

namespace detail {

// Antidiagonals of the coarsened (equal parts merged) diagonal blocks.
// For an even part with odd multiplicity the main antidiagonal crosses
// the zero middle block, so that block contributes the antidiagonal just
// above instead, dropping its last row and column.
inline void witness_candidate(const Partition& lambda, std::vector<int>& rows,
                              std::vector<int>& cols) {
    const auto& parts = lambda.parts();
    std::size_t i = 0;
    int offset = 0;
    while (i < parts.size()) {
        int p = parts[i];
        std::size_t j = i;
        while (j < parts.size() && parts[j] == p) ++j;
        int mult = static_cast<int>(j - i);
        int size = p * mult;
        if (p % 2 == 1 || mult % 2 == 0) {
            for (int r = 0; r < size; ++r) {
                rows.push_back(offset + r);
                cols.push_back(offset + r);
            }
        } else {
            int skip = offset + ((mult - 1) / 2) * p + p - 1;  // last row/col of the middle block
            for (int r = 0; r < size; ++r) {
                if (offset + r == skip) continue;
                rows.push_back(offset + r);
                cols.push_back(offset + r);
            }
        }
        offset += size;
        i = j;
    }
}

}  // namespace detail

/// A verified nonzero minor of size (n - d(lambda)) x (n - d(lambda)).
/// The antidiagonal construction is tried first; if its verification
/// fails at every trial point, a pivot search over seeded
/// specializations finds a certificate instead. The returned minor is
/// never trusted unverified.
inline RankWitness witness_minor(const GenericFixedMatrix& g, int symbolic_bound = 9,
                                 int trials = 5, std::uint64_t seed = 0) {
    const int n = g.partition.n();
    const int target = n - g.partition.degeneracy();

    auto verify = [&](std::vector<int> rows, std::vector<int> cols,
                      const std::map<std::string, Rational>* known_point)
        -> std::optional<RankWitness> {
        RingMatrix<Polynomial> sub = submatrix(g.matrix, rows, cols);
        if (static_cast<int>(rows.size()) <= symbolic_bound) {
            Polynomial d = det_expansion(sub);
            if (d.is_zero()) return std::nullopt;
            return RankWitness{std::move(rows), std::move(cols), std::move(d), true};
        }
        if (known_point && !det(specialize(sub, *known_point)).is_zero())
            return RankWitness{std::move(rows), std::move(cols), std::nullopt, false};
        for (int t = 0; t < trials; ++t) {
            auto point = random_specialization(*g.catalog, seed + static_cast<std::uint64_t>(t));
            if (!det(specialize(sub, point)).is_zero())
                return RankWitness{std::move(rows), std::move(cols), std::nullopt, false};
        }
        return std::nullopt;
    };

    std::vector<int> rows, cols;
    detail::witness_candidate(g.partition, rows, cols);
    if (static_cast<int>(rows.size()) == target)
        if (auto w = verify(std::move(rows), std::move(cols), nullptr)) return *w;

    // Pivot-based fallback: Gaussian elimination on a specialization,
    // recording which original rows and columns carry the pivots.
    for (int t = 0; t < trials; ++t) {
        auto point =
            random_specialization(*g.catalog, seed + 7919 + static_cast<std::uint64_t>(t));
        RingMatrix<Rational> a = specialize(g.matrix, point);
        std::vector<int> row_of(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) row_of[static_cast<std::size_t>(i)] = i;
        std::vector<int> prows, pcols;
        int r = 0;
        for (int c = 0; c < n && r < n; ++c) {
            int piv = -1;
            for (int i = r; i < n; ++i)
                if (!a.at(i, c).is_zero()) {
                    piv = i;
                    break;
                }
            if (piv < 0) continue;
            if (piv != r) {
                a.swap_rows(piv, r);
                std::swap(row_of[static_cast<std::size_t>(piv)],
                          row_of[static_cast<std::size_t>(r)]);
            }
            for (int i = r + 1; i < n; ++i) {
                if (a.at(i, c).is_zero()) continue;
                Rational f = a.at(i, c) / a.at(r, c);
                for (int j = c; j < n; ++j) a.at(i, j) = a.at(i, j) - f * a.at(r, j);
            }
            prows.push_back(row_of[static_cast<std::size_t>(r)]);
            pcols.push_back(c);
            ++r;
        }
        if (static_cast<int>(prows.size()) < target) continue;
        prows.resize(static_cast<std::size_t>(target));
        pcols.resize(static_cast<std::size_t>(target));
        std::sort(prows.begin(), prows.end());
        std::sort(pcols.begin(), pcols.end());
        if (auto w = verify(std::move(prows), std::move(pcols), &point)) return *w;
    }
    throw WitnessNotFound("witness_minor: no verified minor of size " + std::to_string(target));
}

}  // namespace quadfix
