#pragma once

// The space of symmetric matrices fixed by the unipotent operator
// exp(N_lambda): the nilpotent Jordan matrix, its exponential, the
// closed-form diagonal (A) and off-diagonal (B) blocks, the generic
// element assembled from them, and a brute-force oracle that solves the
// fixed-point condition N*A + A*N^T = 0 as an exact linear system.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "quadfix/errors.hpp"
#include "quadfix/matrix.hpp"
#include "quadfix/partition.hpp"
#include "quadfix/polynomial.hpp"
#include "quadfix/rational.hpp"

namespace quadfix {

/// Block-diagonal nilpotent with one Jordan block per part: ones on the
/// superdiagonal inside each block.
inline RingMatrix<Rational> jordan_nilpotent(const Partition& lambda) {
    RingMatrix<Rational> n(lambda.n(), lambda.n());
    int offset = 0;
    for (int p : lambda.parts()) {
        for (int i = 0; i + 1 < p; ++i) n.at(offset + i, offset + i + 1) = Rational(1);
        offset += p;
    }
    return n;
}

/// exp(N) as the finite sum of N^k / k!; verifies N^n = 0 first and
/// throws NotNilpotent otherwise.
inline RingMatrix<Rational> exp_nilpotent(const RingMatrix<Rational>& n) {
    if (!n.is_square()) throw NotSquare("exp_nilpotent: not square");
    const int dim = n.rows();
    if (!matrix_power(n, dim).is_zero())
        throw NotNilpotent("exp_nilpotent: N^n is not zero");
    RingMatrix<Rational> sum = RingMatrix<Rational>::identity(dim);
    RingMatrix<Rational> term = RingMatrix<Rational>::identity(dim);
    for (int k = 1; k < dim; ++k) {
        term = term * n;
        Rational inv(1, k);
        RingMatrix<Rational> scaled(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) scaled.at(i, j) = term.at(i, j) * inv;
        term = std::move(scaled);
        sum = sum + term;
    }
    return sum;
}

// Closed-form entry rules, 1-based local coordinates. Returned pair is
// (variable index t >= 1, sign). The rules reproduce the displayed block
// families: the diagonal family places a_{(r+c)/2} on even anti-
// diagonals down to the main one, the off-diagonal family places
// a_{r+c-1} above its top-right anti-diagonal; rows alternate sign.

inline std::optional<std::pair<int, int>> block_A_entry(int size, int r, int c) {
    if ((r + c) % 2 != 0) return std::nullopt;
    int t = (r + c) / 2;
    if (t > (size + 1) / 2) return std::nullopt;
    return std::make_pair(t, r % 2 == 1 ? 1 : -1);
}

inline std::optional<std::pair<int, int>> block_B_entry(int q, int r, int c) {
    int t = r + c - 1;
    if (t > q) return std::nullopt;
    return std::make_pair(t, r % 2 == 1 ? 1 : -1);
}

/// Symmetric size x size block with floor((size+1)/2) fresh variables
/// named prefix1, prefix2, ...
inline RingMatrix<Polynomial> block_A(int size, const std::string& prefix = "a") {
    if (size < 1) throw BadShape("block_A: size must be positive");
    int count = (size + 1) / 2;
    std::vector<std::string> names;
    for (int t = 1; t <= count; ++t) names.push_back(prefix + std::to_string(t));
    CatalogPtr cat = make_catalog(std::move(names));
    RingMatrix<Polynomial> m(size, size);
    for (int r = 1; r <= size; ++r)
        for (int c = 1; c <= size; ++c)
            if (auto e = block_A_entry(size, r, c)) {
                Polynomial v = Polynomial::variable(cat, static_cast<std::size_t>(e->first - 1));
                m.at(r - 1, c - 1) = e->second > 0 ? v : -v;
            }
    return m;
}

/// p x q block (p >= q) with q fresh variables; rows q+1..p are zero.
inline RingMatrix<Polynomial> block_B(int p, int q, const std::string& prefix = "a") {
    if (q < 1 || p < q) throw BadShape("block_B: requires p >= q >= 1");
    std::vector<std::string> names;
    for (int t = 1; t <= q; ++t) names.push_back(prefix + std::to_string(t));
    CatalogPtr cat = make_catalog(std::move(names));
    RingMatrix<Polynomial> m(p, q);
    for (int r = 1; r <= p; ++r)
        for (int c = 1; c <= q; ++c)
            if (auto e = block_B_entry(q, r, c)) {
                Polynomial v = Polynomial::variable(cat, static_cast<std::size_t>(e->first - 1));
                m.at(r - 1, c - 1) = e->second > 0 ? v : -v;
            }
    return m;
}

struct GenericFixedMatrix {
    struct VarOrigin {
        int block_i = 0;  // 1-based block row
        int block_j = 0;  // 1-based block column
        int index = 0;    // 1-based index within the block
    };

    Partition partition;
    RingMatrix<Polynomial> matrix;
    CatalogPtr catalog;
    std::vector<VarOrigin> origins;  // by catalog position

    explicit GenericFixedMatrix(Partition p) : partition(std::move(p)) {}

    int variable_count() const { return static_cast<int>(catalog->size()); }
};

/// The generic element of the fixed space: diagonal blocks from the A
/// family, upper blocks from the B family (mirrored below), each block
/// on fresh variables. Blocks are enumerated column-major over the
/// upper triangle (j = 1..k, i = 1..j), giving canonical variable names
/// v{i}_{j}_{t} in that order.
inline GenericFixedMatrix generic_element(const Partition& lambda) {
    const int k = lambda.length();
    const BlockGrid grid = lambda.block_grid();

    std::vector<std::string> names;
    std::vector<GenericFixedMatrix::VarOrigin> origins;
    std::vector<std::vector<int>> base(static_cast<std::size_t>(k),
                                       std::vector<int>(static_cast<std::size_t>(k), -1));
    for (int j = 1; j <= k; ++j)
        for (int i = 1; i <= j; ++i) {
            int count = i == j ? (lambda.part(i - 1) + 1) / 2 : lambda.part(j - 1);
            base[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
                static_cast<int>(names.size());
            for (int t = 1; t <= count; ++t) {
                names.push_back("v" + std::to_string(i) + "_" + std::to_string(j) + "_" +
                                std::to_string(t));
                origins.push_back({i, j, t});
            }
        }
    CatalogPtr cat = make_catalog(std::move(names));

    RingMatrix<Polynomial> m(lambda.n(), lambda.n());
    for (int j = 1; j <= k; ++j)
        for (int i = 1; i <= j; ++i) {
            const int p = lambda.part(i - 1);
            const int q = lambda.part(j - 1);
            const int row0 = grid.begin(i - 1);
            const int col0 = grid.begin(j - 1);
            const int b = base[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
            for (int r = 1; r <= p; ++r)
                for (int c = 1; c <= q; ++c) {
                    auto e = i == j ? block_A_entry(p, r, c) : block_B_entry(q, r, c);
                    if (!e) continue;
                    Polynomial v =
                        Polynomial::variable(cat, static_cast<std::size_t>(b + e->first - 1));
                    if (e->second < 0) v = -v;
                    m.at(row0 + r - 1, col0 + c - 1) = v;
                    if (i != j) m.at(col0 + c - 1, row0 + r - 1) = std::move(v);
                }
        }

    GenericFixedMatrix g(lambda);
    g.matrix = std::move(m);
    g.catalog = cat;
    g.origins = std::move(origins);
    return g;
}

/// Letter names a, b, c, ... in catalog order; refuses more than 26
/// variables rather than inventing a hybrid scheme.
inline GenericFixedMatrix with_letter_names(const GenericFixedMatrix& g) {
    if (g.variable_count() > 26)
        throw TooManyVariables("--letters supports at most 26 variables, partition " +
                               g.partition.to_string() + " has " +
                               std::to_string(g.variable_count()));
    std::vector<std::string> names;
    for (int i = 0; i < g.variable_count(); ++i) names.push_back(std::string(1, char('a' + i)));
    CatalogPtr cat = make_catalog(std::move(names));
    GenericFixedMatrix out(g.partition);
    out.catalog = cat;
    out.origins = g.origins;
    out.matrix = RingMatrix<Polynomial>(g.matrix.rows(), g.matrix.cols());
    for (int i = 0; i < g.matrix.rows(); ++i)
        for (int j = 0; j < g.matrix.cols(); ++j)
            out.matrix.at(i, j) = g.matrix.at(i, j).with_catalog(cat);
    return out;
}

/// N*A + A*N^T.
template <typename R>
RingMatrix<R> lie_residual(const RingMatrix<R>& n, const RingMatrix<R>& a) {
    if (!n.is_square() || !a.is_square() || n.rows() != a.rows())
        throw DimensionMismatch("lie_residual: shapes must agree");
    return n * a + a * n.transpose();
}

struct FixedSpaceBasis {
    Partition partition;
    std::vector<RingMatrix<Rational>> basis;
    int dim = 0;

    explicit FixedSpaceBasis(Partition p) : partition(std::move(p)) {}
};

/// Solves N*A + A*N^T = 0 for symmetric A as an exact linear system in
/// the n(n+1)/2 upper-triangle unknowns (row-major order); basis comes
/// out of the reduced echelon form, one matrix per free unknown.
inline FixedSpaceBasis brute_force_fixed_basis(const Partition& lambda, int bound = 12) {
    const int n = lambda.n();
    if (n > bound) throw BoundExceeded("brute_force_fixed_basis: n exceeds bound");
    RingMatrix<Rational> nil = jordan_nilpotent(lambda);

    const int unknowns = n * (n + 1) / 2;
    auto uindex = [n](int i, int j) {  // i <= j
        return i * n - i * (i - 1) / 2 + (j - i);
    };

    RingMatrix<Rational> sys(n * n, unknowns);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            int eq = r * n + c;
            for (int t = 0; t < n; ++t) {
                // (N*A)(r,c) picks A(t,c); (A*N^T)(r,c) picks A(r,t)
                if (!nil.at(r, t).is_zero()) {
                    int u = uindex(std::min(t, c), std::max(t, c));
                    sys.at(eq, u) = sys.at(eq, u) + nil.at(r, t);
                }
                if (!nil.at(c, t).is_zero()) {
                    int u = uindex(std::min(r, t), std::max(r, t));
                    sys.at(eq, u) = sys.at(eq, u) + nil.at(c, t);
                }
            }
        }

    FixedSpaceBasis out(lambda);
    auto rn = rank_and_nullspace(sys);
    for (const auto& v : rn.null_basis) {
        RingMatrix<Rational> b(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                b.at(i, j) = v[static_cast<std::size_t>(uindex(i, j))];
                b.at(j, i) = b.at(i, j);
            }
        out.basis.push_back(std::move(b));
    }
    out.dim = static_cast<int>(out.basis.size());
    return out;
}

/// dim Q^lambda = sum floor((lambda_i+1)/2) + sum (i-1)*lambda_i - 1.
inline long long dim_Q(const Partition& lambda) {
    long long s = 0;
    for (int i = 0; i < lambda.length(); ++i)
        s += (lambda.part(i) + 1) / 2 + static_cast<long long>(i) * lambda.part(i);
    return s - 1;
}

/// The affine dimension of the fixed space itself.
inline long long dim_S(const Partition& lambda) { return dim_Q(lambda) + 1; }

struct ConjugationTransport {
    RingMatrix<Rational> s;
    RingMatrix<Rational> s_inverse;
    RingMatrix<Rational> n_prime;  // S * N_lambda * S^-1

    RingMatrix<Rational> apply(const RingMatrix<Rational>& a) const {
        return s * a * s.transpose();
    }
    RingMatrix<RationalPolynomial> apply(const RingMatrix<RationalPolynomial>& a) const {
        auto sp = to_rational_polynomial_matrix(s);
        return sp * a * sp.transpose();
    }
};

/// Transport along A -> S*A*S^T; fixed matrices of N_lambda map to fixed
/// matrices of N' = S*N_lambda*S^-1. Throws SingularMatrix when S is not
/// invertible.
inline ConjugationTransport conjugation_transport(const RingMatrix<Rational>& s,
                                                  const Partition& lambda) {
    if (!s.is_square() || s.rows() != lambda.n())
        throw DimensionMismatch("conjugation_transport: S must be n x n");
    ConjugationTransport t;
    t.s = s;
    t.s_inverse = inverse(s);  // SingularMatrix on det = 0
    t.n_prime = s * jordan_nilpotent(lambda) * t.s_inverse;
    return t;
}

/// Deterministic random integer matrix with nonzero determinant,
/// entries in [-bound, bound].
inline RingMatrix<Rational> random_invertible_matrix(int n, std::uint64_t seed, int bound = 3) {
    std::mt19937_64 eng(seed);
    while (true) {
        RingMatrix<Rational> m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                long span = 2L * bound + 1;
                long v = static_cast<long>(eng() % static_cast<unsigned long>(span)) - bound;
                m.at(i, j) = Rational(v);
            }
        if (!det(m).is_zero()) return m;
    }
}

}  // namespace quadfix
