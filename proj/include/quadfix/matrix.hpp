#pragma once

// Dense matrices over an exact scalar ring (Rational, BigInt, or a
// BasicPolynomial). Determinants use fraction-free Bareiss elimination
// with exact divisions (cofactor expansion for dimension <= 4); rank and
// null spaces over the polynomial ring stay fraction-free throughout, so
// every intermediate entry is a minor of the input.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "quadfix/errors.hpp"
#include "quadfix/polynomial.hpp"
#include "quadfix/rational.hpp"

namespace quadfix {

template <typename R>
struct Ring;

template <>
struct Ring<Rational> {
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static bool is_zero(const Rational& x) { return x.is_zero(); }
    static Rational exact_div(const Rational& a, const Rational& b) { return a / b; }
    static std::string to_string(const Rational& x) { return x.to_string(); }
    static Rational mul_sub(const Rational& a, const Rational& b, const Rational& c,
                            const Rational& d) {
        return a * b - c * d;
    }
};

template <>
struct Ring<BigInt> {
    static BigInt zero() { return BigInt(0); }
    static BigInt one() { return BigInt(1); }
    static bool is_zero(const BigInt& x) { return sgn(x) == 0; }
    static BigInt exact_div(const BigInt& a, const BigInt& b) {
        return detail::CoeffOps<BigInt>::exact_div(a, b);
    }
    static std::string to_string(const BigInt& x) { return x.get_str(); }
    static BigInt mul_sub(const BigInt& a, const BigInt& b, const BigInt& c, const BigInt& d) {
        return a * b - c * d;
    }
};

template <typename C>
struct Ring<BasicPolynomial<C>> {
    using P = BasicPolynomial<C>;
    static P zero() { return P(); }
    static P one() { return P::constant(C(1)); }
    static bool is_zero(const P& x) { return x.is_zero(); }
    static P exact_div(const P& a, const P& b) { return P::divide_exact(a, b); }
    static std::string to_string(const P& x) { return x.to_string(); }
    static P mul_sub(const P& a, const P& b, const P& c, const P& d) {
        return P::fused_mul_sub(a, b, c, d);
    }
};

template <typename R>
class RingMatrix {
public:
    RingMatrix() = default;
    RingMatrix(int rows, int cols)
        : rows_(rows), cols_(cols),
          e_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), Ring<R>::zero()) {
        if (rows < 0 || cols < 0) throw DimensionMismatch("RingMatrix: negative dimension");
    }

    static RingMatrix identity(int n) {
        RingMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = Ring<R>::one();
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    R& at(int i, int j) { return e_[static_cast<std::size_t>(i) * cols_ + j]; }
    const R& at(int i, int j) const { return e_[static_cast<std::size_t>(i) * cols_ + j]; }

    bool is_zero() const {
        for (const auto& x : e_)
            if (!Ring<R>::is_zero(x)) return false;
        return true;
    }

    RingMatrix transpose() const {
        RingMatrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    void swap_rows(int a, int b) {
        for (int j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
    }

    friend RingMatrix operator+(const RingMatrix& a, const RingMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw DimensionMismatch("matrix add: shape mismatch");
        RingMatrix out(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.e_.size(); ++i) out.e_[i] = a.e_[i] + b.e_[i];
        return out;
    }

    friend RingMatrix operator-(const RingMatrix& a, const RingMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw DimensionMismatch("matrix sub: shape mismatch");
        RingMatrix out(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.e_.size(); ++i) out.e_[i] = a.e_[i] - b.e_[i];
        return out;
    }

    friend RingMatrix operator*(const RingMatrix& a, const RingMatrix& b) {
        if (a.cols_ != b.rows_) throw DimensionMismatch("matrix mul: inner dimension mismatch");
        RingMatrix out(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                const R& aik = a.at(i, k);
                if (Ring<R>::is_zero(aik)) continue;
                for (int j = 0; j < b.cols_; ++j) {
                    if (Ring<R>::is_zero(b.at(k, j))) continue;
                    out.at(i, j) += aik * b.at(k, j);
                }
            }
        return out;
    }

    friend bool operator==(const RingMatrix& a, const RingMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (std::size_t i = 0; i < a.e_.size(); ++i)
            if (!(a.e_[i] == b.e_[i])) return false;
        return true;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<R> e_;
};

template <typename R>
RingMatrix<R> submatrix(const RingMatrix<R>& m, const std::vector<int>& rows,
                        const std::vector<int>& cols) {
    RingMatrix<R> out(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            out.at(static_cast<int>(i), static_cast<int>(j)) = m.at(rows[i], cols[j]);
    return out;
}

template <typename R>
RingMatrix<R> matrix_power(RingMatrix<R> m, int e) {
    if (!m.is_square()) throw NotSquare("matrix_power: not square");
    RingMatrix<R> out = RingMatrix<R>::identity(m.rows());
    for (int i = 0; i < e; ++i) out = out * m;
    return out;
}

/// Cofactor expansion along the first row.
template <typename R>
R det_cofactor(const RingMatrix<R>& a) {
    if (!a.is_square()) throw NotSquare("det: not square");
    const int n = a.rows();
    if (n == 0) return Ring<R>::one();
    if (n == 1) return a.at(0, 0);
    R total = Ring<R>::zero();
    std::vector<int> rows, cols;
    for (int i = 1; i < n; ++i) rows.push_back(i);
    for (int j = 0; j < n; ++j) {
        if (Ring<R>::is_zero(a.at(0, j))) continue;
        cols.clear();
        for (int c = 0; c < n; ++c)
            if (c != j) cols.push_back(c);
        R m = a.at(0, j) * det_cofactor(submatrix(a, rows, cols));
        if (j % 2 == 0)
            total += m;
        else
            total -= m;
    }
    return total;
}

/// Fraction-free (Bareiss) determinant; every division is by the
/// previous pivot and is exact over the ring.
template <typename R>
R det_bareiss(RingMatrix<R> a) {
    if (!a.is_square()) throw NotSquare("det: not square");
    const int n = a.rows();
    if (n == 0) return Ring<R>::one();
    R prev = Ring<R>::one();
    bool negate = false;
    for (int k = 0; k + 1 < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (!Ring<R>::is_zero(a.at(i, k))) {
                piv = i;
                break;
            }
        if (piv < 0) return Ring<R>::zero();
        if (piv != k) {
            a.swap_rows(piv, k);
            negate = !negate;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j)
                a.at(i, j) = Ring<R>::exact_div(
                    Ring<R>::mul_sub(a.at(i, j), a.at(k, k), a.at(i, k), a.at(k, j)), prev);
            a.at(i, k) = Ring<R>::zero();
        }
        prev = a.at(k, k);
    }
    R d = a.at(n - 1, n - 1);
    return negate ? R(-d) : d;
}

/// Exact determinant: cofactor expansion for dimension <= 4, Bareiss
/// elimination above (lowest-index nonzero pivot).
template <typename R>
R det(const RingMatrix<R>& a) {
    if (!a.is_square()) throw NotSquare("det: not square");
    if (a.rows() <= 4) return det_cofactor(a);
    return det_bareiss(a);
}

/// Division-free determinant: row-by-row Laplace expansion memoized over
/// column subsets. For matrices whose entries are single terms every
/// product is a monomial translation, so the cost is near-linear in the
/// sizes of the intermediate minors; Bareiss pays a final exact division
/// of quotient-times-divisor term pairs that dwarfs this on dense
/// symbolic matrices.
template <typename R>
R det_expansion(const RingMatrix<R>& a) {
    if (!a.is_square()) throw NotSquare("det: not square");
    const int n = a.rows();
    if (n == 0) return Ring<R>::one();
    if (n > 20) throw BoundExceeded("det_expansion: dimension too large for subset table");
    std::vector<R> prev(std::size_t{1} << n), cur;
    prev[0] = Ring<R>::one();
    for (int k = 1; k <= n; ++k) {
        cur.assign(std::size_t{1} << n, Ring<R>::zero());
        std::vector<int> cols(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) cols[static_cast<std::size_t>(i)] = i;
        while (true) {
            std::size_t mask = 0;
            for (int c : cols) mask |= std::size_t{1} << c;
            R acc = Ring<R>::zero();
            for (int t = 0; t < k; ++t) {
                const R& e = a.at(k - 1, cols[static_cast<std::size_t>(t)]);
                if (Ring<R>::is_zero(e)) continue;
                R m = e * prev[mask ^ (std::size_t{1} << cols[static_cast<std::size_t>(t)])];
                if (((k - 1) + t) % 2 == 0)
                    acc += m;
                else
                    acc -= m;
            }
            cur[mask] = std::move(acc);
            int i = k - 1;
            while (i >= 0 && cols[static_cast<std::size_t>(i)] == n - k + i) --i;
            if (i < 0) break;
            ++cols[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                cols[static_cast<std::size_t>(j)] = cols[static_cast<std::size_t>(j - 1)] + 1;
        }
        prev.swap(cur);
    }
    return prev[(std::size_t{1} << n) - 1];
}

template <typename R>
struct FractionFreeEchelon {
    RingMatrix<R> u;              // fraction-free row echelon form
    std::vector<int> pivot_cols;  // one per pivot row, ascending
    int rank = 0;
};

/// Row echelon form by Bareiss steps with row pivoting (lowest-index
/// nonzero) and column skipping; entries remain minors of the input, so
/// the rank over the fraction field is read off exactly.
template <typename R>
FractionFreeEchelon<R> fraction_free_echelon(RingMatrix<R> a) {
    FractionFreeEchelon<R> out;
    const int rows = a.rows(), cols = a.cols();
    R prev = Ring<R>::one();
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (!Ring<R>::is_zero(a.at(i, c))) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r) a.swap_rows(piv, r);
        for (int i = r + 1; i < rows; ++i) {
            for (int j = c + 1; j < cols; ++j)
                a.at(i, j) = Ring<R>::exact_div(
                    Ring<R>::mul_sub(a.at(i, j), a.at(r, c), a.at(i, c), a.at(r, j)), prev);
            a.at(i, c) = Ring<R>::zero();
        }
        prev = a.at(r, c);
        out.pivot_cols.push_back(c);
        ++r;
    }
    out.u = std::move(a);
    out.rank = r;
    return out;
}

/// Exact rank over the fraction field of the entry ring.
template <typename R>
int exact_rank(const RingMatrix<R>& a) {
    return fraction_free_echelon(a).rank;
}

/// Null space basis with entries in the ring itself (denominators
/// cleared during back substitution): one vector per free column, the
/// free coordinate carrying the product of the pivots below it.
template <typename R>
std::vector<std::vector<R>> fraction_free_nullspace(const RingMatrix<R>& m) {
    auto ech = fraction_free_echelon(m);
    const int cols = m.cols();
    std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
    for (int c : ech.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;

    std::vector<std::vector<R>> basis;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        std::vector<R> v(static_cast<std::size_t>(cols), Ring<R>::zero());
        v[static_cast<std::size_t>(f)] = Ring<R>::one();
        for (int i = ech.rank - 1; i >= 0; --i) {
            int p = ech.pivot_cols[static_cast<std::size_t>(i)];
            if (p > f) continue;  // rows whose pivot is right of f do not touch v
            R s = Ring<R>::zero();
            for (int j = p + 1; j < cols; ++j) {
                if (Ring<R>::is_zero(v[static_cast<std::size_t>(j)])) continue;
                s += ech.u.at(i, j) * v[static_cast<std::size_t>(j)];
            }
            const R& piv = ech.u.at(i, p);
            for (int j = 0; j < cols; ++j) {
                if (j == p || Ring<R>::is_zero(v[static_cast<std::size_t>(j)])) continue;
                v[static_cast<std::size_t>(j)] = v[static_cast<std::size_t>(j)] * piv;
            }
            v[static_cast<std::size_t>(p)] = -s;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

struct RationalRankNullspace {
    int rank = 0;
    std::vector<std::vector<Rational>> null_basis;
};

/// Reduced row echelon form over the rationals; pivot columns reported
/// through pivot_cols when non-null.
inline RingMatrix<Rational> rref(RingMatrix<Rational> a, std::vector<int>* pivot_cols = nullptr) {
    const int rows = a.rows(), cols = a.cols();
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (!a.at(i, c).is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r) a.swap_rows(piv, r);
        Rational inv = Rational(1) / a.at(r, c);
        for (int j = c; j < cols; ++j) a.at(r, j) = a.at(r, j) * inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || a.at(i, c).is_zero()) continue;
            Rational factor = a.at(i, c);
            for (int j = c; j < cols; ++j) a.at(i, j) = a.at(i, j) - factor * a.at(r, j);
        }
        if (pivot_cols) pivot_cols->push_back(c);
        ++r;
    }
    return a;
}

/// Exact rank and canonical null-space basis (one vector per free
/// column, read from the RREF).
inline RationalRankNullspace rank_and_nullspace(const RingMatrix<Rational>& m) {
    std::vector<int> pivots;
    RingMatrix<Rational> u = rref(m, &pivots);
    const int cols = m.cols();
    std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
    for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;

    RationalRankNullspace out;
    out.rank = static_cast<int>(pivots.size());
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        std::vector<Rational> v(static_cast<std::size_t>(cols), Rational(0));
        v[static_cast<std::size_t>(f)] = Rational(1);
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[static_cast<std::size_t>(pivots[i])] = -u.at(static_cast<int>(i), f);
        out.null_basis.push_back(std::move(v));
    }
    return out;
}

/// Gauss-Jordan inverse; throws SingularMatrix when rank deficient.
inline RingMatrix<Rational> inverse(const RingMatrix<Rational>& m) {
    if (!m.is_square()) throw NotSquare("inverse: not square");
    const int n = m.rows();
    RingMatrix<Rational> aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = Rational(1);
    }
    std::vector<int> pivots;
    aug = rref(std::move(aug), &pivots);
    if (static_cast<int>(pivots.size()) < n || pivots[static_cast<std::size_t>(n - 1)] >= n)
        throw SingularMatrix("inverse: singular matrix");
    RingMatrix<Rational> out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
    return out;
}

template <typename C>
RingMatrix<Rational> specialize(const RingMatrix<BasicPolynomial<C>>& m,
                                const std::map<std::string, Rational>& point) {
    RingMatrix<Rational> out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out.at(i, j) = m.at(i, j).evaluate(point);
    return out;
}

/// Lifts an integer Rational matrix to constant polynomials; throws on
/// non-integer entries.
inline RingMatrix<Polynomial> to_polynomial_matrix(const RingMatrix<Rational>& m) {
    RingMatrix<Polynomial> out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            const Rational& v = m.at(i, j);
            if (!v.is_integer())
                throw std::invalid_argument("to_polynomial_matrix: non-integer entry");
            out.at(i, j) = Polynomial::constant(v.num());
        }
    return out;
}

inline RingMatrix<RationalPolynomial> to_rational_polynomial_matrix(
    const RingMatrix<Rational>& m) {
    RingMatrix<RationalPolynomial> out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out.at(i, j) = RationalPolynomial::constant(m.at(i, j));
    return out;
}

inline RingMatrix<RationalPolynomial> widen_matrix(const RingMatrix<Polynomial>& m) {
    RingMatrix<RationalPolynomial> out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out.at(i, j) = widen(m.at(i, j));
    return out;
}

}  // namespace quadfix
