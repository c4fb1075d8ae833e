#pragma once

// Sparse multivariate polynomials over exact coefficient rings (BigInt
// or Rational). Terms are kept in a unique canonical form: sorted by
// descending lexicographic monomial order in catalog order, no zero
// coefficients. Canonical form makes equality and printing exact.
//
// Monomials pack eight 8-bit exponents per 64-bit word, most significant
// byte first, so comparing words as integers compares eight exponents
// lexicographically at once. The monomial hash is linear in the
// exponents (fixed per-variable weights), so products hash in O(1).

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "quadfix/errors.hpp"
#include "quadfix/rational.hpp"

namespace quadfix {

// Ordered list of indeterminate names. Immutable and shared between the
// polynomials built over it. At most Monomial::kMaxVars variables.
class VarCatalog {
public:
    VarCatalog() = default;
    explicit VarCatalog(std::vector<std::string> names) : names_(std::move(names)) {
        for (std::size_t i = 0; i < names_.size(); ++i) index_[names_[i]] = i;
        if (index_.size() != names_.size())
            throw std::invalid_argument("VarCatalog: duplicate variable name");
    }

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<std::size_t> index_of(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    bool operator==(const VarCatalog& o) const { return names_ == o.names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::size_t> index_;
};

using CatalogPtr = std::shared_ptr<const VarCatalog>;

inline CatalogPtr make_catalog(std::vector<std::string> names) {
    return std::make_shared<const VarCatalog>(std::move(names));
}

inline CatalogPtr empty_catalog() {
    static const CatalogPtr c = std::make_shared<const VarCatalog>();
    return c;
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Fixed per-index weight stream; hash(m1*m2) = hash(m1) + hash(m2).
inline std::uint64_t var_weight(std::size_t index) {
    return splitmix64(0x7f4a7c15u + static_cast<std::uint64_t>(index));
}

}  // namespace detail

struct Monomial {
    static constexpr std::size_t kMaxVars = 128;
    static constexpr std::size_t kWords = kMaxVars / 8;
    static constexpr std::uint64_t kHighBits = 0x8080808080808080ull;

    std::array<std::uint64_t, kWords> w{};
    std::uint32_t nwords = 0;
    std::uint64_t h = 0;

    static Monomial unit(std::size_t nvars) {
        if (nvars > kMaxVars)
            throw std::length_error("Monomial: catalogs are limited to 128 variables");
        Monomial m;
        m.nwords = static_cast<std::uint32_t>((nvars + 7) / 8);
        return m;
    }

    static unsigned shift(std::size_t i) { return static_cast<unsigned>((7 - (i & 7)) * 8); }

    int exp(std::size_t i) const {
        return static_cast<int>((w[i >> 3] >> shift(i)) & 0xffu);
    }

    // does not refresh the hash; call recompute_hash when done
    void set_exp(std::size_t i, int e) {
        std::uint64_t mask = 0xffull << shift(i);
        w[i >> 3] = (w[i >> 3] & ~mask) | (static_cast<std::uint64_t>(e) << shift(i));
    }

    void recompute_hash() {
        h = 0;
        for (std::size_t i = 0; i < 8 * nwords; ++i) {
            int e = exp(i);
            if (e) h += static_cast<std::uint64_t>(e) * detail::var_weight(i);
        }
    }

    bool is_unit() const {
        for (std::uint32_t k = 0; k < nwords; ++k)
            if (w[k]) return false;
        return true;
    }

    int total_degree() const {
        int d = 0;
        for (std::uint32_t k = 0; k < nwords; ++k) {
            std::uint64_t x = w[k];
            while (x) {
                d += static_cast<int>(x & 0xffu);
                x >>= 8;
            }
        }
        return d;
    }
};

// Positive when a > b in descending-lex terms; monomials must live over
// the same catalog.
inline int mono_cmp(const Monomial& a, const Monomial& b) {
    for (std::uint32_t k = 0; k < a.nwords; ++k)
        if (a.w[k] != b.w[k]) return a.w[k] > b.w[k] ? 1 : -1;
    return 0;
}

inline bool mono_equal(const Monomial& a, const Monomial& b) {
    if (a.h != b.h) return false;
    for (std::uint32_t k = 0; k < a.nwords; ++k)
        if (a.w[k] != b.w[k]) return false;
    return true;
}

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial m;
    m.nwords = a.nwords;
    for (std::uint32_t k = 0; k < a.nwords; ++k) {
        std::uint64_t s = a.w[k] + b.w[k];
        if (((a.w[k] & b.w[k]) | ((a.w[k] | b.w[k]) & ~s)) & Monomial::kHighBits)
            throw std::overflow_error("Monomial: exponent overflow");
        m.w[k] = s;
    }
    m.h = a.h + b.h;
    return m;
}

inline bool mono_divides(const Monomial& d, const Monomial& m) {
    for (std::uint32_t k = 0; k < d.nwords; ++k) {
        std::uint64_t dw = d.w[k];
        if (!dw) continue;
        std::uint64_t mw = m.w[k];
        for (unsigned s = 0; s < 64; s += 8)
            if (((dw >> s) & 0xffu) > ((mw >> s) & 0xffu)) return false;
    }
    return true;
}

// requires mono_divides(d, m)
inline Monomial mono_div(const Monomial& m, const Monomial& d) {
    Monomial q;
    q.nwords = m.nwords;
    for (std::uint32_t k = 0; k < m.nwords; ++k) q.w[k] = m.w[k] - d.w[k];
    q.h = m.h - d.h;
    return q;
}

namespace detail {

template <typename C>
struct CoeffOps;

template <>
struct CoeffOps<BigInt> {
    static bool is_zero(const BigInt& c) { return sgn(c) == 0; }
    static BigInt exact_div(const BigInt& a, const BigInt& b) {
        if (sgn(b) == 0) throw std::domain_error("coefficient division by zero");
        BigInt q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        if (sgn(r) != 0) throw NotExactDivision("coefficient division not exact");
        return q;
    }
    static std::string to_string(const BigInt& c) { return c.get_str(); }
    static bool is_negative(const BigInt& c) { return sgn(c) < 0; }
    static Rational to_rational(const BigInt& c) { return Rational(c); }
    static void add_mul(BigInt& acc, const BigInt& a, const BigInt& b) {
        mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    }
    static void sub_mul(BigInt& acc, const BigInt& a, const BigInt& b) {
        mpz_submul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    }
};

template <>
struct CoeffOps<Rational> {
    static bool is_zero(const Rational& c) { return c.is_zero(); }
    static Rational exact_div(const Rational& a, const Rational& b) { return a / b; }
    static std::string to_string(const Rational& c) { return c.to_string(); }
    static bool is_negative(const Rational& c) { return c.sign() < 0; }
    static Rational to_rational(const Rational& c) { return c; }
    static void add_mul(Rational& acc, const Rational& a, const Rational& b) { acc += a * b; }
    static void sub_mul(Rational& acc, const Rational& a, const Rational& b) { acc -= a * b; }
};

struct MonoHasher {
    std::size_t operator()(const Monomial& m) const { return static_cast<std::size_t>(m.h); }
};
struct MonoEq {
    bool operator()(const Monomial& a, const Monomial& b) const { return mono_equal(a, b); }
};

}  // namespace detail

template <typename C>
class BasicPolynomial {
public:
    using Coeff = C;
    using Term = std::pair<Monomial, C>;

    BasicPolynomial() : cat_(empty_catalog()) {}

    static BasicPolynomial constant(C value) {
        BasicPolynomial p;
        if (!detail::CoeffOps<C>::is_zero(value))
            p.terms_.emplace_back(Monomial::unit(0), std::move(value));
        return p;
    }

    static BasicPolynomial variable(CatalogPtr cat, std::size_t index) {
        if (index >= cat->size()) throw IndexOutOfRange("variable: index out of range");
        BasicPolynomial p;
        p.cat_ = std::move(cat);
        Monomial m = Monomial::unit(p.cat_->size());
        m.set_exp(index, 1);
        m.recompute_hash();
        p.terms_.emplace_back(m, C(1));
        return p;
    }

    static BasicPolynomial variable(const CatalogPtr& cat, const std::string& name) {
        auto idx = cat->index_of(name);
        if (!idx) throw IndexOutOfRange("variable: unknown name '" + name + "'");
        return variable(cat, *idx);
    }

    /// Single term c * monomial given by (index, exponent) pairs.
    static BasicPolynomial term(CatalogPtr cat, C coeff,
                                const std::vector<std::pair<std::size_t, int>>& powers) {
        BasicPolynomial p;
        p.cat_ = std::move(cat);
        if (detail::CoeffOps<C>::is_zero(coeff)) return p;
        Monomial m = Monomial::unit(p.cat_->size());
        for (auto [i, e] : powers) {
            if (i >= p.cat_->size()) throw IndexOutOfRange("term: index out of range");
            if (e < 0 || e > 255) throw std::out_of_range("term: exponent out of range");
            m.set_exp(i, e);
        }
        m.recompute_hash();
        p.terms_.emplace_back(m, std::move(coeff));
        return p;
    }

    /// Trusted constructor: terms must already be canonical over cat.
    static BasicPolynomial from_raw(CatalogPtr cat, std::vector<Term> terms) {
        BasicPolynomial p;
        p.cat_ = std::move(cat);
        p.terms_ = std::move(terms);
        return p;
    }

    const CatalogPtr& catalog() const { return cat_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    int degree() const {
        int d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
        return d;
    }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_unit());
    }

    /// Constant term (zero if absent).
    C constant_value() const {
        if (!terms_.empty() && terms_.back().first.is_unit()) return terms_.back().second;
        return C(0);
    }

    BasicPolynomial operator-() const {
        BasicPolynomial r = *this;
        for (auto& t : r.terms_) t.second = -t.second;
        return r;
    }

    friend BasicPolynomial operator+(const BasicPolynomial& a, const BasicPolynomial& b) {
        AlignedPair p(a, b);
        return combine(p.cat, *p.a, *p.b, false);
    }
    friend BasicPolynomial operator-(const BasicPolynomial& a, const BasicPolynomial& b) {
        AlignedPair p(a, b);
        return combine(p.cat, *p.a, *p.b, true);
    }
    BasicPolynomial& operator+=(const BasicPolynomial& o) { return *this = *this + o; }
    BasicPolynomial& operator-=(const BasicPolynomial& o) { return *this = *this - o; }
    BasicPolynomial& operator*=(const BasicPolynomial& o) { return *this = *this * o; }

    friend BasicPolynomial operator*(const BasicPolynomial& a, const BasicPolynomial& b) {
        AlignedPair p(a, b);
        BasicPolynomial out;
        out.cat_ = p.cat;
        if (p.a->terms_.empty() || p.b->terms_.empty()) return out;

        const auto& small = p.a->terms_.size() <= p.b->terms_.size() ? p.a->terms_ : p.b->terms_;
        const auto& large = p.a->terms_.size() <= p.b->terms_.size() ? p.b->terms_ : p.a->terms_;

        if (small.size() == 1) {
            // one-term factors translate the other factor; order is preserved
            out.terms_.reserve(large.size());
            for (const auto& [m, c] : large)
                out.terms_.emplace_back(mono_mul(m, small[0].first), c * small[0].second);
            return out;
        }

        std::unordered_map<Monomial, C, detail::MonoHasher, detail::MonoEq> acc;
        acc.reserve(large.size() * 2);
        for (const auto& [ms, cs] : small)
            for (const auto& [ml, cl] : large) {
                auto [it, inserted] = acc.try_emplace(mono_mul(ms, ml));
                detail::CoeffOps<C>::add_mul(it->second, cs, cl);
            }
        out.collect_sorted(std::move(acc));
        return out;
    }

    /// a*b - c*d in one accumulation pass; the elimination kernel of
    /// fraction-free Gaussian steps. Fast path requires one shared catalog.
    static BasicPolynomial fused_mul_sub(const BasicPolynomial& a, const BasicPolynomial& b,
                                         const BasicPolynomial& c, const BasicPolynomial& d) {
        if (!(a.cat_ == b.cat_ && a.cat_ == c.cat_ && a.cat_ == d.cat_)) return a * b - c * d;
        BasicPolynomial out;
        out.cat_ = a.cat_;
        std::size_t pairs = a.terms_.size() * b.terms_.size() + c.terms_.size() * d.terms_.size();
        if (pairs == 0) return out;
        std::unordered_map<Monomial, C, detail::MonoHasher, detail::MonoEq> acc;
        acc.reserve(std::min<std::size_t>(pairs, 1u << 20) * 2);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                auto [it, inserted] = acc.try_emplace(mono_mul(ma, mb));
                detail::CoeffOps<C>::add_mul(it->second, ca, cb);
            }
        for (const auto& [mc, cc] : c.terms_)
            for (const auto& [md, cd] : d.terms_) {
                auto [it, inserted] = acc.try_emplace(mono_mul(mc, md));
                detail::CoeffOps<C>::sub_mul(it->second, cc, cd);
            }
        out.collect_sorted(std::move(acc));
        return out;
    }

    friend bool operator==(const BasicPolynomial& a, const BasicPolynomial& b) {
        AlignedPair p(a, b);
        const auto& ta = p.a->terms_;
        const auto& tb = p.b->terms_;
        if (ta.size() != tb.size()) return false;
        for (std::size_t i = 0; i < ta.size(); ++i)
            if (!mono_equal(ta[i].first, tb[i].first) || !(ta[i].second == tb[i].second))
                return false;
        return true;
    }

    /// Exact division; throws NotExactDivision when the divisor does not
    /// divide. Quotient terms are discovered in descending order through
    /// a heap merging the pending quotient x divisor products; live heap
    /// monomials sit in a recycled slot pool.
    static BasicPolynomial divide_exact(const BasicPolynomial& f, const BasicPolynomial& g) {
        if (g.is_zero()) throw std::domain_error("exact_div: division by zero polynomial");
        AlignedPair ap(f, g);
        BasicPolynomial out;
        out.cat_ = ap.cat;
        if (ap.a->terms_.empty()) return out;

        const auto& fv = ap.a->terms_;
        const auto& gv = ap.b->terms_;
        auto& qv = out.terms_;

        std::vector<Monomial> pool;
        std::vector<std::uint32_t> freelist;
        auto alloc = [&](const Monomial& m) -> std::uint32_t {
            if (!freelist.empty()) {
                std::uint32_t s = freelist.back();
                freelist.pop_back();
                pool[s] = m;
                return s;
            }
            pool.push_back(m);
            return static_cast<std::uint32_t>(pool.size() - 1);
        };

        struct Node {
            std::uint32_t slot, qi, gi;
        };
        auto node_less = [&pool](const Node& x, const Node& y) {
            return mono_cmp(pool[x.slot], pool[y.slot]) < 0;
        };
        std::priority_queue<Node, std::vector<Node>, decltype(node_less)> heap(node_less);

        std::size_t fi = 0;
        while (fi < fv.size() || !heap.empty()) {
            Monomial m;
            if (heap.empty() || (fi < fv.size() && mono_cmp(fv[fi].first, pool[heap.top().slot]) >= 0))
                m = fv[fi].first;
            else
                m = pool[heap.top().slot];

            C coeff(0);
            if (fi < fv.size() && mono_equal(fv[fi].first, m)) {
                coeff += fv[fi].second;
                ++fi;
            }
            while (!heap.empty() && mono_equal(pool[heap.top().slot], m)) {
                Node n = heap.top();
                heap.pop();
                detail::CoeffOps<C>::sub_mul(coeff, qv[n.qi].second, gv[n.gi].second);
                if (n.gi + 1 < gv.size()) {
                    pool[n.slot] = mono_mul(qv[n.qi].first, gv[n.gi + 1].first);
                    heap.push(Node{n.slot, n.qi, n.gi + 1});
                } else {
                    freelist.push_back(n.slot);
                }
            }
            if (detail::CoeffOps<C>::is_zero(coeff)) continue;

            if (!mono_divides(gv[0].first, m))
                throw NotExactDivision("exact_div: leading monomial does not divide");
            Monomial qm = mono_div(m, gv[0].first);
            C qc = detail::CoeffOps<C>::exact_div(coeff, gv[0].second);
            qv.emplace_back(qm, std::move(qc));
            if (gv.size() > 1)
                heap.push(Node{alloc(mono_mul(qm, gv[1].first)),
                               static_cast<std::uint32_t>(qv.size() - 1), 1});
        }
        return out;
    }

    /// Evaluates at a rational point. Every variable occurring in the
    /// polynomial must be assigned, else MissingAssignment.
    Rational evaluate(const std::map<std::string, Rational>& point) const {
        std::vector<int> max_exp(cat_->size(), 0);
        for (const auto& [m, c] : terms_)
            for (std::size_t i = 0; i < cat_->size(); ++i)
                max_exp[i] = std::max(max_exp[i], m.exp(i));

        std::vector<std::vector<Rational>> powers(cat_->size());
        for (std::size_t i = 0; i < cat_->size(); ++i) {
            if (max_exp[i] == 0) continue;
            auto it = point.find(cat_->name(i));
            if (it == point.end())
                throw MissingAssignment("evaluate: no value for '" + cat_->name(i) + "'");
            powers[i].resize(static_cast<std::size_t>(max_exp[i]) + 1, Rational(1));
            for (int e = 1; e <= max_exp[i]; ++e)
                powers[i][static_cast<std::size_t>(e)] =
                    powers[i][static_cast<std::size_t>(e - 1)] * it->second;
        }

        Rational total(0);
        for (const auto& [m, c] : terms_) {
            Rational v = detail::CoeffOps<C>::to_rational(c);
            for (std::size_t i = 0; i < cat_->size(); ++i)
                if (int e = m.exp(i)) v *= powers[i][static_cast<std::size_t>(e)];
            total += v;
        }
        return total;
    }

    /// Coefficient of the monomial given by name -> exponent (variables
    /// omitted from the map have exponent 0).
    C coefficient(const std::map<std::string, int>& monomial) const {
        Monomial target = Monomial::unit(cat_->size());
        for (const auto& [name, e] : monomial) {
            auto idx = cat_->index_of(name);
            if (!idx) {
                if (e != 0) return C(0);
                continue;
            }
            if (e < 0 || e > 255) return C(0);
            target.set_exp(*idx, e);
        }
        target.recompute_hash();
        for (const auto& [m, c] : terms_)
            if (mono_equal(m, target)) return c;
        return C(0);
    }

    /// Canonical string: terms in descending monomial order,
    /// "c^4*g*k - c^4*j^2" style (exponent 1 and coefficient 1 omitted).
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            bool neg = detail::CoeffOps<C>::is_negative(c);
            std::string mag = detail::CoeffOps<C>::to_string(c);
            if (neg) mag = mag.substr(1);
            if (first) {
                if (neg) out += "-";
                first = false;
            } else {
                out += neg ? " - " : " + ";
            }
            std::string vars;
            for (std::size_t i = 0; i < cat_->size(); ++i) {
                int e = m.exp(i);
                if (!e) continue;
                if (!vars.empty()) vars += "*";
                vars += cat_->name(i);
                if (e > 1) vars += "^" + std::to_string(e);
            }
            if (vars.empty()) {
                out += mag;
            } else if (mag == "1") {
                out += vars;
            } else {
                out += mag + "*" + vars;
            }
        }
        return out;
    }

    /// Same terms over a catalog with new names (order unchanged). The
    /// zero polynomial moves to any catalog.
    BasicPolynomial with_catalog(const CatalogPtr& cat) const {
        BasicPolynomial p;
        if (terms_.empty()) {
            p.cat_ = cat;
            return p;
        }
        if (cat->size() != cat_->size())
            throw DimensionMismatch("with_catalog: size mismatch");
        p = *this;
        p.cat_ = cat;
        return p;
    }

    template <typename D>
    BasicPolynomial<D> convert() const {
        std::vector<typename BasicPolynomial<D>::Term> ts;
        ts.reserve(terms_.size());
        for (const auto& [m, c] : terms_) ts.emplace_back(m, D(c));
        return BasicPolynomial<D>::from_raw(cat_, std::move(ts));
    }

private:
    // Views of two polynomials over a common catalog; remaps lazily and
    // only the side that needs it.
    struct AlignedPair {
        CatalogPtr cat;
        const BasicPolynomial* a;
        const BasicPolynomial* b;
        std::optional<BasicPolynomial> sa, sb;

        AlignedPair(const BasicPolynomial& x, const BasicPolynomial& y) {
            if (x.cat_ == y.cat_ ||
                (x.cat_->size() == y.cat_->size() && *x.cat_ == *y.cat_)) {
                cat = x.cat_;
                a = &x;
                b = &y;
                return;
            }
            if (x.cat_->size() == 0) {
                cat = y.cat_;
                sa.emplace(x.remapped(cat));
                a = &*sa;
                b = &y;
                return;
            }
            std::vector<std::string> names = x.cat_->names();
            for (const auto& n : y.cat_->names())
                if (!x.cat_->index_of(n)) names.push_back(n);
            if (names.size() == x.cat_->size()) {
                cat = x.cat_;
                a = &x;
                sb.emplace(y.remapped(cat));
                b = &*sb;
                return;
            }
            cat = make_catalog(std::move(names));
            sa.emplace(x.remapped(cat));
            a = &*sa;
            sb.emplace(y.remapped(cat));
            b = &*sb;
        }
        AlignedPair(const AlignedPair&) = delete;
        AlignedPair& operator=(const AlignedPair&) = delete;
    };

    BasicPolynomial remapped(const CatalogPtr& cat) const {
        BasicPolynomial p;
        p.cat_ = cat;
        std::vector<std::size_t> where(cat_->size());
        for (std::size_t i = 0; i < cat_->size(); ++i) where[i] = *cat->index_of(cat_->name(i));
        p.terms_.reserve(terms_.size());
        for (const auto& [m, c] : terms_) {
            Monomial nm = Monomial::unit(cat->size());
            for (std::size_t i = 0; i < cat_->size(); ++i)
                if (int e = m.exp(i)) nm.set_exp(where[i], e);
            nm.recompute_hash();
            p.terms_.emplace_back(nm, c);
        }
        std::sort(p.terms_.begin(), p.terms_.end(),
                  [](const Term& s, const Term& t) { return mono_cmp(s.first, t.first) > 0; });
        return p;
    }

    void collect_sorted(std::unordered_map<Monomial, C, detail::MonoHasher, detail::MonoEq> acc) {
        terms_.reserve(acc.size());
        for (auto& [m, c] : acc)
            if (!detail::CoeffOps<C>::is_zero(c)) terms_.emplace_back(m, std::move(c));
        std::sort(terms_.begin(), terms_.end(),
                  [](const Term& s, const Term& t) { return mono_cmp(s.first, t.first) > 0; });
    }

    static BasicPolynomial combine(const CatalogPtr& cat, const BasicPolynomial& a,
                                   const BasicPolynomial& b, bool sub) {
        BasicPolynomial out;
        out.cat_ = cat;
        out.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            int c;
            if (i == a.terms_.size())
                c = -1;
            else if (j == b.terms_.size())
                c = 1;
            else
                c = mono_cmp(a.terms_[i].first, b.terms_[j].first);
            if (c > 0) {
                out.terms_.push_back(a.terms_[i++]);
            } else if (c < 0) {
                auto t = b.terms_[j++];
                if (sub) t.second = -t.second;
                out.terms_.push_back(std::move(t));
            } else {
                C v = sub ? C(a.terms_[i].second - b.terms_[j].second)
                          : C(a.terms_[i].second + b.terms_[j].second);
                if (!detail::CoeffOps<C>::is_zero(v))
                    out.terms_.emplace_back(a.terms_[i].first, std::move(v));
                ++i;
                ++j;
            }
        }
        return out;
    }

    CatalogPtr cat_;
    std::vector<Term> terms_;
};

using Polynomial = BasicPolynomial<BigInt>;
using RationalPolynomial = BasicPolynomial<Rational>;

template <typename C>
BasicPolynomial<C> exact_div(const BasicPolynomial<C>& f, const BasicPolynomial<C>& g) {
    return BasicPolynomial<C>::divide_exact(f, g);
}

template <typename C>
BasicPolynomial<C> pow(const BasicPolynomial<C>& p, int e) {
    BasicPolynomial<C> out = BasicPolynomial<C>::constant(C(1));
    for (int i = 0; i < e; ++i) out = out * p;
    return out;
}

inline RationalPolynomial widen(const Polynomial& p) { return p.template convert<Rational>(); }

/// Deterministic pseudo-random point: every catalog variable gets a
/// nonzero integer in [-bound, bound]. Same seed, same assignment.
inline std::map<std::string, Rational> random_specialization(const VarCatalog& cat,
                                                             std::uint64_t seed,
                                                             long bound = 1'000'000) {
    if (bound < 2) throw std::invalid_argument("random_specialization: bound must be >= 2");
    std::mt19937_64 eng(seed);
    std::map<std::string, Rational> point;
    for (std::size_t i = 0; i < cat.size(); ++i) {
        // engine output reduced mod 2*bound then shifted past zero;
        // avoids distribution classes so values are portable
        std::uint64_t raw = eng();
        long v = static_cast<long>(raw % (2 * static_cast<unsigned long>(bound))) - bound;
        if (v >= 0) ++v;
        point[cat.name(i)] = Rational(v);
    }
    return point;
}

}  // namespace quadfix
