#pragma once

// Per-partition verification report: the dimension, determinant and
// corank data together with the outcome of every consistency check the
// invocation requested. Checks compare the closed-form routes against
// the independent oracles (brute-force fixed space, symbolic
// determinant, randomized and exact rank, witness sandwich).

#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "quadfix/fixed_space.hpp"
#include "quadfix/partition.hpp"
#include "quadfix/quadric_props.hpp"

namespace quadfix {

enum class CheckStatus { pass, fail, skipped };

inline const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        default: return "skipped";
    }
}

struct CheckResult {
    CheckStatus status = CheckStatus::skipped;
    double ms = 0.0;
    std::string note;
};

struct Report {
    Partition partition;
    int n = 0;
    long long dim_s = 0;
    long long dim_q = 0;
    int degeneracy = 0;
    std::string det;
    std::vector<std::string> det_factors;
    int corank = 0;
    std::vector<std::pair<std::string, CheckResult>> checks;

    explicit Report(Partition p) : partition(std::move(p)) {}

    bool all_passed() const {
        for (const auto& [name, r] : checks)
            if (r.status == CheckStatus::fail) return false;
        return true;
    }

    const CheckResult* find_check(const std::string& name) const {
        for (const auto& [n_, r] : checks)
            if (n_ == name) return &r;
        return nullptr;
    }
};

struct VerifyOptions {
    int trials = 5;
    std::uint64_t seed = 0;
    long specialization_bound = 1'000'000;
    int symbolic_bound = 9;        // full symbolic determinant tier
    int brute_bound = 12;          // brute-force fixed-space oracle tier
    int exact_corank_bound = 8;    // exact fraction-field rank tier
    int equivariance_bound = 8;    // exp / conjugation symbolic products
    bool letters = false;          // use a,b,c,... variable names when <= 26
};

namespace detail {

// Entries of the generic element are 0 or +/- a single variable.
inline std::optional<std::pair<std::size_t, int>> single_variable(const Polynomial& p) {
    if (p.term_count() != 1) return std::nullopt;
    const auto& [m, c] = p.terms()[0];
    if (!(c == 1 || c == -1)) return std::nullopt;
    std::size_t idx = 0;
    int found = 0;
    for (std::size_t i = 0; i < p.catalog()->size(); ++i) {
        int e = m.exp(i);
        if (e == 1) {
            idx = i;
            ++found;
        } else if (e != 0) {
            return std::nullopt;
        }
    }
    if (found != 1) return std::nullopt;
    return std::make_pair(idx, sgn(c) > 0 ? 1 : -1);
}

inline std::vector<Polynomial> mat_vec(const RingMatrix<Polynomial>& m,
                                       const std::vector<Polynomial>& v) {
    std::vector<Polynomial> out(static_cast<std::size_t>(m.rows()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            if (m.at(i, j).is_zero() || v[static_cast<std::size_t>(j)].is_zero()) continue;
            out[static_cast<std::size_t>(i)] += m.at(i, j) * v[static_cast<std::size_t>(j)];
        }
    return out;
}

inline std::string format_probability(double p) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.3g", p);
    return buf;
}

}  // namespace detail

/// Runs every check for one partition and assembles the report.
inline Report run_verify(const Partition& lambda, const VerifyOptions& opt = {}) {
    Report report(lambda);
    const int n = lambda.n();
    report.n = n;
    report.dim_s = dim_S(lambda);
    report.dim_q = dim_Q(lambda);
    report.degeneracy = lambda.degeneracy();

    GenericFixedMatrix g = generic_element(lambda);
    if (opt.letters) g = with_letter_names(g);  // refuses past 26 variables
    const RingMatrix<Rational> nil = jordan_nilpotent(lambda);

    using Outcome = std::pair<CheckStatus, std::string>;
    auto run = [&](const std::string& name, auto&& fn) {
        auto t0 = std::chrono::steady_clock::now();
        CheckResult r;
        try {
            Outcome o = fn();
            r.status = o.first;
            r.note = o.second;
        } catch (const std::exception& e) {
            r.status = CheckStatus::fail;
            r.note = std::string("exception: ") + e.what();
        }
        r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                   .count();
        report.checks.emplace_back(name, std::move(r));
    };

    run("symbolic_membership", [&]() -> Outcome {
        bool ok = lie_residual(to_polynomial_matrix(nil), g.matrix).is_zero();
        return {ok ? CheckStatus::pass : CheckStatus::fail, ""};
    });

    std::optional<FixedSpaceBasis> brute;
    run("dimension_match", [&]() -> Outcome {
        if (n > opt.brute_bound) return {CheckStatus::skipped, "n > brute-force bound"};
        brute = brute_force_fixed_basis(lambda, opt.brute_bound);
        bool ok = brute->dim == g.variable_count() &&
                  static_cast<long long>(brute->dim) == report.dim_s;
        return {ok ? CheckStatus::pass : CheckStatus::fail,
                "brute=" + std::to_string(brute->dim) +
                    " vars=" + std::to_string(g.variable_count()) +
                    " formula=" + std::to_string(report.dim_s)};
    });

    run("span_equality", [&]() -> Outcome {
        if (n > opt.brute_bound) return {CheckStatus::skipped, "n > brute-force bound"};
        if (!brute) return {CheckStatus::fail, "brute-force basis unavailable"};
        // every brute basis matrix matches the 0 / +-variable pattern
        for (const auto& b : brute->basis) {
            std::vector<std::optional<Rational>> value(g.catalog->size());
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const Polynomial& e = g.matrix.at(i, j);
                    if (e.is_zero()) {
                        if (!b.at(i, j).is_zero()) return {CheckStatus::fail, "zero cell violated"};
                        continue;
                    }
                    auto sv = detail::single_variable(e);
                    if (!sv) return {CheckStatus::fail, "entry is not a signed variable"};
                    Rational want = sv->second > 0 ? b.at(i, j) : -b.at(i, j);
                    auto& slot = value[sv->first];
                    if (!slot)
                        slot = want;
                    else if (!(*slot == want))
                        return {CheckStatus::fail, "sign link violated"};
                }
        }
        // every coordinate matrix of the pattern solves the linear system
        for (std::size_t v = 0; v < g.catalog->size(); ++v) {
            RingMatrix<Rational> b(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    auto sv = detail::single_variable(g.matrix.at(i, j));
                    if (sv && sv->first == v) b.at(i, j) = Rational(sv->second);
                }
            if (!lie_residual(nil, b).is_zero())
                return {CheckStatus::fail, "coordinate matrix not fixed"};
        }
        return {CheckStatus::pass, ""};
    });

    run("det_formula_match", [&]() -> Outcome {
        if (n <= opt.symbolic_bound) {
            DetFactorization f = det_by_formula(g);
            Polynomial direct = det_direct(g, opt.symbolic_bound);
            for (const auto& p : f.factors) report.det_factors.push_back(p.to_string());
            report.det = direct.to_string();
            return {f.product == direct ? CheckStatus::pass : CheckStatus::fail, ""};
        }
        // beyond the symbolic tier: report the factored form and check
        // formula vs direct determinant at exact random points
        BoundedDetFactorization f =
            det_by_formula_bounded(g, opt.symbolic_bound, opt.seed, opt.trials);
        report.det_factors = f.factor_strings;
        report.det = f.product ? f.product->to_string()
                               : "(nonzero, unexpanded: n > symbolic bound)";
        RingMatrix<Polynomial> corner = upper_right_matrix(g);
        Partition mu = lambda.conjugate();
        for (int t = 0; t < opt.trials; ++t) {
            auto point = random_specialization(*g.catalog, opt.seed + static_cast<std::uint64_t>(t),
                                               opt.specialization_bound);
            Rational formula(1);
            for (int i = 0; i < mu.length(); ++i) {
                std::vector<int> idx;
                for (int s = 0; s < mu.part(i); ++s) idx.push_back(s);
                formula *= det(specialize(submatrix(corner, idx, idx), point));
            }
            if (!(formula == det(specialize(g.matrix, point))))
                return {CheckStatus::fail, "formula and direct determinant differ at a point"};
        }
        return {CheckStatus::pass,
                "symbolic tier skipped (n > bound); verified at " + std::to_string(opt.trials) +
                    " exact points"};
    });

    run("vanishing_criterion", [&]() -> Outcome {
        bool zero = formula_det_is_zero(g, opt.seed, opt.trials);
        bool ok = zero == (report.degeneracy > 0);
        return {ok ? CheckStatus::pass : CheckStatus::fail, zero ? "det = 0" : "det != 0"};
    });

    run("corank_match", [&]() -> Outcome {
        int randomized =
            corank_randomized(g, opt.trials, opt.seed, opt.specialization_bound);
        report.corank = randomized;
        std::string note = "false_pass_prob<=" + detail::format_probability(
            corank_false_pass_probability(n, opt.trials, opt.specialization_bound));
        if (n <= opt.exact_corank_bound) {
            int exact = corank_exact(g);
            report.corank = exact;
            bool ok = exact == report.degeneracy && randomized == exact;
            return {ok ? CheckStatus::pass : CheckStatus::fail, "exact confirmed; " + note};
        }
        return {randomized == report.degeneracy ? CheckStatus::pass : CheckStatus::fail, note};
    });

    run("null_witness", [&]() -> Outcome {
        auto basis = null_basis(g);
        if (static_cast<int>(basis.size()) != report.degeneracy)
            return {CheckStatus::fail, "expected " + std::to_string(report.degeneracy) +
                                           " vectors, got " + std::to_string(basis.size())};
        for (const auto& v : basis)
            for (const auto& entry : detail::mat_vec(g.matrix, v))
                if (!entry.is_zero()) return {CheckStatus::fail, "vector does not annihilate M"};
        if (!basis.empty()) {
            RingMatrix<Polynomial> stack(static_cast<int>(basis.size()), n);
            for (std::size_t i = 0; i < basis.size(); ++i)
                for (int j = 0; j < n; ++j)
                    stack.at(static_cast<int>(i), j) = basis[i][static_cast<std::size_t>(j)];
            if (exact_rank(stack) != static_cast<int>(basis.size()))
                return {CheckStatus::fail, "vectors not independent"};
        }
        return {CheckStatus::pass, ""};
    });

    run("minor_witness", [&]() -> Outcome {
        RankWitness w = witness_minor(g, opt.symbolic_bound, opt.trials, opt.seed);
        int target = n - report.degeneracy;
        bool ok = static_cast<int>(w.rows.size()) == target &&
                  static_cast<int>(w.cols.size()) == target;
        return {ok ? CheckStatus::pass : CheckStatus::fail,
                w.symbolic ? "verified symbolically" : "verified at an exact point"};
    });

    run("exp_equivalence", [&]() -> Outcome {
        if (n > opt.equivariance_bound) return {CheckStatus::skipped, "n > equivariance bound"};
        RingMatrix<RationalPolynomial> u = to_rational_polynomial_matrix(exp_nilpotent(nil));
        RingMatrix<RationalPolynomial> m = widen_matrix(g.matrix);
        bool ok = u * m * u.transpose() == m;
        return {ok ? CheckStatus::pass : CheckStatus::fail, ""};
    });

    run("conjugation_equivariance", [&]() -> Outcome {
        if (n > opt.equivariance_bound) return {CheckStatus::skipped, "n > equivariance bound"};
        RingMatrix<RationalPolynomial> m = widen_matrix(g.matrix);
        for (int t = 0; t < 5; ++t) {
            RingMatrix<Rational> s = random_invertible_matrix(
                n, opt.seed * 1000003ull + 17ull + static_cast<std::uint64_t>(t));
            ConjugationTransport tr = conjugation_transport(s, lambda);
            RingMatrix<RationalPolynomial> transported = tr.apply(m);
            if (!lie_residual(to_rational_polynomial_matrix(tr.n_prime), transported).is_zero())
                return {CheckStatus::fail, "residual nonzero for seeded S #" + std::to_string(t)};
        }
        return {CheckStatus::pass, ""};
    });

    return report;
}

inline nlohmann::ordered_json report_to_json(const Report& r, bool timings = false) {
    nlohmann::ordered_json j;
    j["partition"] = r.partition.parts();
    j["n"] = r.n;
    j["dim_S"] = r.dim_s;
    j["dim_Q"] = r.dim_q;
    j["degeneracy"] = r.degeneracy;
    j["det"] = r.det;
    j["det_factors"] = r.det_factors;
    j["corank"] = r.corank;
    nlohmann::ordered_json checks;
    for (const auto& [name, c] : r.checks) {
        nlohmann::ordered_json e;
        e["status"] = to_string(c.status);
        if (!c.note.empty()) e["note"] = c.note;
        if (timings) e["ms"] = c.ms;
        checks[name] = std::move(e);
    }
    j["checks"] = std::move(checks);
    return j;
}

inline Report report_from_json(const nlohmann::ordered_json& j) {
    Report r(Partition(j.at("partition").get<std::vector<int>>()));
    r.n = j.at("n").get<int>();
    r.dim_s = j.at("dim_S").get<long long>();
    r.dim_q = j.at("dim_Q").get<long long>();
    r.degeneracy = j.at("degeneracy").get<int>();
    r.det = j.at("det").get<std::string>();
    r.det_factors = j.at("det_factors").get<std::vector<std::string>>();
    r.corank = j.at("corank").get<int>();
    for (const auto& [name, e] : j.at("checks").items()) {
        CheckResult c;
        std::string s = e.at("status").get<std::string>();
        c.status = s == "pass" ? CheckStatus::pass
                               : (s == "fail" ? CheckStatus::fail : CheckStatus::skipped);
        if (e.contains("note")) c.note = e.at("note").get<std::string>();
        if (e.contains("ms")) c.ms = e.at("ms").get<double>();
        r.checks.emplace_back(name, std::move(c));
    }
    return r;
}

/// Equality of the JSON-visible content (timings excluded).
inline bool equivalent(const Report& a, const Report& b) {
    if (!(a.partition == b.partition) || a.n != b.n || a.dim_s != b.dim_s || a.dim_q != b.dim_q ||
        a.degeneracy != b.degeneracy || a.det != b.det || a.det_factors != b.det_factors ||
        a.corank != b.corank || a.checks.size() != b.checks.size())
        return false;
    for (std::size_t i = 0; i < a.checks.size(); ++i)
        if (a.checks[i].first != b.checks[i].first ||
            a.checks[i].second.status != b.checks[i].second.status ||
            a.checks[i].second.note != b.checks[i].second.note)
            return false;
    return true;
}

inline std::string report_to_text(const Report& r, bool timings = false, bool color = false) {
    auto paint = [color](CheckStatus s) -> std::string {
        std::string word = to_string(s);
        if (!color) return word;
        if (s == CheckStatus::pass) return "\033[32m" + word + "\033[0m";
        if (s == CheckStatus::fail) return "\033[31m" + word + "\033[0m";
        return "\033[33m" + word + "\033[0m";
    };
    std::string out;
    out += "partition: " + r.partition.to_string() + "\n";
    out += "n: " + std::to_string(r.n) + "\n";
    out += "dim_S: " + std::to_string(r.dim_s) + "\n";
    out += "dim_Q: " + std::to_string(r.dim_q) + "\n";
    out += "degeneracy: " + std::to_string(r.degeneracy) + "\n";
    out += "det: " + r.det + "\n";
    for (std::size_t i = 0; i < r.det_factors.size(); ++i)
        out += "det_factor[" + std::to_string(i + 1) + "]: " + r.det_factors[i] + "\n";
    out += "corank: " + std::to_string(r.corank) + "\n";
    out += "checks:\n";
    for (const auto& [name, c] : r.checks) {
        out += "  " + name + std::string(name.size() < 28 ? 28 - name.size() : 1, ' ') +
               paint(c.status);
        if (timings) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "  %.1fms", c.ms);
            out += buf;
        }
        if (!c.note.empty()) out += "  [" + c.note + "]";
        out += "\n";
    }
    return out;
}

struct SweepResult {
    int n = 0;
    std::uint64_t seed = 0;
    std::vector<Report> reports;  // enumeration order (lexicographically decreasing)

    bool all_passed() const {
        for (const auto& r : reports)
            if (!r.all_passed()) return false;
        return true;
    }
};

/// Verifies every partition of n; workers are pure, results are merged
/// in enumeration order regardless of completion order.
inline SweepResult run_sweep(int n, const VerifyOptions& opt = {}, int parallel = 1) {
    SweepResult out;
    out.n = n;
    out.seed = opt.seed;
    std::vector<Partition> parts = enumerate_partitions(n);
    std::vector<std::optional<Report>> slots(parts.size());
    if (parallel < 1) parallel = 1;
    parallel = std::min<int>(parallel, static_cast<int>(parts.size()));
    if (parallel == 1) {
        for (std::size_t i = 0; i < parts.size(); ++i) slots[i] = run_verify(parts[i], opt);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < parallel; ++w)
            pool.emplace_back([&]() {
                while (true) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= parts.size()) return;
                    slots[i] = run_verify(parts[i], opt);
                }
            });
        for (auto& th : pool) th.join();
    }
    for (auto& s : slots) out.reports.push_back(std::move(*s));
    return out;
}

inline nlohmann::ordered_json sweep_to_json(const SweepResult& s, int trials, bool timings = false) {
    nlohmann::ordered_json j;
    j["command"] = "sweep";
    j["n"] = s.n;
    j["seed"] = s.seed;
    j["trials"] = trials;
    j["partition_count"] = s.reports.size();
    j["all_passed"] = s.all_passed();
    nlohmann::ordered_json reports = nlohmann::ordered_json::array();
    for (const auto& r : s.reports) reports.push_back(report_to_json(r, timings));
    j["reports"] = std::move(reports);
    return j;
}

inline std::string sweep_to_text(const SweepResult& s, bool timings = false, bool color = false) {
    std::string out = "sweep n=" + std::to_string(s.n) + " seed=" + std::to_string(s.seed) +
                      " partitions=" + std::to_string(s.reports.size()) + "\n";
    for (const auto& r : s.reports) {
        int fails = 0, skips = 0;
        for (const auto& [name, c] : r.checks) {
            if (c.status == CheckStatus::fail) ++fails;
            if (c.status == CheckStatus::skipped) ++skips;
        }
        std::string tag = r.partition.to_string();
        out += "  " + tag + std::string(tag.size() < 24 ? 24 - tag.size() : 1, ' ');
        out += "dim_S=" + std::to_string(r.dim_s) + " degeneracy=" + std::to_string(r.degeneracy) +
               " corank=" + std::to_string(r.corank);
        if (fails == 0)
            out += skips == 0 ? "  all checks pass" : "  pass (" + std::to_string(skips) + " skipped)";
        else
            out += "  " + std::to_string(fails) + " FAILED";
        out += "\n";
        if (fails > 0) out += report_to_text(r, timings, color);
    }
    out += s.all_passed() ? "all passed\n" : "FAILURES present\n";
    return out;
}

}  // namespace quadfix
