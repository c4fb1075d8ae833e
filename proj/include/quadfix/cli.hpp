#pragma once

// Command-line interface. All subcommands are exposed through run_cli so
// tests can drive the tool in-process; tools/main.cpp is a thin wrapper.
// Exit codes: 0 success / all requested checks pass, 1 failing checks or
// computation errors, 2 usage errors.

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "quadfix/fixed_space.hpp"
#include "quadfix/partition.hpp"
#include "quadfix/quadric_props.hpp"
#include "quadfix/render.hpp"
#include "quadfix/report.hpp"

namespace quadfix {

namespace cli_detail {

struct CliOptions {
    std::string format = "text";
    bool letters = false;
    std::uint64_t seed = 0;
    int trials = 5;
    int symbolic_bound = 9;
    int parallel = 1;
    bool timings = false;
};

inline VerifyOptions verify_options(const CliOptions& o) {
    VerifyOptions v;
    v.trials = o.trials;
    v.seed = o.seed;
    v.symbolic_bound = o.symbolic_bound;
    v.letters = o.letters;
    return v;
}

inline std::vector<int> one_based(const std::vector<int>& idx) {
    std::vector<int> out;
    out.reserve(idx.size());
    for (int i : idx) out.push_back(i + 1);
    return out;
}

inline std::string kv_text(const std::vector<std::pair<std::string, std::string>>& kv) {
    std::string out;
    for (const auto& [k, v] : kv) out += k + ": " + v + "\n";
    return out;
}

inline std::string kv_latex(const std::vector<std::pair<std::string, std::string>>& kv) {
    std::string out = "\\begin{tabular}{ll}\n";
    for (const auto& [k, v] : kv)
        out += detail::latex_escape(k) + " & " + detail::latex_escape(v) + " \\\\\n";
    out += "\\end{tabular}\n";
    return out;
}

inline std::string join_ints(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s;
}

inline GenericFixedMatrix make_generic(const Partition& lambda, bool letters) {
    GenericFixedMatrix g = generic_element(lambda);
    if (letters) g = with_letter_names(g);  // throws TooManyVariables past 26
    return g;
}

}  // namespace cli_detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using cli_detail::CliOptions;
    CLI::App app{"exact computations in the space of symmetric matrices fixed by a unipotent "
                 "operator of given Jordan type"};
    app.name("quadfix");
    app.fallthrough(true);

    CliOptions opt;
    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"text", "json", "latex"}))
        ->capture_default_str();
    app.add_flag("--letters", opt.letters, "name variables a,b,c,... (at most 26)");
    app.add_option("--seed", opt.seed, "seed for randomized checks")->capture_default_str();
    app.add_option("--trials", opt.trials, "random specializations per randomized check")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--symbolic-bound", opt.symbolic_bound,
                   "largest n for full symbolic determinants")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--parallel", opt.parallel, "worker threads for sweep")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_flag("--timings", opt.timings, "include check timings in the output");

    std::string partition_arg;
    bool show_corner = false, show_restricted = false;
    int sweep_n = 0;

    CLI::App* cmd_generic =
        app.add_subcommand("generic", "print the generic element M of the fixed space");
    cmd_generic->add_option("partition", partition_arg, "partition, e.g. 2,2,1,1 or 2^2,1^2")
        ->required();
    cmd_generic->add_flag("--corner", show_corner, "also print the corner matrix P");
    cmd_generic->add_flag("--restricted", show_restricted, "also print M' and M''");

    CLI::App* cmd_dim = app.add_subcommand("dim", "dimension of the fixed space");
    cmd_dim->add_option("partition", partition_arg)->required();
    CLI::App* cmd_det = app.add_subcommand("det", "determinant of M, factored and expanded");
    cmd_det->add_option("partition", partition_arg)->required();
    CLI::App* cmd_rank = app.add_subcommand("rank", "generic rank and corank of M");
    cmd_rank->add_option("partition", partition_arg)->required();
    CLI::App* cmd_nullspace = app.add_subcommand("nullspace", "symbolic null-space witnesses");
    cmd_nullspace->add_option("partition", partition_arg)->required();
    CLI::App* cmd_minor = app.add_subcommand("minor", "verified nonzero minor of maximal size");
    cmd_minor->add_option("partition", partition_arg)->required();
    CLI::App* cmd_verify = app.add_subcommand("verify", "run every check for one partition");
    cmd_verify->add_option("partition", partition_arg)->required();
    CLI::App* cmd_sweep = app.add_subcommand("sweep", "verify all partitions of n");
    cmd_sweep->add_option("--n", sweep_n, "sweep every partition of this n")->required();

    app.require_subcommand(1);

    std::vector<const char*> argv;
    argv.push_back("quadfix");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    const bool color = (&out == &std::cout) && isatty(fileno(stdout)) != 0 &&
                       std::getenv("NO_COLOR") == nullptr;
    const bool json_mode = opt.format == "json";
    const bool latex_mode = opt.format == "latex";
    auto emit_json = [&](const nlohmann::ordered_json& j) { out << j.dump(2) << "\n"; };
    auto emit_kv = [&](const std::vector<std::pair<std::string, std::string>>& kv) {
        out << (latex_mode ? cli_detail::kv_latex(kv) : cli_detail::kv_text(kv));
    };

    try {
        if (app.got_subcommand(cmd_generic)) {
            Partition lambda = Partition::parse(partition_arg);
            GenericFixedMatrix g = cli_detail::make_generic(lambda, opt.letters);
            BlockGrid grid = lambda.block_grid();
            if (json_mode) {
                nlohmann::ordered_json j;
                j["partition"] = lambda.parts();
                j["n"] = lambda.n();
                j["variables"] = g.catalog->names();
                j["matrix"] = matrix_json(g.matrix);
                if (show_corner) j["corner"] = matrix_json(upper_right_matrix(g));
                if (show_restricted) {
                    RestrictedMatrices rm = restricted_matrices(g);
                    j["m_prime"] = matrix_json(rm.m_prime);
                    j["m_double_prime"] = matrix_json(rm.m_double_prime);
                    j["selected_cols"] = cli_detail::one_based(rm.selected_cols);
                    j["selected_rows"] = cli_detail::one_based(rm.selected_rows);
                }
                emit_json(j);
            } else {
                auto render = [&](const RingMatrix<Polynomial>& m, const BlockGrid* gr) {
                    return latex_mode ? matrix_latex(m, gr) : matrix_text(m, gr);
                };
                if (!latex_mode)
                    out << "generic element M for " << lambda.to_string() << ", "
                        << g.variable_count() << " variables\n";
                out << render(g.matrix, &grid);
                if (show_corner) {
                    out << (latex_mode ? "% corner matrix P\n" : "\ncorner matrix P:\n");
                    out << render(upper_right_matrix(g), nullptr);
                }
                if (show_restricted) {
                    RestrictedMatrices rm = restricted_matrices(g);
                    out << (latex_mode ? "% M' (selected columns "
                            : "\nM' (selected columns ")
                        << cli_detail::join_ints(cli_detail::one_based(rm.selected_cols))
                        << (latex_mode ? ")\n" : "):\n");
                    out << render(rm.m_prime, nullptr);
                    out << (latex_mode ? "% M'' (selected rows " : "\nM'' (selected rows ")
                        << cli_detail::join_ints(cli_detail::one_based(rm.selected_rows))
                        << (latex_mode ? ")\n" : "):\n");
                    out << render(rm.m_double_prime, nullptr);
                }
            }
            return 0;
        }

        if (app.got_subcommand(cmd_dim)) {
            Partition lambda = Partition::parse(partition_arg);
            if (json_mode) {
                nlohmann::ordered_json j;
                j["partition"] = lambda.parts();
                j["n"] = lambda.n();
                j["dim_S"] = dim_S(lambda);
                j["dim_Q"] = dim_Q(lambda);
                emit_json(j);
            } else {
                emit_kv({{"partition", lambda.to_string()},
                         {"n", std::to_string(lambda.n())},
                         {"dim_S", std::to_string(dim_S(lambda))},
                         {"dim_Q", std::to_string(dim_Q(lambda))}});
            }
            return 0;
        }

        if (app.got_subcommand(cmd_det)) {
            Partition lambda = Partition::parse(partition_arg);
            GenericFixedMatrix g = cli_detail::make_generic(lambda, opt.letters);
            Partition mu = lambda.conjugate();
            std::vector<std::string> factors;
            std::string value;
            if (lambda.n() <= opt.symbolic_bound) {
                DetFactorization f = det_by_formula(g);
                for (const auto& p : f.factors) factors.push_back(p.to_string());
                value = f.product.to_string();
            } else {
                BoundedDetFactorization f =
                    det_by_formula_bounded(g, opt.symbolic_bound, opt.seed, opt.trials);
                factors = f.factor_strings;
                value = f.product ? f.product->to_string()
                                  : "(nonzero, unexpanded: n > symbolic bound)";
            }
            if (json_mode) {
                nlohmann::ordered_json j;
                j["partition"] = lambda.parts();
                j["n"] = lambda.n();
                j["mu"] = mu.parts();
                j["det_factors"] = factors;
                j["det"] = value;
                emit_json(j);
            } else {
                std::vector<std::pair<std::string, std::string>> kv = {
                    {"partition", lambda.to_string()},
                    {"n", std::to_string(lambda.n())},
                    {"mu", mu.to_string()}};
                for (std::size_t i = 0; i < factors.size(); ++i)
                    kv.emplace_back("det_factor[" + std::to_string(i + 1) + "]", factors[i]);
                kv.emplace_back("det", value);
                emit_kv(kv);
            }
            return 0;
        }

        if (app.got_subcommand(cmd_rank)) {
            Partition lambda = Partition::parse(partition_arg);
            GenericFixedMatrix g = cli_detail::make_generic(lambda, opt.letters);
            int expected = corank_expected(lambda);
            int computed = corank_computed(g, opt.trials, opt.seed);
            bool exact = lambda.n() <= 8;
            double prob = corank_false_pass_probability(lambda.n(), opt.trials);
            if (json_mode) {
                nlohmann::ordered_json j;
                j["partition"] = lambda.parts();
                j["n"] = lambda.n();
                j["degeneracy"] = lambda.degeneracy();
                j["corank_expected"] = expected;
                j["corank_computed"] = computed;
                j["rank"] = lambda.n() - computed;
                j["exact_confirmed"] = exact;
                j["false_pass_prob"] = prob;
                emit_json(j);
            } else {
                emit_kv({{"partition", lambda.to_string()},
                         {"n", std::to_string(lambda.n())},
                         {"degeneracy", std::to_string(lambda.degeneracy())},
                         {"corank_expected", std::to_string(expected)},
                         {"corank_computed", std::to_string(computed)},
                         {"rank", std::to_string(lambda.n() - computed)},
                         {"exact_confirmed", exact ? "yes" : "no"},
                         {"false_pass_prob", detail::format_probability(prob)}});
            }
            return 0;
        }

        if (app.got_subcommand(cmd_nullspace)) {
            Partition lambda = Partition::parse(partition_arg);
            GenericFixedMatrix g = cli_detail::make_generic(lambda, opt.letters);
            RestrictedMatrices rm = restricted_matrices(g);
            auto basis = null_basis(g);
            if (json_mode) {
                nlohmann::ordered_json j;
                j["partition"] = lambda.parts();
                j["n"] = lambda.n();
                j["degeneracy"] = lambda.degeneracy();
                j["m_prime_shape"] = {rm.m_prime.rows(), rm.m_prime.cols()};
                j["m_double_prime_shape"] = {rm.m_double_prime.rows(), rm.m_double_prime.cols()};
                j["selected_cols"] = cli_detail::one_based(rm.selected_cols);
                j["selected_rows"] = cli_detail::one_based(rm.selected_rows);
                nlohmann::ordered_json vecs = nlohmann::ordered_json::array();
                for (const auto& v : basis) {
                    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
                    for (const auto& p : v) entries.push_back(p.to_string());
                    vecs.push_back(std::move(entries));
                }
                j["vectors"] = std::move(vecs);
                emit_json(j);
            } else {
                std::vector<std::pair<std::string, std::string>> kv = {
                    {"partition", lambda.to_string()},
                    {"n", std::to_string(lambda.n())},
                    {"degeneracy", std::to_string(lambda.degeneracy())},
                    {"M' shape", std::to_string(rm.m_prime.rows()) + "x" +
                                     std::to_string(rm.m_prime.cols())},
                    {"M'' shape", std::to_string(rm.m_double_prime.rows()) + "x" +
                                      std::to_string(rm.m_double_prime.cols())},
                    {"selected columns",
                     cli_detail::join_ints(cli_detail::one_based(rm.selected_cols))},
                    {"selected rows",
                     cli_detail::join_ints(cli_detail::one_based(rm.selected_rows))}};
                for (std::size_t i = 0; i < basis.size(); ++i) {
                    std::string entries;
                    for (std::size_t t = 0; t < basis[i].size(); ++t) {
                        if (t) entries += ", ";
                        entries += basis[i][t].to_string();
                    }
                    kv.emplace_back("null_vector[" + std::to_string(i + 1) + "]",
                                    "(" + entries + ")");
                }
                emit_kv(kv);
            }
            return 0;
        }

        if (app.got_subcommand(cmd_minor)) {
            Partition lambda = Partition::parse(partition_arg);
            GenericFixedMatrix g = cli_detail::make_generic(lambda, opt.letters);
            RankWitness w = witness_minor(g, opt.symbolic_bound, opt.trials, opt.seed);
            if (json_mode) {
                nlohmann::ordered_json j;
                j["partition"] = lambda.parts();
                j["n"] = lambda.n();
                j["size"] = w.rows.size();
                j["rows"] = cli_detail::one_based(w.rows);
                j["cols"] = cli_detail::one_based(w.cols);
                j["verified"] = w.symbolic ? "symbolic" : "specialization";
                if (w.minor_det)
                    j["minor_det"] = w.minor_det->to_string();
                else
                    j["minor_det"] = nullptr;
                emit_json(j);
            } else {
                emit_kv({{"partition", lambda.to_string()},
                         {"n", std::to_string(lambda.n())},
                         {"size", std::to_string(w.rows.size())},
                         {"rows", cli_detail::join_ints(cli_detail::one_based(w.rows))},
                         {"cols", cli_detail::join_ints(cli_detail::one_based(w.cols))},
                         {"verified", w.symbolic ? "symbolic" : "specialization"},
                         {"minor_det", w.minor_det
                                           ? w.minor_det->to_string()
                                           : "(not expanded: size > symbolic bound)"}});
            }
            return 0;
        }

        if (app.got_subcommand(cmd_verify)) {
            Partition lambda = Partition::parse(partition_arg);
            Report r = run_verify(lambda, cli_detail::verify_options(opt));
            if (json_mode)
                emit_json(report_to_json(r, opt.timings));
            else if (latex_mode)
                out << cli_detail::kv_latex({{"partition", lambda.to_string()},
                                             {"result", r.all_passed() ? "pass" : "fail"}});
            else
                out << report_to_text(r, opt.timings, color);
            return r.all_passed() ? 0 : 1;
        }

        if (app.got_subcommand(cmd_sweep)) {
            SweepResult s = run_sweep(sweep_n, cli_detail::verify_options(opt), opt.parallel);
            if (json_mode)
                emit_json(sweep_to_json(s, opt.trials, opt.timings));
            else if (latex_mode)
                out << cli_detail::kv_latex(
                    {{"sweep n", std::to_string(sweep_n)},
                     {"partitions", std::to_string(s.reports.size())},
                     {"result", s.all_passed() ? "pass" : "fail"}});
            else
                out << sweep_to_text(s, opt.timings, color);
            return s.all_passed() ? 0 : 1;
        }
    } catch (const TooManyVariables& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const BoundExceeded& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "error: no subcommand\n";
    return 2;
}

}  // namespace quadfix
