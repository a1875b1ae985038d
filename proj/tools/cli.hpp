#pragma once

// Command-line front end. `run` takes argv-style arguments and explicit
// streams so the whole surface can be driven from tests.
//
// Exit codes: 0 success / verification passed, 1 verification failed,
// 2 usage or range error.

#include "markoff_kfib/markoff_kfib.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <array>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace markoff_kfib::cli {

using Json = nlohmann::ordered_json;

struct RunConfig {
    unsigned k = 2;
    std::optional<Index> n;
    std::optional<Index> upto;
    std::vector<Index> indices;
    std::string values;
    std::string m;
    std::string root;
    std::optional<Index> c_max;
    std::optional<unsigned> depth;
    std::string max_z;
    Index cap = kDefaultFamilyCap;
    bool minimal_only = false;
    bool nonminimal_only = false;
    std::string format;
    std::string suite;
    std::optional<double> budget;
    std::optional<unsigned> jobs;
    bool k_set = false;
};

inline std::vector<BigInt> parse_value_list(const std::string& text) {
    std::vector<BigInt> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_bigint(item));
    require(out.size() == 3, "expected three comma-separated integers");
    return out;
}

inline IndexTriple parse_indices(const std::vector<Index>& v) {
    require(v.size() == 3, "expected three comma-separated indices a,b,c");
    std::array<Index, 3> s{v[0], v[1], v[2]};
    std::sort(s.begin(), s.end());
    return IndexTriple(s[0], s[1], s[2]);
}

/// r rounded toward -infinity to `digits` decimal places.
inline std::string decimal_string(const Rational& r, unsigned digits) {
    const BigInt scale = pow_int(10, digits);
    const BigInt scaled = floor_div(boost::multiprecision::numerator(r) * scale, boost::multiprecision::denominator(r));
    const bool negative = scaled.sign() < 0;
    std::string body = (negative ? BigInt(-scaled) : scaled).str();
    if (body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
    body.insert(body.size() - digits, ".");
    return negative ? "-" + body : body;
}

inline Json bound_json(const RealBound& b) {
    // Decimal rendering for humans; the exact rationals ride along.
    auto dec = [](const Rational& r) { return decimal_string(r, 15); };
    return {{"lo", dec(b.lo)}, {"hi", dec(b.hi)}, {"lo_exact", to_string(b.lo)}, {"hi_exact", to_string(b.hi)}};
}

inline Json triple_values_json(const ValueTriple& t) { return triple_json(t); }

inline int cmd_fib(const RunConfig& cfg, std::ostream& out) {
    const KParam k(cfg.k);
    const bool json = cfg.format == "json";
    auto emit = [&](Index n) {
        if (json) out << Json{{"k", cfg.k}, {"n", n}, {"value", kfib(k, n).str()}}.dump() << "\n";
        else out << n << " " << kfib(k, n) << "\n";
    };
    if (cfg.n) {
        emit(*cfg.n);
    } else {
        for (Index n = 0; n <= *cfg.upto; ++n) emit(n);
    }
    return 0;
}

inline int cmd_m(const RunConfig& cfg, std::ostream& out) {
    Json j;
    if (!cfg.indices.empty()) {
        const KParam k(cfg.k);
        const IndexTriple t = parse_indices(cfg.indices);
        const ValueTriple v(kfib(k, t.a), kfib(k, t.b), kfib(k, t.c));
        j["k"] = cfg.k;
        j["indices"] = {t.a, t.b, t.c};
        j["values"] = triple_values_json(v);
        j["m"] = m_of(v).str();
        j["minimal"] = is_minimal(v);
    } else {
        const auto xs = parse_value_list(cfg.values);
        const ValueTriple v(xs[0], xs[1], xs[2]);
        j["values"] = triple_values_json(v);
        j["m"] = m_of(v).str();
        j["minimal"] = is_minimal(v);
    }
    if (cfg.format == "json") out << j.dump() << "\n";
    else out << "m=" << j["m"].get<std::string>() << " minimal=" << (j["minimal"].get<bool>() ? "true" : "false") << "\n";
    return 0;
}

inline int cmd_classify(const RunConfig& cfg, std::ostream& out) {
    const KParam k(cfg.k);
    const IndexTriple t = parse_indices(cfg.indices);
    const MValue m = m_k_indices(k, t);
    const auto verdict = predict_region(k, t);
    const ValueTriple v(kfib(k, t.a), kfib(k, t.b), kfib(k, t.c));
    Json j;
    j["k"] = cfg.k;
    j["indices"] = {t.a, t.b, t.c};
    j["m"] = m.str();
    j["sign"] = m.sign();
    j["predicted_region"] = region_name(verdict.predicted);
    j["rule"] = verdict.rule;
    j["minimal"] = is_minimal(v);
    out << j.dump() << "\n";
    return 0;
}

inline void emit_solutions(const std::vector<Solution>& sols, const std::string& format, std::ostream& out) {
    if (format == "csv") {
        out << kCsvHeader << "\n";
        for (const auto& s : sols) out << to_csv_row(s) << "\n";
    } else if (format == "text") {
        for (const auto& s : sols)
            out << "k=" << s.k.value() << " " << s.idx.str() << " " << s.values.str() << " m=" << s.m
                << (s.minimal ? " minimal" : " non-minimal") << "\n";
    } else {
        for (const auto& s : sols) out << to_json(s).dump() << "\n";
    }
}

inline int cmd_enumerate(const RunConfig& cfg, std::ostream& out) {
    require(!(cfg.minimal_only && cfg.nonminimal_only), "--minimal-only and --nonminimal-only are exclusive");
    auto sols = enumerate_solutions(KParam(cfg.k), *cfg.c_max, resolve_jobs(cfg.jobs));
    std::erase_if(sols, [&](const Solution& s) {
        return (cfg.minimal_only && !s.minimal) || (cfg.nonminimal_only && s.minimal);
    });
    emit_solutions(sols, cfg.format.empty() ? "json" : cfg.format, out);
    return 0;
}

inline int cmd_solve(const RunConfig& cfg, std::ostream& out) {
    const auto r = find_triples_for_m(KParam(cfg.k), parse_bigint(cfg.m), cfg.cap);
    const std::string format = cfg.format.empty() ? "json" : cfg.format;
    emit_solutions(r.solutions, format, out);
    if (r.family) {
        if (format == "json") out << to_json(*r.family).dump() << "\n";
        else if (format == "text")
            out << "family " << r.family->form << " n>=" << r.family->n_min << " m=" << r.family->m << "\n";
    }
    return 0;
}

inline int cmd_tree(const RunConfig& cfg, std::ostream& out) {
    const auto xs = parse_value_list(cfg.root);
    const ValueTriple root(xs[0], xs[1], xs[2]);
    TreeLimit limit = cfg.depth ? TreeLimit(DepthLimit{*cfg.depth}) : TreeLimit(MaxZLimit{parse_bigint(cfg.max_z)});
    const auto tree = generate_tree(root, limit);
    if (cfg.format == "dot") out << tree_to_dot(tree);
    else if (cfg.format == "text") out << tree_to_text(tree);
    else out << tree_to_json(tree).dump(2) << "\n";
    return 0;
}

inline int cmd_census(const RunConfig& cfg, std::ostream& out) {
    const auto triples = minimal_triples_for_m(parse_bigint(cfg.m));
    for (const auto& t : triples) {
        if (cfg.format == "text") out << t.str() << "\n";
        else out << Json{{"m", cfg.m}, {"triple", triple_json(t)}}.dump() << "\n";
    }
    return 0;
}

inline int cmd_bounds(const RunConfig& cfg, std::ostream& out) {
    require(cfg.k >= 2, "bounds needs k >= 2");
    const KParam k(cfg.k);
    const Rational tol = default_tolerance();
    Json j;
    j["k"] = cfg.k;
    j["alpha"] = bound_json(enclose(BoundExpr::alpha(k), tol));
    j["D"] = bound_json(enclose(BoundExpr::disc_root(k), tol));
    j["L"] = bound_json(lk(k, tol).value);
    j["alpha_inv2"] = bound_json(enclose(pow(BoundExpr::alpha(k), -2), tol));
    j["L_gt_alpha_inv2"] = check_lk_gt_alpha_inv2(k);
    if (cfg.k == 3) {
        const auto printed = enclose(l3_as_printed_expr(), tol);
        j["L3_readings"] = {
            {"alpha3_D3", bound_json(lk(k, tol).value)},
            {"as_printed_alpha2", bound_json(printed)},
            {"as_printed_alpha2_gt_alpha_inv2", certified_less(pow(BoundExpr::alpha(k), -2), l3_as_printed_expr())},
        };
    }
    out << j.dump(2) << "\n";
    return 0;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    verify::SuiteOptions opts;
    opts.k = cfg.k_set ? std::optional<unsigned>(cfg.k) : std::nullopt;
    opts.c_max = cfg.c_max;
    opts.budget = cfg.budget;
    opts.jobs = resolve_jobs(cfg.jobs);
    const auto results = verify::run_suite(cfg.suite, opts);
    bool ok = true;
    Json failures = Json::array();
    for (const auto& r : results) {
        if (!r.passed) {
            ok = false;
            failures.push_back(verify::to_json(r));
        }
    }
    if (ok) {
        for (const auto& r : results) {
            out << (r.skipped ? "SKIP " : "PASS ") << r.name << "\n";
        }
    } else {
        out << Json{{"suite", cfg.suite}, {"status", "fail"}, {"failures", failures}}.dump(2) << "\n";
    }
    return ok ? 0 : 1;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Markoff m-triples with k-Fibonacci components", "markoff-kfib"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_k = [&](CLI::App* sub, bool required) {
        auto* opt = sub->add_option("--k", cfg.k, "sequence parameter k")->check(CLI::PositiveNumber);
        if (required) opt->required();
        return opt;
    };
    auto add_jobs = [&](CLI::App* sub) {
        sub->add_option("--jobs", cfg.jobs, "worker threads (default: $MARKOFF_JOBS or hardware)")
            ->check(CLI::PositiveNumber);
    };

    auto* fib = app.add_subcommand("fib", "print F_k terms");
    add_k(fib, true);
    auto* fib_n = fib->add_option("--n", cfg.n, "single index");
    auto* fib_upto = fib->add_option("--upto", cfg.upto, "print F_k(0..N)");
    fib_n->excludes(fib_upto);
    fib->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json"}));

    auto* m = app.add_subcommand("m", "m-value and minimality of a triple");
    add_k(m, false);
    auto* m_idx = m->add_option("--indices", cfg.indices, "a,b,c")->delimiter(',')->expected(3);
    auto* m_val = m->add_option("--values", cfg.values, "x,y,z");
    m_idx->excludes(m_val);
    m->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json"}));

    auto* classify = app.add_subcommand("classify", "sign-rule prediction for an index triple");
    add_k(classify, true);
    classify->add_option("--indices", cfg.indices, "a,b,c")->delimiter(',')->expected(3)->required();

    auto* enumerate = app.add_subcommand("enumerate", "all solutions with c <= C");
    add_k(enumerate, true);
    enumerate->add_option("--cmax", cfg.c_max, "largest third index")->required()->check(CLI::PositiveNumber);
    enumerate->add_flag("--minimal-only", cfg.minimal_only);
    enumerate->add_flag("--nonminimal-only", cfg.nonminimal_only);
    enumerate->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json", "csv"}));
    add_jobs(enumerate);

    auto* solve = app.add_subcommand("solve", "every solution with a given m");
    add_k(solve, true);
    solve->add_option("--m", cfg.m, "target m")->required();
    solve->add_option("--cap", cfg.cap, "materialize family members with c <= cap")->check(CLI::PositiveNumber);
    solve->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json", "csv"}));

    auto* tree = app.add_subcommand("tree", "Markoff tree below a minimal root");
    tree->add_option("--root", cfg.root, "x,y,z")->required();
    auto* t_depth = tree->add_option("--depth", cfg.depth, "levels below the root");
    auto* t_maxz = tree->add_option("--max-z", cfg.max_z, "keep nodes with z <= B");
    t_depth->excludes(t_maxz);
    tree->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json", "dot"}));

    auto* census = app.add_subcommand("census", "minimal value triples for m");
    census->add_option("--m", cfg.m, "target m")->required();
    census->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json"}));

    auto* bounds_cmd = app.add_subcommand("bounds", "L_k, alpha_k, D_k and the L_k > alpha_k^-2 verdict");
    add_k(bounds_cmd, true);

    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    verify_cmd->add_option("--suite", cfg.suite)
        ->required()
        ->check(CLI::IsMember({"identities", "theorem1", "theorem2", "bounds", "oracle", "all"}));
    auto* v_k = add_k(verify_cmd, false);
    verify_cmd->add_option("--cmax", cfg.c_max)->check(CLI::PositiveNumber);
    verify_cmd->add_option("--budget", cfg.budget, "seconds allowed for oracle runs")->check(CLI::PositiveNumber);
    add_jobs(verify_cmd);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }
    cfg.k_set = v_k->count() > 0;

    try {
        if (fib->parsed()) {
            if (!cfg.n && !cfg.upto) throw PreconditionError("fib needs --n or --upto");
            return cmd_fib(cfg, out);
        }
        if (m->parsed()) {
            if (cfg.indices.empty() == cfg.values.empty()) throw PreconditionError("m needs --indices or --values");
            return cmd_m(cfg, out);
        }
        if (classify->parsed()) return cmd_classify(cfg, out);
        if (enumerate->parsed()) return cmd_enumerate(cfg, out);
        if (solve->parsed()) return cmd_solve(cfg, out);
        if (tree->parsed()) {
            if (!cfg.depth && cfg.max_z.empty()) throw PreconditionError("tree needs --depth or --max-z");
            return cmd_tree(cfg, out);
        }
        if (census->parsed()) return cmd_census(cfg, out);
        if (bounds_cmd->parsed()) return cmd_bounds(cfg, out);
        if (verify_cmd->parsed()) return cmd_verify(cfg, out);
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace markoff_kfib::cli
