#include "rauzy/cli.hpp"

#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "rauzy/classes.hpp"
#include "rauzy/error.hpp"
#include "rauzy/induction.hpp"
#include "rauzy/invariants.hpp"
#include "rauzy/suspension.hpp"

namespace rauzy::cli {

namespace {

GenPerm irreducible_seed(const std::string& text) {
    GenPerm p = parse(text);
    if (!is_irreducible(p))
        throw Error(ErrorCode::ReducibleSeed, format(p) + " admits no suspension datum");
    return p;
}

Lengths parse_lengths(const std::string& text) {
    Lengths out;
    std::istringstream in(text);
    std::string item;
    while (in >> item)
        out.push_back(parse_rational(item));
    return out;
}

int cmd_induce(const Config& cfg, const std::string& perm, const std::string& moves, const std::string& lambda,
               std::size_t max_steps, std::ostream& out) {
    GenPerm p = irreducible_seed(perm);
    if (!lambda.empty()) {
        if (!moves.empty())
            throw Error(ErrorCode::Parse, "give either a move string or --lambda, not both");
        auto trace = orbit(p, parse_lengths(lambda), max_steps);
        for (const auto& r : trace.records)
            out << to_json(r).dump() << '\n';
        return 0;
    }
    for (std::size_t i = 0; i < moves.size(); ++i) {
        if (moves[i] != '0' && moves[i] != '1')
            throw Error(ErrorCode::Parse, "moves must be a string of 0 and 1");
        const Move mv = moves[i] == '0' ? Move::Zero : Move::One;
        auto next = apply_move(p, mv);
        if (!next)
            throw Error(ErrorCode::UndefinedMove,
                        std::string("move ") + moves[i] + " undefined at step " + std::to_string(i) + " on " + format(p));
        p = std::move(*next);
        if (cfg.output == OutputFormat::Json)
            out << nlohmann::json{{"step", i + 1}, {"move", std::string(1, moves[i])}, {"perm", format(p)}}.dump()
                << '\n';
        else
            out << format(p) << '\n';
    }
    return 0;
}

int cmd_invariants(const Config& cfg, const std::string& perm, std::ostream& out) {
    auto report = invariant_report(parse(perm), cfg.search());
    if (cfg.output == OutputFormat::Json) {
        out << to_json(report).dump() << '\n';
        return 0;
    }
    auto j = to_json(report);
    out << "stratum: " << j["stratum"].get<std::string>() << '\n'
        << "genus: " << report.genus << '\n'
        << "orders:";
    for (int k : j["orders"])
        out << ' ' << k;
    out << '\n'
        << "marked: " << report.marked << '\n'
        << "component: " << to_string(report.component) << '\n';
    return 0;
}

RauzyDiagram cached_class(const Config& cfg, const GenPerm& seed) {
    if (!cfg.cache_dir.empty())
        if (auto hit = load_class_cache(cfg.cache_dir, seed))
            return std::move(*hit);
    auto diag = rauzy_class(seed, cfg.search());
    if (!cfg.cache_dir.empty())
        save_class_cache(cfg.cache_dir, seed, diag);
    return diag;
}

int cmd_class(Config cfg, const std::string& perm, bool dot, bool json, bool count, std::ostream& out) {
    auto diag = cached_class(cfg, irreducible_seed(perm));
    if (count) {
        out << diag.size() << '\n';
        return 0;
    }
    if (dot)
        cfg.output = OutputFormat::Dot;
    if (json)
        cfg.output = OutputFormat::Json;
    switch (cfg.output) {
    case OutputFormat::Dot: out << export_dot(diag); break;
    case OutputFormat::Json: out << to_json(diag).dump() << '\n'; break;
    case OutputFormat::Text:
        for (const auto& v : diag.vertices)
            out << format(v) << '\n';
        break;
    }
    return 0;
}

int cmd_same_class(const Config& cfg, const std::string& a_text, const std::string& b_text, bool fast_only,
                   bool bfs_only, std::ostream& out, std::ostream& err) {
    const GenPerm a = irreducible_seed(a_text);
    const GenPerm b = irreducible_seed(b_text);
    std::optional<bool> fast, bfs;
    if (!bfs_only)
        fast = same_class_fast(a, b, cfg.search());
    if (!fast_only)
        bfs = same_class_bfs(a, b, cfg.search());
    const bool verdict = fast ? *fast : *bfs;
    if (cfg.output == OutputFormat::Json) {
        nlohmann::json j{{"same", verdict}};
        if (fast)
            j["fast"] = *fast;
        if (bfs)
            j["bfs"] = *bfs;
        out << j.dump() << '\n';
    } else {
        out << (verdict ? "true" : "false") << '\n';
    }
    if (fast && bfs && *fast != *bfs) {
        nlohmann::json bundle{{"p1", format(a)},
                              {"p2", format(b)},
                              {"fast", *fast},
                              {"bfs", *bfs},
                              {"p1_invariants", to_json(invariant_report(a, cfg.search()))},
                              {"p2_invariants", to_json(invariant_report(b, cfg.search()))}};
        err << "counterexample: " << bundle.dump() << '\n';
        return 1;
    }
    return 0;
}

int cmd_verify(const Config& cfg, std::size_t d, const std::string& kind, const std::string& stratum_text,
               std::ostream& out) {
    TheoremReport report;
    if (!stratum_text.empty())
        report = verify_stratum(parse_stratum(stratum_text), cfg.search());
    else if (d >= 2)
        report = verify_main_theorem(d, parse_kind(kind), cfg.search());
    else
        throw Error(ErrorCode::Parse, "verify needs --d N (N >= 2) or --stratum");
    if (cfg.output == OutputFormat::Json) {
        out << to_json(report).dump() << '\n';
    } else {
        out << "d=" << report.d << " kind=" << to_string(report.kind) << " permutations=" << report.permutations
            << " classes=" << report.classes << '\n';
        for (const auto& g : report.groups) {
            out << format(g.stratum) << ' ' << to_string(g.component) << " classes=" << g.marked.size()
                << " expected=" << g.expected << " marked=";
            for (std::size_t i = 0; i < g.marked.size(); ++i)
                out << (i ? "," : "") << g.marked[i];
            out << (g.pass ? " ok" : " FAIL") << '\n';
        }
        for (const auto& s : report.strata)
            if (s.components_found != s.components_expected)
                out << format(s.stratum) << " components=" << s.components_found
                    << " expected=" << s.components_expected << " FAIL\n";
        out << (report.pass ? "pass" : "fail") << '\n';
    }
    return report.pass ? 0 : 1;
}

int cmd_polygon(const std::string& perm, bool svg, std::ostream& out) {
    const GenPerm p = parse(perm);
    auto zeta = find_suspension(p);
    if (!zeta)
        throw Error(ErrorCode::ReducibleSeed, format(p) + " admits no suspension datum");
    auto poly = build_polygon(p, *zeta);
    if (svg)
        out << to_svg(poly);
    else
        out << nlohmann::json{{"perm", format(p)}, {"zeta", to_json(*zeta)}, {"polygon", to_json(poly)}}.dump()
            << '\n';
    return 0;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rauzy classes, suspensions and stratum components"};
    app.require_subcommand(1);
    Config cfg;
    app.add_option("--budget", cfg.node_budget, "maximum vertices per search")
        ->envname("RAUZY_BUDGET")
        ->check(CLI::PositiveNumber);
    app.add_option("--workers", cfg.workers, "worker threads")->envname("RAUZY_WORKERS")->check(CLI::PositiveNumber);
    app.add_option("--cache-dir", cfg.cache_dir, "directory for cached classes")->envname("RAUZY_CACHE_DIR");
    const std::map<std::string, OutputFormat> formats{
        {"text", OutputFormat::Text}, {"json", OutputFormat::Json}, {"dot", OutputFormat::Dot}};
    app.add_option("--output", cfg.output, "text, json or dot")
        ->envname("RAUZY_OUTPUT")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));

    std::string perm, perm2, moves, lambda, kind = "iet", stratum_text;
    std::size_t max_steps = 1000, d = 0;
    bool dot = false, json = false, count = false, fast = false, bfs = false, both = false, svg = false;

    auto* induce = app.add_subcommand("induce", "apply Rauzy moves, or run the induction on lengths");
    induce->add_option("perm", perm, "permutation, e.g. \"1 2 / 2 1\"")->required();
    induce->add_option("moves", moves, "string of 0 and 1");
    induce->add_option("--lambda", lambda, "interval lengths, e.g. \"3 2/5\"");
    induce->add_option("--max-steps", max_steps, "step limit for --lambda");

    auto* inv = app.add_subcommand("invariants", "stratum, genus, marked order and component");
    inv->add_option("perm", perm)->required();

    auto* cls = app.add_subcommand("class", "Rauzy class of a permutation");
    cls->add_option("perm", perm)->required();
    auto* f_dot = cls->add_flag("--dot", dot, "DOT graph");
    auto* f_json = cls->add_flag("--json", json, "JSON vertices and edges");
    auto* f_count = cls->add_flag("--count", count, "number of vertices");
    f_dot->excludes(f_json)->excludes(f_count);
    f_json->excludes(f_count);

    auto* same = app.add_subcommand("same-class", "decide whether two permutations share a Rauzy class");
    same->add_option("perm1", perm)->required();
    same->add_option("perm2", perm2)->required();
    auto* f_fast = same->add_flag("--fast", fast, "compare invariants only");
    auto* f_bfs = same->add_flag("--bfs", bfs, "search the class only");
    auto* f_both = same->add_flag("--both", both, "run both and compare (default)");
    f_fast->excludes(f_bfs)->excludes(f_both);
    f_bfs->excludes(f_both);

    auto* verify = app.add_subcommand("verify", "count Rauzy classes per stratum component");
    auto* o_d = verify->add_option("--d", d, "number of symbols");
    verify->add_option("--kind", kind, "iet or quad")->needs(o_d);
    verify->add_option("--stratum", stratum_text, "e.g. H(6) or Q(-1,-1,6)")->excludes(o_d);

    auto* poly = app.add_subcommand("polygon", "suspension polygon of the canonical witness");
    poly->add_option("perm", perm)->required();
    poly->add_flag("--svg", svg, "SVG instead of JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }
    try {
        if (*induce)
            return cmd_induce(cfg, perm, moves, lambda, max_steps, out);
        if (*inv)
            return cmd_invariants(cfg, perm, out);
        if (*cls)
            return cmd_class(cfg, perm, dot, json, count, out);
        if (*same)
            return cmd_same_class(cfg, perm, perm2, fast, bfs, out, err);
        if (*verify)
            return cmd_verify(cfg, d, kind, stratum_text, out);
        if (*poly)
            return cmd_polygon(perm, svg, out);
    } catch (const Error& e) {
        err << e.what() << '\n';
        return 2;
    }
    return 2;
}

} // namespace rauzy::cli
