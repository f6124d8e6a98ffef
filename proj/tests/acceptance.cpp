// One PASS/FAIL line per acceptance criterion. Exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "rauzy/classes.hpp"
#include "rauzy/error.hpp"
#include "rauzy/induction.hpp"
#include "rauzy/invariants.hpp"
#include "rauzy/suspension.hpp"

using namespace rauzy;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string sorted_lines(const RauzyDiagram& d) {
    std::vector<std::string> v;
    for (const auto& p : d.vertices)
        v.push_back(format(p));
    std::ranges::sort(v);
    std::string out;
    for (const auto& s : v)
        out += s + ";";
    return out;
}

std::string sorted_lines(std::vector<std::string> v) {
    std::ranges::sort(v);
    std::string out;
    for (const auto& s : v)
        out += s + ";";
    return out;
}

Outcome worked_example() {
    auto p = parse("1 2 3 4 3 / 2 4 5 5 1");
    auto a = r0(p), b = r1(p);
    const bool ok = a && b && format(*a) == "1 2 1 3 4 3 / 2 4 5 5" && format(*b) == "1 2 3 2 4 / 3 4 5 5 1";
    return {ok, "r0 -> " + (a ? format(*a) : "undefined") + ", r1 -> " + (b ? format(*b) : "undefined")};
}

Outcome seven_vertices() {
    auto d = rauzy_class(parse("1 2 3 4 / 4 3 2 1"));
    const std::string expected = sorted_lines({"1 2 3 4 / 4 3 2 1", "1 2 3 4 / 4 1 3 2", "1 2 3 4 / 4 2 1 3",
                                               "1 2 3 4 / 2 4 3 1", "1 2 3 4 / 3 2 4 1", "1 2 3 4 / 3 1 4 2",
                                               "1 2 3 4 / 2 4 1 3"});
    const bool ok = sorted_lines(d) == expected && d.edge_count() == 14;
    return {ok, std::to_string(d.size()) + " vertices, " + std::to_string(d.edge_count()) + " edges"};
}

Outcome four_vertices() {
    auto d = rauzy_class(parse("1 1 2 / 2 3 3"));
    const std::string expected = sorted_lines({"1 1 2 / 2 3 3", "1 2 2 / 3 3 1", "1 1 / 2 2 3 3", "1 1 2 2 / 3 3"});
    return {sorted_lines(d) == expected, std::to_string(d.size()) + " vertices, " + std::to_string(d.edge_count()) +
                                             " edges"};
}

Outcome main_theorem(PermKind kind, std::size_t from, std::size_t to) {
    bool ok = true;
    std::ostringstream detail;
    for (std::size_t d = from; d <= to; ++d) {
        auto r = verify_main_theorem(d, kind);
        ok = ok && r.pass;
        detail << "d=" << d << ":" << r.classes << " classes/" << r.groups.size() << " groups"
               << (r.pass ? "" : " FAILED") << " ";
        for (const auto& g : r.groups)
            if (!g.pass)
                detail << "[" << format(g.stratum) << " " << to_string(g.component) << "] ";
        for (const auto& s : r.strata)
            if (s.components_found != s.components_expected)
                detail << "[" << format(s.stratum) << " components " << s.components_found << "/"
                       << s.components_expected << "] ";
    }
    return {ok, detail.str()};
}

Outcome quadratic_theorem() {
    auto out = main_theorem(PermKind::Quadratic, 2, 6);
    // connected strata from the list that occur in range
    const std::vector<std::vector<int>> connected{{-1, -1, -1, -1}, {-1, -1, 1, 1}, {-1, -1, 2},
                                                  {1, 1, 1, 1},     {1, 1, 2},      {2, 2}};
    std::ostringstream detail;
    for (std::size_t d = 2; d <= 6; ++d) {
        auto r = verify_main_theorem(d, PermKind::Quadratic);
        for (const auto& g : r.groups)
            if (std::ranges::find(connected, g.stratum.orders) != connected.end()) {
                detail << format(g.stratum) << ":" << g.class_sizes.size() << " ";
                if (g.component != ComponentLabel::Unique)
                    out.pass = false;
                if (g.stratum.orders == std::vector<int>{-1, -1, -1, -1} && g.class_sizes.size() != 1)
                    out.pass = false;
            }
    }
    out.detail += "| connected: " + detail.str();
    return out;
}

Outcome h6() {
    const Stratum s = Stratum::make(StratumKind::Abelian, {6});
    std::vector<GenPerm> in;
    for (const auto& p : enumerate_irreducible(8, PermKind::Iet))
        if (stratum(p) == s)
            in.push_back(p);
    auto classes = partition_into_classes(in);
    std::size_t with_symmetric = 0, with_hyperelliptic = 0;
    std::ostringstream detail;
    for (const auto& c : classes) {
        std::size_t sym = 0, hyp = 0;
        for (const auto& v : c.vertices)
            if (central_involution(v) == v) {
                ++sym;
                hyp += is_hyperelliptic_symmetric(v, s);
            }
        with_symmetric += sym > 0;
        with_hyperelliptic += hyp > 0;
        detail << "[" << c.size() << " vertices, " << to_string(component_label(c.vertices.front())) << ", "
               << sym << " symmetric, " << hyp << " hyperelliptic] ";
    }
    detail << "classes with a hyperelliptic symmetric vertex: " << with_hyperelliptic
           << "; classes with any symmetric vertex: " << with_symmetric;
    return {classes.size() == 3 && with_hyperelliptic == 1, std::to_string(classes.size()) + " classes " + detail.str()};
}

Outcome corollary() {
    bool ok = true;
    std::ostringstream detail;
    std::mt19937_64 rng(2024);
    std::size_t pairs = 0, sampled = 0;
    for (auto kind : {PermKind::Iet, PermKind::Quadratic})
        for (std::size_t d = 2; d <= 6; ++d) {
            auto all = enumerate_irreducible(d, kind);
            if (all.empty())
                continue;
            auto classes = partition_into_classes(all);
            // same class by search <=> same invariant key, over all pairs at once:
            // the key must be constant on each class and differ between classes
            using Key = std::tuple<Stratum, ComponentLabel, int>;
            std::map<Key, std::size_t> owner;
            for (std::size_t c = 0; c < classes.size(); ++c) {
                const auto& cls = classes[c];
                const auto first = invariant_report(cls.vertices.front());
                for (const auto& v : cls.vertices) {
                    const auto r = invariant_report(v);
                    if (r.stratum != first.stratum || r.component != first.component || r.marked != first.marked) {
                        ok = false;
                        detail << "counterexample: " << format(v) << " and " << format(cls.vertices.front())
                               << " share a class but not invariants " << to_json(r).dump() << " vs "
                               << to_json(first).dump() << "; ";
                    }
                    auto [it, fresh] = owner.emplace(Key{r.stratum, r.component, r.marked}, c);
                    if (!fresh && it->second != c) {
                        ok = false;
                        detail << "counterexample: " << format(v) << " and "
                               << format(classes[it->second].vertices.front()) << " share invariants "
                               << to_json(r).dump() << " but lie in different classes; ";
                    }
                }
            }
            pairs += all.size() * all.size();
            // direct calls on a sample
            std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
            for (int i = 0; i < 200; ++i) {
                const auto& a = all[pick(rng)];
                const auto& b = i % 2 ? all[pick(rng)] : classes[0].vertices.back();
                const bool fast = same_class_fast(a, b), bfs = same_class_bfs(a, b);
                ++sampled;
                if (fast != bfs) {
                    ok = false;
                    detail << "counterexample: " << format(a) << " | " << format(b) << " fast=" << fast
                           << " bfs=" << bfs << "; ";
                }
            }
        }
    detail << pairs << " pairs through the class partition, " << sampled << " sampled direct calls";
    return {ok, detail.str()};
}

Outcome profile_oracle() {
    std::size_t checked = 0;
    for (auto kind : {PermKind::Iet, PermKind::Quadratic})
        for (std::size_t d = 2; d <= 6; ++d)
            for (const auto& p : enumerate_irreducible(d, kind)) {
                const auto comb = singularity_profile(p);
                const auto geo = geometric_profile(build_polygon(p, *find_suspension(p)));
                auto order = [&](std::size_t angle) {
                    const int a = static_cast<int>(angle);
                    return kind == PermKind::Iet ? a / 2 - 1 : a - 2;
                };
                std::vector<int> orders;
                for (auto a : geo.angles())
                    orders.push_back(order(a));
                std::ranges::sort(orders);
                ++checked;
                if (orders != comb.orders || order(geo.classes[geo.marked].angle) != comb.marked)
                    return {false, "mismatch at " + format(p)};
            }
    return {true, std::to_string(checked) + " permutations"};
}

Outcome suspension_preservation() {
    std::vector<GenPerm> pool;
    for (auto kind : {PermKind::Iet, PermKind::Quadratic})
        for (std::size_t d = 2; d <= 6; ++d) {
            auto all = enumerate_irreducible(d, kind);
            pool.insert(pool.end(), all.begin(), all.end());
        }
    std::size_t steps = 0, halted = 0, undefined = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        std::mt19937_64 rng(seed);
        GenPerm p = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
        auto zeta = perturb_suspension(p, *find_suspension(p), rng());
        for (int i = 0; i < 1000; ++i) {
            if (!check_suspension(p, zeta))
                return {false, "invalid datum at seed " + std::to_string(seed) + " step " + std::to_string(i)};
            Complex top, bottom;
            for (Symbol s : p.top())
                top += zeta[s - 1];
            for (Symbol s : p.bottom())
                bottom += zeta[s - 1];
            if (top != bottom)
                return {false, "row sums differ at seed " + std::to_string(seed)};
            try {
                auto st = rv_step(p, zeta);
                p = st.perm;
                zeta = st.zeta;
                ++steps;
            } catch (const Error& e) {
                if (e.code() == ErrorCode::Halt)
                    ++halted;
                else if (e.code() == ErrorCode::UndefinedMove)
                    ++undefined;
                else
                    throw;
                break;
            }
        }
    }
    return {true, "1000 seeds, " + std::to_string(steps) + " steps, " + std::to_string(halted) + " halted, " +
                      std::to_string(undefined) + " reached an undefined move"};
}

Outcome alpha_invariance() {
    std::size_t edges = 0;
    for (auto kind : {PermKind::Iet, PermKind::Quadratic})
        for (std::size_t d = 2; d <= 7; ++d)
            for (const auto& c : partition_into_classes(enumerate_irreducible(d, kind))) {
                std::vector<int> marked;
                for (const auto& v : c.vertices)
                    marked.push_back(singularity_profile_unchecked(v).marked);
                for (std::size_t v = 0; v < c.size(); ++v)
                    for (const auto& e : c.edges[v])
                        if (e) {
                            ++edges;
                            if (marked[*e] != marked[v])
                                return {false, "marked order changes on " + format(c.vertices[v]) + " -> " +
                                                   format(c.vertices[*e])};
                        }
            }
    return {true, std::to_string(edges) + " edges, both kinds, d <= 7"};
}

Outcome prefix_criterion() {
    std::size_t count = 0;
    for (std::size_t d = 1; d <= 8; ++d)
        for (const auto& b : oracle::all_permutations(d)) {
            ++count;
            if (is_irreducible(oracle::iet(b)) != oracle::prefix_irreducible(b))
                return {false, "disagreement at " + format(oracle::iet(b))};
        }
    return {true, std::to_string(count) + " permutations"};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"worked example moves", worked_example},
        {"permutation diagram figure", seven_vertices},
        {"generalized diagram figure", four_vertices},
        {"main theorem, interval exchanges, d = 2..7", [] { return main_theorem(PermKind::Iet, 2, 7); }},
        {"H(6) at d = 8", h6},
        {"main theorem, generalized permutations, d <= 6", quadratic_theorem},
        {"fast criterion equals class search, d <= 6", corollary},
        {"combinatorial profile equals polygon profile, d <= 6", profile_oracle},
        {"suspension data survive Rauzy-Veech steps", suspension_preservation},
        {"marked order constant along diagram edges", alpha_invariance},
        {"irreducibility equals the prefix criterion, d <= 8", prefix_criterion},
    };
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        all = all && o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " ("
                  << o.detail << "; " << secs << " s)" << std::endl;
    }
    return all ? 0 : 1;
}
