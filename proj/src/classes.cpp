#include "rauzy/classes.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "rauzy/error.hpp"
#include "rauzy/suspension.hpp"

namespace rauzy {

namespace {

// Runs fn(i) for i in [0, n), split into contiguous chunks.
template <class Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn&& fn) {
    workers = std::max<std::size_t>(1, std::min(workers, n / 64 + 1));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk, hi = std::min(n, lo + chunk);
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i)
                fn(i);
        });
    }
    for (auto& t : pool)
        t.join();
}

constexpr std::size_t kRauzyMoves = 2;
constexpr std::size_t kExtendedMoves = 3;

std::optional<GenPerm> successor(const GenPerm& p, std::size_t move) {
    if (move == 0)
        return r0(p);
    if (move == 1)
        return r1(p);
    return central_involution(p);
}

void require_irreducible(const GenPerm& p) {
    if (!is_irreducible(p))
        throw Error(ErrorCode::ReducibleSeed, format(p) + " admits no suspension datum");
}

struct Search {
    std::vector<GenPerm> vertices;
    std::vector<std::array<std::optional<std::size_t>, kExtendedMoves>> edges;
    bool hit = false;
};

// Breadth-first closure. Successors of a whole level are computed in
// parallel, then merged in level order, so the result does not depend on the
// number of workers. Stops early once `target` is reached.
Search closure(const GenPerm& seed, std::size_t moves, const SearchOptions& opts,
               const std::optional<PermKey>& target = std::nullopt) {
    Search s;
    std::unordered_map<PermKey, std::size_t, PermKeyHash> index;
    auto add = [&](const GenPerm& p) {
        auto [it, inserted] = index.try_emplace(make_key(p), s.vertices.size());
        if (inserted) {
            if (s.vertices.size() >= opts.budget)
                throw Error(ErrorCode::BudgetExceeded,
                            "more than " + std::to_string(opts.budget) + " vertices reached from " + format(seed));
            s.vertices.push_back(p);
            s.edges.emplace_back();
            if (target && it->first == *target)
                s.hit = true;
        }
        return std::pair{it->second, inserted};
    };
    add(seed);
    std::vector<std::size_t> frontier{0};
    while (!frontier.empty() && !s.hit) {
        std::vector<std::array<std::optional<GenPerm>, kExtendedMoves>> next(frontier.size());
        parallel_for(frontier.size(), opts.workers, [&](std::size_t i) {
            for (std::size_t mv = 0; mv < moves; ++mv)
                next[i][mv] = successor(s.vertices[frontier[i]], mv);
        });
        std::vector<std::size_t> level;
        for (std::size_t i = 0; i < frontier.size(); ++i)
            for (std::size_t mv = 0; mv < moves; ++mv)
                if (next[i][mv]) {
                    auto [idx, fresh] = add(*next[i][mv]);
                    s.edges[frontier[i]][mv] = idx;
                    if (fresh)
                        level.push_back(idx);
                }
        frontier = std::move(level);
    }
    return s;
}

RauzyDiagram sorted_diagram(Search s) {
    const std::size_t n = s.vertices.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::ranges::sort(order, [&](std::size_t a, std::size_t b) { return s.vertices[a] < s.vertices[b]; });
    std::vector<std::size_t> rank(n);
    for (std::size_t i = 0; i < n; ++i)
        rank[order[i]] = i;
    RauzyDiagram d;
    d.vertices.reserve(n);
    d.edges.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        d.vertices.push_back(std::move(s.vertices[order[i]]));
        for (std::size_t mv = 0; mv < kRauzyMoves; ++mv)
            if (auto t = s.edges[order[i]][mv])
                d.edges[i][mv] = rank[*t];
    }
    return d;
}

// Reduced sequences of 2d symbols with l on top, first occurrences in order.
template <class Emit>
void reduced_tables(std::size_t d, std::size_t l, Emit&& emit) {
    const std::size_t n = 2 * d;
    std::vector<Symbol> seq(n);
    std::vector<std::uint8_t> count(d + 1, 0);
    auto rec = [&](auto&& self, std::size_t pos, Symbol next, std::size_t open) -> void {
        if (pos == n) {
            emit(seq, l);
            return;
        }
        if (n - pos < open)
            return;
        for (Symbol s = 1; s < next; ++s)
            if (count[s] == 1) {
                seq[pos] = s;
                count[s] = 2;
                self(self, pos + 1, next, open - 1);
                count[s] = 1;
            }
        if (next <= d && n - pos > open) {
            seq[pos] = next;
            count[next] = 1;
            self(self, pos + 1, static_cast<Symbol>(next + 1), open + 1);
            count[next] = 0;
        }
    };
    rec(rec, 0, 1, 0);
}

std::mutex components_mutex;
std::map<Stratum, std::vector<GenPerm>> components_cache;

} // namespace

PermKey make_key(const GenPerm& p) {
    if (p.size() > kMaxKeySymbols)
        throw Error(ErrorCode::Unsupported, "class enumeration supports at most 16 symbols");
    PermKey k;
    k.top = static_cast<std::uint8_t>(p.top_size());
    k.positions = static_cast<std::uint8_t>(p.positions());
    for (std::size_t i = 0; i < p.positions(); ++i)
        k.bits[i / 16] |= std::uint64_t(p[i] - 1) << (4 * (i % 16));
    return k;
}

GenPerm from_key(const PermKey& k) {
    std::vector<Symbol> seq(k.positions);
    for (std::size_t i = 0; i < k.positions; ++i)
        seq[i] = static_cast<Symbol>(((k.bits[i / 16] >> (4 * (i % 16))) & 0xF) + 1);
    return GenPerm(std::span(seq).first(k.top), std::span(seq).subspan(k.top));
}

std::size_t PermKeyHash::operator()(const PermKey& k) const noexcept {
    std::uint64_t h = k.bits[0] * 0x9E3779B97F4A7C15ULL;
    h ^= (k.bits[1] + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2));
    h ^= (std::uint64_t(k.top) << 8 | k.positions) * 0xC2B2AE3D27D4EB4FULL;
    return static_cast<std::size_t>(h ^ (h >> 29));
}

std::size_t RauzyDiagram::edge_count() const {
    std::size_t n = 0;
    for (const auto& e : edges)
        n += e[0].has_value() + e[1].has_value();
    return n;
}

std::optional<std::size_t> RauzyDiagram::index_of(const GenPerm& p) const {
    auto it = std::ranges::lower_bound(vertices, p);
    if (it == vertices.end() || *it != p)
        return std::nullopt;
    return static_cast<std::size_t>(it - vertices.begin());
}

RauzyDiagram rauzy_class(const GenPerm& seed, const SearchOptions& opts) {
    require_irreducible(seed);
    return sorted_diagram(closure(seed, kRauzyMoves, opts));
}

RauzyDiagram diagram_from_vertices(std::vector<GenPerm> vertices) {
    std::ranges::sort(vertices);
    RauzyDiagram d;
    d.vertices = std::move(vertices);
    d.edges.resize(d.vertices.size());
    for (std::size_t i = 0; i < d.vertices.size(); ++i)
        for (std::size_t mv = 0; mv < kRauzyMoves; ++mv)
            if (auto t = successor(d.vertices[i], mv)) {
                auto j = d.index_of(*t);
                if (!j)
                    throw Error(ErrorCode::Io, "vertex set is not closed under the moves");
                d.edges[i][mv] = *j;
            }
    return d;
}

std::vector<GenPerm> extended_closure(const GenPerm& seed, const SearchOptions& opts) {
    auto s = closure(seed, kExtendedMoves, opts);
    std::ranges::sort(s.vertices);
    return std::move(s.vertices);
}

bool same_class_bfs(const GenPerm& a, const GenPerm& b, const SearchOptions& opts) {
    require_irreducible(a);
    require_irreducible(b);
    if (a.size() != b.size() || a.kind() != b.kind())
        return false;
    return closure(a, kRauzyMoves, opts, make_key(b)).hit;
}

bool same_class_fast(const GenPerm& a, const GenPerm& b, const SearchOptions& opts) {
    require_irreducible(a);
    require_irreducible(b);
    if (a.size() != b.size())
        return false;
    const Stratum sa = stratum_unchecked(a), sb = stratum_unchecked(b);
    if (sa != sb)
        return false;
    if (singularity_profile_unchecked(a).marked != singularity_profile_unchecked(b).marked)
        return false;
    return component_label(a, opts) == component_label(b, opts);
}

std::vector<GenPerm> enumerate_irreducible(std::size_t d, PermKind kind, std::size_t workers) {
    // equal first (or last) symbols in both rows contradict the sign conditions
    std::vector<GenPerm> candidates;
    if (kind == PermKind::Iet) {
        std::vector<Symbol> top(d), bottom(d);
        std::iota(top.begin(), top.end(), Symbol{1});
        bottom = top;
        do {
            if (bottom.front() != top.front() && bottom.back() != top.back())
                candidates.emplace_back(top, bottom);
        } while (std::next_permutation(bottom.begin(), bottom.end()));
    } else {
        for (std::size_t l = 2; l + 2 <= 2 * d; ++l)
            reduced_tables(d, l, [&](const std::vector<Symbol>& seq, std::size_t top) {
                std::span<const Symbol> all(seq);
                GenPerm p(all.first(top), all.subspan(top));
                if (p.kind() == PermKind::Quadratic && seq.front() != seq[top] && seq[top - 1] != seq.back() &&
                    solve_lengths(p))
                    candidates.push_back(std::move(p));
            });
    }
    std::vector<char> keep(candidates.size(), 0);
    parallel_for(candidates.size(), workers, [&](std::size_t i) { keep[i] = is_irreducible(candidates[i]); });
    std::vector<GenPerm> out;
    for (std::size_t i = 0; i < candidates.size(); ++i)
        if (keep[i])
            out.push_back(std::move(candidates[i]));
    return out;
}

std::vector<RauzyDiagram> partition_into_classes(const std::vector<GenPerm>& perms, const SearchOptions& opts) {
    std::vector<GenPerm> sorted = perms;
    std::ranges::sort(sorted);
    std::unordered_set<PermKey, PermKeyHash> seen;
    std::vector<RauzyDiagram> out;
    for (const auto& p : sorted) {
        if (seen.contains(make_key(p)))
            continue;
        auto diag = rauzy_class(p, opts);
        for (const auto& v : diag.vertices)
            seen.insert(make_key(v));
        out.push_back(std::move(diag));
    }
    return out;
}

TheoremReport verify_main_theorem(std::size_t d, PermKind kind, const SearchOptions& opts,
                                  const std::optional<Stratum>& only) {
    TheoremReport rep;
    rep.d = d;
    rep.kind = kind;
    auto perms = enumerate_irreducible(d, kind, opts.workers);
    if (only)
        std::erase_if(perms, [&](const GenPerm& p) { return stratum_unchecked(p) != *only; });
    if (perms.size() > opts.budget)
        throw Error(ErrorCode::BudgetExceeded, std::to_string(perms.size()) + " permutations exceed the budget");
    rep.permutations = perms.size();
    auto classes = partition_into_classes(perms, opts);
    rep.classes = classes.size();

    std::map<std::pair<Stratum, ComponentLabel>, TheoremGroup> groups;
    for (const auto& c : classes) {
        const GenPerm& rep_perm = c.vertices.front();
        const Stratum s = stratum_unchecked(rep_perm);
        const ComponentLabel label = component_label(rep_perm, opts);
        auto& g = groups[{s, label}];
        g.stratum = s;
        g.component = label;
        g.expected = s.distinct_orders();
        g.marked.push_back(singularity_profile_unchecked(rep_perm).marked);
        g.class_sizes.push_back(c.size());
    }
    rep.pass = true;
    std::map<Stratum, std::size_t> found;
    for (auto& [key, g] : groups) {
        std::vector<std::size_t> idx(g.marked.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::ranges::sort(idx, [&](std::size_t a, std::size_t b) { return g.marked[a] < g.marked[b]; });
        std::vector<int> marked;
        std::vector<std::size_t> sizes;
        for (auto i : idx) {
            marked.push_back(g.marked[i]);
            sizes.push_back(g.class_sizes[i]);
        }
        g.marked = std::move(marked);
        g.class_sizes = std::move(sizes);
        std::vector<int> orders = g.stratum.orders;
        orders.erase(std::unique(orders.begin(), orders.end()), orders.end());
        g.pass = g.marked.size() == g.expected && g.marked == orders;
        rep.pass = rep.pass && g.pass;
        ++found[g.stratum];
        rep.groups.push_back(g);
    }
    for (const auto& [s, n] : found) {
        rep.strata.push_back({s, n, component_count(s)});
        rep.pass = rep.pass && n == component_count(s);
    }
    return rep;
}

TheoremReport verify_stratum(const Stratum& s, const SearchOptions& opts) {
    const PermKind kind = s.kind == StratumKind::Abelian ? PermKind::Iet : PermKind::Quadratic;
    return verify_main_theorem(s.dimension(), kind, opts, s);
}

nlohmann::json to_json(const TheoremReport& r) {
    nlohmann::json groups = nlohmann::json::array();
    for (const auto& g : r.groups)
        groups.push_back({{"stratum", format(g.stratum)},
                          {"component", std::string(to_string(g.component))},
                          {"expected", g.expected},
                          {"classes", g.marked.size()},
                          {"marked", g.marked},
                          {"class_sizes", g.class_sizes},
                          {"pass", g.pass}});
    nlohmann::json strata = nlohmann::json::array();
    for (const auto& s : r.strata)
        strata.push_back({{"stratum", format(s.stratum)},
                          {"components", s.components_found},
                          {"expected_components", s.components_expected}});
    return {{"d", r.d},
            {"kind", std::string(to_string(r.kind))},
            {"permutations", r.permutations},
            {"classes", r.classes},
            {"groups", groups},
            {"strata", strata},
            {"pass", r.pass}};
}

std::vector<RauzyDiagram> extended_class(const GenPerm& seed, const SearchOptions& opts) {
    const Stratum s = stratum(seed);
    const ComponentLabel label = component_label(seed, opts);
    auto perms = enumerate_irreducible(seed.size(), seed.kind(), opts.workers);
    std::erase_if(perms, [&](const GenPerm& p) { return stratum_unchecked(p) != s; });
    auto classes = partition_into_classes(perms, opts);
    std::erase_if(classes, [&](const RauzyDiagram& c) { return component_label(c.vertices.front(), opts) != label; });
    return classes;
}

std::vector<GenPerm> stratum_components(const Stratum& s, const SearchOptions& opts) {
    {
        std::lock_guard lock(components_mutex);
        if (auto it = components_cache.find(s); it != components_cache.end())
            return it->second;
    }
    const PermKind kind = s.kind == StratumKind::Abelian ? PermKind::Iet : PermKind::Quadratic;
    auto perms = enumerate_irreducible(s.dimension(), kind, opts.workers);
    std::erase_if(perms, [&](const GenPerm& p) { return stratum_unchecked(p) != s; });
    std::unordered_set<PermKey, PermKeyHash> seen;
    std::vector<GenPerm> comps;
    for (const auto& p : perms) {
        if (seen.contains(make_key(p)))
            continue;
        auto cl = extended_closure(p, opts);
        for (const auto& v : cl)
            seen.insert(make_key(v));
        comps.push_back(cl.front());
    }
    std::ranges::sort(comps);
    std::lock_guard lock(components_mutex);
    components_cache.emplace(s, comps);
    return comps;
}

std::string export_dot(const RauzyDiagram& diag) {
    std::ostringstream out;
    out << "digraph rauzy {\n";
    for (std::size_t i = 0; i < diag.size(); ++i)
        out << "  n" << i << " [label=\"" << format(diag.vertices[i]) << "\"];\n";
    for (std::size_t i = 0; i < diag.size(); ++i)
        for (std::size_t mv = 0; mv < kRauzyMoves; ++mv)
            if (auto t = diag.edges[i][mv])
                out << "  n" << i << " -> n" << *t << " [label=\"" << mv << "\"];\n";
    out << "}\n";
    return out.str();
}

std::string class_cache_name(const GenPerm& seed) {
    // FNV-1a of the canonical text
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : format(seed)) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream name;
    name << "class-d" << seed.size() << '-' << to_string(seed.kind()) << '-' << std::hex << std::setw(16)
         << std::setfill('0') << h << ".txt";
    return name.str();
}

std::optional<RauzyDiagram> load_class_cache(const std::string& dir, const GenPerm& seed) {
    std::ifstream in(std::filesystem::path(dir) / class_cache_name(seed));
    if (!in)
        return std::nullopt;
    std::string line;
    if (!std::getline(in, line) || line != "# seed " + format(seed))
        return std::nullopt;
    std::vector<GenPerm> vertices;
    try {
        while (std::getline(in, line))
            if (!line.empty())
                vertices.push_back(parse(line));
        auto diag = diagram_from_vertices(std::move(vertices));
        if (!diag.index_of(seed))
            return std::nullopt;
        return diag;
    } catch (const Error&) {
        return std::nullopt; // damaged entry: recompute
    }
}

void save_class_cache(const std::string& dir, const GenPerm& seed, const RauzyDiagram& diag) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    const auto path = std::filesystem::path(dir) / class_cache_name(seed);
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out)
            throw Error(ErrorCode::Io, "cannot write " + tmp);
        out << "# seed " << format(seed) << '\n';
        for (const auto& v : diag.vertices)
            out << format(v) << '\n';
        if (!out)
            throw Error(ErrorCode::Io, "cannot write " + tmp);
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw Error(ErrorCode::Io, "cannot write " + path.string() + ": " + ec.message());
}

nlohmann::json to_json(const RauzyDiagram& diag) {
    nlohmann::json vertices = nlohmann::json::array();
    for (const auto& v : diag.vertices)
        vertices.push_back(format(v));
    nlohmann::json edges = nlohmann::json::array();
    for (std::size_t i = 0; i < diag.size(); ++i)
        for (std::size_t mv = 0; mv < kRauzyMoves; ++mv)
            if (auto t = diag.edges[i][mv])
                edges.push_back({i, *t, std::to_string(mv)});
    return {{"vertices", vertices}, {"edges", edges}};
}

} // namespace rauzy
