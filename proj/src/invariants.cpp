#include "rauzy/invariants.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "rauzy/classes.hpp"
#include "rauzy/error.hpp"

namespace rauzy {

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

// Corners of the two broken lines: T_0..T_l then B_0..B_m.
struct Corners {
    std::size_t l, m;
    UnionFind uf;

    explicit Corners(const GenPerm& p) : l(p.top_size()), m(p.bottom_size()), uf(l + m + 2) {
        uf.unite(T(0), B(0));
        uf.unite(T(l), B(m));
        for (std::size_t pos = 0; pos < p.positions(); ++pos) {
            const std::size_t other = p.other_occurrence(pos);
            if (other < pos)
                continue;
            if (other < l) { // both on top
                uf.unite(T(pos), T(other + 1));
                uf.unite(T(pos + 1), T(other));
            } else if (pos >= l) { // both on the bottom
                uf.unite(B(pos - l), B(other - l + 1));
                uf.unite(B(pos - l + 1), B(other - l));
            } else {
                uf.unite(T(pos), B(other - l));
                uf.unite(T(pos + 1), B(other - l + 1));
            }
        }
    }
    std::size_t T(std::size_t i) const { return i; }
    std::size_t B(std::size_t j) const { return l + 1 + j; }
    bool interior(std::size_t c) const { return (c > 0 && c < l) || (c > l + 1 && c < l + 1 + m); }
};

int order_from_angle(std::size_t angle, PermKind kind) {
    const int a = static_cast<int>(angle);
    if (kind == PermKind::Iet) {
        if (a % 2 != 0)
            throw std::logic_error("odd cone angle on a translation surface");
        return a / 2 - 1;
    }
    return a - 2;
}

void require_irreducible(const GenPerm& p) {
    if (!is_irreducible(p))
        throw Error(ErrorCode::Reducible, format(p) + " admits no suspension datum");
}

bool is_exceptional(const Stratum& s) {
    if (s.kind != StratumKind::Quadratic)
        return false;
    const auto k = s.nonzero_orders();
    using V = std::vector<int>;
    return k == V{12} || k == V{-1, 9} || k == V{-1, 3, 6} || k == V{-1, 3, 3, 3};
}

bool is_connected_exception(const std::vector<int>& k) {
    using V = std::vector<int>;
    return k == V{-1, -1, -1, -1} || k == V{-1, -1, 1, 1} || k == V{-1, -1, 2} || k == V{1, 1, 1, 1} ||
           k == V{1, 1, 2} || k == V{2, 2};
}

bool abelian_candidate(const std::vector<int>& k, int g) {
    return k == std::vector<int>{2 * g - 2} || k == std::vector<int>{g - 1, g - 1};
}

bool all_even(const std::vector<int>& k) {
    return std::ranges::all_of(k, [](int x) { return x % 2 == 0; });
}

std::mutex hyp_mutex;
std::map<PermKey, bool> hyp_cache;

bool symmetric_in_closure(const GenPerm& p, const Stratum& st, const SearchOptions& opts) {
    const PermKey key = make_key(p);
    {
        std::lock_guard lock(hyp_mutex);
        if (auto it = hyp_cache.find(key); it != hyp_cache.end())
            return it->second;
    }
    auto closure = extended_closure(p, opts);
    const bool found =
        std::ranges::any_of(closure, [&st](const GenPerm& v) { return is_hyperelliptic_symmetric(v, st); });
    std::lock_guard lock(hyp_mutex);
    for (const auto& v : closure)
        hyp_cache.emplace(make_key(v), found);
    return found;
}

} // namespace

Stratum Stratum::make(StratumKind kind, std::vector<int> orders) {
    std::ranges::sort(orders);
    const int sum = std::accumulate(orders.begin(), orders.end(), 0);
    if (orders.empty())
        throw Error(ErrorCode::Parse, "a stratum needs at least one singularity");
    if (kind == StratumKind::Abelian) {
        if (orders.front() < 0 || sum % 2 != 0)
            throw Error(ErrorCode::Parse, "Abelian degrees must be nonnegative with even sum");
    } else {
        if (orders.front() < -1 || sum < -4 || (sum + 4) % 4 != 0)
            throw Error(ErrorCode::Parse, "quadratic orders must be >= -1 with sum 4g-4");
    }
    return {kind, std::move(orders)};
}

int Stratum::genus() const {
    const int sum = std::accumulate(orders.begin(), orders.end(), 0);
    return kind == StratumKind::Abelian ? (sum + 2) / 2 : (sum + 4) / 4;
}

std::size_t Stratum::distinct_orders() const {
    std::vector<int> k = orders;
    return static_cast<std::size_t>(std::distance(k.begin(), std::unique(k.begin(), k.end())));
}

std::size_t Stratum::dimension() const { return static_cast<std::size_t>(2 * genus()) + orders.size() - 1; }

std::vector<int> Stratum::nonzero_orders() const {
    std::vector<int> out;
    std::ranges::copy_if(orders, std::back_inserter(out), [](int x) { return x != 0; });
    return out;
}

std::string format(const Stratum& s) {
    std::string out = s.kind == StratumKind::Abelian ? "H(" : "Q(";
    std::vector<int> k = s.orders;
    if (s.kind == StratumKind::Abelian)
        std::ranges::reverse(k);
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(k[i]);
    }
    return out + ')';
}

Stratum parse_stratum(std::string_view text) {
    auto trim = [](std::string_view t) {
        while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front())))
            t.remove_prefix(1);
        while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back())))
            t.remove_suffix(1);
        return t;
    };
    text = trim(text);
    if (text.size() < 3 || (text[0] != 'H' && text[0] != 'Q') || text[1] != '(' || text.back() != ')')
        throw Error(ErrorCode::Parse, "expected H(...) or Q(...), got '" + std::string(text) + "'");
    const StratumKind kind = text[0] == 'H' ? StratumKind::Abelian : StratumKind::Quadratic;
    std::string_view body = text.substr(2, text.size() - 3);
    std::vector<int> orders;
    while (!body.empty()) {
        auto comma = body.find(',');
        std::string_view item = trim(body.substr(0, comma));
        int value = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
        if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size())
            throw Error(ErrorCode::Parse, "bad order '" + std::string(item) + "'");
        orders.push_back(value);
        if (comma == std::string_view::npos)
            break;
        body.remove_prefix(comma + 1);
    }
    return Stratum::make(kind, std::move(orders));
}

std::string_view to_string(ComponentLabel label) {
    switch (label) {
    case ComponentLabel::Unique: return "unique";
    case ComponentLabel::Hyperelliptic: return "hyperelliptic";
    case ComponentLabel::EvenSpin: return "even-spin";
    case ComponentLabel::OddSpin: return "odd-spin";
    case ComponentLabel::NonHyperelliptic: return "non-hyperelliptic";
    case ComponentLabel::ExceptionalA: return "exceptional-A";
    case ComponentLabel::ExceptionalB: return "exceptional-B";
    }
    return "unknown";
}

SingularityProfile singularity_profile_unchecked(const GenPerm& p) {
    Corners c(p);
    const std::size_t n = p.positions() + 2;
    std::vector<std::size_t> angle(n, 0);
    for (std::size_t x = 0; x < n; ++x)
        if (c.interior(x))
            ++angle[c.uf.find(x)];
    SingularityProfile out;
    const PermKind kind = p.kind();
    for (std::size_t x = 0; x < n; ++x)
        if (c.uf.find(x) == x)
            out.orders.push_back(order_from_angle(angle[x], kind));
    std::ranges::sort(out.orders);
    out.marked = order_from_angle(angle[c.uf.find(c.T(0))], kind);
    return out;
}

SingularityProfile singularity_profile(const GenPerm& p) {
    require_irreducible(p);
    return singularity_profile_unchecked(p);
}

Stratum stratum_unchecked(const GenPerm& p) {
    auto prof = singularity_profile_unchecked(p);
    const bool abelian = p.kind() == PermKind::Iet;
    const int sum = std::accumulate(prof.orders.begin(), prof.orders.end(), 0);
    if (abelian ? (sum % 2 != 0) : (sum % 4 != 0))
        throw std::logic_error("fractional genus for " + format(p));
    Stratum s{abelian ? StratumKind::Abelian : StratumKind::Quadratic, std::move(prof.orders)};
    if (s.dimension() != p.size())
        throw std::logic_error("d != 2g + s - 1 for " + format(p) + " in " + format(s));
    return s;
}

Stratum stratum(const GenPerm& p) {
    require_irreducible(p);
    return stratum_unchecked(p);
}

int spin_parity(const GenPerm& p) {
    if (p.kind() != PermKind::Iet)
        throw Error(ErrorCode::NotAbelian, "spin parity needs an interval exchange permutation");
    require_irreducible(p);
    const Stratum s = stratum_unchecked(p);
    if (!all_even(s.orders))
        throw Error(ErrorCode::OddDegreePresent, "stratum " + format(s) + " has a singularity of odd degree");

    // cycle c_k joins the bottom copy of edge k to its top copy; two cycles
    // meet once (mod 2) when their symbols appear in opposite orders
    const std::size_t d = p.size();
    std::vector<std::size_t> at_bottom(d + 1);
    for (std::size_t j = 0; j < d; ++j)
        at_bottom[p[d + j]] = j;
    std::vector<std::uint64_t> omega(d, 0); // rows over symbols 0..d-1
    for (std::size_t a = 1; a <= d; ++a)
        for (std::size_t b = a + 1; b <= d; ++b)
            if (at_bottom[a] > at_bottom[b]) { // top order is a < b
                omega[a - 1] |= std::uint64_t{1} << (b - 1);
                omega[b - 1] |= std::uint64_t{1} << (a - 1);
            }
    auto form = [&](std::uint64_t x, std::uint64_t y) {
        int acc = 0;
        for (std::uint64_t t = x; t; t &= t - 1)
            acc ^= std::popcount(omega[std::countr_zero(t)] & y) & 1;
        return acc;
    };
    // index of each c_k is 0, so q(c_k) = 1
    auto q = [&](std::uint64_t x) {
        int acc = std::popcount(x) & 1;
        for (std::uint64_t t = x; t; t &= t - 1) {
            const int i = std::countr_zero(t);
            const std::uint64_t later = x & ~((std::uint64_t{2} << i) - 1);
            acc ^= std::popcount(omega[i] & later) & 1;
        }
        return acc;
    };

    std::vector<std::uint64_t> pool;
    for (std::size_t k = 0; k < d; ++k)
        pool.push_back(std::uint64_t{1} << k);
    int arf = 0;
    int pairs = 0;
    while (true) {
        std::size_t ia = pool.size(), ib = 0;
        for (std::size_t i = 0; i < pool.size() && ia == pool.size(); ++i)
            for (std::size_t j = i + 1; j < pool.size(); ++j)
                if (form(pool[i], pool[j])) {
                    ia = i;
                    ib = j;
                    break;
                }
        if (ia == pool.size())
            break;
        const std::uint64_t a = pool[ia], b = pool[ib];
        arf ^= q(a) & q(b);
        ++pairs;
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(ib));
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(ia));
        for (auto& v : pool) {
            std::uint64_t w = v;
            if (form(v, b))
                w ^= a;
            if (form(v, a))
                w ^= b;
            v = w;
        }
    }
    if (pairs != s.genus())
        throw std::logic_error("intersection form rank does not match the genus");
    return arf;
}

bool is_hyperelliptic_symmetric(const GenPerm& p, const Stratum& st) {
    if (central_involution(p) != p)
        return false;
    const std::size_t l = p.top_size();
    const std::size_t m = p.bottom_size();
    Corners c(p);
    const std::size_t n = l + m + 2;
    std::vector<std::size_t> angle(n, 0);
    for (std::size_t x = 0; x < n; ++x)
        if (c.interior(x))
            ++angle[c.uf.find(x)];
    const std::size_t regular = 2; // cone angle 2pi, in units of pi

    std::size_t fixed = 1; // centre of the polygon
    for (std::size_t i = 0; i < l; ++i)
        if (p.other_occurrence(i) == l + (m - 1 - i))
            ++fixed; // midpoint of an edge glued to its own image
    std::size_t fixed_singular = 0;
    std::vector<bool> done(n, false);
    auto visit = [&](std::size_t x, std::size_t image) {
        const std::size_t root = c.uf.find(x);
        if (done[root])
            return;
        done[root] = true;
        if (c.uf.find(image) == root) {
            ++fixed;
            if (angle[root] != regular)
                ++fixed_singular;
        }
    };
    for (std::size_t i = 0; i <= l; ++i)
        visit(c.T(i), c.B(m - i));
    for (std::size_t j = 0; j <= m; ++j)
        visit(c.B(j), c.T(l - j));

    // how the involution of each hyperelliptic family acts on the zeros
    const auto k = st.nonzero_orders();
    std::size_t expected_fixed_singular;
    if (st.kind == StratumKind::Abelian)
        expected_fixed_singular = k.size() == 1 ? 1 : 0;
    else
        expected_fixed_singular = 4 - k.size();
    return fixed == static_cast<std::size_t>(2 * st.genus() + 2) && fixed_singular == expected_fixed_singular;
}

bool has_hyperelliptic_component(const Stratum& s) {
    const auto k = s.nonzero_orders();
    const int g = s.genus();
    if (s.kind == StratumKind::Abelian)
        return g >= 2 && abelian_candidate(k, g);
    auto odd = [](int x) { return x % 2 != 0; };
    auto two_mod_four = [](int x) { return x >= 2 && x % 4 == 2; };
    if (k.size() == 4)
        return k[0] == k[1] && k[2] == k[3] && odd(k[0]) && odd(k[2]) && k[2] >= 1;
    if (k.size() == 3) {
        // two equal odd orders and one order 2 mod 4
        for (std::size_t e = 0; e < 3; ++e) {
            std::vector<int> rest;
            for (std::size_t i = 0; i < 3; ++i)
                if (i != e)
                    rest.push_back(k[i]);
            if (two_mod_four(k[e]) && rest[0] == rest[1] && odd(rest[0]))
                return true;
        }
        return false;
    }
    if (k.size() == 2)
        return two_mod_four(k[0]) && two_mod_four(k[1]);
    return false;
}

std::size_t component_count(const Stratum& s) {
    const auto k = s.nonzero_orders();
    const int g = s.genus();
    if (s.kind == StratumKind::Abelian) {
        if (g <= 1)
            return 1;
        if (abelian_candidate(k, g)) {
            if (g == 2)
                return 1;
            if (g == 3)
                return 2;
            return all_even(k) ? 3 : 2;
        }
        return g >= 4 && all_even(k) ? 2 : 1;
    }
    if (is_exceptional(s))
        return 2;
    if (has_hyperelliptic_component(s) && !is_connected_exception(k))
        return 2;
    return 1;
}

bool is_hyperelliptic_component(const GenPerm& p, const SearchOptions& opts) {
    const Stratum s = stratum(p);
    const int g = s.genus();
    const auto k = s.nonzero_orders();
    const bool marked = k.size() != s.orders.size();
    if (s.kind == StratumKind::Abelian) {
        if (g <= 2)
            return true;
        if (!abelian_candidate(k, g))
            return false;
        if (!marked)
            return symmetric_in_closure(p, s, opts);
        if (g == 3 && all_even(k))
            return spin_parity(p) == 0; // the hyperelliptic genus 3 components are the even ones
        throw Error(ErrorCode::Unsupported, "hyperellipticity with marked points in " + format(s));
    }
    if (g == 0)
        return true;
    if (!has_hyperelliptic_component(s))
        return false;
    if (is_connected_exception(k))
        return true;
    if (marked)
        throw Error(ErrorCode::Unsupported, "hyperellipticity with marked points in " + format(s));
    return symmetric_in_closure(p, s, opts);
}

ComponentLabel component_label(const GenPerm& p, const SearchOptions& opts) {
    const Stratum s = stratum(p);
    const int g = s.genus();
    const auto k = s.nonzero_orders();
    if (s.kind == StratumKind::Abelian) {
        if (g <= 1)
            return ComponentLabel::Unique;
        auto spin = [&] { return spin_parity(p) == 0 ? ComponentLabel::EvenSpin : ComponentLabel::OddSpin; };
        if (abelian_candidate(k, g)) {
            if (g == 2 || is_hyperelliptic_component(p, opts))
                return ComponentLabel::Hyperelliptic;
            if (g == 3 || !all_even(k))
                return ComponentLabel::NonHyperelliptic;
            return spin();
        }
        if (g >= 4 && all_even(k))
            return spin();
        return ComponentLabel::Unique;
    }
    if (is_exceptional(s)) {
        const auto comps = stratum_components(s, opts);
        const auto closure = extended_closure(p, opts);
        return closure.front() == comps.front() ? ComponentLabel::ExceptionalA : ComponentLabel::ExceptionalB;
    }
    if (component_count(s) == 2)
        return is_hyperelliptic_component(p, opts) ? ComponentLabel::Hyperelliptic : ComponentLabel::NonHyperelliptic;
    return ComponentLabel::Unique;
}

InvariantReport invariant_report(const GenPerm& p, const SearchOptions& opts) {
    InvariantReport r;
    r.stratum = stratum(p);
    r.genus = r.stratum.genus();
    r.marked = singularity_profile_unchecked(p).marked;
    r.component = component_label(p, opts);
    return r;
}

nlohmann::json to_json(const InvariantReport& r) {
    std::vector<int> orders = r.stratum.orders;
    if (r.stratum.kind == StratumKind::Abelian)
        std::ranges::reverse(orders);
    return {{"stratum", format(r.stratum)},
            {"genus", r.genus},
            {"orders", orders},
            {"marked", r.marked},
            {"component", std::string(to_string(r.component))}};
}

} // namespace rauzy
