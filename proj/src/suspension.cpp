#include "rauzy/suspension.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "rauzy/error.hpp"
#include "rauzy/lp.hpp"

namespace rauzy {

namespace {

void check_size(const GenPerm& perm, const SuspensionDatum& zeta) {
    if (zeta.size() != perm.size())
        throw Error(ErrorCode::DimensionMismatch,
                    "expected " + std::to_string(perm.size()) + " coordinates, got " + std::to_string(zeta.size()));
}

// top count minus bottom count, per symbol
std::vector<int> row_balance(const GenPerm& perm) {
    std::vector<int> c(perm.size(), 0);
    for (Symbol s : perm.top())
        ++c[s - 1];
    for (Symbol s : perm.bottom())
        --c[s - 1];
    return c;
}

std::vector<lp::Constraint> height_system(const GenPerm& perm, bool balanced) {
    const std::size_t d = perm.size();
    const std::size_t l = perm.top_size();
    const std::size_t m = perm.bottom_size();
    std::vector<lp::Constraint> rows;
    std::vector<Rational> acc(d);
    for (std::size_t i = 0; i + 1 < l; ++i) {
        acc[perm[i] - 1] += 1;
        rows.push_back({acc, lp::Relation::GreaterEq, 1});
    }
    std::vector<Rational> top_total = acc;
    top_total[perm[l - 1] - 1] += 1;

    acc.assign(d, 0);
    for (std::size_t j = 0; j + 1 < m; ++j) {
        acc[perm[l + j] - 1] -= 1;
        rows.push_back({acc, lp::Relation::GreaterEq, 1});
    }
    std::vector<Rational> diff(d);
    auto c = row_balance(perm);
    for (std::size_t k = 0; k < d; ++k)
        diff[k] = c[k];
    rows.push_back({diff, lp::Relation::Equal, 0});
    if (balanced)
        rows.push_back({top_total, lp::Relation::Equal, 0});
    return rows;
}

long double to_ld(const Rational& q) { return static_cast<long double>(q.get_d()); }

// ccw angle from u to w: in (0, 2pi], or signed in (-pi, pi] when `signed_end`.
// The two ends of the polygon may fold over (the rows can cross), the
// interior corners never do.
long double ccw_angle(const Complex& u, const Complex& w, bool signed_end) {
    const long double ux = to_ld(u.re), uy = to_ld(u.im);
    const long double wx = to_ld(w.re), wy = to_ld(w.im);
    long double a = std::atan2(ux * wy - uy * wx, ux * wx + uy * wy);
    if (!signed_end && a <= 0)
        a += 2 * std::numbers::pi_v<long double>;
    return a;
}

} // namespace

bool check_suspension(const GenPerm& perm, const SuspensionDatum& zeta) {
    check_size(perm, zeta);
    for (const auto& z : zeta)
        if (sgn(z.re) <= 0)
            return false;
    const std::size_t l = perm.top_size();
    const std::size_t m = perm.bottom_size();
    Complex top, bottom;
    for (std::size_t i = 0; i < l; ++i) {
        top += zeta[perm[i] - 1];
        if (i + 1 < l && sgn(top.im) <= 0)
            return false;
    }
    for (std::size_t j = 0; j < m; ++j) {
        bottom += zeta[perm[l + j] - 1];
        if (j + 1 < m && sgn(bottom.im) >= 0)
            return false;
    }
    return top == bottom;
}

bool is_balanced(const GenPerm& perm, const SuspensionDatum& zeta) {
    check_size(perm, zeta);
    Rational total;
    for (Symbol s : perm.top())
        total += zeta[s - 1].im;
    return sgn(total) == 0;
}

std::optional<std::vector<Rational>> solve_lengths(const GenPerm& perm) {
    auto c = row_balance(perm);
    const auto pos = std::ranges::count_if(c, [](int x) { return x > 0; });
    const auto neg = std::ranges::count_if(c, [](int x) { return x < 0; });
    if ((pos == 0) != (neg == 0))
        return std::nullopt;
    std::vector<Rational> lambda(c.size());
    for (std::size_t k = 0; k < c.size(); ++k)
        lambda[k] = c[k] > 0 ? neg : c[k] < 0 ? pos : 1;
    return lambda;
}

std::optional<std::vector<Rational>> solve_heights(const GenPerm& perm, bool balanced) {
    auto rows = height_system(perm, balanced);
    return lp::find_feasible(perm.size(), rows);
}

bool is_irreducible(const GenPerm& perm) {
    if (!solve_lengths(perm))
        return false;
    return solve_heights(perm, false).has_value();
}

std::optional<SuspensionDatum> find_suspension(const GenPerm& perm) {
    auto lambda = solve_lengths(perm);
    if (!lambda)
        return std::nullopt;
    auto tau = solve_heights(perm, true);
    if (!tau)
        tau = solve_heights(perm, false);
    if (!tau)
        return std::nullopt;
    SuspensionDatum zeta(perm.size());
    for (std::size_t k = 0; k < zeta.size(); ++k)
        zeta[k] = {(*lambda)[k], (*tau)[k]};
    return zeta;
}

SuspensionDatum perturb_suspension(const GenPerm& perm, const SuspensionDatum& zeta, std::uint64_t seed) {
    if (!check_suspension(perm, zeta))
        throw Error(ErrorCode::InvalidSuspension, "input is not a suspension datum");
    const std::size_t d = perm.size();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> small(1, 9);
    std::uniform_int_distribution<int> shift(-9, 9);

    // fresh lengths: random weights, rescaled so both rows agree
    auto c = row_balance(perm);
    std::vector<Rational> r(d);
    Rational sp, sn;
    for (std::size_t k = 0; k < d; ++k) {
        r[k] = Rational(small(rng), small(rng));
        r[k].canonicalize();
        if (c[k] > 0)
            sp += r[k] * c[k];
        else if (c[k] < 0)
            sn -= r[k] * c[k];
    }
    SuspensionDatum out = zeta;
    for (std::size_t k = 0; k < d; ++k)
        out[k].re = c[k] > 0 ? r[k] * sn : c[k] < 0 ? r[k] * sp : r[k];

    // heights: move along a random direction of the equality subspace
    std::vector<std::vector<Rational>> eq;
    eq.emplace_back(d);
    for (std::size_t k = 0; k < d; ++k)
        eq[0][k] = c[k];
    if (is_balanced(perm, zeta)) {
        eq.emplace_back(d);
        for (Symbol s : perm.top())
            eq[1][s - 1] += 1;
    }
    std::vector<Rational> delta(d);
    for (auto& x : delta)
        x = shift(rng);
    // Gram-Schmidt on the (at most two) equality rows, then project
    std::vector<std::vector<Rational>> basis;
    auto dot = [d](const std::vector<Rational>& a, const std::vector<Rational>& b) {
        Rational s;
        for (std::size_t k = 0; k < d; ++k)
            s += a[k] * b[k];
        return s;
    };
    for (auto v : eq) {
        for (const auto& b : basis) {
            Rational f = dot(v, b) / dot(b, b);
            for (std::size_t k = 0; k < d; ++k)
                v[k] -= f * b[k];
        }
        if (sgn(dot(v, v)) != 0)
            basis.push_back(std::move(v));
    }
    for (const auto& b : basis) {
        Rational f = dot(delta, b) / dot(b, b);
        for (std::size_t k = 0; k < d; ++k)
            delta[k] -= f * b[k];
    }

    Rational t = 1;
    for (int tries = 0; tries < 64; ++tries, t /= 2) {
        SuspensionDatum cand = out;
        for (std::size_t k = 0; k < d; ++k)
            cand[k].im += t * delta[k];
        if (check_suspension(perm, cand))
            return cand;
    }
    return out;
}

std::string_view to_string(Gluing g) { return g == Gluing::Translation ? "translation" : "half-turn"; }

SuspensionPolygon build_polygon(const GenPerm& perm, const SuspensionDatum& zeta) {
    if (!check_suspension(perm, zeta))
        throw Error(ErrorCode::InvalidSuspension, "not a suspension datum for " + format(perm));
    const std::size_t l = perm.top_size();
    const std::size_t m = perm.bottom_size();
    const std::size_t n = l + m;

    SuspensionPolygon poly;
    poly.right_corner = m;
    std::vector<Complex> top(l + 1);
    for (std::size_t i = 0; i < l; ++i)
        top[i + 1] = top[i] + zeta[perm[i] - 1];
    poly.vertices.emplace_back();
    for (std::size_t j = 0; j < m; ++j)
        poly.vertices.push_back(poly.vertices.back() + zeta[perm[l + j] - 1]);
    for (std::size_t i = l - 1; i >= 1; --i)
        poly.vertices.push_back(top[i]);

    std::vector<std::size_t> edge_of(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t pos = k < m ? l + k : l - 1 - (k - m);
        poly.edges.push_back({perm[pos], pos, pos < l});
        edge_of[pos] = k;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t k2 = edge_of[perm.other_occurrence(poly.edges[k].position)];
        if (k2 < k)
            continue;
        const Complex u = poly.vertices[(k + 1) % n] - poly.vertices[k];
        const Complex w = poly.vertices[(k2 + 1) % n] - poly.vertices[k2];
        Gluing g;
        if (u == -w)
            g = Gluing::Translation;
        else if (u == w)
            g = Gluing::HalfTurn;
        else
            throw Error(ErrorCode::InvalidSuspension, "paired edges are not parallel");
        const bool expected_translation = poly.edges[k].top != poly.edges[k2].top;
        if ((g == Gluing::Translation) != expected_translation)
            throw Error(ErrorCode::InvalidSuspension, "unexpected gluing");
        poly.pairs.push_back({k, k2, g});
    }
    return poly;
}

std::vector<std::size_t> GeometricProfile::angles() const {
    std::vector<std::size_t> out;
    for (const auto& c : classes)
        out.push_back(c.angle);
    std::ranges::sort(out);
    return out;
}

GeometricProfile geometric_profile(const SuspensionPolygon& poly) {
    const std::size_t n = poly.size();
    std::vector<std::size_t> partner(n);
    for (const auto& p : poly.pairs) {
        partner[p.first] = p.second;
        partner[p.second] = p.first;
    }
    GeometricProfile out;
    std::vector<bool> seen(n, false);
    for (std::size_t start = 0; start < n; ++start) {
        if (seen[start])
            continue;
        CornerClass cls;
        long double total = 0;
        std::size_t c = start;
        do {
            seen[c] = true;
            cls.corners.push_back(c);
            const Complex& v = poly.vertices[c];
            total += ccw_angle(poly.vertices[(c + 1) % n] - v, poly.vertices[(c + n - 1) % n] - v,
                               c == 0 || c == poly.right_corner);
            c = partner[(c + n - 1) % n];
        } while (c != start);
        const long double units = total / std::numbers::pi_v<long double>;
        const long double rounded = std::round(units);
        if (std::fabs(units - rounded) > 1e-6L || rounded < 1)
            throw Error(ErrorCode::InvalidSuspension, "cone angle is not a multiple of pi");
        cls.angle = static_cast<std::size_t>(rounded);
        if (std::ranges::find(cls.corners, std::size_t{0}) != cls.corners.end())
            out.marked = out.classes.size();
        out.classes.push_back(std::move(cls));
    }
    return out;
}

nlohmann::json to_json(const SuspensionPolygon& poly) {
    nlohmann::json vertices = nlohmann::json::array();
    for (const auto& v : poly.vertices)
        vertices.push_back({to_string(v.re), to_string(v.im)});
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : poly.edges)
        edges.push_back({{"symbol", e.symbol}, {"row", e.top ? "top" : "bottom"}, {"position", e.position}});
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& p : poly.pairs)
        pairs.push_back({p.first, p.second, std::string(to_string(p.gluing))});
    return {{"vertices", vertices}, {"edges", edges}, {"pairs", pairs}, {"right_corner", poly.right_corner}};
}

std::string to_svg(const SuspensionPolygon& poly) {
    const std::size_t n = poly.size();
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    for (const auto& v : poly.vertices) {
        xmin = std::min(xmin, v.re.get_d());
        xmax = std::max(xmax, v.re.get_d());
        ymin = std::min(ymin, v.im.get_d());
        ymax = std::max(ymax, v.im.get_d());
    }
    const double span = std::max({xmax - xmin, ymax - ymin, 1e-9});
    const double scale = 560.0 / span;
    auto X = [&](const Rational& x) { return 20 + (x.get_d() - xmin) * scale; };
    auto Y = [&](const Rational& y) { return 20 + (ymax - y.get_d()) * scale; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << X(xmax) + 20 << "\" height=\""
        << Y(ymin) + 20 << "\">\n";
    svg << "<polygon fill=\"#eef\" stroke=\"#224\" points=\"";
    for (const auto& v : poly.vertices)
        svg << X(v.re) << ',' << Y(v.im) << ' ';
    svg << "\"/>\n";
    for (std::size_t k = 0; k < n; ++k) {
        const auto& a = poly.vertices[k];
        const auto& b = poly.vertices[(k + 1) % n];
        svg << "<text font-size=\"14\" x=\"" << (X(a.re) + X(b.re)) / 2 << "\" y=\"" << (Y(a.im) + Y(b.im)) / 2
            << "\">" << int(poly.edges[k].symbol) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

nlohmann::json to_json(const SuspensionDatum& zeta) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& z : zeta)
        out.push_back({to_string(z.re), to_string(z.im)});
    return out;
}

SuspensionDatum suspension_from_json(const nlohmann::json& j) {
    auto number = [](const nlohmann::json& x) {
        if (x.is_string())
            return parse_rational(x.get<std::string>());
        if (x.is_number_integer())
            return Rational(x.get<long>());
        throw Error(ErrorCode::Parse, "coordinates must be integers or \"p/q\" strings");
    };
    if (!j.is_array())
        throw Error(ErrorCode::Parse, "suspension datum must be an array");
    SuspensionDatum out;
    for (const auto& z : j) {
        if (!z.is_array() || z.size() != 2)
            throw Error(ErrorCode::Parse, "each coordinate must be a [re, im] pair");
        out.push_back({number(z[0]), number(z[1])});
    }
    return out;
}

} // namespace rauzy
