#include "rauzy/induction.hpp"

#include <algorithm>
#include <array>

#include "rauzy/error.hpp"

namespace rauzy {

namespace {

// Both occurrences of some symbol other than `except` lie in `row`.
bool has_doubled_symbol(const std::vector<Symbol>& row, Symbol except) {
    std::array<std::uint8_t, kMaxSymbols + 1> seen{};
    for (Symbol s : row)
        if (s != except && ++seen[s] == 2)
            return true;
    return false;
}

} // namespace

std::optional<Table> r0_prime(const Table& table) {
    const std::size_t l = table.top.size();
    const std::size_t m = table.bottom.size();
    const Symbol a = table.top[l - 1];
    const Symbol b = table.bottom[m - 1];

    // Other occurrence of the last top symbol.
    auto top_it = std::find(table.top.begin(), table.top.end() - 1, a);
    if (top_it != table.top.end() - 1) {
        if (!has_doubled_symbol(table.bottom, b))
            return std::nullopt;
        Table out = table;
        out.bottom.pop_back();
        out.top.insert(out.top.begin() + (top_it - table.top.begin()), b);
        return out;
    }
    auto bottom_it = std::find(table.bottom.begin(), table.bottom.end() - 1, a);
    if (bottom_it == table.bottom.end() - 1)
        return std::nullopt; // a == b: both right ends carry the same symbol
    Table out = table;
    out.bottom.pop_back();
    out.bottom.insert(out.bottom.begin() + (bottom_it - table.bottom.begin()) + 1, b);
    return out;
}

std::optional<Reduction> r0_with_map(const GenPerm& perm) {
    auto t = r0_prime(perm.table());
    if (!t)
        return std::nullopt;
    return reduce_with_map(*t);
}

std::optional<Reduction> r1_with_map(const GenPerm& perm) {
    auto t = r0_prime(row_swap(perm));
    if (!t)
        return std::nullopt;
    return reduce_with_map(row_swap(*t));
}

std::optional<GenPerm> r0(const GenPerm& perm) {
    auto r = r0_with_map(perm);
    if (!r)
        return std::nullopt;
    return std::move(r->perm);
}

std::optional<GenPerm> r1(const GenPerm& perm) {
    auto r = r1_with_map(perm);
    if (!r)
        return std::nullopt;
    return std::move(r->perm);
}

std::optional<GenPerm> apply_move(const GenPerm& perm, Move move) {
    return move == Move::Zero ? r0(perm) : r1(perm);
}

void check_lengths(const GenPerm& perm, const Lengths& lambda) {
    if (lambda.size() != perm.size())
        throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(perm.size()) + " lengths, got " +
                                                      std::to_string(lambda.size()));
    for (const auto& x : lambda)
        if (sgn(x) <= 0)
            throw Error(ErrorCode::InvalidLengths, "lengths must be positive");
    Rational top, bottom;
    for (Symbol s : perm.top())
        top += lambda[s - 1];
    for (Symbol s : perm.bottom())
        bottom += lambda[s - 1];
    if (top != bottom)
        throw Error(ErrorCode::InvalidLengths, "top and bottom rows have different total length");
}

std::optional<Move> classify_step(const GenPerm& perm, const Lengths& lambda) {
    check_lengths(perm, lambda);
    const Symbol a = perm[perm.top_size() - 1];
    const Symbol b = perm[perm.positions() - 1];
    if (a == b)
        return std::nullopt;
    const int c = cmp(lambda[a - 1], lambda[b - 1]);
    if (c == 0)
        return std::nullopt;
    const Move move = c > 0 ? Move::Zero : Move::One;
    if (!apply_move(perm, move))
        return std::nullopt;
    return move;
}

RvStep rv_step(const GenPerm& perm, const std::vector<Complex>& zeta) {
    if (zeta.size() != perm.size())
        throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(perm.size()) + " coordinates");
    const Symbol a = perm[perm.top_size() - 1];
    const Symbol b = perm[perm.positions() - 1];
    if (a == b)
        throw Error(ErrorCode::Halt, "both right ends carry symbol " + std::to_string(a));
    const int c = cmp(zeta[a - 1].re, zeta[b - 1].re);
    if (c == 0)
        throw Error(ErrorCode::Halt, "equal lengths at the right ends");
    const Move move = c > 0 ? Move::Zero : Move::One;
    auto r = move == Move::Zero ? r0_with_map(perm) : r1_with_map(perm);
    if (!r)
        throw Error(ErrorCode::UndefinedMove, std::string("move ") + to_char(move) + " undefined on " + format(perm));

    std::vector<Complex> updated = zeta;
    if (move == Move::Zero)
        updated[a - 1] -= zeta[b - 1];
    else
        updated[b - 1] -= zeta[a - 1];
    std::vector<Complex> out(zeta.size());
    for (std::size_t s = 1; s <= zeta.size(); ++s)
        out[r->relabel[s] - 1] = std::move(updated[s - 1]);
    return {std::move(r->perm), std::move(out), move, std::move(r->relabel)};
}

Trace orbit(const GenPerm& perm, const Lengths& lambda, std::size_t max_steps) {
    check_lengths(perm, lambda);
    Trace trace;
    GenPerm p = perm;
    Lengths x = lambda;
    for (std::size_t step = 0; step < max_steps; ++step) {
        auto move = classify_step(p, x);
        if (!move) {
            trace.records.push_back({step, p, x, std::nullopt});
            trace.halted = true;
            return trace;
        }
        trace.records.push_back({step, p, x, move});
        const Symbol a = p[p.top_size() - 1];
        const Symbol b = p[p.positions() - 1];
        auto r = *move == Move::Zero ? r0_with_map(p) : r1_with_map(p);
        if (*move == Move::Zero)
            x[a - 1] -= x[b - 1];
        else
            x[b - 1] -= x[a - 1];
        Lengths next(x.size());
        for (std::size_t s = 1; s <= x.size(); ++s)
            next[r->relabel[s] - 1] = x[s - 1];
        p = std::move(r->perm);
        x = std::move(next);
    }
    return trace;
}

nlohmann::json to_json(const TraceRecord& record) {
    nlohmann::json lambda = nlohmann::json::array();
    for (const auto& x : record.lambda)
        lambda.push_back(to_string(x));
    nlohmann::json move = record.move ? nlohmann::json(std::string(1, to_char(*record.move))) : nlohmann::json("halt");
    return {{"step", record.step}, {"move", move}, {"perm", format(record.perm)}, {"lambda", lambda}};
}

} // namespace rauzy
