#include "rauzy/genperm.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "rauzy/error.hpp"

namespace rauzy {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::EmptyRow: return "EmptyRow";
    case ErrorCode::NotTwoToOne: return "NotTwoToOne";
    case ErrorCode::NotReduced: return "NotReduced";
    case ErrorCode::TooManySymbols: return "TooManySymbols";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::Reducible: return "Reducible";
    case ErrorCode::ReducibleSeed: return "ReducibleSeed";
    case ErrorCode::InvalidSuspension: return "InvalidSuspension";
    case ErrorCode::InvalidLengths: return "InvalidLengths";
    case ErrorCode::Halt: return "Halt";
    case ErrorCode::UndefinedMove: return "UndefinedMove";
    case ErrorCode::OddDegreePresent: return "OddDegreePresent";
    case ErrorCode::NotAbelian: return "NotAbelian";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::Io: return "IoError";
    }
    return "Unknown";
}

std::string_view to_string(PermKind kind) {
    return kind == PermKind::Iet ? "iet" : "quad";
}

PermKind parse_kind(std::string_view text) {
    if (text == "iet" || text == "Iet" || text == "abelian")
        return PermKind::Iet;
    if (text == "quad" || text == "Quadratic" || text == "quadratic")
        return PermKind::Quadratic;
    throw Error(ErrorCode::Parse, "unknown kind '" + std::string(text) + "'");
}

void validate_table(const Table& table) {
    if (table.top.empty() || table.bottom.empty())
        throw Error(ErrorCode::EmptyRow, "both rows must be nonempty");
    const std::size_t n = table.top.size() + table.bottom.size();
    if (n % 2 != 0)
        throw Error(ErrorCode::NotTwoToOne, "odd number of positions");
    const std::size_t d = n / 2;
    if (d > kMaxSymbols)
        throw Error(ErrorCode::TooManySymbols, "at most " + std::to_string(kMaxSymbols) + " symbols");
    std::vector<int> count(d + 1, 0);
    auto tally = [&](Symbol s) {
        if (s < 1 || s > d)
            throw Error(ErrorCode::NotTwoToOne, "symbol " + std::to_string(s) + " outside 1.." + std::to_string(d));
        ++count[s];
    };
    std::ranges::for_each(table.top, tally);
    std::ranges::for_each(table.bottom, tally);
    for (std::size_t k = 1; k <= d; ++k)
        if (count[k] != 2)
            throw Error(ErrorCode::NotTwoToOne,
                        "symbol " + std::to_string(k) + " occurs " + std::to_string(count[k]) + " times");
}

GenPerm::GenPerm(std::span<const Symbol> top, std::span<const Symbol> bottom) {
    Table t{{top.begin(), top.end()}, {bottom.begin(), bottom.end()}};
    validate_table(t);
    l_ = top.size();
    seq_.reserve(t.top.size() + t.bottom.size());
    seq_.insert(seq_.end(), t.top.begin(), t.top.end());
    seq_.insert(seq_.end(), t.bottom.begin(), t.bottom.end());

    Symbol next = 1;
    for (Symbol s : seq_) {
        if (s == next)
            ++next;
        else if (s > next)
            throw Error(ErrorCode::NotReduced, "symbol " + std::to_string(s) + " appears before " +
                                                   std::to_string(next) + " in " + format(t));
    }

    twin_.assign(seq_.size(), 0);
    std::vector<int> first(size() + 1, -1);
    for (std::size_t i = 0; i < seq_.size(); ++i) {
        int& f = first[seq_[i]];
        if (f < 0) {
            f = static_cast<int>(i);
        } else {
            twin_[i] = static_cast<std::uint8_t>(f);
            twin_[static_cast<std::size_t>(f)] = static_cast<std::uint8_t>(i);
        }
    }
}

std::pair<std::size_t, std::size_t> GenPerm::occurrences(Symbol s) const noexcept {
    for (std::size_t i = 0; i < seq_.size(); ++i)
        if (seq_[i] == s)
            return {i, twin_[i]};
    return {0, 0};
}

PermKind GenPerm::kind() const noexcept {
    for (std::size_t i = 0; i < l_; ++i)
        if (twin_[i] < l_)
            return PermKind::Quadratic;
    return PermKind::Iet;
}

Table GenPerm::table() const {
    auto t = top();
    auto b = bottom();
    return {{t.begin(), t.end()}, {b.begin(), b.end()}};
}

Reduction reduce_with_map(const Table& table) {
    validate_table(table);
    const std::size_t d = (table.top.size() + table.bottom.size()) / 2;
    std::vector<Symbol> relabel(d + 1, 0);
    Symbol next = 1;
    auto assign = [&](Symbol s) {
        if (relabel[s] == 0)
            relabel[s] = next++;
    };
    std::ranges::for_each(table.top, assign);
    std::ranges::for_each(table.bottom, assign);

    Table out;
    out.top.reserve(table.top.size());
    out.bottom.reserve(table.bottom.size());
    for (Symbol s : table.top)
        out.top.push_back(relabel[s]);
    for (Symbol s : table.bottom)
        out.bottom.push_back(relabel[s]);
    return {GenPerm(out), std::move(relabel)};
}

GenPerm reduce(const Table& table) { return reduce_with_map(table).perm; }

Table row_swap(const Table& table) { return {table.bottom, table.top}; }

Table row_swap(const GenPerm& perm) { return row_swap(perm.table()); }

GenPerm central_involution(const GenPerm& perm) {
    Table t = perm.table();
    std::ranges::reverse(t.top);
    std::ranges::reverse(t.bottom);
    return reduce(row_swap(t));
}

namespace {

std::vector<Symbol> parse_row(std::string_view row) {
    std::vector<Symbol> out;
    std::size_t i = 0;
    while (i < row.size()) {
        while (i < row.size() && (row[i] == ' ' || row[i] == '\t'))
            ++i;
        if (i == row.size())
            break;
        unsigned value = 0;
        auto [ptr, ec] = std::from_chars(row.data() + i, row.data() + row.size(), value);
        if (ec != std::errc{} || (ptr != row.data() + row.size() && *ptr != ' ' && *ptr != '\t'))
            throw Error(ErrorCode::Parse, "bad symbol in row '" + std::string(row) + "'");
        if (value == 0 || value > kMaxSymbols)
            throw Error(ErrorCode::NotTwoToOne, "symbol " + std::to_string(value) + " out of range");
        out.push_back(static_cast<Symbol>(value));
        i = static_cast<std::size_t>(ptr - row.data());
    }
    return out;
}

} // namespace

Table parse_table(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos || text.find('/', slash + 1) != std::string_view::npos)
        throw Error(ErrorCode::Parse, "expected exactly one '/' in '" + std::string(text) + "'");
    Table t{parse_row(text.substr(0, slash)), parse_row(text.substr(slash + 1))};
    validate_table(t);
    return t;
}

GenPerm parse(std::string_view text) { return GenPerm(parse_table(text)); }

std::string format(const Table& table) {
    std::string out;
    auto row = [&out](const std::vector<Symbol>& r) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i)
                out += ' ';
            out += std::to_string(r[i]);
        }
    };
    row(table.top);
    out += " / ";
    row(table.bottom);
    return out;
}

std::string format(const GenPerm& perm) { return format(perm.table()); }

void to_json(nlohmann::json& j, const GenPerm& perm) {
    auto t = perm.table();
    j = nlohmann::json{{"top", t.top}, {"bottom", t.bottom}};
}

void from_json(const nlohmann::json& j, Table& table) {
    try {
        table.top = j.at("top").get<std::vector<Symbol>>();
        table.bottom = j.at("bottom").get<std::vector<Symbol>>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Parse, e.what());
    }
}

GenPerm perm_from_json(const nlohmann::json& j) { return GenPerm(j.get<Table>()); }

} // namespace rauzy
