#pragma once

// Permutations and generalized permutations in two-row table notation.
//
// A generalized permutation of type (l, m) is a two-to-one labeling of
// l + m = 2d positions by the symbols 1..d. The positions 0..l-1 form the
// top row and l..l+m-1 the bottom row. A GenPerm is always *reduced*: the
// first occurrence of symbol k precedes the first occurrence of every k' > k
// when the top row is scanned before the bottom row. Ordinary permutations
// (interval exchanges) are the case where every symbol occurs once per row.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace rauzy {

using Symbol = std::uint8_t;

enum class PermKind { Iet, Quadratic };

std::string_view to_string(PermKind kind);
PermKind parse_kind(std::string_view text);

/// Raw two-row table. Not necessarily reduced; used for intermediate results
/// such as a row exchange or the unreduced output of a Rauzy move.
struct Table {
    std::vector<Symbol> top;
    std::vector<Symbol> bottom;

    bool operator==(const Table&) const = default;
};

class GenPerm {
public:
    /// Validates that the rows are a reduced two-to-one labeling.
    /// Throws Error{EmptyRow | NotTwoToOne | NotReduced | TooManySymbols}.
    GenPerm(std::span<const Symbol> top, std::span<const Symbol> bottom);
    explicit GenPerm(const Table& table) : GenPerm(table.top, table.bottom) {}

    std::size_t size() const noexcept { return seq_.size() / 2; }
    std::size_t top_size() const noexcept { return l_; }
    std::size_t bottom_size() const noexcept { return seq_.size() - l_; }
    std::size_t positions() const noexcept { return seq_.size(); }

    std::span<const Symbol> top() const noexcept { return {seq_.data(), l_}; }
    std::span<const Symbol> bottom() const noexcept { return {seq_.data() + l_, seq_.size() - l_}; }
    std::span<const Symbol> sequence() const noexcept { return seq_; }

    Symbol operator[](std::size_t pos) const noexcept { return seq_[pos]; }
    bool in_top(std::size_t pos) const noexcept { return pos < l_; }

    /// The position != pos carrying the same symbol.
    std::size_t other_occurrence(std::size_t pos) const noexcept { return twin_[pos]; }

    /// Both positions of a symbol, in increasing order.
    std::pair<std::size_t, std::size_t> occurrences(Symbol s) const noexcept;

    PermKind kind() const noexcept;

    Table table() const;

    bool operator==(const GenPerm& other) const noexcept {
        return l_ == other.l_ && seq_ == other.seq_;
    }
    std::strong_ordering operator<=>(const GenPerm& other) const noexcept {
        if (auto c = seq_ <=> other.seq_; c != 0)
            return c;
        return l_ <=> other.l_;
    }

private:
    std::vector<Symbol> seq_;
    std::vector<std::uint8_t> twin_;
    std::size_t l_ = 0;
};

/// Largest supported symbol count.
inline constexpr std::size_t kMaxSymbols = 64;

/// Checks the two-to-one property of a raw table (without requiring reduction).
void validate_table(const Table& table);

/// Reduction together with the relabeling it applied: relabel[old] = new.
struct Reduction {
    GenPerm perm;
    std::vector<Symbol> relabel;
};

/// Relabels symbols in order of first occurrence (top row first).
Reduction reduce_with_map(const Table& table);
GenPerm reduce(const Table& table);

Table row_swap(const Table& table);
Table row_swap(const GenPerm& perm);

/// Half-turn of the table: each row is reversed and the rows are exchanged.
GenPerm central_involution(const GenPerm& perm);

/// Parses "1 2 3 2 4 / 4 5 1 3 5". Non-reduced input is rejected.
GenPerm parse(std::string_view text);
/// Same notation, but any two-to-one table is accepted.
Table parse_table(std::string_view text);

std::string format(const GenPerm& perm);
std::string format(const Table& table);

/// Decides whether a GenPerm admits a suspension datum (see suspension.hpp).
bool is_irreducible(const GenPerm& perm);

void to_json(nlohmann::json& j, const GenPerm& perm);
void from_json(const nlohmann::json& j, Table& table);
GenPerm perm_from_json(const nlohmann::json& j);

} // namespace rauzy
