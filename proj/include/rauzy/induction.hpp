#pragma once

// Combinatorial Rauzy moves and Rauzy-Veech induction.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rauzy/genperm.hpp"
#include "rauzy/rational.hpp"

namespace rauzy {

/// Zero: the last top interval is the longer one; One: the last bottom interval is.
enum class Move : std::uint8_t { Zero = 0, One = 1 };

inline char to_char(Move m) { return m == Move::Zero ? '0' : '1'; }

/// The intermediate move on a raw table (no renumbering). nullopt when the
/// move is not defined.
std::optional<Table> r0_prime(const Table& table);

/// Rauzy moves with the renumbering map that brings the result back to
/// reduced form. nullopt when undefined.
std::optional<Reduction> r0_with_map(const GenPerm& perm);
std::optional<Reduction> r1_with_map(const GenPerm& perm);

std::optional<GenPerm> r0(const GenPerm& perm);
std::optional<GenPerm> r1(const GenPerm& perm);
std::optional<GenPerm> apply_move(const GenPerm& perm, Move move);

/// Interval lengths indexed by symbol - 1.
using Lengths = std::vector<Rational>;

/// Throws DimensionMismatch or InvalidLengths (nonpositive entry, or the top
/// and bottom rows not having equal total length).
void check_lengths(const GenPerm& perm, const Lengths& lambda);

/// Which move the induction performs on (perm, lambda); nullopt means the
/// induction halts (same symbol at both right ends, equal lengths there, or
/// the required move undefined).
std::optional<Move> classify_step(const GenPerm& perm, const Lengths& lambda);

struct RvStep {
    GenPerm perm;
    std::vector<Complex> zeta;
    Move move;
    std::vector<Symbol> relabel;
};

/// One Rauzy-Veech step on a suspension datum. The move is chosen by the real
/// parts. Throws Halt when they are equal (or the two right ends carry the
/// same symbol) and UndefinedMove when the combinatorial move is missing.
RvStep rv_step(const GenPerm& perm, const std::vector<Complex>& zeta);

struct TraceRecord {
    std::size_t step;
    GenPerm perm;
    Lengths lambda;
    std::optional<Move> move; // nullopt: the orbit halts here
};

struct Trace {
    /// One record per visited state; the last record has no move when the
    /// induction halted, otherwise the budget ran out.
    std::vector<TraceRecord> records;
    bool halted = false;

    std::size_t steps() const { return halted ? records.size() - 1 : records.size(); }
};

Trace orbit(const GenPerm& perm, const Lengths& lambda, std::size_t max_steps);

nlohmann::json to_json(const TraceRecord& record);

} // namespace rauzy
