#pragma once

// Rauzy classes and diagrams, membership tests, exhaustive enumeration and
// the per-component class count check.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rauzy/genperm.hpp"
#include "rauzy/induction.hpp"
#include "rauzy/invariants.hpp"
#include "rauzy/options.hpp"

namespace rauzy {

/// Fixed-width key of a reduced table: 4 bits per symbol (d <= 16), plus l.
struct PermKey {
    std::array<std::uint64_t, 2> bits{};
    std::uint8_t top = 0;
    std::uint8_t positions = 0;

    auto operator<=>(const PermKey&) const = default;
};

inline constexpr std::size_t kMaxKeySymbols = 16;

/// Throws Unsupported when d > 16.
PermKey make_key(const GenPerm& perm);
GenPerm from_key(const PermKey& key);

struct PermKeyHash {
    std::size_t operator()(const PermKey& k) const noexcept;
};

struct RauzyDiagram {
    /// Sorted ascending.
    std::vector<GenPerm> vertices;
    /// edges[v][move] = target vertex index, absent when the move is undefined.
    std::vector<std::array<std::optional<std::size_t>, 2>> edges;

    std::size_t size() const { return vertices.size(); }
    std::size_t edge_count() const;
    std::optional<std::size_t> index_of(const GenPerm& perm) const;
};

/// Closure of the seed under the defined Rauzy moves.
/// Throws ReducibleSeed, BudgetExceeded, Unsupported (d > 16).
RauzyDiagram rauzy_class(const GenPerm& seed, const SearchOptions& opts = {});

/// Builds the diagram on a vertex set already known to be a class.
RauzyDiagram diagram_from_vertices(std::vector<GenPerm> vertices);

/// Closure under the Rauzy moves and the central involution (sorted).
std::vector<GenPerm> extended_closure(const GenPerm& seed, const SearchOptions& opts = {});

bool same_class_bfs(const GenPerm& a, const GenPerm& b, const SearchOptions& opts = {});
/// Compares stratum, component label and marked order.
bool same_class_fast(const GenPerm& a, const GenPerm& b, const SearchOptions& opts = {});

/// Every irreducible reduced table with d symbols of the given kind, exactly
/// once, ordered by l and then lexicographically.
std::vector<GenPerm> enumerate_irreducible(std::size_t d, PermKind kind, std::size_t workers = 1);

/// Splits a set of irreducible permutations (closed under the moves) into
/// Rauzy classes, in order of their smallest vertex.
std::vector<RauzyDiagram> partition_into_classes(const std::vector<GenPerm>& perms, const SearchOptions& opts = {});

struct TheoremGroup {
    Stratum stratum;
    ComponentLabel component;
    std::size_t expected = 0; // distinct orders of the stratum
    std::vector<int> marked;  // marked order of each class, ascending
    std::vector<std::size_t> class_sizes;
    bool pass = false;
};

struct StratumSummary {
    Stratum stratum;
    std::size_t components_found = 0;
    std::size_t components_expected = 0;
};

struct TheoremReport {
    std::size_t d = 0;
    PermKind kind = PermKind::Iet;
    std::size_t permutations = 0;
    std::size_t classes = 0;
    std::vector<TheoremGroup> groups;
    std::vector<StratumSummary> strata;
    bool pass = false;
};

/// Throws BudgetExceeded. With `only`, groups of other strata are dropped.
TheoremReport verify_main_theorem(std::size_t d, PermKind kind, const SearchOptions& opts = {},
                                  const std::optional<Stratum>& only = std::nullopt);
TheoremReport verify_stratum(const Stratum& s, const SearchOptions& opts = {});

nlohmann::json to_json(const TheoremReport& report);

/// All Rauzy classes at the seed's d with the seed's stratum and label.
std::vector<RauzyDiagram> extended_class(const GenPerm& seed, const SearchOptions& opts = {});

/// Components of a stratum as extended closures, ordered by smallest vertex.
/// Each entry is the smallest vertex of one component.
std::vector<GenPerm> stratum_components(const Stratum& s, const SearchOptions& opts = {});

std::string export_dot(const RauzyDiagram& diagram);

/// On-disk class cache: one file per (d, kind, seed) listing the vertices.
std::string class_cache_name(const GenPerm& seed);
std::optional<RauzyDiagram> load_class_cache(const std::string& dir, const GenPerm& seed);
/// Throws Io.
void save_class_cache(const std::string& dir, const GenPerm& seed, const RauzyDiagram& diagram);
nlohmann::json to_json(const RauzyDiagram& diagram);

} // namespace rauzy
