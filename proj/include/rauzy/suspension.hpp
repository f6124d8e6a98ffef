#pragma once

// Suspension data over generalized permutations and the polygon they define.
//
// A suspension datum is a vector zeta (indexed by symbol - 1) of complex
// numbers with exact rational parts such that
//   (1) Re zeta_k > 0 for every symbol k,
//   (2) every proper prefix of the top row has positive imaginary sum,
//   (3) every proper prefix of the bottom row has negative imaginary sum,
//   (4) the top row and the bottom row have equal sums.
// The real and imaginary parts decouple, and both systems are homogeneous,
// so strict inequalities can be normalized to ">= 1".

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rauzy/genperm.hpp"
#include "rauzy/rational.hpp"

namespace rauzy {

using SuspensionDatum = std::vector<Complex>;

/// Exact check of conditions (1)-(4). Throws DimensionMismatch.
bool check_suspension(const GenPerm& perm, const SuspensionDatum& zeta);

/// Positive lengths with equal row totals, or nullopt. Closed form: symbols
/// doubled in the top row get the number of bottom-doubled symbols and vice
/// versa; every other symbol gets 1.
std::optional<std::vector<Rational>> solve_lengths(const GenPerm& perm);

/// Heights satisfying (2)-(4) with margin 1, optionally also requiring the
/// common row total to vanish ("balanced": the polygon's right corner then
/// lies on the real axis). Solved by exact simplex.
std::optional<std::vector<Rational>> solve_heights(const GenPerm& perm, bool balanced);

/// Deterministic witness, or nullopt when the permutation is reducible.
/// A balanced witness is returned whenever one exists.
std::optional<SuspensionDatum> find_suspension(const GenPerm& perm);

/// Another valid datum obtained by a seeded random perturbation of `zeta`
/// inside the solution cone. Balanced input yields balanced output.
SuspensionDatum perturb_suspension(const GenPerm& perm, const SuspensionDatum& zeta, std::uint64_t seed);

bool is_balanced(const GenPerm& perm, const SuspensionDatum& zeta);

enum class Gluing { Translation, HalfTurn };

std::string_view to_string(Gluing g);

/// The polygon bounded by the broken lines of the two rows.
///
/// Vertices are listed counterclockwise starting at the shared left end:
/// the bottom line left to right, then the top line right to left. Edge k
/// joins vertex k to vertex k + 1 (mod n).
struct SuspensionPolygon {
    struct Edge {
        Symbol symbol;
        std::size_t position; // position in the table (top row first)
        bool top;
    };
    struct Pair {
        std::size_t first;  // edge indices, first < second
        std::size_t second;
        Gluing gluing;
    };

    std::vector<Complex> vertices;
    std::vector<Edge> edges;
    std::vector<Pair> pairs;
    std::size_t right_corner = 0; // vertex index of the shared right end

    std::size_t size() const { return vertices.size(); }
};

/// Throws InvalidSuspension when check_suspension fails.
SuspensionPolygon build_polygon(const GenPerm& perm, const SuspensionDatum& zeta);

struct CornerClass {
    std::vector<std::size_t> corners; // vertex indices, in rotation order
    std::size_t angle = 0;            // total cone angle in units of pi
};

struct GeometricProfile {
    std::vector<CornerClass> classes;
    std::size_t marked = 0; // index into classes; contains the left corner

    /// Sorted multiset of cone angles in units of pi.
    std::vector<std::size_t> angles() const;
};

/// Identifies polygon corners by walking around each vertex of the glued
/// surface (cross the glued edge, continue with the next sector) and sums the
/// sector angles. Throws InvalidSuspension if a sum is not a multiple of pi.
GeometricProfile geometric_profile(const SuspensionPolygon& poly);

nlohmann::json to_json(const SuspensionPolygon& poly);
std::string to_svg(const SuspensionPolygon& poly);

nlohmann::json to_json(const SuspensionDatum& zeta);
SuspensionDatum suspension_from_json(const nlohmann::json& j);

} // namespace rauzy
