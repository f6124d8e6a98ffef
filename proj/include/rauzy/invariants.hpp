#pragma once

// Singularity data, strata, spin parity, hyperellipticity and component labels.

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rauzy/genperm.hpp"
#include "rauzy/options.hpp"

namespace rauzy {

enum class StratumKind { Abelian, Quadratic };

/// A stratum H(...) or Q(...). Orders are kept in ascending order.
/// Abelian orders are degrees (cone angle (k+1)2pi), quadratic ones are
/// orders (cone angle (k+2)pi).
struct Stratum {
    StratumKind kind = StratumKind::Abelian;
    std::vector<int> orders;

    /// Throws Parse when the orders do not give an integer genus.
    static Stratum make(StratumKind kind, std::vector<int> orders);

    int genus() const;
    std::size_t singularities() const { return orders.size(); }
    /// Number of distinct orders, 0 included.
    std::size_t distinct_orders() const;
    /// 2g + s - 1: the number of symbols of any permutation in the stratum.
    std::size_t dimension() const;
    /// Orders with the marked points (order 0) removed.
    std::vector<int> nonzero_orders() const;

    auto operator<=>(const Stratum&) const = default;
};

/// "H(2,0)" (degrees descending) or "Q(-1,9)" (orders ascending).
std::string format(const Stratum& s);
Stratum parse_stratum(std::string_view text);

enum class ComponentLabel { Unique, Hyperelliptic, EvenSpin, OddSpin, NonHyperelliptic, ExceptionalA, ExceptionalB };

std::string_view to_string(ComponentLabel label);

struct SingularityProfile {
    std::vector<int> orders; // ascending
    int marked = 0;          // order of the singularity at the left end
};

/// Corner cycles of the gluing pattern; no suspension datum is used.
/// Throws Reducible.
SingularityProfile singularity_profile(const GenPerm& perm);
/// Same without the irreducibility check (the caller guarantees it).
SingularityProfile singularity_profile_unchecked(const GenPerm& perm);

/// Throws Reducible. Aborts with std::logic_error if the orders give a
/// fractional genus or d != 2g + s - 1.
Stratum stratum(const GenPerm& perm);
Stratum stratum_unchecked(const GenPerm& perm);

/// 0 (even) or 1 (odd). Throws NotAbelian, OddDegreePresent, Reducible.
int spin_parity(const GenPerm& perm);

/// Throws Reducible; Unsupported for strata with marked points where no
/// decision procedure is implemented; BudgetExceeded.
bool is_hyperelliptic_component(const GenPerm& perm, const SearchOptions& opts = {});

/// Throws Reducible, Unsupported, BudgetExceeded.
ComponentLabel component_label(const GenPerm& perm, const SearchOptions& opts = {});

/// The stratum holds a hyperelliptic component according to the known list.
bool has_hyperelliptic_component(const Stratum& s);
/// Number of connected components of the stratum (marked points ignored).
std::size_t component_count(const Stratum& s);

/// A table fixed by the central involution whose induced rotation of the
/// surface has 2g + 2 fixed points and fixes exactly the singularities that
/// the hyperelliptic involution of the stratum fixes.
bool is_hyperelliptic_symmetric(const GenPerm& perm, const Stratum& s);

struct InvariantReport {
    Stratum stratum;
    int genus = 0;
    int marked = 0;
    ComponentLabel component = ComponentLabel::Unique;
};

InvariantReport invariant_report(const GenPerm& perm, const SearchOptions& opts = {});
nlohmann::json to_json(const InvariantReport& report);

} // namespace rauzy
