#pragma once

// Exact feasibility of linear systems over the rationals.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rauzy/rational.hpp"

namespace rauzy::lp {

enum class Relation { GreaterEq, Equal };

struct Constraint {
    std::vector<Rational> coeffs;
    Relation relation = Relation::GreaterEq;
    Rational rhs;
};

/// Finds x (all variables free) with every constraint satisfied, or nullopt.
/// Free variables are eliminated by Gauss-Jordan pivoting first; the residual
/// nonnegative system is solved by a phase-one simplex with Bland's rule, so
/// the returned vertex is a deterministic function of the input.
std::optional<std::vector<Rational>> find_feasible(std::size_t num_vars, std::span<const Constraint> constraints);

} // namespace rauzy::lp
