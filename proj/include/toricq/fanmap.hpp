#pragma once

#include "toricq/fan.hpp"

#include <optional>

namespace toricq {

/// Lattice homomorphism mapping every cone of source into a cone of target.
struct FanMap {
    IntMatrix matrix;
    Quasifan source;
    Quasifan target;

    /// Throws InputError unless matrix is a map of the two quasifans.
    static FanMap make(IntMatrix matrix, Quasifan source, Quasifan target);
    static FanMap identity(const Quasifan& q);
};

/// second o first
FanMap compose(const FanMap& first, const FanMap& second);

struct Surjectivity {
    bool surjective = false;
    /// Least target cone (canonical order) that is hit by no orbit.
    std::optional<Cone> obstruction;
};

/**
 * Orbit criterion: every target cone tau must be the minimal cone over F(sigma)
 * for some source cone sigma, and F(N_Q) + span(tau) must be everything.
 */
Surjectivity morphism_surjective(const FanMap& f);

}  // namespace toricq
