#pragma once

#include "toricq/exactlinalg.hpp"

#include <vector>

namespace toricq {

enum class Sense { LessEqual, Equal };

/** Feasibility problem A x (<= or =) b over free rational variables x. */
struct LPProblem {
    RatMatrix a;
    RatVector b;
    std::vector<Sense> sense;

    std::size_t variables() const { return a.cols(); }
    std::size_t constraints() const { return a.rows(); }

    void add_row(const RatVector& row, Rational rhs, Sense s);
};

struct LPResult {
    bool feasible = false;
    /// Satisfies every constraint exactly when feasible.
    RatVector witness;
    /// When infeasible: multipliers y with y_i >= 0 on <= rows, y^T A = 0 and y^T b = -1.
    RatVector farkas;
};

/**
 * Decides feasibility with a phase-one simplex in exact arithmetic using
 * Bland's rule. Every returned witness or Farkas certificate is re-checked
 * before it is returned.
 */
LPResult lp_feasible(const LPProblem& p);

bool verify_witness(const LPProblem& p, const RatVector& x);
bool verify_farkas(const LPProblem& p, const RatVector& y);

}  // namespace toricq
