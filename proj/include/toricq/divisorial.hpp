#pragma once

#include "toricq/lp.hpp"
#include "toricq/supportmap.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace toricq {

/// All per-cone systems were feasible, yet the stacked support map failed
/// the strict convexity check.
class IncompleteCriterion : public std::runtime_error {
  public:
    explicit IncompleteCriterion(const std::string& what) : std::runtime_error(what) {}
};

/// Farkas multipliers proving that the system of one maximal cone is infeasible.
struct Refutation {
    std::size_t cone = 0;  ///< canonical maximal-cone index
    RatVector farkas;
};

struct DivisorialityCertificate {
    bool divisorial = false;
    /// Positive answer: a strictly convex support map on the fan.
    std::optional<SupportMap> map;
    /// Negative answer: one refutation per maximal cone whose system is
    /// infeasible, in canonical order.
    std::vector<Refutation> refutations;
};

/**
 * Linear system for one maximal cone sigma: unknowns are one linear form per
 * maximal cone (variable block t*rank .. t*rank+rank-1 for cone t). The forms
 * agree on shared faces, vanish on sigma and are <= -1 on every ray outside
 * sigma.
 */
LPProblem divisor_system(const Quasifan& fan, std::size_t sigma);

/// jobs > 1 solves the per-cone systems concurrently; the result does not
/// depend on it.
DivisorialityCertificate is_divisorial(const Quasifan& fan, unsigned jobs = 1);

/// Re-checks a certificate from scratch; returns the first failing check,
/// or nothing if it verifies.
std::optional<std::string> check_certificate(const Quasifan& fan, const DivisorialityCertificate& cert);

struct QuotientPresentation {
    Quasifan lifted;                  ///< Lambda_h in N x Z^k
    IntMatrix projection;             ///< N x Z^k -> N
    std::vector<IntVector> kernel;    ///< basis of {0} x Z^k
};

QuotientPresentation quotient_presentation(const SupportMap& h);

}  // namespace toricq
