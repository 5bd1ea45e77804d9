#pragma once

#include "toricq/fanmap.hpp"
#include "toricq/reduction.hpp"

#include <optional>
#include <random>
#include <vector>

namespace toricq {

/**
 * Toric quotient of a fan by the subtorus with cocharacter lattice H.
 *
 * In N/H, among all quasifans whose cones are generated by images P(tau)
 * and contain every image, the finest one is found (it refines every other);
 * it is then divided by its minimal cone.
 */
struct ToricQuotient {
    IntMatrix projection;  ///< P: N -> N/H
    Quasifan merged;       ///< finest image quasifan in N/H
    FanMap map;            ///< fan -> quotient fan of `merged`
};

/// H must be a saturated, linearly independent basis (possibly empty).
/// `order` shuffles the search; the answer does not depend on it.
ToricQuotient toric_quotient(const Quasifan& fan, const std::vector<IntVector>& h, std::mt19937* order = nullptr,
                             std::size_t cap = default_cap);

/**
 * Greedy rule: while two cones meet in a non-face of either, replace them by
 * the cone they generate. Always ends in a valid quasifan, but which one
 * depends on the order (see tests); toric_quotient refines every outcome.
 */
Quasifan pairwise_merge_fixpoint(std::size_t rank, std::vector<Cone> family, std::mt19937* order = nullptr);

struct ReductionDecision {
    bool exists = false;
    ReductionResult reduction;
};

ReductionDecision divisorial_reduction_exists(const Quasifan& fan, std::size_t cap = default_cap, unsigned jobs = 1);

struct QuotientDecision {
    ToricQuotient quotient;     ///< p
    ReductionResult reduction;  ///< q, on the target of p
    FanMap composed;            ///< q o p
    bool exists = false;
    /// Least cone of the composed target missed by every orbit, when !exists.
    std::optional<Cone> obstruction;
    /// The fan itself is divisorial, so a positive answer is a categorical quotient.
    bool source_divisorial = false;
};

QuotientDecision decide_categorical_quotient(const Quasifan& fan, const std::vector<IntVector>& h,
                                             std::size_t cap = default_cap, unsigned jobs = 1);

}  // namespace toricq
