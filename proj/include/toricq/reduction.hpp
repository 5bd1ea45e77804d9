#pragma once

#include "toricq/divisorial.hpp"
#include "toricq/fanmap.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace toricq {

inline constexpr std::size_t default_cap = 100000;

/// The coarsening search visited more candidate families than allowed.
class CapExceeded : public std::runtime_error {
  public:
    CapExceeded(std::size_t cap, std::size_t count)
        : std::runtime_error("coarsening enumeration exceeded the cap of " + std::to_string(cap) + " candidates (reached " +
                             std::to_string(count) + ")"),
          cap(cap), count(count) {}
    std::size_t cap, count;
};

/// A quasifan Sigma = Sigma_h for a verified convex support map h on the fan.
struct Coarsening {
    Quasifan sigma;
    QuotientFan quotient;   ///< F_Sigma and the quotient fan of Sigma
    SupportMap quotient_map;  ///< strictly convex on quotient.fan
    SupportMap map;           ///< pulled back to the fan; Sigma_h == sigma
};

/**
 * Quasifans Sigma refined by the fan whose cones are generated by fan cones,
 * and whose maximal cones each contain the relative interior of some fan
 * cone (the filled graph is minimal, so every Sigma_h has this property).
 * Canonical order. Throws CapExceeded rather than truncating.
 */
std::vector<Quasifan> enumerate_coarsenings(const Quasifan& fan, std::size_t cap = default_cap);

struct RealizableCoarsenings {
    std::vector<Coarsening> coarsenings;
    /// Candidates dropped because verification failed after feasible LPs.
    std::vector<std::string> warnings;
};

RealizableCoarsenings realizable_coarsenings(const Quasifan& fan, std::size_t cap = default_cap, unsigned jobs = 1);

struct ReductionResult {
    FanMap map;                        ///< R: fan -> tdr target, N -> N'
    std::vector<IntVector> lattice;    ///< basis of N' inside the direct sum of the N_i
    std::vector<Coarsening> coarsenings;
    std::vector<IntMatrix> factorizations;  ///< G_i: N' -> N_i with G_i R = F_i
    bool surjective = false;
    std::optional<Cone> obstruction;
    std::vector<std::string> warnings;
};

/// Toric divisorial reduction of a fan.
ReductionResult tdr(const Quasifan& fan, std::size_t cap = default_cap, unsigned jobs = 1);

}  // namespace toricq
