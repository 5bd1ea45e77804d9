#pragma once

#include "toricq/fan.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace toricq {

/**
 * Map |source| -> Q^k that is linear on every cone.
 *
 * Stored as one k x rank rational matrix per maximal cone of the source, in
 * the source's canonical maximal-cone order. Construction checks that
 * neighbouring matrices agree on the generators of each pairwise intersection.
 */
class SupportMap {
  public:
    SupportMap() = default;
    SupportMap(Quasifan source, std::size_t k, std::vector<RatMatrix> matrices);

    /// Matrices given for an arbitrary list of member cones (maximal ones
    /// included); each maximal cone takes the matrix of the listed cone equal
    /// to it, and every other listed cone must agree with it.
    static SupportMap from_cone_matrices(Quasifan source, std::size_t k,
                                         const std::vector<std::pair<Cone, RatMatrix>>& data);
    static SupportMap zero(Quasifan source, std::size_t k);

    const Quasifan& source() const { return source_; }
    std::size_t k() const { return k_; }
    const std::vector<RatMatrix>& matrices() const { return matrices_; }

    /// h(x); throws InputError outside the support.
    RatVector value(std::span<const Rational> x) const;
    /// (x, h(x)) for x in the given maximal cone, scaled to a primitive integer vector.
    IntVector lift(std::size_t maximal_index, std::span<const Integer> x) const;
    /// Image of a maximal cone in N x Z^k.
    Cone lifted_cone(std::size_t maximal_index) const;

  private:
    Quasifan source_;
    std::size_t k_ = 0;
    std::vector<RatMatrix> matrices_;
};

/// Everything derived from the graph of h, computed together.
struct SupportMapAnalysis {
    Cone graph_cone;             ///< gamma in N x Z^k
    Quasifan filled_graph;       ///< Lambda_h
    bool convex = false;
    std::optional<Quasifan> associated;  ///< Sigma_h, when convex
    bool strictly_convex = false;
    /// For non-convex maps: the pair of filled-graph cones on which the
    /// projection is not injective, and two distinct points with equal image.
    std::string obstruction;
};

SupportMapAnalysis analyze(const SupportMap& h);

Cone graph_cone(const SupportMap& h);
Quasifan filled_graph(const SupportMap& h);
bool is_convex(const SupportMap& h);
/// Throws InputError if h is not convex.
Quasifan associated_quasifan(const SupportMap& h);
bool is_strictly_convex(const SupportMap& h);

/// h' o F on `source`; throws InputError unless F maps source into h'.source().
SupportMap pullback(const SupportMap& target_map, const IntMatrix& f, const Quasifan& source);

struct Descent {
    IntMatrix projection;  ///< N -> N / N_0
    SupportMap map;        ///< strictly convex on the quotient fan
};

/// Pushes a strictly convex map on a quasifan down to its quotient fan.
Descent descend_to_quotient_fan(const SupportMap& h);

}  // namespace toricq
