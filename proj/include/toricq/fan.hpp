#pragma once

#include "toricq/cone.hpp"

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace toricq {

/// Outcome of checking the quasifan axioms on a family of cones.
struct ValidationReport {
    bool valid = true;
    std::string message;
    /// Indices (into the checked family) of the first offending pair.
    std::optional<std::pair<std::size_t, std::size_t>> pair;
};

/// The family generated by `cones` is a quasifan iff every pairwise
/// intersection is a face of both members. Faces are implied.
ValidationReport validate(std::size_t rank, const std::vector<Cone>& cones);

/**
 * Finite face-closed family of cones with pairwise proper intersections.
 *
 * Stored by maximal cones in canonical order; the complete cone list is
 * materialized at construction so the object is immutable afterwards.
 */
class Quasifan {
  public:
    Quasifan() = default;

    /// Quasifan generated by the given cones. Throws InputError naming the
    /// offending pair if the axioms fail.
    static Quasifan from_cones(std::size_t rank, const std::vector<Cone>& cones);
    /// Fan of faces of a single cone.
    static Quasifan face_fan(const Cone& c);
    /// Faces of one cone always meet properly, so only the face property is checked.
    static Quasifan from_faces(const Cone& c, const std::vector<Cone>& cones);

    std::size_t rank() const { return rank_; }
    const std::vector<Cone>& maximal_cones() const { return maximal_; }
    /// Every cone, canonical order.
    const std::vector<Cone>& cones() const { return all_; }
    /// Common lineality space (the minimal cone).
    const Cone& minimal_cone() const { return minimal_; }
    bool is_fan() const { return minimal_.is_zero(); }

    bool has_cone(const Cone& c) const;
    /// Index of the first maximal cone containing c, if any.
    std::optional<std::size_t> maximal_containing(const Cone& c) const;
    /// Smallest member containing c, if c lies in some member.
    std::optional<Cone> minimal_cone_containing(const Cone& c) const;
    bool support_contains(std::span<const Rational> x) const;
    /// Distinct rays of all cones (pointed parts), canonical order.
    std::vector<IntVector> rays() const;

    friend bool operator==(const Quasifan& a, const Quasifan& b) {
        return a.rank_ == b.rank_ && a.maximal_ == b.maximal_;
    }
    friend std::strong_ordering operator<=>(const Quasifan& a, const Quasifan& b);

  private:
    static Quasifan assemble(std::size_t rank, const std::vector<Cone>& cones);

    std::size_t rank_ = 0;
    std::vector<Cone> maximal_;
    std::vector<Cone> all_;
    Cone minimal_;
};

struct QuotientFan {
    IntMatrix projection;  ///< N -> N / N_0
    Quasifan fan;
};

/// Quotient by the minimal cone; the result is a fan.
QuotientFan quotient_fan(const Quasifan& q);

/// Every cone of `fine` lies in some cone of `coarse`.
bool refines(const Quasifan& fine, const Quasifan& coarse);

/// m maps each cone of source into some cone of target.
bool check_fan_map(const IntMatrix& m, const Quasifan& source, const Quasifan& target);

/// Cones sigma /\ span(L) in the coordinates of the basis L (rows). L must be
/// saturated. Throws InputError if the induced family is not a quasifan.
Quasifan induced_fan_on_sublattice(const Quasifan& q, const std::vector<IntVector>& basis);

Quasifan product_fan(const Quasifan& a, const Quasifan& b);

/// Face closure of the given member cones.
Quasifan subfan_generated_by(const Quasifan& q, const std::vector<Cone>& cones);

std::string to_string(const Quasifan& q);

}  // namespace toricq
