#pragma once

#include "toricq/exactlinalg.hpp"

#include <compare>
#include <string>
#include <vector>

namespace toricq {

/**
 * Rational polyhedral cone in Q^rank, not necessarily pointed.
 *
 * Stored in canonical form: the lineality space as a saturated HNF lattice
 * basis, and the pointed part as primitive ray representatives orthogonal to
 * the lineality space, sorted by `canonical_less`. Both descriptions (rays
 * and facet inequalities) are computed eagerly at construction, so a Cone is
 * an immutable value.
 */
class Cone {
  public:
    /// Zero cone in Q^0.
    Cone() = default;

    static Cone zero(std::size_t rank);
    static Cone from_generators(std::size_t rank, const std::vector<IntVector>& generators);
    static Cone from_generators(std::size_t rank, const std::vector<RatVector>& generators);
    /// {x : f.x >= 0 for f in inequalities, e.x = 0 for e in equations}
    static Cone from_inequalities(std::size_t rank, const std::vector<IntVector>& inequalities,
                                  const std::vector<IntVector>& equations = {});

    std::size_t rank() const { return rank_; }
    std::size_t dim() const { return dim_; }
    const std::vector<IntVector>& rays() const { return rays_; }
    const std::vector<IntVector>& lineality() const { return lineality_; }
    /// Facet normals, as some representatives modulo the equations.
    const std::vector<IntVector>& facets() const { return facets_; }
    /// Saturated basis of the orthogonal complement of the linear span.
    const std::vector<IntVector>& equations() const { return equations_; }
    /// Rays together with +/- each lineality basis vector.
    std::vector<IntVector> generators() const;
    /// Basis of the linear span (rays and lineality, independent subset).
    std::vector<IntVector> span_basis() const;

    bool is_pointed() const { return lineality_.empty(); }
    bool is_zero() const { return dim_ == 0; }
    bool is_linear_subspace() const { return rays_.empty(); }

    bool contains(std::span<const Integer> x) const;
    bool contains(std::span<const Rational> x) const;
    bool contains(const Cone& other) const;
    /// x lies in the relative interior.
    bool relative_interior_contains(std::span<const Rational> x) const;

    /// Sum of the rays; lies in the relative interior.
    RatVector relative_interior_point() const;

    friend bool operator==(const Cone& a, const Cone& b) {
        return a.rank_ == b.rank_ && a.rays_ == b.rays_ && a.lineality_ == b.lineality_;
    }
    /// Canonical order: lexicographic on the sorted ray lists, then lineality.
    friend std::strong_ordering operator<=>(const Cone& a, const Cone& b);

    friend std::vector<Cone> faces(const Cone& c);
    friend Cone minimal_face_containing(const Cone& c, const Cone& s);

  private:
    static Cone from_dd(std::size_t rank, std::vector<IntVector> lineality, std::vector<IntVector> rays);
    static Cone assemble(std::size_t rank, const std::vector<IntVector>& lineality, const std::vector<IntVector>& rays,
                         const std::vector<IntVector>& equations, const std::vector<IntVector>& facets);
    /// Face of c spanned by some of its rays.
    static Cone face_from_rays(const Cone& c, std::vector<IntVector> rays);

    std::size_t rank_ = 0;
    std::size_t dim_ = 0;
    std::vector<IntVector> rays_;
    std::vector<IntVector> lineality_;
    std::vector<IntVector> facets_;
    std::vector<IntVector> equations_;
};

/// All faces, from the lineality space up to the cone itself, in canonical order.
std::vector<Cone> faces(const Cone& c);

/// Smallest face of c containing s. Throws InputError if s is not contained in c.
Cone minimal_face_containing(const Cone& c, const Cone& s);
Cone minimal_face_containing(const Cone& c, std::span<const Rational> point);

Cone intersect(const Cone& a, const Cone& b);
/// Image under the linear map x -> m x.
Cone image(const Cone& c, const IntMatrix& m);
/// Cone generated by the union of both cones.
Cone join(const Cone& a, const Cone& b);
bool is_face_of(const Cone& f, const Cone& c);
/// Set equality by mutual inclusion.
bool same_set(const Cone& a, const Cone& b);

std::string to_string(const Cone& c);

}  // namespace toricq
