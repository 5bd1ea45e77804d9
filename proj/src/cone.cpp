#include "toricq/cone.hpp"

#include "double_description.hpp"

#include <algorithm>
#include <boost/dynamic_bitset.hpp>
#include <set>
#include <sstream>

namespace toricq {

namespace {

// Orthogonal projection onto the complement of span(basis).
class ComplementProjector {
  public:
    ComplementProjector(const std::vector<IntVector>& basis, std::size_t dim) : basis_(basis), dim_(dim) {
        const std::size_t k = basis.size();
        if (k == 0) return;
        // solve (B B^T) X = B for X = (B B^T)^{-1} B
        RatMatrix aug(k, k + dim);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) aug(i, j) = dot(basis[i], basis[j]);
            for (std::size_t j = 0; j < dim; ++j) aug(i, k + j) = basis[i][j];
        }
        const RatMatrix r = rref(aug);
        coeff_ = RatMatrix(k, dim);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < dim; ++j) coeff_(i, j) = r(i, k + j);
    }

    IntVector project(std::span<const Integer> v) const {
        if (basis_.empty()) return IntVector(v.begin(), v.end());
        RatVector w = to_rational(v);
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            const Rational c = dot(coeff_.row(i), v);
            if (c == 0) continue;
            for (std::size_t j = 0; j < dim_; ++j) w[j] -= c * basis_[i][j];
        }
        return primitive(std::span<const Rational>(w));
    }

  private:
    const std::vector<IntVector>& basis_;
    std::size_t dim_;
    RatMatrix coeff_;
};

void sort_unique(std::vector<IntVector>& v) {
    std::sort(v.begin(), v.end(), [](const IntVector& a, const IntVector& b) { return canonical_less(a, b); });
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::vector<IntVector> with_negations(const std::vector<IntVector>& a, const std::vector<IntVector>& lin) {
    std::vector<IntVector> out = a;
    for (const auto& l : lin) {
        out.push_back(l);
        out.push_back(negated(l));
    }
    return out;
}

void check_lengths(std::size_t rank, const std::vector<IntVector>& vs) {
    for (const auto& v : vs)
        if (v.size() != rank) throw InputError("vector " + to_string(v) + " does not have length " + std::to_string(rank));
}

std::strong_ordering compare_lists(const std::vector<IntVector>& a, const std::vector<IntVector>& b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == b[i]) continue;
        return canonical_less(a[i], b[i]) ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return a.size() <=> b.size();
}

}  // namespace

Cone Cone::zero(std::size_t rank) { return from_generators(rank, std::vector<IntVector>{}); }

Cone Cone::from_dd(std::size_t rank, std::vector<IntVector> lineality, std::vector<IntVector> rays) {
    const auto dual = detail::double_description(with_negations(rays, lineality), rank);
    return assemble(rank, lineality, rays, dual.lineality, dual.rays);
}

Cone Cone::assemble(std::size_t rank, const std::vector<IntVector>& lineality, const std::vector<IntVector>& rays,
                    const std::vector<IntVector>& equations, const std::vector<IntVector>& facets) {
    Cone c;
    c.rank_ = rank;
    c.lineality_ = saturation(lineality, rank);
    c.equations_ = saturation(equations, rank);
    c.dim_ = rank - c.equations_.size();
    const ComplementProjector lin_proj(c.lineality_, rank);
    for (const auto& r : rays) {
        IntVector p = lin_proj.project(r);
        if (!toricq::is_zero(std::span<const Integer>(p))) c.rays_.push_back(std::move(p));
    }
    sort_unique(c.rays_);
    c.facets_ = facets;
    sort_unique(c.facets_);
    return c;
}

Cone Cone::face_from_rays(const Cone& c, std::vector<IntVector> rays) {
    // rays of a face are rays of c, already canonical
    const auto dual = detail::double_description(with_negations(rays, c.lineality_), c.rank_);
    Cone f;
    f.rank_ = c.rank_;
    f.lineality_ = c.lineality_;
    f.rays_ = std::move(rays);
    f.equations_ = saturation(dual.lineality, c.rank_);
    f.dim_ = f.rank_ - f.equations_.size();
    f.facets_ = dual.rays;
    sort_unique(f.facets_);
    return f;
}

Cone Cone::from_generators(std::size_t rank, const std::vector<IntVector>& generators) {
    check_lengths(rank, generators);
    std::vector<IntVector> gens;
    for (const auto& g : generators)
        if (!toricq::is_zero(std::span<const Integer>(g))) gens.push_back(primitive(std::span<const Integer>(g)));
    const auto dual = detail::double_description(gens, rank);
    const auto primal = detail::double_description(with_negations(dual.rays, dual.lineality), rank);
    return assemble(rank, primal.lineality, primal.rays, dual.lineality, dual.rays);
}

Cone Cone::from_generators(std::size_t rank, const std::vector<RatVector>& generators) {
    std::vector<IntVector> gens;
    gens.reserve(generators.size());
    for (const auto& g : generators) {
        if (g.size() != rank) throw InputError("vector " + to_string(g) + " does not have length " + std::to_string(rank));
        gens.push_back(primitive(std::span<const Rational>(g)));
    }
    return from_generators(rank, gens);
}

Cone Cone::from_inequalities(std::size_t rank, const std::vector<IntVector>& inequalities,
                             const std::vector<IntVector>& equations) {
    check_lengths(rank, inequalities);
    check_lengths(rank, equations);
    const auto primal = detail::double_description(with_negations(inequalities, equations), rank);
    return from_dd(rank, primal.lineality, primal.rays);
}

std::vector<IntVector> Cone::generators() const { return with_negations(rays_, lineality_); }

std::vector<IntVector> Cone::span_basis() const {
    std::vector<IntVector> all = rays_;
    all.insert(all.end(), lineality_.begin(), lineality_.end());
    if (all.empty()) return {};
    std::vector<std::size_t> piv;
    rref(to_rational(rows_matrix(all, rank_).transpose()), &piv);
    std::vector<IntVector> out;
    for (auto p : piv) out.push_back(all[p]);
    return out;
}

bool Cone::contains(std::span<const Integer> x) const {
    if (x.size() != rank_) throw InputError("point has wrong dimension");
    for (const auto& e : equations_)
        if (dot(e, x) != 0) return false;
    for (const auto& f : facets_)
        if (dot(f, x) < 0) return false;
    return true;
}

bool Cone::contains(std::span<const Rational> x) const {
    return contains(std::span<const Integer>(primitive(x)));
}

bool Cone::contains(const Cone& other) const {
    if (other.rank_ != rank_) throw InputError("cones live in lattices of different rank");
    for (const auto& g : other.rays_)
        if (!contains(std::span<const Integer>(g))) return false;
    for (const auto& l : other.lineality_) {
        if (!contains(std::span<const Integer>(l))) return false;
        const IntVector n = negated(l);
        if (!contains(std::span<const Integer>(n))) return false;
    }
    return true;
}

bool Cone::relative_interior_contains(std::span<const Rational> x) const {
    const IntVector p = primitive(x);
    if (!contains(std::span<const Integer>(p))) return false;
    for (const auto& f : facets_)
        if (dot(f, p) == 0) return false;
    return true;
}

RatVector Cone::relative_interior_point() const {
    RatVector s(rank_);
    for (const auto& r : rays_)
        for (std::size_t i = 0; i < rank_; ++i) s[i] += r[i];
    return s;
}

std::strong_ordering operator<=>(const Cone& a, const Cone& b) {
    if (a.rank_ != b.rank_) return a.rank_ <=> b.rank_;
    if (auto c = compare_lists(a.rays_, b.rays_); c != 0) return c;
    return compare_lists(a.lineality_, b.lineality_);
}

std::vector<Cone> faces(const Cone& c) {
    const auto& rays = c.rays();
    const auto& facets = c.facets();
    const std::size_t n = rays.size();
    std::vector<boost::dynamic_bitset<>> incidence;
    incidence.reserve(facets.size());
    for (const auto& f : facets) {
        boost::dynamic_bitset<> b(n);
        for (std::size_t i = 0; i < n; ++i)
            if (dot(f, rays[i]) == 0) b.set(i);
        incidence.push_back(std::move(b));
    }
    std::set<boost::dynamic_bitset<>> seen;
    std::vector<boost::dynamic_bitset<>> queue;
    boost::dynamic_bitset<> all(n);
    all.set();
    seen.insert(all);
    queue.push_back(all);
    for (std::size_t q = 0; q < queue.size(); ++q) {
        for (const auto& inc : incidence) {
            boost::dynamic_bitset<> t = queue[q] & inc;
            if (t == queue[q]) continue;
            if (seen.insert(t).second) queue.push_back(std::move(t));
        }
    }
    std::vector<Cone> out;
    out.reserve(queue.size());
    for (const auto& s : queue) {
        if (s == all) {
            out.push_back(c);
            continue;
        }
        std::vector<IntVector> sub;
        for (std::size_t i = 0; i < n; ++i)
            if (s.test(i)) sub.push_back(rays[i]);
        out.push_back(Cone::face_from_rays(c, std::move(sub)));
    }
    std::sort(out.begin(), out.end());
    return out;
}

Cone minimal_face_containing(const Cone& c, const Cone& s) {
    if (!c.contains(s)) throw InputError("minimal_face_containing: " + to_string(s) + " is not contained in " + to_string(c));
    const auto gens = s.generators();
    std::vector<const IntVector*> tight;
    for (const auto& f : c.facets()) {
        bool vanishes = true;
        for (const auto& g : gens)
            if (dot(f, g) != 0) {
                vanishes = false;
                break;
            }
        if (vanishes) tight.push_back(&f);
    }
    std::vector<IntVector> sub;
    for (const auto& r : c.rays()) {
        bool in = true;
        for (const auto* f : tight)
            if (dot(*f, r) != 0) {
                in = false;
                break;
            }
        if (in) sub.push_back(r);
    }
    if (sub.size() == c.rays().size()) return c;
    return Cone::face_from_rays(c, std::move(sub));
}

Cone minimal_face_containing(const Cone& c, std::span<const Rational> point) {
    return minimal_face_containing(c, Cone::from_generators(c.rank(), std::vector<RatVector>{RatVector(point.begin(), point.end())}));
}

Cone intersect(const Cone& a, const Cone& b) {
    if (a.rank() != b.rank()) throw InputError("intersect: cones live in lattices of different rank");
    auto ineq = a.facets();
    ineq.insert(ineq.end(), b.facets().begin(), b.facets().end());
    auto eq = a.equations();
    eq.insert(eq.end(), b.equations().begin(), b.equations().end());
    return Cone::from_inequalities(a.rank(), ineq, eq);
}

Cone image(const Cone& c, const IntMatrix& m) {
    if (m.cols() != c.rank()) throw InputError("image: matrix has " + std::to_string(m.cols()) + " columns, cone rank is " + std::to_string(c.rank()));
    std::vector<IntVector> gens;
    for (const auto& g : c.generators()) gens.push_back(m.apply(g));
    return Cone::from_generators(m.rows(), gens);
}

Cone join(const Cone& a, const Cone& b) {
    if (a.rank() != b.rank()) throw InputError("join: cones live in lattices of different rank");
    auto gens = a.generators();
    const auto gb = b.generators();
    gens.insert(gens.end(), gb.begin(), gb.end());
    return Cone::from_generators(a.rank(), gens);
}

bool is_face_of(const Cone& f, const Cone& c) {
    if (f.rank() != c.rank()) throw InputError("is_face_of: rank mismatch");
    if (!c.contains(f)) return false;
    return minimal_face_containing(c, f) == f;
}

bool same_set(const Cone& a, const Cone& b) { return a.contains(b) && b.contains(a); }

std::string to_string(const Cone& c) {
    std::ostringstream os;
    os << "cone[";
    for (std::size_t i = 0; i < c.rays().size(); ++i) os << (i ? ", " : "") << to_string(c.rays()[i]);
    if (!c.lineality().empty()) {
        os << "; lineality ";
        for (std::size_t i = 0; i < c.lineality().size(); ++i) os << (i ? ", " : "") << to_string(c.lineality()[i]);
    }
    os << "]";
    return os.str();
}

}  // namespace toricq
