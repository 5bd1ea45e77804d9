#include "toricq/fan.hpp"

#include <algorithm>
#include <sstream>

namespace toricq {

namespace {

void sort_unique(std::vector<Cone>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::strong_ordering compare_cone_lists(const std::vector<Cone>& a, const std::vector<Cone>& b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
        if (auto c = a[i] <=> b[i]; c != 0) return c;
    return a.size() <=> b.size();
}

Cone lineality_cone(const Cone& c) {
    std::vector<IntVector> g;
    for (const auto& l : c.lineality()) {
        g.push_back(l);
        g.push_back(negated(l));
    }
    return Cone::from_generators(c.rank(), g);
}

}  // namespace

ValidationReport validate(std::size_t rank, const std::vector<Cone>& cones) {
    for (std::size_t i = 0; i < cones.size(); ++i)
        if (cones[i].rank() != rank) {
            return {false,
                    "cone " + std::to_string(i) + " lives in rank " + std::to_string(cones[i].rank()) + ", expected " +
                        std::to_string(rank),
                    std::nullopt};
        }
    for (std::size_t i = 0; i < cones.size(); ++i)
        for (std::size_t j = i + 1; j < cones.size(); ++j) {
            const Cone meet = intersect(cones[i], cones[j]);
            const bool fi = is_face_of(meet, cones[i]);
            const bool fj = is_face_of(meet, cones[j]);
            if (fi && fj) continue;
            const std::size_t bad = fi ? j : i;
            return {false,
                    "cones " + std::to_string(i) + " and " + std::to_string(j) + " intersect in " + to_string(meet) +
                        ", which is not a face of " + to_string(cones[bad]),
                    std::pair{i, j}};
        }
    return {};
}

Quasifan Quasifan::from_cones(std::size_t rank, const std::vector<Cone>& cones) {
    const ValidationReport rep = validate(rank, cones);
    if (!rep.valid) throw InputError("not a quasifan: " + rep.message);
    return assemble(rank, cones);
}

Quasifan Quasifan::from_faces(const Cone& c, const std::vector<Cone>& cones) {
    for (const auto& f : cones)
        if (!is_face_of(f, c)) throw InputError(to_string(f) + " is not a face of " + to_string(c));
    return assemble(c.rank(), cones);
}

Quasifan Quasifan::assemble(std::size_t rank, const std::vector<Cone>& cones) {
    Quasifan q;
    q.rank_ = rank;
    std::vector<Cone> input = cones;
    sort_unique(input);
    // with proper intersections a contained member is a face, hence not maximal
    for (std::size_t i = 0; i < input.size(); ++i) {
        bool maximal = true;
        for (std::size_t j = 0; j < input.size() && maximal; ++j)
            if (i != j && input[j].contains(input[i])) maximal = false;
        if (maximal) q.maximal_.push_back(input[i]);
    }
    if (q.maximal_.empty()) q.maximal_.push_back(Cone::zero(rank));
    for (const auto& m : q.maximal_) {
        auto f = faces(m);
        q.all_.insert(q.all_.end(), f.begin(), f.end());
    }
    sort_unique(q.all_);
    q.minimal_ = lineality_cone(q.maximal_.front());
    for (const auto& m : q.maximal_)
        if (lineality_cone(m) != q.minimal_) throw InternalError("maximal cones of a quasifan disagree on lineality");
    return q;
}

Quasifan Quasifan::face_fan(const Cone& c) { return from_cones(c.rank(), {c}); }

bool Quasifan::has_cone(const Cone& c) const { return std::binary_search(all_.begin(), all_.end(), c); }

std::optional<std::size_t> Quasifan::maximal_containing(const Cone& c) const {
    for (std::size_t i = 0; i < maximal_.size(); ++i)
        if (maximal_[i].contains(c)) return i;
    return std::nullopt;
}

std::optional<Cone> Quasifan::minimal_cone_containing(const Cone& c) const {
    const auto i = maximal_containing(c);
    if (!i) return std::nullopt;
    // the minimal face of one container is the smallest member: members meet in faces
    return minimal_face_containing(maximal_[*i], c);
}

bool Quasifan::support_contains(std::span<const Rational> x) const {
    return std::any_of(maximal_.begin(), maximal_.end(), [&](const Cone& m) { return m.contains(x); });
}

std::vector<IntVector> Quasifan::rays() const {
    std::vector<IntVector> out;
    for (const auto& m : maximal_) out.insert(out.end(), m.rays().begin(), m.rays().end());
    std::sort(out.begin(), out.end(), [](const IntVector& a, const IntVector& b) { return canonical_less(a, b); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::strong_ordering operator<=>(const Quasifan& a, const Quasifan& b) {
    if (a.rank_ != b.rank_) return a.rank_ <=> b.rank_;
    return compare_cone_lists(a.maximal_, b.maximal_);
}

QuotientFan quotient_fan(const Quasifan& q) {
    const auto& lin = q.minimal_cone().lineality();
    if (lin.empty()) return {IntMatrix::identity(q.rank()), q};
    IntMatrix f = quotient_projection(lin, q.rank());
    std::vector<Cone> images;
    for (const auto& m : q.maximal_cones()) images.push_back(image(m, f));
    Quasifan out = Quasifan::from_cones(f.rows(), images);
    if (!out.is_fan()) throw InternalError("quotient fan is not pointed");
    return {std::move(f), std::move(out)};
}

bool refines(const Quasifan& fine, const Quasifan& coarse) {
    if (fine.rank() != coarse.rank()) throw InputError("refines: lattices of different rank");
    return std::all_of(fine.maximal_cones().begin(), fine.maximal_cones().end(),
                       [&](const Cone& c) { return coarse.maximal_containing(c).has_value(); });
}

bool check_fan_map(const IntMatrix& m, const Quasifan& source, const Quasifan& target) {
    if (m.cols() != source.rank() || m.rows() != target.rank())
        throw InputError("fan map: matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                         ", expected " + std::to_string(target.rank()) + "x" + std::to_string(source.rank()));
    return std::all_of(source.maximal_cones().begin(), source.maximal_cones().end(),
                       [&](const Cone& c) { return target.maximal_containing(image(c, m)).has_value(); });
}

Quasifan induced_fan_on_sublattice(const Quasifan& q, const std::vector<IntVector>& basis) {
    const std::size_t n = q.rank();
    if (rank(basis, n) != basis.size()) throw InputError("induced fan: sublattice basis is dependent");
    if (!is_saturated(basis, n)) throw InputError("induced fan: sublattice is not saturated");
    const std::size_t l = basis.size();
    // pull back inequalities along c -> B^T c
    auto pull = [&](const std::vector<IntVector>& forms) {
        std::vector<IntVector> out;
        for (const auto& f : forms) {
            IntVector g(l);
            for (std::size_t i = 0; i < l; ++i) g[i] = dot(f, basis[i]);
            out.push_back(std::move(g));
        }
        return out;
    };
    std::vector<Cone> pieces;
    for (const auto& m : q.maximal_cones()) pieces.push_back(Cone::from_inequalities(l, pull(m.facets()), pull(m.equations())));
    const ValidationReport rep = validate(l, pieces);
    if (!rep.valid) throw InputError("induced fan on sublattice violates the quasifan axioms: " + rep.message);
    return Quasifan::from_cones(l, pieces);
}

Quasifan product_fan(const Quasifan& a, const Quasifan& b) {
    const std::size_t na = a.rank(), nb = b.rank();
    auto lift = [&](const std::vector<IntVector>& vs, std::size_t offset) {
        std::vector<IntVector> out;
        for (const auto& v : vs) {
            IntVector w(na + nb);
            for (std::size_t i = 0; i < v.size(); ++i) w[offset + i] = v[i];
            out.push_back(std::move(w));
        }
        return out;
    };
    std::vector<Cone> prods;
    for (const auto& s : a.maximal_cones())
        for (const auto& t : b.maximal_cones()) {
            auto g = lift(s.generators(), 0);
            auto h = lift(t.generators(), na);
            g.insert(g.end(), h.begin(), h.end());
            prods.push_back(Cone::from_generators(na + nb, g));
        }
    return Quasifan::from_cones(na + nb, prods);
}

Quasifan subfan_generated_by(const Quasifan& q, const std::vector<Cone>& cones) {
    for (const auto& c : cones)
        if (!q.has_cone(c)) throw InputError("subfan: " + to_string(c) + " is not a cone of the quasifan");
    if (cones.empty()) return Quasifan::from_cones(q.rank(), {q.minimal_cone()});
    return Quasifan::from_cones(q.rank(), cones);
}

std::string to_string(const Quasifan& q) {
    std::ostringstream os;
    os << "quasifan in Z^" << q.rank() << " {";
    for (std::size_t i = 0; i < q.maximal_cones().size(); ++i) os << (i ? ", " : "") << to_string(q.maximal_cones()[i]);
    os << "}";
    return os.str();
}

}  // namespace toricq
