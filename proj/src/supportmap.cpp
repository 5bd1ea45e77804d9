#include "toricq/supportmap.hpp"

#include <algorithm>

namespace toricq {

namespace {

RatVector apply_map(const RatMatrix& m, std::span<const Integer> x) {
    RatVector out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) out[i] = dot(m.row(i), x);
    return out;
}

RatMatrix inverse(const RatMatrix& a) {
    const std::size_t r = a.rows();
    RatMatrix aug(r, 2 * r);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) aug(i, j) = a(i, j);
        aug(i, r + i) = 1;
    }
    const RatMatrix red = rref(aug);
    RatMatrix inv(r, r);
    for (std::size_t i = 0; i < r; ++i) {
        if (red(i, i) != 1) throw InternalError("inverse of a singular matrix");
        for (std::size_t j = 0; j < r; ++j) inv(i, j) = red(i, r + j);
    }
    return inv;
}

bool agree_on(const RatMatrix& a, const RatMatrix& b, const std::vector<IntVector>& gens) {
    return std::all_of(gens.begin(), gens.end(), [&](const IntVector& g) { return apply_map(a, g) == apply_map(b, g); });
}

// x -> first n coordinates
IntMatrix first_coordinates(std::size_t n, std::size_t total) {
    IntMatrix p(n, total);
    for (std::size_t i = 0; i < n; ++i) p(i, i) = 1;
    return p;
}

IntVector combine(const std::vector<IntVector>& basis, std::span<const Integer> coeff, std::size_t offset, std::size_t dim) {
    IntVector x(dim);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const Integer& c = coeff[offset + i];
        if (c == 0) continue;
        for (std::size_t j = 0; j < dim; ++j) x[j] += c * basis[i][j];
    }
    return x;
}

// Is the projection to the first n coordinates injective on a union b?
// Checks that {(x, y) in a x b : x, y agree in the first n coordinates}
// lies on the diagonal. Returns a violating pair if not.
std::optional<std::pair<IntVector, IntVector>> projection_collision(const Cone& a, const Cone& b, std::size_t n) {
    if (a.dim() == 0 || b.dim() == 0) return std::nullopt;  // covered by the (b, b) and (a, a) checks
    const std::size_t m = a.rank();
    const auto ba = a.span_basis();
    const auto bb = b.span_basis();
    const std::size_t da = ba.size(), db = bb.size();
    std::vector<IntVector> ineq, eq;
    for (const auto& f : a.facets()) {
        IntVector r(da + db);
        for (std::size_t i = 0; i < da; ++i) r[i] = dot(f, ba[i]);
        ineq.push_back(std::move(r));
    }
    for (const auto& f : b.facets()) {
        IntVector r(da + db);
        for (std::size_t j = 0; j < db; ++j) r[da + j] = dot(f, bb[j]);
        ineq.push_back(std::move(r));
    }
    for (std::size_t t = 0; t < n; ++t) {
        IntVector r(da + db);
        for (std::size_t i = 0; i < da; ++i) r[i] = ba[i][t];
        for (std::size_t j = 0; j < db; ++j) r[da + j] = -bb[j][t];
        eq.push_back(std::move(r));
    }
    const Cone c = Cone::from_inequalities(da + db, ineq, eq);
    for (const auto& g : c.generators()) {
        IntVector x = combine(ba, g, 0, m);
        IntVector y = combine(bb, g, da, m);
        if (x != y) return std::pair{std::move(x), std::move(y)};
    }
    return std::nullopt;
}

}  // namespace

SupportMap::SupportMap(Quasifan source, std::size_t k, std::vector<RatMatrix> matrices)
    : source_(std::move(source)), k_(k), matrices_(std::move(matrices)) {
    const auto& maxi = source_.maximal_cones();
    if (matrices_.size() != maxi.size())
        throw InputError("support map needs one matrix per maximal cone: got " + std::to_string(matrices_.size()) + ", expected " +
                         std::to_string(maxi.size()));
    for (const auto& m : matrices_)
        if (m.rows() != k_ || m.cols() != source_.rank())
            throw InputError("support map matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected " +
                             std::to_string(k_) + "x" + std::to_string(source_.rank()));
    for (std::size_t i = 0; i < maxi.size(); ++i)
        for (std::size_t j = i + 1; j < maxi.size(); ++j) {
            const Cone meet = intersect(maxi[i], maxi[j]);
            if (!agree_on(matrices_[i], matrices_[j], meet.generators()))
                throw InputError("support map is not well defined: the linear maps on " + to_string(maxi[i]) + " and " +
                                 to_string(maxi[j]) + " differ on their intersection " + to_string(meet));
        }
}

SupportMap SupportMap::from_cone_matrices(Quasifan source, std::size_t k, const std::vector<std::pair<Cone, RatMatrix>>& data) {
    std::vector<RatMatrix> mats;
    for (const auto& m : source.maximal_cones()) {
        auto it = std::find_if(data.begin(), data.end(), [&](const auto& d) { return d.first == m; });
        if (it == data.end()) throw InputError("support map has no matrix for maximal cone " + to_string(m));
        mats.push_back(it->second);
    }
    SupportMap h(source, k, std::move(mats));
    for (const auto& [c, u] : data) {
        const auto i = h.source_.maximal_containing(c);
        if (!i || !h.source_.has_cone(c)) throw InputError("support map given on " + to_string(c) + ", which is not a cone of the fan");
        if (u.rows() != k || u.cols() != h.source_.rank()) throw InputError("support map matrix for " + to_string(c) + " has the wrong shape");
        if (!agree_on(u, h.matrices_[*i], c.generators()))
            throw InputError("support map matrix for " + to_string(c) + " disagrees with the maximal cone containing it");
    }
    return h;
}

SupportMap SupportMap::zero(Quasifan source, std::size_t k) {
    const std::size_t m = source.maximal_cones().size();
    const std::size_t n = source.rank();
    return SupportMap(std::move(source), k, std::vector<RatMatrix>(m, RatMatrix(k, n)));
}

RatVector SupportMap::value(std::span<const Rational> x) const {
    const auto& maxi = source_.maximal_cones();
    for (std::size_t i = 0; i < maxi.size(); ++i)
        if (maxi[i].contains(x)) {
            RatVector out(k_);
            for (std::size_t r = 0; r < k_; ++r) out[r] = dot(matrices_[i].row(r), x);
            return out;
        }
    throw InputError("support map evaluated outside its support at " + to_string(x));
}

IntVector SupportMap::lift(std::size_t maximal_index, std::span<const Integer> x) const {
    RatVector v = to_rational(x);
    const RatVector hx = apply_map(matrices_.at(maximal_index), x);
    v.insert(v.end(), hx.begin(), hx.end());
    return primitive(std::span<const Rational>(v));
}

Cone SupportMap::lifted_cone(std::size_t maximal_index) const {
    std::vector<IntVector> gens;
    for (const auto& g : source_.maximal_cones().at(maximal_index).generators()) gens.push_back(lift(maximal_index, g));
    return Cone::from_generators(source_.rank() + k_, gens);
}

Cone graph_cone(const SupportMap& h) {
    std::vector<IntVector> gens;
    const auto& maxi = h.source().maximal_cones();
    for (std::size_t i = 0; i < maxi.size(); ++i)
        for (const auto& g : maxi[i].generators()) gens.push_back(h.lift(i, g));
    return Cone::from_generators(h.source().rank() + h.k(), gens);
}

namespace {

Quasifan filled_graph_of(const SupportMap& h, const Cone& gamma) {
    std::vector<Cone> tops;
    for (std::size_t i = 0; i < h.source().maximal_cones().size(); ++i)
        tops.push_back(minimal_face_containing(gamma, h.lifted_cone(i)));
    return Quasifan::from_faces(gamma, tops);
}

}  // namespace

Quasifan filled_graph(const SupportMap& h) { return filled_graph_of(h, graph_cone(h)); }

SupportMapAnalysis analyze(const SupportMap& h) {
    SupportMapAnalysis a;
    a.graph_cone = graph_cone(h);
    a.filled_graph = filled_graph_of(h, a.graph_cone);
    const std::size_t n = h.source().rank();
    const auto& cones = a.filled_graph.maximal_cones();
    a.convex = true;
    for (std::size_t i = 0; i < cones.size() && a.convex; ++i)
        for (std::size_t j = i; j < cones.size() && a.convex; ++j) {
            if (auto hit = projection_collision(cones[i], cones[j], n)) {
                a.convex = false;
                a.obstruction = "projection is not injective on " + to_string(cones[i]) + " union " + to_string(cones[j]) +
                                ": " + to_string(hit->first) + " and " + to_string(hit->second) + " have the same image";
            }
        }
    if (!a.convex) return a;
    const IntMatrix p = first_coordinates(n, n + h.k());
    std::vector<Cone> projected;
    for (const auto& d : cones) projected.push_back(image(d, p));
    try {
        a.associated = Quasifan::from_cones(n, projected);
    } catch (const InputError& e) {
        throw InternalError(std::string("projected filled graph of a convex map is not a quasifan: ") + e.what());
    }
    a.strictly_convex = *a.associated == h.source();
    return a;
}

bool is_convex(const SupportMap& h) { return analyze(h).convex; }

Quasifan associated_quasifan(const SupportMap& h) {
    auto a = analyze(h);
    if (!a.convex) throw InputError("associated quasifan requested for a non-convex support map: " + a.obstruction);
    return std::move(*a.associated);
}

bool is_strictly_convex(const SupportMap& h) { return analyze(h).strictly_convex; }

SupportMap pullback(const SupportMap& target_map, const IntMatrix& f, const Quasifan& source) {
    const Quasifan& target = target_map.source();
    if (f.cols() != source.rank() || f.rows() != target.rank()) throw InputError("pullback: matrix shape does not match the fans");
    const RatMatrix fr = to_rational(f);
    std::vector<RatMatrix> mats;
    for (const auto& s : source.maximal_cones()) {
        const auto t = target.maximal_containing(image(s, f));
        if (!t) throw InputError("pullback: " + to_string(s) + " is not mapped into a cone of the target");
        mats.push_back(target_map.matrices()[*t] * fr);
    }
    return SupportMap(source, target_map.k(), std::move(mats));
}

Descent descend_to_quotient_fan(const SupportMap& h) {
    if (!is_strictly_convex(h)) throw InputError("descent requires a strictly convex support map");
    const Quasifan& sigma = h.source();
    const auto& lin = sigma.minimal_cone().lineality();
    if (lin.empty()) return {IntMatrix::identity(sigma.rank()), h};

    QuotientFan qf = quotient_fan(sigma);
    const RatMatrix f = to_rational(qf.projection);
    const RatMatrix ft = f.transpose();
    // right inverse S = F^T (F F^T)^{-1}
    const RatMatrix s = ft * inverse(f * ft);

    // subtract u_1 composed with the orthogonal projection onto span(lineality)
    const RatMatrix l = to_rational(rows_matrix(lin, sigma.rank()));
    const RatMatrix lt = l.transpose();
    const RatMatrix ell = h.matrices().front() * lt * inverse(l * lt) * l;
    const auto& maxi = sigma.maximal_cones();
    const auto& target = qf.fan.maximal_cones();
    std::vector<RatMatrix> mats(target.size());
    std::vector<bool> seen(target.size(), false);
    for (std::size_t i = 0; i < maxi.size(); ++i) {
        RatMatrix g = h.matrices()[i];
        for (std::size_t a = 0; a < g.rows(); ++a)
            for (std::size_t b = 0; b < g.cols(); ++b) g(a, b) -= ell(a, b);
        for (const auto& l : lin)
            if (!is_zero(apply_map(g, l))) throw InternalError("support map is not linear on the minimal cone");
        RatMatrix w = g * s;
        if (!(w * f == g)) throw InternalError("descended support map does not factor through the quotient");
        const Cone img = image(maxi[i], qf.projection);
        const auto pos = std::find(target.begin(), target.end(), img) - target.begin();
        if (static_cast<std::size_t>(pos) == target.size()) throw InternalError("image cone missing from the quotient fan");
        mats[pos] = std::move(w);
        seen[pos] = true;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) throw InternalError("quotient fan has a cone with no preimage");
    SupportMap down(qf.fan, h.k(), std::move(mats));
    if (!is_strictly_convex(down)) throw InternalError("descended support map is not strictly convex");
    return {std::move(qf.projection), std::move(down)};
}

}  // namespace toricq
