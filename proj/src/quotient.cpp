#include "toricq/quotient.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace toricq {

namespace {

bool meet_properly(const Cone& a, const Cone& b) {
    const Cone c = intersect(a, b);
    return is_face_of(c, a) && is_face_of(c, b);
}

// Backtracking over cones generated by image rays; mirrors the coarsening
// search but the images may overlap.
struct ImageSearch {
    std::size_t rank;
    std::size_t cap;
    std::vector<Cone> images;      // of maximal cones
    std::vector<Cone> all_images;  // of every cone, for the spanning test
    std::vector<Cone> candidates;
    std::vector<std::vector<std::size_t>> containing;
    std::map<std::pair<std::size_t, std::size_t>, bool> compatible;
    std::vector<std::size_t> chosen;
    std::set<Quasifan> found;
    std::size_t visited = 0;

    bool fits(std::size_t c) {
        for (std::size_t s : chosen) {
            const auto key = std::minmax(c, s);
            auto it = compatible.find(key);
            if (it == compatible.end())
                it = compatible.emplace(key, !candidates[s].contains(candidates[c]) && !candidates[c].contains(candidates[s]) &&
                                                 meet_properly(candidates[c], candidates[s]))
                         .first;
            if (!it->second) return false;
        }
        return true;
    }

    void finish() {
        std::vector<Cone> cones;
        for (std::size_t s : chosen) cones.push_back(candidates[s]);
        for (const auto& c : cones) {
            const bool spanned = std::any_of(all_images.begin(), all_images.end(), [&](const Cone& t) {
                return c.contains(t) && c.relative_interior_contains(std::span<const Rational>(t.relative_interior_point()));
            });
            if (!spanned) return;
        }
        if (!validate(rank, cones).valid) return;
        found.insert(Quasifan::from_cones(rank, cones));
    }

    void run(std::size_t i) {
        if (++visited > cap) throw CapExceeded(cap, visited);
        if (i == images.size()) return finish();
        for (std::size_t s : chosen)
            if (candidates[s].contains(images[i])) return run(i + 1);
        for (std::size_t c : containing[i]) {
            if (!fits(c)) continue;
            chosen.push_back(c);
            run(i + 1);
            chosen.pop_back();
        }
    }
};

}  // namespace

Quasifan pairwise_merge_fixpoint(std::size_t rank, std::vector<Cone> family, std::mt19937* order) {
    while (true) {
        std::vector<std::pair<std::size_t, std::size_t>> bad;
        for (std::size_t i = 0; i < family.size(); ++i)
            for (std::size_t j = i + 1; j < family.size(); ++j)
                if (!meet_properly(family[i], family[j])) bad.push_back({i, j});
        if (bad.empty()) break;
        const auto [i, j] = order ? bad[(*order)() % bad.size()] : bad.front();
        Cone merged = join(family[i], family[j]);
        family.erase(family.begin() + j);
        family.erase(family.begin() + i);
        if (std::find(family.begin(), family.end(), merged) == family.end()) family.push_back(std::move(merged));
    }
    const ValidationReport rep = validate(rank, family);
    if (!rep.valid) throw InternalError("merge fixpoint is not a quasifan: " + rep.message);
    return Quasifan::from_cones(rank, family);
}

ToricQuotient toric_quotient(const Quasifan& fan, const std::vector<IntVector>& h, std::mt19937* order, std::size_t cap) {
    const std::size_t n = fan.rank();
    for (const auto& v : h)
        if (v.size() != n) throw InputError("subtorus basis vector has wrong length");
    if (rank(h, n) != h.size()) throw InputError("subtorus basis is linearly dependent");
    if (!is_saturated(h, n)) throw InputError("subtorus lattice is not saturated");

    ToricQuotient out;
    out.projection = quotient_projection(h, n);
    const std::size_t m = out.projection.rows();

    ImageSearch s{m, cap, {}, {}, {}, {}, {}, {}, {}, 0};
    {
        std::set<Cone> imgs, all;
        for (const auto& c : fan.maximal_cones()) imgs.insert(image(c, out.projection));
        for (const auto& c : fan.cones()) all.insert(image(c, out.projection));
        s.images.assign(imgs.begin(), imgs.end());
        s.all_images.assign(all.begin(), all.end());
    }
    // image rays; lineality of the fan is trivial, so images are generated by them
    std::vector<IntVector> rays;
    for (const auto& r : fan.rays()) {
        IntVector v = out.projection.apply(std::span<const Integer>(r));
        if (is_zero(std::span<const Integer>(v))) continue;
        v = primitive(std::span<const Integer>(v));
        if (std::find(rays.begin(), rays.end(), v) == rays.end()) rays.push_back(std::move(v));
    }
    const std::size_t nr = rays.size();
    if (nr >= 8 * sizeof(std::size_t) - 1 || (std::size_t{1} << nr) > cap)
        throw CapExceeded(cap, std::size_t{1} << std::min<std::size_t>(nr, 62));
    std::set<Cone> cands{Cone::zero(m)};
    for (std::size_t mask = 1; mask < (std::size_t{1} << nr); ++mask) {
        std::vector<IntVector> gens;
        for (std::size_t i = 0; i < nr; ++i)
            if (mask >> i & 1) gens.push_back(rays[i]);
        Cone c = Cone::from_generators(m, gens);
        bool closed = true;
        for (std::size_t i = 0; i < nr && closed; ++i)
            if (!(mask >> i & 1) && c.contains(std::span<const Integer>(rays[i]))) closed = false;
        if (closed) cands.insert(std::move(c));
    }
    s.candidates.assign(cands.begin(), cands.end());
    if (order) {
        std::shuffle(s.candidates.begin(), s.candidates.end(), *order);
        std::shuffle(s.images.begin(), s.images.end(), *order);
    }
    for (const auto& img : s.images) {
        std::vector<std::size_t> idx;
        for (std::size_t c = 0; c < s.candidates.size(); ++c)
            if (s.candidates[c].contains(img)) idx.push_back(c);
        s.containing.push_back(std::move(idx));
    }
    s.run(0);

    const Quasifan* finest = nullptr;
    for (const auto& q : s.found)
        if (std::all_of(s.found.begin(), s.found.end(), [&](const Quasifan& o) { return refines(q, o); })) finest = &q;
    if (!finest) throw InternalError("the image quasifans have no common refinement among themselves");
    out.merged = *finest;
    QuotientFan q = quotient_fan(out.merged);
    out.map = FanMap::make(q.projection * out.projection, fan, q.fan);
    return out;
}

ReductionDecision divisorial_reduction_exists(const Quasifan& fan, std::size_t cap, unsigned jobs) {
    ReductionDecision d;
    d.reduction = tdr(fan, cap, jobs);
    d.exists = d.reduction.surjective;
    return d;
}

QuotientDecision decide_categorical_quotient(const Quasifan& fan, const std::vector<IntVector>& h, std::size_t cap,
                                             unsigned jobs) {
    QuotientDecision d;
    d.quotient = toric_quotient(fan, h, nullptr, cap);
    d.reduction = tdr(d.quotient.map.target, cap, jobs);
    d.composed = compose(d.quotient.map, d.reduction.map);
    const auto s = morphism_surjective(d.composed);
    d.exists = s.surjective;
    d.obstruction = s.obstruction;
    d.source_divisorial = is_divisorial(fan, jobs).divisorial;
    return d;
}

}  // namespace toricq
