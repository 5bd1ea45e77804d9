#include "toricq/fanmap.hpp"

#include <set>

namespace toricq {

FanMap FanMap::make(IntMatrix matrix, Quasifan source, Quasifan target) {
    if (!check_fan_map(matrix, source, target)) throw InputError("matrix does not map the source fan into the target fan");
    return {std::move(matrix), std::move(source), std::move(target)};
}

FanMap FanMap::identity(const Quasifan& q) { return {IntMatrix::identity(q.rank()), q, q}; }

FanMap compose(const FanMap& first, const FanMap& second) {
    if (!(first.target == second.source)) throw InputError("compose: target of the first map is not the source of the second");
    return FanMap::make(second.matrix * first.matrix, first.source, second.target);
}

Surjectivity morphism_surjective(const FanMap& f) {
    std::set<Cone> hit;
    for (const auto& c : f.source.cones()) {
        const auto m = f.target.minimal_cone_containing(image(c, f.matrix));
        if (!m) throw InputError("morphism_surjective: matrix is not a fan map");
        hit.insert(*m);
    }
    const std::size_t target_rank = f.target.rank();
    std::vector<IntVector> columns;
    for (std::size_t j = 0; j < f.matrix.cols(); ++j) columns.push_back(f.matrix.column(j));
    // cones() is canonically ordered, so the first failure is the least one
    for (const auto& t : f.target.cones()) {
        bool ok = hit.count(t) > 0;
        if (ok) {
            auto gens = columns;
            for (const auto& b : t.span_basis()) gens.push_back(b);
            ok = rank(gens, target_rank) == target_rank;
        }
        if (!ok) return {false, t};
    }
    return {true, std::nullopt};
}

}  // namespace toricq
