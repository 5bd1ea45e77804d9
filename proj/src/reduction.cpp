#include "toricq/reduction.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <set>

namespace toricq {

namespace {

bool meet_properly(const Cone& a, const Cone& b) {
    const Cone c = intersect(a, b);
    return is_face_of(c, a) && is_face_of(c, b);
}

struct Search {
    const Quasifan& fan;
    std::size_t cap;
    std::vector<Cone> candidates;
    std::vector<std::vector<std::size_t>> containing;  // per maximal fan cone
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
        // each maximal cone must be the smallest one over some fan cone
        for (const auto& c : cones) {
            const bool spanned = std::any_of(fan.cones().begin(), fan.cones().end(), [&](const Cone& t) {
                return c.contains(t) && c.relative_interior_contains(std::span<const Rational>(t.relative_interior_point()));
            });
            if (!spanned) return;
        }
        if (!validate(fan.rank(), cones).valid) return;
        found.insert(Quasifan::from_cones(fan.rank(), cones));
    }

    void run(std::size_t i) {
        if (++visited > cap) throw CapExceeded(cap, visited);
        const auto& maxi = fan.maximal_cones();
        if (i == maxi.size()) return finish();
        for (std::size_t s : chosen)
            if (candidates[s].contains(maxi[i])) return run(i + 1);
        for (std::size_t c : containing[i]) {
            if (!fits(c)) continue;
            chosen.push_back(c);
            run(i + 1);
            chosen.pop_back();
        }
    }
};

std::optional<Coarsening> realize(const Quasifan& fan, const Quasifan& sigma, std::string& warning) {
    QuotientFan q = quotient_fan(sigma);
    DivisorialityCertificate cert;
    try {
        cert = is_divisorial(q.fan);
    } catch (const IncompleteCriterion& e) {
        warning = "dropped " + to_string(sigma) + ": " + e.what();
        return std::nullopt;
    }
    if (!cert.divisorial) return std::nullopt;
    SupportMap h = pullback(*cert.map, q.projection, fan);
    const auto a = analyze(h);
    if (!a.convex || !(*a.associated == sigma)) {
        warning = "dropped " + to_string(sigma) + ": pulled-back map does not realize it";
        return std::nullopt;
    }
    return Coarsening{sigma, std::move(q), std::move(*cert.map), std::move(h)};
}

}  // namespace

std::vector<Quasifan> enumerate_coarsenings(const Quasifan& fan, std::size_t cap) {
    if (!fan.is_fan()) throw InputError("coarsenings are enumerated for fans; quotient the quasifan first");
    const auto rays = fan.rays();
    const std::size_t n = fan.rank(), nr = rays.size();
    if (nr >= 8 * sizeof(std::size_t) - 1 || (std::size_t{1} << nr) > cap) throw CapExceeded(cap, std::size_t{1} << std::min<std::size_t>(nr, 62));

    Search s{fan, cap, {}, {}, {}, {}, {}, 0};
    std::set<Cone> cands;
    if (nr == 0) cands.insert(Cone::zero(n));
    for (std::size_t mask = 1; mask < (std::size_t{1} << nr); ++mask) {
        std::vector<IntVector> gens;
        for (std::size_t i = 0; i < nr; ++i)
            if (mask >> i & 1) gens.push_back(rays[i]);
        Cone c = Cone::from_generators(n, gens);
        // keep only ray sets closed under "contained in the cone they generate"
        bool closed = true;
        for (std::size_t i = 0; i < nr && closed; ++i)
            if (!(mask >> i & 1) && c.contains(std::span<const Integer>(rays[i]))) closed = false;
        if (closed) cands.insert(std::move(c));
    }
    s.candidates.assign(cands.begin(), cands.end());
    for (const auto& m : fan.maximal_cones()) {
        std::vector<std::size_t> idx;
        for (std::size_t c = 0; c < s.candidates.size(); ++c)
            if (s.candidates[c].contains(m)) idx.push_back(c);
        s.containing.push_back(std::move(idx));
    }
    s.run(0);
    return {s.found.begin(), s.found.end()};
}

RealizableCoarsenings realizable_coarsenings(const Quasifan& fan, std::size_t cap, unsigned jobs) {
    const auto all = enumerate_coarsenings(fan, cap);
    std::vector<std::optional<Coarsening>> results(all.size());
    std::vector<std::string> warnings(all.size());
    auto check = [&](std::size_t i) { results[i] = realize(fan, all[i], warnings[i]); };
    if (jobs <= 1) {
        for (std::size_t i = 0; i < all.size(); ++i) check(i);
    } else {
        std::vector<std::future<void>> running;
        for (unsigned w = 0; w < jobs; ++w)
            running.push_back(std::async(std::launch::async, [&, w] {
                for (std::size_t i = w; i < all.size(); i += jobs) check(i);
            }));
        for (auto& f : running) f.get();
    }
    RealizableCoarsenings out;
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (results[i]) out.coarsenings.push_back(std::move(*results[i]));
        if (!warnings[i].empty()) out.warnings.push_back(warnings[i]);
    }
    return out;
}

ReductionResult tdr(const Quasifan& fan, std::size_t cap, unsigned jobs) {
    auto rc = realizable_coarsenings(fan, cap, jobs);
    if (rc.coarsenings.empty()) throw InternalError("no realizable coarsening found; the trivial map always realizes one");
    const std::size_t n = fan.rank();

    // F = (F_1, ..., F_r) stacked
    std::vector<std::size_t> offset;
    std::size_t total = 0;
    for (const auto& c : rc.coarsenings) {
        offset.push_back(total);
        total += c.quotient.projection.rows();
    }
    IntMatrix f(total, n);
    for (std::size_t i = 0; i < rc.coarsenings.size(); ++i) {
        const auto& p = rc.coarsenings[i].quotient.projection;
        for (std::size_t a = 0; a < p.rows(); ++a)
            for (std::size_t j = 0; j < n; ++j) f(offset[i] + a, j) = p(a, j);
    }
    std::vector<IntVector> columns;
    for (std::size_t j = 0; j < n; ++j) columns.push_back(f.column(j));

    // N' = saturation of F(N); keep the columns as basis when they already are one
    std::vector<IntVector> basis;
    IntMatrix r;
    if (rank(columns, total) == n && is_saturated(columns, total)) {
        basis = columns;
        r = IntMatrix::identity(n);
    } else {
        basis = saturation(columns, total);
        const RatMatrix bt = to_rational(rows_matrix(basis, total).transpose());
        r = IntMatrix(basis.size(), n);
        for (std::size_t j = 0; j < n; ++j) {
            const auto x = solve(bt, std::span<const Rational>(to_rational(std::span<const Integer>(columns[j]))));
            if (!x) throw InternalError("image of N is not contained in its saturation");
            for (std::size_t t = 0; t < basis.size(); ++t) {
                if ((*x)[t].get_den() != 1) throw InternalError("image of N has non-integral coordinates in N'");
                r(t, j) = (*x)[t].get_num();
            }
        }
    }
    const std::size_t d = basis.size();

    std::vector<IntMatrix> g;
    for (std::size_t i = 0; i < rc.coarsenings.size(); ++i) {
        const std::size_t ni = rc.coarsenings[i].quotient.projection.rows();
        IntMatrix gi(ni, d);
        for (std::size_t a = 0; a < ni; ++a)
            for (std::size_t t = 0; t < d; ++t) gi(a, t) = basis[t][offset[i] + a];
        g.push_back(std::move(gi));
    }

    // Smallest cone of the induced product fan over R(sigma): the preimage in N'
    // of the product of the smallest quotient-fan cones over F_i(sigma).
    std::set<Cone> generated;
    for (const auto& c : fan.cones()) {
        std::vector<IntVector> ineq, eq;
        for (std::size_t i = 0; i < rc.coarsenings.size(); ++i) {
            const auto& qi = rc.coarsenings[i].quotient;
            const auto mu = qi.fan.minimal_cone_containing(image(c, qi.projection));
            if (!mu) throw InternalError("quotient projection is not a fan map");
            auto pull = [&](const IntVector& form) {
                IntVector out(d);
                for (std::size_t t = 0; t < d; ++t)
                    for (std::size_t a = 0; a < form.size(); ++a) out[t] += form[a] * g[i](a, t);
                return out;
            };
            for (const auto& fct : mu->facets()) ineq.push_back(pull(fct));
            for (const auto& e : mu->equations()) eq.push_back(pull(e));
        }
        generated.insert(Cone::from_inequalities(d, ineq, eq));
    }
    std::vector<Cone> gens(generated.begin(), generated.end());
    const ValidationReport rep = validate(d, gens);
    if (!rep.valid) throw InternalError("cones of the reduction target intersect improperly: " + rep.message);
    Quasifan target = Quasifan::from_cones(d, gens);

    ReductionResult out;
    out.map = FanMap::make(r, fan, target);
    out.lattice = std::move(basis);
    for (std::size_t i = 0; i < rc.coarsenings.size(); ++i) {
        const auto& qi = rc.coarsenings[i].quotient;
        if (!(g[i] * r == qi.projection)) throw InternalError("factorization G_i R = F_i fails");
        if (!check_fan_map(g[i], target, qi.fan)) throw InternalError("factorization is not a fan map");
    }
    out.factorizations = std::move(g);
    out.coarsenings = std::move(rc.coarsenings);
    out.warnings = std::move(rc.warnings);
    const auto s = morphism_surjective(out.map);
    out.surjective = s.surjective;
    out.obstruction = s.obstruction;
    return out;
}

}  // namespace toricq
