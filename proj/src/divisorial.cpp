#include "toricq/divisorial.hpp"

#include <algorithm>
#include <future>

namespace toricq {

namespace {

void add_form(RatVector& row, std::size_t t, std::size_t n, std::span<const Integer> v, int sign) {
    for (std::size_t j = 0; j < n; ++j) row[t * n + j] += sign * v[j];
}

// gluing rows shared by all per-cone systems
LPProblem gluing_system(const Quasifan& fan) {
    const auto& maxi = fan.maximal_cones();
    const std::size_t n = fan.rank(), m = maxi.size();
    LPProblem p;
    p.a = RatMatrix(0, n * m);
    for (std::size_t s = 0; s < m; ++s)
        for (std::size_t t = s + 1; t < m; ++t)
            for (const auto& g : intersect(maxi[s], maxi[t]).generators()) {
                RatVector row(n * m);
                add_form(row, s, n, g, 1);
                add_form(row, t, n, g, -1);
                p.add_row(row, 0, Sense::Equal);
            }
    return p;
}

LPProblem cone_system(LPProblem p, const Quasifan& fan, std::size_t sigma, const std::vector<std::size_t>& home) {
    const auto& maxi = fan.maximal_cones();
    const std::size_t n = fan.rank(), m = maxi.size();
    for (const auto& r : maxi[sigma].generators()) {
        RatVector row(n * m);
        add_form(row, sigma, n, r, 1);
        p.add_row(row, 0, Sense::Equal);
    }
    const auto rays = fan.rays();
    for (std::size_t i = 0; i < rays.size(); ++i) {
        if (maxi[sigma].contains(std::span<const Integer>(rays[i]))) continue;
        RatVector row(n * m);
        add_form(row, home[i], n, rays[i], 1);
        p.add_row(row, -1, Sense::LessEqual);
    }
    return p;
}

// first maximal cone containing each ray
std::vector<std::size_t> ray_homes(const Quasifan& fan) {
    std::vector<std::size_t> home;
    for (const auto& r : fan.rays()) home.push_back(*fan.maximal_containing(Cone::from_generators(fan.rank(), {r})));
    return home;
}

}  // namespace

LPProblem divisor_system(const Quasifan& fan, std::size_t sigma) {
    if (sigma >= fan.maximal_cones().size()) throw InputError("divisor system: cone index out of range");
    return cone_system(gluing_system(fan), fan, sigma, ray_homes(fan));
}

namespace {

RatMatrix form_of(const RatVector& x, std::size_t t, std::size_t n) {
    RatMatrix u(1, n);
    for (std::size_t j = 0; j < n; ++j) u(0, j) = x[t * n + j];
    return u;
}

}  // namespace

DivisorialityCertificate is_divisorial(const Quasifan& fan, unsigned jobs) {
    if (!fan.is_fan()) throw InputError("divisoriality is decided for fans; this quasifan has lineality " + to_string(fan.minimal_cone()));
    const auto& maxi = fan.maximal_cones();
    const std::size_t n = fan.rank(), m = maxi.size();
    DivisorialityCertificate cert;
    if (m == 1) {
        // affine: the zero map into Q^0 already has Sigma_h = F(sigma)
        cert.divisorial = true;
        cert.map = SupportMap::zero(fan, 0);
        return cert;
    }

    std::vector<LPResult> results(m);
    const LPProblem glue = gluing_system(fan);
    const auto home = ray_homes(fan);
    auto solve_one = [&](std::size_t s) { results[s] = lp_feasible(cone_system(glue, fan, s, home)); };
    if (jobs <= 1) {
        for (std::size_t s = 0; s < m; ++s) solve_one(s);
    } else {
        std::vector<std::future<void>> running;
        for (unsigned w = 0; w < jobs; ++w)
            running.push_back(std::async(std::launch::async, [&, w] {
                for (std::size_t s = w; s < m; s += jobs) solve_one(s);
            }));
        for (auto& f : running) f.get();
    }

    for (std::size_t s = 0; s < m; ++s)
        if (!results[s].feasible) cert.refutations.push_back({s, results[s].farkas});
    if (!cert.refutations.empty()) return cert;

    // row s of the stacked map on cone t is the solution of system s
    std::vector<RatMatrix> mats(m, RatMatrix(m, n));
    for (std::size_t s = 0; s < m; ++s)
        for (std::size_t t = 0; t < m; ++t) {
            const RatMatrix u = form_of(results[s].witness, t, n);
            for (std::size_t j = 0; j < n; ++j) mats[t](s, j) = u(0, j);
        }
    SupportMap h(fan, m, std::move(mats));
    if (!is_strictly_convex(h))
        throw IncompleteCriterion("every per-cone system is feasible but the stacked support map is not strictly convex");
    cert.divisorial = true;
    cert.map = std::move(h);
    return cert;
}

std::optional<std::string> check_certificate(const Quasifan& fan, const DivisorialityCertificate& cert) {
    if (cert.divisorial) {
        if (!cert.map) return "positive certificate carries no support map";
        if (!(cert.map->source() == fan)) return "support map is defined on a different fan";
        const auto a = analyze(*cert.map);
        if (!a.convex) return "support map is not convex: " + a.obstruction;
        if (!a.strictly_convex) return "associated quasifan of the support map differs from the fan";
        return std::nullopt;
    }
    if (cert.refutations.empty()) return "negative certificate contains no refutation";
    for (const auto& r : cert.refutations) {
        if (r.cone >= fan.maximal_cones().size()) return "refutation names a cone index out of range";
        const LPProblem p = divisor_system(fan, r.cone);
        if (r.farkas.size() != p.constraints()) return "Farkas vector for cone " + std::to_string(r.cone) + " has the wrong length";
        if (!verify_farkas(p, r.farkas)) return "Farkas multipliers for cone " + std::to_string(r.cone) + " do not prove infeasibility";
    }
    return std::nullopt;
}

QuotientPresentation quotient_presentation(const SupportMap& h) {
    const auto a = analyze(h);
    if (!a.strictly_convex) throw InputError("quotient presentation requires a strictly convex support map");
    const std::size_t n = h.source().rank(), k = h.k();
    for (const auto& c : a.filled_graph.maximal_cones())
        if (!c.is_pointed()) throw InternalError("filled graph of a strictly convex map on a fan contains a line");
    QuotientPresentation q;
    q.lifted = a.filled_graph;
    q.projection = IntMatrix(n, n + k);
    for (std::size_t i = 0; i < n; ++i) q.projection(i, i) = 1;
    for (std::size_t i = 0; i < k; ++i) {
        IntVector e(n + k);
        e[n + i] = 1;
        q.kernel.push_back(std::move(e));
    }
    std::vector<Cone> images;
    for (const auto& c : q.lifted.maximal_cones()) images.push_back(image(c, q.projection));
    if (!(Quasifan::from_cones(n, images) == h.source())) throw InternalError("projected filled graph differs from the fan");
    return q;
}

}  // namespace toricq
