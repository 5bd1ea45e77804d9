#include <doctest.h>

#include "generators.hpp"
#include "known_fans.hpp"
#include "toricq/supportmap.hpp"

#include <map>
#include <random>

using namespace toricq;
using known::iv;

namespace {

Cone cone_of(std::size_t rank, std::vector<std::vector<long>> gens) {
    std::vector<IntVector> g;
    for (auto& v : gens) g.push_back(iv(v));
    return Cone::from_generators(rank, g);
}

RatMatrix rm(std::vector<std::vector<Rational>> rows, std::size_t cols) { return RatMatrix::from_rows(rows, cols); }

SupportMap plane_h() {
    return SupportMap::from_cone_matrices(known::plane_fan(), 1,
                                          {{known::plane_sigma1(), rm({{2, 2}}, 2)}, {known::plane_sigma2(), rm({{-1, 1}}, 2)}});
}

// the complete fan of the projective line, h(1) = a, h(-1) = b
SupportMap line_map(long a, long b) {
    const Cone pos = cone_of(1, {{1}}), neg = cone_of(1, {{-1}});
    return SupportMap::from_cone_matrices(Quasifan::from_cones(1, {pos, neg}), 1, {{pos, rm({{a}}, 1)}, {neg, rm({{-b}}, 1)}});
}

// |x| - |y| on the four quadrants
SupportMap saddle() {
    std::vector<std::pair<Cone, RatMatrix>> data;
    std::vector<Cone> cones;
    for (long sx : {1, -1})
        for (long sy : {1, -1}) {
            const Cone q = cone_of(2, {{sx, 0}, {0, sy}});
            cones.push_back(q);
            data.push_back({q, rm({{sx, -sy}}, 2)});
        }
    return SupportMap::from_cone_matrices(Quasifan::from_cones(2, cones), 1, data);
}

bool generated_by_contained_cones(const Cone& s, const Quasifan& delta) {
    std::vector<IntVector> gens;
    for (const auto& t : delta.cones())
        if (s.contains(t)) {
            const auto g = t.generators();
            gens.insert(gens.end(), g.begin(), g.end());
        }
    return Cone::from_generators(s.rank(), gens) == s;
}

}  // namespace

TEST_CASE("graph cone and filled graph of the two-cone plane map") {
    const SupportMap h = plane_h();
    const auto a = analyze(h);
    std::vector<IntVector> rays{iv({1, 0, 2}), iv({1, -1, 0}), iv({0, 1, 1}), iv({1, 1, 0})};
    std::sort(rays.begin(), rays.end(), [](const IntVector& x, const IntVector& y) { return canonical_less(x, y); });
    CHECK(a.graph_cone.rays() == rays);
    CHECK(a.graph_cone.is_pointed());
    REQUIRE(a.filled_graph.maximal_cones().size() == 2);
    CHECK(a.filled_graph.has_cone(cone_of(3, {{1, 0, 2}, {1, -1, 0}})));
    CHECK(a.filled_graph.has_cone(cone_of(3, {{0, 1, 1}, {1, 1, 0}})));
    CHECK(a.convex);
    CHECK(a.strictly_convex);
    CHECK(*a.associated == known::plane_fan());
    // the classical inequalities fail for h and -h alike
    CHECK(!gen::satisfies_local_upper_bounds(h, 1));
    CHECK(!gen::satisfies_local_upper_bounds(h, -1));
}

TEST_CASE("values and agreement") {
    const SupportMap h = plane_h();
    CHECK(h.value(RatVector{0, 1}) == RatVector{1});
    CHECK(h.value(RatVector{1, -1}) == RatVector{0});
    CHECK(h.value(RatVector{0, 0}) == RatVector{0});
    CHECK_THROWS_AS(h.value(RatVector{-1, 0}), InputError);
    // mismatch on the shared ray of two adjacent cones
    const Cone a = cone_of(2, {{1, 0}, {1, 1}}), b = cone_of(2, {{1, 1}, {0, 1}});
    const Quasifan q = Quasifan::from_cones(2, {a, b});
    CHECK_THROWS_AS(SupportMap::from_cone_matrices(q, 1, {{a, rm({{1, 0}}, 2)}, {b, rm({{0, 0}}, 2)}}), InputError);
    CHECK_NOTHROW(SupportMap::from_cone_matrices(q, 1, {{a, rm({{1, 0}}, 2)}, {b, rm({{0, 1}}, 2)}}));
    CHECK_THROWS_AS(SupportMap::from_cone_matrices(q, 1, {{a, rm({{1, 0}}, 2)}}), InputError);
    CHECK_THROWS_AS(SupportMap(q, 1, {rm({{1, 0, 0}}, 3), rm({{1, 0, 0}}, 3)}), InputError);
}

TEST_CASE("zero maps") {
    const Cone s = cone_of(3, {{1, 0, 0}, {0, 1, 0}, {1, 1, 1}});
    const Quasifan f = Quasifan::face_fan(s);
    SUBCASE("k = 1 gives the cone times zero") {
        const auto a = analyze(SupportMap::zero(f, 1));
        CHECK(a.graph_cone == cone_of(4, {{1, 0, 0, 0}, {0, 1, 0, 0}, {1, 1, 1, 0}}));
        CHECK(a.filled_graph == Quasifan::face_fan(a.graph_cone));
        CHECK(a.strictly_convex);
    }
    SUBCASE("k = 0 gives the cone over the support") {
        const auto a = analyze(SupportMap::zero(known::eight_fan(), 0));
        CHECK(a.graph_cone == known::eight_big_cone());
        CHECK(a.convex);
        CHECK(*a.associated == Quasifan::face_fan(known::eight_big_cone()));
        CHECK(!a.strictly_convex);
    }
    SUBCASE("k = 0 on the fan with the extra cone") {
        const auto a = analyze(SupportMap::zero(known::extra_fan(), 0));
        CHECK(a.filled_graph == Quasifan::face_fan(known::extra_big_cone()));
        CHECK(!a.strictly_convex);
    }
}

TEST_CASE("maps on the projective line are always convex") {
    for (long a = -3; a <= 3; ++a)
        for (long b = -3; b <= 3; ++b) {
            const SupportMap h = line_map(a, b);
            const bool oracle = gen::satisfies_local_upper_bounds(h, 1) || gen::satisfies_local_upper_bounds(h, -1);
            CHECK(oracle);
            CHECK(is_convex(h));
        }
    CHECK(is_strictly_convex(line_map(1, 1)));
    CHECK(!is_strictly_convex(line_map(1, -1)));  // linear, so the line is one cone
    CHECK(is_strictly_convex(line_map(1, -2)));
}

TEST_CASE("the saddle on the quadrant fan is not convex") {
    const SupportMap h = saddle();
    CHECK(!gen::satisfies_local_upper_bounds(h, 1));
    CHECK(!gen::satisfies_local_upper_bounds(h, -1));
    const auto a = analyze(h);
    CHECK(!a.convex);
    CHECK(!a.obstruction.empty());
    CHECK_THROWS_AS(associated_quasifan(h), InputError);
    CHECK(!is_strictly_convex(h));
}

TEST_CASE("pullbacks") {
    const SupportMap h = plane_h();
    const SupportMap same = pullback(h, IntMatrix::identity(2), h.source());
    CHECK(same.matrices() == h.matrices());

    const Quasifan sub = Quasifan::face_fan(known::plane_sigma1());
    const SupportMap r = gen::restrict_to(h, sub);
    const auto a = analyze(r);
    CHECK(a.convex);
    CHECK(*a.associated == sub);

    IntMatrix swap(2, 2);
    swap(0, 1) = swap(1, 0) = 1;
    CHECK_THROWS_AS(pullback(h, swap, known::plane_fan()), InputError);
}

TEST_CASE("descent to the quotient fan") {
    SUBCASE("pointed source is left alone") {
        const auto d = descend_to_quotient_fan(plane_h());
        CHECK(d.projection == IntMatrix::identity(2));
        CHECK(d.map.matrices() == plane_h().matrices());
    }
    SUBCASE("linear map on a half-plane") {
        const Quasifan hp = Quasifan::face_fan(cone_of(2, {{1, 0}, {-1, 0}, {0, 1}}));
        const SupportMap h(hp, 1, {rm({{3, 5}}, 2)});
        CHECK(is_strictly_convex(h));
        const auto d = descend_to_quotient_fan(h);
        CHECK(d.map.source() == Quasifan::face_fan(cone_of(1, {{1}})));
        CHECK(d.map.matrices()[0] == rm({{5}}, 1));
    }
    SUBCASE("non-convex input is rejected") { CHECK_THROWS_AS(descend_to_quotient_fan(saddle()), InputError); }
    SUBCASE("fans times a line") {
        std::mt19937 rng(99);
        for (int t = 0; t < 25; ++t) {
            const auto sub = gen::random_subdivision(rng, 2, 3 + rng() % 4, rng() % 2);
            const long a = static_cast<long>(rng() % 5) - 2, b = static_cast<long>(rng() % 5) - 2;
            const IntVector line = iv({a, b, 1});
            IntMatrix g(2, 3);  // kills the line
            g(0, 0) = 1;
            g(0, 2) = -a;
            g(1, 1) = 1;
            g(1, 2) = -b;
            const RatMatrix gr = to_rational(g);
            const RatMatrix ell = gen::row_matrix(gen::random_vector(rng, 3, -2, 2));
            std::vector<Cone> cones;
            std::vector<std::pair<Cone, RatMatrix>> data;
            const auto& maxi = sub.fan.maximal_cones();
            for (std::size_t i = 0; i < maxi.size(); ++i) {
                std::vector<IntVector> gens{line, negated(line)};
                for (const auto& r : maxi[i].rays()) gens.push_back(iv({r[0].get_si(), r[1].get_si(), 0}));
                const Cone c = Cone::from_generators(3, gens);
                RatMatrix u = sub.h.matrices()[i] * gr;
                for (std::size_t j = 0; j < 3; ++j) u(0, j) += ell(0, j);
                cones.push_back(c);
                data.push_back({c, u});
            }
            const Quasifan q = Quasifan::from_cones(3, cones);
            const SupportMap h = SupportMap::from_cone_matrices(q, 1, data);
            REQUIRE(is_strictly_convex(h));
            const auto d = descend_to_quotient_fan(h);
            CHECK(d.map.source().is_fan());
            CHECK(is_strictly_convex(d.map));
            CHECK(d.map.source().maximal_cones().size() == maxi.size());
            // h and the pushed-down map differ by one global linear form
            const auto& qm = q.maximal_cones();
            std::optional<RatMatrix> offset;
            for (std::size_t i = 0; i < qm.size(); ++i) {
                const Cone img = image(qm[i], d.projection);
                const auto& dm = d.map.source().maximal_cones();
                const auto j = std::find(dm.begin(), dm.end(), img) - dm.begin();
                REQUIRE(static_cast<std::size_t>(j) < dm.size());
                RatMatrix diff = h.matrices()[i];
                const RatMatrix down = d.map.matrices()[j] * to_rational(d.projection);
                for (std::size_t c = 0; c < 3; ++c) diff(0, c) -= down(0, c);
                if (!offset) offset = diff;
                CHECK(diff == *offset);
            }
        }
    }
}

TEST_CASE("associated quasifans of convex maps from classical data") {
    std::mt19937 rng(4);
    int checked = 0;
    for (int t = 0; t < 40; ++t) {
        const std::size_t n = 2 + rng() % 2;
        const auto rf = gen::max_form_fan(rng, n, n + 1 + rng() % 3);
        if (!rf) continue;
        const Quasifan sub = gen::random_subfan(rng, rf->fan);
        const SupportMap h = gen::restrict_to(rf->h, sub);
        REQUIRE(gen::satisfies_local_upper_bounds(h, -1));
        const auto a = analyze(h);
        REQUIRE(a.convex);
        ++checked;
        const Quasifan& sigma = *a.associated;
        CHECK(validate(sigma.rank(), sigma.cones()).valid);
        CHECK(refines(sub, sigma));
        for (const auto& s : sigma.cones()) CHECK(generated_by_contained_cones(s, sub));
    }
    CHECK(checked > 20);
}

TEST_CASE("convexity on complete plane fans matches the classical inequalities") {
    std::mt19937 rng(8);
    std::uniform_int_distribution<int> val(-3, 3);
    int convex = 0, nonconvex = 0;
    for (int t = 0; t < 60; ++t) {
        const Quasifan f = gen::complete_fan_2d(rng, 3 + rng() % 3);
        // values on rays determine h on a simplicial fan
        std::map<IntVector, Rational> v;
        for (const auto& r : f.rays()) v[r] = val(rng);
        std::vector<RatMatrix> mats;
        for (const auto& c : f.maximal_cones()) {
            const RatMatrix a = to_rational(rows_matrix(c.rays(), 2));
            const auto u = solve(a, RatVector{v[c.rays()[0]], v[c.rays()[1]]});
            mats.push_back(RatMatrix::from_rows({*u}, 2));
        }
        const SupportMap h(f, 1, mats);
        const bool oracle = gen::satisfies_local_upper_bounds(h, 1) || gen::satisfies_local_upper_bounds(h, -1);
        CHECK(is_convex(h) == oracle);
        (oracle ? convex : nonconvex) += 1;
    }
    CHECK(convex > 5);
    CHECK(nonconvex > 5);
}
