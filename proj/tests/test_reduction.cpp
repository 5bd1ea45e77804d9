#include <doctest.h>

#include "generators.hpp"
#include "known_fans.hpp"
#include "toricq/reduction.hpp"

#include <random>
#include <set>

using namespace toricq;
using known::iv;

namespace {

Cone cone_of(std::size_t rank, std::vector<std::vector<long>> gens) {
    std::vector<IntVector> g;
    for (auto& v : gens) g.push_back(iv(v));
    return Cone::from_generators(rank, g);
}

Quasifan plane_fan() {
    return Quasifan::from_cones(2, {cone_of(2, {{1, 0}, {0, 1}}), cone_of(2, {{0, 1}, {-1, -1}}), cone_of(2, {{1, 0}, {-1, -1}})});
}

// Exhaustive oracle: every family of ray-closed cones, no pruning.
std::set<Quasifan> brute_force_coarsenings(const Quasifan& fan) {
    const auto rays = fan.rays();
    const std::size_t n = fan.rank();
    std::vector<Cone> cand;
    for (unsigned mask = 1; mask < (1u << rays.size()); ++mask) {
        std::vector<IntVector> g;
        for (std::size_t i = 0; i < rays.size(); ++i)
            if (mask >> i & 1) g.push_back(rays[i]);
        const Cone c = Cone::from_generators(n, g);
        bool closed = true;
        for (std::size_t i = 0; i < rays.size(); ++i)
            if (!(mask >> i & 1) && c.contains(std::span<const Integer>(rays[i]))) closed = false;
        if (closed && std::find(cand.begin(), cand.end(), c) == cand.end()) cand.push_back(c);
    }
    REQUIRE(cand.size() < 20);
    std::set<Quasifan> out;
    for (unsigned pick = 1; pick < (1u << cand.size()); ++pick) {
        std::vector<Cone> fam;
        for (std::size_t i = 0; i < cand.size(); ++i)
            if (pick >> i & 1) fam.push_back(cand[i]);
        bool ok = true;
        for (std::size_t i = 0; i < fam.size() && ok; ++i)
            for (std::size_t j = 0; j < fam.size() && ok; ++j)
                if (i != j && fam[i].contains(fam[j])) ok = false;
        if (!ok || !validate(n, fam).valid) continue;
        for (const auto& m : fan.maximal_cones())
            if (std::none_of(fam.begin(), fam.end(), [&](const Cone& c) { return c.contains(m); })) ok = false;
        for (const auto& c : fam) {
            bool spanned = false;
            for (const auto& t : fan.cones())
                if (c.relative_interior_contains(std::span<const Rational>(t.relative_interior_point()))) spanned = true;
            if (!spanned) ok = false;
        }
        if (ok) out.insert(Quasifan::from_cones(n, fam));
    }
    return out;
}

std::set<Quasifan> as_set(const std::vector<Quasifan>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("a single cone has only itself as coarsening") {
    const Quasifan f = Quasifan::face_fan(cone_of(3, {{1, 0, 0}, {0, 1, 0}, {1, 1, 3}}));
    const auto all = enumerate_coarsenings(f);
    REQUIRE(all.size() == 1);
    CHECK(all[0] == f);
}

TEST_CASE("coarsenings of the two-cone plane fan match exhaustive search") {
    const Quasifan f = known::plane_fan();
    const auto all = enumerate_coarsenings(f);
    CHECK(as_set(all) == brute_force_coarsenings(f));
    CHECK(std::count(all.begin(), all.end(), f) == 1);
    const Quasifan hull = Quasifan::face_fan(cone_of(2, {{1, -1}, {0, 1}}));
    CHECK(std::count(all.begin(), all.end(), hull) == 1);
}

TEST_CASE("coarsenings of small random plane fans match exhaustive search") {
    std::mt19937 rng(11);
    for (int it = 0; it < 25; ++it) {
        const Quasifan full = gen::complete_fan_2d(rng, 3 + it % 2);
        const Quasifan f = gen::random_subfan(rng, full);
        CHECK(as_set(enumerate_coarsenings(f)) == brute_force_coarsenings(f));
    }
}

TEST_CASE("exceeding the cap is an error, not a truncation") {
    CHECK_THROWS_AS(enumerate_coarsenings(known::eight_fan(), 10), CapExceeded);
    CHECK_THROWS_AS(tdr(known::eight_fan(), 10), CapExceeded);
}

TEST_CASE("eight-vector fan: only the big cone is realizable and it is the reduction") {
    const Quasifan f = known::eight_fan();
    const Quasifan big = Quasifan::face_fan(known::eight_big_cone());
    const auto all = enumerate_coarsenings(f);
    CHECK(std::count(all.begin(), all.end(), f) == 1);
    CHECK(std::count(all.begin(), all.end(), big) == 1);
    const auto rc = realizable_coarsenings(f);
    REQUIRE(rc.coarsenings.size() == 1);
    CHECK(rc.coarsenings[0].sigma == big);
    CHECK(rc.warnings.empty());

    const auto r = tdr(f);
    CHECK(r.map.matrix == IntMatrix::identity(3));
    CHECK(r.map.target == big);
    CHECK(r.surjective);
}

TEST_CASE("fan with the extra cone: reduction onto the big cone is not surjective") {
    const Quasifan f = known::extra_fan();
    const Quasifan big = Quasifan::face_fan(known::extra_big_cone());
    const auto rc = realizable_coarsenings(f);
    REQUIRE(rc.coarsenings.size() == 1);
    CHECK(rc.coarsenings[0].sigma == big);
    const auto r = tdr(f);
    CHECK(r.map.matrix == IntMatrix::identity(4));
    CHECK(r.map.target == big);
    CHECK(!r.surjective);
    REQUIRE(r.obstruction.has_value());
    CHECK(big.has_cone(*r.obstruction));
}

TEST_CASE("a divisorial fan is its own reduction") {
    for (const Quasifan& f : {plane_fan(), known::plane_fan()}) {
        const auto r = tdr(f);
        CHECK(r.map.matrix == IntMatrix::identity(f.rank()));
        CHECK(r.map.target == f);
        CHECK(r.surjective);
        CHECK(std::any_of(r.coarsenings.begin(), r.coarsenings.end(), [&](const Coarsening& c) { return c.sigma == f; }));
    }
}

TEST_CASE("reduction properties on random fans") {
    std::mt19937 rng(2024);
    int checked = 0;
    for (int it = 0; it < 30; ++it) {
        const std::size_t n = 2 + it % 2;
        const auto sub = gen::random_subdivision(rng, n, n + 3, it % 3 == 0);
        const Quasifan f = gen::random_subfan(rng, sub.fan);
        if (!f.is_fan() || f.rays().size() > 8) continue;
        const auto r = tdr(f, default_cap, it % 2 ? 2 : 1);
        ++checked;
        // every realizable coarsening factors uniquely through R
        const std::size_t d = r.map.target.rank();
        CHECK(rank(r.map.matrix) == d);
        for (std::size_t i = 0; i < r.coarsenings.size(); ++i) {
            const auto& c = r.coarsenings[i];
            CHECK(r.factorizations[i] * r.map.matrix == c.quotient.projection);
            CHECK(check_fan_map(r.factorizations[i], r.map.target, c.quotient.fan));
            CHECK(is_strictly_convex(c.quotient_map));
            CHECK(associated_quasifan(c.map) == c.sigma);
            CHECK(refines(f, c.sigma));
        }
        // the target is divisorial and reduces to itself
        CHECK(is_divisorial(r.map.target).divisorial);
        const auto again = tdr(r.map.target);
        CHECK(again.map.matrix == IntMatrix::identity(d));
        CHECK(again.map.target == r.map.target);
    }
    CHECK(checked > 10);
}

TEST_CASE("fans with convex support admit a divisorial reduction") {
    std::mt19937 rng(99);
    for (int it = 0; it < 12; ++it) {
        const std::size_t n = 2 + it % 2;
        const auto sub = gen::random_subdivision(rng, n, n + 3, false);
        CHECK(tdr(sub.fan).surjective);
    }
}
