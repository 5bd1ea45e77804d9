#include <doctest.h>

#include "toricq/lp.hpp"

#include <random>

using namespace toricq;

namespace {

// Fourier-Motzkin elimination: independent feasibility oracle for small systems.
bool fm_feasible(std::vector<RatVector> rows, std::vector<Rational> rhs, std::size_t vars) {
    for (std::size_t v = 0; v < vars; ++v) {
        std::vector<RatVector> nr;
        std::vector<Rational> nb;
        std::vector<std::size_t> pos, neg;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i][v] > 0)
                pos.push_back(i);
            else if (rows[i][v] < 0)
                neg.push_back(i);
            else {
                nr.push_back(rows[i]);
                nb.push_back(rhs[i]);
            }
        }
        for (auto p : pos)
            for (auto n : neg) {
                const Rational a = rows[p][v], c = -rows[n][v];
                RatVector r(vars);
                for (std::size_t j = 0; j < vars; ++j) r[j] = c * rows[p][j] + a * rows[n][j];
                nr.push_back(r);
                nb.push_back(c * rhs[p] + a * rhs[n]);
            }
        rows = std::move(nr);
        rhs = std::move(nb);
    }
    for (const auto& b : rhs)
        if (b < 0) return false;
    return true;
}

}  // namespace

TEST_CASE("two contradictory bounds give the Farkas certificate (1,1)") {
    LPProblem p;
    p.add_row({1}, 1, Sense::LessEqual);
    p.add_row({-1}, -2, Sense::LessEqual);
    const auto r = lp_feasible(p);
    CHECK(!r.feasible);
    CHECK(r.farkas == RatVector{1, 1});
    CHECK(verify_farkas(p, r.farkas));
}

TEST_CASE("feasible system returns an exact witness") {
    LPProblem p;
    p.add_row({1, 1}, 4, Sense::Equal);
    p.add_row({-1, 0}, Rational(-3, 2), Sense::LessEqual);
    p.add_row({0, -1}, -1, Sense::LessEqual);
    const auto r = lp_feasible(p);
    REQUIRE(r.feasible);
    CHECK(verify_witness(p, r.witness));
}

TEST_CASE("equality rows accept free-sign multipliers") {
    LPProblem p;
    p.add_row({1, 0}, 1, Sense::Equal);
    p.add_row({1, 0}, 2, Sense::Equal);
    const auto r = lp_feasible(p);
    CHECK(!r.feasible);
    CHECK(verify_farkas(p, r.farkas));
}

TEST_CASE("empty problem is feasible") {
    LPProblem p;
    p.a = RatMatrix(0, 3);
    const auto r = lp_feasible(p);
    CHECK(r.feasible);
    CHECK(r.witness.size() == 3);
}

TEST_CASE("tampered certificates are rejected") {
    LPProblem p;
    p.add_row({1}, 1, Sense::LessEqual);
    p.add_row({-1}, -2, Sense::LessEqual);
    CHECK(!verify_farkas(p, {1, 2}));
    CHECK(!verify_farkas(p, {-1, -1}));
    CHECK(!verify_witness(p, {Rational(3, 2)}));
}

TEST_CASE("lp_feasible agrees with Fourier-Motzkin on random systems and is sound both ways") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> coef(-3, 3);
    int feasible = 0, infeasible = 0;
    for (int t = 0; t < 300; ++t) {
        const std::size_t vars = 1 + rng() % 3;
        const std::size_t rows = 1 + rng() % 6;
        LPProblem p;
        p.a = RatMatrix(0, vars);
        std::vector<RatVector> fm_rows;
        std::vector<Rational> fm_rhs;
        for (std::size_t i = 0; i < rows; ++i) {
            RatVector r(vars);
            for (auto& x : r) x = coef(rng);
            const Rational b = coef(rng);
            const Sense s = (rng() % 4 == 0) ? Sense::Equal : Sense::LessEqual;
            p.add_row(r, b, s);
            fm_rows.push_back(r);
            fm_rhs.push_back(b);
            if (s == Sense::Equal) {
                RatVector neg(vars);
                for (std::size_t j = 0; j < vars; ++j) neg[j] = -r[j];
                fm_rows.push_back(neg);
                fm_rhs.push_back(-b);
            }
        }
        const auto r = lp_feasible(p);
        CHECK(r.feasible == fm_feasible(fm_rows, fm_rhs, vars));
        if (r.feasible) {
            ++feasible;
            CHECK(verify_witness(p, r.witness));
        } else {
            ++infeasible;
            CHECK(verify_farkas(p, r.farkas));
        }
        // determinism
        const auto again = lp_feasible(p);
        CHECK(again.witness == r.witness);
        CHECK(again.farkas == r.farkas);
    }
    CHECK(feasible > 20);
    CHECK(infeasible > 20);
}

TEST_CASE("equality-heavy systems: inconsistent, pinned and free") {
    // x + y = 1, x - y = 1, 2x = 3: no solution at all
    LPProblem p;
    p.add_row({1, 1}, 1, Sense::Equal);
    p.add_row({1, -1}, 1, Sense::Equal);
    p.add_row({2, 0}, 3, Sense::Equal);
    auto r = lp_feasible(p);
    CHECK(!r.feasible);
    CHECK(verify_farkas(p, r.farkas));

    // x = 1, y = 2 pinned, then x + y <= 2 fails
    LPProblem q;
    q.add_row({1, 0}, 1, Sense::Equal);
    q.add_row({0, 1}, 2, Sense::Equal);
    q.add_row({1, 1}, 2, Sense::LessEqual);
    r = lp_feasible(q);
    CHECK(!r.feasible);
    CHECK(verify_farkas(q, r.farkas));
    q.b[2] = 3;
    r = lp_feasible(q);
    CHECK(r.feasible);
    CHECK(r.witness == RatVector{1, 2});

    std::mt19937 rng(17);
    std::uniform_int_distribution<int> coef(-2, 2);
    int feasible = 0, infeasible = 0;
    for (int t = 0; t < 300; ++t) {
        const std::size_t vars = 2 + rng() % 3;
        LPProblem s;
        s.a = RatMatrix(0, vars);
        std::vector<RatVector> fm_rows;
        std::vector<Rational> fm_rhs;
        for (std::size_t i = 0; i < 2 + rng() % 5; ++i) {
            RatVector row(vars);
            for (auto& x : row) x = coef(rng);
            const Rational b = coef(rng);
            const bool eq = rng() % 2 == 0;
            s.add_row(row, b, eq ? Sense::Equal : Sense::LessEqual);
            fm_rows.push_back(row);
            fm_rhs.push_back(b);
            if (eq) {
                for (auto& x : row) x = -x;
                fm_rows.push_back(row);
                fm_rhs.push_back(-b);
            }
        }
        const auto res = lp_feasible(s);
        CHECK(res.feasible == fm_feasible(fm_rows, fm_rhs, vars));
        (res.feasible ? feasible : infeasible)++;
    }
    CHECK(feasible > 20);
    CHECK(infeasible > 20);
}
