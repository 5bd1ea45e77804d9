#pragma once

// Small fixed fans used as golden cases.

#include "toricq/fan.hpp"

#include <vector>

namespace known {

using toricq::Cone;
using toricq::IntVector;
using toricq::Quasifan;
using toricq::Rational;
using toricq::RatVector;

inline IntVector iv(std::vector<long> v) { return IntVector(v.begin(), v.end()); }

inline Cone cone(std::size_t rank, std::vector<RatVector> gens) { return Cone::from_generators(rank, gens); }

inline RatVector rv(std::vector<Rational> v) { return RatVector(v.begin(), v.end()); }

// two cones in the plane
inline Cone plane_sigma1() { return cone(2, {{1, 0}, {1, -1}}); }
inline Cone plane_sigma2() { return cone(2, {{0, 1}, {1, 1}}); }
inline Quasifan plane_fan() { return Quasifan::from_cones(2, {plane_sigma1(), plane_sigma2()}); }

// eight vectors in Q^3, optionally padded with a zero fourth coordinate
inline std::vector<RatVector> eight_vectors(bool pad) {
    std::vector<RatVector> v{{2, 2, 1}, {-2, 2, 1}, {-2, -2, 1}, {2, -2, 1},
                             {1, 1, 1}, {-1, 1, 1}, {-1, -1, 1}, {Rational(2, 3), Rational(1, 3), 1}};
    if (pad)
        for (auto& x : v) x.push_back(0);
    return v;
}

inline std::vector<Cone> five_cones(bool pad) {
    const auto v = eight_vectors(pad);
    const std::size_t n = pad ? 4 : 3;
    auto c = [&](std::initializer_list<int> idx) {
        std::vector<RatVector> g;
        for (int i : idx) g.push_back(v[i - 1]);
        return Cone::from_generators(n, g);
    };
    return {c({1, 2, 5, 6}), c({2, 3, 6, 7}), c({3, 4, 7, 8}), c({1, 4, 5, 8}), c({5, 6, 7, 8})};
}

inline Quasifan eight_fan() { return Quasifan::from_cones(3, five_cones(false)); }
inline Cone eight_inner_cone() { return five_cones(false)[4]; }
inline Cone eight_big_cone() {
    const auto v = eight_vectors(false);
    return Cone::from_generators(3, std::vector<RatVector>{v[0], v[1], v[2], v[3]});
}

inline Cone extra_cone() {
    const auto v = eight_vectors(true);
    return Cone::from_generators(4, std::vector<RatVector>{v[4], v[5], {0, 0, 0, 1}});
}
inline Quasifan extra_fan() {
    auto cs = five_cones(true);
    cs.push_back(extra_cone());
    return Quasifan::from_cones(4, cs);
}
inline Cone extra_big_cone() {
    const auto v = eight_vectors(true);
    return Cone::from_generators(4, std::vector<RatVector>{v[0], v[1], v[2], v[3], {0, 0, 0, 1}});
}

inline Quasifan two_planes_fan() {
    return Quasifan::from_cones(4, {cone(4, {{1, 0, 0, 0}, {0, 1, 0, 0}}), cone(4, {{0, 0, 1, 0}, {0, 0, 0, 1}})});
}
inline std::vector<IntVector> two_planes_subtorus() { return {iv({1, 1, 0, -1})}; }

}  // namespace known
