#include "double_description.hpp"

#include <boost/dynamic_bitset.hpp>

namespace toricq::detail {

namespace {

struct Ray {
    IntVector v;
    boost::dynamic_bitset<> tight;  // processed inequalities vanishing on v
};

void combine(IntVector& target, const Integer& a, const Integer& b, const IntVector& other) {
    // target := a * target - b * other
    for (std::size_t i = 0; i < target.size(); ++i) target[i] = a * target[i] - b * other[i];
}

}  // namespace

DDResult double_description(const std::vector<IntVector>& inequalities, std::size_t dim) {
    const std::size_t m = inequalities.size();
    std::vector<IntVector> lin;
    for (std::size_t i = 0; i < dim; ++i) {
        IntVector e(dim);
        e[i] = 1;
        lin.push_back(std::move(e));
    }
    std::vector<Ray> rays;

    for (std::size_t k = 0; k < m; ++k) {
        const IntVector& a = inequalities[k];
        if (a.size() != dim) throw InputError("inequality has wrong length");

        std::size_t pick = lin.size();
        Integer al;
        for (std::size_t i = 0; i < lin.size(); ++i) {
            al = dot(a, lin[i]);
            if (al != 0) {
                pick = i;
                break;
            }
        }

        if (pick < lin.size()) {
            IntVector l = lin[pick];
            if (al < 0) {
                l = negated(l);
                al = -al;
            }
            std::vector<IntVector> next_lin;
            for (std::size_t i = 0; i < lin.size(); ++i) {
                if (i == pick) continue;
                IntVector w = lin[i];
                const Integer aw = dot(a, w);
                if (aw != 0) combine(w, al, aw, l);
                next_lin.push_back(primitive(std::span<const Integer>(w)));
            }
            for (auto& r : rays) {
                const Integer ar = dot(a, r.v);
                if (ar != 0) {
                    combine(r.v, al, ar, l);
                    r.v = primitive(std::span<const Integer>(r.v));
                }
                r.tight.push_back(true);
            }
            Ray nr{primitive(std::span<const Integer>(l)), boost::dynamic_bitset<>(k + 1)};
            // earlier inequalities vanish on the whole lineality space
            for (std::size_t j = 0; j < k; ++j) nr.tight.set(j);
            rays.push_back(std::move(nr));
            lin = std::move(next_lin);
            continue;
        }

        std::vector<Integer> val(rays.size());
        std::vector<std::size_t> plus, minus, zero;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            val[i] = dot(a, rays[i].v);
            if (val[i] > 0)
                plus.push_back(i);
            else if (val[i] < 0)
                minus.push_back(i);
            else
                zero.push_back(i);
        }

        std::vector<Ray> next;
        next.reserve(plus.size() + zero.size());
        for (auto i : plus) {
            Ray r = rays[i];
            r.tight.push_back(false);
            next.push_back(std::move(r));
        }
        for (auto i : zero) {
            Ray r = rays[i];
            r.tight.push_back(true);
            next.push_back(std::move(r));
        }
        for (auto p : plus) {
            for (auto n : minus) {
                const boost::dynamic_bitset<> common = rays[p].tight & rays[n].tight;
                bool adjacent = true;
                for (std::size_t o = 0; o < rays.size() && adjacent; ++o) {
                    if (o == p || o == n) continue;
                    if (common.is_subset_of(rays[o].tight)) adjacent = false;
                }
                if (!adjacent) continue;
                IntVector w = rays[n].v;
                combine(w, val[p], val[n], rays[p].v);
                Ray r{primitive(std::span<const Integer>(w)), common};
                r.tight.push_back(true);
                next.push_back(std::move(r));
            }
        }
        rays = std::move(next);
    }

    DDResult out;
    out.lineality = std::move(lin);
    out.rays.reserve(rays.size());
    for (auto& r : rays) out.rays.push_back(std::move(r.v));
    return out;
}

}  // namespace toricq::detail
