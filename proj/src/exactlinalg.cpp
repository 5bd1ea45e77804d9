#include "toricq/exactlinalg.hpp"

#include <algorithm>
#include <sstream>

namespace toricq {

RatMatrix to_rational(const IntMatrix& m) {
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
    return r;
}

RatVector to_rational(std::span<const Integer> v) {
    return RatVector(v.begin(), v.end());
}

IntMatrix to_integer(const RatMatrix& m) {
    IntMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (m(i, j).get_den() != 1) throw InputError("non-integral entry " + to_string(m(i, j)));
            r(i, j) = m(i, j).get_num();
        }
    return r;
}

Integer dot(std::span<const Integer> a, std::span<const Integer> b) {
    if (a.size() != b.size()) throw InputError("dot product dimension mismatch");
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
    if (a.size() != b.size()) throw InputError("dot product dimension mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rational dot(std::span<const Rational> a, std::span<const Integer> b) {
    if (a.size() != b.size()) throw InputError("dot product dimension mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

bool is_zero(std::span<const Integer> v) {
    return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

bool is_zero(std::span<const Rational> v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

IntVector primitive(std::span<const Rational> v) {
    Integer l = 1;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    IntVector w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = Rational(v[i] * l).get_num();
    return primitive(std::span<const Integer>(w));
}

IntVector primitive(std::span<const Integer> v) {
    Integer g = 0;
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    IntVector w(v.begin(), v.end());
    if (g > 1)
        for (auto& x : w) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    return w;
}

IntVector negated(std::span<const Integer> v) {
    IntVector w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = -v[i];
    return w;
}

bool canonical_less(std::span<const Integer> a, std::span<const Integer> b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] != b[i]) return a[i] > b[i];
    }
    return a.size() < b.size();
}

RatMatrix rref(RatMatrix m, std::vector<std::size_t>* pivots) {
    if (pivots) pivots->clear();
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(p, r);
        const Rational inv = 1 / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) continue;
            const Rational f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        if (pivots) pivots->push_back(c);
        ++r;
    }
    return m;
}

std::size_t rank(const RatMatrix& m) {
    std::vector<std::size_t> piv;
    rref(m, &piv);
    return piv.size();
}

std::size_t rank(const IntMatrix& m) { return rank(to_rational(m)); }

std::size_t rank(const std::vector<IntVector>& vectors, std::size_t dim) {
    return rank(rows_matrix(vectors, dim));
}

std::vector<RatVector> kernel(const RatMatrix& m) {
    std::vector<std::size_t> piv;
    const RatMatrix r = rref(m, &piv);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : piv) is_pivot[c] = true;
    std::vector<RatVector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        RatVector v(m.cols());
        v[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<RatVector> solve(const RatMatrix& a, std::span<const Rational> b) {
    if (b.size() != a.rows()) throw InputError("solve: right-hand side has wrong length");
    RatMatrix aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    std::vector<std::size_t> piv;
    const RatMatrix r = rref(aug, &piv);
    if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
    RatVector x(a.cols());
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = r(i, a.cols());
    return x;
}

Integer determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw InputError("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Integer sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

namespace {

void row_axpy(IntMatrix& m, std::size_t target, const Integer& q, std::size_t source) {
    // row_target -= q * row_source
    for (std::size_t j = 0; j < m.cols(); ++j) {
        if (m(source, j) != 0) m(target, j) -= q * m(source, j);
    }
}

void negate_row(IntMatrix& m, std::size_t i) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = -m(i, j);
}

}  // namespace

HnfResult hnf(const IntMatrix& m) {
    IntMatrix h = m;
    IntMatrix u = IntMatrix::identity(m.rows());
    std::size_t r = 0;
    for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
        while (true) {
            // smallest nonzero |entry| at or below row r becomes the pivot
            std::size_t best = h.rows();
            for (std::size_t i = r; i < h.rows(); ++i) {
                if (h(i, c) == 0) continue;
                if (best == h.rows() || abs(h(i, c)) < abs(h(best, c))) best = i;
            }
            if (best == h.rows()) break;
            h.swap_rows(r, best);
            u.swap_rows(r, best);
            bool done = true;
            for (std::size_t i = r + 1; i < h.rows(); ++i) {
                if (h(i, c) == 0) continue;
                Integer q;
                mpz_tdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(r, c).get_mpz_t());
                row_axpy(h, i, q, r);
                row_axpy(u, i, q, r);
                if (h(i, c) != 0) done = false;
            }
            if (done) break;
        }
        if (r >= h.rows() || h(r, c) == 0) continue;
        if (h(r, c) < 0) {
            negate_row(h, r);
            negate_row(u, r);
        }
        for (std::size_t i = 0; i < r; ++i) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(r, c).get_mpz_t());
            if (q != 0) {
                row_axpy(h, i, q, r);
                row_axpy(u, i, q, r);
            }
        }
        ++r;
    }
    return {std::move(h), std::move(u)};
}

IntMatrix rows_matrix(const std::vector<IntVector>& vectors, std::size_t dim) {
    IntMatrix m(vectors.size(), dim);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].size() != dim) throw InputError("vector has wrong length");
        for (std::size_t j = 0; j < dim; ++j) m(i, j) = vectors[i][j];
    }
    return m;
}

std::vector<IntVector> lattice_basis(const std::vector<IntVector>& vectors, std::size_t dim) {
    const IntMatrix h = hnf(rows_matrix(vectors, dim)).h;
    std::vector<IntVector> out;
    for (std::size_t i = 0; i < h.rows(); ++i) {
        if (is_zero(h.row(i))) break;
        out.push_back(h.row_vector(i));
    }
    return out;
}

std::vector<IntVector> kernel_saturated(const IntMatrix& m) {
    const HnfResult r = hnf(m.transpose());
    std::vector<IntVector> rows;
    for (std::size_t i = 0; i < r.h.rows(); ++i) {
        if (is_zero(r.h.row(i))) rows.push_back(r.u.row_vector(i));
    }
    return lattice_basis(rows, m.cols());
}

std::vector<IntVector> saturation(const std::vector<IntVector>& vectors, std::size_t dim) {
    const auto orth = kernel_saturated(rows_matrix(vectors, dim));
    return kernel_saturated(rows_matrix(orth, dim));
}

std::vector<IntVector> saturate(const std::vector<IntVector>& basis, std::size_t dim) {
    if (rank(basis, dim) != basis.size()) throw InputError("saturate: basis vectors are linearly dependent");
    return saturation(basis, dim);
}

bool is_saturated(const std::vector<IntVector>& basis, std::size_t dim) {
    return lattice_basis(basis, dim) == saturation(basis, dim);
}

IntMatrix quotient_projection(const std::vector<IntVector>& sublattice, std::size_t dim) {
    return rows_matrix(kernel_saturated(rows_matrix(sublattice, dim)), dim);
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(std::span<const Integer> v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
    os << ')';
    return os.str();
}

std::string to_string(std::span<const Rational> v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
    os << ')';
    return os.str();
}

}  // namespace toricq
