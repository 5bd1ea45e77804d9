#include "toricq/lp.hpp"

#include <algorithm>

namespace toricq {

void LPProblem::add_row(const RatVector& row, Rational rhs, Sense s) {
    if (a.rows() == 0 && a.cols() == 0) a = RatMatrix(0, row.size());
    a.append_row(row);
    b.push_back(std::move(rhs));
    sense.push_back(s);
}

bool verify_witness(const LPProblem& p, const RatVector& x) {
    if (x.size() != p.variables()) return false;
    for (std::size_t i = 0; i < p.constraints(); ++i) {
        const Rational lhs = dot(p.a.row(i), std::span<const Rational>(x));
        if (p.sense[i] == Sense::Equal ? lhs != p.b[i] : lhs > p.b[i]) return false;
    }
    return true;
}

bool verify_farkas(const LPProblem& p, const RatVector& y) {
    if (y.size() != p.constraints()) return false;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (p.sense[i] == Sense::LessEqual && y[i] < 0) return false;
    for (std::size_t j = 0; j < p.variables(); ++j) {
        Rational s = 0;
        for (std::size_t i = 0; i < y.size(); ++i) s += y[i] * p.a(i, j);
        if (s != 0) return false;
    }
    return dot(std::span<const Rational>(y), std::span<const Rational>(p.b)) < 0;
}

namespace {

// Dense phase-one tableau. Columns: x+ (n), x- (n), one slack per <= row,
// one artificial per row.
class Tableau {
  public:
    explicit Tableau(const LPProblem& p) : m_(p.constraints()), n_(p.variables()) {
        std::size_t slacks = 0;
        slack_col_.assign(m_, npos);
        for (std::size_t i = 0; i < m_; ++i)
            if (p.sense[i] == Sense::LessEqual) slack_col_[i] = 2 * n_ + slacks++;
        art0_ = 2 * n_ + slacks;
        cols_ = art0_ + m_;
        t_ = RatMatrix(m_, cols_ + 1);
        sign_.assign(m_, 1);
        basis_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            sign_[i] = p.b[i] < 0 ? -1 : 1;
            for (std::size_t j = 0; j < n_; ++j) {
                t_(i, j) = sign_[i] * p.a(i, j);
                t_(i, n_ + j) = -t_(i, j);
            }
            if (slack_col_[i] != npos) t_(i, slack_col_[i]) = sign_[i];
            t_(i, art0_ + i) = 1;
            t_(i, cols_) = sign_[i] * p.b[i];
            basis_[i] = art0_ + i;
        }
        d_.assign(cols_, 0);
        for (std::size_t j = 0; j < art0_; ++j)
            for (std::size_t i = 0; i < m_; ++i) d_[j] -= t_(i, j);
        for (std::size_t i = 0; i < m_; ++i) z_ += t_(i, cols_);
    }

    void run() {
        while (true) {
            std::size_t enter = npos;
            for (std::size_t j = 0; j < cols_; ++j)
                if (d_[j] < 0) {
                    enter = j;
                    break;
                }
            if (enter == npos) return;
            std::size_t leave = npos;
            Rational best;
            for (std::size_t i = 0; i < m_; ++i) {
                if (t_(i, enter) <= 0) continue;
                Rational ratio = t_(i, cols_) / t_(i, enter);
                if (leave == npos || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
                    best = ratio;
                    leave = i;
                }
            }
            if (leave == npos) throw InternalError("phase-one simplex reported an unbounded ray");
            pivot(leave, enter);
        }
    }

    const Rational& objective() const { return z_; }

    RatVector witness() const {
        RatVector value(cols_);
        for (std::size_t i = 0; i < m_; ++i) value[basis_[i]] = t_(i, cols_);
        RatVector x(n_);
        for (std::size_t j = 0; j < n_; ++j) x[j] = value[j] - value[n_ + j];
        return x;
    }

    RatVector farkas() const {
        RatVector y(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            const Rational dual = 1 - d_[art0_ + i];
            y[i] = -sign_[i] * dual;
        }
        for (auto& v : y) v /= z_;
        return y;
    }

  private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    void pivot(std::size_t r, std::size_t c) {
        const Rational inv = 1 / t_(r, c);
        for (std::size_t j = 0; j <= cols_; ++j)
            if (t_(r, j) != 0) t_(r, j) *= inv;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r || t_(i, c) == 0) continue;
            const Rational f = t_(i, c);
            for (std::size_t j = 0; j <= cols_; ++j)
                if (t_(r, j) != 0) t_(i, j) -= f * t_(r, j);
        }
        const Rational f = d_[c];
        for (std::size_t j = 0; j < cols_; ++j)
            if (t_(r, j) != 0) d_[j] -= f * t_(r, j);
        z_ += f * t_(r, cols_);
        basis_[r] = c;
    }

    std::size_t m_, n_, cols_ = 0, art0_ = 0;
    RatMatrix t_;
    RatVector d_;
    Rational z_ = 0;
    std::vector<int> sign_;
    std::vector<std::size_t> slack_col_;
    std::vector<std::size_t> basis_;
};

}  // namespace

namespace {

LPResult simplex(const LPProblem& p) {
    Tableau t(p);
    t.run();
    LPResult result;
    result.feasible = t.objective() == 0;
    if (result.feasible) result.witness = t.witness();
    else result.farkas = t.farkas();
    return result;
}

// Equality rows are solved exactly first (x = x0 + K z), so the simplex only
// sees the inequality rows in the kernel coordinates z.
LPResult eliminate_equalities(const LPProblem& p) {
    std::vector<std::size_t> eq, ineq;
    for (std::size_t i = 0; i < p.constraints(); ++i) (p.sense[i] == Sense::Equal ? eq : ineq).push_back(i);
    const std::size_t n = p.variables();
    RatMatrix ae(eq.size(), n);
    RatVector be;
    for (std::size_t r = 0; r < eq.size(); ++r) {
        for (std::size_t j = 0; j < n; ++j) ae(r, j) = p.a(eq[r], j);
        be.push_back(p.b[eq[r]]);
    }
    LPResult result;
    result.farkas.assign(p.constraints(), Rational(0));

    const auto x0 = solve(ae, std::span<const Rational>(be));
    if (!x0) {
        for (const auto& w : kernel(ae.transpose())) {
            const Rational wb = dot(std::span<const Rational>(w), std::span<const Rational>(be));
            if (wb == 0) continue;
            for (std::size_t r = 0; r < eq.size(); ++r) result.farkas[eq[r]] = -w[r] / wb;
            return result;
        }
        throw InternalError("inconsistent equalities without a left kernel witness");
    }
    const auto k = kernel(ae);

    LPProblem reduced;
    reduced.a = RatMatrix(0, k.size());
    std::size_t bad = ineq.size();
    for (std::size_t r = 0; r < ineq.size(); ++r) {
        const auto row = p.a.row(ineq[r]);
        RatVector coeffs;
        for (const auto& kv : k) coeffs.push_back(dot(row, std::span<const Rational>(kv)));
        Rational rhs = p.b[ineq[r]] - dot(row, std::span<const Rational>(*x0));
        if (k.empty() && rhs < 0 && bad == ineq.size()) bad = r;
        reduced.add_row(coeffs, std::move(rhs), Sense::LessEqual);
    }

    RatVector yr;
    if (k.empty()) {
        // nothing left to choose: x0 is the only point
        if (bad == ineq.size()) {
            result.feasible = true;
            result.witness = *x0;
            return result;
        }
        yr.assign(ineq.size(), Rational(0));
        yr[bad] = 1 / -reduced.b[bad];
    } else {
        const LPResult sub = simplex(reduced);
        if (sub.feasible) {
            result.feasible = true;
            result.witness = *x0;
            for (std::size_t c = 0; c < k.size(); ++c)
                for (std::size_t j = 0; j < n; ++j) result.witness[j] += sub.witness[c] * k[c][j];
            return result;
        }
        yr = sub.farkas;
    }
    // y_I^T A_I vanishes on the kernel, so it is -w^T A_E for some w
    RatVector v(n, Rational(0));
    for (std::size_t r = 0; r < ineq.size(); ++r) {
        result.farkas[ineq[r]] = yr[r];
        if (yr[r] != 0)
            for (std::size_t j = 0; j < n; ++j) v[j] -= yr[r] * p.a(ineq[r], j);
    }
    if (!eq.empty()) {
        const auto w = solve(ae.transpose(), std::span<const Rational>(v));
        if (!w) throw InternalError("reduced Farkas vector does not lift");
        for (std::size_t r = 0; r < eq.size(); ++r) result.farkas[eq[r]] = (*w)[r];
    }
    return result;
}

}  // namespace

LPResult lp_feasible(const LPProblem& p) {
    if (p.b.size() != p.constraints() || p.sense.size() != p.constraints())
        throw InputError("LP right-hand side or sense vector has wrong length");
    const bool has_eq = std::find(p.sense.begin(), p.sense.end(), Sense::Equal) != p.sense.end();
    LPResult result = has_eq ? eliminate_equalities(p) : simplex(p);
    if (result.feasible) {
        if (!verify_witness(p, result.witness)) throw InternalError("simplex witness failed verification");
    } else {
        if (!verify_farkas(p, result.farkas)) throw InternalError("Farkas certificate failed verification");
    }
    return result;
}

}  // namespace toricq
