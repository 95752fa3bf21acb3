#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dessins/census/genseries.hpp"
#include "dessins/errors.hpp"

namespace dessins {

/// coeff * s^s_power * p_{mul} * d/dp_{diff}.
struct DiffTerm {
    MultiPoly coeff;
    int s_power = 0;
    Partition mul;
    Partition diff;

    /// Change of s-excess this term causes.
    int excess_shift() const { return s_power - weight(mul) + weight(diff); }
};

/// Finite differential operator in the p_i. All terms shift the s-excess by
/// the same declared amount, so results never mix gradings.
class DiffOp {
public:
    explicit DiffOp(int excess_shift) : shift_(excess_shift) {}

    int excess_shift() const { return shift_; }
    const std::vector<DiffTerm>& terms() const { return terms_; }

    DiffOp& add(DiffTerm term) {
        if (term.coeff.is_zero()) return *this;
        if (term.excess_shift() != shift_)
            throw StructureError("operator term breaks the declared s-grading shift " + std::to_string(shift_));
        term.mul = canonical(std::move(term.mul));
        term.diff = canonical(std::move(term.diff));
        terms_.push_back(std::move(term));
        return *this;
    }

    DiffOp& operator+=(const DiffOp& o) {
        for (const auto& t : o.terms_) add(t);
        return *this;
    }

    friend DiffOp operator*(const MultiPoly& c, DiffOp op) {
        for (auto& t : op.terms_) t.coeff *= c;
        return op;
    }

    /// Linear action on a series.
    GenSeries apply(const GenSeries& x) const {
        GenSeries out(x.model(), limit_for(x), x.s_excess() + shift_);
        for (const auto& t : terms_) out += term_apply(t, x) * t.coeff;
        return out;
    }

    /// exp(-F) * op * exp(F) for an operator of order <= 2.
    GenSeries conjugated_apply(const GenSeries& f) const {
        GenSeries out(f.model(), limit_for(f), f.s_excess() + shift_);
        const GenSeries unit = GenSeries::one(f.model(), limit_for(f));
        for (const auto& t : terms_) {
            GenSeries part(f.model(), out.valid_through(), out.s_excess());
            if (t.diff.empty()) {
                part = unit;
            } else if (t.diff.size() == 1) {
                part = f.diff(t.diff[0]);
            } else if (t.diff.size() == 2) {
                const GenSeries fi = f.diff(t.diff[0]);
                part = fi.diff(t.diff[1]) + product(fi, f.diff(t.diff[1]), out.valid_through());
            } else {
                throw StructureError("conjugated action implemented for order <= 2 only");
            }
            for (int j : t.mul) part = part.mul_p(j);
            part = part.shift_s(t.s_power);
            out += part * t.coeff;
        }
        return out;
    }

private:
    int limit_for(const GenSeries& x) const {
        int lim = x.valid_through();
        for (const auto& t : terms_) lim = std::min(lim, x.valid_through() - weight(t.diff) + weight(t.mul));
        return lim;
    }

    static GenSeries term_apply(const DiffTerm& t, const GenSeries& x) {
        GenSeries y = x;
        for (int j : t.diff) y = y.diff(j);
        for (int j : t.mul) y = y.mul_p(j);
        return y.shift_s(t.s_power);
    }

    int shift_;
    std::vector<DiffTerm> terms_;
};

namespace ops {

/// sum_{i=2}^{top} (i-1) p_i d/dp_{i-1}.
inline DiffOp lambda1(int top) {
    DiffOp op(-1);
    for (int i = 2; i <= top; ++i) op.add({MultiPoly(i - 1), 0, {i}, {i - 1}});
    return op;
}

/// Cut-and-join part of the dessin evolution generator, indices i <= top.
inline DiffOp m1(int top) {
    DiffOp op(-1);
    for (int i = 2; i <= top; ++i)
        for (int j = 1; j <= i - 1; ++j) {
            op.add({MultiPoly(i - 1), 0, {j, i - j}, {i - 1}});
            op.add({MultiPoly(j * (i - j)), 0, {i + 1}, {j, i - j}});
        }
    return op;
}

/// sum_{i=3}^{top} (i-2) p_i d/dp_{i-2} + p_1^2/2.
inline DiffOp lambda2(int top) {
    DiffOp op(-2);
    for (int i = 3; i <= top; ++i) op.add({MultiPoly(i - 2), 0, {i}, {i - 2}});
    op.add({MultiPoly(Rational(1, 2)), 0, {1, 1}, {}});
    return op;
}

inline DiffOp m2(int top) {
    DiffOp op(-2);
    for (int i = 2; i <= top; ++i)
        for (int j = 1; j <= i - 1; ++j) {
            if (i > 2) op.add({MultiPoly(i - 2), 0, {j, i - j}, {i - 2}});
            op.add({MultiPoly(j * (i - j)), 0, {i + 2}, {j, i - j}});
        }
    return op;
}

/// (u+v) Lambda_1 + M_1 + uv p_1.
inline DiffOp dessin_generator(int top) {
    DiffOp op(-1);
    op += (poly::u() + poly::v()) * lambda1(top);
    op += m1(top);
    op.add({poly::u() * poly::v(), 0, {1}, {}});
    return op;
}

/// 2u Lambda_2 + M_2 + u^2 p_2.
inline DiffOp ribbon_generator(int top) {
    DiffOp op(-2);
    op += (MultiPoly(2) * poly::u()) * lambda2(top);
    op += m2(top);
    op.add({poly::u() * poly::u(), 0, {2}, {}});
    return op;
}

/// Dessin Virasoro operator L_n, n >= 0, with p-indices cut at `top`.
inline DiffOp virasoro(int n, int top) {
    if (n < 0) throw DomainError("dessin Virasoro operators need n >= 0");
    DiffOp op(n);
    op.add({MultiPoly(-(n + 1)), -1, {}, {n + 1}});
    if (n > 0) op.add({(poly::u() + poly::v()) * MultiPoly(n), 0, {}, {n}});
    for (int j = 1; n + j <= top; ++j) op.add({MultiPoly(n + j), 0, {j}, {n + j}});
    for (int i = 1; i < n; ++i) op.add({MultiPoly(i * (n - i)), 0, {}, {i, n - i}});
    if (n == 0) op.add({poly::u() * poly::v(), 0, {}, {}});
    return op;
}

/// Ribbon Virasoro operator, n >= -1.
inline DiffOp virasoro_ribbon(int n, int top) {
    if (n < -1) throw DomainError("ribbon Virasoro operators need n >= -1");
    DiffOp op(n);
    op.add({MultiPoly(-(n + 2)), -2, {}, {n + 2}});
    if (n > 0) op.add({MultiPoly(2 * n) * poly::u(), 0, {}, {n}});
    for (int j = 1; n + j <= top; ++j)
        if (n + j > 0) op.add({MultiPoly(n + j), 0, {j}, {n + j}});
    for (int i = 1; i < n; ++i) op.add({MultiPoly(i * (n - i)), 0, {}, {i, n - i}});
    if (n == -1) op.add({poly::u(), 0, {1}, {}});
    if (n == 0) op.add({poly::u() * poly::u(), 0, {}, {}});
    return op;
}

}  // namespace ops

}  // namespace dessins
