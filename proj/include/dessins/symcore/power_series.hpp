#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "dessins/errors.hpp"
#include "dessins/symcore/multipoly.hpp"

namespace dessins {

/// Truncated univariate power series c_0 + c_1 x + ... + c_order x^order.
/// Coefficients beyond `order` are unknown and never consulted.
class PowerSeries {
public:
    PowerSeries(std::string var, int order) : var_(std::move(var)), coeffs_(static_cast<std::size_t>(order) + 1) {
        if (order < 0) throw DomainError("negative truncation order");
    }

    PowerSeries(std::string var, std::vector<MultiPoly> coeffs) : var_(std::move(var)), coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) throw DomainError("power series needs at least one coefficient");
    }

    /// 1 + 0 x + ... to the given order.
    static PowerSeries one(std::string var, int order) {
        PowerSeries s(std::move(var), order);
        s.coeffs_[0] = MultiPoly(1);
        return s;
    }

    const std::string& var() const { return var_; }
    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const MultiPoly& operator[](int i) const { return coeffs_.at(static_cast<std::size_t>(i)); }
    MultiPoly& operator[](int i) { return coeffs_.at(static_cast<std::size_t>(i)); }
    const std::vector<MultiPoly>& coeffs() const { return coeffs_; }

    PowerSeries truncated(int order) const {
        order = std::min(order, this->order());
        return PowerSeries(var_, std::vector<MultiPoly>(coeffs_.begin(), coeffs_.begin() + order + 1));
    }

    friend PowerSeries operator+(const PowerSeries& x, const PowerSeries& y) {
        PowerSeries out(x.var_, std::min(x.order(), y.order()));
        for (int i = 0; i <= out.order(); ++i) out[i] = x[i] + y[i];
        return out;
    }
    friend PowerSeries operator-(const PowerSeries& x, const PowerSeries& y) {
        PowerSeries out(x.var_, std::min(x.order(), y.order()));
        for (int i = 0; i <= out.order(); ++i) out[i] = x[i] - y[i];
        return out;
    }
    friend PowerSeries operator*(const PowerSeries& x, const PowerSeries& y) {
        PowerSeries out(x.var_, std::min(x.order(), y.order()));
        for (int i = 0; i <= out.order(); ++i) {
            if (x[i].is_zero()) continue;
            for (int j = 0; i + j <= out.order(); ++j)
                if (!y[j].is_zero()) out[i + j] += x[i] * y[j];
        }
        return out;
    }
    friend PowerSeries operator*(const PowerSeries& x, const MultiPoly& s) {
        PowerSeries out = x;
        for (auto& c : out.coeffs_) c = c * s;
        return out;
    }

    friend bool operator==(const PowerSeries& x, const PowerSeries& y) {
        return x.coeffs_ == y.coeffs_;
    }

    /// Divides by x; requires a vanishing constant term. The order drops by one.
    PowerSeries divided_by_var() const {
        if (!coeffs_[0].is_zero()) throw DomainError("division by " + var_ + " with nonzero constant term");
        if (order() == 0) throw TruncationError("division by " + var_ + " of an order-0 series");
        return PowerSeries(var_, std::vector<MultiPoly>(coeffs_.begin() + 1, coeffs_.end()));
    }

    std::string str() const {
        std::string out;
        for (int i = 0; i <= order(); ++i) {
            if (coeffs_[i].is_zero()) continue;
            if (!out.empty()) out += " + ";
            out += "(" + coeffs_[i].str() + ")";
            if (i > 0) out += "*" + var_ + (i > 1 ? "^" + std::to_string(i) : "");
        }
        out += " + O(" + var_ + "^" + std::to_string(order() + 1) + ")";
        return out;
    }

private:
    std::string var_;
    std::vector<MultiPoly> coeffs_;
};

inline PowerSeries series_invert(const PowerSeries& a) {
    const MultiPoly& c0 = a[0];
    if (c0.is_zero() || !c0.is_constant())
        throw NotInvertibleError("constant term " + c0.str() + " is not an invertible scalar");
    const Rational inv0 = 1 / c0.constant_term();
    PowerSeries out(a.var(), a.order());
    out[0] = MultiPoly(inv0);
    for (int n = 1; n <= a.order(); ++n) {
        MultiPoly acc;
        for (int k = 1; k <= n; ++k)
            if (!a[k].is_zero()) acc += a[k] * out[n - k];
        out[n] = acc * Rational(-inv0);
    }
    return out;
}

inline PowerSeries series_sqrt(const PowerSeries& a) {
    if (a[0] != MultiPoly(1)) throw BranchError("square root needs constant term 1, got " + a[0].str());
    PowerSeries out(a.var(), a.order());
    out[0] = MultiPoly(1);
    const Rational half(1, 2);
    for (int n = 1; n <= a.order(); ++n) {
        MultiPoly acc = a[n];
        for (int k = 1; k < n; ++k) acc -= out[k] * out[n - k];
        out[n] = acc * half;
    }
    return out;
}

inline PowerSeries series_ipow(const PowerSeries& a, int j) {
    if (j == 0) return PowerSeries::one(a.var(), a.order());
    PowerSeries base = j < 0 ? series_invert(a) : a;
    unsigned e = static_cast<unsigned>(j < 0 ? -j : j);
    PowerSeries out = PowerSeries::one(a.var(), a.order());
    while (e) {
        if (e & 1u) out = out * base;
        e >>= 1u;
        if (e) base = base * base;
    }
    return out;
}

}  // namespace dessins
