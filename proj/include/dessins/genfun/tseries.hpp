#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "dessins/errors.hpp"
#include "dessins/symcore/multipoly.hpp"

namespace dessins {

/// Truncated series in s whose coefficients are polynomials in t, u, v.
/// Every coefficient of s-degree <= valid_through() is exact.
class TSeries {
public:
    static constexpr int exact = std::numeric_limits<int>::max() / 4;

    explicit TSeries(int valid_through = exact) : valid_(valid_through) {}

    /// c * s^k, exact.
    static TSeries monomial(int k, const MultiPoly& c) {
        TSeries out;
        out.add(k, c);
        return out;
    }

    int valid_through() const { return valid_; }
    const std::map<int, MultiPoly>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    MultiPoly operator[](int k) const {
        auto it = coeffs_.find(k);
        return it == coeffs_.end() ? MultiPoly() : it->second;
    }

    void add(int k, const MultiPoly& c) {
        if (c.is_zero() || k > valid_) return;
        auto [it, fresh] = coeffs_.try_emplace(k, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) coeffs_.erase(it);
        }
    }

    int valuation() const { return coeffs_.empty() ? valid_ + 1 : coeffs_.begin()->first; }

    TSeries truncated(int k) const {
        TSeries out(std::min(k, valid_));
        for (const auto& [e, c] : coeffs_) out.add(e, c);
        return out;
    }

    friend TSeries operator+(const TSeries& x, const TSeries& y) {
        TSeries out(std::min(x.valid_, y.valid_));
        for (const auto& [e, c] : x.coeffs_) out.add(e, c);
        for (const auto& [e, c] : y.coeffs_) out.add(e, c);
        return out;
    }
    friend TSeries operator-(const TSeries& x, const TSeries& y) { return x + y * MultiPoly(-1); }

    friend TSeries operator*(const TSeries& x, const MultiPoly& c) {
        TSeries out(x.valid_);
        for (const auto& [e, a] : x.coeffs_) out.add(e, a * c);
        return out;
    }
    friend TSeries operator*(const MultiPoly& c, const TSeries& x) { return x * c; }

    friend TSeries operator*(const TSeries& x, const TSeries& y) {
        const long vx = x.valid_ >= exact ? exact : static_cast<long>(x.valid_) + y.valuation();
        const long vy = y.valid_ >= exact ? exact : static_cast<long>(y.valid_) + x.valuation();
        TSeries out(static_cast<int>(std::min<long>({vx, vy, exact})));
        for (const auto& [ex, cx] : x.coeffs_)
            for (const auto& [ey, cy] : y.coeffs_) out.add(ex + ey, cx * cy);
        return out;
    }

    /// Multiplication by s^k; negative k requires the low coefficients to vanish.
    TSeries shift_s(int k) const {
        if (!coeffs_.empty() && coeffs_.begin()->first + k < 0)
            throw DomainError("division by s of a series with a low-order term");
        TSeries out(valid_ >= exact ? exact : valid_ + k);
        for (const auto& [e, c] : coeffs_) out.add(e + k, c);
        return out;
    }

    /// d/ds.
    TSeries ds() const {
        TSeries out(valid_ >= exact ? exact : valid_ - 1);
        for (const auto& [e, c] : coeffs_)
            if (e != 0) out.add(e - 1, c * Rational(e));
        return out;
    }

    /// d/dt, acting on the coefficients.
    TSeries dt() const {
        TSeries out(valid_);
        for (const auto& [e, c] : coeffs_) out.add(e, c.derivative(sym::t));
        return out;
    }

    /// Exact division of each coefficient by t.
    TSeries divided_by_t() const {
        TSeries out(valid_);
        for (const auto& [e, c] : coeffs_) out.add(e, exact_div(c, MultiPoly::var(sym::t)));
        return out;
    }

    /// True when every coefficient through s^k vanishes; k must be covered.
    bool zero_through(int k) const {
        if (valid_ < k) throw TruncationError("series known only through s^" + std::to_string(valid_));
        return coeffs_.empty() || coeffs_.begin()->first > k;
    }

    std::optional<std::pair<int, MultiPoly>> first_nonzero() const {
        if (coeffs_.empty()) return std::nullopt;
        return *coeffs_.begin();
    }

    static std::string term_str(int k, const MultiPoly& c) {
        std::string out = "(" + c.str() + ")";
        if (k != 0) out += "*s" + (k == 1 ? std::string() : "^" + std::to_string(k));
        return out;
    }

    std::string str() const {
        if (coeffs_.empty()) return "0";
        std::string out;
        for (const auto& [e, c] : coeffs_) {
            if (!out.empty()) out += " + ";
            out += term_str(e, c);
        }
        return out;
    }

    friend bool operator==(const TSeries& x, const TSeries& y) {
        return x.valid_ == y.valid_ && x.coeffs_ == y.coeffs_;
    }

private:
    int valid_;
    std::map<int, MultiPoly> coeffs_;
};

}  // namespace dessins
