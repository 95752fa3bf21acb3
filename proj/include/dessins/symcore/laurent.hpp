#pragma once

#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "dessins/symcore/multipoly.hpp"

namespace dessins {

/// Finite Laurent polynomial in z with MultiPoly coefficients.
class LaurentPoly {
public:
    using TermMap = std::map<int, MultiPoly>;

    LaurentPoly() = default;
    LaurentPoly(int exponent, MultiPoly coeff) { add_term(exponent, coeff); }

    static LaurentPoly monomial(int exponent, const MultiPoly& coeff = MultiPoly(1)) { return {exponent, coeff}; }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    MultiPoly coeff(int exponent) const {
        auto it = terms_.find(exponent);
        return it == terms_.end() ? MultiPoly{} : it->second;
    }

    int min_exponent() const { return terms_.empty() ? 0 : terms_.begin()->first; }
    int max_exponent() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

    bool has_only_even_exponents() const {
        for (const auto& [e, c] : terms_)
            if (e % 2 != 0) return false;
        return true;
    }

    void add_term(int exponent, const MultiPoly& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(exponent, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend LaurentPoly operator+(LaurentPoly x, const LaurentPoly& y) { return x += y; }
    friend LaurentPoly operator-(LaurentPoly x, const LaurentPoly& y) { return x -= y; }

    friend LaurentPoly operator*(const LaurentPoly& x, const LaurentPoly& y) {
        LaurentPoly out;
        for (const auto& [ex, cx] : x.terms_)
            for (const auto& [ey, cy] : y.terms_) out.add_term(ex + ey, cx * cy);
        return out;
    }
    friend LaurentPoly operator*(const LaurentPoly& x, const MultiPoly& s) {
        LaurentPoly out;
        for (const auto& [e, c] : x.terms_) out.add_term(e, c * s);
        return out;
    }
    friend LaurentPoly operator*(const LaurentPoly& x, const Rational& s) { return x * MultiPoly(s); }

    friend bool operator==(const LaurentPoly& x, const LaurentPoly& y) { return x.terms_ == y.terms_; }

    /// d/dz.
    LaurentPoly derive() const {
        LaurentPoly out;
        for (const auto& [e, c] : terms_)
            if (e != 0) out.add_term(e - 1, c * Rational(e));
        return out;
    }

    /// Coefficient of z^-1.
    MultiPoly residue() const { return coeff(-1); }

    /// Multiplies by z^k.
    LaurentPoly shifted(int k) const {
        LaurentPoly out;
        for (const auto& [e, c] : terms_) out.terms_.emplace(e + k, c);
        return out;
    }

    /// Keeps exponents in [lo, hi].
    LaurentPoly window(int lo, int hi) const {
        LaurentPoly out;
        for (const auto& [e, c] : terms_)
            if (e >= lo && e <= hi) out.terms_.emplace(e, c);
        return out;
    }

    template <class F>
    LaurentPoly map_coeffs(F&& f) const {
        LaurentPoly out;
        for (const auto& [e, c] : terms_) out.add_term(e, f(c));
        return out;
    }

    /// Terms by descending z-exponent, e.g. "1/2*a*t1^2 - 1/2*b*t-1^2*z^-2".
    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const int e = it->first;
            std::string zpart = e == 0 ? "" : (e == 1 ? "z" : "z^" + std::to_string(e));
            // Expand the coefficient so every term is sign-separated.
            std::string cs = it->second.str();
            std::vector<std::string> pieces;
            std::vector<bool> negs;
            bool neg = false;
            std::string_view s = cs;
            if (!s.empty() && s[0] == '-') {
                neg = true;
                s.remove_prefix(1);
            }
            std::size_t start = 0;
            for (std::size_t i = 0; i + 2 < s.size(); ++i) {
                if (s[i] == ' ' && (s[i + 1] == '+' || s[i + 1] == '-') && s[i + 2] == ' ') {
                    pieces.emplace_back(s.substr(start, i - start));
                    negs.push_back(neg);
                    neg = s[i + 1] == '-';
                    start = i + 3;
                    i += 2;
                }
            }
            pieces.emplace_back(s.substr(start));
            negs.push_back(neg);
            for (std::size_t k = 0; k < pieces.size(); ++k) {
                if (out.empty())
                    out += negs[k] ? "-" : "";
                else
                    out += negs[k] ? " - " : " + ";
                if (zpart.empty())
                    out += pieces[k];
                else if (pieces[k] == "1")
                    out += zpart;
                else
                    out += pieces[k] + "*" + zpart;
            }
        }
        return out;
    }

private:
    TermMap terms_;
};

inline std::ostream& operator<<(std::ostream& os, const LaurentPoly& x) { return os << x.str(); }

inline LaurentPoly laurent_derive(const LaurentPoly& a) { return a.derive(); }
inline MultiPoly laurent_residue(const LaurentPoly& a) { return a.residue(); }

}  // namespace dessins
