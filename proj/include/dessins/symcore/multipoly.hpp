#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dessins/errors.hpp"
#include "dessins/symcore/rational.hpp"
#include "dessins/symcore/symbols.hpp"

namespace dessins {

/// Exponent vector over the global symbol order, one byte per symbol, with
/// trailing zeros trimmed. Plain string comparison is then the dense
/// lexicographic order.
using Monomial = std::string;

namespace mono {

inline unsigned exponent(const Monomial& m, int sym) {
    return sym < static_cast<int>(m.size()) ? static_cast<unsigned char>(m[sym]) : 0u;
}

inline void trim(Monomial& m) {
    while (!m.empty() && m.back() == 0) m.pop_back();
}

inline void set_exponent(Monomial& m, int sym, unsigned e) {
    if (e > 255) throw DomainError("exponent overflow in monomial");
    if (sym >= static_cast<int>(m.size())) {
        if (e == 0) return;
        m.resize(sym + 1, 0);
    }
    m[sym] = static_cast<char>(e);
    trim(m);
}

inline unsigned total_degree(const Monomial& m) {
    unsigned d = 0;
    for (char c : m) d += static_cast<unsigned char>(c);
    return d;
}

// Applies r^2 -> u and q^2 -> v.
inline void reduce_roots(Monomial& m) {
    for (auto [root, base] : {std::pair{sym::r, sym::u}, std::pair{sym::q, sym::v}}) {
        const unsigned e = exponent(m, root);
        if (e >= 2) {
            set_exponent(m, base, exponent(m, base) + e / 2);
            set_exponent(m, root, e % 2);
        }
    }
}

inline Monomial multiply(const Monomial& x, const Monomial& y) {
    Monomial out(std::max(x.size(), y.size()), 0);
    bool roots = false;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const unsigned e = (i < x.size() ? static_cast<unsigned char>(x[i]) : 0u) +
                           (i < y.size() ? static_cast<unsigned char>(y[i]) : 0u);
        if (e > 255) throw DomainError("exponent overflow in monomial");
        out[i] = static_cast<char>(e);
    }
    if (exponent(out, sym::r) >= 2 || exponent(out, sym::q) >= 2) roots = true;
    if (roots) reduce_roots(out);
    trim(out);
    return out;
}

inline bool divides(const Monomial& d, const Monomial& m) {
    for (std::size_t i = 0; i < d.size(); ++i)
        if (static_cast<unsigned char>(d[i]) > exponent(m, static_cast<int>(i))) return false;
    return true;
}

inline Monomial quotient(const Monomial& m, const Monomial& d) {
    Monomial out = m;
    for (std::size_t i = 0; i < d.size(); ++i)
        out[i] = static_cast<char>(static_cast<unsigned char>(out[i]) - static_cast<unsigned char>(d[i]));
    trim(out);
    return out;
}

/// Graded order used for printing and division: higher total degree first,
/// then higher dense-lexicographic exponent vector first.
inline bool graded_before(const Monomial& x, const Monomial& y) {
    const unsigned dx = total_degree(x), dy = total_degree(y);
    if (dx != dy) return dx > dy;
    return y < x;
}

inline std::string str(const Monomial& m) {
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        const unsigned e = static_cast<unsigned char>(m[i]);
        if (e == 0) continue;
        if (!out.empty()) out += '*';
        out += sym::name(static_cast<int>(i));
        if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
}

}  // namespace mono

/// Sparse multivariate polynomial with exact rational coefficients.
class MultiPoly {
public:
    using TermMap = std::map<Monomial, Rational>;

    MultiPoly() = default;
    MultiPoly(const Rational& c) {  // NOLINT: implicit scalar embedding
        if (c != 0) terms_.emplace(Monomial{}, c);
    }
    MultiPoly(long c) : MultiPoly(Rational(c)) {}  // NOLINT
    MultiPoly(int c) : MultiPoly(Rational(c)) {}   // NOLINT

    static MultiPoly var(int symbol, unsigned exp = 1) {
        Monomial m;
        mono::set_exponent(m, symbol, exp);
        mono::reduce_roots(m);
        MultiPoly p;
        p.terms_.emplace(std::move(m), Rational(1));
        return p;
    }

    static MultiPoly term(Monomial m, const Rational& c) {
        MultiPoly p;
        mono::reduce_roots(m);
        mono::trim(m);
        if (c != 0) p.terms_.emplace(std::move(m), c);
        return p;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

    Rational constant_term() const {
        auto it = terms_.find(Monomial{});
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    unsigned degree_in(int symbol) const {
        unsigned d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, mono::exponent(m, symbol));
        return d;
    }

    bool uses(int symbol) const { return degree_in(symbol) > 0; }

    int total_degree() const {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(mono::total_degree(m)));
        return d;
    }

    /// True if every term has exactly `degree` in the listed symbols.
    template <class Range>
    bool is_homogeneous_in(const Range& symbols, int degree) const {
        for (const auto& [m, c] : terms_) {
            int d = 0;
            for (int s : symbols) d += static_cast<int>(mono::exponent(m, s));
            if (d != degree) return false;
        }
        return true;
    }

    bool has_integer_coefficients() const {
        for (const auto& [m, c] : terms_)
            if (c.get_den() != 1) return false;
        return true;
    }

    /// Positive rational c such that p / c has coprime integer coefficients.
    Rational content() const {
        if (terms_.empty()) return Rational(1);
        Integer g = 0, l = 1;
        for (const auto& [m, c] : terms_) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num().get_mpz_t());
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
        }
        Rational out(abs(g), l);
        out.canonicalize();
        return out;
    }

    MultiPoly& operator+=(const MultiPoly& o) {
        for (const auto& [m, c] : o.terms_) accumulate(m, c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o) {
        for (const auto& [m, c] : o.terms_) accumulate(m, -c);
        return *this;
    }
    MultiPoly& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }
    MultiPoly& operator*=(const MultiPoly& o) {
        *this = *this * o;
        return *this;
    }

    friend MultiPoly operator+(MultiPoly x, const MultiPoly& y) { return x += y; }
    friend MultiPoly operator-(MultiPoly x, const MultiPoly& y) { return x -= y; }
    friend MultiPoly operator-(MultiPoly x) {
        for (auto& [m, c] : x.terms_) c = -c;
        return x;
    }
    friend MultiPoly operator*(MultiPoly x, const Rational& s) { return x *= s; }
    friend MultiPoly operator*(const Rational& s, MultiPoly x) { return x *= s; }

    friend MultiPoly operator*(const MultiPoly& x, const MultiPoly& y) {
        MultiPoly out;
        if (x.is_zero() || y.is_zero()) return out;
        for (const auto& [mx, cx] : x.terms_)
            for (const auto& [my, cy] : y.terms_) out.accumulate(mono::multiply(mx, my), cx * cy);
        return out;
    }

    friend bool operator==(const MultiPoly& x, const MultiPoly& y) { return x.terms_ == y.terms_; }
    friend bool operator!=(const MultiPoly& x, const MultiPoly& y) { return !(x == y); }

    /// Adds c*m, dropping the term if it cancels.
    void accumulate(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    MultiPoly derivative(int symbol) const {
        MultiPoly out;
        for (const auto& [m, c] : terms_) {
            const unsigned e = mono::exponent(m, symbol);
            if (e == 0) continue;
            Monomial d = m;
            mono::set_exponent(d, symbol, e - 1);
            out.accumulate(d, c * e);
        }
        return out;
    }

    /// Collects the coefficient of symbol^e (symbol removed).
    MultiPoly coefficient_of(int symbol, unsigned e) const {
        MultiPoly out;
        for (const auto& [m, c] : terms_) {
            if (mono::exponent(m, symbol) != e) continue;
            Monomial d = m;
            mono::set_exponent(d, symbol, 0);
            out.accumulate(d, c);
        }
        return out;
    }

    /// Keeps the terms whose monomial satisfies pred.
    template <class Pred>
    MultiPoly filter(Pred&& pred) const {
        MultiPoly out;
        for (const auto& [m, c] : terms_)
            if (pred(m)) out.terms_.emplace(m, c);
        return out;
    }

    /// Replaces each symbol in `assignment` by its polynomial; other symbols stay.
    MultiPoly substitute(const std::map<int, MultiPoly>& assignment) const {
        MultiPoly out;
        std::map<std::pair<int, unsigned>, MultiPoly> powers;
        auto power = [&](int s, unsigned e) -> const MultiPoly& {
            auto key = std::pair{s, e};
            auto it = powers.find(key);
            if (it != powers.end()) return it->second;
            MultiPoly p(1);
            const MultiPoly& base = assignment.at(s);
            for (unsigned i = 0; i < e; ++i) p = p * base;
            return powers.emplace(key, std::move(p)).first->second;
        };
        for (const auto& [m, c] : terms_) {
            Monomial kept = m;
            MultiPoly factor(c);
            for (std::size_t i = 0; i < m.size(); ++i) {
                const unsigned e = static_cast<unsigned char>(m[i]);
                if (e == 0 || !assignment.count(static_cast<int>(i))) continue;
                factor = factor * power(static_cast<int>(i), e);
                kept[i] = 0;
            }
            mono::trim(kept);
            out += factor * MultiPoly::term(kept, Rational(1));
        }
        return out;
    }

    /// Canonical text: terms by descending total degree, then descending
    /// exponent vector; coefficients as p/q with /1 omitted.
    std::string str() const {
        if (terms_.empty()) return "0";
        std::vector<const TermMap::value_type*> order;
        order.reserve(terms_.size());
        for (const auto& t : terms_) order.push_back(&t);
        std::sort(order.begin(), order.end(),
                  [](auto* x, auto* y) { return mono::graded_before(x->first, y->first); });
        std::string out;
        bool first = true;
        for (const auto* t : order) {
            const Rational& c = t->second;
            const bool neg = c < 0;
            if (first) {
                if (neg) out += '-';
            } else {
                out += neg ? " - " : " + ";
            }
            first = false;
            const Rational mag = neg ? Rational(-c) : c;
            const std::string ms = mono::str(t->first);
            if (ms.empty()) {
                out += to_string(mag);
            } else {
                if (mag != 1) out += to_string(mag) + "*";
                out += ms;
            }
        }
        return out;
    }

    static MultiPoly parse(std::string_view text);

private:
    TermMap terms_;
};

inline std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.str(); }

inline MultiPoly MultiPoly::parse(std::string_view text) {
    auto strip = [](std::string_view s) {
        while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
        while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
        return s;
    };
    text = strip(text);
    if (text.empty()) throw ParseError("empty polynomial");
    if (text == "0") return {};
    // Terms are separated by " + " / " - "; symbol names such as t-1 contain
    // a bare minus, hence the mandatory spaces.
    std::vector<std::pair<bool, std::string_view>> pieces;
    bool neg = false;
    if (text.front() == '-') {
        neg = true;
        text.remove_prefix(1);
    }
    std::size_t start = 0;
    for (std::size_t i = 0; i + 2 < text.size(); ++i) {
        if (text[i] == ' ' && (text[i + 1] == '+' || text[i + 1] == '-') && text[i + 2] == ' ') {
            pieces.emplace_back(neg, text.substr(start, i - start));
            neg = text[i + 1] == '-';
            start = i + 3;
            i += 2;
        }
    }
    pieces.emplace_back(neg, text.substr(start));
    MultiPoly out;
    for (auto [negative, piece] : pieces) {
        piece = strip(piece);
        if (piece.empty()) throw ParseError("empty term in polynomial");
        Rational coeff(1);
        Monomial m;
        std::size_t pos = 0;
        bool first_factor = true;
        while (pos <= piece.size()) {
            std::size_t star = piece.find('*', pos);
            std::string_view factor = piece.substr(pos, star == std::string_view::npos ? std::string_view::npos : star - pos);
            if (factor.empty()) throw ParseError("empty factor in '" + std::string(piece) + "'");
            if (first_factor && factor[0] >= '0' && factor[0] <= '9') {
                coeff = parse_rational(factor);
            } else {
                auto caret = factor.find('^');
                auto sname = factor.substr(0, caret);
                auto idx = sym::from_name(sname);
                if (!idx) throw ParseError("unknown symbol '" + std::string(sname) + "'");
                unsigned e = 1;
                if (caret != std::string_view::npos) {
                    auto es = factor.substr(caret + 1);
                    if (es.empty()) throw ParseError("missing exponent");
                    e = 0;
                    for (char c : es) {
                        if (c < '0' || c > '9') throw ParseError("bad exponent '" + std::string(es) + "'");
                        e = 10 * e + static_cast<unsigned>(c - '0');
                    }
                }
                mono::set_exponent(m, *idx, mono::exponent(m, *idx) + e);
            }
            first_factor = false;
            if (star == std::string_view::npos) break;
            pos = star + 1;
        }
        out += MultiPoly::term(m, negative ? Rational(-coeff) : coeff);
    }
    return out;
}

enum class PolyOp { add, sub, mul, exact_div };

/// Exact quotient a / b in the polynomial ring. Inputs must not involve the
/// root symbols r, q (their rewrite rules make the ring non-free).
inline MultiPoly exact_div(const MultiPoly& a, const MultiPoly& b) {
    if (b.is_zero()) throw DivisibilityError("division by the zero polynomial");
    auto leading = [](const MultiPoly& p) {
        const MultiPoly::TermMap::value_type* best = nullptr;
        for (const auto& t : p.terms())
            if (!best || mono::graded_before(t.first, best->first)) best = &t;
        return best;
    };
    const auto* lb = leading(b);
    MultiPoly quotient, rem = a;
    while (!rem.is_zero()) {
        const auto* lr = leading(rem);
        if (!mono::divides(lb->first, lr->first))
            throw DivisibilityError("polynomial " + b.str() + " does not divide " + a.str());
        MultiPoly step = MultiPoly::term(mono::quotient(lr->first, lb->first), lr->second / lb->second);
        quotient += step;
        rem -= step * b;
    }
    return quotient;
}

inline MultiPoly poly_arith(const MultiPoly& a, const MultiPoly& b, PolyOp op) {
    switch (op) {
        case PolyOp::add: return a + b;
        case PolyOp::sub: return a - b;
        case PolyOp::mul: return a * b;
        case PolyOp::exact_div: return exact_div(a, b);
    }
    return {};
}

/// Substitutes every t_j of p. Every t_j occurring in p must be assigned.
inline MultiPoly substitute_linear(const MultiPoly& p, const std::map<int, MultiPoly>& assignment) {
    for (const auto& [m, c] : p.terms())
        for (std::size_t i = sym::first_tj; i < m.size(); ++i)
            if (m[i] != 0 && !assignment.count(static_cast<int>(i)))
                throw UnboundSymbolError("no assignment for " + sym::name(static_cast<int>(i)));
    return p.substitute(assignment);
}

namespace poly {

inline MultiPoly u() { return MultiPoly::var(sym::u); }
inline MultiPoly v() { return MultiPoly::var(sym::v); }
inline MultiPoly t() { return MultiPoly::var(sym::t); }
inline MultiPoly a() { return MultiPoly::var(sym::a); }
inline MultiPoly b() { return MultiPoly::var(sym::b); }
inline MultiPoly r() { return MultiPoly::var(sym::r); }
inline MultiPoly q() { return MultiPoly::var(sym::q); }
inline MultiPoly tj(int j) { return MultiPoly::var(sym::tj(j)); }

inline MultiPoly pow(const MultiPoly& x, unsigned e) {
    MultiPoly out(1), base = x;
    while (e) {
        if (e & 1u) out = out * base;
        e >>= 1u;
        if (e) base = base * base;
    }
    return out;
}

}  // namespace poly

}  // namespace dessins
