#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

#include "dessins/errors.hpp"

namespace dessins {

// mpq_class keeps numerator/denominator coprime with a positive denominator
// after every arithmetic operation; zero is 0/1.
using Rational = mpq_class;
using Integer = mpz_class;

/// p/q in canonical form; q may be negative but not zero.
inline Rational ratio(long p, long q) {
    if (q == 0) throw DomainError("zero denominator");
    Rational out(p, q);
    out.canonicalize();
    return out;
}

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational parse_rational(std::string_view text) {
    auto valid = [](std::string_view s, bool allow_sign) {
        if (s.empty()) return false;
        std::size_t i = 0;
        if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    const auto slash = text.find('/');
    const auto num = text.substr(0, slash);
    const auto den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
    if (!valid(num, true) || !valid(den, false))
        throw ParseError("malformed rational '" + std::string(text) + "'");
    std::string n(num);
    if (n[0] == '+') n.erase(0, 1);
    const Integer d{std::string(den)};
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    Rational q{Integer{n}, d};
    q.canonicalize();
    return q;
}

inline Rational factorial(unsigned n) {
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

}  // namespace dessins
