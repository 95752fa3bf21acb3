#pragma once

// Reference small-(g,m) forms of the topological recursion, as numerators over
// the model denominator power. Dessin numerators are polynomials in a, b;
// the ribbon ones are the polynomials in parentheses times (16u)^e.

#include <string>
#include <utility>
#include <vector>

#include "dessins/symcore/laurent.hpp"
#include "dessins/symcore/multipoly.hpp"

namespace goldens {

using dessins::LaurentPoly;
using dessins::MultiPoly;

struct Cell {
    int g, m;
    std::vector<std::pair<int, const char*>> U;
    const char* G;
};

inline LaurentPoly laurent(const std::vector<std::pair<int, const char*>>& terms) {
    LaurentPoly out;
    for (const auto& [e, c] : terms) out.add_term(e, MultiPoly::parse(c));
    return out;
}

inline const std::vector<Cell>& dessin_cells() {
    static const std::vector<Cell> cells = {
        {0, 3, {{0, "1/2*a*t1^2"}, {-2, "-1/2*b*t-1^2"}}, "1/6*a*t1^3 + 1/6*b*t-1^3"},
        {1, 1, {{2, "1/8*a"}, {0, "-1/4*a - 1/8*b"}, {-2, "1/8*a + 1/4*b"}, {-4, "-1/8*b"}},
         "1/24*a*t3 - 1/4*a*t1 - 1/8*b*t1 - 1/8*a*t-1 - 1/4*b*t-1 + 1/24*b*t-3"},
        {0, 4,
         {{2, "1/2*a^2*t1^3"},
          {0, "1/2*a^2*t3*t1^2 - a^2*t1^3 - 1/2*a*b*t1^3 - 1/2*a*b*t-1^2*t1"},
          {-2, "1/2*a*b*t-1^3 + b^2*t-1^3 + 1/2*a*b*t1^2*t-1 - 1/2*b^2*t-3*t-1^2"},
          {-4, "-1/2*b^2*t-1^3"}},
         "1/6*a^2*t1^3*t3 - 1/4*a^2*t1^4 - 1/8*a*b*t1^4 - 1/4*a*b*t1^2*t-1^2 - 1/8*a*b*t-1^4"
         " - 1/4*b^2*t-1^4 + 1/6*b^2*t-3*t-1^3"},
        // The t-1 z^-2 coefficient reads -(a^2+16ab+10b^2)/8; the mirror of
        // the z^0 t1 coefficient under a <-> b.
        {1, 2,
         {{4, "5/8*a^2*t1"},
          {2, "1/8*a^2*t3 - 3/2*a^2*t1 - 3/4*a*b*t1"},
          {0, "5/4*a^2*t1 + 2*a*b*t1 + 1/8*b^2*t1 + 1/8*a^2*t5 + 1/2*a*b*t-1 - 1/2*a^2*t3 - 1/4*a*b*t3"},
          {-2, "-1/8*a^2*t-1 - 2*a*b*t-1 - 5/4*b^2*t-1 + 1/4*a*b*t-3 + 1/2*b^2*t-3 - 1/2*a*b*t1 - 1/8*b^2*t-5"},
          {-4, "3/4*a*b*t-1 + 3/2*b^2*t-1 - 1/8*b^2*t-3"},
          {-6, "-5/8*b^2*t-1"}},
         "1/8*a^2*t1*t5 + 1/48*a^2*t3^2 - 1/2*a^2*t1*t3 - 1/4*a*b*t1*t3 + 1/16*a^2*t-1^2 + a*b*t-1^2"
         " + 5/8*b^2*t-1^2 + 1/2*a*b*t-1*t1 + 5/8*a^2*t1^2 + a*b*t1^2 + 1/16*b^2*t1^2 - 1/4*a*b*t-3*t-1"
         " - 1/2*b^2*t-3*t-1 + 1/48*b^2*t-3^2 + 1/8*b^2*t-5*t-1"},
    };
    return cells;
}

inline const std::vector<Cell>& ribbon_cells() {
    static const std::vector<Cell> cells = {
        {0, 3, {{0, "1/2*t1^2"}, {-2, "-1/2*t-1^2"}}, "1/6*t1^3 + 1/6*t-1^3"},
        {1, 1, {{2, "1/8"}, {0, "-3/8"}, {-2, "3/8"}, {-4, "-1/8"}}, "1/24*t3 - 3/8*t1 - 3/8*t-1 + 1/24*t-3"},
        {0, 4,
         {{2, "1/2*t1^3"},
          {0, "1/2*t3*t1^2 - 3/2*t1^3 - 1/2*t-1^2*t1"},
          {-2, "1/2*t1^2*t-1 + 3/2*t-1^3 - 1/2*t-3*t-1^2"},
          {-4, "-1/2*t-1^3"}},
         "1/6*t1^3*t3 - 3/8*t1^4 - 1/4*t1^2*t-1^2 - 3/8*t-1^4 + 1/6*t-3*t-1^3"},
        {1, 2,
         {{4, "5/8*t1"},
          {2, "1/8*t3 - 9/4*t1"},
          {0, "1/2*t-1 + 27/8*t1 - 3/4*t3 + 1/8*t5"},
          {-2, "-1/8*t-5 + 3/4*t-3 - 27/8*t-1 - 1/2*t1"},
          {-4, "9/4*t-1 - 1/8*t-3"},
          {-6, "-5/8*t-1"}},
         "1/8*t1*t5 + 1/48*t3^2 - 3/4*t1*t3 + 27/16*t1^2 + 1/2*t-1*t1 + 27/16*t-1^2 - 3/4*t-1*t-3"
         " + 1/48*t-3^2 + 1/8*t-5*t-1"},
    };
    return cells;
}

/// Ribbon prefactors 1/(c u^e), in the order U03 G03 U11 G11 U04 G04 U12 G12.
inline const std::vector<std::string>& ribbon_prefactors() {
    static const std::vector<std::string> p = {"1/32",  "1/96",    "1/128",  "1/384",
                                               "1/512", "1/6144", "1/2048", "1/12288"};
    return p;
}

}  // namespace goldens
