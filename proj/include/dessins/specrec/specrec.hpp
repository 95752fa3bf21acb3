#pragma once

#include "dessins/census/store.hpp"
#include "dessins/symcore/multipoly.hpp"

namespace dessins {

/// A specialized generating polynomial with its genus and size index.
struct SpecPoly {
    int g = 0;
    int n = 0;  // d for f and h, l for ftilde and eps
    MultiPoly poly;
};

namespace specrec_detail {

template <class Compute>
MultiPoly memo(Store& store, SpecKind kind, int g, int n, Compute&& compute) {
    if (auto hit = store.find(kind, g, n)) return *hit;
    MultiPoly value = compute();
    store.insert(kind, g, n, value);
    return value;
}

inline MultiPoly q(long p, long den = 1) { return MultiPoly(ratio(p, den)); }

}  // namespace specrec_detail

/// f_{g,d}(t,u,v): d times the genus-g, degree-d part of theta(F).
inline MultiPoly f_poly(int g, int d, Store& store = Store::global()) {
    using specrec_detail::q;
    if (g < 0 || d < 2 * g + 1) return MultiPoly();
    return specrec_detail::memo(store, SpecKind::f, g, d, [&] {
        if (d == 1) return poly::t() * poly::u() * poly::v();
        const MultiPoly t = poly::t(), u = poly::u(), v = poly::v();
        const MultiPoly a = t + u + v;
        const MultiPoly b = q(4) * (t * u + t * v + u * v) - a * a;
        MultiPoly rhs = q(2 * d - 1) * a * f_poly(g, d - 1, store) + q(d - 2) * b * f_poly(g, d - 2, store) +
                        q(static_cast<long>(d - 1) * (d - 1) * (d - 2)) * f_poly(g - 1, d - 2, store);
        for (int i = 0; i <= g; ++i)
            for (int j = 1; j <= d - 3; ++j) {
                const MultiPoly x = f_poly(i, j, store);
                if (x.is_zero()) continue;
                rhs += q(static_cast<long>(4 + 6 * j) * (d - 2 - j)) * x * f_poly(g - i, d - 2 - j, store);
            }
        return rhs * Rational(1, d + 1);
    });
}

/// h_{g,d}: the part of f_{g,d} linear in t, by its own three-term recursion.
inline MultiPoly h_poly(int g, int d, Store& store = Store::global()) {
    using specrec_detail::q;
    if (g < 0 || d < 2 * g + 1) return MultiPoly();
    return specrec_detail::memo(store, SpecKind::h, g, d, [&] {
        if (d == 1) return poly::t() * poly::u() * poly::v();
        const MultiPoly u = poly::u(), v = poly::v();
        MultiPoly rhs = q(2 * d - 1) * (u + v) * h_poly(g, d - 1, store) -
                        q(d - 2) * (u - v) * (u - v) * h_poly(g, d - 2, store) +
                        q(static_cast<long>(d - 1) * (d - 1) * (d - 2)) * h_poly(g - 1, d - 2, store);
        return rhs * Rational(1, d + 1);
    });
}

/// Value of the l = 0 boundary term inside the quadratic ribbon sum.
inline MultiPoly ftilde_boundary() { return poly::u() * poly::t(); }

/// ftilde_{g,l}(t,u): 2l times the genus-g, 2l-dart part of theta of the
/// ribbon series; (0,0) returns the boundary term.
inline MultiPoly ftilde_poly(int g, int l, Store& store = Store::global()) {
    using specrec_detail::q;
    if (g < 0 || l < 0 || l < 2 * g) return MultiPoly();
    if (g == 0 && l == 0) return ftilde_boundary();
    return specrec_detail::memo(store, SpecKind::ftilde, g, l, [&] {
        const MultiPoly t = poly::t(), u = poly::u();
        if (g == 0 && l == 1) return t * t * u + t * u * u;
        if (l < 2) return MultiPoly();
        MultiPoly rhs = q(2 * (2 * l - 1)) * (t + u) * ftilde_poly(g, l - 1, store) +
                        q(static_cast<long>(2 * l - 1) * (2 * l - 3) * (l - 1)) * ftilde_poly(g - 1, l - 2, store);
        for (int i = 0; i <= g; ++i)
            for (int j = 0; j <= l - 2; ++j) {
                const MultiPoly x = ftilde_poly(i, j, store);
                if (x.is_zero()) continue;
                rhs += q(3L * (2 * j + 1) * (2 * (l - 2 - j) + 1)) * x * ftilde_poly(g - i, l - 2 - j, store);
            }
        return rhs * Rational(1, l + 1);
    });
}

/// Genus-g gluings of a 2l-gon graded by vertices: u^(vertices) weights.
inline MultiPoly hz_eps(int g, int l, Store& store = Store::global()) {
    using specrec_detail::q;
    if (g < 0 || l < 0 || l < 2 * g) return MultiPoly();
    return specrec_detail::memo(store, SpecKind::eps, g, l, [&] {
        const MultiPoly u = poly::u();
        if (g == 0 && l == 0) return u;
        if (g == 0 && l == 1) return u * u;
        MultiPoly rhs = q(2 * (2 * l - 1)) * u * hz_eps(g, l - 1, store) +
                        q(static_cast<long>(2 * l - 1) * (2 * l - 3) * (l - 1)) * hz_eps(g - 1, l - 2, store);
        return rhs * Rational(1, l + 1);
    });
}

inline SpecPoly spec_poly(SpecKind kind, int g, int n, Store& store = Store::global()) {
    switch (kind) {
        case SpecKind::f: return {g, n, f_poly(g, n, store)};
        case SpecKind::h: return {g, n, h_poly(g, n, store)};
        case SpecKind::ftilde: return {g, n, ftilde_poly(g, n, store)};
        case SpecKind::eps: return {g, n, hz_eps(g, n, store)};
    }
    return {g, n, MultiPoly()};
}

}  // namespace dessins
