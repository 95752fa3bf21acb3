#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "dessins/census/genseries.hpp"
#include "dessins/census/store.hpp"
#include "dessins/classes.hpp"

namespace dessins {

namespace census_detail {

inline Rational binomial(int n, int k) {
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(out);
}

/// Calls visit(I, J, multiplicity) once per sub-multiset I of `rest`, where
/// multiplicity counts the index subsets of {2..m} producing it.
template <class Visit>
void for_each_split(const Partition& rest, Visit&& visit) {
    Partition sorted = canonical(rest);
    std::vector<std::pair<int, int>> groups;  // (part, multiplicity)
    for (int p : sorted) {
        if (groups.empty() || groups.back().first != p) groups.emplace_back(p, 0);
        ++groups.back().second;
    }
    Partition left, right;
    std::function<void(std::size_t, Rational)> rec = [&](std::size_t gi, Rational mult) {
        if (gi == groups.size()) {
            visit(left, right, mult);
            return;
        }
        const auto [part, count] = groups[gi];
        for (int c = 0; c <= count; ++c) {
            for (int i = 0; i < c; ++i) left.push_back(part);
            for (int i = c; i < count; ++i) right.push_back(part);
            rec(gi + 1, mult * binomial(count, c));
            left.resize(left.size() - static_cast<std::size_t>(c));
            right.resize(right.size() - static_cast<std::size_t>(count - c));
        }
    };
    rec(0, Rational(1));
}

inline Partition with_front(int first, const Partition& rest) {
    Partition out{first};
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

}  // namespace census_detail

/// One application of the dessin recursion with mu[0] distinguished; `count`
/// evaluates smaller classes and must return 0 on invalid ones.
template <class Count>
Rational dessin_recursion_step(const DessinClass& c, Count&& count) {
    using census_detail::with_front;
    const int m1 = c.mu.front();
    const Partition rest(c.mu.begin() + 1, c.mu.end());
    Rational total(0);
    for (std::size_t j = 0; j < rest.size(); ++j) {
        Partition merged = rest;
        merged.erase(merged.begin() + static_cast<long>(j));
        const int part = m1 + rest[j] - 1;
        total += Rational(part) * count(DessinClass{c.k, c.l, with_front(part, merged)});
    }
    if (m1 > 1) {
        const Partition shorter = with_front(m1 - 1, rest);
        total += Rational(m1 - 1) * (count(DessinClass{c.k - 1, c.l, shorter}) + count(DessinClass{c.k, c.l - 1, shorter}));
    }
    for (int i = 1; i <= m1 - 2; ++i) {
        const int j = m1 - 1 - i;
        Partition joined{i, j};
        joined.insert(joined.end(), rest.begin(), rest.end());
        Rational inner = count(DessinClass{c.k, c.l, joined});
        census_detail::for_each_split(rest, [&](const Partition& left, const Partition& right, const Rational& mult) {
            const Partition a = with_front(i, left), b = with_front(j, right);
            for (int k1 = 1; k1 < c.k; ++k1)
                for (int l1 = 1; l1 < c.l; ++l1) {
                    const DessinClass x{k1, l1, a}, y{c.k - k1, c.l - l1, b};
                    if (!x.genus() || !y.genus()) continue;
                    inner += mult * count(x) * count(y);
                }
        });
        total += Rational(i * j) * inner;
    }
    return total / Rational(m1);
}

/// One application of the ribbon recursion with mu[0] distinguished.
template <class Count>
Rational ribbon_recursion_step(const RibbonClass& c, Count&& count) {
    using census_detail::with_front;
    const int m1 = c.mu.front();
    const Partition rest(c.mu.begin() + 1, c.mu.end());
    Rational total(0);
    for (std::size_t j = 0; j < rest.size(); ++j) {
        const int part = m1 + rest[j] - 2;
        if (part <= 0) continue;
        Partition merged = rest;
        merged.erase(merged.begin() + static_cast<long>(j));
        total += Rational(part) * count(RibbonClass{c.g, with_front(part, merged)});
    }
    if (m1 > 2) total += Rational(2 * (m1 - 2)) * count(RibbonClass{c.g, with_front(m1 - 2, rest)});
    for (int i = 1; i <= m1 - 3; ++i) {
        const int j = m1 - 2 - i;
        Partition joined{i, j};
        joined.insert(joined.end(), rest.begin(), rest.end());
        Rational inner = c.g > 0 ? count(RibbonClass{c.g - 1, joined}) : Rational(0);
        census_detail::for_each_split(rest, [&](const Partition& left, const Partition& right, const Rational& mult) {
            const Partition a = with_front(i, left), b = with_front(j, right);
            for (int g1 = 0; g1 <= c.g; ++g1) {
                const RibbonClass x{g1, a}, y{c.g - g1, b};
                if (!x.vertices() || !y.vertices()) continue;
                inner += mult * count(x) * count(y);
            }
        });
        total += Rational(i * j) * inner;
    }
    return total / Rational(m1);
}

inline bool is_dessin_base(const DessinClass& c) { return c.degree() == 1; }
inline bool is_ribbon_base(const RibbonClass& c) { return c.degree() == 2; }

inline Rational dessin_base_value(const DessinClass& c) { return Rational(c.k == 1 && c.l == 1 ? 1 : 0); }

inline Rational ribbon_base_value(const RibbonClass& c) {
    if (c.g != 0) return Rational(0);
    const Partition mu = canonical(c.mu);
    if (mu == Partition{2}) return Rational(1, 2);
    if (mu == Partition{1, 1}) return Rational(1);
    return Rational(0);
}

/// N_{k,l}(mu), memoized on the canonical key. The smallest part is the
/// distinguished one, which keeps the splitting sums short.
inline Rational dessin_count(const DessinClass& c, Store& store = Store::global()) {
    if (!c.genus()) return Rational(0);
    const DessinClass key = c.canonicalized();
    if (auto hit = store.find(key)) return *hit;
    Rational value;
    if (is_dessin_base(key)) {
        value = dessin_base_value(key);
    } else {
        DessinClass ordered = key;
        std::rotate(ordered.mu.rbegin(), ordered.mu.rbegin() + 1, ordered.mu.rend());
        value = dessin_recursion_step(ordered, [&](const DessinClass& x) { return dessin_count(x, store); });
    }
    store.insert(key, value);
    return value;
}

/// D_{g,m}(mu), memoized on the canonical key.
inline Rational ribbon_count(const RibbonClass& c, Store& store = Store::global()) {
    if (!c.vertices()) return Rational(0);
    const RibbonClass key = c.canonicalized();
    if (auto hit = store.find(key)) return *hit;
    Rational value;
    if (is_ribbon_base(key)) {
        value = ribbon_base_value(key);
    } else {
        RibbonClass ordered = key;
        std::rotate(ordered.mu.rbegin(), ordered.mu.rbegin() + 1, ordered.mu.rend());
        value = ribbon_recursion_step(ordered, [&](const RibbonClass& x) { return ribbon_count(x, store); });
    }
    store.insert(key, value);
    return value;
}

/// Recursion applied with mu[0] as given (no canonicalization at the top).
inline Rational dessin_count_ordered(const DessinClass& c, Store& store = Store::global()) {
    if (!c.genus()) return Rational(0);
    if (is_dessin_base(c)) return dessin_base_value(c);
    return dessin_recursion_step(c, [&](const DessinClass& x) { return dessin_count(x, store); });
}

inline Rational ribbon_count_ordered(const RibbonClass& c, Store& store = Store::global()) {
    if (!c.vertices()) return Rational(0);
    if (is_ribbon_base(c)) return ribbon_base_value(c);
    return ribbon_recursion_step(c, [&](const RibbonClass& x) { return ribbon_count(x, store); });
}

/// Plain recursion without any table, for checking the memo layer.
inline Rational dessin_count_unmemoized(const DessinClass& c) {
    if (!c.genus()) return Rational(0);
    if (is_dessin_base(c)) return dessin_base_value(c);
    return dessin_recursion_step(c, [](const DessinClass& x) { return dessin_count_unmemoized(x); });
}

inline Rational ribbon_count_unmemoized(const RibbonClass& c) {
    if (!c.vertices()) return Rational(0);
    if (is_ribbon_base(c)) return ribbon_base_value(c);
    return ribbon_recursion_step(c, [](const RibbonClass& x) { return ribbon_count_unmemoized(x); });
}

/// Coefficient of p_lambda in F: sum over (k,l) of N_{k,l}(lambda) u^k v^l / |Aut lambda|.
inline MultiPoly dessin_coefficient(const Partition& lambda, Store& store = Store::global()) {
    const int d = weight(lambda);
    MultiPoly out;
    for (int k = 1; k <= d + 1; ++k)
        for (int l = 1; k + l <= d + 2; ++l) {
            const DessinClass c{k, l, lambda};
            if (!c.genus()) continue;
            const Rational n = dessin_count(c, store);
            if (n != 0) out += MultiPoly::var(sym::u, k) * MultiPoly::var(sym::v, l) * n;
        }
    return out * Rational(1 / automorphisms(lambda));
}

/// Coefficient of p_lambda in the ribbon series: sum over g of D_g(lambda) u^k / |Aut lambda|.
inline MultiPoly ribbon_coefficient(const Partition& lambda, Store& store = Store::global()) {
    const int d = weight(lambda);
    MultiPoly out;
    if (d % 2 != 0) return out;
    for (int g = 0; 2 * g <= d; ++g) {
        const RibbonClass c{g, lambda};
        const auto k = c.vertices();
        if (!k) continue;
        const Rational n = ribbon_count(c, store);
        if (n != 0) out += MultiPoly::var(sym::u, static_cast<unsigned>(*k)) * n;
    }
    return out * Rational(1 / automorphisms(lambda));
}

/// Census generating function through p-weight max_weight.
inline GenSeries assemble_F(Model model, int max_weight, Store& store = Store::global()) {
    GenSeries out(model, std::max(max_weight, 0));
    for (int d = 1; d <= max_weight; ++d)
        for (const auto& lambda : partitions_of(d))
            out.add_term(lambda, model == Model::dessin ? dessin_coefficient(lambda, store)
                                                        : ribbon_coefficient(lambda, store));
    return out;
}

/// The (g, m) part: m factors of p and u,v-degree fixed by the Euler formula.
inline GenSeries homogeneous_component(const GenSeries& F, int g, int m) {
    return F.filter([&](const Partition& lambda, const MultiPoly&) {
        if (static_cast<int>(lambda.size()) != m) return false;
        const int d = weight(lambda);
        if (F.model() == Model::dessin) return true;
        return d % 2 == 0 && 2 - 2 * g - m + d / 2 >= 1;
    }).filter_coefficients([&](const Partition& lambda, const Monomial& mono) {
        const int d = weight(lambda);
        const int deg = static_cast<int>(mono::exponent(mono, sym::u) + mono::exponent(mono, sym::v));
        return F.model() == Model::dessin ? deg == d - m + 2 - 2 * g : deg == 2 - 2 * g - m + d / 2;
    });
}

}  // namespace dessins
