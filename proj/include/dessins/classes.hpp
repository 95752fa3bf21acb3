#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "dessins/symcore/rational.hpp"

namespace dessins {

enum class Model { dessin, ribbon };

inline const char* model_name(Model m) { return m == Model::dessin ? "dessin" : "ribbon"; }

/// Partition stored with parts in descending order.
using Partition = std::vector<int>;

inline Partition canonical(Partition mu) {
    std::sort(mu.begin(), mu.end(), std::greater<>());
    return mu;
}

inline int weight(const Partition& mu) { return std::accumulate(mu.begin(), mu.end(), 0); }

/// |Aut mu| = prod over part sizes of (multiplicity)!.
inline Rational automorphisms(const Partition& mu) {
    Partition sorted = canonical(mu);
    Rational out(1);
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        out *= factorial(static_cast<unsigned>(j - i));
        i = j;
    }
    return out;
}

/// All partitions of n, each descending, in descending lexicographic order.
inline std::vector<Partition> partitions_of(int n) {
    std::vector<Partition> out;
    Partition cur;
    std::function<void(int, int)> rec = [&](int remaining, int maxpart) {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(remaining, maxpart); p >= 1; --p) {
            cur.push_back(p);
            rec(remaining - p, p);
            cur.pop_back();
        }
    };
    if (n > 0) rec(n, n);
    return out;
}

inline std::string partition_str(const Partition& mu, const char* sep = " ") {
    std::string out;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        if (i) out += sep;
        out += std::to_string(mu[i]);
    }
    return out;
}

/// Type (k, l, mu) of a dessin: k white vertices, l black vertices, faces of
/// degrees mu (pole orders).
struct DessinClass {
    int k = 0;
    int l = 0;
    Partition mu;

    int degree() const { return weight(mu); }
    int parts() const { return static_cast<int>(mu.size()); }

    /// Genus from 2g-2 = d-(k+l+m); empty when the class cannot exist.
    std::optional<int> genus() const {
        if (k < 1 || l < 1 || mu.empty()) return std::nullopt;
        for (int p : mu)
            if (p < 1) return std::nullopt;
        const int twice = degree() - (k + l + parts()) + 2;
        if (twice < 0 || twice % 2 != 0) return std::nullopt;
        return twice / 2;
    }

    DessinClass canonicalized() const { return {k, l, canonical(mu)}; }

    friend bool operator<(const DessinClass& x, const DessinClass& y) {
        return std::tie(x.k, x.l, x.mu) < std::tie(y.k, y.l, y.mu);
    }
    friend bool operator==(const DessinClass& x, const DessinClass& y) {
        return std::tie(x.k, x.l, x.mu) == std::tie(y.k, y.l, y.mu);
    }
};

/// Ribbon graph class (g, mu): genus g, m labeled boundary components of
/// lengths mu. As a clean dessin it has d = sum(mu) darts, d/2 edges and
/// k = 2-2g-m+d/2 vertices.
struct RibbonClass {
    int g = 0;
    Partition mu;

    int degree() const { return weight(mu); }
    int parts() const { return static_cast<int>(mu.size()); }
    int edges() const { return degree() / 2; }

    /// Vertex count, or empty for classes that cannot exist.
    std::optional<int> vertices() const {
        if (g < 0 || mu.empty()) return std::nullopt;
        for (int p : mu)
            if (p < 1) return std::nullopt;
        if (degree() % 2 != 0) return std::nullopt;
        const int k = 2 - 2 * g - parts() + degree() / 2;
        if (k < 1) return std::nullopt;
        return k;
    }

    RibbonClass canonicalized() const { return {g, canonical(mu)}; }

    friend bool operator<(const RibbonClass& x, const RibbonClass& y) {
        return std::tie(x.g, x.mu) < std::tie(y.g, y.mu);
    }
    friend bool operator==(const RibbonClass& x, const RibbonClass& y) {
        return std::tie(x.g, x.mu) == std::tie(y.g, y.mu);
    }
};

/// Every dessin class (canonical mu) of degree d with a valid genus.
inline std::vector<DessinClass> dessin_classes_of_degree(int d) {
    std::vector<DessinClass> out;
    for (const auto& mu : partitions_of(d))
        for (int k = 1; k <= d + 1; ++k)
            for (int l = 1; k + l <= d + 2; ++l) {
                DessinClass c{k, l, mu};
                if (c.genus()) out.push_back(c);
            }
    return out;
}

/// Every ribbon class (canonical mu) with sum(mu) = d and k >= 1.
inline std::vector<RibbonClass> ribbon_classes_of_degree(int d) {
    std::vector<RibbonClass> out;
    if (d % 2 != 0) return out;
    for (const auto& mu : partitions_of(d))
        for (int g = 0; 2 * g <= d; ++g) {
            RibbonClass c{g, mu};
            if (c.vertices()) out.push_back(c);
        }
    return out;
}

}  // namespace dessins
