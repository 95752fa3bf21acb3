#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <span>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "dessins/classes.hpp"
#include "dessins/errors.hpp"
#include "dessins/symcore/rational.hpp"

namespace dessins::oracle {

/// Permutation of {0..n-1} in one-line notation.
using Perm = std::vector<std::uint8_t>;

/// True iff the group generated by `perms` acts transitively on {0..n-1}.
inline bool transitivity_check(std::span<const Perm> perms, int n) {
    if (n <= 1) return true;
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    int components = n;
    for (const Perm& p : perms)
        for (int i = 0; i < n; ++i) {
            const int x = find(i), y = find(p[i]);
            if (x != y) {
                parent[x] = y;
                --components;
            }
        }
    return components == 1;
}

struct Config {
    int max_dessin_degree = 7;
    int max_ribbon_degree = 8;  // darts, i.e. sum(mu)
    unsigned threads = 0;       // 0: hardware concurrency

    unsigned worker_count() const {
        if (threads) return threads;
        const unsigned hw = std::thread::hardware_concurrency();
        return hw ? hw : 1;
    }
};

namespace detail {

inline constexpr int kMaxDegree = 10;

// All of S_n as a flat table of one-line images.
struct SymmetricGroup {
    int n = 0;
    std::vector<std::uint8_t> images;  // n entries per permutation
    std::vector<std::uint8_t> cycles;  // cycle count per permutation

    explicit SymmetricGroup(int degree) : n(degree) {
        std::vector<std::uint8_t> p(static_cast<std::size_t>(n));
        std::iota(p.begin(), p.end(), 0);
        do {
            images.insert(images.end(), p.begin(), p.end());
            cycles.push_back(static_cast<std::uint8_t>(cycle_count(p.data(), n)));
        } while (std::next_permutation(p.begin(), p.end()));
    }

    std::size_t size() const { return cycles.size(); }
    const std::uint8_t* perm(std::size_t i) const { return images.data() + i * static_cast<std::size_t>(n); }

    static int cycle_count(const std::uint8_t* p, int n) {
        unsigned seen = 0;
        int count = 0;
        for (int i = 0; i < n; ++i) {
            if (seen >> i & 1u) continue;
            ++count;
            for (int j = i; !(seen >> j & 1u); j = p[j]) seen |= 1u << j;
        }
        return count;
    }
};

inline bool is_fixed_point_free_involution(const std::uint8_t* p, int n) {
    for (int i = 0; i < n; ++i)
        if (p[i] == i || p[p[i]] != i) return false;
    return true;
}

// Cycle lengths of p, descending.
inline Partition cycle_type(const std::uint8_t* p, int n) {
    Partition out;
    unsigned seen = 0;
    for (int i = 0; i < n; ++i) {
        if (seen >> i & 1u) continue;
        int len = 0;
        for (int j = i; !(seen >> j & 1u); j = p[j]) {
            seen |= 1u << j;
            ++len;
        }
        out.push_back(len);
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

// Cycle type packed 4 bits per part, parts descending from the low nibble.
inline std::uint64_t cycle_type_code(const std::uint8_t* p, int n) {
    int lens[kMaxDegree];
    int parts = 0;
    unsigned seen = 0;
    for (int i = 0; i < n; ++i) {
        if (seen >> i & 1u) continue;
        int len = 0;
        for (int j = i; !(seen >> j & 1u); j = p[j]) {
            seen |= 1u << j;
            ++len;
        }
        int pos = parts++;
        while (pos > 0 && lens[pos - 1] < len) {
            lens[pos] = lens[pos - 1];
            --pos;
        }
        lens[pos] = len;
    }
    std::uint64_t code = 0;
    for (int i = parts - 1; i >= 0; --i) code = code << 4 | static_cast<std::uint64_t>(lens[i]);
    return code;
}

inline std::uint64_t encode(const Partition& mu) {
    std::uint64_t code = 0;
    Partition sorted = canonical(mu);
    for (auto it = sorted.rbegin(); it != sorted.rend(); ++it) code = code << 4 | static_cast<std::uint64_t>(*it);
    return code;
}

inline Partition decode(std::uint64_t code) {
    Partition out;
    for (; code; code >>= 4) out.push_back(static_cast<int>(code & 0xF));
    return out;
}

inline bool transitive_pair(const std::uint8_t* x, const std::uint8_t* y, int n) {
    const unsigned full = (1u << n) - 1u;
    unsigned orbit = 1u, frontier = 1u;
    while (frontier) {
        unsigned next = 0;
        for (int i = 0; i < n; ++i)
            if (frontier >> i & 1u) next |= (1u << x[i]) | (1u << y[i]);
        next &= ~orbit;
        orbit |= next;
        frontier = next;
    }
    return orbit == full;
}

struct Tally {
    // (cycles of sigma0, cycles of sigma1, face type) -> number of pairs
    std::map<std::tuple<int, int, Partition>, std::uint64_t> counts;
};

// Enumerates transitive pairs (sigma0, sigma1) with sigma0 over all of S_n and
// sigma1 from `second`, split across threads over the sigma0 index range.
// Pairs are tallied by (cycles(sigma0), cycles(sigma1), type(sigma0*sigma1)).
template <class Accept0, class Accept1, class AcceptType>
Tally enumerate_pairs(const SymmetricGroup& group, const std::vector<std::size_t>& second, Accept0 accept0,
                      Accept1 accept1, AcceptType accept_type, unsigned workers) {
    const int n = group.n;
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(group.size())));
    std::vector<std::unordered_map<std::uint64_t, std::uint64_t>> partial(workers);
    auto work = [&](unsigned w) {
        std::uint8_t prod[kMaxDegree];
        auto& local = partial[w];
        for (std::size_t i = w; i < group.size(); i += workers) {
            const int k = group.cycles[i];
            if (!accept0(k)) continue;
            const std::uint8_t* s0 = group.perm(i);
            for (std::size_t j : second) {
                const int l = group.cycles[j];
                if (!accept1(l)) continue;
                const std::uint8_t* s1 = group.perm(j);
                for (int x = 0; x < n; ++x) prod[x] = s0[s1[x]];
                const std::uint64_t type = cycle_type_code(prod, n);
                if (!accept_type(type)) continue;
                if (!transitive_pair(s0, s1, n)) continue;
                ++local[static_cast<std::uint64_t>(k) << 56 | static_cast<std::uint64_t>(l) << 48 | type];
            }
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    Tally total;
    for (const auto& p : partial)
        for (const auto& [key, c] : p) {
            const int k = static_cast<int>(key >> 56);
            const int l = static_cast<int>(key >> 48 & 0xFF);
            total.counts[{k, l, decode(key & ((std::uint64_t{1} << 48) - 1))}] += c;
        }
    return total;
}

// Labelled count: each pair contributes prod(mult!) labellings of its faces;
// the total is divided by n!.
inline Rational normalize(std::uint64_t pairs, const Partition& type, int n) {
    return Rational(Integer(static_cast<unsigned long>(pairs))) * automorphisms(type) / factorial(static_cast<unsigned>(n));
}

inline const SymmetricGroup& symmetric_group(int n) {
    static std::map<int, SymmetricGroup> cache;
    static std::mutex mu;
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, SymmetricGroup(n)).first;
    return it->second;
}

}  // namespace detail

/// N_{k,l}(mu) by exhaustive enumeration of permutation pairs in S_d x S_d.
inline Rational dessin_count_oracle(const DessinClass& c, const Config& cfg = {}) {
    const int d = c.degree();
    if (d > cfg.max_dessin_degree || d > detail::kMaxDegree)
        throw LimitExceeded("dessin oracle limited to degree " + std::to_string(cfg.max_dessin_degree) + ", got " +
                            std::to_string(d));
    if (!c.genus()) return Rational(0);
    const Partition target = canonical(c.mu);
    const auto& group = detail::symmetric_group(d);
    std::vector<std::size_t> second;
    for (std::size_t j = 0; j < group.size(); ++j)
        if (group.cycles[j] == c.l) second.push_back(j);
    auto tally = detail::enumerate_pairs(
        group, second, [&](int k) { return k == c.k; }, [&](int l) { return l == c.l; },
        [code = detail::encode(target)](std::uint64_t t) { return t == code; }, cfg.worker_count());
    std::uint64_t pairs = 0;
    for (const auto& [key, n] : tally.counts) pairs += n;
    return detail::normalize(pairs, target, d);
}

/// D_{g,m}(mu): sigma1 ranges over fixed-point-free involutions of the
/// d = sum(mu) darts; sigma0 must have 2-2g-m+d/2 cycles.
inline Rational ribbon_count_oracle(const RibbonClass& c, const Config& cfg = {}) {
    const int d = c.degree();
    if (d > cfg.max_ribbon_degree || d > detail::kMaxDegree)
        throw LimitExceeded("ribbon oracle limited to " + std::to_string(cfg.max_ribbon_degree) + " darts, got " +
                            std::to_string(d));
    const auto k = c.vertices();
    if (!k) return Rational(0);
    const Partition target = canonical(c.mu);
    const auto& group = detail::symmetric_group(d);
    std::vector<std::size_t> second;
    for (std::size_t j = 0; j < group.size(); ++j)
        if (detail::is_fixed_point_free_involution(group.perm(j), d)) second.push_back(j);
    auto tally = detail::enumerate_pairs(
        group, second, [&](int kk) { return kk == *k; }, [](int) { return true; },
        [code = detail::encode(target)](std::uint64_t t) { return t == code; }, cfg.worker_count());
    std::uint64_t pairs = 0;
    for (const auto& [key, n] : tally.counts) pairs += n;
    return detail::normalize(pairs, target, d);
}

/// Every nonzero N_{k,l}(mu) with sum(mu) = d, from one pass over S_d x S_d.
inline std::map<DessinClass, Rational> dessin_oracle_sweep(int d, const Config& cfg = {}) {
    if (d > cfg.max_dessin_degree || d > detail::kMaxDegree)
        throw LimitExceeded("dessin oracle limited to degree " + std::to_string(cfg.max_dessin_degree));
    const auto& group = detail::symmetric_group(d);
    std::vector<std::size_t> all(group.size());
    std::iota(all.begin(), all.end(), 0);
    auto always = [](auto&&) { return true; };
    auto tally = detail::enumerate_pairs(group, all, always, always, always, cfg.worker_count());
    std::map<DessinClass, Rational> out;
    for (const auto& [key, n] : tally.counts) {
        const auto& [k, l, type] = key;
        out[DessinClass{k, l, type}] = detail::normalize(n, type, d);
    }
    return out;
}

/// Every nonzero D_{g,m}(mu) with sum(mu) = d.
inline std::map<RibbonClass, Rational> ribbon_oracle_sweep(int d, const Config& cfg = {}) {
    if (d > cfg.max_ribbon_degree || d > detail::kMaxDegree)
        throw LimitExceeded("ribbon oracle limited to " + std::to_string(cfg.max_ribbon_degree) + " darts");
    std::map<RibbonClass, Rational> out;
    if (d % 2 != 0) return out;
    const auto& group = detail::symmetric_group(d);
    std::vector<std::size_t> second;
    for (std::size_t j = 0; j < group.size(); ++j)
        if (detail::is_fixed_point_free_involution(group.perm(j), d)) second.push_back(j);
    auto always = [](auto&&) { return true; };
    auto tally = detail::enumerate_pairs(group, second, always, always, always, cfg.worker_count());
    for (const auto& [key, n] : tally.counts) {
        const auto& [k, l, type] = key;
        const int m = static_cast<int>(type.size());
        const int twice_g = 2 - k - m + d / 2;  // 2-2g = k - d/2 + m
        out[RibbonClass{twice_g / 2, type}] = detail::normalize(n, type, d);
    }
    return out;
}

}  // namespace dessins::oracle
