#pragma once

#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>

namespace dessins::sym {

// Fixed global symbol order. r stands for sqrt(u) and q for sqrt(v); both are
// reduced eagerly (r^2 -> u, q^2 -> v) by polynomial multiplication.
inline constexpr int u = 0;
inline constexpr int v = 1;
inline constexpr int t = 2;
inline constexpr int a = 3;  // alpha
inline constexpr int b = 4;  // beta
inline constexpr int r = 5;
inline constexpr int q = 6;
inline constexpr int first_tj = 7;

/// Index of t_j for odd j, ordered t1, t-1, t3, t-3, ...
inline int tj(int j) {
    const int aj = std::abs(j);
    return first_tj + 2 * ((aj - 1) / 2) + (j < 0 ? 1 : 0);
}

inline bool is_tj(int index) { return index >= first_tj; }

inline int tj_order(int index) {
    const int k = index - first_tj;
    const int aj = 2 * (k / 2) + 1;
    return (k % 2) ? -aj : aj;
}

inline std::string name(int index) {
    static const char* fixed[] = {"u", "v", "t", "a", "b", "r", "q"};
    if (index < first_tj) return fixed[index];
    return "t" + std::to_string(tj_order(index));
}

inline std::optional<int> from_name(std::string_view n) {
    static const char* fixed[] = {"u", "v", "t", "a", "b", "r", "q"};
    for (int i = 0; i < first_tj; ++i)
        if (n == fixed[i]) return i;
    if (n.size() >= 2 && n[0] == 't') {
        std::string_view rest = n.substr(1);
        bool neg = false;
        if (rest[0] == '-') {
            neg = true;
            rest.remove_prefix(1);
        }
        if (rest.empty()) return std::nullopt;
        int j = 0;
        for (char c : rest) {
            if (c < '0' || c > '9') return std::nullopt;
            j = 10 * j + (c - '0');
        }
        if (j % 2 == 0) return std::nullopt;
        return tj(neg ? -j : j);
    }
    return std::nullopt;
}

}  // namespace dessins::sym
