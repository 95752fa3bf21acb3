#pragma once

#include <array>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <utility>

#include <json.hpp>

#include "dessins/classes.hpp"
#include "dessins/errors.hpp"
#include "dessins/symcore/multipoly.hpp"

namespace dessins {

/// Tables for the specialized polynomial recursions.
enum class SpecKind { f, h, ftilde, eps };

inline const char* spec_kind_name(SpecKind k) {
    static const char* names[] = {"f", "h", "ftilde", "eps"};
    return names[static_cast<int>(k)];
}

inline std::optional<SpecKind> spec_kind_from(const std::string& s) {
    for (SpecKind k : {SpecKind::f, SpecKind::h, SpecKind::ftilde, SpecKind::eps})
        if (s == spec_kind_name(k)) return k;
    return std::nullopt;
}

/// Memo tables shared by every recursion. Readers run concurrently; two
/// writers racing on one key store the same value, so the race is benign.
class Store {
public:
    std::optional<Rational> find(const DessinClass& c) const { return find_in(dessin_, c); }
    std::optional<Rational> find(const RibbonClass& c) const { return find_in(ribbon_, c); }
    std::optional<MultiPoly> find(SpecKind kind, int g, int n) const {
        return find_in(spec_[static_cast<int>(kind)], std::pair{g, n});
    }

    void insert(const DessinClass& c, const Rational& v) { insert_in(dessin_, c, v); }
    void insert(const RibbonClass& c, const Rational& v) { insert_in(ribbon_, c, v); }
    void insert(SpecKind kind, int g, int n, const MultiPoly& p) {
        insert_in(spec_[static_cast<int>(kind)], std::pair{g, n}, p);
    }

    std::size_t size() const {
        std::shared_lock lock(mutex_);
        std::size_t n = dessin_.size() + ribbon_.size();
        for (const auto& t : spec_) n += t.size();
        return n;
    }

    void clear() {
        std::unique_lock lock(mutex_);
        dessin_.clear();
        ribbon_.clear();
        for (auto& t : spec_) t.clear();
    }

    /// JSON-lines dump: header, then dessin, ribbon and spec rows in key order.
    void save(std::ostream& out) const {
        using nlohmann::ordered_json;
        std::shared_lock lock(mutex_);
        out << ordered_json{{"format", "census-cache"}, {"version", 1}}.dump() << '\n';
        for (const auto& [c, v] : dessin_)
            out << ordered_json{{"model", "dessin"}, {"k", c.k}, {"l", c.l}, {"mu", c.mu}, {"value", to_string(v)}}
                       .dump()
                << '\n';
        for (const auto& [c, v] : ribbon_)
            out << ordered_json{{"model", "ribbon"}, {"g", c.g}, {"mu", c.mu}, {"value", to_string(v)}}.dump()
                << '\n';
        for (SpecKind kind : {SpecKind::f, SpecKind::h, SpecKind::ftilde, SpecKind::eps}) {
            const char* index = (kind == SpecKind::f || kind == SpecKind::h) ? "d" : "l";
            for (const auto& [key, p] : spec_[static_cast<int>(kind)])
                out << ordered_json{{"model", spec_kind_name(kind)}, {"g", key.first}, {index, key.second},
                                    {"value", p.str()}}
                           .dump()
                    << '\n';
        }
    }

    void load(std::istream& in) {
        using nlohmann::json;
        std::string line;
        if (!std::getline(in, line)) return;
        try {
            const json header = json::parse(line);
            if (header.value("format", "") != "census-cache" || header.value("version", 0) != 1)
                throw CacheIOError("not a census cache (bad header)");
            while (std::getline(in, line)) {
                if (line.empty()) continue;
                const json row = json::parse(line);
                const std::string model = row.at("model").get<std::string>();
                if (model == "dessin") {
                    DessinClass c{row.at("k").get<int>(), row.at("l").get<int>(), row.at("mu").get<Partition>()};
                    insert(c.canonicalized(), parse_rational(row.at("value").get<std::string>()));
                } else if (model == "ribbon") {
                    RibbonClass c{row.at("g").get<int>(), row.at("mu").get<Partition>()};
                    insert(c.canonicalized(), parse_rational(row.at("value").get<std::string>()));
                } else if (auto kind = spec_kind_from(model)) {
                    const char* index = (*kind == SpecKind::f || *kind == SpecKind::h) ? "d" : "l";
                    insert(*kind, row.at("g").get<int>(), row.at(index).get<int>(),
                           MultiPoly::parse(row.at("value").get<std::string>()));
                } else {
                    throw CacheIOError("unknown cache model '" + model + "'");
                }
            }
        } catch (const json::exception& e) {
            throw CacheIOError(std::string("malformed cache line: ") + e.what());
        } catch (const ParseError& e) {
            throw CacheIOError(std::string("malformed cache value: ") + e.what());
        }
    }

    void save_file(const std::string& path) const {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw CacheIOError("cannot write cache file '" + path + "'");
        save(out);
        if (!out) throw CacheIOError("failed writing cache file '" + path + "'");
    }

    /// Missing files are not an error: the cache simply starts cold.
    void load_file(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) return;
        load(in);
    }

    static Store& global() {
        static Store store;
        return store;
    }

private:
    template <class Map, class Key>
    auto find_in(const Map& table, const Key& key) const -> std::optional<typename Map::mapped_type> {
        std::shared_lock lock(mutex_);
        auto it = table.find(key);
        if (it == table.end()) return std::nullopt;
        return it->second;
    }

    template <class Map, class Key, class Value>
    void insert_in(Map& table, const Key& key, const Value& value) {
        std::unique_lock lock(mutex_);
        table.emplace(key, value);
    }

    mutable std::shared_mutex mutex_;
    std::map<DessinClass, Rational> dessin_;
    std::map<RibbonClass, Rational> ribbon_;
    std::array<std::map<std::pair<int, int>, MultiPoly>, 4> spec_;
};

/// Cache path: DESSIN_CACHE wins over the explicit path.
inline std::optional<std::string> resolve_cache_path(const std::optional<std::string>& flag) {
    if (const char* env = std::getenv("DESSIN_CACHE"); env && *env) return std::string(env);
    return flag;
}

}  // namespace dessins
