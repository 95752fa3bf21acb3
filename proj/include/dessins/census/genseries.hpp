#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dessins/classes.hpp"
#include "dessins/errors.hpp"
#include "dessins/symcore/multipoly.hpp"

namespace dessins {

/// Orders p-monomials by weight, then with larger parts first.
struct MonomialOrder {
    bool operator()(const Partition& x, const Partition& y) const {
        const int wx = weight(x), wy = weight(y);
        if (wx != wy) return wx < wy;
        return x > y;
    }
};

/// Truncated series sum_lambda c_lambda s^(|lambda|+excess) p_lambda with
/// c_lambda polynomial in u, v. Keys are descending partitions; the empty
/// partition is the constant term. Every term of p-weight <= valid_through()
/// is exact; nothing above it is stored.
class GenSeries {
public:
    using TermMap = std::map<Partition, MultiPoly, MonomialOrder>;

    GenSeries(Model model, int valid_through, int s_excess = 0)
        : model_(model), valid_(valid_through), excess_(s_excess) {}

    static GenSeries one(Model model, int valid_through) {
        GenSeries s(model, valid_through);
        s.add_term({}, MultiPoly(1));
        return s;
    }

    Model model() const { return model_; }
    int valid_through() const { return valid_; }
    int s_excess() const { return excess_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    MultiPoly coefficient(const Partition& lambda) const {
        auto it = terms_.find(canonical(lambda));
        return it == terms_.end() ? MultiPoly() : it->second;
    }

    /// Adds c * p_lambda; terms above the validity bound are dropped.
    void add_term(const Partition& lambda, const MultiPoly& c) {
        if (c.is_zero()) return;
        Partition key = canonical(lambda);
        if (weight(key) > valid_) return;
        auto [it, fresh] = terms_.try_emplace(std::move(key), c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    /// Smallest p-weight carrying a nonzero term, or valid_through()+1.
    int valuation() const { return terms_.empty() ? valid_ + 1 : weight(terms_.begin()->first); }

    GenSeries truncated(int w) const {
        GenSeries out(model_, std::min(w, valid_), excess_);
        for (const auto& [lambda, c] : terms_)
            if (weight(lambda) <= out.valid_) out.terms_.emplace(lambda, c);
        return out;
    }

    GenSeries stratum(int w) const {
        GenSeries out(model_, valid_, excess_);
        for (const auto& [lambda, c] : terms_)
            if (weight(lambda) == w) out.terms_.emplace(lambda, c);
        return out;
    }

    template <class Pred>
    GenSeries filter(Pred&& pred) const {
        GenSeries out(model_, valid_, excess_);
        for (const auto& [lambda, c] : terms_)
            if (pred(lambda, c)) out.terms_.emplace(lambda, c);
        return out;
    }

    /// Keeps the coefficient monomials accepted by pred(lambda, monomial).
    template <class Pred>
    GenSeries filter_coefficients(Pred&& pred) const {
        GenSeries out(model_, valid_, excess_);
        for (const auto& [lambda, c] : terms_)
            out.add_term(lambda, c.filter([&](const Monomial& m) { return pred(lambda, m); }));
        return out;
    }

    GenSeries& operator+=(const GenSeries& o) {
        check_compatible(o);
        if (terms_.empty()) excess_ = o.excess_;
        valid_ = std::min(valid_, o.valid_);
        drop_above(valid_);
        for (const auto& [lambda, c] : o.terms_) add_term(lambda, c);
        return *this;
    }
    GenSeries& operator-=(const GenSeries& o) {
        check_compatible(o);
        if (terms_.empty()) excess_ = o.excess_;
        valid_ = std::min(valid_, o.valid_);
        drop_above(valid_);
        for (const auto& [lambda, c] : o.terms_) add_term(lambda, -c);
        return *this;
    }
    friend GenSeries operator+(GenSeries x, const GenSeries& y) { return x += y; }
    friend GenSeries operator-(GenSeries x, const GenSeries& y) { return x -= y; }

    GenSeries& operator*=(const MultiPoly& c) {
        if (c.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [lambda, x] : terms_) x *= c;
        return *this;
    }
    friend GenSeries operator*(GenSeries x, const MultiPoly& c) { return x *= c; }
    friend GenSeries operator*(const MultiPoly& c, GenSeries x) { return x *= c; }

    /// Partial derivative in p_j.
    GenSeries diff(int j) const {
        GenSeries out(model_, valid_ - j, excess_ + j);
        for (const auto& [lambda, c] : terms_) {
            const auto mult = std::count(lambda.begin(), lambda.end(), j);
            if (mult == 0) continue;
            Partition rest = lambda;
            rest.erase(std::find(rest.begin(), rest.end(), j));
            out.add_term(rest, c * Rational(static_cast<long>(mult)));
        }
        return out;
    }

    /// Multiplication by p_j (no s factor).
    GenSeries mul_p(int j) const {
        GenSeries out(model_, valid_ + j, excess_ - j);
        for (const auto& [lambda, c] : terms_) {
            Partition next = lambda;
            next.push_back(j);
            out.add_term(next, c);
        }
        return out;
    }

    /// Multiplication by s^k.
    GenSeries shift_s(int k) const {
        GenSeries out = *this;
        out.excess_ += k;
        return out;
    }

    /// Exact product; valid through min(va + val(b), vb + val(a)).
    friend GenSeries product(const GenSeries& a, const GenSeries& b, std::optional<int> cap = std::nullopt) {
        if (a.model_ != b.model_) throw StructureError("product of series from different models");
        int valid = std::min(a.valid_ + b.valuation(), b.valid_ + a.valuation());
        if (cap) valid = std::min(valid, *cap);
        GenSeries out(a.model_, valid, a.excess_ + b.excess_);
        for (const auto& [la, ca] : a.terms_) {
            const int wa = weight(la);
            if (wa > valid) break;
            for (const auto& [lb, cb] : b.terms_) {
                if (wa + weight(lb) > valid) break;
                Partition joined = la;
                joined.insert(joined.end(), lb.begin(), lb.end());
                out.add_term(joined, ca * cb);
            }
        }
        return out;
    }

    /// exp(X) for X without constant term.
    friend GenSeries exp_series(const GenSeries& x) {
        if (!x.coefficient({}).is_zero()) throw DomainError("exp of a series with constant term");
        if (x.excess_ != 0 && !x.is_zero()) throw StructureError("exp needs a series of s-excess 0");
        GenSeries result = one(x.model_, x.valid_);
        GenSeries power = result;
        for (int k = 1; k <= x.valid_; ++k) {
            power = product(power, x, x.valid_) * MultiPoly(Rational(1, k));
            if (power.is_zero()) break;
            result += power;
        }
        return result;
    }

    /// log(Z) for Z with constant term 1.
    friend GenSeries log_series(const GenSeries& z) {
        if (z.coefficient({}) != MultiPoly(1)) throw DomainError("log of a series with constant term != 1");
        if (z.excess_ != 0) throw StructureError("log needs a series of s-excess 0");
        GenSeries x = z - one(z.model_, z.valid_);
        GenSeries result(z.model_, z.valid_);
        GenSeries power = one(z.model_, z.valid_);
        for (int k = 1; k <= z.valid_; ++k) {
            power = product(power, x, z.valid_);
            if (power.is_zero()) break;
            result += power * MultiPoly(ratio(k % 2 ? 1 : -1, k));
        }
        return result;
    }

    /// Exact equality of all terms of weight <= w; both sides must be valid there.
    friend bool equal_through(const GenSeries& a, const GenSeries& b, int w) {
        if (a.valid_ < w || b.valid_ < w) throw TruncationError("comparison beyond series validity");
        if (a.excess_ != b.excess_ && !(a.truncated(w).is_zero() && b.truncated(w).is_zero())) return false;
        return a.truncated(w).terms_ == b.truncated(w).terms_;
    }

    std::optional<std::pair<Partition, MultiPoly>> first_nonzero() const {
        if (terms_.empty()) return std::nullopt;
        return *terms_.begin();
    }

    /// "c*s^k*p2*p1^2" with the coefficient in canonical form.
    std::string term_str(const Partition& lambda, const MultiPoly& c) const {
        std::string out = "(" + c.str() + ")";
        const int sp = weight(lambda) + excess_;
        if (sp != 0) out += "*s" + (sp == 1 ? std::string() : "^" + std::to_string(sp));
        for (std::size_t i = 0; i < lambda.size();) {
            std::size_t j = i;
            while (j < lambda.size() && lambda[j] == lambda[i]) ++j;
            out += "*p" + std::to_string(lambda[i]);
            if (j - i > 1) out += "^" + std::to_string(j - i);
            i = j;
        }
        return out;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [lambda, c] : terms_) {
            if (!out.empty()) out += " + ";
            out += term_str(lambda, c);
        }
        return out;
    }

    friend bool operator==(const GenSeries& a, const GenSeries& b) {
        return a.model_ == b.model_ && a.valid_ == b.valid_ && a.excess_ == b.excess_ && a.terms_ == b.terms_;
    }

private:
    void check_compatible(const GenSeries& o) const {
        if (model_ != o.model_) throw StructureError("series from different models");
        if (excess_ != o.excess_ && !terms_.empty() && !o.terms_.empty())
            throw StructureError("adding series with different s-gradings");
    }

    void drop_above(int w) {
        for (auto it = terms_.begin(); it != terms_.end();)
            it = weight(it->first) > w ? terms_.erase(it) : std::next(it);
    }

    Model model_;
    int valid_;
    int excess_;
    TermMap terms_;
};

}  // namespace dessins
