#pragma once

#include <algorithm>
#include <climits>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "dessins/census/census.hpp"
#include "dessins/census/genseries.hpp"
#include "dessins/errors.hpp"
#include "dessins/genfun/report.hpp"
#include "dessins/symcore/laurent.hpp"
#include "dessins/symcore/power_series.hpp"

namespace dessins {

/// Spectral-curve data of one model. Scalars are polynomials in a, b (dessin)
/// or in r = sqrt(u) (ribbon); every recursion output carries an explicit
/// power of `denominator()`.
struct SpectralModel {
    Model model;

    /// z(x) to the given order, with s = 1.
    PowerSeries z_of_x(int order) const {
        PowerSeries num("x", order), den("x", order);
        num[0] = den[0] = MultiPoly(1);
        if (order >= 1) {
            if (model == Model::dessin) {
                num[1] = -poly::b();
                den[1] = -poly::a();
            } else {
                num[1] = MultiPoly(2) * poly::r();
                den[1] = MultiPoly(-2) * poly::r();
            }
        }
        return series_sqrt(num * series_invert(den));
    }

    /// Numerator of 1/eta over one power of the denominator.
    LaurentPoly eta_inverse_numerator() const {
        const MultiPoly a = model == Model::dessin ? poly::a() : MultiPoly(1);
        const MultiPoly b = model == Model::dessin ? poly::b() : MultiPoly(1);
        LaurentPoly out;
        out.add_term(4, a);
        out.add_term(2, -(MultiPoly(2) * a + b));
        out.add_term(0, a + MultiPoly(2) * b);
        out.add_term(-2, -b);
        return out;
    }

    /// sigma = (a-b)^2 for dessins, 16u for ribbon graphs.
    MultiPoly denominator() const {
        if (model == Model::dessin) return poly::pow(poly::a() - poly::b(), 2);
        return MultiPoly(16) * poly::u();
    }

    /// The denominator after a, b are expressed through u, v.
    MultiPoly denominator_in_uv() const {
        return model == Model::dessin ? MultiPoly(16) * poly::u() * poly::v() : MultiPoly(16) * poly::u();
    }
};

inline SpectralModel spectral_model(Model model) { return SpectralModel{model}; }

namespace toprec_detail {

inline bool stable(int g, int m) { return g >= 0 && m >= 1 && 2 * g - 2 + m > 0; }

inline void require_stable(int g, int m) {
    if (!stable(g, m))
        throw DomainError("(g,m) = (" + std::to_string(g) + "," + std::to_string(m) + ") is not stable");
}

/// Positive rational content across all coefficients.
inline Rational content(const std::vector<MultiPoly>& polys) {
    Integer g = 0, l = 1;
    for (const auto& p : polys)
        for (const auto& [m, c] : p.terms()) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num().get_mpz_t());
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
        }
    if (g == 0) return Rational(1);
    Rational out(g, l);
    out.canonicalize();
    return out;
}

inline std::vector<MultiPoly> coeff_list(const LaurentPoly& x) {
    std::vector<MultiPoly> out;
    for (const auto& [e, c] : x.terms()) out.push_back(c);
    return out;
}

/// "name = body" with the model's denominator power factored out.
inline std::string scaled_str(Model model, int e, const std::string& name, const std::vector<MultiPoly>& coeffs,
                              const std::function<std::string(const Rational&)>& body) {
    if (model == Model::dessin) {
        const std::string head = e == 1 ? "sigma*" : "sigma^" + std::to_string(e) + "*";
        return head + name + " = " + body(Rational(1));
    }
    const Rational c = content(coeffs);
    Integer scale = 1;
    for (int i = 0; i < e; ++i) scale *= 16;
    const Rational pre = c / Rational(scale);
    return name + " = " + to_string(pre) + "*u^-" + std::to_string(e) + "*(" + body(c) + ")";
}

}  // namespace toprec_detail

/// Odd Laurent form numerator(z) dz / denominator^denom_exp, with only even
/// exponents in the numerator.
struct OddLaurentForm {
    Model model = Model::dessin;
    int denom_exp = 0;
    LaurentPoly numerator;

    std::string str(const std::string& name) const {
        return toprec_detail::scaled_str(model, denom_exp, name, toprec_detail::coeff_list(numerator),
                                         [&](const Rational& c) { return (numerator * (1 / c)).str(); });
    }
};

/// Polynomial in the t_j over denominator^denom_exp.
struct ScaledPoly {
    Model model = Model::dessin;
    int denom_exp = 0;
    MultiPoly numerator;

    std::string str(const std::string& name) const {
        return toprec_detail::scaled_str(model, denom_exp, name, {numerator},
                                         [&](const Rational& c) { return (numerator * (1 / c)).str(); });
    }
};

/// Form with separate expansions at z = 0 and z = infinity. The expansion at
/// 0 is exact for exponents <= zero_through, the one at infinity for
/// exponents >= infinity_from.
struct BiLocalForm {
    LaurentPoly at_zero;
    LaurentPoly at_infinity;
    int zero_through = INT_MAX / 4;
    int infinity_from = INT_MIN / 4;

    static BiLocalForm global(const LaurentPoly& x) { return {x, x}; }

    /// Product with a globally Laurent factor.
    friend BiLocalForm operator*(const LaurentPoly& x, const BiLocalForm& y) {
        BiLocalForm out{x * y.at_zero, x * y.at_infinity, y.zero_through, y.infinity_from};
        if (!x.is_zero()) {
            if (y.zero_through < INT_MAX / 4) out.zero_through = y.zero_through + x.min_exponent();
            if (y.infinity_from > INT_MIN / 4) out.infinity_from = y.infinity_from + x.max_exponent();
        }
        out.at_zero = out.at_zero.window(INT_MIN / 4, out.zero_through);
        out.at_infinity = out.at_infinity.window(out.infinity_from, INT_MAX / 4);
        return out;
    }
};

/// c_j^{(i)}, i = 0..maxOrder, from z(x)^j - 1 at s = 1.
inline std::vector<MultiPoly> change_coeffs(Model model, int j, int max_order) {
    if (j % 2 == 0) throw DomainError("change coefficients need odd j, got " + std::to_string(j));
    if (max_order < 1) throw DomainError("change coefficients need maxOrder >= 1");
    const PowerSeries zj = series_ipow(spectral_model(model).z_of_x(max_order), j);
    std::vector<MultiPoly> out(zj.coeffs());
    out[0] = MultiPoly();
    return out;
}

/// U_{0,2} expanded at 0 and infinity, keeping t_j with |j| <= 2*order + 1.
inline BiLocalForm u02_form(int order) {
    if (order < 0) throw DomainError("negative U_{0,2} truncation order");
    BiLocalForm out;
    for (int i = 0; i <= order; ++i) {
        out.at_zero.add_term(2 * i, -poly::tj(-2 * i - 1));
        out.at_infinity.add_term(-2 * i - 2, poly::tj(2 * i + 1));
    }
    out.zero_through = 2 * order;
    out.infinity_from = -2 * order - 2;
    return out;
}

/// U_{0,2} truncated exactly enough to be multiplied by a Laurent factor with
/// exponents in [lo, hi] and then projected or paired.
inline BiLocalForm u02_for(int lo, int hi) {
    const int need = std::max({-2 - lo, hi, 0});
    return u02_form(need / 2 + 1);
}

/// Projection onto odd Laurent forms: even exponents <= -2 from the expansion
/// at 0 and even exponents >= 0 from the expansion at infinity.
inline LaurentPoly project_L(const BiLocalForm& phi) {
    if (phi.zero_through < -2 || phi.infinity_from > 0)
        throw TruncationError("bi-local expansion does not cover the projection range");
    LaurentPoly out;
    for (const auto& [e, c] : phi.at_zero.terms())
        if (e <= -2 && e % 2 == 0) out.add_term(e, c);
    for (const auto& [e, c] : phi.at_infinity.terms())
        if (e >= 0 && e % 2 == 0) out.add_term(e, c);
    return out;
}

namespace toprec_detail {

inline LaurentPoly antiderivative(const LaurentPoly& x, const char* where) {
    LaurentPoly out;
    for (const auto& [e, c] : x.terms()) {
        if (e == -1) throw IntegrabilityError(std::string("logarithmic term in the expansion at ") + where);
        out.add_term(e + 1, c * ratio(1, e + 1));
    }
    return out;
}

}  // namespace toprec_detail

/// Res_0(phi * int psi) + Res_inf(phi * int psi), integration constants zero.
inline MultiPoly omega_pairing(const LaurentPoly& phi, const BiLocalForm& psi) {
    if (phi.is_zero()) return MultiPoly();
    if (psi.zero_through < -2 - phi.min_exponent() || psi.infinity_from > -phi.max_exponent())
        throw TruncationError("expansion of the paired form does not reach the residue");
    const LaurentPoly i0 = toprec_detail::antiderivative(psi.at_zero, "0");
    const LaurentPoly iinf = toprec_detail::antiderivative(psi.at_infinity, "infinity");
    return (phi * i0).residue() - (phi * iinf).residue();
}

inline MultiPoly omega_pairing(const LaurentPoly& phi, const LaurentPoly& psi) {
    return omega_pairing(phi, BiLocalForm::global(psi));
}

namespace toprec_detail {

/// sum_j j z^(j-1) d/dt_j applied to the coefficients.
inline LaurentPoly delta(const LaurentPoly& x) {
    std::vector<int> present;
    for (const auto& [e, c] : x.terms())
        for (const auto& [m, k] : c.terms())
            for (std::size_t i = sym::first_tj; i < m.size(); ++i)
                if (m[i] != 0) present.push_back(static_cast<int>(i));
    std::sort(present.begin(), present.end());
    present.erase(std::unique(present.begin(), present.end()), present.end());
    LaurentPoly out;
    for (int s : present) {
        const int j = sym::tj_order(s);
        out += x.map_coeffs([&](const MultiPoly& c) { return c.derivative(s); }).shifted(j - 1) * Rational(j);
    }
    return out;
}

/// P_L(factor * U_{0,2}) with exactly sufficient truncation.
inline LaurentPoly project_with_u02(const LaurentPoly& factor) {
    if (factor.is_zero()) return {};
    return project_L(factor * u02_for(factor.min_exponent(), factor.max_exponent()));
}

inline std::mutex& cache_mutex() {
    static std::mutex m;
    return m;
}

inline std::map<std::tuple<int, int, int>, LaurentPoly>& cache() {
    static std::map<std::tuple<int, int, int>, LaurentPoly> c;
    return c;
}

inline LaurentPoly numerator_U(Model model, int g, int m) {
    const auto key = std::tuple{static_cast<int>(model), g, m};
    {
        std::lock_guard lock(cache_mutex());
        auto it = cache().find(key);
        if (it != cache().end()) return it->second;
    }
    const LaurentPoly eta_inv = spectral_model(model).eta_inverse_numerator();
    LaurentPoly out;
    if (g == 1 && m == 1) {
        out = eta_inv.shifted(-2) * Rational(1, 8);
    } else if (g == 0 && m == 3) {
        const BiLocalForm u02 = u02_form(4);
        // Both expansions start at the edge exponent (0 resp. -2), so the
        // square stays exact through the same order shifted by that edge.
        BiLocalForm sq{u02.at_zero * u02.at_zero, u02.at_infinity * u02.at_infinity, u02.zero_through,
                       u02.infinity_from - 2};
        sq.at_zero = sq.at_zero.window(INT_MIN / 4, sq.zero_through);
        sq.at_infinity = sq.at_infinity.window(sq.infinity_from, INT_MAX / 4);
        out = project_L(eta_inv * sq) * Rational(1, 2);
    } else {
        LaurentPoly inner;
        if (stable(g - 1, m + 1)) inner += delta(numerator_U(model, g - 1, m + 1));
        for (int g1 = 0; g1 <= g; ++g1)
            for (int m1 = 1; m1 <= m; ++m1) {
                const int g2 = g - g1, m2 = m + 1 - m1;
                if (!stable(g1, m1) || !stable(g2, m2)) continue;
                inner += numerator_U(model, g1, m1) * numerator_U(model, g2, m2);
            }
        out = eta_inv * inner * Rational(1, 2);
        if (stable(g, m - 1)) out += project_with_u02(eta_inv * numerator_U(model, g, m - 1));
    }
    if (!out.has_only_even_exponents()) throw StructureError("recursion produced an odd exponent");
    std::lock_guard lock(cache_mutex());
    return cache().emplace(key, out).first->second;
}

}  // namespace toprec_detail

/// U_{g,m}: numerator over denominator^(2g-2+m). Memoized.
inline OddLaurentForm toprec_U(Model model, int g, int m) {
    toprec_detail::require_stable(g, m);
    return {model, 2 * g - 2 + m, toprec_detail::numerator_U(model, g, m)};
}

/// G_{g,m} = Omega(U_{g,m}, U_{0,2}) / m, homogeneous of degree m in the t_j.
inline ScaledPoly toprec_G(Model model, int g, int m) {
    const OddLaurentForm U = toprec_U(model, g, m);
    const LaurentPoly& n = U.numerator;
    const MultiPoly val = omega_pairing(n, u02_for(n.min_exponent(), n.max_exponent())) * ratio(1, m);
    return {model, U.denom_exp, val};
}

/// Swaps a <-> b and t_j <-> t_-j.
inline MultiPoly dual(const MultiPoly& p) {
    std::map<int, MultiPoly> sub{{sym::a, poly::b()}, {sym::b, poly::a()}};
    for (const auto& [m, c] : p.terms())
        for (std::size_t i = sym::first_tj; i < m.size(); ++i)
            if (m[i] != 0) sub.emplace(static_cast<int>(i), poly::tj(-sym::tj_order(static_cast<int>(i))));
    return p.substitute(sub);
}

namespace toprec_detail {

/// a, b through square roots of u, v: a = (r-q)^2, b = (r+q)^2.
inline MultiPoly to_uv(const MultiPoly& p) {
    const MultiPoly rq = MultiPoly(2) * poly::r() * poly::q();
    return p.substitute({{sym::a, poly::u() + poly::v() - rq}, {sym::b, poly::u() + poly::v() + rq}});
}

inline void require_root_free(const MultiPoly& p, const std::string& what) {
    if (p.uses(sym::r) || p.uses(sym::q))
        throw StructureError(what + " keeps an odd square-root power: " + p.str());
}

}  // namespace toprec_detail

/// G(t) at t_j = T_j(p), divided by the denominator power: F_{g,m} through
/// p-weight maxWeight.
inline GenSeries substitute_T(const ScaledPoly& G, int max_weight) {
    const Model model = G.model;
    GenSeries out(model, max_weight);
    if (G.numerator.is_zero() || max_weight < 1) return out;
    std::map<int, GenSeries> T;
    std::map<std::pair<int, unsigned>, GenSeries> powers;
    auto t_series = [&](int s) -> const GenSeries& {
        auto it = T.find(s);
        if (it != T.end()) return it->second;
        const auto c = change_coeffs(model, sym::tj_order(s), max_weight);
        GenSeries x(model, max_weight);
        for (int i = 1; i <= max_weight; ++i) x.add_term({i}, toprec_detail::to_uv(c[i]));
        return T.emplace(s, std::move(x)).first->second;
    };
    auto t_power = [&](int s, unsigned e) -> const GenSeries& {
        auto key = std::pair{s, e};
        auto it = powers.find(key);
        if (it != powers.end()) return it->second;
        GenSeries p = GenSeries::one(model, max_weight);
        for (unsigned i = 0; i < e; ++i) p = product(p, t_series(s), max_weight);
        return powers.emplace(key, std::move(p)).first->second;
    };
    GenSeries sum(model, max_weight);
    for (const auto& [m, c] : G.numerator.terms()) {
        GenSeries term = GenSeries::one(model, max_weight);
        Monomial rest = m;
        for (std::size_t i = sym::first_tj; i < m.size(); ++i) {
            const unsigned e = static_cast<unsigned char>(m[i]);
            if (e == 0) continue;
            term = product(term, t_power(static_cast<int>(i), e), max_weight);
            rest[i] = 0;
        }
        mono::trim(rest);
        sum += term * toprec_detail::to_uv(MultiPoly::term(rest, c));
    }
    const MultiPoly den = poly::pow(spectral_model(model).denominator_in_uv(), static_cast<unsigned>(G.denom_exp));
    for (const auto& [lambda, c] : sum.terms()) {
        toprec_detail::require_root_free(c, "substituted coefficient of " + partition_str(lambda));
        try {
            out.add_term(lambda, exact_div(c, den));
        } catch (const DivisibilityError&) {
            throw StructureError("coefficient of " + partition_str(lambda) + " not divisible by the denominator");
        }
    }
    return out;
}

inline GenSeries substitute_T(Model model, const MultiPoly& G, int max_weight) {
    return substitute_T(ScaledPoly{model, 0, G}, max_weight);
}

namespace toprec_detail {

using Bivariate = std::map<std::pair<int, int>, MultiPoly>;

inline Bivariate bi_mul(const Bivariate& x, const Bivariate& y, int top) {
    Bivariate out;
    for (const auto& [ex, cx] : x)
        for (const auto& [ey, cy] : y) {
            const int i = ex.first + ey.first, j = ex.second + ey.second;
            if (i + j > top) continue;
            out[{i, j}] += cx * cy;
        }
    return out;
}

inline CheckReport series_match(std::string check, int order, const std::vector<MultiPoly>& lhs,
                                const std::vector<MultiPoly>& rhs) {
    CheckReport rep{std::move(check), {{"maxOrder", order}}, true, std::nullopt};
    for (std::size_t i = 0; i < lhs.size() && i < rhs.size(); ++i) {
        const MultiPoly d = lhs[i] - rhs[i];
        if (!d.is_zero()) {
            rep.zero = false;
            rep.first_nonzero = "(" + d.str() + ")*x^" + std::to_string(i);
            break;
        }
    }
    return rep;
}

inline PowerSeries in_roots(const PowerSeries& x, bool dessin) {
    PowerSeries out = x;
    if (dessin)
        for (int i = 0; i <= out.order(); ++i) out[i] = to_uv(out[i]);
    return out;
}

inline PowerSeries root_free(const PowerSeries& x) {
    for (int i = 0; i <= x.order(); ++i) require_root_free(x[i], "closed-form coefficient");
    return x;
}

}  // namespace toprec_detail

/// Closed forms of the unstable terms against census F_{0,1}, F_{0,2}.
inline std::vector<CheckReport> verify_unstable(Model model, int max_order, Store& store = Store::global()) {
    using namespace toprec_detail;
    std::vector<CheckReport> out;
    const bool dessin = model == Model::dessin;
    const std::string tag = dessin ? "dessin" : "ribbon";
    if (max_order < 1) {
        out.push_back({tag + " unstable terms", {{"maxOrder", max_order}}, true, std::nullopt});
        return out;
    }
    const GenSeries F = assemble_F(model, max_order, store);
    const GenSeries F01 = homogeneous_component(F, 0, 1);
    std::vector<MultiPoly> lhs(static_cast<std::size_t>(max_order) + 1);
    for (int i = 1; i <= max_order; ++i) lhs[i] = F01.coefficient({i}) * Rational(i);

    const int N = max_order;
    const PowerSeries z = spectral_model(model).z_of_x(N);
    PowerSeries one = PowerSeries::one("x", N);
    const PowerSeries ratio = (one - z) * series_invert(one + z);

    PowerSeries direct("x", N);
    if (dessin) {
        PowerSeries disc("x", N + 1);
        disc[0] = MultiPoly(1);
        disc[1] = MultiPoly(-2) * (poly::u() + poly::v());
        if (N + 1 >= 2) disc[2] = poly::pow(poly::u() - poly::v(), 2);
        PowerSeries lin("x", N + 1);
        lin[0] = MultiPoly(1);
        lin[1] = -(poly::u() + poly::v());
        direct = ((lin - series_sqrt(disc)) * Rational(1, 2)).divided_by_var();
    } else {
        PowerSeries disc("x", N + 2);
        disc[0] = MultiPoly(1);
        if (N + 2 >= 2) disc[2] = MultiPoly(-4) * poly::u();
        PowerSeries lin("x", N + 2);
        lin[0] = MultiPoly(1);
        if (N + 2 >= 2) lin[2] = MultiPoly(-2) * poly::u();
        direct = ((lin - series_sqrt(disc)) * Rational(1, 2)).divided_by_var().divided_by_var();
    }
    const PowerSeries param = dessin ? ratio * (poly::r() * poly::q()) : ratio * ratio * poly::u();
    out.push_back(series_match(tag + " x dF01 direct form", max_order, lhs, direct.coeffs()));
    out.push_back(series_match(tag + " x dF01 parametrized form", max_order, lhs, root_free(in_roots(param, dessin)).coeffs()));

    // d/dx d/dy F_{0,2} against dz dw / (z+w)^2, through total x,y-degree N-2.
    const int top = N - 2;
    CheckReport two{tag + " ddF02 form", {{"maxOrder", max_order}}, true, std::nullopt};
    if (top >= 0) {
        const GenSeries F02 = homogeneous_component(F, 0, 2);
        const PowerSeries zr = in_roots(z, dessin);
        Bivariate zeta_sum, dz, dw;
        for (int i = 1; i <= N; ++i) {
            if (zr[i].is_zero()) continue;
            zeta_sum[{i, 0}] += zr[i] * Rational(1, 2);
            zeta_sum[{0, i}] += zr[i] * Rational(1, 2);
            dz[{i - 1, 0}] += zr[i] * Rational(i);
            dw[{0, i - 1}] += zr[i] * Rational(i);
        }
        // (z+w)^-2 = 1/4 sum_k (-1)^k (k+1) ((zeta(x)+zeta(y))/2)^k
        Bivariate inv{{{0, 0}, MultiPoly(Rational(1, 4))}}, pw{{{0, 0}, MultiPoly(1)}};
        for (int k = 1; k <= top; ++k) {
            pw = bi_mul(pw, zeta_sum, top);
            for (const auto& [e, c] : pw) inv[e] += c * Rational((k % 2 ? -1 : 1) * (k + 1), 4);
        }
        const Bivariate rhs = bi_mul(bi_mul(inv, dz, top), dw, top);
        for (const auto& [e, c] : rhs) require_root_free(c, "two-point closed form");
        for (int d = 0; d <= top && two.zero; ++d)
            for (int i = 0; i <= d; ++i) {
                const int a = i + 1, b = d - i + 1;
                MultiPoly l = F02.coefficient({a, b}) * Rational(a * b * (a == b ? 2 : 1));
                auto it = rhs.find({i, d - i});
                const MultiPoly diff = l - (it == rhs.end() ? MultiPoly() : it->second);
                if (!diff.is_zero()) {
                    two.zero = false;
                    two.first_nonzero =
                        "(" + diff.str() + ")*x^" + std::to_string(i) + "*y^" + std::to_string(d - i);
                    break;
                }
            }
    }
    out.push_back(two);
    return out;
}

inline void verify_unstable_check(Model model, int max_order, Store& store = Store::global()) {
    for (const auto& r : verify_unstable(model, max_order, store))
        if (!r.zero) throw IdentityViolation(r.check + ": first nonzero term " + *r.first_nonzero);
}

}  // namespace dessins
