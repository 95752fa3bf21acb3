#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "dessins/census/census.hpp"
#include "dessins/genfun/diffop.hpp"
#include "dessins/genfun/report.hpp"
#include "dessins/genfun/tseries.hpp"

namespace dessins {

namespace genfun_detail {

inline void require_valid(const GenSeries& f, int needed, const std::string& what) {
    if (f.valid_through() < needed)
        throw TruncationError(what + " needs the series through weight " + std::to_string(needed) + ", have " +
                              std::to_string(f.valid_through()));
}

/// Exact strata are stored with this validity bound.
inline constexpr int unbounded = 1 << 20;

inline GenSeries d(const GenSeries& f, std::initializer_list<int> idx) {
    GenSeries out = f;
    for (int j : idx) out = out.diff(j);
    return out;
}

}  // namespace genfun_detail

/// exp(-F) L_n exp(F) through p-weight max_weight (right side minus left
/// side of the recursion form; zero for the census series).
inline GenSeries virasoro_residual(const GenSeries& F, int n, int max_weight) {
    genfun_detail::require_valid(F, max_weight + n + 1, "Virasoro residual L_" + std::to_string(n));
    const GenSeries r = ops::virasoro(n, n + max_weight + 1).conjugated_apply(F);
    if (r.valid_through() < max_weight) throw TruncationError("Virasoro residual lost validity");
    return r.truncated(max_weight);
}

inline GenSeries virasoro_residual_ribbon(const GenSeries& F, int n, int max_weight) {
    genfun_detail::require_valid(F, max_weight + n + 2, "ribbon Virasoro residual L_" + std::to_string(n));
    const GenSeries r = ops::virasoro_ribbon(n, n + max_weight + 2).conjugated_apply(F);
    if (r.valid_through() < max_weight) throw TruncationError("ribbon Virasoro residual lost validity");
    return r.truncated(max_weight);
}

/// log of the partition function grown from 1 by the evolution generator.
inline GenSeries evolution_build(Model model, int max_weight) {
    const int step = model == Model::dessin ? 1 : 2;
    GenSeries z = GenSeries::one(model, max_weight);
    GenSeries layer = GenSeries::one(model, genfun_detail::unbounded);
    for (int w = step; w <= max_weight; w += step) {
        const DiffOp gen =
            model == Model::dessin ? ops::dessin_generator(w) : ops::ribbon_generator(w);
        layer = gen.apply(layer).shift_s(step) * MultiPoly(Rational(1, w));
        z += layer;
    }
    return log_series(z);
}

/// Residuals (left minus right) of the four lowest KP equations.
inline std::array<GenSeries, 4> kp_residuals(const GenSeries& F, int max_weight) {
    using genfun_detail::d;
    genfun_detail::require_valid(F, max_weight + 6, "KP residuals");
    const GenSeries f11 = d(F, {1, 1}), f21 = d(F, {2, 1}), f31 = d(F, {3, 1});
    const GenSeries f111 = d(F, {1, 1, 1}), f1111 = d(F, {1, 1, 1, 1});
    const auto mul = [&](const GenSeries& a, const GenSeries& b) { return product(a, b, max_weight); };
    const auto c = [](long p, long q) { return MultiPoly(ratio(p, q)); };

    GenSeries r1 = d(F, {2, 2}) - (mul(f11, f11) * c(-1, 2) + f31 - f1111 * c(1, 12));
    GenSeries r2 = d(F, {3, 2}) - (mul(f11, f21) * c(-1, 1) + d(F, {4, 1}) - d(F, {2, 1, 1, 1}) * c(1, 6));
    GenSeries r3 = d(F, {4, 2}) - (mul(f21, f21) * c(-1, 2) - mul(f11, f31) + d(F, {5, 1}) +
                                   mul(f111, f111) * c(1, 8) + mul(f11, f1111) * c(1, 12) -
                                   d(F, {3, 1, 1, 1}) * c(1, 4) + d(F, {1, 1, 1, 1, 1, 1}) * c(1, 120));
    GenSeries r4 = d(F, {3, 3}) - (mul(mul(f11, f11), f11) * c(1, 3) - mul(f21, f21) - mul(f11, f31) +
                                   d(F, {5, 1}) + mul(f111, f111) * c(1, 4) + mul(f11, f1111) * c(1, 3) -
                                   d(F, {3, 1, 1, 1}) * c(1, 3) + d(F, {1, 1, 1, 1, 1, 1}) * c(1, 45));
    std::array<GenSeries, 4> out{r1, r2, r3, r4};
    for (auto& r : out) {
        if (r.valid_through() < max_weight) throw TruncationError("KP residual lost validity");
        r = r.truncated(max_weight);
    }
    return out;
}

/// p_i -> t for every i: weight w, m factors goes to s^(w+excess) t^m.
inline TSeries theta_specialize(const GenSeries& F) {
    TSeries out(F.valid_through() + F.s_excess());
    for (const auto& [lambda, c] : F.terms())
        out.add(weight(lambda) + F.s_excess(), c * MultiPoly::var(sym::t, static_cast<unsigned>(lambda.size())));
    return out;
}

/// p_i -> t^i.
inline TSeries principal_specialize(const GenSeries& Z) {
    TSeries out(Z.valid_through() + Z.s_excess());
    for (const auto& [lambda, c] : Z.terms())
        out.add(weight(lambda) + Z.s_excess(), c * MultiPoly::var(sym::t, static_cast<unsigned>(weight(lambda))));
    return out;
}

inline CheckReport series_report(std::string check, nlohmann::ordered_json params, const GenSeries& r) {
    CheckReport rep{std::move(check), std::move(params), r.is_zero(), std::nullopt};
    if (rep.params.is_null()) rep.params = nlohmann::ordered_json::object();
    if (auto t = r.first_nonzero()) rep.first_nonzero = r.term_str(t->first, t->second);
    return rep;
}

inline CheckReport series_report(std::string check, nlohmann::ordered_json params, const TSeries& r, int through) {
    CheckReport rep{std::move(check), std::move(params), r.zero_through(through), std::nullopt};
    if (rep.params.is_null()) rep.params = nlohmann::ordered_json::object();
    if (!rep.zero) {
        auto t = r.first_nonzero();
        rep.first_nonzero = TSeries::term_str(t->first, t->second);
    }
    return rep;
}

/// Named residuals (left minus right) of the specialization identities.
inline std::vector<std::pair<std::string, TSeries>> theta_lemma_residuals(const GenSeries& F) {
    using genfun_detail::d;
    const auto T = [](const GenSeries& g) { return theta_specialize(g); };
    const auto S = [](int k, const MultiPoly& c = MultiPoly(1)) { return TSeries::monomial(k, c); };
    const MultiPoly u = poly::u(), v = poly::v(), t = poly::t();
    const TSeries f = T(F), fp = f.ds();
    std::vector<std::pair<std::string, TSeries>> out;
    if (F.model() == Model::dessin) {
        const TSeries A = S(2) * fp + S(1, u * v);
        const TSeries F1 = T(d(F, {1})), F2 = T(d(F, {2})), F3 = T(d(F, {3})), F11 = T(d(F, {1, 1}));
        const TSeries F12 = T(d(F, {1, 2}));
        const TSeries sh = S(0) + S(1, u + v - t);  // 1 + s(u+v-t)
        out.emplace_back("theta(F1) = s^2 f' + s uv", F1 - A);
        out.emplace_back("theta(F11) = s^2 (s^2 f' + s uv)'", F11 - S(2) * A.ds());
        out.emplace_back("theta(F1111) = s^2 (s^2 (s^2 (s^2 f' + s uv)')')'",
                         T(d(F, {1, 1, 1, 1})) - S(2) * (S(2) * (S(2) * A.ds()).ds()).ds());
        out.emplace_back("2 theta(F2) = (1 + s(u+v-t))(s^2 f' + s uv) - s uv",
                         F2 * MultiPoly(2) - (sh * A - S(1, u * v)));
        out.emplace_back("3 theta(F3) = 2s(u+v-t) theta(F2) + (1-st) theta(F1) + s theta(F11) + s theta(F1)^2 - s uv",
                         F3 * MultiPoly(3) - (S(1, MultiPoly(2) * (u + v - t)) * F2 + (S(0) - S(1, t)) * F1 +
                                              S(1) * F11 + S(1) * F1 * F1 - S(1, u * v)));
        out.emplace_back("theta(F12) = s^2 theta(F2)'", F12 - S(2) * F2.ds());
        out.emplace_back("theta(F13) = s^2 theta(F3)'", T(d(F, {1, 3})) - S(2) * F3.ds());
        out.emplace_back("2 theta(F22) = (1 + s(u+v-t)) theta(F12) + 3s theta(F3) - 2s theta(F2)",
                         T(d(F, {2, 2})) * MultiPoly(2) -
                             (sh * F12 + S(1, MultiPoly(3)) * F3 - S(1, MultiPoly(2)) * F2));
    } else {
        const TSeries F1 = T(d(F, {1})), F11 = T(d(F, {1, 1})), F111 = T(d(F, {1, 1, 1}));
        out.emplace_back("theta(F1) = s^3 f' + s^2 tu", F1 - (S(3) * fp + S(2, t * u)));
        out.emplace_back("theta(F11) = s^3 theta(F1)' - s^2 theta(F1) + s^2 u",
                         F11 - (S(3) * F1.ds() - S(2) * F1 + S(2, u)));
        out.emplace_back("theta(F111) = s^3 theta(F11)' - 2 s^2 theta(F11)",
                         F111 - (S(3) * F11.ds() - S(2, MultiPoly(2)) * F11));
        out.emplace_back("theta(F1111) = s^3 theta(F111)' - 3 s^2 theta(F111)",
                         T(d(F, {1, 1, 1, 1})) - (S(3) * F111.ds() - S(2, MultiPoly(3)) * F111));
        out.emplace_back("2 theta(F2) = s^3 f' + s^2 u^2", T(d(F, {2})) * MultiPoly(2) - (S(3) * fp + S(2, u * u)));
        out.emplace_back("4 theta(F22) = s^6 f'' + 3 s^5 f' + 2 s^4 u^2",
                         T(d(F, {2, 2})) * MultiPoly(4) -
                             (S(6) * fp.ds() + S(5, MultiPoly(3)) * fp + S(4, MultiPoly(2) * u * u)));
        const TSeries inner = (S(2, MultiPoly(2) * u) + S(0) - S(2, t)) * (S(1) * fp).ds() +
                              (S(2, MultiPoly(2) * u) + S(0, MultiPoly(2)) - S(2, t)) * fp;
        // Left side carries the factor 3; with factor 1 the residual is exactly -2 theta(F13).
        out.emplace_back(
            "3 theta(F13) = s^5 ((2s^2 u + 1 - s^2 t)(s f')' + (2s^2 u + 2 - s^2 t) f') + s^6 (2tu^2 - t^2 u) + 3 s^4 u^2",
            T(d(F, {1, 3})) * MultiPoly(3) -
                (S(5) * inner + S(6, MultiPoly(2) * t * u * u - t * t * u) + S(4, MultiPoly(3) * u * u)));
    }
    return out;
}

/// Reports for every specialization identity through s^max_degree.
inline std::vector<CheckReport> theta_lemma_report(const GenSeries& F, int max_degree) {
    std::vector<CheckReport> out;
    for (auto& [name, r] : theta_lemma_residuals(F))
        out.push_back(series_report("theta-lemma", {{"model", model_name(F.model())}, {"identity", name},
                                                    {"maxDegree", max_degree}},
                                    r, max_degree));
    return out;
}

/// Throws IdentityViolation naming the first identity that fails.
inline void theta_lemma_check(Model model, int max_degree) {
    for (const auto& rep : theta_lemma_report(assemble_F(model, max_degree + 4), max_degree))
        if (!rep.zero) throw IdentityViolation("identity fails: " + rep.params["identity"].get<std::string>());
}

/// Wave-function ODE applied to psi = exp(F)|_{p_i = t^i}.
inline TSeries quantum_curve_residual_of(const GenSeries& F) {
    const TSeries psi = principal_specialize(exp_series(F));
    const TSeries d1 = psi.dt(), d2 = d1.dt();
    const MultiPoly u = poly::u(), v = poly::v(), t = poly::t();
    if (F.model() == Model::dessin)
        return d2 * (t * t) + d1 * ((u + v + MultiPoly(1)) * t) - d1.shift_s(-1) + psi * (u * v);
    return d2 * (t * t) + d1 * (MultiPoly(2) * (u + MultiPoly(1)) * t) - d1.divided_by_t().shift_s(-2) +
           psi * (u + u * u);
}

inline TSeries quantum_curve_residual(Model model, int max_degree) {
    const TSeries r = quantum_curve_residual_of(assemble_F(model, max_degree + 2));
    if (r.valid_through() < max_degree) throw TruncationError("quantum curve residual lost validity");
    return r.truncated(max_degree);
}

}  // namespace dessins
