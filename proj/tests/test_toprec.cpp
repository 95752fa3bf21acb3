#include <gtest/gtest.h>

#include "dessins/census/census.hpp"
#include "dessins/toprec/toprec.hpp"
#include "goldens.hpp"

using namespace dessins;

namespace {

MultiPoly P(const char* s) { return MultiPoly::parse(s); }

const std::vector<std::pair<int, int>> kCells = {{0, 3}, {1, 1}, {0, 4}, {1, 2}, {2, 1}, {1, 3}};

std::string cell_name(const char* f, int g, int m) {
    return std::string(f) + "[" + std::to_string(g) + "," + std::to_string(m) + "]";
}

}  // namespace

TEST(Toprec, DessinGoldenForms) {
    for (const auto& c : goldens::dessin_cells()) {
        const OddLaurentForm U = toprec_U(Model::dessin, c.g, c.m);
        EXPECT_EQ(U.denom_exp, 2 * c.g - 2 + c.m);
        EXPECT_EQ(U.numerator, goldens::laurent(c.U)) << c.g << "," << c.m;
        EXPECT_EQ(toprec_G(Model::dessin, c.g, c.m).numerator, P(c.G)) << c.g << "," << c.m;
    }
}

TEST(Toprec, RibbonGoldenForms) {
    for (const auto& c : goldens::ribbon_cells()) {
        EXPECT_EQ(toprec_U(Model::ribbon, c.g, c.m).numerator, goldens::laurent(c.U)) << c.g << "," << c.m;
        EXPECT_EQ(toprec_G(Model::ribbon, c.g, c.m).numerator, P(c.G)) << c.g << "," << c.m;
    }
}

TEST(Toprec, RibbonIsDessinAtUnitScalars) {
    const std::map<int, MultiPoly> unit{{sym::a, MultiPoly(1)}, {sym::b, MultiPoly(1)}};
    for (auto [g, m] : kCells) {
        const LaurentPoly d = toprec_U(Model::dessin, g, m).numerator.map_coeffs(
            [&](const MultiPoly& c) { return c.substitute(unit); });
        EXPECT_EQ(d, toprec_U(Model::ribbon, g, m).numerator) << g << "," << m;
    }
}

TEST(Toprec, PrintStrings) {
    EXPECT_EQ(toprec_U(Model::dessin, 0, 3).str("U[0,3]"), "sigma*U[0,3] = 1/2*a*t1^2 - 1/2*b*t-1^2*z^-2");
    EXPECT_EQ(toprec_G(Model::dessin, 0, 4).str("G[0,4]").rfind("sigma^2*G[0,4] = ", 0), 0u);
    EXPECT_EQ(toprec_G(Model::ribbon, 1, 1).str("G[1,1]"), "G[1,1] = 1/384*u^-1*(-9*t1 - 9*t-1 + t3 + t-3)");
    const auto& pre = goldens::ribbon_prefactors();
    int i = 0;
    for (auto [g, m] : std::vector<std::pair<int, int>>{{0, 3}, {1, 1}, {0, 4}, {1, 2}}) {
        const std::string e = std::to_string(2 * g - 2 + m);
        const std::string u = toprec_U(Model::ribbon, g, m).str(cell_name("U", g, m));
        const std::string G = toprec_G(Model::ribbon, g, m).str(cell_name("G", g, m));
        EXPECT_EQ(u.rfind(cell_name("U", g, m) + " = " + pre[i++] + "*u^-" + e + "*(", 0), 0u) << u;
        EXPECT_EQ(G.rfind(cell_name("G", g, m) + " = " + pre[i++] + "*u^-" + e + "*(", 0), 0u) << G;
    }
}

TEST(Toprec, EvenExponentsAndDegree) {
    for (Model md : {Model::dessin, Model::ribbon})
        for (auto [g, m] : kCells) {
            const LaurentPoly n = toprec_U(md, g, m).numerator;
            EXPECT_TRUE(n.has_only_even_exponents());
            EXPECT_GE(n.min_exponent(), -(6 * g - 6 + 2 * m + 2));
            const ScaledPoly G = toprec_G(md, g, m);
            for (const auto& [mono, k] : G.numerator.terms()) {
                int deg = 0;
                for (std::size_t s = sym::first_tj; s < mono.size(); ++s) deg += mono[s];
                EXPECT_EQ(deg, m);
            }
        }
}

TEST(Toprec, DualitySymmetry) {
    for (auto [g, m] : kCells) {
        const MultiPoly G = toprec_G(Model::dessin, g, m).numerator;
        EXPECT_EQ(dual(G), G) << g << "," << m;
    }
}

TEST(Toprec, DeltaOfGIsU) {
    for (Model md : {Model::dessin, Model::ribbon})
        for (auto [g, m] : kCells) {
            const LaurentPoly dG = toprec_detail::delta(LaurentPoly(0, toprec_G(md, g, m).numerator));
            EXPECT_EQ(dG, toprec_U(md, g, m).numerator) << g << "," << m;
        }
}

TEST(Toprec, UnstableCellsRejected) {
    EXPECT_THROW(toprec_U(Model::dessin, 0, 2), DomainError);
    EXPECT_THROW(toprec_G(Model::ribbon, 0, 1), DomainError);
    EXPECT_THROW(toprec_U(Model::dessin, -1, 4), DomainError);
}

TEST(Projection, IdentityAndIdempotence) {
    LaurentPoly x;
    x.add_term(4, P("t1"));
    x.add_term(0, P("a"));
    x.add_term(-2, P("-b*t-3"));
    const LaurentPoly p = project_L(BiLocalForm::global(x));
    EXPECT_EQ(p, x);
    EXPECT_EQ(project_L(BiLocalForm::global(p)), p);
    LaurentPoly odd;
    odd.add_term(3, MultiPoly(1));
    odd.add_term(-1, MultiPoly(1));
    EXPECT_TRUE(project_L(BiLocalForm::global(odd)).is_zero());
}

TEST(Projection, FormRegularAwayFromPolesVanishes) {
    // dz/(z^2-1): -sum z^(2k) at 0, sum z^(-2k-2) at infinity.
    BiLocalForm f;
    for (int k = 0; k <= 5; ++k) {
        f.at_zero.add_term(2 * k, MultiPoly(-1));
        f.at_infinity.add_term(-2 * k - 2, MultiPoly(1));
    }
    f.zero_through = 10;
    f.infinity_from = -12;
    EXPECT_TRUE(project_L(f).is_zero());
    BiLocalForm short_form = f;
    short_form.zero_through = -4;
    EXPECT_THROW(project_L(short_form), TruncationError);
}

TEST(U02, OrderZero) {
    const BiLocalForm u = u02_form(0);
    EXPECT_EQ(u.at_zero, LaurentPoly(0, -poly::tj(-1)));
    EXPECT_EQ(u.at_infinity, LaurentPoly(-2, poly::tj(1)));
    EXPECT_THROW(u02_form(-1), DomainError);
}

TEST(ChangeCoeffs, Examples) {
    const auto c1 = change_coeffs(Model::dessin, 1, 3);
    EXPECT_TRUE(c1[0].is_zero());
    EXPECT_EQ(c1[1], (poly::a() - poly::b()) * ratio(1, 2));
    EXPECT_EQ(change_coeffs(Model::dessin, -1, 3)[1], (poly::b() - poly::a()) * ratio(1, 2));
    EXPECT_EQ(change_coeffs(Model::ribbon, 1, 2)[1], MultiPoly(2) * poly::r());
    EXPECT_THROW(change_coeffs(Model::dessin, 2, 3), DomainError);
    EXPECT_THROW(change_coeffs(Model::dessin, 1, 0), DomainError);
}

TEST(Omega, PairingExamples) {
    // A form with the same expansion at both points pairs to zero.
    EXPECT_TRUE(omega_pairing(LaurentPoly::monomial(-2), LaurentPoly::monomial(0)).is_zero());
    const BiLocalForm only_at_zero{LaurentPoly::monomial(0), LaurentPoly()};
    EXPECT_EQ(omega_pairing(LaurentPoly::monomial(-2), only_at_zero), MultiPoly(1));
    EXPECT_THROW(omega_pairing(LaurentPoly::monomial(0), LaurentPoly::monomial(-1)), IntegrabilityError);
    EXPECT_TRUE(omega_pairing(LaurentPoly(), LaurentPoly::monomial(-1)).is_zero());
}

TEST(SubstituteT, Examples) {
    // T_1 alone carries a factor sqrt(uv); only recursion outputs are root-free.
    EXPECT_THROW(substitute_T(Model::dessin, poly::tj(1), 4), StructureError);
    EXPECT_TRUE(substitute_T(Model::dessin, MultiPoly(), 4).is_zero());
    EXPECT_TRUE(substitute_T(toprec_G(Model::ribbon, 0, 3), 4).coefficient({}).is_zero());
    const GenSeries F11 = substitute_T(toprec_G(Model::dessin, 1, 1), 6);
    EXPECT_EQ(F11.coefficient({3}), P("1/3*u*v"));
    EXPECT_THROW(substitute_T(Model::dessin, P("a"), 3), StructureError);
}

TEST(Closure, SubstitutionRecoversCensusStrata) {
    for (Model md : {Model::dessin, Model::ribbon}) {
        const GenSeries F = assemble_F(md, 8);
        for (auto [g, m] : kCells)
            EXPECT_EQ(substitute_T(toprec_G(md, g, m), 8), homogeneous_component(F, g, m))
                << model_name(md) << " " << g << "," << m;
    }
}

TEST(Unstable, ClosedFormsMatchCensus) {
    for (Model md : {Model::dessin, Model::ribbon}) {
        const auto reports = verify_unstable(md, 8);
        EXPECT_EQ(reports.size(), 3u);
        for (const auto& r : reports) EXPECT_TRUE(r.zero) << r.to_json().dump();
        EXPECT_NO_THROW(verify_unstable_check(md, 8));
    }
    EXPECT_EQ(verify_unstable(Model::dessin, 0).size(), 1u);
}
