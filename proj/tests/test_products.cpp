#include "doctest.h"
#include "poissonlab/products.hpp"
#include "support.hpp"

using namespace poissonlab;
using testsupport::FV;
using testsupport::MV;
using testsupport::P;

namespace {

LaurentPoly sym(const std::string& n) { return LaurentPoly::var(n); }

std::vector<std::size_t> dims(const ProductModel& m) {
    std::vector<std::size_t> out;
    for (auto& b : m.bases) out.push_back(b.size());
    return out;
}

Substitution at(std::initializer_list<std::pair<const char*, LaurentPoly>> vals) {
    Substitution s;
    for (auto& [n, v] : vals) s[intern(n)] = v;
    return s;
}

FormedMultiVector drop_correction(const MCSolution& s, const FormedMultiVector& correction) {
    return s.alpha - correction;
}

}  // namespace

TEST_CASE("product bases have the expected sizes") {
    ProductModel e = ep1_model();
    CHECK(e.basis(0, 1).size() == 4);
    CHECK(e.basis(1, 1).size() == 4);
    CHECK(e.basis(0, 2).size() == 3);
    CHECK(e.basis(1, 2).size() == 3);
    CHECK(e.name() == "ExP1");

    ProductModel t = tp1_model();
    CHECK(dims(t) == std::vector<std::size_t>{5, 10, 5, 7, 14, 7, 3, 6});
    CHECK(t.basis(0, 3).size() == 3);
    CHECK(t.has(2, 2));
    CHECK_FALSE(t.has(2, 3));

    for (int n = 1; n <= 4; ++n) {
        ProductModel m = torus_model(n);
        CHECK(m.basis(0, 1).size() == std::size_t(n));
        CHECK(m.basis(1, 1).size() == std::size_t(n * n));
        CHECK(m.basis(0, 2).size() == std::size_t(n * (n - 1) / 2));
    }
}

TEST_CASE("ExP1 bracket matrices") {
    LaurentPoly A = sym("A"), B = sym("B"), C = sym("C");
    EP1Matrices m = ep1_bracket_matrices(A, B, C);
    Matrix expect = {{0, -B, A, 0}, {0, LaurentPoly(-2) * C, 0, LaurentPoly(2) * A}, {0, 0, -C, B}};
    CHECK(m.h1.entries == expect);
    CHECK(m.h0.entries == expect);
    CHECK(generic_rank(m.h1) == 2);
    std::vector<Vector> ker = kernel_basis(m.h0);
    CHECK(same_span(ker, {{1, 0, 0, 0}, {0, A, B, C}}));

    CHECK(generic_rank(ep1_bracket_matrices(0, 0, 0).h1) == 0);
    CHECK(generic_rank(ep1_bracket_matrices(1, 2, 1).h1) == 2);
    CHECK(generic_rank(ep1_bracket_matrices(0, 0, 5).h0) == 2);
}

TEST_CASE("ExP1 hypercohomology and classification") {
    Hypercohomology h = hypercohomology(ep1_deformation_model(sym("A"), sym("B"), sym("C")));
    CHECK(h.h1 == 3);
    CHECK(h.h2 == 1);
    Hypercohomology z = hypercohomology(ep1_deformation_model(0, 0, 0));
    CHECK(z.h1 == 7);
    CHECK(z.h2 == 3);

    for (auto abc : {std::array<long, 3>{1, 0, 0}, std::array<long, 3>{0, 0, 5}, std::array<long, 3>{2, -1, 3}}) {
        Certificate c = ep1_classify(abc[0], abc[1], abc[2]);
        CHECK(c.verdict == Verdict::UnobstructedMC);
        CHECK(c.solution == std::optional<std::string>("ep1"));
        CHECK(c.stratum == "L0!=0");
    }

    Certificate c = ep1_classify(0, 0, 0);
    REQUIRE(c.verdict == Verdict::Obstructed);
    const Chart& ch = ep1_model().chart;
    CHECK(FV(*c.witness_a, ch) == FV("@z*@xi", ch));
    CHECK(FV(*c.witness_b, ch) == FV("xi*@xi*~z", ch));
    CHECK(FV(*c.class_repr, ch) == FV("@z*@xi*~z", ch));
    DeformationComplexModel md = ep1_deformation_model(0, 0, 0);
    std::string why;
    CHECK(verify_certificate(md, c, &why));
    Certificate back = Certificate::from_json(c.to_json());
    CHECK(back == c);
    CHECK(verify_certificate(md, back));

    // a tampered witness no longer verifies
    Certificate bad = c;
    bad.witness_b = "@xi*~z";
    CHECK_FALSE(verify_certificate(md, bad));
}

TEST_CASE("ExP1 Maurer-Cartan family") {
    LaurentPoly A = sym("A"), B = sym("B"), C = sym("C");
    MCSolution s = ep1_mc_solution(A, B, C);
    CHECK(s.defect().is_zero());
    CHECK(ks_rank(ep1_deformation_model(A, B, C), s) == 3);

    // any F works for the bracket identities; F only matters for the KS map
    MCSolution g = ep1_mc_solution(A, B, C, std::vector<LaurentPoly>{sym("F0"), sym("F1"), sym("F2")});
    CHECK(g.defect().is_zero());

    MCSolution one = ep1_mc_solution(1, 0, 0);
    const Chart& ch = ep1_model().chart;
    CHECK(one.beta == FV("t0*xi^2*@z*@xi", ch));
    CHECK(one.defect().is_zero());
    CHECK(ks_rank(ep1_deformation_model(1, 0, 0), one) == 3);

    // F in the image of the H0 bracket: rejected
    CHECK_THROWS_AS(ep1_mc_solution(1, 0, 0, std::vector<LaurentPoly>{0, 1, 0}), ConstraintViolation);
    CHECK_THROWS_AS(ep1_mc_solution(0, 0, 0), ConstraintViolation);

    // without the t0 t2 correction the defect is nonzero, and vanishes on t0 = 0 and t2 = 0
    FormedMultiVector corr = FV("t0*t2*xi^2*@xi*~z", ch);
    FormedMultiVector partial = one.beta + drop_correction(one, corr);
    FormedMultiVector d = mc_defect(one.lambda0, partial);
    CHECK_FALSE(d.is_zero());
    CHECK(d.substitute(at({{"t0", LaurentPoly()}})).is_zero());
    CHECK(d.substitute(at({{"t2", LaurentPoly()}})).is_zero());
}

TEST_CASE("T x P1 Poisson condition is the vanishing of the minors") {
    const Chart& ch = tp1_model().chart;
    MultiVector l0 = MV("a*@z1*@z2 + (b0 + b1*xi + b2*xi^2)*@z2*@xi + (c0 + c1*xi + c2*xi^2)*@xi*@z1", ch);
    MultiVector sq = schouten(l0, l0);
    LaurentPoly m1 = P("b1*c0 - b0*c1"), m2 = P("b2*c0 - b0*c2"), m3 = P("b2*c1 - b1*c2");
    LaurentPoly xi = LaurentPoly::var(ch.vars[2]);
    LaurentPoly minors = m1 + LaurentPoly(2) * m2 * xi + m3 * xi * xi;
    LaurentPoly coeff = sq.coeff({0, 1, 2});
    CHECK(sq == MultiVector::term(ch, {0, 1, 2}, coeff));
    bool prop = (coeff - LaurentPoly(2) * minors).is_zero() || (coeff + LaurentPoly(2) * minors).is_zero();
    CHECK(prop);
}

TEST_CASE("T x P1 hypercohomology per class") {
    TP1Hyper h1 = tp1_hypercohomology(TP1Class::generic(1));
    CHECK(h1.h1 == 17);
    CHECK(h1.h2 == 22);
    for (int id : {2, 3}) {
        TP1Hyper h = tp1_hypercohomology(TP1Class::generic(id));
        CHECK(h.h1 == 9);
        CHECK(h.h2 == 10);
    }
    CHECK(tp1_hypercohomology(TP1Class::two(0, 1, 0, 0, 0)).h1 == 9);
    CHECK(tp1_hypercohomology(TP1Class::one(1)).h1 == 17);
    CHECK(tp1_hypercohomology(TP1Class::one(0)).h1 == 17);
    CHECK_THROWS_AS(hypercohomology(tp1_deformation_model(TP1Class::one(1))), std::logic_error);
}

TEST_CASE("T x P1 class constraints") {
    CHECK_THROWS_AS(TP1Class::two(1, 0, 0, 0, 3).validate(), ConstraintViolation);
    CHECK_THROWS_AS(TP1Class::three(1, 0, 0, 0).validate(), ConstraintViolation);
    CHECK_THROWS_AS(tp1_classify(TP1Class::two(0, 0, 0, 0, 0)), ConstraintViolation);
    CHECK_THROWS_AS(tp1_mc_solution(TP1Class::one(1)), ConstraintViolation);
    CHECK_NOTHROW(TP1Class::two(0, 0, 0, 1, 0).validate());
    for (int id : {1, 2, 3}) {
        MultiVector l = TP1Class::generic(id).lambda0();
        CHECK(schouten(l, l).is_zero());
    }
}

TEST_CASE("T x P1 integrability identities") {
    TP1Class c = TP1Class::generic(2);
    TP1Identities id = tp1_identities(c);
    CHECK(id.poisson.is_zero());
    CHECK(id.mixed.is_zero());
    CHECK(id.complex.is_zero());
    CHECK(id.ok());

    const Chart& ch = tp1_model().chart;
    MultiVector l0 = c.lambda0();
    FormedMultiVector L0(l0);
    // F = (1, 0, 0) is the cokernel choice for symbolic A, B, C
    MCSolution s = tp1_mc_solution(c);
    FormedMultiVector lambda_p = FV("t1*t2*@xi*@z1", ch);
    FormedMultiVector phi_p = FV("t2*t7*@xi*~z1 + t2*t8*@xi*~z2", ch);
    CHECK((s.beta - lambda_p).form_degree_part(0) == s.beta - lambda_p);

    TP1Identities no_l = tp1_identities(c, false, true);
    CHECK_FALSE(no_l.ok());
    CHECK(no_l.poisson == schouten_formed(L0, -lambda_p));
    CHECK(no_l.poisson == FV("(B*t1*t2 + 2*C*t1*t2*xi)*@z1*@z2*@xi", ch));
    // [Λ, Λ] itself is [Λ₀, -2Λ']
    FormedMultiVector lam = s.beta - lambda_p;
    CHECK(schouten_formed(lam, lam) == schouten_formed(L0, LaurentPoly(-2) * lambda_p));

    TP1Identities no_phi = tp1_identities(c, true, false);
    FormedMultiVector phi = s.alpha - phi_p;
    CHECK_FALSE(no_phi.mixed.is_zero());
    CHECK(no_phi.mixed == schouten_formed(L0, -phi_p) + schouten_formed(lambda_p, phi));
    CHECK(tp1_identities(c, false, false).mixed == schouten_formed(L0, -phi_p));

    CHECK(s.defect().is_zero());
    CHECK(ks_rank(tp1_deformation_model(c), s) == 9);

    for (TP1Class k : {TP1Class::two(1, 1, 0, 0, 0), TP1Class::two(0, 0, 1, 0, 2), TP1Class::two(3, 1, 2, 1, -1)}) {
        MCSolution sk = tp1_mc_solution(k);
        CHECK(sk.defect().is_zero());
        CHECK(ks_rank(tp1_deformation_model(k), sk) == 9);
    }
}

TEST_CASE("T x P1 class 3 via the swap") {
    TP1Class c = TP1Class::generic(3);
    MCSolution s = tp1_mc_solution(c);
    CHECK(s.name == "tp1-swap");
    CHECK(s.lambda0 == c.lambda0());
    CHECK(s.defect().is_zero());
    CHECK(tp1_identities(c).ok());
    CHECK(ks_rank(tp1_deformation_model(c), s) == 9);
    MCSolution n = tp1_mc_solution(TP1Class::three(2, 0, 1, 1));
    CHECK(n.defect().is_zero());
}

TEST_CASE("T x P1 verdicts") {
    Certificate c1 = tp1_classify(TP1Class::one(1));
    CHECK(c1.verdict == Verdict::Obstructed);
    CHECK(verify_certificate(tp1_deformation_model(TP1Class::one(1)), c1));
    CHECK(Certificate::from_json(c1.to_json()) == c1);
    CHECK(tp1_classify(TP1Class::one(sym("D"))).verdict == Verdict::Obstructed);

    Certificate c2 = tp1_classify(TP1Class::two(0, 1, 0, 0, 0));
    CHECK(c2.verdict == Verdict::UnobstructedMC);
    CHECK(c2.solution == std::optional<std::string>("tp1"));
    Certificate c3 = tp1_classify(TP1Class::three(0, 1, 0, 0));
    CHECK(c3.verdict == Verdict::UnobstructedMC);
    CHECK(c3.solution == std::optional<std::string>("tp1-swap"));
}

TEST_CASE("torus") {
    CHECK(torus_dims(1) == 1);
    CHECK(torus_dims(2) == 5);
    CHECK(torus_dims(3) == 12);
    CHECK(torus_dims(4) == 22);
    for (int n = 1; n <= 4; ++n) CHECK(torus_dims(n) == std::size_t(n * n + n * (n - 1) / 2));

    const Chart& c2 = torus_model(2).chart;
    CHECK(torus_dims(2, MV("3*@z1*@z2", c2)) == 5);
    CHECK_THROWS(torus_dims(2, MV("z1*@z1*@z2", c2)));

    for (int n = 2; n <= 3; ++n) {
        MCSolution s = torus_mc_solution(n);
        CHECK(s.defect().is_zero());
        CHECK(ks_rank(torus_deformation_model(n), s) == torus_dims(n));
    }
}

TEST_CASE("product table rows") {
    std::vector<ProductRow> rows = product_rows();
    REQUIRE(rows.size() == 7);
    auto find = [&](const std::string& m, const std::string& s) {
        for (auto& r : rows)
            if (r.manifold == m && r.stratum == s) return r;
        FAIL("missing row " << m << " " << s);
        return ProductRow{};
    };
    CHECK(find("ExP1", "L0!=0").h1 == 3);
    CHECK(find("ExP1", "L0=0").verdict == Verdict::Obstructed);
    CHECK(find("TxP1", "class 1").h1 == 17);
    CHECK(find("TxP1", "class 2").verdict == Verdict::UnobstructedMC);
    CHECK(find("TxP1", "class 3").h1 == 9);
    CHECK(find("ExE", "any").h1 == 5);
    CHECK(find("P1xP1", "any").verdict == Verdict::UnobstructedH2Zero);
}
