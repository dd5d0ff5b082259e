#include "doctest.h"
#include "support.hpp"

using namespace poissonlab;
using testsupport::P;

namespace {
LaurentPoly V(const char* n, int e = 1) { return LaurentPoly::var(n, e); }
}  // namespace

TEST_CASE("gaussian rationals are exact") {
    GaussianRational a(1, 3), b(2, 6);
    CHECK(a == b);
    CHECK((a + a + a) == GaussianRational(1));
    GaussianRational z = GaussianRational(3) + GaussianRational(4) * GaussianRational::i();
    CHECK(z * z.conj() == GaussianRational(25));
    CHECK(z * z.inverse() == GaussianRational(1));
    CHECK(GaussianRational::i() * GaussianRational::i() == GaussianRational(-1));
    CHECK_THROWS_AS(GaussianRational().inverse(), ArithmeticError);
    CHECK(GaussianRational(-3, 2).str() == "-3/2");
    CHECK(GaussianRational::i().str() == "i");
}

TEST_CASE("substitution examples") {
    // z -> 1/z'
    CHECK(lp_substitute(V("z", 2), {{intern("z"), V("zp", -1)}}) == V("zp", -2));
    // xi -> z'^2 xi' - t1 z'
    LaurentPoly img = V("zp", 2) * V("xip") - V("t1") * V("zp");
    CHECK(lp_substitute(V("xi"), {{intern("xi"), img}}) == img);

    // z -> alpha z, w -> alpha w on a quadratic form; oracle built term by term
    Var z = intern("z"), w = intern("w"), al = intern("alpha");
    LaurentPoly q = V("c20") * V("z", 2) + V("c11") * V("z") * V("w") + V("c02") * V("w", 2);
    LaurentPoly got = lp_substitute(q, {{z, V("alpha") * V("z")}, {w, V("alpha") * V("w")}});
    LaurentPoly oracle;
    for (auto& [m, c] : q.terms()) {
        int deg = m.exponent(z) + m.exponent(w);
        oracle += LaurentPoly::term(m * Monomial(al, deg), c);
    }
    CHECK(got == oracle);
    CHECK(got == V("alpha", 2) * q);

    // non-monomial image of a negatively powered variable
    CHECK_THROWS_AS(lp_substitute(V("z", -1), {{z, V("z") + 1}}), NonInvertibleSubstitution);
    // unsubstituted variables pass through
    CHECK(lp_substitute(V("w") * V("z", -1), {{z, V("zp", -1)}}) == V("w") * V("zp"));
}

TEST_CASE("partial derivative examples") {
    Var z = intern("z"), w = intern("w");
    CHECK(lp_partial(V("z", -1), z) == LaurentPoly(-1) * V("z", -2));
    LaurentPoly g = V("g0") + V("g1") * V("z") + V("g2") * V("z", 2);
    CHECK(lp_partial(g, z) == V("g1") + LaurentPoly(2) * V("g2") * V("z"));
    CHECK(lp_partial(V("z") * V("w"), w) == V("z"));
    CHECK_THROWS_AS(lp_partial(V("z"), 1 << 28), UnknownVariable);
}

TEST_CASE("holomorphy examples") {
    std::set<Var> zx = {intern("z"), intern("xi")};
    CHECK(lp_is_holomorphic(V("z", 2) * V("xi") + V("t1") * V("z"), zx));
    CHECK_FALSE(lp_is_holomorphic(V("t1") * V("t5") * V("zp", -1), {intern("zp")}));
    CHECK(lp_is_holomorphic(LaurentPoly(), zx));
    // negative powers of parameters are irrelevant
    CHECK(lp_is_holomorphic(V("A", -1) * V("z"), zx));
}

TEST_CASE("printing is descending and round-trips") {
    LaurentPoly q = P("A*z^2 + B*z*w + C*w^2");
    CHECK(q.str() == "A*z^2 + B*z*w + C*w^2");
    CHECK(P("g0 + g1*z + g2*z^2").str() == "g0 + g1*z + g2*z^2");
    CHECK(P("-3/2*z^-1 + (1/2+3*i)*w").str() == "(1/2+3*i)*w - 3/2*z^-1");
    CHECK(P(P("-3/2*z^-1 + (1/2+3*i)*w - 7").str()) == P("-3/2*z^-1 + (1/2+3*i)*w - 7"));
}

TEST_CASE("exact division") {
    LaurentPoly a = P("z^2 - w^2"), b = P("z - w");
    auto q = a.divide_exact(b);
    REQUIRE(q);
    CHECK(*q == P("z + w"));
    CHECK_FALSE(P("z^2 + w^2").divide_exact(b));
    auto q2 = P("z^-3*w + z^-2").divide_exact(P("w*z^-1 + 1"));
    REQUIRE(q2);
    CHECK(*q2 == P("z^-2"));
    CHECK(*P("A*B").divide_exact(P("2*A")) == P("1/2*B"));
}

TEST_CASE("ring axioms on random Laurent polynomials") {
    std::mt19937 rng(12345);
    std::vector<Var> vs = {intern("z"), intern("w"), intern("A")};
    for (int k = 0; k < 200; ++k) {
        auto a = testsupport::random_poly(rng, vs, 3, -2, 2, true);
        auto b = testsupport::random_poly(rng, vs, 3, -2, 2, true);
        auto c = testsupport::random_poly(rng, vs, 3, -2, 2, true);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK(a + b == b + a);
        CHECK((a - a).is_zero());
        if (!b.is_zero()) {
            auto q = (a * b).divide_exact(b);
            REQUIRE(q);
            CHECK(*q == a);
        }
    }
}

TEST_CASE("Leibniz rule for partial derivatives") {
    std::mt19937 rng(777);
    std::vector<Var> vs = {intern("z"), intern("xi"), intern("t1")};
    for (int k = 0; k < 200; ++k) {
        auto p = testsupport::random_poly(rng, vs, 3, -3, 3);
        auto q = testsupport::random_poly(rng, vs, 3, -3, 3);
        for (Var v : vs) CHECK(lp_partial(p * q, v) == lp_partial(p, v) * q + p * lp_partial(q, v));
    }
}

TEST_CASE("invertible monomial substitutions undo each other") {
    std::mt19937 rng(99);
    Var z = intern("z"), w = intern("w");
    // z -> 2zw, w -> -3w has inverse w -> -w/3, z -> -3/2 z w^-1
    Substitution s = {{z, P("2*z*w")}, {w, P("-3*w")}};
    Substitution si = {{z, P("-3/2*z*w^-1")}, {w, P("-1/3*w")}};
    Substitution r = {{z, P("zp^-1")}};
    Substitution ri = {{intern("zp"), P("z^-1")}};
    for (int k = 0; k < 200; ++k) {
        auto p = testsupport::random_poly(rng, {z, w, intern("B")}, 4, -3, 3, true);
        CHECK(lp_substitute(lp_substitute(p, s), si) == p);
        CHECK(lp_substitute(lp_substitute(p, r), ri) == p);
    }
}

TEST_CASE("registry keeps chart variables and parameters apart") {
    VarRegistry reg({"z", "xi"}, {"A", "t1"});
    CHECK(reg.is_chart(intern("xi")));
    CHECK(reg.is_param(intern("t1")));
    CHECK_THROWS(reg.add_param("z"));
    CHECK_THROWS(VarRegistry({"z", "z"}, {}));
}
