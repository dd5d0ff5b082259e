#include "doctest.h"
#include "json.hpp"
#include "poissonlab/obstruction.hpp"
#include "poissonlab/ruled.hpp"
#include "support.hpp"

using namespace poissonlab;
using testsupport::FV;
using testsupport::MV;
using testsupport::P;

namespace {
const Chart U1("U1", {"z", "xi"});
}

TEST_CASE("verdict names") {
    for (Verdict v : {Verdict::Obstructed, Verdict::UnobstructedH2Zero, Verdict::UnobstructedMC, Verdict::Undetermined})
        CHECK(verdict_from_string(to_string(v)) == v);
    CHECK_THROWS_AS(verdict_from_string("obstructed"), std::invalid_argument);
}

TEST_CASE("certificate JSON round trip") {
    Certificate c;
    c.manifold = "F_6";
    c.stratum = "e=0";
    c.verdict = Verdict::Obstructed;
    c.lambda0 = "z*xi^2*@z*@xi";
    c.chart = {"z", "xi"};
    c.witness_a = "xi*@z*@xi";
    c.witness_b = "z^-1*@xi";
    c.class_repr = "-z^-1*@z*@xi";
    std::string text = c.to_json();
    CHECK(Certificate::from_json(text) == c);
    CHECK(Certificate::from_json(text).to_json() == text);

    // keys come out sorted, so the text is stable
    auto j = nlohmann::json::parse(text);
    std::vector<std::string> keys;
    for (auto& [k, v] : j.items()) keys.push_back(k);
    CHECK(std::is_sorted(keys.begin(), keys.end()));
    CHECK(j["witness"]["a"] == "xi*@z*@xi");
    CHECK(j["tool_version"] == kToolVersion);

    Certificate u;
    u.manifold = "P3";
    u.stratum = "L0=0";
    u.verdict = Verdict::Undetermined;
    u.reason = "no pair";
    CHECK(Certificate::from_json(u.to_json()) == u);
    CHECK_FALSE(nlohmann::json::parse(u.to_json()).contains("witness"));

    Certificate s = u;
    s.verdict = Verdict::UnobstructedMC;
    s.reason.reset();
    s.solution = "F_4";
    CHECK(Certificate::from_json(s.to_json()) == s);

    CHECK_THROWS(Certificate::from_json("{\"manifold\": \"F_1\"}"));
    CHECK_THROWS(Certificate::from_json("not json"));
}

TEST_CASE("search and verification on F_m") {
    RuledPoisson l0(6, {}, {}, P("3 + z^8"));
    auto md = ruled_model(l0);
    Certificate c = witness_search(md);
    CHECK(c.verdict == Verdict::Obstructed);
    CHECK(c.manifold == "F_6");
    CHECK(c.stratum == "e=0");
    std::string why;
    CHECK(verify_certificate(md, c, &why));
    CHECK(verify_certificate(md, Certificate::from_json(c.to_json())));

    Certificate f3 = witness_search(ruled_model(RuledPoisson(3, {}, P("z"), P("z^2"))));
    CHECK(f3.verdict == Verdict::UnobstructedH2Zero);
    CHECK_FALSE(verify_certificate(md, f3, &why));
    CHECK(why == "not an Obstructed certificate");

    Certificate missing = c;
    missing.witness_b.reset();
    CHECK_FALSE(verify_certificate(md, missing));
    Certificate garbage = c;
    garbage.witness_a = "xi*@@z";
    CHECK_FALSE(verify_certificate(md, garbage, &why));
}

TEST_CASE("search can come up empty") {
    // only xi^2 bivectors offered: every bracket with z^-k d/dxi has xi-degree one
    RuledPoisson l0(6, {}, {}, P("z"));
    auto md = ruled_model(l0);
    std::vector<FormedMultiVector> sq;
    for (auto& e : md.h0_sq.elements)
        if (e.part({}).coeff({0, 1}).max_degree(intern("xi")) == 2) sq.push_back(e);
    md.h0_sq = LabeledBasis("xi^2 only", sq);
    Certificate c = witness_search(md);
    CHECK(c.verdict == Verdict::Undetermined);
    REQUIRE(c.reason.has_value());
    CHECK(c.reason->find("dim H2 = 3") != std::string::npos);
}

TEST_CASE("hypercohomology counts") {
    std::mt19937_64 rng(3);
    for (int m = 0; m <= 9; ++m) {
        for (bool ez : {true, false}) {
            auto md = ruled_model(RuledPoisson::random(m, rng, ez));
            auto h = hypercohomology(md);
            std::size_t r0 = md.h0_theta.size() - h.h0;
            // ℍ¹ = coker d0 ⊕ ker d1, ℍ² = coker d1
            CHECK(h.coker0.size() == md.h0_sq.size() - r0);
            CHECK(h.h1 == h.coker0.size() + h.ker1.size());
            CHECK(h.coker1.size() == h.h2);
            // Euler characteristic of the two-term complexes
            CHECK(static_cast<long>(h.h0) - static_cast<long>(h.h1) + static_cast<long>(h.h2) ==
                  static_cast<long>(md.h0_theta.size()) - static_cast<long>(md.h0_sq.size()) -
                      static_cast<long>(md.h1_theta.size()) + static_cast<long>(md.h1_sq.size()));
            for (auto& k : h.ker1.elements) CHECK(is_zero(md.reduce_h1_sq(md.with_lambda0(k))));
        }
    }
}

TEST_CASE("d squared vanishes only for Poisson structures") {
    std::mt19937_64 rng(4);
    for (int m = 0; m <= 8; ++m) CHECK_FALSE(complex_defect(ruled_model(RuledPoisson::random(m, rng, false))).has_value());

    // a non-Poisson bivector on C^3
    Chart c("U0", {"z1", "z2", "z3"});
    DeformationComplexModel md;
    md.chart = c;
    md.lambda0 = FV("@z1*@z2 + z1*@z1*@z3", c);
    REQUIRE_FALSE(schouten(md.lambda0.part({}), md.lambda0.part({})).is_zero());
    md.h0_theta = LabeledBasis("fields", std::vector<FormedMultiVector>{FV("@z1", c), FV("z2*@z3", c), FV("z1*z3*@z1", c)});
    CHECK(complex_defect(md).has_value());
}

TEST_CASE("primary obstruction is quadratic") {
    RuledPoisson l0(6, {}, {}, P("z^2 - 1"));
    auto md = ruled_model(l0);
    FormedMultiVector lambda = FV("xi*@z*@xi", U1);
    FormedMultiVector theta = FV("z^-1*@xi", U1);
    ObstructionClass o = primary_obstruction(md, lambda, theta);
    // 2[xi d/dz^d/dxi, z^-1 d/dxi] = -2 z^-1 d/dz^d/dxi
    CHECK(o.sq_coords == Vector{-2, 0, 0});
    CHECK_FALSE(o.sq_in_image);
    CHECK(o.nonzero());
    CHECK(o.cube.is_zero());

    LaurentPoly s = LaurentPoly::var("s");
    ObstructionClass os = primary_obstruction(md, s * lambda, s * theta);
    REQUIRE(os.sq_coords.size() == o.sq_coords.size());
    for (std::size_t i = 0; i < o.sq_coords.size(); ++i) CHECK(os.sq_coords[i] == s * s * o.sq_coords[i]);

    // doubling each argument quadruples the class
    ObstructionClass o2 = primary_obstruction(md, LaurentPoly(2) * lambda, LaurentPoly(2) * theta);
    for (std::size_t i = 0; i < o.sq_coords.size(); ++i) CHECK(o2.sq_coords[i] == LaurentPoly(4) * o.sq_coords[i]);

    // a bivector with xi^2 gives a class of xi-degree one, which is zero
    ObstructionClass z = primary_obstruction(md, FV("xi^2*@z*@xi", U1), theta);
    CHECK(z.sq_in_image);
    CHECK_FALSE(z.nonzero());
}

TEST_CASE("primary obstruction rejects non-cocycles") {
    RuledPoisson l0(6, {}, P("1"), {});
    auto md = ruled_model(l0);
    // [L0, z^-1 d/dxi] = -z^-1 d/dz^d/dxi has a nonzero class
    CHECK_THROWS_AS(primary_obstruction(md, FV("xi*@z*@xi", U1), FV("z^-1*@xi", U1)), NotACocycle);

    Chart c("U0", {"z1", "z2", "z3"});
    DeformationComplexModel p3;
    p3.chart = c;
    p3.lambda0 = FV("@z1*@z2", c);
    CHECK_THROWS_AS(primary_obstruction(p3, FV("z1*@z1*@z3", c), FormedMultiVector(MultiVector(c))), NotACocycle);
}

TEST_CASE("P3 demo") {
    P3Demo d = p3_demo();
    MultiVector pi = d.pi.part({});
    CHECK_FALSE(pi.is_zero());
    CHECK(pi.grade() == 2);
    Var z1 = intern("z1"), z2 = intern("z2"), z3 = intern("z3");
    for (auto& [idx, c] : pi.components()) {
        CHECK(c.is_zero() == false);
        CHECK(c.max_degree(z1) + c.max_degree(z2) + c.max_degree(z3) <= 6);
        for (auto& [mono, coef] : c.terms()) CHECK(mono.total_degree() <= 2);
    }
    CHECK(d.obstruction.nonzero());
    CHECK(d.obstruction.cube.part({}) == schouten(pi, pi));
    CHECK(d.obstruction.theta2.is_zero());
    CHECK(d.model.manifold == "P3");

    // same seed, same output
    CHECK(p3_demo(1).pi == d.pi);
    P3Demo other = p3_demo(17);
    CHECK(other.obstruction.nonzero());

    // [sΠ, sΠ] = s²[Π, Π]
    LaurentPoly s = LaurentPoly::var("s");
    CHECK(schouten(s * pi, s * pi) == (s * s) * schouten(pi, pi));
}
