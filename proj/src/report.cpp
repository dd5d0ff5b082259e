#include "poissonlab/report.hpp"

#include <random>
#include <regex>
#include <sstream>

#include "poissonlab/expr.hpp"
#include "poissonlab/hopf.hpp"
#include "poissonlab/products.hpp"
#include "poissonlab/ruled.hpp"

namespace poissonlab {

namespace {

Json strs(const LabeledBasis& b) {
    Json a = Json::array();
    for (auto& e : b.elements) a.push_back(e.str());
    return a;
}

std::string word(Verdict v) {
    switch (v) {
        case Verdict::Obstructed:
            return "obstructed";
        case Verdict::UnobstructedH2Zero:
        case Verdict::UnobstructedMC:
            return "unobstructed";
        case Verdict::Undetermined:
            return "undetermined";
    }
    return "undetermined";
}

std::string md_table(const std::string& title, const std::vector<std::string>& head,
                     const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream o;
    o << "### " << title << "\n\n|";
    for (auto& h : head) o << " " << h << " |";
    o << "\n|";
    for (std::size_t i = 0; i < head.size(); ++i) o << "---|";
    o << "\n";
    for (auto& r : rows) {
        o << "|";
        for (auto& c : r) o << " " << c << " |";
        o << "\n";
    }
    o << "\n";
    return o.str();
}

std::string code(const std::string& s) { return "`" + s + "`"; }
std::string num(const Json& j) { return j.is_null() ? "-" : std::to_string(j.get<long>()); }

LaurentPoly sym(const std::string& n) { return LaurentPoly::var(n); }

// coefficients (c0, c1, c2) of a polynomial in xi of degree <= 2 with no
// dependence on the other chart variables
std::vector<LaurentPoly> xi_quadratic(const LaurentPoly& p, const Chart& c, Var xi) {
    std::set<Var> others = c.var_set();
    others.erase(xi);
    std::vector<LaurentPoly> out(3);
    for (auto& [e, cf] : p.collect(xi)) {
        if (e < 0 || e > 2) throw ConstraintViolation("coefficient " + p.str() + " is not quadratic in xi");
        for (Var v : cf.vars())
            if (others.count(v)) throw ConstraintViolation("coefficient " + p.str() + " is not constant along the base");
        out[static_cast<std::size_t>(e)] = cf;
    }
    return out;
}

MultiVector parse_on(const std::string& src, const Chart& c) {
    FormedMultiVector f = parse_field(src, c);
    for (auto& [dbar, part] : f.parts())
        if (!dbar.empty()) throw ConstraintViolation("a Poisson structure has no d-bar part");
    return f.part({});
}

void require_bivector(const MultiVector& m) {
    for (auto& [idx, c] : m.components())
        if (idx.size() != 2) throw ConstraintViolation("not a bivector");
}

std::vector<LaurentPoly> ep1_coefficients(const std::string& src) {
    const Chart& c = ep1_model().chart;
    MultiVector l = parse_on(src, c);
    require_bivector(l);
    return xi_quadratic(l.coeff({0, 1}), c, c.vars[1]);
}

TP1Class tp1_class_of(const std::string& src) {
    const Chart& ch = tp1_model().chart;
    MultiVector l = parse_on(src, ch);
    require_bivector(l);
    Var xi = ch.vars[2];
    std::vector<LaurentPoly> a = xi_quadratic(l.coeff({0, 1}), ch, xi);
    if (!a[1].is_zero() || !a[2].is_zero()) throw ConstraintViolation("the d/dz1^d/dz2 coefficient must be constant");
    std::vector<LaurentPoly> b = xi_quadratic(l.coeff({1, 2}), ch, xi);
    std::vector<LaurentPoly> c = xi_quadratic(-l.coeff({0, 2}), ch, xi);  // d/dxi ^ d/dz1
    if (!schouten(l, l).is_zero()) throw ConstraintViolation("[L0, L0] != 0");
    auto zero = [](const std::vector<LaurentPoly>& v) { return v[0].is_zero() && v[1].is_zero() && v[2].is_zero(); };
    if (zero(b) && zero(c)) return TP1Class::one(a[0]);
    if (zero(b)) return TP1Class::three(a[0], c[0], c[1], c[2]);
    // c = k b, forced by the vanishing minors
    std::size_t i = b[0].is_zero() ? (b[1].is_zero() ? 2 : 1) : 0;
    if (!b[i].is_constant()) throw ConstraintViolation("symbolic coefficients are not supported here");
    LaurentPoly k = c[i] * LaurentPoly(b[i].leading_term().second.inverse());
    return TP1Class::two(a[0], b[0], b[1], b[2], k);
}

HopfType hopf_type_of(const std::string& manifold) {
    static const std::regex re(R"(hopf-(iv|iii|iia|iib|iic)(?:-p(\d+))?)");
    static const std::map<std::string, std::string> tags{
        {"iv", "IV"}, {"iii", "III"}, {"iia", "IIa"}, {"iib", "IIb"}, {"iic", "IIc"}};
    std::smatch mt;
    if (!std::regex_match(manifold, mt, re)) throw std::invalid_argument("not a Hopf surface: " + manifold);
    std::string tag = tags.at(mt[1]);
    if (mt[2].matched) tag += ":" + mt[2].str();
    return HopfType::parse(tag);
}

int ruled_m_of(const std::string& manifold) {
    static const std::regex re(R"(F_?(\d+))");
    std::smatch mt;
    if (manifold == "P1xP1") return 0;
    return std::regex_match(manifold, mt, re) ? std::stoi(mt[1]) : -1;
}

Certificate classify_torus(int n, const std::string& src) {
    ProductModel p = torus_model(n);
    MultiVector l = parse_on(src, p.chart);
    require_bivector(l);
    std::size_t h1 = torus_dims(n, l);
    MCSolution s = torus_mc_solution(n);
    Certificate c;
    c.manifold = p.name();
    c.stratum = "any";
    c.lambda0 = l.str();
    for (Var v : p.chart.vars) c.chart.push_back(var_name(v));
    if (s.defect().is_zero() && ks_rank(torus_deformation_model(n), s) == h1) {
        c.verdict = Verdict::UnobstructedMC;
        c.solution = "torus-" + std::to_string(n);
    } else {
        c.verdict = Verdict::Undetermined;
        c.reason = "the constant-field family did not verify";
    }
    return c;
}

Json mc_json(const MCSolution& s, const DeformationComplexModel& md, std::size_t h1) {
    Json j;
    j["lambda0"] = s.lambda0.str();
    j["params"] = s.params;
    j["beta"] = s.beta.str();
    j["alpha"] = s.alpha.str();
    FormedMultiVector d = s.defect();
    j["defect"] = d.str();
    j["defect_zero"] = d.is_zero();
    j["ks_rank"] = ks_rank(md, s);
    j["h1"] = h1;
    return j;
}

Report ruled_family_report(const std::string& name, bool uncorrected) {
    std::string target = "F_" + name.substr(1);
    for (auto& fam : uncorrected ? ruled_families_uncorrected() : ruled_families()) {
        if (fam.name != target && fam.name != target + " raw") continue;
        FamilyReport r = check_family(fam);
        Report out{name, r.ok(), {}};
        out.detail["manifold"] = fam.name;
        out.detail["params"] = fam.params;
        out.detail["restricts"] = r.restricts;
        out.detail["holomorphic"] = r.holomorphic;
        out.detail["residual"] = r.residual.str();
        out.detail["poisson"] = r.poisson;
        out.detail["cocycles"] = r.cocycles;
        out.detail["h1"] = r.h1_dim;
        out.detail["ks_rank"] = r.ks_rank;
        out.detail["ks"] = r.ks;
        return out;
    }
    throw std::invalid_argument("no family " + name);
}

Report hopf_family_report(const std::string& name) {
    HopfFamily fam = hopf_family(name);
    Report out{name, false, {}};
    out.detail["type"] = fam.type.name();
    out.detail["stratum"] = fam.stratum;
    out.detail["params"] = fam.params;
    out.detail["lambda"] = MultiVector::term(hopf_chart(), {0, 1}, fam.lambda).str();
    bool inv = family_invariance(fam.lambda, fam.map);
    out.detail["invariant"] = inv;
    out.detail["invariance_residual"] = invariance_residual(fam.lambda, fam.map).str();
    try {
        MembershipReport r = d_membership(fam, tau_images(fam));
        Json pairs = Json::array();
        for (auto& pr : r.pairs) pairs.push_back({{"label", pr.label}, {"b", pr.b.str()}, {"a", pr.a.str()}});
        out.detail["pairs"] = pairs;
        out.detail["sigma_rank"] = r.sigma_rank;
        out.detail["h1"] = r.h1_dim;
        out.detail["residual"] = "0";
        out.ok = inv && r.ok();
    } catch (const MembershipFails& e) {
        out.detail["residual"] = e.residual().str();
    }
    return out;
}

Report ep1_report(bool uncorrected) {
    LaurentPoly A = sym("A"), B = sym("B"), C = sym("C");
    MCSolution s = ep1_mc_solution(A, B, C);
    if (uncorrected) s.alpha = s.alpha.substitute({{intern("t0"), LaurentPoly()}});
    DeformationComplexModel md = ep1_deformation_model(A, B, C);
    std::size_t h1 = hypercohomology(md).h1;
    Report out{"ep1", false, mc_json(s, md, h1)};
    out.ok = out.detail["defect_zero"].get<bool>() && out.detail["ks_rank"].get<std::size_t>() == h1;
    return out;
}

Report tp1_report(bool uncorrected) {
    Report out{"tp1", true, Json::object()};
    for (int id : {2, 3}) {
        TP1Class c = TP1Class::generic(id);
        TP1Identities ids = tp1_identities(c, !uncorrected, !uncorrected);
        MCSolution s = tp1_mc_solution(c);
        DeformationComplexModel md = tp1_deformation_model(c);
        std::size_t h1 = tp1_hypercohomology(c).h1;
        Json j;
        j["lambda0"] = s.lambda0.str();
        j["poisson"] = ids.poisson.str();
        j["mixed"] = ids.mixed.str();
        j["complex"] = ids.complex.str();
        j["ks_rank"] = ks_rank(md, s);
        j["h1"] = h1;
        bool ok = ids.ok() && j["ks_rank"].get<std::size_t>() == h1;
        j["ok"] = ok;
        out.detail[c.label()] = j;
        out.ok = out.ok && ok;
    }
    return out;
}

}  // namespace

Json certificate_json(const Certificate& c) { return Json::parse(c.to_json()); }

// ---------------------------------------------------------------- tables

Json ruled_table(int m_max, std::uint64_t seed) {
    if (m_max < 0 || m_max > ruled_max_m())
        throw std::invalid_argument("m must be in [0, " + std::to_string(ruled_max_m()) + "]");
    Json rows = Json::array();
    for (int m = 0; m <= m_max; ++m) {
        std::mt19937_64 rng(seed * 1000003u + static_cast<std::uint64_t>(m));
        for (bool ez : {false, true}) {
            // large coefficients keep the sample away from special points
            RuledPoisson l0 = RuledPoisson::random(m, rng, ez, 1000000);
            RuledRow r = ruled_verdict(l0);
            DeformationComplexModel md = ruled_model(l0);
            Json row;
            row["manifold"] = md.manifold;
            row["m"] = m;
            row["stratum"] = md.stratum;
            row["e_zero"] = ez;
            row["lambda0"] = l0.bivector().str();
            row["h1"] = hyper_h1(l0).size();
            row["h2"] = r.h2;
            row["verdict"] = to_string(r.certificate.verdict);
            row["certificate"] = certificate_json(r.certificate);
            rows.push_back(row);
        }
    }
    return {{"table", "ruled"}, {"m_max", m_max}, {"seed", seed}, {"rows", rows}};
}

std::string ruled_table_md(const Json& t) {
    std::vector<std::vector<std::string>> rows;
    for (auto& r : t.at("rows")) {
        std::string s = r.at("e_zero").get<bool>() ? "e(z) = 0" : "e(z) != 0";
        if (r.at("m").get<int>() <= 3) s = "any (" + s + ")";
        rows.push_back({r.at("manifold").get<std::string>(), s, num(r.at("h1")), num(r.at("h2")),
                        word(verdict_from_string(r.at("verdict")))});
    }
    return md_table("Rational ruled surfaces", {"surface", "Poisson structure", "dim H1", "dim H2", "Poisson deformations"},
                    rows);
}

Json hopf_tables(int p, int D) {
    Json types = Json::array();
    for (const HopfType& t : {HopfType::iv(), HopfType::iii(p), HopfType::iia(p), HopfType::iib(), HopfType::iic()}) {
        ChartMap f = contraction(t);
        const Chart& c = hopf_chart();
        LabeledBasis fields = invariant_fields(t, D), bivs = invariant_bivectors(t, D);
        types.push_back({{"type", t.name()},
                         {"manifold", t.manifold()},
                         {"contraction", {f.forward.at(c.vars[0]).str(), f.forward.at(c.vars[1]).str()}},
                         {"h0_theta", fields.size()},
                         {"h0_theta_basis", strs(fields)},
                         {"h0_sq", bivs.size()},
                         {"h0_sq_basis", strs(bivs)}});
    }
    Json strata = Json::array();
    for (auto& s : hopf_strata(p)) {
        HopfRow r = hopf_row(s, D);
        Certificate c = hopf_certificate(s, D);
        Json row;
        row["type"] = s.type.name();
        row["manifold"] = s.type.manifold();
        row["stratum"] = s.label;
        row["lambda0"] = s.lambda0.str();
        row["h0"] = r.h0;
        row["h1"] = r.h1;
        row["h2"] = r.h2;
        row["automorphisms"] = strs(r.automorphisms);
        row["verdict"] = to_string(c.verdict);
        row["certificate"] = certificate_json(c);
        if (!s.family.empty()) {
            HopfFamily fam = hopf_family(s.family, p);
            row["family"] = fam.name;
            row["family_lambda"] = MultiVector::term(hopf_chart(), {0, 1}, fam.lambda).str();
        } else {
            row["family"] = nullptr;
            row["family_lambda"] = nullptr;
        }
        strata.push_back(row);
    }
    return {{"table", "hopf"}, {"p", p}, {"types", types}, {"strata", strata}};
}

std::string hopf_tables_md(const Json& t) {
    std::string out;
    std::vector<std::vector<std::string>> a, b, c, d, e;
    for (auto& r : t.at("types")) {
        std::string f = "(" + r.at("contraction")[0].get<std::string>() + ", " +
                        r.at("contraction")[1].get<std::string>() + ")";
        std::string basis, sq;
        for (auto& x : r.at("h0_theta_basis")) basis += (basis.empty() ? "" : ", ") + code(x.get<std::string>());
        for (auto& x : r.at("h0_sq_basis")) sq += (sq.empty() ? "" : ", ") + code(x.get<std::string>());
        a.push_back({r.at("type").get<std::string>(), num(r.at("h0_theta")), code(f), basis});
        b.push_back({r.at("type").get<std::string>(), num(r.at("h0_sq")), sq});
    }
    for (auto& r : t.at("strata")) {
        std::string type = r.at("type").get<std::string>(), l0 = code(r.at("lambda0").get<std::string>()),
                    st = r.at("stratum").get<std::string>();
        std::string aut;
        for (auto& x : r.at("automorphisms")) aut += (aut.empty() ? "" : ", ") + code(x.get<std::string>());
        c.push_back({type, st, l0, aut});
        d.push_back({type, st, l0, num(r.at("h0")), num(r.at("h1")), num(r.at("h2"))});
        std::string lam = r.at("family_lambda").is_null() ? "" : code(r.at("family_lambda").get<std::string>());
        e.push_back({type, st, l0, lam, word(verdict_from_string(r.at("verdict")))});
    }
    out += md_table("Hopf surfaces", {"type", "dim H0(Theta)", "f(z,w)", "basis of H0(Theta)"}, a);
    out += md_table("Poisson structures on Hopf surfaces", {"type", "dim H0(^2 Theta)", "basis of H0(^2 Theta)"}, b);
    out += md_table("Infinitesimal Poisson automorphisms", {"type", "stratum", "Lambda_0", "basis of HH0"}, c);
    out += md_table("Hypercohomology", {"type", "stratum", "Lambda_0", "dim HH0", "dim HH1", "dim HH2"}, d);
    out += md_table("Poisson deformations of Hopf surfaces",
                    {"type", "stratum", "Lambda_0", "Lambda on W x S", "Poisson deformations"}, e);
    return out;
}

Json products_table() {
    Json rows = Json::array();
    for (auto& r : product_rows()) {
        Json row;
        row["manifold"] = r.manifold;
        row["stratum"] = r.stratum;
        row["h1"] = r.h1;
        row["h2"] = r.h2 ? Json(*r.h2) : Json(nullptr);
        row["verdict"] = to_string(r.verdict);
        std::string l0 = "any";
        if (r.manifold == "ExP1")
            l0 = r.stratum == "L0=0" ? "0" : ep1_lambda0(sym("A"), sym("B"), sym("C")).str();
        if (r.manifold == "TxP1") l0 = TP1Class::generic(r.stratum.back() - '0').lambda0().str();
        row["lambda0"] = l0;
        rows.push_back(row);
    }
    return {{"table", "products"}, {"rows", rows}};
}

std::string products_table_md(const Json& t) {
    std::vector<std::vector<std::string>> a, b;
    for (auto& r : t.at("rows")) {
        std::string m = r.at("manifold").get<std::string>(), l0 = r.at("lambda0").get<std::string>();
        std::string shown = l0 == "any" ? "any" : code(l0);
        if (m == "TxP1")
            b.push_back({r.at("stratum").get<std::string>(), shown, num(r.at("h1")), num(r.at("h2")),
                         word(verdict_from_string(r.at("verdict")))});
        else
            a.push_back({m, r.at("stratum").get<std::string>(), shown, num(r.at("h1")), num(r.at("h2")),
                         word(verdict_from_string(r.at("verdict")))});
    }
    return md_table("Products of two curves", {"type", "stratum", "Lambda_0", "dim HH1", "dim HH2", "Poisson deformations"},
                    a) +
           md_table("T x P1", {"class", "Lambda_0", "dim HH1", "dim HH2", "Poisson deformations"}, b);
}

// ---------------------------------------------------------------- classify

Certificate classify(const std::string& manifold, const std::string& poisson, int D) {
    static const std::regex torus(R"((?:T\^|torus-)(\d+))");
    std::smatch mt;
    if (int m = ruled_m_of(manifold); m >= 0) return ruled_verdict(RuledPoisson::parse(m, poisson)).certificate;
    if (manifold.rfind("hopf-", 0) == 0) return hopf_classify(hopf_type_of(manifold), parse_on(poisson, hopf_chart()), D);
    if (manifold == "ExP1") {
        std::vector<LaurentPoly> q = ep1_coefficients(poisson);
        return ep1_classify(q[0], q[1], q[2]);
    }
    if (manifold == "TxP1") return tp1_classify(tp1_class_of(poisson));
    if (manifold == "ExE") return classify_torus(2, poisson);
    if (std::regex_match(manifold, mt, torus)) return classify_torus(std::stoi(mt[1]), poisson);
    throw std::invalid_argument("unknown manifold '" + manifold + "'");
}

bool reverify(const Certificate& c, std::string* why, int D) {
    auto fail = [&](const std::string& w) {
        if (why) *why = w;
        return false;
    };
    if (c.verdict == Verdict::Obstructed) {
        DeformationComplexModel md;
        if (int m = ruled_m_of(c.manifold); m >= 0) {
            md = ruled_model(RuledPoisson::parse(m, c.lambda0));
        } else if (c.manifold.rfind("hopf-", 0) == 0) {
            HopfStratum s = hopf_stratum(hopf_type_of(c.manifold), c.stratum);
            s.lambda0 = parse_on(c.lambda0, hopf_chart());
            s.nonzero.clear();
            md = hopf_model(s, D);
        } else if (c.manifold == "ExP1") {
            std::vector<LaurentPoly> q = ep1_coefficients(c.lambda0);
            md = ep1_deformation_model(q[0], q[1], q[2]);
        } else if (c.manifold == "TxP1") {
            md = tp1_deformation_model(tp1_class_of(c.lambda0));
        } else {
            return fail("no obstruction model for " + c.manifold);
        }
        if (!verify_certificate(md, c, why)) return false;
    }
    Certificate again = classify(c.manifold, c.lambda0, D);
    if (again.verdict != c.verdict) return fail("recomputed verdict is " + to_string(again.verdict));
    if (again.solution != c.solution) return fail("recomputed family differs");
    return true;
}

// ---------------------------------------------------------------- families

const std::vector<std::string>& family_names() {
    static const std::vector<std::string> n{"f2",       "f3",       "f4",       "f5",  "hopf-iv", "hopf-iii",
                                            "hopf-iia", "hopf-iib", "hopf-iic", "ep1", "tp1"};
    return n;
}

Report verify_named_family(const std::string& name, bool uncorrected) {
    if (name.size() == 2 && name[0] == 'f' && name[1] >= '2' && name[1] <= '5')
        return ruled_family_report(name, uncorrected);
    if (name.rfind("hopf-", 0) == 0) {
        if (uncorrected) throw std::invalid_argument(name + " has no correction terms");
        return hopf_family_report(name);
    }
    if (name == "ep1") return ep1_report(uncorrected);
    if (name == "tp1") return tp1_report(uncorrected);
    throw std::invalid_argument("unknown family '" + name + "'");
}

const std::vector<std::string>& mc_names() {
    static const std::vector<std::string> n{"ep1", "tp1", "tp1-swap", "torus-2", "torus-3", "torus-4"};
    return n;
}

Report mc_check(const std::string& name) {
    if (name == "ep1") return ep1_report(false);
    if (name == "tp1" || name == "tp1-swap") {
        TP1Class c = TP1Class::generic(name == "tp1" ? 2 : 3);
        MCSolution s = tp1_mc_solution(c);
        Report out{name, false, mc_json(s, tp1_deformation_model(c), tp1_hypercohomology(c).h1)};
        out.ok = out.detail["defect_zero"].get<bool>() &&
                 out.detail["ks_rank"].get<std::size_t>() == out.detail["h1"].get<std::size_t>();
        return out;
    }
    if (name.rfind("torus-", 0) == 0) {
        int n = std::stoi(name.substr(6));
        MCSolution s = torus_mc_solution(n);
        Report out{name, false, mc_json(s, torus_deformation_model(n), torus_dims(n))};
        out.ok = out.detail["defect_zero"].get<bool>() &&
                 out.detail["ks_rank"].get<std::size_t>() == out.detail["h1"].get<std::size_t>();
        return out;
    }
    throw std::invalid_argument("unknown Maurer-Cartan solution '" + name + "'");
}

Json full_report() {
    Json j;
    j["tool_version"] = kToolVersion;
    j["tables"] = {{"ruled", ruled_table(10)}, {"hopf", hopf_tables(2)}, {"products", products_table()}};
    for (auto& n : family_names()) {
        Report r = verify_named_family(n);
        j["families"][n] = {{"ok", r.ok}, {"detail", r.detail}};
    }
    for (auto& n : {"f2", "f3", "f4", "f5", "ep1", "tp1"}) {
        Report r = verify_named_family(n, true);
        j["uncorrected"][n] = {{"ok", r.ok}, {"detail", r.detail}};
    }
    for (auto& n : mc_names()) {
        Report r = mc_check(n);
        j["mc"][n] = {{"ok", r.ok}, {"detail", r.detail}};
    }
    return j;
}

}  // namespace poissonlab
