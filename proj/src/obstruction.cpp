#include "poissonlab/obstruction.hpp"

#include <random>

#include "json.hpp"
#include "poissonlab/expr.hpp"

namespace poissonlab {

using nlohmann::json;

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Obstructed:
            return "Obstructed";
        case Verdict::UnobstructedH2Zero:
            return "UnobstructedH2Zero";
        case Verdict::UnobstructedMC:
            return "UnobstructedMC";
        case Verdict::Undetermined:
            return "Undetermined";
    }
    return "Undetermined";
}

Verdict verdict_from_string(const std::string& s) {
    for (Verdict v : {Verdict::Obstructed, Verdict::UnobstructedH2Zero, Verdict::UnobstructedMC, Verdict::Undetermined})
        if (to_string(v) == s) return v;
    throw std::invalid_argument("unknown verdict '" + s + "'");
}

std::string Certificate::to_json() const {
    json j;
    j["manifold"] = manifold;
    j["stratum"] = stratum;
    j["verdict"] = to_string(verdict);
    j["lambda0"] = lambda0;
    j["chart"] = chart;
    j["tool_version"] = tool_version;
    if (witness_a || witness_b) j["witness"] = {{"a", witness_a.value_or("")}, {"b", witness_b.value_or("")}};
    if (class_repr) j["class"] = *class_repr;
    if (solution) j["solution"] = *solution;
    if (reason) j["reason"] = *reason;
    return j.dump(2);
}

Certificate Certificate::from_json(const std::string& text) {
    json j = json::parse(text);
    Certificate c;
    c.manifold = j.at("manifold").get<std::string>();
    c.stratum = j.at("stratum").get<std::string>();
    c.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    c.lambda0 = j.value("lambda0", "");
    c.chart = j.value("chart", std::vector<std::string>{});
    c.tool_version = j.value("tool_version", "");
    if (j.contains("witness")) {
        c.witness_a = j["witness"].at("a").get<std::string>();
        c.witness_b = j["witness"].at("b").get<std::string>();
    }
    if (j.contains("class")) c.class_repr = j["class"].get<std::string>();
    if (j.contains("solution")) c.solution = j["solution"].get<std::string>();
    if (j.contains("reason")) c.reason = j["reason"].get<std::string>();
    return c;
}

// ---------------------------------------------------------------- model

LinMap DeformationComplexModel::d0() const {
    if (h0_sq.size() == 0) return LinMap{h0_theta, h0_sq, {}, nonzero};
    auto m = matrix_of_map([&](const FormedMultiVector& x) { return with_lambda0(x); }, h0_theta, h0_sq, reduce_h0_sq);
    m.nonzero = nonzero;
    return m;
}

LinMap DeformationComplexModel::d1() const {
    if (h1_sq.size() == 0) return LinMap{h1_theta, h1_sq, {}, nonzero};
    auto m = matrix_of_map([&](const FormedMultiVector& x) { return with_lambda0(x); }, h1_theta, h1_sq, reduce_h1_sq);
    m.nonzero = nonzero;
    return m;
}

namespace {

std::vector<Vector> columns(const LinMap& m) {
    std::vector<Vector> out;
    for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m.column(j));
    return out;
}

std::vector<Vector> kernel_of(const LinMap& m) {
    if (m.rows() == 0) {
        std::vector<Vector> out;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Vector e(m.cols());
            e[j] = 1;
            out.push_back(e);
        }
        return out;
    }
    return kernel_basis(m);
}

std::vector<std::string> chart_names(const Chart& c) {
    std::vector<std::string> out;
    for (Var v : c.vars) out.push_back(var_name(v));
    return out;
}

}  // namespace

Hypercohomology hypercohomology(const DeformationComplexModel& m) {
    if (m.h0_cube) throw std::logic_error("hypercohomology: model has ^3 terms, count them separately");
    Hypercohomology h;
    LinMap d0 = m.d0();
    LinMap d1 = m.d1();
    std::size_t r0 = d0.rows() ? generic_rank(d0) : 0;
    std::size_t r1 = d1.rows() ? generic_rank(d1) : 0;
    h.h0 = m.h0_theta.size() - r0;
    h.coker0 = d0.rows() ? cokernel_rep(d0, m.preferred_coker) : LabeledBasis("coker", std::vector<FormedMultiVector>{});
    std::vector<FormedMultiVector> ker;
    for (auto& v : kernel_of(d1)) ker.push_back(m.h1_theta.combine(v));
    h.ker1 = LabeledBasis("ker", ker);
    h.coker1 = d1.rows() ? cokernel_rep(d1) : LabeledBasis("coker", std::vector<FormedMultiVector>{});
    h.h1 = h.coker0.size() + h.ker1.size();
    h.h2 = m.h1_sq.size() - r1;
    return h;
}

std::optional<std::string> complex_defect(const DeformationComplexModel& m) {
    for (auto* basis : {&m.h0_theta, &m.h1_theta, &m.h0_sq, &m.h1_sq})
        for (auto& x : basis->elements) {
            FormedMultiVector y = m.with_lambda0(m.with_lambda0(x));
            if (!y.is_zero()) return "[L0,[L0," + x.str() + "]] = " + y.str();
        }
    return std::nullopt;
}

Certificate witness_search(const DeformationComplexModel& m) {
    Certificate c;
    c.manifold = m.manifold;
    c.stratum = m.stratum;
    c.lambda0 = m.lambda0.str();
    c.chart = chart_names(m.chart);
    LinMap d1 = m.d1();
    std::size_t rank = d1.rows() ? generic_rank(d1) : 0;
    std::size_t h2 = d1.rows() - rank;
    if (h2 == 0) {
        c.verdict = Verdict::UnobstructedH2Zero;
        return c;
    }
    auto image = columns(d1);
    auto ker = kernel_of(d1);
    for (auto& a : m.h0_sq.elements) {
        for (auto& k : ker) {
            FormedMultiVector b = m.h1_theta.combine(k);
            Vector cls = m.reduce_h1_sq(m.bracket(a, b));
            if (is_zero(cls) || in_span(image, cls)) continue;
            c.verdict = Verdict::Obstructed;
            c.witness_a = a.str();
            c.witness_b = b.str();
            c.class_repr = m.h1_sq.combine(cls).str();
            return c;
        }
    }
    c.verdict = Verdict::Undetermined;
    c.reason = "dim H2 = " + std::to_string(h2) + " but no basis pair (a, b) gives a class outside the image";
    return c;
}

bool ObstructionClass::nonzero() const {
    if (!sq_in_image) return true;
    if (!cube_coords.empty()) return !is_zero(cube_coords);
    return !cube.is_zero();
}

std::string ObstructionClass::str() const {
    std::string s = "H1(^2) part: [";
    for (std::size_t i = 0; i < sq_coords.size(); ++i) s += (i ? ", " : "") + sq_coords[i].str();
    s += sq_in_image ? "] (in image)" : "] (outside image)";
    s += "; [lambda,lambda] = " + (cube.is_zero() ? std::string("0") : cube.str());
    s += "; [theta,theta] = " + (theta2.is_zero() ? std::string("0") : theta2.str());
    return s;
}

ObstructionClass primary_obstruction(const DeformationComplexModel& m, const FormedMultiVector& lambda,
                                     const FormedMultiVector& theta) {
    FormedMultiVector l0l = m.with_lambda0(lambda);
    if (!l0l.is_zero()) throw NotACocycle("[L0, lambda] = " + l0l.str() + " is not zero");
    if (m.h1_sq.size() && !theta.is_zero()) {
        Vector c = m.reduce_h1_sq(m.with_lambda0(theta));
        if (!is_zero(c)) throw NotACocycle("[L0, theta] is not exact");
    }
    ObstructionClass o;
    o.cube = m.bracket(lambda, lambda);
    o.theta2 = m.bracket(theta, theta);
    if (m.h1_sq.size()) {
        FormedMultiVector mixed = m.bracket(lambda, theta);
        o.sq_coords = m.reduce_h1_sq(LaurentPoly(2) * mixed);
        LinMap d1 = m.d1();
        o.sq_in_image = is_zero(o.sq_coords) || in_span(columns(d1), o.sq_coords);
    }
    if (!o.cube.is_zero()) {
        if (m.reduce_h0_cube)
            o.cube_coords = m.reduce_h0_cube(o.cube);
        else if (!m.lambda0.is_zero())
            throw std::domain_error("[lambda,lambda] != 0 needs an H0(^3) model when L0 != 0");
    }
    if (!o.theta2.is_zero()) throw std::domain_error("[theta,theta] != 0 needs an H2(Theta) model");
    return o;
}

bool verify_certificate(const DeformationComplexModel& m, const Certificate& c, std::string* why) {
    auto fail = [&](const std::string& s) {
        if (why) *why = s;
        return false;
    };
    if (c.verdict != Verdict::Obstructed) return fail("not an Obstructed certificate");
    if (!c.witness_a || !c.witness_b || !c.class_repr) return fail("missing witness or class");
    try {
        FormedMultiVector a = parse_field(*c.witness_a, m.chart);
        FormedMultiVector b = parse_field(*c.witness_b, m.chart);
        FormedMultiVector cls = parse_field(*c.class_repr, m.chart);
        m.reduce_h0_sq(a);  // a must be a global bivector
        if (!is_zero(m.reduce_h1_sq(m.with_lambda0(b)))) return fail("b is not in the kernel of [L0,-]");
        Vector ab = m.reduce_h1_sq(m.bracket(a, b));
        if (ab != m.reduce_h1_sq(cls)) return fail("[a,b] does not reduce to the stated class");
        if (is_zero(ab)) return fail("class is zero");
        LinMap d1 = m.d1();
        if (in_span(columns(d1), ab)) return fail("class lies in the image of [L0,-]");
    } catch (const std::exception& e) {
        return fail(e.what());
    }
    return true;
}

// ---------------------------------------------------------------- P³

P3Demo p3_demo(std::uint64_t seed) {
    Chart c("U0", {"z1", "z2", "z3"});
    std::vector<MultiVector> fields;
    MultiVector euler(c);
    for (int i = 0; i < 3; ++i) euler += MultiVector::term(c, {i}, LaurentPoly::var(c.vars[i]));
    for (int i = 0; i < 3; ++i) fields.push_back(MultiVector::term(c, {i}, 1));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) fields.push_back(MultiVector::term(c, {i}, LaurentPoly::var(c.vars[j])));
    for (int i = 0; i < 3; ++i) fields.push_back(LaurentPoly::var(c.vars[i]) * euler);

    P3Demo d;
    d.model.manifold = "P3";
    d.model.stratum = "L0=0";
    d.model.chart = c;
    d.model.lambda0 = FormedMultiVector(MultiVector(c));
    d.model.h0_theta = LabeledBasis("H0(Theta)", fields);

    std::mt19937_64 rng(seed);
    // affine fields only, so the coefficients stay quadratic
    std::uniform_int_distribution<std::size_t> pick(0, 11);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        MultiVector pi(c);
        for (int k = 0; k < 2; ++k) {
            int cf = coef(rng);
            if (cf == 0) cf = 1;
            pi += LaurentPoly(cf) * wedge(fields[pick(rng)], fields[pick(rng)]);
        }
        if (pi.is_zero() || schouten(pi, pi).is_zero()) continue;
        d.pi = FormedMultiVector(pi);
        break;
    }
    if (d.pi.is_zero()) throw std::logic_error("p3_demo: no bivector with [Pi,Pi] != 0 found");
    d.model.h0_sq = LabeledBasis("H0(^2)", std::vector<FormedMultiVector>{d.pi});
    d.obstruction = primary_obstruction(d.model, d.pi, FormedMultiVector(MultiVector(c)));
    return d;
}

}  // namespace poissonlab
