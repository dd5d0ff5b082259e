#include "poissonlab/products.hpp"

#include <random>

#include "poissonlab/expr.hpp"
#include "poissonlab/ruled.hpp"

namespace poissonlab {

namespace {

LaurentPoly sym(const std::string& n) { return LaurentPoly::var(n); }

std::string group_name(int i, int j) {
    return "H" + std::to_string(i) + (j == 1 ? "(Theta)" : "(^" + std::to_string(j) + "Theta)");
}

FormedMultiVector el(const Chart& c, IndexTuple idx, const LaurentPoly& f, IndexTuple dbar = {}) {
    return FormedMultiVector(MultiVector::term(c, std::move(idx), f), std::move(dbar));
}

LaurentPoly quad(const LaurentPoly& a, const LaurentPoly& b, const LaurentPoly& c, Var xi) {
    LaurentPoly x = LaurentPoly::var(xi);
    return a + b * x + c * x * x;
}

std::vector<LaurentPoly> xi_powers(Var xi) {
    LaurentPoly x = LaurentPoly::var(xi);
    return {LaurentPoly(1), x, x * x};
}

std::vector<std::string> chart_names(const Chart& c) {
    std::vector<std::string> out;
    for (Var v : c.vars) out.push_back(var_name(v));
    return out;
}

bool is_zero_constant(const LaurentPoly& p) { return p.is_zero(); }

LaurentPoly d_dt_at_zero(const LaurentPoly& p, Var t, const Substitution& zero) {
    return lp_substitute(lp_partial(p, t), zero);
}

FormedMultiVector tangent(const FormedMultiVector& f, Var t, const Substitution& zero) {
    return f.map_coeffs([&](const LaurentPoly& c) { return d_dt_at_zero(c, t, zero); });
}

LinMap bracket_map(const MultiVector& lambda0, const LabeledBasis& dom, const LabeledBasis& cod) {
    FormedMultiVector l0(lambda0);
    if (cod.size() == 0) return LinMap{dom, cod, {}, {}};
    return matrix_of_map([&](const FormedMultiVector& x) { return schouten_formed(l0, x); }, dom, cod,
                         monomial_reducer(cod));
}

std::size_t rank_of(const LinMap& m) { return m.rows() ? generic_rank(m) : 0; }

// Exchange z1 and z2 together with dz̄1 and dz̄2.
FormedMultiVector swap12(const FormedMultiVector& f) {
    const Chart& c = f.chart();
    ChartMap s{c, c, {{c.vars[0], LaurentPoly::var(c.vars[1])}, {c.vars[1], LaurentPoly::var(c.vars[0])}},
               {{c.vars[0], LaurentPoly::var(c.vars[1])}, {c.vars[1], LaurentPoly::var(c.vars[0])}}};
    FormedMultiVector out(c);
    for (auto& [dbar, mv] : f.parts()) {
        IndexTuple d = dbar;
        for (int& i : d)
            if (i < 2) i = 1 - i;
        int sign = sort_sign(d);
        MultiVector img = pushforward(s, mv);
        out += FormedMultiVector(sign > 0 ? img : -img, d);
    }
    return out;
}

Chart ep1_chart() { return Chart("ExP1", {"z", "xi"}); }
Chart tp1_chart() { return Chart("TxP1", {"z1", "z2", "xi"}); }

std::vector<LaurentPoly> cokernel_F(const LinMap& d0_gamma) {
    LabeledBasis rep = cokernel_rep(d0_gamma);
    if (rep.size() != 1) throw std::logic_error("expected a one-dimensional cokernel");
    // back to coefficients of 1, xi, xi^2
    Vector v = monomial_reducer(d0_gamma.codomain)(rep[0]);
    return {v[0], v[1], v[2]};
}

void require_outside_image(const LinMap& d0, const std::vector<LaurentPoly>& F) {
    if (F.size() != 3) throw std::invalid_argument("F needs three coefficients");
    Matrix m = d0.entries;
    for (std::size_t i = 0; i < 3; ++i) m[i].push_back(F[i]);
    if (generic_rank(m, d0.cols() + 1) == generic_rank(d0)) throw ConstraintViolation("F lies in the image of [L0,-]");
}

}  // namespace

// ---------------------------------------------------------------- models

const LabeledBasis& ProductModel::basis(int i, int j) const {
    std::string nm = group_name(i, j);
    for (auto& b : bases)
        if (b.space_name == nm) return b;
    throw std::out_of_range(name() + " has no " + nm);
}

bool ProductModel::has(int i, int j) const {
    std::string nm = group_name(i, j);
    for (auto& b : bases)
        if (b.space_name == nm) return true;
    return false;
}

std::string ProductModel::name() const {
    switch (kind) {
        case ProductKind::EP1:
            return "ExP1";
        case ProductKind::TP1:
            return "TxP1";
        case ProductKind::Torus:
            return "T^" + std::to_string(n);
    }
    return "";
}

ProductModel ep1_model() {
    ProductModel p;
    p.kind = ProductKind::EP1;
    p.n = 1;
    p.chart = ep1_chart();
    const Chart& c = p.chart;
    Var xi = c.vars[1];
    auto xs = xi_powers(xi);
    for (int i : {0, 1, 2}) {
        IndexTuple dbar = i == 1 ? IndexTuple{0} : IndexTuple{};
        std::vector<FormedMultiVector> theta, sq;
        if (i < 2) {
            theta.push_back(el(c, {0}, 1, dbar));
            for (auto& x : xs) theta.push_back(el(c, {1}, x, dbar));
            for (auto& x : xs) sq.push_back(el(c, {0, 1}, x, dbar));
        }
        p.bases.emplace_back(group_name(i, 1), theta);
        p.bases.emplace_back(group_name(i, 2), sq);
    }
    return p;
}

ProductModel tp1_model() {
    ProductModel p;
    p.kind = ProductKind::TP1;
    p.n = 2;
    p.chart = tp1_chart();
    const Chart& c = p.chart;
    auto xs = xi_powers(c.vars[2]);
    const IndexTuple d1{0}, d2{1}, d12{0, 1};
    auto add = [&](int i, int j, std::vector<FormedMultiVector> v) { p.bases.emplace_back(group_name(i, j), v); };

    std::vector<FormedMultiVector> v;
    v = {el(c, {0}, 1), el(c, {1}, 1)};
    for (auto& x : xs) v.push_back(el(c, {2}, x));
    add(0, 1, v);

    v = {el(c, {0}, 1, d1), el(c, {1}, 1, d1), el(c, {0}, 1, d2), el(c, {1}, 1, d2)};
    for (auto& d : {d1, d2})
        for (auto& x : xs) v.push_back(el(c, {2}, x, d));
    add(1, 1, v);

    v = {el(c, {0}, 1, d12), el(c, {1}, 1, d12)};
    for (auto& x : xs) v.push_back(el(c, {2}, x, d12));
    add(2, 1, v);

    v = {el(c, {0, 1}, 1)};
    for (auto& x : xs) v.push_back(el(c, {1, 2}, x));
    for (auto& x : xs) v.push_back(el(c, {2, 0}, x));
    add(0, 2, v);

    v = {el(c, {0, 1}, 1, d1), el(c, {0, 1}, 1, d2)};
    for (auto& x : xs) v.push_back(el(c, {0, 2}, x, d1));
    for (auto& x : xs) v.push_back(el(c, {1, 2}, x, d1));
    for (auto& x : xs) v.push_back(el(c, {1, 2}, x, d2));
    for (auto& x : xs) v.push_back(el(c, {0, 2}, x, d2));
    add(1, 2, v);

    v = {el(c, {0, 1}, 1, d12)};
    for (auto& x : xs) v.push_back(el(c, {0, 2}, x, d12));
    for (auto& x : xs) v.push_back(el(c, {1, 2}, x, d12));
    add(2, 2, v);

    v.clear();
    for (auto& x : xs) v.push_back(el(c, {0, 1, 2}, x));
    add(0, 3, v);

    v.clear();
    for (auto& d : {d1, d2})
        for (auto& x : xs) v.push_back(el(c, {0, 1, 2}, x, d));
    add(1, 3, v);
    return p;
}

ProductModel torus_model(int n) {
    if (n < 1) throw std::invalid_argument("torus dimension must be positive");
    ProductModel p;
    p.kind = ProductKind::Torus;
    p.n = n;
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("z" + std::to_string(i));
    p.chart = Chart("T" + std::to_string(n), names);
    const Chart& c = p.chart;
    std::vector<FormedMultiVector> t0, t1, s0, s1;
    for (int a = 0; a < n; ++a) t0.push_back(el(c, {a}, 1));
    for (int j = 0; j < n; ++j)
        for (int a = 0; a < n; ++a) t1.push_back(el(c, {a}, 1, {j}));
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) s0.push_back(el(c, {a, b}, 1));
    for (int j = 0; j < n; ++j)
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) s1.push_back(el(c, {a, b}, 1, {j}));
    p.bases.emplace_back(group_name(0, 1), t0);
    p.bases.emplace_back(group_name(1, 1), t1);
    p.bases.emplace_back(group_name(0, 2), s0);
    p.bases.emplace_back(group_name(1, 2), s1);
    return p;
}

// ---------------------------------------------------------------- E x P1

MultiVector ep1_lambda0(const LaurentPoly& A, const LaurentPoly& B, const LaurentPoly& C) {
    Chart c = ep1_chart();
    return MultiVector::term(c, {0, 1}, quad(A, B, C, c.vars[1]));
}

DeformationComplexModel ep1_deformation_model(const LaurentPoly& A, const LaurentPoly& B, const LaurentPoly& C) {
    ProductModel p = ep1_model();
    DeformationComplexModel md;
    md.manifold = p.name();
    bool zero = A.is_zero() && B.is_zero() && C.is_zero();
    md.stratum = zero ? "L0=0" : "L0!=0";
    md.chart = p.chart;
    md.lambda0 = FormedMultiVector(ep1_lambda0(A, B, C));
    md.h0_theta = p.basis(0, 1);
    md.h0_sq = p.basis(0, 2);
    md.h1_theta = p.basis(1, 1);
    md.h1_sq = p.basis(1, 2);
    md.reduce_h0_sq = monomial_reducer(md.h0_sq);
    md.reduce_h1_sq = monomial_reducer(md.h1_sq);
    return md;
}

EP1Matrices ep1_bracket_matrices(const LaurentPoly& A, const LaurentPoly& B, const LaurentPoly& C) {
    DeformationComplexModel md = ep1_deformation_model(A, B, C);
    return {md.d1(), md.d0()};
}

void require_nonzero_quadratic(const LaurentPoly& A, const LaurentPoly& B, const LaurentPoly& C) {
    if (is_zero_constant(A) && is_zero_constant(B) && is_zero_constant(C))
        throw ConstraintViolation("(A,B,C) must not be (0,0,0)");
}

std::size_t ks_rank(const DeformationComplexModel& m, const MCSolution& s) {
    Substitution zero;
    for (auto& p : s.params) zero[intern(p)] = LaurentPoly();
    Reducer h1 = monomial_reducer(m.h1_theta);
    LinMap d0 = m.d0();
    std::size_t n0 = m.h0_sq.size(), n1 = m.h1_theta.size();
    Matrix cols;
    for (std::size_t j = 0; j < d0.cols(); ++j) {
        Vector v = d0.column(j);
        v.resize(n0 + n1);
        cols.push_back(v);
    }
    std::size_t r0 = cols.empty() ? 0 : generic_rank(transpose(cols), cols.size());
    FormedMultiVector total = s.total();
    for (auto& p : s.params) {
        FormedMultiVector tv = tangent(total, intern(p), zero);
        Vector lam = m.reduce_h0_sq(tv.form_degree_part(0));
        Vector th = h1(tv.form_degree_part(1));
        Vector v = lam;
        v.insert(v.end(), th.begin(), th.end());
        cols.push_back(v);
    }
    return generic_rank(transpose(cols), cols.size()) - r0;
}

MCSolution ep1_mc_solution(const LaurentPoly& A, const LaurentPoly& B, const LaurentPoly& C,
                           std::optional<std::vector<LaurentPoly>> F) {
    require_nonzero_quadratic(A, B, C);
    DeformationComplexModel md = ep1_deformation_model(A, B, C);
    LinMap d0 = md.d0();
    // the d/dz column is zero; the rest acts on the d/dxi coefficients
    LinMap gamma = d0;
    gamma.domain = LabeledBasis("gamma", std::vector<FormedMultiVector>(d0.domain.elements.begin() + 1, d0.domain.elements.end()));
    for (auto& row : gamma.entries) row.erase(row.begin());
    std::vector<LaurentPoly> f = F ? *F : cokernel_F(gamma);
    require_outside_image(gamma, f);

    const Chart& c = md.chart;
    Var xi = c.vars[1];
    LaurentPoly t0 = sym("t0"), t1 = sym("t1"), t2 = sym("t2");
    LaurentPoly Fp = quad(f[0], f[1], f[2], xi), P = quad(A, B, C, xi);
    MCSolution s;
    s.name = "ep1";
    s.lambda0 = md.lambda0.part({});
    s.params = {"t0", "t1", "t2"};
    s.beta = el(c, {0, 1}, t0 * Fp);
    s.alpha = el(c, {0}, t1, {0}) + el(c, {1}, t2 * P, {0}) + el(c, {1}, t0 * t2 * Fp, {0});
    return s;
}

Certificate ep1_classify(const LaurentPoly& A, const LaurentPoly& B, const LaurentPoly& C) {
    DeformationComplexModel md = ep1_deformation_model(A, B, C);
    Certificate cert;
    cert.manifold = md.manifold;
    cert.stratum = md.stratum;
    cert.lambda0 = md.lambda0.str();
    cert.chart = chart_names(md.chart);
    if (md.stratum == "L0=0") {
        const Chart& c = md.chart;
        FormedMultiVector a = el(c, {0, 1}, 1), b = el(c, {1}, LaurentPoly::var(c.vars[1]), {0});
        Vector cls = md.reduce_h1_sq(schouten_formed(a, b));
        cert.verdict = Verdict::Obstructed;
        cert.witness_a = a.str();
        cert.witness_b = b.str();
        cert.class_repr = md.h1_sq.combine(cls).str();
        std::string why;
        if (!verify_certificate(md, cert, &why)) throw std::logic_error("E x P1 witness does not verify: " + why);
        return cert;
    }
    Hypercohomology h = hypercohomology(md);
    MCSolution s = ep1_mc_solution(A, B, C);
    if (s.defect().is_zero() && ks_rank(md, s) == h.h1) {
        cert.verdict = Verdict::UnobstructedMC;
        cert.solution = s.name;
    } else {
        cert.verdict = Verdict::Undetermined;
        cert.reason = "the Maurer-Cartan family did not verify";
    }
    return cert;
}

// ---------------------------------------------------------------- T x P1

TP1Class TP1Class::one(LaurentPoly D) { return TP1Class{1, std::move(D), {}, {}, {}, {}}; }

TP1Class TP1Class::two(LaurentPoly D, LaurentPoly A, LaurentPoly B, LaurentPoly C, LaurentPoly k) {
    return TP1Class{2, std::move(D), std::move(A), std::move(B), std::move(C), std::move(k)};
}

TP1Class TP1Class::three(LaurentPoly D, LaurentPoly A, LaurentPoly B, LaurentPoly C) {
    return TP1Class{3, std::move(D), std::move(A), std::move(B), std::move(C), {}};
}

TP1Class TP1Class::generic(int id) {
    switch (id) {
        case 1:
            return one(sym("D"));
        case 2:
            return two(sym("D"), sym("A"), sym("B"), sym("C"), sym("k"));
        case 3:
            return three(sym("D"), sym("A"), sym("B"), sym("C"));
    }
    throw std::invalid_argument("T x P1 classes are 1, 2 and 3");
}

void TP1Class::validate() const {
    if (id < 1 || id > 3) throw ConstraintViolation("T x P1 classes are 1, 2 and 3");
    if (id == 1 && !(A.is_zero() && B.is_zero() && C.is_zero() && k.is_zero()))
        throw ConstraintViolation("class 1 takes only D");
    if (id > 1) require_nonzero_quadratic(A, B, C);
    if (id == 3 && !k.is_zero()) throw ConstraintViolation("class 3 has no k");
}

MultiVector TP1Class::lambda0() const {
    Chart c = tp1_chart();
    LaurentPoly P = quad(A, B, C, c.vars[2]);
    MultiVector l = MultiVector::term(c, {0, 1}, D);
    if (id == 2) l += MultiVector::term(c, {1, 2}, P) + MultiVector::term(c, {2, 0}, k * P);
    if (id == 3) l += MultiVector::term(c, {2, 0}, P);
    return l;
}

std::string TP1Class::label() const { return "class " + std::to_string(id); }

DeformationComplexModel tp1_deformation_model(const TP1Class& c) {
    c.validate();
    ProductModel p = tp1_model();
    DeformationComplexModel md;
    md.manifold = p.name();
    md.stratum = c.label();
    md.chart = p.chart;
    md.lambda0 = FormedMultiVector(c.lambda0());
    md.h0_theta = p.basis(0, 1);
    md.h0_sq = p.basis(0, 2);
    md.h1_theta = p.basis(1, 1);
    md.h1_sq = p.basis(1, 2);
    md.h0_cube = p.basis(0, 3);
    md.reduce_h0_sq = monomial_reducer(md.h0_sq);
    md.reduce_h1_sq = monomial_reducer(md.h1_sq);
    md.reduce_h0_cube = monomial_reducer(*md.h0_cube);
    return md;
}

TP1Hyper tp1_hypercohomology(const TP1Class& c) {
    c.validate();
    ProductModel p = tp1_model();
    MultiVector l0 = c.lambda0();
    auto rk = [&](int i, int j) { return rank_of(bracket_map(l0, p.basis(i, j), p.basis(i, j + 1))); };
    std::size_t r0 = rk(0, 1), s0 = rk(0, 2), r1 = rk(1, 1), s1 = rk(1, 2), q = rk(2, 1);
    TP1Hyper h;
    h.h0 = p.basis(0, 1).size() - r0;
    h.h1 = (p.basis(0, 2).size() - s0 - r0) + (p.basis(1, 1).size() - r1);
    h.h2 = (p.basis(0, 3).size() - s0) + (p.basis(1, 2).size() - s1 - r1) + (p.basis(2, 1).size() - q);
    return h;
}

namespace {

struct TP1Pieces {
    MultiVector lambda0;
    FormedMultiVector lambda, lambda_p, phi, phi_p;
    std::vector<std::string> params;
};

TP1Pieces tp1_pieces(const TP1Class& c, std::optional<std::vector<LaurentPoly>> F) {
    c.validate();
    if (c.id == 1) throw ConstraintViolation("class 1 has no Maurer-Cartan family");
    if (c.id == 3) {
        // z1 <-> z2 turns class 3 into class 2 with D, A, B, C negated and k = 0
        TP1Pieces q = tp1_pieces(TP1Class::two(-c.D, -c.A, -c.B, -c.C, LaurentPoly()), std::move(F));
        q.lambda0 = swap12(FormedMultiVector(q.lambda0)).part({});
        q.lambda = swap12(q.lambda);
        q.lambda_p = swap12(q.lambda_p);
        q.phi = swap12(q.phi);
        q.phi_p = swap12(q.phi_p);
        return q;
    }
    Chart ch = tp1_chart();
    Var xi = ch.vars[2];
    std::vector<LaurentPoly> f;
    if (F) {
        f = *F;
        require_outside_image(ep1_bracket_matrices(c.A, c.B, c.C).h0, {f[0], f[1], f[2]});
    } else {
        LinMap gamma = ep1_bracket_matrices(c.A, c.B, c.C).h0;
        gamma.domain = LabeledBasis("gamma", std::vector<FormedMultiVector>(gamma.domain.elements.begin() + 1,
                                                                            gamma.domain.elements.end()));
        for (auto& row : gamma.entries) row.erase(row.begin());
        f = cokernel_F(gamma);
    }
    LaurentPoly Fp = quad(f[0], f[1], f[2], xi), P = quad(c.A, c.B, c.C, xi);
    std::vector<LaurentPoly> t;
    TP1Pieces q;
    for (int i = 0; i <= 8; ++i) {
        q.params.push_back("t" + std::to_string(i));
        t.push_back(sym(q.params.back()));
    }
    const IndexTuple d1{0}, d2{1};
    q.lambda0 = c.lambda0();
    q.lambda = el(ch, {0, 1}, t[0]) + el(ch, {1, 2}, t[2] * Fp) + el(ch, {2, 0}, t[1] * P + c.k * t[2] * Fp);
    q.lambda_p = el(ch, {2, 0}, t[1] * t[2] * Fp);
    q.phi = el(ch, {0}, t[3], d1) + el(ch, {1}, t[4], d1) + el(ch, {0}, t[5], d2) + el(ch, {1}, t[6], d2) +
            el(ch, {2}, t[7] * P, d1) + el(ch, {2}, t[8] * P, d2);
    q.phi_p = el(ch, {2}, t[2] * t[7] * Fp, d1) + el(ch, {2}, t[2] * t[8] * Fp, d2);
    return q;
}

}  // namespace

MCSolution tp1_mc_solution(const TP1Class& c, std::optional<std::vector<LaurentPoly>> F) {
    TP1Pieces q = tp1_pieces(c, std::move(F));
    MCSolution s;
    s.name = c.id == 2 ? "tp1" : "tp1-swap";
    s.lambda0 = q.lambda0;
    s.params = q.params;
    s.beta = q.lambda + q.lambda_p;
    s.alpha = q.phi + q.phi_p;
    return s;
}

TP1Identities tp1_identities(const TP1Class& c, bool with_lambda_prime, bool with_phi_prime,
                             std::optional<std::vector<LaurentPoly>> F) {
    TP1Pieces q = tp1_pieces(c, std::move(F));
    FormedMultiVector beta = q.lambda, alpha = q.phi;
    if (with_lambda_prime) beta += q.lambda_p;
    if (with_phi_prime) alpha += q.phi_p;
    FormedMultiVector l0(q.lambda0);
    LaurentPoly half(GaussianRational(1, 2));
    TP1Identities id;
    // ∂̄ vanishes on all of these: the coefficients are holomorphic
    id.poisson = schouten_formed(l0, beta) + half * schouten_formed(beta, beta);
    id.mixed = schouten_formed(l0, alpha) + schouten_formed(beta, alpha);
    id.complex = half * schouten_formed(alpha, alpha);
    return id;
}

Certificate tp1_classify(const TP1Class& c) {
    DeformationComplexModel md = tp1_deformation_model(c);
    TP1Hyper h = tp1_hypercohomology(c);
    Certificate cert;
    cert.manifold = md.manifold;
    cert.stratum = md.stratum;
    cert.lambda0 = md.lambda0.str();
    cert.chart = chart_names(md.chart);
    if (c.id == 1) {
        // [a, b] is a nonzero class in ker(H¹(∧²) → H¹(∧³)) / im d1, and
        // [a, a] = [b, b] = 0, so (a, b) has a nonzero primary obstruction
        const Chart& ch = md.chart;
        FormedMultiVector a = el(ch, {1, 2}, 1), b = el(ch, {2}, LaurentPoly::var(ch.vars[2]), {0});
        ObstructionClass o = primary_obstruction(md, a, b);
        if (!o.nonzero() || !o.cube.is_zero() || !o.theta2.is_zero())
            throw std::logic_error("T x P1 class 1 witness has no obstruction");
        Vector cls = md.reduce_h1_sq(schouten_formed(a, b));
        cert.verdict = Verdict::Obstructed;
        cert.witness_a = a.str();
        cert.witness_b = b.str();
        cert.class_repr = md.h1_sq.combine(cls).str();
        std::string why;
        if (!verify_certificate(md, cert, &why)) throw std::logic_error("T x P1 witness does not verify: " + why);
        return cert;
    }
    MCSolution s = tp1_mc_solution(c);
    if (s.defect().is_zero() && ks_rank(md, s) == h.h1) {
        cert.verdict = Verdict::UnobstructedMC;
        cert.solution = s.name;
    } else {
        cert.verdict = Verdict::Undetermined;
        cert.reason = "the Maurer-Cartan family did not verify";
    }
    return cert;
}

// ---------------------------------------------------------------- torus

MultiVector torus_lambda0(int n) {
    ProductModel p = torus_model(n);
    MultiVector l(p.chart);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            l += MultiVector::term(p.chart, {a, b}, sym("b" + std::to_string(a + 1) + "_" + std::to_string(b + 1)));
    return l;
}

std::size_t torus_dims(int n, const std::optional<MultiVector>& lambda0) {
    ProductModel p = torus_model(n);
    MultiVector l0 = lambda0 ? *lambda0 : torus_lambda0(n);
    if (l0.chart() != p.chart && !l0.is_zero()) throw ChartMismatch("Λ₀ must live on " + p.chart.name);
    std::set<Var> zs = p.chart.var_set();
    for (auto& [idx, c] : l0.components())
        for (Var v : c.vars())
            if (zs.count(v)) throw std::invalid_argument("Λ₀ must have constant coefficients");
    FormedMultiVector fl(l0.is_zero() ? MultiVector(p.chart) : l0);
    for (auto& b : p.bases)
        for (auto& e : b.elements)
            if (!schouten_formed(fl, e).is_zero()) throw std::logic_error("[Λ₀, -] is not zero on " + e.str());
    return p.basis(1, 1).size() + p.basis(0, 2).size();
}

DeformationComplexModel torus_deformation_model(int n) {
    ProductModel p = torus_model(n);
    DeformationComplexModel md;
    md.manifold = p.name();
    md.stratum = "constant";
    md.chart = p.chart;
    md.lambda0 = FormedMultiVector(torus_lambda0(n));
    md.h0_theta = p.basis(0, 1);
    md.h0_sq = p.basis(0, 2);
    md.h1_theta = p.basis(1, 1);
    md.h1_sq = p.basis(1, 2);
    md.reduce_h0_sq = monomial_reducer(md.h0_sq);
    md.reduce_h1_sq = monomial_reducer(md.h1_sq);
    return md;
}

MCSolution torus_mc_solution(int n) {
    ProductModel p = torus_model(n);
    MCSolution s;
    s.name = p.name();
    s.lambda0 = torus_lambda0(n);
    s.beta = FormedMultiVector(p.chart);
    s.alpha = FormedMultiVector(p.chart);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            s.params.push_back("v" + std::to_string(a + 1) + "_" + std::to_string(b + 1));
            s.beta += el(p.chart, {a, b}, sym(s.params.back()));
        }
    for (int a = 0; a < n; ++a)
        for (int j = 0; j < n; ++j) {
            s.params.push_back("t" + std::to_string(a + 1) + "_" + std::to_string(j + 1));
            s.alpha += el(p.chart, {a}, sym(s.params.back()), {j});
        }
    return s;
}

// ---------------------------------------------------------------- tables

std::vector<ProductRow> product_rows() {
    std::vector<ProductRow> rows;
    {
        std::mt19937_64 rng(7);
        RuledPoisson l0 = RuledPoisson::random(0, rng, false);
        Hypercohomology h = hypercohomology(ruled_model(l0));
        RuledRow t = ruled_verdict(l0);
        rows.push_back({"P1xP1", "any", h.h1, t.h2, t.certificate.verdict});
    }
    {
        DeformationComplexModel md = torus_deformation_model(2);
        MCSolution s = torus_mc_solution(2);
        std::size_t h1 = torus_dims(2);
        bool ok = s.defect().is_zero() && ks_rank(md, s) == h1;
        rows.push_back({"ExE", "any", h1, std::nullopt, ok ? Verdict::UnobstructedMC : Verdict::Undetermined});
    }
    {
        LaurentPoly A = sym("A"), B = sym("B"), C = sym("C");
        Hypercohomology h = hypercohomology(ep1_deformation_model(A, B, C));
        rows.push_back({"ExP1", "L0!=0", h.h1, h.h2, ep1_classify(A, B, C).verdict});
        Hypercohomology z = hypercohomology(ep1_deformation_model(0, 0, 0));
        rows.push_back({"ExP1", "L0=0", z.h1, z.h2, ep1_classify(0, 0, 0).verdict});
    }
    for (int id : {1, 2, 3}) {
        TP1Class c = TP1Class::generic(id);
        TP1Hyper h = tp1_hypercohomology(c);
        rows.push_back({"TxP1", c.label(), h.h1, h.h2, tp1_classify(c).verdict});
    }
    return rows;
}

}  // namespace poissonlab
