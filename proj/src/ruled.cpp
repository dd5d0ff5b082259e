#include "poissonlab/ruled.hpp"

#include <algorithm>

#include "poissonlab/expr.hpp"

namespace poissonlab {

namespace {

int g_max_m = 12;

Chart u1_chart() { return Chart("U1", {"z", "xi"}); }
Chart u2_chart() { return Chart("U2", {"zp", "xip"}); }

LaurentPoly zpow(int k) { return LaurentPoly::var("z", k); }
LaurentPoly xipow(int k) { return LaurentPoly::var("xi", k); }

const IndexTuple kDz{0}, kDxi{1}, kDzDxi{0, 1};

// Terms of p with a negative exponent in one of `vars`.
LaurentPoly negative_part(const LaurentPoly& p, const std::set<Var>& vars) {
    LaurentPoly r;
    for (auto& [mono, c] : p.terms()) {
        bool neg = false;
        for (auto& [v, e] : mono.pairs())
            if (e < 0 && vars.count(v)) neg = true;
        if (neg) r += LaurentPoly::term(mono, c);
    }
    return r;
}

// p = sum_{j,k} c_jk(params) z^k xi^j
std::map<std::pair<int, int>, LaurentPoly> split_z_xi(const LaurentPoly& p) {
    Var z = intern("z"), xi = intern("xi");
    std::map<std::pair<int, int>, LaurentPoly> out;
    for (auto& [mono, c] : p.collect(std::set<Var>{z, xi})) out[{mono.exponent(xi), mono.exponent(z)}] += c;
    return out;
}

const MultiVector& plain(const FormedMultiVector& f, MultiVector& store, const std::string& what) {
    if (f.parts().size() > 1 || (f.parts().size() == 1 && !f.parts().begin()->first.empty()))
        throw NotInSpan(what + ": field carries antiholomorphic forms");
    store = f.part({});
    return store;
}

bool is_coordinate(Var v) {
    auto& r = reserved_chart_names();
    return std::find(r.begin(), r.end(), var_name(v)) != r.end();
}

void require_chart(const MultiVector& v, const std::string& what) {
    if (!v.is_zero() && v.chart() != u1_chart()) throw ChartMismatch(what + ": expected a field on (z, xi)");
}

LaurentPoly random_poly_z(std::mt19937_64& rng, int lo, int hi, int bound = 3) {
    std::uniform_int_distribution<int> c(-bound, bound);
    LaurentPoly p;
    for (int k = lo; k <= hi; ++k) p += LaurentPoly(c(rng)) * zpow(k);
    return p;
}

}  // namespace

int ruled_max_m() { return g_max_m; }
void set_ruled_max_m(int m) {
    if (m < 0) throw std::invalid_argument("max m must be nonnegative");
    g_max_m = m;
}

RuledSurface::RuledSurface(int m_) : m(m_), u1(u1_chart()), u2(u2_chart()) {
    if (m < 0) throw std::invalid_argument("F_m needs m >= 0");
    if (m > g_max_m) throw std::invalid_argument("m = " + std::to_string(m) + " exceeds the cap " + std::to_string(g_max_m));
    transition.source = u1;
    transition.target = u2;
    transition.forward = {{intern("zp"), zpow(-1)}, {intern("xip"), zpow(m) * xipow(1)}};
    transition.inverse = {{intern("z"), LaurentPoly::var("zp", -1)},
                          {intern("xi"), LaurentPoly::var("zp", m) * LaurentPoly::var("xip")}};
}

bool RuledSurface::holomorphic_on_u2(const MultiVector& a) const { return to_u2(a).is_holomorphic(); }

// ---------------------------------------------------------------- Poisson structures

RuledPoisson::RuledPoisson(int m_, LaurentPoly d_, LaurentPoly e_, LaurentPoly f_)
    : m(m_), d(std::move(d_)), e(std::move(e_)), f(std::move(f_)) {
    RuledSurface s(m);
    Var z = intern("z");
    auto check = [&](const LaurentPoly& p, int cap, const char* nm) {
        for (Var v : p.vars())
            if (v != z && is_coordinate(v))
                throw std::invalid_argument(std::string(nm) + "(z) must not involve " + var_name(v));
        if (p.is_zero()) return;
        if (p.min_degree(z) < 0 || p.max_degree(z) > cap)
            throw std::invalid_argument(std::string(nm) + "(z) = " + p.str() + " violates the degree cap " +
                                        std::to_string(cap) + " on F_" + std::to_string(m));
    };
    check(d, 2 - m, "d");
    check(e, 2, "e");
    check(f, m + 2, "f");
    if (!s.holomorphic_on_u2(bivector())) throw std::invalid_argument("bivector is not holomorphic on U2");
}

MultiVector RuledPoisson::bivector() const {
    return MultiVector::term(u1_chart(), kDzDxi, d + e * xipow(1) + f * xipow(2));
}

RuledPoisson RuledPoisson::from_bivector(int m, const MultiVector& b) {
    require_chart(b, "RuledPoisson");
    for (auto& [idx, c] : b.components())
        if (idx != kDzDxi) throw std::invalid_argument("not a bivector d/dz^d/dxi");
    LaurentPoly d, e, f;
    for (auto& [jk, c] : split_z_xi(b.coeff(kDzDxi))) {
        auto [j, k] = jk;
        LaurentPoly t = c * zpow(k);
        if (j == 0) d += t;
        else if (j == 1) e += t;
        else if (j == 2) f += t;
        else throw std::invalid_argument("bivector has xi-degree above 2");
    }
    return RuledPoisson(m, d, e, f);
}

RuledPoisson RuledPoisson::parse(int m, const std::string& src) {
    return from_bivector(m, parse_field(src, u1_chart()).part({}));
}

RuledPoisson RuledPoisson::random(int m, std::mt19937_64& rng, bool e_zero, int bound) {
    LaurentPoly d = m <= 2 ? random_poly_z(rng, 0, 2 - m, bound) : LaurentPoly();
    LaurentPoly e = e_zero ? LaurentPoly() : random_poly_z(rng, 0, 2, bound);
    if (!e_zero && e.is_zero()) e = zpow(std::uniform_int_distribution<int>(0, 2)(rng));
    LaurentPoly f = random_poly_z(rng, 0, m + 2, bound);
    return RuledPoisson(m, d, e, f);
}

// ---------------------------------------------------------------- bases

RuledBases h_bases(int m) {
    RuledSurface s(m);  // validates m
    Chart c = u1_chart();
    RuledBases b;
    std::vector<MultiVector> t0{MultiVector::term(c, kDz, 1), MultiVector::term(c, kDz, zpow(1))};
    if (m == 0) {
        t0.push_back(MultiVector::term(c, kDz, zpow(2)));
        t0.push_back(MultiVector::term(c, kDxi, 1));
        t0.push_back(MultiVector::term(c, kDxi, xipow(1)));
        t0.push_back(MultiVector::term(c, kDxi, xipow(2)));
    } else {
        t0.push_back(MultiVector::term(c, kDz, zpow(2)) -
                     MultiVector::term(c, kDxi, LaurentPoly(m) * zpow(1) * xipow(1)));
        t0.push_back(MultiVector::term(c, kDxi, xipow(1)));
        for (int k = 0; k <= m; ++k) t0.push_back(MultiVector::term(c, kDxi, zpow(k) * xipow(2)));
    }
    b.h0_theta = LabeledBasis("H0(Theta)", t0);

    std::vector<MultiVector> s0;
    for (int k = 0; k <= 2 - m; ++k) s0.push_back(MultiVector::term(c, kDzDxi, zpow(k)));
    for (int k = 0; k <= 2; ++k) s0.push_back(MultiVector::term(c, kDzDxi, zpow(k) * xipow(1)));
    for (int k = 0; k <= m + 2; ++k) s0.push_back(MultiVector::term(c, kDzDxi, zpow(k) * xipow(2)));
    b.h0_sq = LabeledBasis("H0(^2Theta)", s0);

    std::vector<MultiVector> t1, s1;
    for (int k = 1; k <= m - 1; ++k) t1.push_back(MultiVector::term(c, kDxi, zpow(-k)));
    for (int k = 1; k <= m - 3; ++k) s1.push_back(MultiVector::term(c, kDzDxi, zpow(-k)));
    b.h1_theta = LabeledBasis("H1(Theta)", t1);
    b.h1_sq = LabeledBasis("H1(^2Theta)", s1);
    return b;
}

Reducer h1_theta_reducer(int m) {
    return [m](const FormedMultiVector& f) {
        MultiVector store;
        const MultiVector& v = plain(f, store, "H1(Theta)");
        require_chart(v, "H1(Theta)");
        Vector out(std::max(m - 1, 0));
        for (auto& [idx, c] : v.components()) {
            if (idx != kDz && idx != kDxi) throw NotInSpan("H1(Theta): not a vector field: " + v.str());
            for (auto& [jk, coef] : split_z_xi(c)) {
                auto [j, k] = jk;
                if (idx == kDz && j != 0) throw NotInSpan("H1(Theta): d/dz coefficient depends on xi: " + v.str());
                if (j < 0 || j > 2) throw NotInSpan("H1(Theta): d/dxi coefficient has xi-degree outside 0..2");
                if (idx == kDxi && j == 0 && k <= -1 && k >= -(m - 1)) out[-k - 1] += coef;
            }
        }
        return out;
    };
}

Reducer h1_sq_reducer(int m) {
    return [m](const FormedMultiVector& f) {
        MultiVector store;
        const MultiVector& v = plain(f, store, "H1(^2Theta)");
        require_chart(v, "H1(^2Theta)");
        Vector out(std::max(m - 3, 0));
        for (auto& [idx, c] : v.components()) {
            if (idx != kDzDxi) throw NotInSpan("H1(^2Theta): not a bivector: " + v.str());
            for (auto& [jk, coef] : split_z_xi(c)) {
                auto [j, k] = jk;
                if (j < 0 || j > 2) throw NotInSpan("H1(^2Theta): xi-degree outside 0..2");
                if (j == 0 && k <= -1 && k >= -(m - 3)) out[-k - 1] += coef;
            }
        }
        return out;
    };
}

DeformationComplexModel ruled_model(const RuledPoisson& l0) {
    RuledBases b = h_bases(l0.m);
    DeformationComplexModel md;
    md.manifold = "F_" + std::to_string(l0.m);
    md.stratum = l0.m <= 3 ? "m<=3" : (l0.e.is_zero() ? "e=0" : "e!=0");
    md.chart = u1_chart();
    md.lambda0 = FormedMultiVector(l0.bivector());
    md.h0_theta = b.h0_theta;
    md.h0_sq = b.h0_sq;
    md.h1_theta = b.h1_theta;
    md.h1_sq = b.h1_sq;
    md.reduce_h0_sq = monomial_reducer(b.h0_sq);
    md.reduce_h1_sq = h1_sq_reducer(l0.m);
    return md;
}

RuledRow ruled_verdict(const RuledPoisson& l0) {
    DeformationComplexModel md = ruled_model(l0);
    RuledRow row;
    row.m = l0.m;
    LinMap d1 = md.d1();
    row.h2 = d1.rows() - (d1.rows() ? generic_rank(d1) : 0);
    row.certificate = witness_search(md);
    row.obstructed = row.certificate.verdict == Verdict::Obstructed;
    return row;
}

Certificate ruled_witness_certificate(const RuledPoisson& l0) {
    if (l0.m < 4 || !l0.e.is_zero())
        throw NotObstructedStratum("the witness needs m >= 4 and e(z) = 0 (got m = " + std::to_string(l0.m) +
                                   ", e = " + (l0.e.is_zero() ? std::string("0") : l0.e.str()) + ")");
    DeformationComplexModel md = ruled_model(l0);
    Chart c = u1_chart();
    FormedMultiVector a(MultiVector::term(c, kDzDxi, xipow(1)));
    FormedMultiVector b(MultiVector::term(c, kDxi, zpow(-1)));
    Certificate cert;
    cert.manifold = md.manifold;
    cert.stratum = md.stratum;
    cert.verdict = Verdict::Obstructed;
    cert.lambda0 = md.lambda0.str();
    cert.chart = {"z", "xi"};
    cert.witness_a = a.str();
    cert.witness_b = b.str();
    cert.class_repr = md.h1_sq.combine(md.reduce_h1_sq(schouten_formed(a, b))).str();
    std::string why;
    if (!verify_certificate(md, cert, &why)) throw std::logic_error("lemma witness failed to verify: " + why);
    return cert;
}

LabeledBasis hyper_h1(const RuledPoisson& l0) {
    Hypercohomology h = hypercohomology(ruled_model(l0));
    std::vector<FormedMultiVector> all = h.coker0.elements;
    all.insert(all.end(), h.ker1.elements.begin(), h.ker1.elements.end());
    return LabeledBasis("HH1", all);
}

// ---------------------------------------------------------------- splittings

std::optional<Split> split_theta(int m, const MultiVector& theta) {
    require_chart(theta, "split_theta");
    Chart c = u1_chart();
    Split s{MultiVector(c), MultiVector(c)};
    LaurentPoly a, b, cc;
    for (auto& [idx, coef] : theta.components()) {
        if (idx != kDz && idx != kDxi) throw std::invalid_argument("split_theta: not a vector field");
        for (auto& [jk, p] : split_z_xi(coef)) {
            auto [j, k] = jk;
            LaurentPoly t = p * zpow(k);
            if (idx == kDz) {
                if (j != 0) throw std::invalid_argument("split_theta: d/dz coefficient depends on xi");
                if (k >= 0) {
                    s.x1 += MultiVector::term(c, kDz, t);
                } else {
                    // t d/dz + m t xi/z ... is the U1 form of a field holomorphic on U2
                    MultiVector v = MultiVector::term(c, kDz, t) -
                                    MultiVector::term(c, kDxi, LaurentPoly(m) * t * zpow(-1) * xipow(1));
                    s.x2 -= v;
                    b += LaurentPoly(m) * t * zpow(-1);
                }
            } else if (j == 0) {
                a += t;
            } else if (j == 1) {
                b += t;
            } else if (j == 2) {
                cc += t;
            } else {
                throw std::invalid_argument("split_theta: xi-degree outside 0..2");
            }
        }
    }
    Var z = intern("z");
    for (auto& [k, p] : a.collect(z)) {
        LaurentPoly t = p * zpow(k);
        if (k >= 0) s.x1 += MultiVector::term(c, kDxi, t);
        else if (k <= -m) s.x2 -= MultiVector::term(c, kDxi, t);
        else return std::nullopt;
    }
    for (auto& [k, p] : b.collect(z)) {
        LaurentPoly t = p * zpow(k) * xipow(1);
        if (k >= 0) s.x1 += MultiVector::term(c, kDxi, t);
        else s.x2 -= MultiVector::term(c, kDxi, t);
    }
    for (auto& [k, p] : cc.collect(z)) {
        LaurentPoly t = p * zpow(k) * xipow(2);
        if (k >= 0) s.x1 += MultiVector::term(c, kDxi, t);
        else s.x2 -= MultiVector::term(c, kDxi, t);
    }
    return s;
}

std::optional<Split> split_sq(int m, const MultiVector& alpha) {
    require_chart(alpha, "split_sq");
    Chart c = u1_chart();
    Split s{MultiVector(c), MultiVector(c)};
    for (auto& [idx, coef] : alpha.components()) {
        if (idx != kDzDxi) throw std::invalid_argument("split_sq: not a bivector");
        for (auto& [jk, p] : split_z_xi(coef)) {
            auto [j, k] = jk;
            if (j < 0 || j > 2) throw std::invalid_argument("split_sq: xi-degree outside 0..2");
            MultiVector t = MultiVector::term(c, kDzDxi, p * zpow(k) * xipow(j));
            if (k >= 0) s.x1 += t;
            else if (j == 0 && k > 2 - m) return std::nullopt;
            else s.x2 -= t;
        }
    }
    return s;
}

// ---------------------------------------------------------------- families

ChartMap RuledFamily::transition() const {
    RuledSurface s(m);
    ChartMap t = s.transition;
    t.forward[intern("xip")] = zpow(m) * xipow(1) + h;
    Substitution back{{intern("z"), LaurentPoly::var("zp", -1)}};
    LaurentPoly zpm = LaurentPoly::var("zp", m);
    t.inverse[intern("xi")] = zpm * LaurentPoly::var("xip") - zpm * lp_substitute(h, back);
    return t;
}

FamilyReport check_family(const RuledFamily& fam) {
    RuledSurface s(fam.m);
    Chart c = u1_chart();
    FamilyReport r;
    Substitution at0;
    for (auto& p : fam.params) at0[intern(p)] = LaurentPoly();
    MultiVector l0 = fam.base.bivector();
    MultiVector lt = MultiVector::term(c, kDzDxi, fam.F);
    r.restricts = lp_substitute(fam.h, at0).is_zero() && lt.substitute(at0) == l0;

    ChartMap tr = fam.transition();
    if (!tr.check_inverse()) throw std::logic_error(fam.name + ": transition inverse is wrong");
    MultiVector pushed = pushforward(tr, lt);
    std::set<Var> u2vars = s.u2.var_set();
    r.residual = pushed.map_coeffs([&](const LaurentPoly& p) { return negative_part(p, u2vars); });
    r.holomorphic = r.residual.is_zero();
    r.poisson = schouten(lt, lt).is_zero();

    DeformationComplexModel md = ruled_model(fam.base);
    Reducer red1 = h1_theta_reducer(fam.m);
    const std::size_t n = fam.params.size();
    std::vector<MultiVector> thetas, lam1;
    r.cocycles = true;
    Matrix T = zero_matrix(std::max(fam.m - 1, 0), n);
    for (std::size_t k = 0; k < n; ++k) {
        Var t = intern(fam.params[k]);
        MultiVector th = MultiVector::term(c, kDxi, lp_substitute(lp_partial(fam.h, t), at0) * zpow(-fam.m));
        MultiVector la1 = lt.map_coeffs([&](const LaurentPoly& p) { return lp_substitute(lp_partial(p, t), at0); });
        MultiVector la2u2 =
            pushed.map_coeffs([&](const LaurentPoly& p) { return lp_substitute(lp_partial(p, t), at0); });
        MultiVector la2 = s.from_u2(la2u2);
        if (!(la1 - la2 + schouten(l0, th)).is_zero()) r.cocycles = false;
        Vector col = red1(th);
        for (std::size_t i = 0; i < col.size(); ++i) T[i][k] = col[i];
        thetas.push_back(th);
        lam1.push_back(la1);
        r.ks.push_back(fam.params[k] + ": (" + (la1.is_zero() ? std::string("0") : la1.str()) + ", " +
                       (th.is_zero() ? std::string("0") : th.str()) + ")");
    }
    std::size_t rankT = T.empty() ? 0 : generic_rank(T, n);
    std::vector<Vector> kerT;
    if (T.empty()) {
        for (std::size_t k = 0; k < n; ++k) {
            Vector e(n);
            e[k] = 1;
            kerT.push_back(e);
        }
    } else {
        kerT = kernel_basis(T, n);
    }
    LinMap d0 = md.d0();
    std::vector<Vector> cols;
    for (std::size_t j = 0; j < d0.cols(); ++j) cols.push_back(d0.column(j));
    std::size_t dim = md.h0_sq.size();
    auto rank_of = [&](const std::vector<Vector>& vs) {
        if (vs.empty()) return std::size_t{0};
        Matrix mm = zero_matrix(dim, vs.size());
        for (std::size_t j = 0; j < vs.size(); ++j)
            for (std::size_t i = 0; i < dim; ++i) mm[i][j] = vs[j][i];
        return generic_rank(mm, vs.size());
    };
    std::size_t base_rank = rank_of(cols);
    for (auto& kv : kerT) {
        MultiVector th(c), la(c);
        for (std::size_t k = 0; k < n; ++k) {
            if (kv[k].is_zero()) continue;
            th += kv[k] * thetas[k];
            la += kv[k] * lam1[k];
        }
        auto sp = split_theta(fam.m, th);
        if (!sp) {
            r.cocycles = false;
            continue;
        }
        try {
            cols.push_back(md.reduce_h0_sq(FormedMultiVector(la + schouten(l0, sp->x1))));
        } catch (const NotInSpan&) {
            r.cocycles = false;
        }
    }
    r.ks_rank = rankT + (rank_of(cols) - base_rank);
    r.h1_dim = hypercohomology(md).h1;
    return r;
}

FamilyReport verify_family(const RuledFamily& fam) {
    FamilyReport r = check_family(fam);
    if (!r.holomorphic)
        throw RationalPartSurvives(fam.name + ": rational part survives on U2: " + r.residual.str(), r.residual);
    if (!r.ok())
        throw KSDegenerate(fam.name + ": Kodaira-Spencer rank " + std::to_string(r.ks_rank) + " of " +
                           std::to_string(r.h1_dim));
    return r;
}

namespace {

RuledFamily make_family(const std::string& name, int m, int nparams, const std::string& h, const std::string& F,
                        const std::string& base) {
    Chart c = u1_chart();
    RuledFamily f{name, m, {}, parse_poly(h, c), parse_poly(F, c), RuledPoisson::parse(m, base)};
    for (int k = 1; k <= nparams; ++k) f.params.push_back("t" + std::to_string(k));
    return f;
}

}  // namespace

std::vector<RuledFamily> ruled_families() {
    std::vector<RuledFamily> out;
    out.push_back(make_family(
        "F_2", 2, 10, "t1*z",
        "t2+(t3+t4*z+t5*z^2)*xi+(t6+t7*z+t8*z^2+t9*z^3+t10*z^4)*xi^2+t1*t5*z-t1^2*t9*z"
        "+2*t1*t10*z*(z^2*xi+t1*z)-t1^2*t10*z^2",
        "0"));
    out.push_back(make_family(
        "F_3", 3, 11, "t1*z+t2*z^2",
        "(t3+t4*z+t5*z^2)*xi+(t6+t7*z+t8*z^2+t9*z^3+t10*z^4+t11*z^5)*xi^2"
        "-(-t2*t4-t1*t5+t8*t2^2+2*t1*t2*t9+t1^2*t10)-(-t2*t5+t9*t2^2+2*t1*t2*t10+t1^2*t11)*z"
        "-(t10*t2^2+2*t1*t2*t11)*z^2-t11*t2^2*z^3+2*(t2*t10+t1*t11+t2*t11*z)*(z^3*xi+t1*z+t2*z^2)",
        "0"));
    out.push_back(make_family(
        "F_4", 4, 5, "t1*z+t2*z^3-(t2^2+t2*t3)*z^2",
        "t2+(2*t2+t3+z+t4*z+t3*t4+t2*t4)*xi+(z+t5*z^6)*xi^2-(-t2*t4+t1^2*t5+t2^2*t5*z^4"
        "+t5*(t2^2+t2*t3)^2*z^2-2*t1*t5*(z^3*xi+t1+t2*z^2-(t2^2+t2*t3)*z)"
        "-(2*t2*t5*z-t5*(t2^2+t2*t3))*(z^4*xi+t1*z+t2*z^3-(t2^2+t2*t3)*z^2)"
        "+2*t1*t2*t5*z^2-2*t1*t5*(t2^2+t2*t3)*z-2*t2*t5*(t2^2+t2*t3)*z^3)"
        "-t5*(t2^2+t2*t3)*(z^4*xi+t1*z+t2*z^3-(t2^2+t2*t3)*z^2)",
        "(z*xi+z*xi^2)*@z*@xi"));
    const std::string u = "(t5+t3*t5)";
    const std::string p = "(z^5*xi+t1*z+t2*z^4+t2^2*t4*z^2-t1^2*t5*z^3)";
    out.push_back(make_family(
        "F_5", 5, 5, "t1*z+t2*z^4+t2^2*t4*z^2-t1^2*t5*z^3",
        "t2+(z+t3*z)*xi+(t4+t5*z^7+t3*t4+t3*t5*z^7)*xi^2+2*t1*t5*(z^3*xi+t2*z^2+t2^2*t4-t1^2*t5*z)"
        "+2*t1*t3*t5*(z^3*xi+t2*z^2+t2^2*t4-t1^2*t5*z)+t2*t3-" + u + "*t2^2*z^5+2*" + u + "*t2*" + p + "*z-2*" + u +
            "*t1*t2*z^2-" + u + "*t2^4*t4^2*z-" + u + "*t1^4*t5^2*z^3+2*" + u +
            "*t2^2*t4*(z^4*xi+t1+t2*z^3+t2^2*t4*z-t1^2*t5*z^2)-2*" + u + "*t1^2*t5*" + p + "-2*" + u +
            "*t1*t2^2*t4+2*" + u + "*t1^3*t5*z-2*" + u + "*t2^3*t4*z^3+2*" + u + "*t1^2*t2*t5*z^4+2*" + u +
            "*t1^2*t2^2*t4*t5*z^2",
        "z*xi*@z*@xi"));
    return out;
}

std::vector<RuledFamily> ruled_families_uncorrected() {
    std::vector<RuledFamily> out;
    out.push_back(make_family("F_2 raw", 2, 10, "t1*z",
                              "t2+(t3+t4*z+t5*z^2)*xi+(t6+t7*z+t8*z^2+t9*z^3+t10*z^4)*xi^2", "0"));
    out.push_back(make_family("F_3 raw", 3, 11, "t1*z+t2*z^2",
                              "(t3+t4*z+t5*z^2)*xi+(t6+t7*z+t8*z^2+t9*z^3+t10*z^4+t11*z^5)*xi^2", "0"));
    out.push_back(make_family("F_4 raw", 4, 5, "t1*z+t2*z^3", "t2+(2*t2+t3+z+t4*z)*xi+(z+t5*z^6)*xi^2",
                              "(z*xi+z*xi^2)*@z*@xi"));
    out.push_back(make_family("F_5 raw", 5, 5, "t1*z+t2*z^4", "t2+(z+t3*z)*xi+(t4+t5*z^7)*xi^2", "z*xi*@z*@xi"));
    return out;
}

// ---------------------------------------------------------------- Čech

CechSquare cech_square(const RuledSurface& s, const MultiVector& lambda0, const CechCocycle& c) {
    if (!c.lambda1.is_holomorphic()) throw NotACocycle("lambda1 is not holomorphic on U1");
    if (!s.holomorphic_on_u2(c.lambda2)) throw NotACocycle("lambda2 is not holomorphic on U2");
    if (!schouten(lambda0, c.lambda1).is_zero() || !schouten(lambda0, c.lambda2).is_zero())
        throw NotACocycle("[L0, lambda_j] != 0");
    MultiVector defect = c.lambda2 - c.lambda1 + schouten(lambda0, c.theta);
    if (!defect.is_zero()) throw NotACocycle("lambda2 - lambda1 + [L0, theta] = " + defect.str());
    CechSquare q;
    q.gamma1 = -schouten(c.lambda1, c.lambda1);
    q.gamma2 = -schouten(c.lambda2, c.lambda2);
    q.eta = -schouten(c.lambda1 + c.lambda2, c.theta);
    q.defect_gamma1 = schouten(lambda0, q.gamma1);
    q.defect_gamma2 = schouten(lambda0, q.gamma2);
    q.defect_mixed = -(q.gamma2 - q.gamma1) + schouten(lambda0, q.eta);
    return q;
}

CechCocycle random_cech_cocycle(const RuledPoisson& l0, std::mt19937_64& rng) {
    RuledSurface s(l0.m);
    Chart c = u1_chart(), c2 = u2_chart();
    MultiVector L = l0.bivector();
    std::uniform_int_distribution<int> coef(-3, 3);
    auto poly2 = [&](const char* var, int hi) {
        LaurentPoly p;
        for (int k = 0; k <= hi; ++k) p += LaurentPoly(coef(rng)) * LaurentPoly::var(var, k);
        return p;
    };
    auto field = [&](const Chart& ch, const char* zv, const char* xv) {
        LaurentPoly x1 = LaurentPoly::var(xv), x2 = LaurentPoly::var(xv, 2);
        return MultiVector::term(ch, kDz, poly2(zv, 2)) +
               MultiVector::term(ch, kDxi, poly2(zv, 2) + poly2(zv, 2) * x1 + poly2(zv, 2) * x2);
    };
    MultiVector v1 = field(c, "z", "xi");
    MultiVector v2 = s.from_u2(field(c2, "zp", "xip"));
    CechCocycle cc{-schouten(L, v1), -schouten(L, v2), v2 - v1};

    DeformationComplexModel md = ruled_model(l0);
    Vector g(md.h0_sq.size());
    for (auto& x : g) x = coef(rng);
    MultiVector glob = md.h0_sq.combine(g).part({});
    cc.lambda1 += glob;
    cc.lambda2 += glob;

    LinMap d1 = md.d1();
    std::vector<Vector> ker;
    if (d1.rows() == 0) {
        for (std::size_t j = 0; j < d1.cols(); ++j) {
            Vector e(d1.cols());
            e[j] = 1;
            ker.push_back(e);
        }
    } else {
        ker = kernel_basis(d1);
    }
    MultiVector extra(c);
    for (auto& k : ker) extra += LaurentPoly(coef(rng)) * md.h1_theta.combine(k).part({});
    if (!extra.is_zero()) {
        auto sp = split_sq(l0.m, schouten(L, extra));
        if (!sp) throw std::logic_error("kernel element of [L0,-] has a nonzero H1(^2) class");
        cc.lambda1 += sp->x1;
        cc.lambda2 += sp->x2;
        cc.theta += extra;
    }
    return cc;
}

}  // namespace poissonlab
