#include "poissonlab/hopf.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <memory>
#include <mutex>
#include <tuple>

namespace poissonlab {

namespace {

LaurentPoly sym(const std::string& n, int e = 1) { return LaurentPoly::var(n, e); }
LaurentPoly Z(int e = 1) { return sym("z", e); }
LaurentPoly Wv(int e = 1) { return sym("w", e); }

MultiVector vec(const LaurentPoly& a, const LaurentPoly& b) {
    const Chart& c = hopf_chart();
    return MultiVector::term(c, {0}, a) + MultiVector::term(c, {1}, b);
}
MultiVector biv(const LaurentPoly& f) { return MultiVector::term(hopf_chart(), {0, 1}, f); }

int part_weight(int idx, int wz) { return idx == 0 ? wz : 1; }

Matrix submatrix(const Matrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
    Matrix r;
    for (auto i : rows) {
        Vector row;
        for (auto j : cols) row.push_back(m[i][j]);
        r.push_back(row);
    }
    return r;
}

// Everything computed once per (type, grade, D).
struct GradeData {
    TruncatedSpace space;
    LinMap op;
    std::map<TermKey, std::size_t> index;
    struct Block {
        int weight = 0;
        std::vector<std::size_t> idx;
        Matrix m;
        std::vector<Vector> kernel, coker;  // block coordinates
    };
    std::vector<Block> blocks;
    std::map<int, std::size_t> block_of_weight;

    FormedMultiVector combine(const Block& b, const Vector& v) const {
        FormedMultiVector out(hopf_chart());
        for (std::size_t i = 0; i < v.size(); ++i)
            if (!v[i].is_zero()) out += v[i] * space.basis[b.idx[i]];
        return out;
    }
    // Block coordinates of a field lying in a single block; nullopt otherwise.
    std::optional<std::pair<std::size_t, Vector>> locate(const FormedMultiVector& f) const {
        std::optional<std::size_t> blk;
        std::map<std::size_t, LaurentPoly> at;
        for (auto& [key, c] : term_coordinates(f)) {
            auto it = index.find(key);
            if (it == index.end()) return std::nullopt;
            std::size_t b = block_of_weight.at(space.weights[it->second]);
            if (blk && *blk != b) return std::nullopt;
            blk = b;
            at[it->second] = c;
        }
        if (!blk) return std::nullopt;
        const Block& B = blocks[*blk];
        Vector v(B.idx.size());
        for (std::size_t i = 0; i < B.idx.size(); ++i) {
            auto it = at.find(B.idx[i]);
            if (it != at.end()) v[i] = it->second;
        }
        return std::make_pair(*blk, v);
    }
};

std::shared_ptr<const GradeData> grade_data(const HopfType& t, int grade, int D) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, int, int>, std::shared_ptr<const GradeData>> cache;
    auto key = std::make_tuple(static_cast<int>(t.tag), t.p, grade, D);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto g = std::make_shared<GradeData>();
    g->space = truncated_space(t, grade, D);
    g->op = id_minus_fstar(t, g->space);
    for (std::size_t i = 0; i < g->space.basis.size(); ++i)
        g->index.emplace(term_coordinates(g->space.basis[i]).begin()->first, i);
    for (int w : g->space.block_weights()) {
        GradeData::Block b;
        b.weight = w;
        b.idx = g->space.block(w);
        b.m = submatrix(g->op.entries, b.idx, b.idx);
        b.kernel = kernel_basis(b.m, b.idx.size());
        g->block_of_weight[w] = g->blocks.size();
        g->blocks.push_back(std::move(b));
    }
    const auto listed = grade == 1 ? listed_m1(t) : listed_m2(t);
    std::map<std::size_t, std::vector<Vector>> preferred;
    for (auto& l : listed)
        if (auto loc = g->locate(FormedMultiVector(l))) preferred[loc->first].push_back(loc->second);
    for (std::size_t i = 0; i < g->blocks.size(); ++i) {
        auto& b = g->blocks[i];
        b.coker = cokernel_coords(b.m, b.idx.size(), preferred[i]);
    }
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(key, g).first->second;
}

int resolve_degree(const HopfType& t, int D) {
    if (D == 0) D = hopf_degree_cap(t);
    int lo = t.default_degree();
    if (D < lo)
        throw std::invalid_argument("degree cap " + std::to_string(D) + " is below the minimum " + std::to_string(lo) +
                                    " for type " + t.name());
    return D;
}

LabeledBasis collect_kernel(const HopfType& t, int grade, int D, const std::string& name) {
    auto g = grade_data(t, grade, resolve_degree(t, D));
    std::vector<FormedMultiVector> out;
    for (auto& b : g->blocks)
        for (auto& v : b.kernel) out.push_back(g->combine(b, v));
    return LabeledBasis(name, out);
}

}  // namespace

// ---------------------------------------------------------------- types

HopfType HopfType::iii(int p) {
    if (p < 2) throw std::invalid_argument("type III needs p >= 2");
    return {HopfTag::III, p};
}
HopfType HopfType::iia(int p) {
    if (p < 2) throw std::invalid_argument("type IIa needs p >= 2");
    return {HopfTag::IIa, p};
}

HopfType HopfType::parse(const std::string& s) {
    std::string tag = s, rest;
    auto colon = s.find(':');
    if (colon != std::string::npos) {
        tag = s.substr(0, colon);
        rest = s.substr(colon + 1);
    }
    int p = 2;
    if (!rest.empty()) {
        std::size_t used = 0;
        p = std::stoi(rest, &used);
        if (used != rest.size()) throw std::invalid_argument("bad p in " + s);
    }
    if (tag == "IV") return iv();
    if (tag == "III") return iii(p);
    if (tag == "IIa") return iia(p);
    if (tag == "IIb") return iib();
    if (tag == "IIc") return iic();
    throw std::invalid_argument("unknown Hopf type " + s);
}

std::string HopfType::tag_name() const {
    switch (tag) {
        case HopfTag::IV: return "IV";
        case HopfTag::III: return "III";
        case HopfTag::IIa: return "IIa";
        case HopfTag::IIb: return "IIb";
        case HopfTag::IIc: return "IIc";
    }
    return "?";
}

std::string HopfType::name() const { return has_p() ? tag_name() + ":" + std::to_string(p) : tag_name(); }

std::string HopfType::manifold() const {
    std::string s = "hopf-" + tag_name();
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (has_p()) s += "-p" + std::to_string(p);
    return s;
}

std::vector<std::string> HopfType::params() const {
    switch (tag) {
        case HopfTag::IV:
        case HopfTag::IIb: return {"alpha"};
        case HopfTag::III:
        case HopfTag::IIa: return {"delta"};
        case HopfTag::IIc: return {"alpha", "delta"};
    }
    return {};
}

const Chart& hopf_chart() {
    static const Chart c("W", {"z", "w"});
    return c;
}

ChartMap contraction(const HopfType& t) {
    const Chart& c = hopf_chart();
    Var z = c.vars[0], w = c.vars[1];
    LaurentPoly a = sym("alpha"), ai = sym("alpha", -1), d = sym("delta"), di = sym("delta", -1);
    ChartMap m{c, c, {}, {}};
    switch (t.tag) {
        case HopfTag::IV:
            m.forward = {{z, a * Z()}, {w, a * Wv()}};
            m.inverse = {{z, ai * Z()}, {w, ai * Wv()}};
            break;
        case HopfTag::III:
            m.forward = {{z, d.pow(t.p) * Z()}, {w, d * Wv()}};
            m.inverse = {{z, di.pow(t.p) * Z()}, {w, di * Wv()}};
            break;
        case HopfTag::IIa:
            m.forward = {{z, d.pow(t.p) * Z() + Wv(t.p)}, {w, d * Wv()}};
            m.inverse = {{z, di.pow(t.p) * Z() - di.pow(2 * t.p) * Wv(t.p)}, {w, di * Wv()}};
            break;
        case HopfTag::IIb:
            m.forward = {{z, a * Z() + Wv()}, {w, a * Wv()}};
            m.inverse = {{z, ai * Z() - ai.pow(2) * Wv()}, {w, ai * Wv()}};
            break;
        case HopfTag::IIc:
            m.forward = {{z, a * Z()}, {w, d * Wv()}};
            m.inverse = {{z, ai * Z()}, {w, di * Wv()}};
            break;
    }
    return m;
}

ChartMap identity_contraction() {
    const Chart& c = hopf_chart();
    return ChartMap{c, c, {{c.vars[0], Z()}, {c.vars[1], Wv()}}, {{c.vars[0], Z()}, {c.vars[1], Wv()}}};
}

int hopf_degree_cap(const HopfType& t) {
    if (const char* env = std::getenv("POISSONLAB_DEGREE_CAP"); env && *env) {
        std::string s(env);
        std::size_t used = 0;
        int d = 0;
        try {
            d = std::stoi(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != s.size() || used == 0) throw std::invalid_argument("POISSONLAB_DEGREE_CAP is not an integer: " + s);
        return d;
    }
    return t.default_degree();
}

// ---------------------------------------------------------------- truncation

std::vector<int> TruncatedSpace::block_weights() const {
    std::vector<int> ws(weights.begin(), weights.end());
    ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
    return ws;
}

std::vector<std::size_t> TruncatedSpace::block(int weight) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < weights.size(); ++i)
        if (weights[i] == weight) out.push_back(i);
    return out;
}

int field_weight(const MultiVector& term, int weight_z) {
    if (term.components().size() != 1) throw std::invalid_argument("field_weight wants a single term");
    auto& [idx, c] = *term.components().begin();
    if (c.size() != 1) throw std::invalid_argument("field_weight wants a single term");
    const Chart& ch = term.chart();
    const Monomial& m = c.terms().begin()->first;
    int wt = weight_z * m.exponent(ch.vars[0]) + m.exponent(ch.vars[1]);
    for (int i : idx) wt -= part_weight(i, weight_z);
    return wt;
}

TruncatedSpace truncated_space(int grade, int degree_cap, int weight_z) {
    if (grade < 1 || grade > 2) throw std::invalid_argument("truncated_space: grade must be 1 or 2");
    TruncatedSpace s;
    s.grade = grade;
    s.degree_cap = degree_cap;
    s.weight_z = weight_z;
    const int cap = degree_cap - grade;
    std::vector<IndexTuple> tuples = grade == 1 ? std::vector<IndexTuple>{{0}, {1}} : std::vector<IndexTuple>{{0, 1}};
    struct Item {
        int weight;
        IndexTuple idx;
        int mu, nu;
    };
    std::vector<Item> items;
    for (auto& idx : tuples) {
        int dw = 0;
        for (int i : idx) dw += part_weight(i, weight_z);
        for (int mu = 0; weight_z * mu <= cap + dw; ++mu)
            for (int nu = 0; weight_z * mu + nu <= cap + dw; ++nu) items.push_back({weight_z * mu + nu - dw, idx, mu, nu});
    }
    std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
        return std::tie(a.weight, a.idx, b.mu) < std::tie(b.weight, b.idx, a.mu);
    });
    std::vector<MultiVector> elems;
    for (auto& it : items) {
        elems.push_back(MultiVector::term(hopf_chart(), it.idx, Z(it.mu) * Wv(it.nu)));
        s.weights.push_back(it.weight);
    }
    s.basis = LabeledBasis(grade == 1 ? "fields(D=" + std::to_string(degree_cap) + ")"
                                      : "bivectors(D=" + std::to_string(degree_cap) + ")",
                           elems);
    return s;
}

TruncatedSpace truncated_space(const HopfType& t, int grade, int degree_cap) {
    return truncated_space(grade, degree_cap, t.weight_z());
}

MultiVector id_minus_fstar(const ChartMap& f, const MultiVector& v) { return v - pushforward(f, v); }

LinMap id_minus_fstar(const ChartMap& f, const TruncatedSpace& s) {
    std::map<TermKey, std::size_t> index;
    for (std::size_t i = 0; i < s.basis.size(); ++i) index.emplace(term_coordinates(s.basis[i]).begin()->first, i);
    LinMap m;
    m.domain = s.basis;
    m.codomain = s.basis;
    m.entries = zero_matrix(s.basis.size(), s.basis.size());
    for (std::size_t j = 0; j < s.basis.size(); ++j) {
        MultiVector img = id_minus_fstar(f, s.basis[j].part({}));
        for (auto& [key, c] : term_coordinates(FormedMultiVector(img))) {
            auto it = index.find(key);
            if (it == index.end())
                throw std::logic_error("id - f_* leaves the truncated space at " + s.basis[j].str());
            m.entries[it->second][j] = c;
        }
    }
    return m;
}

LinMap id_minus_fstar(const HopfType& t, const TruncatedSpace& s) { return id_minus_fstar(contraction(t), s); }

// ---------------------------------------------------------------- H⁰ and H¹

LabeledBasis invariant_fields(const HopfType& t, int D) { return collect_kernel(t, 1, D, "H0(Theta)"); }
LabeledBasis invariant_bivectors(const HopfType& t, int D) { return collect_kernel(t, 2, D, "H0(^2 Theta)"); }

LabeledBasis hopf_cokernel(const HopfType& t, int grade, int D) {
    auto g = grade_data(t, grade, resolve_degree(t, D));
    std::vector<FormedMultiVector> out;
    for (auto& b : g->blocks)
        for (auto& v : b.coker) out.push_back(g->combine(b, v));
    return LabeledBasis(grade == 1 ? "H1(Theta)" : "H1(^2 Theta)", out);
}

Reducer hopf_class_reducer(const HopfType& t, int grade, int D) {
    auto g = grade_data(t, grade, resolve_degree(t, D));
    struct Part {
        std::size_t offset;
        Reducer red;
    };
    std::map<std::size_t, Part> parts;
    std::size_t total = 0;
    for (std::size_t i = 0; i < g->blocks.size(); ++i) {
        auto& b = g->blocks[i];
        if (b.coker.empty()) continue;
        std::vector<FormedMultiVector> reps, rel;
        for (auto& v : b.coker) reps.push_back(g->combine(b, v));
        for (std::size_t j = 0; j < b.idx.size(); ++j) {
            Vector col;
            for (auto& row : b.m) col.push_back(row[j]);
            if (!is_zero(col)) rel.push_back(g->combine(b, col));
        }
        parts.emplace(i, Part{total, quotient_reducer(LabeledBasis("block", reps), rel)});
        total += reps.size();
    }
    return [g, parts, total](const FormedMultiVector& f) {
        std::map<std::size_t, FormedMultiVector> split;
        for (auto& [key, c] : term_coordinates(f)) {
            auto it = g->index.find(key);
            if (it == g->index.end())
                throw NotInSpan("field " + f.str() + " leaves the truncated space; raise the degree cap");
            std::size_t b = g->block_of_weight.at(g->space.weights[it->second]);
            auto ins = split.try_emplace(b, FormedMultiVector(hopf_chart())).first;
            ins->second += c * g->space.basis[it->second];
        }
        Vector out(total);
        for (auto& [b, piece] : split) {
            auto p = parts.find(b);
            if (p == parts.end()) continue;  // block is onto: class zero
            Vector v = p->second.red(piece);
            for (std::size_t i = 0; i < v.size(); ++i) out[p->second.offset + i] = v[i];
        }
        return out;
    };
}

std::vector<MultiVector> listed_m1(const HopfType& t) {
    LaurentPoly a = sym("alpha"), d = sym("delta");
    switch (t.tag) {
        case HopfTag::IV: return {vec(Z(), 0), vec(Wv(), 0), vec(0, Z()), vec(0, Wv())};
        case HopfTag::III: return {vec(Z(), 0), vec(Wv(t.p), 0), vec(0, Wv())};
        case HopfTag::IIa: return {vec(d.pow(t.p) * Z() - Wv(t.p), 0), vec(0, Wv())};
        case HopfTag::IIb: return {vec(a * Z() - Wv(), a * Wv()), vec(0, a * Z() - Wv())};
        case HopfTag::IIc: return {vec(Z(), 0), vec(0, Wv())};
    }
    return {};
}

std::vector<MultiVector> listed_m2(const HopfType& t) {
    switch (t.tag) {
        case HopfTag::IV: return {biv(Z(2)), biv(Z() * Wv()), biv(Wv(2))};
        case HopfTag::III: return {biv(Z() * Wv()), biv(Wv(t.p + 1))};
        case HopfTag::IIa: return {biv(Z() * Wv())};
        case HopfTag::IIb: return {biv(Z(2))};
        case HopfTag::IIc: return {biv(Z() * Wv())};
    }
    return {};
}

M1M2 m1_m2_bases(const HopfType& t, int D) {
    D = resolve_degree(t, D);
    M1M2 r{D, hopf_cokernel(t, 1, D), hopf_cokernel(t, 2, D)};
    LabeledBasis m1b = hopf_cokernel(t, 1, D + 2), m2b = hopf_cokernel(t, 2, D + 2);
    if (m1b.elements != r.m1.elements || m2b.elements != r.m2.elements)
        throw TruncationUnstable("type " + t.name() + ": cokernel of id - f_* changes between D = " +
                                 std::to_string(D) + " and D = " + std::to_string(D + 2));
    r.m1.space_name = "M1";
    r.m2.space_name = "M2";
    return r;
}

// ---------------------------------------------------------------- strata

std::vector<HopfStratum> hopf_strata(int p) {
    LaurentPoly A = sym("A"), B = sym("B"), C = sym("C"), u = sym("u"), v = sym("v");
    HopfType iv = HopfType::iv(), iii = HopfType::iii(p), iia = HopfType::iia(p);
    const Chart& c = hopf_chart();
    std::vector<HopfStratum> s;
    s.push_back({iv, "L0=0", MultiVector(c), {}, ""});
    s.push_back({iv, "4AC-B^2!=0", biv(A * Z(2) + B * Z() * Wv() + C * Wv(2)), {LaurentPoly(4) * A * C - B * B},
                 "hopf-iv"});
    s.push_back({iv, "4AC-B^2=0", biv((u * Z() + v * Wv()).pow(2)), {u}, ""});
    s.push_back({iii, "L0=0", MultiVector(c), {}, ""});
    s.push_back({iii, "B!=0", biv(B * Wv(p + 1)), {B}, ""});
    s.push_back({iii, "A!=0", biv(A * Z() * Wv() + B * Wv(p + 1)), {A}, "hopf-iii"});
    s.push_back({iia, "any A", biv(A * Wv(p + 1)), {}, "hopf-iia"});
    s.push_back({HopfType::iib(), "any A", biv(A * Wv(2)), {}, "hopf-iib"});
    s.push_back({HopfType::iic(), "any A", biv(A * Z() * Wv()), {}, "hopf-iic"});
    return s;
}

HopfStratum hopf_stratum(const HopfType& t, const std::string& label) {
    for (auto& s : hopf_strata(t.has_p() ? t.p : 2))
        if (s.type == t && s.label == label) return s;
    throw std::invalid_argument("no stratum '" + label + "' for type " + t.name());
}

DeformationComplexModel hopf_model(const HopfStratum& s, int D) {
    const HopfType& t = s.type;
    D = resolve_degree(t, D);
    M1M2 mm = m1_m2_bases(t, D);
    DeformationComplexModel md;
    md.manifold = t.manifold();
    md.stratum = s.label;
    md.chart = hopf_chart();
    md.lambda0 = FormedMultiVector(s.lambda0);
    md.h0_theta = invariant_fields(t, D);
    md.h0_sq = invariant_bivectors(t, D);
    md.h1_theta = mm.m1;
    md.h1_sq = mm.m2;
    md.reduce_h0_sq = span_reducer(md.h0_sq);
    md.reduce_h1_sq = hopf_class_reducer(t, 2, D);
    md.nonzero = s.nonzero;
    if (!s.lambda0.is_zero()) md.preferred_coker.push_back(normalize_vector(md.reduce_h0_sq(md.lambda0)));
    return md;
}

HopfRow hopf_row(const HopfStratum& s, int D) {
    DeformationComplexModel md = hopf_model(s, D);
    Hypercohomology h = hypercohomology(md);
    HopfRow r;
    r.stratum = s;
    r.h0 = h.h0;
    r.h1 = h.h1;
    r.h2 = h.h2;
    std::vector<FormedMultiVector> aut;
    LinMap d0 = md.d0();
    for (auto& v : kernel_basis(d0)) aut.push_back(md.h0_theta.combine(v));
    r.automorphisms = LabeledBasis("aut", aut);
    return r;
}

// ---------------------------------------------------------------- families

std::vector<HopfFamily> hopf_families(int p) {
    LaurentPoly A = sym("A"), B = sym("B"), C = sym("C"), a = sym("alpha"), b = sym("beta"), d = sym("delta"),
                t = sym("t");
    Var z = hopf_chart().vars[0], w = hopf_chart().vars[1];
    Var va = intern("alpha"), vb = intern("beta"), vt = intern("t");
    std::vector<HopfFamily> f;
    f.push_back({"hopf-iv",
                 HopfType::iv(),
                 "4AC-B^2!=0",
                 {"alpha", "beta", "t"},
                 {{vb, 0}, {vt, 0}},
                 (1 + t) * (A * Z(2) + B * Z() * Wv() + C * Wv(2)),
                 {{z, (a + b * B) * Z() + b * C * Wv()}, {w, -b * A * Z() + a * Wv()}}});
    f.push_back({"hopf-iii",
                 HopfType::iii(p),
                 "A!=0",
                 {"alpha", "delta", "t"},
                 {{va, d.pow(p)}, {vt, 0}},
                 (1 + t) * (A * Z() * Wv() + B * Wv(p + 1)),
                 {{z, a * Z() + B * sym("A", -1) * (a - d.pow(p)) * Wv(p)}, {w, d * Wv()}}});
    f.push_back({"hopf-iia",
                 HopfType::iia(p),
                 "any A",
                 {"alpha", "delta", "t"},
                 {{va, d.pow(p)}, {vt, 0}},
                 (A + t) * ((a - d.pow(p)) * Z() * Wv() + Wv(p + 1)),
                 {{z, a * Z() + Wv(p)}, {w, d * Wv()}}});
    f.push_back({"hopf-iib",
                 HopfType::iib(),
                 "any A",
                 {"alpha", "beta", "t"},
                 {{vb, 0}, {vt, 0}},
                 (A + t) * (-b * Z(2) + Wv(2)),
                 {{z, a * Z() + Wv()}, {w, b * Z() + a * Wv()}}});
    f.push_back({"hopf-iic",
                 HopfType::iic(),
                 "any A",
                 {"alpha", "delta", "t"},
                 {{vt, 0}},
                 (A + t) * Z() * Wv(),
                 {{z, a * Z()}, {w, d * Wv()}}});
    return f;
}

HopfFamily hopf_family(const std::string& name, int p) {
    for (auto& f : hopf_families(p))
        if (f.name == name) return f;
    throw std::invalid_argument("unknown Hopf family " + name);
}

LaurentPoly invariance_residual(const LaurentPoly& lambda, const Substitution& map) {
    const Chart& c = hopf_chart();
    Var z = c.vars[0], w = c.vars[1];
    auto img = [&](Var v) {
        auto it = map.find(v);
        return it == map.end() ? LaurentPoly::var(v) : it->second;
    };
    LaurentPoly f1 = img(z), f2 = img(w);
    LaurentPoly det = lp_partial(f1, z) * lp_partial(f2, w) - lp_partial(f2, z) * lp_partial(f1, w);
    return lp_substitute(lambda, {{z, f1}, {w, f2}}) - lambda * det;
}

bool family_invariance(const LaurentPoly& lambda, const Substitution& map) {
    return invariance_residual(lambda, map).is_zero();
}

namespace {

ChartMap checked_base_map(const HopfFamily& fam) {
    ChartMap f = contraction(fam.type);
    for (auto& [v, img] : fam.map)
        if (lp_substitute(img, fam.base_point) != f.forward.at(v))
            throw std::invalid_argument(fam.name + ": F at the base point is not the contraction of type " +
                                        fam.type.name());
    return f;
}

void check_members(const ChartMap& f, const MultiVector& lambda0, const std::vector<DPair>& pairs) {
    for (auto& pr : pairs) {
        MultiVector lhs = id_minus_fstar(f, pr.b);
        MultiVector rhs = schouten(lambda0, pr.a);
        if (lhs != rhs) {
            MultiVector res = lhs - rhs;
            throw MembershipFails("pair " + pr.label + " is not in D: (id - f_*)B - [L0, A] = " + res.str(), res);
        }
    }
}

}  // namespace

std::vector<DPair> tau_images(const HopfFamily& fam) {
    ChartMap f = checked_base_map(fam);
    const Chart& c = hopf_chart();
    std::vector<DPair> out;
    for (auto& name : fam.params) {
        Var s = intern(name);
        DPair pr;
        pr.label = "d/d" + name;
        pr.b = biv(lp_substitute(lp_partial(fam.lambda, s), fam.base_point));
        pr.a = MultiVector(c);
        for (int i = 0; i < 2; ++i) {
            auto it = fam.map.find(c.vars[static_cast<std::size_t>(i)]);
            if (it == fam.map.end()) continue;
            LaurentPoly q = lp_substitute(lp_partial(it->second, s), fam.base_point);
            pr.a += MultiVector::term(c, {i}, lp_substitute(q, f.inverse));
        }
        out.push_back(pr);
    }
    return out;
}

std::vector<DPair> listed_pairs(const HopfType& t) {
    LaurentPoly A = sym("A"), B = sym("B"), C = sym("C"), Ai = sym("A", -1);
    LaurentPoly ai = sym("alpha", -1), di = sym("delta", -1), d = sym("delta");
    const Chart& c = hopf_chart();
    MultiVector zero(c);
    const int p = t.p;
    switch (t.tag) {
        case HopfTag::IV:
            return {{"d/dalpha", zero, vec(ai * Z(), ai * Wv())},
                    {"d/dbeta", zero, vec(ai * (B * Z() + C * Wv()), -ai * A * Z())},
                    {"d/dt", biv(A * Z(2) + B * Z() * Wv() + C * Wv(2)), zero}};
        case HopfTag::III:
            return {{"d/dalpha", zero, vec(di.pow(p) * (Z() + B * Ai * Wv(p)), 0)},
                    {"d/ddelta", zero, vec(-di * LaurentPoly(p) * B * Ai * Wv(p), di * Wv())},
                    {"d/dt", biv(A * Z() * Wv() + B * Wv(p + 1)), zero}};
        case HopfTag::IIa:
            return {{"d/dalpha", biv(A * Z() * Wv()), vec(di.pow(p) * Z() - di.pow(2 * p) * Wv(p), 0)},
                    {"d/ddelta", biv(-LaurentPoly(p) * A * d.pow(p - 1) * Z() * Wv()), vec(0, di * Wv())},
                    {"d/dt", biv(Wv(p + 1)), zero}};
        case HopfTag::IIb:
            return {{"d/dalpha", zero, vec(ai * Z() - ai.pow(2) * Wv(), ai * Wv())},
                    {"d/dbeta", biv(-A * Z(2)), vec(0, ai * Z() - ai.pow(2) * Wv())},
                    {"d/dt", biv(Wv(2)), zero}};
        case HopfTag::IIc:
            return {{"d/dalpha", zero, vec(ai * Z(), 0)},
                    {"d/ddelta", zero, vec(0, di * Wv())},
                    {"d/dt", biv(Z() * Wv()), zero}};
    }
    return {};
}

std::size_t sigma_rank(const DeformationComplexModel& m, const HopfType& t, const std::vector<DPair>& pairs, int D) {
    D = resolve_degree(t, D);
    if (pairs.empty()) return 0;
    ChartMap f = contraction(t);
    Reducer red1 = hopf_class_reducer(t, 1, D);
    const MultiVector lambda0 = m.lambda0.part({});

    // ℍ¹ → ker d1 part: the classes of the vector fields
    std::vector<Vector> cls;
    for (auto& pr : pairs) cls.push_back(red1(FormedMultiVector(pr.a)));
    const std::size_t n1 = cls[0].size();
    Matrix pm = zero_matrix(n1, pairs.size());
    for (std::size_t j = 0; j < pairs.size(); ++j)
        for (std::size_t i = 0; i < n1; ++i) pm[i][j] = cls[j][i];
    std::size_t rank1 = n1 ? generic_rank(pm, pairs.size()) : 0;
    std::vector<Vector> combos;
    if (n1)
        combos = kernel_basis(pm, pairs.size());
    else
        for (std::size_t j = 0; j < pairs.size(); ++j) {
            Vector e(pairs.size());
            e[j] = 1;
            combos.push_back(e);
        }

    // combinations whose vector part is exact: B − [Λ₀, β] with (id − f_*)β = A
    auto g = grade_data(t, 1, D);
    std::vector<Vector> lam;
    for (auto& k : combos) {
        MultiVector a(hopf_chart()), b(hopf_chart());
        for (std::size_t j = 0; j < pairs.size(); ++j) {
            a += k[j] * pairs[j].a;
            b += k[j] * pairs[j].b;
        }
        // β = num / den, solved block by block
        MultiVector num(hopf_chart());
        LaurentPoly den = 1;
        std::map<std::size_t, std::map<std::size_t, LaurentPoly>> by_block;
        for (auto& [key, c] : term_coordinates(FormedMultiVector(a))) {
            auto it = g->index.find(key);
            if (it == g->index.end()) throw NotInSpan("vector part leaves the truncated space; raise the degree cap");
            by_block[g->block_of_weight.at(g->space.weights[it->second])][it->second] = c;
        }
        for (auto& [bi, coords] : by_block) {
            auto& blk = g->blocks[bi];
            Vector x(blk.idx.size());
            for (std::size_t i = 0; i < blk.idx.size(); ++i)
                if (auto it = coords.find(blk.idx[i]); it != coords.end()) x[i] = it->second;
            std::vector<Vector> cols;
            for (std::size_t j = 0; j < blk.idx.size(); ++j) {
                Vector col;
                for (auto& row : blk.m) col.push_back(row[j]);
                cols.push_back(col);
            }
            auto keep = independent_subset(cols);
            Matrix sub = zero_matrix(blk.idx.size(), keep.size());
            for (std::size_t i = 0; i < blk.idx.size(); ++i)
                for (std::size_t j = 0; j < keep.size(); ++j) sub[i][j] = cols[keep[j]][i];
            auto sol = solve(sub, keep.size(), x);
            if (!sol) throw std::logic_error("vector part with zero class is not in the image of id - f_*");
            MultiVector piece(hopf_chart());
            for (std::size_t j = 0; j < keep.size(); ++j)
                piece += sol->first[j] * g->space.basis[blk.idx[keep[j]]].part({});
            num = sol->second * num + den * piece;
            den = den * sol->second;
        }
        MultiVector l = den * b - schouten(lambda0, num);
        if (!id_minus_fstar(f, l).is_zero()) throw std::logic_error("sigma image is not f-invariant");
        lam.push_back(m.reduce_h0_sq(FormedMultiVector(l)));
    }
    LinMap d0 = m.d0();
    std::vector<Vector> img;
    for (std::size_t j = 0; j < d0.cols(); ++j) img.push_back(d0.column(j));
    const std::size_t rows = m.h0_sq.size();
    auto rank_of = [&](const std::vector<Vector>& vs) -> std::size_t {
        if (vs.empty()) return 0;
        Matrix mm = zero_matrix(rows, vs.size());
        for (std::size_t j = 0; j < vs.size(); ++j)
            for (std::size_t i = 0; i < rows; ++i) mm[i][j] = vs[j][i];
        return generic_rank(mm, vs.size());
    };
    std::vector<Vector> both = img;
    both.insert(both.end(), lam.begin(), lam.end());
    return rank1 + rank_of(both) - rank_of(img);
}

MembershipReport d_membership(const HopfFamily& fam, const std::vector<DPair>& pairs, int D) {
    return d_membership(fam, hopf_stratum(fam.type, fam.stratum), pairs, D);
}

MembershipReport d_membership(const HopfFamily& fam, const HopfStratum& s, const std::vector<DPair>& pairs, int D) {
    ChartMap f = checked_base_map(fam);
    if (biv(lp_substitute(fam.lambda, fam.base_point)) != s.lambda0)
        throw std::invalid_argument(fam.name + ": Lambda at the base point is not the stratum's structure");
    check_members(f, s.lambda0, pairs);
    DeformationComplexModel md = hopf_model(s, D);
    MembershipReport r;
    r.family = fam.name;
    r.pairs = pairs;
    r.h1_dim = hypercohomology(md).h1;
    r.sigma_rank = sigma_rank(md, fam.type, pairs, D);
    return r;
}

MembershipReport d_membership(const HopfType& t, int D) {
    for (auto& fam : hopf_families(t.has_p() ? t.p : 2))
        if (fam.type == t) return d_membership(fam, listed_pairs(t), D);
    throw std::invalid_argument("no unobstructing family for type " + t.name());
}

// ---------------------------------------------------------------- certificates

Certificate obstruction_certificate_hopf(const HopfType& t, const std::map<std::string, long>& constants, int D) {
    if (t.tag != HopfTag::IV && t.tag != HopfTag::III)
        throw std::invalid_argument("obstruction witnesses exist for types IV and III only");
    auto k = [&](const std::string& n) -> LaurentPoly {
        auto it = constants.find(n);
        return it == constants.end() ? LaurentPoly(0) : LaurentPoly(it->second);
    };
    for (auto& [n, v] : constants) {
        static const std::set<std::string> iv{"A", "B", "C", "d", "e", "f", "g"}, iii{"A", "B", "d", "e", "f"};
        if (!(t.tag == HopfTag::IV ? iv : iii).count(n)) throw std::invalid_argument("unknown constant " + n);
    }
    MultiVector a(hopf_chart()), b(hopf_chart());
    if (t.tag == HopfTag::IV) {
        a = biv(k("A") * Z(2) + k("B") * Z() * Wv() + k("C") * Wv(2));
        b = vec(k("d") * Z() + k("e") * Wv(), k("f") * Z() + k("g") * Wv());
    } else {
        a = biv(k("A") * Z() * Wv() + k("B") * Wv(t.p + 1));
        b = vec(k("d") * Z() + k("e") * Wv(t.p), k("f") * Wv());
    }
    DeformationComplexModel md = hopf_model(hopf_stratum(t, "L0=0"), D);
    Vector cls = md.reduce_h1_sq(schouten_formed(a, b));
    if (is_zero(cls)) throw std::invalid_argument("[a, b] has zero class for these constants");
    Certificate c;
    c.manifold = md.manifold;
    c.stratum = md.stratum;
    c.verdict = Verdict::Obstructed;
    c.lambda0 = md.lambda0.str();
    c.chart = {"z", "w"};
    c.witness_a = a.str();
    c.witness_b = b.str();
    c.class_repr = md.h1_sq.combine(cls).str();
    std::string why;
    if (!verify_certificate(md, c, &why)) throw std::logic_error("hopf witness fails verification: " + why);
    return c;
}

Certificate hopf_certificate(const HopfStratum& s, int D) {
    DeformationComplexModel md = hopf_model(s, D);
    Certificate c = witness_search(md);
    if (c.verdict != Verdict::Undetermined || s.family.empty()) return c;
    HopfFamily fam = hopf_family(s.family, s.type.has_p() ? s.type.p : 2);
    if (!family_invariance(fam.lambda, fam.map)) return c;
    MembershipReport r = d_membership(fam, tau_images(fam), D);
    if (!r.ok()) return c;
    c.verdict = Verdict::UnobstructedMC;
    c.reason.reset();
    c.solution = fam.name;
    return c;
}

Certificate hopf_classify(const HopfType& t, const MultiVector& lambda0, int D) {
    const Chart& c = hopf_chart();
    if (lambda0.chart() != c && !lambda0.is_zero()) throw ChartMismatch("expected a field on (z, w)");
    for (auto& [idx, cf] : lambda0.components())
        if (idx.size() != 2) throw ConstraintViolation("not a bivector");
    Var z = c.vars[0], w = c.vars[1];
    LaurentPoly g = lambda0.is_zero() ? LaurentPoly() : lambda0.coeff({0, 1});
    std::map<Monomial, LaurentPoly> by_mono = g.collect(std::set<Var>{z, w});
    auto co = [&](int ez, int ew) {
        auto it = by_mono.find(Monomial::from_pairs({{z, ez}, {w, ew}}));
        return it == by_mono.end() ? LaurentPoly() : it->second;
    };
    // monomials allowed per type, with the name of their constant
    std::vector<std::tuple<int, int, std::string>> slots;
    switch (t.tag) {
        case HopfTag::IV: slots = {{2, 0, "A"}, {1, 1, "B"}, {0, 2, "C"}}; break;
        case HopfTag::III: slots = {{1, 1, "A"}, {0, t.p + 1, "B"}}; break;
        case HopfTag::IIa: slots = {{0, t.p + 1, "A"}}; break;
        case HopfTag::IIb: slots = {{0, 2, "A"}}; break;
        case HopfTag::IIc: slots = {{1, 1, "A"}}; break;
    }
    LaurentPoly rest = g;
    Substitution constants;
    for (auto& [ez, ew, name] : slots) {
        LaurentPoly k = co(ez, ew);
        constants[intern(name)] = k;
        rest -= k * Z(ez) * Wv(ew);
    }
    if (!rest.is_zero())
        throw ConstraintViolation("not a Poisson structure on a Hopf surface of type " + t.name() + ": " +
                                  biv(rest).str() + " is not invariant");
    auto K = [&](const char* n) { return constants.count(intern(n)) ? constants.at(intern(n)) : LaurentPoly(); };

    std::string label;
    switch (t.tag) {
        case HopfTag::IV:
            if (g.is_zero()) label = "L0=0";
            else if ((LaurentPoly(4) * K("A") * K("C") - K("B") * K("B")).is_zero()) label = "4AC-B^2=0";
            else label = "4AC-B^2!=0";
            break;
        case HopfTag::III:
            label = g.is_zero() ? "L0=0" : K("A").is_zero() ? "B!=0" : "A!=0";
            break;
        default:
            label = "any A";
    }
    HopfStratum s = hopf_stratum(t, label);
    std::string family = s.family;
    s.lambda0 = lambda0.is_zero() ? MultiVector(c) : lambda0;
    s.nonzero.clear();
    s.family.clear();
    Certificate cert = hopf_certificate(s, D);
    if (cert.verdict != Verdict::Undetermined || family.empty()) return cert;

    HopfFamily fam = hopf_family(family, t.has_p() ? t.p : 2);
    fam.lambda = lp_substitute(fam.lambda, constants);
    for (auto& [v, img] : fam.map) img = lp_substitute(img, constants);
    if (!family_invariance(fam.lambda, fam.map)) return cert;
    MembershipReport r = d_membership(fam, s, tau_images(fam), D);
    if (!r.ok()) return cert;
    cert.verdict = Verdict::UnobstructedMC;
    cert.reason.reset();
    cert.solution = fam.name;
    return cert;
}

bool degenerate_family_vanishes(DegenerateCase which, int p, int D) {
    LaurentPoly A = sym("A"), B = sym("B"), a = sym("alpha"), b = sym("beta"), d = sym("delta"), l = sym("lambda"),
                t = sym("t");
    Var z = hopf_chart().vars[0], w = hopf_chart().vars[1];
    HopfStratum s;
    HopfFamily fam;
    switch (which) {
        case DegenerateCase::IVSquare:
            s = {HopfType::iv(), "A*z^2", biv(A * Z(2)), {A}, ""};
            fam = {"hopf-iv-square", s.type, s.label, {"alpha", "beta", "t"}, {{intern("beta"), 0}, {intern("t"), 0}},
                   (A + t) * Z(2), {{z, a * Z()}, {w, b * Z() + a * Wv()}}};
            break;
        case DegenerateCase::IIIBw:
            s = hopf_stratum(HopfType::iii(p), "B!=0");
            fam = {"hopf-iii-degenerate", s.type, s.label, {"delta", "lambda", "t"}, {{intern("lambda"), 0}, {intern("t"), 0}},
                   (B + t) * Wv(p + 1), {{z, d.pow(p) * Z() + l * Wv(p)}, {w, d * Wv()}}};
            break;
        case DegenerateCase::IIcControl:
            s = hopf_stratum(HopfType::iic(), "any A");
            fam = hopf_family("hopf-iic");
            break;
    }
    if (!family_invariance(fam.lambda, fam.map)) throw std::logic_error(fam.name + " is not invariant");
    ChartMap f = checked_base_map(fam);
    std::vector<DPair> dt;
    for (auto& pr : tau_images(fam))
        if (pr.label == "d/dt") dt.push_back(pr);
    check_members(f, s.lambda0, dt);
    DeformationComplexModel md = hopf_model(s, D);
    return sigma_rank(md, s.type, dt, D) == 0;
}

}  // namespace poissonlab
