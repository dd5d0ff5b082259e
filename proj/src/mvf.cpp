#include "poissonlab/mvf.hpp"

#include <algorithm>
#include <sstream>

namespace poissonlab {

Chart::Chart(std::string n, const std::vector<std::string>& names) : name(std::move(n)) {
    for (auto& s : names) {
        Var v = intern(s);
        if (index_of(v) >= 0) throw std::invalid_argument("duplicate chart variable " + s);
        vars.push_back(v);
    }
}

int Chart::index_of(Var v) const {
    auto it = std::find(vars.begin(), vars.end(), v);
    return it == vars.end() ? -1 : static_cast<int>(it - vars.begin());
}

int sort_sign(IndexTuple& idx) {
    int sign = 1;
    for (std::size_t i = 1; i < idx.size(); ++i)
        for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
            if (idx[j - 1] == idx[j]) return 0;
            std::swap(idx[j - 1], idx[j]);
            sign = -sign;
        }
    return sign;
}

namespace {

// Concatenate two sorted tuples; returns sign (0 if they overlap).
int merge_sign(const IndexTuple& a, const IndexTuple& b, IndexTuple& out) {
    out.clear();
    out.reserve(a.size() + b.size());
    int inversions = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i] < b[j])) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j] < a[i]) {
            inversions += static_cast<int>(a.size() - i);
            out.push_back(b[j++]);
        } else {
            return 0;
        }
    }
    return inversions % 2 ? -1 : 1;
}

void require_same_chart(const Chart& a, const Chart& b) {
    if (a != b) throw ChartMismatch("multivectors live on different charts: " + a.name + " vs " + b.name);
}

// Charts default-constructed as "zero" adopt the other operand's chart.
Chart common_chart(const Chart& a, const Chart& b, bool a_empty, bool b_empty) {
    if (a_empty && a.vars.empty()) return b;
    if (b_empty && b.vars.empty()) return a;
    require_same_chart(a, b);
    return a;
}

std::string generator_product(const Chart& c, const IndexTuple& idx, const IndexTuple& dbar) {
    std::string s;
    for (int i : idx) {
        if (!s.empty()) s += "*";
        s += "@" + var_name(c.vars[static_cast<std::size_t>(i)]);
    }
    for (int i : dbar) {
        if (!s.empty()) s += "*";
        s += "~" + var_name(c.vars[static_cast<std::size_t>(i)]);
    }
    return s;
}

std::string term_string(const LaurentPoly& coeff, const std::string& gens) {
    if (gens.empty()) return coeff.size() > 1 ? "(" + coeff.str() + ")" : coeff.str();
    if (coeff.size() > 1) return "(" + coeff.str() + ")*" + gens;
    if (coeff == LaurentPoly(1)) return gens;
    if (coeff == LaurentPoly(-1)) return "-" + gens;
    return coeff.str() + "*" + gens;
}

std::string join_terms(const std::vector<std::string>& ts) {
    if (ts.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const std::string& t = ts[i];
        if (i == 0)
            out += t;
        else if (t[0] == '-')
            out += " - " + t.substr(1);
        else
            out += " + " + t;
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------- MultiVector

MultiVector MultiVector::term(const Chart& c, IndexTuple idx, const LaurentPoly& coeff) {
    for (int i : idx)
        if (i < 0 || static_cast<std::size_t>(i) >= c.dim()) throw std::out_of_range("chart index out of range");
    MultiVector r(c);
    int s = sort_sign(idx);
    if (s == 0 || coeff.is_zero()) return r;
    r.add(idx, s > 0 ? coeff : -coeff);
    return r;
}

MultiVector MultiVector::field(const Chart& c, const std::vector<std::string>& dirs, const LaurentPoly& coeff) {
    IndexTuple idx;
    for (auto& d : dirs) {
        int k = c.index_of(intern(d));
        if (k < 0) throw UnknownVariable("'" + d + "' is not a variable of chart " + c.name);
        idx.push_back(k);
    }
    return term(c, idx, coeff);
}

void MultiVector::add(const IndexTuple& sorted_idx, const LaurentPoly& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = comps_.emplace(sorted_idx, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) comps_.erase(it);
    }
}

LaurentPoly MultiVector::coeff(const IndexTuple& idx) const {
    IndexTuple s = idx;
    int sign = sort_sign(s);
    if (sign == 0) return {};
    auto it = comps_.find(s);
    if (it == comps_.end()) return {};
    return sign > 0 ? it->second : -it->second;
}

std::set<int> MultiVector::grades() const {
    std::set<int> g;
    for (auto& kv : comps_) g.insert(static_cast<int>(kv.first.size()));
    return g;
}

int MultiVector::grade() const {
    auto g = grades();
    return g.size() == 1 ? *g.begin() : -1;
}

MultiVector MultiVector::grade_part(int k) const {
    MultiVector r(chart_);
    for (auto& [idx, c] : comps_)
        if (static_cast<int>(idx.size()) == k) r.comps_.emplace(idx, c);
    return r;
}

MultiVector MultiVector::operator-() const {
    MultiVector r = *this;
    for (auto& kv : r.comps_) kv.second = -kv.second;
    return r;
}

MultiVector& MultiVector::operator+=(const MultiVector& o) {
    chart_ = common_chart(chart_, o.chart_, is_zero(), o.is_zero());
    for (auto& [idx, c] : o.comps_) add(idx, c);
    return *this;
}

MultiVector& MultiVector::operator-=(const MultiVector& o) {
    chart_ = common_chart(chart_, o.chart_, is_zero(), o.is_zero());
    for (auto& [idx, c] : o.comps_) add(idx, -c);
    return *this;
}

MultiVector operator*(const LaurentPoly& f, const MultiVector& a) {
    MultiVector r(a.chart_);
    if (f.is_zero()) return r;
    for (auto& [idx, c] : a.comps_) r.add(idx, f * c);
    return r;
}

MultiVector MultiVector::with_chart(const Chart& c) const {
    if (c.dim() != chart_.dim()) throw ChartMismatch("chart dimension mismatch");
    MultiVector r(c);
    r.comps_ = comps_;
    return r;
}

bool MultiVector::is_holomorphic() const {
    auto vs = chart_.var_set();
    return std::all_of(comps_.begin(), comps_.end(), [&](auto& kv) { return lp_is_holomorphic(kv.second, vs); });
}

std::string MultiVector::str() const {
    std::vector<std::string> ts;
    for (auto& [idx, c] : comps_) ts.push_back(term_string(c, generator_product(chart_, idx, {})));
    return join_terms(ts);
}

MultiVector wedge(const MultiVector& a, const MultiVector& b) {
    MultiVector r(common_chart(a.chart(), b.chart(), a.is_zero(), b.is_zero()));
    IndexTuple m;
    for (auto& [ia, ca] : a.components())
        for (auto& [ib, cb] : b.components()) {
            int s = merge_sign(ia, ib, m);
            if (s == 0) continue;
            LaurentPoly p = ca * cb;
            r.add(m, s > 0 ? p : -p);
        }
    return r;
}

// Superfunction form with odd θ_i = ∂_i:
//   [P, Q] = Σ_i  P ∂⃖/∂θ_i · ∂Q/∂x_i  −  ∂P/∂x_i · ∂⃗Q/∂θ_i
MultiVector schouten(const MultiVector& a, const MultiVector& b) {
    const Chart chart = common_chart(a.chart(), b.chart(), a.is_zero(), b.is_zero());
    MultiVector r(chart);
    const int n = static_cast<int>(chart.dim());

    // Cache partial derivatives of every coefficient.
    auto partials = [&](const MultiVector& m) {
        std::map<IndexTuple, std::vector<LaurentPoly>> d;
        for (auto& [idx, c] : m.components()) {
            auto& v = d[idx];
            for (int i = 0; i < n; ++i) v.push_back(lp_partial(c, chart.vars[static_cast<std::size_t>(i)]));
        }
        return d;
    };
    auto da = partials(a);
    auto db = partials(b);

    IndexTuple red, merged;
    for (auto& [ia, fa] : a.components()) {
        const int p = static_cast<int>(ia.size());
        for (auto& [ib, gb] : b.components()) {
            // right derivative of P in θ_{ia[k]}
            for (int k = 0; k < p; ++k) {
                const LaurentPoly& dg = db[ib][static_cast<std::size_t>(ia[static_cast<std::size_t>(k)])];
                if (dg.is_zero()) continue;
                red = ia;
                red.erase(red.begin() + k);
                int s = merge_sign(red, ib, merged);
                if (s == 0) continue;
                if ((p - 1 - k) % 2) s = -s;
                LaurentPoly t = fa * dg;
                r.add(merged, s > 0 ? t : -t);
            }
            // left derivative of Q in θ_{ib[k]}
            for (int k = 0; k < static_cast<int>(ib.size()); ++k) {
                const LaurentPoly& df = da[ia][static_cast<std::size_t>(ib[static_cast<std::size_t>(k)])];
                if (df.is_zero()) continue;
                red = ib;
                red.erase(red.begin() + k);
                int s = merge_sign(ia, red, merged);
                if (s == 0) continue;
                if (k % 2) s = -s;
                LaurentPoly t = df * gb;
                r.add(merged, s > 0 ? -t : t);
            }
        }
    }
    return r;
}

// ---------------------------------------------------------------- FormedMultiVector

FormedMultiVector::FormedMultiVector(const MultiVector& mv, IndexTuple dbar) : chart_(mv.chart()) {
    for (int i : dbar)
        if (i < 0 || static_cast<std::size_t>(i) >= chart_.dim()) throw std::out_of_range("dbar index out of range");
    int s = sort_sign(dbar);
    if (s == 0 || mv.is_zero()) return;
    add(dbar, s > 0 ? mv : -mv);
}

void FormedMultiVector::add(const IndexTuple& sorted_dbar, const MultiVector& mv) {
    if (mv.is_zero()) return;
    if (chart_.vars.empty() && parts_.empty()) chart_ = mv.chart();
    require_same_chart(chart_, mv.chart());
    auto [it, inserted] = parts_.emplace(sorted_dbar, mv);
    if (!inserted) {
        it->second += mv;
        if (it->second.is_zero()) parts_.erase(it);
    }
}

MultiVector FormedMultiVector::part(const IndexTuple& dbar) const {
    auto it = parts_.find(dbar);
    return it == parts_.end() ? MultiVector(chart_) : it->second;
}

FormedMultiVector FormedMultiVector::form_degree_part(int q) const {
    FormedMultiVector r(chart_);
    for (auto& [d, mv] : parts_)
        if (static_cast<int>(d.size()) == q) r.parts_.emplace(d, mv);
    return r;
}

FormedMultiVector FormedMultiVector::operator-() const {
    FormedMultiVector r = *this;
    for (auto& kv : r.parts_) kv.second = -kv.second;
    return r;
}

FormedMultiVector& FormedMultiVector::operator+=(const FormedMultiVector& o) {
    chart_ = common_chart(chart_, o.chart_, is_zero(), o.is_zero());
    for (auto& [d, mv] : o.parts_) add(d, mv);
    return *this;
}

FormedMultiVector& FormedMultiVector::operator-=(const FormedMultiVector& o) {
    chart_ = common_chart(chart_, o.chart_, is_zero(), o.is_zero());
    for (auto& [d, mv] : o.parts_) add(d, -mv);
    return *this;
}

FormedMultiVector operator*(const LaurentPoly& f, const FormedMultiVector& a) {
    FormedMultiVector r(a.chart_);
    for (auto& [d, mv] : a.parts_) r.add(d, f * mv);
    return r;
}

std::string FormedMultiVector::str() const {
    std::vector<std::string> ts;
    for (auto& [d, mv] : parts_)
        for (auto& [idx, c] : mv.components()) ts.push_back(term_string(c, generator_product(chart_, idx, d)));
    return join_terms(ts);
}

namespace {

// Split a multivector into homogeneous grades (bracket/wedge signs depend on |B|).
template <class Op>
FormedMultiVector formed_binary(const FormedMultiVector& a, const FormedMultiVector& b, Op op) {
    FormedMultiVector r(common_chart(a.chart(), b.chart(), a.is_zero(), b.is_zero()));
    IndexTuple merged;
    for (auto& [da, ma] : a.parts())
        for (auto& [db, mb] : b.parts()) {
            int s = merge_sign(da, db, merged);
            if (s == 0) continue;
            for (int g : mb.grades()) {
                MultiVector res = op(ma, mb.grade_part(g), static_cast<int>(da.size()), g);
                if (res.is_zero()) continue;
                r.add(merged, s > 0 ? res : -res);
            }
        }
    return r;
}

}  // namespace

FormedMultiVector wedge(const FormedMultiVector& a, const FormedMultiVector& b) {
    return formed_binary(a, b, [](const MultiVector& x, const MultiVector& y, int q, int g) {
        MultiVector w = wedge(x, y);
        return (q * g) % 2 ? -w : w;
    });
}

FormedMultiVector schouten_formed(const FormedMultiVector& a, const FormedMultiVector& b) {
    return formed_binary(a, b, [](const MultiVector& x, const MultiVector& y, int q, int g) {
        MultiVector br = schouten(x, y);
        return (q * (g - 1)) % 2 ? -br : br;
    });
}

FormedMultiVector mc_defect(const MultiVector& lambda0, const FormedMultiVector& el) {
    FormedMultiVector l0(lambda0);
    FormedMultiVector r = schouten_formed(l0, el);
    r += LaurentPoly(GaussianRational(1, 2)) * schouten_formed(el, el);
    return r;
}

// ---------------------------------------------------------------- ChartMap

bool ChartMap::check_inverse() const {
    if (!has_inverse()) return false;
    for (Var y : target.vars) {
        auto it = forward.find(y);
        LaurentPoly img = it == forward.end() ? LaurentPoly::var(y) : it->second;
        if (lp_substitute(img, inverse) != LaurentPoly::var(y)) return false;
    }
    for (Var x : source.vars) {
        auto it = inverse.find(x);
        LaurentPoly img = it == inverse.end() ? LaurentPoly::var(x) : it->second;
        if (lp_substitute(img, forward) != LaurentPoly::var(x)) return false;
    }
    return true;
}

ChartMap ChartMap::reversed() const { return ChartMap{target, source, inverse, forward}; }

MultiVector pushforward(const ChartMap& m0, const MultiVector& a, Direction dir) {
    const ChartMap m = dir == Direction::Forward ? m0 : m0.reversed();
    if (!a.is_zero()) require_same_chart(a.chart(), m.source);
    if (!m.has_inverse()) throw NonInvertibleSubstitution("chart map has no inverse");

    const std::size_t ns = m.source.dim(), nt = m.target.dim();
    // columns[i] = image of ∂/∂x_i = Σ_j ∂y_j/∂x_i ∂/∂y_j, coefficients in source vars
    std::vector<MultiVector> columns;
    for (std::size_t i = 0; i < ns; ++i) {
        MultiVector col(m.target);
        for (std::size_t j = 0; j < nt; ++j) {
            Var y = m.target.vars[j];
            auto it = m.forward.find(y);
            LaurentPoly img = it == m.forward.end() ? LaurentPoly::var(y) : it->second;
            col.add({static_cast<int>(j)}, lp_partial(img, m.source.vars[i]));
        }
        columns.push_back(col);
    }
    MultiVector out(m.target);
    for (auto& [idx, c] : a.components()) {
        MultiVector t = MultiVector::function(m.target, c);
        for (int i : idx) t = wedge(t, columns[static_cast<std::size_t>(i)]);
        out += t;
    }
    return out.substitute(m.inverse);
}

}  // namespace poissonlab
