#include "poissonlab/laurent.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace poissonlab {

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(Var v, int e) {
    if (e != 0) e_.emplace_back(v, e);
}

Monomial Monomial::from_pairs(std::vector<std::pair<Var, int>> pairs) {
    std::sort(pairs.begin(), pairs.end());
    Monomial m;
    for (auto& [v, e] : pairs) {
        if (!m.e_.empty() && m.e_.back().first == v)
            m.e_.back().second += e;
        else
            m.e_.emplace_back(v, e);
        if (m.e_.back().second == 0) m.e_.pop_back();
    }
    return m;
}

int Monomial::exponent(Var v) const {
    for (auto& [x, e] : e_)
        if (x == v) return e;
    return 0;
}

bool Monomial::has_negative() const {
    return std::any_of(e_.begin(), e_.end(), [](auto& p) { return p.second < 0; });
}

int Monomial::total_degree() const {
    int d = 0;
    for (auto& p : e_) d += p.second;
    return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    r.e_.reserve(e_.size() + o.e_.size());
    std::size_t i = 0, j = 0;
    while (i < e_.size() || j < o.e_.size()) {
        if (j == o.e_.size() || (i < e_.size() && e_[i].first < o.e_[j].first)) {
            r.e_.push_back(e_[i++]);
        } else if (i == e_.size() || o.e_[j].first < e_[i].first) {
            r.e_.push_back(o.e_[j++]);
        } else {
            int s = e_[i].second + o.e_[j].second;
            if (s != 0) r.e_.emplace_back(e_[i].first, s);
            ++i;
            ++j;
        }
    }
    return r;
}

Monomial Monomial::inverse() const {
    Monomial r = *this;
    for (auto& p : r.e_) p.second = -p.second;
    return r;
}

Monomial Monomial::restrict_to(const std::set<Var>& vars, bool keep_inside) const {
    Monomial r;
    for (auto& p : e_)
        if ((vars.count(p.first) > 0) == keep_inside) r.e_.push_back(p);
    return r;
}

Monomial Monomial::without(Var v) const {
    Monomial r;
    for (auto& p : e_)
        if (p.first != v) r.e_.push_back(p);
    return r;
}

int Monomial::lex_compare(const Monomial& a, const Monomial& b) {
    std::size_t i = 0, j = 0;
    while (i < a.e_.size() || j < b.e_.size()) {
        if (j == b.e_.size() || (i < a.e_.size() && a.e_[i].first < b.e_[j].first)) {
            return a.e_[i].second < 0 ? -1 : 1;
        }
        if (i == a.e_.size() || b.e_[j].first < a.e_[i].first) {
            return b.e_[j].second < 0 ? 1 : -1;
        }
        if (a.e_[i].second != b.e_[j].second) return a.e_[i].second < b.e_[j].second ? -1 : 1;
        ++i;
        ++j;
    }
    return 0;
}

std::string Monomial::str() const {
    std::ostringstream os;
    bool first = true;
    for (auto& [v, e] : e_) {
        if (!first) os << "*";
        first = false;
        os << var_name(v);
        if (e != 1) os << "^" << e;
    }
    return os.str();
}

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly::LaurentPoly(const GaussianRational& c) {
    if (!c.is_zero()) terms_.emplace(Monomial(), c);
}

LaurentPoly LaurentPoly::var(Var v, int e) { return term(Monomial(v, e), 1); }

LaurentPoly LaurentPoly::term(const Monomial& m, const GaussianRational& c) {
    LaurentPoly p;
    if (!c.is_zero()) p.terms_.emplace(m, c);
    return p;
}

void LaurentPoly::add_term(const Monomial& m, const GaussianRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

bool LaurentPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }

GaussianRational LaurentPoly::constant_term() const { return coeff(Monomial()); }

GaussianRational LaurentPoly::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? GaussianRational() : it->second;
}

std::pair<Monomial, GaussianRational> LaurentPoly::leading_term() const {
    if (terms_.empty()) throw ArithmeticError("leading term of zero polynomial");
    return *terms_.rbegin();
}

std::pair<Monomial, GaussianRational> LaurentPoly::trailing_term() const {
    if (terms_.empty()) throw ArithmeticError("trailing term of zero polynomial");
    return *terms_.begin();
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    for (auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    if (a.is_zero() || b.is_zero()) return r;
    for (auto& [ma, ca] : a.terms_)
        for (auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
    *this = *this * o;
    return *this;
}

LaurentPoly& LaurentPoly::operator*=(const GaussianRational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, x] : terms_) x *= c;
    return *this;
}

bool operator<(const LaurentPoly& a, const LaurentPoly& b) {
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
        int c = Monomial::lex_compare(ia->first, ib->first);
        if (c != 0) return c < 0;
        c = ia->second.compare(ib->second);
        if (c != 0) return c < 0;
    }
    return a.terms_.size() < b.terms_.size();
}

LaurentPoly LaurentPoly::pow(int e) const {
    if (e < 0) {
        if (!is_monomial()) throw ArithmeticError("negative power of a non-monomial: " + str());
        auto [m, c] = *terms_.begin();
        Monomial mi = m.inverse();
        LaurentPoly inv = term(mi, c.inverse());
        return inv.pow(-e);
    }
    if (is_monomial()) {
        auto [m, c] = *terms_.begin();
        std::vector<std::pair<Var, int>> pr;
        for (auto& [v, x] : m.pairs()) pr.emplace_back(v, x * e);
        return term(Monomial::from_pairs(pr), c.pow(e));
    }
    LaurentPoly result(1), base(*this);
    while (e > 0) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return result;
}

LaurentPoly LaurentPoly::mul_monomial(const Monomial& m) const {
    LaurentPoly r;
    for (auto& [x, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), x * m, c);
    return r;
}

std::set<Var> LaurentPoly::vars() const {
    std::set<Var> s;
    for (auto& [m, c] : terms_)
        for (auto& p : m.pairs()) s.insert(p.first);
    return s;
}

bool LaurentPoly::involves(Var v) const {
    for (auto& [m, c] : terms_)
        if (m.exponent(v) != 0) return true;
    return false;
}

int LaurentPoly::max_degree(Var v) const {
    if (terms_.empty()) return 0;
    int d = std::numeric_limits<int>::min();
    for (auto& [m, c] : terms_) d = std::max(d, m.exponent(v));
    return d;
}

int LaurentPoly::min_degree(Var v) const {
    if (terms_.empty()) return 0;
    int d = std::numeric_limits<int>::max();
    for (auto& [m, c] : terms_) d = std::min(d, m.exponent(v));
    return d;
}

std::map<int, LaurentPoly> LaurentPoly::collect(Var v) const {
    std::map<int, LaurentPoly> out;
    for (auto& [m, c] : terms_) out[m.exponent(v)].add_term(m.without(v), c);
    return out;
}

std::map<Monomial, LaurentPoly> LaurentPoly::collect(const std::set<Var>& vars) const {
    std::map<Monomial, LaurentPoly> out;
    for (auto& [m, c] : terms_) out[m.restrict_to(vars)].add_term(m.restrict_to(vars, false), c);
    return out;
}

LaurentPoly LaurentPoly::filter_degree(Var v, int lo, int hi) const {
    LaurentPoly r;
    for (auto& [m, c] : terms_) {
        int e = m.exponent(v);
        if (e >= lo && e <= hi) r.terms_.emplace_hint(r.terms_.end(), m, c);
    }
    return r;
}

Monomial LaurentPoly::monomial_content() const {
    if (terms_.empty()) return {};
    std::map<Var, int> mins;
    std::set<Var> all = vars();
    for (Var v : all) mins[v] = std::numeric_limits<int>::max();
    for (auto& [m, c] : terms_)
        for (Var v : all) mins[v] = std::min(mins[v], m.exponent(v));
    std::vector<std::pair<Var, int>> pr(mins.begin(), mins.end());
    return Monomial::from_pairs(pr);
}

std::optional<LaurentPoly> LaurentPoly::divide_exact(const LaurentPoly& b) const {
    if (b.is_zero()) throw ArithmeticError("division by zero polynomial");
    if (is_zero()) return LaurentPoly();
    if (b.is_monomial()) {
        auto [mb, cb] = *b.terms_.begin();
        LaurentPoly r = mul_monomial(mb.inverse());
        return r * cb.inverse();
    }
    // Shift both operands into the polynomial ring; the divisor then has no
    // monomial factor, so Laurent divisibility equals polynomial divisibility.
    Monomial ma = monomial_content(), mb = b.monomial_content();
    LaurentPoly r = mul_monomial(ma.inverse());
    LaurentPoly b0 = b.mul_monomial(mb.inverse());
    auto [lm, lc] = b0.leading_term();
    GaussianRational lci = lc.inverse();
    LaurentPoly q;
    while (!r.is_zero()) {
        auto [rm, rc] = r.leading_term();
        Monomial t = rm / lm;
        if (t.has_negative()) return std::nullopt;
        GaussianRational c = rc * lci;
        q.add_term(t, c);
        LaurentPoly sub = b0.mul_monomial(t);
        sub *= c;
        r -= sub;
    }
    return q.mul_monomial(ma * mb.inverse());
}

std::string LaurentPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        std::string t;
        if (m.is_one()) {
            t = c.str();
        } else if (c.is_one()) {
            t = m.str();
        } else if (c == GaussianRational(-1)) {
            t = "-" + m.str();
        } else {
            t = c.str() + "*" + m.str();
        }
        if (first) {
            os << t;
        } else if (t[0] == '-') {
            os << " - " << t.substr(1);
        } else {
            os << " + " << t;
        }
        first = false;
    }
    return os.str();
}

std::size_t LaurentPoly::hash() const {
    std::size_t h = 1469598103934665603ull;
    for (auto& [m, c] : terms_) {
        for (auto& [v, e] : m.pairs()) h = (h ^ static_cast<std::size_t>(v * 131 + e)) * 1099511628211ull;
        h = (h ^ c.hash()) * 1099511628211ull;
    }
    return h;
}

// ---------------------------------------------------------------- free functions

LaurentPoly lp_substitute(const LaurentPoly& p, const Substitution& subst) {
    std::map<std::pair<Var, int>, LaurentPoly> cache;
    auto power = [&](Var v, int e) -> const LaurentPoly& {
        auto key = std::make_pair(v, e);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        const LaurentPoly& s = subst.at(v);
        if (e < 0 && !s.is_monomial())
            throw NonInvertibleSubstitution("variable " + var_name(v) + " appears with negative exponent but maps to " +
                                            s.str());
        return cache.emplace(key, s.pow(e)).first->second;
    };
    LaurentPoly result;
    for (auto& [m, c] : p.terms()) {
        std::vector<std::pair<Var, int>> kept;
        LaurentPoly t(c);
        for (auto& [v, e] : m.pairs()) {
            if (subst.count(v))
                t = t * power(v, e);
            else
                kept.emplace_back(v, e);
        }
        result += t.mul_monomial(Monomial::from_pairs(kept));
    }
    return result;
}

LaurentPoly lp_partial(const LaurentPoly& p, Var v) {
    var_name(v);  // throws UnknownVariable for ids never interned
    LaurentPoly r;
    for (auto& [m, c] : p.terms()) {
        int e = m.exponent(v);
        if (e == 0) continue;
        std::vector<std::pair<Var, int>> pr = m.pairs();
        for (auto& x : pr)
            if (x.first == v) x.second -= 1;
        r += LaurentPoly::term(Monomial::from_pairs(pr), c * GaussianRational(e));
    }
    return r;
}

bool lp_is_holomorphic(const LaurentPoly& p, const std::set<Var>& vars) {
    for (auto& [m, c] : p.terms())
        for (auto& [v, e] : m.pairs())
            if (e < 0 && vars.count(v)) return false;
    return true;
}

}  // namespace poissonlab
