#include "poissonlab/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

namespace poissonlab {

// ---------------------------------------------------------------- bases

LabeledBasis::LabeledBasis(std::string name, std::vector<FormedMultiVector> elems)
    : space_name(std::move(name)), elements(std::move(elems)) {}

LabeledBasis::LabeledBasis(std::string name, const std::vector<MultiVector>& elems) : space_name(std::move(name)) {
    for (auto& e : elems) elements.emplace_back(e);
}

FormedMultiVector LabeledBasis::combine(const Vector& coords) const {
    if (coords.size() != elements.size()) throw std::invalid_argument("coordinate vector has wrong length");
    FormedMultiVector r = elements.empty() ? FormedMultiVector() : FormedMultiVector(elements[0].chart());
    for (std::size_t i = 0; i < coords.size(); ++i)
        if (!coords[i].is_zero()) r += coords[i] * elements[i];
    return r;
}

std::vector<std::string> LabeledBasis::labels() const {
    std::vector<std::string> out;
    for (auto& e : elements) out.push_back(e.str());
    return out;
}

Vector LinMap::column(std::size_t j) const {
    Vector v;
    for (auto& row : entries) v.push_back(row[j]);
    return v;
}

// ---------------------------------------------------------------- matrix helpers

Matrix zero_matrix(std::size_t rows, std::size_t cols) { return Matrix(rows, Vector(cols)); }

Matrix transpose(const Matrix& m, std::size_t cols_if_empty) {
    std::size_t cols = m.empty() ? cols_if_empty : m[0].size();
    Matrix t = zero_matrix(cols, m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) t[j][i] = m[i][j];
    return t;
}

Matrix hconcat(const Matrix& a, const Matrix& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    if (a.size() != b.size()) throw std::invalid_argument("hconcat: row counts differ");
    Matrix r = a;
    for (std::size_t i = 0; i < a.size(); ++i) r[i].insert(r[i].end(), b[i].begin(), b[i].end());
    return r;
}

Vector substitute(const Vector& v, const Substitution& s) {
    Vector r;
    r.reserve(v.size());
    for (auto& p : v) r.push_back(lp_substitute(p, s));
    return r;
}

Matrix substitute(const Matrix& m, const Substitution& s) {
    Matrix r;
    for (auto& row : m) r.push_back(substitute(row, s));
    return r;
}

Vector mat_vec(const Matrix& m, const Vector& v) {
    Vector r(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            if (!m[i][j].is_zero() && !v[j].is_zero()) r[i] += m[i][j] * v[j];
    return r;
}

bool is_zero(const Vector& v) {
    return std::all_of(v.begin(), v.end(), [](const LaurentPoly& p) { return p.is_zero(); });
}

bool is_zero(const Matrix& m) {
    return std::all_of(m.begin(), m.end(), [](const Vector& v) { return is_zero(v); });
}

std::string matrix_str(const Matrix& m) {
    std::ostringstream os;
    for (auto& row : m) {
        os << "[";
        for (std::size_t j = 0; j < row.size(); ++j) os << (j ? ", " : "") << row[j].str();
        os << "]\n";
    }
    return os.str();
}

std::vector<LaurentPoly> matrix_polys(const Matrix& m) {
    std::vector<LaurentPoly> out;
    for (auto& row : m)
        for (auto& p : row)
            if (!p.is_zero()) out.push_back(p);
    return out;
}

LinMap matrix_of_map(const std::function<FormedMultiVector(const FormedMultiVector&)>& op, const LabeledBasis& dom,
                     const LabeledBasis& cod, const Reducer& red) {
    LinMap m{dom, cod, zero_matrix(cod.size(), dom.size()), {}};
    for (std::size_t j = 0; j < dom.size(); ++j) {
        Vector c = red(op(dom[j]));
        if (c.size() != cod.size()) throw std::logic_error("reducer returned wrong number of coordinates");
        for (std::size_t i = 0; i < c.size(); ++i) m.entries[i][j] = c[i];
    }
    return m;
}

// ---------------------------------------------------------------- elimination

namespace {

LaurentPoly exact_div(const LaurentPoly& a, const LaurentPoly& b) {
    if (b == LaurentPoly(1)) return a;
    auto q = a.divide_exact(b);
    if (!q) throw std::logic_error("fraction-free elimination: inexact division of " + a.str() + " by " + b.str());
    return *q;
}

}  // namespace

Elimination eliminate(const Matrix& m, std::size_t cols) {
    Elimination el;
    Matrix a = m;
    const std::size_t rows = a.size();
    std::vector<std::size_t> perm(rows);
    std::iota(perm.begin(), perm.end(), 0);
    LaurentPoly prev(1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t best = rows;
        for (std::size_t i = r; i < rows; ++i) {
            if (a[i][c].is_zero()) continue;
            if (best == rows || a[i][c].size() < a[best][c].size()) best = i;
        }
        if (best == rows) continue;
        if (best != r) {
            std::swap(a[best], a[r]);
            std::swap(perm[best], perm[r]);
            el.sign = -el.sign;
        }
        const LaurentPoly& piv = a[r][c];
        for (std::size_t i = r + 1; i < rows; ++i) {
            const LaurentPoly f = a[i][c];
            for (std::size_t j = c + 1; j < cols; ++j) {
                LaurentPoly v = piv * a[i][j];
                if (!f.is_zero() && !a[r][j].is_zero()) v -= f * a[r][j];
                a[i][j] = exact_div(v, prev);
            }
            a[i][c] = LaurentPoly();
        }
        prev = piv;
        el.pivot_rows.push_back(perm[r]);
        el.pivot_cols.push_back(c);
        ++r;
    }
    el.rank = r;
    el.last_pivot = prev;
    return el;
}

std::size_t generic_rank(const Matrix& m, std::size_t cols) { return eliminate(m, cols).rank; }
std::size_t generic_rank(const LinMap& m) { return generic_rank(m.entries, m.cols()); }

LaurentPoly determinant(const Matrix& sq) {
    if (sq.empty()) return 1;
    Elimination el = eliminate(sq, sq.size());
    if (el.rank < sq.size()) return {};
    return el.sign > 0 ? el.last_pivot : -el.last_pivot;
}

namespace {

Matrix submatrix(const Matrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
    Matrix s;
    for (auto i : rows) {
        Vector row;
        for (auto j : cols) row.push_back(m[i][j]);
        s.push_back(row);
    }
    return s;
}

bool all_real(const Vector& v) {
    for (auto& p : v)
        for (auto& [mono, c] : p.terms())
            if (!c.is_real()) return false;
    return true;
}

}  // namespace

Vector normalize_vector(Vector v, const std::vector<LaurentPoly>& divisors) {
    if (is_zero(v)) return v;
    // monomial content across all entries
    {
        std::map<Var, int> lo;
        std::set<Var> vars;
        for (auto& p : v)
            for (Var x : p.vars()) vars.insert(x);
        for (Var x : vars) {
            int mn = std::numeric_limits<int>::max();
            for (auto& p : v)
                if (!p.is_zero()) mn = std::min(mn, p.min_degree(x));
            lo[x] = mn;
        }
        std::vector<std::pair<Var, int>> pr(lo.begin(), lo.end());
        Monomial inv = Monomial::from_pairs(pr).inverse();
        for (auto& p : v) p = p.mul_monomial(inv);
    }
    // trial division by known polynomial factors
    std::vector<LaurentPoly> ds;
    for (auto& d : divisors) {
        if (d.is_zero() || d.is_monomial()) continue;
        LaurentPoly d0 = d.mul_monomial(d.monomial_content().inverse());
        if (std::find(ds.begin(), ds.end(), d0) == ds.end()) ds.push_back(d0);
    }
    bool progress = true;
    while (progress) {
        progress = false;
        for (auto& d : ds) {
            Vector q;
            bool ok = true;
            for (auto& p : v) {
                auto r = p.divide_exact(d);
                if (!r) {
                    ok = false;
                    break;
                }
                q.push_back(*r);
            }
            if (ok) {
                v = q;
                progress = true;
            }
        }
    }
    // numeric content
    if (all_real(v)) {
        mpz_class num_gcd = 0, den_lcm = 1;
        for (auto& p : v)
            for (auto& [mono, c] : p.terms()) {
                mpq_class q = c.re();
                mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), q.get_num().get_mpz_t());
                mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), q.get_den().get_mpz_t());
            }
        GaussianRational scale(mpq_class(den_lcm, num_gcd));
        for (auto& p : v) p *= scale;
    } else {
        for (auto& p : v)
            if (!p.is_zero()) {
                GaussianRational lc = p.leading_term().second.inverse();
                for (auto& x : v) x *= lc;
                break;
            }
    }
    for (auto& p : v)
        if (!p.is_zero()) {
            if (p.leading_term().second.lead_sign() < 0)
                for (auto& x : v) x = -x;
            break;
        }
    return v;
}

std::vector<Vector> kernel_basis(const Matrix& m, std::size_t cols) {
    Elimination el = eliminate(m, cols);
    std::vector<Vector> out;
    std::vector<bool> is_pivot(cols, false);
    for (auto c : el.pivot_cols) is_pivot[c] = true;
    Matrix b = submatrix(m, el.pivot_rows, el.pivot_cols);
    std::vector<LaurentPoly> divisors = matrix_polys(m);
    divisors.push_back(el.last_pivot);
    for (std::size_t j = 0; j < cols; ++j) {
        if (is_pivot[j]) continue;
        Vector x(cols);
        x[j] = el.last_pivot;
        for (std::size_t i = 0; i < el.rank; ++i) {
            Matrix bi = b;
            for (std::size_t k = 0; k < el.rank; ++k) bi[k][i] = m[el.pivot_rows[k]][j];
            x[el.pivot_cols[i]] = -determinant(bi);
        }
        if (!is_zero(mat_vec(m, x))) throw std::logic_error("kernel vector check failed");
        out.push_back(normalize_vector(x, divisors));
    }
    return out;
}

std::vector<Vector> kernel_basis(const LinMap& m) { return kernel_basis(m.entries, m.cols()); }

namespace {

Matrix columns_to_matrix(const std::vector<Vector>& cols, std::size_t rows) {
    Matrix m = zero_matrix(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw std::invalid_argument("vector length mismatch");
        for (std::size_t i = 0; i < rows; ++i) m[i][j] = cols[j][i];
    }
    return m;
}

}  // namespace

std::vector<Vector> cokernel_coords(const Matrix& m, std::size_t rows, const std::vector<Vector>& preferred) {
    std::vector<Vector> cols;
    if (!m.empty())
        for (std::size_t j = 0; j < m[0].size(); ++j) {
            Vector c;
            for (auto& row : m) c.push_back(row[j]);
            cols.push_back(c);
        }
    std::size_t cur = generic_rank(columns_to_matrix(cols, rows), cols.size());
    std::vector<Vector> chosen;
    std::vector<Vector> candidates = preferred;
    for (std::size_t i = 0; i < rows; ++i) {
        Vector e(rows);
        e[i] = 1;
        candidates.push_back(e);
    }
    for (auto& cand : candidates) {
        if (cur == rows) break;
        cols.push_back(cand);
        std::size_t r = generic_rank(columns_to_matrix(cols, rows), cols.size());
        if (r > cur) {
            cur = r;
            chosen.push_back(cand);
        } else {
            cols.pop_back();
        }
    }
    return chosen;
}

LabeledBasis cokernel_rep(const LinMap& m, const std::vector<Vector>& preferred) {
    LabeledBasis out;
    out.space_name = "coker(" + m.domain.space_name + " -> " + m.codomain.space_name + ")";
    for (auto& c : cokernel_coords(m.entries, m.rows(), preferred)) out.elements.push_back(m.codomain.combine(c));
    return out;
}

LinMap specialize(const LinMap& m, const Substitution& assignment) {
    LinMap r;
    for (auto& c : m.nonzero) {
        LaurentPoly s = lp_substitute(c, assignment);
        if (s.is_zero()) throw ConstraintViolation("specialization makes " + c.str() + " vanish");
        if (!s.is_constant()) r.nonzero.push_back(s);
    }
    r.entries = substitute(m.entries, assignment);
    r.domain = m.domain;
    r.codomain = m.codomain;
    for (auto& e : r.domain.elements) e = e.substitute(assignment);
    for (auto& e : r.codomain.elements) e = e.substitute(assignment);
    return r;
}

bool same_span(const std::vector<Vector>& a, const std::vector<Vector>& b) {
    if (a.empty() || b.empty()) {
        auto zero = [](const std::vector<Vector>& vs) {
            return std::all_of(vs.begin(), vs.end(), [](const Vector& v) { return is_zero(v); });
        };
        return zero(a) && zero(b);
    }
    std::size_t n = a[0].size();
    std::vector<Vector> ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    std::size_t ra = generic_rank(columns_to_matrix(a, n), a.size());
    std::size_t rb = generic_rank(columns_to_matrix(b, n), b.size());
    std::size_t rab = generic_rank(columns_to_matrix(ab, n), ab.size());
    return ra == rb && rb == rab;
}

bool in_span(const std::vector<Vector>& vs, const Vector& v) {
    if (is_zero(v)) return true;
    if (vs.empty()) return false;
    std::vector<Vector> all = vs;
    all.push_back(v);
    std::size_t n = v.size();
    return generic_rank(columns_to_matrix(vs, n), vs.size()) == generic_rank(columns_to_matrix(all, n), all.size());
}

std::optional<std::pair<Vector, LaurentPoly>> solve(const Matrix& b, std::size_t cols, const Vector& x) {
    Elimination el = eliminate(b, cols);
    if (el.rank < cols) throw std::invalid_argument("solve: matrix does not have full column rank");
    Matrix bp = submatrix(b, el.pivot_rows, el.pivot_cols);
    LaurentPoly den = el.last_pivot;
    Vector num(cols);
    for (std::size_t i = 0; i < cols; ++i) {
        Matrix bi = bp;
        for (std::size_t k = 0; k < cols; ++k) bi[k][i] = x[el.pivot_rows[k]];
        num[i] = determinant(bi);
    }
    Vector lhs = mat_vec(b, num);
    for (std::size_t i = 0; i < b.size(); ++i)
        if (lhs[i] != den * x[i]) return std::nullopt;
    Vector q;
    for (auto& p : num) {
        auto r = p.divide_exact(den);
        if (!r) return std::make_pair(num, den);
        q.push_back(*r);
    }
    return std::make_pair(q, LaurentPoly(1));
}

// ---------------------------------------------------------------- reducers

std::map<TermKey, LaurentPoly> term_coordinates(const FormedMultiVector& f) {
    std::map<TermKey, LaurentPoly> out;
    auto vars = f.chart().var_set();
    for (auto& [d, mv] : f.parts())
        for (auto& [idx, c] : mv.components())
            for (auto& [mono, coeff] : c.collect(vars)) out[TermKey{d, idx, mono}] += coeff;
    return out;
}

Reducer monomial_reducer(const LabeledBasis& b) {
    std::map<TermKey, std::pair<std::size_t, LaurentPoly>> index;
    for (std::size_t i = 0; i < b.size(); ++i) {
        auto tc = term_coordinates(b[i]);
        if (tc.size() != 1) throw std::invalid_argument("monomial_reducer: basis element is not a single term: " + b[i].str());
        auto& [key, c] = *tc.begin();
        if (!index.emplace(key, std::make_pair(i, c)).second)
            throw std::invalid_argument("monomial_reducer: repeated basis element");
    }
    std::string name = b.space_name;
    std::size_t n = b.size();
    return [index, name, n](const FormedMultiVector& f) {
        Vector out(n);
        for (auto& [key, c] : term_coordinates(f)) {
            auto it = index.find(key);
            if (it == index.end())
                throw NotInSpan("term " + FormedMultiVector(MultiVector::term(f.chart(), key.idx, LaurentPoly::term(key.mono, 1)), key.dbar).str() +
                                " is not in " + name);
            auto q = c.divide_exact(it->second.second);
            if (!q) throw NotInSpan("coefficient not divisible in " + name);
            out[it->second.first] = *q;
        }
        return out;
    };
}

Reducer span_reducer(const LabeledBasis& b) {
    std::map<TermKey, std::size_t> keys;
    std::vector<std::map<TermKey, LaurentPoly>> tcs;
    for (auto& e : b.elements) {
        tcs.push_back(term_coordinates(e));
        for (auto& kv : tcs.back()) keys.emplace(kv.first, 0);
    }
    std::size_t k = 0;
    for (auto& kv : keys) kv.second = k++;
    Matrix m = zero_matrix(keys.size(), b.size());
    for (std::size_t j = 0; j < b.size(); ++j)
        for (auto& [key, c] : tcs[j]) m[keys.at(key)][j] = c;
    Elimination el = eliminate(m, b.size());
    if (el.rank < b.size()) throw std::invalid_argument("span_reducer: basis of " + b.space_name + " is dependent");
    Matrix bp = submatrix(m, el.pivot_rows, el.pivot_cols);
    // adjugate of the pivot block, once
    const std::size_t n = b.size();
    Matrix adj = zero_matrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Matrix minor;
            for (std::size_t r = 0; r < n; ++r) {
                if (r == j) continue;
                Vector row;
                for (std::size_t c = 0; c < n; ++c)
                    if (c != i) row.push_back(bp[r][c]);
                minor.push_back(row);
            }
            LaurentPoly d = determinant(minor);
            adj[i][j] = (i + j) % 2 ? -d : d;
        }
    LaurentPoly den = el.last_pivot;
    std::string name = b.space_name;
    return [keys, m, adj, den, el, name, n](const FormedMultiVector& f) {
        Vector x(keys.size());
        for (auto& [key, c] : term_coordinates(f)) {
            auto it = keys.find(key);
            if (it == keys.end()) throw NotInSpan("field " + f.str() + " has terms outside " + name);
            x[it->second] = c;
        }
        Vector xp;
        for (auto r : el.pivot_rows) xp.push_back(x[r]);
        Vector num = mat_vec(adj, xp);
        Vector out(n);
        for (std::size_t i = 0; i < n; ++i) {
            auto q = num[i].divide_exact(den);
            if (!q) throw NotInSpan("coordinates of " + f.str() + " in " + name + " are not Laurent polynomials");
            out[i] = *q;
        }
        if (mat_vec(m, out) != x) throw NotInSpan("field " + f.str() + " is not in " + name);
        return out;
    };
}

Substitution random_point(const std::vector<LaurentPoly>& polys, std::uint64_t seed) {
    std::set<Var> vars;
    for (auto& p : polys)
        for (Var v : p.vars()) vars.insert(v);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> den(1, 97);
    Substitution s;
    for (Var v : vars) {
        long d = den(rng);
        std::uniform_int_distribution<long> num(d, d * 1000000L);
        s[v] = LaurentPoly(GaussianRational(num(rng), d));
    }
    return s;
}

}  // namespace poissonlab

namespace poissonlab {

std::vector<std::size_t> independent_subset(const std::vector<Vector>& vs) {
    if (vs.empty()) return {};
    Matrix m = zero_matrix(vs[0].size(), vs.size());
    for (std::size_t j = 0; j < vs.size(); ++j)
        for (std::size_t i = 0; i < vs[j].size(); ++i) m[i][j] = vs[j][i];
    return eliminate(m, vs.size()).pivot_cols;
}

Reducer quotient_reducer(const LabeledBasis& b, const std::vector<FormedMultiVector>& relations) {
    // key space spanned by basis and relations
    std::map<TermKey, std::size_t> keys;
    std::vector<std::map<TermKey, LaurentPoly>> tb, tr;
    for (auto& e : b.elements) tb.push_back(term_coordinates(e));
    for (auto& r : relations) tr.push_back(term_coordinates(r));
    for (auto* group : {&tb, &tr})
        for (auto& tc : *group)
            for (auto& kv : tc) keys.emplace(kv.first, 0);
    std::size_t k = 0;
    for (auto& kv : keys) kv.second = k++;
    auto to_vec = [&](const std::map<TermKey, LaurentPoly>& tc) {
        Vector v(keys.size());
        for (auto& [key, c] : tc) v[keys.at(key)] = c;
        return v;
    };
    std::vector<Vector> rel;
    for (auto& tc : tr) rel.push_back(to_vec(tc));
    std::vector<Vector> cols;
    for (auto& tc : tb) cols.push_back(to_vec(tc));
    const std::size_t n = cols.size();
    for (auto j : independent_subset(rel)) cols.push_back(rel[j]);
    Matrix m = zero_matrix(keys.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < keys.size(); ++i) m[i][j] = cols[j][i];
    if (generic_rank(m, cols.size()) < cols.size())
        throw std::invalid_argument("quotient_reducer: basis of " + b.space_name + " is not a complement");
    std::string name = b.space_name;
    std::size_t total = cols.size();
    return [keys, m, n, total, name](const FormedMultiVector& f) {
        Vector x(keys.size());
        for (auto& [key, c] : term_coordinates(f)) {
            auto it = keys.find(key);
            if (it == keys.end()) throw NotInSpan("field " + f.str() + " has terms outside " + name);
            x[it->second] = c;
        }
        auto s = solve(m, total, x);
        if (!s) throw NotInSpan("field " + f.str() + " is not in " + name + " + relations");
        Vector out;
        for (std::size_t i = 0; i < n; ++i) {
            auto q = s->first[i].divide_exact(s->second);
            if (!q) throw NotInSpan("class of " + f.str() + " in " + name + " has non-polynomial coordinates");
            out.push_back(*q);
        }
        return out;
    };
}

}  // namespace poissonlab
