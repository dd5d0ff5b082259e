#pragma once

#include <random>

#include "poissonlab/expr.hpp"
#include "poissonlab/mvf.hpp"

namespace testsupport {

using namespace poissonlab;

inline LaurentPoly P(const std::string& s) { return parse_poly(s); }
inline LaurentPoly P(const std::string& s, const Chart& c) { return parse_poly(s, c); }
inline MultiVector MV(const std::string& s, const Chart& c) { return parse_field(s, c).part({}); }
inline FormedMultiVector FV(const std::string& s, const Chart& c) { return parse_field(s, c); }

inline GaussianRational random_scalar(std::mt19937& rng, bool complex = false) {
    std::uniform_int_distribution<long> num(-5, 5), den(1, 4);
    GaussianRational r(num(rng), den(rng));
    if (complex) r += GaussianRational(num(rng), den(rng)) * GaussianRational::i();
    return r;
}

// Random Laurent polynomial in `vars` with exponents in [lo, hi].
inline LaurentPoly random_poly(std::mt19937& rng, const std::vector<Var>& vars, int terms, int lo, int hi,
                               bool complex = false) {
    std::uniform_int_distribution<int> ex(lo, hi);
    LaurentPoly p;
    for (int k = 0; k < terms; ++k) {
        std::vector<std::pair<Var, int>> m;
        for (Var v : vars) m.emplace_back(v, ex(rng));
        p += LaurentPoly::term(Monomial::from_pairs(m), random_scalar(rng, complex));
    }
    return p;
}

// Random homogeneous multivector of grade g with polynomial coefficients.
inline MultiVector random_mv(std::mt19937& rng, const Chart& c, int g, int terms = 2, int maxdeg = 2) {
    MultiVector r(c);
    const int n = static_cast<int>(c.dim());
    std::vector<IndexTuple> tuples;
    for (int mask = 0; mask < (1 << n); ++mask) {
        if (__builtin_popcount(static_cast<unsigned>(mask)) != g) continue;
        IndexTuple t;
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i)) t.push_back(i);
        tuples.push_back(t);
    }
    std::uniform_int_distribution<int> coin(0, 2);
    for (auto& t : tuples)
        if (coin(rng) != 0) r += MultiVector::term(c, t, random_poly(rng, c.vars, terms, 0, maxdeg));
    return r;
}

}  // namespace testsupport
