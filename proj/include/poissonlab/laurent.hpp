#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "poissonlab/scalar.hpp"
#include "poissonlab/symbols.hpp"

namespace poissonlab {

class NonInvertibleSubstitution : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Sparse exponent vector, sorted by variable id, no zero exponents.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(Var v, int e = 1);
    static Monomial from_pairs(std::vector<std::pair<Var, int>> pairs);

    const std::vector<std::pair<Var, int>>& pairs() const { return e_; }
    int exponent(Var v) const;
    bool is_one() const { return e_.empty(); }
    bool has_negative() const;
    int total_degree() const;

    Monomial operator*(const Monomial& o) const;
    Monomial inverse() const;
    Monomial operator/(const Monomial& o) const { return *this * o.inverse(); }
    // Part of the monomial in (or outside) a variable set.
    Monomial restrict_to(const std::set<Var>& vars, bool keep_inside = true) const;
    Monomial without(Var v) const;

    // Lexicographic order by variable id; a group order on Z^n.
    friend bool operator<(const Monomial& a, const Monomial& b) { return lex_compare(a, b) < 0; }
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return a.e_ != b.e_; }
    static int lex_compare(const Monomial& a, const Monomial& b);

    std::string str() const;  // "z^2*w", "" for 1

private:
    std::vector<std::pair<Var, int>> e_;
};

// Multivariate Laurent polynomial over Q(i). Canonical: no zero coefficients.
class LaurentPoly {
public:
    using TermMap = std::map<Monomial, GaussianRational>;

    LaurentPoly() = default;
    LaurentPoly(const GaussianRational& c);  // NOLINT(google-explicit-constructor)
    LaurentPoly(long c) : LaurentPoly(GaussianRational(c)) {}  // NOLINT(google-explicit-constructor)
    static LaurentPoly var(Var v, int e = 1);
    static LaurentPoly var(const std::string& name, int e = 1) { return var(intern(name), e); }
    static LaurentPoly term(const Monomial& m, const GaussianRational& c);

    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    GaussianRational constant_term() const;
    // Single term c*m with c != 0.
    bool is_monomial() const { return terms_.size() == 1; }
    std::pair<Monomial, GaussianRational> leading_term() const;   // lex-largest
    std::pair<Monomial, GaussianRational> trailing_term() const;  // lex-smallest
    GaussianRational coeff(const Monomial& m) const;

    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly& operator*=(const LaurentPoly& o);
    LaurentPoly& operator*=(const GaussianRational& c);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator*(LaurentPoly a, const GaussianRational& c) { return a *= c; }
    friend LaurentPoly operator*(const GaussianRational& c, LaurentPoly a) { return a *= c; }
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }
    // Canonical total order (for use as map keys / deterministic sorting).
    friend bool operator<(const LaurentPoly& a, const LaurentPoly& b);

    // Negative exponents are only allowed when the polynomial is a single term.
    LaurentPoly pow(int e) const;
    LaurentPoly mul_monomial(const Monomial& m) const;

    std::set<Var> vars() const;
    bool involves(Var v) const;
    int max_degree(Var v) const;  // 0 for the zero polynomial
    int min_degree(Var v) const;
    // Group terms by the exponent of v: p = sum_k c_k v^k.
    std::map<int, LaurentPoly> collect(Var v) const;
    // Group terms by their monomial part in `vars`; values are free of `vars`.
    std::map<Monomial, LaurentPoly> collect(const std::set<Var>& vars) const;
    // Terms whose exponent of v satisfies lo <= e <= hi.
    LaurentPoly filter_degree(Var v, int lo, int hi) const;
    // Monomial gcd (componentwise min exponent) of all terms; 1 for zero.
    Monomial monomial_content() const;

    // Exact division; nullopt if b does not divide *this in the Laurent ring.
    std::optional<LaurentPoly> divide_exact(const LaurentPoly& b) const;

    std::string str() const;
    std::size_t hash() const;

private:
    TermMap terms_;
    void add_term(const Monomial& m, const GaussianRational& c);
};

using Substitution = std::map<Var, LaurentPoly>;

LaurentPoly lp_substitute(const LaurentPoly& p, const Substitution& subst);
LaurentPoly lp_partial(const LaurentPoly& p, Var v);
bool lp_is_holomorphic(const LaurentPoly& p, const std::set<Var>& vars);

}  // namespace poissonlab
