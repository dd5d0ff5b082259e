#pragma once

#include <map>
#include <string>
#include <vector>

#include "poissonlab/laurent.hpp"

namespace poissonlab {

class ChartMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Chart {
    std::string name;
    std::vector<Var> vars;

    Chart() = default;
    Chart(std::string n, const std::vector<std::string>& names);
    std::size_t dim() const { return vars.size(); }
    int index_of(Var v) const;  // -1 if absent
    std::set<Var> var_set() const { return {vars.begin(), vars.end()}; }
    friend bool operator==(const Chart& a, const Chart& b) { return a.vars == b.vars; }
    friend bool operator!=(const Chart& a, const Chart& b) { return !(a == b); }
};

using IndexTuple = std::vector<int>;  // strictly increasing chart positions

// Sign of sorting `idx` into increasing order; 0 if it has a repeated entry.
int sort_sign(IndexTuple& idx);

// Holomorphic multivector field on a chart, possibly of mixed grade.
class MultiVector {
public:
    MultiVector() = default;
    explicit MultiVector(Chart c) : chart_(std::move(c)) {}
    // coeff * d_{idx[0]} ^ d_{idx[1]} ^ ...; idx may be unsorted (sign applied).
    static MultiVector term(const Chart& c, IndexTuple idx, const LaurentPoly& coeff);
    static MultiVector function(const Chart& c, const LaurentPoly& f) { return term(c, {}, f); }
    // coeff * d/d(var names...)
    static MultiVector field(const Chart& c, const std::vector<std::string>& dirs, const LaurentPoly& coeff);

    const Chart& chart() const { return chart_; }
    const std::map<IndexTuple, LaurentPoly>& components() const { return comps_; }
    LaurentPoly coeff(const IndexTuple& idx) const;
    bool is_zero() const { return comps_.empty(); }
    std::set<int> grades() const;
    // Grade if homogeneous; -1 for zero or mixed.
    int grade() const;
    MultiVector grade_part(int k) const;

    MultiVector operator-() const;
    MultiVector& operator+=(const MultiVector& o);
    MultiVector& operator-=(const MultiVector& o);
    friend MultiVector operator+(MultiVector a, const MultiVector& b) { return a += b; }
    friend MultiVector operator-(MultiVector a, const MultiVector& b) { return a -= b; }
    friend MultiVector operator*(const LaurentPoly& f, const MultiVector& a);
    friend MultiVector operator*(const MultiVector& a, const LaurentPoly& f) { return f * a; }
    friend bool operator==(const MultiVector& a, const MultiVector& b) {
        return a.chart_ == b.chart_ && a.comps_ == b.comps_;
    }
    friend bool operator!=(const MultiVector& a, const MultiVector& b) { return !(a == b); }

    template <class F>
    MultiVector map_coeffs(F&& fn) const {
        MultiVector r(chart_);
        for (auto& [idx, c] : comps_) r.add(idx, fn(c));
        return r;
    }
    MultiVector substitute(const Substitution& s) const {
        return map_coeffs([&](const LaurentPoly& c) { return lp_substitute(c, s); });
    }
    // Same components, reinterpreted on another chart of equal dimension.
    MultiVector with_chart(const Chart& c) const;
    bool is_holomorphic() const;  // no negative powers of chart variables

    void add(const IndexTuple& sorted_idx, const LaurentPoly& c);
    std::string str() const;

private:
    Chart chart_;
    std::map<IndexTuple, LaurentPoly> comps_;
};

MultiVector wedge(const MultiVector& a, const MultiVector& b);
MultiVector schouten(const MultiVector& a, const MultiVector& b);

// Multivector field tensored with antiholomorphic exterior monomials dz̄_I.
// Stored as a sum over dz̄ tuples so sums of differently decorated fields are
// representable.
class FormedMultiVector {
public:
    FormedMultiVector() = default;
    explicit FormedMultiVector(Chart c) : chart_(std::move(c)) {}
    FormedMultiVector(const MultiVector& mv, IndexTuple dbar = {});  // NOLINT(google-explicit-constructor)

    const Chart& chart() const { return chart_; }
    const std::map<IndexTuple, MultiVector>& parts() const { return parts_; }
    MultiVector part(const IndexTuple& dbar) const;
    bool is_zero() const { return parts_.empty(); }
    // Sub-sum with dz̄-degree q.
    FormedMultiVector form_degree_part(int q) const;

    FormedMultiVector operator-() const;
    FormedMultiVector& operator+=(const FormedMultiVector& o);
    FormedMultiVector& operator-=(const FormedMultiVector& o);
    friend FormedMultiVector operator+(FormedMultiVector a, const FormedMultiVector& b) { return a += b; }
    friend FormedMultiVector operator-(FormedMultiVector a, const FormedMultiVector& b) { return a -= b; }
    friend FormedMultiVector operator*(const LaurentPoly& f, const FormedMultiVector& a);
    friend bool operator==(const FormedMultiVector& a, const FormedMultiVector& b) {
        return a.chart_ == b.chart_ && a.parts_ == b.parts_;
    }
    friend bool operator!=(const FormedMultiVector& a, const FormedMultiVector& b) { return !(a == b); }

    template <class F>
    FormedMultiVector map_coeffs(F&& fn) const {
        FormedMultiVector r(chart_);
        for (auto& [d, mv] : parts_) r.add(d, mv.map_coeffs(fn));
        return r;
    }
    FormedMultiVector substitute(const Substitution& s) const {
        return map_coeffs([&](const LaurentPoly& c) { return lp_substitute(c, s); });
    }

    void add(const IndexTuple& sorted_dbar, const MultiVector& mv);
    std::string str() const;

private:
    Chart chart_;
    std::map<IndexTuple, MultiVector> parts_;
};

// (A ⊗ ω) ∧ (B ⊗ η) = (−1)^{|ω||B|} (A∧B) ⊗ (ω∧η)
FormedMultiVector wedge(const FormedMultiVector& a, const FormedMultiVector& b);
// [A ⊗ ω, B ⊗ η] = (−1)^{|ω|(|B|−1)} [A,B] ⊗ (ω∧η)
FormedMultiVector schouten_formed(const FormedMultiVector& a, const FormedMultiVector& b);
// [Λ₀, el] + ½[el, el]; the ∂̄ part vanishes on z̄-free coefficients.
FormedMultiVector mc_defect(const MultiVector& lambda0, const FormedMultiVector& el);

// Invertible coordinate change. forward: target var -> poly in source vars.
struct ChartMap {
    Chart source;
    Chart target;
    Substitution forward;
    Substitution inverse;  // source var -> poly in target vars (may be empty)

    bool has_inverse() const { return !inverse.empty(); }
    // forward∘inverse and inverse∘forward are the identity on each variable.
    bool check_inverse() const;
    ChartMap reversed() const;
};

enum class Direction { Forward, Backward };

MultiVector pushforward(const ChartMap& m, const MultiVector& a, Direction dir = Direction::Forward);

}  // namespace poissonlab
