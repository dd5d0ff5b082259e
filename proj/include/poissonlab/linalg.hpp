#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "poissonlab/mvf.hpp"

namespace poissonlab {

class NotInSpan : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConstraintViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Vector = std::vector<LaurentPoly>;
using Matrix = std::vector<Vector>;  // row-major

struct LabeledBasis {
    std::string space_name;
    std::vector<FormedMultiVector> elements;

    LabeledBasis() = default;
    LabeledBasis(std::string name, std::vector<FormedMultiVector> elems);
    LabeledBasis(std::string name, const std::vector<MultiVector>& elems);
    std::size_t size() const { return elements.size(); }
    const FormedMultiVector& operator[](std::size_t i) const { return elements[i]; }
    // Linear combination sum c_i e_i.
    FormedMultiVector combine(const Vector& coords) const;
    std::vector<std::string> labels() const;
};

// Normal form of an expression as coordinates in a fixed basis; throws NotInSpan.
using Reducer = std::function<Vector(const FormedMultiVector&)>;

struct LinMap {
    LabeledBasis domain;
    LabeledBasis codomain;
    Matrix entries;  // codomain.size() x domain.size()
    // Parameter polynomials that must stay nonzero on the stratum this map describes.
    std::vector<LaurentPoly> nonzero;

    std::size_t rows() const { return entries.size(); }
    std::size_t cols() const { return domain.size(); }
    Vector column(std::size_t j) const;
};

Matrix zero_matrix(std::size_t rows, std::size_t cols);
Matrix transpose(const Matrix& m, std::size_t cols_if_empty = 0);
Matrix hconcat(const Matrix& a, const Matrix& b);
Matrix substitute(const Matrix& m, const Substitution& s);
Vector substitute(const Vector& v, const Substitution& s);
Vector mat_vec(const Matrix& m, const Vector& v);
bool is_zero(const Vector& v);
bool is_zero(const Matrix& m);
std::string matrix_str(const Matrix& m);

LinMap matrix_of_map(const std::function<FormedMultiVector(const FormedMultiVector&)>& op, const LabeledBasis& dom,
                     const LabeledBasis& cod, const Reducer& red);

struct Elimination {
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_rows;  // original row indices
    std::vector<std::size_t> pivot_cols;
    LaurentPoly last_pivot = 1;  // determinant of the pivot block, rows in pivot_rows order
    int sign = 1;                // parity of the row permutation applied
};
// Fraction-free (Bareiss) elimination over the Laurent ring of the parameters.
Elimination eliminate(const Matrix& m, std::size_t cols);
std::size_t generic_rank(const Matrix& m, std::size_t cols);
std::size_t generic_rank(const LinMap& m);
LaurentPoly determinant(const Matrix& square);

// Generic kernel, denominator-cleared and content-normalised.
std::vector<Vector> kernel_basis(const Matrix& m, std::size_t cols);
std::vector<Vector> kernel_basis(const LinMap& m);
// Primitive representative of the line through v (monomial/numeric content
// removed, trial division by `divisors`, leading sign positive).
Vector normalize_vector(Vector v, const std::vector<LaurentPoly>& divisors = {});

// Coordinates (in the codomain) of vectors whose classes span codomain/image.
// `preferred` coordinate vectors are tried first, then unit vectors in index order.
std::vector<Vector> cokernel_coords(const Matrix& m, std::size_t rows, const std::vector<Vector>& preferred = {});
LabeledBasis cokernel_rep(const LinMap& m, const std::vector<Vector>& preferred = {});

LinMap specialize(const LinMap& m, const Substitution& assignment);

// Do the columns of a and b span the same space over the fraction field?
bool same_span(const std::vector<Vector>& a, const std::vector<Vector>& b);
// Is v in the span of the vectors?
bool in_span(const std::vector<Vector>& vs, const Vector& v);

// Solve B c = x for full-column-rank B: returns (numerators, denominator)
// with c = numerators / denominator; nullopt if x is not in the column span.
std::optional<std::pair<Vector, LaurentPoly>> solve(const Matrix& b, std::size_t cols, const Vector& x);

// Coordinates of a field in its terms: (dz̄ tuple, ∂ tuple, chart monomial) -> parameter coefficient.
struct TermKey {
    IndexTuple dbar, idx;
    Monomial mono;
    friend bool operator<(const TermKey& a, const TermKey& b) {
        if (a.dbar != b.dbar) return a.dbar < b.dbar;
        if (a.idx != b.idx) return a.idx < b.idx;
        return a.mono < b.mono;
    }
};
std::map<TermKey, LaurentPoly> term_coordinates(const FormedMultiVector& f);

// Exact coordinates with respect to an independent basis.
Reducer span_reducer(const LabeledBasis& b);
// Basis of single-term elements; other terms raise NotInSpan.
Reducer monomial_reducer(const LabeledBasis& b);
// Coordinates in `b` of the class of a field modulo span(relations); `b` must
// be independent of the relations (a complement).
Reducer quotient_reducer(const LabeledBasis& b, const std::vector<FormedMultiVector>& relations);
// Columns of `vs` that form a basis of their span (first independent ones).
std::vector<std::size_t> independent_subset(const std::vector<Vector>& vs);

// Independent random rational values in [1, 10^6] for every parameter of m.
Substitution random_point(const std::vector<LaurentPoly>& polys, std::uint64_t seed);
std::vector<LaurentPoly> matrix_polys(const Matrix& m);

}  // namespace poissonlab
