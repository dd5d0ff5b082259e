#pragma once

#include <optional>
#include <string>
#include <vector>

#include "poissonlab/obstruction.hpp"

namespace poissonlab {

enum class ProductKind { EP1, TP1, Torus };

// Dolbeault representatives with constant (in the torus directions) and
// low-degree (in xi) coefficients.
struct ProductModel {
    ProductKind kind = ProductKind::EP1;
    int n = 0;  // torus dimension
    Chart chart;
    std::vector<LabeledBasis> bases;  // named "H<i>(^<j>Theta)"

    const LabeledBasis& basis(int i, int j) const;  // H^i(∧^j Θ)
    bool has(int i, int j) const;
    std::string name() const;  // "ExP1", "TxP1", "T^n"
};
// E×P¹: H^i(∧^j Θ) for i, j in {0,1,2} x {1,2}, the i = 2 groups empty.
ProductModel ep1_model();
// T×P¹: H⁰,H¹,H² of Θ and ∧²Θ, H⁰ and H¹ of ∧³Θ.
ProductModel tp1_model();
// Complex torus of dimension n: H⁰ and H¹ of Θ and ∧²Θ.
ProductModel torus_model(int n);

// (A + B xi + C xi^2) d/dz ^ d/dxi
MultiVector ep1_lambda0(const LaurentPoly& A, const LaurentPoly& B, const LaurentPoly& C);
DeformationComplexModel ep1_deformation_model(const LaurentPoly& A, const LaurentPoly& B, const LaurentPoly& C);

struct EP1Matrices {
    LinMap h1;  // H¹(Θ) → H¹(∧²Θ)
    LinMap h0;  // H⁰(Θ) → H⁰(∧²Θ)
};
EP1Matrices ep1_bracket_matrices(const LaurentPoly& A, const LaurentPoly& B, const LaurentPoly& C);

struct MCSolution {
    std::string name;
    MultiVector lambda0;
    std::vector<std::string> params;
    FormedMultiVector beta;   // bivector part
    FormedMultiVector alpha;  // (0,1) part
    FormedMultiVector total() const { return beta + alpha; }
    FormedMultiVector defect() const { return mc_defect(lambda0, total()); }
};

// A + B xi + C xi^2 with A, B, C all zero is rejected with ConstraintViolation
// when they are constants; symbolic coefficients are taken as generic.
void require_nonzero_quadratic(const LaurentPoly& A, const LaurentPoly& B, const LaurentPoly& C);

// F chosen by cokernel_rep of the H⁰ bracket map unless given; a given F in
// the image is rejected with ConstraintViolation.
MCSolution ep1_mc_solution(const LaurentPoly& A, const LaurentPoly& B, const LaurentPoly& C,
                           std::optional<std::vector<LaurentPoly>> F = std::nullopt);
Certificate ep1_classify(const LaurentPoly& A, const LaurentPoly& B, const LaurentPoly& C);

// Rank, inside ℍ¹ = coker d0 ⊕ ker d1, of the t-derivatives at t = 0.
std::size_t ks_rank(const DeformationComplexModel& m, const MCSolution& s);

struct TP1Class {
    int id = 1;
    LaurentPoly D, A, B, C, k;

    static TP1Class one(LaurentPoly D);
    static TP1Class two(LaurentPoly D, LaurentPoly A, LaurentPoly B, LaurentPoly C, LaurentPoly k);
    static TP1Class three(LaurentPoly D, LaurentPoly A, LaurentPoly B, LaurentPoly C);
    // Symbolic D (and A, B, C, k where they apply).
    static TP1Class generic(int id);
    void validate() const;  // ConstraintViolation
    MultiVector lambda0() const;
    std::string label() const;
};

struct TP1Hyper {
    std::size_t h0 = 0, h1 = 0, h2 = 0;
};
DeformationComplexModel tp1_deformation_model(const TP1Class& c);
// Full spectral-sequence count, including the ∧³ and H² terms.
TP1Hyper tp1_hypercohomology(const TP1Class& c);

struct TP1Identities {
    FormedMultiVector poisson, mixed, complex;
    bool ok() const { return poisson.is_zero() && mixed.is_zero() && complex.is_zero(); }
};
// Class 2 directly; class 3 by exchanging z1 and z2. F as for ep1_mc_solution.
MCSolution tp1_mc_solution(const TP1Class& c, std::optional<std::vector<LaurentPoly>> F = std::nullopt);
// The three equations for β + α, optionally with Λ' or φ' left out.
TP1Identities tp1_identities(const TP1Class& c, bool with_lambda_prime = true, bool with_phi_prime = true,
                             std::optional<std::vector<LaurentPoly>> F = std::nullopt);
Certificate tp1_classify(const TP1Class& c);

// Λ₀ = Σ b_ab d/dz_a ^ d/dz_b with symbolic b_ab.
MultiVector torus_lambda0(int n);
// Checks that [Λ₀, -] vanishes on the constant bases; returns dim ℍ¹.
std::size_t torus_dims(int n, const std::optional<MultiVector>& lambda0 = std::nullopt);
DeformationComplexModel torus_deformation_model(int n);
// Constant bivector and constant (0,1) vector fields, one parameter each.
MCSolution torus_mc_solution(int n);

struct ProductRow {
    std::string manifold, stratum;
    std::size_t h1 = 0;
    std::optional<std::size_t> h2;
    Verdict verdict = Verdict::Undetermined;
};
std::vector<ProductRow> product_rows();

}  // namespace poissonlab
