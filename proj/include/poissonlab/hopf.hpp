#pragma once

#include <optional>
#include <string>
#include <vector>

#include "poissonlab/obstruction.hpp"

namespace poissonlab {

class TruncationUnstable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MembershipFails : public std::runtime_error {
public:
    MembershipFails(const std::string& what, MultiVector residual)
        : std::runtime_error(what), residual_(std::move(residual)) {}
    const MultiVector& residual() const { return residual_; }

private:
    MultiVector residual_;
};

enum class HopfTag { IV, III, IIa, IIb, IIc };

struct HopfType {
    HopfTag tag = HopfTag::IV;
    int p = 0;  // only for III and IIa, p >= 2

    static HopfType iv() { return {HopfTag::IV, 0}; }
    static HopfType iii(int p);
    static HopfType iia(int p);
    static HopfType iib() { return {HopfTag::IIb, 0}; }
    static HopfType iic() { return {HopfTag::IIc, 0}; }
    static HopfType parse(const std::string& s);  // "IV", "III", "III:3", "IIa:2", ...

    bool has_p() const { return tag == HopfTag::III || tag == HopfTag::IIa; }
    std::string tag_name() const;  // IV, III, IIa, IIb, IIc
    std::string name() const;      // tag, with ":p" where it applies
    std::string manifold() const;  // hopf-iv, hopf-iii-p2, ...
    std::vector<std::string> params() const;
    // Weight of z in the grading preserved by the contraction (w has weight 1).
    int weight_z() const { return has_p() ? p : 1; }
    int default_degree() const { return std::max(3, p + 3); }
    friend bool operator==(const HopfType&, const HopfType&) = default;
};

// The universal cover W = C² \ 0 with coordinates (z, w).
const Chart& hopf_chart();

// The contraction f (forward) together with f⁻¹ (inverse).
ChartMap contraction(const HopfType& t);
ChartMap identity_contraction();

// POISSONLAB_DEGREE_CAP when set, else the type's default.
int hopf_degree_cap(const HopfType& t);

// Monomial fields z^μ w^ν ∂_I of one grade whose weight
// wz·μ + ν − Σ_{i∈I} w_i is at most D − grade (for wz = 1: μ + ν ≤ D).
struct TruncatedSpace {
    int grade = 1;
    int degree_cap = 3;
    int weight_z = 1;
    LabeledBasis basis;
    std::vector<int> weights;  // per basis element, nondecreasing

    std::vector<int> block_weights() const;
    std::vector<std::size_t> block(int weight) const;
};
TruncatedSpace truncated_space(int grade, int degree_cap, int weight_z = 1);
TruncatedSpace truncated_space(const HopfType& t, int grade, int degree_cap);
int field_weight(const MultiVector& term, int weight_z);

// Matrix of v ↦ v − f_*(v) on the truncated monomial basis.
LinMap id_minus_fstar(const ChartMap& f, const TruncatedSpace& s);
LinMap id_minus_fstar(const HopfType& t, const TruncatedSpace& s);
MultiVector id_minus_fstar(const ChartMap& f, const MultiVector& v);

// Kernel (f-invariant fields, i.e. H⁰(X, ∧^g Θ)) and cokernel
// representatives (H¹(X, ∧^g Θ)) of id − f_* on grade g.
LabeledBasis invariant_fields(const HopfType& t, int D = 0);
LabeledBasis invariant_bivectors(const HopfType& t, int D = 0);
LabeledBasis hopf_cokernel(const HopfType& t, int grade, int D = 0);
// Coordinates in hopf_cokernel(t, grade, D) of the class of a field.
Reducer hopf_class_reducer(const HopfType& t, int grade, int D = 0);

struct M1M2 {
    int degree = 0;
    LabeledBasis m1, m2;
};
// Cokernels on grades 1 and 2 at D, recomputed at D + 2; TruncationUnstable
// if they differ. D = 0 means hopf_degree_cap(t).
M1M2 m1_m2_bases(const HopfType& t, int D = 0);
// The representatives the cokernel computation tries first.
std::vector<MultiVector> listed_m1(const HopfType& t);
std::vector<MultiVector> listed_m2(const HopfType& t);

// A Poisson structure on a Hopf surface from the stratum list: Λ₀ with
// symbolic constants and the polynomials assumed nonzero.
struct HopfStratum {
    HopfType type;
    std::string label;
    MultiVector lambda0;
    std::vector<LaurentPoly> nonzero;
    std::string family;  // name of the unobstructing family, if any
};
std::vector<HopfStratum> hopf_strata(int p = 2);
HopfStratum hopf_stratum(const HopfType& t, const std::string& label);

DeformationComplexModel hopf_model(const HopfStratum& s, int D = 0);

struct HopfRow {
    HopfStratum stratum;
    std::size_t h0 = 0, h1 = 0, h2 = 0;
    LabeledBasis automorphisms;  // ker [Λ₀, −] on H⁰(Θ)
};
HopfRow hopf_row(const HopfStratum& s, int D = 0);

// Family over S: Λ(z, w, s) ∂z∧∂w on W×S and the generator F(z, w, s).
struct HopfFamily {
    std::string name;
    HopfType type;
    std::string stratum;
    std::vector<std::string> params;  // coordinates of S
    Substitution base_point;          // s ↦ s₀ (unlisted params stay symbolic)
    LaurentPoly lambda;
    Substitution map;  // z, w ↦ F₁, F₂
};
std::vector<HopfFamily> hopf_families(int p = 2);
HopfFamily hopf_family(const std::string& name, int p = 2);

// Λ(F₁, F₂) == Λ(z, w) · det ∂F/∂(z, w)
bool family_invariance(const LaurentPoly& lambda, const Substitution& map);
LaurentPoly invariance_residual(const LaurentPoly& lambda, const Substitution& map);

struct DPair {
    std::string label;
    MultiVector b;  // bivector
    MultiVector a;  // vector field
};
// τ(∂/∂s) = (∂Λ/∂s, (∂F/∂s)(f⁻¹(x))·∂/∂x) at the base point.
std::vector<DPair> tau_images(const HopfFamily& fam);
// The pairs written out for each unobstructed family.
std::vector<DPair> listed_pairs(const HopfType& t);

struct MembershipReport {
    std::string family;
    std::vector<DPair> pairs;
    std::size_t sigma_rank = 0;
    std::size_t h1_dim = 0;
    bool ok() const { return sigma_rank == h1_dim && pairs.size() == h1_dim; }
};
// Throws MembershipFails unless (id − f_*)(B) = [Λ₀, A] for every pair.
MembershipReport d_membership(const HopfFamily& fam, const std::vector<DPair>& pairs, int D = 0);
MembershipReport d_membership(const HopfType& t, int D = 0);
// Same, against an explicit stratum (e.g. one with numeric constants).
MembershipReport d_membership(const HopfFamily& fam, const HopfStratum& s, const std::vector<DPair>& pairs,
                              int D = 0);
// Rank of the σ-images of D-pairs in ℍ¹ of the model.
std::size_t sigma_rank(const DeformationComplexModel& m, const HopfType& t, const std::vector<DPair>& pairs, int D = 0);

// Λ₀ = 0: a = Λ-part, b = vector part built from the named integer
// constants (IV: A B C d e f g, III: A B d e f); verified before return.
// Throws std::invalid_argument when [a, b] has zero class.
Certificate obstruction_certificate_hopf(const HopfType& t, const std::map<std::string, long>& constants, int D = 0);

// Verdict for a stratum: witness search, then family verification.
Certificate hopf_certificate(const HopfStratum& s, int D = 0);

// A concrete Λ₀ on a Hopf surface of type t: finds its stratum, specializes
// the stratum's family to Λ₀'s constants and certifies as hopf_certificate.
// ConstraintViolation if Λ₀ is not a global Poisson structure of that type.
Certificate hopf_classify(const HopfType& t, const MultiVector& lambda0, int D = 0);

enum class DegenerateCase { IVSquare, IIIBw, IIcControl };
// Does the ∂/∂t image of the degenerate family define the zero class in ℍ¹?
bool degenerate_family_vanishes(DegenerateCase c, int p = 2, int D = 0);

}  // namespace poissonlab
