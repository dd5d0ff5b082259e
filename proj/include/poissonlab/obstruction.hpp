#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "poissonlab/linalg.hpp"

namespace poissonlab {

inline constexpr const char* kToolVersion = "poissonlab 0.1.0";

class NotACocycle : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Verdict { Obstructed, UnobstructedH2Zero, UnobstructedMC, Undetermined };
std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

struct Certificate {
    std::string manifold;
    std::string stratum;
    Verdict verdict = Verdict::Undetermined;
    std::string lambda0;             // printed base structure
    std::vector<std::string> chart;  // variables the printed fields live on
    // Obstructed
    std::optional<std::string> witness_a, witness_b, class_repr;
    // UnobstructedMC: name of the verified family
    std::optional<std::string> solution;
    // Undetermined
    std::optional<std::string> reason;
    std::string tool_version = kToolVersion;

    // Stable JSON (sorted keys, two-space indent).
    std::string to_json() const;
    static Certificate from_json(const std::string& text);
    friend bool operator==(const Certificate&, const Certificate&) = default;
};

using Bracket = std::function<FormedMultiVector(const FormedMultiVector&, const FormedMultiVector&)>;

// Finite model of the complex Θ → ∧²Θ → ∧³Θ around a Poisson structure Λ₀:
// bases of the relevant cohomology groups and reducers taking a
// representative to its class.
struct DeformationComplexModel {
    std::string manifold;
    std::string stratum;
    Chart chart;
    FormedMultiVector lambda0;
    LabeledBasis h0_theta, h0_sq, h1_theta, h1_sq;
    std::optional<LabeledBasis> h0_cube;
    Reducer reduce_h0_sq;
    Reducer reduce_h1_sq;
    Reducer reduce_h0_cube;  // may be empty
    Bracket bracket = schouten_formed;
    // Polynomials in the structure parameters assumed nonzero on the stratum.
    std::vector<LaurentPoly> nonzero;
    // Coordinate vectors tried first when choosing cokernel representatives.
    std::vector<Vector> preferred_coker;

    FormedMultiVector with_lambda0(const FormedMultiVector& x) const { return bracket(lambda0, x); }
    LinMap d0() const;  // H⁰(Θ) → H⁰(∧²Θ)
    LinMap d1() const;  // H¹(Θ) → H¹(∧²Θ)
};

struct Hypercohomology {
    std::size_t h0 = 0, h1 = 0, h2 = 0;
    LabeledBasis coker0;  // representatives of coker d0 in H⁰(∧²Θ)
    LabeledBasis ker1;    // representatives of ker d1 in H¹(Θ)
    LabeledBasis coker1;  // representatives of coker d1 in H¹(∧²Θ)
};
// ℍ⁰ = ker d0, ℍ¹ = coker d0 ⊕ ker d1, ℍ² = coker d1 (valid when H²(Θ) = 0
// and the ∧³ terms vanish, as on every surface model here); models carrying
// h0_cube are rejected.
Hypercohomology hypercohomology(const DeformationComplexModel& m);

// [Λ₀,[Λ₀,x]] for every basis element; returns the first nonzero result's
// description, or nullopt.
std::optional<std::string> complex_defect(const DeformationComplexModel& m);

// Search a ∈ H⁰(∧²Θ), b ∈ ker d1 with [a,b] outside the image of d1.
Certificate witness_search(const DeformationComplexModel& m);

struct ObstructionClass {
    Vector sq_coords;           // class of 2[λ,θ] in H¹(∧²Θ) coordinates
    bool sq_in_image = true;    // ... lies in the image of d1
    FormedMultiVector cube;     // [λ,λ]
    Vector cube_coords;         // its H⁰(∧³Θ) coordinates, when a reducer exists
    FormedMultiVector theta2;   // [θ,θ]
    bool nonzero() const;
    std::string str() const;
};
// Class of [θ+λ, θ+λ] = [λ,λ] + 2[λ,θ] + [θ,θ] for a Dolbeault 1-cocycle
// (λ a bivector, θ a (0,1)-form valued vector field).
ObstructionClass primary_obstruction(const DeformationComplexModel& m, const FormedMultiVector& lambda,
                                     const FormedMultiVector& theta);

// Re-check an Obstructed certificate against its model: b in ker d1, [a,b]
// reduces to the stated class, and the class is nonzero modulo im d1.
bool verify_certificate(const DeformationComplexModel& m, const Certificate& c, std::string* why = nullptr);

// Demo on P³ with Λ₀ = 0: a quadratic bivector on the affine chart built
// from global vector fields, searched until [Π,Π] ≠ 0.
struct P3Demo {
    DeformationComplexModel model;
    FormedMultiVector pi;
    ObstructionClass obstruction;
};
P3Demo p3_demo(std::uint64_t seed = 1);

}  // namespace poissonlab
