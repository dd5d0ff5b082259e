#pragma once

#include <random>
#include <string>
#include <vector>

#include "poissonlab/obstruction.hpp"

namespace poissonlab {

class NotObstructedStratum : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class RationalPartSurvives : public std::runtime_error {
public:
    RationalPartSurvives(const std::string& what, MultiVector residual)
        : std::runtime_error(what), residual_(std::move(residual)) {}
    const MultiVector& residual() const { return residual_; }

private:
    MultiVector residual_;
};

class KSDegenerate : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Largest m accepted (bounds basis sizes); default 12.
int ruled_max_m();
void set_ruled_max_m(int m);

// F_m glued from U1 = (z, xi) and U2 = (zp, xip) by zp = 1/z, xip = z^m xi.
struct RuledSurface {
    int m = 0;
    Chart u1, u2;
    ChartMap transition;  // U1 -> U2

    explicit RuledSurface(int m);
    std::string name() const { return "F_" + std::to_string(m); }
    Var z() const { return u1.vars[0]; }
    Var xi() const { return u1.vars[1]; }
    // U1 expression of a U1 field, checked on U2.
    bool holomorphic_on_u2(const MultiVector& a) const;
    MultiVector to_u2(const MultiVector& a) const { return pushforward(transition, a); }
    MultiVector from_u2(const MultiVector& a) const { return pushforward(transition, a, Direction::Backward); }
};

// (d + e xi + f xi^2) d/dz ^ d/dxi on U1 with d, e, f polynomials in z.
struct RuledPoisson {
    int m = 0;
    LaurentPoly d, e, f;

    RuledPoisson(int m, LaurentPoly d, LaurentPoly e, LaurentPoly f);  // validates caps and holomorphy
    static RuledPoisson from_bivector(int m, const MultiVector& b);
    static RuledPoisson parse(int m, const std::string& src);
    MultiVector bivector() const;
    // Random structure with integer coefficients in [-bound, bound]; e forced to 0 if asked.
    static RuledPoisson random(int m, std::mt19937_64& rng, bool e_zero, int bound = 3);
};

struct RuledBases {
    LabeledBasis h0_theta, h0_sq, h1_theta, h1_sq;
};
RuledBases h_bases(int m);

// Coefficients of z^-k d/dxi (k = 1..m-1) after discarding coboundaries.
Reducer h1_theta_reducer(int m);
// Coefficients of z^-k d/dz^d/dxi (k = 1..m-3) after discarding coboundaries.
Reducer h1_sq_reducer(int m);

DeformationComplexModel ruled_model(const RuledPoisson& l0);

struct RuledRow {
    int m = 0;
    std::size_t h2 = 0;
    bool obstructed = false;
    Certificate certificate;
};
RuledRow ruled_verdict(const RuledPoisson& l0);
// The fixed witness a = xi d/dz^d/dxi, b = z^-1 d/dxi; verified before return.
Certificate ruled_witness_certificate(const RuledPoisson& l0);
// Representatives of ℍ¹: cokernel part then kernel part.
LabeledBasis hyper_h1(const RuledPoisson& l0);

// x = x1 - x2 with x1 holomorphic on U1 and x2 holomorphic on U2 (both in
// U1 coordinates); nullopt when x has a nonzero H¹ class.
struct Split {
    MultiVector x1, x2;
};
std::optional<Split> split_theta(int m, const MultiVector& theta);
std::optional<Split> split_sq(int m, const MultiVector& alpha);

// Deformation of (F_m, Λ₀): xip = z^m xi + h(z, t), Λ_t = F(z, xi, t) d/dz^d/dxi on U1.
struct RuledFamily {
    std::string name;
    int m = 0;
    std::vector<std::string> params;
    LaurentPoly h, F;
    RuledPoisson base;
    ChartMap transition() const;
};

struct FamilyReport {
    bool restricts = false;        // t = 0 gives (F_m, Λ₀)
    bool holomorphic = false;      // Λ_t holomorphic on U2
    MultiVector residual;          // non-holomorphic part on U2 (zp, xip)
    bool poisson = false;          // [Λ_t, Λ_t] = 0
    bool cocycles = false;         // λ1 - λ2 + [Λ₀, θ] = 0 for every parameter
    std::size_t h1_dim = 0;        // dim ℍ¹
    std::size_t ks_rank = 0;       // rank of the Kodaira-Spencer images
    std::vector<std::string> ks;   // printed (λ1, θ) per parameter
    bool ok() const { return restricts && holomorphic && poisson && cocycles && ks_rank == h1_dim && ks.size() == h1_dim; }
};
FamilyReport check_family(const RuledFamily& fam);
// Throws RationalPartSurvives / KSDegenerate.
FamilyReport verify_family(const RuledFamily& fam);

// The explicit families on F_2, F_3, F_4, F_5, and the same families with
// their correction terms removed.
std::vector<RuledFamily> ruled_families();
std::vector<RuledFamily> ruled_families_uncorrected();

// Two-chart Čech data, every field written in U1 coordinates.
struct CechCocycle {
    MultiVector lambda1, lambda2, theta;
};
struct CechSquare {
    MultiVector gamma1, gamma2, eta;
    MultiVector defect_gamma1, defect_gamma2;  // [Λ₀, γ_j]
    MultiVector defect_mixed;                  // -(γ2 - γ1) + [Λ₀, η]
    bool holds() const {
        return defect_gamma1.is_zero() && defect_gamma2.is_zero() && defect_mixed.is_zero();
    }
};
// Throws NotACocycle unless λ1 is holomorphic on U1, λ2 on U2, and
// λ2 - λ1 + [Λ₀, θ] = 0.
CechSquare cech_square(const RuledSurface& s, const MultiVector& lambda0, const CechCocycle& c);
CechCocycle random_cech_cocycle(const RuledPoisson& l0, std::mt19937_64& rng);

}  // namespace poissonlab
