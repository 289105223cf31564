#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cmjet/exactla.hpp"
#include "cmjet/normalform.hpp"
#include "cmjet/verdict.hpp"
#include "cmjet/wpoly.hpp"

namespace cmjet {

// Linear data of a candidate boundary differential: block form (C A; 0 lambda)
// with the singular values of C and the invariants alpha_j = mu_j / sqrt(lambda).
struct DifferentialData {
    RCMat C;
    std::vector<RC> A;
    Rat lambda = 0;
    std::vector<double> mu;     // singular values of C, descending
    std::vector<double> alpha;  // mu_j / sqrt(lambda), descending
};

// Truncated holomorphic map germ (F^z, F^w) with weight cap K.
struct JetMap {
    int n = 1;
    int K = 6;
    std::vector<HoloPoly> fz;
    HoloPoly fw;

    static JetMap identity(int n, int K);
    static JetMap from_map(std::pair<std::vector<HoloPoly>, HoloPoly> m, int K);

    std::pair<std::vector<HoloPoly>, HoloPoly> map() const { return {fz, fw}; }
    // F^z_{l,k}: the degree-l-in-z coefficient of w^k, per component.
    std::vector<HoloPoly> z_part(int l, int k) const;
    HoloPoly w_part(int l, int k) const;
    // Coefficient of w^k in F^w (i.e. F^w_{0,k}(1)).
    RC fw_w_coeff(int k) const;
    // Full linear block as an (n+1)x(n+1) matrix (C A; c lambda).
    RCMat linear_block() const;
    bool has_identity_linear_part() const;
};

// Verdict on the block shape and the singular value bound mu_j <= sqrt(lambda);
// the bound itself is tested exactly (lambda*I - C*C PSD over the rationals).
std::pair<Verdict, DifferentialData> check_first_order(const RCMat& l);

// Characteristic polynomial of C*C / lambda: an exact invariant carrying the
// alpha data (its roots are the alpha_j^2).
std::vector<RC> first_order_charpoly(const RCMat& l);

JetMap siegel_automorphism(const std::vector<RC>& a, int K);

// Weighted components of the target defining function pulled back along the
// image of the source boundary parametrization.
struct ContactReport {
    int n = 1;
    int K = 6;
    std::vector<std::pair<int, WPoly>> components;  // nonzero e_mu, ascending mu
};

ContactReport expand_basic(const HypersurfaceModel& h, const HypersurfaceModel& hp,
                           const JetMap& f, int K);

struct ContactClassification {
    int tangency_order = 0;   // largest k with e_mu == 0 for all mu <= k
    int first_weight = -1;    // weight of the first nonzero component (-1: flat to cap)
    Verdict sign;             // nonnegativity of the first nonzero component
};
ContactClassification classify_contact(const ContactReport& report, uint64_t seed = 1,
                                       double tol = 1e-12);

struct SecondOrderResult {
    Verdict verdict;
    bool strict = false;
};
// Second-order admissibility: Im F^w_{0,2}(1) >= 0, the discriminant
// inequality, and the weight-4 nonnegativity, for a jet with identity linear
// part and traceless (2,2) data phi4, phi4p.
SecondOrderResult check_second_order(const JetMap& f, const WPoly& phi4, const WPoly& phi4p,
                                     uint64_t seed = 1);

// Identities and inequalities satisfied by second-order data of 2-flat maps;
// precondition violations (non-identity differential or imaginary pairing)
// throw rather than return a verdict.
Verdict check_lemma_2flat(const JetMap& f, const HypersurfaceModel& h,
                          const HypersurfaceModel& hp, uint64_t seed = 1, double tol = 1e-9);

struct Flat2Report {
    bool flat_after_normalization = false;  // identity to second order after the
                                            // parabolic composition and renormalization
    bool tangent_weight4 = false;           // expansion components vanish through weight 4
    bool real_pairing = false;              // Im <z, F^z_{1,1}(z,1)> == 0
    bool agree = false;
};
Flat2Report check_flat2_conditions(const JetMap& f, const HypersurfaceModel& h,
                                   const HypersurfaceModel& hp);

// Germ with linear part diag(alpha, 1) mapping the source into the target near
// the origin at the truncation level; verified by scaled sampling.
JetMap construct_first_order_germ(const std::vector<Rat>& alpha, const HypersurfaceModel& h,
                                  const HypersurfaceModel& hp, uint64_t seed = 1);

// 2-flat germ id + (lambda1 w^2 z, lambda2 w^3 + i lambda3 w^4) with lambdas
// chosen to dominate the weight-6 normal discrepancy; requires the normal
// forms to agree exactly through weight 5.
JetMap construct_2flat_germ(const HypersurfaceModel& h, const HypersurfaceModel& hp,
                            uint64_t seed = 1);

}  // namespace cmjet
