#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "cmjet/exactla.hpp"
#include "cmjet/verdict.hpp"
#include "cmjet/wpoly.hpp"

namespace cmjet {

// Truncated defining graph Im w = ||z||^2 + sum phi_mu, phi_mu real weighted
// homogeneous of weight mu, 3 <= mu <= K.
struct HypersurfaceModel {
    int n = 1;
    int K = 6;
    std::map<int, WPoly> phi;

    static HypersurfaceModel quadric(int n, int K) { return {n, K, {}}; }

    WPoly phi_at(int mu) const {
        auto it = phi.find(mu);
        return it == phi.end() ? WPoly::zero(n) : it->second;
    }
    void set_phi(int mu, const WPoly& p) {
        if (p.is_zero())
            phi.erase(mu);
        else
            phi[mu] = p;
    }
    // Full right-hand side ||z||^2 + sum phi_mu.
    WPoly graph() const;

    friend bool operator==(const HypersurfaceModel& a, const HypersurfaceModel& b) {
        return a.n == b.n && a.phi == b.phi;
    }
};

void validate_model(const HypersurfaceModel& h);

// Quadric-automorphism initial data. The scale enters as delta (lambda =
// delta^2) so the dilation stays rational.
struct QuadricAutoParams {
    RCMat U;            // unitary tangential rotation
    Rat delta = 1;      // z -> delta U z, w -> delta^2 w
    std::vector<RC> a;  // Siegel translation parameter
    Rat r = 0;          // parabolic parameter

    static QuadricAutoParams identity(int n);
};

// Holomorphic change of coordinates: identity plus perturbation on top of a
// quadric-automorphism linear block.
struct CoordChange {
    int n = 1;
    int K = 6;
    std::vector<HoloPoly> f;  // z-component perturbation (weight >= 2)
    HoloPoly g;               // w-component perturbation (weight >= 3)
    QuadricAutoParams lin;

    static CoordChange identity(int n, int K);
    bool is_identity() const;
    // Full map components (lin composed with id + (f, g)), truncated at K.
    std::pair<std::vector<HoloPoly>, HoloPoly> map() const;
};

// Elementary holomorphic maps, truncated at weight cap K.
std::pair<std::vector<HoloPoly>, HoloPoly> identity_map(int n);
std::pair<std::vector<HoloPoly>, HoloPoly> siegel_map(const std::vector<RC>& a, int K);
std::pair<std::vector<HoloPoly>, HoloPoly> parabolic_map(const Rat& r, int n, int K);
std::pair<std::vector<HoloPoly>, HoloPoly> dilation_map(const RCMat& u, const Rat& delta);
std::pair<std::vector<HoloPoly>, HoloPoly> compose_maps(
    const std::pair<std::vector<HoloPoly>, HoloPoly>& outer,
    const std::pair<std::vector<HoloPoly>, HoloPoly>& inner, int K);
// dilation(U, delta) composed with g_a composed with g_r.
std::pair<std::vector<HoloPoly>, HoloPoly> quadric_automorphism(const QuadricAutoParams& p,
                                                               int n, int K);

// Re-solve a transformed surface as a graph: given Im w = h(z, zbar, u) and an
// invertible holomorphic change Phi with Phi(0) = 0, linear part (Cz, lambda w)
// with C invertible and lambda real positive, returns the graph of the image
// surface in the new coordinates, truncated at weight K.
WPoly regraph_raw(const WPoly& h, const std::vector<HoloPoly>& phi_z, const HoloPoly& phi_w,
                  int K);
HypersurfaceModel regraph(const HypersurfaceModel& h, const std::vector<HoloPoly>& phi_z,
                          const HoloPoly& phi_w, int K);

// Normalize the weight-2 part of an arbitrary strongly pseudoconvex graph to
// ||z||^2 via an exact congruence plus a holomorphic w-shift. Square-root
// coordinate scalings are exact when the pivots are rational squares and
// high-precision rational approximations otherwise.
struct LeviResult {
    HypersurfaceModel model;
    std::vector<HoloPoly> change_z;
    HoloPoly change_w;
    bool exact = true;
};
LeviResult levi_normalize(const WPoly& h, int K);

// Partial Chern-Moser normalization through weight K <= 6: weight-by-weight
// linear solve with minimum-norm gauge fixing; output passes
// normal_space_check and the round-trip contract
// regraph(input, change) == output exactly.
std::pair<HypersurfaceModel, CoordChange> cm_normalize(const HypersurfaceModel& h, int K);

struct EquivOptions {
    int starts = 64;
    int iters = 120;
    double tol = 1e-9;
    uint64_t seed = 1;
};

// Equivalence up to weighted order K (default 5): exact equality of gauge-fixed
// normal forms, the weight-4 zero/nonzero obstruction, or a numeric search over
// quadric-automorphism initial data with exact re-verification of snapped
// parameters.
Verdict weighted_equivalence(const HypersurfaceModel& h1, const HypersurfaceModel& h2, int K = 5,
                             const EquivOptions& opt = {});

// Sum of |coefficient| differences of the stored phi through weight K.
double model_distance(const HypersurfaceModel& a, const HypersurfaceModel& b, int K);

}  // namespace cmjet
