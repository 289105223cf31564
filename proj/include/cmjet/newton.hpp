#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cmjet/rational.hpp"
#include "cmjet/verdict.hpp"
#include "cmjet/wpoly.hpp"

namespace cmjet {

// Sign of a univariate real polynomial for small x > 0: decided by the lowest
// nonzero coefficient. Coefficients are ascending by degree. A lowest term of
// degree beyond the bound cannot dominate an o(x^d) remainder, so that case is
// reported undetermined.
Verdict reduce_1d(const std::vector<Rat>& coeffs, int degree_bound);

// Exact planar geometry over the rationals.
using QPoint = std::pair<Rat, Rat>;

// Convex hull in counterclockwise order with collinear points dropped;
// degenerate inputs yield 1 or 2 vertices.
std::vector<QPoint> convex_hull(std::vector<QPoint> pts);

bool in_closed_hull(const QPoint& p, const std::vector<QPoint>& hull);
bool in_relative_interior(const QPoint& p, const std::vector<QPoint>& hull);

// Convex hull of the downward closure of a set of lattice exponents:
// conv of the generators together with (0,0) and their axis projections.
struct ExtendedPolytope {
    std::vector<std::pair<int, int>> generators;
    std::vector<QPoint> hull;  // CCW, possibly degenerate
};
ExtendedPolytope extended_polytope(const std::vector<std::pair<int, int>>& generators);

// Remainder exponents of an o(|x1^d1 x2^d2|) error term.
struct RemainderSpec {
    std::vector<std::pair<int, int>> degrees;
};

// True iff conv(r.degrees) misses the relative interior of the extended
// Newton polytope of the support. Exact rational test.
bool polytope_disjoint(const std::vector<std::pair<int, int>>& support, const RemainderSpec& r);
// Convenience overload reading the support off a bivariate polynomial given as
// exponent/coefficient pairs.
bool polytope_disjoint(const std::vector<std::pair<std::pair<int, int>, Rat>>& poly,
                       const RemainderSpec& r);

// Cancellation rule for weighted homogeneous polynomials: nonnegativity of
// p + o(rho^d) near the origin passes to p, and the follow-up claim passes to
// the bihomogeneous component of minimal block-1 degree. Weights nu1 on the
// (z, zbar) block and nu2 on u. Throws if p is not weighted homogeneous of
// degree d.
struct CancelResult {
    Verdict verdict;
    WPoly minimal_component;
};
CancelResult cancel_weighted(const WPoly& p, int nu1, int nu2, int d);

// Coefficient of z^s zbar^s of a real homogeneous degree-2s polynomial in one
// complex variable; equals the circle average. Throws on odd degree.
Rat fourier_middle(const WPoly& p);

enum class TypesOutcome { Holds, Violated, NotApplicable };

struct TypesLemmaResult {
    TypesOutcome outcome = TypesOutcome::NotApplicable;
    std::string detail;
    std::optional<Witness> witness;  // angle witness: z = {e^{i theta}}, value = p there
};

// Nonnegativity of a real homogeneous polynomial in one complex variable.
// Vanishing middle Fourier coefficient with p not identically zero forces a
// negative value; the witness angle is found by grid minimization.
TypesLemmaResult types_lemma(const WPoly& p);

// Trilean nonnegativity for a real polynomial in (z, zbar) or (z, zbar, t)
// where the u slot is read as an independent real variable t.
// holds: exact sum-of-squares certificate (Hermitian Gram matrix PSD over the
// rationals), or a certified circle minimization when n = 1;
// violated: quasi-random sampling with local refinement finds p < -tol;
// otherwise undetermined.
Verdict nonneg_check_bihom(const WPoly& p, int n, uint64_t seed = 1, double tol = 1e-12);

}  // namespace cmjet
