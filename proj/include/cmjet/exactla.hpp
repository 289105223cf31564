#pragma once

#include <optional>
#include <vector>

#include "cmjet/rational.hpp"

namespace cmjet {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;  // row-major

// Solve A x = b exactly. Returns nullopt when inconsistent. When the system is
// underdetermined, returns the minimum-norm solution (x in the row space of A).
std::optional<RatVec> min_norm_solve(const RatMat& A, const RatVec& b);

// Solve a square nonsingular system exactly; throws on singular input.
RatVec solve_square(RatMat A, RatVec b);

// Small dense complex-rational matrix helpers.
using RCMat = std::vector<std::vector<RC>>;

RCMat rc_identity(int n);
RCMat rc_mul(const RCMat& a, const RCMat& b);
RCMat rc_adjoint(const RCMat& a);
// Inverse by Gauss-Jordan; throws on singular input.
RCMat rc_inverse(RCMat a);

// Characteristic polynomial coefficients c_0..c_n of det(tI - M),
// ordered by ascending power of t (Faddeev-LeVerrier). M must be square.
std::vector<RC> rc_charpoly(const RCMat& m);

// Exact PSD test for a Hermitian complex-rational matrix via pivoted LDL*.
bool rc_hermitian_psd(RCMat m);

}  // namespace cmjet
