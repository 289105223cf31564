#pragma once

#include <map>
#include <utility>
#include <vector>

#include "cmjet/verdict.hpp"
#include "cmjet/wpoly.hpp"

namespace cmjet {

// Bihomogeneous form Q_{(j,k)} = sum a_{alpha,beta} z_alpha... zbar_beta...
// with coefficients symmetric in the alpha group and in the beta group.
// Storage is by sorted multi-indices (entries in 0..n-1).
class BihomForm {
  public:
    using Key = std::pair<std::vector<int>, std::vector<int>>;

    BihomForm() = default;
    BihomForm(int n, int j, int k) : n_(n), j_(j), k_(k) {}

    int dim() const { return n_; }
    int deg_z() const { return j_; }
    int deg_zb() const { return k_; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::map<Key, RC>& entries() const { return coeffs_; }

    RC entry(const Key& key) const;
    void add_entry(const Key& key, const RC& c);

    // Round-trips with the (j,k,0)-bidegree part of a WPoly; conversion
    // symmetrizes via multinomial factors.
    static BihomForm from_wpoly(const WPoly& p, int j, int k);
    WPoly to_wpoly() const;

    friend bool operator==(const BihomForm& a, const BihomForm& b) {
        return a.n_ == b.n_ && a.j_ == b.j_ && a.k_ == b.k_ && a.coeffs_ == b.coeffs_;
    }

  private:
    int n_ = 0, j_ = 0, k_ = 0;
    std::map<Key, RC> coeffs_;
};

// Sorted multi-indices of the given length over 0..n-1.
std::vector<std::vector<int>> sorted_multiindices(int n, int len);

Int multinomial(const std::vector<int>& exps);

// Contraction over one paired holomorphic/antiholomorphic index.
// Requires j >= 1 and k >= 1.
BihomForm trace(const BihomForm& q);
BihomForm trace_power(const BihomForm& q, int m);

// Q = sum_i ||z||^{2i} N_i with tr(N_i) = 0; unique, found by an exact
// linear solve in coefficient space.
struct TraceDecomposition {
    std::vector<BihomForm> parts;  // parts[i] has bidegree (j-i, k-i)
};
TraceDecomposition trace_decompose(const BihomForm& q);

// True iff the monomial is divisible by z_{j1} z_{j2} zbar_{k1} zbar_{k2}.
bool is_normal_term(const Monomial& m);

// Membership of the truncated graph data in the partial normal space:
// divisibility at every weight <= K, tr(phi_4) = 0, tr^2(phi_5) = 0;
// weight 6 checked for divisibility only.
Verdict normal_space_check(const std::map<int, WPoly>& phi, int K);

}  // namespace cmjet
