#pragma once

#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "cmjet/rational.hpp"

namespace cmjet {

// Monomial z^kz zbar^kzb u^ku in n complex variables and one real variable u.
// Weights: z_j and zbar_j have weight 1, u has weight 2.
struct Monomial {
    std::vector<int> kz, kzb;
    int ku = 0;

    Monomial() = default;
    Monomial(std::vector<int> z, std::vector<int> zb, int u)
        : kz(std::move(z)), kzb(std::move(zb)), ku(u) {}

    static Monomial one(int n) { return Monomial(std::vector<int>(n, 0), std::vector<int>(n, 0), 0); }

    int n() const { return static_cast<int>(kz.size()); }
    int deg_z() const;
    int deg_zb() const;
    int weight() const { return deg_z() + deg_zb() + 2 * ku; }

    Monomial conjugate() const { return Monomial(kzb, kz, ku); }

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.ku == b.ku && a.kz == b.kz && a.kzb == b.kzb;
    }
    // Lexicographic on (weight, kz, kzb, ku); gives a canonical term order.
    friend bool operator<(const Monomial& a, const Monomial& b);
};

// Sparse polynomial in (z, zbar, u) with exact complex-rational coefficients.
// Real-valued polynomials satisfy coeff(m) == conj(coeff(conjugate(m))).
class WPoly {
  public:
    WPoly() : n_(0) {}
    explicit WPoly(int n) : n_(n) {}

    static WPoly zero(int n) { return WPoly(n); }
    static WPoly constant(int n, const RC& c);
    static WPoly var_z(int n, int j);
    static WPoly var_zb(int n, int j);
    static WPoly var_u(int n);
    static WPoly norm_sq(int n);  // |z_1|^2 + ... + |z_n|^2
    static WPoly term(const Monomial& m, const RC& c);

    int dim() const { return n_; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::map<Monomial, RC>& terms() const { return coeffs_; }

    RC coeff(const Monomial& m) const;
    void set_coeff(const Monomial& m, const RC& c);
    void add_term(const Monomial& m, const RC& c);

    WPoly operator-() const;
    WPoly& operator+=(const WPoly& o);
    WPoly& operator-=(const WPoly& o);
    friend WPoly operator+(WPoly a, const WPoly& b) { return a += b; }
    friend WPoly operator-(WPoly a, const WPoly& b) { return a -= b; }
    friend WPoly operator*(const WPoly& a, const WPoly& b);
    WPoly& operator*=(const WPoly& o) { return *this = *this * o; }
    friend WPoly operator*(const RC& c, const WPoly& p);
    friend bool operator==(const WPoly& a, const WPoly& b) {
        return a.n_ == b.n_ && a.coeffs_ == b.coeffs_;
    }

    // Product with all terms of weight > cap dropped.
    static WPoly mul_trunc(const WPoly& a, const WPoly& b, int cap);
    WPoly pow_trunc(int e, int cap) const;

    WPoly conjugate() const;
    WPoly real_part() const;  // (p + conj p)/2
    WPoly imag_part() const;  // (p - conj p)/(2i)
    bool is_real() const;

    WPoly truncate(int cap) const;            // keep weight <= cap
    WPoly weight_part(int mu) const;          // terms of weight exactly mu
    int min_weight() const;                   // weight of lowest term (-1 if zero)
    int max_weight() const;

    // Partition by weight; parts sum back to the polynomial.
    std::vector<std::pair<int, WPoly>> weight_decompose() const;
    // Partition by (deg_z, deg_zb, deg_u).
    std::vector<std::tuple<int, int, int, WPoly>> bidegree_decompose() const;
    WPoly bidegree_part(int j, int k, int l) const;
    // All terms of z-degree j and zbar-degree k, any u power.
    WPoly zdeg_part(int j, int k) const;

    // Substitute u := t*|z|^2. The u exponent of the result is the t power;
    // the result is no longer weight-graded in the same sense.
    WPoly restrict_diagonal() const;

    // Substitute z_j := zmap[j], zbar_j := conj(zmap[j]), u := umap,
    // truncating at weight cap. Exact.
    WPoly substitute(const std::vector<WPoly>& zmap, const WPoly& umap, int cap) const;

    std::complex<double> eval(const std::vector<std::complex<double>>& z, double u) const;
    // Evaluation with the u slot read as an independent real variable t
    // (used after restrict_diagonal).
    std::complex<double> eval_t(const std::vector<std::complex<double>>& z, double t) const {
        return eval(z, t);
    }

    std::string str() const;

  private:
    int n_;
    std::map<Monomial, RC> coeffs_;
};

// Sesquilinear pairing sum_j a_j * conj(b_j); linear in a, conjugate-linear in b.
WPoly hermitian_pair(const std::vector<WPoly>& a, const std::vector<WPoly>& b);
RC hermitian_pair(const std::vector<RC>& a, const std::vector<RC>& b);

// Holomorphic polynomial in (z, w); weight of z^a w^k is |a| + 2k.
struct HMono {
    std::vector<int> kz;
    int kw = 0;

    int deg_z() const;
    int weight() const { return deg_z() + 2 * kw; }
    friend bool operator==(const HMono& a, const HMono& b) { return a.kw == b.kw && a.kz == b.kz; }
    friend bool operator<(const HMono& a, const HMono& b);
};

class HoloPoly {
  public:
    HoloPoly() : n_(0) {}
    explicit HoloPoly(int n) : n_(n) {}

    static HoloPoly zero(int n) { return HoloPoly(n); }
    static HoloPoly constant(int n, const RC& c);
    static HoloPoly var_z(int n, int j);
    static HoloPoly var_w(int n);
    static HoloPoly term(int n, const std::vector<int>& kz, int kw, const RC& c);

    int dim() const { return n_; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::map<HMono, RC>& terms() const { return coeffs_; }

    RC coeff(const std::vector<int>& kz, int kw) const;
    void add_term(const std::vector<int>& kz, int kw, const RC& c);

    HoloPoly operator-() const;
    HoloPoly& operator+=(const HoloPoly& o);
    HoloPoly& operator-=(const HoloPoly& o);
    friend HoloPoly operator+(HoloPoly a, const HoloPoly& b) { return a += b; }
    friend HoloPoly operator-(HoloPoly a, const HoloPoly& b) { return a -= b; }
    friend HoloPoly operator*(const HoloPoly& a, const HoloPoly& b);
    friend HoloPoly operator*(const RC& c, const HoloPoly& p);
    friend bool operator==(const HoloPoly& a, const HoloPoly& b) {
        return a.n_ == b.n_ && a.coeffs_ == b.coeffs_;
    }

    static HoloPoly mul_trunc(const HoloPoly& a, const HoloPoly& b, int cap);
    HoloPoly pow_trunc(int e, int cap) const;
    HoloPoly truncate(int cap) const;
    int min_weight() const;

    // The C_{l,k}(z) w^k part: terms of z-degree l and w-degree k.
    HoloPoly component(int l, int k) const;

    // Substitute z_j := zmap[j], w := wmap (both holomorphic), truncate at cap.
    HoloPoly compose(const std::vector<HoloPoly>& zmap, const HoloPoly& wmap, int cap) const;

    // Substitute z_j := zmap[j] (mixed-variable), w := wmap, truncate by weight.
    WPoly to_wpoly(const std::vector<WPoly>& zmap, const WPoly& wmap, int cap) const;
    // Common case zmap = identity variables.
    WPoly to_wpoly(const WPoly& wmap, int cap) const;

    std::complex<double> eval(const std::vector<std::complex<double>>& z,
                              std::complex<double> w) const;

    std::string str() const;

  private:
    int n_;
    std::map<HMono, RC> coeffs_;
};

// Enumerate exponent vectors of length n with given total degree.
std::vector<std::vector<int>> exponents_of_degree(int n, int deg);
// Enumerate weight-mu monomials in (z, zbar, u).
std::vector<Monomial> monomials_of_weight(int n, int mu);

}  // namespace cmjet
