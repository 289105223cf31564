#include "cmjet/wpoly.hpp"

#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

namespace cmjet {

namespace {

int vec_sum(const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0); }

std::complex<double> cpow(std::complex<double> b, int e) {
    std::complex<double> r = 1.0;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

void check_dim(int a, int b, const char* what) {
    if (a != b) throw std::invalid_argument(std::string("dimension mismatch in ") + what);
}

// Nibble-packed monomial key (ku, then kzb, then kz); valid when every
// exponent fits in a nibble, i.e. n <= 7 and total weight <= 15. Key addition
// is monomial multiplication.
uint64_t pack_mono(const Monomial& m) {
    uint64_t k = static_cast<uint64_t>(m.ku);
    int n = m.n();
    for (int j = 0; j < n; ++j) k |= static_cast<uint64_t>(m.kzb[j]) << (4 * (1 + j));
    for (int j = 0; j < n; ++j) k |= static_cast<uint64_t>(m.kz[j]) << (4 * (1 + n + j));
    return k;
}

Monomial unpack_mono(uint64_t k, int n) {
    Monomial m(std::vector<int>(n, 0), std::vector<int>(n, 0), static_cast<int>(k & 15));
    for (int j = 0; j < n; ++j) m.kzb[j] = static_cast<int>((k >> (4 * (1 + j))) & 15);
    for (int j = 0; j < n; ++j) m.kz[j] = static_cast<int>((k >> (4 * (1 + n + j))) & 15);
    return m;
}

}  // namespace

int Monomial::deg_z() const { return vec_sum(kz); }
int Monomial::deg_zb() const { return vec_sum(kzb); }

bool operator<(const Monomial& a, const Monomial& b) {
    int wa = a.weight(), wb = b.weight();
    if (wa != wb) return wa < wb;
    if (a.kz != b.kz) return a.kz < b.kz;
    if (a.kzb != b.kzb) return a.kzb < b.kzb;
    return a.ku < b.ku;
}

WPoly WPoly::constant(int n, const RC& c) {
    WPoly p(n);
    p.add_term(Monomial::one(n), c);
    return p;
}

WPoly WPoly::var_z(int n, int j) {
    Monomial m = Monomial::one(n);
    m.kz[j] = 1;
    return term(m, RC(1));
}

WPoly WPoly::var_zb(int n, int j) {
    Monomial m = Monomial::one(n);
    m.kzb[j] = 1;
    return term(m, RC(1));
}

WPoly WPoly::var_u(int n) {
    Monomial m = Monomial::one(n);
    m.ku = 1;
    return term(m, RC(1));
}

WPoly WPoly::norm_sq(int n) {
    WPoly p(n);
    for (int j = 0; j < n; ++j) {
        Monomial m = Monomial::one(n);
        m.kz[j] = 1;
        m.kzb[j] = 1;
        p.add_term(m, RC(1));
    }
    return p;
}

WPoly WPoly::term(const Monomial& m, const RC& c) {
    WPoly p(m.n());
    p.add_term(m, c);
    return p;
}

RC WPoly::coeff(const Monomial& m) const {
    auto it = coeffs_.find(m);
    return it == coeffs_.end() ? RC() : it->second;
}

void WPoly::set_coeff(const Monomial& m, const RC& c) {
    if (c.is_zero())
        coeffs_.erase(m);
    else
        coeffs_[m] = c;
}

void WPoly::add_term(const Monomial& m, const RC& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = coeffs_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) coeffs_.erase(it);
    }
}

WPoly WPoly::operator-() const {
    WPoly r(n_);
    for (const auto& [m, c] : coeffs_) r.coeffs_.emplace(m, -c);
    return r;
}

WPoly& WPoly::operator+=(const WPoly& o) {
    if (coeffs_.empty()) n_ = o.n_;
    if (!o.coeffs_.empty()) check_dim(n_, o.n_, "WPoly add");
    for (const auto& [m, c] : o.coeffs_) add_term(m, c);
    return *this;
}

WPoly& WPoly::operator-=(const WPoly& o) {
    if (coeffs_.empty()) n_ = o.n_;
    if (!o.coeffs_.empty()) check_dim(n_, o.n_, "WPoly sub");
    for (const auto& [m, c] : o.coeffs_) add_term(m, -c);
    return *this;
}

WPoly operator*(const WPoly& a, const WPoly& b) { return WPoly::mul_trunc(a, b, -1); }

WPoly operator*(const RC& c, const WPoly& p) {
    WPoly r(p.n_);
    if (c.is_zero()) return r;
    for (const auto& [m, cc] : p.coeffs_) r.coeffs_.emplace(m, c * cc);
    return r;
}

WPoly WPoly::mul_trunc(const WPoly& a, const WPoly& b, int cap) {
    check_dim(a.n_, b.n_, "WPoly mul");
    WPoly r(a.n_);
    if (a.n_ <= 7 && cap >= 0 && cap <= 15) {
        // packed-key path: accumulate on 64-bit keys instead of map lookups
        // with vector comparisons
        auto flatten = [cap](const WPoly& p) {
            std::vector<std::pair<uint64_t, const RC*>> v;
            std::vector<int> w;
            v.reserve(p.coeffs_.size());
            for (const auto& [m, c] : p.coeffs_) {
                int wm = m.weight();
                if (wm > cap) continue;
                v.emplace_back(pack_mono(m), &c);
                w.push_back(wm);
            }
            return std::make_pair(std::move(v), std::move(w));
        };
        auto [va, wa] = flatten(a);
        auto [vb, wb] = flatten(b);
        std::unordered_map<uint64_t, RC> acc;
        acc.reserve(va.size() + vb.size());
        for (size_t i = 0; i < va.size(); ++i)
            for (size_t j = 0; j < vb.size(); ++j) {
                if (wa[i] + wb[j] > cap) continue;
                acc[va[i].first + vb[j].first] += *va[i].second * *vb[j].second;
            }
        for (const auto& [k, c] : acc)
            if (!c.is_zero()) r.coeffs_.emplace(unpack_mono(k, a.n_), c);
        return r;
    }
    for (const auto& [ma, ca] : a.coeffs_) {
        int wa = ma.weight();
        for (const auto& [mb, cb] : b.coeffs_) {
            if (cap >= 0 && wa + mb.weight() > cap) continue;
            Monomial m = ma;
            for (int j = 0; j < a.n_; ++j) {
                m.kz[j] += mb.kz[j];
                m.kzb[j] += mb.kzb[j];
            }
            m.ku += mb.ku;
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

WPoly WPoly::pow_trunc(int e, int cap) const {
    WPoly r = constant(n_, RC(1));
    for (int i = 0; i < e; ++i) r = mul_trunc(r, *this, cap);
    return r;
}

WPoly WPoly::conjugate() const {
    WPoly r(n_);
    for (const auto& [m, c] : coeffs_) r.coeffs_.emplace(m.conjugate(), c.conj());
    return r;
}

WPoly WPoly::real_part() const {
    WPoly r = *this + conjugate();
    return RC(Rat(1, 2)) * r;
}

WPoly WPoly::imag_part() const {
    WPoly r = *this - conjugate();
    return RC(Rat(0), Rat(-1, 2)) * r;  // 1/(2i) = -i/2
}

bool WPoly::is_real() const {
    for (const auto& [m, c] : coeffs_) {
        if (coeff(m.conjugate()) != c.conj()) return false;
    }
    return true;
}

WPoly WPoly::truncate(int cap) const {
    WPoly r(n_);
    for (const auto& [m, c] : coeffs_)
        if (m.weight() <= cap) r.coeffs_.emplace(m, c);
    return r;
}

WPoly WPoly::weight_part(int mu) const {
    WPoly r(n_);
    for (const auto& [m, c] : coeffs_)
        if (m.weight() == mu) r.coeffs_.emplace(m, c);
    return r;
}

int WPoly::min_weight() const {
    if (coeffs_.empty()) return -1;
    return coeffs_.begin()->first.weight();  // map ordered by weight first
}

int WPoly::max_weight() const {
    if (coeffs_.empty()) return -1;
    return coeffs_.rbegin()->first.weight();
}

std::vector<std::pair<int, WPoly>> WPoly::weight_decompose() const {
    std::map<int, WPoly> parts;
    for (const auto& [m, c] : coeffs_) {
        auto [it, ins] = parts.try_emplace(m.weight(), WPoly(n_));
        it->second.add_term(m, c);
    }
    return {parts.begin(), parts.end()};
}

std::vector<std::tuple<int, int, int, WPoly>> WPoly::bidegree_decompose() const {
    std::map<std::tuple<int, int, int>, WPoly> parts;
    for (const auto& [m, c] : coeffs_) {
        auto key = std::make_tuple(m.deg_z(), m.deg_zb(), m.ku);
        auto [it, ins] = parts.try_emplace(key, WPoly(n_));
        it->second.add_term(m, c);
    }
    std::vector<std::tuple<int, int, int, WPoly>> out;
    for (auto& [k, p] : parts)
        out.emplace_back(std::get<0>(k), std::get<1>(k), std::get<2>(k), std::move(p));
    return out;
}

WPoly WPoly::bidegree_part(int j, int k, int l) const {
    WPoly r(n_);
    for (const auto& [m, c] : coeffs_)
        if (m.deg_z() == j && m.deg_zb() == k && m.ku == l) r.coeffs_.emplace(m, c);
    return r;
}

WPoly WPoly::zdeg_part(int j, int k) const {
    WPoly r(n_);
    for (const auto& [m, c] : coeffs_)
        if (m.deg_z() == j && m.deg_zb() == k) r.coeffs_.emplace(m, c);
    return r;
}

WPoly WPoly::restrict_diagonal() const {
    WPoly nsq = norm_sq(n_);
    WPoly r(n_);
    for (const auto& [m, c] : coeffs_) {
        Monomial base = m;
        base.ku = 0;  // u^l becomes t^l |z|^{2l}; keep l in the u slot as t power
        WPoly t = WPoly::term(base, c);
        WPoly zfac = nsq.pow_trunc(m.ku, -1);
        WPoly prod = t * zfac;
        for (const auto& [pm, pc] : prod.terms()) {
            Monomial out = pm;
            out.ku = m.ku;
            r.add_term(out, pc);
        }
    }
    return r;
}

WPoly WPoly::substitute(const std::vector<WPoly>& zmap, const WPoly& umap, int cap) const {
    if (static_cast<int>(zmap.size()) != n_)
        throw std::invalid_argument("substitute: zmap size mismatch");
    int target_n = zmap.empty() ? umap.dim() : zmap[0].dim();
    // power caches
    std::vector<std::vector<WPoly>> zp(n_), zbp(n_);
    std::vector<WPoly> up;
    auto powers = [&](const WPoly& base, std::vector<WPoly>& store, int e) -> const WPoly& {
        while (static_cast<int>(store.size()) <= e) {
            if (store.empty())
                store.push_back(WPoly::constant(target_n, RC(1)));
            else
                store.push_back(WPoly::mul_trunc(store.back(), base, cap));
        }
        return store[e];
    };
    std::vector<WPoly> zconj(n_);
    for (int j = 0; j < n_; ++j) zconj[j] = zmap[j].conjugate();

    WPoly r(target_n);
    for (const auto& [m, c] : coeffs_) {
        WPoly t = WPoly::constant(target_n, c);
        for (int j = 0; j < n_ && !t.is_zero(); ++j) {
            if (m.kz[j] > 0) t = WPoly::mul_trunc(t, powers(zmap[j], zp[j], m.kz[j]), cap);
            if (m.kzb[j] > 0) t = WPoly::mul_trunc(t, powers(zconj[j], zbp[j], m.kzb[j]), cap);
        }
        if (m.ku > 0 && !t.is_zero()) t = WPoly::mul_trunc(t, powers(umap, up, m.ku), cap);
        r += t;
    }
    return r;
}

std::complex<double> WPoly::eval(const std::vector<std::complex<double>>& z, double u) const {
    std::complex<double> s = 0.0;
    for (const auto& [m, c] : coeffs_) {
        std::complex<double> t = c.to_complex();
        for (int j = 0; j < n_; ++j) {
            if (m.kz[j]) t *= cpow(z[j], m.kz[j]);
            if (m.kzb[j]) t *= cpow(std::conj(z[j]), m.kzb[j]);
        }
        if (m.ku) t *= cpow(u, m.ku);
        s += t;
    }
    return s;
}

std::string WPoly::str() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : coeffs_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << format_rc(c) << ")";
        for (int j = 0; j < n_; ++j) {
            if (m.kz[j]) os << " z" << j + 1 << "^" << m.kz[j];
            if (m.kzb[j]) os << " zb" << j + 1 << "^" << m.kzb[j];
        }
        if (m.ku) os << " u^" << m.ku;
    }
    return os.str();
}

WPoly hermitian_pair(const std::vector<WPoly>& a, const std::vector<WPoly>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("hermitian_pair: dimension mismatch");
    if (a.empty()) return WPoly(0);
    WPoly r(a[0].dim());
    for (size_t j = 0; j < a.size(); ++j) r += a[j] * b[j].conjugate();
    return r;
}

RC hermitian_pair(const std::vector<RC>& a, const std::vector<RC>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("hermitian_pair: dimension mismatch");
    RC r;
    for (size_t j = 0; j < a.size(); ++j) r += a[j] * b[j].conj();
    return r;
}

// ---------------------------------------------------------------------------
// HoloPoly

int HMono::deg_z() const { return vec_sum(kz); }

bool operator<(const HMono& a, const HMono& b) {
    int wa = a.weight(), wb = b.weight();
    if (wa != wb) return wa < wb;
    if (a.kz != b.kz) return a.kz < b.kz;
    return a.kw < b.kw;
}

HoloPoly HoloPoly::constant(int n, const RC& c) {
    HoloPoly p(n);
    p.add_term(std::vector<int>(n, 0), 0, c);
    return p;
}

HoloPoly HoloPoly::var_z(int n, int j) {
    std::vector<int> kz(n, 0);
    kz[j] = 1;
    return term(n, kz, 0, RC(1));
}

HoloPoly HoloPoly::var_w(int n) { return term(n, std::vector<int>(n, 0), 1, RC(1)); }

HoloPoly HoloPoly::term(int n, const std::vector<int>& kz, int kw, const RC& c) {
    HoloPoly p(n);
    p.add_term(kz, kw, c);
    return p;
}

RC HoloPoly::coeff(const std::vector<int>& kz, int kw) const {
    auto it = coeffs_.find(HMono{kz, kw});
    return it == coeffs_.end() ? RC() : it->second;
}

void HoloPoly::add_term(const std::vector<int>& kz, int kw, const RC& c) {
    if (c.is_zero()) return;
    HMono m{kz, kw};
    auto [it, inserted] = coeffs_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) coeffs_.erase(it);
    }
}

HoloPoly HoloPoly::operator-() const {
    HoloPoly r(n_);
    for (const auto& [m, c] : coeffs_) r.coeffs_.emplace(m, -c);
    return r;
}

HoloPoly& HoloPoly::operator+=(const HoloPoly& o) {
    if (coeffs_.empty()) n_ = o.n_;
    if (!o.coeffs_.empty()) check_dim(n_, o.n_, "HoloPoly add");
    for (const auto& [m, c] : o.coeffs_) add_term(m.kz, m.kw, c);
    return *this;
}

HoloPoly& HoloPoly::operator-=(const HoloPoly& o) {
    if (coeffs_.empty()) n_ = o.n_;
    if (!o.coeffs_.empty()) check_dim(n_, o.n_, "HoloPoly sub");
    for (const auto& [m, c] : o.coeffs_) add_term(m.kz, m.kw, -c);
    return *this;
}

HoloPoly operator*(const HoloPoly& a, const HoloPoly& b) { return HoloPoly::mul_trunc(a, b, -1); }

HoloPoly operator*(const RC& c, const HoloPoly& p) {
    HoloPoly r(p.n_);
    if (c.is_zero()) return r;
    for (const auto& [m, cc] : p.coeffs_) r.coeffs_.emplace(m, c * cc);
    return r;
}

HoloPoly HoloPoly::mul_trunc(const HoloPoly& a, const HoloPoly& b, int cap) {
    check_dim(a.n_, b.n_, "HoloPoly mul");
    HoloPoly r(a.n_);
    for (const auto& [ma, ca] : a.coeffs_) {
        int wa = ma.weight();
        for (const auto& [mb, cb] : b.coeffs_) {
            if (cap >= 0 && wa + mb.weight() > cap) continue;
            HMono m = ma;
            for (int j = 0; j < a.n_; ++j) m.kz[j] += mb.kz[j];
            m.kw += mb.kw;
            r.add_term(m.kz, m.kw, ca * cb);
        }
    }
    return r;
}

HoloPoly HoloPoly::pow_trunc(int e, int cap) const {
    HoloPoly r = constant(n_, RC(1));
    for (int i = 0; i < e; ++i) r = mul_trunc(r, *this, cap);
    return r;
}

HoloPoly HoloPoly::truncate(int cap) const {
    HoloPoly r(n_);
    for (const auto& [m, c] : coeffs_)
        if (m.weight() <= cap) r.coeffs_.emplace(m, c);
    return r;
}

int HoloPoly::min_weight() const {
    if (coeffs_.empty()) return -1;
    return coeffs_.begin()->first.weight();
}

HoloPoly HoloPoly::component(int l, int k) const {
    HoloPoly r(n_);
    for (const auto& [m, c] : coeffs_)
        if (m.deg_z() == l && m.kw == k) r.coeffs_.emplace(m, c);
    return r;
}

HoloPoly HoloPoly::compose(const std::vector<HoloPoly>& zmap, const HoloPoly& wmap,
                           int cap) const {
    if (static_cast<int>(zmap.size()) != n_)
        throw std::invalid_argument("compose: zmap size mismatch");
    int target_n = zmap.empty() ? wmap.dim() : zmap[0].dim();
    std::vector<std::vector<HoloPoly>> zp(n_);
    std::vector<HoloPoly> wp;
    auto powers = [&](const HoloPoly& base, std::vector<HoloPoly>& store,
                      int e) -> const HoloPoly& {
        while (static_cast<int>(store.size()) <= e) {
            if (store.empty())
                store.push_back(HoloPoly::constant(target_n, RC(1)));
            else
                store.push_back(HoloPoly::mul_trunc(store.back(), base, cap));
        }
        return store[e];
    };
    HoloPoly r(target_n);
    for (const auto& [m, c] : coeffs_) {
        HoloPoly t = HoloPoly::constant(target_n, c);
        for (int j = 0; j < n_ && !t.is_zero(); ++j)
            if (m.kz[j] > 0) t = HoloPoly::mul_trunc(t, powers(zmap[j], zp[j], m.kz[j]), cap);
        if (m.kw > 0 && !t.is_zero()) t = HoloPoly::mul_trunc(t, powers(wmap, wp, m.kw), cap);
        r += t;
    }
    return r;
}

WPoly HoloPoly::to_wpoly(const std::vector<WPoly>& zmap, const WPoly& wmap, int cap) const {
    int target_n = zmap.empty() ? wmap.dim() : zmap[0].dim();
    std::vector<std::vector<WPoly>> zp(n_);
    std::vector<WPoly> wp;
    auto powers = [&](const WPoly& base, std::vector<WPoly>& store, int e) -> const WPoly& {
        while (static_cast<int>(store.size()) <= e) {
            if (store.empty())
                store.push_back(WPoly::constant(target_n, RC(1)));
            else
                store.push_back(WPoly::mul_trunc(store.back(), base, cap));
        }
        return store[e];
    };
    WPoly r(target_n);
    for (const auto& [m, c] : coeffs_) {
        WPoly t = WPoly::constant(target_n, c);
        for (int j = 0; j < n_ && !t.is_zero(); ++j)
            if (m.kz[j] > 0) t = WPoly::mul_trunc(t, powers(zmap[j], zp[j], m.kz[j]), cap);
        if (m.kw > 0 && !t.is_zero()) t = WPoly::mul_trunc(t, powers(wmap, wp, m.kw), cap);
        r += t;
    }
    return r;
}

WPoly HoloPoly::to_wpoly(const WPoly& wmap, int cap) const {
    std::vector<WPoly> zmap;
    zmap.reserve(n_);
    for (int j = 0; j < n_; ++j) zmap.push_back(WPoly::var_z(n_, j));
    return to_wpoly(zmap, wmap, cap);
}

std::complex<double> HoloPoly::eval(const std::vector<std::complex<double>>& z,
                                    std::complex<double> w) const {
    std::complex<double> s = 0.0;
    for (const auto& [m, c] : coeffs_) {
        std::complex<double> t = c.to_complex();
        for (int j = 0; j < n_; ++j)
            if (m.kz[j]) t *= cpow(z[j], m.kz[j]);
        if (m.kw) t *= cpow(w, m.kw);
        s += t;
    }
    return s;
}

std::string HoloPoly::str() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : coeffs_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << format_rc(c) << ")";
        for (int j = 0; j < n_; ++j)
            if (m.kz[j]) os << " z" << j + 1 << "^" << m.kz[j];
        if (m.kw) os << " w^" << m.kw;
    }
    return os.str();
}

std::vector<std::vector<int>> exponents_of_degree(int n, int deg) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(n, 0);
    // lexicographic enumeration by recursion
    auto rec = [&](auto&& self, int pos, int rem) -> void {
        if (pos == n - 1) {
            cur[pos] = rem;
            out.push_back(cur);
            return;
        }
        for (int e = rem; e >= 0; --e) {
            cur[pos] = e;
            self(self, pos + 1, rem - e);
        }
    };
    if (n == 0) {
        if (deg == 0) out.push_back({});
        return out;
    }
    rec(rec, 0, deg);
    return out;
}

std::vector<Monomial> monomials_of_weight(int n, int mu) {
    std::vector<Monomial> out;
    for (int ku = 0; 2 * ku <= mu; ++ku) {
        int rest = mu - 2 * ku;
        for (int dz = 0; dz <= rest; ++dz) {
            int dzb = rest - dz;
            for (const auto& kz : exponents_of_degree(n, dz))
                for (const auto& kzb : exponents_of_degree(n, dzb))
                    out.emplace_back(kz, kzb, ku);
        }
    }
    return out;
}

}  // namespace cmjet
