#include "cmjet/trace.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "cmjet/exactla.hpp"

namespace cmjet {

namespace {

std::vector<int> multiindex_of_exponents(const std::vector<int>& exps) {
    std::vector<int> idx;
    for (size_t j = 0; j < exps.size(); ++j)
        for (int c = 0; c < exps[j]; ++c) idx.push_back(static_cast<int>(j));
    return idx;
}

std::vector<int> exponents_of_multiindex(const std::vector<int>& idx, int n) {
    std::vector<int> exps(n, 0);
    for (int v : idx) ++exps[v];
    return exps;
}

std::vector<int> with_index(std::vector<int> idx, int c) {
    idx.push_back(c);
    std::sort(idx.begin(), idx.end());
    return idx;
}

}  // namespace

RC BihomForm::entry(const Key& key) const {
    auto it = coeffs_.find(key);
    return it == coeffs_.end() ? RC() : it->second;
}

void BihomForm::add_entry(const Key& key, const RC& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = coeffs_.emplace(key, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) coeffs_.erase(it);
    }
}

Int multinomial(const std::vector<int>& exps) {
    Int result = 1;
    int consumed = 0;
    for (int e : exps) {
        for (int c = 1; c <= e; ++c) {
            ++consumed;
            result = result * consumed / c;  // binomial running product, stays integral
        }
    }
    return result;
}

std::vector<std::vector<int>> sorted_multiindices(int n, int len) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    // combinations with repetition, nondecreasing
    std::function<void(int)> rec = [&](int minv) {
        if (static_cast<int>(cur.size()) == len) {
            out.push_back(cur);
            return;
        }
        for (int v = minv; v < n; ++v) {
            cur.push_back(v);
            rec(v);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

BihomForm BihomForm::from_wpoly(const WPoly& p, int j, int k) {
    BihomForm q(p.dim(), j, k);
    for (const auto& [m, c] : p.terms()) {
        if (m.ku != 0 || m.deg_z() != j || m.deg_zb() != k)
            throw std::invalid_argument("from_wpoly: term outside bidegree (j,k,0)");
        Rat scale = Rat(multinomial(m.kz) * multinomial(m.kzb));
        Key key{multiindex_of_exponents(m.kz), multiindex_of_exponents(m.kzb)};
        q.add_entry(key, c * RC(Rat(1) / scale));
    }
    return q;
}

WPoly BihomForm::to_wpoly() const {
    WPoly p(n_);
    for (const auto& [key, a] : coeffs_) {
        std::vector<int> kz = exponents_of_multiindex(key.first, n_);
        std::vector<int> kzb = exponents_of_multiindex(key.second, n_);
        Rat scale = Rat(multinomial(kz) * multinomial(kzb));
        p.add_term(Monomial(std::move(kz), std::move(kzb), 0), a * RC(scale));
    }
    return p;
}

BihomForm trace(const BihomForm& q) {
    if (q.deg_z() < 1 || q.deg_zb() < 1)
        throw std::invalid_argument("trace: bidegree must be at least (1,1)");
    BihomForm out(q.dim(), q.deg_z() - 1, q.deg_zb() - 1);
    // b_{a',b'} = sum_c a_{a'+c, b'+c}
    for (const auto& alpha : sorted_multiindices(q.dim(), q.deg_z() - 1))
        for (const auto& beta : sorted_multiindices(q.dim(), q.deg_zb() - 1)) {
            RC s;
            for (int c = 0; c < q.dim(); ++c)
                s += q.entry({with_index(alpha, c), with_index(beta, c)});
            out.add_entry({alpha, beta}, s);
        }
    return out;
}

BihomForm trace_power(const BihomForm& q, int m) {
    BihomForm r = q;
    for (int i = 0; i < m; ++i) r = trace(r);
    return r;
}

TraceDecomposition trace_decompose(const BihomForm& q) {
    int n = q.dim(), j = q.deg_z(), k = q.deg_zb();
    int parts = std::min(j, k) + 1;

    // unknown layout: for part i, one complex entry per sorted index pair
    struct Slot {
        int part;
        BihomForm::Key key;
    };
    std::vector<Slot> slots;
    std::map<std::pair<int, BihomForm::Key>, int> slot_of;
    std::vector<std::vector<std::vector<int>>> alpha_basis(parts), beta_basis(parts);
    for (int i = 0; i < parts; ++i) {
        alpha_basis[i] = sorted_multiindices(n, j - i);
        beta_basis[i] = sorted_multiindices(n, k - i);
        for (const auto& a : alpha_basis[i])
            for (const auto& b : beta_basis[i]) {
                slot_of[{i, {a, b}}] = static_cast<int>(slots.size());
                slots.push_back({i, {a, b}});
            }
    }
    int ncols = 2 * static_cast<int>(slots.size());  // re/im split

    RatMat A;
    RatVec rhs;
    auto push_complex_rows = [&](const std::map<int, RC>& cols, const RC& b) {
        RatVec re_row(ncols, Rat(0)), im_row(ncols, Rat(0));
        for (const auto& [slot, v] : cols) {
            re_row[2 * slot] += v.re;
            re_row[2 * slot + 1] -= v.im;
            im_row[2 * slot] += v.im;
            im_row[2 * slot + 1] += v.re;
        }
        A.push_back(std::move(re_row));
        rhs.push_back(b.re);
        A.push_back(std::move(im_row));
        rhs.push_back(b.im);
    };

    // reconstruction: coefficient of each (j,k) monomial in sum_i ||z||^{2i} N_i
    WPoly qp = q.to_wpoly();
    for (const auto& kz : exponents_of_degree(n, j))
        for (const auto& kzb : exponents_of_degree(n, k)) {
            std::map<int, RC> cols;
            Rat mono_scale(multinomial(kz) * multinomial(kzb));
            for (int i = 0; i < parts; ++i) {
                for (const auto& c : exponents_of_degree(n, i)) {
                    bool fits = true;
                    std::vector<int> ra(n), rb(n);
                    for (int t = 0; t < n; ++t) {
                        ra[t] = kz[t] - c[t];
                        rb[t] = kzb[t] - c[t];
                        if (ra[t] < 0 || rb[t] < 0) fits = false;
                    }
                    if (!fits) continue;
                    // ||z||^{2i} contributes multinomial(i;c) at z^c zbar^c, and the
                    // N_i entry appears with its own symmetrization factor
                    Rat v = Rat(multinomial(c)) * Rat(multinomial(ra) * multinomial(rb));
                    BihomForm::Key key{multiindex_of_exponents(ra), multiindex_of_exponents(rb)};
                    cols[slot_of.at({i, key})] += RC(v);
                }
            }
            RC b = qp.coeff(Monomial(kz, kzb, 0));
            push_complex_rows(cols, b);
        }

    // tracelessness of each part that still has both index groups nonempty
    for (int i = 0; i < parts; ++i) {
        if (j - i < 1 || k - i < 1) continue;
        for (const auto& alpha : sorted_multiindices(n, j - i - 1))
            for (const auto& beta : sorted_multiindices(n, k - i - 1)) {
                std::map<int, RC> cols;
                for (int c = 0; c < n; ++c) {
                    BihomForm::Key key{with_index(alpha, c), with_index(beta, c)};
                    cols[slot_of.at({i, key})] += RC(1);
                }
                push_complex_rows(cols, RC());
            }
    }

    auto x = min_norm_solve(A, rhs);
    if (!x) throw std::runtime_error("trace_decompose: inconsistent system");

    TraceDecomposition out;
    out.parts.resize(parts);
    for (int i = 0; i < parts; ++i) out.parts[i] = BihomForm(n, j - i, k - i);
    for (size_t s = 0; s < slots.size(); ++s)
        out.parts[slots[s].part].add_entry(slots[s].key, RC((*x)[2 * s], (*x)[2 * s + 1]));
    return out;
}

bool is_normal_term(const Monomial& m) { return m.deg_z() >= 2 && m.deg_zb() >= 2; }

Verdict normal_space_check(const std::map<int, WPoly>& phi, int K) {
    for (const auto& [mu, p] : phi) {
        if (mu > K || p.is_zero()) continue;
        std::ostringstream tag;
        tag << "weight " << mu << ": ";
        if (!p.is_real()) return Verdict::violated(tag.str() + "component is not real-valued");
        for (const auto& [m, c] : p.terms()) {
            if (m.weight() != mu)
                return Verdict::violated(tag.str() + "term " + WPoly::term(m, c).str() +
                                         " has wrong weight");
            if (!is_normal_term(m))
                return Verdict::violated(tag.str() + "term " + WPoly::term(m, c).str() +
                                         " lacks the required divisibility");
        }
        if (mu == 4) {
            BihomForm f = BihomForm::from_wpoly(p.bidegree_part(2, 2, 0), 2, 2);
            if (!trace(f).is_zero())
                return Verdict::violated(tag.str() + "trace of the (2,2) part is nonzero");
        }
        if (mu == 5) {
            WPoly p32 = p.bidegree_part(3, 2, 0);
            if (!p32.is_zero() &&
                !trace_power(BihomForm::from_wpoly(p32, 3, 2), 2).is_zero())
                return Verdict::violated(tag.str() + "iterated trace of the (3,2) part is nonzero");
            WPoly p23 = p.bidegree_part(2, 3, 0);
            if (!p23.is_zero() &&
                !trace_power(BihomForm::from_wpoly(p23, 2, 3), 2).is_zero())
                return Verdict::violated(tag.str() + "iterated trace of the (2,3) part is nonzero");
        }
    }
    return Verdict::holds("all components lie in the partial normal space");
}

}  // namespace cmjet
