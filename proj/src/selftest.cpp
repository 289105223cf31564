#include "cmjet/selftest.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include "cmjet/jets.hpp"
#include "cmjet/newton.hpp"
#include "cmjet/normalform.hpp"
#include "cmjet/random_gen.hpp"
#include "cmjet/trace.hpp"

namespace cmjet {

namespace {

void check(SuiteResult& r, bool ok, const std::string& label) {
    if (ok) {
        ++r.passed;
    } else {
        ++r.failed;
        r.failures.push_back(label);
    }
}

double circle_average(const WPoly& p, int samples = 4096) {
    double sum = 0.0;
    for (int i = 0; i < samples; ++i) {
        double theta = 2.0 * M_PI * i / samples;
        sum += p.eval({std::polar(1.0, theta)}, 0.0).real();
    }
    return sum / samples;
}

// --- independent polytope oracle: Sutherland-Hodgman clipping plus an exact
// --- area / midpoint decision, no shared code with the candidate-point method

Rat cross_q(const QPoint& o, const QPoint& a, const QPoint& b) {
    return (a.first - o.first) * (b.second - o.second) -
           (a.second - o.second) * (b.first - o.first);
}

std::vector<QPoint> clip_against_edge(const std::vector<QPoint>& poly, const QPoint& a,
                                      const QPoint& b) {
    std::vector<QPoint> out;
    size_t k = poly.size();
    for (size_t i = 0; i < k; ++i) {
        const QPoint& p = poly[i];
        const QPoint& q = poly[(i + 1) % k];
        Rat sp = cross_q(a, b, p), sq = cross_q(a, b, q);
        if (sp >= 0) out.push_back(p);
        if ((sp > 0 && sq < 0) || (sp < 0 && sq > 0)) {
            Rat t = sp / (sp - sq);
            out.push_back({p.first + t * (q.first - p.first),
                           p.second + t * (q.second - p.second)});
        }
    }
    return out;
}

// Intersection parameters t of [a,b] with segment [c,d], as positions along
// [a,b]; covers the collinear overlap case.
std::vector<Rat> seg_hit_params(const QPoint& a, const QPoint& b, const QPoint& c,
                                const QPoint& d) {
    std::vector<Rat> out;
    Rat d1x = b.first - a.first, d1y = b.second - a.second;
    Rat d2x = d.first - c.first, d2y = d.second - c.second;
    Rat denom = d1x * d2y - d1y * d2x;
    if (denom != 0) {
        Rat t = ((c.first - a.first) * d2y - (c.second - a.second) * d2x) / denom;
        Rat s = ((c.first - a.first) * d1y - (c.second - a.second) * d1x) / denom;
        if (t >= 0 && t <= 1 && s >= 0 && s <= 1) out.push_back(t);
        return out;
    }
    if (cross_q(a, b, c) != 0) return out;
    Rat len2 = d1x * d1x + d1y * d1y;
    if (len2 == 0) return out;
    auto param = [&](const QPoint& p) -> Rat {
        return ((p.first - a.first) * d1x + (p.second - a.second) * d1y) / len2;
    };
    Rat pc = param(c), pd = param(d);
    if (pc > pd) std::swap(pc, pd);
    Rat s0 = std::max(Rat(0), pc), s1 = std::min(Rat(1), pd);
    if (s0 > s1) return out;
    out.push_back(s0);
    if (s1 != s0) out.push_back(s1);
    return out;
}

Rat twice_area(const std::vector<QPoint>& poly) {
    Rat a(0);
    size_t k = poly.size();
    for (size_t i = 0; i < k; ++i) {
        const QPoint& p = poly[i];
        const QPoint& q = poly[(i + 1) % k];
        a += p.first * q.second - q.first * p.second;
    }
    return a;
}

bool oracle_polytope_disjoint(const std::vector<std::pair<int, int>>& support,
                              const RemainderSpec& r) {
    if (support.empty() || r.degrees.empty()) return true;
    ExtendedPolytope ep = extended_polytope(support);
    std::vector<QPoint> rpts;
    for (const auto& [a, b] : r.degrees) rpts.push_back({Rat(a), Rat(b)});
    std::vector<QPoint> rhull = convex_hull(rpts);

    if (ep.hull.size() >= 3) {
        std::vector<QPoint> clipped = rhull;
        for (size_t i = 0; i < ep.hull.size() && !clipped.empty(); ++i)
            clipped = clip_against_edge(clipped, ep.hull[i], ep.hull[(i + 1) % ep.hull.size()]);
        if (clipped.empty()) return true;
        if (twice_area(clipped) != 0) return false;  // positive area forces interior overlap
        QPoint lo = clipped[0], hi = clipped[0];
        for (const auto& p : clipped) {
            lo = std::min(lo, p);
            hi = std::max(hi, p);
        }
        QPoint mid{(lo.first + hi.first) / 2, (lo.second + hi.second) / 2};
        return !in_relative_interior(mid, ep.hull);
    }

    if (ep.hull.size() == 1) return !in_closed_hull(ep.hull[0], rhull);

    // segment polytope: clip the parameter interval against conv(R)
    const QPoint& a = ep.hull[0];
    const QPoint& b = ep.hull[1];
    std::vector<Rat> ts;
    if (in_closed_hull(a, rhull)) ts.push_back(Rat(0));
    if (in_closed_hull(b, rhull)) ts.push_back(Rat(1));
    size_t rk = rhull.size();
    size_t edge_count = rk >= 3 ? rk : 1;
    for (size_t i = 0; i < edge_count; ++i) {
        const QPoint& c = rhull[i];
        const QPoint& d = rhull[rk >= 2 ? (i + 1) % rk : i];
        for (const auto& t : seg_hit_params(a, b, c, d)) ts.push_back(t);
    }
    if (ts.empty()) return true;
    Rat tmin = ts[0], tmax = ts[0];
    for (const auto& t : ts) {
        tmin = std::min(tmin, t);
        tmax = std::max(tmax, t);
    }
    // intersection meets the open segment iff the interval reaches past both ends
    return !(tmax > 0 && tmin < 1);
}

double eval_witness(const WPoly& p, const Witness& w) {
    return p.eval(w.z, w.u).real();
}

}  // namespace

SuiteResult selftest_appendix(uint64_t seed) {
    SuiteResult res;
    res.name = "appendix";
    RandomGen rng(seed);

    // sign witnesses for homogeneous circle polynomials: 200 instances in the
    // regime where a negative value is forced
    for (int it = 0; it < 200; ++it) {
        WPoly p(1);
        bool odd = (it % 4 == 3);
        if (odd) {
            int d = 2 * rng.uniform_int(1, 2) + 1;
            do {
                p = WPoly(1);
                for (int t = 0; t < 3; ++t) {
                    int j = rng.uniform_int(0, d);
                    RC c = rng.rc(2, 3);
                    WPoly half = WPoly::term(Monomial({j}, {d - j}, 0), c);
                    p += half + half.conjugate();
                }
                p = RC(Rat(1, 2)) * p;
            } while (p.is_zero());
        } else {
            int d = 2 * rng.uniform_int(1, 3);
            for (int t = 0; t < 3; ++t) {
                int j = rng.uniform_int(0, d);
                RC c = rng.rc(2, 3);
                WPoly half = WPoly::term(Monomial({j}, {d - j}, 0), c);
                p += half + half.conjugate();
            }
            p = RC(Rat(1, 2)) * p;
            Rat ps = fourier_middle(p);
            p += WPoly::term(Monomial({d / 2}, {d / 2}, 0), RC(-ps - 1));
        }
        TypesLemmaResult t = types_lemma(p);
        bool ok = t.outcome == TypesOutcome::Violated && t.witness &&
                  eval_witness(p, *t.witness) < 0;
        check(res, ok, "types witness #" + std::to_string(it));
    }

    // middle Fourier coefficient against the numeric circle average
    for (int it = 0; it < 20; ++it) {
        WPoly p(1);
        int d = 2 * rng.uniform_int(1, 3);
        for (int t = 0; t < 4; ++t) {
            int j = rng.uniform_int(0, d);
            RC c = rng.rc(3, 4);
            WPoly half = WPoly::term(Monomial({j}, {d - j}, 0), c);
            p += half + half.conjugate();
        }
        p = RC(Rat(1, 2)) * p;
        double diff = std::abs(to_double(fourier_middle(p)) - circle_average(p));
        check(res, diff < 1e-10, "fourier average #" + std::to_string(it));
    }

    // one-variable sign reduction against exact evaluation at a small point
    for (int it = 0; it < 100; ++it) {
        int len = rng.uniform_int(0, 12);
        std::vector<Rat> coeffs;
        for (int i = 0; i < len; ++i) coeffs.push_back(rng.rat(3, 4));
        Verdict v = reduce_1d(coeffs, 8);
        int lowest = -1;
        for (size_t i = 0; i < coeffs.size(); ++i)
            if (coeffs[i] != 0) {
                lowest = static_cast<int>(i);
                break;
            }
        bool ok;
        if (lowest < 0) {
            ok = v.status == Status::Holds;
        } else if (lowest > 8) {
            ok = v.status == Status::Undetermined;
        } else {
            Rat x(1, 1000), val(0);
            for (auto c = coeffs.rbegin(); c != coeffs.rend(); ++c) val = val * x + *c;
            ok = (val > 0) == (v.status == Status::Holds) &&
                 (val < 0) == (v.status == Status::Violated);
        }
        check(res, ok, "sign reduction #" + std::to_string(it));
    }

    // polytope disjointness against the clipping oracle
    for (int it = 0; it < 100; ++it) {
        std::vector<std::pair<int, int>> support;
        int ns = rng.uniform_int(1, 3);
        for (int i = 0; i < ns; ++i)
            support.push_back({rng.uniform_int(0, 4), rng.uniform_int(0, 4)});
        RemainderSpec r;
        int nr = rng.uniform_int(1, 3);
        for (int i = 0; i < nr; ++i)
            r.degrees.push_back({rng.uniform_int(0, 4), rng.uniform_int(0, 4)});
        bool got = polytope_disjoint(support, r);
        bool want = oracle_polytope_disjoint(support, r);
        std::ostringstream label;
        label << "polytope #" << it << " support";
        for (auto& [a, b] : support) label << " (" << a << "," << b << ")";
        label << " r";
        for (auto& [a, b] : r.degrees) label << " (" << a << "," << b << ")";
        check(res, got == want, label.str());
    }

    // nonnegativity soundness: Hermitian squares certify, sampled violations
    // evaluate negative
    for (int it = 0; it < 30; ++it) {
        int n = rng.uniform_int(1, 2);
        if (it % 2 == 0) {
            HoloPoly q(n);
            for (int t = 0; t < 3; ++t) {
                std::vector<int> a(n, 0);
                int tot = rng.uniform_int(0, 2);
                for (int s = 0; s < tot; ++s) ++a[rng.uniform_int(0, n - 1)];
                q.add_term(a, 0, rng.rc(2, 3));
            }
            std::vector<WPoly> zm;
            for (int j = 0; j < n; ++j) zm.push_back(WPoly::var_z(n, j));
            WPoly qz = q.to_wpoly(zm, WPoly::zero(n), 64);
            WPoly p = qz * qz.conjugate();
            Verdict v = nonneg_check_bihom(p, n, seed + it);
            check(res, v.status == Status::Holds,
                  "hermitian square certified #" + std::to_string(it));
        } else {
            WPoly p = rng.real_homogeneous(n, 4, 3);
            Verdict v = nonneg_check_bihom(p, n, seed + it);
            bool ok = true;
            if (v.status == Status::Violated)
                ok = v.witness && eval_witness(p, *v.witness) < 0;
            check(res, ok, "violation witness evaluates negative #" + std::to_string(it));
        }
    }

    return res;
}

SuiteResult selftest_normalform(uint64_t seed) {
    SuiteResult res;
    res.name = "normalform";
    RandomGen rng(seed);

    for (int it = 0; it < 8; ++it) {
        int n = rng.uniform_int(1, 2);
        HypersurfaceModel h = rng.model(n, 6, 2);
        try {
            auto [nf, change] = cm_normalize(h, 6);
            check(res, normal_space_check(nf.phi, 6).ok(),
                  "normalized output in normal space #" + std::to_string(it));
            auto [fz, fw] = change.map();
            check(res, regraph(h, fz, fw, 6) == nf,
                  "round trip through the recorded change #" + std::to_string(it));
            auto [nf2, change2] = cm_normalize(nf, 6);
            check(res, nf2 == nf && change2.is_identity(),
                  "idempotence #" + std::to_string(it));
            if (n == 1) {
                bool low_vanish = nf.phi_at(3).is_zero() && nf.phi_at(4).is_zero() &&
                                  nf.phi_at(5).is_zero();
                check(res, low_vanish, "low weights vanish for n=1 #" + std::to_string(it));
            }
        } catch (const std::exception& e) {
            check(res, false, std::string("normalization threw: ") + e.what());
        }
    }

    // Levi normalization of a generic positive definite quadratic part
    for (int it = 0; it < 5; ++it) {
        int n = rng.uniform_int(1, 2);
        RCMat a(n, std::vector<RC>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a[i][j] = rng.rc(2, 3);
        RCMat m = rc_mul(rc_adjoint(a), a);
        for (int i = 0; i < n; ++i) m[i][i] += RC(Rat(1));
        WPoly h(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                std::vector<int> kz(n, 0), kzb(n, 0);
                ++kz[i];
                ++kzb[j];
                h.add_term(Monomial(kz, kzb, 0), m[i][j]);
            }
        h += rng.real_homogeneous(n, 3, 2);
        try {
            LeviResult lr = levi_normalize(h, 6);
            validate_model(lr.model);
            check(res, lr.model.graph().weight_part(2) == WPoly::norm_sq(n),
                  "levi normalization yields the unit form #" + std::to_string(it));
        } catch (const std::exception& e) {
            check(res, false, std::string("levi normalization threw: ") + e.what());
        }
    }

    return res;
}

SuiteResult selftest_jets(uint64_t seed) {
    SuiteResult res;
    res.name = "jets";
    RandomGen rng(seed);

    // fractional-linear translations preserve the quadric to all weights
    for (int it = 0; it < 10; ++it) {
        int n = rng.uniform_int(1, 2);
        std::vector<RC> a = rng.small_vector(n, 2, 4);
        JetMap f = siegel_automorphism(a, 8);
        ContactReport rep = expand_basic(HypersurfaceModel::quadric(n, 8),
                                         HypersurfaceModel::quadric(n, 8), f, 8);
        check(res, rep.components.empty(), "translation flatness #" + std::to_string(it));
    }

    // first-order data is invariant under the admissible block changes
    for (int it = 0; it < 10; ++it) {
        int n = rng.uniform_int(1, 2);
        Rat delta = rng.nonzero_rat(2, 3);
        if (delta < 0) delta = -delta;
        RCMat u1 = rng.unitary(n), u2 = rng.unitary(n);
        auto make_block = [&](const RCMat& u) {
            RCMat l(n + 1, std::vector<RC>(n + 1));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) l[i][j] = u[i][j] * RC(delta);
            for (int i = 0; i < n; ++i) l[i][n] = rng.rc(2, 3);
            l[n][n] = RC(delta * delta);
            return l;
        };
        auto [v1, d1] = check_first_order(make_block(u1));
        auto [v2, d2] = check_first_order(make_block(u2));
        bool ok = v1.status == Status::Holds && v2.status == Status::Holds &&
                  first_order_charpoly(make_block(u1)) == first_order_charpoly(make_block(u2));
        check(res, ok, "block invariance #" + std::to_string(it));
    }

    // constructed 2-flat germs satisfy the second-order identities
    for (int it = 0; it < 4; ++it) {
        int n = rng.uniform_int(1, 2);
        HypersurfaceModel h = rng.model(n, 6, 2);
        auto [nf, change] = cm_normalize(h, 6);
        HypersurfaceModel hp = nf;
        hp.set_phi(6, nf.phi_at(6) + rng.real_homogeneous(n, 6, 2));
        auto [hp2, change2] = cm_normalize(hp, 6);
        hp2.set_phi(3, nf.phi_at(3));
        hp2.set_phi(4, nf.phi_at(4));
        hp2.set_phi(5, nf.phi_at(5));
        try {
            JetMap f = construct_2flat_germ(nf, hp2, seed + it);
            Verdict lemma = check_lemma_2flat(f, nf, hp2, seed + it);
            Flat2Report rep = check_flat2_conditions(f, nf, hp2);
            check(res, lemma.ok(), "second-order identities #" + std::to_string(it));
            check(res, rep.agree && rep.flat_after_normalization,
                  "flatness conditions agree #" + std::to_string(it));
        } catch (const std::exception& e) {
            check(res, false, std::string("2-flat construction threw: ") + e.what());
        }
    }

    // a single inadmissible low-order coefficient always shows up as a sign
    // violation of the leading contact component
    for (int it = 0; it < 8; ++it) {
        int n = rng.uniform_int(1, 2);
        JetMap f = JetMap::identity(n, 6);
        RC c = rng.rc(2, 3);
        if (c == RC()) c = RC(Rat(1, 2));
        std::vector<int> e1(n, 0);
        e1[0] = 1;
        std::vector<int> e2(n, 0);
        e2[0] = 2;
        std::vector<int> e3(n, 0);
        e3[0] = 3;
        switch (it % 4) {
            case 0: f.fw.add_term(e2, 0, c); break;
            case 1: f.fw.add_term(e1, 1, c); break;
            case 2: f.fw.add_term(e3, 0, c); break;
            case 3: f.fz[0].add_term(e2, 0, c); break;
        }
        ContactReport rep = expand_basic(HypersurfaceModel::quadric(n, 6),
                                         HypersurfaceModel::quadric(n, 6), f, 6);
        ContactClassification cls = classify_contact(rep, seed + it);
        check(res, cls.sign.status == Status::Violated,
              "inadmissible coefficient detected #" + std::to_string(it));
    }

    return res;
}

std::vector<SuiteResult> run_selftests(const std::string& suite, uint64_t seed) {
    std::vector<SuiteResult> out;
    if (suite == "appendix" || suite == "all") out.push_back(selftest_appendix(seed));
    if (suite == "normalform" || suite == "all") out.push_back(selftest_normalform(seed));
    if (suite == "jets" || suite == "all") out.push_back(selftest_jets(seed));
    if (out.empty()) throw std::invalid_argument("unknown selftest suite: " + suite);
    return out;
}

}  // namespace cmjet
