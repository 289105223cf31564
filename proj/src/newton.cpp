#include "cmjet/newton.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "cmjet/exactla.hpp"
#include "cmjet/sampling.hpp"

namespace cmjet {

namespace {

Rat cross(const QPoint& o, const QPoint& a, const QPoint& b) {
    return (a.first - o.first) * (b.second - o.second) -
           (a.second - o.second) * (b.first - o.first);
}

Rat eval_poly(const std::vector<Rat>& coeffs, const Rat& x) {
    Rat v(0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * x + *it;
    return v;
}

// Exact intersection points of closed segments [a,b] and [c,d], including
// overlap endpoints in the collinear case.
std::vector<QPoint> segment_intersections(const QPoint& a, const QPoint& b, const QPoint& c,
                                          const QPoint& d) {
    std::vector<QPoint> out;
    Rat d1x = b.first - a.first, d1y = b.second - a.second;
    Rat d2x = d.first - c.first, d2y = d.second - c.second;
    auto on_segment = [](const QPoint& p, const QPoint& s0, const QPoint& s1) {
        if (cross(s0, s1, p) != 0) return false;
        Rat dot = (p.first - s0.first) * (s1.first - s0.first) +
                  (p.second - s0.second) * (s1.second - s0.second);
        Rat len2 = (s1.first - s0.first) * (s1.first - s0.first) +
                   (s1.second - s0.second) * (s1.second - s0.second);
        return dot >= 0 && dot <= len2;
    };
    if (d1x == 0 && d1y == 0) {
        if ((d2x == 0 && d2y == 0) ? a == c : on_segment(a, c, d)) out.push_back(a);
        return out;
    }
    if (d2x == 0 && d2y == 0) {
        if (on_segment(c, a, b)) out.push_back(c);
        return out;
    }
    Rat denom = d1x * d2y - d1y * d2x;
    if (denom != 0) {
        Rat t = ((c.first - a.first) * d2y - (c.second - a.second) * d2x) / denom;
        Rat s = ((c.first - a.first) * d1y - (c.second - a.second) * d1x) / denom;
        if (t >= 0 && t <= 1 && s >= 0 && s <= 1)
            out.push_back({a.first + t * d1x, a.second + t * d1y});
        return out;
    }
    // parallel: only collinear overlap matters
    if (cross(a, b, c) != 0) return out;
    auto param = [&](const QPoint& p) -> Rat {
        if (d1x != 0 || d1y != 0)
            return (p.first - a.first) * d1x + (p.second - a.second) * d1y;
        return Rat(0);
    };
    Rat lo(0), hi = param(b);
    if (hi < lo) std::swap(lo, hi);
    Rat pc = param(c), pd = param(d);
    if (pc > pd) std::swap(pc, pd);
    Rat s0 = std::max(lo, pc), s1 = std::min(hi, pd);
    if (s0 > s1) return out;
    Rat len2 = d1x * d1x + d1y * d1y;
    auto point_at = [&](const Rat& t) -> QPoint {
        if (len2 == 0) return a;
        return {a.first + d1x * t / len2, a.second + d1y * t / len2};
    };
    out.push_back(point_at(s0));
    if (s1 != s0) out.push_back(point_at(s1));
    return out;
}

std::vector<std::pair<QPoint, QPoint>> hull_edges(const std::vector<QPoint>& hull) {
    std::vector<std::pair<QPoint, QPoint>> edges;
    size_t k = hull.size();
    if (k == 1) {
        edges.push_back({hull[0], hull[0]});
    } else if (k == 2) {
        edges.push_back({hull[0], hull[1]});
    } else {
        for (size_t i = 0; i < k; ++i) edges.push_back({hull[i], hull[(i + 1) % k]});
    }
    return edges;
}

double eval_real(const WPoly& p, const std::vector<std::complex<double>>& z, double t) {
    return p.eval(z, t).real();
}

// Sufficient SOS certificate: the canonical Hermitian Gram matrix on monomials
// (z^a, t^j) reconstructing p is PSD over the rationals.
bool sos_certified(const WPoly& p) {
    std::set<std::vector<int>> zexps;
    int tmax = 0;
    for (const auto& [m, c] : p.terms()) {
        zexps.insert(m.kz);
        zexps.insert(m.kzb);
        tmax = std::max(tmax, m.ku);
    }
    int jmax = (tmax + 1) / 2;
    std::vector<std::pair<std::vector<int>, int>> basis;
    for (const auto& a : zexps)
        for (int j = 0; j <= jmax; ++j) basis.push_back({a, j});
    std::map<std::pair<std::vector<int>, int>, int> pos;
    for (size_t i = 0; i < basis.size(); ++i) pos[basis[i]] = static_cast<int>(i);

    auto splits = [&](int l) -> int {
        int lo = std::max(0, l - jmax), hi = std::min(l, jmax);
        return hi >= lo ? hi - lo + 1 : 0;
    };

    size_t nb = basis.size();
    RCMat gram(nb, std::vector<RC>(nb));
    for (const auto& [m, c] : p.terms()) {
        int ns = splits(m.ku);
        if (ns == 0) return false;
        RC share = c * RC(Rat(1, ns));
        for (int j = std::max(0, m.ku - jmax); j <= std::min(m.ku, jmax); ++j) {
            int row = pos.at({m.kz, j});
            int col = pos.at({m.kzb, m.ku - j});
            gram[row][col] += share;
        }
    }
    return rc_hermitian_psd(std::move(gram));
}

// Certified minimization of a real homogeneous polynomial in one complex
// variable on the unit circle: grid values plus an exact derivative bound.
Verdict circle_decide(const WPoly& p, double tol) {
    double lip = 0.0;
    for (const auto& [m, c] : p.terms()) {
        double mag = std::hypot(to_double(c.re), to_double(c.im));
        lip += mag * std::abs(m.deg_z() - m.deg_zb());
    }
    int grid = 1 << 12;
    for (int round = 0; round < 4; ++round, grid <<= 2) {
        double h = 2.0 * M_PI / grid;
        double best = 1e300, best_theta = 0.0;
        for (int i = 0; i < grid; ++i) {
            double theta = i * h;
            double v = eval_real(p, {std::polar(1.0, theta)}, 0.0);
            if (v < best) {
                best = v;
                best_theta = theta;
            }
        }
        if (best < -tol) {
            Witness w;
            w.z = {std::polar(1.0, best_theta)};
            w.value = best;
            w.note = "circle minimization";
            return Verdict::violated("negative value on the unit circle", std::move(w));
        }
        if (best - lip * h / 2.0 > tol)
            return Verdict::holds("certified circle minimum with derivative bound");
    }
    return Verdict::undetermined("circle minimum too close to zero to certify");
}

}  // namespace

Verdict reduce_1d(const std::vector<Rat>& coeffs, int degree_bound) {
    int lowest = -1;
    for (size_t i = 0; i < coeffs.size(); ++i)
        if (coeffs[i] != 0) {
            lowest = static_cast<int>(i);
            break;
        }
    if (lowest < 0) return Verdict::holds("zero polynomial");
    if (lowest > degree_bound)
        return Verdict::undetermined("lowest term lies beyond the remainder degree bound");
    if (coeffs[lowest] > 0) return Verdict::holds("lowest nonzero coefficient is positive");
    // find a small positive point where the value is actually negative
    Rat x(1, 2);
    for (int k = 0; k < 512; ++k, x /= 2) {
        if (eval_poly(coeffs, x) < 0) {
            Witness w;
            w.u = to_double(x);
            w.value = to_double(eval_poly(coeffs, x));
            w.note = "evaluation point on the positive axis";
            return Verdict::violated("lowest nonzero coefficient is negative", std::move(w));
        }
    }
    return Verdict::violated("lowest nonzero coefficient is negative");
}

std::vector<QPoint> convex_hull(std::vector<QPoint> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    size_t n = pts.size();
    if (n <= 2) return pts;
    std::vector<QPoint> hull(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    size_t lower = k + 1;
    for (size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    if (hull.size() < 2) return {pts.front(), pts.back()};  // all collinear, keep extremes
    return hull;
}

bool in_closed_hull(const QPoint& p, const std::vector<QPoint>& hull) {
    size_t k = hull.size();
    if (k == 0) return false;
    if (k == 1) return p == hull[0];
    if (k == 2) {
        if (cross(hull[0], hull[1], p) != 0) return false;
        Rat dot = (p.first - hull[0].first) * (hull[1].first - hull[0].first) +
                  (p.second - hull[0].second) * (hull[1].second - hull[0].second);
        Rat len2 = (hull[1].first - hull[0].first) * (hull[1].first - hull[0].first) +
                   (hull[1].second - hull[0].second) * (hull[1].second - hull[0].second);
        return dot >= 0 && dot <= len2;
    }
    for (size_t i = 0; i < k; ++i)
        if (cross(hull[i], hull[(i + 1) % k], p) < 0) return false;
    return true;
}

bool in_relative_interior(const QPoint& p, const std::vector<QPoint>& hull) {
    size_t k = hull.size();
    if (k == 0) return false;
    if (k == 1) return p == hull[0];
    if (k == 2) {
        if (cross(hull[0], hull[1], p) != 0) return false;
        Rat dot = (p.first - hull[0].first) * (hull[1].first - hull[0].first) +
                  (p.second - hull[0].second) * (hull[1].second - hull[0].second);
        Rat len2 = (hull[1].first - hull[0].first) * (hull[1].first - hull[0].first) +
                   (hull[1].second - hull[0].second) * (hull[1].second - hull[0].second);
        return dot > 0 && dot < len2;
    }
    for (size_t i = 0; i < k; ++i)
        if (cross(hull[i], hull[(i + 1) % k], p) <= 0) return false;
    return true;
}

ExtendedPolytope extended_polytope(const std::vector<std::pair<int, int>>& generators) {
    ExtendedPolytope ep;
    ep.generators = generators;
    if (generators.empty()) return ep;
    int l1 = 0, l2 = 0;
    std::vector<QPoint> pts = {{Rat(0), Rat(0)}};
    for (const auto& [a, b] : generators) {
        pts.push_back({Rat(a), Rat(b)});
        l1 = std::max(l1, a);
        l2 = std::max(l2, b);
    }
    pts.push_back({Rat(l1), Rat(0)});
    pts.push_back({Rat(0), Rat(l2)});
    ep.hull = convex_hull(std::move(pts));
    return ep;
}

bool polytope_disjoint(const std::vector<std::pair<int, int>>& support, const RemainderSpec& r) {
    if (support.empty() || r.degrees.empty()) return true;
    ExtendedPolytope ep = extended_polytope(support);
    std::vector<QPoint> rpts;
    for (const auto& [a, b] : r.degrees) rpts.push_back({Rat(a), Rat(b)});
    std::vector<QPoint> rhull = convex_hull(std::move(rpts));

    // candidate points spanning conv(R) intersected with the polytope
    std::vector<QPoint> cand;
    for (const auto& v : rhull)
        if (in_closed_hull(v, ep.hull)) cand.push_back(v);
    for (const auto& v : ep.hull)
        if (in_closed_hull(v, rhull)) cand.push_back(v);
    for (const auto& [a, b] : hull_edges(ep.hull))
        for (const auto& [c, d] : hull_edges(rhull))
            for (const auto& q : segment_intersections(a, b, c, d)) cand.push_back(q);
    if (cand.empty()) return true;

    QPoint centroid{Rat(0), Rat(0)};
    for (const auto& q : cand) {
        centroid.first += q.first;
        centroid.second += q.second;
    }
    Rat inv(1, static_cast<long>(cand.size()));
    centroid.first *= inv;
    centroid.second *= inv;
    return !in_relative_interior(centroid, ep.hull);
}

bool polytope_disjoint(const std::vector<std::pair<std::pair<int, int>, Rat>>& poly,
                       const RemainderSpec& r) {
    std::vector<std::pair<int, int>> support;
    for (const auto& [e, c] : poly)
        if (c != 0) support.push_back(e);
    return polytope_disjoint(support, r);
}

CancelResult cancel_weighted(const WPoly& p, int nu1, int nu2, int d) {
    for (const auto& [m, c] : p.terms()) {
        int w = nu1 * (m.deg_z() + m.deg_zb()) + nu2 * m.ku;
        if (w != d)
            throw std::invalid_argument("cancel_weighted: polynomial is not weighted homogeneous");
    }
    CancelResult res;
    res.minimal_component = WPoly::zero(p.dim());
    if (p.is_zero()) {
        res.verdict = Verdict::holds("zero polynomial; nothing to cancel");
        return res;
    }
    int min_block = -1;
    for (const auto& [m, c] : p.terms()) {
        int blk = m.deg_z() + m.deg_zb();
        if (min_block < 0 || blk < min_block) min_block = blk;
    }
    for (const auto& [m, c] : p.terms())
        if (m.deg_z() + m.deg_zb() == min_block) res.minimal_component.add_term(m, c);
    res.verdict = Verdict::holds(
        "nonnegativity passes from p + o(rho^d) to the weighted homogeneous part; follow-up "
        "claim reduces to the minimal block-degree component");
    return res;
}

Rat fourier_middle(const WPoly& p) {
    if (p.dim() != 1) throw std::invalid_argument("fourier_middle: one complex variable only");
    int deg = -1;
    for (const auto& [m, c] : p.terms()) {
        if (m.ku != 0) throw std::invalid_argument("fourier_middle: no u variable allowed");
        int d = m.deg_z() + m.deg_zb();
        if (deg < 0) deg = d;
        if (d != deg) throw std::invalid_argument("fourier_middle: polynomial not homogeneous");
    }
    if (deg < 0) return Rat(0);
    if (deg % 2 != 0) throw std::invalid_argument("fourier_middle: odd degree");
    int s = deg / 2;
    RC c = p.coeff(Monomial({s}, {s}, 0));
    if (c.im != 0) throw std::invalid_argument("fourier_middle: polynomial not real-valued");
    return c.re;
}

TypesLemmaResult types_lemma(const WPoly& p) {
    TypesLemmaResult res;
    if (p.dim() != 1) throw std::invalid_argument("types_lemma: one complex variable only");
    if (!p.is_real()) throw std::invalid_argument("types_lemma: polynomial must be real-valued");
    if (p.is_zero()) {
        res.outcome = TypesOutcome::Holds;
        res.detail = "identically zero";
        return res;
    }
    int deg = -1;
    for (const auto& [m, c] : p.terms()) {
        if (m.ku != 0) throw std::invalid_argument("types_lemma: no u variable allowed");
        int d = m.deg_z() + m.deg_zb();
        if (deg < 0) deg = d;
        if (d != deg) throw std::invalid_argument("types_lemma: polynomial not homogeneous");
    }
    bool odd = (deg % 2 != 0);
    if (!odd) {
        Rat ps = fourier_middle(p);
        if (ps > 0) {
            res.outcome = TypesOutcome::NotApplicable;
            res.detail = "middle Fourier coefficient is positive";
            return res;
        }
    }
    // nonzero with vanishing (or negative) circle average, or odd degree:
    // a negative value exists; locate it on the circle
    for (int grid = 1 << 12; grid <= (1 << 18); grid <<= 2) {
        double h = 2.0 * M_PI / grid;
        double best = 1e300, best_theta = 0.0;
        for (int i = 0; i < grid; ++i) {
            double theta = i * h;
            double v = eval_real(p, {std::polar(1.0, theta)}, 0.0);
            if (v < best) {
                best = v;
                best_theta = theta;
            }
        }
        // golden-section refinement around the grid minimum
        double lo = best_theta - h, hi = best_theta + h;
        for (int it = 0; it < 80; ++it) {
            double m1 = lo + (hi - lo) * 0.381966, m2 = hi - (hi - lo) * 0.381966;
            if (eval_real(p, {std::polar(1.0, m1)}, 0.0) <
                eval_real(p, {std::polar(1.0, m2)}, 0.0))
                hi = m2;
            else
                lo = m1;
        }
        double theta = (lo + hi) / 2.0;
        double v = eval_real(p, {std::polar(1.0, theta)}, 0.0);
        if (v < best) {
            best = v;
            best_theta = theta;
        }
        if (best < 0) {
            res.outcome = TypesOutcome::Violated;
            res.detail = odd ? "odd degree forces sign changes" : "vanishing circle average";
            Witness w;
            w.z = {std::polar(1.0, best_theta)};
            w.value = best;
            w.note = "angle witness on the unit circle";
            res.witness = w;
            return res;
        }
    }
    res.outcome = TypesOutcome::Holds;
    res.detail = "no negative value found; polynomial appears nonnegative";
    return res;
}

Verdict nonneg_check_bihom(const WPoly& p, int n, uint64_t seed, double tol) {
    if (p.is_zero()) return Verdict::holds("zero polynomial");
    if (!p.is_real()) throw std::invalid_argument("nonneg_check_bihom: polynomial must be real");

    if (sos_certified(p)) return Verdict::holds("sum-of-squares certificate (exact Gram PSD)");

    bool has_t = false;
    int deg = -1;
    bool homogeneous = true;
    for (const auto& [m, c] : p.terms()) {
        if (m.ku != 0) has_t = true;
        int d = m.deg_z() + m.deg_zb();
        if (deg < 0) deg = d;
        if (d != deg) homogeneous = false;
    }

    if (n == 1 && !has_t && homogeneous && deg % 2 == 0) {
        Verdict v = circle_decide(p, tol);
        if (v.status != Status::Undetermined) return v;
    }

    // quasi-random sampling for a violation
    LowDiscrepancy gen(2 * n + 2, seed);
    double best = 1e300;
    std::vector<std::complex<double>> best_z;
    double best_t = 0.0;
    for (int it = 0; it < 10000; ++it) {
        std::vector<double> g = gen.next_gaussian();
        std::vector<double> u = gen.next_unit();
        std::vector<std::complex<double>> z(n);
        double radius = 0.05 + 1.95 * u[0];
        double norm = 0.0;
        for (int j = 0; j < 2 * n; ++j) norm += g[j] * g[j];
        norm = std::sqrt(std::max(norm, 1e-12));
        for (int j = 0; j < n; ++j)
            z[j] = std::complex<double>(g[2 * j], g[2 * j + 1]) * (radius / norm);
        double t = has_t ? std::tan(M_PI * (u[1] - 0.5)) : 0.0;
        if (!std::isfinite(t)) continue;
        double v = eval_real(p, z, t);
        if (v < best) {
            best = v;
            best_z = z;
            best_t = t;
        }
    }
    if (!best_z.empty()) {
        // local refinement around the sampled minimum
        double step = 0.25;
        LowDiscrepancy local(2 * n + 1, seed + 17);
        for (int it = 0; it < 400; ++it) {
            std::vector<double> g = local.next_gaussian();
            std::vector<std::complex<double>> z = best_z;
            for (int j = 0; j < n; ++j)
                z[j] += step * std::complex<double>(g[2 * j], g[2 * j + 1]);
            double t = best_t + (has_t ? step * g[2 * n] : 0.0);
            double v = eval_real(p, z, t);
            if (v < best) {
                best = v;
                best_z = z;
                best_t = t;
            } else {
                step *= 0.985;
            }
        }
    }
    if (best < -tol) {
        Witness w;
        w.z = best_z;
        w.u = best_t;
        w.value = best;
        w.note = "sampled minimum after local refinement";
        return Verdict::violated("negative value found by sampling", std::move(w));
    }
    return Verdict::undetermined("no certificate and no sampled violation");
}

}  // namespace cmjet
