#include "cmjet/jets.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cmjet/newton.hpp"
#include "cmjet/sampling.hpp"
#include "cmjet/trace.hpp"

namespace cmjet {

namespace {

WPoly holo_linear_to_wpoly(const HoloPoly& p, int n) {
    // degree-1-in-z coefficient of w^k as a z-linear WPoly (w power dropped)
    WPoly out(n);
    for (const auto& [m, c] : p.terms()) out.add_term(Monomial(m.kz, std::vector<int>(n, 0), 0), c);
    return out;
}

// <z, v(z)> for a vector of z-linear forms v_j: sum z_j conj(v_j(z)).
WPoly pairing_with_z(const std::vector<HoloPoly>& v, int n) {
    WPoly ip(n);
    for (int j = 0; j < n; ++j)
        ip += WPoly::var_z(n, j) * holo_linear_to_wpoly(v[j], n).conjugate();
    return ip;
}

WPoly set_u_one(const WPoly& p) {
    WPoly out(p.dim());
    for (const auto& [m, c] : p.terms()) out.add_term(Monomial(m.kz, m.kzb, 0), c);
    return out;
}

Rat coeff_l1(const WPoly& p) {
    Rat s(0);
    for (const auto& [m, c] : p.terms()) s += abs(c.re) + abs(c.im);
    return s;
}

double eval_real(const WPoly& p, const std::vector<std::complex<double>>& z, double u) {
    return p.eval(z, u).real();
}

// Positivity of the summed expansion tail on a shrinking weighted sphere:
// points (rho*z, rho^2*u) with ||z||^2 + u^2 = 1, margin scaled by rho^top.
void verify_scaled_positivity(const WPoly& total, int n, uint64_t seed, int top_weight,
                              const char* what) {
    if (total.is_zero()) throw std::runtime_error(std::string(what) + ": no strict margin");
    std::vector<SamplePoint> dirs = sphere_points(n, 10000, seed, true);
    double rho = 0.25;
    for (int halving = 0; halving < 40; ++halving, rho /= 2) {
        double scale = std::pow(rho, top_weight);
        double worst = 1e300;
        bool ok = true;
        for (const auto& d : dirs) {
            std::vector<std::complex<double>> z(d.z);
            for (auto& v : z) v *= rho;
            double val = eval_real(total, z, rho * rho * d.s);
            worst = std::min(worst, val);
            if (val <= 1e-9 * scale) {
                ok = false;
                break;
            }
        }
        (void)worst;
        if (ok) return;
    }
    throw std::runtime_error(std::string(what) + ": no strict margin");
}

void require_normalized(const HypersurfaceModel& h, const char* what) {
    validate_model(h);
    Verdict v = normal_space_check(h.phi, h.K);
    if (!v.ok())
        throw std::invalid_argument(std::string(what) + ": model is not normalized (" + v.detail +
                                    ")");
}

}  // namespace

JetMap JetMap::identity(int n, int K) {
    JetMap j;
    j.n = n;
    j.K = K;
    auto m = identity_map(n);
    j.fz = std::move(m.first);
    j.fw = std::move(m.second);
    return j;
}

JetMap JetMap::from_map(std::pair<std::vector<HoloPoly>, HoloPoly> m, int K) {
    JetMap j;
    j.n = static_cast<int>(m.first.size());
    j.K = K;
    j.fz = std::move(m.first);
    j.fw = std::move(m.second);
    for (auto& c : j.fz) c = c.truncate(K);
    j.fw = j.fw.truncate(K);
    return j;
}

std::vector<HoloPoly> JetMap::z_part(int l, int k) const {
    std::vector<HoloPoly> out;
    for (const auto& c : fz) out.push_back(c.component(l, k));
    return out;
}

HoloPoly JetMap::w_part(int l, int k) const { return fw.component(l, k); }

RC JetMap::fw_w_coeff(int k) const { return fw.coeff(std::vector<int>(n, 0), k); }

RCMat JetMap::linear_block() const {
    RCMat l(n + 1, std::vector<RC>(n + 1));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            std::vector<int> kz(n, 0);
            kz[j] = 1;
            l[i][j] = fz[i].coeff(kz, 0);
        }
        l[i][n] = fz[i].coeff(std::vector<int>(n, 0), 1);
    }
    for (int j = 0; j < n; ++j) {
        std::vector<int> kz(n, 0);
        kz[j] = 1;
        l[n][j] = fw.coeff(kz, 0);
    }
    l[n][n] = fw_w_coeff(1);
    return l;
}

bool JetMap::has_identity_linear_part() const {
    RCMat l = linear_block();
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            if (l[i][j] != (i == j ? RC(1) : RC())) return false;
    return true;
}

std::pair<Verdict, DifferentialData> check_first_order(const RCMat& l) {
    DifferentialData d;
    int rows = static_cast<int>(l.size());
    if (rows < 2) return {Verdict::violated("matrix must be at least 2x2"), d};
    for (const auto& row : l)
        if (static_cast<int>(row.size()) != rows)
            return {Verdict::violated("matrix is not square"), d};
    int n = rows - 1;
    for (int j = 0; j < n; ++j)
        if (!l[n][j].is_zero())
            return {Verdict::violated("bottom-left block is nonzero: the differential does not "
                                      "preserve the complex tangent space"),
                    d};
    RC lam = l[n][n];
    if (!lam.is_real() || lam.re <= 0)
        return {Verdict::violated("normal stretching factor is not real positive"), d};
    d.lambda = lam.re;
    d.C.assign(n, std::vector<RC>(n));
    d.A.assign(n, RC());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) d.C[i][j] = l[i][j];
        d.A[i] = l[i][n];
    }

    // numeric singular values for reporting
    Eigen::MatrixXcd cm(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) cm(i, j) = d.C[i][j].to_complex();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(cm);
    double sqrt_lam = std::sqrt(to_double(d.lambda));
    for (int i = 0; i < n; ++i) {
        d.mu.push_back(svd.singularValues()(i));
        d.alpha.push_back(svd.singularValues()(i) / sqrt_lam);
    }

    // exact bound: lambda*I - C^H C must be PSD
    RCMat g = rc_mul(rc_adjoint(d.C), d.C);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            RC target = (i == j) ? RC(d.lambda) : RC();
            g[i][j] = target - g[i][j];
        }
    if (!rc_hermitian_psd(std::move(g)))
        return {Verdict::violated("a singular value exceeds sqrt(lambda) (exact PSD test)"), d};
    return {Verdict::holds("block shape and singular-value bound verified (exact PSD test)"), d};
}

std::vector<RC> first_order_charpoly(const RCMat& l) {
    auto [v, d] = check_first_order(l);
    if (d.C.empty()) throw std::invalid_argument("first_order_charpoly: bad block shape");
    RCMat m = rc_mul(rc_adjoint(d.C), d.C);
    RC inv_lam = RC(Rat(1) / d.lambda);
    for (auto& row : m)
        for (auto& e : row) e *= inv_lam;
    return rc_charpoly(m);
}

JetMap siegel_automorphism(const std::vector<RC>& a, int K) {
    return JetMap::from_map(siegel_map(a, K), K);
}

ContactReport expand_basic(const HypersurfaceModel& h, const HypersurfaceModel& hp,
                           const JetMap& f, int K) {
    if (h.n != hp.n || h.n != f.n)
        throw std::invalid_argument("expand_basic: dimension mismatch");
    int n = h.n;
    WPoly w0 = WPoly::var_u(n) + RC::i_unit() * h.graph().truncate(K);
    std::vector<WPoly> fzs;
    for (int j = 0; j < n; ++j) fzs.push_back(f.fz[j].to_wpoly(w0, K));
    WPoly fws = f.fw.to_wpoly(w0, K);
    WPoly e = fws.imag_part();
    for (const WPoly& fzj : fzs) e -= WPoly::mul_trunc(fzj, fzj.conjugate(), K);
    WPoly re_fw = fws.real_part();
    for (const auto& [mu, p] : hp.phi) e -= p.substitute(fzs, re_fw, K);
    e = e.truncate(K);
    if (!e.is_real()) throw std::runtime_error("expand_basic: non-real expansion");

    ContactReport rep;
    rep.n = n;
    rep.K = K;
    for (const auto& [mu, part] : e.weight_decompose()) rep.components.push_back({mu, part});
    return rep;
}

ContactClassification classify_contact(const ContactReport& report, uint64_t seed, double tol) {
    ContactClassification c;
    if (report.components.empty()) {
        c.tangency_order = report.K;
        c.first_weight = -1;
        c.sign = Verdict::holds("tangent through weight " + std::to_string(report.K));
        return c;
    }
    int mu = report.components.front().first;
    const WPoly& e = report.components.front().second;
    c.first_weight = mu;
    c.tangency_order = mu - 1;

    // the z = 0 line is lost under u := t ||z||^2 and is checked separately
    if (mu % 2 == 0) {
        RC cu = e.coeff(Monomial(std::vector<int>(report.n, 0), std::vector<int>(report.n, 0),
                                 mu / 2));
        if (!cu.is_zero()) {
            int half = mu / 2;
            bool bad = (half % 2 == 1) || cu.re < 0;
            if (bad) {
                Witness w;
                w.z.assign(report.n, 0.0);
                w.u = (half % 2 == 1 && cu.re > 0) ? -1.0 : 1.0;
                w.value = to_double(cu.re) * std::pow(w.u, half);
                w.note = "pure-u direction";
                c.sign = Verdict::violated("negative along the u-axis", std::move(w));
                return c;
            }
        }
    }
    c.sign = nonneg_check_bihom(e.restrict_diagonal(), report.n, seed, tol);
    if (c.sign.witness) c.sign.witness->note += " (u slot holds t, u = t*||z||^2)";
    return c;
}

SecondOrderResult check_second_order(const JetMap& f, const WPoly& phi4, const WPoly& phi4p,
                                     uint64_t seed) {
    if (!f.has_identity_linear_part())
        throw std::invalid_argument("check_second_order: jet must have identity linear part");
    int n = f.n;
    RC beta = f.fw_w_coeff(2);
    WPoly ip = pairing_with_z(f.z_part(1, 1), n);
    WPoly re_ip = ip.real_part(), im_ip = ip.imag_part();
    WPoly nsq = WPoly::norm_sq(n);

    SecondOrderResult res;
    if (beta.im < 0) {
        res.verdict = Verdict::violated("Im F^w_{0,2}(1) is negative");
        return res;
    }
    WPoly ord2 = phi4 - phi4p - RC(2) * (nsq * im_ip);
    WPoly lhs_root = re_ip - RC(beta.re) * nsq;
    WPoly diff = RC(beta.im) * (ord2 - RC(beta.im) * (nsq * nsq)) - lhs_root * lhs_root;

    Verdict v_ord = nonneg_check_bihom(diff, n, seed);
    Verdict v_ord2 = nonneg_check_bihom(ord2, n, seed + 1);
    if (v_ord.status == Status::Violated) {
        res.verdict = v_ord;
        res.verdict.detail = "discriminant inequality fails: " + res.verdict.detail;
        return res;
    }
    if (v_ord2.status == Status::Violated) {
        res.verdict = v_ord2;
        res.verdict.detail = "weight-4 nonnegativity fails: " + res.verdict.detail;
        return res;
    }
    if (v_ord.ok() && v_ord2.ok())
        res.verdict = Verdict::holds("Im F^w_{0,2}(1) >= 0, discriminant and weight-4 "
                                     "inequalities verified");
    else
        res.verdict = Verdict::undetermined("inequalities not certified: " + v_ord.detail + " / " +
                                            v_ord2.detail);

    if (res.verdict.ok() && beta.im > 0) {
        double min_diff = 1e300, min_ord2 = 1e300;
        for (const auto& p : sphere_points(n, 2000, seed, false)) {
            min_diff = std::min(min_diff, eval_real(diff, p.z, 0.0));
            min_ord2 = std::min(min_ord2, eval_real(ord2, p.z, 0.0));
        }
        res.strict = min_diff > 1e-9 && min_ord2 > 1e-9;
    }
    return res;
}

Verdict check_lemma_2flat(const JetMap& f, const HypersurfaceModel& h,
                          const HypersurfaceModel& hp, uint64_t seed, double tol) {
    if (!f.has_identity_linear_part())
        throw std::invalid_argument("check_lemma_2flat: jet must have identity linear part");
    int n = f.n;
    WPoly ip = pairing_with_z(f.z_part(1, 1), n);
    if (!ip.imag_part().is_zero())
        throw std::invalid_argument("check_lemma_2flat: Im <z, F^z_{1,1}(z,1)> must vanish");

    RC beta = f.fw_w_coeff(2), gamma = f.fw_w_coeff(3);
    WPoly nsq = WPoly::norm_sq(n);
    if (beta.im != 0) return Verdict::violated("Im F^w_{0,2}(1) is nonzero");
    if (gamma.im != 0) return Verdict::violated("Im F^w_{0,3}(1) is nonzero");
    if (!(RC(beta.re) * nsq == ip.real_part()))
        return Verdict::violated("||z||^2 Re F^w_{0,2}(1) differs from Re <z, F^z_{1,1}(z,1)>");
    for (const auto& comp : f.z_part(4, 0))
        if (!comp.is_zero()) return Verdict::violated("F^z_{4,0} is nonzero");
    if (!f.w_part(5, 0).is_zero()) return Verdict::violated("F^w_{5,0} is nonzero");
    if (!f.w_part(3, 1).is_zero()) return Verdict::violated("F^w_{3,1} is nonzero");
    if (!(h.phi_at(4) == hp.phi_at(4))) return Verdict::violated("phi_4 differs between sides");
    if (!(h.phi_at(5) == hp.phi_at(5))) return Verdict::violated("phi_5 differs between sides");

    WPoly ip2 = pairing_with_z(f.z_part(1, 2), n);
    std::vector<WPoly> f11;
    for (const auto& comp : f.z_part(1, 1)) f11.push_back(holo_linear_to_wpoly(comp, n));
    WPoly f11_norm = hermitian_pair(f11, f11);
    WPoly p221 = set_u_one(h.phi_at(6).bidegree_part(2, 2, 1));
    WPoly pp221 = set_u_one(hp.phi_at(6).bidegree_part(2, 2, 1));
    WPoly p330 = h.phi_at(6).bidegree_part(3, 3, 0);
    WPoly pp330 = hp.phi_at(6).bidegree_part(3, 3, 0);
    WPoly nsq2 = nsq * nsq, nsq3 = nsq2 * nsq;

    WPoly a = RC(-4) * (nsq2 * ip2.imag_part()) + nsq * (p221 - pp221);
    WPoly b = RC(3 * gamma.re) * nsq3 - RC(2) * (nsq2 * ip2.real_part()) - nsq2 * f11_norm;
    WPoly cpoly = RC(-gamma.re) * nsq3 + RC(2) * (nsq2 * ip2.real_part()) - nsq2 * f11_norm +
                  p330 - pp330;

    for (const auto& p : sphere_points(n, 10000, seed, false)) {
        double bv = eval_real(b, p.z, 0.0);
        double cv = eval_real(cpoly, p.z, 0.0);
        double av = eval_real(a, p.z, 0.0);
        double worst = std::min({bv, cv, bv * cv - av * av});
        if (worst < -tol) {
            Witness w;
            w.z = p.z;
            w.value = worst;
            w.note = "min of (B, C, BC - A^2) at the sample point";
            return Verdict::violated("second-order inequality system fails on the sphere",
                                    std::move(w));
        }
    }
    return Verdict::holds("identities exact; B >= 0, C >= 0, BC >= A^2 on the sampled sphere");
}

Flat2Report check_flat2_conditions(const JetMap& f, const HypersurfaceModel& h,
                                   const HypersurfaceModel& hp) {
    if (!f.has_identity_linear_part())
        throw std::invalid_argument("check_flat2_conditions: jet must have identity linear part");
    int n = f.n;
    int K = std::max(6, f.K);
    Flat2Report rep;

    WPoly ip = pairing_with_z(f.z_part(1, 1), n);
    rep.real_pairing = ip.imag_part().is_zero();

    ContactReport contact = expand_basic(h, hp, f, 4);
    rep.tangent_weight4 = contact.components.empty();

    // compose with the parabolic automorphism killing Re F^w_{0,2}(1), then
    // renormalize the moved target and test the map against the identity to
    // second order
    Rat r = -f.fw_w_coeff(2).re;
    auto gr = parabolic_map(r, n, K);
    auto moved = regraph(hp, gr.first, gr.second, K);
    // degree <= 2 coefficients of the composition only feel normalization
    // directions up to weight 4, so the weight-6 cap is harmless here
    int Kn = std::min(K, 6);
    HypersurfaceModel moved_low = moved;
    moved_low.K = Kn;
    for (int mu = Kn + 1; mu <= moved.K; ++mu) moved_low.phi.erase(mu);
    auto [norm_model, change] = cm_normalize(moved_low, Kn);
    (void)norm_model;
    auto ftilde = compose_maps(change.map(), compose_maps(gr, f.map(), K), K);

    bool flat = true;
    auto check_component = [&](const HoloPoly& comp, bool is_z, int self) {
        for (const auto& [m, c] : comp.terms()) {
            int deg = m.deg_z() + m.kw;
            if (deg > 2) continue;
            RC expected;
            if (is_z && deg == 1 && m.kw == 0 && m.kz[self] == 1) expected = RC(1);
            if (!is_z && deg == 1 && m.kw == 1) expected = RC(1);
            if (c != expected) flat = false;
        }
        if (is_z) {
            std::vector<int> kz(n, 0);
            kz[self] = 1;
            if (comp.coeff(kz, 0) != RC(1)) flat = false;
        } else if (comp.coeff(std::vector<int>(n, 0), 1) != RC(1)) {
            flat = false;
        }
    };
    for (int j = 0; j < n; ++j) check_component(ftilde.first[j], true, j);
    check_component(ftilde.second, false, 0);
    rep.flat_after_normalization = flat;

    rep.agree = (rep.flat_after_normalization == rep.tangent_weight4) &&
                (rep.tangent_weight4 == rep.real_pairing);
    return rep;
}

JetMap construct_first_order_germ(const std::vector<Rat>& alpha, const HypersurfaceModel& h,
                                  const HypersurfaceModel& hp, uint64_t seed) {
    int n = h.n;
    if (hp.n != n || static_cast<int>(alpha.size()) != n)
        throw std::invalid_argument("construct_first_order_germ: dimension mismatch");
    for (int j = 0; j < n; ++j) {
        if (alpha[j] < 0 || alpha[j] > 1)
            throw std::invalid_argument("construct_first_order_germ: alpha outside [0,1]");
        if (j > 0 && alpha[j] > alpha[j - 1])
            throw std::invalid_argument("construct_first_order_germ: alpha must be descending");
    }
    require_normalized(h, "construct_first_order_germ");
    require_normalized(hp, "construct_first_order_germ");

    int l = 0;
    while (l < n && alpha[l] == 1) ++l;
    Rat tau = 0;
    if (l > 0) tau = (coeff_l1(h.phi_at(4)) + coeff_l1(hp.phi_at(4))) / 2 + 1;

    int K = 8;
    JetMap f = JetMap::identity(n, K);
    for (int j = 0; j < n; ++j) {
        std::vector<int> kz(n, 0);
        kz[j] = 1;
        if (j < l) {
            // z_j (1 + i tau w): pairing stays imaginary, dominated by the tau term
            f.fz[j] = HoloPoly::var_z(n, j) + HoloPoly::term(n, kz, 1, RC(Rat(0), tau));
        } else {
            f.fz[j] = RC(alpha[j]) * HoloPoly::var_z(n, j);
        }
    }
    f.fw = HoloPoly::var_w(n) + HoloPoly::term(n, std::vector<int>(n, 0), 2, RC(0, 1));

    ContactReport rep = expand_basic(h, hp, f, K);
    WPoly total = WPoly::zero(n);
    for (const auto& [mu, e] : rep.components) total += e;
    verify_scaled_positivity(total, n, seed, K, "construct_first_order_germ");
    return f;
}

JetMap construct_2flat_germ(const HypersurfaceModel& h, const HypersurfaceModel& hp,
                            uint64_t seed) {
    if (h.n != hp.n) throw std::invalid_argument("construct_2flat_germ: dimension mismatch");
    int n = h.n;
    require_normalized(h, "construct_2flat_germ");
    require_normalized(hp, "construct_2flat_germ");
    for (int mu = 3; mu <= 5; ++mu)
        if (!(h.phi_at(mu) == hp.phi_at(mu)))
            throw std::invalid_argument(
                "construct_2flat_germ: precondition failure, normal forms differ at weight " +
                std::to_string(mu));

    // dominate the weight-6 normal discrepancy: split into u-linear and u-free
    // parts and budget via |u| ||z||^4 <= (u^2 ||z||^2 + ||z||^6) / 2
    WPoly d = hp.phi_at(6) - h.phi_at(6);
    Rat c_u(0), c_free(0);
    for (const auto& [m, c] : d.terms()) {
        Rat mag = abs(c.re) + abs(c.im);
        if (m.ku == 1)
            c_u += mag;
        else
            c_free += mag;
    }
    Rat lambda = c_u / 2 + c_free + 1;

    int K = 8;
    JetMap f = JetMap::identity(n, K);
    for (int j = 0; j < n; ++j) {
        std::vector<int> kz(n, 0);
        kz[j] = 1;
        f.fz[j] = HoloPoly::var_z(n, j) + HoloPoly::term(n, kz, 2, RC(lambda));
    }
    std::vector<int> zero(n, 0);
    f.fw = HoloPoly::var_w(n) + HoloPoly::term(n, zero, 3, RC(lambda)) +
           HoloPoly::term(n, zero, 4, RC(0, 1));

    ContactReport rep = expand_basic(h, hp, f, K);
    WPoly total = WPoly::zero(n);
    for (const auto& [mu, e] : rep.components) {
        if (mu <= 5)
            throw std::runtime_error(
                "construct_2flat_germ: unexpected nonzero component at weight " +
                std::to_string(mu));
        total += e;
    }
    verify_scaled_positivity(total, n, seed, K, "construct_2flat_germ");
    return f;
}

}  // namespace cmjet
