// Acceptance checks, one pass/fail line each. Exits nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "cmjet/jets.hpp"
#include "cmjet/normalform.hpp"
#include "cmjet/random_gen.hpp"
#include "cmjet/sampling.hpp"
#include "cmjet/selftest.hpp"
#include "cmjet/trace.hpp"

using namespace cmjet;

namespace {

// translation parameter scaled to the closed unit ball, keeping exact entries
std::vector<RC> unit_ball_vector(RandomGen& rng, int n) {
    std::vector<RC> a = rng.small_vector(n, 2, 4);
    Rat s = 0;
    for (const RC& v : a) s += v.re * v.re + v.im * v.im;
    int k = 1;
    while (Rat(k * k) < s) ++k;
    for (RC& v : a) v = RC(v.re / k, v.im / k);
    return a;
}

HypersurfaceModel normalized_model(RandomGen& rng, int n, int terms) {
    return cm_normalize(rng.model(n, 6, terms), 6).first;
}

// random real weight-6 polynomial inside the normal space (divisible terms only)
WPoly normal_weight6(RandomGen& rng, int n) {
    std::vector<Monomial> divisible;
    for (const Monomial& m : monomials_of_weight(n, 6))
        if (is_normal_term(m)) divisible.push_back(m);
    const Monomial& m = divisible[rng.uniform_int(0, (int)divisible.size() - 1)];
    RC c(rng.nonzero_rat(2, 3), rng.rat(2, 3));
    if (m == m.conjugate()) c = RC(c.re);
    WPoly half = WPoly::term(m, c);
    return RC(Rat(1, 2)) * (half + half.conjugate());
}

}  // namespace

int main() {
    int failed = 0;
    auto run = [&](int idx, const char* label, const std::function<bool(std::string&)>& body) {
        auto t0 = std::chrono::steady_clock::now();
        std::string note;
        bool ok = false;
        try {
            ok = body(note);
        } catch (const std::exception& e) {
            note = std::string("exception: ") + e.what();
        }
        double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %d (%s): %s (%.1fs)%s%s\n", idx, label, ok ? "pass" : "FAIL", sec,
                    note.empty() ? "" : " ", note.c_str());
        std::fflush(stdout);
        if (!ok) ++failed;
    };

    run(1, "quadric automorphism flatness", [](std::string& note) {
        RandomGen rng(11);
        auto t0 = std::chrono::steady_clock::now();
        for (int t = 0; t < 100; ++t) {
            int n = 1 + t % 3;
            std::vector<RC> a = unit_ball_vector(rng, n);
            JetMap f = JetMap::from_map(siegel_map(a, 8), 8);
            HypersurfaceModel q = HypersurfaceModel::quadric(n, 8);
            ContactReport rep = expand_basic(q, q, f, 8);
            if (!rep.components.empty()) {
                note = "nonzero expansion at case " + std::to_string(t);
                return false;
            }
        }
        double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (sec >= 10.0) {
            note = "runtime budget exceeded";
            return false;
        }
        return true;
    });

    run(2, "normalization postconditions", [](std::string& note) {
        RandomGen rng(23);
        auto t0 = std::chrono::steady_clock::now();
        for (int t = 0; t < 50; ++t) {
            int n = 1 + t % 2;
            HypersurfaceModel h = rng.model(n, 6, 3);
            auto [nf, change] = cm_normalize(h, 6);
            if (!normal_space_check(nf.phi, 6).ok()) {
                note = "normal space violation at case " + std::to_string(t);
                return false;
            }
            auto [fz, fw] = change.map();
            if (!(regraph(h, fz, fw, 6) == nf)) {
                note = "round trip mismatch at case " + std::to_string(t);
                return false;
            }
            auto [nf2, change2] = cm_normalize(nf, 6);
            if (!(nf2 == nf) || !change2.is_identity()) {
                note = "renormalization not the identity at case " + std::to_string(t);
                return false;
            }
        }
        double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (sec >= 30.0) {
            note = "runtime budget exceeded";
            return false;
        }
        return true;
    });

    run(3, "one-variable sphericity through weight 5", [](std::string& note) {
        RandomGen rng(31);
        std::vector<HypersurfaceModel> inputs, normals;
        for (int t = 0; t < 20; ++t) {
            HypersurfaceModel h = rng.model(1, 6, 3);
            HypersurfaceModel nf = cm_normalize(h, 6).first;
            for (int mu = 3; mu <= 5; ++mu)
                if (!nf.phi_at(mu).is_zero()) {
                    note = "nonzero weight " + std::to_string(mu) + " at case " +
                           std::to_string(t);
                    return false;
                }
            inputs.push_back(h);
            normals.push_back(nf);
        }
        for (size_t i = 0; i + 1 < inputs.size(); ++i) {
            if (!weighted_equivalence(inputs[i], inputs[i + 1], 5).ok()) {
                note = "equivalence failed at pair " + std::to_string(i);
                return false;
            }
            JetMap f = construct_2flat_germ(normals[i], normals[i + 1]);
            if (!f.has_identity_linear_part()) {
                note = "bad germ at pair " + std::to_string(i);
                return false;
            }
        }
        return true;
    });

    run(4, "constructive direction", [](std::string& note) {
        RandomGen rng(41);
        for (int t = 0; t < 50; ++t) {
            int n = 1 + t % 2;
            std::vector<Rat> alpha;
            int hi = 8;  // strictly descending numerators below 8, room for n picks
            for (int j = 0; j < n; ++j) {
                hi = rng.uniform_int(n - j, hi - 1);
                alpha.push_back(Rat(hi, 8));
            }
            HypersurfaceModel h = normalized_model(rng, n, 2);
            HypersurfaceModel hp = (t % 2 == 0) ? HypersurfaceModel::quadric(n, 6)
                                                : normalized_model(rng, n, 2);
            h.K = hp.K = 8;
            JetMap f = construct_first_order_germ(alpha, h, hp, 41 + t);
            ContactReport rep = expand_basic(h, hp, f, 8);
            if (rep.components.empty() || rep.components.front().first != 2) {
                note = "unexpected lowest component at case " + std::to_string(t);
                return false;
            }
            const WPoly& low = rep.components.front().second;
            double worst = 1e300;
            for (const SamplePoint& p : sphere_points(n, 10000, 41 + t, true)) {
                double v = low.eval(p.z, p.s).real();
                if (v < worst) worst = v;
            }
            if (!(worst > 1e-9)) {
                note = "margin " + std::to_string(worst) + " at case " + std::to_string(t);
                return false;
            }
        }
        return true;
    });

    run(5, "necessity of the vanishing conditions", [](std::string& note) {
        RandomGen rng(53);
        int detected = 0;
        for (int t = 0; t < 40; ++t) {
            int n = 1 + t % 2;
            JetMap f = JetMap::identity(n, 6);
            RC c(rng.nonzero_rat(2, 3), rng.rat(2, 3));
            std::vector<int> e1(n, 0), e2(n, 0), e3(n, 0);
            e1[0] = 1;
            e2[0] = 1;
            e2[n - 1] += 1;
            e3[0] = 2;
            e3[n - 1] += 1;
            int expected = 0;
            switch (t % 4) {
                case 0:  // quadratic term in the normal component
                    f.fw += HoloPoly::term(n, e2, 0, c);
                    expected = 2;
                    break;
                case 1:  // mixed z*w term in the normal component
                    f.fw += HoloPoly::term(n, e1, 1, c);
                    expected = 3;
                    break;
                case 2:  // cubic term in the normal component
                    f.fw += HoloPoly::term(n, e3, 0, c);
                    expected = 3;
                    break;
                default:  // quadratic term in a tangential component
                    f.fz[0] += HoloPoly::term(n, e2, 0, c);
                    expected = 3;
                    break;
            }
            HypersurfaceModel q = HypersurfaceModel::quadric(n, 6);
            ContactClassification cc = classify_contact(expand_basic(q, q, f, 6), 53 + t);
            if (cc.sign.status == Status::Violated && cc.first_weight == expected &&
                cc.sign.witness.has_value())
                ++detected;
        }
        if (detected != 40) {
            note = "detected " + std::to_string(detected) + "/40";
            return false;
        }
        return true;
    });

    // the germs and model pairs built for criterion 6 are reused by criterion 7
    std::vector<JetMap> germs;
    std::vector<std::pair<HypersurfaceModel, HypersurfaceModel>> germ_pairs;

    run(6, "three-condition equivalence", [&](std::string& note) {
        RandomGen rng(67);
        for (int t = 0; t < 50; ++t) {
            int n = 1 + t % 2;
            HypersurfaceModel h = (t < 25) ? HypersurfaceModel::quadric(n, 6)
                                           : normalized_model(rng, n, 2);
            HypersurfaceModel hp = h;
            hp.set_phi(6, h.phi_at(6) + normal_weight6(rng, n));
            JetMap f = construct_2flat_germ(h, hp, 67 + t);
            Flat2Report flat = check_flat2_conditions(f, h, hp);
            if (!flat.agree || !flat.flat_after_normalization) {
                note = "flat germ disagreement at case " + std::to_string(t);
                return false;
            }
            germs.push_back(f);
            germ_pairs.emplace_back(h, hp);

            JetMap g = f;
            std::vector<int> e0(n, 0);
            e0[0] = 1;
            g.fz[0] += HoloPoly::term(n, e0, 1, RC(Rat(0), rng.nonzero_rat(2, 3)));
            Flat2Report bent = check_flat2_conditions(g, h, hp);
            if (!bent.agree || bent.flat_after_normalization) {
                note = "perturbed germ disagreement at case " + std::to_string(t);
                return false;
            }
        }
        return true;
    });

    run(7, "second-order identities of the constructed germs", [&](std::string& note) {
        if (germs.size() != 50) {
            note = "constructed germs unavailable";
            return false;
        }
        for (size_t i = 0; i < germs.size(); ++i) {
            const auto& [h, hp] = germ_pairs[i];
            if (!(h.phi_at(4) == hp.phi_at(4)) || !(h.phi_at(5) == hp.phi_at(5))) {
                note = "model data mismatch at case " + std::to_string(i);
                return false;
            }
            if (!check_lemma_2flat(germs[i], h, hp).ok()) {
                note = "identity failure at case " + std::to_string(i);
                return false;
            }
        }
        return true;
    });

    run(8, "appendix selftest suite", [](std::string& note) {
        auto t0 = std::chrono::steady_clock::now();
        SuiteResult r = selftest_appendix(7);
        double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!r.ok()) {
            note = std::to_string(r.failed) + " failures, first: " +
                   (r.failures.empty() ? std::string("?") : r.failures.front());
            return false;
        }
        if (sec >= 20.0) {
            note = "runtime budget exceeded";
            return false;
        }
        return true;
    });

    run(9, "first-order invariance", [](std::string& note) {
        RandomGen rng(97);
        for (int t = 0; t < 100; ++t) {
            int n = 1 + t % 3;
            Rat delta(rng.uniform_int(1, 5), rng.uniform_int(1, 3));
            RCMat d = rc_identity(n);
            for (int j = 0; j < n; ++j) d[j][j] = RC(delta * Rat(rng.uniform_int(1, 8), 8));
            RCMat c = rc_mul(rng.unitary(n), rc_mul(d, rng.unitary(n)));
            Rat lambda = delta * delta;

            auto block = [&](const RCMat& cc) {
                RCMat l(n + 1, std::vector<RC>(n + 1));
                for (int i = 0; i < n; ++i) {
                    for (int j = 0; j < n; ++j) l[i][j] = cc[i][j];
                    l[i][n] = rng.rc(2, 3);
                }
                l[n][n] = RC(lambda);
                return l;
            };
            RCMat l1 = block(c);
            RCMat l2 = block(rc_mul(rng.unitary(n), rc_mul(c, rng.unitary(n))));

            if (!(first_order_charpoly(l1) == first_order_charpoly(l2))) {
                note = "invariant changed at case " + std::to_string(t);
                return false;
            }
            auto [v1, d1] = check_first_order(l1);
            auto [v2, d2] = check_first_order(l2);
            if (!v1.ok() || !v2.ok()) {
                note = "admissible block rejected at case " + std::to_string(t);
                return false;
            }
            for (int j = 0; j < n; ++j)
                if (std::abs(d1.alpha[j] - d2.alpha[j]) > 1e-12) {
                    note = "float invariant drift at case " + std::to_string(t);
                    return false;
                }
        }
        return true;
    });

    return failed == 0 ? 0 : 1;
}
