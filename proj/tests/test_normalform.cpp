#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cmjet/normalform.hpp"
#include "cmjet/random_gen.hpp"
#include "cmjet/trace.hpp"

using namespace cmjet;

namespace {

WPoly zmono2(int a1, int a2, int b1, int b2) {
    return WPoly::term(Monomial({a1, a2}, {b1, b2}, 0), RC(Rat(1)));
}

}  // namespace

TEST_CASE("levi normalization of diagonal forms") {
    // 4 |z|^2 rescales exactly
    WPoly h4 = RC(Rat(4)) * WPoly::norm_sq(1);
    LeviResult r4 = levi_normalize(h4, 6);
    CHECK(r4.exact);
    CHECK(r4.model.graph().weight_part(2) == WPoly::norm_sq(1));

    // 2 |z|^2 needs an irrational scale
    WPoly h2 = RC(Rat(2)) * WPoly::norm_sq(1);
    LeviResult r2 = levi_normalize(h2, 6);
    CHECK_FALSE(r2.exact);
    CHECK(r2.model.graph().weight_part(2) == WPoly::norm_sq(1));

    // already normalized: nothing to do
    LeviResult rid = levi_normalize(WPoly::norm_sq(2), 6);
    CHECK(rid.exact);
    CHECK(rid.model == HypersurfaceModel::quadric(2, 6));

    CHECK_THROWS(levi_normalize(-WPoly::norm_sq(1), 6));
    CHECK_THROWS(levi_normalize(WPoly::zero(2), 6));
}

TEST_CASE("weight three is always removable") {
    WPoly phi3 = (WPoly::term(Monomial({2}, {1}, 0), RC(Rat(1, 2))) +
                  WPoly::term(Monomial({1}, {2}, 0), RC(Rat(1, 2))));
    HypersurfaceModel h = HypersurfaceModel::quadric(1, 6);
    h.set_phi(3, phi3);
    auto [nf, change] = cm_normalize(h, 6);
    CHECK(nf.phi_at(3).is_zero());
    CHECK(nf.phi_at(4).is_zero());
    CHECK(nf.phi_at(5).is_zero());
    CHECK_FALSE(change.is_identity());
}

TEST_CASE("pure trace quartic vanishes in normal form") {
    WPoly nsq = WPoly::norm_sq(2);
    HypersurfaceModel h = HypersurfaceModel::quadric(2, 6);
    h.set_phi(4, nsq * nsq);
    auto [nf, change] = cm_normalize(h, 6);
    CHECK(nf.phi_at(4).is_zero());
}

TEST_CASE("traceless quartic is already normal") {
    HypersurfaceModel h = HypersurfaceModel::quadric(2, 6);
    WPoly phi4 = RC(Rat(1, 2)) * (zmono2(2, 0, 0, 2) + zmono2(0, 2, 2, 0));
    h.set_phi(4, phi4);
    auto [nf, change] = cm_normalize(h, 6);
    CHECK(nf == h);
    CHECK(change.is_identity());
}

TEST_CASE("quadric automorphisms preserve the quadric") {
    RandomGen rng(31);
    for (int it = 0; it < 6; ++it) {
        int n = rng.uniform_int(1, 2);
        QuadricAutoParams p;
        p.U = rng.unitary(n);
        p.delta = rng.nonzero_rat(2, 3);
        if (p.delta < 0) p.delta = -p.delta;
        p.a = rng.small_vector(n, 1, 3);
        p.r = rng.rat(2, 3);
        auto [fz, fw] = quadric_automorphism(p, n, 8);
        HypersurfaceModel q = HypersurfaceModel::quadric(n, 8);
        CHECK(regraph(q, fz, fw, 8) == q);
    }
}

TEST_CASE("round trip and idempotence") {
    RandomGen rng(32);
    for (int it = 0; it < 5; ++it) {
        int n = rng.uniform_int(1, 2);
        HypersurfaceModel h = rng.model(n, 6, 2);
        auto [nf, change] = cm_normalize(h, 6);
        CHECK(normal_space_check(nf.phi, 6).ok());
        auto [fz, fw] = change.map();
        CHECK(regraph(h, fz, fw, 6) == nf);
        auto [nf2, change2] = cm_normalize(nf, 6);
        CHECK(nf2 == nf);
        CHECK(change2.is_identity());
    }
}

TEST_CASE("equivalence: exact and obstructed cases") {
    HypersurfaceModel q2 = HypersurfaceModel::quadric(2, 6);
    HypersurfaceModel h = q2;
    h.set_phi(4, RC(Rat(1, 2)) * (zmono2(2, 0, 0, 2) + zmono2(0, 2, 2, 0)));
    CHECK(weighted_equivalence(h, h).status == Status::Holds);
    CHECK(weighted_equivalence(h, q2).status == Status::Violated);
    CHECK(weighted_equivalence(q2, h).status == Status::Violated);

    RandomGen rng(33);
    HypersurfaceModel a = rng.model(1, 6, 2), b = rng.model(1, 6, 2);
    CHECK(weighted_equivalence(a, b).status == Status::Holds);
}

TEST_CASE("equivalence found by search over the automorphism data") {
    // target carries the image of the source quartic under z2 -> i z2
    HypersurfaceModel h = HypersurfaceModel::quadric(2, 6);
    h.set_phi(4, RC(Rat(1, 2)) * (zmono2(2, 0, 0, 2) + zmono2(0, 2, 2, 0)));
    HypersurfaceModel h2 = HypersurfaceModel::quadric(2, 6);
    h2.set_phi(4, RC(Rat(-1, 2)) * (zmono2(2, 0, 0, 2) + zmono2(0, 2, 2, 0)));
    EquivOptions opt;
    opt.starts = 48;
    opt.seed = 5;
    Verdict v = weighted_equivalence(h, h2, 5, opt);
    CHECK(v.status == Status::Holds);
}

TEST_CASE("model distance") {
    HypersurfaceModel a = HypersurfaceModel::quadric(1, 6), b = a;
    CHECK(model_distance(a, b, 6) == 0.0);
    b.set_phi(6, WPoly::term(Monomial({3}, {3}, 0), RC(Rat(1, 4))));
    CHECK(model_distance(a, b, 6) == doctest::Approx(0.25));
}
