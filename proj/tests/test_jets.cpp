#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cmjet/jets.hpp"
#include "cmjet/random_gen.hpp"

using namespace cmjet;

namespace {

RCMat block2(RC c, RC a, RC lam) { return {{c, a}, {RC(), lam}}; }

JetMap jet1(const HoloPoly& fz, const HoloPoly& fw, int K) {
    return JetMap::from_map({{fz}, fw}, K);
}

}  // namespace

TEST_CASE("first-order block check") {
    auto [vid, did] = check_first_order(block2(RC(1), RC(), RC(1)));
    CHECK(vid.ok());
    CHECK(did.alpha[0] == doctest::Approx(1.0));

    // C = 2, lambda = 4: the bound is attained
    auto [v1, d1] = check_first_order(block2(RC(2), RC(), RC(4)));
    CHECK(v1.ok());
    CHECK(d1.mu[0] == doctest::Approx(2.0));
    CHECK(d1.alpha[0] == doctest::Approx(1.0));

    // C = 1, A = 3, lambda = 4: alpha = 1/2, A unconstrained
    auto [v2, d2] = check_first_order(block2(RC(1), RC(3), RC(4)));
    CHECK(v2.ok());
    CHECK(d2.alpha[0] == doctest::Approx(0.5));
    CHECK(d2.A[0] == RC(3));

    // singular value exceeds sqrt(lambda)
    CHECK(check_first_order(block2(RC(2), RC(), RC(1))).first.status == Status::Violated);
    // the differential must preserve the complex tangent space
    CHECK(check_first_order({{RC(1), RC()}, {RC(1), RC(1)}}).first.status == Status::Violated);
    // normal stretching must be real positive
    CHECK(check_first_order(block2(RC(1), RC(), RC(0, 1))).first.status == Status::Violated);
    CHECK(check_first_order({{RC(1)}}).first.status == Status::Violated);
}

TEST_CASE("first-order characteristic polynomial is a unitary invariant") {
    // C = 1 and C = i have the same C*C, hence the same invariant
    auto p1 = first_order_charpoly(block2(RC(1), RC(), RC(4)));
    auto p2 = first_order_charpoly(block2(RC(0, 1), RC(5), RC(4)));
    CHECK(p1 == p2);
    auto p3 = first_order_charpoly(block2(RC(2), RC(), RC(4)));
    CHECK_FALSE(p1 == p3);
}

TEST_CASE("fractional-linear sphere automorphism expansion") {
    JetMap s = siegel_automorphism({RC(1)}, 6);
    CHECK(s.fw.coeff({1}, 1) == RC(0, 2));
    CHECK(s.fz[0].coeff({0}, 1) == RC(1));
}

TEST_CASE("contact expansion of a normal perturbation") {
    HypersurfaceModel q = HypersurfaceModel::quadric(1, 6);
    HoloPoly fw = HoloPoly::var_w(1) + HoloPoly::term(1, {0}, 2, RC(0, 1));
    JetMap f = jet1(HoloPoly::var_z(1, 0), fw, 6);
    ContactReport rep = expand_basic(q, q, f, 6);
    REQUIRE_FALSE(rep.components.empty());
    CHECK(rep.components.front().first == 4);
    // Im(w + i w^2) - ||z||^2 on the graph: u^2 - ||z||^4
    WPoly want = WPoly::var_u(1) * WPoly::var_u(1) -
                 WPoly::norm_sq(1) * WPoly::norm_sq(1);
    CHECK(rep.components.front().second == want);

    ContactClassification c = classify_contact(rep);
    CHECK(c.tangency_order == 3);
    CHECK(c.first_weight == 4);
    CHECK(c.sign.status == Status::Violated);

    // identity map: flat through the cap
    ContactClassification cid = classify_contact(expand_basic(q, q, JetMap::identity(1, 6), 6));
    CHECK(cid.first_weight == -1);
    CHECK(cid.tangency_order == 6);
    CHECK(cid.sign.ok());
}

TEST_CASE("second-order admissibility") {
    JetMap id = JetMap::identity(1, 6);
    WPoly zero = WPoly::zero(1);
    CHECK(check_second_order(id, zero, zero).verdict.ok());

    // source strictly inside: phi4 - phi4p = ||z||^4 >= 0
    WPoly nsq = WPoly::norm_sq(1);
    CHECK(check_second_order(id, nsq * nsq, zero).verdict.ok());
    CHECK(check_second_order(id, zero, nsq * nsq).verdict.status == Status::Violated);

    // fw = w + i w^2 with no compensating quadratic data fails the discriminant
    HoloPoly fw = HoloPoly::var_w(1) + HoloPoly::term(1, {0}, 2, RC(0, 1));
    CHECK(check_second_order(jet1(HoloPoly::var_z(1, 0), fw, 6), zero, zero).verdict.status ==
          Status::Violated);

    RCMat u = {{RC(0, 1)}};
    JetMap rot = JetMap::from_map(dilation_map(u, Rat(1)), 6);
    CHECK_THROWS(check_second_order(rot, zero, zero));
}

TEST_CASE("flat-to-second-order conditions and their equivalence") {
    HypersurfaceModel q = HypersurfaceModel::quadric(1, 6);
    Flat2Report rid = check_flat2_conditions(JetMap::identity(1, 6), q, q);
    CHECK(rid.flat_after_normalization);
    CHECK(rid.tangent_weight4);
    CHECK(rid.real_pairing);
    CHECK(rid.agree);

    // z -> z(1 + i w) breaks all three conditions at once
    HoloPoly fz = HoloPoly::var_z(1, 0) + HoloPoly::term(1, {1}, 1, RC(0, 1));
    Flat2Report rb = check_flat2_conditions(jet1(fz, HoloPoly::var_w(1), 6), q, q);
    CHECK_FALSE(rb.flat_after_normalization);
    CHECK_FALSE(rb.tangent_weight4);
    CHECK_FALSE(rb.real_pairing);
    CHECK(rb.agree);
}

TEST_CASE("two-flat normal perturbation satisfies the second-order identities") {
    HypersurfaceModel q = HypersurfaceModel::quadric(1, 8);
    HoloPoly fz = HoloPoly::var_z(1, 0) + HoloPoly::term(1, {1}, 2, RC(1));
    HoloPoly fw = HoloPoly::var_w(1) + HoloPoly::term(1, {0}, 3, RC(1)) +
                  HoloPoly::term(1, {0}, 4, RC(0, 1));
    JetMap f = jet1(fz, fw, 8);
    CHECK(check_lemma_2flat(f, q, q).ok());

    CHECK_THROWS(check_lemma_2flat(JetMap::from_map(dilation_map({{RC(0, 1)}}, Rat(1)), 8), q, q));
}

TEST_CASE("first-order germ construction") {
    HypersurfaceModel q1 = HypersurfaceModel::quadric(1, 8);
    JetMap f = construct_first_order_germ({Rat(1, 2)}, q1, q1);
    CHECK(f.fz[0].coeff({1}, 0) == RC(Rat(1, 2)));
    CHECK(check_first_order(f.linear_block()).first.ok());

    HypersurfaceModel q2 = HypersurfaceModel::quadric(2, 8);
    JetMap g = construct_first_order_germ({Rat(1), Rat(1, 2)}, q2, q2);
    auto [v, d] = check_first_order(g.linear_block());
    CHECK(v.ok());
    CHECK(d.alpha[0] == doctest::Approx(1.0));
    CHECK(d.alpha[1] == doctest::Approx(0.5));

    CHECK_THROWS(construct_first_order_germ({Rat(2)}, q1, q1));
    CHECK_THROWS(construct_first_order_germ({Rat(1, 2), Rat(1)}, q2, q2));
}

TEST_CASE("two-flat germ construction") {
    HypersurfaceModel h = HypersurfaceModel::quadric(1, 6);
    HypersurfaceModel hp = h;
    hp.set_phi(6, WPoly::term(Monomial({3}, {3}, 0), RC(Rat(1, 4))));
    JetMap f = construct_2flat_germ(h, hp);
    CHECK(f.has_identity_linear_part());
    CHECK(check_lemma_2flat(f, h, hp).ok());
    Flat2Report rep = check_flat2_conditions(f, h, hp);
    CHECK(rep.flat_after_normalization);
    CHECK(rep.tangent_weight4);
    CHECK(rep.real_pairing);
    CHECK(rep.agree);

    HypersurfaceModel bad = h;
    bad.set_phi(4, WPoly::term(Monomial({2}, {2}, 0), RC(Rat(1))));
    CHECK_THROWS(construct_2flat_germ(bad, h));
}
