#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cmjet/newton.hpp"
#include "cmjet/random_gen.hpp"

using namespace cmjet;

namespace {

WPoly zmono(int j, int k) { return WPoly::term(Monomial({j}, {k}, 0), RC(Rat(1))); }

}  // namespace

TEST_CASE("one-dimensional sign reduction") {
    CHECK(reduce_1d({Rat(0), Rat(0), Rat(1), Rat(-5)}, 8).status == Status::Holds);
    Verdict v = reduce_1d({Rat(0), Rat(-1, 2), Rat(7)}, 8);
    CHECK(v.status == Status::Violated);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->value < 0);
    CHECK(v.witness->u > 0);
    CHECK(reduce_1d({}, 8).status == Status::Holds);
    CHECK(reduce_1d({Rat(0), Rat(0), Rat(0)}, 8).status == Status::Holds);
    std::vector<Rat> late(10, Rat(0));
    late.push_back(Rat(1));
    CHECK(reduce_1d(late, 8).status == Status::Undetermined);
}

TEST_CASE("convex hull and membership") {
    auto hull = convex_hull({{Rat(0), Rat(0)}, {Rat(2), Rat(0)}, {Rat(0), Rat(2)},
                             {Rat(1), Rat(1)}, {Rat(2), Rat(2)}});
    CHECK(hull.size() == 4);
    CHECK(in_closed_hull({Rat(1), Rat(1)}, hull));
    CHECK(in_relative_interior({Rat(1), Rat(1)}, hull));
    CHECK(in_closed_hull({Rat(2), Rat(1)}, hull));
    CHECK_FALSE(in_relative_interior({Rat(2), Rat(1)}, hull));
    CHECK_FALSE(in_closed_hull({Rat(3), Rat(0)}, hull));

    auto seg = convex_hull({{Rat(0), Rat(0)}, {Rat(2), Rat(2)}, {Rat(1), Rat(1)}});
    CHECK(seg.size() == 2);
    CHECK(in_closed_hull({Rat(1), Rat(1)}, seg));
    CHECK(in_relative_interior({Rat(1), Rat(1)}, seg));
    CHECK_FALSE(in_relative_interior({Rat(0), Rat(0)}, seg));
}

TEST_CASE("extended polytope disjointness") {
    // x1 x2 against remainder degrees on the axes beyond it
    CHECK(polytope_disjoint({{1, 1}}, RemainderSpec{{{2, 0}, {0, 2}}}));
    // x1^2 x2 + x1^4 against (1,2)
    CHECK(polytope_disjoint({{2, 1}, {4, 0}}, RemainderSpec{{{1, 2}}}));
    // x1^2 against (1,0): the degenerate polytope is the segment [0,2] x {0}
    CHECK_FALSE(polytope_disjoint({{2, 0}}, RemainderSpec{{{1, 0}}}));
    // remainder deep inside a fat polytope
    CHECK_FALSE(polytope_disjoint({{4, 0}, {0, 4}}, RemainderSpec{{{1, 1}}}));
    // boundary contact only
    CHECK(polytope_disjoint({{2, 0}, {0, 2}}, RemainderSpec{{{2, 0}}}));

    std::vector<std::pair<std::pair<int, int>, Rat>> poly = {{{1, 1}, Rat(3)}, {{5, 5}, Rat(0)}};
    CHECK(polytope_disjoint(poly, RemainderSpec{{{2, 0}, {0, 2}}}));
}

TEST_CASE("weighted cancellation") {
    WPoly p = WPoly::var_u(1) * WPoly::norm_sq(1) + WPoly::norm_sq(1) * WPoly::norm_sq(1);
    CancelResult r = cancel_weighted(p, 1, 2, 4);
    CHECK(r.verdict.ok());
    CHECK(r.minimal_component == WPoly::var_u(1) * WPoly::norm_sq(1));

    WPoly bad = p + WPoly::norm_sq(1);
    CHECK_THROWS(cancel_weighted(bad, 1, 2, 4));
}

TEST_CASE("middle Fourier coefficient") {
    WPoly nsq = WPoly::norm_sq(1);
    WPoly p = nsq * nsq + (zmono(4, 0) + zmono(0, 4)) * WPoly::constant(1, RC(Rat(1, 2)));
    CHECK(fourier_middle(p) == Rat(1));
    WPoly re_z4 = (zmono(4, 0) + zmono(0, 4)) * WPoly::constant(1, RC(Rat(1, 2)));
    CHECK(fourier_middle(re_z4) == Rat(0));
    CHECK_THROWS(fourier_middle(zmono(2, 1)));
}

TEST_CASE("forced sign change on the circle") {
    WPoly nsq = WPoly::norm_sq(1);
    TypesLemmaResult na = types_lemma(nsq * nsq);
    CHECK(na.outcome == TypesOutcome::NotApplicable);

    WPoly re_z4 = (zmono(4, 0) + zmono(0, 4)) * WPoly::constant(1, RC(Rat(1, 2)));
    TypesLemmaResult v = types_lemma(re_z4);
    CHECK(v.outcome == TypesOutcome::Violated);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->value == doctest::Approx(-1.0).epsilon(1e-6));
    double theta = std::arg(v.witness->z[0]);
    CHECK(std::abs(std::cos(4 * theta) + 1.0) < 1e-6);

    CHECK(types_lemma(WPoly::zero(1)).outcome == TypesOutcome::Holds);
}

TEST_CASE("nonnegativity trilean") {
    WPoly nsq2 = WPoly::norm_sq(2);
    CHECK(nonneg_check_bihom(nsq2 * nsq2, 2).status == Status::Holds);

    WPoly u = WPoly::var_u(1);
    WPoly nsq = WPoly::norm_sq(1);
    CHECK(nonneg_check_bihom(u * u * nsq + nsq * nsq * nsq, 1).status == Status::Holds);

    // t^2 ||z||^4 - ||z||^4 dips negative near t = 0
    Verdict v = nonneg_check_bihom(u * u * nsq * nsq - nsq * nsq, 1);
    CHECK(v.status == Status::Violated);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->value < 0);

    CHECK(nonneg_check_bihom(-nsq, 1).status == Status::Violated);
    CHECK(nonneg_check_bihom(WPoly::zero(1), 1).status == Status::Holds);

    // circle path: quartic bounded away from zero on the circle
    WPoly p = RC(Rat(3)) * (nsq * nsq) +
              (zmono(4, 0) + zmono(0, 4)) * WPoly::constant(1, RC(Rat(1, 2)));
    CHECK(nonneg_check_bihom(p, 1).status == Status::Holds);
}
