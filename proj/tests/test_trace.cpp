#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <vector>

#include "cmjet/random_gen.hpp"
#include "cmjet/trace.hpp"

using namespace cmjet;

namespace {

WPoly zpow(int n, int j, int e, int eb) {
    std::vector<int> kz(n, 0), kzb(n, 0);
    kz[j] = e;
    kzb[j] = eb;
    return WPoly::term(Monomial(kz, kzb, 0), RC(Rat(1)));
}

// Contraction computed over all ordered index tuples, independent of the
// sorted-key storage used by trace().
WPoly dense_trace_oracle(const BihomForm& q) {
    int n = q.dim(), j = q.deg_z(), k = q.deg_zb();
    std::vector<std::vector<int>> tj, sk;
    std::vector<int> cur;
    auto enumerate = [&](auto&& self, int len, std::vector<std::vector<int>>& out) -> void {
        if (static_cast<int>(cur.size()) == len) {
            out.push_back(cur);
            return;
        }
        for (int m = 0; m < n; ++m) {
            cur.push_back(m);
            self(self, len, out);
            cur.pop_back();
        }
    };
    enumerate(enumerate, j - 1, tj);
    cur.clear();
    enumerate(enumerate, k - 1, sk);

    auto key_of = [](std::vector<int> a, std::vector<int> b) {
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        return BihomForm::Key{a, b};
    };
    WPoly out(n);
    for (const auto& t : tj)
        for (const auto& s : sk) {
            RC sum;
            for (int m = 0; m < n; ++m) {
                std::vector<int> ta = t, sa = s;
                ta.push_back(m);
                sa.push_back(m);
                sum += q.entry(key_of(ta, sa));
            }
            if (sum == RC()) continue;
            std::vector<int> kz(n, 0), kzb(n, 0);
            for (int i : t) ++kz[i];
            for (int i : s) ++kzb[i];
            out.add_term(Monomial(kz, kzb, 0), sum);
        }
    return out;
}

BihomForm random_form(RandomGen& rng, int n, int j, int k, int terms) {
    BihomForm q(n, j, k);
    auto aj = sorted_multiindices(n, j);
    auto ak = sorted_multiindices(n, k);
    for (int t = 0; t < terms; ++t) {
        const auto& a = aj[rng.uniform_int(0, static_cast<int>(aj.size()) - 1)];
        const auto& b = ak[rng.uniform_int(0, static_cast<int>(ak.size()) - 1)];
        q.add_entry({a, b}, rng.rc(3, 4));
    }
    return q;
}

}  // namespace

TEST_CASE("combinatorial helpers") {
    CHECK(multinomial({2, 0}) == 1);
    CHECK(multinomial({1, 1}) == 2);
    CHECK(multinomial({2, 1}) == 3);
    CHECK(sorted_multiindices(2, 2).size() == 3);
    CHECK(sorted_multiindices(3, 2).size() == 6);
}

TEST_CASE("contraction of basic quartic forms") {
    // one variable: z^2 zbar^2 contracts to z zbar
    BihomForm q1 = BihomForm::from_wpoly(zpow(1, 0, 2, 2), 2, 2);
    CHECK(trace(q1).to_wpoly() == zpow(1, 0, 1, 1));

    // two variables: z1^2 zbar2^2 is annihilated
    WPoly p = zpow(2, 0, 2, 0) * zpow(2, 1, 0, 2);
    CHECK(trace(BihomForm::from_wpoly(p, 2, 2)).to_wpoly().is_zero());

    // the squared norm contracts to a positive multiple of the norm
    WPoly nsq = WPoly::norm_sq(2);
    BihomForm q2 = BihomForm::from_wpoly(nsq * nsq, 2, 2);
    CHECK(trace(q2).to_wpoly() == RC(Rat(3, 2)) * nsq);
}

TEST_CASE("round trip between polynomials and symmetric coefficients") {
    RandomGen rng(21);
    for (int it = 0; it < 20; ++it) {
        int n = rng.uniform_int(1, 3);
        int j = rng.uniform_int(1, 3), k = rng.uniform_int(1, 3);
        BihomForm q = random_form(rng, n, j, k, 4);
        CHECK(BihomForm::from_wpoly(q.to_wpoly(), j, k) == q);
    }
}

TEST_CASE("contraction matches the dense tuple oracle") {
    RandomGen rng(22);
    for (int it = 0; it < 30; ++it) {
        int n = rng.uniform_int(1, 3);
        int j = rng.uniform_int(1, 3), k = rng.uniform_int(1, 3);
        BihomForm q = random_form(rng, n, j, k, 4);
        CHECK(trace(q).to_wpoly() == dense_trace_oracle(q));
    }
}

TEST_CASE("iterated contraction") {
    RandomGen rng(23);
    for (int it = 0; it < 10; ++it) {
        BihomForm q = random_form(rng, 2, 3, 2, 4);
        CHECK(trace_power(q, 2).to_wpoly() == dense_trace_oracle(trace(q)));
    }
}

TEST_CASE("decomposition into traceless layers") {
    // ||z||^4 is pure trace: the scalar layer is 1 and the rest vanishes
    WPoly nsq = WPoly::norm_sq(2);
    TraceDecomposition d = trace_decompose(BihomForm::from_wpoly(nsq * nsq, 2, 2));
    REQUIRE(d.parts.size() == 3);
    CHECK(d.parts[0].is_zero());
    CHECK(d.parts[1].is_zero());
    CHECK(d.parts[2].entry({{}, {}}) == RC(Rat(1)));

    RandomGen rng(24);
    for (int it = 0; it < 8; ++it) {
        int n = rng.uniform_int(1, 2);
        int j = rng.uniform_int(1, 3), k = rng.uniform_int(1, 2);
        BihomForm q = random_form(rng, n, j, k, 3);
        TraceDecomposition dec = trace_decompose(q);
        WPoly sum(n), npow = WPoly::constant(n, RC(Rat(1)));
        for (const auto& part : dec.parts) {
            sum += npow * part.to_wpoly();
            if (part.deg_z() >= 1 && part.deg_zb() >= 1)
                CHECK(trace(part).to_wpoly().is_zero());
            npow *= WPoly::norm_sq(n);
        }
        CHECK(sum == q.to_wpoly());
    }
}

TEST_CASE("one variable: vanishing traces kill the form") {
    BihomForm q = BihomForm::from_wpoly(RC(Rat(5, 3)) * zpow(1, 0, 2, 2), 2, 2);
    CHECK_FALSE(trace(q).is_zero());
    BihomForm q5 = BihomForm::from_wpoly(RC(Rat(-2)) * zpow(1, 0, 3, 2), 3, 2);
    CHECK_FALSE(trace_power(q5, 2).is_zero());
}

TEST_CASE("normal term divisibility") {
    CHECK(is_normal_term(Monomial({2}, {2}, 0)));
    CHECK(is_normal_term(Monomial({2, 0}, {0, 2}, 1)));
    CHECK_FALSE(is_normal_term(Monomial({2}, {1}, 0)));
    CHECK_FALSE(is_normal_term(Monomial({1, 1}, {1, 0}, 2)));
}

TEST_CASE("normal space membership") {
    std::map<int, WPoly> phi;
    CHECK(normal_space_check(phi, 6).ok());

    phi[4] = RC(Rat(2)) * (zpow(2, 0, 2, 0) * zpow(2, 1, 0, 2)).real_part();
    CHECK(normal_space_check(phi, 6).ok());

    std::map<int, WPoly> bad3;
    bad3[3] = (zpow(1, 0, 2, 1) + zpow(1, 0, 1, 2));
    CHECK_FALSE(normal_space_check(bad3, 6).ok());

    std::map<int, WPoly> bad4;
    WPoly nsq = WPoly::norm_sq(2);
    bad4[4] = nsq * nsq;
    CHECK_FALSE(normal_space_check(bad4, 6).ok());

    std::map<int, WPoly> bad5;
    bad5[5] = zpow(1, 0, 3, 2) + zpow(1, 0, 2, 3);
    CHECK_FALSE(normal_space_check(bad5, 6).ok());

    std::map<int, WPoly> ok6;
    ok6[6] = zpow(1, 0, 3, 3);
    CHECK(normal_space_check(ok6, 6).ok());
}
