#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "cmjet/random_gen.hpp"
#include "cmjet/wpoly.hpp"

using namespace cmjet;

namespace {

WPoly random_poly(RandomGen& rng, int n, int terms) {
    WPoly p(n);
    for (int t = 0; t < terms; ++t) {
        std::vector<int> kz(n, 0), kzb(n, 0);
        for (int d = rng.uniform_int(0, 3); d > 0; --d) ++kz[rng.uniform_int(0, n - 1)];
        for (int d = rng.uniform_int(0, 3); d > 0; --d) ++kzb[rng.uniform_int(0, n - 1)];
        p.add_term(Monomial(kz, kzb, rng.uniform_int(0, 2)), rng.rc(3, 4));
    }
    return p;
}

std::vector<std::complex<double>> random_point(RandomGen& rng, int n) {
    std::vector<std::complex<double>> z(n);
    for (int j = 0; j < n; ++j) z[j] = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    return z;
}

}  // namespace

TEST_CASE("ring axioms on random polynomials") {
    RandomGen rng(11);
    for (int it = 0; it < 20; ++it) {
        int n = rng.uniform_int(1, 3);
        WPoly a = random_poly(rng, n, 4), b = random_poly(rng, n, 4), c = random_poly(rng, n, 4);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) * c == a * c + b * c);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a - a == WPoly::zero(n));
    }
}

TEST_CASE("conjugation is an antilinear ring morphism") {
    RandomGen rng(12);
    for (int it = 0; it < 20; ++it) {
        int n = rng.uniform_int(1, 3);
        WPoly a = random_poly(rng, n, 4), b = random_poly(rng, n, 4);
        CHECK((a * b).conjugate() == a.conjugate() * b.conjugate());
        CHECK((a + b).conjugate() == a.conjugate() + b.conjugate());
        CHECK(a.conjugate().conjugate() == a);
        WPoly re = a.real_part(), im = a.imag_part();
        CHECK(re.is_real());
        CHECK(im.is_real());
        CHECK(re + RC(Rat(0), Rat(1)) * im == a);
        CHECK((a + a.conjugate()).is_real());
    }
}

TEST_CASE("weight decomposition partitions the polynomial") {
    RandomGen rng(13);
    for (int it = 0; it < 20; ++it) {
        int n = rng.uniform_int(1, 2);
        WPoly a = random_poly(rng, n, 6);
        WPoly sum(n);
        for (const auto& [mu, part] : a.weight_decompose()) {
            CHECK(part == a.weight_part(mu));
            for (const auto& [m, c] : part.terms()) CHECK(m.weight() == mu);
            sum += part;
        }
        CHECK(sum == a);

        WPoly bsum(n);
        for (const auto& [j, k, l, part] : a.bidegree_decompose()) {
            CHECK(part == a.bidegree_part(j, k, l));
            bsum += part;
        }
        CHECK(bsum == a);
    }
}

TEST_CASE("truncated product agrees with the full product") {
    RandomGen rng(14);
    for (int it = 0; it < 10; ++it) {
        int n = rng.uniform_int(1, 2);
        WPoly a = random_poly(rng, n, 5), b = random_poly(rng, n, 5);
        for (int cap : {2, 4, 6}) CHECK(WPoly::mul_trunc(a, b, cap) == (a * b).truncate(cap));
    }
}

TEST_CASE("substitution matches numeric composition") {
    RandomGen rng(15);
    for (int it = 0; it < 10; ++it) {
        int n = rng.uniform_int(1, 2);
        WPoly p = random_poly(rng, n, 4);
        std::vector<WPoly> zmap;
        for (int j = 0; j < n; ++j) zmap.push_back(random_poly(rng, n, 2));
        WPoly umap = random_poly(rng, n, 2).real_part();
        WPoly q = p.substitute(zmap, umap, 200);
        for (int pt = 0; pt < 20; ++pt) {
            auto z = random_point(rng, n);
            double u = rng.uniform(-1.0, 1.0);
            std::vector<std::complex<double>> zi(n);
            for (int j = 0; j < n; ++j) zi[j] = zmap[j].eval(z, u);
            double ui = umap.eval(z, u).real();
            std::complex<double> want = p.eval(zi, ui);
            std::complex<double> got = q.eval(z, u);
            CHECK(std::abs(want - got) < 1e-8 * (1.0 + std::abs(want)));
        }
    }
}

TEST_CASE("substituting a dilated variable into the squared norm") {
    // ||z'||^4 with z' = z_1 (1 + u): expands to (z zbar)^2 (1 + u)^4
    WPoly p = WPoly::norm_sq(1) * WPoly::norm_sq(1);
    WPoly dil = WPoly::var_z(1, 0) * (WPoly::constant(1, RC(Rat(1))) + WPoly::var_u(1));
    WPoly got = p.substitute({dil}, WPoly::var_u(1), 100);
    WPoly scale = WPoly::constant(1, RC(Rat(1))) + WPoly::var_u(1);
    WPoly want = p * scale * scale * scale * scale;
    CHECK(got == want);
}

TEST_CASE("diagonal restriction rewrites u as t times the squared norm") {
    WPoly p = WPoly::var_u(2) * WPoly::norm_sq(2) + WPoly::var_u(2) * WPoly::var_u(2);
    WPoly r = p.restrict_diagonal();
    RandomGen rng(16);
    for (int pt = 0; pt < 20; ++pt) {
        auto z = random_point(rng, 2);
        double t = rng.uniform(-2.0, 2.0);
        double nz = std::norm(z[0]) + std::norm(z[1]);
        std::complex<double> want = p.eval(z, t * nz);
        std::complex<double> got = r.eval_t(z, t);
        CHECK(std::abs(want - got) < 1e-10 * (1.0 + std::abs(want)));
    }
}

TEST_CASE("holomorphic composition matches numeric evaluation") {
    RandomGen rng(17);
    for (int it = 0; it < 10; ++it) {
        int n = rng.uniform_int(1, 2);
        HoloPoly p(n);
        for (int t = 0; t < 4; ++t) {
            std::vector<int> kz(n, 0);
            for (int d = rng.uniform_int(0, 2); d > 0; --d) ++kz[rng.uniform_int(0, n - 1)];
            p.add_term(kz, rng.uniform_int(0, 2), rng.rc(2, 3));
        }
        std::vector<HoloPoly> zmap;
        for (int j = 0; j < n; ++j) {
            HoloPoly comp(n);
            std::vector<int> kz(n, 0);
            kz[j] = 1;
            comp.add_term(kz, 0, rng.rc(2, 3));
            comp.add_term(std::vector<int>(n, 0), 1, rng.rc(2, 3));
            zmap.push_back(comp);
        }
        HoloPoly wmap = HoloPoly::var_w(n);
        HoloPoly q = p.compose(zmap, wmap, 200);
        for (int pt = 0; pt < 10; ++pt) {
            auto z = random_point(rng, n);
            std::complex<double> w = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
            std::vector<std::complex<double>> zi(n);
            for (int j = 0; j < n; ++j) zi[j] = zmap[j].eval(z, w);
            std::complex<double> want = p.eval(zi, wmap.eval(z, w));
            CHECK(std::abs(want - q.eval(z, w)) < 1e-9 * (1.0 + std::abs(want)));
        }
    }
}

TEST_CASE("exponent and monomial enumeration") {
    CHECK(exponents_of_degree(2, 3).size() == 4);
    CHECK(exponents_of_degree(3, 2).size() == 6);
    auto monos = monomials_of_weight(2, 4);
    for (const auto& m : monos) CHECK(m.weight() == 4);
    for (size_t i = 0; i < monos.size(); ++i)
        for (size_t j = i + 1; j < monos.size(); ++j) CHECK(!(monos[i] == monos[j]));
}

TEST_CASE("hermitian pairing is sesquilinear") {
    RandomGen rng(18);
    int n = 2;
    std::vector<WPoly> a, b;
    for (int j = 0; j < n; ++j) {
        a.push_back(random_poly(rng, n, 2));
        b.push_back(random_poly(rng, n, 2));
    }
    WPoly pab = hermitian_pair(a, b);
    WPoly pba = hermitian_pair(b, a);
    CHECK(pab.conjugate() == pba);
    CHECK(hermitian_pair(a, a).is_real());
}
