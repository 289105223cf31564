#pragma once

#include <cstdint>
#include <random>

#include "cmjet/exactla.hpp"
#include "cmjet/normalform.hpp"
#include "cmjet/wpoly.hpp"

namespace cmjet {

// Deterministic generators of small exact-rational test data.
class RandomGen {
  public:
    explicit RandomGen(uint64_t seed) : eng_(seed) {}

    int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(eng_);
    }

    Rat rat(int max_num = 3, int max_den = 4) {
        int num = uniform_int(-max_num, max_num);
        int den = uniform_int(1, max_den);
        return Rat(num, den);
    }
    Rat nonzero_rat(int max_num = 3, int max_den = 4) {
        Rat r = rat(max_num, max_den);
        return r == 0 ? Rat(1, uniform_int(1, max_den)) : r;
    }
    RC rc(int max_num = 3, int max_den = 4) { return RC(rat(max_num, max_den), rat(max_num, max_den)); }

    // Real weighted homogeneous polynomial of weight mu with sparse support.
    WPoly real_homogeneous(int n, int mu, int terms = 4) {
        WPoly p(n);
        auto monos = monomials_of_weight(n, mu);
        for (int t = 0; t < terms; ++t) {
            const Monomial& m = monos[uniform_int(0, static_cast<int>(monos.size()) - 1)];
            RC c = rc(2, 3);
            if (m == m.conjugate()) c = RC(c.re);
            WPoly half = WPoly::term(m, c);
            p += half + half.conjugate();
        }
        return RC(Rat(1, 2)) * p;
    }

    HypersurfaceModel model(int n, int K, int terms = 3) {
        HypersurfaceModel h = HypersurfaceModel::quadric(n, K);
        for (int mu = 3; mu <= K; ++mu) h.set_phi(mu, real_homogeneous(n, mu, terms));
        return h;
    }

    // Exact rational unitary via the Cayley transform of a random
    // skew-Hermitian matrix.
    RCMat unitary(int n) {
        RCMat s(n, std::vector<RC>(n));
        for (int i = 0; i < n; ++i) s[i][i] = RC(Rat(0), rat(2, 3));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                Rat x = rat(2, 3), y = rat(2, 3);
                s[i][j] = RC(x, y);
                s[j][i] = RC(-x, y);
            }
        RCMat imins = rc_identity(n), iplus = rc_identity(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                imins[i][j] -= s[i][j];
                iplus[i][j] += s[i][j];
            }
        return rc_mul(imins, rc_inverse(iplus));
    }

    std::vector<RC> small_vector(int n, int max_num = 2, int max_den = 4) {
        std::vector<RC> a;
        for (int j = 0; j < n; ++j) a.push_back(rc(max_num, max_den));
        return a;
    }

  private:
    std::mt19937_64 eng_;
};

}  // namespace cmjet
