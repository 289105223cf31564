#include "cmjet/sampling.hpp"

#include <cmath>

namespace cmjet {

namespace {

constexpr int kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                           41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};

double frac(double x) { return x - std::floor(x); }

}  // namespace

LowDiscrepancy::LowDiscrepancy(int dim, uint64_t seed) : dim_(dim) {
    alpha_.resize(dim_);
    state_.resize(dim_);
    for (int i = 0; i < dim_; ++i) {
        alpha_[i] = frac(std::sqrt(static_cast<double>(kPrimes[i % 24])) + i / 97.0);
        state_[i] = frac(0.5 + 0.618033988749895 * static_cast<double>((seed + 1) * (i + 1)));
    }
}

std::vector<double> LowDiscrepancy::next_unit() {
    for (int i = 0; i < dim_; ++i) state_[i] = frac(state_[i] + alpha_[i]);
    return state_;
}

std::vector<double> LowDiscrepancy::next_gaussian() {
    std::vector<double> u = next_unit();
    std::vector<double> g(dim_);
    for (int i = 0; i < dim_; i += 2) {
        double u1 = std::max(u[i], 1e-12);
        double u2 = (i + 1 < dim_) ? u[i + 1] : frac(u[i] * 997.0);
        double r = std::sqrt(-2.0 * std::log(u1));
        g[i] = r * std::cos(2.0 * M_PI * u2);
        if (i + 1 < dim_) g[i + 1] = r * std::sin(2.0 * M_PI * u2);
    }
    return g;
}

std::vector<SamplePoint> sphere_points(int n, int count, uint64_t seed, bool with_real_slot) {
    int dim = 2 * n + (with_real_slot ? 1 : 0);
    LowDiscrepancy gen(dim, seed);
    std::vector<SamplePoint> out;
    out.reserve(count);
    while (static_cast<int>(out.size()) < count) {
        std::vector<double> g = gen.next_gaussian();
        double norm = 0.0;
        for (double v : g) norm += v * v;
        norm = std::sqrt(norm);
        if (norm < 1e-9) continue;
        SamplePoint p;
        p.z.resize(n);
        for (int j = 0; j < n; ++j) p.z[j] = {g[2 * j] / norm, g[2 * j + 1] / norm};
        p.s = with_real_slot ? g[2 * n] / norm : 0.0;
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<SamplePoint> sphere_times_real_line(int n, int count, uint64_t seed) {
    LowDiscrepancy gen(2 * n + 1, seed);
    std::vector<SamplePoint> out;
    out.reserve(count);
    while (static_cast<int>(out.size()) < count) {
        std::vector<double> g = gen.next_gaussian();
        std::vector<double> u = gen.next_unit();
        double norm = 0.0;
        for (int j = 0; j < 2 * n; ++j) norm += g[j] * g[j];
        norm = std::sqrt(norm);
        if (norm < 1e-9) continue;
        SamplePoint p;
        p.z.resize(n);
        for (int j = 0; j < n; ++j) p.z[j] = {g[2 * j] / norm, g[2 * j + 1] / norm};
        p.s = std::tan(M_PI * (u[2 * n] - 0.5));
        if (!std::isfinite(p.s)) continue;
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace cmjet
