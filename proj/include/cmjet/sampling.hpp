#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace cmjet {

// Deterministic low-discrepancy point generator (Kronecker sequence over
// square-root-of-prime increments), mapped through Box-Muller to Gaussians.
class LowDiscrepancy {
  public:
    LowDiscrepancy(int dim, uint64_t seed);

    // Next point in [0,1)^dim.
    std::vector<double> next_unit();
    // Next standard Gaussian vector of the configured dimension.
    std::vector<double> next_gaussian();

  private:
    int dim_;
    std::vector<double> alpha_;
    std::vector<double> state_;
};

// A sample point for polynomials in (z in C^n, real slot s).
struct SamplePoint {
    std::vector<std::complex<double>> z;
    double s = 0.0;
};

// Points with ||z||^2 + s^2 = 1 (the sphere used for weighted-sphere sampling).
std::vector<SamplePoint> sphere_points(int n, int count, uint64_t seed, bool with_real_slot);

// Points with ||z|| = 1 and s = tan(pi*(xi - 1/2)) covering all real s.
std::vector<SamplePoint> sphere_times_real_line(int n, int count, uint64_t seed);

}  // namespace cmjet
