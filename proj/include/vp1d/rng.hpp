#ifndef VP1D_RNG_HPP
#define VP1D_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace vp1d {

// Deterministic RNG for ensembles. mt19937_64 is specified bit-exactly by the
// standard; the distribution mappings below are hand-rolled because the
// std::*_distribution algorithms are implementation-defined and would break
// byte-identical reruns across toolchains.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() {  // [0,1)
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal() {  // Box-Muller, one value per call (cache the pair)
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 1e-300) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double th = 6.283185307179586476925287 * u2;
        spare_ = r * std::sin(th);
        have_spare_ = true;
        return r * std::cos(th);
    }

    std::uint64_t raw() { return eng_(); }

  private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace vp1d

#endif
