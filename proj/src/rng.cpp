#include "hetnet/rng.hpp"

namespace hetnet {

namespace {

// Hormann's PTRS transformed-rejection sampler; exact for mean >= 10.
std::uint64_t poisson_ptrs(RandomStream& rs, double mean) {
    const double slam = std::sqrt(mean);
    const double loglam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        double u = rs.uniform() - 0.5;
        double v = rs.uniform();
        double us = 0.5 - std::fabs(u);
        double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
        if (kf < 0.0 || (us < 0.013 && v > us)) continue;
        double k = kf;
        double rhs = -mean + k * loglam - std::lgamma(k + 1.0);
        if (std::log(v * inv_alpha / (a / (us * us) + b)) <= rhs)
            return static_cast<std::uint64_t>(kf);
    }
}

}  // namespace

std::uint64_t RandomStream::poisson(double mean) {
    if (mean <= 0.0) return 0;
    if (mean < 10.0) {
        const double limit = std::exp(-mean);
        std::uint64_t k = 0;
        double prod = uniform();
        while (prod > limit) {
            ++k;
            prod *= uniform();
        }
        return k;
    }
    return poisson_ptrs(*this, mean);
}

}  // namespace hetnet
