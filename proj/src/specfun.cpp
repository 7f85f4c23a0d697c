#include "casimir/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "casimir/errors.hpp"

namespace casimir::specfun {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

// B_{2k} / (2k)!, k = 1..12
constexpr std::array<double, 12> bernoulli_over_factorial = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    (-691.0 / 2730.0) / 479001600.0,
    (7.0 / 6.0) / 87178291200.0,
    (-3617.0 / 510.0) / 20922789888000.0,
    (43867.0 / 798.0) / 6402373705728000.0,
    (-174611.0 / 330.0) / 2432902008176640000.0,
    (854513.0 / 138.0) / 1.1240007277776077e21,
    (-236364091.0 / 2730.0) / 6.204484017332394e23,
};

constexpr double zeta_half = -1.4603545088095868128894991525152980;

}  // namespace

SpecValue zeta(double s) {
    if (!(s > 1.0)) throw DomainError("zeta: requires s > 1");
    constexpr int n_direct = 16;
    const double N = n_direct;

    double direct = 0.0;
    for (int n = n_direct - 1; n >= 1; --n) direct += std::pow(static_cast<double>(n), -s);

    double tail = std::pow(N, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(N, -s);
    // rising factorial s (s+1) ... (s+2k-2) times N^{-s-2k+1}
    double rising = s;
    double npow = std::pow(N, -s - 1.0);
    double last = 0.0;
    for (std::size_t k = 0; k < bernoulli_over_factorial.size(); ++k) {
        last = bernoulli_over_factorial[k] * rising * npow;
        tail += last;
        rising *= (s + 2.0 * k + 1.0) * (s + 2.0 * k + 2.0);
        npow /= N * N;
    }
    const double value = direct + tail;
    return {value, std::abs(last) + 4.0 * eps * value};
}

SpecValue zeta_reflected(double s) {
    if (s == 0.5) return {zeta_half, 4.0 * eps};
    if (!(s < 0.0)) throw DomainError("zeta_reflected: requires s < 0 or s = 1/2");
    // zeta(s) = 2 (2 pi)^{s-1} sin(pi s / 2) Gamma(1 - s) zeta(1 - s)
    const double pi = std::numbers::pi;
    const auto z = zeta(1.0 - s);
    const double factor = 2.0 * std::pow(2.0 * pi, s - 1.0) * std::sin(pi * s / 2.0) * std::tgamma(1.0 - s);
    return {factor * z.value, std::abs(factor) * z.abs_err + 8.0 * eps * std::abs(factor * z.value)};
}

SpecValue bose_integral(double s) {
    if (!(s > 0.0)) throw DomainError("bose_integral: requires s > 0");
    const auto z = zeta(s + 1.0);
    const double g = std::tgamma(s + 1.0);
    return {g * z.value, g * z.abs_err + 4.0 * eps * g * z.value};
}

SpecValue polylog_half_exp(double tau) {
    if (!(tau > 0.0)) throw DomainError("polylog_half: requires 0 < z < 1");
    const double pi = std::numbers::pi;
    if (tau >= -std::log(0.9)) {
        // direct series, z <= 0.9
        const double z = std::exp(-tau);
        double sum = 0.0;
        double zn = z;
        double term = 0.0;
        for (int n = 1; n < 100000; ++n) {
            term = zn / std::sqrt(static_cast<double>(n));
            sum += term;
            if (term < 1e-18 * sum) break;
            zn *= z;
        }
        // remaining terms bounded by a geometric series
        return {sum, term * z / (1.0 - z) + 4.0 * eps * sum * 1e2};
    }
    // Li_s(e^{-t}) = Gamma(1-s) t^{s-1} + sum_k zeta(s-k) (-t)^k / k!, |t| < 2 pi
    double value = std::sqrt(pi / tau);
    double err = 4.0 * eps * value;
    double power = 1.0;
    double last = 0.0;
    for (int k = 0; k < 30; ++k) {
        const auto z = zeta_reflected(0.5 - k);
        last = z.value * power;
        value += last;
        err += z.abs_err * std::abs(power);
        if (std::abs(last) < 1e-20 * std::abs(value)) break;
        power *= -tau / (k + 1.0);
    }
    return {value, err + std::abs(last)};
}

SpecValue polylog_half(double z) {
    if (!(z > 0.0) || !(z < 1.0)) throw DomainError("polylog_half: requires 0 < z < 1");
    return polylog_half_exp(-std::log(z));
}

SpecValue exp_weight_moment(double s) {
    if (!(s > 0.0)) throw DomainError("exp_weight_moment: requires s > 0");
    const auto b = bose_integral(s);
    const double scale = std::pow(2.0 * std::numbers::pi, s + 1.0);
    return {b.value / scale, b.abs_err / scale + 4.0 * eps * b.value / scale};
}

SpecValue exp_weight_integral() { return exp_weight_moment(1.0); }

}  // namespace casimir::specfun
