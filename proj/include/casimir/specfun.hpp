#pragma once

// Special functions for the low-temperature asymptotics.

namespace casimir::specfun {

struct SpecValue {
    double value = 0.0;
    double abs_err = 0.0;
};

/// Riemann zeta for real s > 1 (Euler-Maclaurin accelerated direct series).
SpecValue zeta(double s);

/// zeta(s) for s < 0 (non-even-integer) through the functional equation; zeta(1/2) tabulated.
SpecValue zeta_reflected(double s);

/// int_0^inf y^s / (e^y - 1) dy = Gamma(s+1) zeta(s+1), s > 0.
SpecValue bose_integral(double s);

/// Li_{1/2}(z) = sum_{n>=1} z^n / sqrt(n), 0 < z < 1.
SpecValue polylog_half(double z);

/// Li_{1/2}(e^{-tau}) evaluated directly from tau > 0 (avoids rounding 1 - e^{-tau}).
SpecValue polylog_half_exp(double tau);

/// int_0^inf t / (e^{2 pi t} - 1) dt = 1/24.
SpecValue exp_weight_integral();

/// int_0^inf t^s / (e^{2 pi t} - 1) dt = Gamma(s+1) zeta(s+1) / (2 pi)^{s+1}, s > 0.
SpecValue exp_weight_moment(double s);

}  // namespace casimir::specfun
