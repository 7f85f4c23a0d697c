#pragma once

// Thermal correction Delta_T F = F(T) - E split into the implicit part (Matsubara
// discretisation of the T = 0 integrand) and the explicit part (temperature
// dependence of gamma inside the reflection coefficients).

#include <complex>
#include <functional>

#include "casimir/lifshitz.hpp"

namespace casimir {

enum class PhiMode { ZeroT, DefectStatic };

/// Phi_alpha(x) = int_x^inf y dy ln(1 - r_alpha^2(ix, y) e^{-y}) for the T = 0 medium,
/// or for gamma fixed at gamma0 (DefectStatic).
PhiValue phi(double x, const DimensionlessState& ds, ResponseModel model, PhiMode mode,
             const QuadratureConfig& cfg);

struct ThermalPart {
    double value = 0.0;
    double tm = 0.0;
    double te = 0.0;
    double err = 0.0;
};

/// k_B T / (8 pi a^2) [ sum'_l Phi(tau l) - int_0^inf Phi(tau t) dt ].
ThermalPart implicit_correction(const StatePoint& state, const Material& mat, ResponseModel model,
                                const QuadratureConfig& cfg);

struct ExplicitParts {
    TermPair l0;            // log-ratio form
    TermPair lge1;
    TermPair l0_first;      // first order in the coefficient shift
    TermPair lge1_first;
    TermPair l0_err;
    TermPair lge1_err;
    double err = 0.0;
    long l_max = 0;
    double value() const { return l0.tm + l0.te + lge1.tm + lge1.te; }
    double first_order_value() const { return l0_first.tm + l0_first.te + lge1_first.tm + lge1_first.te; }
};

/// k_B T / (8 pi a^2) sum'_l sum_alpha int y dy ln[(1 - r^2(T) e^{-y}) / (1 - r^2(0) e^{-y})]
/// and its first-order form. Identically zero without an explicit gamma(T).
ExplicitParts explicit_correction(const StatePoint& state, const Material& mat, ResponseModel model,
                                  const QuadratureConfig& cfg);

struct CorrectionBreakdown {
    double total = 0.0;
    TermPair explicit_l0;
    TermPair explicit_lge1;
    double implicit = 0.0;
    TermPair implicit_parts;
    double err_est = 0.0;
    ExplicitParts explicit_detail;
};

CorrectionBreakdown thermal_correction(const StatePoint& state, const Material& mat, ResponseModel model,
                                       const QuadratureConfig& cfg);

/// sum'_{l>=0} f(tau l) - int_0^inf f(tau t) dt by direct summation and quadrature.
double abel_plana_difference(const std::function<double(double)>& f, double tau, const QuadratureConfig& cfg);

/// i int_0^inf dt disc(t) / (e^{2 pi t} - 1) with disc(t) = f(i tau t) - f(-i tau t).
double abel_plana_contour(const std::function<std::complex<double>(double)>& disc, double tau,
                          const QuadratureConfig& cfg);

}  // namespace casimir
