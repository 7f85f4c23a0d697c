#pragma once

// Drude-like dielectric response: local Drude / plasma and the nonlocal
// transverse / longitudinal permittivities, dimensional and dimensionless.
//
// Dimensionless variables: x = 2 a xi / c (frequency), y = 2 a q (wavenumber
// in the gap), so that 2 a k_perp = sqrt(y^2 - x^2).

#include <cmath>
#include <complex>

#include "casimir/errors.hpp"
#include "casimir/params.hpp"

namespace casimir {

template <class T>
struct PermittivityPair {
    T eps_tr;
    T eps_l;
};

/// Dimensionless response parameters seen by the reflection coefficients.
template <class Scalar>
struct Medium {
    bool ideal = false;
    Scalar omega_p = 0;  // 2 a omega_p / c
    Scalar v_tr = 0;     // v_tr / c
    Scalar v_l = 0;      // v_l / c
    Scalar gamma = 0;    // 2 a gamma / c

    bool dissipative() const { return gamma > Scalar(0); }
};

enum class TemperatureMode { ZeroT, FiniteT };

/// Parameters of `model` at the state's temperature (FiniteT) or at T = 0 (ZeroT).
inline Medium<double> medium_for(ResponseModel model, const DimensionlessState& ds,
                                 TemperatureMode mode) {
    Medium<double> m;
    const double gamma = mode == TemperatureMode::ZeroT ? ds.gamma_zero_t : ds.gamma_t;
    switch (model) {
        case ResponseModel::IdealMetal: m.ideal = true; break;
        case ResponseModel::Plasma: m.omega_p = ds.omega_p_t; break;
        case ResponseModel::LocalDrude:
            m.omega_p = ds.omega_p_t;
            m.gamma = gamma;
            break;
        case ResponseModel::NonlocalDrude:
            m.omega_p = ds.omega_p_t;
            m.v_tr = ds.v_tr_t;
            m.v_l = ds.v_l_t;
            m.gamma = gamma;
            break;
    }
    return m;
}

/// True when `model` carries an explicit temperature dependence through gamma(T).
inline bool has_explicit_temperature_dependence(ResponseModel model, const DimensionlessState& ds) {
    return (model == ResponseModel::LocalDrude || model == ResponseModel::NonlocalDrude) &&
           ds.gamma_t != ds.gamma_zero_t;
}

/// Nonlocal Drude-like permittivities at real frequency omega.
inline PermittivityPair<std::complex<double>> nonlocal_real_freq(double omega, double k_perp, double T,
                                                                const Material& mat) {
    if (omega == 0.0) throw ZeroFrequency("nonlocal_real_freq: omega = 0 is a pole");
    using C = std::complex<double>;
    const C i(0.0, 1.0);
    const double wp2 = mat.omega_p() * mat.omega_p();
    const C drude = wp2 / (omega * (omega + i * gamma_at(mat, T)));
    return {1.0 - drude * (1.0 + i * mat.v_tr() * k_perp / omega),
            1.0 - drude / (1.0 + i * mat.v_l() * k_perp / omega)};
}

/// Nonlocal Drude-like permittivities at imaginary frequency i xi.
inline PermittivityPair<double> nonlocal_imag_freq(double xi, double k_perp, double T,
                                                   const Material& mat) {
    if (xi == 0.0) throw ZeroFrequency("nonlocal_imag_freq: xi = 0 is handled by static limits");
    if (!(xi > 0.0) || !(k_perp >= 0.0))
        throw DomainError("nonlocal_imag_freq: requires xi > 0 and k_perp >= 0");
    const double drude = mat.omega_p() * mat.omega_p() / (xi * (xi + gamma_at(mat, T)));
    return {1.0 + drude * (1.0 + mat.v_tr() * k_perp / xi),
            1.0 + drude / (1.0 + mat.v_l() * k_perp / xi)};
}

/// Dimensionless permittivities at (i x, y); requires 0 < x <= y.
template <class Scalar>
PermittivityPair<Scalar> nonlocal_dimensionless(Scalar x, Scalar y, const Medium<Scalar>& m) {
    using std::sqrt;
    if (!(x > Scalar(0)) || x > y)
        throw DomainError("nonlocal_dimensionless: requires 0 < x <= y");
    const Scalar kp = sqrt((y - x) * (y + x));
    const Scalar drude = m.omega_p * m.omega_p / (x * (x + m.gamma));
    return {Scalar(1) + drude * (Scalar(1) + m.v_tr * kp / x),
            Scalar(1) + drude / (Scalar(1) + m.v_l * kp / x)};
}

/// Overload on the state: nonlocal response at T = 0 (at_zero_T) or at the state's T.
inline PermittivityPair<double> nonlocal_dimensionless(double x, double y, const DimensionlessState& ds,
                                                       bool at_zero_T) {
    return nonlocal_dimensionless(
        x, y,
        medium_for(ResponseModel::NonlocalDrude, ds,
                   at_zero_T ? TemperatureMode::ZeroT : TemperatureMode::FiniteT));
}

}  // namespace casimir
