#pragma once

// Reflection coefficients at imaginary frequency for a metallic half-space.
//
// Every coefficient is returned together with its distance from perfect
// reflection, c_tm = 1 - r_tm and c_te = 1 + r_te, computed without
// subtraction. Near-perfect reflection is exactly where the low-temperature
// physics lives, and 1 - r^2 = c (2 - c) is needed to full relative precision.

#include <cmath>
#include <limits>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/response.hpp"

namespace casimir {

enum class Polarization { TM, TE };

template <class Scalar>
struct ReflectionPair {
    Scalar r_tm;
    Scalar r_te;
    Scalar c_tm;  // 1 - r_tm
    Scalar c_te;  // 1 + r_te
};

template <class Scalar>
ReflectionPair<Scalar> perfect_reflection() {
    return {Scalar(1), Scalar(-1), Scalar(0), Scalar(0)};
}

enum class Order { Exact, FirstOrder };

/// Local Fresnel coefficients, dimensional: xi [rad/s], k_perp [1/m], real eps >= 1.
inline ReflectionPair<double> fresnel_local(double xi, double k_perp, double eps) {
    if (!(xi >= 0.0) || !(eps >= 1.0)) throw DomainError("fresnel_local: requires xi >= 0, eps >= 1");
    if (std::isinf(eps)) return perfect_reflection<double>();
    const double xc = xi / constants::c;
    const double q = std::sqrt(k_perp * k_perp + xc * xc);
    const double k = std::sqrt(k_perp * k_perp + eps * xc * xc);
    const double r_tm = (eps * q - k) / (eps * q + k);
    const double r_te = -(eps - 1.0) * xc * xc / ((q + k) * (q + k));
    return {r_tm, r_te, 2.0 * k / (eps * q + k), 2.0 * q / (q + k)};
}

/// Coefficients at dimensionless (i x, y), 0 < x <= y, for a Drude-like medium.
/// With v_tr = v_l = 0 this is the local Fresnel pair of the Drude / plasma permittivity.
/// The overload taking u = sqrt(y^2 - x^2) lets callers on a wavenumber grid pass it exactly.
template <class Scalar>
ReflectionPair<Scalar> reflection(Scalar x, Scalar y, Scalar u, const Medium<Scalar>& m) {
    using std::sqrt;
    if (m.ideal) return perfect_reflection<Scalar>();
    const Scalar wp2 = m.omega_p * m.omega_p;
    // (eps_tr - 1) x^2, finite as x -> 0
    const Scalar q_tr = wp2 * (x + m.v_tr * u) / (x + m.gamma);
    const Scalar k = sqrt(y * y + q_tr);

    ReflectionPair<Scalar> p;
    p.r_te = -q_tr / ((y + k) * (y + k));
    p.c_te = Scalar(2) * y / (y + k);

    const Scalar inv_eps_tr = x * x / (x * x + q_tr);
    const Scalar den_l = (x + m.gamma) * (x + m.v_l * u);
    const Scalar inv_eps_l = den_l / (den_l + wp2);
    // (k^Tr + u (eps_tr - eps_l)/eps_l) / eps_tr
    const Scalar g = k * inv_eps_tr + u * (inv_eps_l - inv_eps_tr);
    p.r_tm = (y - g) / (y + g);
    p.c_tm = Scalar(2) * g / (y + g);
    return p;
}

template <class Scalar>
ReflectionPair<Scalar> reflection(Scalar x, Scalar y, const Medium<Scalar>& m) {
    using std::sqrt;
    if (!(x > Scalar(0)) || x > y) throw DomainError("reflection: requires 0 < x <= y");
    return reflection(x, y, sqrt((y - x) * (y + x)), m);
}

/// beta = gamma v_l / omega_p^2 (zero-frequency TM parameter).
template <class Scalar>
Scalar static_beta(const Medium<Scalar>& m) {
    return m.gamma * m.v_l / (m.omega_p * m.omega_p);
}

/// delta = gamma / (v_tr omega_p^2) (zero-frequency TE parameter); infinite for local Drude.
template <class Scalar>
Scalar static_delta(const Medium<Scalar>& m) {
    if (m.v_tr == Scalar(0))
        return m.gamma > Scalar(0) ? std::numeric_limits<Scalar>::infinity() : Scalar(0);
    return m.gamma / (m.v_tr * m.omega_p * m.omega_p);
}

/// r_TM(0, y): 1 - 2 gamma v_l y / (omega_p^2 + 2 gamma v_l y), or 1 - 2 beta y to first order.
template <class Scalar>
Scalar r_tm_static(Scalar y, const Medium<Scalar>& m, Order order = Order::Exact) {
    if (!(y >= Scalar(0))) throw DomainError("r_tm_static: requires y >= 0");
    if (m.ideal) return Scalar(1);
    if (order == Order::FirstOrder) return Scalar(1) - Scalar(2) * static_beta(m) * y;
    const Scalar wp2 = m.omega_p * m.omega_p;
    return wp2 / (wp2 + Scalar(2) * m.gamma * m.v_l * y);
}

/// r_TE(0, y) = -(sqrt(1 + delta y) - sqrt(delta y)) / (sqrt(1 + delta y) + sqrt(delta y)),
/// or -1 + 2 sqrt(delta y) to first order. Covers the plasma (gamma = 0, v_tr = 0) and
/// local Drude (delta -> infinity, r = 0) limits.
template <class Scalar>
Scalar r_te_static(Scalar y, const Medium<Scalar>& m, Order order = Order::Exact) {
    using std::sqrt;
    if (!(y >= Scalar(0))) throw DomainError("r_te_static: requires y >= 0");
    if (m.ideal) return Scalar(-1);
    if (m.gamma == Scalar(0) && m.v_tr == Scalar(0)) {
        const Scalar k = sqrt(y * y + m.omega_p * m.omega_p);
        return (y - k) / (y + k);
    }
    const Scalar delta = static_delta(m);
    if (std::isinf(static_cast<double>(delta))) return Scalar(0);
    if (order == Order::FirstOrder) return Scalar(-1) + Scalar(2) * sqrt(delta * y);
    const Scalar s1 = sqrt(Scalar(1) + delta * y);
    const Scalar s0 = sqrt(delta * y);
    return -(s1 - s0) / (s1 + s0);
}

/// Zero-frequency pair with complements, exact forms.
template <class Scalar>
ReflectionPair<Scalar> static_reflection(Scalar y, const Medium<Scalar>& m) {
    using std::sqrt;
    if (m.ideal) return perfect_reflection<Scalar>();
    ReflectionPair<Scalar> p;

    const Scalar wp2 = m.omega_p * m.omega_p;
    const Scalar t = Scalar(2) * m.gamma * m.v_l * y;
    p.r_tm = wp2 / (wp2 + t);
    p.c_tm = t / (wp2 + t);

    // lim_{x->0} (eps_tr - 1) x^2
    if (m.gamma > Scalar(0)) {
        const Scalar q0 = wp2 * m.v_tr * y / m.gamma;
        const Scalar k = sqrt(y * y + q0);
        p.r_te = -q0 / ((y + k) * (y + k));
        p.c_te = Scalar(2) * y / (y + k);
    } else if (m.v_tr > Scalar(0)) {
        p.r_te = Scalar(-1);
        p.c_te = Scalar(0);
    } else {
        const Scalar k = sqrt(y * y + wp2);
        p.r_te = -wp2 / ((y + k) * (y + k));
        p.c_te = Scalar(2) * y / (y + k);
    }
    return p;
}

/// d r / d x at x = 0 for a dissipative nonlocal medium, lowest order in beta, delta:
///   TM: -2 beta (1/v_l + y/gamma),  TE: (sqrt(delta)/gamma) (-gamma / (v_tr sqrt(y)) + sqrt(y)).
template <class Scalar>
Scalar r_prime_static(Scalar y, const Medium<Scalar>& m, Polarization pol) {
    using std::sqrt;
    if (!(y > Scalar(0))) throw DomainError("r_prime_static: requires y > 0");
    if (!(m.gamma > Scalar(0)) || m.v_tr <= Scalar(0) || m.v_l <= Scalar(0))
        throw DomainError("r_prime_static: requires gamma > 0 and nonzero nonlocality velocities");
    if (pol == Polarization::TM) return Scalar(-2) * static_beta(m) * (Scalar(1) / m.v_l + y / m.gamma);
    const Scalar delta = static_delta(m);
    return sqrt(delta) / m.gamma * (-m.gamma / (m.v_tr * sqrt(y)) + sqrt(y));
}

/// Coefficients at (i x, y) with x >= 0; x = 0 dispatches to the zero-frequency forms.
template <class Scalar>
ReflectionPair<Scalar> reflection_any(Scalar x, Scalar y, const Medium<Scalar>& m) {
    return x == Scalar(0) ? static_reflection(y, m) : reflection(x, y, m);
}

/// Coefficients of two media that differ only in gamma, with the complement
/// shifts c(T) - c(0) formed algebraically rather than by subtraction.
template <class Scalar>
struct ReflectionShift {
    ReflectionPair<Scalar> at_zero;
    ReflectionPair<Scalar> at_T;
    Scalar dc_tm;
    Scalar dc_te;
};

/// u = sqrt(y^2 - x^2) may be supplied (u < 0: computed here).
template <class Scalar>
ReflectionShift<Scalar> reflection_shift(Scalar x, Scalar y, const Medium<Scalar>& at_T,
                                         const Medium<Scalar>& at_zero, Scalar u = Scalar(-1)) {
    using std::sqrt;
    if (at_T.ideal || at_zero.ideal || at_T.omega_p != at_zero.omega_p || at_T.v_tr != at_zero.v_tr ||
        at_T.v_l != at_zero.v_l)
        throw DomainError("reflection_shift: media must differ only in gamma");
    if (x != Scalar(0) && u < Scalar(0)) {
        if (!(x > Scalar(0)) || x > y) throw DomainError("reflection_shift: requires 0 <= x <= y");
        u = sqrt((y - x) * (y + x));
    }
    ReflectionShift<Scalar> s;
    s.at_T = x == Scalar(0) ? static_reflection(y, at_T) : reflection(x, y, u, at_T);
    s.at_zero = x == Scalar(0) ? static_reflection(y, at_zero) : reflection(x, y, u, at_zero);
    const Scalar g1 = at_T.gamma, g0 = at_zero.gamma;
    if (g1 == g0) {
        s.dc_tm = s.dc_te = Scalar(0);
        return s;
    }
    const Scalar wp2 = at_T.omega_p * at_T.omega_p;
    const Scalar vt = at_T.v_tr, vl = at_T.v_l;

    if (x == Scalar(0)) {
        const Scalar t1 = Scalar(2) * g1 * vl * y, t0 = Scalar(2) * g0 * vl * y;
        s.dc_tm = wp2 * Scalar(2) * vl * y * (g1 - g0) / ((wp2 + t1) * (wp2 + t0));
        if (g1 > Scalar(0) && g0 > Scalar(0) && vt > Scalar(0)) {
            const Scalar q1 = wp2 * vt * y / g1, q0 = wp2 * vt * y / g0;
            const Scalar k1 = sqrt(y * y + q1), k0 = sqrt(y * y + q0);
            const Scalar dk = wp2 * vt * y * (g0 - g1) / (g1 * g0) / (k1 + k0);
            s.dc_te = Scalar(-2) * y * dk / ((y + k1) * (y + k0));
        } else {
            s.dc_te = s.at_T.c_te - s.at_zero.c_te;
        }
        return s;
    }

    const Scalar q1 = wp2 * (x + vt * u) / (x + g1), q0 = wp2 * (x + vt * u) / (x + g0);
    const Scalar dq = wp2 * (x + vt * u) * (g0 - g1) / ((x + g1) * (x + g0));
    const Scalar k1 = sqrt(y * y + q1), k0 = sqrt(y * y + q0);
    const Scalar dk = dq / (k1 + k0);
    s.dc_te = Scalar(-2) * y * dk / ((y + k1) * (y + k0));

    const Scalar ie_tr1 = x * x / (x * x + q1), ie_tr0 = x * x / (x * x + q0);
    const Scalar die_tr = -x * x * dq / ((x * x + q1) * (x * x + q0));
    const Scalar d1 = (x + g1) * (x + vl * u), d0 = (x + g0) * (x + vl * u);
    const Scalar ie_l1 = d1 / (d1 + wp2), ie_l0 = d0 / (d0 + wp2);
    const Scalar die_l = wp2 * (g1 - g0) * (x + vl * u) / ((d1 + wp2) * (d0 + wp2));
    const Scalar gg1 = k1 * ie_tr1 + u * (ie_l1 - ie_tr1);
    const Scalar gg0 = k0 * ie_tr0 + u * (ie_l0 - ie_tr0);
    const Scalar dg = dk * ie_tr1 + k0 * die_tr + u * (die_l - die_tr);
    s.dc_tm = Scalar(2) * y * dg / ((y + gg1) * (y + gg0));
    return s;
}

/// r(ix, y, T) - r(ix, y, 0) componentwise, given the media at T and at T = 0.
/// The c_* fields hold the matching change of the complements.
template <class Scalar>
ReflectionPair<Scalar> thermal_delta_r(Scalar x, Scalar y, const Medium<Scalar>& at_T,
                                       const Medium<Scalar>& at_zero) {
    const auto s = reflection_shift(x, y, at_T, at_zero);
    // r_tm = 1 - c_tm, r_te = -1 + c_te
    return {-s.dc_tm, s.dc_te, s.dc_tm, s.dc_te};
}

/// Nonlocal Drude coefficients at (i x, y) for the state, at T = 0 or at the state's T.
inline ReflectionPair<double> nonlocal_pair_dimensionless(double x, double y, const DimensionlessState& ds,
                                                          TemperatureMode mode) {
    return reflection(x, y, medium_for(ResponseModel::NonlocalDrude, ds, mode));
}

}  // namespace casimir
