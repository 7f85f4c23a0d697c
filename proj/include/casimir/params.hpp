#pragma once

// Material, geometry/temperature state and the dimensionless reparameterisation
// shared by every numerical module.

#include <string>
#include <variant>

namespace casimir {

/// gamma(T) = b T^2 (electron-electron scattering in a perfect crystal lattice).
struct PerfectLattice {
    double b = 0.0;  // rad/(s K^2)
};

/// gamma(T) = gamma0 (residual scattering on lattice defects, T below T0).
struct DefectLattice {
    double gamma0 = 0.0;  // rad/s
};

/// gamma = 0 (dissipationless).
struct ZeroRelaxation {};

using RelaxationModel = std::variant<PerfectLattice, DefectLattice, ZeroRelaxation>;

std::string relaxation_name(const RelaxationModel& relaxation);

/// Plate material: plasma frequency, relaxation law and nonlocality velocities.
class Material {
public:
    Material(double omega_p, RelaxationModel relaxation, double v_tr, double v_l);

    double omega_p() const { return omega_p_; }
    const RelaxationModel& relaxation() const { return relaxation_; }
    double v_tr() const { return v_tr_; }
    double v_l() const { return v_l_; }

    /// Copy with a different relaxation law.
    Material with_relaxation(RelaxationModel relaxation) const;

private:
    double omega_p_;
    RelaxationModel relaxation_;
    double v_tr_;
    double v_l_;
};

struct StatePoint {
    StatePoint(double a, double T);
    double a;  // m
    double T;  // K
};

enum class ResponseModel { IdealMetal, LocalDrude, Plasma, NonlocalDrude };

std::string model_name(ResponseModel model);
ResponseModel parse_model(const std::string& name);  // throws DomainError

struct DimensionlessState {
    double tau = 0.0;          // 4 pi k_B T a / (hbar c)
    double omega_p_t = 0.0;    // 2 a omega_p / c
    double v_tr_t = 0.0;       // v_tr / c
    double v_l_t = 0.0;        // v_l / c
    double gamma_t = 0.0;      // 2 a gamma(T) / c
    double gamma_zero_t = 0.0; // 2 a gamma(0) / c
    double b_t = 0.0;          // 2 a b / c (PerfectLattice only)
    double b_tt = 0.0;         // c hbar^2 b / (8 pi^2 k_B^2 a); gamma_t = b_tt tau^2
};

/// Relaxation rate gamma(T) in rad/s.
double gamma_at(const Material& mat, double T);

DimensionlessState to_dimensionless(const StatePoint& state, const Material& mat);

/// Inverse of to_dimensionless for the geometric part (a from omega_p_t, T from tau).
StatePoint from_dimensionless(const DimensionlessState& ds, const Material& mat);

/// Separation for which tau equals the given value at temperature T, and vice versa.
double temperature_for_tau(double tau, double a);
double tau_for(double a, double T);

/// Gold-like defaults: omega_p = 9.0 eV, v_tr = v_l = 0.01 c, gamma0 = 5.3e10 rad/s,
/// and b such that b T0^2 = gamma0 at T0 = 4 K.
namespace gold {
inline constexpr double omega_p_ev = 9.0;
inline constexpr double gamma0 = 5.3e10;
inline constexpr double T0 = 4.0;
inline constexpr double b = gamma0 / (T0 * T0);
inline constexpr double v_over_c = 0.01;

Material perfect_lattice();
Material defect_lattice();
Material plasma();
}  // namespace gold

}  // namespace casimir
