#include "casimir/params.hpp"

#include <cmath>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir {

namespace cst = constants;

std::string relaxation_name(const RelaxationModel& relaxation) {
    switch (relaxation.index()) {
        case 0: return "perfect";
        case 1: return "defect";
        default: return "zero";
    }
}

Material::Material(double omega_p, RelaxationModel relaxation, double v_tr, double v_l)
    : omega_p_(omega_p), relaxation_(relaxation), v_tr_(v_tr), v_l_(v_l) {
    if (!(omega_p > 0.0) || !std::isfinite(omega_p))
        throw DomainError("Material: omega_p must be positive and finite");
    if (!(v_tr >= 0.0) || !(v_l >= 0.0) || v_tr >= cst::c || v_l >= cst::c)
        throw DomainError("Material: nonlocality velocities must lie in [0, c)");
    if (const auto* p = std::get_if<PerfectLattice>(&relaxation_); p && !(p->b >= 0.0))
        throw DomainError("Material: b must be non-negative");
    if (const auto* d = std::get_if<DefectLattice>(&relaxation_); d && !(d->gamma0 >= 0.0))
        throw DomainError("Material: gamma0 must be non-negative");
}

Material Material::with_relaxation(RelaxationModel relaxation) const {
    return Material(omega_p_, relaxation, v_tr_, v_l_);
}

StatePoint::StatePoint(double a_, double T_) : a(a_), T(T_) {
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("StatePoint: a must be positive");
    if (!(T >= 0.0) || !std::isfinite(T)) throw DomainError("StatePoint: T must be non-negative");
}

std::string model_name(ResponseModel model) {
    switch (model) {
        case ResponseModel::IdealMetal: return "ideal";
        case ResponseModel::LocalDrude: return "drude";
        case ResponseModel::Plasma: return "plasma";
        case ResponseModel::NonlocalDrude: return "nonlocal";
    }
    return "?";
}

ResponseModel parse_model(const std::string& name) {
    if (name == "ideal" || name == "ideal_metal") return ResponseModel::IdealMetal;
    if (name == "drude" || name == "local_drude") return ResponseModel::LocalDrude;
    if (name == "plasma") return ResponseModel::Plasma;
    if (name == "nonlocal" || name == "nonlocal_drude") return ResponseModel::NonlocalDrude;
    throw DomainError("unknown response model '" + name + "'");
}

double gamma_at(const Material& mat, double T) {
    if (!(T >= 0.0)) throw DomainError("gamma_at: T must be non-negative");
    return std::visit(
        [T](const auto& r) -> double {
            using R = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<R, PerfectLattice>) return r.b * T * T;
            else if constexpr (std::is_same_v<R, DefectLattice>) return r.gamma0;
            else return 0.0;
        },
        mat.relaxation());
}

double tau_for(double a, double T) { return 4.0 * cst::pi * cst::k_B * T * a / (cst::hbar * cst::c); }

double temperature_for_tau(double tau, double a) {
    return tau * cst::hbar * cst::c / (4.0 * cst::pi * cst::k_B * a);
}

DimensionlessState to_dimensionless(const StatePoint& state, const Material& mat) {
    const double a = state.a;
    DimensionlessState ds;
    ds.tau = tau_for(a, state.T);
    ds.omega_p_t = 2.0 * a * mat.omega_p() / cst::c;
    ds.v_tr_t = mat.v_tr() / cst::c;
    ds.v_l_t = mat.v_l() / cst::c;
    ds.gamma_t = 2.0 * a * gamma_at(mat, state.T) / cst::c;
    ds.gamma_zero_t = 2.0 * a * gamma_at(mat, 0.0) / cst::c;
    if (const auto* p = std::get_if<PerfectLattice>(&mat.relaxation())) {
        ds.b_t = 2.0 * a * p->b / cst::c;
        ds.b_tt = cst::c * cst::hbar * cst::hbar * p->b /
                  (8.0 * cst::pi * cst::pi * cst::k_B * cst::k_B * a);
    }
    return ds;
}

StatePoint from_dimensionless(const DimensionlessState& ds, const Material& mat) {
    const double a = ds.omega_p_t * cst::c / (2.0 * mat.omega_p());
    return StatePoint(a, temperature_for_tau(ds.tau, a));
}

namespace gold {
Material perfect_lattice() {
    return Material(cst::ev_to_rad_per_s(omega_p_ev), PerfectLattice{b}, v_over_c * cst::c,
                    v_over_c * cst::c);
}
Material defect_lattice() {
    return Material(cst::ev_to_rad_per_s(omega_p_ev), DefectLattice{gamma0}, v_over_c * cst::c,
                    v_over_c * cst::c);
}
Material plasma() { return Material(cst::ev_to_rad_per_s(omega_p_ev), ZeroRelaxation{}, 0.0, 0.0); }
}  // namespace gold

}  // namespace casimir
